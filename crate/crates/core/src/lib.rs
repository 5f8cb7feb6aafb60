//! Performance analysis of active and passive RIS-assisted NOMA/OMA downlinks
//! under transceiver hardware impairments.
//!
//! [`analytic`] holds the closed forms, [`montecarlo`] the simulator used to
//! check them, and [`metrics`] the throughput and energy-efficiency layer.

pub mod analytic;
pub mod channel;
pub mod error;
pub mod metrics;
pub mod montecarlo;
pub mod numerics;
pub mod system;

pub use analytic::{ClosedFormContext, CurveMeta, MetricCurve, MetricKind};
pub use channel::{CascadeStats, FadingParams, OrderSpec};
pub use error::{Error, Result};
pub use metrics::{PowerModel, ThroughputMode, ThroughputReport};
pub use montecarlo::{Axis, McEstimate, McOptions, Metric, RisNoiseMode, SweepPoint, SweepResult};
pub use system::{
    dbm_to_watts, watts_to_dbm, GuardForm, LaguerreForm, NoiseNorm, Sic, Surface, SystemConfig, User,
    Variant,
};
