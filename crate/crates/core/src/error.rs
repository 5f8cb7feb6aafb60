use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of a mathematical function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid or inconsistent configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Gauss summation of 2F1 at unity requires c - a - b > 0.
    #[error("hypergeometric series diverges at unity: c - a - b = {excess} <= 0 ({context})")]
    Divergence { excess: f64, context: String },
}

pub type Result<T> = std::result::Result<T, Error>;
