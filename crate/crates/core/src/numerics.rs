//! Special functions and quadrature rules.
//!
//! Everything here is a pure function of its arguments. The gamma family uses a
//! Lanczos approximation (g = 7, nine coefficients), which is accurate to a few
//! ulps over the positive real axis, and switches to log space above 30 so that
//! ratios such as `Γ(2Lm)` in the asymptotic constants never overflow early.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Default Gauss-Laguerre order for the residual-interference integral.
pub const DEFAULT_LAGUERRE_ORDER: usize = 100;
/// Default Gauss-Chebyshev order for the ergodic-rate integrals.
pub const DEFAULT_CHEBYSHEV_ORDER: usize = 200;

pub const MAX_LAGUERRE_ORDER: usize = 256;
pub const MAX_CHEBYSHEV_ORDER: usize = 4096;

/// Switch-over point from the direct Lanczos product to log space.
const LOG_SPACE_THRESHOLD: f64 = 30.0;

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("{name} requires a positive argument, got {x}")));
    }
    Ok(())
}

/// Lanczos series for `x >= 0.5`, returning `(t, series)` with `t = x + g - 0.5`.
fn lanczos_series(x: f64) -> (f64, f64) {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    (z + LANCZOS_G + 0.5, acc)
}

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive("ln_gamma", x)?;
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps the series argument above 1/2.
        return ln_gamma_unchecked(x + 1.0) - x.ln();
    }
    let (t, series) = lanczos_series(x);
    LN_SQRT_2PI + (x - 0.5) * t.ln() - t + series.ln()
}

/// Gamma function for `x > 0`. Overflows to `+inf` above ~171.6.
pub fn gamma(x: f64) -> Result<f64> {
    check_positive("gamma", x)?;
    Ok(gamma_unchecked(x))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x > LOG_SPACE_THRESHOLD {
        return ln_gamma_unchecked(x).exp();
    }
    if x < 0.5 {
        return gamma_unchecked(x + 1.0) / x;
    }
    let (t, series) = lanczos_series(x);
    (2.0 * PI).sqrt() * t.powf(x - 0.5) * (-t).exp() * series
}

fn check_incomplete_args(a: f64, x: f64) -> Result<()> {
    check_positive("incomplete gamma shape", a)?;
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("incomplete gamma requires x >= 0, got {x}")));
    }
    Ok(())
}

/// Series expansion of P(a, x), valid for x < a + 1.
fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..10_000 {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    (a * x.ln() - x - ln_gamma_unchecked(a)).exp() * sum
}

/// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
fn gamma_q_fraction(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (a * x.ln() - x - ln_gamma_unchecked(a)).exp() * h
}

pub(crate) fn regularized_gamma_p_unchecked(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x.is_infinite() {
        1.0
    } else if x < a + 1.0 {
        gamma_p_series(a, x).min(1.0)
    } else {
        (1.0 - gamma_q_fraction(a, x)).clamp(0.0, 1.0)
    }
}

pub(crate) fn regularized_gamma_q_unchecked(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else if x.is_infinite() {
        0.0
    } else if x < a + 1.0 {
        (1.0 - gamma_p_series(a, x)).clamp(0.0, 1.0)
    } else {
        gamma_q_fraction(a, x).clamp(0.0, 1.0)
    }
}

/// Regularized lower incomplete gamma `P(a, x) = γ(a, x) / Γ(a)`.
pub fn regularized_gamma_p(a: f64, x: f64) -> Result<f64> {
    check_incomplete_args(a, x)?;
    Ok(regularized_gamma_p_unchecked(a, x))
}

/// Regularized upper incomplete gamma `Q(a, x) = 1 - P(a, x)`, accurate in the tail.
pub fn regularized_gamma_q(a: f64, x: f64) -> Result<f64> {
    check_incomplete_args(a, x)?;
    Ok(regularized_gamma_q_unchecked(a, x))
}

/// Lower incomplete gamma `γ(a, x) = ∫₀ˣ t^{a-1} e^{-t} dt`.
pub fn lower_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    check_incomplete_args(a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let p = regularized_gamma_p_unchecked(a, x);
    Ok((p.ln() + ln_gamma_unchecked(a)).exp())
}

/// Gauss hypergeometric function at unit argument via the Gauss summation
/// theorem, `₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b))`.
///
/// The series only converges for `c − a − b > 0`; outside that region this
/// returns [`Error::Divergence`] instead of an analytic continuation.
pub fn hyp2f1_at_unity(a: f64, b: f64, c: f64) -> Result<f64> {
    let excess = c - a - b;
    if excess.is_nan() || excess <= 0.0 {
        return Err(Error::Divergence {
            excess,
            context: format!("2F1({a}, {b}; {c}; 1)"),
        });
    }
    // A zero numerator parameter truncates the series to its first term.
    if a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    for (name, v) in [("c", c), ("c - a", c - a), ("c - b", c - b)] {
        if v <= 0.0 {
            return Err(Error::Domain(format!(
                "2F1 at unity needs positive gamma arguments, {name} = {v}"
            )));
        }
    }
    let ln = ln_gamma_unchecked(c) + ln_gamma_unchecked(excess)
        - ln_gamma_unchecked(c - a)
        - ln_gamma_unchecked(c - b);
    Ok(ln.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    GaussLaguerre,
    GaussChebyshev1,
}

/// Nodes and weights of a Gauss rule.
///
/// Nodes are stored in increasing order. For Laguerre rules the weights
/// integrate against `e^{-x}` on `[0, ∞)`; for Chebyshev rules against
/// `1/√(1−x²)` on `(−1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Applies the rule to `f`, i.e. `Σ w_i f(x_i)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// `∫₀ᵇ f(y) dy` through the Chebyshev mapping `y = (x + 1) b / 2`
    /// with the `√(1 − x²)` weight compensation.
    ///
    /// Panics if called on a Laguerre rule.
    pub fn integrate_interval<F: FnMut(f64) -> f64>(&self, b: f64, mut f: F) -> f64 {
        assert_eq!(self.kind, QuadratureKind::GaussChebyshev1);
        let scale = PI * b / (2.0 * self.order as f64);
        let sum: f64 = self
            .nodes
            .iter()
            .map(|&x| f((x + 1.0) * b / 2.0) * (1.0 - x * x).sqrt())
            .sum();
        scale * sum
    }
}

/// Evaluates the generalized Laguerre polynomials `L_n^{(α)}(x)` and
/// `L_{n-1}^{(α)}(x)` together with the Christoffel sum `Σ_{k<n} L_k² / h_k`,
/// where `h_k = Γ(k+α+1)/k!` is the squared norm. Values are rescaled by
/// `e^{-scale}` (the sum by `e^{-2 scale}`) to avoid overflow at large x.
fn laguerre_eval(n: usize, alpha: f64, x: f64) -> (f64, f64, f64, f64) {
    const BIG: f64 = 1e150;
    let mut p_prev = 0.0;
    let mut p = 1.0;
    let mut scale = 0.0;
    // h_k relative to h_0 = Γ(α+1), updated as h_{k+1} = h_k (k+α+1)/(k+1).
    let mut norm = 1.0;
    let mut christoffel = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * p - (kf + alpha) * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
        if p.abs() > BIG {
            p /= BIG;
            p_prev /= BIG;
            christoffel /= BIG * BIG;
            scale += BIG.ln();
        }
        if k + 1 < n {
            norm *= (kf + alpha + 1.0) / (kf + 1.0);
            christoffel += p * p / norm;
        }
    }
    (p, p_prev, christoffel, scale)
}

/// Gauss-Laguerre rule for the weight `e^{-x}` on `[0, ∞)`.
///
/// Nodes are the zeros of `L_U(x)`, located by Newton iteration from the
/// classical asymptotic starting guesses. The weights equal
/// `x_u / ((U+1)² [L_{U+1}(x_u)]²)` for the normalized polynomials; they are
/// computed through the equivalent Christoffel sum, which has no cancellation.
pub fn gauss_laguerre(order: usize) -> Result<QuadratureRule> {
    gauss_laguerre_generalized(order, 0.0)
}

/// Generalized Gauss-Laguerre rule for the weight `x^α e^{-x}`, `α > −1`.
pub fn gauss_laguerre_generalized(order: usize, alpha: f64) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_LAGUERRE_ORDER {
        return Err(Error::Config(format!(
            "Gauss-Laguerre order must be in 1..={MAX_LAGUERRE_ORDER}, got {order}"
        )));
    }
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::Config(format!("Laguerre exponent must exceed -1, got {alpha}")));
    }
    let n = order;
    let nf = n as f64;
    let ln_gamma0 = ln_gamma_unchecked(alpha + 1.0);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);

    let mut z = 0.0_f64;
    for i in 0..n {
        z = match i {
            0 => (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * nf + 1.8 * alpha),
            1 => z + (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai))
                    * (z - nodes[i - 2])
                    / (1.0 + 0.3 * alpha)
            }
        };
        let mut converged = false;
        for _ in 0..100 {
            let (p, p_prev, _, _) = laguerre_eval(n, alpha, z);
            let dp = (nf * p - (nf + alpha) * p_prev) / z;
            let step = p / dp;
            z -= step;
            if step.abs() <= 1e-14 * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Domain(format!(
                "Laguerre root {i} of order {n} did not converge"
            )));
        }
        // Christoffel function: w = 1 / Σ_{k<n} L_k(x)² / h_k, all terms positive.
        let (_, _, christoffel, scale) = laguerre_eval(n, alpha, z);
        let ln_w = ln_gamma0 - christoffel.ln() - 2.0 * scale;
        nodes.push(z);
        weights.push(ln_w.exp());
    }

    if nodes.windows(2).any(|w| w[1] <= w[0]) || nodes[0] <= 0.0 {
        return Err(Error::Domain(format!(
            "Laguerre nodes of order {n} are not strictly increasing and positive"
        )));
    }
    Ok(QuadratureRule {
        kind: QuadratureKind::GaussLaguerre,
        order,
        nodes,
        weights,
    })
}

/// Gauss-Chebyshev (first kind) rule, nodes `cos((2n−1)π/(2N))` in increasing
/// order and equal weights `π/N`.
pub fn gauss_chebyshev_nodes(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_CHEBYSHEV_ORDER {
        return Err(Error::Config(format!(
            "Gauss-Chebyshev order must be in 1..={MAX_CHEBYSHEV_ORDER}, got {order}"
        )));
    }
    let nf = order as f64;
    let nodes: Vec<f64> = (1..=order)
        .rev()
        .map(|n| ((2 * n - 1) as f64 * PI / (2.0 * nf)).cos())
        .collect();
    Ok(QuadratureRule {
        kind: QuadratureKind::GaussChebyshev1,
        order,
        nodes,
        weights: vec![PI / nf; order],
    })
}

/// Binomial coefficient `C(n, k)` as a float, exact for the small
/// arguments used in order-statistics sums.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c.round()
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sums `terms` largest magnitude first with compensation.
pub fn stable_sum(terms: &mut [f64]) -> f64 {
    terms.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let mut acc = CompensatedSum::default();
    for &t in terms.iter() {
        acc.add(t);
    }
    acc.value()
}

/// Adaptive Gauss-Kronrod (7/15) integration of `f` over `[a, b]`.
///
/// Bisects until the Kronrod error estimate of every panel is below its share
/// of `abs_tol`, or the depth limit is reached.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (k, err) = gauss_kronrod_15(f, a, b);
        if err <= tol || depth == 0 {
            return k;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, 0.5 * tol, depth - 1) + recurse(f, m, b, 0.5 * tol, depth - 1)
    }
    recurse(f, a, b, abs_tol, 40)
}

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    const XK: [f64; 8] = [
        0.991_455_371_120_812_6,
        0.949_107_912_342_758_5,
        0.864_864_423_359_769_1,
        0.741_531_185_599_394_4,
        0.586_087_235_467_691_1,
        0.405_845_151_377_397_2,
        0.207_784_955_007_898_5,
        0.0,
    ];
    const WK: [f64; 8] = [
        0.022_935_322_010_529_22,
        0.063_092_092_629_978_55,
        0.104_790_010_322_250_2,
        0.140_653_259_715_525_9,
        0.169_004_726_639_267_9,
        0.190_350_578_064_785_4,
        0.204_432_940_075_298_9,
        0.209_482_141_084_727_8,
    ];
    const WG: [f64; 4] = [
        0.129_484_966_168_869_7,
        0.279_705_391_489_276_7,
        0.381_830_050_505_118_9,
        0.417_959_183_673_469_4,
    ];
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}
