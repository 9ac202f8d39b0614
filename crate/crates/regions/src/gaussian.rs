//! Closed-form evaluators for the Gaussian cognitive Z interference channel.
//!
//! The standard-form channel has unit noise everywhere, direct gain 1,
//! cognitive-link gain `K` and interference gain `b`:
//!
//! ```text
//! Y1 = X1 + Z1          (primary receiver)
//! Y2 = K*X1 + Z2        (cognitive transmitter's observation)
//! Y3 = b*X1 + X2 + Z3   (cognitive pair's receiver)
//! ```
//!
//! Every region evaluator returns a downward-closed [`Envelope`]. Rates are
//! in bits per channel use (base-2 logs throughout; subset verdicts and
//! ratios are base-invariant).

use crate::geometry::{
    Envelope, EnvelopeAccumulator, HalfPlaneSystem, RatePair, Row, DEFAULT_SAMPLES,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GaussianError {
    #[error("gamma argument {0} is negative")]
    NegativeArgument(f64),
    #[error("weak interference (b = {b} < 1): the pentagon is not a capacity statement")]
    WeakInterference { b: f64 },
    #[error("strong interference (b = {b}): formula requires weak interference")]
    StrongInterference { b: f64 },
    #[error("channel gain must be positive")]
    ZeroGain,
    #[error("regime boundary: b^2 = {b_sq} >= 1 + P2 = {limit}, threshold undefined")]
    RegimeBoundary { b_sq: f64, limit: f64 },
    #[error("parameter regime violated: {0}")]
    ParameterRegime(String),
    #[error("nonpositive log argument: invalid mu makes the conditional covariance singular")]
    NonpositiveLogArgument,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Largest accepted cognitive gain. `K = inf` is not representable; the
/// degraded-message-set rectangle [`region_r2`] is the documented limit.
pub const K_MAX: f64 = 1e6;

/// Gaussian capacity kernel `gamma(x) = 0.5 * log2(1 + x)` in bits.
pub fn gamma(x: f64) -> Result<f64, GaussianError> {
    if !(x >= 0.0) {
        return Err(GaussianError::NegativeArgument(x));
    }
    Ok(g(x))
}

/// Internal gamma for arguments nonnegative by construction; tiny negative
/// roundoff is clamped.
pub(crate) fn g(x: f64) -> f64 {
    debug_assert!(x > -1e-9, "gamma argument {x} out of range");
    0.5 * (1.0 + x.max(0.0)).log2()
}

/// Inverse of `g`: the SNR achieving rate `t`.
fn inv_g(t: f64) -> f64 {
    (2.0f64).powf(2.0 * t) - 1.0
}

/// Standard-form channel parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardZic {
    pub p1: f64,
    pub p2: f64,
    pub k: f64,
    pub b: f64,
}

impl StandardZic {
    pub fn new(p1: f64, p2: f64, k: f64, b: f64) -> Result<Self, GaussianError> {
        for (name, v) in [("P1", p1), ("P2", p2), ("K", k), ("b", b)] {
            if !v.is_finite() || v < 0.0 {
                return Err(GaussianError::InvalidParameter(format!(
                    "{name} = {v} must be finite and nonnegative"
                )));
            }
        }
        if k > K_MAX {
            return Err(GaussianError::InvalidParameter(format!(
                "K = {k} exceeds {K_MAX}; use region_r2 for the K -> infinity limit"
            )));
        }
        Ok(Self { p1, p2, k, b })
    }

    pub fn c1(&self) -> f64 {
        g(self.p1)
    }

    pub fn c2(&self) -> f64 {
        g(self.p2)
    }
}

/// Physical channel: gains `h11, h12, h13, h23`, noise variances
/// `N1, N2, N3`, transmit powers `P1', P2'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalZic {
    pub h11: f64,
    pub h12: f64,
    pub h13: f64,
    pub h23: f64,
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
    pub p1: f64,
    pub p2: f64,
}

impl PhysicalZic {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        h11: f64,
        h12: f64,
        h13: f64,
        h23: f64,
        n1: f64,
        n2: f64,
        n3: f64,
        p1: f64,
        p2: f64,
    ) -> Result<Self, GaussianError> {
        for v in [h11, h12, h13, h23] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(GaussianError::ZeroGain);
            }
        }
        for (name, v) in [("N1", n1), ("N2", n2), ("N3", n3)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(GaussianError::InvalidParameter(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        for (name, v) in [("P1", p1), ("P2", p2)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(GaussianError::InvalidParameter(format!(
                    "{name} = {v} must be nonnegative"
                )));
            }
        }
        Ok(Self {
            h11,
            h12,
            h13,
            h23,
            n1,
            n2,
            n3,
            p1,
            p2,
        })
    }
}

/// Capacity-preserving rescaling of a physical channel to standard form.
pub fn standardize(p: &PhysicalZic) -> Result<StandardZic, GaussianError> {
    StandardZic::new(
        p.h11 * p.h11 * p.p1 / p.n1,
        p.h23 * p.h23 * p.p2 / p.n3,
        (p.h12 / p.h11) * (p.n1 / p.n2).sqrt(),
        (p.h13 / p.h11) * (p.n1 / p.n3).sqrt(),
    )
}

/// Discretization of the power-split and dirty-paper sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    /// Points on the alpha axis (power fraction decodable at Y2).
    pub alpha_steps: usize,
    /// Points on the beta axis (common-message power fraction, beta <= alpha).
    pub beta_steps: usize,
    /// Points on the dirty-paper coefficient axis.
    pub mu_steps: usize,
    /// Symmetric mu interval `[-mu_max, mu_max]`.
    pub mu_max: f64,
    /// Always adjoin the dirty-paper-optimal coefficient to the mu grid.
    pub include_costa_candidate: bool,
    /// Envelope samples over `[0, r1_max]`.
    pub envelope_samples: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            alpha_steps: 101,
            beta_steps: 101,
            mu_steps: 201,
            mu_max: 5.0,
            include_costa_candidate: true,
            envelope_samples: DEFAULT_SAMPLES,
        }
    }
}

impl SweepGrid {
    pub fn validate(&self) -> Result<(), GaussianError> {
        if self.alpha_steps < 2 || self.beta_steps < 2 || self.mu_steps < 2 {
            return Err(GaussianError::InvalidParameter(
                "sweep grids need at least 2 points per axis".to_string(),
            ));
        }
        if !(self.mu_max > 0.0 && self.mu_max.is_finite()) {
            return Err(GaussianError::InvalidParameter(
                "mu_max must be positive".to_string(),
            ));
        }
        Ok(())
    }

    fn unit_grid(steps: usize) -> impl Iterator<Item = f64> {
        (0..steps).map(move |i| i as f64 / (steps - 1) as f64)
    }
}

/// Classic strong-interference pentagon, the capacity region without the
/// cognitive link when `b >= 1`:
/// `{R1 <= gamma(P1), R2 <= gamma(P2), R1+R2 <= gamma(b^2 P1 + P2)}`.
pub fn region_r1(c: &StandardZic, samples: usize) -> Result<Envelope, GaussianError> {
    if c.b < 1.0 {
        return Err(GaussianError::WeakInterference { b: c.b });
    }
    let mut acc = EnvelopeAccumulator::new(c.c1(), samples);
    acc.add_pentagon(c.c1(), c.c2(), g(c.b * c.b * c.p1 + c.p2));
    Ok(acc.finish())
}

/// The degraded-message-set rectangle `[0, C1] x [0, C2]`, an outer bound
/// for every finite `K` and the capacity at `K = infinity`.
pub fn region_r2(c: &StandardZic, samples: usize) -> Envelope {
    let mut acc = EnvelopeAccumulator::new(c.c1(), samples);
    acc.add_box(c.c1(), c.c2());
    acc.finish()
}

/// Sum-rate capacity of the classic ZIC for `b < 1`:
/// `gamma(P1) + gamma(P2 / (1 + b^2 P1))`.
pub fn zic_sum_capacity(c: &StandardZic) -> Result<f64, GaussianError> {
    if c.b >= 1.0 {
        return Err(GaussianError::StrongInterference { b: c.b });
    }
    Ok(g(c.p1) + g(c.p2 / (1.0 + c.b * c.b * c.p1)))
}

/// The dirty-paper gain term of the block-Markov scheme: the rate at which
/// Y3 can peel off the common message before dirty-paper decoding.
fn dpc_common_term(c: &StandardZic, beta: f64) -> f64 {
    let b2 = c.b * c.b;
    g(b2 * beta * c.p1 / (1.0 + b2 * (1.0 - beta) * c.p1 + c.p2))
}

/// Block-Markov / dirty-paper inner region. For each fixed common-power
/// fraction `beta` the binding power split `alpha` is solved in closed form
/// at every envelope sample, so corner values are exact up to the beta grid.
pub fn region_r3(c: &StandardZic, grid: &SweepGrid) -> Result<Envelope, GaussianError> {
    grid.validate()?;
    let k2p1 = c.k * c.k * c.p1;
    let r1_hi = g(c.p1).min(g(k2p1));
    let mut acc = EnvelopeAccumulator::new(r1_hi, grid.envelope_samples);
    let betas: Vec<f64> = SweepGrid::unit_grid(grid.beta_steps).collect();
    let sample_grid: Vec<f64> = acc.grid().to_vec();
    for (i, &t) in sample_grid.iter().enumerate() {
        let mut best = 0.0f64;
        for &beta in &betas {
            if let Some(r2) = r3_best_r2_at(c, t, beta, k2p1) {
                best = best.max(r2);
            }
        }
        acc.add_value(i, best);
    }
    Ok(acc.finish())
}

/// Max `R2` of the block-Markov region at rate `t` for fixed `beta`, solved
/// exactly over `alpha`. `None` when `t` is unreachable at this `beta`.
fn r3_best_r2_at(c: &StandardZic, t: f64, beta: f64, k2p1: f64) -> Option<f64> {
    let tol = 1e-12;
    let gd = dpc_common_term(c, beta);
    // Private-part cap: R1 <= gamma((1-beta) P1) + gd.
    if t > g((1.0 - beta) * c.p1) + gd + tol {
        return None;
    }
    if k2p1 <= 0.0 {
        return if t <= tol { Some(g(c.p2)) } else { None };
    }
    // Smallest d = alpha - beta meeting both Y2 decoding constraints:
    //   gamma(K^2 alpha P1) >= t   and   gamma(K^2 d P1) + gd >= t.
    let alpha_floor = inv_g(t) / k2p1;
    let d_floor = if t > gd { inv_g(t - gd) / k2p1 } else { 0.0 };
    let d = (alpha_floor - beta).max(d_floor).max(0.0);
    let alpha = beta + d;
    if alpha > 1.0 + 1e-9 {
        return None;
    }
    Some(g(c.p2 / (1.0 + c.b * c.b * d * c.p1)))
}

/// The pre-elimination system of the block-Markov scheme at a fixed
/// `(alpha, beta)` split, over `{R1, R11, R12, R0, R2}` with the coupling
/// `R1 = R11 + R12` and nonnegativity adjoined. Projecting onto `(R1, R2)`
/// reproduces [`region_r3_slice`].
pub fn zic_rate_system(
    c: &StandardZic,
    alpha: f64,
    beta: f64,
) -> Result<HalfPlaneSystem, GaussianError> {
    check_split(alpha, beta)?;
    let b2 = c.b * c.b;
    let k2 = c.k * c.k;
    let d = alpha - beta;
    let vars: Vec<String> = ["R1", "R11", "R12", "R0", "R2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let row = |coeffs: [f64; 5], rhs: f64| Row::new(coeffs.to_vec(), rhs);
    let rows = vec![
        // Y2 decodes the fresh private and common messages.
        row([0.0, 1.0, 0.0, 0.0, 0.0], g(k2 * d * c.p1)),
        row([0.0, 0.0, 1.0, 0.0, 0.0], g(k2 * beta * c.p1)),
        row([0.0, 1.0, 1.0, 0.0, 0.0], g(k2 * alpha * c.p1)),
        // Y1 decodes the common message, then the cell index.
        row(
            [0.0, 0.0, 1.0, 0.0, 0.0],
            g(beta * c.p1 / (1.0 + (1.0 - beta) * c.p1)),
        ),
        row(
            [0.0, 0.0, 0.0, 1.0, 0.0],
            g((1.0 - alpha) * c.p1 / (1.0 + d * c.p1)),
        ),
        // Ambiguity-set intersection: R11 <= gamma(d P1) + R0.
        row([0.0, 1.0, 0.0, -1.0, 0.0], g(d * c.p1)),
        // Y3 decodes the common message, then dirty-paper decodes W2.
        row([0.0, 0.0, 1.0, 0.0, 0.0], dpc_common_term(c, beta)),
        row([0.0, 0.0, 0.0, 0.0, 1.0], g(c.p2 / (1.0 + b2 * d * c.p1))),
    ];
    let mut sys = HalfPlaneSystem::new(vars, rows).expect("fixed-width rows");
    sys.push_equality("R1", &["R11", "R12"]).expect("vars exist");
    sys.push_nonnegativity();
    Ok(sys)
}

/// The five-inequality block-Markov slice at fixed `(alpha, beta)`, over
/// `(R1, R2)`.
pub fn region_r3_slice(
    c: &StandardZic,
    alpha: f64,
    beta: f64,
) -> Result<HalfPlaneSystem, GaussianError> {
    check_split(alpha, beta)?;
    let b2 = c.b * c.b;
    let k2 = c.k * c.k;
    let d = alpha - beta;
    let gd = dpc_common_term(c, beta);
    let rows = vec![
        Row::new(vec![1.0, 0.0], g(k2 * alpha * c.p1)),
        Row::new(vec![1.0, 0.0], g(c.p1)),
        Row::new(vec![1.0, 0.0], g(k2 * d * c.p1) + gd),
        Row::new(vec![1.0, 0.0], g((1.0 - beta) * c.p1) + gd),
        Row::new(vec![0.0, 1.0], g(c.p2 / (1.0 + b2 * d * c.p1))),
    ];
    HalfPlaneSystem::new(vec!["R1".into(), "R2".into()], rows)
        .map_err(|e| GaussianError::InvalidParameter(e.to_string()))
}

fn check_split(alpha: f64, beta: f64) -> Result<(), GaussianError> {
    if !(0.0..=1.0 + 1e-12).contains(&alpha) || beta < -1e-12 || beta > alpha + 1e-12 {
        return Err(GaussianError::InvalidParameter(format!(
            "need 0 <= beta <= alpha <= 1, got alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(())
}

/// The three simultaneous-decoding log-determinant terms for dirty-paper
/// coefficient `mu` at power split `(alpha, beta)`.
///
/// `zeta1` bounds the common message at Y3, `zeta2` the cognitive message,
/// `zeta3` their sum. Fails when `mu` makes the conditional covariance
/// singular (the slice is skipped rather than clamped).
pub fn zeta(
    c: &StandardZic,
    alpha: f64,
    beta: f64,
    mu: f64,
) -> Result<(f64, f64, f64), GaussianError> {
    check_split(alpha, beta)?;
    let ab = 1.0 - alpha; // power fraction carrying the cell index
    let bb = 1.0 - beta;
    let b2 = c.b * c.b;
    let s = c.p2 + mu * mu * ab * c.p1;
    let cross = c.p2 + mu * c.b * ab * c.p1;
    let denom = s * (c.p2 + b2 * bb * c.p1 + 1.0) - cross * cross;
    if denom <= 1e-12 {
        return Err(GaussianError::NonpositiveLogArgument);
    }
    let num1 = s * (c.p2 + b2 * c.p1 + 1.0) - cross * cross;
    let num2 = c.p2 * (c.p2 + b2 * bb * c.p1 + 1.0);
    let num3 = c.p2 * (c.p2 + b2 * c.p1 + 1.0);
    if num1 <= 0.0 || num2 <= 0.0 || num3 <= 0.0 {
        return Err(GaussianError::NonpositiveLogArgument);
    }
    Ok((
        0.5 * (num1 / denom).log2(),
        0.5 * (num2 / denom).log2(),
        0.5 * (num3 / denom).log2(),
    ))
}

/// Dirty-paper-optimal coefficient for the cell-index interference; `zeta2`
/// peaks here and equals the sequential region's `R2` bound.
pub fn mu_costa(c: &StandardZic, alpha: f64, beta: f64) -> f64 {
    c.b * c.p2 / (c.p2 + 1.0 + c.b * c.b * (alpha - beta) * c.p1)
}

/// Pentagon caps of the simultaneous-decoding region at one `(alpha, beta,
/// mu)` slice: `(r1_cap, r2_cap, sum_cap)`, or `None` for an infeasible mu.
fn r4_slice(c: &StandardZic, alpha: f64, beta: f64, mu: f64) -> Option<(f64, f64, f64)> {
    let (z1, z2, z3) = zeta(c, alpha, beta, mu).ok()?;
    if z2 < 0.0 {
        return None;
    }
    let k2 = c.k * c.k;
    let d = alpha - beta;
    let a_cap = g(k2 * alpha * c.p1)
        .min(g(c.p1))
        .min(g(k2 * d * c.p1) + g(beta * c.p1));
    let b_cap = g(k2 * d * c.p1).min(g((1.0 - beta) * c.p1));
    let r1_cap = a_cap.min(b_cap + z1);
    if r1_cap < 0.0 {
        return None;
    }
    let sum_cap = b_cap + z3;
    if sum_cap < 0.0 {
        return None;
    }
    Some((r1_cap, z2, sum_cap))
}

/// Simultaneous-decoding inner region: union over `(alpha, beta, mu)` of the
/// eight-row polygons built from the gamma terms and `zeta1..zeta3`.
///
/// The alpha grid is augmented with the values that make the Y2 cap tight at
/// each envelope sample (plus `1/K^2`), and for every `(sample, beta)` pair
/// the slice at the binding alpha and dirty-paper-optimal mu is evaluated
/// directly; a plain uniform sweep misses the region's corners by more than
/// the comparison tolerances used downstream.
pub fn region_r4(c: &StandardZic, grid: &SweepGrid) -> Result<Envelope, GaussianError> {
    grid.validate()?;
    let k2p1 = c.k * c.k * c.p1;
    let r1_hi = g(c.p1).min(g(k2p1));
    let mut acc = EnvelopeAccumulator::new(r1_hi, grid.envelope_samples);
    let sample_grid: Vec<f64> = acc.grid().to_vec();

    // Alpha grid: uniform plus corner candidates.
    let mut alphas: Vec<f64> = SweepGrid::unit_grid(grid.alpha_steps).collect();
    if k2p1 > 0.0 {
        alphas.push((1.0 / (c.k * c.k)).min(1.0));
        for &t in &sample_grid {
            let a = inv_g(t) / k2p1;
            if a <= 1.0 {
                alphas.push(a);
            }
        }
    }
    alphas.sort_by(|a, b| a.partial_cmp(b).expect("finite alpha"));
    alphas.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let betas: Vec<f64> = SweepGrid::unit_grid(grid.beta_steps).collect();
    let mus: Vec<f64> = (0..grid.mu_steps)
        .map(|i| -grid.mu_max + 2.0 * grid.mu_max * i as f64 / (grid.mu_steps - 1) as f64)
        .collect();

    for &alpha in &alphas {
        for &beta in betas.iter().take_while(|&&b| b <= alpha + 1e-12) {
            let beta = beta.min(alpha);
            for &mu in &mus {
                if let Some((r1, r2, sum)) = r4_slice(c, alpha, beta, mu) {
                    acc.add_pentagon(r1, r2, sum);
                }
            }
            if grid.include_costa_candidate {
                let mu = mu_costa(c, alpha, beta);
                if let Some((r1, r2, sum)) = r4_slice(c, alpha, beta, mu) {
                    acc.add_pentagon(r1, r2, sum);
                }
            }
        }
        // The all-common slice beta = alpha is not always on the beta grid.
        if let Some((r1, r2, sum)) = r4_slice(c, alpha, alpha, mu_costa(c, alpha, alpha)) {
            acc.add_pentagon(r1, r2, sum);
        }
    }

    // Per-sample backbone: at each envelope sample and beta, evaluate the
    // slice at the exact binding alpha with the dirty-paper-optimal mu.
    if k2p1 > 0.0 {
        for (i, &t) in sample_grid.iter().enumerate() {
            for &beta in &betas {
                let gd = dpc_common_term(c, beta);
                if t > g((1.0 - beta) * c.p1) + gd + 1e-12 {
                    continue;
                }
                let alpha_floor = inv_g(t) / k2p1;
                let d_floor = if t > gd { inv_g(t - gd) / k2p1 } else { 0.0 };
                let d = (alpha_floor - beta).max(d_floor).max(0.0);
                let alpha = beta + d;
                if alpha > 1.0 {
                    continue;
                }
                let mu = mu_costa(c, alpha, beta);
                if let Some((r1, r2, sum)) = r4_slice(c, alpha, beta, mu) {
                    if t <= r1 + 1e-12 {
                        let v = r2.min(sum - t);
                        if v > 0.0 {
                            acc.add_value(i, v);
                        }
                    }
                }
            }
        }
    }
    Ok(acc.finish())
}

/// Han-Kobayashi region of the classic ZIC with Gaussian inputs and no
/// time sharing, valid for `b <= 1`: union over `alpha` of
/// `{R1 <= gamma(alpha P1) + gamma(b^2 (1-alpha) P1 / (1 + b^2 alpha P1 +
/// P2)), R2 <= gamma(P2 / (1 + b^2 alpha P1))}`.
///
/// The `R1` cap is strictly increasing in `alpha` when `b^2 < 1 + P2`, so
/// the binding `alpha` is solved in closed form at each envelope sample.
pub fn region_r5(c: &StandardZic, samples: usize) -> Result<Envelope, GaussianError> {
    if c.b > 1.0 {
        return Err(GaussianError::StrongInterference { b: c.b });
    }
    let b2 = c.b * c.b;
    let mut acc = EnvelopeAccumulator::new(g(c.p1), samples);
    let sample_grid: Vec<f64> = acc.grid().to_vec();
    let total = 1.0 + b2 * c.p1 + c.p2;
    for (i, &t) in sample_grid.iter().enumerate() {
        // r1(alpha) = 0.5*log2((1+alpha P1) * total / (1 + b^2 alpha P1 + P2))
        // by the gamma composition identity; invert at t.
        let q = (2.0f64).powf(2.0 * t) / total;
        let denom = c.p1 * (1.0 - q * b2);
        let alpha = if denom.abs() < 1e-300 {
            0.0
        } else {
            ((q * (1.0 + c.p2) - 1.0) / denom).clamp(0.0, 1.0)
        };
        acc.add_value(i, g(c.p2 / (1.0 + b2 * alpha * c.p1)));
    }
    Ok(acc.finish())
}

/// Entropy-power outer bound for `b <= 1`, `K >= 1`, evaluated as the union
/// over `alpha` of the boxes
/// `{R1 <= C1, R2 <= C2, R1 <= gamma(K^2 alpha P1), R2 <= gamma((b^2
/// (1-alpha) P1 + P2 + 2 b sqrt((1-alpha) P1 P2)) / (1 + b^2 alpha P1))}`.
///
/// The union-of-boxes reading is the weaker (safe) interpretation; the
/// parametric trade-off is available from [`outer_bound_tradeoff_curve`].
pub fn outer_bound_gaussian(c: &StandardZic, samples: usize) -> Result<Envelope, GaussianError> {
    check_outer_regime(c)?;
    let k2p1 = c.k * c.k * c.p1;
    let mut acc = EnvelopeAccumulator::new(c.c1(), samples);
    let sample_grid: Vec<f64> = acc.grid().to_vec();
    for (i, &t) in sample_grid.iter().enumerate() {
        let alpha = if k2p1 > 0.0 {
            (inv_g(t) / k2p1).clamp(0.0, 1.0)
        } else {
            0.0
        };
        acc.add_value(i, outer_r2_bound(c, alpha));
    }
    Ok(acc.finish())
}

/// The `(R1(alpha), R2(alpha))` trade-off traced by the outer bound's rows,
/// reported alongside the union-of-boxes region.
pub fn outer_bound_tradeoff_curve(
    c: &StandardZic,
    points: usize,
) -> Result<Vec<RatePair>, GaussianError> {
    check_outer_regime(c)?;
    let k2p1 = c.k * c.k * c.p1;
    let n = points.max(2);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let alpha = i as f64 / (n - 1) as f64;
        let r1 = c.c1().min(g(k2p1 * alpha));
        let r2 = outer_r2_bound(c, alpha);
        out.push(RatePair::new(r1, r2).expect("bounds are finite"));
    }
    Ok(out)
}

fn check_outer_regime(c: &StandardZic) -> Result<(), GaussianError> {
    if c.b > 1.0 || c.k < 1.0 {
        return Err(GaussianError::ParameterRegime(format!(
            "outer bound needs b <= 1 and K >= 1, got b = {}, K = {}",
            c.b, c.k
        )));
    }
    Ok(())
}

fn outer_r2_bound(c: &StandardZic, alpha: f64) -> f64 {
    let ab = 1.0 - alpha;
    let b2 = c.b * c.b;
    let num = b2 * ab * c.p1 + c.p2 + 2.0 * c.b * (ab * c.p1 * c.p2).sqrt();
    c.c2().min(g(num / (1.0 + b2 * alpha * c.p1)))
}

/// Smallest cognitive gain for which the block-Markov region dominates the
/// strong-interference pentagon:
/// `K_min = b * sqrt(((b^2 - 1) P1 + P2) / (1 + P2 - b^2))`,
/// defined for `1 <= b^2 < 1 + P2`.
pub fn r1_subset_r3_k_threshold(c: &StandardZic) -> Result<f64, GaussianError> {
    let b2 = c.b * c.b;
    if b2 < 1.0 {
        return Err(GaussianError::WeakInterference { b: c.b });
    }
    if b2 >= 1.0 + c.p2 {
        return Err(GaussianError::RegimeBoundary {
            b_sq: b2,
            limit: 1.0 + c.p2,
        });
    }
    Ok(c.b * (((b2 - 1.0) * c.p1 + c.p2) / (1.0 + c.p2 - b2)).sqrt())
}

/// Common corner point of the pentagon and the block-Markov region:
/// `(gamma(b^2 P1 / (1 + P2)), C2)`.
pub fn corner_point(c: &StandardZic) -> RatePair {
    RatePair::new(g(c.b * c.b * c.p1 / (1.0 + c.p2)), c.c2()).expect("finite corner")
}

/// The corner `(C1, gamma(P2 / (1 + b^2 P1)))`, optimal for `K <= 1`,
/// `b <= 1`: the primary transmits at capacity and the cognitive pair
/// treats it as noise.
pub fn corollary_corner_point(c: &StandardZic) -> RatePair {
    RatePair::new(c.c1(), g(c.p2 / (1.0 + c.b * c.b * c.p1))).expect("finite corner")
}
