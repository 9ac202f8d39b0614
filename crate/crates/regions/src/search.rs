//! Distribution-space search tracing approximate region frontiers for the
//! discrete inequality systems.
//!
//! The search space of a spec is its chain factorization: each variable gets
//! a conditional table given all predecessors, so any joint distribution is
//! reachable. A run combines three candidate sources, all deterministic
//! given the seed:
//!
//! 1. canonical wirings: every auxiliary either uniform or constant, the
//!    inputs either fresh or copying an auxiliary (deterministic optima live
//!    on these corners and simplex sampling alone never finds them);
//! 2. exhaustive mode: conditional rows quantized to multiples of
//!    `1/grid_levels`, when the parameter count is small enough;
//! 3. random restarts: simplex-uniform rows followed by coordinate ascent
//!    with step halving.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::discrete::sampling::simplex_uniform;
use crate::discrete::specs::{eval_region, region_spec, SpecId};
use crate::discrete::{DiscreteChannel, DiscreteError, JointPmf};
use crate::fm;
use crate::geometry::{envelope_from_halfplanes, Envelope, HalfPlaneSystem, Polygon2, RatePair};

/// Hard cap on exhaustive-mode grid candidates per weight.
const EXHAUSTIVE_CAP: usize = 200_000;
/// Ascent terminates when the step drops below this.
const ASCENT_MIN_STEP: f64 = 1e-4;
/// Hard bound on ascent sweeps per restart; keeps the budget per restart
/// deterministic even when tiny improvements keep arriving.
const ASCENT_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub restarts: usize,
    /// Per-parameter quantization for exhaustive mode.
    pub grid_levels: usize,
    /// Direction weights `(w1, w2)` for the frontier sweep.
    pub weight_sweep: Vec<(f64, f64)>,
    pub seed: u64,
    /// Alphabet size for the single-auxiliary specs (capped at 4; the cap
    /// is a heuristic restriction, auxiliary cardinality is unbounded in
    /// general).
    pub u_size: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 500,
            grid_levels: 4,
            weight_sweep: vec![(1.0, 0.0), (1.0, 0.5), (1.0, 1.0), (0.5, 1.0), (0.0, 1.0)],
            seed: 0,
            u_size: 2,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<(), DiscreteError> {
        if self.restarts < 1 {
            return Err(DiscreteError::InvalidTable(
                "search needs at least one restart".into(),
            ));
        }
        if self.grid_levels < 1 || self.u_size < 1 || self.u_size > 4 {
            return Err(DiscreteError::InvalidTable(
                "grid_levels must be >= 1 and u_size in 1..=4".into(),
            ));
        }
        if self
            .weight_sweep
            .iter()
            .any(|&(a, b)| a < 0.0 || b < 0.0 || (a == 0.0 && b == 0.0))
        {
            return Err(DiscreteError::InvalidTable(
                "weights must be nonnegative and not both zero".into(),
            ));
        }
        Ok(())
    }
}

/// What to search: a registered spec evaluated directly on its chain, or
/// the semi-deterministic inner substitution (the general five-auxiliary
/// bound with `u10 = x1, v11 = u, v22 = x2`, searched over `p(u, x1, x2)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpec {
    Registered(SpecId),
    SemiDetInner,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub value: f64,
    pub distribution: JointPmf,
    pub support: RatePair,
}

/// Chain parameterization: conditional tables in factorization order.
struct Chain {
    names: Vec<&'static str>,
    sizes: Vec<usize>,
}

/// Candidate point: one simplex row per parent combination per variable.
#[derive(Clone)]
struct Tables(Vec<Vec<Vec<f64>>>);

impl Chain {
    fn for_spec(spec: &SearchSpec, ch: &DiscreteChannel, cfg: &SearchConfig) -> Chain {
        let (aux, x_sizes): (Vec<&'static str>, (usize, usize)) = match spec {
            SearchSpec::SemiDetInner => (vec!["u"], (ch.x1_size, ch.x2_size)),
            SearchSpec::Registered(id) => (
                region_spec(*id).auxiliaries.to_vec(),
                (ch.x1_size, ch.x2_size),
            ),
        };
        let mut names = aux;
        let mut sizes: Vec<usize> = names
            .iter()
            .map(|n| match *n {
                // Time-sharing variables stay degenerate; single
                // auxiliaries get the configured cardinality.
                "q" => 1,
                "u" => cfg.u_size,
                _ => 2,
            })
            .collect();
        names.push("x1");
        sizes.push(x_sizes.0);
        names.push("x2");
        sizes.push(x_sizes.1);
        Chain { names, sizes }
    }

    fn row_counts(&self) -> Vec<usize> {
        let mut counts = Vec::with_capacity(self.sizes.len());
        let mut parents = 1usize;
        for &s in &self.sizes {
            counts.push(parents);
            parents *= s;
        }
        counts
    }

    fn uniform(&self) -> Tables {
        Tables(
            self.sizes
                .iter()
                .zip(self.row_counts())
                .map(|(&s, rows)| vec![vec![1.0 / s as f64; s]; rows])
                .collect(),
        )
    }

    fn random(&self, rng: &mut impl Rng) -> Tables {
        Tables(
            self.sizes
                .iter()
                .zip(self.row_counts())
                .map(|(&s, rows)| (0..rows).map(|_| simplex_uniform(rng, s)).collect())
                .collect(),
        )
    }

    fn to_pmf(&self, t: &Tables) -> JointPmf {
        let total: usize = self.sizes.iter().product();
        let mut table = vec![0.0f64; total];
        let n = self.sizes.len();
        let mut digits = vec![0usize; n];
        for (cell, slot) in table.iter_mut().enumerate() {
            let mut rem = cell;
            for i in (0..n).rev() {
                digits[i] = rem % self.sizes[i];
                rem /= self.sizes[i];
            }
            let mut p = 1.0;
            let mut parent_key = 0usize;
            for i in 0..n {
                p *= t.0[i][parent_key][digits[i]];
                parent_key = parent_key * self.sizes[i] + digits[i];
            }
            *slot = p;
        }
        let sum: f64 = table.iter().sum();
        if sum > 0.0 {
            for v in &mut table {
                *v /= sum;
            }
        } else {
            table[0] = 1.0;
        }
        JointPmf::new(
            self.names.iter().map(|s| s.to_string()).collect(),
            self.sizes.clone(),
            table,
        )
        .expect("chain product is a valid pmf")
    }

    /// Canonical deterministic wirings: auxiliaries uniform or constant,
    /// inputs fresh-uniform or copies of an auxiliary.
    fn wirings(&self) -> Vec<Tables> {
        let n_aux = self.names.len() - 2;
        let aux_choices = 1usize << n_aux; // bit set: uniform vs constant
        let mut out = Vec::new();
        for mask in 0..aux_choices {
            for x1_src in 0..=n_aux {
                for x2_src in 0..=n_aux {
                    let mut t = self.uniform();
                    for (i, rows) in t.0.iter_mut().enumerate().take(n_aux) {
                        if mask & (1 << i) != 0 {
                            for row in rows.iter_mut() {
                                for (k, v) in row.iter_mut().enumerate() {
                                    *v = if k == 0 { 1.0 } else { 0.0 };
                                }
                            }
                        }
                    }
                    // x_src = 0 keeps the input fresh-uniform; otherwise it
                    // copies auxiliary (x_src - 1).
                    for (var, src) in [(n_aux, x1_src), (n_aux + 1, x2_src)] {
                        if src == 0 {
                            continue;
                        }
                        let copied = src - 1;
                        set_copy_rows(&mut t, self, var, copied);
                    }
                    out.push(t);
                }
            }
        }
        out
    }
}

/// Make chain variable `var` a deterministic copy (mod alphabet size) of an
/// earlier chain variable `src` by rewriting its conditional rows.
fn set_copy_rows(t: &mut Tables, chain: &Chain, var: usize, src: usize) {
    let size = chain.sizes[var];
    let rows = t.0[var].len();
    for key in 0..rows {
        // Decode the parent combination to find src's digit.
        let mut digits = vec![0usize; var];
        let mut rem = key;
        for i in (0..var).rev() {
            digits[i] = rem % chain.sizes[i];
            rem /= chain.sizes[i];
        }
        let target = digits[src] % size;
        for (k, v) in t.0[var][key].iter_mut().enumerate() {
            *v = if k == target { 1.0 } else { 0.0 };
        }
    }
}

/// Evaluate one candidate: lift if needed, evaluate the spec, project to
/// `(R1, R2)`, and take the support point along `w`.
fn evaluate(
    spec: &SearchSpec,
    pmf: &JointPmf,
    ch: &DiscreteChannel,
    w: (f64, f64),
) -> Result<Option<(f64, RatePair)>, DiscreteError> {
    let sys = evaluate_system(spec, pmf, ch)?;
    let poly = match Polygon2::from_system(&sys, "R1", "R2") {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    match poly.support(w.0, w.1) {
        Some((x, y)) if x.is_finite() && y.is_finite() => {
            let point = RatePair::new(x.max(0.0), y.max(0.0))
                .map_err(|e| DiscreteError::InvalidTable(e.to_string()))?;
            Ok(Some((w.0 * point.r1 + w.1 * point.r2, point)))
        }
        _ => Ok(None),
    }
}

/// The candidate's 2-D system over `(R1, R2)`.
pub fn evaluate_system(
    spec: &SearchSpec,
    pmf: &JointPmf,
    ch: &DiscreteChannel,
) -> Result<HalfPlaneSystem, DiscreteError> {
    match spec {
        SearchSpec::SemiDetInner => {
            let lifted = pmf
                .with_copy_var("u10", "x1")?
                .with_const_var("u11")?
                .with_copy_var("v11", "u")?
                .with_const_var("v20")?
                .with_copy_var("v22", "x2")?;
            Ok(eval_region(&region_spec(SpecId::InnerBound), &lifted, ch)?.system)
        }
        SearchSpec::Registered(id) => {
            let rspec = region_spec(*id);
            let eval = eval_region(&rspec, pmf, ch)?;
            if rspec.splits.is_empty() {
                Ok(eval.system)
            } else {
                fm::project(&eval.system, &["R1", "R2"])
                    .map(|rep| rep.output)
                    .map_err(|e| DiscreteError::InvalidTable(e.to_string()))
            }
        }
    }
}

/// Enumerate quantized rows (compositions of `levels` into `size` parts).
fn quantized_rows(size: usize, levels: usize) -> Vec<Vec<f64>> {
    fn rec(size: usize, left: usize, levels: usize, cur: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
        if size == 1 {
            let mut row = cur.clone();
            row.push(left as f64 / levels as f64);
            out.push(row);
            return;
        }
        for take in 0..=left {
            cur.push(take as f64 / levels as f64);
            rec(size - 1, left - take, levels, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, levels, levels, &mut Vec::new(), &mut out);
    out
}

/// Best weighted rate over sampled and grid distributions; deterministic
/// given the seed. Returns the best value, the maximizing distribution, and
/// the supporting rate pair.
pub fn maximize_weighted_rate(
    spec: &SearchSpec,
    ch: &DiscreteChannel,
    w: (f64, f64),
    cfg: &SearchConfig,
) -> Result<SearchOutcome, DiscreteError> {
    cfg.validate()?;
    let chain = Chain::for_spec(spec, ch, cfg);
    let mut best: Option<(f64, Tables, RatePair)> = None;
    let mut consider =
        |t: &Tables, best: &mut Option<(f64, Tables, RatePair)>| -> Result<(), DiscreteError> {
            let pmf = chain.to_pmf(t);
            if let Some((v, point)) = evaluate(spec, &pmf, ch, w)? {
                // Strict improvement only: first-found optimum is kept.
                if best.as_ref().map_or(true, |(bv, _, _)| v > *bv + 1e-12) {
                    *best = Some((v, t.clone(), point));
                }
            }
            Ok(())
        };

    for t in chain.wirings() {
        consider(&t, &mut best)?;
    }

    // Exhaustive mode when the quantized space is small enough.
    let row_sets: Vec<Vec<Vec<f64>>> = chain
        .sizes
        .iter()
        .map(|&s| quantized_rows(s, cfg.grid_levels))
        .collect();
    let mut combos: f64 = 1.0;
    for (i, rows) in chain.row_counts().iter().enumerate() {
        combos *= (row_sets[i].len() as f64).powi(*rows as i32);
    }
    if combos <= EXHAUSTIVE_CAP as f64 {
        let counts = chain.row_counts();
        let mut slots: Vec<(usize, usize)> = Vec::new(); // (var, row)
        for (i, &rows) in counts.iter().enumerate() {
            for r in 0..rows {
                slots.push((i, r));
            }
        }
        let mut t = chain.uniform();
        enumerate_grid(&mut t, &slots, 0, &row_sets, &mut consider, &mut best)?;
    }

    // Random restarts with coordinate ascent. Restart i draws from a stream
    // seeded by (seed, i), so a larger budget extends rather than reshuffles
    // the candidate list.
    for i in 0..cfg.restarts {
        let mut rng =
            ChaCha12Rng::seed_from_u64(cfg.seed ^ (i as u64).wrapping_mul(0x9E3779B97F4A7C15));
        let mut t = chain.random(&mut rng);
        let mut cur = match evaluate(spec, &chain.to_pmf(&t), ch, w)? {
            Some((v, _)) => v,
            None => f64::NEG_INFINITY,
        };
        let mut step = 0.25f64;
        let mut sweeps = 0usize;
        while step >= ASCENT_MIN_STEP && sweeps < ASCENT_MAX_SWEEPS {
            sweeps += 1;
            let mut improved = false;
            for vi in 0..t.0.len() {
                for ri in 0..t.0[vi].len() {
                    for k in 0..t.0[vi][ri].len() {
                        for dir in [1.0f64, -1.0] {
                            let mut cand = t.clone();
                            let row = &mut cand.0[vi][ri];
                            row[k] = (row[k] + dir * step).clamp(0.0, 1.0);
                            let s: f64 = row.iter().sum();
                            if s <= 0.0 {
                                continue;
                            }
                            for v in row.iter_mut() {
                                *v /= s;
                            }
                            if let Some((v, _)) = evaluate(spec, &chain.to_pmf(&cand), ch, w)? {
                                if v > cur + 1e-12 {
                                    cur = v;
                                    t = cand;
                                    improved = true;
                                    break;
                                }
                            }
                        }
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        consider(&t, &mut best)?;
    }

    let (value, tables, support) = best.ok_or_else(|| {
        DiscreteError::InvalidTable("no feasible distribution found".to_string())
    })?;
    Ok(SearchOutcome {
        value,
        distribution: chain.to_pmf(&tables),
        support,
    })
}

fn enumerate_grid(
    t: &mut Tables,
    slots: &[(usize, usize)],
    depth: usize,
    row_sets: &[Vec<Vec<f64>>],
    consider: &mut impl FnMut(&Tables, &mut Option<(f64, Tables, RatePair)>) -> Result<(), DiscreteError>,
    best: &mut Option<(f64, Tables, RatePair)>,
) -> Result<(), DiscreteError> {
    if depth == slots.len() {
        return consider(t, best);
    }
    let (vi, ri) = slots[depth];
    let options = row_sets[vi].clone();
    for row in options {
        t.0[vi][ri] = row;
        enumerate_grid(t, slots, depth + 1, row_sets, consider, best)?;
    }
    Ok(())
}

/// Frontier: run the weight sweep, keep each weight's supporting polygon,
/// and return the downward closure of their union.
pub fn frontier(
    spec: &SearchSpec,
    ch: &DiscreteChannel,
    cfg: &SearchConfig,
) -> Result<Envelope, DiscreteError> {
    cfg.validate()?;
    let mut acc: Option<Envelope> = None;
    for &w in &cfg.weight_sweep {
        let outcome = maximize_weighted_rate(spec, ch, w, cfg)?;
        let sys = evaluate_system(spec, &outcome.distribution, ch)?;
        if let Ok(env) = envelope_from_halfplanes(&sys, 257) {
            acc = Some(match acc {
                None => env,
                Some(prev) => prev.union(&env),
            });
        }
    }
    acc.ok_or_else(|| DiscreteError::InvalidTable("empty frontier".to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fast_cfg() -> SearchConfig {
        SearchConfig {
            restarts: 2,
            weight_sweep: vec![(1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
            ..SearchConfig::default()
        }
    }

    #[test]
    fn parallel_channel_inner_bound_square() {
        let ch = DiscreteChannel::noiseless_parallel(2, 2);
        let cfg = fast_cfg();
        let spec = SearchSpec::Registered(SpecId::InnerBound);
        let out = maximize_weighted_rate(&spec, &ch, (1.0, 0.0), &cfg).unwrap();
        assert!(out.value > 1.0 - 1e-3, "R1 search reached {}", out.value);
        let env = frontier(&spec, &ch, &cfg).unwrap();
        assert!(env.value(0.0) > 1.0 - 1e-3);
        assert!(env.value(1.0 - 1e-6) > 1.0 - 1e-3);
        assert!((env.r1_max() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn constant_channel_is_origin() {
        let ch = DiscreteChannel::constant_output(2, 2);
        let cfg = fast_cfg();
        for spec in [
            SearchSpec::Registered(SpecId::InnerBound),
            SearchSpec::Registered(SpecId::OuterBound),
        ] {
            let out = maximize_weighted_rate(&spec, &ch, (1.0, 1.0), &cfg).unwrap();
            assert!(out.value.abs() < 1e-9, "{spec:?} found {}", out.value);
            let env = frontier(&spec, &ch, &cfg).unwrap();
            assert!(env.r1_max() < 1e-9);
            assert!(env.value(0.0) < 1e-9);
        }
    }

    #[test]
    fn reproducible_and_monotone_in_budget() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(99);
        let ch = crate::discrete::sampling::random_channel(&mut rng, 2, 2, 2, 2);
        let spec = SearchSpec::Registered(SpecId::OuterBound);
        let cfg_small = SearchConfig {
            restarts: 2,
            weight_sweep: vec![(1.0, 1.0), (1.0, 0.0)],
            seed: 7,
            ..SearchConfig::default()
        };
        let a = frontier(&spec, &ch, &cfg_small).unwrap();
        let b = frontier(&spec, &ch, &cfg_small).unwrap();
        assert_eq!(a, b, "same config must be bit-identical");

        let cfg_big = SearchConfig {
            restarts: 4,
            ..cfg_small.clone()
        };
        let big = frontier(&spec, &ch, &cfg_big).unwrap();
        let (ok, v) = a.subset(&big, 1e-9);
        assert!(ok, "doubling restarts shrank the frontier by {v}");
    }

    #[test]
    fn inner_inside_outer() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let cfg = SearchConfig {
            restarts: 2,
            weight_sweep: vec![(1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
            ..SearchConfig::default()
        };
        for _ in 0..3 {
            let ch = crate::discrete::sampling::random_channel(&mut rng, 2, 2, 2, 2);
            let inner =
                frontier(&SearchSpec::Registered(SpecId::InnerBound), &ch, &cfg).unwrap();
            let outer =
                frontier(&SearchSpec::Registered(SpecId::OuterBound), &ch, &cfg).unwrap();
            let (ok, v) = inner.subset(&outer, 1e-6);
            assert!(ok, "inner escaped outer by {v}");
        }
    }
}
