//! 2-D rate-region geometry: envelopes, half-plane systems, and set algebra.
//!
//! A region is the downward-closed set of achievable `(R1, R2)` pairs. Two
//! representations are used:
//!
//! - [`HalfPlaneSystem`]: a finite list of linear inequalities `a·x <= c`
//!   over named variables. Systems over `{R1, R2}` describe polygons
//!   (nonnegativity is implied when evaluating).
//! - [`Envelope`]: the maximal `R2` attainable over an ascending `R1` grid,
//!   with linear interpolation between samples. Canonical envelopes are
//!   monotone nonincreasing (downward closure in both axes).

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Feasibility slack used by the 2-D evaluators.
const FEAS_EPS: f64 = 1e-9;
/// Coefficients below this are treated as exact zeros.
const ZERO_EPS: f64 = 1e-12;
/// Default number of envelope samples over `[0, r1_max]`.
pub const DEFAULT_SAMPLES: usize = 512;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    /// Even the origin violates a row; some right-hand side is negative.
    #[error("infeasible system: (0,0) violates row {row}")]
    InfeasibleSystem { row: usize },
    /// The feasible set is unbounded in a rate coordinate.
    #[error("region unbounded in {var}")]
    UnboundedRegion { var: String },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("invalid envelope: {0}")]
    InvalidEnvelope(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("csv parse error: {0}")]
    Csv(String),
}

/// A nonnegative rate pair in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Result<Self, GeometryError> {
        if !(r1.is_finite() && r2.is_finite() && r1 >= 0.0 && r2 >= 0.0) {
            return Err(GeometryError::InvalidEnvelope(format!(
                "rate pair ({r1}, {r2}) must be finite and nonnegative"
            )));
        }
        Ok(Self { r1, r2 })
    }
}

/// One inequality `coeffs · x <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

impl Row {
    pub fn new(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self { coeffs, rhs }
    }

    /// Scale so the largest absolute coefficient is 1; snap tiny entries to 0.
    pub fn normalized(&self) -> Row {
        let mut coeffs: Vec<f64> = self
            .coeffs
            .iter()
            .map(|&a| if a.abs() < ZERO_EPS { 0.0 } else { a })
            .collect();
        let scale = coeffs.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        let mut rhs = self.rhs;
        if scale > 0.0 {
            for a in &mut coeffs {
                *a /= scale;
            }
            rhs /= scale;
        }
        Row { coeffs, rhs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.abs() < ZERO_EPS)
    }
}

/// A finite system of linear inequalities over named variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneSystem {
    pub vars: Vec<String>,
    pub rows: Vec<Row>,
}

impl HalfPlaneSystem {
    pub fn new(vars: Vec<String>, rows: Vec<Row>) -> Result<Self, GeometryError> {
        for (i, row) in rows.iter().enumerate() {
            if row.coeffs.len() != vars.len() {
                return Err(GeometryError::InvalidSystem(format!(
                    "row {i} has {} coefficients for {} variables",
                    row.coeffs.len(),
                    vars.len()
                )));
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|a| !a.is_finite()) {
                return Err(GeometryError::InvalidSystem(format!(
                    "row {i} contains a non-finite entry"
                )));
            }
        }
        Ok(Self { vars, rows })
    }

    pub fn var_index(&self, name: &str) -> Result<usize, GeometryError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| GeometryError::UnknownVariable(name.to_string()))
    }

    /// Append `sum(parts) == total` as a pair of inequalities.
    pub fn push_equality(&mut self, total: &str, parts: &[&str]) -> Result<(), GeometryError> {
        let ti = self.var_index(total)?;
        let mut coeffs = vec![0.0; self.vars.len()];
        coeffs[ti] = 1.0;
        for p in parts {
            coeffs[self.var_index(p)?] = -1.0;
        }
        self.rows.push(Row::new(coeffs.clone(), 0.0));
        self.rows
            .push(Row::new(coeffs.iter().map(|a| -a).collect(), 0.0));
        Ok(())
    }

    /// Append `var >= 0` for every variable.
    pub fn push_nonnegativity(&mut self) {
        for i in 0..self.vars.len() {
            let mut coeffs = vec![0.0; self.vars.len()];
            coeffs[i] = -1.0;
            self.rows.push(Row::new(coeffs, 0.0));
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GeometryError> {
        let sys: HalfPlaneSystem =
            serde_json::from_str(s).map_err(|e| GeometryError::InvalidSystem(e.to_string()))?;
        HalfPlaneSystem::new(sys.vars, sys.rows)
    }
}

/// View of a system as a 2-D polygon over `(x, y) = (r1_var, r2_var)` with
/// implied nonnegativity. All evaluation here is exact per query point (no
/// interpolation), which is what the tight Fourier-Motzkin cross-checks need.
pub struct Polygon2 {
    /// (a1, a2, c) meaning `a1*x + a2*y <= c`.
    rows: Vec<(f64, f64, f64)>,
}

impl Polygon2 {
    pub fn from_system(
        sys: &HalfPlaneSystem,
        r1_var: &str,
        r2_var: &str,
    ) -> Result<Self, GeometryError> {
        let i1 = sys.var_index(r1_var)?;
        let i2 = sys.var_index(r2_var)?;
        for (k, row) in sys.rows.iter().enumerate() {
            for (j, &a) in row.coeffs.iter().enumerate() {
                if j != i1 && j != i2 && a.abs() > ZERO_EPS {
                    return Err(GeometryError::InvalidSystem(format!(
                        "row {k} mentions variable {} outside ({r1_var}, {r2_var})",
                        sys.vars[j]
                    )));
                }
            }
        }
        let mut rows: Vec<(f64, f64, f64)> = sys
            .rows
            .iter()
            .map(|r| (r.coeffs[i1], r.coeffs[i2], r.rhs))
            .collect();
        // Implied nonnegativity.
        rows.push((-1.0, 0.0, 0.0));
        rows.push((0.0, -1.0, 0.0));
        Ok(Self { rows })
    }

    fn row_scale(a1: f64, a2: f64) -> f64 {
        a1.abs().max(a2.abs()).max(1.0)
    }

    pub fn contains(&self, x: f64, y: f64, tol: f64) -> bool {
        self.rows
            .iter()
            .all(|&(a1, a2, c)| a1 * x + a2 * y <= c + tol * Self::row_scale(a1, a2))
    }

    /// Largest normalized violation of any row at `(x, y)`; <= 0 inside.
    pub fn violation(&self, x: f64, y: f64) -> f64 {
        self.rows
            .iter()
            .map(|&(a1, a2, c)| (a1 * x + a2 * y - c) / Self::row_scale(a1, a2))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Exact max `y` over the polygon at fixed `x`, or `None` if infeasible.
    pub fn max_y_at(&self, x: f64) -> Option<f64> {
        let mut upper = f64::INFINITY;
        let mut lower = 0.0f64;
        for &(a1, a2, c) in &self.rows {
            let rem = c - a1 * x;
            if a2 > ZERO_EPS {
                upper = upper.min(rem / a2);
            } else if a2 < -ZERO_EPS {
                lower = lower.max(rem / a2);
            } else if rem < -FEAS_EPS * Self::row_scale(a1, a2) {
                return None;
            }
        }
        if upper >= lower - FEAS_EPS {
            Some(upper.min(f64::MAX))
        } else {
            None
        }
    }

    /// True if the recession cone contains a direction `(1, d2)` with `d2 >= 0`.
    fn unbounded_in_x(&self) -> bool {
        // Each row needs a1 + a2*d2 <= 0 for some shared d2 in [0, inf).
        let mut lo = 0.0f64;
        let mut hi = f64::INFINITY;
        for &(a1, a2, _) in &self.rows {
            if a2.abs() <= ZERO_EPS {
                if a1 > ZERO_EPS {
                    return false;
                }
            } else if a2 > 0.0 {
                hi = hi.min(-a1 / a2);
            } else {
                lo = lo.max(-a1 / a2);
            }
        }
        lo <= hi + ZERO_EPS
    }

    /// All vertices of the polygon (pairwise boundary intersections that are
    /// feasible), deduplicated.
    pub fn vertices(&self) -> Vec<(f64, f64)> {
        let n = self.rows.len();
        let mut verts: Vec<(f64, f64)> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (a1, a2, c) = self.rows[i];
                let (b1, b2, d) = self.rows[j];
                let det = a1 * b2 - a2 * b1;
                let scale = Polygon2::row_scale(a1, a2) * Polygon2::row_scale(b1, b2);
                if det.abs() <= 1e-11 * scale {
                    continue;
                }
                let x = (c * b2 - a2 * d) / det;
                let y = (a1 * d - c * b1) / det;
                let fresh = x.is_finite()
                    && y.is_finite()
                    && self.contains(x, y, FEAS_EPS)
                    && !verts
                        .iter()
                        .any(|&(vx, vy)| (vx - x).abs() < 1e-9 && (vy - y).abs() < 1e-9);
                if fresh {
                    verts.push((x, y));
                }
            }
        }
        verts
    }

    /// Max feasible `x`, or an unboundedness error.
    pub fn max_x(&self) -> Result<f64, GeometryError> {
        if self.unbounded_in_x() {
            return Err(GeometryError::UnboundedRegion {
                var: "r1".to_string(),
            });
        }
        let best = self
            .vertices()
            .into_iter()
            .map(|(x, _)| x)
            .fold(f64::NEG_INFINITY, f64::max);
        if best.is_finite() {
            Ok(best.max(0.0))
        } else {
            // No vertex found: either empty or a degenerate point at origin.
            Ok(0.0)
        }
    }

    /// Support point: the feasible vertex maximizing `w1*x + w2*y`.
    pub fn support(&self, w1: f64, w2: f64) -> Option<(f64, f64)> {
        self.vertices()
            .into_iter()
            .max_by(|a, b| {
                let va = w1 * a.0 + w2 * a.1;
                let vb = w1 * b.0 + w2 * b.1;
                va.partial_cmp(&vb).unwrap_or(std::cmp::Ordering::Equal)
            })
    }
}

/// `a` contained in `b` up to `tol`, checked vertex-wise (exact for convex
/// polygons). Returns the verdict and the largest normalized violation.
pub fn polygon_subset(
    a: &Polygon2,
    b: &Polygon2,
    tol: f64,
) -> (bool, f64) {
    let mut worst = f64::NEG_INFINITY;
    for (x, y) in a.vertices() {
        worst = worst.max(b.violation(x, y));
    }
    if !worst.is_finite() {
        // `a` has no vertices: treat as the origin.
        worst = b.violation(0.0, 0.0);
    }
    (worst <= tol, worst)
}

/// Symmetric polygon distance: the larger of the two one-sided violations.
pub fn polygon_max_deviation(a: &Polygon2, b: &Polygon2) -> f64 {
    let (_, v1) = polygon_subset(a, b, 0.0);
    let (_, v2) = polygon_subset(b, a, 0.0);
    v1.max(v2).max(0.0)
}

/// A downward-closed region sampled as max `R2` over an ascending `R1` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    r1: Vec<f64>,
    r2: Vec<f64>,
}

impl Envelope {
    /// Build from samples; canonicalizes with a running max from the right so
    /// the stored boundary is monotone nonincreasing.
    pub fn from_samples(r1: Vec<f64>, r2: Vec<f64>) -> Result<Self, GeometryError> {
        if r1.is_empty() || r1.len() != r2.len() {
            return Err(GeometryError::InvalidEnvelope(
                "grids must be nonempty and the same length".to_string(),
            ));
        }
        if r1[0] != 0.0 {
            return Err(GeometryError::InvalidEnvelope(
                "grid must start at 0".to_string(),
            ));
        }
        for w in r1.windows(2) {
            if !(w[1] > w[0]) {
                return Err(GeometryError::InvalidEnvelope(
                    "grid must be strictly ascending".to_string(),
                ));
            }
        }
        if r1.iter().chain(r2.iter()).any(|v| !v.is_finite()) || r2.iter().any(|&v| v < 0.0) {
            return Err(GeometryError::InvalidEnvelope(
                "samples must be finite and r2 nonnegative".to_string(),
            ));
        }
        let mut r2 = r2;
        for i in (0..r2.len().saturating_sub(1)).rev() {
            r2[i] = r2[i].max(r2[i + 1]);
        }
        Ok(Self { r1, r2 })
    }

    /// The single point `(0, 0)`.
    pub fn origin() -> Self {
        Self {
            r1: vec![0.0],
            r2: vec![0.0],
        }
    }

    pub fn r1_max(&self) -> f64 {
        *self.r1.last().unwrap()
    }

    pub fn r2_at_origin(&self) -> f64 {
        self.r2[0]
    }

    pub fn grid(&self) -> &[f64] {
        &self.r1
    }

    pub fn values(&self) -> &[f64] {
        &self.r2
    }

    /// Boundary value by linear interpolation; 0 outside `[0, r1_max]`.
    pub fn value(&self, t: f64) -> f64 {
        if t < 0.0 || t > self.r1_max() {
            return 0.0;
        }
        match self
            .r1
            .binary_search_by(|x| x.partial_cmp(&t).expect("finite grid"))
        {
            Ok(i) => self.r2[i],
            Err(i) => {
                if i == 0 {
                    self.r2[0]
                } else if i >= self.r1.len() {
                    *self.r2.last().unwrap()
                } else {
                    let (x0, x1) = (self.r1[i - 1], self.r1[i]);
                    let (y0, y1) = (self.r2[i - 1], self.r2[i]);
                    y0 + (y1 - y0) * (t - x0) / (x1 - x0)
                }
            }
        }
    }

    fn merged_grid(&self, other: &Envelope) -> Vec<f64> {
        let mut g: Vec<f64> = self.r1.iter().chain(other.r1.iter()).copied().collect();
        g.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
        g.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        g
    }

    /// Pointwise max over the merged grid.
    pub fn union(&self, other: &Envelope) -> Envelope {
        let grid = self.merged_grid(other);
        let vals: Vec<f64> = grid
            .iter()
            .map(|&t| self.value(t).max(other.value(t)))
            .collect();
        Envelope::from_samples(grid, vals).expect("merged grid is valid")
    }

    /// Least concave majorant of the boundary over `[0, r1_max]`, resampled
    /// onto the same grid.
    pub fn convex_hull(&self) -> Envelope {
        if self.r1.len() <= 2 {
            return self.clone();
        }
        // Upper hull of the sample points (monotone chain).
        let mut hull: Vec<(f64, f64)> = Vec::with_capacity(self.r1.len());
        for (&x, &y) in self.r1.iter().zip(self.r2.iter()) {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // Keep (x2,y2) only if it lies strictly above chord (x1,y1)-(x,y).
                let cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1);
                if cross >= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((x, y));
        }
        let vals: Vec<f64> = self
            .r1
            .iter()
            .map(|&t| {
                let i = hull.partition_point(|&(hx, _)| hx <= t);
                if i == 0 {
                    hull[0].1
                } else if i >= hull.len() {
                    hull[hull.len() - 1].1
                } else {
                    let (x0, y0) = hull[i - 1];
                    let (x1, y1) = hull[i];
                    y0 + (y1 - y0) * (t - x0) / (x1 - x0)
                }
            })
            .collect();
        Envelope::from_samples(self.r1.clone(), vals).expect("hull preserves grid")
    }

    /// Boundary value with a small relative slack past the right edge, so
    /// that envelopes whose widths differ by float noise (or within a
    /// containment tolerance) do not register a full-height spike at the
    /// vertical edge.
    fn value_edge(&self, t: f64, slack: f64) -> f64 {
        let m = self.r1_max();
        if t <= m {
            self.value(t)
        } else if t <= m + slack {
            *self.r2.last().unwrap()
        } else {
            0.0
        }
    }

    fn edge_noise(t: f64) -> f64 {
        1e-9 * (1.0 + t.abs())
    }

    /// Containment up to `tol` in both axes. Returns the verdict and the
    /// largest violation found (negative means margin everywhere).
    pub fn subset(&self, other: &Envelope, tol: f64) -> (bool, f64) {
        let mut worst = self.r1_max() - other.r1_max();
        for &t in self.merged_grid(other).iter() {
            if t > self.r1_max() {
                break;
            }
            let ours = self.value(t);
            let theirs = other.value_edge(t, tol.max(Self::edge_noise(t)));
            worst = worst.max(ours - theirs);
        }
        (worst <= tol, worst)
    }

    /// Symmetric sup of the boundary gap over the merged grid.
    pub fn max_deviation(&self, other: &Envelope) -> f64 {
        self.merged_grid(other)
            .iter()
            .map(|&t| {
                let slack = Self::edge_noise(t);
                (self.value_edge(t, slack) - other.value_edge(t, slack)).abs()
            })
            .fold(0.0, f64::max)
    }

    /// CSV with header `r1,r2`, one sample per row, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r1,r2\n");
        for (x, y) in self.r1.iter().zip(self.r2.iter()) {
            out.push_str(&format!("{x:.11e},{y:.11e}\n"));
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<Self, GeometryError> {
        let mut lines = s.lines();
        match lines.next() {
            Some(h) if h.trim() == "r1,r2" => {}
            other => {
                return Err(GeometryError::Csv(format!(
                    "expected header 'r1,r2', got {other:?}"
                )))
            }
        }
        let mut r1 = Vec::new();
        let mut r2 = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let x = parts
                .next()
                .and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| GeometryError::Csv(format!("bad r1 on line {}", i + 2)))?;
            let y = parts
                .next()
                .and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| GeometryError::Csv(format!("bad r2 on line {}", i + 2)))?;
            r1.push(x);
            r2.push(y);
        }
        Envelope::from_samples(r1, r2)
    }
}

/// Accumulates the union of region slices on a fixed `R1` grid, then yields a
/// canonical [`Envelope`]. Cheaper than repeated envelope unions when a sweep
/// produces many thousands of slices.
pub struct EnvelopeAccumulator {
    grid: Vec<f64>,
    best: Vec<f64>,
}

impl EnvelopeAccumulator {
    pub fn new(r1_max: f64, samples: usize) -> Self {
        let n = samples.max(2);
        let r1_max = r1_max.max(0.0);
        let grid: Vec<f64> = if r1_max == 0.0 {
            vec![0.0]
        } else {
            (0..n)
                .map(|i| r1_max * i as f64 / (n - 1) as f64)
                .collect()
        };
        let best = vec![0.0; grid.len()];
        Self { grid, best }
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Add a box `[0, r1_cap] x [0, r2_cap]`.
    pub fn add_box(&mut self, r1_cap: f64, r2_cap: f64) {
        if r1_cap < 0.0 || r2_cap <= 0.0 {
            return;
        }
        for (i, &t) in self.grid.iter().enumerate() {
            if t > r1_cap + 1e-15 {
                break;
            }
            if self.best[i] < r2_cap {
                self.best[i] = r2_cap;
            }
        }
    }

    /// Add a pentagon `{R1 <= r1_cap, R2 <= r2_cap, R1 + R2 <= sum_cap}`.
    pub fn add_pentagon(&mut self, r1_cap: f64, r2_cap: f64, sum_cap: f64) {
        if r1_cap < 0.0 || r2_cap < 0.0 || sum_cap < 0.0 {
            return;
        }
        for (i, &t) in self.grid.iter().enumerate() {
            if t > r1_cap + 1e-15 {
                break;
            }
            let v = r2_cap.min(sum_cap - t);
            if v > self.best[i] {
                self.best[i] = v;
            }
        }
    }

    /// Raise the value recorded at grid index `i`. Used by per-sample exact
    /// evaluators that compute the boundary directly at each grid point.
    pub fn add_value(&mut self, i: usize, value: f64) {
        if value > self.best[i] {
            self.best[i] = value;
        }
    }

    pub fn finish(self) -> Envelope {
        let vals = self.best.iter().map(|&v| v.max(0.0)).collect();
        Envelope::from_samples(self.grid, vals).expect("accumulator grid is valid")
    }
}

/// Evaluate a 2-D system as an envelope: for each grid `r1`, the exact max
/// `r2` subject to all rows and nonnegativity.
///
/// The empty region yields the single point `(0,0)` when the origin is
/// feasible; otherwise (a negative right-hand side) this is an error.
pub fn envelope_from_halfplanes(
    sys: &HalfPlaneSystem,
    samples: usize,
) -> Result<Envelope, GeometryError> {
    let (r1_var, r2_var) = match sys.vars.len() {
        2 => (sys.vars[0].clone(), sys.vars[1].clone()),
        _ => {
            return Err(GeometryError::InvalidSystem(format!(
                "expected a 2-variable system, got {:?}",
                sys.vars
            )))
        }
    };
    // Prefer conventional (R1, R2) orientation when both names are present.
    let (r1_var, r2_var) = if sys.vars.iter().any(|v| v == "R1") && sys.vars.iter().any(|v| v == "R2") {
        ("R1".to_string(), "R2".to_string())
    } else {
        (r1_var, r2_var)
    };
    let poly = Polygon2::from_system(sys, &r1_var, &r2_var)?;
    // The origin is the canonical feasibility probe: a row excludes it iff
    // its right-hand side is negative.
    if poly.violation(0.0, 0.0) > FEAS_EPS {
        let row = sys.rows.iter().position(|r| r.rhs < -FEAS_EPS).unwrap_or(0);
        return Err(GeometryError::InfeasibleSystem { row });
    }
    let r1_max = poly.max_x()?;
    if r1_max <= 0.0 {
        let v = poly.max_y_at(0.0).unwrap_or(0.0).max(0.0);
        if !v.is_finite() {
            return Err(GeometryError::UnboundedRegion { var: r2_var });
        }
        return Ok(Envelope::from_samples(vec![0.0], vec![v]).expect("single sample"));
    }
    let n = samples.max(2);
    let mut r1 = Vec::with_capacity(n);
    let mut r2 = Vec::with_capacity(n);
    for i in 0..n {
        let t = r1_max * i as f64 / (n - 1) as f64;
        let v = poly.max_y_at(t).unwrap_or(0.0).max(0.0);
        if !v.is_finite() {
            return Err(GeometryError::UnboundedRegion { var: r2_var });
        }
        r1.push(t);
        r2.push(v);
    }
    Envelope::from_samples(r1, r2)
}
