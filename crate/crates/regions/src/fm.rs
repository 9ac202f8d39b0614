//! Numeric Fourier-Motzkin elimination and projection of half-plane systems.
//!
//! Coefficients are floats with max-abs row scaling and a 1e-12 zero
//! threshold; the systems this crate projects are small and mildly
//! conditioned. An exact-rational elimination is provided as a test oracle.

use crate::geometry::{GeometryError, HalfPlaneSystem, Row};
use crate::simplex::{self, LpOutcome};
use num_rational::BigRational;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

const ZERO_EPS: f64 = 1e-12;
/// Slack below which an LP-certified row is considered implied.
const REDUNDANCY_TOL: f64 = 1e-9;

/// Outcome of projecting a system onto a subset of its variables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub input: HalfPlaneSystem,
    pub kept_vars: Vec<String>,
    pub output: HalfPlaneSystem,
    pub rows_generated: usize,
    pub rows_after_redundancy_removal: usize,
}

/// Eliminate one variable by pairwise combination of its upper and lower
/// bounds. Rows not mentioning the variable pass through. The result's
/// feasible set is exactly the projection of the input's.
pub fn fm_eliminate(sys: &HalfPlaneSystem, var: &str) -> Result<HalfPlaneSystem, GeometryError> {
    let vi = sys.var_index(var)?;
    let mut upper: Vec<Row> = Vec::new(); // coefficient on var > 0
    let mut lower: Vec<Row> = Vec::new(); // coefficient on var < 0
    let mut pass: Vec<Row> = Vec::new();
    for row in &sys.rows {
        let a = row.coeffs[vi];
        if a > ZERO_EPS {
            upper.push(row.clone());
        } else if a < -ZERO_EPS {
            lower.push(row.clone());
        } else {
            pass.push(row.clone());
        }
    }
    let mut out_rows = pass;
    for u in &upper {
        for l in &lower {
            let au = u.coeffs[vi];
            let al = -l.coeffs[vi];
            // au, al > 0; combine to cancel var: row = l/al + u/au.
            let coeffs: Vec<f64> = u
                .coeffs
                .iter()
                .zip(l.coeffs.iter())
                .map(|(&cu, &cl)| cu / au + cl / al)
                .collect();
            let rhs = u.rhs / au + l.rhs / al;
            let mut row = Row::new(coeffs, rhs).normalized();
            row.coeffs[vi] = 0.0;
            out_rows.push(row);
        }
    }
    let vars: Vec<String> = sys
        .vars
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != vi)
        .map(|(_, v)| v.clone())
        .collect();
    let rows: Vec<Row> = out_rows
        .into_iter()
        .map(|r| {
            let coeffs = r
                .coeffs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != vi)
                .map(|(_, &a)| a)
                .collect();
            Row::new(coeffs, r.rhs)
        })
        .collect();
    HalfPlaneSystem::new(vars, rows)
}

/// Remove rows implied by the remainder. Duplicates and dominated parallels
/// go first; surviving rows are certified by maximizing their slack with a
/// small LP against the rest. The feasible set is unchanged.
pub fn remove_redundant(sys: &HalfPlaneSystem) -> HalfPlaneSystem {
    let mut rows: Vec<Row> = Vec::new();
    let mut infeasible_marker: Option<Row> = None;
    for row in &sys.rows {
        let r = row.normalized();
        if r.is_zero() {
            if r.rhs < -ZERO_EPS {
                // 0 <= negative: the whole system is empty; keep one marker.
                infeasible_marker.get_or_insert(r);
            }
            continue; // 0 <= nonnegative is vacuous
        }
        // Parallel dominance: same normalized coefficients, keep smaller rhs.
        let mut dominated = false;
        for kept in rows.iter_mut() {
            let same = kept
                .coeffs
                .iter()
                .zip(r.coeffs.iter())
                .all(|(&a, &b)| (a - b).abs() < 1e-9);
            if same {
                kept.rhs = kept.rhs.min(r.rhs);
                dominated = true;
                break;
            }
        }
        if !dominated {
            rows.push(r);
        }
    }
    if let Some(marker) = infeasible_marker {
        return HalfPlaneSystem::new(sys.vars.clone(), vec![marker]).expect("marker row");
    }

    // LP certification, dropping rows one at a time when implied.
    let n = sys.vars.len();
    let mut keep: Vec<bool> = vec![true; rows.len()];
    for k in 0..rows.len() {
        let others: Vec<&Row> = rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k && keep[i])
            .map(|(_, r)| r)
            .collect();
        if others.is_empty() {
            continue;
        }
        // maximize a_k · x over the others; x free, split x = xp - xm.
        let mut c = Vec::with_capacity(2 * n);
        for &a in &rows[k].coeffs {
            c.push(a);
        }
        for &a in &rows[k].coeffs {
            c.push(-a);
        }
        let a_mat: Vec<Vec<f64>> = others
            .iter()
            .map(|r| {
                let mut v = Vec::with_capacity(2 * n);
                for &a in &r.coeffs {
                    v.push(a);
                }
                for &a in &r.coeffs {
                    v.push(-a);
                }
                v
            })
            .collect();
        let b: Vec<f64> = others.iter().map(|r| r.rhs).collect();
        match simplex::maximize(&c, &a_mat, &b) {
            LpOutcome::Optimal(v) if v <= rows[k].rhs + REDUNDANCY_TOL => keep[k] = false,
            _ => {}
        }
    }
    let rows: Vec<Row> = rows
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r)
        .collect();
    HalfPlaneSystem::new(sys.vars.clone(), rows).expect("lengths preserved")
}

/// Repeated elimination of every variable not in `keep`, with redundancy
/// removal after each step to bound row growth. Elimination order is chosen
/// greedily by the smallest upper-times-lower product.
pub fn project(sys: &HalfPlaneSystem, keep: &[&str]) -> Result<ProjectionReport, GeometryError> {
    for k in keep {
        sys.var_index(k)?;
    }
    let mut current = remove_redundant(sys);
    let mut rows_generated = sys.rows.len();
    loop {
        let candidates: Vec<String> = current
            .vars
            .iter()
            .filter(|v| !keep.contains(&v.as_str()))
            .cloned()
            .collect();
        if candidates.is_empty() {
            break;
        }
        let var = candidates
            .iter()
            .min_by_key(|v| {
                let vi = current.var_index(v).expect("candidate var");
                let pos = current
                    .rows
                    .iter()
                    .filter(|r| r.coeffs[vi] > ZERO_EPS)
                    .count();
                let neg = current
                    .rows
                    .iter()
                    .filter(|r| r.coeffs[vi] < -ZERO_EPS)
                    .count();
                pos * neg
            })
            .expect("nonempty candidates")
            .clone();
        let eliminated = fm_eliminate(&current, &var)?;
        rows_generated += eliminated.rows.len();
        current = remove_redundant(&eliminated);
    }
    // Reorder columns to match the requested keep order.
    let perm: Vec<usize> = keep
        .iter()
        .map(|k| current.var_index(k).expect("kept var survives"))
        .collect();
    let rows: Vec<Row> = current
        .rows
        .iter()
        .map(|r| Row::new(perm.iter().map(|&i| r.coeffs[i]).collect(), r.rhs))
        .collect();
    let output = HalfPlaneSystem::new(keep.iter().map(|s| s.to_string()).collect(), rows)?;
    let rows_after = output.rows.len();
    Ok(ProjectionReport {
        input: sys.clone(),
        kept_vars: keep.iter().map(|s| s.to_string()).collect(),
        output,
        rows_generated,
        rows_after_redundancy_removal: rows_after,
    })
}

/// Exact-rational elimination used as a test oracle. No LP-backed redundancy
/// removal, only duplicate and parallel-dominance pruning, so the row count
/// can grow; fine for the small systems the oracle checks.
pub fn fm_eliminate_exact(
    vars: &[String],
    rows: &[(Vec<BigRational>, BigRational)],
    var: &str,
) -> (Vec<String>, Vec<(Vec<BigRational>, BigRational)>) {
    let vi = vars.iter().position(|v| v == var).expect("var present");
    let zero = BigRational::from_integer(BigInt::from(0));
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut pass = Vec::new();
    for (coeffs, rhs) in rows {
        if coeffs[vi] > zero {
            upper.push((coeffs.clone(), rhs.clone()));
        } else if coeffs[vi] < zero {
            lower.push((coeffs.clone(), rhs.clone()));
        } else {
            pass.push((coeffs.clone(), rhs.clone()));
        }
    }
    let mut out = pass;
    for (uc, ur) in &upper {
        for (lc, lr) in &lower {
            let au = uc[vi].clone();
            let al = -lc[vi].clone();
            let coeffs: Vec<BigRational> = uc
                .iter()
                .zip(lc.iter())
                .map(|(a, b)| a / &au + b / &al)
                .collect();
            let rhs = ur / &au + lr / &al;
            out.push((coeffs, rhs));
        }
    }
    let new_vars: Vec<String> = vars
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != vi)
        .map(|(_, v)| v.clone())
        .collect();
    let mut new_rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    'outer: for (coeffs, rhs) in out {
        let reduced: Vec<BigRational> = coeffs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != vi)
            .map(|(_, a)| a.clone())
            .collect();
        if reduced.iter().all(|a| *a == zero) {
            continue; // 0 <= rhs rows carry no projection information here
        }
        // Parallel dominance in exact arithmetic.
        for (kc, kr) in new_rows.iter_mut() {
            if let Some(ratio) = parallel_ratio(kc, &reduced) {
                let scaled = &rhs * &ratio;
                if scaled < *kr {
                    *kr = scaled;
                }
                continue 'outer;
            }
        }
        new_rows.push((reduced, rhs));
    }
    (new_vars, new_rows)
}

/// If `b = t * a` for a positive rational `t`, returns `t` expressed so that
/// comparing right-hand sides is valid (`rhs_b * t` against `rhs_a`).
fn parallel_ratio(a: &[BigRational], b: &[BigRational]) -> Option<BigRational> {
    let zero = BigRational::from_integer(BigInt::from(0));
    let mut ratio: Option<BigRational> = None;
    for (x, y) in a.iter().zip(b.iter()) {
        match (x == &zero, y == &zero) {
            (true, true) => continue,
            (true, false) | (false, true) => return None,
            (false, false) => {
                let r = x / y;
                if r <= zero {
                    return None;
                }
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) if *prev == r => {}
                    _ => return None,
                }
            }
        }
    }
    ratio
}
