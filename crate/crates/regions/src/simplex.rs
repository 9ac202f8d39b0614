//! Dense two-phase simplex for the small LPs behind redundancy removal.
//!
//! Problems here have at most a few dozen variables and a few hundred rows,
//! so a textbook tableau with Bland's rule is plenty. Free variables are
//! handled by the caller via sign splitting.

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LpOutcome {
    Optimal(f64),
    Unbounded,
    Infeasible,
}

const EPS: f64 = 1e-9;

/// Maximize `c·x` subject to `A x <= b`, `x >= 0`.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // Tableau columns: n structural + m slack + m artificial + rhs.
    // Artificial columns are only created for rows with negative rhs.
    let mut need_artificial = vec![false; m];
    let mut n_art = 0usize;
    for (i, &bi) in b.iter().enumerate() {
        if bi < -EPS {
            need_artificial[i] = true;
            n_art += 1;
        }
    }
    let width = n + m + n_art + 1;
    let mut t = vec![vec![0.0f64; width]; m];
    let mut basis = vec![0usize; m];
    let mut art_col = n + m;
    for i in 0..m {
        let flip = need_artificial[i];
        let sign = if flip { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * a[i][j];
        }
        t[i][n + i] = sign; // slack
        t[i][width - 1] = sign * b[i];
        if flip {
            t[i][art_col] = 1.0;
            basis[i] = art_col;
            art_col += 1;
        } else {
            basis[i] = n + i;
        }
    }

    if n_art > 0 {
        // Phase 1: minimize the sum of artificials (maximize the negation).
        let mut obj = vec![0.0f64; width];
        for col in (n + m)..(n + m + n_art) {
            obj[col] = -1.0;
        }
        let status = run(&mut t, &mut basis, &mut obj, width, n + m + n_art);
        debug_assert!(status != Status::Unbounded, "phase 1 is bounded");
        let phase1 = objective_value(&t, &basis, &obj, width);
        if phase1 < -1e-7 {
            return LpOutcome::Infeasible;
        }
        // Pivot any artificial still in the basis out (degenerate rows).
        for i in 0..m {
            if basis[i] >= n + m {
                let piv = (0..n + m).find(|&j| t[i][j].abs() > EPS);
                match piv {
                    Some(j) => pivot(&mut t, &mut basis, i, j, width),
                    None => { /* zero row: redundant equality, leave it */ }
                }
            }
        }
    }

    // Phase 2 on the original objective. Artificial columns are forbidden.
    let mut obj = vec![0.0f64; width];
    obj[..n].copy_from_slice(c);
    match run(&mut t, &mut basis, &mut obj, width, n + m) {
        Status::Optimal => LpOutcome::Optimal(objective_value(&t, &basis, &obj, width)),
        Status::Unbounded => LpOutcome::Unbounded,
    }
}

#[derive(PartialEq)]
enum Status {
    Optimal,
    Unbounded,
}

fn objective_value(t: &[Vec<f64>], basis: &[usize], obj: &[f64], width: usize) -> f64 {
    basis
        .iter()
        .enumerate()
        .map(|(i, &j)| obj[j] * t[i][width - 1])
        .sum()
}

fn reduced_cost(t: &[Vec<f64>], basis: &[usize], obj: &[f64], j: usize) -> f64 {
    let direct = obj[j];
    let through_basis: f64 = basis
        .iter()
        .enumerate()
        .map(|(i, &bj)| obj[bj] * t[i][j])
        .sum();
    direct - through_basis
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize, width: usize) {
    let p = t[row][col];
    for v in t[row].iter_mut() {
        *v /= p;
    }
    for i in 0..t.len() {
        if i != row && t[i][col].abs() > 1e-14 {
            let f = t[i][col];
            for j in 0..width {
                let delta = f * t[row][j];
                t[i][j] -= delta;
            }
        }
    }
    basis[row] = col;
}

fn run(
    t: &mut [Vec<f64>],
    basis: &mut [usize],
    obj: &mut [f64],
    width: usize,
    usable_cols: usize,
) -> Status {
    let m = t.len();
    // Bland's rule: smallest improving column, smallest-index tie break on
    // the ratio test. Guarantees termination.
    loop {
        let mut entering = None;
        for j in 0..usable_cols {
            if reduced_cost(t, basis, obj, j) > EPS {
                entering = Some(j);
                break;
            }
        }
        let Some(col) = entering else {
            return Status::Optimal;
        };
        let mut leaving: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][col] > EPS {
                let ratio = t[i][width - 1] / t[i][col];
                match leaving {
                    None => leaving = Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br - 1e-12 || (ratio < br + 1e-12 && basis[i] < basis[bi]) {
                            leaving = Some((i, ratio));
                        }
                    }
                }
            }
        }
        match leaving {
            Some((row, _)) => pivot(t, basis, row, col, width),
            None => return Status::Unbounded,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_box() {
        // max x + y s.t. x <= 1, y <= 2
        let out = maximize(
            &[1.0, 1.0],
            &[vec![1.0, 0.0], vec![0.0, 1.0]],
            &[1.0, 2.0],
        );
        assert_eq!(out, LpOutcome::Optimal(3.0));
    }

    #[test]
    fn unbounded_detected() {
        let out = maximize(&[1.0], &[vec![-1.0]], &[0.0]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_detected() {
        // x <= -1 with x >= 0
        let out = maximize(&[1.0], &[vec![1.0]], &[-1.0]);
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn negative_rhs_feasible() {
        // -x <= -1 (x >= 1), x <= 3: max x = 3
        let out = maximize(&[1.0], &[vec![-1.0], vec![1.0]], &[-1.0, 3.0]);
        match out {
            LpOutcome::Optimal(v) => assert!((v - 3.0).abs() < 1e-9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pentagon_lp() {
        // max 2x + y over {x <= 1, y <= 1, x + y <= 1.5}
        let out = maximize(
            &[2.0, 1.0],
            &[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
            &[1.0, 1.0, 1.5],
        );
        match out {
            LpOutcome::Optimal(v) => assert!((v - 2.5).abs() < 1e-9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn random_lp_agrees_with_vertex_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(2..6);
            let rows: Vec<Vec<f64>> = (0..m)
                .map(|_| vec![rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0)])
                .collect();
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..2.0)).collect();
            let c = [rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
            // Vertex oracle over pairs of constraints plus axes.
            let mut all = rows.clone();
            all.push(vec![-1.0, 0.0]);
            all.push(vec![0.0, -1.0]);
            let mut bb = b.clone();
            bb.push(0.0);
            bb.push(0.0);
            let mut best = f64::NEG_INFINITY;
            for i in 0..all.len() {
                for j in (i + 1)..all.len() {
                    let det = all[i][0] * all[j][1] - all[i][1] * all[j][0];
                    if det.abs() < 1e-12 {
                        continue;
                    }
                    let x = (bb[i] * all[j][1] - all[i][1] * bb[j]) / det;
                    let y = (all[i][0] * bb[j] - bb[i] * all[j][0]) / det;
                    let feasible = all
                        .iter()
                        .zip(bb.iter())
                        .all(|(r, &rb)| r[0] * x + r[1] * y <= rb + 1e-9);
                    if feasible {
                        best = best.max(c[0] * x + c[1] * y);
                    }
                }
            }
            match maximize(&c, &rows, &b) {
                LpOutcome::Optimal(v) => {
                    assert!((v - best).abs() < 1e-7, "lp {v} vs oracle {best}")
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}
