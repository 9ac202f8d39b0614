//! Random distributions and channels for the numeric checks.
//!
//! Joint tables are drawn uniformly from the probability simplex.
//! Factorization constraints are imposed by sampling each conditional block
//! on its own simplex and multiplying, never by rejection.

use rand::Rng;

use super::pmf::{DiscreteChannel, JointPmf};
use super::DiscreteError;

/// Uniform sample from the `n`-simplex (normalized unit exponentials).
pub fn simplex_uniform(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln().max(1e-12))
        .collect();
    let s: f64 = v.iter().sum();
    for x in &mut v {
        *x /= s;
    }
    v
}

/// Uniform joint pmf over the full table of the named variables.
pub fn random_joint(rng: &mut impl Rng, vars: &[(&str, usize)]) -> JointPmf {
    let sizes: Vec<usize> = vars.iter().map(|&(_, s)| s).collect();
    let total: usize = sizes.iter().product();
    JointPmf::new(
        vars.iter().map(|&(n, _)| n.to_string()).collect(),
        sizes,
        simplex_uniform(rng, total),
    )
    .expect("simplex sample is a valid pmf")
}

/// One conditional block `p(vars | given)` of a factored distribution.
pub struct Factor {
    pub vars: Vec<&'static str>,
    pub given: Vec<&'static str>,
}

impl Factor {
    pub fn new(vars: &[&'static str], given: &[&'static str]) -> Self {
        Self {
            vars: vars.to_vec(),
            given: given.to_vec(),
        }
    }
}

/// Sample a distribution with the exact factorization `prod p(f.vars |
/// f.given)`: each conditional row is simplex-uniform. Every declared
/// variable must appear in exactly one factor's `vars`.
pub fn random_factored(
    rng: &mut impl Rng,
    vars: &[(&'static str, usize)],
    factors: &[Factor],
) -> Result<JointPmf, DiscreteError> {
    let names: Vec<&str> = vars.iter().map(|&(n, _)| n).collect();
    let sizes: Vec<usize> = vars.iter().map(|&(_, s)| s).collect();
    let idx_of = |n: &str| -> Result<usize, DiscreteError> {
        names
            .iter()
            .position(|v| *v == n)
            .ok_or_else(|| DiscreteError::UnknownVariable(n.to_string()))
    };
    let mut seen = vec![false; names.len()];
    struct Block {
        var_idx: Vec<usize>,
        given_idx: Vec<usize>,
        /// rows[given_key][out_key]
        rows: Vec<Vec<f64>>,
    }
    let mut blocks = Vec::with_capacity(factors.len());
    for f in factors {
        let var_idx: Vec<usize> = f.vars.iter().map(|v| idx_of(v)).collect::<Result<_, _>>()?;
        let given_idx: Vec<usize> =
            f.given.iter().map(|v| idx_of(v)).collect::<Result<_, _>>()?;
        for &i in &var_idx {
            if seen[i] {
                return Err(DiscreteError::SubstitutionInconsistent(format!(
                    "variable {} generated by two factors",
                    names[i]
                )));
            }
            seen[i] = true;
        }
        let out_size: usize = var_idx.iter().map(|&i| sizes[i]).product();
        let given_size: usize = given_idx.iter().map(|&i| sizes[i]).product();
        let rows = (0..given_size)
            .map(|_| simplex_uniform(rng, out_size))
            .collect();
        blocks.push(Block {
            var_idx,
            given_idx,
            rows,
        });
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(DiscreteError::SubstitutionInconsistent(format!(
            "variable {} not generated by any factor",
            names[i]
        )));
    }

    let total: usize = sizes.iter().product();
    let mut strides = vec![1usize; sizes.len()];
    for i in (0..sizes.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    let key = |cell: usize, idx: &[usize]| -> usize {
        let mut k = 0usize;
        for &i in idx {
            k = k * sizes[i] + (cell / strides[i]) % sizes[i];
        }
        k
    };
    let mut table = vec![0.0f64; total];
    for (cell, slot) in table.iter_mut().enumerate() {
        let mut p = 1.0;
        for b in &blocks {
            let gk = key(cell, &b.given_idx);
            let ok = key(cell, &b.var_idx);
            p *= b.rows[gk][ok];
        }
        *slot = p;
    }
    // Conditionals each normalize, so the product normalizes too; renormalize
    // only to absorb float roundoff.
    let sum: f64 = table.iter().sum();
    for v in &mut table {
        *v /= sum;
    }
    JointPmf::new(
        names.iter().map(|s| s.to_string()).collect(),
        sizes,
        table,
    )
}

/// Channel with every `(x1, x2)` row uniform on the output simplex.
pub fn random_channel(
    rng: &mut impl Rng,
    x1_size: usize,
    x2_size: usize,
    y1_size: usize,
    y2_size: usize,
) -> DiscreteChannel {
    let mut table = Vec::with_capacity(x1_size * x2_size * y1_size * y2_size);
    for _ in 0..x1_size * x2_size {
        table.extend(simplex_uniform(rng, y1_size * y2_size));
    }
    DiscreteChannel::new(x1_size, x2_size, y1_size, y2_size, table)
        .expect("rows are simplex samples")
}

/// Channel with `y2 = h(x1, x2)` for a uniformly random function `h` (not
/// necessarily injective) and a random `y1` channel.
pub fn random_deterministic_y2_channel(
    rng: &mut impl Rng,
    x1_size: usize,
    x2_size: usize,
    y1_size: usize,
    y2_size: usize,
) -> DiscreteChannel {
    let mut table = vec![0.0f64; x1_size * x2_size * y1_size * y2_size];
    for x1 in 0..x1_size {
        for x2 in 0..x2_size {
            let y2 = rng.gen_range(0..y2_size);
            let y1_row = simplex_uniform(rng, y1_size);
            for (y1, &p) in y1_row.iter().enumerate() {
                table[((x1 * x2_size + x2) * y1_size + y1) * y2_size + y2] = p;
            }
        }
    }
    DiscreteChannel::new(x1_size, x2_size, y1_size, y2_size, table)
        .expect("constructed rows sum to one")
}

/// Channel whose `y2` output reveals `(x1, x2)` through a random relabeling
/// (so `y2` is deterministic and, given `x1`, determines `x2`), with an
/// independent random `y1` channel.
pub fn random_revealing_semidet_channel(
    rng: &mut impl Rng,
    x1_size: usize,
    x2_size: usize,
    y1_size: usize,
) -> DiscreteChannel {
    let y2_size = x1_size * x2_size;
    // Random permutation of the y2 labels.
    let mut perm: Vec<usize> = (0..y2_size).collect();
    for i in (1..y2_size).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut table = vec![0.0f64; x1_size * x2_size * y1_size * y2_size];
    for x1 in 0..x1_size {
        for x2 in 0..x2_size {
            let y2 = perm[x1 * x2_size + x2];
            let y1_row = simplex_uniform(rng, y1_size);
            for (y1, &p) in y1_row.iter().enumerate() {
                table[((x1 * x2_size + x2) * y1_size + y1) * y2_size + y2] = p;
            }
        }
    }
    DiscreteChannel::new(x1_size, x2_size, y1_size, y2_size, table)
        .expect("constructed rows sum to one")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn simplex_sums_to_one() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(1);
        for n in [1, 2, 7, 64] {
            let v = simplex_uniform(&mut rng, n);
            assert_eq!(v.len(), n);
            assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(v.iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn factored_distribution_factors() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(2);
        // p(u) p(x1|u) p(x2|u,x1): check I(x2; u | u, x1...) consistency via
        // the defining conditional independencies having the right support.
        let p = random_factored(
            &mut rng,
            &[("u", 2), ("x1", 2), ("x2", 2)],
            &[
                Factor::new(&["u"], &[]),
                Factor::new(&["x1"], &["u"]),
                Factor::new(&["x2"], &["u", "x1"]),
            ],
        )
        .unwrap();
        assert!((p.table().iter().sum::<f64>() - 1.0).abs() < 1e-12);

        // Markov factorization p(a) p(b|a) p(c|b) gives I(a; c | b) = 0.
        let m = random_factored(
            &mut rng,
            &[("a", 2), ("b", 3), ("c", 2)],
            &[
                Factor::new(&["a"], &[]),
                Factor::new(&["b"], &["a"]),
                Factor::new(&["c"], &["b"]),
            ],
        )
        .unwrap();
        assert!(m.mutual_information(&["a"], &["c"], &["b"]).unwrap() < 1e-10);
    }

    #[test]
    fn factored_rejects_bad_specs() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        assert!(random_factored(
            &mut rng,
            &[("a", 2), ("b", 2)],
            &[Factor::new(&["a"], &[]), Factor::new(&["a"], &["b"])],
        )
        .is_err());
        assert!(random_factored(&mut rng, &[("a", 2), ("b", 2)], &[Factor::new(&["a"], &[])])
            .is_err());
    }

    #[test]
    fn revealing_channel_is_deterministic_in_y2() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(4);
        let ch = random_revealing_semidet_channel(&mut rng, 2, 2, 2);
        assert!(ch.y2_deterministic());
        // Given x1, y2 determines x2.
        let p = random_joint(&mut rng, &[("x1", 2), ("x2", 2)]);
        let full = p.extend_with_channel(&ch).unwrap();
        assert!(full.cond_entropy(&["x2"], &["x1", "y2"]).unwrap() < 1e-10);
    }
}
