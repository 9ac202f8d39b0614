//! Finite joint probability tables and the information measures over them.

use serde::{Deserialize, Serialize};

use super::DiscreteError;

/// Probabilities below this are treated as exact zeros in entropy sums.
const PROB_EPS: f64 = 1e-15;
/// Tolerance on probability normalization.
const SUM_TOL: f64 = 1e-12;

/// A joint pmf over named finite variables. The table is row-major in the
/// declared variable order (last variable fastest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointPmf {
    vars: Vec<String>,
    sizes: Vec<usize>,
    table: Vec<f64>,
}

impl JointPmf {
    pub fn new(
        vars: Vec<String>,
        sizes: Vec<usize>,
        table: Vec<f64>,
    ) -> Result<Self, DiscreteError> {
        if vars.len() != sizes.len() {
            return Err(DiscreteError::InvalidTable(format!(
                "{} names for {} sizes",
                vars.len(),
                sizes.len()
            )));
        }
        if sizes.contains(&0) {
            return Err(DiscreteError::InvalidTable("zero-size alphabet".into()));
        }
        let want: usize = sizes.iter().product();
        if table.len() != want {
            return Err(DiscreteError::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                want
            )));
        }
        if table.iter().any(|&p| !(p >= -PROB_EPS) || !p.is_finite()) {
            return Err(DiscreteError::InvalidTable(
                "negative or non-finite probability".into(),
            ));
        }
        let sum: f64 = table.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(DiscreteError::InvalidTable(format!(
                "probabilities sum to {sum}"
            )));
        }
        let table = table.iter().map(|&p| p.max(0.0)).collect();
        Ok(Self { vars, sizes, table })
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn var_index(&self, name: &str) -> Result<usize, DiscreteError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| DiscreteError::UnknownVariable(name.to_string()))
    }

    pub fn var_size(&self, name: &str) -> Result<usize, DiscreteError> {
        Ok(self.sizes[self.var_index(name)?])
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1usize; self.sizes.len()];
        for i in (0..self.sizes.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.sizes[i + 1];
        }
        s
    }

    /// Entropy (bits) of the joint marginal over `names`. Empty set has
    /// zero entropy.
    pub fn entropy(&self, names: &[&str]) -> Result<f64, DiscreteError> {
        if names.is_empty() {
            return Ok(0.0);
        }
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.var_index(n))
            .collect::<Result<_, _>>()?;
        let strides = self.strides();
        let mut out_size = 1usize;
        let mut out_stride = Vec::with_capacity(idx.len());
        for &i in &idx {
            out_stride.push(out_size);
            out_size *= self.sizes[i];
        }
        let mut marg = vec![0.0f64; out_size];
        for (cell, &p) in self.table.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            let mut key = 0usize;
            for (j, &i) in idx.iter().enumerate() {
                let digit = (cell / strides[i]) % self.sizes[i];
                key += digit * out_stride[j];
            }
            marg[key] += p;
        }
        Ok(entropy_of(&marg))
    }

    /// Conditional mutual information `I(A; B | C)` in bits. The three sets
    /// must be pairwise disjoint.
    pub fn mutual_information(
        &self,
        a: &[&str],
        b: &[&str],
        cond: &[&str],
    ) -> Result<f64, DiscreteError> {
        for x in a {
            if b.contains(x) || cond.contains(x) {
                return Err(DiscreteError::InvalidTable(format!(
                    "variable {x} repeated across mutual-information arguments"
                )));
            }
        }
        for x in b {
            if cond.contains(x) {
                return Err(DiscreteError::InvalidTable(format!(
                    "variable {x} repeated across mutual-information arguments"
                )));
            }
        }
        let ac: Vec<&str> = a.iter().chain(cond.iter()).copied().collect();
        let bc: Vec<&str> = b.iter().chain(cond.iter()).copied().collect();
        let abc: Vec<&str> = a.iter().chain(b.iter()).chain(cond.iter()).copied().collect();
        Ok(self.entropy(&ac)? + self.entropy(&bc)? - self.entropy(&abc)? - self.entropy(cond)?)
    }

    /// Conditional entropy `H(A | C)` in bits.
    pub fn cond_entropy(&self, a: &[&str], cond: &[&str]) -> Result<f64, DiscreteError> {
        let ac: Vec<&str> = a.iter().chain(cond.iter()).copied().collect();
        Ok(self.entropy(&ac)? - self.entropy(cond)?)
    }

    /// Product extension with a memoryless channel: appends `y1`, `y2`
    /// drawn from `p(y1, y2 | x1, x2)`.
    pub fn extend_with_channel(&self, ch: &DiscreteChannel) -> Result<JointPmf, DiscreteError> {
        let i1 = self.var_index("x1")?;
        let i2 = self.var_index("x2")?;
        if self.sizes[i1] != ch.x1_size || self.sizes[i2] != ch.x2_size {
            return Err(DiscreteError::AlphabetMismatch(format!(
                "pmf has |x1| = {}, |x2| = {}; channel expects {} and {}",
                self.sizes[i1], self.sizes[i2], ch.x1_size, ch.x2_size
            )));
        }
        let strides = self.strides();
        let mut vars = self.vars.clone();
        vars.push("y1".to_string());
        vars.push("y2".to_string());
        let mut sizes = self.sizes.clone();
        sizes.push(ch.y1_size);
        sizes.push(ch.y2_size);
        let mut table = vec![0.0f64; self.table.len() * ch.y1_size * ch.y2_size];
        for (cell, &p) in self.table.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            let x1 = (cell / strides[i1]) % self.sizes[i1];
            let x2 = (cell / strides[i2]) % self.sizes[i2];
            for y1 in 0..ch.y1_size {
                for y2 in 0..ch.y2_size {
                    let q = ch.prob(x1, x2, y1, y2);
                    if q > 0.0 {
                        table[(cell * ch.y1_size + y1) * ch.y2_size + y2] = p * q;
                    }
                }
            }
        }
        JointPmf::new(vars, sizes, table)
    }

    /// Append a deterministic product variable `name = (parts...)`, e.g. a
    /// composite auxiliary. The original variables are kept.
    pub fn with_tuple_var(&self, name: &str, parts: &[&str]) -> Result<JointPmf, DiscreteError> {
        let idx: Vec<usize> = parts
            .iter()
            .map(|p| self.var_index(p))
            .collect::<Result<_, _>>()?;
        let strides = self.strides();
        let new_size: usize = idx.iter().map(|&i| self.sizes[i]).product();
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        let mut sizes = self.sizes.clone();
        sizes.push(new_size);
        let mut table = vec![0.0f64; self.table.len() * new_size];
        for (cell, &p) in self.table.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            let mut key = 0usize;
            for &i in &idx {
                key = key * self.sizes[i] + (cell / strides[i]) % self.sizes[i];
            }
            table[cell * new_size + key] = p;
        }
        JointPmf::new(vars, sizes, table)
    }

    /// Append a constant (size-1) variable.
    pub fn with_const_var(&self, name: &str) -> Result<JointPmf, DiscreteError> {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        let mut sizes = self.sizes.clone();
        sizes.push(1);
        JointPmf::new(vars, sizes, self.table.clone())
    }

    /// Append `name` as an exact copy of `of`.
    pub fn with_copy_var(&self, name: &str, of: &str) -> Result<JointPmf, DiscreteError> {
        self.with_tuple_var(name, &[of])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "vars": self.vars,
            "sizes": self.sizes,
            "table": self.table,
        }))
        .expect("pmf serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, DiscreteError> {
        #[derive(Deserialize)]
        struct Raw {
            vars: Vec<String>,
            sizes: Vec<usize>,
            table: Vec<f64>,
        }
        let raw: Raw =
            serde_json::from_str(s).map_err(|e| DiscreteError::InvalidTable(e.to_string()))?;
        JointPmf::new(raw.vars, raw.sizes, raw.table)
    }
}

fn entropy_of(probs: &[f64]) -> f64 {
    let mut h = 0.0;
    for &p in probs {
        if p > PROB_EPS {
            h -= p * p.log2();
        }
    }
    h
}

/// Entropy evaluations keyed by variable subset. The inequality systems
/// reuse the same marginals across many rows; caching them makes a region
/// evaluation a handful of table scans instead of dozens.
pub struct InfoCache<'a> {
    pmf: &'a JointPmf,
    memo: std::collections::HashMap<Vec<usize>, f64>,
}

impl<'a> InfoCache<'a> {
    pub fn new(pmf: &'a JointPmf) -> Self {
        Self {
            pmf,
            memo: std::collections::HashMap::new(),
        }
    }

    pub fn entropy(&mut self, names: &[&str]) -> Result<f64, DiscreteError> {
        let mut key: Vec<usize> = names
            .iter()
            .map(|n| self.pmf.var_index(n))
            .collect::<Result<_, _>>()?;
        key.sort_unstable();
        key.dedup();
        if let Some(&h) = self.memo.get(&key) {
            return Ok(h);
        }
        let h = self.pmf.entropy(names)?;
        self.memo.insert(key, h);
        Ok(h)
    }

    pub fn mutual_information(
        &mut self,
        a: &[&str],
        b: &[&str],
        cond: &[&str],
    ) -> Result<f64, DiscreteError> {
        let ac: Vec<&str> = a.iter().chain(cond.iter()).copied().collect();
        let bc: Vec<&str> = b.iter().chain(cond.iter()).copied().collect();
        let abc: Vec<&str> = a.iter().chain(b.iter()).chain(cond.iter()).copied().collect();
        Ok(self.entropy(&ac)? + self.entropy(&bc)? - self.entropy(&abc)? - self.entropy(cond)?)
    }

    pub fn cond_entropy(&mut self, a: &[&str], cond: &[&str]) -> Result<f64, DiscreteError> {
        let ac: Vec<&str> = a.iter().chain(cond.iter()).copied().collect();
        Ok(self.entropy(&ac)? - self.entropy(cond)?)
    }
}

/// A memoryless channel `p(y1, y2 | x1, x2)` over finite alphabets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteChannel {
    pub x1_size: usize,
    pub x2_size: usize,
    pub y1_size: usize,
    pub y2_size: usize,
    /// Row-major over (x1, x2, y1, y2).
    table: Vec<f64>,
}

impl DiscreteChannel {
    pub fn new(
        x1_size: usize,
        x2_size: usize,
        y1_size: usize,
        y2_size: usize,
        table: Vec<f64>,
    ) -> Result<Self, DiscreteError> {
        let want = x1_size * x2_size * y1_size * y2_size;
        if table.len() != want {
            return Err(DiscreteError::InvalidTable(format!(
                "channel table has {} entries, expected {want}",
                table.len()
            )));
        }
        if table.iter().any(|&p| !(p >= -PROB_EPS) || !p.is_finite()) {
            return Err(DiscreteError::InvalidTable(
                "negative or non-finite channel probability".into(),
            ));
        }
        let ch = Self {
            x1_size,
            x2_size,
            y1_size,
            y2_size,
            table: table.iter().map(|&p| p.max(0.0)).collect(),
        };
        for x1 in 0..x1_size {
            for x2 in 0..x2_size {
                let mut s = 0.0;
                for y1 in 0..y1_size {
                    for y2 in 0..y2_size {
                        s += ch.prob(x1, x2, y1, y2);
                    }
                }
                if (s - 1.0).abs() > SUM_TOL {
                    return Err(DiscreteError::InvalidTable(format!(
                        "channel row (x1={x1}, x2={x2}) sums to {s}"
                    )));
                }
            }
        }
        Ok(ch)
    }

    #[inline]
    pub fn prob(&self, x1: usize, x2: usize, y1: usize, y2: usize) -> f64 {
        self.table[((x1 * self.x2_size + x2) * self.y1_size + y1) * self.y2_size + y2]
    }

    /// True if `y2` is a deterministic function of `(x1, x2)`: each row's
    /// y2-marginal is a point mass.
    pub fn y2_deterministic(&self) -> bool {
        for x1 in 0..self.x1_size {
            for x2 in 0..self.x2_size {
                for y2 in 0..self.y2_size {
                    let mut m = 0.0;
                    for y1 in 0..self.y1_size {
                        m += self.prob(x1, x2, y1, y2);
                    }
                    if m > SUM_TOL && (m - 1.0).abs() > SUM_TOL {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "vars": ["x1", "x2", "y1", "y2"],
            "sizes": [self.x1_size, self.x2_size, self.y1_size, self.y2_size],
            "table": self.table,
        }))
        .expect("channel serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, DiscreteError> {
        #[derive(Deserialize)]
        struct Raw {
            sizes: Vec<usize>,
            table: Vec<f64>,
        }
        let raw: Raw =
            serde_json::from_str(s).map_err(|e| DiscreteError::InvalidTable(e.to_string()))?;
        if raw.sizes.len() != 4 {
            return Err(DiscreteError::InvalidTable(
                "channel needs sizes [x1, x2, y1, y2]".into(),
            ));
        }
        DiscreteChannel::new(raw.sizes[0], raw.sizes[1], raw.sizes[2], raw.sizes[3], raw.table)
    }

    /// Identity channel: `y1 = x1`, `y2 = x2` (the noiseless parallel pair).
    pub fn noiseless_parallel(x1_size: usize, x2_size: usize) -> Self {
        let mut table = vec![0.0; x1_size * x2_size * x1_size * x2_size];
        for x1 in 0..x1_size {
            for x2 in 0..x2_size {
                table[((x1 * x2_size + x2) * x1_size + x1) * x2_size + x2] = 1.0;
            }
        }
        Self {
            x1_size,
            x2_size,
            y1_size: x1_size,
            y2_size: x2_size,
            table,
        }
    }

    /// Constant-output channel: both outputs are independent of the inputs.
    pub fn constant_output(x1_size: usize, x2_size: usize) -> Self {
        let mut table = vec![0.0; x1_size * x2_size];
        for v in table.iter_mut() {
            *v = 1.0;
        }
        Self {
            x1_size,
            x2_size,
            y1_size: 1,
            y2_size: 1,
            table,
        }
    }
}
