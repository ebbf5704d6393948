//! Chevalley-Eilenberg cochains with trivial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::rank;
use crate::pbw::accumulate;
use crate::rational::{binomial, Rational};
use crate::series::write_signed_terms;

/// Sorts a wedge of basis vectors, returning the sign of the permutation, or
/// `None` when an index repeats.
pub fn sort_wedge(mut t: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut negative = false;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((t, negative))
}

/// Strictly increasing `n`-subsets of `0..m`.
pub fn increasing_tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, n, &mut Vec::new(), &mut out);
    out
}

/// An alternating `n`-form on an `m`-dimensional Lie algebra, stored by its
/// values on `e_{i_1} ∧ ... ∧ e_{i_n}` with `i_1 < ... < i_n` (zero-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CECochain {
    dim: usize,
    degree: usize,
    values: BTreeMap<Vec<usize>, Rational>,
}

impl CECochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut out = Self::zero(dim, 0);
        out.add_value(Vec::new(), c);
        out
    }

    /// `e_{i_1}^* ∧ ... ∧ e_{i_n}^*` for any order of the indices.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut out = Self::zero(dim, indices.len());
        out.add_value(indices.to_vec(), Rational::one());
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.values.iter()
    }

    /// Adds `c` to the value on `e_{t_1} ∧ ... ∧ e_{t_n}`, reordering with sign.
    pub fn add_value(&mut self, t: Vec<usize>, c: Rational) {
        assert_eq!(t.len(), self.degree, "wedge length must equal the degree");
        assert!(t.iter().all(|&i| i < self.dim), "basis index out of range");
        if let Some((sorted, negative)) = sort_wedge(t) {
            accumulate(&mut self.values, sorted, if negative { -c } else { c });
        }
    }

    /// Value on `e_{t_1} ∧ ... ∧ e_{t_n}` in any order.
    pub fn value(&self, t: &[usize]) -> Rational {
        match sort_wedge(t.to_vec()) {
            None => Rational::zero(),
            Some((sorted, negative)) => {
                let v = self.values.get(&sorted).cloned().unwrap_or_else(Rational::zero);
                if negative {
                    -v
                } else {
                    v
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::Dimension(format!(
                "cochains of shape ({}, {}) and ({}, {})",
                self.dim, self.degree, other.dim, other.degree
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (t, c) in &other.values {
            accumulate(&mut out.values, t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (t, x) in &self.values {
            accumulate(&mut out.values, t.clone(), x * c);
        }
        out
    }

    /// Exterior product; `(a ∧ b)(e_I)` is the shuffle sum.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.values {
            for (b, y) in &other.values {
                let mut t = a.clone();
                t.extend_from_slice(b);
                out.add_value(t, x * y);
            }
        }
        out
    }
}

impl fmt::Display for CECochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.values.iter().map(|(t, c)| {
                let body: Vec<String> = t.iter().map(|i| format!("e{}^", i + 1)).collect();
                (c.clone(), body.join(" ∧ "))
            }),
        )
    }
}

/// `(∂'ω)(e_{i_1},...,e_{i_{n+1}}) = Σ_{r<s} (-1)^{r+s} ω([e_{i_r},e_{i_s}], ...)`.
pub fn ce_diff(lie: &LieAlgebra, w: &CECochain) -> Result<CECochain> {
    if w.dim != lie.dim() {
        return Err(Error::VarMismatch {
            left: lie.dim(),
            right: w.dim,
        });
    }
    let n = w.degree;
    let mut out = CECochain::zero(w.dim, n + 1);
    if n + 1 > w.dim {
        return Ok(out);
    }
    for t in increasing_tuples(w.dim, n + 1) {
        let mut v = Rational::zero();
        for r in 0..=n {
            for s in r + 1..=n {
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != r && k != s)
                    .map(|(_, &i)| i)
                    .collect();
                let sign_negative = (r + s) % 2 == 1;
                for (k, c) in lie.bracket(t[r], t[s]) {
                    let mut arg = vec![k];
                    arg.extend_from_slice(&rest);
                    let x = w.value(&arg) * c;
                    if sign_negative {
                        v -= x;
                    } else {
                        v += x;
                    }
                }
            }
        }
        out.add_value(t, v);
    }
    Ok(out)
}

/// Matrix of `∂'^n` with rows indexed by the `n`-basis and columns by the
/// `(n+1)`-basis.
pub fn ce_matrix(lie: &LieAlgebra, n: usize) -> Vec<Vec<Rational>> {
    let m = lie.dim();
    let targets = increasing_tuples(m, n + 1);
    increasing_tuples(m, n)
        .into_iter()
        .map(|t| {
            let d = ce_diff(lie, &CECochain::basis(m, &t)).expect("dimensions agree");
            targets.iter().map(|u| d.value(u)).collect()
        })
        .collect()
}

/// Betti numbers `b_0, ..., b_m` of the Chevalley-Eilenberg complex.
pub fn ce_cohomology(lie: &LieAlgebra) -> Vec<u64> {
    let m = lie.dim();
    let ranks: Vec<usize> = (0..=m).map(|n| rank(&ce_matrix(lie, n))).collect();
    (0..=m)
        .map(|n| {
            let total: u64 = binomial(m as u32, n as u32).try_into().expect("small binomial");
            let into = if n == 0 { 0 } else { ranks[n - 1] };
            total - (ranks[n] + into) as u64
        })
        .collect()
}
