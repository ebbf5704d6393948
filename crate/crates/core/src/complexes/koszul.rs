//! The Koszul resolution `U(g) (x) Λ^n g` and its dual with trivial
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::complexes::ce::{increasing_tuples, sort_wedge, CECochain};
use crate::error::{Error, Result};
use crate::pbw::{accumulate, Straightener};
use crate::rational::Rational;
use crate::series::{write_signed_terms, MultiIndex};

/// Sum of `c * e^u (x) e_{i_1} ∧ ... ∧ e_{i_n}` with increasing wedges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulElement {
    dim: usize,
    degree: usize,
    terms: BTreeMap<(MultiIndex, Vec<usize>), Rational>,
}

impl KoszulElement {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `e^u (x) e_{w_1} ∧ ... ∧ e_{w_n}`, reordering the wedge with sign.
    pub fn basis(dim: usize, u: MultiIndex, wedge: &[usize]) -> Self {
        let mut out = Self::zero(dim, wedge.len());
        out.add_term(u, wedge.to_vec(), Rational::one());
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, Vec<usize>), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, u: MultiIndex, wedge: Vec<usize>, c: Rational) {
        assert_eq!(wedge.len(), self.degree);
        assert_eq!(u.len(), self.dim);
        if let Some((w, negative)) = sort_wedge(wedge) {
            accumulate(&mut self.terms, (u, w), if negative { -c } else { c });
        }
    }
}

fn pbw_text(u: &MultiIndex) -> String {
    let parts: Vec<String> = u
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("e{}", i + 1) } else { format!("e{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for KoszulElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.terms.iter().map(|((u, w), c)| {
                let wedge: Vec<String> = w.iter().map(|i| format!("e{}", i + 1)).collect();
                let wedge = if wedge.is_empty() { "1".into() } else { wedge.join(" ∧ ") };
                (c.clone(), format!("{} ⊗ {}", pbw_text(u), wedge))
            }),
        )
    }
}

/// `d(u ⊗ e_{i_1}∧...∧e_{i_n}) = Σ_{k<l} (-1)^{k+l} u ⊗ [e_{i_k},e_{i_l}]∧...
/// + Σ_j (-1)^{j+1} u e_{i_j} ⊗ ...`, with `u e_{i_j}` rewritten in PBW form.
pub fn koszul_diff(pbw: &mut Straightener, x: &KoszulElement) -> Result<KoszulElement> {
    if pbw.dim() != x.dim {
        return Err(Error::VarMismatch {
            left: pbw.dim(),
            right: x.dim,
        });
    }
    let n = x.degree;
    if n == 0 {
        return Err(Error::Dimension("the Koszul differential starts in degree 1".into()));
    }
    let mut out = KoszulElement::zero(x.dim, n - 1);
    for ((u, w), c) in &x.terms {
        for k in 0..n {
            for l in k + 1..n {
                let rest: Vec<usize> = (0..n).filter(|&r| r != k && r != l).map(|r| w[r]).collect();
                // one-based k + l has the same parity as zero-based
                let sign = if (k + l) % 2 == 0 { c.clone() } else { -c.clone() };
                let bracket: Vec<(usize, Rational)> =
                    pbw.lie().bracket(w[k], w[l]).map(|(i, v)| (i, v.clone())).collect();
                for (i, v) in bracket {
                    let mut wedge = vec![i];
                    wedge.extend_from_slice(&rest);
                    out.add_term(u.clone(), wedge, &sign * v);
                }
            }
        }
        for j in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&r| r != j).map(|r| w[r]).collect();
            let sign = if j % 2 == 0 { c.clone() } else { -c.clone() };
            for (v, y) in pbw.mul_generator(u, w[j]) {
                out.add_term(v, rest.clone(), &sign * y);
            }
        }
    }
    Ok(out)
}

/// A `U(g)`-linear map `U(g) ⊗ Λ^n g -> Q` (trivial action), determined by
/// its values on `1 ⊗ e_{i_1} ∧ ... ∧ e_{i_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulDualCochain {
    dim: usize,
    degree: usize,
    values: BTreeMap<Vec<usize>, Rational>,
}

impl KoszulDualCochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            values: BTreeMap::new(),
        }
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

    pub fn add_value(&mut self, wedge: Vec<usize>, c: Rational) {
        assert_eq!(wedge.len(), self.degree);
        if let Some((w, negative)) = sort_wedge(wedge) {
            accumulate(&mut self.values, w, if negative { -c } else { c });
        }
    }

    /// `f(e^u ⊗ e_{w}) = ε(e^u) f(1 ⊗ e_w)`.
    pub fn eval(&self, u: &MultiIndex, wedge: &[usize]) -> Rational {
        if !u.is_zero() {
            return Rational::zero();
        }
        match sort_wedge(wedge.to_vec()) {
            None => Rational::zero(),
            Some((w, negative)) => {
                let v = self.values.get(&w).cloned().unwrap_or_else(Rational::zero);
                if negative {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn eval_element(&self, x: &KoszulElement) -> Rational {
        x.terms()
            .map(|((u, w), c)| self.eval(u, w) * c)
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// The dual differential `(δf)(x) = f(d x)`.
pub fn koszul_dual_diff(pbw: &mut Straightener, f: &KoszulDualCochain) -> Result<KoszulDualCochain> {
    let m = f.dim;
    let mut out = KoszulDualCochain::zero(m, f.degree + 1);
    for w in increasing_tuples(m, f.degree + 1) {
        let dx = koszul_diff(pbw, &KoszulElement::basis(m, MultiIndex::zero(m), &w))?;
        out.add_value(w, f.eval_element(&dx));
    }
    Ok(out)
}

/// Restriction to `1 ⊗ Λ^n g`.
pub fn kappa(f: &KoszulDualCochain) -> CECochain {
    let mut out = CECochain::zero(f.dim, f.degree);
    for (w, c) in &f.values {
        out.add_value(w.clone(), c.clone());
    }
    out
}

pub fn kappa_inverse(w: &CECochain) -> KoszulDualCochain {
    let mut out = KoszulDualCochain::zero(w.dim(), w.degree());
    for (t, c) in w.values() {
        out.add_value(t.clone(), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::{Builtin, FormalGroupLaw};
    use crate::lie::LieAlgebra;

    fn heis() -> Straightener {
        Straightener::new(LieAlgebra::from_fgl(&FormalGroupLaw::builtin(Builtin::Heisenberg, 3)).unwrap())
    }

    fn unit(m: usize) -> MultiIndex {
        MultiIndex::zero(m)
    }

    #[test]
    fn examples() {
        let mut ab = Straightener::new(LieAlgebra::abelian(2));
        let x = KoszulElement::basis(2, unit(2), &[0, 1]);
        let d = koszul_diff(&mut ab, &x).unwrap();
        assert_eq!(d.to_string(), "1*e1 ⊗ e2 - 1*e2 ⊗ e1");

        let mut h = heis();
        let x = KoszulElement::basis(3, unit(3), &[0, 1]);
        let d = koszul_diff(&mut h, &x).unwrap();
        assert_eq!(d.to_string(), "-1*1 ⊗ e3 + 1*e1 ⊗ e2 - 1*e2 ⊗ e1");
    }

    #[test]
    fn square_is_zero() {
        let mut h = heis();
        let x = KoszulElement::basis(3, unit(3), &[0, 1, 2]);
        let d = koszul_diff(&mut h, &x).unwrap();
        assert!(koszul_diff(&mut h, &d).unwrap().is_zero());
        let x = KoszulElement::basis(3, MultiIndex::new(vec![0, 2, 1]), &[0, 1]);
        let d = koszul_diff(&mut h, &x).unwrap();
        assert!(koszul_diff(&mut h, &d).unwrap().is_zero());
    }

    #[test]
    fn kappa_round_trip() {
        let w = CECochain::basis(3, &[0, 2]);
        assert_eq!(kappa(&kappa_inverse(&w)), w);
    }
}
