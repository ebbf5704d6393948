//! Cochains of `U(g)`: linear maps `U(g)^{(x) n} -> Q`, written in the PBW
//! basis of each slot. Supports are capped by the total PBW degree.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pbw::{accumulate, Straightener};
use crate::rational::Rational;
use crate::series::MultiIndex;
use crate::ustar::DualTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Inhomogeneous,
    /// `U(g)`-linear on `n + 1` slots; stored on tuples whose first slot is
    /// the unit, and extended by `φ(u_0, ...) = ε(u_0) φ(1, ...)`.
    Homogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UCochain {
    dim: usize,
    cap: u32,
    degree: usize,
    flavor: Flavor,
    values: BTreeMap<Vec<MultiIndex>, Rational>,
}

fn total_degree(key: &[MultiIndex]) -> u32 {
    key.iter().map(MultiIndex::total_degree).sum()
}

/// All `slots`-tuples of PBW indices in `dim` generators, total degree `<= cap`.
pub fn pbw_tuples(dim: usize, slots: usize, cap: u32) -> Vec<Vec<MultiIndex>> {
    MultiIndex::up_to_degree(slots * dim, cap)
        .into_iter()
        .map(|k| (0..slots).map(|b| k.block(b, dim)).collect())
        .collect()
}

impl UCochain {
    pub fn zero(dim: usize, cap: u32, degree: usize, flavor: Flavor) -> Self {
        Self {
            dim,
            cap,
            degree,
            flavor,
            values: BTreeMap::new(),
        }
    }

    /// The inhomogeneous cochain with the same coefficients as a tensor in
    /// `(U*)^{(x) n}`.
    pub fn from_tensor(t: &DualTensor) -> Self {
        let mut out = Self::zero(t.dim(), t.cap(), t.slots(), Flavor::Inhomogeneous);
        for (k, c) in t.terms() {
            out.set(k.clone(), c.clone());
        }
        out
    }

    pub fn to_tensor(&self) -> Result<DualTensor> {
        if self.flavor != Flavor::Inhomogeneous {
            return Err(Error::Dimension("only inhomogeneous cochains are tensors".into()));
        }
        let mut out = DualTensor::zero(self.dim, self.cap, self.degree);
        for (k, c) in &self.values {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn slots(&self) -> usize {
        match self.flavor {
            Flavor::Inhomogeneous => self.degree,
            Flavor::Homogeneous => self.degree + 1,
        }
    }

    /// Sets the value on a basis tuple. Homogeneous keys must start with the unit.
    pub fn set(&mut self, key: Vec<MultiIndex>, c: Rational) {
        assert_eq!(key.len(), self.slots());
        if self.flavor == Flavor::Homogeneous {
            assert!(key[0].is_zero(), "homogeneous cochains are stored at u_0 = 1");
        }
        if total_degree(&key) <= self.cap {
            self.values.remove(&key);
            accumulate(&mut self.values, key, c);
        }
    }

    /// Value on the basis tuple `key`; zero beyond the cap.
    pub fn eval(&self, key: &[MultiIndex]) -> Rational {
        match self.flavor {
            Flavor::Inhomogeneous => self.values.get(key).cloned().unwrap_or_else(Rational::zero),
            Flavor::Homogeneous => {
                if !key[0].is_zero() {
                    return Rational::zero();
                }
                self.values.get(key).cloned().unwrap_or_else(Rational::zero)
            }
        }
    }

    pub fn values(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &Rational)> {
        self.values.iter()
    }
}

/// `φ ↦ [(u_0, ..., u_n) ↦ ε(u_0) φ(u_1, ..., u_n)]`.
pub fn iota(c: &UCochain) -> Result<UCochain> {
    if c.flavor != Flavor::Inhomogeneous {
        return Err(Error::Dimension("iota expects an inhomogeneous cochain".into()));
    }
    let mut out = UCochain::zero(c.dim, c.cap, c.degree, Flavor::Homogeneous);
    for (k, x) in &c.values {
        let mut key = vec![MultiIndex::zero(c.dim)];
        key.extend(k.iter().cloned());
        out.set(key, x.clone());
    }
    Ok(out)
}

/// `φ ↦ [(u_1, ..., u_n) ↦ φ(1, u_1, ..., u_n)]`.
pub fn iota_inverse(c: &UCochain) -> Result<UCochain> {
    if c.flavor != Flavor::Homogeneous {
        return Err(Error::Dimension("iota_inverse expects a homogeneous cochain".into()));
    }
    let mut out = UCochain::zero(c.dim, c.cap, c.degree, Flavor::Inhomogeneous);
    for (k, x) in &c.values {
        out.set(k[1..].to_vec(), x.clone());
    }
    Ok(out)
}

/// `(∂φ)(u_1..u_{n+1}) = ε(u_1)φ(u_2..) + Σ (-1)^i φ(.., u_i u_{i+1}, ..)
/// + (-1)^{n+1} φ(..u_n) ε(u_{n+1})`.
pub fn u_diff(pbw: &mut Straightener, c: &UCochain) -> Result<UCochain> {
    if c.flavor != Flavor::Inhomogeneous {
        return Err(Error::Dimension("u_diff expects an inhomogeneous cochain".into()));
    }
    if pbw.dim() != c.dim {
        return Err(Error::VarMismatch {
            left: pbw.dim(),
            right: c.dim,
        });
    }
    let n = c.degree;
    let mut out = UCochain::zero(c.dim, c.cap, n + 1, Flavor::Inhomogeneous);
    if c.is_zero() {
        return Ok(out);
    }
    for key in pbw_tuples(c.dim, n + 1, c.cap) {
        let mut v = Rational::zero();
        if key[0].is_zero() {
            v += c.eval(&key[1..]);
        }
        for i in 0..n {
            let prod = pbw.mul(&key[i], &key[i + 1]);
            let mut acc = Rational::zero();
            for (u, x) in prod {
                let mut k = key[..i].to_vec();
                k.push(u);
                k.extend_from_slice(&key[i + 2..]);
                acc += c.eval(&k) * x;
            }
            // one-based index i + 1
            if i % 2 == 0 {
                v -= acc;
            } else {
                v += acc;
            }
        }
        if key[n].is_zero() {
            let x = c.eval(&key[..n]);
            if n % 2 == 0 {
                v -= x;
            } else {
                v += x;
            }
        }
        out.set(key, v);
    }
    Ok(out)
}

/// `ι ∘ ∂ ∘ ι^{-1}`.
pub fn uh_diff(pbw: &mut Straightener, c: &UCochain) -> Result<UCochain> {
    iota(&u_diff(pbw, &iota_inverse(c)?)?)
}

/// Counit-normalised constant: value `c` on `(1, ..., 1)`.
pub fn constant(dim: usize, cap: u32, c: Rational) -> UCochain {
    let mut out = UCochain::zero(dim, cap, 0, Flavor::Inhomogeneous);
    out.set(Vec::new(), c);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::{Builtin, FormalGroupLaw};
    use crate::lie::LieAlgebra;
    use crate::rational::int;

    #[test]
    fn iota_round_trip_and_shape() {
        let mut c = UCochain::zero(2, 3, 1, Flavor::Inhomogeneous);
        c.set(vec![MultiIndex::new(vec![1, 1])], int(4));
        c.set(vec![MultiIndex::new(vec![0, 1])], int(-1));
        let h = iota(&c).unwrap();
        assert_eq!(h.eval(&[MultiIndex::zero(2), MultiIndex::new(vec![1, 1])]), int(4));
        assert_eq!(h.eval(&[MultiIndex::new(vec![1, 0]), MultiIndex::new(vec![1, 1])]), int(0));
        assert_eq!(iota_inverse(&h).unwrap(), c);
        let k = constant(2, 3, int(7));
        assert_eq!(iota(&k).unwrap().eval(&[MultiIndex::zero(2)]), int(7));
    }

    #[test]
    fn square_is_zero() {
        let lie = LieAlgebra::from_fgl(&FormalGroupLaw::builtin(Builtin::Heisenberg, 3)).unwrap();
        let mut pbw = Straightener::new(lie);
        let mut c = UCochain::zero(3, 3, 1, Flavor::Inhomogeneous);
        c.set(vec![MultiIndex::new(vec![0, 0, 1])], int(1));
        c.set(vec![MultiIndex::new(vec![1, 1, 0])], int(2));
        let d = u_diff(&mut pbw, &c).unwrap();
        assert!(!d.is_zero());
        assert!(u_diff(&mut pbw, &d).unwrap().is_zero());
        assert!(u_diff(&mut pbw, &constant(3, 3, int(2))).unwrap().is_zero());
    }
}
