//! The dual `U*` of the universal enveloping algebra, in the basis `d^j t`
//! dual to the PBW monomials, and finite tensor powers of it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pbw::{accumulate, Straightener};
use crate::rational::{big, binomial, Rational};
use crate::series::{write_signed_terms, MultiIndex};

/// `sum_j c_j d^j t`, keeping only `|j| <= cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualUElement {
    dim: usize,
    cap: u32,
    terms: BTreeMap<MultiIndex, Rational>,
}

/// `binom(r + s, r)` taken componentwise.
pub fn multinomial(r: &MultiIndex, s: &MultiIndex) -> Rational {
    big(r
        .exponents()
        .iter()
        .zip(s.exponents())
        .map(|(&a, &b)| binomial(a + b, a))
        .product())
}

impl DualUElement {
    pub fn zero(dim: usize, cap: u32) -> Self {
        Self {
            dim,
            cap,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `d^0 t`, i.e. the counit of `U`.
    pub fn one(dim: usize, cap: u32) -> Self {
        Self::basis(dim, cap, MultiIndex::zero(dim))
    }

    pub fn basis(dim: usize, cap: u32, index: MultiIndex) -> Self {
        let mut out = Self::zero(dim, cap);
        out.add_term(index, Rational::one());
        out
    }

    pub fn from_terms<I>(dim: usize, cap: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut out = Self::zero(dim, cap);
        for (idx, c) in terms {
            if idx.len() != dim {
                return Err(Error::VarMismatch {
                    left: dim,
                    right: idx.len(),
                });
            }
            out.add_term(idx, c);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &MultiIndex) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, index: MultiIndex, c: Rational) {
        if index.total_degree() <= self.cap {
            accumulate(&mut self.terms, index, c);
        }
    }

    /// Smallest `|j|` with a nonzero coefficient; `None` for zero.
    pub fn filtration_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::total_degree)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::VarMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.cap != other.cap {
            return Err(Error::TruncMismatch {
                left: self.cap,
                right: other.cap,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.cap);
        for (i, x) in &self.terms {
            out.add_term(i.clone(), x * c);
        }
        out
    }

    /// `d^r t * d^s t = binom(r+s, r) d^{r+s} t`, extended bilinearly.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.dim, self.cap);
        for (r, a) in &self.terms {
            let room = self.cap - r.total_degree();
            for (s, b) in &other.terms {
                if s.total_degree() > room {
                    break;
                }
                out.add_term(r.add(s), a * b * multinomial(r, s));
            }
        }
        Ok(out)
    }

    /// `d^r t -> sum_{l + k = r} d^l t (x) d^k t`.
    ///
    /// This is the dual of the product of `U` only when the Lie algebra is
    /// abelian; [`DualUElement::comultiply_lie`] handles the general case.
    pub fn comultiply(&self) -> DualTensor {
        let mut out = DualTensor::zero(self.dim, self.cap, 2);
        for (r, c) in &self.terms {
            for l in MultiIndex::up_to_degree(self.dim, r.total_degree()) {
                if let Some(k) = r.checked_sub(&l) {
                    out.add_term(vec![l, k], c.clone());
                }
            }
        }
        out
    }

    /// The coproduct dual to multiplication in `U`: the coefficient of
    /// `d^a t (x) d^b t` is the value on `e^a e^b`, straightened to PBW form.
    pub fn comultiply_lie(&self, pbw: &mut Straightener) -> DualTensor {
        assert_eq!(pbw.dim(), self.dim, "Lie algebra dimension must match");
        let mut out = DualTensor::zero(self.dim, self.cap, 2);
        for a in MultiIndex::up_to_degree(self.dim, self.cap) {
            for b in MultiIndex::up_to_degree(self.dim, self.cap - a.total_degree()) {
                let mut v = Rational::zero();
                for (c, x) in pbw.mul(&a, &b) {
                    if let Some(phi) = self.terms.get(&c) {
                        v += x * phi;
                    }
                }
                out.add_term(vec![a.clone(), b], v);
            }
        }
        out
    }

    /// Pairing with a PBW element (the value of this functional on it).
    pub fn eval(&self, u: &BTreeMap<MultiIndex, Rational>) -> Rational {
        u.iter()
            .filter_map(|(i, c)| self.terms.get(i).map(|x| x * c))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

fn dual_monomial_text(idx: &MultiIndex) -> String {
    let single = idx.len() == 1;
    let parts: Vec<String> = idx
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let var = if single { "t".to_string() } else { format!("t{}", i + 1) };
            if e == 1 {
                format!("d{var}")
            } else {
                format!("d^{e}{var}")
            }
        })
        .collect();
    parts.join(" ")
}

impl fmt::Display for DualUElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(f, self.terms.iter().map(|(i, c)| (c.clone(), dual_monomial_text(i))))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&DualUElement> for &DualUElement {
            type Output = DualUElement;
            fn $method(self, rhs: &DualUElement) -> DualUElement {
                self.$checked(rhs).expect("incompatible U* elements")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

/// Element of `(U*)^{(x) n}`: coefficients on `n`-tuples of PBW indices with
/// total degree at most `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTensor {
    dim: usize,
    cap: u32,
    slots: usize,
    terms: BTreeMap<Vec<MultiIndex>, Rational>,
}

impl DualTensor {
    pub fn zero(dim: usize, cap: u32, slots: usize) -> Self {
        Self {
            dim,
            cap,
            slots,
            terms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &Rational)> {
        self.terms.iter()
    }

    pub fn get(&self, key: &[MultiIndex]) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, key: Vec<MultiIndex>, c: Rational) {
        debug_assert_eq!(key.len(), self.slots);
        let deg: u32 = key.iter().map(MultiIndex::total_degree).sum();
        if deg <= self.cap {
            accumulate(&mut self.terms, key, c);
        }
    }

    /// `a_1 (x) ... (x) a_n`, dropping tuples of total degree above `cap`.
    pub fn tensor(factors: &[&DualUElement], cap: u32) -> Self {
        let dim = factors.first().map_or(0, |f| f.dim());
        let mut partial: Vec<(Vec<MultiIndex>, u32, Rational)> = vec![(Vec::new(), 0, Rational::one())];
        for f in factors {
            let mut next = Vec::new();
            for (key, deg, c) in &partial {
                for (i, x) in f.terms() {
                    let d = deg + i.total_degree();
                    if d > cap {
                        continue;
                    }
                    let mut k = key.clone();
                    k.push(i.clone());
                    next.push((k, d, c * x));
                }
            }
            partial = next;
        }
        let mut out = Self::zero(dim, cap, factors.len());
        for (k, _, c) in partial {
            out.add_term(k, c);
        }
        out
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if self.slots != other.slots || self.dim != other.dim {
            return Err(Error::Dimension("tensor shapes differ".into()));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Re-caps at a lower total degree.
    pub fn recap(&self, cap: u32) -> Self {
        let mut out = Self::zero(self.dim, cap, self.slots);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    /// Componentwise product in `(U*)^{(x) n}`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.slots, other.slots);
        let mut out = Self::zero(self.dim, self.cap.min(other.cap), self.slots);
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                let mut coef = a * b;
                let mut key = Vec::with_capacity(self.slots);
                for (r, s) in ka.iter().zip(kb) {
                    coef *= multinomial(r, s);
                    key.push(r.add(s));
                }
                out.add_term(key, coef);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::{Builtin, FormalGroupLaw};
    use crate::lie::LieAlgebra;
    use crate::rational::{factorial, int};

    fn idx(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn dt_powers() {
        let dt = DualUElement::basis(1, 8, idx(&[1]));
        assert_eq!((&dt * &dt).to_string(), "2*d^2t");
        let mut acc = DualUElement::one(1, 8);
        for n in 1..=8u32 {
            acc = &acc * &dt;
            assert_eq!(acc, DualUElement::basis(1, 8, idx(&[n])).scale(&big(factorial(n))));
        }
    }

    #[test]
    fn mixed_product() {
        let a = DualUElement::basis(2, 4, idx(&[1, 0]));
        let b = DualUElement::basis(2, 4, idx(&[0, 1]));
        assert_eq!(&a * &b, DualUElement::basis(2, 4, idx(&[1, 1])));
    }

    #[test]
    fn pascal_coproduct() {
        let dt = DualUElement::basis(1, 4, idx(&[1]));
        let c = dt.comultiply();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get(&[idx(&[0]), idx(&[1])]), int(1));
        assert_eq!(c.get(&[idx(&[1]), idx(&[0])]), int(1));

        let c = DualUElement::basis(1, 4, idx(&[2])).comultiply();
        assert_eq!(c.len(), 3);
        assert_eq!(c.get(&[idx(&[1]), idx(&[1])]), int(1));

        let c = DualUElement::one(2, 4).comultiply();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(&[idx(&[0, 0]), idx(&[0, 0])]), int(1));
    }

    #[test]
    fn lie_coproduct_agrees_with_pascal_when_abelian() {
        let mut pbw = Straightener::new(LieAlgebra::abelian(2));
        for j in MultiIndex::up_to_degree(2, 4) {
            let e = DualUElement::basis(2, 4, j);
            assert_eq!(e.comultiply_lie(&mut pbw), e.comultiply());
        }
    }

    #[test]
    fn lie_coproduct_sees_the_bracket() {
        let lie = LieAlgebra::from_fgl(&FormalGroupLaw::builtin(Builtin::Heisenberg, 3)).unwrap();
        let mut pbw = Straightener::new(lie);
        // <d t3, e2 e1> = <d t3, e1 e2 - e3> = -1
        let c = DualUElement::basis(3, 3, idx(&[0, 0, 1])).comultiply_lie(&mut pbw);
        assert_eq!(c.get(&[idx(&[0, 1, 0]), idx(&[1, 0, 0])]), int(-1));
        assert_eq!(c.get(&[idx(&[1, 0, 0]), idx(&[0, 1, 0])]), int(0));
    }

    #[test]
    fn text_form() {
        let u = DualUElement::from_terms(
            3,
            4,
            [(idx(&[1, 0, 2]), int(3)), (idx(&[0, 1, 0]), int(-1)), (idx(&[0, 0, 0]), int(1))],
        )
        .unwrap();
        assert_eq!(u.to_string(), "1 - 1*dt2 + 3*dt1 d^2t3");
    }
}
