//! Truncated multivariate power series over exact rationals.
//!
//! A [`TruncatedSeries`] represents an element of `Q[[t_1, ..., t_k]]` modulo
//! the ideal of monomials of total degree greater than its truncation degree
//! `D`. Every operation here is exact modulo that ideal, which is all the
//! completed rings downstream ever need.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, format_rational, parse_rational, Rational};

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: lower total degree first, and within a
/// degree the larger leading exponent first (`t1^2 < t1 t2 < t2^2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// The index with a single 1 in position `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// `j! = j_1! ... j_k!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    /// Slice of the exponent vector belonging to block `b` of size `size`.
    pub fn block(&self, b: usize, size: usize) -> MultiIndex {
        MultiIndex(self.0[b * size..(b + 1) * size].to_vec())
    }

    /// Concatenation of exponent vectors.
    pub fn concat(parts: &[MultiIndex]) -> MultiIndex {
        MultiIndex(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    /// All indices of length `len` with total degree exactly `degree`, in
    /// graded-lex order.
    pub fn of_degree(len: usize, degree: u32) -> Vec<MultiIndex> {
        fn rec(len: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == len {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(len, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if len == 0 {
            if degree == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(len, degree, &mut Vec::with_capacity(len), &mut out);
        out
    }

    /// All indices of length `len` with total degree at most `max_degree`.
    pub fn up_to_degree(len: usize, max_degree: u32) -> Vec<MultiIndex> {
        (0..=max_degree)
            .flat_map(|d| MultiIndex::of_degree(len, d))
            .collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Partition of the variables into `count` consecutive blocks of `size`
/// variables, as used for tensor powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blocks {
    pub count: usize,
    pub size: usize,
}

/// Sparse truncated power series. Zero coefficients and monomials above the
/// truncation degree are never stored.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    num_vars: usize,
    trunc: u32,
    terms: BTreeMap<MultiIndex, Rational>,
    blocks: Option<Blocks>,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.trunc == other.trunc && self.terms == other.terms
    }
}

impl Eq for TruncatedSeries {}

impl TruncatedSeries {
    pub fn zero(num_vars: usize, trunc: u32) -> Self {
        Self {
            num_vars,
            trunc,
            terms: BTreeMap::new(),
            blocks: None,
        }
    }

    pub fn constant(num_vars: usize, trunc: u32, c: Rational) -> Self {
        Self::monomial(num_vars, trunc, MultiIndex::zero(num_vars), c)
    }

    pub fn one(num_vars: usize, trunc: u32) -> Self {
        Self::constant(num_vars, trunc, Rational::one())
    }

    /// The coordinate function `t_i`.
    pub fn var(num_vars: usize, trunc: u32, i: usize) -> Self {
        Self::monomial(num_vars, trunc, MultiIndex::unit(num_vars, i), Rational::one())
    }

    pub fn monomial(num_vars: usize, trunc: u32, index: MultiIndex, c: Rational) -> Self {
        assert_eq!(index.len(), num_vars, "multi-index length must equal num_vars");
        let mut s = Self::zero(num_vars, trunc);
        s.add_term(index, c);
        s
    }

    /// Builds a series from arbitrary terms; duplicate indices are summed,
    /// zero and over-degree terms dropped.
    pub fn from_terms<I>(num_vars: usize, trunc: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut s = Self::zero(num_vars, trunc);
        for (idx, c) in terms {
            if idx.len() != num_vars {
                return Err(Error::VarMismatch {
                    left: num_vars,
                    right: idx.len(),
                });
            }
            s.add_term(idx, c);
        }
        Ok(s)
    }

    pub fn with_blocks(mut self, count: usize, size: usize) -> Self {
        assert_eq!(count * size, self.num_vars, "block structure must cover all variables");
        self.blocks = Some(Blocks { count, size });
        self
    }

    pub fn blocks(&self) -> Option<Blocks> {
        self.blocks
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
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

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &MultiIndex) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * t^index` in place, respecting truncation and canonical form.
    pub fn add_term(&mut self, index: MultiIndex, c: Rational) {
        if c.is_zero() || index.total_degree() > self.trunc {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Cauchy product, discarding every monomial of total degree above `D`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc: HashMap<MultiIndex, Rational> = HashMap::new();
        for (ia, ca) in &self.terms {
            let room = self.trunc - ia.total_degree();
            for (ib, cb) in &other.terms {
                // terms are sorted by degree
                if ib.total_degree() > room {
                    break;
                }
                let prod = ca * cb;
                *acc.entry(ia.add(ib)).or_insert_with(Rational::zero) += prod;
            }
        }
        let mut out = Self::zero(self.num_vars, self.trunc);
        out.blocks = self.blocks;
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            let mut z = Self::zero(self.num_vars, self.trunc);
            z.blocks = self.blocks;
            return z;
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.num_vars, self.trunc);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Constant coefficient (the counit `f -> f(0)`).
    pub fn eval_at_zero(&self) -> Rational {
        self.coefficient(&MultiIndex::zero(self.num_vars))
    }

    /// Largest `i` with every monomial of total degree `>= i`; `None` stands
    /// for infinity (the zero series).
    pub fn filtration_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::total_degree)
    }

    /// Part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = Self::zero(self.num_vars, self.trunc);
        out.blocks = self.blocks;
        out.terms = self
            .terms
            .iter()
            .filter(|(i, _)| i.total_degree() == d)
            .map(|(i, c)| (i.clone(), c.clone()))
            .collect();
        out
    }

    /// Re-truncates at a (possibly different) degree.
    pub fn retruncate(&self, trunc: u32) -> Self {
        let mut out = Self::zero(self.num_vars, trunc);
        out.blocks = self.blocks;
        out.terms = self
            .terms
            .iter()
            .filter(|(i, _)| i.total_degree() <= trunc)
            .map(|(i, c)| (i.clone(), c.clone()))
            .collect();
        out
    }

    /// Formal partial derivative. Only degrees `<= D-1` of the result are
    /// determined by the input; the result is still tagged with `D`.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.num_vars {
            return Err(Error::VarIndex {
                index: var,
                num_vars: self.num_vars,
            });
        }
        let mut out = Self::zero(self.num_vars, self.trunc);
        out.blocks = self.blocks;
        for (idx, c) in &self.terms {
            let e = idx.0[var];
            if e == 0 {
                continue;
            }
            let mut j = idx.clone();
            j.0[var] -= 1;
            out.add_term(j, c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Renames variable `i` to `map[i]` inside a space of `new_num_vars`
    /// variables.
    pub fn relabel(&self, map: &[usize], new_num_vars: usize) -> Self {
        assert_eq!(map.len(), self.num_vars);
        let mut out = Self::zero(new_num_vars, self.trunc);
        for (idx, c) in &self.terms {
            let mut e = vec![0u32; new_num_vars];
            for (i, &x) in idx.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(MultiIndex(e), c.clone());
        }
        out
    }

    /// Composition `f(subs_1, ..., subs_k)`.
    ///
    /// Every substituted series must have zero constant term, so the result is
    /// exact modulo degree `D + 1` of the target space.
    pub fn substitute(&self, subs: &[TruncatedSeries]) -> Result<Self> {
        if subs.len() != self.num_vars {
            return Err(Error::Arity {
                expected: self.num_vars,
                got: subs.len(),
            });
        }
        let Some(first) = subs.first() else {
            // no variables: f is a constant
            return Err(Error::Arity {
                expected: 1,
                got: 0,
            });
        };
        let (nv, trunc) = (first.num_vars, first.trunc);
        for (i, s) in subs.iter().enumerate() {
            s.check_compatible(first)?;
            if !s.eval_at_zero().is_zero() {
                return Err(Error::NonzeroConstant { index: i });
            }
        }

        let mut max_exp = vec![0u32; self.num_vars];
        for idx in self.terms.keys() {
            for (m, &e) in max_exp.iter_mut().zip(&idx.0) {
                *m = (*m).max(e);
            }
        }
        let powers: Vec<Vec<TruncatedSeries>> = subs
            .iter()
            .zip(&max_exp)
            .map(|(s, &m)| {
                let mut ps = vec![TruncatedSeries::one(nv, trunc)];
                for k in 1..=m.min(trunc) {
                    let next = &ps[k as usize - 1] * s;
                    ps.push(next);
                }
                ps
            })
            .collect();

        let mut out = Self::zero(nv, trunc);
        for (idx, c) in &self.terms {
            if idx.total_degree() > trunc {
                continue;
            }
            let mut acc: Option<TruncatedSeries> = None;
            for (v, &e) in idx.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = &powers[v][e as usize];
                acc = Some(match acc {
                    None => p.clone(),
                    Some(a) => &a * p,
                });
                if acc.as_ref().is_some_and(TruncatedSeries::is_zero) {
                    break;
                }
            }
            let term = match acc {
                None => TruncatedSeries::constant(nv, trunc, c.clone()),
                Some(a) => a.scale(c),
            };
            for (i, x) in term.terms {
                out.add_term(i, x);
            }
        }
        Ok(out)
    }

    /// Parses the canonical text form, e.g. `1/2*t^2 - 3*t1 t2 + 4`.
    ///
    /// A bare `t` is accepted for single-variable series.
    pub fn parse(text: &str, num_vars: usize, trunc: u32) -> Result<Self> {
        let mut s = Self::zero(num_vars, trunc);
        for (pos, sign, body) in split_signed_terms(text)? {
            let (coef, mono) = match body.split_once('*') {
                Some((c, m)) => (parse_rational(c).map_err(|e| at(e, pos))?, m.trim()),
                None => {
                    if body.starts_with('t') {
                        (Rational::one(), body)
                    } else {
                        (parse_rational(body).map_err(|e| at(e, pos))?, "")
                    }
                }
            };
            let mut e = vec![0u32; num_vars];
            for factor in mono.split_whitespace() {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, x)) => (
                        n,
                        x.parse::<u32>().map_err(|_| Error::Parse {
                            position: pos,
                            message: format!("bad exponent in `{factor}`"),
                        })?,
                    ),
                    None => (factor, 1),
                };
                let var = parse_var_name(name, num_vars).ok_or_else(|| Error::Parse {
                    position: pos,
                    message: format!("unknown variable `{name}`"),
                })?;
                e[var] += exp;
            }
            s.add_term(MultiIndex(e), if sign { -coef } else { coef });
        }
        Ok(s)
    }
}

fn at(e: Error, position: usize) -> Error {
    match e {
        Error::Parse { message, .. } => Error::Parse { position, message },
        other => other,
    }
}

fn parse_var_name(name: &str, num_vars: usize) -> Option<usize> {
    let rest = name.strip_prefix('t')?;
    if rest.is_empty() {
        return (num_vars == 1).then_some(0);
    }
    let i: usize = rest.parse().ok()?;
    (1..=num_vars).contains(&i).then(|| i - 1)
}

/// Splits `a + b - c` into `(byte offset, negative?, body)` triples. A sign
/// directly after `/`, `^` or `*` belongs to the literal, not the sum.
pub(crate) fn split_signed_terms(text: &str) -> Result<Vec<(usize, bool, &str)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'+' || b == b'-') && !matches!(prev_non_space(bytes, i), Some(b'/' | b'^' | b'*')) {
            let body = text[start..i].trim();
            if !body.is_empty() {
                out.push((start, negative, body));
                negative = false;
            }
            if b == b'-' {
                negative = !negative;
            }
            start = i + 1;
        }
    }
    let body = text[start..].trim();
    if !body.is_empty() {
        out.push((start, negative, body));
    } else if start > 0 {
        return Err(Error::Parse {
            position: start,
            message: "dangling sign".into(),
        });
    }
    if out.len() == 1 && out[0].2 == "0" {
        out.clear();
    }
    Ok(out)
}

fn prev_non_space(bytes: &[u8], i: usize) -> Option<u8> {
    bytes[..i].iter().rev().copied().find(|b| !b.is_ascii_whitespace())
}

pub(crate) fn write_signed_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (Rational, String)>,
{
    let mut first = true;
    for (c, body) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        let coef = format_rational(&abs);
        let piece = if body.is_empty() {
            coef
        } else {
            format!("{coef}*{body}")
        };
        match (first, neg) {
            (true, false) => write!(f, "{piece}")?,
            (true, true) => write!(f, "-{piece}")?,
            (false, false) => write!(f, " + {piece}")?,
            (false, true) => write!(f, " - {piece}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn monomial_text(idx: &MultiIndex) -> String {
    let single = idx.len() == 1;
    idx.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = if single { "t".to_string() } else { format!("t{}", i + 1) };
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.terms.iter().map(|(i, c)| (c.clone(), monomial_text(i))),
        )
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            /// Panics on variable-count or truncation mismatch; use the
            /// `checked_*` method for a recoverable error.
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$checked(rhs).expect("incompatible series")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn s1(text: &str, d: u32) -> TruncatedSeries {
        TruncatedSeries::parse(text, 1, d).unwrap()
    }

    fn exp_series(sign: i64, d: u32) -> TruncatedSeries {
        let terms = (0..=d).map(|n| {
            let c = Rational::new(
                BigInt::from(sign).pow(n),
                factorial(n),
            );
            (MultiIndex::new(vec![n]), c)
        });
        TruncatedSeries::from_terms(1, d, terms).unwrap()
    }

    #[test]
    fn add_examples() {
        assert!((&s1("t", 4) + &s1("-t", 4)).is_zero());
        assert_eq!(&s1("1 + t", 4) + &s1("t^2", 4), s1("1 + t + t^2", 4));
        // exp(t) + exp(-t) = 2 + t^2 + t^4/12
        let sum = &exp_series(1, 4) + &exp_series(-1, 4);
        assert_eq!(sum, s1("2 + 1*t^2 + 1/12*t^4", 4));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s1("1 + t", 4) * &s1("1 - t", 4), s1("1 - t^2", 4));
        let t1 = TruncatedSeries::var(2, 4, 0);
        let t2 = TruncatedSeries::var(2, 4, 1);
        assert_eq!(&t1 * &t2, TruncatedSeries::parse("t1 t2", 2, 4).unwrap());
        let a = s1("t + t^2", 3);
        assert_eq!(&a * &a, s1("t^2 + 2*t^3", 3));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = TruncatedSeries::var(1, 3, 0);
        let b = TruncatedSeries::var(2, 3, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::VarMismatch { .. })));
        let c = TruncatedSeries::var(1, 4, 0);
        assert!(matches!(a.checked_mul(&c), Err(Error::TruncMismatch { .. })));
    }

    #[test]
    fn substitute_examples() {
        let sub = TruncatedSeries::parse("t1 + t2", 2, 4).unwrap();
        let r = s1("t^2", 4).substitute(&[sub]).unwrap();
        assert_eq!(r, TruncatedSeries::parse("t1^2 + 2*t1 t2 + t2^2", 2, 4).unwrap());

        let g = TruncatedSeries::parse("t1 + t2 + t1 t2", 2, 4).unwrap();
        assert_eq!(s1("t", 4).substitute(&[g.clone()]).unwrap(), g);

        let r = s1("t^3", 2).substitute(&[TruncatedSeries::parse("t1 + t2", 2, 2).unwrap()]);
        assert!(r.unwrap().is_zero());
    }

    #[test]
    fn substitute_rejects_constant_and_arity() {
        let bad = TruncatedSeries::parse("1 + t1", 2, 3).unwrap();
        assert_eq!(
            s1("t", 3).substitute(&[bad]),
            Err(Error::NonzeroConstant { index: 0 })
        );
        let ok = TruncatedSeries::var(2, 3, 0);
        assert!(matches!(
            s1("t", 3).substitute(&[ok.clone(), ok]),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(s1("t^2", 4).partial_derivative(0).unwrap(), s1("2*t", 4));
        let f = TruncatedSeries::parse("t1 t2^2", 2, 4).unwrap();
        assert_eq!(
            f.partial_derivative(0).unwrap(),
            TruncatedSeries::parse("t2^2", 2, 4).unwrap()
        );
        let d = exp_series(1, 5).partial_derivative(0).unwrap();
        assert_eq!(d, exp_series(1, 4).retruncate(5));
        assert!(s1("t", 3).partial_derivative(1).is_err());
    }

    #[test]
    fn counit_and_filtration() {
        assert_eq!(s1("1 + t", 3).eval_at_zero(), int(1));
        assert_eq!(TruncatedSeries::parse("t1 t2", 2, 3).unwrap().eval_at_zero(), int(0));
        assert_eq!(s1("3/7 + t^3", 3).eval_at_zero(), frac(3, 7));
        assert_eq!(s1("t^2 + t^5", 6).filtration_degree(), Some(2));
        assert_eq!(TruncatedSeries::zero(1, 3).filtration_degree(), None);
        assert_eq!(s1("1 + t", 3).filtration_degree(), Some(0));
    }

    #[test]
    fn text_form_is_graded_lex() {
        let f = TruncatedSeries::parse("t2^2 + t1 t2 + t1^2 + t3 - 1/2", 3, 4).unwrap();
        assert_eq!(f.to_string(), "-1/2 + 1*t3 + 1*t1^2 + 1*t1 t2 + 1*t2^2");
        assert_eq!(s1("-t + t^2", 3).to_string(), "-1*t + 1*t^2");
        assert_eq!(TruncatedSeries::zero(2, 3).to_string(), "0");
        let back = TruncatedSeries::parse(&f.to_string(), 3, 4).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = TruncatedSeries::parse("1*t + 2*q", 1, 3).unwrap_err();
        assert!(matches!(e, Error::Parse { position: 5, .. }), "{e:?}");
    }

    #[test]
    fn multi_index_enumeration() {
        let v = MultiIndex::of_degree(2, 2);
        assert_eq!(
            v,
            vec![
                MultiIndex::new(vec![2, 0]),
                MultiIndex::new(vec![1, 1]),
                MultiIndex::new(vec![0, 2])
            ]
        );
        assert_eq!(MultiIndex::up_to_degree(3, 2).len(), 10);
    }
}
