//! Evaluation of formal group laws on p-adic points of the standard groups
//! `G(h) = { z : v_p(z_i) >= h + 1 }`, with every result certified modulo
//! `p^N`, and the convergence test for series in the modified ring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fgl::{FormalGroupLaw, TailModel};
use crate::hopf::modified_ring_check;
use crate::rational::{format_rational, is_prime, legendre_vp_factorial, pow_big, vp, vp_int, Rational};
use crate::series::TruncatedSeries;

/// A valuation that may be infinite (the residue is zero at this precision).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Valuation(pub Option<u32>);

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |v: &Valuation| v.0.map_or((1, 0), |x| (0, x));
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Valuation {
    pub fn at_least(self, v: u32) -> bool {
        self.0.is_none_or(|x| x >= v)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => s.serialize_u32(v),
            None => s.serialize_str("inf"),
        }
    }
}

/// An element of `Z_p / p^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicScalar {
    p: u32,
    precision: u32,
    residue: BigInt,
}

fn reduce_rational(x: &Rational, p: u32, modulus: &BigInt) -> Option<BigInt> {
    if x.is_zero() {
        return Some(BigInt::zero());
    }
    if vp(x, p)? < 0 {
        return None;
    }
    let den = x.denom().mod_floor(modulus);
    let inv = den.extended_gcd(modulus).x;
    Some((x.numer() * inv).mod_floor(modulus))
}

impl PadicScalar {
    pub fn new(p: u32, precision: u32, value: &BigInt) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = pow_big(p, precision);
        Ok(Self {
            p,
            precision,
            residue: value.mod_floor(&modulus),
        })
    }

    pub fn from_i64(p: u32, precision: u32, value: i64) -> Result<Self> {
        Self::new(p, precision, &BigInt::from(value))
    }

    /// Reduction of a p-integral rational.
    pub fn from_rational(p: u32, precision: u32, x: &Rational) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let residue = reduce_rational(x, p, &pow_big(p, precision)).ok_or_else(|| Error::NonIntegral {
            p,
            detail: format_rational(x),
        })?;
        Ok(Self {
            p,
            precision,
            residue,
        })
    }

    pub fn zero(p: u32, precision: u32) -> Self {
        Self {
            p,
            precision,
            residue: BigInt::zero(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        Valuation(vp_int(&self.residue, self.p))
    }

    fn binary(&self, other: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::MixedPrimes(self.p, other.p));
        }
        let precision = self.precision.min(other.precision);
        Self::new(self.p, precision, &op(&self.residue, &other.residue))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a - b)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.precision, &-&self.residue).expect("prime already checked")
    }

    /// Same residue at a lower precision.
    pub fn with_precision(&self, precision: u32) -> Self {
        Self::new(self.p, precision.min(self.precision), &self.residue).expect("prime already checked")
    }

    /// Centred representative in `(-p^N/2, p^N/2]`, as a rational.
    pub fn to_rational(&self) -> Rational {
        let modulus = pow_big(self.p, self.precision);
        let r = if &self.residue * 2 > modulus {
            &self.residue - modulus
        } else {
            self.residue.clone()
        };
        Rational::from_integer(r)
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Serialize for PadicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.residue.to_string())
    }
}

/// A point of `G(0)`; the level is recorded by the caller's membership test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GroupPoint {
    coords: Vec<PadicScalar>,
}

impl GroupPoint {
    /// Checks `v_p(z_i) >= level + 1` for every coordinate.
    pub fn new(coords: Vec<PadicScalar>, level: u32) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| Error::Dimension("a point needs at least one coordinate".into()))?;
        let p = first.p;
        if let Some(c) = coords.iter().find(|c| c.p != p) {
            return Err(Error::MixedPrimes(p, c.p));
        }
        let point = Self { coords };
        if !point.in_level(level) {
            return Err(Error::NotInGroup { level });
        }
        Ok(point)
    }

    pub fn from_i64(p: u32, precision: u32, coords: &[i64], level: u32) -> Result<Self> {
        let coords = coords
            .iter()
            .map(|&c| PadicScalar::from_i64(p, precision, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords, level)
    }

    pub fn identity(p: u32, precision: u32, dim: usize) -> Self {
        Self {
            coords: vec![PadicScalar::zero(p, precision); dim],
        }
    }

    pub fn coords(&self) -> &[PadicScalar] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn p(&self) -> u32 {
        self.coords[0].p
    }

    pub fn precision(&self) -> u32 {
        self.coords.iter().map(|c| c.precision).min().unwrap_or(0)
    }

    pub fn valuation(&self) -> Valuation {
        self.coords.iter().map(PadicScalar::valuation).min().unwrap_or(Valuation(None))
    }

    pub fn in_level(&self, level: u32) -> bool {
        self.valuation().at_least(level + 1)
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.coords.iter().map(PadicScalar::valuation).collect()
    }
}

impl fmt::Display for GroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Checks that evaluating `series` at points of valuation `>= v` with terms
/// of degree `<= degree` is exact modulo `p^precision`.
pub fn certify(
    series: &[TruncatedSeries],
    tail: TailModel,
    p: u32,
    v: u32,
    degree: u32,
    precision: u32,
) -> Result<()> {
    let n = i64::from(precision);
    let vi = i64::from(v);
    for s in series {
        for (idx, b) in s.terms() {
            let d = i64::from(idx.total_degree());
            let vb = vp(b, p).expect("stored coefficients are nonzero");
            if d as u32 <= degree {
                // residues are exact mod p^N, so x^j is exact mod p^{N + (d-1)v}
                let slack = if d == 0 { vb } else { vb + (d - 1) * vi };
                if slack < 0 {
                    return Err(Error::Certification(format!(
                        "coefficient {} of degree {d} loses {} digits",
                        format_rational(b),
                        -slack
                    )));
                }
            } else if vb + d * vi < n {
                return Err(Error::Certification(format!(
                    "dropped term of degree {d} has valuation {} < {precision}",
                    vb + d * vi
                )));
            }
        }
        let t = i64::from(degree.max(s.trunc()));
        let ok = match tail {
            TailModel::Exact => true,
            TailModel::Integral => (t + 1) * vi >= n,
            TailModel::DividedPowers => {
                // v_p(b_j) >= -(|j| - 1)/(p - 1), worst case at |j| = t + 1
                let q = i64::from(p) - 1;
                vi * q > 1 && (t + 1) * vi * q - t >= n * q
            }
        };
        if !ok {
            return Err(Error::Certification(format!(
                "unknown terms beyond degree {t} may reach valuation below {precision} at v = {v}"
            )));
        }
    }
    Ok(())
}

/// Evaluates each series at `args`, keeping terms of degree `<= degree`,
/// after certifying the result modulo the common precision.
pub fn certified_eval(
    series: &[TruncatedSeries],
    tail: TailModel,
    args: &[PadicScalar],
    degree: u32,
) -> Result<Vec<PadicScalar>> {
    let first = args
        .first()
        .ok_or_else(|| Error::Dimension("no arguments".into()))?;
    let p = first.p;
    if let Some(a) = args.iter().find(|a| a.p != p) {
        return Err(Error::MixedPrimes(p, a.p));
    }
    let precision = args.iter().map(|a| a.precision).min().expect("nonempty");
    let v = args.iter().map(PadicScalar::valuation).min().expect("nonempty");
    if let Some(v) = v.0 {
        certify(series, tail, p, v, degree, precision)?;
    }
    let modulus = pow_big(p, precision);
    let mut powers: Vec<Vec<BigInt>> = args.iter().map(|a| vec![BigInt::one(), a.residue.clone()]).collect();
    series
        .iter()
        .map(|s| {
            if s.num_vars() != args.len() {
                return Err(Error::Arity {
                    expected: s.num_vars(),
                    got: args.len(),
                });
            }
            let mut acc = Rational::zero();
            for (idx, b) in s.terms() {
                if idx.total_degree() > degree {
                    continue;
                }
                let mut x = BigInt::one();
                for (i, &e) in idx.exponents().iter().enumerate() {
                    let e = e as usize;
                    while powers[i].len() <= e {
                        let next = powers[i].last().expect("nonempty") * &args[i].residue;
                        powers[i].push(next);
                    }
                    x *= &powers[i][e];
                }
                acc += b * Rational::from_integer(x);
            }
            let residue = reduce_rational(&acc, p, &modulus).ok_or_else(|| Error::NonIntegral {
                p,
                detail: "value is not p-integral".into(),
            })?;
            Ok(PadicScalar {
                p,
                precision,
                residue,
            })
        })
        .collect()
}

/// Whether a polynomial law's truncated inverse is already exact, i.e.
/// `G(X, s(X)) = 0` holds with no truncation at all.
fn polynomial_inverse(law: &FormalGroupLaw, s: &[TruncatedSeries]) -> bool {
    let deg = law
        .components()
        .iter()
        .flat_map(|c| c.terms().map(|(i, _)| i.total_degree()))
        .max()
        .unwrap_or(1);
    let big = deg.max(1) * law.trunc();
    let m = law.dim();
    let mut args: Vec<TruncatedSeries> = (0..m).map(|i| TruncatedSeries::var(m, big, i)).collect();
    args.extend(s.iter().map(|c| c.retruncate(big)));
    law.components()
        .iter()
        .all(|c| c.retruncate(big).substitute(&args).is_ok_and(|r| r.is_zero()))
}

/// A formal group law evaluated on `Z_p`-points at a fixed precision and
/// evaluation degree, with its antipode precomputed.
pub struct PadicGroup<'a> {
    law: &'a FormalGroupLaw,
    p: u32,
    precision: u32,
    degree: u32,
    antipode: Vec<TruncatedSeries>,
    antipode_tail: TailModel,
}

impl<'a> PadicGroup<'a> {
    pub fn new(law: &'a FormalGroupLaw, p: u32, precision: u32, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let integral = law
            .components()
            .iter()
            .all(|c| c.terms().all(|(_, b)| vp(b, p).is_some_and(|v| v >= 0)));
        let antipode = law.antipode();
        let antipode_tail = match law.tail() {
            TailModel::Exact if polynomial_inverse(law, &antipode) => TailModel::Exact,
            TailModel::DividedPowers => TailModel::DividedPowers,
            _ if integral => TailModel::Integral,
            _ => TailModel::DividedPowers,
        };
        Ok(Self {
            law,
            p,
            precision,
            degree,
            antipode,
            antipode_tail,
        })
    }

    /// Uses the smallest evaluation degree that certifies products and
    /// inverses of points of level `level`.
    pub fn for_level(law: &'a FormalGroupLaw, p: u32, precision: u32, level: u32) -> Result<Self> {
        let mut g = Self::new(law, p, precision, 1)?;
        g.degree = g.min_degree(level + 1).ok_or_else(|| {
            Error::Certification(format!(
                "truncation {} of {} is too small for precision {precision} at level {level}",
                law.trunc(),
                law.name()
            ))
        })?;
        Ok(g)
    }

    /// Smallest degree `<= trunc` certifying both the law and its antipode at
    /// point valuation `v`.
    pub fn min_degree(&self, v: u32) -> Option<u32> {
        (1..=self.law.trunc()).find(|&d| {
            certify(self.law.components(), self.law.tail(), self.p, v, d, self.precision).is_ok()
                && certify(&self.antipode, self.antipode_tail, self.p, v, d, self.precision).is_ok()
        })
    }

    pub fn law(&self) -> &FormalGroupLaw {
        self.law
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn point(&self, coords: &[i64], level: u32) -> Result<GroupPoint> {
        GroupPoint::from_i64(self.p, self.precision, coords, level)
    }

    fn check_point(&self, x: &GroupPoint) -> Result<()> {
        if x.dim() != self.law.dim() {
            return Err(Error::VarMismatch {
                left: self.law.dim(),
                right: x.dim(),
            });
        }
        if x.p() != self.p {
            return Err(Error::MixedPrimes(self.p, x.p()));
        }
        if !x.in_level(0) {
            return Err(Error::NotInGroup { level: 0 });
        }
        Ok(())
    }

    /// `x · y = G(x, y)`.
    pub fn mul(&self, x: &GroupPoint, y: &GroupPoint) -> Result<GroupPoint> {
        self.check_point(x)?;
        self.check_point(y)?;
        let args: Vec<PadicScalar> = x
            .coords
            .iter()
            .chain(&y.coords)
            .map(|c| c.with_precision(self.precision))
            .collect();
        let coords = certified_eval(self.law.components(), self.law.tail(), &args, self.degree)?;
        Ok(GroupPoint { coords })
    }

    /// `s(x)`, confirmed by `G(x, s(x)) = 0` at the working precision.
    pub fn inv(&self, x: &GroupPoint) -> Result<GroupPoint> {
        self.check_point(x)?;
        let args: Vec<PadicScalar> = x.coords.iter().map(|c| c.with_precision(self.precision)).collect();
        let coords = certified_eval(&self.antipode, self.antipode_tail, &args, self.degree)?;
        let y = GroupPoint { coords };
        let e = self.mul(x, &y)?;
        if !e.coords.iter().all(PadicScalar::is_zero) {
            return Err(Error::Certification(format!("x * inv(x) = {e} is not the identity")));
        }
        Ok(y)
    }

    /// `x · y · x^{-1}`.
    pub fn conjugate(&self, x: &GroupPoint, y: &GroupPoint) -> Result<GroupPoint> {
        let xi = self.inv(x)?;
        self.mul(x, &self.mul(y, &xi)?)
    }
}

pub fn group_mul(g: &FormalGroupLaw, x: &GroupPoint, y: &GroupPoint, degree: u32) -> Result<GroupPoint> {
    PadicGroup::new(g, x.p(), x.precision().min(y.precision()), degree)?.mul(x, y)
}

pub fn group_inv(g: &FormalGroupLaw, x: &GroupPoint, degree: u32) -> Result<GroupPoint> {
    PadicGroup::new(g, x.p(), x.precision(), degree)?.inv(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalitySample {
    pub sample: usize,
    pub x: GroupPoint,
    pub y: GroupPoint,
    pub conjugate: GroupPoint,
    pub valuations: Vec<Valuation>,
    pub in_subgroup: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub fgl: String,
    pub p: u32,
    #[serde(rename = "N")]
    pub precision: u32,
    pub h: u32,
    #[serde(rename = "D")]
    pub degree: u32,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub verdicts: Vec<NormalitySample>,
}

fn random_point<R: Rng>(rng: &mut R, p: u32, precision: u32, dim: usize, level: u32) -> Result<GroupPoint> {
    let shift = pow_big(p, level + 1);
    let range = pow_big(p, precision.saturating_sub(level + 1)).max(BigInt::one());
    let coords = (0..dim)
        .map(|_| {
            // uniform enough for sampling: 64 random bits reduced into range
            let r = BigInt::from(rng.random::<u64>()).mod_floor(&range);
            PadicScalar::new(p, precision, &(&r * &shift))
        })
        .collect::<Result<Vec<_>>>()?;
    GroupPoint::new(coords, level)
}

/// Samples `x` in `G(0)` and `y` in `G(h)` and checks `x y x^{-1}` in `G(h)`.
pub fn normality_check(
    g: &FormalGroupLaw,
    p: u32,
    h: u32,
    precision: u32,
    samples: usize,
    seed: u64,
) -> Result<NormalityReport> {
    if h == 0 {
        return Err(Error::Dimension("normality is checked for levels h >= 1".into()));
    }
    if precision < h + 2 {
        return Err(Error::Certification(format!(
            "precision {precision} cannot resolve level {h}"
        )));
    }
    let group = PadicGroup::for_level(g, p, precision, 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verdicts = Vec::with_capacity(samples);
    for sample in 0..samples {
        let x = random_point(&mut rng, p, precision, g.dim(), 0)?;
        let y = random_point(&mut rng, p, precision, g.dim(), h)?;
        let conjugate = group.conjugate(&x, &y)?;
        let valuations = conjugate.valuations();
        let in_subgroup = conjugate.in_level(h);
        verdicts.push(NormalitySample {
            sample,
            x,
            y,
            conjugate,
            valuations,
            in_subgroup,
        });
    }
    Ok(NormalityReport {
        fgl: g.name().to_string(),
        p,
        precision,
        h,
        degree: group.degree(),
        seed,
        samples,
        passed: verdicts.iter().all(|v| v.in_subgroup),
        verdicts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ConvergesCertified,
    NoCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeValuation {
    pub degree: u32,
    pub valuation: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelVerdict {
    pub k: u32,
    pub verdict: Verdict,
    /// Smallest term valuation in each degree, for points of valuation `k`.
    pub trace: Vec<DegreeValuation>,
    /// Degrees `>= 2` whose term valuation has not risen above degree one.
    pub divergence_witness: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub p: u32,
    pub h: u32,
    pub k0: String,
    #[serde(rename = "D")]
    pub degree: u32,
    pub verdicts: Vec<LevelVerdict>,
}

/// `h + 1/(p - 1)`.
pub fn convergence_threshold(p: u32, h: u32) -> Rational {
    Rational::from_integer(BigInt::from(h)) + Rational::new(BigInt::one(), BigInt::from(p - 1))
}

/// Convergence certificates for `f` in the coordinates of the rescaled law
/// at level `h`, on closed discs of radius `p^{-k}`.
pub fn convergence_check(f: &TruncatedSeries, p: u32, h: u32, levels: &[u32]) -> Result<ConvergenceReport> {
    let membership = modified_ring_check(f, p)?;
    if !membership.is_member_up_to_degree {
        return Err(Error::NotModified { degree: f.trunc() });
    }
    let k0 = convergence_threshold(p, h);
    let integral = f.terms().all(|(_, b)| vp(b, p).is_some_and(|v| v >= 0));
    let verdicts = levels
        .iter()
        .map(|&k| {
            let mut trace: Vec<DegreeValuation> = Vec::new();
            for (idx, b) in f.terms() {
                let d = idx.total_degree();
                if d == 0 {
                    continue;
                }
                let v = vp(b, p).expect("nonzero") + i64::from(d) * (i64::from(k) - i64::from(h));
                match trace.iter_mut().find(|t| t.degree == d) {
                    Some(t) => t.valuation = t.valuation.min(v),
                    None => trace.push(DegreeValuation { degree: d, valuation: v }),
                }
            }
            trace.sort_by_key(|t| t.degree);
            let above = Rational::from_integer(BigInt::from(k)) > k0;
            let verdict = if above || (integral && k > h) {
                Verdict::ConvergesCertified
            } else {
                Verdict::NoCertificate
            };
            let divergence_witness = match (verdict, trace.first()) {
                (Verdict::NoCertificate, Some(first)) if first.degree == 1 => {
                    let stalled: Vec<u32> = trace
                        .iter()
                        .skip(1)
                        .filter(|t| t.valuation <= first.valuation)
                        .map(|t| t.degree)
                        .collect();
                    (!stalled.is_empty()).then_some(stalled)
                }
                _ => None,
            };
            LevelVerdict {
                k,
                verdict,
                trace,
                divergence_witness,
            }
        })
        .collect();
    Ok(ConvergenceReport {
        p,
        h,
        k0: format_rational(&k0),
        degree: f.trunc(),
        verdicts,
    })
}

/// `v_p(n!)` together with the strict bound `v_p(n!) < n/(p-1)` for `n >= 1`.
pub fn legendre(n: u64, p: u32) -> (u64, bool) {
    let v = legendre_vp_factorial(n, p);
    (v, n == 0 || v * u64::from(p - 1) < n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::Builtin;
    use crate::rational::{big, factorial};
    use crate::series::MultiIndex;

    fn s(p: u32, n: u32, v: i64) -> PadicScalar {
        PadicScalar::from_i64(p, n, v).unwrap()
    }

    #[test]
    fn scalar_arithmetic() {
        let x = s(5, 6, 5).checked_add(&s(5, 6, 10)).unwrap();
        assert_eq!(x, s(5, 6, 15));
        assert_eq!(x.valuation(), Valuation(Some(1)));
        let z = s(5, 6, 5).checked_mul(&s(5, 6, 5i64.pow(5))).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.valuation().to_string(), "inf");
        assert_eq!(s(2, 10, 12).valuation(), Valuation(Some(2)));
        assert!(matches!(s(2, 4, 1).checked_add(&s(3, 4, 1)), Err(Error::MixedPrimes(2, 3))));
        assert_eq!(s(5, 3, -1).residue(), &BigInt::from(124));
    }

    #[test]
    fn products() {
        let m = FormalGroupLaw::builtin(Builtin::Multiplicative, 4);
        let x = GroupPoint::from_i64(5, 6, &[5], 0).unwrap();
        let y = GroupPoint::from_i64(5, 6, &[10], 0).unwrap();
        let z = group_mul(&m, &x, &y, 2).unwrap();
        assert_eq!(z.coords()[0], s(5, 6, 65));

        let h = FormalGroupLaw::builtin(Builtin::Heisenberg, 4);
        let x = GroupPoint::from_i64(3, 8, &[3, 0, 0], 0).unwrap();
        let y = GroupPoint::from_i64(3, 8, &[0, 3, 0], 0).unwrap();
        let z = group_mul(&h, &x, &y, 2).unwrap();
        assert_eq!(z.to_string(), "(3, 3, 9)");
        let inv = group_inv(&h, &GroupPoint::from_i64(3, 8, &[3, 3, 0], 0).unwrap(), 4).unwrap();
        assert_eq!(inv, GroupPoint::from_i64(3, 8, &[-3, -3, 9], 0).unwrap());
    }

    #[test]
    fn multiplicative_inverse_is_geometric() {
        let m = FormalGroupLaw::builtin(Builtin::Multiplicative, 12);
        let g = PadicGroup::for_level(&m, 5, 12, 0).unwrap();
        assert_eq!(g.degree(), 11);
        let x = g.point(&[5], 0).unwrap();
        let inv = g.inv(&x).unwrap();
        // -5/(1+5)
        let want = PadicScalar::from_rational(5, 12, &Rational::new((-5).into(), 6.into())).unwrap();
        assert_eq!(inv.coords()[0], want);
    }

    #[test]
    fn certification_refuses_short_truncations() {
        let m = FormalGroupLaw::builtin(Builtin::Multiplicative, 4);
        let g = PadicGroup::new(&m, 5, 12, 4).unwrap();
        let x = g.point(&[5], 0).unwrap();
        assert!(matches!(g.inv(&x), Err(Error::Certification(_))));
    }

    #[test]
    fn heisenberg_conjugation() {
        let h = FormalGroupLaw::builtin(Builtin::Heisenberg, 4);
        let g = PadicGroup::for_level(&h, 3, 10, 0).unwrap();
        let x = g.point(&[3, 0, 0], 0).unwrap();
        let y = g.point(&[0, 27, 0], 2).unwrap();
        let c = g.conjugate(&x, &y).unwrap();
        assert_eq!(c, g.point(&[0, 27, 81], 2).unwrap());
        assert_eq!(
            c.valuations(),
            vec![Valuation(None), Valuation(Some(3)), Valuation(Some(4))]
        );
    }

    #[test]
    fn normality_of_builtins() {
        for (b, p) in [(Builtin::Heisenberg, 3), (Builtin::Multiplicative, 5), (Builtin::AxPlusB, 3)] {
            let g = FormalGroupLaw::builtin(b, 24);
            let r = normality_check(&g, p, 2, 8, 6, 11).unwrap();
            assert!(r.passed, "{b}");
        }
    }

    #[test]
    fn exponential_convergence() {
        let exp = TruncatedSeries::from_terms(
            1,
            16,
            (1..=16).map(|n| (MultiIndex::new(vec![n]), Rational::one() / big(factorial(n)))),
        )
        .unwrap();
        let r = convergence_check(&exp, 2, 0, &[1, 2]).unwrap();
        assert_eq!(r.k0, "1");
        assert_eq!(r.verdicts[0].verdict, Verdict::NoCertificate);
        assert_eq!(r.verdicts[0].divergence_witness, Some(vec![2, 4, 8, 16]));
        assert_eq!(r.verdicts[1].verdict, Verdict::ConvergesCertified);

        let poly = TruncatedSeries::parse("t + 3*t^2", 1, 4).unwrap();
        let r = convergence_check(&poly, 3, 0, &[1]).unwrap();
        assert_eq!(r.verdicts[0].verdict, Verdict::ConvergesCertified);

        let bad = TruncatedSeries::parse("1/3*t", 1, 4).unwrap();
        assert!(convergence_check(&bad, 3, 0, &[2]).is_err());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(4, 2), (3, true));
        assert_eq!(legendre(7, 7).0, 1);
        assert_eq!(legendre(9, 3).0, 4);
    }
}
