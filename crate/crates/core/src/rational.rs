//! Exact rational scalars and the small number-theoretic helpers shared by
//! every other module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient type used throughout the crate. Always kept in lowest terms
/// with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `p^e` as a big integer.
pub fn pow_big(p: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn vp_int(n: &BigInt, p: u32) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn vp(x: &Rational, p: u32) -> Option<i64> {
    let num = vp_int(x.numer(), p)?;
    let den = vp_int(x.denom(), p).unwrap_or(0);
    Some(num as i64 - den as i64)
}

/// Exact `v_p(n!)` by Legendre's formula.
pub fn legendre_vp_factorial(n: u64, p: u32) -> u64 {
    let p = p as u64;
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses `"n"` or `"n/d"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        position: 0,
        message: format!("invalid rational literal `{s}`"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical `num/den` rendering (denominator omitted when it is one).
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.denom().is_one() {
        x.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_values() {
        assert_eq!(legendre_vp_factorial(4, 2), 3);
        assert_eq!(legendre_vp_factorial(9, 3), 4);
        for p in [2u32, 3, 5, 7] {
            assert_eq!(legendre_vp_factorial(p as u64, p), 1);
        }
    }

    #[test]
    fn legendre_matches_direct_factorisation() {
        for p in [2u32, 3, 5] {
            for n in 0..40u32 {
                let direct = vp_int(&factorial(n), p).unwrap() as u64;
                assert_eq!(legendre_vp_factorial(n as u64, p), direct, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&int(12), 2), Some(2));
        assert_eq!(vp(&frac(1, 5), 5), Some(-1));
        assert_eq!(vp(&int(0), 3), None);
    }

    #[test]
    fn parse_and_format() {
        let x = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
