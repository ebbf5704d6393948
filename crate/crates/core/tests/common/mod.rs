#![allow(dead_code)]

use formgroup_core::rational::{frac, int};
use formgroup_core::{Builtin, FormalGroupLaw, MultiIndex, Rational, TruncatedSeries};
use rand::Rng;

pub const BUILTINS: [Builtin; 6] = [
    Builtin::Additive(1),
    Builtin::Additive(2),
    Builtin::Additive(3),
    Builtin::Multiplicative,
    Builtin::Heisenberg,
    Builtin::AxPlusB,
];

pub fn laws(trunc: u32) -> Vec<FormalGroupLaw> {
    BUILTINS.iter().map(|&b| FormalGroupLaw::builtin(b, trunc)).collect()
}

/// `(X1 + Y1, X2 + Y2 + X1 Y2)`, which fails associativity in degree 3.
pub fn broken_law(trunc: u32) -> formgroup_core::Result<FormalGroupLaw> {
    let g1 = TruncatedSeries::parse("t1 + t3", 4, trunc)?;
    let g2 = TruncatedSeries::parse("t2 + t4 + t1 t4", 4, trunc)?;
    FormalGroupLaw::new("broken".to_string(), 2, trunc, vec![g1, g2], formgroup_core::TailModel::Exact)
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.random_range(-4i64..=4);
    let d = rng.random_range(1i64..=3);
    if n == 0 {
        int(1)
    } else {
        frac(n, d)
    }
}

pub fn random_index<R: Rng>(rng: &mut R, vars: usize, max_degree: u32) -> MultiIndex {
    let degree = rng.random_range(0..=max_degree);
    let mut e = vec![0u32; vars];
    for _ in 0..degree {
        e[rng.random_range(0..vars)] += 1;
    }
    MultiIndex::new(e)
}

pub fn random_series<R: Rng>(rng: &mut R, vars: usize, trunc: u32, terms: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(vars, trunc);
    for _ in 0..terms {
        s.add_term(random_index(rng, vars, trunc), small_rational(rng));
    }
    s
}

/// `v_p(n!)` by summing `v_p(k)` for `k <= n`.
pub fn vp_factorial_naive(n: u64, p: u64) -> u64 {
    (1..=n)
        .map(|mut k| {
            let mut v = 0;
            while k % p == 0 {
                k /= p;
                v += 1;
            }
            v
        })
        .sum()
}

/// Rank over the rationals by plain Gauss-Jordan elimination.
pub fn naive_rank(rows: &[Vec<Rational>]) -> usize {
    use num_traits::Zero;
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let lead = a[rank][c].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &lead;
                for k in c..cols {
                    let x = &a[rank][k] * &f;
                    a[r][k] -= x;
                }
            }
        }
        rank += 1;
    }
    rank
}
