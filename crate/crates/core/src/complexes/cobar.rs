//! Inhomogeneous cochains of a formal group law: elements of the completed
//! tensor powers of `O(G)`, stored as series in `n` blocks of coordinates.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::rational::{int, Rational};
use crate::series::{MultiIndex, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobarCochain {
    dim: usize,
    degree: usize,
    body: TruncatedSeries,
}

impl CobarCochain {
    /// `body` must live in `degree * dim` variables; degree 0 means a constant.
    pub fn new(dim: usize, degree: usize, body: TruncatedSeries) -> Result<Self> {
        if body.num_vars() != degree * dim {
            return Err(Error::Arity {
                expected: degree * dim,
                got: body.num_vars(),
            });
        }
        Ok(Self {
            dim,
            degree,
            body: body.with_blocks(degree, dim),
        })
    }

    pub fn constant(dim: usize, trunc: u32, c: Rational) -> Self {
        Self {
            dim,
            degree: 0,
            body: TruncatedSeries::constant(0, trunc, c),
        }
    }

    /// `f_1 (x) ... (x) f_n` for series in `dim` variables each.
    pub fn tensor(factors: &[TruncatedSeries]) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::Dimension("empty tensor product".into()))?;
        let (dim, trunc) = (first.num_vars(), first.trunc());
        let n = factors.len();
        let mut body = TruncatedSeries::one(n * dim, trunc);
        for (b, f) in factors.iter().enumerate() {
            if f.num_vars() != dim {
                return Err(Error::VarMismatch {
                    left: dim,
                    right: f.num_vars(),
                });
            }
            let map: Vec<usize> = (0..dim).map(|i| b * dim + i).collect();
            body = body.checked_mul(&f.relabel(&map, n * dim))?;
        }
        Self::new(dim, n, body)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn body(&self) -> &TruncatedSeries {
        &self.body
    }

    pub fn trunc(&self) -> u32 {
        self.body.trunc()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

impl fmt::Display for CobarCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

/// The cobar differential: `f(t_2..t_{n+1}) + Σ (-1)^i f(.., G(t_i, t_{i+1}), ..)
/// + (-1)^{n+1} f(t_1..t_n)`.
pub fn cobar_diff(g: &FormalGroupLaw, c: &CobarCochain) -> Result<CobarCochain> {
    let m = g.dim();
    if c.dim != m {
        return Err(Error::VarMismatch {
            left: m,
            right: c.dim,
        });
    }
    let n = c.degree;
    let d = c.trunc().min(g.trunc());
    let nv = (n + 1) * m;
    if n == 0 {
        // both coface maps send 1 to 1
        return CobarCochain::new(m, 1, TruncatedSeries::zero(m, d));
    }
    let f = c.body.retruncate(d);
    let shifted: Vec<usize> = (0..n * m).map(|v| v + m).collect();
    let same: Vec<usize> = (0..n * m).collect();
    let mut out = f.relabel(&shifted, nv);
    let last = f.relabel(&same, nv);
    out = if n % 2 == 0 { &out - &last } else { &out + &last };

    let vars: Vec<TruncatedSeries> = (0..nv).map(|v| TruncatedSeries::var(nv, d, v)).collect();
    for i in 1..=n {
        // block i-1 of f receives G(t_i, t_{i+1}); later blocks shift by one
        let law: Vec<TruncatedSeries> = g
            .embedded(nv, (i - 1) * m, i * m)
            .iter()
            .map(|s| s.retruncate(d))
            .collect();
        let subs: Vec<TruncatedSeries> = (0..n * m)
            .map(|v| {
                let b = v / m;
                match b.cmp(&(i - 1)) {
                    std::cmp::Ordering::Less => vars[v].clone(),
                    std::cmp::Ordering::Equal => law[v % m].clone(),
                    std::cmp::Ordering::Greater => vars[v + m].clone(),
                }
            })
            .collect();
        let term = f.substitute(&subs)?;
        out = if i % 2 == 0 { &out + &term } else { &out - &term };
    }
    CobarCochain::new(m, n + 1, out)
}

/// Pseudo-random cochain: up to `terms` monomials of degree `<= max_degree`
/// with integer coefficients in `[-3, 3]`.
pub fn random_cobar_cochain<R: Rng>(
    rng: &mut R,
    dim: usize,
    degree: usize,
    trunc: u32,
    max_degree: u32,
    terms: usize,
) -> CobarCochain {
    let nv = degree * dim;
    let mut body = TruncatedSeries::zero(nv, trunc);
    let top = max_degree.min(trunc);
    for _ in 0..terms {
        let deg = rng.random_range(0..=top);
        let mut e = vec![0u32; nv];
        if nv > 0 {
            for _ in 0..deg {
                e[rng.random_range(0..nv)] += 1;
            }
        }
        body.add_term(MultiIndex::new(e), int(rng.random_range(-3..=3)));
    }
    CobarCochain::new(dim, degree, body).expect("shape is consistent")
}
