//! Finite-dimensional Lie algebras given by structure constants, and the Lie
//! algebra attached to a formal group law.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::rational::Rational;

/// `[e_i, e_j] = sum_k c[i][j][k] e_k` (indices are zero-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(dim: usize, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let shape_ok = c.len() == dim
            && c.iter().all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !shape_ok {
            return Err(Error::Dimension(format!("structure constants must be {dim}x{dim}x{dim}")));
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(Error::Dimension(format!(
                            "bracket not antisymmetric at (e{}, e{})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let lie = Self { dim, c };
        lie.check_jacobi()?;
        Ok(lie)
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            c: vec![vec![vec![Rational::zero(); dim]; dim]; dim],
        }
    }

    /// Structure constants `c^j_{lk} = gamma^j_{lk} - gamma^j_{kl}` read off
    /// the bilinear part of the law. A Jacobi failure means the input law is
    /// not associative.
    pub fn from_fgl(g: &FormalGroupLaw) -> Result<Self> {
        let m = g.dim();
        let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
        for (l, row) in c.iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                for (j, x) in v.iter_mut().enumerate() {
                    *x = g.gamma(j, l, k) - g.gamma(j, k, l);
                }
            }
        }
        Self::new(m, c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// Nonzero terms `(k, c^k_{ij})` of `[e_i, e_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.c[i][j].iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0` for all triples.
    pub fn check_jacobi(&self) -> Result<()> {
        let m = self.dim;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let mut acc = vec![Rational::zero(); m];
                    for (a, b, d) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, x) in self.bracket(a, b) {
                            for (r, y) in self.bracket(l, d) {
                                acc[r] += x * y;
                            }
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Jacobi(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Nonzero `c^k_{ij}` with `i < j`, one-based, as `(i, j, k, value)`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, x) in self.bracket(i, j) {
                    out.push((i + 1, j + 1, k + 1, x.clone()));
                }
            }
        }
        out
    }
}

impl fmt::Display for LieAlgebra {
    /// One line per nonzero bracket `[ei,ej] = ...` with `i < j`; `abelian`
    /// when there are none.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let terms: Vec<_> = self
                    .bracket(i, j)
                    .map(|(k, x)| (x.clone(), format!("e{}", k + 1)))
                    .collect();
                if terms.is_empty() {
                    continue;
                }
                if any {
                    writeln!(f)?;
                }
                write!(f, "[e{},e{}] = ", i + 1, j + 1)?;
                crate::series::write_signed_terms(f, terms)?;
                any = true;
            }
        }
        if !any {
            write!(f, "abelian")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::Builtin;
    use crate::rational::int;

    #[test]
    fn lie_algebras_of_builtins() {
        let g = LieAlgebra::from_fgl(&FormalGroupLaw::builtin(Builtin::Multiplicative, 4)).unwrap();
        assert!(g.is_abelian());

        let h = LieAlgebra::from_fgl(&FormalGroupLaw::builtin(Builtin::Heisenberg, 4)).unwrap();
        assert_eq!(h.nonzero_brackets(), vec![(1, 2, 3, int(1))]);
        assert_eq!(*h.structure_constant(1, 0, 2), int(-1));
        assert_eq!(h.to_string(), "[e1,e2] = 1*e3");

        let a = LieAlgebra::from_fgl(&FormalGroupLaw::builtin(Builtin::AxPlusB, 4)).unwrap();
        assert_eq!(a.nonzero_brackets(), vec![(1, 2, 2, int(1))]);
    }

    #[test]
    fn rejects_non_lie_brackets() {
        let mut c = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        c[0][1][0] = int(1);
        assert!(LieAlgebra::new(2, c.clone()).is_err());
        c[1][0][0] = int(-1);
        assert!(LieAlgebra::new(2, c).is_ok());

        // [e1,e2] = e1, [e1,e3] = e3, [e2,e3] = e2: cyclic sum is e3 - e1 + e2
        let mut c = vec![vec![vec![Rational::zero(); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = int(v);
            c[j][i][k] = int(-v);
        };
        set(0, 1, 0, 1);
        set(0, 2, 2, 1);
        set(1, 2, 1, 1);
        assert!(matches!(LieAlgebra::new(3, c), Err(Error::Jacobi(..))));
    }
}
