//! Formal group laws: construction, axiom checks, the formal inverse,
//! homomorphisms and the level-`h` rescaling family.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{big, factorial, pow_big, Rational};
use crate::series::{MultiIndex, TruncatedSeries};

/// What is known about the coefficients beyond the truncation degree. The
/// p-adic layer uses this to bound the discarded tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailModel {
    /// The law is a polynomial of degree at most the truncation degree.
    Exact,
    /// Tail coefficients are p-integral for every prime.
    Integral,
    /// Tail coefficients satisfy `j! b_j` integral.
    DividedPowers,
}

/// The built-in laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Additive(usize),
    Multiplicative,
    Heisenberg,
    AxPlusB,
}

impl Builtin {
    pub const ALL_FIXED: [Builtin; 3] = [Builtin::Multiplicative, Builtin::Heisenberg, Builtin::AxPlusB];

    pub fn dim(self) -> usize {
        match self {
            Builtin::Additive(m) => m,
            Builtin::Multiplicative => 1,
            Builtin::Heisenberg => 3,
            Builtin::AxPlusB => 2,
        }
    }

    pub fn is_commutative(self) -> bool {
        matches!(self, Builtin::Additive(_) | Builtin::Multiplicative)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Additive(m) => write!(f, "additive({m})"),
            Builtin::Multiplicative => write!(f, "multiplicative"),
            Builtin::Heisenberg => write!(f, "heisenberg"),
            Builtin::AxPlusB => write!(f, "ax_plus_b"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `additive` (dimension 1), `additive(m)`, `multiplicative`,
    /// `heisenberg` and `ax_plus_b` / `ax-plus-b`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("additive") {
            if rest.is_empty() {
                return Ok(Builtin::Additive(1));
            }
            let m = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.trim().parse::<usize>().ok())
                .filter(|&m| m > 0);
            return m.map(Builtin::Additive).ok_or_else(|| Error::Parse {
                position: 8,
                message: format!("bad additive dimension in `{s}`"),
            });
        }
        match s {
            "multiplicative" => Ok(Builtin::Multiplicative),
            "heisenberg" => Ok(Builtin::Heisenberg),
            "ax_plus_b" | "ax-plus-b" => Ok(Builtin::AxPlusB),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown builtin `{s}`"),
            }),
        }
    }
}

/// An `m`-dimensional formal group law `G(X, Y)`, truncated at degree `D`.
///
/// Components live in `2m` variables: `X = 0..m`, `Y = m..2m`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalGroupLaw {
    name: String,
    dim: usize,
    trunc: u32,
    components: Vec<TruncatedSeries>,
    /// `gamma[j][l][k]`: coefficient of `X_l Y_k` in component `j`.
    gamma: Vec<Vec<Vec<Rational>>>,
    tail: TailModel,
}

/// First nonzero residual term found by an axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub component: usize,
    pub index: MultiIndex,
    pub coefficient: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub unit_ok: bool,
    pub assoc_ok: bool,
    pub first_violation: Option<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.unit_ok && self.assoc_ok
    }
}

impl FormalGroupLaw {
    /// Validates shape (component count, variable count, truncation, zero
    /// constant terms) and extracts the bilinear coefficients. The group
    /// axioms themselves are checked by [`FormalGroupLaw::check_axioms`].
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        trunc: u32,
        components: Vec<TruncatedSeries>,
        tail: TailModel,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidLaw("dimension must be positive".into()));
        }
        if trunc < 2 {
            return Err(Error::InvalidLaw("truncation degree must be at least 2".into()));
        }
        if components.len() != dim {
            return Err(Error::Arity {
                expected: dim,
                got: components.len(),
            });
        }
        for (j, c) in components.iter().enumerate() {
            if c.num_vars() != 2 * dim {
                return Err(Error::VarMismatch {
                    left: 2 * dim,
                    right: c.num_vars(),
                });
            }
            if c.trunc() != trunc {
                return Err(Error::TruncMismatch {
                    left: trunc,
                    right: c.trunc(),
                });
            }
            if !c.eval_at_zero().is_zero() {
                return Err(Error::InvalidLaw(format!("component {} has a constant term", j + 1)));
            }
        }
        let components: Vec<_> = components.into_iter().map(|c| c.with_blocks(2, dim)).collect();
        let gamma = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|l| {
                        (0..dim)
                            .map(|k| {
                                let mut e = vec![0; 2 * dim];
                                e[l] = 1;
                                e[dim + k] = 1;
                                components[j].coefficient(&MultiIndex::new(e))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            name: name.into(),
            dim,
            trunc,
            components,
            gamma,
            tail,
        })
    }

    pub fn builtin(which: Builtin, trunc: u32) -> Self {
        let m = which.dim();
        let n = 2 * m;
        let x = |i: usize| TruncatedSeries::var(n, trunc, i);
        let y = |i: usize| TruncatedSeries::var(n, trunc, m + i);
        let (components, tail) = match which {
            Builtin::Additive(_) => ((0..m).map(|i| &x(i) + &y(i)).collect(), TailModel::Exact),
            Builtin::Multiplicative => (vec![&(&x(0) + &y(0)) + &(&x(0) * &y(0))], TailModel::Exact),
            Builtin::Heisenberg => (
                vec![
                    &x(0) + &y(0),
                    &x(1) + &y(1),
                    &(&x(2) + &y(2)) + &(&x(0) * &y(1)),
                ],
                TailModel::Exact,
            ),
            Builtin::AxPlusB => {
                let exp = TruncatedSeries::from_terms(
                    n,
                    trunc,
                    (0..=trunc).map(|k| {
                        let mut e = vec![0; n];
                        e[0] = k;
                        (MultiIndex::new(e), Rational::new(One::one(), factorial(k)))
                    }),
                )
                .expect("well-formed exponential");
                (vec![&x(0) + &y(0), &x(1) + &(&y(1) * &exp)], TailModel::DividedPowers)
            }
        };
        Self::new(which.to_string(), m, trunc, components, tail).expect("builtin laws are well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn gamma(&self, j: usize, l: usize, k: usize) -> &Rational {
        &self.gamma[j][l][k]
    }

    pub fn tail(&self) -> TailModel {
        self.tail
    }

    /// Components embedded into a space of `num_vars` variables with the `X`
    /// block at `x_offset` and the `Y` block at `y_offset`.
    pub fn embedded(&self, num_vars: usize, x_offset: usize, y_offset: usize) -> Vec<TruncatedSeries> {
        let map: Vec<usize> = (0..self.dim)
            .map(|i| x_offset + i)
            .chain((0..self.dim).map(|i| y_offset + i))
            .collect();
        self.components.iter().map(|c| c.relabel(&map, num_vars)).collect()
    }

    /// Unit and associativity residuals up to degree `D`.
    pub fn check_axioms(&self) -> AxiomReport {
        let m = self.dim;
        let d = self.trunc;
        let mut first: Option<Violation> = None;

        // G(X, 0) = X and G(0, Y) = Y
        let mut unit_ok = true;
        for (j, c) in self.components.iter().enumerate() {
            let left = c;
            let only_x = TruncatedSeries::from_terms(
                2 * m,
                d,
                left.terms()
                    .filter(|(i, _)| i.exponents()[m..].iter().all(|&e| e == 0))
                    .map(|(i, c)| (i.clone(), c.clone())),
            )
            .expect("same space");
            let only_y = TruncatedSeries::from_terms(
                2 * m,
                d,
                left.terms()
                    .filter(|(i, _)| i.exponents()[..m].iter().all(|&e| e == 0))
                    .map(|(i, c)| (i.clone(), c.clone())),
            )
            .expect("same space");
            let rx = &only_x - &TruncatedSeries::var(2 * m, d, j);
            let ry = &only_y - &TruncatedSeries::var(2 * m, d, m + j);
            for r in [rx, ry] {
                if let Some((i, c)) = r.terms().next() {
                    unit_ok = false;
                    if first.is_none() {
                        first = Some(Violation {
                            component: j,
                            index: i.clone(),
                            coefficient: c.clone(),
                        });
                    }
                }
            }
        }

        let residual = self.associativity_residual();
        let mut assoc_ok = true;
        for (j, r) in residual.iter().enumerate() {
            if let Some((i, c)) = r.terms().next() {
                assoc_ok = false;
                if first.is_none() {
                    first = Some(Violation {
                        component: j,
                        index: i.clone(),
                        coefficient: c.clone(),
                    });
                }
            }
        }
        AxiomReport {
            unit_ok,
            assoc_ok,
            first_violation: first,
        }
    }

    /// `G(G(X,Y),Z) - G(X,G(Y,Z))` in `3m` variables.
    pub fn associativity_residual(&self) -> Vec<TruncatedSeries> {
        let m = self.dim;
        let n = 3 * m;
        let d = self.trunc;
        let gxy = self.embedded(n, 0, m);
        let gyz = self.embedded(n, m, 2 * m);
        let z: Vec<_> = (0..m).map(|i| TruncatedSeries::var(n, d, 2 * m + i)).collect();
        let x: Vec<_> = (0..m).map(|i| TruncatedSeries::var(n, d, i)).collect();
        let left_args: Vec<_> = gxy.iter().cloned().chain(z).collect();
        let right_args: Vec<_> = x.into_iter().chain(gyz.iter().cloned()).collect();
        self.components
            .iter()
            .map(|c| {
                let l = c.substitute(&left_args).expect("arity");
                let r = c.substitute(&right_args).expect("arity");
                (&l - &r).with_blocks(3, m)
            })
            .collect()
    }

    /// True iff swapping the two argument blocks fixes every component.
    pub fn is_commutative(&self) -> bool {
        let m = self.dim;
        let swap: Vec<usize> = (m..2 * m).chain(0..m).collect();
        self.components.iter().all(|c| c.relabel(&swap, 2 * m) == *c)
    }

    /// Formal inverse `s(X)` with `G(X, s(X)) = 0` modulo degree `D + 1`.
    ///
    /// Starts from `s = -X` and removes the lowest-degree residual one degree
    /// at a time; `G(X, Y) = X + Y + (higher)` makes each step triangular.
    pub fn antipode(&self) -> Vec<TruncatedSeries> {
        let m = self.dim;
        let d = self.trunc;
        let x: Vec<_> = (0..m).map(|i| TruncatedSeries::var(m, d, i)).collect();
        let mut s: Vec<_> = x.iter().map(|xi| -xi).collect();
        for deg in 2..=d {
            let args: Vec<_> = x.iter().cloned().chain(s.iter().cloned()).collect();
            for (j, c) in self.components.iter().enumerate() {
                let r = c.substitute(&args).expect("arity");
                s[j] = &s[j] - &r.homogeneous_part(deg);
            }
        }
        s
    }

    /// `G_h(X, Y) = p^{-h} G(p^h X, p^h Y)`: the degree-`d` coefficients get
    /// multiplied by `p^{h(d-1)}`.
    pub fn rescale(&self, p: u32, h: u32) -> Self {
        let components = self
            .components
            .iter()
            .map(|c| {
                TruncatedSeries::from_terms(
                    c.num_vars(),
                    c.trunc(),
                    c.terms().map(|(i, x)| {
                        let deg = i.total_degree();
                        let factor = big(pow_big(p, h * deg.saturating_sub(1)));
                        (i.clone(), x * factor)
                    }),
                )
                .expect("same space")
            })
            .collect();
        let name = if h == 0 {
            self.name.clone()
        } else {
            format!("{}_h{}(p={})", self.name, h, p)
        };
        Self::new(name, self.dim, self.trunc, components, self.tail).expect("rescaling keeps shape")
    }

    /// Builds a law with the same metadata but different components.
    pub fn with_components(&self, components: Vec<TruncatedSeries>) -> Result<Self> {
        Self::new(self.name.clone(), self.dim, self.trunc, components, self.tail)
    }
}

/// Checks `alpha(G(X,Y)) = G'(alpha(X), alpha(Y))` up to the common
/// truncation degree. `alpha` has one series (in `G.dim()` variables) per
/// component of `G'`, each with zero constant term.
pub fn is_homomorphism(
    alpha: &[TruncatedSeries],
    g: &FormalGroupLaw,
    g2: &FormalGroupLaw,
) -> Result<bool> {
    let m = g.dim();
    if alpha.len() != g2.dim() {
        return Err(Error::Dimension(format!(
            "homomorphism has {} components, target law has dimension {}",
            alpha.len(),
            g2.dim()
        )));
    }
    if g.trunc() != g2.trunc() {
        return Err(Error::TruncMismatch {
            left: g.trunc(),
            right: g2.trunc(),
        });
    }
    for a in alpha {
        if a.num_vars() != m {
            return Err(Error::VarMismatch {
                left: m,
                right: a.num_vars(),
            });
        }
        if a.trunc() != g.trunc() {
            return Err(Error::TruncMismatch {
                left: g.trunc(),
                right: a.trunc(),
            });
        }
        if !a.eval_at_zero().is_zero() {
            return Err(Error::NonzeroConstant { index: 0 });
        }
    }
    let x_map: Vec<usize> = (0..m).collect();
    let y_map: Vec<usize> = (m..2 * m).collect();
    let alpha_x: Vec<_> = alpha.iter().map(|a| a.relabel(&x_map, 2 * m)).collect();
    let alpha_y: Vec<_> = alpha.iter().map(|a| a.relabel(&y_map, 2 * m)).collect();
    let args: Vec<_> = alpha_x.into_iter().chain(alpha_y).collect();
    for (j, a) in alpha.iter().enumerate() {
        let left = a.substitute(g.components())?;
        let right = g2.components()[j].substitute(&args)?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `beta ∘ alpha` for tuples of series.
pub fn compose(beta: &[TruncatedSeries], alpha: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    beta.iter().map(|b| b.substitute(alpha)).collect()
}

/// The scaling tuple `X_j -> c X_j` in `m` variables.
pub fn scaling_map(m: usize, trunc: u32, c: &Rational) -> Vec<TruncatedSeries> {
    (0..m)
        .map(|i| TruncatedSeries::var(m, trunc, i).scale(c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn parse(text: &str, n: usize, d: u32) -> TruncatedSeries {
        TruncatedSeries::parse(text, n, d).unwrap()
    }

    #[test]
    fn builtin_components() {
        let g = FormalGroupLaw::builtin(Builtin::Multiplicative, 6);
        assert_eq!(g.components()[0], parse("t1 + t2 + t1 t2", 2, 6));
        let h = FormalGroupLaw::builtin(Builtin::Heisenberg, 6);
        assert_eq!(h.components()[2], parse("t3 + t6 + t1 t5", 6, 6));
        let a = FormalGroupLaw::builtin(Builtin::Additive(2), 6);
        for j in 0..2 {
            for l in 0..2 {
                for k in 0..2 {
                    assert!(a.gamma(j, l, k).is_zero());
                }
            }
        }
    }

    #[test]
    fn builtins_satisfy_axioms() {
        for d in 2..=8 {
            for b in [
                Builtin::Additive(1),
                Builtin::Additive(3),
                Builtin::Multiplicative,
                Builtin::Heisenberg,
                Builtin::AxPlusB,
            ] {
                let r = FormalGroupLaw::builtin(b, d).check_axioms();
                assert!(r.passed(), "{b} at D={d}: {r:?}");
                assert!(r.first_violation.is_none());
            }
        }
    }

    #[test]
    fn heisenberg_associativity_residual_vanishes() {
        let g = FormalGroupLaw::builtin(Builtin::Heisenberg, 4);
        assert!(g.associativity_residual().iter().all(TruncatedSeries::is_zero));
    }

    #[test]
    fn broken_law_reports_degree_three_residual() {
        let comps = vec![parse("t1 + t3", 4, 6), parse("t2 + t4 + t1 t4", 4, 6)];
        let g = FormalGroupLaw::new("broken", 2, 6, comps, TailModel::Exact).unwrap();
        let r = g.check_axioms();
        assert!(r.unit_ok);
        assert!(!r.assoc_ok);
        let v = r.first_violation.unwrap();
        assert_eq!(v.component, 1);
        // X1 Y1 Z2 in the 6 variables (X1, X2, Y1, Y2, Z1, Z2)
        assert_eq!(v.index, MultiIndex::new(vec![1, 0, 1, 0, 0, 1]));
        assert_eq!(v.coefficient, int(-1));
        assert_eq!(v.index.total_degree(), 3);
    }

    #[test]
    fn unit_violation_is_reported() {
        let comps = vec![parse("2*t1 + t2", 2, 4)];
        let g = FormalGroupLaw::new("bad", 1, 4, comps, TailModel::Exact).unwrap();
        let r = g.check_axioms();
        assert!(!r.unit_ok);
        assert_eq!(r.first_violation.unwrap().coefficient, int(1));
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        let c = parse("1 + t1 + t2", 2, 4);
        assert!(FormalGroupLaw::new("c", 1, 4, vec![c], TailModel::Exact).is_err());
        let c = parse("t1 + t2", 2, 4);
        assert!(FormalGroupLaw::new("c", 2, 4, vec![c], TailModel::Exact).is_err());
        assert!(FormalGroupLaw::new("c", 1, 1, vec![parse("t1", 2, 1)], TailModel::Exact).is_err());
    }

    #[test]
    fn commutativity() {
        assert!(FormalGroupLaw::builtin(Builtin::Multiplicative, 5).is_commutative());
        assert!(FormalGroupLaw::builtin(Builtin::Additive(2), 5).is_commutative());
        assert!(!FormalGroupLaw::builtin(Builtin::Heisenberg, 5).is_commutative());
        assert!(!FormalGroupLaw::builtin(Builtin::AxPlusB, 5).is_commutative());
    }

    #[test]
    fn antipode_examples() {
        let s = FormalGroupLaw::builtin(Builtin::Multiplicative, 5).antipode();
        assert_eq!(s[0], parse("-t + t^2 - t^3 + t^4 - t^5", 1, 5));
        let s = FormalGroupLaw::builtin(Builtin::Additive(2), 5).antipode();
        assert_eq!(s[1], parse("-t2", 2, 5));
        let s = FormalGroupLaw::builtin(Builtin::Heisenberg, 6).antipode();
        assert_eq!(s[0], parse("-t1", 3, 6));
        assert_eq!(s[1], parse("-t2", 3, 6));
        assert_eq!(s[2], parse("-t3 + t1 t2", 3, 6));
    }

    #[test]
    fn antipode_is_two_sided() {
        for b in [Builtin::Multiplicative, Builtin::Heisenberg, Builtin::AxPlusB, Builtin::Additive(2)] {
            let g = FormalGroupLaw::builtin(b, 6);
            let m = g.dim();
            let s = g.antipode();
            let x: Vec<_> = (0..m).map(|i| TruncatedSeries::var(m, 6, i)).collect();
            let xs: Vec<_> = x.iter().cloned().chain(s.iter().cloned()).collect();
            let sx: Vec<_> = s.iter().cloned().chain(x.iter().cloned()).collect();
            for c in g.components() {
                assert!(c.substitute(&xs).unwrap().is_zero(), "{b}");
                assert!(c.substitute(&sx).unwrap().is_zero(), "{b}");
            }
        }
    }

    #[test]
    fn rescale_examples() {
        let g = FormalGroupLaw::builtin(Builtin::Multiplicative, 4).rescale(3, 2);
        assert_eq!(g.components()[0], parse("t1 + t2 + 9*t1 t2", 2, 4));
        let a = FormalGroupLaw::builtin(Builtin::Additive(2), 4).rescale(5, 3);
        assert_eq!(a.components(), FormalGroupLaw::builtin(Builtin::Additive(2), 4).components());
        let h = FormalGroupLaw::builtin(Builtin::Heisenberg, 4).rescale(2, 3);
        assert_eq!(h.components()[2], parse("t3 + t6 + 8*t1 t5", 6, 4));
    }

    #[test]
    fn rescale_is_functorial() {
        for b in [Builtin::AxPlusB, Builtin::Heisenberg, Builtin::Multiplicative] {
            let g = FormalGroupLaw::builtin(b, 5);
            let lhs = g.rescale(3, 3);
            let rhs = g.rescale(3, 1).rescale(3, 2);
            assert_eq!(lhs.components(), rhs.components());
        }
    }

    #[test]
    fn homomorphism_examples() {
        let (p, h, d) = (5, 2, 5);
        for b in [Builtin::Multiplicative, Builtin::Heisenberg, Builtin::AxPlusB] {
            let g = FormalGroupLaw::builtin(b, d);
            let gh = g.rescale(p, h);
            let m = g.dim();
            let alpha = scaling_map(m, d, &frac(1, 25));
            let beta = scaling_map(m, d, &int(25));
            assert!(is_homomorphism(&alpha, &g, &gh).unwrap(), "{b}");
            assert!(is_homomorphism(&beta, &gh, &g).unwrap(), "{b}");
            let id: Vec<_> = (0..m).map(|i| TruncatedSeries::var(m, d, i)).collect();
            assert!(is_homomorphism(&id, &g, &g).unwrap());
            assert_eq!(compose(&beta, &alpha).unwrap(), id);
            assert_eq!(compose(&alpha, &beta).unwrap(), id);
        }
        let g = FormalGroupLaw::builtin(Builtin::Multiplicative, 4);
        let two = scaling_map(1, 4, &int(2));
        assert!(!is_homomorphism(&two, &g, &g).unwrap());
    }

    #[test]
    fn builtin_names_parse() {
        assert_eq!("additive(4)".parse::<Builtin>().unwrap(), Builtin::Additive(4));
        assert_eq!("ax-plus-b".parse::<Builtin>().unwrap(), Builtin::AxPlusB);
        assert!("additive(0)".parse::<Builtin>().is_err());
        assert!("nope".parse::<Builtin>().is_err());
    }
}
