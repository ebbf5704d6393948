//! Hopf structure of the coordinate ring `O(G)` and the morphism into `U*`.
//!
//! The pairing `<e^j, f>` is the ordered mixed partial of the iterated
//! coproduct of `f`, one derivative per letter of the PBW word of `e^j`.
//! Restricting the `k`-th tensor factor to the single coordinate `x_k` of its
//! letter, only terms squarefree in the `x_k` survive, so everything happens
//! in the exterior-like algebra `Q[x_1..x_n]/(x_k^2)`.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::pbw::word_of;
use crate::rational::{big, vp, Rational};
use crate::series::{MultiIndex, TruncatedSeries};
use crate::ustar::{DualTensor, DualUElement};

/// Element of `Q[x_0..x_{n-1}]/(x_k^2)`, dense over subsets.
#[derive(Clone, Debug, PartialEq)]
struct Jet {
    vars: usize,
    c: Vec<Rational>,
}

impl Jet {
    fn zero(vars: usize) -> Self {
        Self {
            vars,
            c: vec![Rational::zero(); 1 << vars],
        }
    }

    fn one(vars: usize) -> Self {
        let mut j = Self::zero(vars);
        j.c[0] = Rational::one();
        j
    }

    fn support(&self) -> Vec<(usize, &Rational)> {
        self.c.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        let rhs = other.support();
        for (a, x) in self.support() {
            for &(b, y) in &rhs {
                if a & b == 0 {
                    out.c[a | b] += x * y;
                }
            }
        }
        out
    }

    /// Coefficient of `x_0 ... x_{n-1}` in the product.
    fn top_of_mul(&self, other: &Self) -> Rational {
        let full = (1 << self.vars) - 1;
        self.support()
            .into_iter()
            .map(|(a, x)| x * &other.c[full ^ a])
            .fold(Rational::zero(), |s, v| s + v)
    }

    /// Same element in `vars` variables with its own shifted up by `offset`.
    fn embed(&self, offset: usize, vars: usize) -> Self {
        let mut out = Self::zero(vars);
        for (a, x) in self.support() {
            out.c[a << offset] = x.clone();
        }
        out
    }
}

/// `f(P_1, ..., P_k)` for jets with zero constant term. With `top_only` the
/// result holds only the coefficient of the full product (in slot 0).
fn eval_jets(f: &TruncatedSeries, args: &[Jet], vars: usize, top_only: bool) -> Jet {
    let mut powers: Vec<Vec<Jet>> = args.iter().map(|_| vec![Jet::one(vars)]).collect();
    let mut out = Jet::zero(vars);
    for (idx, c) in f.terms() {
        if idx.total_degree() as usize > vars {
            continue;
        }
        for (v, &e) in idx.exponents().iter().enumerate() {
            while powers[v].len() <= e as usize {
                let next = powers[v].last().expect("nonempty").mul(&args[v]);
                powers[v].push(next);
            }
        }
        let factors: Vec<&Jet> = idx
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| &powers[v][e as usize])
            .collect();
        if top_only {
            let v = match factors.split_last() {
                None => {
                    if vars == 0 {
                        c.clone()
                    } else {
                        continue;
                    }
                }
                Some((last, rest)) => {
                    let head = rest.iter().fold(Jet::one(vars), |acc, j| acc.mul(j));
                    head.top_of_mul(last) * c
                }
            };
            out.c[0] += v;
        } else {
            let prod = factors.iter().fold(Jet::one(vars), |acc, j| acc.mul(j));
            for (a, x) in prod.support() {
                out.c[a] += x * c;
            }
        }
    }
    out
}

/// Cached pairing engine for one formal group law.
pub struct Pairing<'a> {
    g: &'a FormalGroupLaw,
    /// `d[i][j] = dG^(j)/dX_i (0, Y)` as a series in `Y`.
    d: Vec<Vec<TruncatedSeries>>,
    points: HashMap<Vec<usize>, Rc<Vec<Jet>>>,
}

impl<'a> Pairing<'a> {
    pub fn new(g: &'a FormalGroupLaw) -> Self {
        let m = g.dim();
        let trunc = g.trunc();
        let mut args = vec![TruncatedSeries::zero(m, trunc); m];
        args.extend((0..m).map(|i| TruncatedSeries::var(m, trunc, i)));
        let d = (0..m)
            .map(|i| {
                g.components()
                    .iter()
                    .map(|c| {
                        c.partial_derivative(i)
                            .and_then(|dc| dc.substitute(&args))
                            .expect("law components have 2m variables")
                    })
                    .collect()
            })
            .collect();
        Self {
            g,
            d,
            points: HashMap::new(),
        }
    }

    pub fn law(&self) -> &FormalGroupLaw {
        self.g
    }

    /// `G(x_{n-1} e_{w_0}, G(..., x_0 e_{w_{n-1}}))` with `x_k^2 = 0`.
    fn point(&mut self, word: &[usize]) -> Rc<Vec<Jet>> {
        if let Some(p) = self.points.get(word) {
            return Rc::clone(p);
        }
        let m = self.g.dim();
        let n = word.len();
        let p = if n == 0 {
            vec![Jet::zero(0); m]
        } else {
            let rest = self.point(&word[1..]);
            let new_bit = 1 << (n - 1);
            (0..m)
                .map(|j| {
                    let mut q = rest[j].embed(0, n);
                    let h = eval_jets(&self.d[word[0]][j], &rest, n - 1, false);
                    for (a, x) in h.support() {
                        q.c[a | new_bit] += x;
                    }
                    q
                })
                .collect()
        };
        let p = Rc::new(p);
        self.points.insert(word.to_vec(), Rc::clone(&p));
        p
    }

    /// `<e^j, f>` for `f` in the `m` coordinates.
    pub fn pair(&mut self, index: &MultiIndex, f: &TruncatedSeries) -> Rational {
        let word = word_of(index);
        let p = self.point(&word);
        eval_jets(f, &p, word.len(), true).c[0].clone()
    }

    /// `<e^{j_1} (x) ... (x) e^{j_n}, f>` for `f` in `n` blocks of coordinates.
    pub fn pair_blocks(&mut self, indices: &[MultiIndex], f: &TruncatedSeries) -> Rational {
        let words: Vec<Vec<usize>> = indices.iter().map(word_of).collect();
        let vars: usize = words.iter().map(Vec::len).sum();
        let mut args = Vec::with_capacity(f.num_vars());
        let mut offset = vars;
        for w in &words {
            offset -= w.len();
            let p = self.point(w);
            args.extend(p.iter().map(|j| j.embed(offset, vars)));
        }
        let top = eval_jets(f, &args, vars, true);
        top.c[0].clone()
    }
}

fn check_arity(g: &FormalGroupLaw, f: &TruncatedSeries, blocks: usize) -> Result<()> {
    if f.num_vars() != blocks * g.dim() {
        return Err(Error::Arity {
            expected: blocks * g.dim(),
            got: f.num_vars(),
        });
    }
    Ok(())
}

/// `mu(f)(t_1, t_2) = f(G(t_1, t_2))`, in two blocks.
pub fn og_comultiply(g: &FormalGroupLaw, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_arity(g, f, 1)?;
    let cap = f.trunc().min(g.trunc());
    let subs: Vec<_> = g.components().iter().map(|c| c.retruncate(cap)).collect();
    Ok(f.retruncate(cap).substitute(&subs)?.with_blocks(2, g.dim()))
}

/// `f(s(t))` for the formal inverse `s`.
pub fn og_antipode_apply(g: &FormalGroupLaw, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_arity(g, f, 1)?;
    let cap = f.trunc().min(g.trunc());
    let subs: Vec<_> = g.antipode().iter().map(|c| c.retruncate(cap)).collect();
    f.retruncate(cap).substitute(&subs)
}

/// The element `sum_j <e^j, f> d^j t` of `U*`, for `|j| <= min(D_f, D_G)`.
pub fn tals(g: &FormalGroupLaw, f: &TruncatedSeries) -> Result<DualUElement> {
    check_arity(g, f, 1)?;
    let mut pairing = Pairing::new(g);
    Ok(tals_with(&mut pairing, f))
}

pub fn tals_with(pairing: &mut Pairing<'_>, f: &TruncatedSeries) -> DualUElement {
    let m = pairing.law().dim();
    let cap = f.trunc().min(pairing.law().trunc());
    let mut out = DualUElement::zero(m, cap);
    for j in MultiIndex::up_to_degree(m, cap) {
        let v = pairing.pair(&j, f);
        out.add_term(j, v);
    }
    out
}

/// Blockwise version for a series in `n` blocks of the law's coordinates:
/// the coefficient of `d^{j_1} t (x) ... (x) d^{j_n} t`, total degree `<= cap`.
pub fn tals_blocks(
    pairing: &mut Pairing<'_>,
    f: &TruncatedSeries,
    blocks: usize,
    cap: u32,
) -> Result<DualTensor> {
    let m = pairing.law().dim();
    check_arity(pairing.law(), f, blocks)?;
    let cap = cap.min(f.trunc()).min(pairing.law().trunc());
    let mut out = DualTensor::zero(m, cap, blocks);
    for key in MultiIndex::up_to_degree(blocks * m, cap) {
        let parts: Vec<MultiIndex> = (0..blocks).map(|b| key.block(b, m)).collect();
        let v = pairing.pair_blocks(&parts, f);
        out.add_term(parts, v);
    }
    Ok(out)
}

/// Preimage under [`tals`], solved one degree at a time: the degree-`d`
/// part of `tals(t^j)` is `j! d^j t`.
pub fn tals_inverse(g: &FormalGroupLaw, u: &DualUElement) -> Result<TruncatedSeries> {
    let m = g.dim();
    if u.dim() != m {
        return Err(Error::VarMismatch {
            left: m,
            right: u.dim(),
        });
    }
    let cap = u.cap().min(g.trunc());
    let mut pairing = Pairing::new(g);
    let mut out = TruncatedSeries::constant(m, cap, u.coefficient(&MultiIndex::zero(m)));
    for d in 1..=cap {
        let mut step = Vec::new();
        for j in MultiIndex::of_degree(m, d) {
            let r = u.coefficient(&j) - pairing.pair(&j, &out);
            if !r.is_zero() {
                let c = r / big(j.factorial());
                step.push((j, c));
            }
        }
        for (j, c) in step {
            out.add_term(j, c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipWitness {
    pub index: Vec<u32>,
    /// `-v_p(j! b_j)`, always positive.
    pub deficit: i64,
}

/// Outcome of the coefficient test `j! b_j in Z_(p)` for `|j| <= D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModifiedMembershipReport {
    pub p: u32,
    pub checked_degree: u32,
    pub is_member_up_to_degree: bool,
    pub witness: Option<MembershipWitness>,
}

pub fn modified_ring_check(f: &TruncatedSeries, p: u32) -> Result<ModifiedMembershipReport> {
    if !crate::rational::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let witness = f.terms().find_map(|(j, b)| {
        let v = vp(&(b * big(j.factorial())), p)?;
        (v < 0).then(|| MembershipWitness {
            index: j.exponents().to_vec(),
            deficit: -v,
        })
    });
    Ok(ModifiedMembershipReport {
        p,
        checked_degree: f.trunc(),
        is_member_up_to_degree: witness.is_none(),
        witness,
    })
}
