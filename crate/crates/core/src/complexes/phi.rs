//! The comparison map from cobar cochains of a formal group law to
//! Chevalley-Eilenberg cochains of its Lie algebra.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use num_traits::Zero;

use crate::complexes::ce::{ce_diff, increasing_tuples, CECochain};
use crate::complexes::cobar::{cobar_diff, random_cobar_cochain, CobarCochain};
use crate::complexes::koszul::{kappa, KoszulDualCochain};
use crate::complexes::ucochain::{iota, Flavor, UCochain};
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::hopf::{tals_blocks, Pairing};
use crate::lie::LieAlgebra;
use crate::rational::Rational;
use crate::series::MultiIndex;

/// Permutations of `0..n` with a flag for odd ones.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in signed_permutations(n - 1) {
        // insert n-1 at position k: moves it past n-1-k entries
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push((q, odd ^ ((n - 1 - k) % 2 == 1)));
        }
    }
    out
}

/// `f(u ⊗ w) = c(u ⊗ as_n(w))` with the unnormalised antisymmetrisation
/// `as_n(e_{i_1}∧...∧e_{i_n}) = Σ sgn(α) e_{i_α(1)} ⊗ ... ⊗ e_{i_α(n)}`.
pub fn antisym_pullback(c: &UCochain) -> Result<KoszulDualCochain> {
    if c.flavor() != Flavor::Homogeneous {
        return Err(Error::Dimension("antisymmetrisation acts on homogeneous cochains".into()));
    }
    let (m, n) = (c.dim(), c.degree());
    let perms = signed_permutations(n);
    let mut out = KoszulDualCochain::zero(m, n);
    for w in increasing_tuples(m, n) {
        let mut v = Rational::zero();
        for (p, odd) in &perms {
            let mut key = vec![MultiIndex::zero(m)];
            key.extend(p.iter().map(|&a| MultiIndex::unit(m, w[a])));
            let x = c.eval(&key);
            if *odd {
                v -= x;
            } else {
                v += x;
            }
        }
        out.add_value(w, v);
    }
    Ok(out)
}

/// `κ ∘ ν ∘ ι ∘ (tals on every block)`.
pub fn phi_full(g: &FormalGroupLaw, c: &CobarCochain) -> Result<CECochain> {
    let n = c.degree();
    let d = c.trunc().min(g.trunc());
    if (d as usize) < n {
        return Err(Error::Dimension(format!("truncation {d} is below the cochain degree {n}")));
    }
    let mut pairing = Pairing::new(g);
    let tensor = tals_blocks(&mut pairing, c.body(), n, d)?;
    let inhomogeneous = UCochain::from_tensor(&tensor);
    let homogeneous = iota(&inhomogeneous)?;
    Ok(kappa(&antisym_pullback(&homogeneous)?))
}

/// `f_1 ⊗ ... ⊗ f_n ↦ df_1 ∧ ... ∧ df_n`, extended linearly: only the terms
/// of degree one in every block contribute.
pub fn phi_explicit(c: &CobarCochain) -> CECochain {
    let (m, n) = (c.dim(), c.degree());
    let mut out = CECochain::zero(m, n);
    for (idx, x) in c.body().terms() {
        let mut slots = Vec::with_capacity(n);
        for b in 0..n {
            let block = idx.block(b, m);
            if block.total_degree() != 1 {
                break;
            }
            slots.push(block.exponents().iter().position(|&e| e == 1).expect("degree one"));
        }
        if slots.len() == n {
            out.add_value(slots, x.clone());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub cochain: String,
    pub phi_of_diff: String,
    pub diff_of_phi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMapReport {
    pub fgl: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

/// Compares `Φ(∂c)` with `∂'Φ(c)` on seeded random cochains of degree `n`.
pub fn chain_map_check(g: &FormalGroupLaw, n: usize, trials: usize, seed: u64) -> Result<ChainMapReport> {
    let d = g.trunc();
    if (d as usize) < n + 1 {
        return Err(Error::Dimension(format!(
            "truncation {d} is too small for degree {n} cochains"
        )));
    }
    let lie = LieAlgebra::from_fgl(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexample = None;
    for _ in 0..trials {
        let c = random_cobar_cochain(&mut rng, g.dim(), n, d, d - 1, 8);
        let lhs = phi_explicit(&cobar_diff(g, &c)?);
        let rhs = ce_diff(&lie, &phi_explicit(&c))?;
        if lhs != rhs {
            counterexample = Some(Counterexample {
                cochain: c.to_string(),
                phi_of_diff: lhs.to_string(),
                diff_of_phi: rhs.to_string(),
            });
            break;
        }
    }
    Ok(ChainMapReport {
        fgl: g.name().to_string(),
        n,
        trials,
        seed,
        passed: counterexample.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::Builtin;
    use crate::rational::int;
    use crate::series::TruncatedSeries;

    fn coord(m: usize, d: u32, i: usize) -> TruncatedSeries {
        TruncatedSeries::var(m, d, i)
    }

    #[test]
    fn permutation_signs() {
        let p = signed_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().filter(|(_, odd)| *odd).count(), 3);
        for (q, odd) in &p {
            let inversions = (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .filter(|&(i, j)| q[i] > q[j])
                .count();
            assert_eq!(inversions % 2 == 1, *odd);
        }
    }

    #[test]
    fn coordinates_map_to_dual_basis() {
        let h = FormalGroupLaw::builtin(Builtin::Heisenberg, 4);
        let c = CobarCochain::tensor(&[coord(3, 4, 0), coord(3, 4, 2)]).unwrap();
        assert_eq!(phi_full(&h, &c).unwrap(), CECochain::basis(3, &[0, 2]));
        assert_eq!(phi_explicit(&c), CECochain::basis(3, &[0, 2]));

        let m = FormalGroupLaw::builtin(Builtin::Multiplicative, 4);
        let c = CobarCochain::tensor(&[coord(1, 4, 0), coord(1, 4, 0)]).unwrap();
        assert!(phi_full(&m, &c).unwrap().is_zero());
    }

    #[test]
    fn heisenberg_boundary() {
        let h = FormalGroupLaw::builtin(Builtin::Heisenberg, 4);
        let c = CobarCochain::new(3, 1, coord(3, 4, 2)).unwrap();
        let d = cobar_diff(&h, &c).unwrap();
        let want = CECochain::basis(3, &[0, 1]).scale(&int(-1));
        assert_eq!(phi_full(&h, &d).unwrap(), want);
        assert_eq!(phi_explicit(&d), want);
    }

    #[test]
    fn explicit_wedge() {
        let f1 = TruncatedSeries::parse("t1 + t2", 3, 3).unwrap();
        let f2 = coord(3, 3, 1);
        let c = CobarCochain::tensor(&[f1, f2]).unwrap();
        assert_eq!(phi_explicit(&c), CECochain::basis(3, &[0, 1]));
    }

    #[test]
    fn chain_map_on_builtins() {
        for b in [Builtin::Multiplicative, Builtin::Heisenberg, Builtin::AxPlusB] {
            let g = FormalGroupLaw::builtin(b, 4);
            for n in 1..=2 {
                let r = chain_map_check(&g, n, 10, 7).unwrap();
                assert!(r.passed, "{r:?}");
            }
        }
    }
}
