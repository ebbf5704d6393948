//! Products in the universal enveloping algebra, expressed in the ordered
//! PBW basis `e_1^{j_1} ... e_m^{j_m}` indexed by multi-indices.
//!
//! The algebra is never materialised as a quotient of the tensor algebra.
//! Words in the generators are brought to normal form by commuting adjacent
//! out-of-order pairs, `e_b e_a = e_a e_b + [e_b, e_a]`, scanning from the
//! right. Each rewrite lowers either the word length or its inversion count.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::lie::LieAlgebra;
use crate::rational::Rational;
use crate::series::MultiIndex;

/// A linear combination of PBW monomials.
pub type PbwElement = BTreeMap<MultiIndex, Rational>;

/// `e^j` spelled out as a non-decreasing word of generator indices.
pub fn word_of(index: &MultiIndex) -> Vec<usize> {
    index
        .exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect()
}

fn index_of_sorted(word: &[usize], dim: usize) -> MultiIndex {
    let mut e = vec![0u32; dim];
    for &g in word {
        e[g] += 1;
    }
    MultiIndex::new(e)
}

/// Memoising normal-form engine for one Lie algebra.
#[derive(Clone, Debug)]
pub struct Straightener {
    lie: LieAlgebra,
    memo: HashMap<Vec<usize>, PbwElement>,
}

impl Straightener {
    pub fn new(lie: LieAlgebra) -> Self {
        Self {
            lie,
            memo: HashMap::new(),
        }
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    /// PBW expansion of the product of generators in `word`.
    pub fn normal_form(&mut self, word: &[usize]) -> PbwElement {
        if let Some(hit) = self.memo.get(word) {
            return hit.clone();
        }
        let dim = self.dim();
        let descent = (0..word.len().saturating_sub(1))
            .rev()
            .find(|&i| word[i] > word[i + 1]);
        let out = match descent {
            None => {
                let mut out = PbwElement::new();
                out.insert(index_of_sorted(word, dim), Rational::one());
                out
            }
            Some(i) => {
                let (b, a) = (word[i], word[i + 1]);
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut out = self.normal_form(&swapped);
                let bracket: Vec<(usize, Rational)> =
                    self.lie.bracket(b, a).map(|(k, c)| (k, c.clone())).collect();
                for (k, c) in bracket {
                    let mut shorter = word[..i].to_vec();
                    shorter.push(k);
                    shorter.extend_from_slice(&word[i + 2..]);
                    for (idx, x) in self.normal_form(&shorter) {
                        accumulate(&mut out, idx, x * &c);
                    }
                }
                out
            }
        };
        self.memo.insert(word.to_vec(), out.clone());
        out
    }

    /// `e^a * e^b` in the PBW basis.
    pub fn mul(&mut self, a: &MultiIndex, b: &MultiIndex) -> PbwElement {
        let mut w = word_of(a);
        w.extend(word_of(b));
        self.normal_form(&w)
    }

    /// `e^u * e_i`.
    pub fn mul_generator(&mut self, u: &MultiIndex, i: usize) -> PbwElement {
        let mut w = word_of(u);
        w.push(i);
        self.normal_form(&w)
    }

    /// Product of two general elements.
    pub fn mul_elements(&mut self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let mut out = PbwElement::new();
        for (ia, ca) in a {
            for (ib, cb) in b {
                let coef = ca * cb;
                for (idx, x) in self.mul(ia, ib) {
                    accumulate(&mut out, idx, x * &coef);
                }
            }
        }
        out
    }
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, x: Rational) {
    use std::collections::btree_map::Entry;
    if x.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(x);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += x;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}
