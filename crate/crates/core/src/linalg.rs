//! Exact rank of rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Clears denominators row by row so the matrix is integral with the same rank.
fn integral_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank via fraction-free (Bareiss) elimination; every division is exact.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = integral_rows(rows);
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..n_cols {
        let Some(pivot) = (r..n_rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        for i in r + 1..n_rows {
            for j in col + 1..n_cols {
                let v = (&a[r][col] * &a[i][j] - &a[i][col] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
        if r == n_rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![int(0), int(0)]]), 0);
        assert_eq!(rank(&[vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
        assert_eq!(
            rank(&[
                vec![frac(1, 2), int(1), int(0)],
                vec![int(0), frac(1, 3), int(1)],
                vec![frac(1, 2), frac(4, 3), int(1)]
            ]),
            2
        );
        assert_eq!(rank(&[vec![int(0), int(1)], vec![int(1), int(0)], vec![int(1), int(1)]]), 2);
    }
}
