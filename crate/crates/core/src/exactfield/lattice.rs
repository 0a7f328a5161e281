//! Integer lattices given by spanning columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Index `[ℤ^r : L]` of the lattice spanned by the columns of `m` (an
/// `r × c` integer matrix).
///
/// The matrix is diagonalised with unimodular row and column operations;
/// the index is the absolute product of the diagonal.
pub fn smith_index(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    if m.iter().any(|row| row.len() != c) {
        return Err(Error::Shape("ragged rows".into()));
    }
    if r == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut index = BigInt::one();
    for t in 0..r {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Err(Error::Rank(format!("columns span a sublattice of rank {t} < {r}")));
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = a[i][t].div_floor(&pivot);
                if !q.is_zero() {
                    for j in t..c {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..c {
                let q = a[t][j].div_floor(&pivot);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
        }
        index *= a[t][t].abs();
    }
    Ok(index)
}
