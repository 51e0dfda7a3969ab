//! Exact dense linear algebra over the rationals: rank and nullspace by
//! fraction-aware Gaussian elimination. Sizes here are desk-scale (a few
//! hundred rows), so the straightforward algorithms suffice.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::laurent::Rat;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>, cols: usize) -> Vec<usize> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let mut piv = None;
        for r in rank..m {
            if !rows[r][col].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        rows.swap(rank, piv);
        let c = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x /= &c;
        }
        for r in 0..m {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let (ra, rb) = if r < rank {
                    let (a, b) = rows.split_at_mut(rank);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut b[0], &a[rank])
                };
                for (x, y) in ra.iter_mut().zip(rb.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }
    pivots
}

/// Rank over the rationals.
pub fn rank(mut rows: Vec<Vec<Rat>>, cols: usize) -> usize {
    rref(&mut rows, cols).len()
}

/// A basis of the right nullspace of the matrix.
pub fn nullspace(mut rows: Vec<Vec<Rat>>, cols: usize) -> Vec<Vec<Rat>> {
    let pivots = rref(&mut rows, cols);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Reduce `v` against an RREF basis (rows with their pivot columns);
/// returns the residual.
pub fn reduce_against(rref_rows: &[Vec<Rat>], pivots: &[usize], v: &mut [Rat]) {
    for (row, &pc) in rref_rows.iter().zip(pivots) {
        if !v[pc].is_zero() {
            let f = v[pc].clone();
            for (x, y) in v.iter_mut().zip(row.iter()) {
                *x -= &f * y;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(1), r(0), r(1)],
        ];
        assert_eq!(rank(rows.clone(), 3), 2);
        let ns = nullspace(rows.clone(), 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot: Rat = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }
}
