//! Arithmetic modulo the Mersenne prime `p = 2^61 - 1`, plus dense
//! elimination and Lagrange interpolation over `F_p`. Used as the fast
//! evaluation backend of the wheel-space solver; every result produced
//! this way is re-verified with exact symbolic arithmetic afterwards.

use alloc::vec;
use alloc::vec::Vec;

/// The working prime.
pub const P: u64 = (1u64 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= P;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(P));
    pow(a, P - 2)
}

/// `u^k` for possibly negative `k`.
pub fn pow_i(base: u64, k: i64) -> u64 {
    if k >= 0 {
        pow(base, k as u64)
    } else {
        pow(inv(base), (-k) as u64)
    }
}

/// Signed symmetric lift to `(-p/2, p/2]`.
pub fn lift_signed(a: u64) -> i128 {
    if a > P / 2 {
        a as i128 - P as i128
    } else {
        a as i128
    }
}

/// Rational reconstruction: find `n/d` with `|n|, d <= sqrt(p/2)`-ish such
/// that `n = a d (mod p)`; returns `None` if no small representative exists.
pub fn rational_reconstruct(a: u64) -> Option<(i128, i128)> {
    let bound = 1i128 << 30;
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= bound {
        let q = r0 / r1;
        let r2 = r0 - q * r1;
        let t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1 == 0 || t1.abs() >= bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((n, d))
}

/// Dense solve of an overdetermined consistent system with several right
/// hand sides: returns the unique solution block, or `None` if the system
/// is singular (rank < columns) or inconsistent at this evaluation point.
pub fn solve_unique(
    rows: &mut Vec<Vec<u64>>,
    mut rhs: Vec<Vec<u64>>,
    cols: usize,
) -> Option<Vec<Vec<u64>>> {
    let nrhs = rhs.len();
    let m = rows.len();
    debug_assert!(rhs.iter().all(|r| r.len() == m));
    let mut rank = 0usize;
    let mut pivot_cols = Vec::with_capacity(cols);
    for col in 0..cols {
        let mut piv = None;
        for r in rank..m {
            if rows[r][col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        rows.swap(rank, piv);
        for v in rhs.iter_mut() {
            v.swap(rank, piv);
        }
        let c = inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = mul(*x, c);
        }
        for v in rhs.iter_mut() {
            v[rank] = mul(v[rank], c);
        }
        for r in 0..m {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                let (head, tail) = if r < rank {
                    let (a, b) = rows.split_at_mut(rank);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut b[0], &a[rank])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    *x = sub(*x, mul(f, *y));
                }
                for v in rhs.iter_mut() {
                    let y = v[rank];
                    v[r] = sub(v[r], mul(f, y));
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == cols {
            break;
        }
    }
    if rank < cols {
        return None;
    }
    // consistency: remaining rhs entries must vanish (rows below rank are 0)
    for v in &rhs {
        for &x in v.iter().skip(rank) {
            if x != 0 {
                return None;
            }
        }
    }
    let mut out = vec![vec![0u64; cols]; nrhs];
    for (k, v) in rhs.iter().enumerate() {
        for (i, &col) in pivot_cols.iter().enumerate() {
            out[k][col] = v[i];
        }
    }
    Some(out)
}

/// Rank of a dense matrix over `F_p` (destructive).
pub fn rank(rows: &mut Vec<Vec<u64>>, cols: usize) -> usize {
    let m = rows.len();
    let mut rank = 0usize;
    for col in 0..cols {
        let mut piv = None;
        for r in rank..m {
            if rows[r][col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        rows.swap(rank, piv);
        let c = inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = mul(*x, c);
        }
        for r in (rank + 1)..m {
            if rows[r][col] != 0 {
                let f = rows[r][col];
                let (a, b) = rows.split_at_mut(r);
                let pivrow = &a[rank];
                for (x, y) in b[0].iter_mut().zip(pivrow.iter()) {
                    *x = sub(*x, mul(f, *y));
                }
            }
        }
        rank += 1;
        if rank == m.min(cols) {
            break;
        }
    }
    rank
}

/// Lagrange interpolation: the coefficients of the unique polynomial of
/// degree `< points.len()` through `(x_i, y_i)`.
pub fn lagrange(points: &[(u64, u64)]) -> Vec<u64> {
    let k = points.len();
    // full product prod (x - x_i)
    let mut full = vec![0u64; k + 1];
    full[0] = 1;
    let mut deg = 0;
    for &(x, _) in points {
        // multiply by (X - x)
        let mut next = vec![0u64; k + 1];
        for d in 0..=deg {
            next[d + 1] = add(next[d + 1], full[d]);
            next[d] = sub(next[d], mul(full[d], x));
        }
        full = next;
        deg += 1;
    }
    let mut coeffs = vec![0u64; k];
    for &(x, y) in points {
        // q = full / (X - x), synthetic division
        let mut q = vec![0u64; k];
        let mut carry = 0u64;
        for d in (0..k).rev() {
            let c = add(full[d + 1], mul(carry, x));
            q[d] = c;
            carry = c;
        }
        // denominator: q evaluated at x
        let mut den = 0u64;
        let mut xp = 1u64;
        for &c in &q {
            den = add(den, mul(c, xp));
            xp = mul(xp, x);
        }
        let f = mul(y, inv(den));
        for d in 0..k {
            coeffs[d] = add(coeffs[d], mul(q[d], f));
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        assert_eq!(mul(inv(7), 7), 1);
        assert_eq!(pow(3, P - 1), 1);
        assert_eq!(pow_i(5, -2), inv(mul(5, 5)));
    }

    #[test]
    fn solve_small() {
        // x + y = 3, x - y = 1, 2x = 4 (consistent, unique)
        let mut rows = vec![vec![1, 1], vec![1, P - 1], vec![2, 0]];
        let rhs = vec![vec![3, 1, 4]];
        let sol = solve_unique(&mut rows, rhs, 2).unwrap();
        assert_eq!(sol[0], vec![2, 1]);
    }

    #[test]
    fn interpolation_roundtrip() {
        // p(x) = 3 + 2x + x^3
        let eval = |x: u64| add(add(3, mul(2, x)), pow(x, 3));
        let pts: Vec<(u64, u64)> = (2..6).map(|x| (x, eval(x))).collect();
        assert_eq!(lagrange(&pts), vec![3, 2, 0, 1]);
    }

    #[test]
    fn reconstruct_small_rational() {
        // a = 3/7 mod p
        let a = mul(3, inv(7));
        let (n, d) = rational_reconstruct(a).unwrap();
        assert_eq!((n, d), (3, 7));
    }
}
