//! Packed Laurent polynomials for the hot enumeration paths.
//!
//! Exponent vectors are bit-packed into a `u128` key (10 bits per variable,
//! biased doubled exponents) and coefficients are `i128` (the loop-model
//! weights are products of `+-1` monomials and `tau`, so coefficients stay
//! tiny). Everything converts losslessly to the general [`Poly`] at module
//! boundaries; the representation never leaves the crate.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::laurent::{Coeff, Poly, Ring, Vars};
use crate::Exp2;

const BITS: u32 = 10;
const BIAS: i64 = 1 << (BITS - 1);
const MASK: u128 = (1 << BITS) - 1;

/// Sparse polynomial with packed exponents. The variable roster is carried
/// by the caller; only its size matters here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedPoly {
    pub n_vars: usize,
    pub terms: BTreeMap<u128, i128>,
}

pub fn pack(exp2: &[Exp2]) -> u128 {
    let mut key = 0u128;
    for (v, &e) in exp2.iter().enumerate() {
        let biased = e as i64 + BIAS;
        debug_assert!((0..(1 << BITS)).contains(&biased), "exponent overflow");
        key |= (biased as u128 & MASK) << (BITS * v as u32);
    }
    key
}

pub fn unpack(key: u128, n_vars: usize) -> Vec<Exp2> {
    (0..n_vars)
        .map(|v| (((key >> (BITS * v as u32)) & MASK) as i64 - BIAS) as Exp2)
        .collect()
}

#[inline]
fn field(key: u128, v: usize) -> i64 {
    ((key >> (BITS * v as u32)) & MASK) as i64 - BIAS
}

#[inline]
fn with_field(key: u128, v: usize, value: i64) -> u128 {
    let biased = value + BIAS;
    debug_assert!((0..(1 << BITS)).contains(&biased));
    let shift = BITS * v as u32;
    (key & !(MASK << shift)) | ((biased as u128 & MASK) << shift)
}

impl PackedPoly {
    pub fn zero(n_vars: usize) -> Self {
        PackedPoly { n_vars, terms: BTreeMap::new() }
    }

    pub fn one(n_vars: usize) -> Self {
        let mut p = PackedPoly::zero(n_vars);
        p.terms.insert(pack(&vec![0; n_vars]), 1);
        p
    }

    pub fn monomial(n_vars: usize, exp2: &[Exp2], coeff: i128) -> Self {
        let mut p = PackedPoly::zero(n_vars);
        if coeff != 0 {
            p.terms.insert(pack(exp2), coeff);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_assign(&mut self, other: &PackedPoly) {
        for (&k, &c) in &other.terms {
            let e = self.terms.entry(k).or_insert(0);
            *e += c;
            if *e == 0 {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &PackedPoly) -> PackedPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &PackedPoly) -> PackedPoly {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            let e = out.terms.entry(k).or_insert(0);
            *e -= c;
            if *e == 0 {
                out.terms.remove(&k);
            }
        }
        out
    }

    pub fn mul(&self, other: &PackedPoly) -> PackedPoly {
        let (small, big) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = PackedPoly::zero(self.n_vars);
        for (&k1, &c1) in &small.terms {
            // packed keys add componentwise as long as fields don't overflow:
            // (e1+BIAS)+(e2+BIAS) = e1+e2+2BIAS, so subtract the bias once
            for (&k2, &c2) in &big.terms {
                let k = add_keys(k1, k2, self.n_vars);
                let e = out.terms.entry(k).or_insert(0);
                *e += c1 * c2;
                if *e == 0 {
                    out.terms.remove(&k);
                }
            }
        }
        out
    }

    /// Apply a full roster permutation: variable `v` becomes `perm[v]`.
    pub fn permute_vars(&self, perm: &[usize]) -> PackedPoly {
        assert_eq!(perm.len(), self.n_vars);
        let mut out = PackedPoly::zero(self.n_vars);
        for (&k, &c) in &self.terms {
            let e = unpack(k, self.n_vars);
            let mut e2 = vec![0; self.n_vars];
            for (v, &x) in e.iter().enumerate() {
                e2[perm[v]] += x;
            }
            let key = pack(&e2);
            let entry = out.terms.entry(key).or_insert(0);
            *entry += c;
            if *entry == 0 {
                out.terms.remove(&key);
            }
        }
        out
    }

    /// Swap two variables.
    pub fn swap_vars(&self, v1: usize, v2: usize) -> PackedPoly {
        let mut out = PackedPoly::zero(self.n_vars);
        for (&k, &c) in &self.terms {
            let (e1, e2) = (field(k, v1), field(k, v2));
            let k2 = with_field(with_field(k, v1, e2), v2, e1);
            let e = out.terms.entry(k2).or_insert(0);
            *e += c;
            if *e == 0 {
                out.terms.remove(&k2);
            }
        }
        out
    }

    /// Substitute each listed variable by another variable of the same
    /// roster (simultaneously): the doubled exponent moves onto the target.
    pub fn substitute_vars(&self, map: &[(usize, usize)]) -> PackedPoly {
        let mut out = PackedPoly::zero(self.n_vars);
        for (&k, &c) in &self.terms {
            let mut add: Vec<i64> = vec![0; self.n_vars];
            let mut k2 = k;
            for &(from, to) in map {
                let e = field(k2, from);
                if e != 0 {
                    k2 = with_field(k2, from, 0);
                    add[to] += e;
                }
            }
            for (v, &delta) in add.iter().enumerate() {
                if delta != 0 {
                    k2 = with_field(k2, v, field(k2, v) + delta);
                }
            }
            let e = out.terms.entry(k2).or_insert(0);
            *e += c;
            if *e == 0 {
                out.terms.remove(&k2);
            }
        }
        out
    }

    /// Is the polynomial invariant under swapping `v1` and `v2`?
    pub fn symmetric_under_swap(&self, v1: usize, v2: usize) -> bool {
        self.swap_vars(v1, v2) == *self
    }

    /// Convert to the general exact polynomial over the given roster.
    pub fn to_poly(&self, vars: &Vars) -> Poly {
        assert_eq!(vars.len(), self.n_vars);
        let mut out = Poly::zero(vars, Ring::Q);
        for (&k, &c) in &self.terms {
            let exp2 = unpack(k, self.n_vars);
            out = out.add(&Poly::monomial(
                vars,
                Ring::Q,
                &exp2,
                Coeff::from_rat(crate::laurent::Rat::from_integer(c.into())),
            ));
        }
        out
    }

    /// Convert from a general polynomial with integer coefficients.
    pub fn from_poly(p: &Poly) -> PackedPoly {
        let n_vars = p.vars().len();
        let mut out = PackedPoly::zero(n_vars);
        for (e, c) in p.terms() {
            assert!(c.im.is_zero() && c.re.is_integer(), "packed coefficients are integers");
            let digits = c.re.to_integer();
            let val: i128 = i128::try_from(&digits).expect("coefficient fits i128");
            out.terms.insert(pack(e), val);
        }
        out
    }
}

#[inline]
fn add_keys(k1: u128, k2: u128, n_vars: usize) -> u128 {
    let mut out = 0u128;
    for v in 0..n_vars {
        let sum = field(k1, v) + field(k2, v);
        out = with_field(out, v, sum);
    }
    out
}

/// `a(x) = t^{-1/2} x^{1/2} - t^{1/2} x^{-1/2}` at `x = num/den`, packed.
pub fn packed_weight_a(n_vars: usize, t: usize, num: usize, den: usize) -> PackedPoly {
    let mut e1 = vec![0; n_vars];
    e1[t] -= 1;
    e1[num] += 1;
    e1[den] -= 1;
    let mut e2 = vec![0; n_vars];
    e2[t] += 1;
    e2[num] -= 1;
    e2[den] += 1;
    let mut p = PackedPoly::monomial(n_vars, &e1, 1);
    p.add_assign(&PackedPoly::monomial(n_vars, &e2, -1));
    p
}

/// `b(x) = x^{-1/2} - x^{1/2}`, packed.
pub fn packed_weight_b(n_vars: usize, num: usize, den: usize) -> PackedPoly {
    let mut e1 = vec![0; n_vars];
    e1[num] -= 1;
    e1[den] += 1;
    let mut e2 = vec![0; n_vars];
    e2[num] += 1;
    e2[den] -= 1;
    let mut p = PackedPoly::monomial(n_vars, &e1, 1);
    p.add_assign(&PackedPoly::monomial(n_vars, &e2, -1));
    p
}

/// `a(1) = t^{-1/2} - t^{1/2}`, packed.
pub fn packed_weight_a_one(n_vars: usize, t: usize) -> PackedPoly {
    let mut e1 = vec![0; n_vars];
    e1[t] = -1;
    let mut e2 = vec![0; n_vars];
    e2[t] = 1;
    let mut p = PackedPoly::monomial(n_vars, &e1, 1);
    p.add_assign(&PackedPoly::monomial(n_vars, &e2, -1));
    p
}

/// `tau = t^{1/2} + t^{-1/2}`, packed.
pub fn packed_tau(n_vars: usize, t: usize) -> PackedPoly {
    let mut e1 = vec![0; n_vars];
    e1[t] = 1;
    let mut e2 = vec![0; n_vars];
    e2[t] = -1;
    let mut p = PackedPoly::monomial(n_vars, &e1, 1);
    p.add_assign(&PackedPoly::monomial(n_vars, &e2, 1));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{weight_a, VarSet};

    #[test]
    fn pack_roundtrip() {
        let e = vec![-3, 0, 7, -1];
        assert_eq!(unpack(pack(&e), 4), e);
    }

    #[test]
    fn ops_match_poly() {
        let vars = VarSet::t_z(2);
        let p = weight_a(&vars, Ring::Q, 1, 2);
        let q = weight_a(&vars, Ring::Q, 2, 1);
        let pp = PackedPoly::from_poly(&p);
        let qq = PackedPoly::from_poly(&q);
        assert_eq!(pp.mul(&qq).to_poly(&vars), p.mul(&q));
        assert_eq!(pp.add(&qq).to_poly(&vars), p.add(&q));
        assert_eq!(pp.swap_vars(1, 2).to_poly(&vars), q);
        assert!(pp.mul(&qq).symmetric_under_swap(1, 2));
    }

    #[test]
    fn substitution_moves_exponents() {
        let vars = VarSet::t_z(3);
        let p = weight_a(&vars, Ring::Q, 1, 2);
        let pp = PackedPoly::from_poly(&p);
        let sub = pp.substitute_vars(&[(1, 3)]);
        assert_eq!(sub.to_poly(&vars), weight_a(&vars, Ring::Q, 3, 2));
    }
}
