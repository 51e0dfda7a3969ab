//! Sparse multivariate Laurent polynomials with half-integer exponents.
//!
//! Exponents are stored doubled (`exp2`), so `t^(1/2)` has `exp2 = 1` and no
//! radical arithmetic is ever needed. Coefficients are arbitrary-precision
//! rationals, or pairs `re + im*u` in the cyclotomic ring `Q[u]/(u^2-u+1)`
//! (the `tau = 1` specialization, where `u` stands for `t^(1/2)`).
//!
//! Terms are kept in a `BTreeMap` keyed by the exponent vector, so the term
//! order is lexicographic on `exp2` and serialization is canonical.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use alloc::collections::BTreeMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Exp2;

pub type Rat = BigRational;

/// Coefficient ring tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    /// Plain rationals.
    Q,
    /// `Q[u]/(u^2 - u + 1)`, a field (sixth cyclotomic); `u = t^(1/2)`.
    QU,
}

/// A coefficient `re + im*u`. In `Ring::Q` the `im` part is always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff {
    pub re: Rat,
    pub im: Rat,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn one() -> Self {
        Coeff { re: Rat::one(), im: Rat::zero() }
    }

    pub fn from_rat(re: Rat) -> Self {
        Coeff { re, im: Rat::zero() }
    }

    pub fn from_i64(n: i64) -> Self {
        Coeff::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// The generator `u` (only meaningful in `Ring::QU`).
    pub fn u() -> Self {
        Coeff { re: Rat::zero(), im: Rat::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True if the cyclotomic part vanishes.
    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn neg(&self) -> Self {
        Coeff { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        Coeff { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        Coeff { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    /// Ring-aware product: in `QU`, `u^2` reduces to `u - 1`.
    pub fn mul(&self, other: &Coeff, ring: Ring) -> Coeff {
        match ring {
            Ring::Q => {
                debug_assert!(self.im.is_zero() && other.im.is_zero());
                Coeff { re: &self.re * &other.re, im: Rat::zero() }
            }
            Ring::QU => {
                let ac = &self.re * &other.re;
                let bd = &self.im * &other.im;
                let ad_bc = &self.re * &other.im + &self.im * &other.re;
                Coeff { re: ac - &bd, im: ad_bc + bd }
            }
        }
    }

    /// Multiplicative inverse. `QU` is a field: the norm `a^2+ab+b^2`
    /// vanishes only at zero.
    pub fn inv(&self, ring: Ring) -> Result<Coeff, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        match ring {
            Ring::Q => Ok(Coeff::from_rat(Rat::one() / &self.re)),
            Ring::QU => {
                let norm = &self.re * &self.re + &self.re * &self.im + &self.im * &self.im;
                Ok(Coeff { re: (&self.re + &self.im) / &norm, im: -(&self.im / &norm) })
            }
        }
    }

    /// `self^k` in the given ring; negative `k` inverts first.
    pub fn pow(&self, k: i64, ring: Ring) -> Result<Coeff, LaurentError> {
        let base = if k < 0 { self.inv(ring)? } else { self.clone() };
        let mut acc = Coeff::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base, ring);
        }
        Ok(acc)
    }
}

/// A fixed variable roster shared by all polynomials in one context.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    pub names: Vec<String>,
}

pub type Vars = Arc<VarSet>;

impl VarSet {
    pub fn new(names: Vec<String>) -> Vars {
        Arc::new(VarSet { names })
    }

    /// Roster `t, z1..zN`.
    pub fn t_z(n_z: usize) -> Vars {
        let mut names = vec!["t".to_owned()];
        for j in 1..=n_z {
            names.push(format!("z{j}"));
        }
        VarSet::new(names)
    }

    /// Roster `t, y1..yn, z1..zN`.
    pub fn t_y_z(n_y: usize, n_z: usize) -> Vars {
        let mut names = vec!["t".to_owned()];
        for i in 1..=n_y {
            names.push(format!("y{i}"));
        }
        for j in 1..=n_z {
            names.push(format!("z{j}"));
        }
        VarSet::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Index of `t` in the `t_z` / `t_y_z` rosters.
pub const T: usize = 0;

/// Variable index of `y_i` (1-based) in the `t_y_z(n, _)` roster.
pub fn y_var(i: usize) -> usize {
    i
}

/// Variable index of `z_j` (1-based) in the `t_y_z(n, _)` roster.
pub fn z_var_with_y(n_y: usize, j: usize) -> usize {
    n_y + j
}

/// Variable index of `z_j` (1-based) in the `t_z` roster.
pub fn z_var(j: usize) -> usize {
    j
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentError {
    RosterMismatch,
    RingMismatch,
    DivisionByZero,
    InexactDivision,
    /// Substituting would create a non-integral doubled exponent or a
    /// fractional power of a nontrivial coefficient.
    FractionalPower,
    /// Substitution target is not a single monomial or constant.
    NonMonomialSubstitution,
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::RosterMismatch => write!(f, "variable rosters differ"),
            LaurentError::RingMismatch => write!(f, "coefficient rings differ"),
            LaurentError::DivisionByZero => write!(f, "division by zero"),
            LaurentError::InexactDivision => write!(f, "division is not exact"),
            LaurentError::FractionalPower => {
                write!(f, "substitution produces a non-integral doubled exponent")
            }
            LaurentError::NonMonomialSubstitution => {
                write!(f, "substitution target is not a monomial or constant")
            }
        }
    }
}

/// Exponent vector: `exp2[v]` is twice the true exponent of variable `v`.
pub type Exp = Box<[Exp2]>;

/// Value substituted for a variable: a coefficient times a Laurent monomial.
#[derive(Clone, Debug)]
pub struct MonomialValue {
    pub coeff: Coeff,
    /// Doubled exponents, indexed like the roster.
    pub exp2: Vec<Exp2>,
}

impl MonomialValue {
    pub fn constant(c: Coeff, n_vars: usize) -> Self {
        MonomialValue { coeff: c, exp2: vec![0; n_vars] }
    }

    /// The bare variable `v`.
    pub fn variable(v: usize, n_vars: usize) -> Self {
        let mut exp2 = vec![0; n_vars];
        exp2[v] = 2;
        MonomialValue { coeff: Coeff::one(), exp2 }
    }

    /// `t^(k/2) * v` for the given half-exponent count `k` (doubled).
    pub fn t_pow_times_var(t_exp2: Exp2, v: usize, n_vars: usize) -> Self {
        let mut exp2 = vec![0; n_vars];
        exp2[T] += t_exp2;
        exp2[v] += 2;
        MonomialValue { coeff: Coeff::one(), exp2 }
    }

    /// `t^(k/2)` as a bare monomial (doubled exponent `k`).
    pub fn t_pow(t_exp2: Exp2, n_vars: usize) -> Self {
        let mut exp2 = vec![0; n_vars];
        exp2[T] = t_exp2;
        MonomialValue { coeff: Coeff::one(), exp2 }
    }
}

/// Sparse exact Laurent polynomial over a fixed roster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vars,
    ring: Ring,
    terms: BTreeMap<Exp, Coeff>,
}

impl Poly {
    pub fn zero(vars: &Vars, ring: Ring) -> Self {
        Poly { vars: vars.clone(), ring, terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars, ring: Ring) -> Self {
        Poly::constant(Coeff::one(), vars, ring)
    }

    pub fn constant(c: Coeff, vars: &Vars, ring: Ring) -> Self {
        let mut p = Poly::zero(vars, ring);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()].into_boxed_slice(), c);
        }
        p
    }

    pub fn from_i64(n: i64, vars: &Vars, ring: Ring) -> Self {
        Poly::constant(Coeff::from_i64(n), vars, ring)
    }

    /// Single term `c * prod v^(exp2_v / 2)`.
    pub fn monomial(vars: &Vars, ring: Ring, exp2: &[Exp2], c: Coeff) -> Self {
        assert_eq!(exp2.len(), vars.len(), "exponent vector length");
        let mut p = Poly::zero(vars, ring);
        if !c.is_zero() {
            p.terms.insert(exp2.to_vec().into_boxed_slice(), c);
        }
        p
    }

    /// `v^(exp2/2)`.
    pub fn var_pow(vars: &Vars, ring: Ring, v: usize, exp2: Exp2) -> Self {
        let mut e = vec![0; vars.len()];
        e[v] = exp2;
        Poly::monomial(vars, ring, &e, Coeff::one())
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Exp2], &Coeff)> {
        self.terms.iter().map(|(e, c)| (e.as_ref(), c))
    }

    /// The constant term.
    pub fn constant_term(&self) -> Coeff {
        let key: Exp = vec![0; self.vars.len()].into_boxed_slice();
        self.terms.get(&key).cloned().unwrap_or_else(Coeff::zero)
    }

    fn compat(&self, other: &Poly) -> Result<(), LaurentError> {
        if self.vars.names != other.vars.names {
            return Err(LaurentError::RosterMismatch);
        }
        if self.ring != other.ring {
            return Err(LaurentError::RingMismatch);
        }
        Ok(())
    }

    fn insert_term(terms: &mut BTreeMap<Exp, Coeff>, e: Exp, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, LaurentError> {
        self.compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.try_add(other).expect("adding incompatible polynomials")
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(&self.vars, self.ring);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let mut out = Poly::zero(&self.vars, self.ring);
        if c.is_zero() {
            return out;
        }
        for (e, k) in &self.terms {
            Self::insert_term(&mut out.terms, e.clone(), k.mul(c, self.ring));
        }
        out
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, LaurentError> {
        self.compat(other)?;
        let mut out = Poly::zero(&self.vars, self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exp = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                Self::insert_term(&mut out.terms, e, c1.mul(c2, self.ring));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.try_mul(other).expect("multiplying incompatible polynomials")
    }

    /// Product of a list of polynomials (empty product is 1).
    pub fn product(vars: &Vars, ring: Ring, factors: &[Poly]) -> Poly {
        let mut acc = Poly::one(vars, ring);
        for f in factors {
            acc = acc.mul(f);
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.vars, self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Simultaneous substitution of monomial values for variables.
    ///
    /// Half-exponents compose only when exact: if variable `v` appears with
    /// odd `exp2`, the substituted coefficient must be `1` and all target
    /// exponents even in the product, otherwise `FractionalPower`.
    pub fn substitute(&self, assignments: &[(usize, MonomialValue)]) -> Result<Poly, LaurentError> {
        for (v, mv) in assignments {
            if *v >= self.vars.len() || mv.exp2.len() != self.vars.len() {
                return Err(LaurentError::RosterMismatch);
            }
            if mv.coeff.is_zero() {
                return Err(LaurentError::NonMonomialSubstitution);
            }
        }
        let mut out = Poly::zero(&self.vars, self.ring);
        'term: for (e, c) in &self.terms {
            let mut new_e: Vec<Exp2> = e.to_vec();
            let mut coeff = c.clone();
            for (v, _) in assignments {
                new_e[*v] = 0;
            }
            for (v, mv) in assignments {
                let ev = e[*v];
                if ev == 0 {
                    continue;
                }
                // coefficient factor: coeff(mv)^(ev/2)
                if ev % 2 != 0 {
                    if !(mv.coeff.re.is_one() && mv.coeff.im.is_zero()) {
                        return Err(LaurentError::FractionalPower);
                    }
                } else {
                    let f = mv.coeff.pow((ev / 2) as i64, self.ring)?;
                    coeff = coeff.mul(&f, self.ring);
                }
                for (w, fw) in mv.exp2.iter().enumerate() {
                    if *fw == 0 {
                        continue;
                    }
                    let prod = (ev as i64) * (*fw as i64);
                    if prod % 2 != 0 {
                        return Err(LaurentError::FractionalPower);
                    }
                    new_e[w] += (prod / 2) as Exp2;
                }
                if coeff.is_zero() {
                    continue 'term;
                }
            }
            Self::insert_term(&mut out.terms, new_e.into_boxed_slice(), coeff);
        }
        Ok(out)
    }

    /// Per-variable doubled-exponent ranges `(min, max)` over all terms.
    fn exp_ranges(&self) -> Option<(Vec<Exp2>, Vec<Exp2>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo: Vec<Exp2> = first.to_vec();
        let mut hi: Vec<Exp2> = first.to_vec();
        for e in it {
            for (v, x) in e.iter().enumerate() {
                if *x < lo[v] {
                    lo[v] = *x;
                }
                if *x > hi[v] {
                    hi[v] = *x;
                }
            }
        }
        Some((lo, hi))
    }

    /// Exact division in the Laurent ring: returns `q` with `self = other*q`,
    /// or `InexactDivision` if no such Laurent polynomial exists.
    ///
    /// Works by cancelling lex-leading terms. For an exact division the
    /// quotient's per-variable exponent range is forced (degrees add in a
    /// domain), which bounds the loop and detects inexactness.
    pub fn divide_exact(&self, other: &Poly) -> Result<Poly, LaurentError> {
        self.compat(other)?;
        if other.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Poly::zero(&self.vars, self.ring));
        }
        let (plo, phi) = self.exp_ranges().expect("nonzero");
        let (qlo, qhi) = other.exp_ranges().expect("nonzero");
        let lo: Vec<Exp2> = plo.iter().zip(&qlo).map(|(a, b)| a - b).collect();
        let hi: Vec<Exp2> = phi.iter().zip(&qhi).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(LaurentError::InexactDivision);
        }
        let (qlead_e, qlead_c) = other.terms.iter().next_back().expect("nonzero");
        let qlead_inv = qlead_c.inv(self.ring)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.vars, self.ring);
        while let Some((rlead_e, rlead_c)) = rem.terms.iter().next_back() {
            let te: Exp = rlead_e.iter().zip(qlead_e.iter()).map(|(a, b)| a - b).collect();
            if te.iter().zip(lo.iter().zip(&hi)).any(|(x, (a, b))| x < a || x > b) {
                return Err(LaurentError::InexactDivision);
            }
            let tc = rlead_c.mul(&qlead_inv, self.ring);
            let t = Poly::monomial(&self.vars, self.ring, &te, tc);
            rem = rem.sub(&t.mul(other));
            quot = quot.add(&t);
        }
        Ok(quot)
    }

    /// Does `(v_i - v_j)` divide `self`? Tested by substituting `v_i <- v_j`.
    pub fn divisible_by_linear(&self, i: usize, j: usize) -> bool {
        assert_ne!(i, j);
        let sub = [(i, MonomialValue::variable(j, self.vars.len()))];
        self.substitute(&sub).map(|p| p.is_zero()).unwrap_or(false)
    }

    /// Apply a permutation of the roster: variable `v` becomes `perm[v]`.
    pub fn apply_perm(&self, perm: &[usize]) -> Poly {
        assert_eq!(perm.len(), self.vars.len());
        let mut out = Poly::zero(&self.vars, self.ring);
        for (e, c) in &self.terms {
            let mut ne = vec![0; e.len()];
            for (v, x) in e.iter().enumerate() {
                ne[perm[v]] += *x;
            }
            Self::insert_term(&mut out.terms, ne.into_boxed_slice(), c.clone());
        }
        out
    }

    /// Invariance under each generating transposition `(i, j)` of variables.
    pub fn is_symmetric(&self, generators: &[(usize, usize)]) -> bool {
        for &(i, j) in generators {
            let mut perm: Vec<usize> = (0..self.vars.len()).collect();
            perm.swap(i, j);
            if self.apply_perm(&perm) != *self {
                return false;
            }
        }
        true
    }

    /// Deterministic seeded evaluation at a rational point.
    ///
    /// Each variable `v` is assigned a nonzero rational `q_v`; a monomial
    /// evaluates as `prod q_v^exp2_v`, i.e. the polynomial is evaluated at
    /// the point `v = q_v^2` with `v^(1/2) := q_v` (exact square sampling,
    /// so half-exponents stay rational). Identical seeds give identical
    /// values.
    pub fn random_eval(&self, seed: u64) -> Coeff {
        let points = random_point(seed, self.vars.len());
        self.eval(&points)
    }

    /// Evaluate at explicit square-root samples (`v = q_v^2`).
    pub fn eval(&self, sqrt_samples: &[Rat]) -> Coeff {
        assert_eq!(sqrt_samples.len(), self.vars.len());
        let mut acc = Coeff::zero();
        for (e, c) in &self.terms {
            let mut m = Rat::one();
            for (v, x) in e.iter().enumerate() {
                m *= rat_pow(&sqrt_samples[v], *x as i64);
            }
            acc = acc.add(&c.mul(&Coeff::from_rat(m), self.ring));
        }
        acc
    }

    /// Reinterpret a `Ring::Q` polynomial in `Ring::QU` (no-op on data).
    pub fn into_ring_qu(mut self) -> Poly {
        self.ring = Ring::QU;
        self
    }

    /// Collapse a univariate-in-`t` polynomial to a cyclotomic constant by
    /// `t^(1/2) -> u` with `u^2 = u - 1`. All non-`t` exponents must vanish.
    pub fn reduce_t_to_u(&self) -> Result<Coeff, LaurentError> {
        let mut acc = Coeff::zero();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(v, x)| v != T && *x != 0) {
                return Err(LaurentError::NonMonomialSubstitution);
            }
            acc = acc.add(&c.mul(&u_pow(e[T]), Ring::QU));
        }
        Ok(acc)
    }
}

/// `u^k` reduced modulo `u^2 = u - 1` (so `u^6 = 1`, `u^3 = -1`).
pub fn u_pow(k: Exp2) -> Coeff {
    let k = k.rem_euclid(6);
    match k {
        0 => Coeff::one(),
        1 => Coeff::u(),
        2 => Coeff { re: -Rat::one(), im: Rat::one() }, // u - 1
        3 => Coeff::from_i64(-1),
        4 => Coeff::u().neg(),
        5 => Coeff { re: Rat::one(), im: -Rat::one() }, // 1 - u
        _ => unreachable!(),
    }
}

fn rat_pow(q: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let base = if k < 0 { Rat::one() / q } else { q.clone() };
    let mut acc = Rat::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Deterministic nonzero rational square-root samples for `n` variables.
///
/// Values avoid 0 and +-1, and distinct draws are distinct with high
/// probability; the same seed always yields the same point.
pub fn random_point(seed: u64, n: usize) -> Vec<Rat> {
    let mut st = seed ^ 0x5bf0_3635_dead_beef;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let a = splitmix64(&mut st) % 911 + 2;
        let b = splitmix64(&mut st) % 89 + 3;
        out.push(Rat::new(BigInt::from(a), BigInt::from(b)));
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "(")?;
            if c.im.is_zero() {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "{}+{}u", c.re, c.im)?;
            }
            write!(f, ")")?;
            for (v, x) in e.iter().enumerate() {
                if *x != 0 {
                    if x % 2 == 0 {
                        write!(f, "*{}^{}", self.vars.names[v], x / 2)?;
                    } else {
                        write!(f, "*{}^({}/2)", self.vars.names[v], x)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Plaquette weight `a(x) = t^(-1/2) x^(1/2) - t^(1/2) x^(-1/2)` at
/// `x = num/den` (both roster variables).
pub fn weight_a(vars: &Vars, ring: Ring, num: usize, den: usize) -> Poly {
    let mut e1 = vec![0; vars.len()];
    e1[T] -= 1;
    e1[num] += 1;
    e1[den] -= 1;
    let mut e2 = vec![0; vars.len()];
    e2[T] += 1;
    e2[num] -= 1;
    e2[den] += 1;
    Poly::monomial(vars, ring, &e1, Coeff::one())
        .add(&Poly::monomial(vars, ring, &e2, Coeff::from_i64(-1)))
}

/// Plaquette weight `b(x) = x^(-1/2) - x^(1/2)` at `x = num/den`.
pub fn weight_b(vars: &Vars, ring: Ring, num: usize, den: usize) -> Poly {
    let mut e1 = vec![0; vars.len()];
    e1[num] -= 1;
    e1[den] += 1;
    let mut e2 = vec![0; vars.len()];
    e2[num] += 1;
    e2[den] -= 1;
    Poly::monomial(vars, ring, &e1, Coeff::one())
        .add(&Poly::monomial(vars, ring, &e2, Coeff::from_i64(-1)))
}

/// `a(1) = t^(-1/2) - t^(1/2)`: the weight of a frozen equal-parameter
/// crossing.
pub fn weight_a_one(vars: &Vars, ring: Ring) -> Poly {
    Poly::var_pow(vars, ring, T, -1).sub(&Poly::var_pow(vars, ring, T, 1))
}

/// Loop weight `tau = t^(1/2) + t^(-1/2)`.
pub fn tau(vars: &Vars, ring: Ring) -> Poly {
    Poly::var_pow(vars, ring, T, 1).add(&Poly::var_pow(vars, ring, T, -1))
}

/// `1 - t`.
pub fn one_minus_t(vars: &Vars, ring: Ring) -> Poly {
    Poly::one(vars, ring).sub(&Poly::var_pow(vars, ring, T, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn yz_vars() -> Vars {
        VarSet::new(vec!["t".into(), "y".into(), "z".into()])
    }

    #[test]
    fn add_plaquette_weights() {
        // a(y/z) + b(y/z) has the four expected half-exponent terms.
        let vars = yz_vars();
        let s = weight_a(&vars, Ring::Q, 1, 2).add(&weight_b(&vars, Ring::Q, 1, 2));
        let mut expect = Poly::zero(&vars, Ring::Q);
        for (e, c) in [
            ([-1, 1, -1], 1i64),
            ([1, -1, 1], -1),
            ([0, -1, 1], 1),
            ([0, 1, -1], -1),
        ] {
            expect = expect.add(&Poly::monomial(&vars, Ring::Q, &e, Coeff::from_i64(c)));
        }
        assert_eq!(s, expect);
    }

    #[test]
    fn add_identity_and_cancellation() {
        let vars = yz_vars();
        let p = weight_a(&vars, Ring::Q, 1, 2);
        assert_eq!(p.add(&Poly::zero(&vars, Ring::Q)), p);
        let z1z2 = Poly::var_pow(&vars, Ring::Q, 1, 2).sub(&Poly::var_pow(&vars, Ring::Q, 2, 2));
        assert!(z1z2.add(&z1z2.neg()).is_zero());
    }

    #[test]
    fn mul_unitarity_factor() {
        // a(z)a(1/z) = t + t^(-1) - z - z^(-1) expanded exactly.
        let vars = VarSet::new(vec!["t".into(), "z".into()]);
        // a(z): x = z i.e. numerator z, denominator nothing: build by hand
        let az = Poly::monomial(&vars, Ring::Q, &[-1, 1], Coeff::one())
            .add(&Poly::monomial(&vars, Ring::Q, &[1, -1], Coeff::from_i64(-1)));
        let azinv = Poly::monomial(&vars, Ring::Q, &[-1, -1], Coeff::one())
            .add(&Poly::monomial(&vars, Ring::Q, &[1, 1], Coeff::from_i64(-1)));
        let prod = az.mul(&azinv);
        let mut expect = Poly::zero(&vars, Ring::Q);
        for (e, c) in [([-2, 0], 1i64), ([2, 0], 1), ([0, 2], -1), ([0, -2], -1)] {
            expect = expect.add(&Poly::monomial(&vars, Ring::Q, &e, Coeff::from_i64(c)));
        }
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_identity_and_b_one_annihilates() {
        let vars = yz_vars();
        let p = weight_a(&vars, Ring::Q, 1, 2);
        assert_eq!(p.mul(&Poly::one(&vars, Ring::Q)), p);
        // b(1) = 1 - 1 = 0, so b(x)|_{x=1} * anything = 0
        let b11 = weight_b(&vars, Ring::Q, 1, 1);
        assert!(b11.is_zero());
    }

    #[test]
    fn substitute_empty_is_identity() {
        let vars = yz_vars();
        let p = weight_a(&vars, Ring::Q, 1, 2);
        assert_eq!(p.substitute(&[]).unwrap(), p);
    }

    #[test]
    fn substitute_variable_for_variable() {
        let vars = yz_vars();
        let p = weight_a(&vars, Ring::Q, 1, 2); // a(y/z)
        let q = p.substitute(&[(1, MonomialValue::variable(2, 3))]).unwrap(); // y <- z
        assert_eq!(q, weight_a_one(&vars, Ring::Q));
    }

    #[test]
    fn divide_exact_basics() {
        let vars = yz_vars();
        let z1 = Poly::var_pow(&vars, Ring::Q, 1, 2);
        let z2 = Poly::var_pow(&vars, Ring::Q, 2, 2);
        let num = z1.mul(&z1).sub(&z2.mul(&z2));
        let den = z1.sub(&z2);
        assert_eq!(num.divide_exact(&den).unwrap(), z1.add(&z2));
        let p = weight_a(&vars, Ring::Q, 1, 2);
        assert_eq!(p.divide_exact(&p).unwrap(), Poly::one(&vars, Ring::Q));
        assert_eq!(
            num.divide_exact(&Poly::zero(&vars, Ring::Q)),
            Err(LaurentError::DivisionByZero)
        );
        // (z1 + z2) not divisible by (z1 - z2)
        assert_eq!(z1.add(&z2).divide_exact(&den), Err(LaurentError::InexactDivision));
    }

    #[test]
    fn divisible_by_linear_cases() {
        let vars = yz_vars();
        let z1 = Poly::var_pow(&vars, Ring::Q, 1, 2);
        let z2 = Poly::var_pow(&vars, Ring::Q, 2, 2);
        assert!(z1.sub(&z2).divisible_by_linear(1, 2));
        assert!(!Poly::one(&vars, Ring::Q).divisible_by_linear(1, 2));
    }

    #[test]
    fn random_eval_deterministic_and_zero() {
        let vars = yz_vars();
        let p = weight_a(&vars, Ring::Q, 1, 2).mul(&weight_b(&vars, Ring::Q, 2, 1));
        assert_eq!(p.random_eval(42), p.random_eval(42));
        assert!(Poly::zero(&vars, Ring::Q).random_eval(7).is_zero());
    }

    #[test]
    fn cyclotomic_tau_is_one() {
        // tau = t^(1/2) + t^(-1/2) -> u + u^(-1) = u + (1 - u) = 1.
        let vars = VarSet::new(vec!["t".into()]);
        let tau = tau(&vars, Ring::Q);
        assert_eq!(tau.reduce_t_to_u().unwrap(), Coeff::one());
    }

    #[test]
    fn cyclotomic_field_inverse() {
        let c = Coeff { re: Rat::from_integer(2.into()), im: -Rat::one() };
        let inv = c.inv(Ring::QU).unwrap();
        assert_eq!(c.mul(&inv, Ring::QU), Coeff::one());
        assert_eq!(Coeff::zero().inv(Ring::QU), Err(LaurentError::DivisionByZero));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let vars = yz_vars();
        proptest::collection::vec(
            (
                proptest::array::uniform3(-3i32..=3),
                -4i64..=4,
            ),
            0..6,
        )
        .prop_map(move |terms| {
            let mut p = Poly::zero(&vars, Ring::Q);
            for (e, c) in terms {
                p = p.add(&Poly::monomial(&vars, Ring::Q, &e, Coeff::from_i64(c)));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            prop_assert_eq!(p.mul(&q), q.mul(&p));
            prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        }

        #[test]
        fn substitution_is_additive(p in arb_poly(), q in arb_poly()) {
            let sub = [(1usize, MonomialValue::variable(2, 3))];
            prop_assert_eq!(
                p.add(&q).substitute(&sub).unwrap(),
                p.substitute(&sub).unwrap().add(&q.substitute(&sub).unwrap())
            );
        }

        #[test]
        fn divide_after_multiply(p in arb_poly(), q in arb_poly()) {
            if !q.is_zero() {
                prop_assert_eq!(p.mul(&q).divide_exact(&q).unwrap(), p);
            }
        }
    }
}
