//! Exact arithmetic for the completely-packed-loop model, level-1 qKZ
//! solutions, and rectangular conormal-variety K-theory pushforwards.
//!
//! Everything here works over exact rationals (or the cyclotomic ring
//! `Q[u]/(u^2-u+1)` used for the loop-weight-one specialization); no
//! floating point anywhere. The crate is `no_std` + `alloc`: all IO,
//! serialization and the CLI live in the companion `loopk` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod combinatorics;
pub mod cpl;
pub mod degeneration;
pub mod fastpoly;
pub mod fpl;
pub mod geometry;
pub mod laurent;
pub mod linalg;
pub mod modp;
pub mod qkz;

pub use laurent::{Coeff, LaurentError, Poly, Rat, Ring, VarSet, Vars};

/// Integer type used for doubled exponents.
pub type Exp2 = i32;
