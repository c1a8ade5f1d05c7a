//! Orbit types of the Reeb flow.
//!
//! A point with nonzero coordinates exactly at `J` returns to itself at time
//! `T = (π/2)·m` whenever every `a_j`, `j ∈ J`, divides `m`. Times are kept as
//! the integer `m`; the factor `π/2` never enters a computation.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{IndexSubset, Nat};
use crate::randell::ExponentVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitType {
    /// Return time in units of `π/2`.
    pub m: Nat,
    /// `J = { j : a_j | m }`.
    pub support: IndexSubset,
    pub orbit_space_dim: usize,
}

impl OrbitType {
    fn new(a: &ExponentVector, m: Nat) -> Self {
        let support = divisor_set(a, &m);
        debug_assert_eq!(
            crate::arith::lcm_set(&support.iter().map(|j| a.nat(j)).collect::<Vec<_>>()),
            m
        );
        OrbitType {
            m,
            orbit_space_dim: 2 * support.len() - 4,
            support,
        }
    }

    pub fn is_principal(&self, a: &ExponentVector) -> bool {
        self.support == a.full_support()
    }
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} J={}", self.m, self.support)
    }
}

/// `{ j : a_j divides value }`.
pub fn divisor_set(a: &ExponentVector, value: &Nat) -> IndexSubset {
    let mut out = IndexSubset::EMPTY;
    for j in 0..a.len() {
        if a.nat(j).divides(value) {
            out.insert(j);
        }
    }
    out
}

/// All orbit types, ascending by return time.
pub fn enumerate_orbit_types(a: &ExponentVector) -> Vec<OrbitType> {
    let len = a.len();
    let size = 1usize << len;
    let mut lcm = vec![BigUint::one(); size];
    let mut times = BTreeSet::new();
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        lcm[mask] = lcm[rest].lcm(&BigUint::from(a.get(low)));
        if mask.count_ones() >= 2 {
            times.insert(Nat(lcm[mask].clone()));
        }
    }
    times.into_iter().map(|m| OrbitType::new(a, m)).collect()
}

/// Whether the `multiplier`-fold iterate of an orbit of type `t` is still of
/// type `t`, i.e. no exponent outside `J` divides `N·m`.
pub fn valid_multiplier(a: &ExponentVector, t: &OrbitType, multiplier: u64) -> bool {
    if multiplier == 0 {
        return false;
    }
    let nm = t.m.clone() * Nat::from(multiplier);
    divisor_set(a, &nm) == t.support
}
