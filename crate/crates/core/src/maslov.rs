//! Maslov indices of Reeb orbits and the index-positivity classification.
//!
//! Rotation angles are passed as exact rationals in units of `2π`, so the
//! "angle is a multiple of 2π" branch is an integrality test.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat_string, Nat, Rat};
use crate::error::{Error, Result};
use crate::orbit_types::{valid_multiplier, OrbitType};
use crate::randell::ExponentVector;

/// Maslov index of `t ↦ e^{it}`, `t ∈ [0, Θ]`, with `Θ = 2π·turns`.
pub fn maslov_unitary(turns: &Rat) -> Result<BigInt> {
    if !turns.is_positive() {
        return Err(Error::NonPositiveAngle);
    }
    if turns.is_integer() {
        Ok(turns.to_integer() * 2)
    } else {
        Ok(turns.floor().to_integer() * 2 + 1)
    }
}

/// `μ(S_{NT})` for an orbit of type `t` iterated `multiplier` times:
///
/// `2 Σ_{j∈J} Nm/a_j + 2 Σ_{j∉J} ⌊Nm/a_j⌋ + |I−J| − 2Nm`.
pub fn maslov_orbit_space(a: &ExponentVector, t: &OrbitType, multiplier: u64) -> Result<BigInt> {
    if !valid_multiplier(a, t, multiplier) {
        return Err(Error::IterateLeavesOrbitType {
            m: t.m.to_string(),
            multiplier,
        });
    }
    let nm = (t.m.clone() * Nat::from(multiplier)).to_int();
    let mut mu = BigInt::zero();
    let mut outside = 0i64;
    for j in 0..a.len() {
        let aj = BigInt::from(a.get(j));
        // exact quotient inside J, floor outside
        mu += (&nm / &aj) * 2;
        if !t.support.contains(j) {
            outside += 1;
        }
    }
    Ok(mu + outside - nm * 2)
}

/// Ambient index minus complement index, summed over the diagonal
/// rotations `e^{4it/a_j}` and `e^{4it}`. Does not require `multiplier` to be
/// valid for `t`.
pub fn maslov_crosscheck(a: &ExponentVector, t: &OrbitType, multiplier: u64) -> Result<BigInt> {
    let nm = (t.m.clone() * Nat::from(multiplier)).to_int();
    let mut ambient = BigInt::zero();
    for j in 0..a.len() {
        ambient += maslov_unitary(&Rat::new(nm.clone(), BigInt::from(a.get(j))))?;
    }
    let complement = maslov_unitary(&Rat::from_integer(nm))?;
    Ok(ambient - complement)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Character {
    Positive,
    Negative,
    Degenerate,
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Character::Positive => "Positive",
            Character::Negative => "Negative",
            Character::Degenerate => "Degenerate",
        })
    }
}

/// Sign of `Σ 1/a_j − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexCharacter {
    pub kind: Character,
    #[serde(with = "rat_string")]
    pub sum_reciprocals: Rat,
}

impl IndexCharacter {
    pub fn is_positive(&self) -> bool {
        self.kind == Character::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.kind == Character::Negative
    }

    pub fn is_degenerate(&self) -> bool {
        self.kind == Character::Degenerate
    }
}

pub fn classify_index(a: &ExponentVector) -> IndexCharacter {
    let sum_reciprocals = a.sum_reciprocals();
    let kind = match sum_reciprocals.cmp(&Rat::one()) {
        std::cmp::Ordering::Greater => Character::Positive,
        std::cmp::Ordering::Less => Character::Negative,
        std::cmp::Ordering::Equal => Character::Degenerate,
    };
    IndexCharacter {
        kind,
        sum_reciprocals,
    }
}
