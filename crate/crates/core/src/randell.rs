//! Homology of Brieskorn manifolds `Σ(a_0, …, a_n)` (Randell's algorithm)
//! and rational homology of the circle-quotient orbit spaces.
//!
//! Subsets of the index set are bitmasks. Both the alternating sum `κ` and
//! the recursive gcd quotients `C(I_s)` are computed for every subset at once
//! with a subset Möbius transform, which turns the defining recursion
//! `∏_{T ⊆ S} C(T) = gcd_{i ∉ S} a_i` into `n+1` passes over the table.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{submasks, IndexSubset, Nat, Rat, MAX_INDICES};
use crate::error::{Error, Result};

/// The exponents `(a_0, …, a_n)` of a Brieskorn manifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub const MIN_LEN: usize = 4;

    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.len() < Self::MIN_LEN {
            return Err(Error::InvalidExponents(format!(
                "need at least {} exponents, got {}",
                Self::MIN_LEN,
                a.len()
            )));
        }
        if a.len() > MAX_INDICES {
            return Err(Error::InvalidExponents(format!(
                "at most {MAX_INDICES} exponents supported, got {}",
                a.len()
            )));
        }
        if let Some(bad) = a.iter().find(|&&x| x < 2) {
            return Err(Error::InvalidExponents(format!(
                "every exponent must be at least 2, got {bad}"
            )));
        }
        Ok(ExponentVector(a))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Number of exponents, `n + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `n`, where the manifold has dimension `2n - 1`.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn nat(&self, i: usize) -> Nat {
        Nat::from(self.0[i])
    }

    pub fn full_support(&self) -> IndexSubset {
        IndexSubset::full(self.len())
    }

    pub fn lcm(&self) -> Nat {
        Nat(self
            .0
            .iter()
            .fold(BigUint::one(), |l, &x| l.lcm(&BigUint::from(x))))
    }

    /// `Σ_j 1/a_j`, exactly.
    pub fn sum_reciprocals(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |s, &x| {
            s + Rat::new(BigInt::one(), BigInt::from(x))
        })
    }

    pub(crate) fn check_support(&self, support: IndexSubset) -> Result<()> {
        let bound = support.bound();
        if bound > self.len() {
            return Err(Error::IndexOutOfRange {
                index: bound - 1,
                len: self.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<u64>> for ExponentVector {
    type Error = Error;
    fn try_from(a: Vec<u64>) -> Result<Self> {
        ExponentVector::new(a)
    }
}

impl From<ExponentVector> for Vec<u64> {
    fn from(a: ExponentVector) -> Vec<u64> {
        a.0
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "Σ({})", items.join(","))
    }
}

/// `κ(K(support)) = Σ_{T ⊆ support} (-1)^{|support|-|T|} ∏_{i∈T} a_i / lcm_{i∈T} a_i`,
/// with the empty subset contributing `(-1)^{|support|}`.
pub fn kappa(a: &ExponentVector, support: IndexSubset) -> Result<Nat> {
    a.check_support(support)?;
    if support.len() < 2 {
        return Err(Error::SupportTooSmall(support.len()));
    }
    let s = support.len();
    let mut total = BigInt::zero();
    for t in submasks(support.mask()) {
        let sub = IndexSubset::from_mask(t);
        let term = BigInt::from(product_over_lcm(a, sub));
        if (s - sub.len()).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    nonnegative(total, support)
}

fn product_over_lcm(a: &ExponentVector, t: IndexSubset) -> BigUint {
    let mut prod = BigUint::one();
    let mut lcm = BigUint::one();
    for i in t.iter() {
        let x = BigUint::from(a.get(i));
        lcm = lcm.lcm(&x);
        prod *= x;
    }
    prod / lcm
}

fn nonnegative(v: BigInt, support: IndexSubset) -> Result<Nat> {
    if v.is_negative() {
        return Err(Error::Internal(format!(
            "kappa over {support} is negative ({v})"
        )));
    }
    Ok(Nat(v.magnitude().clone()))
}

/// `κ(K(S))` for every subset `S` of the index set, indexed by mask. Entries
/// for `|S| < 2` follow the same formula (`κ(∅) = 1`, `κ({i}) = 0`).
pub(crate) fn kappa_table(a: &ExponentVector) -> Vec<BigInt> {
    let len = a.len();
    let size = 1usize << len;
    let mut prod = vec![BigUint::one(); size];
    let mut lcm = vec![BigUint::one(); size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let x = BigUint::from(a.get(low));
        prod[mask] = &prod[rest] * &x;
        lcm[mask] = lcm[rest].lcm(&x);
    }
    let mut f: Vec<BigInt> = prod
        .into_iter()
        .zip(lcm)
        .map(|(p, l)| BigInt::from(p / l))
        .collect();
    for bit in 0..len {
        let b = 1usize << bit;
        for mask in 0..size {
            if mask & b != 0 {
                let lower = f[mask ^ b].clone();
                f[mask] -= lower;
            }
        }
    }
    f
}

/// Torsion of the middle homology `H_{n-1}` as cyclic orders
/// `d_1, d_2, …` with trivial factors dropped.
pub fn torsion(a: &ExponentVector) -> Result<Vec<Nat>> {
    let len = a.len();
    let size = 1usize << len;
    let full = size - 1;
    let kappas = kappa_table(a);

    // g(S) = gcd of the exponents outside S; g(I) is never consumed
    let mut c: Vec<Rat> = (0..size)
        .map(|mask| {
            let g = (0..len)
                .filter(|i| mask & (1 << i) == 0)
                .fold(BigUint::zero(), |g, i| g.gcd(&BigUint::from(a.get(i))));
            if mask == full {
                Rat::one()
            } else {
                Rat::from_integer(BigInt::from(g))
            }
        })
        .collect();
    // multiplicative Möbius inversion of ∏_{T ⊆ S} C(T) = g(S)
    for bit in 0..len {
        let b = 1usize << bit;
        for mask in 0..size {
            if mask & b != 0 {
                let lower = c[mask ^ b].clone();
                c[mask] /= lower;
            }
        }
    }

    // (k(K(S)), C(S)) for every S with k ≥ 1 and C(S) ≠ 1
    let mut factors: Vec<(BigUint, BigUint)> = Vec::new();
    for mask in 0..full {
        let s = mask.count_ones() as usize;
        if (len - s).is_multiple_of(2) {
            continue;
        }
        let k = &kappas[mask];
        if !k.is_positive() {
            continue;
        }
        let cs = &c[mask];
        if !cs.is_integer() {
            return Err(Error::Internal(format!(
                "C({}) = {cs} is not an integer",
                IndexSubset::from_mask(mask as u64)
            )));
        }
        let cs = cs.to_integer();
        if cs.is_one() {
            continue;
        }
        if !cs.is_positive() {
            return Err(Error::Internal(format!("C = {cs} is not positive")));
        }
        factors.push((k.magnitude().clone(), cs.magnitude().clone()));
    }

    // d_j = ∏_{k(S) ≥ j} C(S) is constant for j in (k_{i-1}, k_i] between
    // consecutive distinct k values; every C here exceeds 1, so no d_j is 1
    factors.sort_by(|x, y| x.0.cmp(&y.0));
    let mut suffix = vec![BigUint::one(); factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix[i] = &suffix[i + 1] * &factors[i].1;
    }
    let mut out = Vec::new();
    let mut j = BigUint::one();
    for (i, (k, _)) in factors.iter().enumerate() {
        while &j <= k {
            out.push(Nat(suffix[i].clone()));
            j += 1u32;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: Nat,
    pub torsion: Vec<Nat>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.rank.is_zero() {
            if self.rank.is_one() {
                parts.push("Z".to_string());
            } else {
                parts.push(format!("Z^{}", self.rank));
            }
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub dimension: usize,
    /// Rank of `H_{n-1}`.
    pub middle_rank: Nat,
    /// Torsion of `H_{n-1}`, each factor dividing the previous one.
    pub torsion: Vec<Nat>,
    /// Nonzero integral homology groups. Degrees other than `n-1` come from
    /// `(n-2)`-connectedness and Poincaré duality.
    pub full_graded: BTreeMap<usize, HomologyGroup>,
    pub homotopy_sphere: bool,
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn full_homology(a: &ExponentVector) -> Result<HomologyReport> {
    let n = a.n();
    let dimension = 2 * n - 1;
    let middle_rank = kappa(a, a.full_support())?;
    let torsion = torsion(a)?;

    let mut full_graded = BTreeMap::new();
    let z = HomologyGroup {
        rank: Nat::one(),
        torsion: vec![],
    };
    full_graded.insert(0, z.clone());
    let middle = HomologyGroup {
        rank: middle_rank.clone(),
        torsion: torsion.clone(),
    };
    if !middle.rank.is_zero() || !middle.torsion.is_empty() {
        full_graded.insert(n - 1, middle);
    }
    if !middle_rank.is_zero() {
        full_graded.insert(
            n,
            HomologyGroup {
                rank: middle_rank.clone(),
                torsion: vec![],
            },
        );
    }
    full_graded.insert(dimension, z);

    let homotopy_sphere = middle_rank.is_zero() && torsion.is_empty();
    let (description, note) = if homotopy_sphere {
        ("homotopy sphere".to_string(), None)
    } else if dimension == 5 && torsion.is_empty() {
        (
            format!("#_{middle_rank} (S²×S³)"),
            Some("assuming w₂=0".to_string()),
        )
    } else {
        ("Brieskorn manifold (unclassified)".to_string(), None)
    };

    Ok(HomologyReport {
        dimension,
        middle_rank,
        torsion,
        full_graded,
        homotopy_sphere,
        description,
        note,
    })
}

/// Rational homology of the orbit space `K(support)/S¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSpaceHomology {
    pub dimension: usize,
    /// `ranks[q] = dim H_q`, for `q = 0..=dimension`.
    pub ranks: Vec<Nat>,
}

impl OrbitSpaceHomology {
    pub fn rank(&self, q: usize) -> &Nat {
        &self.ranks[q]
    }
}

pub fn orbit_space_rational_homology(
    a: &ExponentVector,
    support: IndexSubset,
) -> Result<OrbitSpaceHomology> {
    let k = kappa(a, support)?;
    let dimension = 2 * support.len() - 4;
    let ranks = (0..=dimension)
        .map(|q| {
            let base = if q % 2 == 0 { Nat::one() } else { Nat::zero() };
            if q == dimension / 2 {
                base + &k
            } else {
                base
            }
        })
        .collect();
    Ok(OrbitSpaceHomology { dimension, ranks })
}
