//! Exact integer and rational arithmetic, plus subsets of the index set
//! `{0, …, n}`.
//!
//! [`Nat`] and [`Int`] are thin wrappers over `num-bigint` values whose serde
//! form is a JSON number when the value fits in 64 bits and a decimal string
//! otherwise, so reports stay readable for ordinary inputs without losing
//! exactness on large ones.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Unbounded nonnegative integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nat(pub BigUint);

/// Unbounded signed integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl Nat {
    pub fn zero() -> Self {
        Nat(BigUint::zero())
    }

    pub fn one() -> Self {
        Nat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_int(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    pub fn divides(&self, other: &Nat) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        (&other.0 % &self.0).is_zero()
    }

    pub fn gcd(&self, other: &Nat) -> Nat {
        Nat(self.0.gcd(&other.0))
    }

    pub fn lcm(&self, other: &Nat) -> Nat {
        Nat(self.0.lcm(&other.0))
    }
}

impl Int {
    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat(v)
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int(BigInt::from(v))
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int(v)
    }
}

impl Add for Nat {
    type Output = Nat;
    fn add(self, rhs: Nat) -> Nat {
        Nat(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Nat> for Nat {
    type Output = Nat;
    fn add(self, rhs: &'a Nat) -> Nat {
        Nat(self.0 + &rhs.0)
    }
}

impl AddAssign<&Nat> for Nat {
    fn add_assign(&mut self, rhs: &Nat) {
        self.0 += &rhs.0;
    }
}

impl Mul for Nat {
    type Output = Nat;
    fn mul(self, rhs: Nat) -> Nat {
        Nat(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Nat> for Nat {
    type Output = Nat;
    fn mul(self, rhs: &'a Nat) -> Nat {
        Nat(self.0 * &rhs.0)
    }
}

impl Sum for Nat {
    fn sum<I: Iterator<Item = Nat>>(iter: I) -> Nat {
        iter.fold(Nat::zero(), |acc, x| acc + x)
    }
}

impl Product for Nat {
    fn product<I: Iterator<Item = Nat>>(iter: I) -> Nat {
        iter.fold(Nat::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialEq<u64> for Nat {
    fn eq(&self, other: &u64) -> bool {
        self.to_u64() == Some(*other)
    }
}

impl PartialOrd<u64> for Nat {
    fn partial_cmp(&self, other: &u64) -> Option<std::cmp::Ordering> {
        Some(self.0.cmp(&BigUint::from(*other)))
    }
}

impl PartialEq<i64> for Int {
    fn eq(&self, other: &i64) -> bool {
        self.to_i64() == Some(*other)
    }
}

impl Serialize for Nat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct DecimalVisitor<T>(std::marker::PhantomData<T>);

impl<'de, T> Visitor<'de> for DecimalVisitor<T>
where
    T: FromStr + TryFrom<i128>,
{
    type Value = T;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<T, E> {
        T::try_from(v as i128).map_err(|_| E::custom("integer out of range"))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<T, E> {
        T::try_from(v as i128).map_err(|_| E::custom("integer out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<T, E> {
        v.parse()
            .map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

impl TryFrom<i128> for Nat {
    type Error = ();
    fn try_from(v: i128) -> std::result::Result<Self, ()> {
        BigUint::try_from(v).map(Nat).map_err(|_| ())
    }
}

impl TryFrom<i128> for Int {
    type Error = ();
    fn try_from(v: i128) -> std::result::Result<Self, ()> {
        Ok(Int(BigInt::from(v)))
    }
}

impl FromStr for Nat {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse().map(Nat)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse().map(Int)
    }
}

impl<'de> Deserialize<'de> for Nat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(DecimalVisitor(std::marker::PhantomData))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(DecimalVisitor(std::marker::PhantomData))
    }
}

/// Serde adapter writing a rational as `"p/q"` (or `"p"` when integral).
pub mod rat_string {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn gcd_set(values: &[Nat]) -> Result<Nat> {
    let (first, rest) = values.split_first().ok_or(Error::EmptyGcd)?;
    Ok(rest.iter().fold(first.clone(), |g, x| g.gcd(x)))
}

/// Least common multiple; the empty list has lcm 1.
pub fn lcm_set(values: &[Nat]) -> Nat {
    values.iter().fold(Nat::one(), |l, x| l.lcm(x))
}

/// Maximum ground-set size; subsets are stored as 64-bit masks and every
/// algorithm here walks all `2^(n+1)` of them.
pub const MAX_INDICES: usize = 24;

/// A subset of `{0, …, n}` kept as a bitmask. Iteration yields members in
/// ascending order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct IndexSubset(u64);

impl IndexSubset {
    pub const EMPTY: IndexSubset = IndexSubset(0);

    pub fn from_mask(mask: u64) -> Self {
        IndexSubset(mask)
    }

    /// `{0, …, len-1}`.
    pub fn full(len: usize) -> Self {
        debug_assert!(len < 64);
        IndexSubset((1u64 << len) - 1)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        IndexSubset(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn is_subset_of(self, other: IndexSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: IndexSubset) -> bool {
        self.is_subset_of(other) && self != other
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn difference(self, other: IndexSubset) -> IndexSubset {
        IndexSubset(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Largest member plus one; 0 for the empty set.
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Ord for IndexSubset {
    /// Ascending by size, then lexicographic on the sorted member list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for IndexSubset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for IndexSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IndexSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&i| i >= 64) {
            return Err(de::Error::custom(format!("index {bad} too large")));
        }
        Ok(IndexSubset::from_indices(v))
    }
}

/// Every subset of `ground` with at least `min_size` members, ascending by
/// size and lexicographic within a size.
pub fn subsets(ground: IndexSubset, min_size: usize) -> Subsets {
    let members = ground.to_vec();
    let size = min_size;
    let combo = (size <= members.len()).then(|| (0..size).collect());
    Subsets {
        members,
        size,
        combo,
    }
}

pub struct Subsets {
    members: Vec<usize>,
    size: usize,
    combo: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = IndexSubset;

    fn next(&mut self) -> Option<IndexSubset> {
        let combo = self.combo.as_mut()?;
        let out = IndexSubset::from_indices(combo.iter().map(|&p| self.members[p]));

        let total = self.members.len();
        let k = self.size;
        // advance to the next k-combination of positions, or grow k
        let mut pos = k;
        while pos > 0 && combo[pos - 1] == pos - 1 + total - k {
            pos -= 1;
        }
        if pos == 0 {
            if k == total {
                self.combo = None;
            } else {
                self.size += 1;
                *combo = (0..self.size).collect();
            }
        } else {
            combo[pos - 1] += 1;
            for q in pos..k {
                combo[q] = combo[q - 1] + 1;
            }
        }
        Some(out)
    }
}

/// Iterate over all submasks of `mask`, including 0 and `mask` itself.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}
