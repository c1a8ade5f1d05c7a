//! Graded generator counts of cylindrical contact homology.
//!
//! Each orbit type `t` and valid iterate `N` contributes `rk H_j(S_t; Q)`
//! generators in degree `μ(S_{Nt}) + n − 3 + j − dim S_t / 2`. The loop over
//! `N` is cut off with the linear bound
//! `2Nm(Σ1/a_j − 1) − |J| − 2 ≤ degree ≤ 2Nm(Σ1/a_j − 1) + 2n + |J| − 4`,
//! which follows from `x − 1 < ⌊x⌋ ≤ x`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{Int, Nat, Rat};
use crate::error::{Error, Result};
use crate::maslov::{classify_index, maslov_orbit_space, IndexCharacter};
use crate::orbit_types::{enumerate_orbit_types, valid_multiplier, OrbitType};
use crate::randell::{orbit_space_rational_homology, ExponentVector, OrbitSpaceHomology};

/// Inclusive degree interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = String;

    /// `LO:HI`, both ends inclusive, negative values allowed.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("window must look like LO:HI, got {s:?}"))?;
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|e| format!("bad LO in {s:?}: {e}"))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|e| format!("bad HI in {s:?}: {e}"))?;
        Window::new(lo, hi).map_err(|e| e.to_string())
    }
}

/// Sparse degree → rank map restricted to a window. No zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRanks {
    pub window: Window,
    pub ranks: BTreeMap<i64, Nat>,
}

impl GradedRanks {
    pub fn new(window: Window) -> Self {
        GradedRanks {
            window,
            ranks: BTreeMap::new(),
        }
    }

    pub fn rank(&self, degree: i64) -> Nat {
        self.ranks.get(&degree).cloned().unwrap_or_default()
    }

    fn add(&mut self, degree: i64, rank: &Nat) {
        if rank.is_zero() {
            return;
        }
        debug_assert!(self.window.contains(degree));
        *self.ranks.entry(degree).or_default() += rank;
    }

    /// Copy restricted to a sub-window.
    pub fn restrict(&self, window: Window) -> GradedRanks {
        GradedRanks {
            window,
            ranks: self
                .ranks
                .range(window.lo..=window.hi)
                .map(|(d, r)| (*d, r.clone()))
                .collect(),
        }
    }
}

/// One `(orbit type, N, j)` term of the count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub m: Nat,
    pub multiplier: u64,
    pub j: usize,
    pub degree: i64,
    pub rank: Nat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodMultiplier {
    pub m: Nat,
    /// `s = L / m`, with `L` the lcm of all exponents.
    pub s: Nat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CHReport {
    pub input: ExponentVector,
    pub character: IndexCharacter,
    pub ranks: GradedRanks,
    /// `Δ = 2L(Σ1/a_j − 1)`: the degree shift after `s` more iterates.
    pub period_shift: Int,
    pub period_multipliers: Vec<PeriodMultiplier>,
    /// No generator in degree −1, 0 or 1, over all degrees.
    pub well_defined: bool,
    /// Lowest generator degree (index-positive) or highest (index-negative),
    /// over all degrees.
    pub extremal_degree: Int,
    #[serde(default)]
    pub contributions: Vec<Contribution>,
}

pub fn generator_degree(
    a: &ExponentVector,
    t: &OrbitType,
    multiplier: u64,
    j: usize,
) -> Result<BigInt> {
    if j > t.orbit_space_dim {
        return Err(Error::HomologyIndexOutOfRange {
            j,
            dim: t.orbit_space_dim,
        });
    }
    let mu = maslov_orbit_space(a, t, multiplier)?;
    Ok(degree_from_mu(a, t, mu, j))
}

fn degree_from_mu(a: &ExponentVector, t: &OrbitType, mu: BigInt, j: usize) -> BigInt {
    mu + a.n() as i64 - 3 + j as i64 - (t.support.len() as i64 - 2)
}

/// Orbit types paired with their orbit-space homology and growth slope.
struct TypeData {
    t: OrbitType,
    homology: OrbitSpaceHomology,
    /// `2m(Σ1/a_j − 1)`.
    slope: Rat,
}

struct Pipeline<'a> {
    a: &'a ExponentVector,
    character: IndexCharacter,
    types: Vec<TypeData>,
}

impl<'a> Pipeline<'a> {
    fn new(a: &'a ExponentVector) -> Result<Self> {
        let character = classify_index(a);
        if character.is_degenerate() {
            return Err(Error::Degenerate);
        }
        let excess = &character.sum_reciprocals - Rat::one();
        let types = enumerate_orbit_types(a)
            .into_iter()
            .map(|t| {
                let homology = orbit_space_rational_homology(a, t.support)?;
                let slope = Rat::from_integer(t.m.to_int() * 2) * &excess;
                Ok(TypeData { t, homology, slope })
            })
            .collect::<Result<_>>()?;
        Ok(Pipeline {
            a,
            character,
            types,
        })
    }

    /// Largest `N` whose contributions can reach the window.
    fn last_multiplier(&self, td: &TypeData, window: Window) -> Option<u64> {
        let jlen = td.t.support.len() as i64;
        let bound = if self.character.is_positive() {
            // slope·N − |J| − 2 ≤ hi
            Rat::from_integer(BigInt::from(window.hi) + jlen + 2) / &td.slope
        } else {
            // slope·N + 2n + |J| − 4 ≥ lo, slope < 0
            let n = self.a.n() as i64;
            Rat::from_integer(BigInt::from(window.lo) - 2 * n - jlen + 4) / &td.slope
        };
        let last = bound.floor().to_integer();
        if last < BigInt::one() {
            None
        } else {
            Some(last.to_u64().unwrap_or(u64::MAX))
        }
    }

    /// Contributions of one type at one iterate, in ascending `j`.
    fn at<'t>(&self, td: &'t TypeData, multiplier: u64) -> Result<Vec<(usize, BigInt, &'t Nat)>> {
        let mu = maslov_orbit_space(self.a, &td.t, multiplier)?;
        Ok(td
            .homology
            .ranks
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(j, r)| (j, degree_from_mu(self.a, &td.t, mu.clone(), j), r))
            .collect())
    }

    fn contributions(&self, window: Window) -> Result<Vec<Contribution>> {
        let mut out = Vec::new();
        for td in &self.types {
            let Some(last) = self.last_multiplier(td, window) else {
                continue;
            };
            for multiplier in 1..=last {
                if !valid_multiplier(self.a, &td.t, multiplier) {
                    continue;
                }
                for (j, degree, rank) in self.at(td, multiplier)? {
                    if let Some(d) = degree.to_i64().filter(|&d| window.contains(d)) {
                        out.push(Contribution {
                            m: td.t.m.clone(),
                            multiplier,
                            j,
                            degree: d,
                            rank: rank.clone(),
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Minimum (positive) or maximum (negative) generator degree.
    fn extremal_degree(&self) -> Result<BigInt> {
        let positive = self.character.is_positive();
        let n = self.a.n() as i64;
        let mut best: Option<BigInt> = None;
        for td in &self.types {
            let jlen = td.t.support.len() as i64;
            let mut multiplier = 1u64;
            loop {
                // every type is valid at N = 1, so best is set after one pass
                if let Some(b) = &best {
                    let linear = &td.slope * Rat::from_integer(multiplier.into());
                    let beyond = if positive {
                        linear - Rat::from_integer((jlen + 2).into()) > Rat::from_integer(b.clone())
                    } else {
                        linear + Rat::from_integer((2 * n + jlen - 4).into())
                            < Rat::from_integer(b.clone())
                    };
                    if beyond {
                        break;
                    }
                }
                if valid_multiplier(self.a, &td.t, multiplier) {
                    for (_, degree, _) in self.at(td, multiplier)? {
                        let better = match &best {
                            None => true,
                            Some(b) => (positive && degree < *b) || (!positive && degree > *b),
                        };
                        if better {
                            best = Some(degree);
                        }
                    }
                }
                multiplier += 1;
            }
        }
        best.ok_or_else(|| Error::Internal("no orbit types".into()))
    }
}

fn collect_ranks(window: Window, contributions: &[Contribution]) -> GradedRanks {
    let mut ranks = GradedRanks::new(window);
    for c in contributions {
        ranks.add(c.degree, &c.rank);
    }
    ranks
}

pub fn ch_ranks(a: &ExponentVector, window: Window) -> Result<GradedRanks> {
    let pipeline = Pipeline::new(a)?;
    let contributions = pipeline.contributions(window)?;
    Ok(collect_ranks(window, &contributions))
}

/// `2L(Σ1/a_j − 1)`, always an integer.
pub fn period_shift(a: &ExponentVector) -> BigInt {
    let excess = a.sum_reciprocals() - Rat::one();
    let shift = Rat::from_integer(a.lcm().to_int() * 2) * excess;
    debug_assert!(shift.is_integer());
    shift.to_integer()
}

pub fn ch_report(a: &ExponentVector, window: Window) -> Result<CHReport> {
    let pipeline = Pipeline::new(a)?;
    let contributions = pipeline.contributions(window)?;
    let ranks = collect_ranks(window, &contributions);

    let l = a.lcm();
    let period_multipliers = pipeline
        .types
        .iter()
        .map(|td| PeriodMultiplier {
            m: td.t.m.clone(),
            s: Nat(&l.0 / &td.t.m.0),
        })
        .collect();

    // odd degrees come only from the middle class of an orbit space with
    // |J| odd, so ±1 are checked along with 0
    let gate = Window { lo: -1, hi: 1 };
    let well_defined = pipeline.contributions(gate)?.is_empty();

    Ok(CHReport {
        input: a.clone(),
        character: pipeline.character.clone(),
        ranks,
        period_shift: Int(period_shift(a)),
        period_multipliers,
        well_defined,
        extremal_degree: Int(pipeline.extremal_degree()?),
        contributions,
    })
}

/// End of the transient region: the largest (index-positive) or smallest
/// (index-negative) degree contributed by an iterate `N ≤ s = L/m`. Past it,
/// ranks repeat with period `Δ`.
pub fn transient_degree(a: &ExponentVector) -> Result<BigInt> {
    let pipeline = Pipeline::new(a)?;
    let positive = pipeline.character.is_positive();
    let l = a.lcm();
    let mut best: Option<BigInt> = None;
    for td in &pipeline.types {
        let s = (&l.0 / &td.t.m.0)
            .to_u64()
            .ok_or_else(|| Error::Internal("period multiplier too large".into()))?;
        for multiplier in (1..=s).filter(|&k| valid_multiplier(a, &td.t, k)) {
            for (_, degree, _) in pipeline.at(td, multiplier)? {
                let better = match &best {
                    None => true,
                    Some(b) => (positive && degree > *b) || (!positive && degree < *b),
                };
                if better {
                    best = Some(degree);
                }
            }
        }
    }
    best.ok_or_else(|| Error::Internal("no orbit types".into()))
}

/// `min a_i ≥ 5n/2`: large exponents guarantee a well-defined, index-negative
/// answer. `ch_report` stays authoritative.
pub fn sufficient_negativity_check(a: &ExponentVector) -> bool {
    let min = a.as_slice().iter().copied().min().unwrap_or(0) as u128;
    2 * min >= 5 * a.n() as u128
}

impl CHReport {
    pub fn n(&self) -> usize {
        self.input.n()
    }

    /// Fails exactly when some orbit space over an odd-size support has
    /// `κ ≠ 0` contributing inside the window, e.g. `Σ(3,9,2,3)`.
    pub fn degrees_are_even(&self) -> bool {
        self.ranks.ranks.keys().all(|d| d % 2 == 0)
    }
}
