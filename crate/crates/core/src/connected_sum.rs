//! Generator counts under contact connected sum, and the special contact
//! spheres `Σ(p_1, …, p_{n-1}, 2, 2)` used to produce infinitely many contact
//! structures on a fixed manifold.
//!
//! Summing two index-positive manifolds of dimension `2n − 1` adds the
//! counts degree-wise plus one generator in every odd degree `≥ 2n − 3`
//! coming from the connecting tube. That rule only holds up to a chosen
//! degree, so every [`GeneratorCounts`] carries its cutoff.
//!
//! Whether an `r`-fold sum of special spheres is the standard sphere is not
//! decided here; `r` stays a free parameter.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::Nat;
use crate::contact_homology::{ch_report, CHReport, Window};
use crate::error::{Error, Result};
use crate::randell::{full_homology, ExponentVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCounts {
    /// Degree → number of generators, for degrees `≤ cutoff`. No zero entries.
    pub counts: BTreeMap<i64, Nat>,
    pub cutoff: i64,
    /// `n`, with the manifold of dimension `2n − 1`.
    pub half_dim_n: u64,
}

impl GeneratorCounts {
    pub fn empty(half_dim_n: u64, cutoff: i64) -> Self {
        GeneratorCounts {
            counts: BTreeMap::new(),
            cutoff,
            half_dim_n,
        }
    }

    /// Counts from a contact homology report, valid up to the top of its
    /// window. Degrees below the window are taken to carry nothing.
    pub fn from_report(report: &CHReport) -> Self {
        GeneratorCounts {
            counts: report.ranks.ranks.clone(),
            cutoff: report.ranks.window.hi,
            half_dim_n: report.n() as u64,
        }
    }

    pub fn count(&self, degree: i64) -> Nat {
        self.counts.get(&degree).cloned().unwrap_or_default()
    }

    /// Same counts, truncated to a lower cutoff.
    pub fn truncate(&self, cutoff: i64) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        GeneratorCounts {
            counts: self
                .counts
                .range(..=cutoff)
                .map(|(d, c)| (*d, c.clone()))
                .collect(),
            cutoff,
            half_dim_n: self.half_dim_n,
        }
    }
}

/// Number of connecting-tube generators in degree `j`: one in each odd
/// degree from `2n − 3` upward.
pub fn beta(n: u64, j: i64) -> u64 {
    let start = 2 * n as i64 - 3;
    u64::from(j >= start && (j - start) % 2 == 0)
}

pub fn combine(c1: &GeneratorCounts, c2: &GeneratorCounts) -> Result<GeneratorCounts> {
    if c1.half_dim_n != c2.half_dim_n {
        return Err(Error::DimensionMismatch {
            left: c1.half_dim_n,
            right: c2.half_dim_n,
        });
    }
    let n = c1.half_dim_n;
    let mut out = c1.truncate(c2.cutoff);
    for (d, c) in c2.counts.range(..=out.cutoff) {
        *out.counts.entry(*d).or_default() += c;
    }
    let mut j = 2 * n as i64 - 3;
    while j <= out.cutoff {
        *out.counts.entry(j).or_default() += &Nat::from(beta(n, j));
        j += 2;
    }
    Ok(out)
}

/// `sphere # sphere # … # sphere`, `copies` times.
pub fn iterated_sphere_sum(sphere: &GeneratorCounts, copies: u64) -> Result<GeneratorCounts> {
    if copies == 0 {
        return Err(Error::InvalidCopies);
    }
    let mut acc = sphere.clone();
    for _ in 1..copies {
        acc = combine(&acc, sphere)?;
    }
    Ok(acc)
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `(p_1, …, p_{n-1}, 2, 2)`.
pub fn special_sphere_exponents(primes: &[u64]) -> Result<ExponentVector> {
    if let Some(bad) = primes.iter().find(|&&p| !is_odd_prime(p)) {
        return Err(Error::InvalidPrimes(format!("{bad} is not an odd prime")));
    }
    if primes.len() < 2 {
        return Err(Error::InvalidPrimes(format!(
            "need at least 2 primes, got {}",
            primes.len()
        )));
    }
    let mut a = primes.to_vec();
    a.extend([2, 2]);
    ExponentVector::new(a)
}

/// Report on the degrees `2n − 4 ..= 2n − 3` the sphere check inspects.
pub fn special_sphere_report(primes: &[u64]) -> Result<CHReport> {
    let a = special_sphere_exponents(primes)?;
    let low = 2 * a.n() as i64 - 4;
    ch_report(&a, Window::new(low, low + 1)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialSphereVerdict {
    pub primes: Vec<u64>,
    pub n: u64,
    pub passed: bool,
    /// Lower bound: a perturbation may add generators at `2n − 4`, never
    /// remove the two from the lowest orbit space.
    pub generators_2n_minus_4: Nat,
    pub generators_2n_minus_3: Nat,
    pub clauses: Vec<Clause>,
}

impl SpecialSphereVerdict {
    pub fn failing(&self) -> Vec<&str> {
        self.clauses
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// Check that `Σ(primes, 2, 2)` is a homotopy sphere whose contact homology
/// starts with at least two generators in degree `2n − 4` and none in
/// `2n − 3`, with nothing lower.
pub fn special_sphere_check(primes: &[u64], report: &CHReport) -> Result<SpecialSphereVerdict> {
    let a = special_sphere_exponents(primes)?;
    if report.input != a {
        return Err(Error::InvalidPrimes(format!(
            "report is for {} but primes give {}",
            report.input, a
        )));
    }
    let n = a.n() as u64;
    let low = 2 * n as i64 - 4;
    let window = report.ranks.window;
    let mut clauses = Vec::new();

    let h = full_homology(&a)?;
    clauses.push(Clause {
        name: "homotopy_sphere".into(),
        holds: h.homotopy_sphere,
        witness: format!(
            "middle rank {}, torsion {:?}: {}",
            h.middle_rank,
            h.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            h.description
        ),
    });

    let at_low = report.ranks.rank(low);
    clauses.push(if window.contains(low) {
        Clause {
            name: "two_generators_2n_minus_4".into(),
            holds: at_low >= 2,
            witness: format!("rank {at_low} in degree {low}"),
        }
    } else {
        outside_window("two_generators_2n_minus_4", low, window)
    });

    let at_next = report.ranks.rank(low + 1);
    clauses.push(if window.contains(low + 1) {
        Clause {
            name: "no_generators_2n_minus_3".into(),
            holds: at_next.is_zero(),
            witness: format!("rank {at_next} in degree {}", low + 1),
        }
    } else {
        outside_window("no_generators_2n_minus_3", low + 1, window)
    });

    let lowest = &report.extremal_degree;
    let bounded_below = report.character.is_positive();
    clauses.push(Clause {
        name: "nothing_below_2n_minus_4".into(),
        holds: bounded_below && lowest.to_i64().is_some_and(|d| d >= low),
        witness: if bounded_below {
            format!("lowest generator degree {lowest}")
        } else {
            "index-negative: degrees unbounded below".into()
        },
    });

    clauses.push(Clause {
        name: "well_defined_index_positive".into(),
        holds: report.well_defined && report.character.is_positive(),
        witness: format!(
            "well_defined = {}, character {}",
            report.well_defined, report.character.kind
        ),
    });

    Ok(SpecialSphereVerdict {
        primes: primes.to_vec(),
        n,
        passed: clauses.iter().all(|c| c.holds),
        generators_2n_minus_4: at_low,
        generators_2n_minus_3: at_next,
        clauses,
    })
}

fn outside_window(name: &str, degree: i64, window: Window) -> Clause {
    Clause {
        name: name.into(),
        holds: false,
        witness: format!("degree {degree} outside window {window}"),
    }
}

/// Lexicographically least non-decreasing tuple of `n − 1` odd primes below
/// `search_bound` that passes [`special_sphere_check`].
pub fn find_special_primes(n: u64, search_bound: u64) -> Result<Option<Vec<u64>>> {
    if n < 3 {
        return Err(Error::InvalidPrimes(format!(
            "n must be at least 3, got {n}"
        )));
    }
    let primes: Vec<u64> = (3..search_bound).filter(|&p| is_odd_prime(p)).collect();
    let len = (n - 1) as usize;
    let mut idx = vec![0usize; len];
    if primes.is_empty() {
        return Ok(None);
    }
    loop {
        let tuple: Vec<u64> = idx.iter().map(|&i| primes[i]).collect();
        let report = special_sphere_report(&tuple)?;
        if special_sphere_check(&tuple, &report)?.passed {
            return Ok(Some(tuple));
        }
        // next non-decreasing index tuple
        let Some(pos) = (0..len).rev().find(|&p| idx[p] + 1 < primes.len()) else {
            return Ok(None);
        };
        idx[pos] += 1;
        for q in pos + 1..len {
            idx[q] = idx[pos];
        }
    }
}
