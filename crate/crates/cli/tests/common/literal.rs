//! Straight transcription of Randell's formulas over index lists, with no
//! bitmasks, tables or transforms. Slow on purpose; used only as a reference.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn all_subsets(s: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &i in s {
        let with: Vec<Vec<usize>> = out
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.push(i);
                t
            })
            .collect();
        out.extend(with);
    }
    out
}

/// `Σ_{T⊂S} (−1)^{|S|−|T|} ∏_{i∈T} a_i / lcm_{j∈T} a_j`.
pub fn kappa(a: &[u64], s: &[usize]) -> BigInt {
    let mut total = BigInt::zero();
    for t in all_subsets(s) {
        let prod: BigInt = t.iter().map(|&i| BigInt::from(a[i])).product();
        let lcm = t
            .iter()
            .fold(BigInt::one(), |l, &i| l.lcm(&BigInt::from(a[i])));
        let term = prod / lcm;
        if (s.len() - t.len()).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Invariant factors `d_1, …, d_r` of `Tor H_{n−1}`, with unit factors
/// dropped.
pub fn torsion(a: &[u64]) -> Vec<BigInt> {
    let len = a.len();
    let ground: Vec<usize> = (0..len).collect();
    let mut proper: Vec<Vec<usize>> = all_subsets(&ground)
        .into_iter()
        .filter(|s| s.len() < len)
        .collect();
    proper.sort_by_key(Vec::len);

    let mut c: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    for s in &proper {
        let g = (0..len)
            .filter(|i| !s.contains(i))
            .fold(BigInt::zero(), |g, i| g.gcd(&BigInt::from(a[i])));
        let mut denom = BigRational::one();
        for t in all_subsets(s) {
            if t.len() < s.len() {
                denom *= &c[&t];
            }
        }
        c.insert(s.clone(), BigRational::from_integer(g) / denom);
    }

    let k: BTreeMap<&Vec<usize>, BigInt> = proper
        .iter()
        .map(|s| {
            let k = if (len - s.len()) % 2 == 1 {
                kappa(a, s)
            } else {
                BigInt::zero()
            };
            (s, k)
        })
        .collect();
    let r = k.values().max().cloned().unwrap_or_default();

    let mut d = Vec::new();
    let mut j = BigInt::one();
    while j <= r {
        let mut p = BigRational::one();
        for s in &proper {
            if k[s] >= j {
                p *= &c[s];
            }
        }
        assert!(p.is_integer(), "non-integral d_j for {a:?}");
        let p = p.to_integer();
        if !p.is_one() {
            d.push(p);
        }
        j += 1;
    }
    d
}
