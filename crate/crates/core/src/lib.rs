//! Exact computation of cylindrical contact homology for Brieskorn manifolds
//! `Σ(a_0, …, a_n)` with their standard contact form, together with the
//! connected-sum bookkeeping used to build exotic contact structures on
//! spheres and other index-positive manifolds.

pub mod arith;
pub mod connected_sum;
pub mod contact_homology;
pub mod error;
pub mod maslov;
pub mod orbit_types;
pub mod randell;

pub use arith::{gcd_set, lcm_set, subsets, IndexSubset, Int, Nat, Rat};
pub use connected_sum::{
    beta, combine, find_special_primes, is_odd_prime, iterated_sphere_sum, special_sphere_check,
    special_sphere_exponents, special_sphere_report, Clause, GeneratorCounts, SpecialSphereVerdict,
};
pub use contact_homology::{
    ch_ranks, ch_report, generator_degree, period_shift, sufficient_negativity_check,
    transient_degree, CHReport, Contribution, GradedRanks, PeriodMultiplier, Window,
};
pub use error::{Error, Result};
pub use maslov::{
    classify_index, maslov_crosscheck, maslov_orbit_space, maslov_unitary, Character,
    IndexCharacter,
};
pub use orbit_types::{divisor_set, enumerate_orbit_types, valid_multiplier, OrbitType};
pub use randell::{
    full_homology, kappa, orbit_space_rational_homology, torsion, ExponentVector, HomologyGroup,
    HomologyReport, OrbitSpaceHomology,
};
