//! Exact verification of GCD/LCM product identities for ideals.
//!
//! For a family of ideals `a_1, ..., a_n` write `G(k)` for the product of all
//! sums of `k` of them and `L(k)` for the product of all `k`-fold
//! intersections. This crate checks
//!
//! * the max-min multiset identities over a chain ([`combinatorics`]),
//! * the symbolic criterion behind `L(n)·G(2)G(4)··· ⊆ G(1)G(3)···` for any
//!   `n` ([`dagger`]), built on a deduplicating support expander
//!   ([`exponent`]),
//! * concrete products, sums and intersections of monomial ideals
//!   ([`ideal`], [`ring_examples`]),
//! * the equalities for Dedekind domains in valuation form ([`dedekind`]).

pub mod combinatorics;
pub mod dagger;
pub mod dedekind;
pub mod error;
pub mod exponent;
pub mod ideal;
mod merge;
pub mod notation;
mod packed;
pub mod ring_examples;
pub mod suites;

pub use combinatorics::{
    binomial, check_maxmin_identities, k_subsets, lower_multiset, upper_multiset, IndexSubset,
    MaxMinCheck, OrderedMultiset,
};
pub use dagger::{
    build_instance, degree_audit, verify_dagger, DaggerConfig, DaggerInstance, DaggerReport,
    MembershipMode, Verdict,
};
pub use dedekind::{
    check_doublestar, check_star, gcd_valuation, integers_to_valuations, lcm_valuation,
    ValuationMatrix,
};
pub use error::{Error, Result};
pub use exponent::{
    expand_product, expand_product_with, is_subset_with_witness, linear_form, shifted_down_set,
    ExpandOptions, ExponentVector, LinearFormFactor, MonomialSet, SubsetCheck,
};
pub use ideal::{big_g, big_l, MonomialIdeal};
pub use merge::MemoryBudget;
