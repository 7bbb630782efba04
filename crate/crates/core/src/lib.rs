//! Left congruences on inverse semigroups through their trace and inverse
//! kernel.
//!
//! Finite inverse semigroups are enumerated from partial permutations (or an
//! abstract table), every left congruence is described by a pair `(τ, T)` of
//! a congruence on the idempotents and a full inverse subsemigroup, and the
//! bicyclic monoid is handled symbolically.

pub mod bicyclic;
pub mod corpus;
pub mod elemset;
pub mod error;
pub mod genset;
pub mod oracle;
pub mod pairs;
pub mod perm;
pub mod relation;
pub mod semigroup;
pub mod trace_kernel;

pub use bicyclic::{BicyclicElement, BicyclicTrace, TkdSub};
pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use oracle::{certify, OracleReport, Strategy};
pub use pairs::{CongruenceLattice, IKPair};
pub use perm::PartialPerm;
pub use relation::{
    eq_join_transitive, eq_meet, left_congruence_closure, semilattice_congruences, EqRelation, GenPairSet, UnionFind,
};
pub use semigroup::{FiniteInverseSemigroup, FullInverseSub, DEFAULT_CAP};
pub use trace_kernel::{KernelSub, TraceCongruence};
