//! Combinatorial smoothability of genus-zero relative and twisted stable maps.
//!
//! A stable map is encoded by its decorated dual tree ([`graph::DualMapGraph`]):
//! components that map with positive degree ("active" vertices), components
//! contracted to a point of the target, the nodes joining them together with
//! their ramification indices, and the marked points with their prescribed
//! tangencies. On top of that model this crate provides
//!
//! - [`conditions`]: the three-part relative condition (evaluation, fiber
//!   containment, ramification balance) deciding whether a map lies in the
//!   closure of the smooth relative locus, with witnesses for every failure;
//! - [`smoothing`]: the explicit smoothing certificate (contracted-component
//!   coefficients, node singularity orders) checked in exact rationals;
//! - [`hurwitz`]: realizability of ramification profiles by transitive
//!   permutation factorizations;
//! - [`strata`]: isomorphism-free enumeration of boundary strata;
//! - [`twisted`]: weighted projective targets, stabilizer bookkeeping and the
//!   translation from marked elliptic fibrations.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod canonical;
pub mod conditions;
pub mod exact;
pub mod graph;
pub mod hurwitz;
pub mod smoothing;
pub mod strata;
pub mod twisted;

pub use canonical::{canonical_form, CanonicalKey};
pub use exact::Exact;
pub use conditions::{check_relative, reduce_contracted, ConditionReport, Membership, TangencyData};
pub use graph::{DualMapGraph, EdgeId, MarkId, TargetPointId, ValidationReport, VertexId};
pub use twisted::StackyTarget;
