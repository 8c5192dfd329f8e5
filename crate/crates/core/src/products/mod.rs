// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! Ideals of subsets of a universe, filters over them, reduced products,
//! and the canonical embedding of a structure into the reduced product of a
//! coherent system of structures indexed by an ideal.
//!
//! Filters over a finite index family are principal, so two choice
//! functions are identified exactly when they agree on the intersection of
//! the filter; classes are enumerated through that intersection.

mod coherent;
mod ideal;
mod product;

use itertools::Itertools;
use thiserror::Error;

use crate::structures::StructureError;

pub use coherent::{
    canonical_embedding, coherence_check, CoherenceViolation, CoherentSystem, EmbeddingReport,
};
pub use ideal::{
    parse_filter, parse_ideal, upper_cone_filter, validate_filter, validate_ideal, write_filter,
    write_ideal, FilterViolation, IdealViolation, IndexFilter, IndexIdeal, MAX_INDEX_COUNT,
};
pub use product::{reduced_product, ReducedProduct, DEFAULT_PRODUCT_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("invalid ideal: {}", .0.iter().join("; "))]
    InvalidIdeal(Vec<IdealViolation>),
    #[error("invalid filter: {}", .0.iter().join("; "))]
    InvalidFilter(Vec<FilterViolation>),
    #[error("ideal is not directed")]
    NotDirected,
    #[error("{count} indices exceed the limit of {limit}")]
    TooManyIndices { count: usize, limit: usize },
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("components have different signatures")]
    SignatureMismatch,
    #[error("ideal is over {ideal} elements but the parent has {parent}")]
    BaseMismatch { ideal: usize, parent: usize },
    #[error("product has {count} classes, above the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },
    #[error("choice is not one element per component")]
    BadChoice,
    #[error("system is not coherent: {}", .0.iter().join("; "))]
    Incoherent(Vec<CoherenceViolation>),
    #[error("filter does not extend the upper-cone filter of the ideal")]
    FilterDoesNotExtendCone,
    #[error(transparent)]
    Structure(#[from] StructureError),
}
