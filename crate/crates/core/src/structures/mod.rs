// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! Finite signatures and structures, fragments (partial submodels), generated
//! submodels, isomorphism, and exhaustive enumeration.
//!
//! Universes are always initial segments `{0, .., n-1}` of the naturals.

mod classes;
mod enumerate;
pub mod format;
mod fragment;
mod iso;
mod signature;
mod structure;

use thiserror::Error;

pub use classes::iso_classes;
pub use enumerate::{
    canonical_form, closure, enumerate_structures, enumerate_submodels, generated_submodel,
    is_canonical, labelled_count, StructureStream, Substructure, DEFAULT_ENUMERATION_CAP,
};
pub use fragment::{induced_fragment, Fragment, Slot};
pub use iso::{
    find_fragment_isomorphism, find_isomorphism, fragment_embeds, fragment_occurs,
    is_fragment_isomorphism, is_isomorphism, IsoMap,
};
pub use signature::{Signature, SignatureBuilder, SignatureError, Symbol, SymbolKind};
pub use structure::{
    decode_tuple, tuple_code, tuple_count, tuples, validate_structure, RawStructure, Structure,
    StructureBuilder, Violation,
};

/// An element of a universe `{0, .., n-1}`.
pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("universe is empty")]
    EmptyUniverse,
    #[error("interpretation tables do not match the signature")]
    Shape,
    #[error("element out of range")]
    ElementOutOfRange,
    #[error("carrier is not closed under the functions and constants")]
    NotClosed,
    #[error("empty seed in a signature without constants generates nothing")]
    EmptySeed,
    #[error("structures have different signatures")]
    SignatureMismatch,
    #[error("invalid structure: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("enumeration of {count} labelled structures exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },
}
