// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! A finite-model-theory workbench for the submodel-satisfiability operator
//! θ: a structure satisfies θ(φ) when some submodel of it satisfies φ.
//!
//! * [`structures`]: signatures, finite structures, fragments, generated
//!   submodels, isomorphism and enumeration.
//! * [`logic`]: formulas, parsing and printing, first-order and monadic
//!   existential second-order evaluation, relativization.
//! * [`theta`]: semantic θ and θ≤λ, and their syntactic translations.
//! * [`products`]: ideals, filters, reduced products and the canonical
//!   embedding of a structure into a reduced product of a coherent system.
//! * [`prober`]: brute-force oracles over all small structures.
//! * [`report`]: deterministic plain-text reports with run manifests.
//! * [`corpus`]: a fixed set of sample sentences over small signatures.

pub mod corpus;
pub mod logic;
pub mod prober;
pub mod products;
pub mod report;
pub mod structures;
pub mod theta;

pub use structures::{Elem, Fragment, IsoMap, Signature, Slot, Structure, StructureError};
