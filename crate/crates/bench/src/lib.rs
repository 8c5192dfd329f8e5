// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! Fixtures shared by the benchmark sweeps.

use std::sync::Arc;

use submodel_core::corpus::{graph_signature, unar_signature};
use submodel_core::logic::{parse_formula, Formula};
use submodel_core::{Signature, Structure};

/// The directed cycle `0 -> 1 -> ... -> n-1 -> 0` over the graph signature.
pub fn cycle(n: usize) -> Structure {
    let sig = graph_signature();
    let mut b = Structure::builder(&sig, n);
    for i in 0..n {
        b = b.tuple("R", &[i, (i + 1) % n]);
    }
    b.build().expect("cycle is well formed")
}

/// A directed path on `n` vertices whose last vertex has a loop.
pub fn path_to_loop(n: usize) -> Structure {
    let sig = graph_signature();
    let mut b = Structure::builder(&sig, n);
    for i in 0..n {
        b = b.tuple("R", &[i, (i + 1).min(n - 1)]);
    }
    b.build().expect("path is well formed")
}

/// The successor map on `0..n`, fixing the last element.
pub fn saturating_successor(n: usize) -> Structure {
    let sig = unar_signature();
    Structure::builder(&sig, n)
        .function_fn("F", |a| (a[0] + 1).min(n - 1))
        .build()
        .expect("successor is well formed")
}

pub fn sentence(sig: &Signature, text: &str) -> Formula {
    parse_formula(text, sig).expect("fixture sentence parses")
}

pub fn graph() -> Arc<Signature> {
    graph_signature()
}

pub fn unar() -> Arc<Signature> {
    unar_signature()
}
