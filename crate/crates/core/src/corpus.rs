// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! A fixed corpus of small sentences over five signatures, shared by tests,
//! benchmarks and the command line.

use std::sync::Arc;

use crate::logic::{parse_formula, Formula};
use crate::structures::Signature;

/// One binary predicate `R`.
pub fn graph_signature() -> Arc<Signature> {
    Arc::new(
        Signature::builder()
            .predicate("R", 2)
            .build()
            .expect("valid signature"),
    )
}

/// One unary function `F`.
pub fn unar_signature() -> Arc<Signature> {
    Arc::new(
        Signature::builder()
            .function("F", 1)
            .build()
            .expect("valid signature"),
    )
}

/// A unary function `F` and a constant `c`.
pub fn pointed_unar_signature() -> Arc<Signature> {
    Arc::new(
        Signature::builder()
            .function("F", 1)
            .constant("c")
            .build()
            .expect("valid signature"),
    )
}

/// A unary predicate `P` and a unary function `F`.
pub fn coloured_unar_signature() -> Arc<Signature> {
    Arc::new(
        Signature::builder()
            .predicate("P", 1)
            .function("F", 1)
            .build()
            .expect("valid signature"),
    )
}

/// A unary predicate `P` and constants `c0`, `c1`.
pub fn two_constant_signature() -> Arc<Signature> {
    Arc::new(
        Signature::builder()
            .predicate("P", 1)
            .constant("c0")
            .constant("c1")
            .build()
            .expect("valid signature"),
    )
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    /// Name of the signature family, e.g. `graph`.
    pub family: &'static str,
    pub signature: Arc<Signature>,
    pub text: &'static str,
    pub formula: Formula,
}

const ENTRIES: &[(&str, &str, &str)] = &[
    ("dominating", "graph", "exists x. forall y. R(x,y)"),
    ("not-serial", "graph", "!(forall x. exists y. R(x,y))"),
    ("serial", "graph", "forall x. exists y. R(x,y)"),
    ("no-minimal", "graph", "forall x. exists y. R(y,x)"),
    ("asymmetric-edge", "graph", "exists x y. R(x,y) & !R(y,x)"),
    ("symmetric", "graph", "forall x y. R(x,y) -> R(y,x)"),
    (
        "bounce",
        "graph",
        "forall x. exists y. R(x,y) & (forall z. R(y,z) -> z = x)",
    ),
    ("singleton", "graph", "forall x y. x = y"),
    ("moves", "unar", "exists x. F(x) != x"),
    ("involution", "unar", "forall x. F(F(x)) = x"),
    ("not-onto", "unar", "exists x. forall y. F(y) != x"),
    ("fixed-point", "pointed-unar", "F(c) = c"),
    ("preimage", "pointed-unar", "exists x. F(x) = c & x != c"),
    ("alternating", "coloured-unar", "forall x. P(x) -> !P(F(x))"),
    (
        "collector",
        "coloured-unar",
        "exists x. P(x) & (forall y. P(y) -> F(y) = x)",
    ),
    ("distinct-marked", "two-constants", "c0 != c1 & P(c0)"),
    ("covered", "two-constants", "forall x. x = c0 | x = c1"),
];

pub fn family_signature(family: &str) -> Option<Arc<Signature>> {
    Some(match family {
        "graph" => graph_signature(),
        "unar" => unar_signature(),
        "pointed-unar" => pointed_unar_signature(),
        "coloured-unar" => coloured_unar_signature(),
        "two-constants" => two_constant_signature(),
        _ => return None,
    })
}

/// All corpus entries, grouped by signature family.
pub fn corpus() -> Vec<CorpusEntry> {
    ENTRIES
        .iter()
        .map(|&(name, family, text)| {
            let signature = family_signature(family).expect("known family");
            let formula = parse_formula(text, &signature).expect("corpus sentences parse");
            CorpusEntry {
                name,
                family,
                signature,
                text,
                formula,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_well_formed() {
        let c = corpus();
        assert!(c.len() >= 12);
        assert!(c
            .iter()
            .all(|e| e.formula.is_sentence() && e.formula.is_first_order()));
        assert!(c.iter().any(|e| e.formula.uses_functional_symbols()));
        assert!(c.iter().any(|e| !e.signature.constants().is_empty()));
        assert!(c.iter().any(|e| e.formula.quantifier_depth() >= 3));
    }
}
