// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! The submodel operator θ and its bounded variant θ≤λ: semantic evaluation
//! over submodels, translations into monadic existential second-order and
//! existential first-order sentences, and a check of its modal laws.

mod modal;
mod translate;

use std::collections::HashSet;
use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::logic::{CompiledFormula, EvalError, Formula, RelativizeError};
use crate::structures::{closure, enumerate_submodels, Elem, Signature, Structure, StructureError};

pub use modal::{modal_laws_check, LawResult, ModalLawReport, ModalSentence};
pub use translate::{
    theta_bounded_to_existential_functional, theta_bounded_to_existential_predicate, theta_to_eso,
    DiagramSentence, FunctionalTranslation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("formula is not a sentence")]
    NotSentence,
    #[error("formula is not first-order")]
    NotFirstOrder,
    #[error("invalid bound: {0}")]
    Bound(String),
    #[error("the predicate-case translation needs a signature without functions or constants")]
    FunctionalSignature,
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Relativize(#[from] RelativizeError),
}

/// Outcome of a θ evaluation: the truth value, the first witnessing carrier
/// in enumeration order, and how many distinct submodels were evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaReport {
    pub holds: bool,
    pub witness: Option<Vec<Elem>>,
    pub inspected: usize,
}

/// A first-order sentence compiled once for repeated θ evaluation.
#[derive(Debug, Clone)]
pub struct ThetaChecker {
    phi: CompiledFormula,
}

impl ThetaChecker {
    pub fn new(phi: &Formula, sig: &Arc<Signature>) -> Result<Self, ThetaError> {
        check_sentence(phi)?;
        Ok(ThetaChecker {
            phi: CompiledFormula::compile(phi, sig)?,
        })
    }

    /// Truth of the sentence in `s` itself.
    pub fn holds_in(&self, s: &Structure) -> Result<bool, ThetaError> {
        Ok(self.phi.eval_sentence(s)?)
    }

    /// Truth of the sentence in the submodel of `s` on `carrier`.
    pub fn holds_on(&self, s: &Structure, carrier: &[Elem]) -> Result<bool, ThetaError> {
        Ok(self.phi.eval_within(s, carrier)?)
    }

    /// Some submodel satisfies the sentence. Submodels are tried by size,
    /// then lexicographically.
    pub fn theta(&self, s: &Structure) -> Result<ThetaReport, ThetaError> {
        let mut inspected = 0;
        for carrier in enumerate_submodels(s, None) {
            inspected += 1;
            if self.phi.eval_within(s, &carrier)? {
                return Ok(ThetaReport {
                    holds: true,
                    witness: Some(carrier),
                    inspected,
                });
            }
        }
        Ok(ThetaReport {
            holds: false,
            witness: None,
            inspected,
        })
    }

    /// Some submodel generated by at most `lambda` elements satisfies the
    /// sentence. Seeds are tried by size, then lexicographically.
    pub fn theta_bounded(&self, s: &Structure, lambda: usize) -> Result<ThetaReport, ThetaError> {
        check_bound(s.signature(), lambda)?;
        let mut seen = HashSet::new();
        for k in 0..=lambda.min(s.size()) {
            for seed in s.universe().combinations(k) {
                let carrier = closure(s, &seed)?;
                if carrier.is_empty() || !seen.insert(carrier.clone()) {
                    continue;
                }
                if self.phi.eval_within(s, &carrier)? {
                    return Ok(ThetaReport {
                        holds: true,
                        witness: Some(carrier),
                        inspected: seen.len(),
                    });
                }
            }
        }
        Ok(ThetaReport {
            holds: false,
            witness: None,
            inspected: seen.len(),
        })
    }
}

pub(crate) fn check_sentence(phi: &Formula) -> Result<(), ThetaError> {
    if !phi.is_first_order() {
        return Err(ThetaError::NotFirstOrder);
    }
    if !phi.is_sentence() {
        return Err(ThetaError::NotSentence);
    }
    Ok(())
}

pub(crate) fn check_bound(sig: &Signature, lambda: usize) -> Result<(), ThetaError> {
    if lambda == 0 && sig.constants().is_empty() {
        return Err(ThetaError::Bound(
            "λ = 0 needs at least one constant".into(),
        ));
    }
    Ok(())
}

/// θ(φ) in `s`: whether some submodel of `s` satisfies `phi`.
pub fn theta_semantic(s: &Structure, phi: &Formula) -> Result<ThetaReport, ThetaError> {
    ThetaChecker::new(phi, s.signature_arc())?.theta(s)
}

/// θ≤λ(φ) in `s`: whether some submodel generated by at most `lambda`
/// elements satisfies `phi`.
pub fn theta_bounded_semantic(
    s: &Structure,
    phi: &Formula,
    lambda: usize,
) -> Result<ThetaReport, ThetaError> {
    ThetaChecker::new(phi, s.signature_arc())?.theta_bounded(s, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn graph(n: usize, edges: &[(Elem, Elem)]) -> Structure {
        let sig = Arc::new(Signature::builder().predicate("R", 2).build().unwrap());
        let mut b = Structure::builder(&sig, n);
        for &(x, y) in edges {
            b = b.tuple("R", &[x, y]);
        }
        b.build().unwrap()
    }

    fn z4() -> Structure {
        let sig = Arc::new(Signature::builder().function("F", 1).build().unwrap());
        Structure::builder(&sig, 4)
            .function_fn("F", |t| (t[0] + 1) % 4)
            .build()
            .unwrap()
    }

    fn phi(s: &Structure, text: &str) -> Formula {
        parse_formula(text, s.signature()).unwrap()
    }

    #[test]
    fn loop_point_witnesses_dominating_vertex() {
        let s = graph(2, &[(0, 0)]);
        let r = theta_semantic(&s, &phi(&s, "exists x. forall y. R(x,y)")).unwrap();
        assert_eq!(
            r,
            ThetaReport {
                holds: true,
                witness: Some(vec![0]),
                inspected: 1
            }
        );
        assert!(!theta_semantic(&s, &Formula::False).unwrap().holds);
    }

    #[test]
    fn cycle_needs_full_carrier() {
        let c3 = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let r = theta_semantic(&c3, &phi(&c3, "forall x. exists y. R(x,y)")).unwrap();
        assert_eq!(
            r,
            ThetaReport {
                holds: true,
                witness: Some(vec![0, 1, 2]),
                inspected: 7
            }
        );
        let b = theta_bounded_semantic(&c3, &phi(&c3, "forall x. exists y. R(x,y)"), 1).unwrap();
        assert!(!b.holds);
        assert_eq!(b.inspected, 3);
    }

    #[test]
    fn one_generator_spans_the_cycle() {
        let s = z4();
        let r = theta_bounded_semantic(&s, &phi(&s, "exists x. F(x) != x"), 1).unwrap();
        assert_eq!(r.witness, Some(vec![0, 1, 2, 3]));
        assert!(theta_bounded_semantic(&s, &Formula::True, 1).unwrap().holds);
    }

    #[test]
    fn errors() {
        let s = graph(2, &[]);
        assert_eq!(
            theta_semantic(&s, &phi(&s, "R(x,x)")),
            Err(ThetaError::NotSentence)
        );
        assert!(matches!(
            theta_bounded_semantic(&s, &Formula::True, 0),
            Err(ThetaError::Bound(_))
        ));
    }
}
