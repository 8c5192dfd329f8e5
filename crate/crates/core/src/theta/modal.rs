// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;

use super::{check_sentence, ThetaError};
use crate::logic::{CompiledFormula, EvalError, Formula};
use crate::structures::{enumerate_submodels, Elem, Signature, Structure};

/// Boolean combinations of first-order sentences and nested θ.
#[derive(Debug, Clone)]
pub enum ModalSentence {
    Base(Arc<CompiledFormula>, String),
    Theta(Box<ModalSentence>),
    Not(Box<ModalSentence>),
    And(Vec<ModalSentence>),
    Or(Vec<ModalSentence>),
}

impl ModalSentence {
    pub fn base(phi: &Formula, sig: &Arc<Signature>) -> Result<Self, ThetaError> {
        check_sentence(phi)?;
        Ok(ModalSentence::Base(
            Arc::new(CompiledFormula::compile(phi, sig)?),
            phi.to_string(),
        ))
    }

    pub fn theta(m: ModalSentence) -> Self {
        ModalSentence::Theta(Box::new(m))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(m: ModalSentence) -> Self {
        ModalSentence::Not(Box::new(m))
    }

    pub fn implies(a: ModalSentence, b: ModalSentence) -> Self {
        ModalSentence::Or(vec![ModalSentence::not(a), b])
    }

    /// Truth in `s`.
    pub fn holds(&self, s: &Structure) -> Result<bool, ThetaError> {
        let frame = Frame::new(s)?;
        let full = frame.submodels.last().expect("the universe is a submodel");
        self.eval(&frame, full)
    }

    fn eval(&self, frame: &Frame, at: &(u64, Vec<Elem>)) -> Result<bool, ThetaError> {
        Ok(match self {
            ModalSentence::Base(f, _) => f.eval_within(frame.s, &at.1)?,
            ModalSentence::Theta(m) => {
                for sub in frame.submodels.iter().filter(|d| d.0 & !at.0 == 0) {
                    if m.eval(frame, sub)? {
                        return Ok(true);
                    }
                }
                false
            }
            ModalSentence::Not(m) => !m.eval(frame, at)?,
            ModalSentence::And(ms) => {
                for m in ms {
                    if !m.eval(frame, at)? {
                        return Ok(false);
                    }
                }
                true
            }
            ModalSentence::Or(ms) => {
                for m in ms {
                    if m.eval(frame, at)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }
}

impl fmt::Display for ModalSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModalSentence::Base(_, text) => write!(f, "[{text}]"),
            ModalSentence::Theta(m) => write!(f, "θ{m}"),
            ModalSentence::Not(m) => write!(f, "¬{m}"),
            ModalSentence::And(ms) | ModalSentence::Or(ms) => {
                let sep = if matches!(self, ModalSentence::And(_)) {
                    " ∧ "
                } else {
                    " ∨ "
                };
                f.write_str("(")?;
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A structure with its submodel carriers as bitmasks, smallest first; the
/// full universe comes last.
struct Frame<'a> {
    s: &'a Structure,
    submodels: Vec<(u64, Vec<Elem>)>,
}

impl<'a> Frame<'a> {
    fn new(s: &'a Structure) -> Result<Self, ThetaError> {
        if s.size() > 64 {
            return Err(EvalError::TooLarge {
                requested: s.size(),
                limit: 64,
            }
            .into());
        }
        let submodels = enumerate_submodels(s, None)
            .map(|c| (c.iter().fold(0u64, |m, &a| m | 1 << a), c))
            .collect();
        Ok(Frame { s, submodels })
    }
}

/// Outcome of one law over the corpus.
#[derive(Debug, Clone)]
pub struct LawResult {
    pub law: &'static str,
    pub statement: String,
    /// Only the left-to-right direction is claimed.
    pub one_directional: bool,
    /// Points (structure, submodel) evaluated.
    pub checked: usize,
    /// A submodel on which the claimed direction fails.
    pub counterexample: Option<Structure>,
    /// For one-directional laws, a submodel on which the converse fails.
    pub strictness_witness: Option<Structure>,
    /// For conditional laws, whether the premise held on the whole corpus.
    pub premise_met: Option<bool>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct ModalLawReport {
    pub laws: Vec<LawResult>,
}

impl ModalLawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn law(&self, id: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == id)
    }
}

impl fmt::Display for ModalLawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.laws {
            let status = match (l.premise_met, l.passed()) {
                (Some(false), _) => "vacuous",
                (_, true) => "pass",
                (_, false) => "FAIL",
            };
            let strict = match (l.one_directional, &l.strictness_witness) {
                (false, _) => "",
                (true, Some(_)) => " strict",
                (true, None) => " converse-not-refuted",
            };
            writeln!(
                f,
                "{:<6} {:<8} checked={:<6}{} {}",
                l.law, status, l.checked, strict, l.statement
            )?;
        }
        Ok(())
    }
}

struct Law {
    id: &'static str,
    lhs: ModalSentence,
    rhs: ModalSentence,
    equivalence: bool,
    conditional: bool,
}

/// Checks the laws of θ as a possibility operator on every submodel of
/// every corpus structure: θ⊤ ≡ ⊤ and θ⊥ ≡ ⊥; φ ⇒ θφ; θθφ ≡ θφ; monotonicity
/// under a corpus-wide implication; θ(φ∧ψ) ⇒ θφ∧θψ and θ(φ∨ψ) ≡ θφ∨θψ;
/// ¬θφ ⇒ ¬φ and ¬φ ⇒ θ¬φ; θ¬θφ ⇒ θ¬φ.
pub fn modal_laws_check(
    phi: &Formula,
    psi: &Formula,
    sig: &Arc<Signature>,
    corpus: &[Structure],
) -> Result<ModalLawReport, ThetaError> {
    use ModalSentence as M;
    let p = M::base(phi, sig)?;
    let q = M::base(psi, sig)?;
    let top = M::base(&Formula::True, sig)?;
    let bottom = M::base(&Formula::False, sig)?;
    let th = |m: &M| M::theta(m.clone());
    let not = |m: &M| M::not(m.clone());
    let law = |id, lhs, rhs, equivalence| Law {
        id,
        lhs,
        rhs,
        equivalence,
        conditional: false,
    };
    let laws = vec![
        law("theta-true", th(&top), top.clone(), true),
        law("theta-false", th(&bottom), bottom.clone(), true),
        law("inflation", p.clone(), th(&p), false),
        law("idempotence", th(&th(&p)), th(&p), true),
        Law {
            id: "monotonicity",
            lhs: th(&p),
            rhs: th(&q),
            equivalence: false,
            conditional: true,
        },
        law(
            "conjunction",
            th(&M::And(vec![p.clone(), q.clone()])),
            M::And(vec![th(&p), th(&q)]),
            false,
        ),
        law(
            "disjunction",
            th(&M::Or(vec![p.clone(), q.clone()])),
            M::Or(vec![th(&p), th(&q)]),
            true,
        ),
        law("negation-out", not(&th(&p)), not(&p), false),
        law("negation-in", not(&p), th(&not(&p)), false),
        law("negated-theta", th(&not(&th(&p))), th(&not(&p)), false),
    ];

    let frames = corpus
        .iter()
        .map(Frame::new)
        .collect::<Result<Vec<_>, _>>()?;
    let points = || {
        frames
            .iter()
            .flat_map(|fr| fr.submodels.iter().map(move |at| (fr, at)))
    };
    let mut premise = true;
    for (fr, at) in points() {
        if p.eval(fr, at)? && !q.eval(fr, at)? {
            premise = false;
            break;
        }
    }

    let mut results = Vec::new();
    for l in laws {
        let mut r = LawResult {
            law: l.id,
            statement: format!(
                "{} {} {}",
                l.lhs,
                if l.equivalence { "≡" } else { "⇒" },
                l.rhs
            ),
            one_directional: !l.equivalence,
            checked: 0,
            counterexample: None,
            strictness_witness: None,
            premise_met: l.conditional.then_some(premise),
        };
        if l.conditional && !premise {
            results.push(r);
            continue;
        }
        for (fr, at) in points() {
            r.checked += 1;
            let (a, b) = (l.lhs.eval(fr, at)?, l.rhs.eval(fr, at)?);
            let here = || fr.s.restrict(&at.1);
            if (a && !b) || (l.equivalence && b && !a) {
                r.counterexample = Some(here()?);
                break;
            }
            if !l.equivalence && b && !a && r.strictness_witness.is_none() {
                r.strictness_witness = Some(here()?);
            }
        }
        results.push(r);
    }
    Ok(ModalLawReport { laws: results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::structures::{enumerate_structures, DEFAULT_ENUMERATION_CAP};

    fn corpus(sig: &Arc<Signature>, n_max: usize) -> Vec<Structure> {
        (1..=n_max)
            .flat_map(|n| enumerate_structures(sig, n, true, DEFAULT_ENUMERATION_CAP).unwrap())
            .collect()
    }

    #[test]
    fn laws_hold_on_small_graphs() {
        let sig = Arc::new(Signature::builder().predicate("R", 2).build().unwrap());
        let phi = parse_formula("exists x. forall y. R(x,y)", &sig).unwrap();
        let psi = parse_formula("exists x. R(x,x)", &sig).unwrap();
        let report = modal_laws_check(&phi, &psi, &sig, &corpus(&sig, 3)).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.law("monotonicity").unwrap().premise_met, Some(true));
        assert!(report.law("conjunction").unwrap().one_directional);
        assert!(report
            .law("negation-in")
            .unwrap()
            .strictness_witness
            .is_some());
    }

    #[test]
    fn nested_theta_on_a_structure() {
        let sig = Arc::new(Signature::builder().predicate("R", 2).build().unwrap());
        let s = Structure::builder(&sig, 2)
            .tuple("R", &[0, 1])
            .build()
            .unwrap();
        let loopless =
            ModalSentence::base(&parse_formula("forall x. !R(x,x)", &sig).unwrap(), &sig).unwrap();
        let edge =
            ModalSentence::base(&parse_formula("exists x y. R(x,y)", &sig).unwrap(), &sig).unwrap();
        assert!(ModalSentence::theta(loopless.clone()).holds(&s).unwrap());
        assert!(!ModalSentence::theta(ModalSentence::not(loopless))
            .holds(&s)
            .unwrap());
        assert!(ModalSentence::theta(ModalSentence::not(edge))
            .holds(&s)
            .unwrap());
    }
}
