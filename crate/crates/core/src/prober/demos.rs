// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use super::{ProbeConfig, ProbeError};
use crate::logic::{evaluate_fo, Assignment, Formula, Term};
use crate::structures::{Elem, Signature, Structure};
use crate::theta::ThetaChecker;

#[derive(Debug, Clone)]
pub struct WellfoundednessReport {
    pub predicate: String,
    pub sentence: Formula,
    pub n_max: usize,
    pub structures: usize,
    pub cyclic: usize,
    pub agreements: usize,
    /// Structures where θ and cycle detection disagree.
    pub disagreements: Vec<Structure>,
}

impl WellfoundednessReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares θ of "every element has a predecessor" with cycle detection on
/// every structure up to `cfg.n_max` over a single binary predicate.
pub fn wellfoundedness_demo(cfg: &ProbeConfig) -> Result<WellfoundednessReport, ProbeError> {
    let sig = &cfg.signature;
    let pred = match (
        sig.predicates(),
        sig.functions().is_empty() && sig.constants().is_empty(),
    ) {
        ([p], true) if p.arity == 2 => p.name.clone(),
        _ => {
            return Err(ProbeError::Precondition(
                "the signature must consist of exactly one binary predicate".into(),
            ))
        }
    };
    if cfg.n_max == 0 {
        return Err(ProbeError::Config("n_max must be at least 1".into()));
    }
    let sentence = Formula::forall(
        "x",
        Formula::exists(
            "y",
            Formula::pred(&pred, vec![Term::var("y"), Term::var("x")]),
        ),
    );
    let checker = ThetaChecker::new(&sentence, sig)?;
    let structures = cfg.structures()?;
    let rows = structures
        .par_iter()
        .map(|s| Ok((checker.theta(s)?.holds, has_cycle(s))))
        .collect::<Result<Vec<_>, ProbeError>>()?;
    let disagreements = structures
        .iter()
        .zip(&rows)
        .filter(|(_, (t, c))| t != c)
        .map(|(s, _)| s.clone())
        .collect::<Vec<_>>();
    Ok(WellfoundednessReport {
        predicate: pred,
        sentence,
        n_max: cfg.n_max,
        structures: structures.len(),
        cyclic: rows.iter().filter(|(_, c)| *c).count(),
        agreements: structures.len() - disagreements.len(),
        disagreements,
    })
}

/// Whether the first predicate, read as a digraph, has a directed cycle.
pub(crate) fn has_cycle(s: &Structure) -> bool {
    let n = s.size();
    // 0 unvisited, 1 on the stack, 2 finished.
    let mut state = vec![0u8; n];
    fn visit(s: &Structure, a: Elem, state: &mut [u8]) -> bool {
        state[a] = 1;
        for b in s.universe() {
            if s.holds(0, &[a, b]) && (state[b] == 1 || (state[b] == 0 && visit(s, b, state))) {
                return true;
            }
        }
        state[a] = 2;
        false
    }
    (0..n).any(|a| state[a] == 0 && visit(s, a, &mut state))
}

#[derive(Debug, Clone)]
pub struct ConstantBlindnessReport {
    pub k: usize,
    pub psi: Formula,
    /// Every constant denotes the first element.
    pub collapsed: Structure,
    /// The distinguishing constant denotes the second element.
    pub split: Structure,
    pub distinguishing: String,
    pub psi_collapsed: bool,
    pub psi_split: bool,
    pub theta_collapsed: bool,
    pub theta_split: bool,
}

impl ConstantBlindnessReport {
    pub fn passed(&self) -> bool {
        self.psi_collapsed == self.psi_split && self.theta_collapsed && !self.theta_split
    }
}

/// The signature of `k` constants `c0..c{k-1}`.
pub fn constant_signature(k: usize) -> Arc<Signature> {
    let mut b = Signature::builder();
    for i in 0..k {
        b = b.constant(&format!("c{i}"));
    }
    Arc::new(b.build().expect("distinct constant names"))
}

/// Builds two two-element structures over `k` constants that agree on `psi`
/// but differ on θ of "there is exactly one element".
pub fn constant_blindness_demo(
    k: usize,
    psi: &Formula,
) -> Result<ConstantBlindnessReport, ProbeError> {
    if k < 2 {
        return Err(ProbeError::Precondition(
            "at least two constants are needed".into(),
        ));
    }
    let sig = constant_signature(k);
    if !psi.is_first_order() || !psi.is_sentence() {
        return Err(ProbeError::Query(format!(
            "`{psi}` is not a first-order sentence"
        )));
    }
    let mut named = BTreeSet::new();
    psi.visit(&mut |f| match f {
        Formula::Pred(_, args) => args.iter().for_each(|t| collect_constants(t, &mut named)),
        Formula::InSet(_, t) => collect_constants(t, &mut named),
        Formula::Eq(a, b) => {
            collect_constants(a, &mut named);
            collect_constants(b, &mut named);
        }
        _ => {}
    });
    let distinguishing = sig
        .constants()
        .iter()
        .find(|c| !named.contains(*c))
        .cloned()
        .ok_or_else(|| ProbeError::Precondition(format!("ψ names all {k} constants")))?;

    let mut collapsed = Structure::builder(&sig, 2);
    let mut split = Structure::builder(&sig, 2);
    for c in sig.constants() {
        collapsed = collapsed.constant(c, 0);
        split = split.constant(c, usize::from(*c == distinguishing));
    }
    let (collapsed, split) = (collapsed.build()?, split.build()?);

    let one_point = Formula::forall(
        "x",
        Formula::forall("y", Formula::eq(Term::var("x"), Term::var("y"))),
    );
    let theta = ThetaChecker::new(&one_point, &sig)?;
    let empty = Assignment::default();
    Ok(ConstantBlindnessReport {
        k,
        psi: psi.clone(),
        psi_collapsed: evaluate_fo(&collapsed, psi, &empty)?,
        psi_split: evaluate_fo(&split, psi, &empty)?,
        theta_collapsed: theta.theta(&collapsed)?.holds,
        theta_split: theta.theta(&split)?.holds,
        collapsed,
        split,
        distinguishing,
    })
}

fn collect_constants(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(_) => {}
        Term::Const(c) => {
            out.insert(c.clone());
        }
        Term::App(_, args) => args.iter().for_each(|a| collect_constants(a, out)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn graph() -> Arc<Signature> {
        Arc::new(Signature::builder().predicate("R", 2).build().unwrap())
    }

    #[test]
    fn cycles() {
        let sig = graph();
        let c3 = Structure::builder(&sig, 3)
            .tuples("R", &[&[0, 1], &[1, 2], &[2, 0]])
            .build()
            .unwrap();
        let chain = Structure::builder(&sig, 3)
            .tuples("R", &[&[0, 1], &[1, 2], &[0, 2]])
            .build()
            .unwrap();
        let point = Structure::builder(&sig, 1).build().unwrap();
        let looped = Structure::builder(&sig, 1)
            .tuples("R", &[&[0, 0]])
            .build()
            .unwrap();
        assert!(has_cycle(&c3));
        assert!(!has_cycle(&chain));
        assert!(!has_cycle(&point));
        assert!(has_cycle(&looped));
    }

    #[test]
    fn wellfoundedness_up_to_three() {
        let r = wellfoundedness_demo(&ProbeConfig::new(graph(), 3)).unwrap();
        assert!(r.passed());
        assert_eq!(r.structures, 2 + 10 + 104);
        let unar = Arc::new(Signature::builder().function("F", 1).build().unwrap());
        assert!(matches!(
            wellfoundedness_demo(&ProbeConfig::new(unar, 2)),
            Err(ProbeError::Precondition(_))
        ));
    }

    #[test]
    fn blindness() {
        let sig = constant_signature(3);
        let psi = parse_formula("c0 = c1", &sig).unwrap();
        let r = constant_blindness_demo(3, &psi).unwrap();
        assert!(r.passed());
        assert_eq!(r.distinguishing, "c2");
        assert!(r.psi_collapsed && r.psi_split);

        let r = constant_blindness_demo(2, &Formula::True).unwrap();
        assert!(r.passed());
        assert_eq!(r.split.constants(), &[1, 0]);

        let psi = parse_formula("c0 = c0", &constant_signature(1)).unwrap();
        assert!(matches!(
            constant_blindness_demo(1, &psi),
            Err(ProbeError::Precondition(_))
        ));
        let psi = parse_formula("c0 = c1", &constant_signature(2)).unwrap();
        assert!(matches!(
            constant_blindness_demo(2, &psi),
            Err(ProbeError::Precondition(_))
        ));
    }
}
