// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::{Mode, ProbeConfig, ProbeError};
use crate::logic::Formula;
use crate::structures::{
    enumerate_submodels, fragment_embeds, induced_fragment, Fragment, Structure,
};
use crate::theta::ThetaChecker;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Every model up to the ceiling has a witness of size at most `lambda`,
    /// and `lambda` is the least such bound.
    WitnessBoundFound { lambda: usize },
    /// Some model up to `n_max` has no witness of size at most `lambda_max`.
    NoBoundUpTo { n_max: usize, lambda_max: usize },
}

/// A model of the sentence without a witness of size `refutes` or less.
#[derive(Debug, Clone)]
pub struct WitnessCounterexample {
    pub structure: Structure,
    pub refutes: usize,
    /// Size of its smallest witness, or `None` beyond `lambda_max`.
    pub smallest_witness: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ProbeVerdict {
    pub outcome: Outcome,
    pub mode: Mode,
    pub n_max: usize,
    pub lambda_max: usize,
    pub structures: usize,
    pub models: usize,
    /// Distinct fragments examined; zero in submodel mode.
    pub fragments: usize,
    /// Strictly increasing in size.
    pub counterexamples: Vec<WitnessCounterexample>,
    /// A model attaining the bound together with a minimal witness.
    pub extremal: Option<(Structure, Fragment)>,
}

impl ProbeVerdict {
    pub fn bound(&self) -> Option<usize> {
        match self.outcome {
            Outcome::WitnessBoundFound { lambda } => Some(lambda),
            Outcome::NoBoundUpTo { .. } => None,
        }
    }

    /// The machine-readable last line of a report.
    pub fn summary_line(&self) -> String {
        let (outcome, lambda) = match self.outcome {
            Outcome::WitnessBoundFound { lambda } => ("WITNESS_BOUND_FOUND", lambda.to_string()),
            Outcome::NoBoundUpTo { .. } => ("NO_BOUND_UP_TO", "none".to_string()),
        };
        format!(
            "VERDICT outcome={outcome} λ={lambda} n_max={} λ_max={} mode={}",
            self.n_max, self.lambda_max, self.mode
        )
    }
}

struct Scan {
    structure: usize,
    witness: Option<Fragment>,
}

/// Searches for the least bound on witness sizes for the models of `phi` up
/// to `cfg.n_max`. In submodel mode a witness is a submodel satisfying
/// `phi`; in fragment mode it is a fragment that embeds in no structure up
/// to the ceiling where no submodel satisfies `phi`.
pub fn witness_bound_search(phi: &Formula, cfg: &ProbeConfig) -> Result<ProbeVerdict, ProbeError> {
    cfg.validate()?;
    let checker = ThetaChecker::new(phi, &cfg.signature)?;
    let structures = cfg.structures()?;
    let is_model = structures
        .par_iter()
        .map(|s| checker.holds_in(s))
        .collect::<Result<Vec<_>, _>>()?;
    let models: Vec<usize> = (0..structures.len()).filter(|&i| is_model[i]).collect();

    let (scans, fragments) = match cfg.mode {
        Mode::Submodel => (
            submodel_scan(&checker, &structures, &models, cfg.lambda_max)?,
            0,
        ),
        Mode::Fragment => fragment_scan(&checker, &structures, &models, cfg.lambda_max)?,
    };

    let size_of = |scan: &Scan| scan.witness.as_ref().map(Fragment::len);
    let worst = scans
        .iter()
        .map(size_of)
        .max_by_key(|w| w.map_or(usize::MAX, |k| k));
    let outcome = match worst {
        Some(None) => Outcome::NoBoundUpTo {
            n_max: cfg.n_max,
            lambda_max: cfg.lambda_max,
        },
        Some(Some(k)) => Outcome::WitnessBoundFound { lambda: k.max(1) },
        None => Outcome::WitnessBoundFound { lambda: 1 },
    };
    let refuted = match outcome {
        Outcome::WitnessBoundFound { lambda } => lambda - 1,
        Outcome::NoBoundUpTo { lambda_max, .. } => lambda_max,
    };

    let mut counterexamples: Vec<WitnessCounterexample> = Vec::new();
    for bound in 1..=refuted {
        let Some(scan) = scans
            .iter()
            .find(|sc| size_of(sc).is_none_or(|k| k > bound))
        else {
            continue;
        };
        let candidate = WitnessCounterexample {
            structure: structures[scan.structure].clone(),
            refutes: bound,
            smallest_witness: size_of(scan),
        };
        match counterexamples.last_mut() {
            Some(last) if last.structure == candidate.structure => last.refutes = bound,
            Some(last) if last.structure.size() == candidate.structure.size() => *last = candidate,
            _ => counterexamples.push(candidate),
        }
    }

    let extremal = match outcome {
        Outcome::WitnessBoundFound { .. } => scans
            .iter()
            .find(|sc| size_of(sc) == worst.flatten())
            .and_then(|sc| {
                sc.witness
                    .clone()
                    .map(|w| (structures[sc.structure].clone(), w))
            }),
        Outcome::NoBoundUpTo { .. } => None,
    };

    Ok(ProbeVerdict {
        outcome,
        mode: cfg.mode,
        n_max: cfg.n_max,
        lambda_max: cfg.lambda_max,
        structures: structures.len(),
        models: models.len(),
        fragments,
        counterexamples,
        extremal,
    })
}

fn submodel_scan(
    checker: &ThetaChecker,
    structures: &[Structure],
    models: &[usize],
    lambda_max: usize,
) -> Result<Vec<Scan>, ProbeError> {
    models
        .par_iter()
        .map(|&i| {
            let s = &structures[i];
            for carrier in enumerate_submodels(s, Some(lambda_max)) {
                if checker.holds_on(s, &carrier)? {
                    return Ok(Scan {
                        structure: i,
                        witness: Some(induced_fragment(s, &carrier)?),
                    });
                }
            }
            Ok(Scan {
                structure: i,
                witness: None,
            })
        })
        .collect()
}

fn fragment_scan(
    checker: &ThetaChecker,
    structures: &[Structure],
    models: &[usize],
    lambda_max: usize,
) -> Result<(Vec<Scan>, usize), ProbeError> {
    let theta = structures
        .par_iter()
        .map(|s| Ok(checker.theta(s)?.holds))
        .collect::<Result<Vec<_>, ProbeError>>()?;
    let bad: Vec<&Structure> = structures
        .iter()
        .zip(&theta)
        .filter(|(_, t)| !**t)
        .map(|(s, _)| s)
        .collect();

    // Candidate fragments of every model, by size then carrier.
    let per_model = models
        .par_iter()
        .map(|&i| {
            let s = &structures[i];
            let mut out = Vec::new();
            for k in 1..=lambda_max.min(s.size()) {
                for carrier in s.universe().combinations(k) {
                    let f = induced_fragment(s, &carrier)?;
                    out.push((f.canonical_key(), f));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, ProbeError>>()?;

    let mut distinct: BTreeMap<Vec<usize>, Fragment> = BTreeMap::new();
    for (key, f) in per_model.iter().flatten() {
        distinct.entry(key.clone()).or_insert_with(|| f.clone());
    }
    let keys: Vec<&Vec<usize>> = distinct.keys().collect();
    let verdicts = keys
        .par_iter()
        .map(|k| {
            let f = &distinct[*k];
            for t in &bad {
                if fragment_embeds(f, t)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<_>, ProbeError>>()?;
    let good: BTreeMap<&Vec<usize>, bool> = keys.into_iter().zip(verdicts).collect();

    let scans = models
        .iter()
        .zip(per_model)
        .map(|(&i, cands)| Scan {
            structure: i,
            witness: cands.into_iter().find(|(k, _)| good[k]).map(|(_, f)| f),
        })
        .collect();
    Ok((scans, distinct.len()))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::logic::parse_formula;
    use crate::structures::Signature;

    fn graph() -> Arc<Signature> {
        Arc::new(Signature::builder().predicate("R", 2).build().unwrap())
    }

    fn unar() -> Arc<Signature> {
        Arc::new(Signature::builder().function("F", 1).build().unwrap())
    }

    #[test]
    fn dominating_vertex_has_one_point_witness() {
        let sig = graph();
        let phi = parse_formula("exists x. forall y. R(x,y)", &sig).unwrap();
        let v = witness_bound_search(&phi, &ProbeConfig::new(sig, 3)).unwrap();
        assert_eq!(v.outcome, Outcome::WitnessBoundFound { lambda: 1 });
        assert!(v.counterexamples.is_empty());
        assert!(v
            .summary_line()
            .starts_with("VERDICT outcome=WITNESS_BOUND_FOUND λ=1 "));
    }

    #[test]
    fn successor_totality_has_no_bound() {
        let sig = graph();
        let phi = parse_formula("forall x. exists y. R(x,y)", &sig).unwrap();
        let v = witness_bound_search(&phi, &ProbeConfig::new(sig, 4).with_lambda_max(3)).unwrap();
        assert_eq!(
            v.outcome,
            Outcome::NoBoundUpTo {
                n_max: 4,
                lambda_max: 3
            }
        );
        let sizes: Vec<usize> = v
            .counterexamples
            .iter()
            .map(|c| c.structure.size())
            .collect();
        assert_eq!(sizes, vec![2, 3, 4]);
        for c in &v.counterexamples {
            assert_eq!(c.structure.relation_tuples(0).len(), c.structure.size());
        }
    }

    #[test]
    fn escaping_point_in_fragment_mode() {
        let sig = unar();
        let phi = parse_formula("exists x. F(x) != x", &sig).unwrap();
        let cfg = ProbeConfig::new(sig, 4).with_mode(Mode::Fragment);
        let v = witness_bound_search(&phi, &cfg).unwrap();
        assert_eq!(v.outcome, Outcome::WitnessBoundFound { lambda: 1 });
        let (_, w) = v.extremal.unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.escapes_count(), 1);
        let sub = witness_bound_search(&phi, &cfg.clone().with_mode(Mode::Submodel)).unwrap();
        assert_eq!(sub.outcome, Outcome::WitnessBoundFound { lambda: 4 });
        let cfg = cfg.with_mode(Mode::Submodel).with_lambda_max(3);
        let sub = witness_bound_search(&phi, &cfg).unwrap();
        assert_eq!(
            sub.outcome,
            Outcome::NoBoundUpTo {
                n_max: 4,
                lambda_max: 3
            }
        );
    }

    #[test]
    fn modes_agree_without_functions() {
        let sig = graph();
        for text in [
            "forall x. exists y. R(x,y)",
            "exists x. forall y. R(x,y)",
            "exists x y. R(x,y) & !R(y,x)",
        ] {
            let phi = parse_formula(text, &sig).unwrap();
            let cfg = ProbeConfig::new(sig.clone(), 3);
            let a = witness_bound_search(&phi, &cfg).unwrap();
            let b = witness_bound_search(&phi, &cfg.clone().with_mode(Mode::Fragment)).unwrap();
            assert_eq!(a.outcome, b.outcome, "{text}");
        }
    }
}
