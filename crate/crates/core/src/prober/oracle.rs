// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;

use super::{ProbeConfig, ProbeError, Query};
use crate::structures::{enumerate_submodels, Elem, Structure};

#[derive(Debug, Clone)]
pub enum EquivalenceVerdict {
    Equal {
        n_max: usize,
        checked: usize,
    },
    /// The first structure, in enumeration order, on which the queries differ.
    Counterexample {
        structure: Structure,
        left: bool,
        right: bool,
        checked: usize,
    },
}

impl EquivalenceVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equal { .. })
    }
}

/// Compares two queries on every structure up to `cfg.n_max`.
pub fn equivalence_oracle(
    a: &Query,
    b: &Query,
    cfg: &ProbeConfig,
) -> Result<EquivalenceVerdict, ProbeError> {
    cfg.validate()?;
    let qa = a.compile(&cfg.signature)?;
    let qb = b.compile(&cfg.signature)?;
    let structures = cfg.structures()?;
    let values = structures
        .par_iter()
        .map(|s| Ok((qa.holds(s)?, qb.holds(s)?)))
        .collect::<Result<Vec<_>, ProbeError>>()?;
    Ok(match values.iter().position(|(l, r)| l != r) {
        Some(i) => EquivalenceVerdict::Counterexample {
            structure: structures[i].clone(),
            left: values[i].0,
            right: values[i].1,
            checked: i + 1,
        },
        None => EquivalenceVerdict::Equal {
            n_max: cfg.n_max,
            checked: structures.len(),
        },
    })
}

#[derive(Debug, Clone)]
pub enum PreservationVerdict {
    Preserved {
        n_max: usize,
        pairs: usize,
    },
    /// A submodel satisfying the query inside an extension that does not.
    Counterexample {
        extension: Structure,
        carrier: Vec<Elem>,
        substructure: Structure,
    },
}

impl PreservationVerdict {
    pub fn is_preserved(&self) -> bool {
        matches!(self, PreservationVerdict::Preserved { .. })
    }
}

/// Checks that whenever a proper submodel of a structure up to `cfg.n_max`
/// satisfies the query, so does the structure.
pub fn preservation_under_extensions(
    q: &Query,
    cfg: &ProbeConfig,
) -> Result<PreservationVerdict, ProbeError> {
    cfg.validate()?;
    let cq = q.compile(&cfg.signature)?;
    let structures = cfg.structures()?;
    let found = structures
        .par_iter()
        .map(
            |b| -> Result<(usize, Option<PreservationVerdict>), ProbeError> {
                let whole = cq.holds(b)?;
                let mut pairs = 0;
                for carrier in enumerate_submodels(b, Some(b.size() - 1)) {
                    pairs += 1;
                    if whole {
                        continue;
                    }
                    let sub = b.restrict(&carrier)?;
                    if cq.holds(&sub)? {
                        let v = PreservationVerdict::Counterexample {
                            extension: b.clone(),
                            carrier,
                            substructure: sub,
                        };
                        return Ok((pairs, Some(v)));
                    }
                }
                Ok((pairs, None))
            },
        )
        .collect::<Result<Vec<_>, _>>()?;
    let mut pairs = 0;
    for (p, v) in found {
        pairs += p;
        if let Some(v) = v {
            return Ok(v);
        }
    }
    Ok(PreservationVerdict::Preserved {
        n_max: cfg.n_max,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::structures::Signature;

    fn cfg(n: usize) -> ProbeConfig {
        ProbeConfig::new(
            Arc::new(Signature::builder().predicate("R", 2).build().unwrap()),
            n,
        )
    }

    #[test]
    fn theta_of_dominating_vertex_is_loop() {
        let c = cfg(3);
        let a = Query::parse("theta: exists x. forall y. R(x,y)", &c.signature).unwrap();
        let b = Query::parse("exists x. R(x,x)", &c.signature).unwrap();
        assert!(equivalence_oracle(&a, &b, &c).unwrap().is_equal());
    }

    #[test]
    fn sentence_and_negation_differ_at_once() {
        let c = cfg(3);
        let a = Query::parse("exists x. R(x,x)", &c.signature).unwrap();
        let b = Query::parse("!exists x. R(x,x)", &c.signature).unwrap();
        match equivalence_oracle(&a, &b, &c).unwrap() {
            EquivalenceVerdict::Counterexample {
                structure, checked, ..
            } => {
                assert_eq!(structure.size(), 1);
                assert_eq!(checked, 1);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn extensions() {
        let c = cfg(3);
        let theta = Query::parse("theta: exists x. forall y. R(x,y)", &c.signature).unwrap();
        assert!(preservation_under_extensions(&theta, &c)
            .unwrap()
            .is_preserved());
        let raw = Query::parse("forall x. exists y. R(x,y)", &c.signature).unwrap();
        match preservation_under_extensions(&raw, &c).unwrap() {
            PreservationVerdict::Counterexample {
                extension,
                substructure,
                ..
            } => {
                assert_eq!(extension.size(), 2);
                assert_eq!(substructure.size(), 1);
            }
            v => panic!("{v:?}"),
        }
        let top = Query::Sentence(crate::logic::Formula::True);
        assert!(preservation_under_extensions(&top, &c)
            .unwrap()
            .is_preserved());
    }
}
