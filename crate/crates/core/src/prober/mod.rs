// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! Brute-force probes over all structures up to a size ceiling: equivalence
//! of queries, preservation under extensions, bounds on witness sizes, and
//! two demonstrations of what θ can express that first-order logic cannot.
//!
//! Every verdict is relative to the ceiling; none is a proof about all
//! finite structures.

mod demos;
mod oracle;
mod witness;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::logic::{parse_formula, CompiledFormula, EvalError, Formula, ParseError};
use crate::structures::{
    iso_classes, Signature, Structure, StructureError, DEFAULT_ENUMERATION_CAP,
};
use crate::theta::{ThetaChecker, ThetaError};

pub use demos::{
    constant_blindness_demo, constant_signature, wellfoundedness_demo, ConstantBlindnessReport,
    WellfoundednessReport,
};
pub use oracle::{
    equivalence_oracle, preservation_under_extensions, EquivalenceVerdict, PreservationVerdict,
};
pub use witness::{witness_bound_search, Outcome, ProbeVerdict, WitnessCounterexample};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid query: {0}")]
    Query(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl ProbeError {
    /// Whether the failure is an enumeration or evaluation size limit.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            ProbeError::Structure(StructureError::CapExceeded { .. })
                | ProbeError::Theta(ThetaError::Structure(StructureError::CapExceeded { .. }))
                | ProbeError::Eval(EvalError::TooLarge { .. })
        )
    }
}

/// What counts as a witness in [`witness_bound_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// A submodel satisfying the sentence.
    Submodel,
    /// A fragment all of whose occurrences, in structures up to the
    /// ceiling, lie in structures with a submodel satisfying the sentence.
    Fragment,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Submodel => "SUBMODEL",
            Mode::Fragment => "FRAGMENT",
        })
    }
}

impl FromStr for Mode {
    type Err = ProbeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "submodel" => Ok(Mode::Submodel),
            "fragment" => Ok(Mode::Fragment),
            other => Err(ProbeError::Config(format!("unknown mode `{other}`"))),
        }
    }
}

/// Parameters shared by all probes.
#[derive(Debug, Clone)]
pub struct ProbeConfig {
    pub signature: Arc<Signature>,
    /// Largest structure size enumerated.
    pub n_max: usize,
    /// Largest witness size considered.
    pub lambda_max: usize,
    /// Cap on the size of generated submodels.
    pub nu: usize,
    pub mode: Mode,
    /// Enumeration cap passed to [`iso_classes`].
    pub cap: u64,
}

impl ProbeConfig {
    pub fn new(signature: Arc<Signature>, n_max: usize) -> Self {
        ProbeConfig {
            signature,
            n_max,
            lambda_max: n_max,
            nu: n_max,
            mode: Mode::Submodel,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    pub fn with_lambda_max(mut self, lambda_max: usize) -> Self {
        self.lambda_max = lambda_max;
        self.nu = self.nu.max(lambda_max);
        self
    }

    pub fn with_nu(mut self, nu: usize) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn validate(&self) -> Result<(), ProbeError> {
        if self.n_max == 0 {
            return Err(ProbeError::Config("n_max must be at least 1".into()));
        }
        if self.lambda_max == 0 || self.lambda_max > self.n_max {
            return Err(ProbeError::Config(format!(
                "λ_max = {} must lie between 1 and n_max = {}",
                self.lambda_max, self.n_max
            )));
        }
        if self.nu < self.lambda_max {
            return Err(ProbeError::Config(format!(
                "ν = {} must be at least λ_max = {}",
                self.nu, self.lambda_max
            )));
        }
        Ok(())
    }

    /// Isomorphism-class representatives of every size up to `n_max`, by
    /// size and then encoding.
    pub fn structures(&self) -> Result<Vec<Structure>, ProbeError> {
        Ok(small_structures(&self.signature, self.n_max, self.cap)?)
    }
}

/// Isomorphism-class representatives of sizes `1..=n_max`.
pub fn small_structures(
    sig: &Arc<Signature>,
    n_max: usize,
    cap: u64,
) -> Result<Vec<Structure>, StructureError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(iso_classes(sig, n, cap)?);
    }
    Ok(out)
}

/// A sentence, θ of a sentence, or θ≤λ of a sentence. The textual forms are
/// `φ`, `theta: φ` and `theta<=λ: φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Sentence(Formula),
    Theta(Formula),
    ThetaBounded(Formula, usize),
}

impl Query {
    pub fn parse(text: &str, sig: &Signature) -> Result<Self, ProbeError> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix("theta<=") {
            let (bound, body) = rest
                .split_once(':')
                .ok_or_else(|| ProbeError::Query("expected `:` after the bound".into()))?;
            let lambda = bound
                .trim()
                .parse()
                .map_err(|_| ProbeError::Query(format!("`{}` is not a bound", bound.trim())))?;
            return Ok(Query::ThetaBounded(parse_formula(body, sig)?, lambda));
        }
        if let Some(body) = t.strip_prefix("theta:") {
            return Ok(Query::Theta(parse_formula(body, sig)?));
        }
        Ok(Query::Sentence(parse_formula(t, sig)?))
    }

    pub fn formula(&self) -> &Formula {
        match self {
            Query::Sentence(f) | Query::Theta(f) | Query::ThetaBounded(f, _) => f,
        }
    }

    pub fn compile(&self, sig: &Arc<Signature>) -> Result<CompiledQuery, ProbeError> {
        Ok(match self {
            Query::Sentence(f) => {
                let c = CompiledFormula::compile(f, sig)?;
                if !c.is_sentence() {
                    return Err(ProbeError::Query(format!("`{f}` is not a sentence")));
                }
                CompiledQuery::Sentence(c)
            }
            Query::Theta(f) => CompiledQuery::Theta(ThetaChecker::new(f, sig)?),
            Query::ThetaBounded(f, lambda) => {
                crate::theta::check_bound(sig, *lambda)?;
                CompiledQuery::Bounded(ThetaChecker::new(f, sig)?, *lambda)
            }
        })
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Sentence(p) => write!(f, "{p}"),
            Query::Theta(p) => write!(f, "theta: {p}"),
            Query::ThetaBounded(p, l) => write!(f, "theta<={l}: {p}"),
        }
    }
}

/// A query ready for evaluation on many structures.
#[derive(Debug, Clone)]
pub enum CompiledQuery {
    Sentence(CompiledFormula),
    Theta(ThetaChecker),
    Bounded(ThetaChecker, usize),
}

impl CompiledQuery {
    pub fn holds(&self, s: &Structure) -> Result<bool, ProbeError> {
        Ok(match self {
            CompiledQuery::Sentence(c) => c.eval_sentence(s)?,
            CompiledQuery::Theta(t) => t.theta(s)?.holds,
            CompiledQuery::Bounded(t, l) => t.theta_bounded(s, *l)?.holds,
        })
    }
}
