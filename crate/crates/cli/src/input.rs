// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use submodel_core::corpus::family_signature;
use submodel_core::logic::{parse_formula, parse_formula_infer, EvalError, Formula};
use submodel_core::prober::ProbeError;
use submodel_core::products::ProductError;
use submodel_core::structures::format::{parse_signature, parse_structure_file, StructureFile};
use submodel_core::theta::ThetaError;
use submodel_core::{Signature, Structure, StructureError};

use crate::args::{FormulaSource, StructureSource};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

fn classify(msg: String, cap: bool) -> CliError {
    if cap {
        CliError::Cap(msg)
    } else {
        CliError::Input(msg)
    }
}

fn structure_cap(e: &StructureError) -> bool {
    matches!(e, StructureError::CapExceeded { .. })
}

fn eval_cap(e: &EvalError) -> bool {
    matches!(e, EvalError::TooLarge { .. })
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        classify(e.to_string(), structure_cap(&e))
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        classify(e.to_string(), eval_cap(&e))
    }
}

impl From<ThetaError> for CliError {
    fn from(e: ThetaError) -> Self {
        let cap = match &e {
            ThetaError::Structure(s) => structure_cap(s),
            ThetaError::Eval(v) => eval_cap(v),
            _ => false,
        };
        classify(e.to_string(), cap)
    }
}

impl From<ProductError> for CliError {
    fn from(e: ProductError) -> Self {
        let cap = match &e {
            ProductError::CapExceeded { .. } => true,
            ProductError::Structure(s) => structure_cap(s),
            _ => false,
        };
        classify(e.to_string(), cap)
    }
}

impl From<ProbeError> for CliError {
    fn from(e: ProbeError) -> Self {
        classify(e.to_string(), e.is_cap())
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// The formula text and a label naming where it came from.
pub fn formula_text(src: &FormulaSource) -> Result<(String, String), CliError> {
    match (&src.formula, &src.formula_file) {
        (Some(text), _) => Ok((text.clone(), "--formula".into())),
        (None, Some(path)) => Ok((read(path)?.trim().to_string(), path.display().to_string())),
        (None, None) => Err(CliError::input(
            "a formula is required (--formula or --formula-file)",
        )),
    }
}

pub fn parse_with(text: &str, label: &str, sig: &Signature) -> Result<Formula, CliError> {
    parse_formula(text, sig).map_err(|e| CliError::input(format!("{label}:{e}")))
}

pub fn parse_inferring(text: &str, label: &str) -> Result<(Formula, Arc<Signature>), CliError> {
    parse_formula_infer(text)
        .map(|(f, s)| (f, Arc::new(s)))
        .map_err(|e| CliError::input(format!("{label}:{e}")))
}

/// A signature from a file, or a built-in family name.
pub fn signature(source: &str) -> Result<Arc<Signature>, CliError> {
    let path = Path::new(source);
    if !path.exists() {
        if let Some(sig) = family_signature(source) {
            return Ok(sig);
        }
    }
    let text = read(path)?;
    parse_signature(&text).map_err(|e| CliError::input(format!("{source}: {e}")))
}

pub fn structure_file(path: &Path) -> Result<StructureFile, CliError> {
    let text = read(path)?;
    parse_structure_file(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// The named structure, or the first one in the file.
pub fn structure(src: &StructureSource) -> Result<(String, Structure), CliError> {
    let file = structure_file(&src.structure)?;
    let found = match &src.name {
        Some(n) => file.structures.iter().find(|s| &s.name == n),
        None => file.structures.first(),
    };
    found
        .map(|s| (s.name.clone(), s.structure.clone()))
        .ok_or_else(|| {
            CliError::input(format!(
                "{}: no structure{}",
                src.structure.display(),
                src.name
                    .as_ref()
                    .map(|n| format!(" named `{n}`"))
                    .unwrap_or_default()
            ))
        })
}
