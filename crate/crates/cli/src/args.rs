// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Finite-model-theory workbench for the submodel operator θ.
///
/// Exit status: 0 success, 1 a probe or verification found a counterexample,
/// 2 invalid input, 3 an enumeration or evaluation cap was exceeded.
#[derive(Debug, Parser)]
#[command(name = "submodel", version)]
pub struct Cli {
    /// Worker threads for parallel sweeps (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a sentence in a structure.
    Eval(EvalArgs),
    /// Decide θ(φ) or θ≤λ(φ) in a structure and report a witness.
    Theta(ThetaArgs),
    /// Translate θ(φ) into monadic ∃SO or θ≤λ(φ) into an existential sentence.
    Translate(TranslateArgs),
    /// Build a reduced product, optionally verifying the canonical embedding.
    Product(ProductArgs),
    /// Run a brute-force probe over all small structures.
    Probe(ProbeArgs),
    /// List the structures of a given size.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
pub struct FormulaSource {
    /// Formula text; takes precedence over --formula-file.
    #[arg(long)]
    pub formula: Option<String>,
    /// File holding the formula.
    #[arg(long, value_name = "PATH")]
    pub formula_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StructureSource {
    /// Structure file.
    #[arg(long, value_name = "PATH")]
    pub structure: PathBuf,
    /// Name of the structure within the file (default: the first).
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub structure: StructureSource,
    #[command(flatten)]
    pub formula: FormulaSource,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[command(flatten)]
    pub structure: StructureSource,
    #[command(flatten)]
    pub formula: FormulaSource,
    /// Bound on the number of generators.
    #[arg(long)]
    pub lambda: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Eso,
    Existential,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    #[command(flatten)]
    pub formula: FormulaSource,
    /// Signature file, or one of graph, unar, pointed-unar, coloured-unar,
    /// two-constants (default: inferred from the formula).
    #[arg(long)]
    pub signature: Option<String>,
    #[arg(long, value_enum)]
    pub to: Target,
    #[arg(long, default_value_t = 1)]
    pub lambda: usize,
    /// Size cap on generated submodels for signatures with functions or
    /// constants.
    #[arg(long, default_value_t = 4)]
    pub nu: usize,
    #[arg(long, default_value_t = submodel_core::structures::DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    /// Structure file holding the components, or the parent first.
    #[arg(long, value_name = "PATH")]
    pub structures: PathBuf,
    /// Ideal file over the parent's universe (default: the power set).
    #[arg(long, value_name = "PATH")]
    pub ideal: Option<PathBuf>,
    /// Filter file; rows list index positions.
    #[arg(long, value_name = "PATH", conflicts_with = "cone_filter")]
    pub filter: Option<PathBuf>,
    /// Use the upper cone filter of the ideal.
    #[arg(long)]
    pub cone_filter: bool,
    /// Treat the first structure (or --parent) as a parent, use its generated
    /// submodels as components, and verify the canonical embedding.
    #[arg(long)]
    pub verify_embedding: bool,
    /// Name of the parent structure.
    #[arg(long)]
    pub parent: Option<String>,
    #[arg(long, default_value_t = submodel_core::products::DEFAULT_PRODUCT_CAP)]
    pub cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Equivalence,
    Extensions,
    WitnessBound,
    Wellfounded,
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Submodel,
    Fragment,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    /// The query; `theta: φ` and `theta<=L: φ` select θ and θ≤λ.
    #[command(flatten)]
    pub formula: FormulaSource,
    /// Second query for the equivalence check.
    #[arg(long)]
    pub against: Option<String>,
    /// Signature file or family name (default: inferred from the formulas).
    #[arg(long)]
    pub signature: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Defaults to n-max.
    #[arg(long)]
    pub lambda_max: Option<usize>,
    /// Defaults to lambda-max.
    #[arg(long)]
    pub nu: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Submodel)]
    pub mode: ModeArg,
    /// Number of constants for the constants check.
    #[arg(long, default_value_t = 3)]
    pub constants: usize,
    #[arg(long, default_value_t = submodel_core::structures::DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Signature file or family name.
    #[arg(long)]
    pub signature: String,
    #[arg(long)]
    pub size: usize,
    /// One representative per isomorphism class.
    #[arg(long)]
    pub up_to_iso: bool,
    #[arg(long, default_value_t = submodel_core::structures::DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
}
