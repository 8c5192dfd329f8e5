// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::sync::Arc;

use clap::ValueEnum;

use submodel_core::logic::{render_formula, Assignment, CompiledFormula};
use submodel_core::prober::{
    constant_blindness_demo, constant_signature, equivalence_oracle, preservation_under_extensions,
    wellfoundedness_demo, witness_bound_search, EquivalenceVerdict, Mode, ProbeConfig, Query,
};
use submodel_core::products::{
    canonical_embedding, parse_filter, parse_ideal, reduced_product, upper_cone_filter,
    CoherentSystem, IndexFilter, IndexIdeal,
};
use submodel_core::report::{
    constant_blindness_sections, equivalence_report, preservation_report, structures_block,
    wellfoundedness_sections, witness_report, Manifest, Report,
};
use submodel_core::structures::format::{write_file, write_structure};
use submodel_core::structures::{enumerate_structures, iso_classes};
use submodel_core::theta::{
    theta_bounded_to_existential_functional, theta_bounded_to_existential_predicate, theta_to_eso,
    ThetaChecker,
};
use submodel_core::{Signature, Structure};

use crate::args::{
    Check, EnumerateArgs, EvalArgs, ModeArg, ProbeArgs, ProductArgs, Target, ThetaArgs,
    TranslateArgs,
};
use crate::input::{self, CliError};

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

/// A rendered report and the exit status it carries.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn set(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn eval(args: &EvalArgs) -> Result<Output, CliError> {
    let (name, s) = input::structure(&args.structure)?;
    let (text, label) = input::formula_text(&args.formula)?;
    let phi = input::parse_with(&text, &label, s.signature())?;
    let compiled = CompiledFormula::compile(&phi, s.signature_arc())?;
    if !compiled.is_sentence() {
        return Err(CliError::input(format!(
            "{label}: `{phi}` is not a sentence"
        )));
    }
    let value = if compiled.has_set_prefix() {
        compiled.eval_sentence(&s)?
    } else {
        compiled.eval(&s, &Assignment::default())?
    };
    let mut r = Report::new(
        Manifest::new("eval")
            .entry("structure", args.structure.structure.display())
            .entry("name", &name)
            .entry("formula", render_formula(&phi)),
    );
    r.section("result", value.to_string());
    Ok(Output::ok(r.render()))
}

pub fn theta(args: &ThetaArgs) -> Result<Output, CliError> {
    let (name, s) = input::structure(&args.structure)?;
    let (text, label) = input::formula_text(&args.formula)?;
    let phi = input::parse_with(&text, &label, s.signature())?;
    let checker = ThetaChecker::new(&phi, s.signature_arc())?;
    let mut manifest = Manifest::new("theta")
        .entry("structure", args.structure.structure.display())
        .entry("name", &name)
        .entry("formula", render_formula(&phi));
    let report = match args.lambda {
        Some(l) => {
            manifest.push("lambda", l);
            checker.theta_bounded(&s, l)?
        }
        None => checker.theta(&s)?,
    };
    let mut body = match &report.witness {
        Some(w) => format!("true, witness {}\n", set(w)),
        None => "false\n".to_string(),
    };
    let _ = writeln!(body, "submodels inspected: {}", report.inspected);
    let mut r = Report::new(manifest);
    r.section("result", body);
    Ok(Output::ok(r.render()))
}

pub fn translate(args: &TranslateArgs) -> Result<Output, CliError> {
    let (text, label) = input::formula_text(&args.formula)?;
    let (phi, sig) = match &args.signature {
        Some(source) => {
            let sig = input::signature(source)?;
            (input::parse_with(&text, &label, &sig)?, sig)
        }
        None => input::parse_inferring(&text, &label)?,
    };
    let mut manifest = Manifest::new("translate")
        .entry("formula", render_formula(&phi))
        .entry("signature", args.signature.as_deref().unwrap_or("inferred"))
        .entry("to", value_name(args.to));
    let mut r;
    match args.to {
        Target::Eso => {
            let eso = theta_to_eso(&phi, &sig)?;
            r = Report::new(manifest);
            r.section("sentence", render_formula(&eso));
            r.section(
                "completeness",
                "complete: true (equivalent on every finite structure)",
            );
        }
        Target::Existential if sig.is_predicate_only() && !phi.uses_functional_symbols() => {
            manifest.push("lambda", args.lambda);
            let t = theta_bounded_to_existential_predicate(&phi, &sig, args.lambda)?;
            r = Report::new(manifest);
            r.section("sentence", render_formula(&t));
            r.section(
                "completeness",
                "complete: true (equivalent on every finite structure)",
            );
        }
        Target::Existential => {
            manifest.push("lambda", args.lambda);
            manifest.push("nu", args.nu);
            manifest.push("cap", args.cap);
            let tr = theta_bounded_to_existential_functional(
                &phi,
                &sig,
                args.lambda,
                args.nu,
                args.cap,
            )?;
            r = Report::new(manifest);
            r.section("sentence", render_formula(&tr.sentence));
            r.section(
                "completeness",
                format!(
                    "complete: conditional (exact on structures whose submodels generated by at most {} elements \
                     have at most {} elements; sound everywhere)\ndisjuncts: {}",
                    args.lambda,
                    args.nu,
                    tr.disjuncts()
                ),
            );
        }
    }
    Ok(Output::ok(r.render()))
}

fn filter_file(path: &std::path::Path, index_count: usize) -> Result<IndexFilter, CliError> {
    let text = input::read(path)?;
    parse_filter(&text, index_count)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn product_section(r: &mut Report, components: usize, core: &[usize], p: &Structure) {
    r.section(
        "product",
        format!(
            "components: {components}\ncore: {}\nclasses: {}",
            set(core),
            p.size()
        ),
    );
}

pub fn product(args: &ProductArgs) -> Result<Output, CliError> {
    let file = input::structure_file(&args.structures)?;
    let mut manifest = Manifest::new("product").entry("structures", args.structures.display());
    if let Some(p) = &args.ideal {
        manifest.push("ideal", p.display());
    }
    match &args.filter {
        Some(p) => manifest.push("filter", p.display()),
        None => manifest.push("filter", "upper cone"),
    }
    manifest.push("cap", args.cap);

    if !args.verify_embedding && args.parent.is_none() {
        let Some(path) = &args.filter else {
            return Err(CliError::input(
                "without a parent, a --filter over the components is required",
            ));
        };
        let components: Vec<Structure> = file
            .structures
            .iter()
            .map(|s| s.structure.clone())
            .collect();
        let p = reduced_product(&components, &filter_file(path, components.len())?, args.cap)?;
        let mut r = Report::new(manifest);
        product_section(&mut r, components.len(), p.core(), p.structure());
        r.section(
            "structure",
            structures_block(&[("product".into(), p.structure())]),
        );
        return Ok(Output::ok(r.render()));
    }

    let parent = match &args.parent {
        Some(n) => file.get(n).ok_or_else(|| {
            CliError::input(format!(
                "{}: no structure named `{n}`",
                args.structures.display()
            ))
        })?,
        None => {
            &file
                .structures
                .first()
                .ok_or_else(|| CliError::input("the structure file is empty"))?
                .structure
        }
    };
    manifest.push("parent", args.parent.as_deref().unwrap_or("first"));
    manifest.push("verify_embedding", args.verify_embedding);
    let ideal = match &args.ideal {
        Some(path) => {
            let text = input::read(path)?;
            parse_ideal(&text, parent.size())
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?
        }
        None => IndexIdeal::power_set(parent.size()),
    };
    let sys = CoherentSystem::generated(parent, &ideal)?;
    let filter = match &args.filter {
        Some(path) => filter_file(path, ideal.len())?,
        None => upper_cone_filter(&ideal)?,
    };
    let mut r = Report::new(manifest);
    if !args.verify_embedding {
        let p = reduced_product(sys.components(), &filter, args.cap)?;
        product_section(&mut r, ideal.len(), p.core(), p.structure());
        r.section(
            "structure",
            structures_block(&[("product".into(), p.structure())]),
        );
        return Ok(Output::ok(r.render()));
    }
    let e = canonical_embedding(&sys, &filter, None, args.cap)?;
    let p = e.product.structure();
    product_section(&mut r, ideal.len(), e.product.core(), p);
    r.section("embedding", e.to_string());
    r.section("structure", write_structure("product", p));
    let passed = e.passed();
    r.summary(format!(
        "VERDICT outcome={}",
        if passed {
            "EMBEDDING_VERIFIED"
        } else {
            "EMBEDDING_FAILED"
        }
    ));
    Ok(Output {
        text: r.render(),
        code: if passed { 0 } else { 1 },
    })
}

/// The sentence of a query, without any `theta:` or `theta<=L:` prefix.
fn query_body(text: &str) -> &str {
    let t = text.trim();
    if t.starts_with("theta:") || t.starts_with("theta<=") {
        t.split_once(':').map_or(t, |(_, body)| body)
    } else {
        t
    }
}

pub fn probe(args: &ProbeArgs) -> Result<Output, CliError> {
    let mut manifest = Manifest::new("probe").entry("check", value_name(args.check));
    let lambda_max = args.lambda_max.unwrap_or(args.n_max);
    let nu = args.nu.unwrap_or(lambda_max);
    let mode = match args.mode {
        ModeArg::Submodel => Mode::Submodel,
        ModeArg::Fragment => Mode::Fragment,
    };
    let config = |sig: Arc<Signature>| {
        ProbeConfig::new(sig, args.n_max)
            .with_lambda_max(lambda_max)
            .with_nu(nu)
            .with_mode(mode)
            .with_cap(args.cap)
    };
    let sized = |m: &mut Manifest| {
        m.push("n_max", args.n_max);
        m.push("cap", args.cap);
    };

    let mut r;
    let code;
    match args.check {
        Check::Constants => {
            let sig = constant_signature(args.constants);
            let (text, label) = match (&args.formula.formula, &args.formula.formula_file) {
                (None, None) => ("true".to_string(), "--formula".to_string()),
                _ => input::formula_text(&args.formula)?,
            };
            let psi = input::parse_with(&text, &label, &sig)?;
            manifest.push("constants", args.constants);
            manifest.push("formula", render_formula(&psi));
            let rep = constant_blindness_demo(args.constants, &psi)?;
            r = Report::new(manifest);
            constant_blindness_sections(&mut r, &rep);
            code = u8::from(!rep.passed());
        }
        Check::Wellfounded => {
            let sig = match &args.signature {
                Some(source) => input::signature(source)?,
                None => submodel_core::corpus::graph_signature(),
            };
            manifest.push("signature", args.signature.as_deref().unwrap_or("graph"));
            sized(&mut manifest);
            let rep = wellfoundedness_demo(&config(sig))?;
            r = Report::new(manifest);
            wellfoundedness_sections(&mut r, &rep);
            code = u8::from(!rep.passed());
        }
        Check::Equivalence | Check::Extensions | Check::WitnessBound => {
            let (text, label) = input::formula_text(&args.formula)?;
            let against = if args.check == Check::Equivalence {
                Some(
                    args.against
                        .clone()
                        .ok_or_else(|| CliError::input("the equivalence check needs --against"))?,
                )
            } else {
                None
            };
            let sig = match &args.signature {
                Some(source) => input::signature(source)?,
                None => {
                    let combined = match &against {
                        Some(b) => format!("({}) & ({})", query_body(&text), query_body(b)),
                        None => query_body(&text).to_string(),
                    };
                    input::parse_inferring(&combined, &label)?.1
                }
            };
            let query = |t: &str, l: &str| {
                Query::parse(t, &sig).map_err(|e| CliError::input(format!("{l}:{e}")))
            };
            let q = query(&text, &label)?;
            manifest.push("signature", args.signature.as_deref().unwrap_or("inferred"));
            manifest.push("formula", &q);
            match args.check {
                Check::Equivalence => {
                    let b = query(against.as_deref().unwrap_or_default(), "--against")?;
                    manifest.push("against", &b);
                    sized(&mut manifest);
                    let v = equivalence_oracle(&q, &b, &config(sig.clone()))?;
                    r = Report::new(manifest);
                    equivalence_report(&mut r, &q, &b, &v);
                    code = u8::from(matches!(v, EquivalenceVerdict::Counterexample { .. }));
                }
                Check::Extensions => {
                    sized(&mut manifest);
                    let v = preservation_under_extensions(&q, &config(sig.clone()))?;
                    r = Report::new(manifest);
                    preservation_report(&mut r, &q, &v);
                    code = u8::from(!v.is_preserved());
                }
                _ => {
                    let Query::Sentence(phi) = &q else {
                        return Err(CliError::input(format!(
                            "{label}: the witness-bound check takes a plain sentence"
                        )));
                    };
                    sized(&mut manifest);
                    manifest.push("lambda_max", lambda_max);
                    manifest.push("nu", nu);
                    manifest.push("mode", mode);
                    let v = witness_bound_search(phi, &config(sig.clone()))?;
                    r = Report::new(manifest);
                    witness_report(&mut r, &v);
                    code = u8::from(v.bound().is_none());
                }
            }
        }
    }
    Ok(Output {
        text: r.render(),
        code,
    })
}

pub fn enumerate(args: &EnumerateArgs) -> Result<Output, CliError> {
    let sig = input::signature(&args.signature)?;
    let structures: Vec<Structure> = if args.up_to_iso {
        iso_classes(&sig, args.size, args.cap)?
    } else {
        enumerate_structures(&sig, args.size, false, args.cap)?.collect()
    };
    let manifest = Manifest::new("enumerate")
        .entry("signature", &args.signature)
        .entry("size", args.size)
        .entry("up_to_iso", args.up_to_iso)
        .entry("cap", args.cap)
        .entry("count", structures.len());
    let names: Vec<String> = (0..structures.len()).map(|i| format!("s{i}")).collect();
    let mut text = manifest.render();
    text.push_str(&write_file(
        &sig,
        names.iter().map(String::as_str).zip(&structures),
    ));
    Ok(Output::ok(text))
}
