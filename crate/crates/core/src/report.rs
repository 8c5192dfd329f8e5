// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! Plain-text reports. A report is a manifest header of `# key: value`
//! lines, titled sections, and an optional final summary line. Rendering
//! depends only on its contents, so equal inputs give byte-identical text.

use std::fmt::{self, Write as _};

use crate::prober::{
    ConstantBlindnessReport, EquivalenceVerdict, PreservationVerdict, ProbeVerdict, Query,
    WellfoundednessReport,
};
use crate::structures::format::write_file;
use crate::structures::Structure;

/// The parameters of a run, echoed at the top of its report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        Manifest {
            entries: vec![
                (
                    "tool".into(),
                    format!("submodel {}", env!("CARGO_PKG_VERSION")),
                ),
                ("command".into(), command.into()),
            ],
        }
    }

    pub fn entry(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        let value = value.to_string().replace('\n', " ");
        self.entries.push((key.into(), value));
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|(k, v)| format!("# {k}: {v}\n"))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    manifest: Manifest,
    sections: Vec<(String, String)>,
    summary: Option<String>,
}

impl Report {
    pub fn new(manifest: Manifest) -> Self {
        Report {
            manifest,
            sections: Vec::new(),
            summary: None,
        }
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn section(&mut self, title: &str, body: impl Into<String>) -> &mut Self {
        let mut body = body.into();
        if !body.is_empty() && !body.ends_with('\n') {
            body.push('\n');
        }
        self.sections.push((title.into(), body));
        self
    }

    pub fn summary(&mut self, line: impl Into<String>) -> &mut Self {
        self.summary = Some(line.into());
        self
    }

    pub fn render(&self) -> String {
        let mut out = self.manifest.render();
        for (title, body) in &self.sections {
            let _ = write!(out, "\n== {title} ==\n{body}");
        }
        if let Some(s) = &self.summary {
            let _ = write!(out, "\n{s}\n");
        }
        out
    }
}

/// A structure file holding `items`, or an empty string for none.
pub fn structures_block(items: &[(String, &Structure)]) -> String {
    match items.first() {
        None => String::new(),
        Some((_, s)) => write_file(s.signature(), items.iter().map(|(n, s)| (n.as_str(), *s))),
    }
}

/// Adds sections and the summary line for an equivalence check.
pub fn equivalence_report(
    report: &mut Report,
    left: &Query,
    right: &Query,
    v: &EquivalenceVerdict,
) {
    let mut body = format!("left: {left}\nright: {right}\n");
    match v {
        EquivalenceVerdict::Equal { n_max, checked } => {
            let _ = writeln!(
                body,
                "equal on all {checked} structures up to isomorphism with at most {n_max} elements"
            );
            report.section("verdict", body);
            report.summary(format!(
                "VERDICT outcome=EQUAL n_max={n_max} checked={checked}"
            ));
        }
        EquivalenceVerdict::Counterexample {
            structure,
            left,
            right,
            checked,
        } => {
            let _ = writeln!(
                body,
                "differ after {checked} structures: left {left}, right {right}"
            );
            report.section("verdict", body);
            report.section(
                "counterexamples",
                structures_block(&[("counterexample".into(), structure)]),
            );
            report.summary(format!(
                "VERDICT outcome=COUNTEREXAMPLE size={} left={left} right={right}",
                structure.size()
            ));
        }
    }
}

/// Adds sections and the summary line for a preservation check.
pub fn preservation_report(report: &mut Report, q: &Query, v: &PreservationVerdict) {
    let mut body = format!("query: {q}\n");
    match v {
        PreservationVerdict::Preserved { n_max, pairs } => {
            let _ = writeln!(
                body,
                "preserved across {pairs} proper submodel pairs up to {n_max} elements"
            );
            report.section("verdict", body);
            report.summary(format!(
                "VERDICT outcome=PRESERVED n_max={n_max} pairs={pairs}"
            ));
        }
        PreservationVerdict::Counterexample {
            extension,
            carrier,
            substructure,
        } => {
            let _ = writeln!(
                body,
                "the submodel on {} satisfies the query; the extension does not",
                set(carrier)
            );
            report.section("verdict", body);
            report.section(
                "counterexamples",
                structures_block(&[
                    ("extension".into(), extension),
                    ("submodel".into(), substructure),
                ]),
            );
            report.summary(format!(
                "VERDICT outcome=COUNTEREXAMPLE extension_size={} submodel_size={}",
                extension.size(),
                substructure.size()
            ));
        }
    }
}

/// Adds sections and the summary line for a witness-bound search.
pub fn witness_report(report: &mut Report, v: &ProbeVerdict) {
    let mut body = String::new();
    match v.bound() {
        Some(l) => {
            let _ = writeln!(
                body,
                "every model with at most {} elements has a witness of size at most {l}",
                v.n_max
            );
        }
        None => {
            let _ = writeln!(
                body,
                "some model with at most {} elements has no witness of size at most {}",
                v.n_max, v.lambda_max
            );
        }
    }
    let _ = writeln!(
        body,
        "relative to structures with at most {} elements",
        v.n_max
    );
    let _ = writeln!(body, "structures: {}\nmodels: {}", v.structures, v.models);
    if v.fragments > 0 {
        let _ = writeln!(body, "fragments: {}", v.fragments);
    }
    report.section("verdict", body);
    if let Some((s, w)) = &v.extremal {
        let mut text = format!("witness {}\n", w.describe().replace('\n', "\n  "));
        text.push_str(&structures_block(&[("extremal".into(), s)]));
        report.section("witness", text);
    }
    if !v.counterexamples.is_empty() {
        let mut text = String::new();
        for c in &v.counterexamples {
            let w = c
                .smallest_witness
                .map_or_else(|| format!(">{}", v.lambda_max), |k| k.to_string());
            let _ = writeln!(text, "# refutes λ={} smallest witness {w}", c.refutes);
        }
        let names: Vec<(String, &Structure)> = v
            .counterexamples
            .iter()
            .map(|c| (format!("refutes{}", c.refutes), &c.structure))
            .collect();
        text.push_str(&structures_block(&names));
        report.section("counterexamples", text);
    }
    report.summary(v.summary_line());
}

/// Adds sections and the summary line for the well-foundedness demo.
pub fn wellfoundedness_sections(report: &mut Report, r: &WellfoundednessReport) {
    let body = format!(
        "sentence: {}\nstructures: {}\ncyclic: {}\nagreements: {}\ndisagreements: {}\n",
        r.sentence,
        r.structures,
        r.cyclic,
        r.agreements,
        r.disagreements.len()
    );
    report.section("verdict", body);
    if !r.disagreements.is_empty() {
        let names: Vec<(String, &Structure)> = r
            .disagreements
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("d{i}"), s))
            .collect();
        report.section("counterexamples", structures_block(&names));
    }
    let outcome = if r.passed() {
        "AGREE"
    } else {
        "COUNTEREXAMPLE"
    };
    report.summary(format!(
        "VERDICT outcome={outcome} n_max={} structures={}",
        r.n_max, r.structures
    ));
}

/// Adds sections and the summary line for the constant-blindness demo.
pub fn constant_blindness_sections(report: &mut Report, r: &ConstantBlindnessReport) {
    let body = format!(
        "psi: {}\ndistinguishing constant: {}\npsi in collapsed: {}\npsi in split: {}\n\
         theta(forall x. forall y. x = y) in collapsed: {}\ntheta(forall x. forall y. x = y) in split: {}\n",
        r.psi, r.distinguishing, r.psi_collapsed, r.psi_split, r.theta_collapsed, r.theta_split
    );
    report.section("verdict", body);
    report.section(
        "structures",
        structures_block(&[
            ("collapsed".into(), &r.collapsed),
            ("split".into(), &r.split),
        ]),
    );
    let outcome = if r.passed() {
        "SEPARATED"
    } else {
        "NOT_SEPARATED"
    };
    report.summary(format!(
        "VERDICT outcome={outcome} k={} distinguishing={}",
        r.k, r.distinguishing
    ));
}

fn set(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let mut r = Report::new(
            Manifest::new("probe")
                .entry("n_max", 3)
                .entry("formula", "a\nb"),
        );
        r.section("verdict", "fine").summary("VERDICT ok");
        let text = r.render();
        let version = env!("CARGO_PKG_VERSION");
        assert_eq!(
            text,
            format!("# tool: submodel {version}\n# command: probe\n# n_max: 3\n# formula: a b\n\n== verdict ==\nfine\n\nVERDICT ok\n")
        );
    }
}
