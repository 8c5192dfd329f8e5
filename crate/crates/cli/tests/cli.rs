// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use submodel_core::structures::find_isomorphism;
use submodel_core::structures::format::parse_structure_file;
use submodel_core::Structure;

const LOOP_AND_POINT: &str = "\
signature
predicate R 2
end
structure k2
universe 2
R 0 0
end
";

const CHAIN: &str = "\
signature
predicate R 2
end
structure chain
universe 3
R 0 1
R 1 2
R 0 2
end
";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_submodel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn section<'a>(report: &'a str, title: &str) -> &'a str {
    let head = format!("== {title} ==\n");
    let start = report.find(&head).expect("section present") + head.len();
    let rest = &report[start..];
    rest[..rest.find("\n\n").unwrap_or(rest.len())].trim_end()
}

#[test]
fn theta_reports_the_loop_witness() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write(dir.path(), "k2.st", LOOP_AND_POINT);
    let o = run(&[
        "theta",
        "--structure",
        k2.to_str().unwrap(),
        "--formula",
        "exists x. forall y. R(x,y)",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("# tool: submodel"));
    assert!(
        section(&out, "result").starts_with("true, witness {0}"),
        "{out}"
    );
}

#[test]
fn existential_translation_of_dominating_vertex() {
    let o = run(&[
        "translate",
        "--to",
        "existential",
        "--lambda",
        "1",
        "--formula",
        "exists x. forall y. R(x,y)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(section(&stdout(&o), "sentence"), "exists x0. R(x0,x0)");
    let o = run(&["translate", "--to", "eso", "--formula", "exists x. R(x,x)"]);
    assert!(section(&stdout(&o), "sentence").starts_with("existsSet X."));
}

#[test]
fn witness_bound_probe_finds_the_cycle_family() {
    let o = run(&[
        "probe",
        "--check",
        "witness-bound",
        "--formula",
        "forall x. exists y. R(x,y)",
        "--n-max",
        "5",
        "--lambda-max",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.trim_end()
            .ends_with("VERDICT outcome=NO_BOUND_UP_TO λ=none n_max=5 λ_max=4 mode=SUBMODEL"),
        "{out}"
    );
    let file = parse_structure_file(section(&out, "counterexamples")).unwrap();
    let sizes: Vec<usize> = file.structures.iter().map(|s| s.structure.size()).collect();
    assert_eq!(sizes, vec![2, 3, 4, 5]);
    for s in &file.structures {
        let k = s.structure.size();
        let mut b = Structure::builder(&file.signature, k);
        for i in 0..k {
            b = b.tuple("R", &[i, (i + 1) % k]);
        }
        assert!(find_isomorphism(&s.structure, &b.build().unwrap())
            .unwrap()
            .is_some());
    }
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "probe",
        "--check",
        "equivalence",
        "--formula",
        "theta: forall x. exists y. R(x,y)",
        "--against",
        "exists x. R(x,x)",
        "--n-max",
        "3",
    ];
    let a = run(&args);
    let b = run(&args);
    let mut with_workers = vec!["--workers", "2"];
    with_workers.extend(args);
    let c = run(&with_workers);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn exit_codes_partition_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.st", CHAIN);
    let chain = chain.to_str().unwrap();
    assert_eq!(
        run(&[
            "eval",
            "--structure",
            chain,
            "--formula",
            "exists x. R(x,x)"
        ])
        .status
        .code(),
        Some(0)
    );
    let o = run(&["eval", "--structure", chain, "--formula", "exists x. R(x)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--formula:1:"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let bad = write(
        dir.path(),
        "bad.st",
        "signature\npredicate R 2\nend\nstructure a\nuniverse 2\nR 0 7\nend\n",
    );
    let o = run(&[
        "eval",
        "--structure",
        bad.to_str().unwrap(),
        "--formula",
        "true",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.st: line"), "{}", stderr(&o));
    let o = run(&["enumerate", "--signature", "graph", "--size", "6"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&[
        "probe",
        "--check",
        "extensions",
        "--formula",
        "forall x. exists y. R(x,y)",
        "--n-max",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "probe",
        "--check",
        "constants",
        "--constants",
        "1",
        "--formula",
        "c0 = c0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn inline_formula_wins_over_file() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.st", CHAIN);
    let f = write(dir.path(), "f.txt", "forall x. R(x,x)\n");
    let o = run(&[
        "eval",
        "--structure",
        chain.to_str().unwrap(),
        "--formula-file",
        f.to_str().unwrap(),
        "--formula",
        "true",
    ]);
    let out = stdout(&o);
    assert!(out.contains("# formula: true\n"));
    assert_eq!(section(&out, "result"), "true");
    let o = run(&[
        "eval",
        "--structure",
        chain.to_str().unwrap(),
        "--formula-file",
        f.to_str().unwrap(),
    ]);
    assert_eq!(section(&stdout(&o), "result"), "false");
}

#[test]
fn enumeration_output_is_a_structure_file() {
    let o = run(&[
        "enumerate",
        "--signature",
        "graph",
        "--size",
        "2",
        "--up-to-iso",
    ]);
    let file = parse_structure_file(&stdout(&o)).unwrap();
    assert_eq!(file.structures.len(), 10);
    let o = run(&["enumerate", "--signature", "unar", "--size", "2"]);
    assert_eq!(
        parse_structure_file(&stdout(&o)).unwrap().structures.len(),
        4
    );
}

#[test]
fn products_and_embeddings() {
    let dir = tempfile::tempdir().unwrap();
    let comps = write(
        dir.path(),
        "comps.st",
        "signature\npredicate R 2\nend\nstructure a\nuniverse 2\nR 0 1\nend\nstructure b\nuniverse 3\nR 1 2\nend\n",
    );
    let filter = write(dir.path(), "f.txt", "filter\n0 1\nend\n");
    let o = run(&[
        "product",
        "--structures",
        comps.to_str().unwrap(),
        "--filter",
        filter.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(section(&stdout(&o), "product").contains("classes: 6"));

    let chain = write(dir.path(), "chain.st", CHAIN);
    let o = run(&[
        "product",
        "--structures",
        chain.to_str().unwrap(),
        "--verify-embedding",
        "--cone-filter",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(section(&out, "embedding").ends_with("embedding verified"));
    assert!(out
        .trim_end()
        .ends_with("VERDICT outcome=EMBEDDING_VERIFIED"));
}

#[test]
fn demonstrations() {
    let o = run(&["probe", "--check", "wellfounded", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("disagreements: 0"));
    let o = run(&[
        "probe",
        "--check",
        "constants",
        "--constants",
        "3",
        "--formula",
        "c0 = c1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .trim_end()
        .ends_with("VERDICT outcome=SEPARATED k=3 distinguishing=c2"));
    let o = run(&[
        "probe",
        "--check",
        "witness-bound",
        "--mode",
        "fragment",
        "--signature",
        "unar",
        "--formula",
        "exists x. F(x) != x",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("λ=1 "));
}
