// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! Worked examples across the public API, each checked against the
//! independent oracles in `common`.

mod common;

use std::sync::Arc;

use submodel_core::corpus::{graph_signature, unar_signature};
use submodel_core::logic::{
    evaluate_eso, evaluate_fo, parse_formula, relativize_to_set_variable, relativize_to_variables,
    render_formula, Assignment, Formula, ParseErrorKind,
};
use submodel_core::prober::{
    equivalence_oracle, preservation_under_extensions, witness_bound_search, EquivalenceVerdict,
    Mode, Outcome, ProbeConfig, Query,
};
use submodel_core::products::{
    canonical_embedding, coherence_check, reduced_product, upper_cone_filter, validate_filter,
    validate_ideal, CoherentSystem, FilterViolation, IdealViolation, IndexFilter, IndexIdeal,
    DEFAULT_PRODUCT_CAP,
};
use submodel_core::structures::{
    closure, enumerate_submodels, find_isomorphism, fragment_occurs, induced_fragment,
    validate_structure, Fragment, RawStructure, Slot,
};
use submodel_core::theta::{
    theta_bounded_semantic, theta_bounded_to_existential_functional,
    theta_bounded_to_existential_predicate, theta_semantic, theta_to_eso,
};
use submodel_core::{Signature, Structure};

fn cycle_unar(n: usize, step: usize) -> Structure {
    Structure::builder(&unar_signature(), n)
        .function_fn("F", |t| (t[0] + step) % n)
        .build()
        .unwrap()
}

fn digraph(n: usize, edges: &[&[usize]]) -> Structure {
    Structure::builder(&graph_signature(), n)
        .tuples("R", edges)
        .build()
        .unwrap()
}

fn loop_and_point() -> Structure {
    digraph(2, &[&[0, 0]])
}

fn c3() -> Structure {
    digraph(3, &[&[0, 1], &[1, 2], &[2, 0]])
}

fn parse(text: &str, sig: &Signature) -> Formula {
    parse_formula(text, sig).unwrap()
}

#[test]
fn structure_validation_messages() {
    let sig = unar_signature();
    let mut raw = RawStructure::new(&sig, 4);
    for a in 0..4 {
        raw.functions[0].push((vec![a], (a + 1) % 4));
    }
    assert!(validate_structure(&sig, &raw).is_empty());
    raw.functions[0].retain(|(args, _)| args != &[2]);
    let msgs: Vec<String> = validate_structure(&sig, &raw)
        .iter()
        .map(|v| v.to_string())
        .collect();
    assert_eq!(msgs.len(), 1);
    assert!(msgs[0].contains("F") && msgs[0].contains('2'), "{msgs:?}");

    let graph = graph_signature();
    let mut raw = RawStructure::new(&graph, 4);
    raw.relations[0].push(vec![0, 5]);
    let msgs: Vec<String> = validate_structure(&graph, &raw)
        .iter()
        .map(|v| v.to_string())
        .collect();
    assert!(
        msgs.iter()
            .any(|m| m.contains("R") && m.contains("out of range")),
        "{msgs:?}"
    );
}

#[test]
fn induced_fragments_record_escapes() {
    let z4 = cycle_unar(4, 1);
    let f = induced_fragment(&z4, &[0]).unwrap();
    assert_eq!(f.slot(0, &[0]).unwrap(), Slot::Escapes);
    assert_eq!(f.escapes_count(), 1);

    let fixed = Structure::builder(&unar_signature(), 4)
        .unary("F", &[1, 2, 3, 3])
        .build()
        .unwrap();
    let f = induced_fragment(&fixed, &[3]).unwrap();
    assert_eq!(f.slot(0, &[3]).unwrap(), Slot::Inside(3));
    assert!(f.is_submodel());

    let whole = induced_fragment(&z4, &[0, 1, 2, 3]).unwrap();
    assert_eq!(whole.escapes_count(), 0);
    assert_eq!(whole.to_structure().unwrap(), z4);
}

#[test]
fn closures_and_submodels() {
    let z4 = cycle_unar(4, 1);
    assert_eq!(closure(&z4, &[0]).unwrap(), vec![0, 1, 2, 3]);
    assert_eq!(closure(&c3(), &[2]).unwrap(), vec![2]);
    let fixed = Structure::builder(&unar_signature(), 3)
        .unary("F", &[0, 1, 0])
        .build()
        .unwrap();
    assert_eq!(closure(&fixed, &[0, 1]).unwrap(), vec![0, 1]);

    assert_eq!(
        enumerate_submodels(&z4, None).collect::<Vec<_>>(),
        vec![vec![0, 1, 2, 3]]
    );
    assert_eq!(enumerate_submodels(&c3(), None).count(), 7);
    let two_fixed = Structure::builder(&unar_signature(), 2)
        .unary("F", &[0, 1])
        .build()
        .unwrap();
    assert_eq!(
        enumerate_submodels(&two_fixed, None).collect::<Vec<_>>(),
        vec![vec![0], vec![1], vec![0, 1]]
    );
    for s in [z4, c3(), two_fixed, fixed] {
        assert_eq!(
            enumerate_submodels(&s, None).collect::<Vec<_>>(),
            common::naive_submodels(&s)
        );
    }
}

#[test]
fn isomorphisms_of_cycles() {
    let plus = cycle_unar(3, 1);
    let minus = cycle_unar(3, 2);
    let map = find_isomorphism(&plus, &minus)
        .unwrap()
        .expect("both are 3-cycles");
    assert!(submodel_core::structures::is_isomorphism(
        &plus, &minus, &map
    ));
    let fixed = Structure::builder(&unar_signature(), 3)
        .unary("F", &[0, 1, 2])
        .build()
        .unwrap();
    assert!(find_isomorphism(&plus, &fixed).unwrap().is_none());
    assert!(!common::brute_isomorphic(&plus, &fixed));
    assert!(find_isomorphism(&plus, &plus)
        .unwrap()
        .unwrap()
        .is_identity());
}

#[test]
fn escaping_point_occurrences() {
    let sig = unar_signature();
    let mut f = Fragment::new(&sig, 1, &[0]).unwrap();
    f.set_slot(0, &[0], Slot::Escapes).unwrap();
    assert_eq!(fragment_occurs(&f, &cycle_unar(4, 1)).unwrap().len(), 4);
    let point = Structure::builder(&sig, 1)
        .unary("F", &[0])
        .build()
        .unwrap();
    assert!(fragment_occurs(&f, &point).unwrap().is_empty());
    let empty = Fragment::new(&sig, 0, &[]).unwrap();
    assert_eq!(fragment_occurs(&empty, &point).unwrap().len(), 1);
}

#[test]
fn parsing_and_printing() {
    let g = graph_signature();
    let f = parse("exists x. forall y. R(x,y)", &g);
    assert_eq!(render_formula(&f), "exists x. forall y. R(x,y)");
    let u = unar_signature();
    assert_eq!(
        render_formula(&parse("exists x. !(F(x) = x)", &u)),
        "exists x. F(x) != x"
    );
    let err = parse_formula("R(x)", &g).unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::ArityMismatch { .. }));
    assert_eq!(
        render_formula(&parse("exists x. R(x,x)", &g)),
        "exists x. R(x,x)"
    );
    let p = Arc::new(
        Signature::builder()
            .predicate("P", 1)
            .predicate("Q", 1)
            .predicate("S", 1)
            .build()
            .unwrap(),
    );
    assert_eq!(
        render_formula(&parse("P(x) & (Q(x) & S(x))", &p)),
        "(P(x) & Q(x) & S(x))"
    );
}

#[test]
fn first_order_and_second_order_evaluation() {
    let g = graph_signature();
    let empty = Assignment::default();
    assert!(evaluate_fo(&c3(), &parse("forall x. exists y. R(x,y)", &g), &empty).unwrap());
    let dominating = parse("exists x. forall y. R(x,y)", &g);
    assert!(!evaluate_fo(&loop_and_point(), &dominating, &empty).unwrap());
    assert!(evaluate_fo(&loop_and_point(), &Formula::True, &empty).unwrap());

    assert!(evaluate_eso(&c3(), &parse("existsSet X. exists x. X(x)", &g)).unwrap());
    let contradiction = parse(
        "existsSet X. (exists x. X(x)) & forall x. (X(x) -> !X(x))",
        &g,
    );
    assert!(!evaluate_eso(&c3(), &contradiction).unwrap());
    let eso = theta_to_eso(&dominating, &g).unwrap();
    assert!(evaluate_eso(&loop_and_point(), &eso).unwrap());
    assert!(common::eval(&loop_and_point(), &eso));
}

#[test]
fn relativizations() {
    let g = graph_signature();
    let serial = parse("forall x. exists y. R(x,y)", &g);
    let rel = relativize_to_set_variable(&serial, "X").unwrap();
    assert_eq!(
        render_formula(&rel),
        "forall x. (X(x) -> (exists y. (X(y) & R(x,y))))"
    );
    let r = relativize_to_variables(&parse("exists x. forall y. R(x,y)", &g), &["x0"]).unwrap();
    assert_eq!(render_formula(&r), "R(x0,x0)");
    let r = relativize_to_variables(&serial, &["x0", "x1"]).unwrap();
    assert_eq!(
        render_formula(&r),
        "((R(x0,x0) | R(x0,x1)) & (R(x1,x0) | R(x1,x1)))"
    );
    let qf = parse("R(x,y)", &g);
    assert_eq!(relativize_to_variables(&qf, &["x0"]).unwrap(), qf);
}

#[test]
fn semantic_theta() {
    let g = graph_signature();
    let r = theta_semantic(&loop_and_point(), &parse("exists x. forall y. R(x,y)", &g)).unwrap();
    assert!(r.holds);
    assert_eq!(r.witness, Some(vec![0]));
    assert!(!theta_semantic(&c3(), &Formula::False).unwrap().holds);
    let serial = parse("forall x. exists y. R(x,y)", &g);
    let r = theta_semantic(&c3(), &serial).unwrap();
    assert_eq!(r.witness, Some(vec![0, 1, 2]));
    assert_eq!(r.inspected, 7);

    let u = unar_signature();
    let moves = parse("exists x. F(x) != x", &u);
    assert!(
        theta_bounded_semantic(&cycle_unar(4, 1), &moves, 1)
            .unwrap()
            .holds
    );
    assert!(!theta_bounded_semantic(&c3(), &serial, 1).unwrap().holds);
    assert!(
        theta_bounded_semantic(&c3(), &Formula::True, 1)
            .unwrap()
            .holds
    );
}

#[test]
fn translations() {
    let g = graph_signature();
    let eso = theta_to_eso(&parse("exists x. R(x,x)", &g), &g).unwrap();
    assert_eq!(
        render_formula(&eso),
        "existsSet X. ((exists x. X(x)) & (exists x. (X(x) & R(x,x))))"
    );
    let u = unar_signature();
    let eso = theta_to_eso(&parse("exists x. F(x) != x", &u), &u).unwrap();
    assert!(
        render_formula(&eso).contains("forall x. (X(x) -> X(F(x)))"),
        "{eso}"
    );

    let t = theta_bounded_to_existential_predicate(&parse("exists x. forall y. R(x,y)", &g), &g, 1)
        .unwrap();
    assert_eq!(render_formula(&t), "exists x0. R(x0,x0)");
    let t =
        theta_bounded_to_existential_predicate(&parse("!(forall x. exists y. R(x,y))", &g), &g, 1)
            .unwrap();
    assert_eq!(render_formula(&t), "exists x0. !R(x0,x0)");
    let t = theta_bounded_to_existential_predicate(&Formula::True, &g, 1).unwrap();
    assert_eq!(render_formula(&t), "exists x0. true");

    let tr = theta_bounded_to_existential_functional(
        &parse("exists x. F(x) != x", &u),
        &u,
        1,
        2,
        1_000_000,
    )
    .unwrap();
    assert_eq!(tr.disjuncts(), 2);
    let tr = theta_bounded_to_existential_functional(
        &parse("forall x. F(x) = x", &u),
        &u,
        1,
        3,
        1_000_000,
    )
    .unwrap();
    assert_eq!(render_formula(&tr.sentence), "exists x0. F(x0) = x0");
    let tr = theta_bounded_to_existential_functional(&Formula::False, &u, 1, 3, 1_000_000).unwrap();
    assert_eq!(tr.sentence, Formula::False);
}

#[test]
fn ideals_and_filters() {
    assert!(validate_ideal(&IndexIdeal::power_set(3)).is_empty());
    let gap = IndexIdeal::new(2, vec![vec![], vec![1], vec![0, 1]]);
    assert!(validate_ideal(&gap)
        .iter()
        .any(|v| matches!(v, IdealViolation::NotDownwardClosed { .. })));
    let with_empty = IndexFilter::new(2, &[vec![], vec![0], vec![1], vec![0, 1]]).unwrap();
    assert!(validate_filter(&with_empty).contains(&FilterViolation::Improper));

    let ideal = IndexIdeal::power_set(2);
    let cone = upper_cone_filter(&ideal).unwrap();
    let top = ideal.top().unwrap();
    assert_eq!(cone.core(), vec![top]);
    let chain = IndexIdeal::new(1, vec![vec![], vec![0]]);
    assert_eq!(upper_cone_filter(&chain).unwrap().core(), vec![1]);
}

#[test]
fn reduced_products() {
    let g = graph_signature();
    let b2 = digraph(2, &[&[0, 1]]);
    let b3 = digraph(3, &[&[1, 2]]);
    let trivial = IndexFilter::new(2, &[vec![0, 1]]).unwrap();
    let p = reduced_product(&[b2.clone(), b3.clone()], &trivial, DEFAULT_PRODUCT_CAP).unwrap();
    assert_eq!(p.structure().size(), 6);

    let at_second = IndexFilter::principal(2, &[1]).unwrap();
    let p = reduced_product(&[b2.clone(), b3.clone()], &at_second, DEFAULT_PRODUCT_CAP).unwrap();
    assert!(find_isomorphism(p.structure(), &b3).unwrap().is_some());

    let diag = IndexFilter::new(3, &[vec![0, 1, 2]]).unwrap();
    let p = reduced_product(
        &[b3.clone(), b3.clone(), b3.clone()],
        &diag,
        DEFAULT_PRODUCT_CAP,
    )
    .unwrap();
    for t in submodel_core::structures::tuples(3, 2) {
        let image: Vec<usize> = t.iter().map(|&b| p.class_of(&[b, b, b]).unwrap()).collect();
        assert_eq!(b3.holds(0, &t), p.structure().holds(0, &image));
    }
    let _ = g;
}

#[test]
fn coherent_systems() {
    let chain = digraph(3, &[&[0, 1], &[1, 2], &[0, 2]]);
    let ideal = IndexIdeal::power_set(3);
    let sys = CoherentSystem::generated(&chain, &ideal).unwrap();
    assert!(coherence_check(&sys).is_empty());
    let r = canonical_embedding(
        &sys,
        &upper_cone_filter(&ideal).unwrap(),
        None,
        DEFAULT_PRODUCT_CAP,
    )
    .unwrap();
    assert!(r.passed(), "{r}");

    let mut bad = sys.clone();
    let k = ideal.index_of(&[0]).unwrap();
    bad.set_component(k, digraph(1, &[&[0, 0]]), vec![0]);
    assert!(!coherence_check(&bad).is_empty());

    let z4 = cycle_unar(4, 1);
    let ideal = IndexIdeal::power_set(4);
    let sys = CoherentSystem::generated(&z4, &ideal).unwrap();
    let r = canonical_embedding(
        &sys,
        &upper_cone_filter(&ideal).unwrap(),
        None,
        DEFAULT_PRODUCT_CAP,
    )
    .unwrap();
    assert!(r.passed() && r.functions_checked == 4, "{r}");

    let point = digraph(1, &[]);
    let ideal = IndexIdeal::power_set(1);
    let sys = CoherentSystem::generated(&point, &ideal).unwrap();
    let r = canonical_embedding(
        &sys,
        &upper_cone_filter(&ideal).unwrap(),
        None,
        DEFAULT_PRODUCT_CAP,
    )
    .unwrap();
    assert!(r.passed() && r.map == vec![0]);
}

#[test]
fn probes() {
    let g = graph_signature();
    let cfg = ProbeConfig::new(g.clone(), 4);
    let theta = Query::Theta(parse("exists x. forall y. R(x,y)", &g));
    let plain = Query::Sentence(parse("exists x. R(x,x)", &g));
    assert!(matches!(
        equivalence_oracle(&theta, &plain, &cfg).unwrap(),
        EquivalenceVerdict::Equal { n_max: 4, .. }
    ));

    let cfg3 = ProbeConfig::new(g.clone(), 3);
    assert!(preservation_under_extensions(&theta, &cfg3)
        .unwrap()
        .is_preserved());

    let dominating = parse("exists x. forall y. R(x,y)", &g);
    let v = witness_bound_search(&dominating, &cfg3).unwrap();
    assert_eq!(v.outcome, Outcome::WitnessBoundFound { lambda: 1 });

    let u = unar_signature();
    let moves = parse("exists x. F(x) != x", &u);
    let v =
        witness_bound_search(&moves, &ProbeConfig::new(u, 4).with_mode(Mode::Fragment)).unwrap();
    assert_eq!(v.bound(), Some(1));
    let (_, w) = v.extremal.unwrap();
    assert_eq!(w.slot(0, &[w.carrier()[0]]).unwrap(), Slot::Escapes);
}
