// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! Independent reference implementations: a tree-walking evaluator with
//! explicit domains, naive closure, brute-force isomorphism and labelled
//! enumeration by bitmask. None of these share code paths with the library
//! beyond the `Structure` accessors.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use submodel_core::logic::{Formula, Term};
use submodel_core::{Elem, Signature, Structure};

#[derive(Default, Clone)]
pub struct Env {
    pub elems: HashMap<String, Elem>,
    pub sets: HashMap<String, Vec<bool>>,
}

fn term(s: &Structure, t: &Term, env: &Env) -> Elem {
    let sig = s.signature();
    match t {
        Term::Var(v) => env.elems[v],
        Term::Const(c) => s.constant(sig.constant(c).expect("known constant")),
        Term::App(f, args) => {
            let vals: Vec<Elem> = args.iter().map(|a| term(s, a, env)).collect();
            s.apply(sig.function(f).expect("known function"), &vals)
        }
    }
}

/// Truth of `f` in `s` with every quantifier ranging over `domain`.
pub fn eval_in(s: &Structure, f: &Formula, domain: &[Elem], env: &mut Env) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Pred(p, args) => {
            let vals: Vec<Elem> = args.iter().map(|a| term(s, a, env)).collect();
            s.holds(s.signature().predicate(p).expect("known predicate"), &vals)
        }
        Formula::Eq(a, b) => term(s, a, env) == term(s, b, env),
        Formula::InSet(x, t) => {
            let v = term(s, t, env);
            env.sets[x][v]
        }
        Formula::Not(g) => !eval_in(s, g, domain, env),
        Formula::And(gs) => gs.iter().all(|g| eval_in(s, g, domain, env)),
        Formula::Or(gs) => gs.iter().any(|g| eval_in(s, g, domain, env)),
        Formula::Implies(a, b) => !eval_in(s, a, domain, env) || eval_in(s, b, domain, env),
        Formula::Iff(a, b) => eval_in(s, a, domain, env) == eval_in(s, b, domain, env),
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let want = matches!(f, Formula::Exists(..));
            let saved = env.elems.get(v).copied();
            let mut result = !want;
            for &a in domain {
                env.elems.insert(v.clone(), a);
                if eval_in(s, g, domain, env) == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(a) => env.elems.insert(v.clone(), a),
                None => env.elems.remove(v),
            };
            result
        }
        Formula::ExistsSet(x, g) => {
            let n = s.size();
            let saved = env.sets.get(x).cloned();
            let mut result = false;
            for mask in 0u64..1 << n {
                env.sets
                    .insert(x.clone(), (0..n).map(|i| mask >> i & 1 == 1).collect());
                if eval_in(s, g, domain, env) {
                    result = true;
                    break;
                }
            }
            match saved {
                Some(m) => env.sets.insert(x.clone(), m),
                None => env.sets.remove(x),
            };
            result
        }
    }
}

pub fn eval(s: &Structure, f: &Formula) -> bool {
    let all: Vec<Elem> = s.universe().collect();
    eval_in(s, f, &all, &mut Env::default())
}

/// Smallest superset of `seed` containing the constants and closed under
/// every function, by fixpoint iteration.
pub fn naive_closure(s: &Structure, seed: &[Elem]) -> Vec<Elem> {
    let sig = s.signature();
    let mut inside = vec![false; s.size()];
    for &a in seed.iter().chain(s.constants()) {
        inside[a] = true;
    }
    loop {
        let members: Vec<Elem> = (0..s.size()).filter(|&a| inside[a]).collect();
        let mut grew = false;
        for (f, sym) in sig.functions().iter().enumerate() {
            for args in (0..sym.arity)
                .map(|_| members.iter().copied())
                .multi_cartesian_product()
            {
                let v = s.apply(f, &args);
                if !inside[v] {
                    inside[v] = true;
                    grew = true;
                }
            }
            if sym.arity == 0 {
                let v = s.apply(f, &[]);
                if !inside[v] {
                    inside[v] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return (0..s.size()).filter(|&a| inside[a]).collect();
        }
    }
}

pub fn naive_submodels(s: &Structure) -> Vec<Vec<Elem>> {
    (1..=s.size())
        .flat_map(|k| (0..s.size()).combinations(k))
        .filter(|c| naive_closure(s, c) == *c)
        .collect()
}

pub fn naive_theta(s: &Structure, phi: &Formula) -> bool {
    naive_submodels(s)
        .iter()
        .any(|c| eval_in(s, phi, c, &mut Env::default()))
}

pub fn naive_theta_bounded(s: &Structure, phi: &Formula, lambda: usize) -> bool {
    (0..=lambda.min(s.size()))
        .flat_map(|k| (0..s.size()).combinations(k))
        .map(|seed| naive_closure(s, &seed))
        .filter(|c| !c.is_empty())
        .any(|c| eval_in(s, phi, &c, &mut Env::default()))
}

/// Whether some permutation carries `a` onto `b`, checked entry by entry.
pub fn brute_isomorphic(a: &Structure, b: &Structure) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let sig = a.signature();
    let n = a.size();
    'perm: for p in (0..n).permutations(n) {
        for (r, sym) in sig.predicates().iter().enumerate() {
            for t in (0..sym.arity).map(|_| 0..n).multi_cartesian_product() {
                let image: Vec<Elem> = t.iter().map(|&x| p[x]).collect();
                if a.holds(r, &t) != b.holds(r, &image) {
                    continue 'perm;
                }
            }
        }
        for (g, sym) in sig.functions().iter().enumerate() {
            for t in (0..sym.arity).map(|_| 0..n).multi_cartesian_product() {
                let image: Vec<Elem> = t.iter().map(|&x| p[x]).collect();
                if p[a.apply(g, &t)] != b.apply(g, &image) {
                    continue 'perm;
                }
            }
        }
        if (0..sig.constants().len()).any(|c| p[a.constant(c)] != b.constant(c)) {
            continue;
        }
        return true;
    }
    false
}

/// Every structure on `n` elements over a single binary predicate, by the
/// bits of the adjacency matrix.
pub fn labelled_digraphs(sig: &Arc<Signature>, n: usize) -> Vec<Structure> {
    let cells: Vec<[Elem; 2]> = (0..n)
        .cartesian_product(0..n)
        .map(|(a, b)| [a, b])
        .collect();
    (0u64..1 << cells.len())
        .map(|mask| {
            let mut b = Structure::builder(sig, n);
            for (i, c) in cells.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    b = b.tuple("R", c);
                }
            }
            b.build().expect("valid digraph")
        })
        .collect()
}

/// Number of isomorphism classes among `items` by pairwise comparison.
pub fn count_classes(items: &[Structure]) -> usize {
    let mut reps: Vec<&Structure> = Vec::new();
    for s in items {
        if !reps.iter().any(|r| brute_isomorphic(r, s)) {
            reps.push(s);
        }
    }
    reps.len()
}

/// Directed cycle by repeated removal of vertices without predecessors.
pub fn cyclic_by_peeling(s: &Structure) -> bool {
    let n = s.size();
    let mut alive = vec![true; n];
    loop {
        let source = (0..n).find(|&b| alive[b] && !(0..n).any(|a| alive[a] && s.holds(0, &[a, b])));
        match source {
            Some(b) => alive[b] = false,
            None => return alive.iter().any(|&x| x),
        }
    }
}
