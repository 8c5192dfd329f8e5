// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! First-order formulas with n-ary connectives and a monadic existential
//! second-order prefix: parsing, printing, evaluation and relativization.

mod eval;
mod parser;
mod printer;
mod relativize;

use std::collections::BTreeSet;
use std::fmt;

pub use eval::{evaluate_eso, evaluate_fo, Assignment, CompiledFormula, EvalError};
pub use parser::{parse_formula, parse_formula_infer, ParseError, ParseErrorKind};
pub use printer::render_formula;
pub use relativize::{relativize_to_set_variable, relativize_to_variables, RelativizeError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Contains a function or constant symbol.
    pub fn is_functional(&self) -> bool {
        !matches!(self, Term::Var(_))
    }

    pub fn substitute(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.substitute(var, by)).collect(),
            ),
        }
    }

    pub fn replace_constant(&self, name: &str, by: &Term) -> Term {
        match self {
            Term::Const(c) if c == name => by.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.replace_constant(name, by)).collect(),
            ),
        }
    }
}

/// A formula. Conjunction and disjunction are n-ary; `!=` is represented as
/// `Not(Eq(..))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    /// Membership `X(t)` of a term in a monadic set variable.
    InSet(String, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    ExistsSet(String, Box<Formula>),
}

impl Formula {
    pub fn pred(name: &str, args: Vec<Term>) -> Formula {
        Formula::Pred(name.to_string(), args)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn neq(a: Term, b: Term) -> Formula {
        Formula::not(Formula::Eq(a, b))
    }

    pub fn in_set(set: &str, t: Term) -> Formula {
        Formula::InSet(set.to_string(), t)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction that flattens nested conjunctions; the empty conjunction
    /// is `True` and a single conjunct is returned as is.
    pub fn and(parts: Vec<Formula>) -> Formula {
        let mut flat = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                Formula::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::True,
            1 => flat.pop().unwrap(),
            _ => Formula::And(flat),
        }
    }

    /// Disjunction counterpart of [`Formula::and`]; the empty disjunction is
    /// `False`.
    pub fn or(parts: Vec<Formula>) -> Formula {
        let mut flat = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                Formula::Or(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::False,
            1 => flat.pop().unwrap(),
            _ => Formula::Or(flat),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn exists_set(set: &str, body: Formula) -> Formula {
        Formula::ExistsSet(set.to_string(), Box::new(body))
    }

    /// `exists v0. exists v1. ... body`
    pub fn exists_all<S: AsRef<str>>(vars: &[S], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::exists(v.as_ref(), acc))
    }

    fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Pred(..) | Eq(..) | InSet(..) => vec![],
            Not(f) | Forall(_, f) | Exists(_, f) | ExistsSet(_, f) => vec![f],
            And(fs) | Or(fs) => fs.iter().collect(),
            Implies(a, b) | Iff(a, b) => vec![a, b],
        }
    }

    fn atom_terms(&self) -> Vec<&Term> {
        match self {
            Formula::Pred(_, args) => args.iter().collect(),
            Formula::Eq(a, b) => vec![a, b],
            Formula::InSet(_, t) => vec![t],
            _ => vec![],
        }
    }

    fn free_vars_into<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v);
                body.free_vars_into(bound, out);
                bound.pop();
            }
            _ => {
                let mut vars = BTreeSet::new();
                for t in self.atom_terms() {
                    t.collect_vars(&mut vars);
                }
                for v in vars {
                    if !bound.contains(&v) {
                        out.insert(v.to_string());
                    }
                }
                for c in self.children() {
                    c.free_vars_into(bound, out);
                }
            }
        }
    }

    /// Free first-order variables.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_sets_into<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::ExistsSet(x, body) => {
                bound.push(x);
                body.free_sets_into(bound, out);
                bound.pop();
            }
            Formula::InSet(x, _) => {
                if !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
            _ => {
                for c in self.children() {
                    c.free_sets_into(bound, out);
                }
            }
        }
    }

    /// Free set variables.
    pub fn free_set_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_sets_into(&mut Vec::new(), &mut out);
        out
    }

    /// No free variables of either order.
    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty() && self.free_set_vars().is_empty()
    }

    /// Every first-order variable name occurring in the formula, bound or free.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Forall(v, _) | Formula::Exists(v, _) = f {
                out.insert(v.clone());
            }
            let mut vars = BTreeSet::new();
            for t in f.atom_terms() {
                t.collect_vars(&mut vars);
            }
            out.extend(vars.into_iter().map(str::to_string));
        });
        out
    }

    /// Every set variable name occurring in the formula, bound or free.
    pub fn set_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::InSet(x, _) | Formula::ExistsSet(x, _) = f {
                out.insert(x.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, visitor: &mut impl FnMut(&Formula)) {
        visitor(self);
        for c in self.children() {
            c.visit(visitor);
        }
    }

    /// No set quantifier anywhere.
    pub fn is_first_order(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| ok &= !matches!(f, Formula::ExistsSet(..)));
        ok
    }

    pub fn is_quantifier_free(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            ok &= !matches!(
                f,
                Formula::Forall(..) | Formula::Exists(..) | Formula::ExistsSet(..)
            )
        });
        ok
    }

    /// A (possibly empty) prefix of first-order existential quantifiers over a
    /// quantifier-free matrix.
    pub fn is_existential(&self) -> bool {
        let mut f = self;
        while let Formula::Exists(_, body) = f {
            f = body;
        }
        f.is_quantifier_free()
    }

    /// Splits off the leading existential set quantifiers.
    pub fn set_prefix(&self) -> (Vec<&str>, &Formula) {
        let mut sets = Vec::new();
        let mut f = self;
        while let Formula::ExistsSet(x, body) = f {
            sets.push(x.as_str());
            f = body;
        }
        (sets, f)
    }

    /// Whether any function or constant symbol occurs.
    pub fn uses_functional_symbols(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= f.atom_terms().iter().any(|t| t.is_functional()));
        found
    }

    /// Number of formula nodes (terms are not counted).
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Maximal nesting of first-order quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        let below = self
            .children()
            .into_iter()
            .map(Formula::quantifier_depth)
            .max()
            .unwrap_or(0);
        match self {
            Formula::Forall(..) | Formula::Exists(..) => below + 1,
            _ => below,
        }
    }

    /// Replaces free occurrences of `var` by `by`. Callers guarantee that the
    /// variables of `by` are not captured by binders of `self`.
    pub fn substitute(&self, var: &str, by: &Term) -> Formula {
        use Formula::*;
        match self {
            True | False => self.clone(),
            Pred(p, args) => Pred(
                p.clone(),
                args.iter().map(|t| t.substitute(var, by)).collect(),
            ),
            Eq(a, b) => Eq(a.substitute(var, by), b.substitute(var, by)),
            InSet(x, t) => InSet(x.clone(), t.substitute(var, by)),
            Not(f) => Not(Box::new(f.substitute(var, by))),
            And(fs) => And(fs.iter().map(|f| f.substitute(var, by)).collect()),
            Or(fs) => Or(fs.iter().map(|f| f.substitute(var, by)).collect()),
            Implies(a, b) => Implies(
                Box::new(a.substitute(var, by)),
                Box::new(b.substitute(var, by)),
            ),
            Iff(a, b) => Iff(
                Box::new(a.substitute(var, by)),
                Box::new(b.substitute(var, by)),
            ),
            Forall(v, _) | Exists(v, _) if v == var => self.clone(),
            Forall(v, f) => Forall(v.clone(), Box::new(f.substitute(var, by))),
            Exists(v, f) => Exists(v.clone(), Box::new(f.substitute(var, by))),
            ExistsSet(x, f) => ExistsSet(x.clone(), Box::new(f.substitute(var, by))),
        }
    }

    /// Replaces a constant symbol by a term everywhere.
    pub fn replace_constant(&self, name: &str, by: &Term) -> Formula {
        use Formula::*;
        let r = |f: &Formula| Box::new(f.replace_constant(name, by));
        match self {
            True | False => self.clone(),
            Pred(p, args) => Pred(
                p.clone(),
                args.iter().map(|t| t.replace_constant(name, by)).collect(),
            ),
            Eq(a, b) => Eq(a.replace_constant(name, by), b.replace_constant(name, by)),
            InSet(x, t) => InSet(x.clone(), t.replace_constant(name, by)),
            Not(f) => Not(r(f)),
            And(fs) => And(fs.iter().map(|f| f.replace_constant(name, by)).collect()),
            Or(fs) => Or(fs.iter().map(|f| f.replace_constant(name, by)).collect()),
            Implies(a, b) => Implies(r(a), r(b)),
            Iff(a, b) => Iff(r(a), r(b)),
            Forall(v, f) => Forall(v.clone(), r(f)),
            Exists(v, f) => Exists(v.clone(), r(f)),
            ExistsSet(x, f) => ExistsSet(x.clone(), r(f)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&printer::render_term(self))
    }
}

/// `count` variable names built from the first of `prefixes` that yields
/// names not occurring in `avoid`.
pub fn fresh_variables(avoid: &BTreeSet<String>, prefixes: &[&str], count: usize) -> Vec<String> {
    for p in prefixes {
        let names: Vec<String> = (0..count).map(|i| format!("{p}{i}")).collect();
        if names.iter().all(|n| !avoid.contains(n)) {
            return names;
        }
    }
    let mut k = 0;
    loop {
        let names: Vec<String> = (0..count).map(|i| format!("v{k}_{i}")).collect();
        if names.iter().all(|n| !avoid.contains(n)) {
            return names;
        }
        k += 1;
    }
}
