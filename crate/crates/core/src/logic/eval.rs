// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use super::{Formula, Term};
use crate::structures::{Elem, Signature, Structure};

/// Largest universe on which set variables can be evaluated.
pub const MAX_SET_UNIVERSE: usize = 64;
/// Largest number of subset-tuple bits enumerated by [`evaluate_eso`].
pub const MAX_ESO_BITS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("free variable `{0}` is not assigned")]
    UncoveredVariable(String),
    #[error("free set variable `{0}` is not assigned")]
    UncoveredSetVariable(String),
    #[error("symbol `{0}` is not in the signature")]
    UnknownSymbol(String),
    #[error("`{name}` takes {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("formula contains a set quantifier")]
    NotFirstOrder,
    #[error("set quantifier `{0}` is not in the leading existential prefix")]
    SetQuantifierNotInPrefix(String),
    #[error("formula is not a sentence")]
    NotSentence,
    #[error("structure signature {found} does not match formula signature {expected}")]
    SignatureMismatch { expected: String, found: String },
    #[error("assigned element {elem} of `{name}` is outside the universe of size {size}")]
    ElementOutOfRange {
        name: String,
        elem: Elem,
        size: usize,
    },
    #[error("set-variable evaluation limited to {limit} (requested {requested})")]
    TooLarge { requested: usize, limit: usize },
}

/// Values for free first-order and set variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    elems: BTreeMap<String, Elem>,
    sets: BTreeMap<String, BTreeSet<Elem>>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_elem(mut self, var: &str, a: Elem) -> Self {
        self.set_elem(var, a);
        self
    }

    pub fn with_set(mut self, var: &str, members: impl IntoIterator<Item = Elem>) -> Self {
        self.set_set(var, members);
        self
    }

    pub fn set_elem(&mut self, var: &str, a: Elem) {
        self.elems.insert(var.to_string(), a);
    }

    pub fn set_set(&mut self, var: &str, members: impl IntoIterator<Item = Elem>) {
        self.sets
            .insert(var.to_string(), members.into_iter().collect());
    }

    pub fn elem(&self, var: &str) -> Option<Elem> {
        self.elems.get(var).copied()
    }

    pub fn set(&self, var: &str) -> Option<&BTreeSet<Elem>> {
        self.sets.get(var)
    }
}

#[derive(Debug, Clone)]
enum CTerm {
    Var(usize),
    Const(usize),
    App(usize, Box<[CTerm]>),
}

#[derive(Debug, Clone)]
enum CForm {
    True,
    False,
    Pred(usize, Box<[CTerm]>),
    Eq(CTerm, CTerm),
    In(usize, CTerm),
    Not(Box<CForm>),
    And(Box<[CForm]>),
    Or(Box<[CForm]>),
    Implies(Box<CForm>, Box<CForm>),
    Iff(Box<CForm>, Box<CForm>),
    Forall(usize, Box<CForm>),
    Exists(usize, Box<CForm>),
}

/// A formula resolved against a signature, with variables mapped to slots.
/// Compiling once and evaluating on many structures avoids name lookups in
/// the inner loops of sweeps.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    sig: Arc<Signature>,
    prefix: Vec<usize>,
    root: CForm,
    var_slots: usize,
    set_slots: usize,
    free_vars: Vec<(String, usize)>,
    free_sets: Vec<(String, usize)>,
}

struct Compiler<'a> {
    sig: &'a Signature,
    scope: Vec<(String, usize)>,
    sets: Vec<(String, usize)>,
    var_slots: usize,
    free_vars: Vec<(String, usize)>,
    free_sets: Vec<(String, usize)>,
}

impl Compiler<'_> {
    fn var(&mut self, name: &str) -> usize {
        if let Some((_, s)) = self.scope.iter().rev().find(|(n, _)| n == name) {
            return *s;
        }
        if let Some((_, s)) = self.free_vars.iter().find(|(n, _)| n == name) {
            return *s;
        }
        let s = self.var_slots;
        self.var_slots += 1;
        self.free_vars.push((name.to_string(), s));
        s
    }

    fn set(&mut self, name: &str) -> usize {
        if let Some((_, s)) = self.sets.iter().rev().find(|(n, _)| n == name) {
            return *s;
        }
        if let Some((_, s)) = self.free_sets.iter().find(|(n, _)| n == name) {
            return *s;
        }
        let s = self.sets.len() + self.free_sets.len();
        self.free_sets.push((name.to_string(), s));
        s
    }

    fn arity_check(name: &str, expected: usize, found: usize) -> Result<(), EvalError> {
        if expected != found {
            return Err(EvalError::Arity {
                name: name.to_string(),
                expected,
                found,
            });
        }
        Ok(())
    }

    fn term(&mut self, t: &Term) -> Result<CTerm, EvalError> {
        Ok(match t {
            Term::Var(v) => CTerm::Var(self.var(v)),
            Term::Const(c) => CTerm::Const(
                self.sig
                    .constant(c)
                    .ok_or_else(|| EvalError::UnknownSymbol(c.clone()))?,
            ),
            Term::App(f, args) => {
                let i = self
                    .sig
                    .function(f)
                    .ok_or_else(|| EvalError::UnknownSymbol(f.clone()))?;
                Self::arity_check(f, self.sig.functions()[i].arity, args.len())?;
                let args = args
                    .iter()
                    .map(|a| self.term(a))
                    .collect::<Result<_, _>>()?;
                CTerm::App(i, args)
            }
        })
    }

    fn formula(&mut self, f: &Formula) -> Result<CForm, EvalError> {
        Ok(match f {
            Formula::True => CForm::True,
            Formula::False => CForm::False,
            Formula::Pred(p, args) => {
                let i = self
                    .sig
                    .predicate(p)
                    .ok_or_else(|| EvalError::UnknownSymbol(p.clone()))?;
                Self::arity_check(p, self.sig.predicates()[i].arity, args.len())?;
                let args = args
                    .iter()
                    .map(|a| self.term(a))
                    .collect::<Result<_, _>>()?;
                CForm::Pred(i, args)
            }
            Formula::Eq(a, b) => CForm::Eq(self.term(a)?, self.term(b)?),
            Formula::InSet(x, t) => {
                let s = self.set(x);
                CForm::In(s, self.term(t)?)
            }
            Formula::Not(g) => CForm::Not(Box::new(self.formula(g)?)),
            Formula::And(gs) => CForm::And(
                gs.iter()
                    .map(|g| self.formula(g))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Or(gs) => CForm::Or(
                gs.iter()
                    .map(|g| self.formula(g))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Implies(a, b) => {
                CForm::Implies(Box::new(self.formula(a)?), Box::new(self.formula(b)?))
            }
            Formula::Iff(a, b) => {
                CForm::Iff(Box::new(self.formula(a)?), Box::new(self.formula(b)?))
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let slot = self.var_slots;
                self.var_slots += 1;
                self.scope.push((v.clone(), slot));
                let inner = self.formula(body);
                self.scope.pop();
                if matches!(f, Formula::Forall(..)) {
                    CForm::Forall(slot, Box::new(inner?))
                } else {
                    CForm::Exists(slot, Box::new(inner?))
                }
            }
            Formula::ExistsSet(x, _) => return Err(EvalError::SetQuantifierNotInPrefix(x.clone())),
        })
    }
}

struct Ctx<'a> {
    s: &'a Structure,
    domain: &'a [Elem],
    env: Vec<Elem>,
    sets: Vec<u64>,
}

impl Ctx<'_> {
    fn term(&self, t: &CTerm) -> Elem {
        match t {
            CTerm::Var(i) => self.env[*i],
            CTerm::Const(c) => self.s.constant(*c),
            CTerm::App(f, args) => {
                let n = self.s.size();
                let code = args.iter().fold(0, |acc, a| acc * n + self.term(a));
                self.s.apply_code(*f, code)
            }
        }
    }

    fn eval(&mut self, f: &CForm) -> bool {
        match f {
            CForm::True => true,
            CForm::False => false,
            CForm::Pred(p, args) => {
                let n = self.s.size();
                let code = args.iter().fold(0, |acc, a| acc * n + self.term(a));
                self.s.holds_code(*p, code)
            }
            CForm::Eq(a, b) => self.term(a) == self.term(b),
            CForm::In(x, t) => self.sets[*x] >> self.term(t) & 1 == 1,
            CForm::Not(g) => !self.eval(g),
            CForm::And(gs) => gs.iter().all(|g| self.eval(g)),
            CForm::Or(gs) => gs.iter().any(|g| self.eval(g)),
            CForm::Implies(a, b) => !self.eval(a) || self.eval(b),
            CForm::Iff(a, b) => self.eval(a) == self.eval(b),
            CForm::Forall(slot, body) => {
                let domain = self.domain;
                domain.iter().all(|&d| {
                    self.env[*slot] = d;
                    self.eval(body)
                })
            }
            CForm::Exists(slot, body) => {
                let domain = self.domain;
                domain.iter().any(|&d| {
                    self.env[*slot] = d;
                    self.eval(body)
                })
            }
        }
    }
}

impl CompiledFormula {
    pub fn compile(f: &Formula, sig: &Arc<Signature>) -> Result<Self, EvalError> {
        let (prefix_names, matrix) = f.set_prefix();
        let mut c = Compiler {
            sig,
            scope: Vec::new(),
            sets: prefix_names
                .iter()
                .enumerate()
                .map(|(i, x)| (x.to_string(), i))
                .collect(),
            var_slots: 0,
            free_vars: Vec::new(),
            free_sets: Vec::new(),
        };
        let root = c.formula(matrix)?;
        let prefix = (0..prefix_names.len()).collect();
        Ok(CompiledFormula {
            sig: Arc::clone(sig),
            prefix,
            root,
            var_slots: c.var_slots,
            set_slots: c.sets.len() + c.free_sets.len(),
            free_vars: c.free_vars,
            free_sets: c.free_sets,
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars.is_empty() && self.free_sets.is_empty()
    }

    pub fn has_set_prefix(&self) -> bool {
        !self.prefix.is_empty()
    }

    fn check_structure(&self, s: &Structure) -> Result<(), EvalError> {
        if !Arc::ptr_eq(&self.sig, s.signature_arc()) && *self.sig != *s.signature() {
            return Err(EvalError::SignatureMismatch {
                expected: self.sig.to_string(),
                found: s.signature().to_string(),
            });
        }
        if self.set_slots > 0 && s.size() > MAX_SET_UNIVERSE {
            return Err(EvalError::TooLarge {
                requested: s.size(),
                limit: MAX_SET_UNIVERSE,
            });
        }
        Ok(())
    }

    fn context<'a>(
        &self,
        s: &'a Structure,
        domain: &'a [Elem],
        a: &Assignment,
    ) -> Result<Ctx<'a>, EvalError> {
        let mut env = vec![0; self.var_slots];
        for (name, slot) in &self.free_vars {
            let v = a
                .elem(name)
                .ok_or_else(|| EvalError::UncoveredVariable(name.clone()))?;
            if v >= s.size() {
                return Err(EvalError::ElementOutOfRange {
                    name: name.clone(),
                    elem: v,
                    size: s.size(),
                });
            }
            env[*slot] = v;
        }
        let mut sets = vec![0u64; self.set_slots];
        for (name, slot) in &self.free_sets {
            let members = a
                .set(name)
                .ok_or_else(|| EvalError::UncoveredSetVariable(name.clone()))?;
            for &m in members {
                if m >= s.size() {
                    return Err(EvalError::ElementOutOfRange {
                        name: name.clone(),
                        elem: m,
                        size: s.size(),
                    });
                }
                sets[*slot] |= 1 << m;
            }
        }
        Ok(Ctx {
            s,
            domain,
            env,
            sets,
        })
    }

    /// First-order evaluation under an assignment.
    pub fn eval(&self, s: &Structure, a: &Assignment) -> Result<bool, EvalError> {
        if self.has_set_prefix() {
            return Err(EvalError::NotFirstOrder);
        }
        self.check_structure(s)?;
        let universe: Vec<Elem> = s.universe().collect();
        let mut ctx = self.context(s, &universe, a)?;
        Ok(ctx.eval(&self.root))
    }

    /// Evaluates a sentence, enumerating subsets for a set-quantifier prefix.
    pub fn eval_sentence(&self, s: &Structure) -> Result<bool, EvalError> {
        if !self.is_sentence() {
            return Err(EvalError::NotSentence);
        }
        self.check_structure(s)?;
        let universe: Vec<Elem> = s.universe().collect();
        let mut ctx = self.context(s, &universe, &Assignment::new())?;
        if self.prefix.is_empty() {
            return Ok(ctx.eval(&self.root));
        }
        let n = s.size();
        let bits = n * self.prefix.len();
        if bits > MAX_ESO_BITS {
            return Err(EvalError::TooLarge {
                requested: bits,
                limit: MAX_ESO_BITS,
            });
        }
        let mask = (1u64 << n) - 1;
        for code in 0u64..(1 << bits) {
            for (j, &slot) in self.prefix.iter().enumerate() {
                ctx.sets[slot] = (code >> (j * n)) & mask;
            }
            if ctx.eval(&self.root) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Evaluates a first-order sentence with quantifiers ranging over
    /// `domain` only. When `domain` is closed under the functions and
    /// contains the constants, this is truth in the induced substructure.
    pub fn eval_within(&self, s: &Structure, domain: &[Elem]) -> Result<bool, EvalError> {
        if self.has_set_prefix() {
            return Err(EvalError::NotFirstOrder);
        }
        if !self.is_sentence() {
            return Err(EvalError::NotSentence);
        }
        self.check_structure(s)?;
        let mut ctx = self.context(s, domain, &Assignment::new())?;
        Ok(ctx.eval(&self.root))
    }
}

/// Truth of a first-order formula under an assignment covering its free
/// variables; quantifiers range over the whole universe.
pub fn evaluate_fo(s: &Structure, f: &Formula, a: &Assignment) -> Result<bool, EvalError> {
    if !f.is_first_order() {
        return Err(EvalError::NotFirstOrder);
    }
    CompiledFormula::compile(f, s.signature_arc())?.eval(s, a)
}

/// Truth of a sentence of the monadic existential second-order fragment, by
/// exhaustive enumeration of the prefixed set variables.
pub fn evaluate_eso(s: &Structure, f: &Formula) -> Result<bool, EvalError> {
    CompiledFormula::compile(f, s.signature_arc())?.eval_sentence(s)
}
