// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{Elem, Signature, StructureError};

/// Number of `k`-tuples over a universe of size `n`, i.e. `n^k`.
pub fn tuple_count(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}

/// Position of `tuple` in the lexicographic order of tuples over `0..n`.
#[inline]
pub fn tuple_code(tuple: &[Elem], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * n + a)
}

/// Inverse of [`tuple_code`].
pub fn decode_tuple(mut code: usize, n: usize, k: usize) -> Vec<Elem> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    out
}

/// All `k`-tuples over `0..n` in lexicographic order.
pub fn tuples(n: usize, k: usize) -> Tuples {
    Tuples {
        n,
        current: if n == 0 && k > 0 {
            None
        } else {
            Some(vec![0; k])
        },
    }
}

pub struct Tuples {
    n: usize,
    current: Option<Vec<Elem>>,
}

impl Iterator for Tuples {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.n {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

pub(crate) fn format_tuple(tuple: &[Elem]) -> String {
    let parts: Vec<String> = tuple.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(","))
}

/// A finite structure with universe `{0, .., n-1}` and total interpretations.
///
/// Relations are stored as characteristic vectors and functions as value
/// tables, both indexed by [`tuple_code`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    sig: Arc<Signature>,
    size: usize,
    relations: Vec<Vec<bool>>,
    functions: Vec<Vec<Elem>>,
    constants: Vec<Elem>,
}

impl Structure {
    /// Builds a structure from dense tables, checking every invariant.
    pub fn from_tables(
        sig: Arc<Signature>,
        size: usize,
        relations: Vec<Vec<bool>>,
        functions: Vec<Vec<Elem>>,
        constants: Vec<Elem>,
    ) -> Result<Self, StructureError> {
        if size == 0 {
            return Err(StructureError::EmptyUniverse);
        }
        let shape_ok = relations.len() == sig.predicates().len()
            && functions.len() == sig.functions().len()
            && constants.len() == sig.constants().len()
            && relations
                .iter()
                .zip(sig.predicates())
                .all(|(r, p)| r.len() == tuple_count(size, p.arity))
            && functions
                .iter()
                .zip(sig.functions())
                .all(|(t, f)| t.len() == tuple_count(size, f.arity));
        if !shape_ok {
            return Err(StructureError::Shape);
        }
        if functions
            .iter()
            .flatten()
            .chain(&constants)
            .any(|&v| v >= size)
        {
            return Err(StructureError::ElementOutOfRange);
        }
        Ok(Self::from_tables_unchecked(
            sig, size, relations, functions, constants,
        ))
    }

    pub(crate) fn from_tables_unchecked(
        sig: Arc<Signature>,
        size: usize,
        relations: Vec<Vec<bool>>,
        functions: Vec<Vec<Elem>>,
        constants: Vec<Elem>,
    ) -> Self {
        Structure {
            sig,
            size,
            relations,
            functions,
            constants,
        }
    }

    pub fn builder(sig: &Arc<Signature>, size: usize) -> StructureBuilder {
        StructureBuilder {
            raw: RawStructure::new(sig, size),
            sig: sig.clone(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn universe(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    #[inline]
    pub fn holds(&self, pred: usize, tuple: &[Elem]) -> bool {
        self.relations[pred][tuple_code(tuple, self.size)]
    }

    #[inline]
    pub fn holds_code(&self, pred: usize, code: usize) -> bool {
        self.relations[pred][code]
    }

    #[inline]
    pub fn apply(&self, func: usize, args: &[Elem]) -> Elem {
        self.functions[func][tuple_code(args, self.size)]
    }

    #[inline]
    pub fn apply_code(&self, func: usize, code: usize) -> Elem {
        self.functions[func][code]
    }

    #[inline]
    pub fn constant(&self, c: usize) -> Elem {
        self.constants[c]
    }

    pub fn constants(&self) -> &[Elem] {
        &self.constants
    }

    pub(crate) fn relation_table(&self, pred: usize) -> &[bool] {
        &self.relations[pred]
    }

    pub(crate) fn function_table(&self, func: usize) -> &[Elem] {
        &self.functions[func]
    }

    /// Tuples in the interpretation of predicate `pred`, in lexicographic order.
    pub fn relation_tuples(&self, pred: usize) -> Vec<Vec<Elem>> {
        let k = self.sig.predicates()[pred].arity;
        self.relations[pred]
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(code, _)| decode_tuple(code, self.size, k))
            .collect()
    }

    /// Whether `members` (a characteristic vector) contains all constants and is
    /// closed under every function.
    pub fn is_closed(&self, members: &[bool]) -> bool {
        if self.constants.iter().any(|&c| !members[c]) {
            return false;
        }
        let carrier: Vec<Elem> = (0..self.size).filter(|&a| members[a]).collect();
        self.sig.functions().iter().enumerate().all(|(f, sym)| {
            tuples(carrier.len(), sym.arity).all(|local| {
                let args: Vec<Elem> = local.iter().map(|&i| carrier[i]).collect();
                members[self.apply(f, &args)]
            })
        })
    }

    /// The substructure induced on a closed carrier, relabelled to `0..m` in
    /// increasing order of the original labels.
    pub fn restrict(&self, carrier: &[Elem]) -> Result<Structure, StructureError> {
        let mut members = vec![false; self.size];
        for &a in carrier {
            if a >= self.size {
                return Err(StructureError::ElementOutOfRange);
            }
            members[a] = true;
        }
        let carrier: Vec<Elem> = (0..self.size).filter(|&a| members[a]).collect();
        if carrier.is_empty() {
            return Err(StructureError::EmptyUniverse);
        }
        if !self.is_closed(&members) {
            return Err(StructureError::NotClosed);
        }
        let mut local = vec![usize::MAX; self.size];
        for (i, &a) in carrier.iter().enumerate() {
            local[a] = i;
        }
        let m = carrier.len();
        let relations = self
            .sig
            .predicates()
            .iter()
            .enumerate()
            .map(|(p, sym)| {
                tuples(m, sym.arity)
                    .map(|t| {
                        let args: Vec<Elem> = t.iter().map(|&i| carrier[i]).collect();
                        self.holds(p, &args)
                    })
                    .collect()
            })
            .collect();
        let functions = self
            .sig
            .functions()
            .iter()
            .enumerate()
            .map(|(f, sym)| {
                tuples(m, sym.arity)
                    .map(|t| {
                        let args: Vec<Elem> = t.iter().map(|&i| carrier[i]).collect();
                        local[self.apply(f, &args)]
                    })
                    .collect()
            })
            .collect();
        let constants = self.constants.iter().map(|&c| local[c]).collect();
        Ok(Structure::from_tables_unchecked(
            self.sig.clone(),
            m,
            relations,
            functions,
            constants,
        ))
    }

    /// The image of this structure under the bijection `perm` (element `a`
    /// becomes `perm[a]`).
    pub fn permute(&self, perm: &[Elem]) -> Structure {
        let n = self.size;
        let mut inv = vec![0; n];
        for (a, &b) in perm.iter().enumerate() {
            inv[b] = a;
        }
        let pull = |code: usize, k: usize| -> Vec<Elem> {
            decode_tuple(code, n, k)
                .into_iter()
                .map(|b| inv[b])
                .collect()
        };
        let relations = self
            .sig
            .predicates()
            .iter()
            .enumerate()
            .map(|(p, sym)| {
                (0..tuple_count(n, sym.arity))
                    .map(|code| self.holds(p, &pull(code, sym.arity)))
                    .collect()
            })
            .collect();
        let functions = self
            .sig
            .functions()
            .iter()
            .enumerate()
            .map(|(f, sym)| {
                (0..tuple_count(n, sym.arity))
                    .map(|code| perm[self.apply(f, &pull(code, sym.arity))])
                    .collect()
            })
            .collect();
        let constants = self.constants.iter().map(|&c| perm[c]).collect();
        Structure::from_tables_unchecked(self.sig.clone(), n, relations, functions, constants)
    }

    /// Flat encoding: relation bits, then function tables, then constants.
    /// Structures over the same signature and size are equal iff their
    /// encodings are equal; canonical forms minimise this encoding.
    pub fn encoding(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for r in &self.relations {
            out.extend(r.iter().map(|&b| b as usize));
        }
        for t in &self.functions {
            out.extend_from_slice(t);
        }
        out.extend_from_slice(&self.constants);
        out
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::write_structure("S", self))
    }
}

/// An unchecked structure description as read from a file or assembled by
/// hand. [`validate_structure`] reports every way it fails to be a structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawStructure {
    pub size: usize,
    /// Per predicate, the listed tuples.
    pub relations: Vec<Vec<Vec<Elem>>>,
    /// Per function, the listed `(arguments, value)` entries.
    pub functions: Vec<Vec<(Vec<Elem>, Elem)>>,
    /// Per constant, its value if given.
    pub constants: Vec<Option<Elem>>,
}

impl RawStructure {
    pub fn new(sig: &Signature, size: usize) -> Self {
        RawStructure {
            size,
            relations: vec![Vec::new(); sig.predicates().len()],
            functions: vec![Vec::new(); sig.functions().len()],
            constants: vec![None; sig.constants().len()],
        }
    }
}

/// A single way in which a [`RawStructure`] fails to be a structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyUniverse,
    Shape,
    WrongArity {
        symbol: String,
        tuple: Vec<Elem>,
    },
    TupleOutOfRange {
        symbol: String,
        tuple: Vec<Elem>,
    },
    ValueOutOfRange {
        symbol: String,
        tuple: Vec<Elem>,
        value: Elem,
    },
    Conflicting {
        symbol: String,
        tuple: Vec<Elem>,
    },
    NotTotal {
        symbol: String,
        tuple: Vec<Elem>,
    },
    ConstantMissing {
        symbol: String,
    },
    ConstantOutOfRange {
        symbol: String,
        value: Elem,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptyUniverse => write!(f, "universe is empty"),
            Shape => write!(f, "symbol tables do not match the signature"),
            WrongArity { symbol, tuple } => {
                write!(f, "{symbol} tuple {} has wrong arity", format_tuple(tuple))
            }
            TupleOutOfRange { symbol, tuple } => {
                write!(f, "{symbol} tuple {} out of range", format_tuple(tuple))
            }
            ValueOutOfRange {
                symbol,
                tuple,
                value,
            } => write!(
                f,
                "{symbol} value {value} at {} out of range",
                format_tuple(tuple)
            ),
            Conflicting { symbol, tuple } => {
                write!(
                    f,
                    "{symbol} has conflicting values at {}",
                    format_tuple(tuple)
                )
            }
            NotTotal { symbol, tuple } => {
                write!(f, "{symbol} not total at {}", format_tuple(tuple))
            }
            ConstantMissing { symbol } => write!(f, "{symbol} has no interpretation"),
            ConstantOutOfRange { symbol, value } => {
                write!(f, "{symbol} value {value} out of range")
            }
        }
    }
}

/// Every invariant violation of `raw` against `sig`; empty iff `raw`
/// describes a structure.
pub fn validate_structure(sig: &Signature, raw: &RawStructure) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = raw.size;
    if n == 0 {
        out.push(Violation::EmptyUniverse);
    }
    if raw.relations.len() != sig.predicates().len()
        || raw.functions.len() != sig.functions().len()
        || raw.constants.len() != sig.constants().len()
    {
        out.push(Violation::Shape);
        return out;
    }
    for (sym, tuples) in sig.predicates().iter().zip(&raw.relations) {
        for t in tuples {
            if t.len() != sym.arity {
                out.push(Violation::WrongArity {
                    symbol: sym.name.clone(),
                    tuple: t.clone(),
                });
            } else if t.iter().any(|&a| a >= n) {
                out.push(Violation::TupleOutOfRange {
                    symbol: sym.name.clone(),
                    tuple: t.clone(),
                });
            }
        }
    }
    for (sym, entries) in sig.functions().iter().zip(&raw.functions) {
        let mut seen: BTreeMap<&[Elem], Elem> = BTreeMap::new();
        for (args, value) in entries {
            if args.len() != sym.arity {
                out.push(Violation::WrongArity {
                    symbol: sym.name.clone(),
                    tuple: args.clone(),
                });
                continue;
            }
            if args.iter().any(|&a| a >= n) {
                out.push(Violation::TupleOutOfRange {
                    symbol: sym.name.clone(),
                    tuple: args.clone(),
                });
                continue;
            }
            if *value >= n {
                out.push(Violation::ValueOutOfRange {
                    symbol: sym.name.clone(),
                    tuple: args.clone(),
                    value: *value,
                });
            }
            match seen.insert(args, *value) {
                Some(prev) if prev != *value => out.push(Violation::Conflicting {
                    symbol: sym.name.clone(),
                    tuple: args.clone(),
                }),
                _ => {}
            }
        }
        if n > 0 {
            for t in tuples(n, sym.arity) {
                if !seen.contains_key(t.as_slice()) {
                    out.push(Violation::NotTotal {
                        symbol: sym.name.clone(),
                        tuple: t,
                    });
                }
            }
        }
    }
    for (name, value) in sig.constants().iter().zip(&raw.constants) {
        match value {
            None => out.push(Violation::ConstantMissing {
                symbol: name.clone(),
            }),
            Some(v) if *v >= n => out.push(Violation::ConstantOutOfRange {
                symbol: name.clone(),
                value: *v,
            }),
            _ => {}
        }
    }
    out
}

impl RawStructure {
    /// Converts to a [`Structure`] if and only if there are no violations.
    pub fn into_structure(self, sig: &Arc<Signature>) -> Result<Structure, StructureError> {
        let violations = validate_structure(sig, &self);
        if !violations.is_empty() {
            return Err(StructureError::Invalid(violations));
        }
        let n = self.size;
        let relations = sig
            .predicates()
            .iter()
            .zip(&self.relations)
            .map(|(sym, ts)| {
                let mut table = vec![false; tuple_count(n, sym.arity)];
                for t in ts {
                    table[tuple_code(t, n)] = true;
                }
                table
            })
            .collect();
        let functions = sig
            .functions()
            .iter()
            .zip(&self.functions)
            .map(|(sym, entries)| {
                let mut table = vec![0; tuple_count(n, sym.arity)];
                for (args, v) in entries {
                    table[tuple_code(args, n)] = *v;
                }
                table
            })
            .collect();
        let constants = self.constants.iter().map(|c| c.unwrap_or(0)).collect();
        Ok(Structure::from_tables_unchecked(
            sig.clone(),
            n,
            relations,
            functions,
            constants,
        ))
    }
}

/// Convenience construction by symbol name.
pub struct StructureBuilder {
    sig: Arc<Signature>,
    raw: RawStructure,
}

impl StructureBuilder {
    /// Adds a tuple to a predicate. Panics on an unknown predicate name.
    pub fn tuple(mut self, pred: &str, tuple: &[Elem]) -> Self {
        let p = self.sig.predicate(pred).expect("unknown predicate");
        self.raw.relations[p].push(tuple.to_vec());
        self
    }

    pub fn tuples(mut self, pred: &str, tuples: &[&[Elem]]) -> Self {
        for t in tuples {
            self = self.tuple(pred, t);
        }
        self
    }

    /// Sets one function entry. Panics on an unknown function name.
    pub fn entry(mut self, func: &str, args: &[Elem], value: Elem) -> Self {
        let f = self.sig.function(func).expect("unknown function");
        self.raw.functions[f].push((args.to_vec(), value));
        self
    }

    /// Fills a whole function table from a closure.
    pub fn function_fn(mut self, func: &str, g: impl Fn(&[Elem]) -> Elem) -> Self {
        let f = self.sig.function(func).expect("unknown function");
        let k = self.sig.functions()[f].arity;
        for t in tuples(self.raw.size, k) {
            let v = g(&t);
            self.raw.functions[f].push((t, v));
        }
        self
    }

    /// Fills a unary function table from its list of values.
    pub fn unary(self, func: &str, values: &[Elem]) -> Self {
        self.function_fn(func, |t| values[t[0]])
    }

    pub fn constant(mut self, name: &str, value: Elem) -> Self {
        let c = self.sig.constant(name).expect("unknown constant");
        self.raw.constants[c] = Some(value);
        self
    }

    pub fn raw(&self) -> &RawStructure {
        &self.raw
    }

    pub fn build(self) -> Result<Structure, StructureError> {
        self.raw.into_structure(&self.sig)
    }
}
