// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A named symbol with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// What a name in a signature refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Predicate(usize),
    Function(usize),
    Constant(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("symbol `{0}` is declared more than once")]
    Duplicate(String),
    #[error("symbol `{0}` must have arity at least 1")]
    ZeroArity(String),
}

/// A finite first-order signature: predicate, function and constant symbols.
///
/// Symbols are addressed by their position in the declaration order, which is
/// also the order used by every enumeration in this crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    predicates: Vec<Symbol>,
    functions: Vec<Symbol>,
    constants: Vec<String>,
}

impl Signature {
    pub fn builder() -> SignatureBuilder {
        SignatureBuilder::default()
    }

    pub fn new(
        predicates: Vec<Symbol>,
        functions: Vec<Symbol>,
        constants: Vec<String>,
    ) -> Result<Self, SignatureError> {
        let mut seen = BTreeSet::new();
        for sym in predicates.iter().chain(&functions) {
            if sym.arity == 0 {
                return Err(SignatureError::ZeroArity(sym.name.clone()));
            }
            if !seen.insert(sym.name.as_str()) {
                return Err(SignatureError::Duplicate(sym.name.clone()));
            }
        }
        for c in &constants {
            if !seen.insert(c.as_str()) {
                return Err(SignatureError::Duplicate(c.clone()));
            }
        }
        Ok(Signature {
            predicates,
            functions,
            constants,
        })
    }

    pub fn predicates(&self) -> &[Symbol] {
        &self.predicates
    }

    pub fn functions(&self) -> &[Symbol] {
        &self.functions
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn predicate(&self, name: &str) -> Option<usize> {
        self.predicates.iter().position(|s| s.name == name)
    }

    pub fn function(&self, name: &str) -> Option<usize> {
        self.functions.iter().position(|s| s.name == name)
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.iter().position(|c| c == name)
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolKind> {
        self.predicate(name)
            .map(SymbolKind::Predicate)
            .or_else(|| self.function(name).map(SymbolKind::Function))
            .or_else(|| self.constant(name).map(SymbolKind::Constant))
    }

    /// No function and no constant symbols.
    pub fn is_predicate_only(&self) -> bool {
        self.functions.is_empty() && self.constants.is_empty()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        parts.extend(
            self.predicates
                .iter()
                .map(|s| format!("{}/{}", s.name, s.arity)),
        );
        parts.extend(
            self.functions
                .iter()
                .map(|s| format!("{}/{}", s.name, s.arity)),
        );
        parts.extend(self.constants.iter().cloned());
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Default)]
pub struct SignatureBuilder {
    predicates: Vec<Symbol>,
    functions: Vec<Symbol>,
    constants: Vec<String>,
}

impl SignatureBuilder {
    pub fn predicate(mut self, name: &str, arity: usize) -> Self {
        self.predicates.push(Symbol {
            name: name.to_string(),
            arity,
        });
        self
    }

    pub fn function(mut self, name: &str, arity: usize) -> Self {
        self.functions.push(Symbol {
            name: name.to_string(),
            arity,
        });
        self
    }

    pub fn constant(mut self, name: &str) -> Self {
        self.constants.push(name.to_string());
        self
    }

    pub fn build(self) -> Result<Signature, SignatureError> {
        Signature::new(self.predicates, self.functions, self.constants)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected_across_kinds() {
        let err = Signature::builder()
            .predicate("R", 2)
            .constant("R")
            .build()
            .unwrap_err();
        assert_eq!(err, SignatureError::Duplicate("R".into()));
    }

    #[test]
    fn zero_arity_rejected() {
        assert!(Signature::builder().function("F", 0).build().is_err());
    }

    #[test]
    fn lookup_kinds() {
        let sig = Signature::builder()
            .predicate("R", 2)
            .function("F", 1)
            .constant("c")
            .build()
            .unwrap();
        assert_eq!(sig.lookup("R"), Some(SymbolKind::Predicate(0)));
        assert_eq!(sig.lookup("F"), Some(SymbolKind::Function(0)));
        assert_eq!(sig.lookup("c"), Some(SymbolKind::Constant(0)));
        assert_eq!(sig.lookup("x"), None);
        assert!(!sig.is_predicate_only());
        assert_eq!(sig.to_string(), "{R/2, F/1, c}");
    }
}
