// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

//! The plain-text signature/structure file format.
//!
//! ```text
//! signature
//! predicate R 2
//! function F 1
//! constant c
//! end
//! structure A
//! universe 3
//! R 0 1
//! F 0 -> 1
//! F 1 -> 2
//! F 2 -> 2
//! c 0
//! end
//! ```
//!
//! `#` starts a comment running to the end of the line. Every function must
//! list all of its tuples.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use super::structure::{tuple_count, tuples};
use super::{RawStructure, Signature, Structure, StructureError, Symbol, SymbolKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedStructure {
    pub name: String,
    pub structure: Structure,
    /// Line of the `structure` header.
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFile {
    pub signature: Arc<Signature>,
    pub structures: Vec<NamedStructure>,
}

impl StructureFile {
    pub fn get(&self, name: &str) -> Option<&Structure> {
        self.structures
            .iter()
            .find(|s| s.name == name)
            .map(|s| &s.structure)
    }
}

/// An unvalidated structure block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBlock {
    pub name: String,
    pub line: usize,
    pub raw: RawStructure,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line with comments stripped, as whitespace tokens.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let content = line.split('#').next().unwrap_or("");
            let toks: Vec<&str> = content.split_whitespace().collect();
            if !toks.is_empty() {
                return Some((i + 1, toks));
            }
        }
        None
    }
}

fn parse_int(tok: &str, line: usize) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| {
        FormatError::new(
            line,
            format!("expected a non-negative integer, found `{tok}`"),
        )
    })
}

fn parse_signature_lines(lines: &mut Lines<'_>) -> Result<Arc<Signature>, FormatError> {
    let Some((line, toks)) = lines.next_tokens() else {
        return Err(FormatError::new(1, "expected `signature`"));
    };
    if toks != ["signature"] {
        return Err(FormatError::new(line, "expected `signature`"));
    }
    let mut preds = Vec::new();
    let mut funcs = Vec::new();
    let mut consts = Vec::new();
    let mut end_line = line;
    loop {
        let Some((line, toks)) = lines.next_tokens() else {
            return Err(FormatError::new(lines.last, "unterminated signature block"));
        };
        end_line = end_line.max(line);
        match toks.as_slice() {
            ["end"] => break,
            ["predicate", name, arity] => preds.push(Symbol {
                name: name.to_string(),
                arity: parse_int(arity, line)?,
            }),
            ["function", name, arity] => funcs.push(Symbol {
                name: name.to_string(),
                arity: parse_int(arity, line)?,
            }),
            ["constant", name] => consts.push(name.to_string()),
            _ => return Err(FormatError::new(
                line,
                "expected `predicate NAME ARITY`, `function NAME ARITY`, `constant NAME` or `end`",
            )),
        }
    }
    Signature::new(preds, funcs, consts)
        .map(Arc::new)
        .map_err(|e| FormatError::new(end_line, e.to_string()))
}

fn parse_structure_block(
    sig: &Signature,
    lines: &mut Lines<'_>,
    header_line: usize,
    name: &str,
) -> Result<RawBlock, FormatError> {
    let Some((line, toks)) = lines.next_tokens() else {
        return Err(FormatError::new(lines.last, "expected `universe N`"));
    };
    let size = match toks.as_slice() {
        ["universe", n] => parse_int(n, line)?,
        _ => return Err(FormatError::new(line, "expected `universe N`")),
    };
    let mut raw = RawStructure::new(sig, size);
    loop {
        let Some((line, toks)) = lines.next_tokens() else {
            return Err(FormatError::new(
                lines.last,
                format!("unterminated structure `{name}`"),
            ));
        };
        if toks == ["end"] {
            break;
        }
        let sym = toks[0];
        let rest = &toks[1..];
        match sig.lookup(sym) {
            Some(SymbolKind::Predicate(p)) => {
                let arity = sig.predicates()[p].arity;
                if rest.len() != arity {
                    return Err(FormatError::new(
                        line,
                        format!("{sym} expects {arity} arguments, found {}", rest.len()),
                    ));
                }
                let t = rest
                    .iter()
                    .map(|t| parse_int(t, line))
                    .collect::<Result<_, _>>()?;
                raw.relations[p].push(t);
            }
            Some(SymbolKind::Function(f)) => {
                let arity = sig.functions()[f].arity;
                if rest.len() != arity + 2 || rest[arity] != "->" {
                    return Err(FormatError::new(
                        line,
                        format!("expected `{sym}` followed by {arity} arguments, `->` and a value"),
                    ));
                }
                let args = rest[..arity]
                    .iter()
                    .map(|t| parse_int(t, line))
                    .collect::<Result<_, _>>()?;
                let value = parse_int(rest[arity + 1], line)?;
                raw.functions[f].push((args, value));
            }
            Some(SymbolKind::Constant(c)) => {
                if rest.len() != 1 {
                    return Err(FormatError::new(line, format!("expected `{sym} VALUE`")));
                }
                if raw.constants[c].is_some() {
                    return Err(FormatError::new(
                        line,
                        format!("constant `{sym}` given twice"),
                    ));
                }
                raw.constants[c] = Some(parse_int(rest[0], line)?);
            }
            None => return Err(FormatError::new(line, format!("unknown symbol `{sym}`"))),
        }
    }
    Ok(RawBlock {
        name: name.to_string(),
        line: header_line,
        raw,
    })
}

/// Parses a signature block followed by any number of structure blocks
/// without validating the structures.
pub fn parse_raw(text: &str) -> Result<(Arc<Signature>, Vec<RawBlock>), FormatError> {
    let mut lines = Lines::new(text);
    let sig = parse_signature_lines(&mut lines)?;
    let mut blocks = Vec::new();
    while let Some((line, toks)) = lines.next_tokens() {
        match toks.as_slice() {
            ["structure", name] => {
                blocks.push(parse_structure_block(&sig, &mut lines, line, name)?)
            }
            _ => return Err(FormatError::new(line, "expected `structure NAME`")),
        }
    }
    Ok((sig, blocks))
}

/// Parses a signature-only file (structure blocks, if present, are checked
/// and then ignored).
pub fn parse_signature(text: &str) -> Result<Arc<Signature>, FormatError> {
    parse_raw(text).map(|(sig, _)| sig)
}

/// Parses and validates a file holding a signature and at least one structure.
pub fn parse_structure_file(text: &str) -> Result<StructureFile, FormatError> {
    let (sig, blocks) = parse_raw(text)?;
    if blocks.is_empty() {
        return Err(FormatError::new(1, "file contains no structure"));
    }
    let mut structures = Vec::new();
    for b in blocks {
        let structure = b.raw.into_structure(&sig).map_err(|e| match e {
            StructureError::Invalid(v) => FormatError::new(
                b.line,
                format!(
                    "structure `{}`: {}",
                    b.name,
                    v.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("; ")
                ),
            ),
            other => FormatError::new(b.line, other.to_string()),
        })?;
        structures.push(NamedStructure {
            name: b.name,
            structure,
            line: b.line,
        });
    }
    Ok(StructureFile {
        signature: sig,
        structures,
    })
}

pub fn write_signature(sig: &Signature) -> String {
    let mut out = String::from("signature\n");
    for p in sig.predicates() {
        let _ = writeln!(out, "predicate {} {}", p.name, p.arity);
    }
    for f in sig.functions() {
        let _ = writeln!(out, "function {} {}", f.name, f.arity);
    }
    for c in sig.constants() {
        let _ = writeln!(out, "constant {c}");
    }
    out.push_str("end\n");
    out
}

fn join(t: &[usize]) -> String {
    t.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_structure(name: &str, s: &Structure) -> String {
    let sig = s.signature();
    let n = s.size();
    let mut out = format!("structure {name}\nuniverse {n}\n");
    for (p, sym) in sig.predicates().iter().enumerate() {
        for t in s.relation_tuples(p) {
            let _ = writeln!(out, "{} {}", sym.name, join(&t));
        }
    }
    for (f, sym) in sig.functions().iter().enumerate() {
        debug_assert_eq!(tuples(n, sym.arity).count(), tuple_count(n, sym.arity));
        for t in tuples(n, sym.arity) {
            let _ = writeln!(out, "{} {} -> {}", sym.name, join(&t), s.apply(f, &t));
        }
    }
    for (c, name) in sig.constants().iter().enumerate() {
        let _ = writeln!(out, "{name} {}", s.constant(c));
    }
    out.push_str("end\n");
    out
}

/// A complete file: signature block then the named structures.
pub fn write_file<'a>(
    sig: &Signature,
    items: impl IntoIterator<Item = (&'a str, &'a Structure)>,
) -> String {
    let mut out = write_signature(sig);
    for (name, s) in items {
        out.push_str(&write_structure(name, s));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNAR: &str = "\
# a 4-cycle
signature
function F 1
end
structure Z4
universe 4
F 0 -> 1
F 1 -> 2   # successor
F 2 -> 3
F 3 -> 0
end
";

    #[test]
    fn parses_and_round_trips() {
        let file = parse_structure_file(UNAR).unwrap();
        assert_eq!(file.structures.len(), 1);
        let s = file.get("Z4").unwrap();
        assert_eq!(s.apply(0, &[3]), 0);
        let text = write_file(&file.signature, [("Z4", s)]);
        let again = parse_structure_file(&text).unwrap();
        assert_eq!(again.get("Z4").unwrap(), s);
    }

    #[test]
    fn missing_entry_reports_structure_line() {
        let text = UNAR.replace("F 2 -> 3\n", "");
        let err = parse_structure_file(&text).unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("F not total at (2)"), "{err}");
    }

    #[test]
    fn unknown_symbol_reports_its_line() {
        let text = UNAR.replace("F 1 -> 2", "G 1 -> 2");
        let err = parse_structure_file(&text).unwrap_err();
        assert_eq!(err.line, 8);
        assert!(err.message.contains("unknown symbol `G`"));
    }

    #[test]
    fn predicate_and_constant_lines() {
        let text =
            "signature\npredicate R 2\nconstant c\nend\nstructure K\nuniverse 2\nR 0 0\nc 1\nend\n";
        let file = parse_structure_file(text).unwrap();
        let s = &file.structures[0].structure;
        assert!(s.holds(0, &[0, 0]));
        assert!(!s.holds(0, &[0, 1]));
        assert_eq!(s.constant(0), 1);
        assert_eq!(write_file(&file.signature, [("K", s)]), text);
    }

    #[test]
    fn signature_only_file() {
        let sig = parse_signature("signature\npredicate R 2\nend\n").unwrap();
        assert_eq!(sig.predicates().len(), 1);
        assert!(parse_structure_file("signature\nend\n").is_err());
    }
}
