// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::sync::Arc;

use itertools::Itertools;

use super::structure::{tuple_count, tuples};
use super::{Elem, Signature, Structure, StructureError};

/// Default ceiling on the number of labelled structures an enumeration may
/// visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 5_000_000;

/// Number of labelled structures of size `n` over `sig`, saturating at
/// `u128::MAX`.
pub fn labelled_count(sig: &Signature, n: usize) -> u128 {
    let mut total: u128 = 1;
    let mut mul = |base: u128, exp: usize| {
        for _ in 0..exp {
            total = total.saturating_mul(base);
        }
    };
    for p in sig.predicates() {
        mul(2, tuple_count(n, p.arity));
    }
    for f in sig.functions() {
        mul(n as u128, tuple_count(n, f.arity));
    }
    mul(n as u128, sig.constants().len());
    total
}

/// Stream of structures of one size, in increasing order of
/// [`Structure::encoding`].
pub struct StructureStream {
    sig: Arc<Signature>,
    size: usize,
    up_to_iso: bool,
    radices: Vec<usize>,
    digits: Option<Vec<usize>>,
}

/// All structures of size `n` over `sig`; with `up_to_iso`, exactly the
/// canonical representative (minimal encoding) of each isomorphism class.
pub fn enumerate_structures(
    sig: &Arc<Signature>,
    n: usize,
    up_to_iso: bool,
    cap: u64,
) -> Result<StructureStream, StructureError> {
    if n == 0 {
        return Err(StructureError::EmptyUniverse);
    }
    let count = labelled_count(sig, n);
    if count > cap as u128 {
        return Err(StructureError::CapExceeded { count, cap });
    }
    let mut radices = Vec::new();
    for p in sig.predicates() {
        radices.extend(std::iter::repeat_n(2, tuple_count(n, p.arity)));
    }
    for f in sig.functions() {
        radices.extend(std::iter::repeat_n(n, tuple_count(n, f.arity)));
    }
    radices.extend(std::iter::repeat_n(n, sig.constants().len()));
    Ok(StructureStream {
        sig: sig.clone(),
        size: n,
        up_to_iso,
        digits: Some(vec![0; radices.len()]),
        radices,
    })
}

impl StructureStream {
    fn build(&self, digits: &[usize]) -> Structure {
        let n = self.size;
        let mut at = 0;
        let mut take = |len: usize| {
            let out = &digits[at..at + len];
            at += len;
            out
        };
        let relations = self
            .sig
            .predicates()
            .iter()
            .map(|p| {
                take(tuple_count(n, p.arity))
                    .iter()
                    .map(|&d| d == 1)
                    .collect()
            })
            .collect();
        let functions = self
            .sig
            .functions()
            .iter()
            .map(|f| take(tuple_count(n, f.arity)).to_vec())
            .collect();
        let constants = take(self.sig.constants().len()).to_vec();
        Structure::from_tables_unchecked(self.sig.clone(), n, relations, functions, constants)
    }

    fn advance(&mut self) {
        let Some(digits) = self.digits.as_mut() else {
            return;
        };
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < self.radices[i] {
                return;
            }
            digits[i] = 0;
        }
        self.digits = None;
    }
}

impl Iterator for StructureStream {
    type Item = Structure;

    fn next(&mut self) -> Option<Structure> {
        loop {
            let s = self.build(self.digits.as_ref()?);
            self.advance();
            if !self.up_to_iso || is_canonical(&s) {
                return Some(s);
            }
        }
    }
}

/// Compares the encoding of `s.permute(perm)` against the encoding of `s`
/// without materialising either.
fn compare_permuted(s: &Structure, perm: &[Elem], inv: &[Elem]) -> Ordering {
    let n = s.size();
    let pull = |code: usize, k: usize| -> usize {
        let (mut rem, mut out, mut mult) = (code, 0, 1);
        for _ in 0..k {
            out += inv[rem % n] * mult;
            rem /= n;
            mult *= n;
        }
        out
    };
    let sig = s.signature();
    for (p, sym) in sig.predicates().iter().enumerate() {
        let table = s.relation_table(p);
        for code in 0..table.len() {
            let theirs = table[pull(code, sym.arity)];
            match theirs.cmp(&table[code]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
    }
    for (f, sym) in sig.functions().iter().enumerate() {
        let table = s.function_table(f);
        for code in 0..table.len() {
            let theirs = perm[table[pull(code, sym.arity)]];
            match theirs.cmp(&table[code]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
    }
    for &c in s.constants() {
        match perm[c].cmp(&c) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

pub(super) fn inverse(perm: &[Elem]) -> Vec<Elem> {
    let mut inv = vec![0; perm.len()];
    for (a, &b) in perm.iter().enumerate() {
        inv[b] = a;
    }
    inv
}

/// Whether `s` has the minimal encoding in its isomorphism class.
pub fn is_canonical(s: &Structure) -> bool {
    let n = s.size();
    (0..n).permutations(n).all(|perm| {
        let inv = inverse(&perm);
        compare_permuted(s, &perm, &inv) != Ordering::Less
    })
}

/// The member of the isomorphism class of `s` with minimal encoding, and the
/// permutation taking `s` to it.
pub fn canonical_form(s: &Structure) -> (Structure, Vec<Elem>) {
    let n = s.size();
    let mut best: Option<(Vec<usize>, Vec<Elem>)> = None;
    for perm in (0..n).permutations(n) {
        let enc = s.permute(&perm).encoding();
        if best.as_ref().is_none_or(|(b, _)| enc < *b) {
            best = Some((enc, perm));
        }
    }
    let (_, perm) = best.expect("nonempty universe");
    (s.permute(&perm), perm)
}

/// Least superset of `seed` and the constants closed under every function,
/// as a sorted carrier. Returns an empty carrier only for an empty seed in a
/// constant-free signature.
pub fn closure(s: &Structure, seed: &[Elem]) -> Result<Vec<Elem>, StructureError> {
    let mut members = vec![false; s.size()];
    let mut list = Vec::new();
    for &a in seed.iter().chain(s.constants()) {
        if a >= s.size() {
            return Err(StructureError::ElementOutOfRange);
        }
        if !members[a] {
            members[a] = true;
            list.push(a);
        }
    }
    let sig = s.signature();
    loop {
        let snapshot = list.clone();
        let before = list.len();
        for (f, sym) in sig.functions().iter().enumerate() {
            for t in tuples(snapshot.len(), sym.arity) {
                let args: Vec<Elem> = t.iter().map(|&i| snapshot[i]).collect();
                let v = s.apply(f, &args);
                if !members[v] {
                    members[v] = true;
                    list.push(v);
                }
            }
        }
        if list.len() == before {
            break;
        }
    }
    list.sort_unstable();
    Ok(list)
}

/// A submodel given by its carrier in the parent together with the induced
/// structure relabelled to `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substructure {
    pub carrier: Vec<Elem>,
    pub structure: Structure,
}

/// The smallest submodel of `s` containing `seed`.
pub fn generated_submodel(s: &Structure, seed: &[Elem]) -> Result<Substructure, StructureError> {
    let carrier = closure(s, seed)?;
    if carrier.is_empty() {
        return Err(StructureError::EmptySeed);
    }
    let structure = s.restrict(&carrier)?;
    Ok(Substructure { carrier, structure })
}

/// Carriers of all submodels of `s` (nonempty, containing the constants,
/// closed under the functions), ordered by size then lexicographically, with
/// at most `max_card` elements when a bound is given.
pub fn enumerate_submodels(
    s: &Structure,
    max_card: Option<usize>,
) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let n = s.size();
    let top = max_card.map_or(n, |b| b.min(n));
    (1..=top).flat_map(move |k| {
        (0..n).combinations(k).filter(move |c| {
            let mut members = vec![false; n];
            for &a in c {
                members[a] = true;
            }
            s.is_closed(&members)
        })
    })
}
