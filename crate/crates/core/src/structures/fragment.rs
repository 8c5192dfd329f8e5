// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use itertools::Itertools;

use super::structure::{decode_tuple, format_tuple, tuple_code, tuple_count};
use super::{Elem, Signature, Structure, StructureError};

/// The value of a partial function at a carrier tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    /// The value lies in the carrier.
    Inside(Elem),
    /// The parent's value lies outside the carrier.
    Escapes,
}

/// A partial submodel: a carrier subset of a parent universe together with
/// the inherited predicates and the inherited functions, made partial.
///
/// Internally the carrier is indexed locally (`0..m` in increasing label
/// order) and a function entry of `None` is the ESCAPES marker.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fragment {
    sig: Arc<Signature>,
    parent_size: usize,
    carrier: Vec<Elem>,
    relations: Vec<Vec<bool>>,
    functions: Vec<Vec<Option<usize>>>,
    constants: Vec<Option<usize>>,
}

/// The fragment of `s` on `carrier`.
pub fn induced_fragment(s: &Structure, carrier: &[Elem]) -> Result<Fragment, StructureError> {
    Fragment::induced(s, carrier)
}

impl Fragment {
    /// A fragment with empty relations and every function entry and constant
    /// marked ESCAPES; refine with the setters.
    pub fn new(
        sig: &Arc<Signature>,
        parent_size: usize,
        carrier: &[Elem],
    ) -> Result<Self, StructureError> {
        let carrier: Vec<Elem> = carrier.iter().copied().sorted().dedup().collect();
        if carrier.iter().any(|&a| a >= parent_size) {
            return Err(StructureError::ElementOutOfRange);
        }
        let m = carrier.len();
        Ok(Fragment {
            sig: sig.clone(),
            parent_size,
            relations: sig
                .predicates()
                .iter()
                .map(|p| vec![false; tuple_count(m, p.arity)])
                .collect(),
            functions: sig
                .functions()
                .iter()
                .map(|f| vec![None; tuple_count(m, f.arity)])
                .collect(),
            constants: vec![None; sig.constants().len()],
            carrier,
        })
    }

    pub fn induced(s: &Structure, carrier: &[Elem]) -> Result<Self, StructureError> {
        let mut frag = Fragment::new(s.signature_arc(), s.size(), carrier)?;
        let mut local = vec![None; s.size()];
        for (i, &a) in frag.carrier.iter().enumerate() {
            local[a] = Some(i);
        }
        let m = frag.carrier.len();
        let sig = s.signature_arc().clone();
        for (p, sym) in sig.predicates().iter().enumerate() {
            for code in 0..tuple_count(m, sym.arity) {
                let args = frag.globalise(&decode_tuple(code, m, sym.arity));
                frag.relations[p][code] = s.holds(p, &args);
            }
        }
        for (f, sym) in sig.functions().iter().enumerate() {
            for code in 0..tuple_count(m, sym.arity) {
                let args = frag.globalise(&decode_tuple(code, m, sym.arity));
                frag.functions[f][code] = local[s.apply(f, &args)];
            }
        }
        for c in 0..sig.constants().len() {
            frag.constants[c] = local[s.constant(c)];
        }
        Ok(frag)
    }

    fn globalise(&self, local: &[usize]) -> Vec<Elem> {
        local.iter().map(|&i| self.carrier[i]).collect()
    }

    fn localise(&self, tuple: &[Elem]) -> Result<Vec<usize>, StructureError> {
        tuple
            .iter()
            .map(|a| {
                self.carrier
                    .binary_search(a)
                    .map_err(|_| StructureError::ElementOutOfRange)
            })
            .collect()
    }

    fn localise_slot(&self, slot: Slot) -> Result<Option<usize>, StructureError> {
        match slot {
            Slot::Escapes => Ok(None),
            Slot::Inside(a) => Ok(Some(self.localise(&[a])?[0])),
        }
    }

    fn globalise_slot(&self, local: Option<usize>) -> Slot {
        match local {
            Some(i) => Slot::Inside(self.carrier[i]),
            None => Slot::Escapes,
        }
    }

    pub fn set_tuple(
        &mut self,
        pred: usize,
        tuple: &[Elem],
        value: bool,
    ) -> Result<(), StructureError> {
        let local = self.localise(tuple)?;
        let code = tuple_code(&local, self.carrier.len());
        self.relations[pred][code] = value;
        Ok(())
    }

    pub fn set_slot(
        &mut self,
        func: usize,
        args: &[Elem],
        slot: Slot,
    ) -> Result<(), StructureError> {
        let local = self.localise(args)?;
        let code = tuple_code(&local, self.carrier.len());
        self.functions[func][code] = self.localise_slot(slot)?;
        Ok(())
    }

    pub fn set_constant(&mut self, c: usize, slot: Slot) -> Result<(), StructureError> {
        self.constants[c] = self.localise_slot(slot)?;
        Ok(())
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn parent_size(&self) -> usize {
        self.parent_size
    }

    /// Carrier elements in increasing order.
    pub fn carrier(&self) -> &[Elem] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn holds(&self, pred: usize, tuple: &[Elem]) -> Result<bool, StructureError> {
        let local = self.localise(tuple)?;
        Ok(self.relations[pred][tuple_code(&local, self.carrier.len())])
    }

    pub fn slot(&self, func: usize, args: &[Elem]) -> Result<Slot, StructureError> {
        let local = self.localise(args)?;
        Ok(self.globalise_slot(self.functions[func][tuple_code(&local, self.carrier.len())]))
    }

    pub fn constant_slot(&self, c: usize) -> Slot {
        self.globalise_slot(self.constants[c])
    }

    /// Number of function entries and constants marked ESCAPES.
    pub fn escapes_count(&self) -> usize {
        self.functions
            .iter()
            .flatten()
            .filter(|v| v.is_none())
            .count()
            + self.constants.iter().filter(|v| v.is_none()).count()
    }

    /// A nonempty fragment without ESCAPES entries is a submodel.
    pub fn is_submodel(&self) -> bool {
        !self.carrier.is_empty() && self.escapes_count() == 0
    }

    /// The fragment as a structure on `0..m`, when it is a submodel.
    pub fn to_structure(&self) -> Option<Structure> {
        if !self.is_submodel() {
            return None;
        }
        Some(Structure::from_tables_unchecked(
            self.sig.clone(),
            self.carrier.len(),
            self.relations.clone(),
            self.functions
                .iter()
                .map(|t| t.iter().map(|v| v.unwrap()).collect())
                .collect(),
            self.constants.iter().map(|v| v.unwrap()).collect(),
        ))
    }

    #[inline]
    pub(crate) fn local_holds(&self, pred: usize, code: usize) -> bool {
        self.relations[pred][code]
    }

    #[inline]
    pub(crate) fn local_value(&self, func: usize, code: usize) -> Option<usize> {
        self.functions[func][code]
    }

    #[inline]
    pub(crate) fn local_constant(&self, c: usize) -> Option<usize> {
        self.constants[c]
    }

    /// Encoding of the fragment after relabelling local index `i` to
    /// `perm[i]`; ESCAPES encodes as `m`.
    pub(crate) fn permuted_encoding(&self, perm: &[usize]) -> Vec<usize> {
        let m = self.carrier.len();
        let mut inv = vec![0; m];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        let pull = |code: usize, k: usize| -> usize {
            let t: Vec<usize> = decode_tuple(code, m, k)
                .into_iter()
                .map(|j| inv[j])
                .collect();
            tuple_code(&t, m)
        };
        let mut out = Vec::new();
        for (p, sym) in self.sig.predicates().iter().enumerate() {
            for code in 0..tuple_count(m, sym.arity) {
                out.push(self.relations[p][pull(code, sym.arity)] as usize);
            }
        }
        let map_val = |v: Option<usize>| v.map_or(m, |i| perm[i]);
        for (f, sym) in self.sig.functions().iter().enumerate() {
            for code in 0..tuple_count(m, sym.arity) {
                out.push(map_val(self.functions[f][pull(code, sym.arity)]));
            }
        }
        out.extend(self.constants.iter().map(|&v| map_val(v)));
        out
    }

    /// Minimum encoding over all relabellings of the carrier: equal for two
    /// fragments iff they are isomorphic.
    pub fn canonical_key(&self) -> Vec<usize> {
        let m = self.carrier.len();
        let mut best: Option<Vec<usize>> = None;
        for perm in (0..m).permutations(m) {
            let enc = self.permuted_encoding(&perm);
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
        let mut key = vec![m];
        key.extend(best.unwrap_or_default());
        key
    }

    /// Human-readable listing used in reports.
    pub fn describe(&self) -> String {
        let mut lines = vec![format!(
            "carrier {{{}}}",
            self.carrier.iter().map(|a| a.to_string()).join(",")
        )];
        let m = self.carrier.len();
        for (p, sym) in self.sig.predicates().iter().enumerate() {
            for code in 0..tuple_count(m, sym.arity) {
                if self.relations[p][code] {
                    let t = self.globalise(&decode_tuple(code, m, sym.arity));
                    lines.push(format!("{}{}", sym.name, format_tuple(&t)));
                }
            }
        }
        for (f, sym) in self.sig.functions().iter().enumerate() {
            for code in 0..tuple_count(m, sym.arity) {
                let t = self.globalise(&decode_tuple(code, m, sym.arity));
                let v = match self.globalise_slot(self.functions[f][code]) {
                    Slot::Inside(a) => a.to_string(),
                    Slot::Escapes => "ESCAPES".to_string(),
                };
                lines.push(format!("{}{} -> {}", sym.name, format_tuple(&t), v));
            }
        }
        for (c, name) in self.sig.constants().iter().enumerate() {
            let v = match self.constant_slot(c) {
                Slot::Inside(a) => a.to_string(),
                Slot::Escapes => "ESCAPES".to_string(),
            };
            lines.push(format!("{name} = {v}"));
        }
        lines.join("\n")
    }
}
