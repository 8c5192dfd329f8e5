// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::collections::HashSet;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use super::enumerate::{enumerate_structures, inverse};
use super::structure::{tuple_code, tuples};
use super::{Signature, Structure, StructureError};

/// Representatives of the isomorphism classes of structures of size `n`,
/// each the member with minimal encoding, in increasing encoding order.
///
/// The result equals collecting `enumerate_structures(sig, n, true, cap)`.
/// For signatures with predicates only (and encodings of at most 64 bits),
/// classes of size `n` are instead obtained by adding one element to every
/// class of size `n - 1` in all possible ways, and `cap` bounds the number
/// of such candidates rather than the number of labelled structures.
pub fn iso_classes(
    sig: &Arc<Signature>,
    n: usize,
    cap: u64,
) -> Result<Vec<Structure>, StructureError> {
    let layout = Layout::new(sig, n);
    if n <= 1 || !sig.is_predicate_only() || layout.as_ref().is_none() {
        return Ok(enumerate_structures(sig, n, true, cap)?.collect());
    }
    let layout = layout.unwrap();
    let smaller = iso_classes(sig, n - 1, cap)?;
    let new_positions: Vec<usize> = (0..layout.len).filter(|&c| !layout.old[c]).collect();
    let count = (smaller.len() as u128) << new_positions.len();
    if count > cap as u128 {
        return Err(StructureError::CapExceeded { count, cap });
    }
    let candidates: Vec<(u64, u64)> = smaller
        .par_iter()
        .flat_map_iter(|t| {
            let base = layout.embed(t);
            let new_positions = &new_positions;
            let layout = &layout;
            (0..1u64 << new_positions.len()).map(move |extra| {
                let bits = new_positions.iter().enumerate().fold(base, |acc, (j, &c)| {
                    acc | ((extra >> j) & 1) << layout.shift(c)
                });
                (layout.refined_key(bits), bits)
            })
        })
        .collect();
    let mut seen = HashSet::with_capacity(candidates.len() / 4);
    let distinct: Vec<u64> = candidates
        .into_iter()
        .filter_map(|(key, bits)| seen.insert(key).then_some(bits))
        .collect();
    let mut minimal: Vec<u64> = distinct
        .into_par_iter()
        .map(|bits| layout.minimal(bits))
        .collect();
    minimal.sort_unstable();
    Ok(minimal
        .into_iter()
        .map(|bits| layout.decode(sig, bits))
        .collect())
}

/// Bit layout of predicate-only structures of one size: position `c` of the
/// encoding is stored at bit `len - 1 - c`, so integer order is encoding
/// order.
struct Layout {
    n: usize,
    len: usize,
    arities: Vec<usize>,
    offsets: Vec<usize>,
    /// For each permutation, the source position of every target position.
    pulls: Vec<Vec<u8>>,
    inverses: Vec<Vec<usize>>,
    /// Positions whose tuple avoids the last element.
    old: Vec<bool>,
    /// Position in the layout of size `n - 1` for each old position.
    old_pos: Vec<usize>,
}

impl Layout {
    fn new(sig: &Signature, n: usize) -> Option<Self> {
        let arities: Vec<usize> = sig.predicates().iter().map(|p| p.arity).collect();
        let mut offsets = Vec::new();
        let mut len = 0usize;
        for &k in &arities {
            offsets.push(len);
            len = len.checked_add(n.checked_pow(k as u32)?)?;
        }
        if len > 64 || n == 0 || n > 8 {
            return None;
        }
        let positions = |m: usize| -> Vec<(usize, Vec<usize>)> {
            arities
                .iter()
                .enumerate()
                .flat_map(|(p, &k)| tuples(m, k).map(move |t| (p, t)))
                .collect()
        };
        let here = positions(n);
        let mut pulls = Vec::new();
        let mut inverses = Vec::new();
        for perm in (0..n).permutations(n) {
            let inv = inverse(&perm);
            let pull = here
                .iter()
                .map(|(p, t)| {
                    let src: Vec<usize> = t.iter().map(|&x| inv[x]).collect();
                    (offsets[*p] + tuple_code(&src, n)) as u8
                })
                .collect();
            pulls.push(pull);
            inverses.push(inv);
        }
        let old: Vec<bool> = here
            .iter()
            .map(|(_, t)| t.iter().all(|&a| a + 1 < n))
            .collect();
        let mut old_pos = vec![0; len];
        if n > 1 {
            let smaller_offsets: Vec<usize> = arities
                .iter()
                .scan(0, |acc, &k| {
                    let o = *acc;
                    *acc += (n - 1).pow(k as u32);
                    Some(o)
                })
                .collect();
            for (c, (p, t)) in here.iter().enumerate() {
                if old[c] {
                    old_pos[c] = smaller_offsets[*p] + tuple_code(t, n - 1);
                }
            }
        }
        Some(Layout {
            n,
            len,
            arities,
            offsets,
            pulls,
            inverses,
            old,
            old_pos,
        })
    }

    fn shift(&self, c: usize) -> usize {
        self.len - 1 - c
    }

    fn bit(&self, bits: u64, c: usize) -> u64 {
        bits >> self.shift(c) & 1
    }

    /// Bits of `t`, a structure of size `n - 1`, placed in this layout.
    fn embed(&self, t: &Structure) -> u64 {
        let small = t.encoding();
        (0..self.len).filter(|&c| self.old[c]).fold(0, |acc, c| {
            acc | (small[self.old_pos[c]] as u64) << self.shift(c)
        })
    }

    fn permuted(&self, bits: u64, pull: &[u8]) -> u64 {
        pull.iter().enumerate().fold(0, |acc, (c, &src)| {
            acc | self.bit(bits, src as usize) << self.shift(c)
        })
    }

    fn minimal(&self, bits: u64) -> u64 {
        let mut best = bits;
        'perms: for pull in &self.pulls {
            for (c, &src) in pull.iter().enumerate() {
                match self.bit(bits, src as usize).cmp(&self.bit(best, c)) {
                    std::cmp::Ordering::Equal => continue,
                    std::cmp::Ordering::Greater => continue 'perms,
                    std::cmp::Ordering::Less => {
                        best = self.permuted(bits, pull);
                        continue 'perms;
                    }
                }
            }
        }
        best
    }

    /// Minimal encoding over the relabellings that list elements in order
    /// of an isomorphism-invariant profile; equal for isomorphic structures.
    fn refined_key(&self, bits: u64) -> u64 {
        let n = self.n;
        let mut profile = [0u64; 8];
        for (p, &k) in self.arities.iter().enumerate() {
            for code in 0..n.pow(k as u32) {
                if self.bit(bits, self.offsets[p] + code) == 0 {
                    continue;
                }
                let mut rest = code;
                let mut first = None;
                let mut diagonal = true;
                for j in (0..k).rev() {
                    let a = rest % n;
                    rest /= n;
                    let field = (p * 9 + j + 1) as u64;
                    profile[a] = profile[a].wrapping_add(field.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                    diagonal &= first.replace(a).is_none_or(|b| b == a);
                }
                if diagonal && k > 0 {
                    let a = first.unwrap();
                    profile[a] = profile[a]
                        .wrapping_add(((p * 9 + 9) as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F));
                }
            }
        }
        let mut best = u64::MAX;
        for (pull, inv) in self.pulls.iter().zip(&self.inverses) {
            if (1..n).all(|x| profile[inv[x - 1]] <= profile[inv[x]]) {
                best = best.min(self.permuted(bits, pull));
            }
        }
        best
    }

    fn decode(&self, sig: &Arc<Signature>, bits: u64) -> Structure {
        let relations = self
            .arities
            .iter()
            .enumerate()
            .map(|(p, &k)| {
                (0..self.n.pow(k as u32))
                    .map(|code| self.bit(bits, self.offsets[p] + code) == 1)
                    .collect()
            })
            .collect();
        Structure::from_tables_unchecked(Arc::clone(sig), self.n, relations, Vec::new(), Vec::new())
    }
}
