// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use super::structure::{tuple_code, tuples};
use super::{Elem, Fragment, Slot, Structure, StructureError};

/// A bijection between two universes or two carriers, stored as sorted
/// `(source, target)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoMap {
    pairs: Vec<(Elem, Elem)>,
}

impl IsoMap {
    pub fn from_pairs(mut pairs: Vec<(Elem, Elem)>) -> Self {
        pairs.sort_unstable();
        IsoMap { pairs }
    }

    pub fn identity(n: usize) -> Self {
        IsoMap {
            pairs: (0..n).map(|a| (a, a)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.pairs
    }

    pub fn get(&self, a: Elem) -> Option<Elem> {
        self.pairs
            .binary_search_by_key(&a, |&(s, _)| s)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Images in source order.
    pub fn images(&self) -> Vec<Elem> {
        self.pairs.iter().map(|&(_, b)| b).collect()
    }
}

/// Backtracking search for label maps from local indices of `a` into some
/// target, pruned after every assignment.
trait Target {
    fn size(&self) -> usize;
    fn holds(&self, pred: usize, tuple: &[usize]) -> bool;
    /// `None` when the target's value escapes.
    fn value(&self, func: usize, args: &[usize]) -> Option<usize>;
    fn constant(&self, c: usize) -> Option<usize>;
}

struct FragmentTarget<'a>(&'a Fragment);

impl Target for FragmentTarget<'_> {
    fn size(&self) -> usize {
        self.0.len()
    }
    fn holds(&self, pred: usize, tuple: &[usize]) -> bool {
        self.0.local_holds(pred, tuple_code(tuple, self.0.len()))
    }
    fn value(&self, func: usize, args: &[usize]) -> Option<usize> {
        self.0.local_value(func, tuple_code(args, self.0.len()))
    }
    fn constant(&self, c: usize) -> Option<usize> {
        self.0.local_constant(c)
    }
}

struct StructureTarget<'a>(&'a Structure);

impl Target for StructureTarget<'_> {
    fn size(&self) -> usize {
        self.0.size()
    }
    fn holds(&self, pred: usize, tuple: &[usize]) -> bool {
        self.0.holds(pred, tuple)
    }
    fn value(&self, func: usize, args: &[usize]) -> Option<usize> {
        Some(self.0.apply(func, args))
    }
    fn constant(&self, c: usize) -> Option<usize> {
        Some(self.0.constant(c))
    }
}

struct Search<'a, T: Target> {
    source: &'a Fragment,
    target: T,
    /// Whether a source ESCAPES must correspond to a target ESCAPES (fragment
    /// isomorphism) or to a target value outside the image (occurrence).
    escapes_are_values: bool,
    map: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
    find_all: bool,
}

impl<T: Target> Search<'_, T> {
    /// Checks every atom whose arguments are among the first `d + 1` source
    /// elements.
    fn consistent(&self, d: usize) -> bool {
        let sig = self.source.signature();
        let m = self.source.len();
        let assigned = d + 1;
        let image_of = |t: &[usize]| -> Vec<usize> { t.iter().map(|&i| self.map[i]).collect() };
        for (p, sym) in sig.predicates().iter().enumerate() {
            for t in tuples(assigned, sym.arity) {
                if !t.contains(&d) {
                    continue;
                }
                if self.source.local_holds(p, tuple_code(&t, m))
                    != self.target.holds(p, &image_of(&t))
                {
                    return false;
                }
            }
        }
        let value_ok = |src: Option<usize>, tgt: Option<usize>| -> bool {
            match (src, tgt) {
                (Some(v), Some(w)) => {
                    if v < assigned {
                        w == self.map[v]
                    } else {
                        !self.used[w]
                    }
                }
                (None, None) => true,
                (None, Some(w)) => self.escapes_are_values && !self.used[w],
                (Some(_), None) => false,
            }
        };
        for (f, sym) in sig.functions().iter().enumerate() {
            for t in tuples(assigned, sym.arity) {
                let src = self.source.local_value(f, tuple_code(&t, m));
                let tgt = self.target.value(f, &image_of(&t));
                if !value_ok(src, tgt) {
                    return false;
                }
            }
        }
        (0..sig.constants().len())
            .all(|c| value_ok(self.source.local_constant(c), self.target.constant(c)))
    }

    fn extend(&mut self, d: usize) {
        if d == self.source.len() {
            self.found.push(self.map.clone());
            return;
        }
        for j in 0..self.target.size() {
            if self.used[j] {
                continue;
            }
            self.map[d] = j;
            self.used[j] = true;
            if self.consistent(d) {
                self.extend(d + 1);
            }
            self.used[j] = false;
            if !self.find_all && !self.found.is_empty() {
                return;
            }
        }
    }
}

fn run_search<T: Target>(
    source: &Fragment,
    target: T,
    escapes_are_values: bool,
    find_all: bool,
) -> Vec<Vec<usize>> {
    let n = target.size();
    let mut search = Search {
        source,
        target,
        escapes_are_values,
        map: vec![0; source.len()],
        used: vec![false; n],
        found: Vec::new(),
        find_all,
    };
    search.extend(0);
    search.found
}

fn full_fragment(s: &Structure) -> Fragment {
    let all: Vec<Elem> = s.universe().collect();
    Fragment::induced(s, &all).expect("full carrier is in range")
}

/// An isomorphism from `a` onto `b`, if one exists.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Result<Option<IsoMap>, StructureError> {
    if a.signature() != b.signature() {
        return Err(StructureError::SignatureMismatch);
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    let fa = full_fragment(a);
    let fb = full_fragment(b);
    Ok(run_search(&fa, FragmentTarget(&fb), false, false)
        .into_iter()
        .next()
        .map(|m| IsoMap::from_pairs(m.into_iter().enumerate().collect())))
}

/// An isomorphism between the carriers of two fragments that also preserves
/// the ESCAPES pattern.
pub fn find_fragment_isomorphism(
    a: &Fragment,
    b: &Fragment,
) -> Result<Option<IsoMap>, StructureError> {
    if a.signature() != b.signature() {
        return Err(StructureError::SignatureMismatch);
    }
    if a.len() != b.len() || a.escapes_count() != b.escapes_count() {
        return Ok(None);
    }
    Ok(run_search(a, FragmentTarget(b), false, false)
        .into_iter()
        .next()
        .map(|m| {
            IsoMap::from_pairs(
                m.into_iter()
                    .enumerate()
                    .map(|(i, j)| (a.carrier()[i], b.carrier()[j]))
                    .collect(),
            )
        }))
}

/// Every injective map from the carrier of `f` into the universe of `s` under
/// which the fragment of `s` on the image is isomorphic to `f`.
pub fn fragment_occurs(f: &Fragment, s: &Structure) -> Result<Vec<IsoMap>, StructureError> {
    if f.signature() != s.signature() {
        return Err(StructureError::SignatureMismatch);
    }
    Ok(run_search(f, StructureTarget(s), true, true)
        .into_iter()
        .map(|m| {
            IsoMap::from_pairs(
                m.into_iter()
                    .enumerate()
                    .map(|(i, b)| (f.carrier()[i], b))
                    .collect(),
            )
        })
        .collect())
}

/// Whether `f` occurs in `s` at all; stops at the first occurrence.
pub fn fragment_embeds(f: &Fragment, s: &Structure) -> Result<bool, StructureError> {
    if f.signature() != s.signature() {
        return Err(StructureError::SignatureMismatch);
    }
    Ok(!run_search(f, StructureTarget(s), true, false).is_empty())
}

/// Checks that `map` is a bijection from the universe of `a` onto that of `b`
/// preserving and reflecting every predicate and commuting with every
/// function and constant.
pub fn is_isomorphism(a: &Structure, b: &Structure, map: &IsoMap) -> bool {
    if a.signature() != b.signature() || a.size() != b.size() || map.len() != a.size() {
        return false;
    }
    let mut hit = vec![false; b.size()];
    for a_elem in a.universe() {
        match map.get(a_elem) {
            Some(t) if t < b.size() && !hit[t] => hit[t] = true,
            _ => return false,
        }
    }
    let m = |x: Elem| map.get(x).unwrap();
    let sig = a.signature();
    for (p, sym) in sig.predicates().iter().enumerate() {
        for t in tuples(a.size(), sym.arity) {
            let mapped: Vec<Elem> = t.iter().map(|&x| m(x)).collect();
            if a.holds(p, &t) != b.holds(p, &mapped) {
                return false;
            }
        }
    }
    for (f, sym) in sig.functions().iter().enumerate() {
        for t in tuples(a.size(), sym.arity) {
            let mapped: Vec<Elem> = t.iter().map(|&x| m(x)).collect();
            if m(a.apply(f, &t)) != b.apply(f, &mapped) {
                return false;
            }
        }
    }
    (0..sig.constants().len()).all(|c| m(a.constant(c)) == b.constant(c))
}

/// Fragment counterpart of [`is_isomorphism`]: additionally ESCAPES must
/// correspond to ESCAPES.
pub fn is_fragment_isomorphism(a: &Fragment, b: &Fragment, map: &IsoMap) -> bool {
    if a.signature() != b.signature() || a.len() != b.len() || map.len() != a.len() {
        return false;
    }
    let mut images = Vec::new();
    for &x in a.carrier() {
        match map.get(x) {
            Some(y) if b.carrier().binary_search(&y).is_ok() && !images.contains(&y) => {
                images.push(y)
            }
            _ => return false,
        }
    }
    let m = |x: Elem| map.get(x).unwrap();
    let map_slot = |s: Slot| match s {
        Slot::Inside(x) => Slot::Inside(m(x)),
        Slot::Escapes => Slot::Escapes,
    };
    let sig = a.signature();
    let k = a.len();
    for (p, sym) in sig.predicates().iter().enumerate() {
        for t in tuples(k, sym.arity) {
            let src: Vec<Elem> = t.iter().map(|&i| a.carrier()[i]).collect();
            let dst: Vec<Elem> = src.iter().map(|&x| m(x)).collect();
            if a.holds(p, &src).unwrap() != b.holds(p, &dst).unwrap() {
                return false;
            }
        }
    }
    for (f, sym) in sig.functions().iter().enumerate() {
        for t in tuples(k, sym.arity) {
            let src: Vec<Elem> = t.iter().map(|&i| a.carrier()[i]).collect();
            let dst: Vec<Elem> = src.iter().map(|&x| m(x)).collect();
            if map_slot(a.slot(f, &src).unwrap()) != b.slot(f, &dst).unwrap() {
                return false;
            }
        }
    }
    (0..sig.constants().len()).all(|c| map_slot(a.constant_slot(c)) == b.constant_slot(c))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::structures::{induced_fragment, Signature};

    fn unar() -> Arc<Signature> {
        Arc::new(Signature::builder().function("F", 1).build().unwrap())
    }

    fn cyc(n: usize, step: usize) -> Structure {
        Structure::builder(&unar(), n)
            .function_fn("F", |t| (t[0] + step) % n)
            .build()
            .unwrap()
    }

    #[test]
    fn three_cycles_are_isomorphic() {
        let a = cyc(3, 1);
        let b = cyc(3, 2);
        let m = find_isomorphism(&a, &b).unwrap().expect("isomorphic");
        assert!(is_isomorphism(&a, &b, &m));
    }

    #[test]
    fn cycle_is_not_three_fixed_points() {
        let fixed = Structure::builder(&unar(), 3)
            .unary("F", &[0, 1, 2])
            .build()
            .unwrap();
        assert_eq!(find_isomorphism(&cyc(3, 1), &fixed).unwrap(), None);
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let a = cyc(4, 1);
        let m = find_isomorphism(&a, &a).unwrap().unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let g = Arc::new(Signature::builder().predicate("R", 2).build().unwrap());
        let s = Structure::builder(&g, 3).build().unwrap();
        assert_eq!(
            find_isomorphism(&cyc(3, 1), &s),
            Err(StructureError::SignatureMismatch)
        );
    }

    fn escaping_point() -> Fragment {
        let sig = unar();
        Fragment::new(&sig, 1, &[0]).unwrap()
    }

    #[test]
    fn escaping_point_occurs_everywhere_in_a_cycle() {
        let occ = fragment_occurs(&escaping_point(), &cyc(4, 1)).unwrap();
        assert_eq!(occ.len(), 4);
    }

    #[test]
    fn escaping_point_does_not_occur_at_a_fixed_point() {
        let fixed = Structure::builder(&unar(), 1)
            .unary("F", &[0])
            .build()
            .unwrap();
        assert!(fragment_occurs(&escaping_point(), &fixed)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn empty_fragment_occurs_once() {
        let empty = Fragment::new(&unar(), 0, &[]).unwrap();
        let occ = fragment_occurs(&empty, &cyc(3, 1)).unwrap();
        assert_eq!(occ.len(), 1);
        assert!(occ[0].is_empty());
    }

    #[test]
    fn occurrences_induce_isomorphic_fragments() {
        let s = cyc(4, 1);
        let f = induced_fragment(&s, &[1, 2]).unwrap();
        let occ = fragment_occurs(&f, &s).unwrap();
        // Consecutive pairs (a, a+1) only.
        assert_eq!(occ.len(), 4);
        for m in occ {
            let img = induced_fragment(&s, &m.images()).unwrap();
            assert!(is_fragment_isomorphism(&f, &img, &m));
        }
    }

    #[test]
    fn fragment_isomorphism_respects_escapes() {
        let s = cyc(4, 1);
        let a = induced_fragment(&s, &[0, 1]).unwrap();
        let b = induced_fragment(&s, &[2, 3]).unwrap();
        let c = induced_fragment(&s, &[0, 2]).unwrap();
        let m = find_fragment_isomorphism(&a, &b).unwrap().unwrap();
        assert!(is_fragment_isomorphism(&a, &b, &m));
        assert_eq!(find_fragment_isomorphism(&a, &c).unwrap(), None);
    }
}
