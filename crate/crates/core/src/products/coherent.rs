// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use super::{
    reduced_product, upper_cone_filter, validate_ideal, IndexFilter, IndexIdeal, ProductError,
    ReducedProduct,
};
use crate::structures::{closure, tuples, Elem, Structure};

/// A structure `parent`, an ideal over its universe, and for each member
/// `i` of the ideal a component structure with an injection of `i` into it.
#[derive(Debug, Clone)]
pub struct CoherentSystem {
    parent: Structure,
    ideal: IndexIdeal,
    components: Vec<Structure>,
    /// `injections[k][p]` is the image of the `p`-th element of member `k`.
    injections: Vec<Vec<Elem>>,
}

impl CoherentSystem {
    pub fn new(
        parent: Structure,
        ideal: IndexIdeal,
        components: Vec<Structure>,
        injections: Vec<Vec<Elem>>,
    ) -> Result<Self, ProductError> {
        if ideal.base_size() != parent.size() {
            return Err(ProductError::BaseMismatch {
                ideal: ideal.base_size(),
                parent: parent.size(),
            });
        }
        if components.len() != ideal.len() || injections.len() != ideal.len() {
            return Err(ProductError::ComponentCount {
                expected: ideal.len(),
                found: components.len().min(injections.len()),
            });
        }
        Ok(CoherentSystem {
            parent,
            ideal,
            components,
            injections,
        })
    }

    /// Each member `i` gets the submodel of `parent` generated by `i`, which
    /// meets `i` in exactly the fragment of `parent` on `i`. When that
    /// submodel is empty a one-point structure with empty predicates is used.
    pub fn generated(parent: &Structure, ideal: &IndexIdeal) -> Result<Self, ProductError> {
        let mut components = Vec::new();
        let mut injections = Vec::new();
        for member in ideal.members() {
            let carrier = closure(parent, member)?;
            if carrier.is_empty() {
                components.push(one_point(parent.signature_arc())?);
                injections.push(Vec::new());
                continue;
            }
            let local = |a: Elem| carrier.binary_search(&a).expect("seed lies in its closure");
            injections.push(member.iter().map(|&a| local(a)).collect());
            components.push(parent.restrict(&carrier)?);
        }
        CoherentSystem::new(parent.clone(), ideal.clone(), components, injections)
    }

    pub fn parent(&self) -> &Structure {
        &self.parent
    }

    pub fn ideal(&self) -> &IndexIdeal {
        &self.ideal
    }

    pub fn components(&self) -> &[Structure] {
        &self.components
    }

    pub fn injections(&self) -> &[Vec<Elem>] {
        &self.injections
    }

    /// Replaces one component and its injection.
    pub fn set_component(&mut self, k: usize, component: Structure, injection: Vec<Elem>) {
        self.components[k] = component;
        self.injections[k] = injection;
    }

    fn inject(&self, k: usize, a: Elem) -> Option<Elem> {
        let pos = self.ideal.members()[k].binary_search(&a).ok()?;
        self.injections[k].get(pos).copied()
    }
}

fn one_point(sig: &Arc<crate::structures::Signature>) -> Result<Structure, ProductError> {
    let relations = sig.predicates().iter().map(|_| vec![false; 1]).collect();
    let functions = sig.functions().iter().map(|_| vec![0]).collect();
    let constants = vec![0; sig.constants().len()];
    Ok(Structure::from_tables(
        Arc::clone(sig),
        1,
        relations,
        functions,
        constants,
    )?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoherenceViolation {
    Signature {
        member: Vec<Elem>,
    },
    Inclusion {
        member: Vec<Elem>,
        detail: String,
    },
    Predicate {
        member: Vec<Elem>,
        predicate: String,
        tuple: Vec<Elem>,
        in_parent: bool,
    },
    Function {
        member: Vec<Elem>,
        function: String,
        tuple: Vec<Elem>,
        detail: String,
    },
    Constant {
        member: Vec<Elem>,
        constant: String,
        detail: String,
    },
}

impl fmt::Display for CoherenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |m: &[Elem]| format!("{{{}}}", m.iter().join(","));
        match self {
            CoherenceViolation::Signature { member } => {
                write!(f, "i={}: component signature differs", set(member))
            }
            CoherenceViolation::Inclusion { member, detail } => {
                write!(f, "i={}: {detail}", set(member))
            }
            CoherenceViolation::Predicate {
                member,
                predicate,
                tuple,
                in_parent,
            } => write!(
                f,
                "i={}: {predicate}({}) holds in the {} only",
                set(member),
                tuple.iter().join(","),
                if *in_parent { "parent" } else { "component" }
            ),
            CoherenceViolation::Function {
                member,
                function,
                tuple,
                detail,
            } => {
                write!(
                    f,
                    "i={}: {function}({}) {detail}",
                    set(member),
                    tuple.iter().join(",")
                )
            }
            CoherenceViolation::Constant {
                member,
                constant,
                detail,
            } => {
                write!(f, "i={}: {constant} {detail}", set(member))
            }
        }
    }
}

/// Checks that every member `i` is injected into its component and that the
/// fragments of the parent and the component on `i` coincide: the same
/// predicate facts, and the same function values inside `i` or the same
/// escapes out of it.
pub fn coherence_check(sys: &CoherentSystem) -> Vec<CoherenceViolation> {
    let mut out = Vec::new();
    let a = &sys.parent;
    let sig = a.signature();
    for (k, member) in sys.ideal.members().iter().enumerate() {
        let b = &sys.components[k];
        if b.signature() != sig {
            out.push(CoherenceViolation::Signature {
                member: member.clone(),
            });
            continue;
        }
        let inj = &sys.injections[k];
        if inj.len() != member.len() {
            out.push(CoherenceViolation::Inclusion {
                member: member.clone(),
                detail: format!(
                    "injection has {} images for {} elements",
                    inj.len(),
                    member.len()
                ),
            });
            continue;
        }
        if let Some(&v) = inj.iter().find(|&&v| v >= b.size()) {
            out.push(CoherenceViolation::Inclusion {
                member: member.clone(),
                detail: format!("image {v} outside component of size {}", b.size()),
            });
            continue;
        }
        if !inj.iter().all_unique() {
            out.push(CoherenceViolation::Inclusion {
                member: member.clone(),
                detail: "injection is not one-to-one".into(),
            });
            continue;
        }
        let m = member.len();
        for (p, sym) in sig.predicates().iter().enumerate() {
            for t in tuples(m, sym.arity) {
                let ta: Vec<Elem> = t.iter().map(|&x| member[x]).collect();
                let tb: Vec<Elem> = t.iter().map(|&x| inj[x]).collect();
                let (ha, hb) = (a.holds(p, &ta), b.holds(p, &tb));
                if ha != hb {
                    out.push(CoherenceViolation::Predicate {
                        member: member.clone(),
                        predicate: sym.name.clone(),
                        tuple: ta,
                        in_parent: ha,
                    });
                }
            }
        }
        let image_pos = |v: Elem| inj.iter().position(|&w| w == v);
        for (f, sym) in sig.functions().iter().enumerate() {
            for t in tuples(m, sym.arity) {
                let ta: Vec<Elem> = t.iter().map(|&x| member[x]).collect();
                let tb: Vec<Elem> = t.iter().map(|&x| inj[x]).collect();
                let (va, vb) = (a.apply(f, &ta), b.apply(f, &tb));
                let detail = match (member.binary_search(&va), image_pos(vb)) {
                    (Ok(pa), Some(pb)) if pa == pb => None,
                    (Err(_), None) => None,
                    (Ok(_), _) => Some(format!(
                        "is {va} in the parent but not its image in the component"
                    )),
                    (Err(_), Some(pb)) => Some(format!(
                        "escapes in the parent but is {} in the component",
                        member[pb]
                    )),
                };
                if let Some(detail) = detail {
                    out.push(CoherenceViolation::Function {
                        member: member.clone(),
                        function: sym.name.clone(),
                        tuple: ta,
                        detail,
                    });
                }
            }
        }
        for (c, name) in sig.constants().iter().enumerate() {
            let (va, vb) = (a.constant(c), b.constant(c));
            let ok = match member.binary_search(&va) {
                Ok(pa) => inj[pa] == vb,
                Err(_) => image_pos(vb).is_none(),
            };
            if !ok {
                out.push(CoherenceViolation::Constant {
                    member: member.clone(),
                    constant: name.clone(),
                    detail: "differs between parent and component".into(),
                });
            }
        }
    }
    out
}

/// The map `a ↦ [c_a]` into the reduced product, where `c_a(i)` is the image
/// of `a` when `a ∈ i` and the chosen default `b_i` otherwise, together with
/// the results of checking that it is an embedding.
#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub map: Vec<Elem>,
    pub product: ReducedProduct,
    pub injective: bool,
    pub atoms_checked: usize,
    /// Predicate atoms whose truth differs between the parent and the product.
    pub atom_failures: Vec<String>,
    pub functions_checked: usize,
    /// Function and constant entries that the map does not commute with.
    pub function_failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.injective && self.atom_failures.is_empty() && self.function_failures.is_empty()
    }
}

impl fmt::Display for EmbeddingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "map {}",
            self.map
                .iter()
                .enumerate()
                .map(|(a, c)| format!("{a}->{c}"))
                .join(" ")
        )?;
        writeln!(f, "injective {}", self.injective)?;
        writeln!(
            f,
            "atoms checked {} failures {}",
            self.atoms_checked,
            self.atom_failures.len()
        )?;
        writeln!(
            f,
            "functions checked {} failures {}",
            self.functions_checked,
            self.function_failures.len()
        )?;
        for line in self.atom_failures.iter().chain(&self.function_failures) {
            writeln!(f, "  {line}")?;
        }
        write!(
            f,
            "embedding {}",
            if self.passed() { "verified" } else { "FAILED" }
        )
    }
}

/// Builds the canonical map of `sys.parent` into the reduced product of the
/// components modulo `filter` and verifies injectivity, preservation and
/// reflection of every predicate atom, and commutation with every function
/// and constant. `defaults` gives `b_i` per member (least element if absent).
pub fn canonical_embedding(
    sys: &CoherentSystem,
    filter: &IndexFilter,
    defaults: Option<&[Elem]>,
    cap: u64,
) -> Result<EmbeddingReport, ProductError> {
    let ideal_violations = validate_ideal(&sys.ideal);
    if !ideal_violations.is_empty() {
        return Err(ProductError::InvalidIdeal(ideal_violations));
    }
    if !filter.extends(&upper_cone_filter(&sys.ideal)?) {
        return Err(ProductError::FilterDoesNotExtendCone);
    }
    let violations = coherence_check(sys);
    if !violations.is_empty() {
        return Err(ProductError::Incoherent(violations));
    }
    let k = sys.components.len();
    let defaults: Vec<Elem> = match defaults {
        Some(d) if d.len() != k || d.iter().zip(&sys.components).any(|(&b, c)| b >= c.size()) => {
            return Err(ProductError::BadChoice)
        }
        Some(d) => d.to_vec(),
        None => vec![0; k],
    };
    let product = reduced_product(&sys.components, filter, cap)?;
    let a = &sys.parent;
    let map = a
        .universe()
        .map(|x| {
            let choice: Vec<Elem> = (0..k)
                .map(|i| sys.inject(i, x).unwrap_or(defaults[i]))
                .collect();
            product.class_of(&choice)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let injective = map.iter().all_unique();
    let p = product.structure();
    let sig = a.signature();
    let mut report = EmbeddingReport {
        map: map.clone(),
        product: product.clone(),
        injective,
        atoms_checked: 0,
        atom_failures: Vec::new(),
        functions_checked: 0,
        function_failures: Vec::new(),
    };
    let image = |t: &[Elem]| t.iter().map(|&x| map[x]).collect::<Vec<_>>();
    for (r, sym) in sig.predicates().iter().enumerate() {
        for t in tuples(a.size(), sym.arity) {
            report.atoms_checked += 1;
            if a.holds(r, &t) != p.holds(r, &image(&t)) {
                report
                    .atom_failures
                    .push(format!("{}({})", sym.name, t.iter().join(",")));
            }
        }
    }
    for (g, sym) in sig.functions().iter().enumerate() {
        for t in tuples(a.size(), sym.arity) {
            report.functions_checked += 1;
            if map[a.apply(g, &t)] != p.apply(g, &image(&t)) {
                report
                    .function_failures
                    .push(format!("{}({})", sym.name, t.iter().join(",")));
            }
        }
    }
    for (c, name) in sig.constants().iter().enumerate() {
        report.functions_checked += 1;
        if map[a.constant(c)] != p.constant(c) {
            report.function_failures.push(name.clone());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::DEFAULT_PRODUCT_CAP;
    use crate::structures::Signature;

    fn chain3() -> Structure {
        let sig = Arc::new(Signature::builder().predicate("R", 2).build().unwrap());
        Structure::builder(&sig, 3)
            .tuples("R", &[&[0, 1], &[1, 2], &[0, 2]])
            .build()
            .unwrap()
    }

    #[test]
    fn induced_system_is_coherent_and_embeds() {
        let a = chain3();
        let ideal = IndexIdeal::power_set(3);
        let sys = CoherentSystem::generated(&a, &ideal).unwrap();
        assert!(coherence_check(&sys).is_empty());
        let d = upper_cone_filter(&ideal).unwrap();
        let report = canonical_embedding(&sys, &d, None, DEFAULT_PRODUCT_CAP).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.atoms_checked, 9);
    }

    #[test]
    fn unar_cycle_commutes() {
        let sig = Arc::new(Signature::builder().function("F", 1).build().unwrap());
        let a = Structure::builder(&sig, 4)
            .function_fn("F", |t| (t[0] + 1) % 4)
            .build()
            .unwrap();
        let ideal = IndexIdeal::power_set(4);
        let sys = CoherentSystem::generated(&a, &ideal).unwrap();
        assert!(coherence_check(&sys).is_empty());
        let d = upper_cone_filter(&ideal).unwrap();
        let defaults: Vec<Elem> = sys.components().iter().map(|c| c.size() - 1).collect();
        let report = canonical_embedding(&sys, &d, Some(&defaults), DEFAULT_PRODUCT_CAP).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.functions_checked, 4);
    }

    #[test]
    fn single_point_parent() {
        let sig = Arc::new(Signature::builder().predicate("R", 2).build().unwrap());
        let a = Structure::builder(&sig, 1).build().unwrap();
        let ideal = IndexIdeal::power_set(1);
        let sys = CoherentSystem::generated(&a, &ideal).unwrap();
        let d = upper_cone_filter(&ideal).unwrap();
        let report = canonical_embedding(&sys, &d, None, DEFAULT_PRODUCT_CAP).unwrap();
        assert!(report.passed());
        assert_eq!(report.map.len(), 1);
    }

    #[test]
    fn detects_incoherence() {
        let a = chain3();
        let ideal = IndexIdeal::power_set(3);
        let mut sys = CoherentSystem::generated(&a, &ideal).unwrap();
        let k = ideal.index_of(&[0]).unwrap();
        let looped = Structure::builder(a.signature_arc(), 1)
            .tuple("R", &[0, 0])
            .build()
            .unwrap();
        sys.set_component(k, looped, vec![0]);
        let v = coherence_check(&sys);
        assert_eq!(v.len(), 1);
        assert!(
            matches!(&v[0], CoherenceViolation::Predicate { member, in_parent: false, .. } if member == &vec![0])
        );

        let mut sys = CoherentSystem::generated(&a, &ideal).unwrap();
        let k = ideal.index_of(&[0, 1]).unwrap();
        let small = Structure::builder(a.signature_arc(), 1).build().unwrap();
        sys.set_component(k, small, vec![0]);
        assert!(matches!(
            coherence_check(&sys)[0],
            CoherenceViolation::Inclusion { .. }
        ));
    }

    #[test]
    fn filter_must_extend_cones() {
        let a = chain3();
        let ideal = IndexIdeal::power_set(3);
        let sys = CoherentSystem::generated(&a, &ideal).unwrap();
        let d = IndexFilter::principal(8, &[1]).unwrap();
        assert!(matches!(
            canonical_embedding(&sys, &d, None, DEFAULT_PRODUCT_CAP),
            Err(ProductError::FilterDoesNotExtendCone)
        ));
    }
}
