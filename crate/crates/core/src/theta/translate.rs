// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;

use super::{check_bound, check_sentence, ThetaError};
use crate::logic::{
    fresh_variables, relativize_to_set_variable, relativize_to_variables, CompiledFormula, Formula,
    Term,
};
use crate::structures::{
    closure, enumerate_structures, labelled_count, tuples, Elem, Signature, Structure,
    StructureError,
};

fn symbol_names(sig: &Signature) -> BTreeSet<String> {
    sig.predicates()
        .iter()
        .chain(sig.functions())
        .map(|s| s.name.clone())
        .chain(sig.constants().iter().cloned())
        .collect()
}

/// The monadic existential second-order sentence
/// `existsSet X. (exists x. X(x)) & closure conditions & X(c)... & phi^X`
/// which holds exactly when some submodel satisfies `phi`.
pub fn theta_to_eso(phi: &Formula, sig: &Signature) -> Result<Formula, ThetaError> {
    check_sentence(phi)?;
    let mut avoid = symbol_names(sig);
    avoid.extend(phi.set_variables());
    let set = ["X", "S", "U"]
        .into_iter()
        .map(str::to_string)
        .find(|n| !avoid.contains(n))
        .unwrap_or_else(|| fresh_variables(&avoid, &["X", "S"], 1).remove(0));
    let names = symbol_names(sig);
    let pick = |k: usize| -> Vec<String> {
        if k == 1 && !names.contains("x") {
            vec!["x".to_string()]
        } else {
            fresh_variables(&names, &["x", "y", "v"], k)
        }
    };
    let inside = |t: Term| Formula::in_set(&set, t);

    let mut parts = Vec::new();
    let x = pick(1).remove(0);
    parts.push(Formula::exists(&x, inside(Term::var(&x))));
    for f in sig.functions() {
        let vars = pick(f.arity);
        let premise = Formula::and(vars.iter().map(|v| inside(Term::var(v))).collect());
        let image = Term::app(&f.name, vars.iter().map(|v| Term::var(v)).collect());
        let body = Formula::implies(premise, inside(image));
        parts.push(
            vars.iter()
                .rev()
                .fold(body, |acc, v| Formula::forall(v, acc)),
        );
    }
    for c in sig.constants() {
        parts.push(inside(Term::constant(c)));
    }
    parts.push(relativize_to_set_variable(phi, &set)?);
    Ok(Formula::exists_set(&set, Formula::and(parts)))
}

/// The existential sentence `exists x0 ... x(λ-1). phi` with every quantifier
/// of `phi` ranging over the chosen elements. In a signature without
/// functions or constants it holds exactly when some submodel generated by
/// at most `lambda` elements satisfies `phi`.
pub fn theta_bounded_to_existential_predicate(
    phi: &Formula,
    sig: &Signature,
    lambda: usize,
) -> Result<Formula, ThetaError> {
    check_sentence(phi)?;
    if !sig.functions().is_empty() || !sig.constants().is_empty() || phi.uses_functional_symbols() {
        return Err(ThetaError::FunctionalSignature);
    }
    if lambda == 0 {
        return Err(ThetaError::Bound("λ must be at least 1".into()));
    }
    let mut avoid = phi.variables();
    avoid.extend(symbol_names(sig));
    let vars = fresh_variables(&avoid, &["x", "y", "v"], lambda);
    let matrix = relativize_to_variables(phi, &vars)?;
    Ok(Formula::exists_all(&vars, matrix))
}

/// The atomic diagram of a structure generated by a tuple of distinguished
/// generators, written over fresh generator constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramSentence {
    /// Names of the generator constants, one per generator position.
    pub generators: Vec<String>,
    /// The generated structure, labelled in discovery order.
    pub structure: Structure,
    /// Element assigned to each generator position.
    pub generator_elems: Vec<Elem>,
    /// Representative closed term of each element.
    pub terms: Vec<Term>,
    pub literals: Vec<Formula>,
}

impl DiagramSentence {
    /// The conjunction of the literals with generator `j` replaced by the
    /// variable `vars[j]`.
    pub fn open_formula<S: AsRef<str>>(&self, vars: &[S]) -> Formula {
        Formula::and(
            self.literals
                .iter()
                .map(|lit| {
                    self.generators
                        .iter()
                        .zip(vars)
                        .fold(lit.clone(), |acc, (g, v)| {
                            acc.replace_constant(g, &Term::var(v.as_ref()))
                        })
                })
                .collect(),
        )
    }
}

/// Result of the functional-case translation together with its completeness
/// certificate: the sentence is equivalent to θ≤λ(φ) on every structure
/// whose submodels generated by at most λ elements have at most ν elements,
/// and implies θ≤λ(φ) everywhere.
#[derive(Debug, Clone)]
pub struct FunctionalTranslation {
    pub sentence: Formula,
    pub diagrams: Vec<DiagramSentence>,
    pub lambda: usize,
    pub nu: usize,
}

impl FunctionalTranslation {
    /// Number of disjuncts.
    pub fn disjuncts(&self) -> usize {
        self.diagrams.len()
    }

    /// Whether every submodel of `s` generated by at most λ elements has at
    /// most ν elements, so that the sentence is exact on `s`.
    pub fn is_complete_for(&self, s: &Structure) -> Result<bool, StructureError> {
        for k in 0..=self.lambda.min(s.size()) {
            for seed in s.universe().combinations(k) {
                if closure(s, &seed)?.len() > self.nu {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Breadth-first discovery of the structure generated by `gens`: generators
/// in order, then constants, then rounds of function applications to
/// previously discovered elements. Returns the discovery order and the
/// representative term of each element.
fn discover(
    b: &Structure,
    gens: &[Elem],
    gen_names: &[String],
) -> (Vec<Elem>, Vec<Option<Term>>, Vec<Formula>) {
    let sig = b.signature();
    let mut rep: Vec<Option<Term>> = vec![None; b.size()];
    let mut order = Vec::new();
    let mut equalities = Vec::new();
    let named = gens
        .iter()
        .zip(gen_names)
        .map(|(&g, name)| (g, name))
        .chain(b.constants().iter().copied().zip(sig.constants()));
    for (elem, name) in named {
        let t = Term::constant(name);
        match &rep[elem] {
            Some(existing) => equalities.push(Formula::eq(t, existing.clone())),
            None => {
                rep[elem] = Some(t);
                order.push(elem);
            }
        }
    }
    loop {
        let snapshot = order.clone();
        for (f, sym) in sig.functions().iter().enumerate() {
            for t in tuples(snapshot.len(), sym.arity) {
                let args: Vec<Elem> = t.iter().map(|&i| snapshot[i]).collect();
                let v = b.apply(f, &args);
                if rep[v].is_none() {
                    let terms = args.iter().map(|&a| rep[a].clone().unwrap()).collect();
                    rep[v] = Some(Term::app(&sym.name, terms));
                    order.push(v);
                }
            }
        }
        if order.len() == snapshot.len() {
            break;
        }
    }
    (order, rep, equalities)
}

fn diagram(b: &Structure, gens: &[Elem], gen_names: &[String]) -> Option<DiagramSentence> {
    let (order, rep, mut literals) = discover(b, gens, gen_names);
    if order.len() != b.size() || order.iter().enumerate().any(|(i, &e)| i != e) {
        return None;
    }
    let terms: Vec<Term> = rep.into_iter().map(Option::unwrap).collect();
    let sig = b.signature();
    let n = b.size();
    for (f, sym) in sig.functions().iter().enumerate() {
        for args in tuples(n, sym.arity) {
            let t = Term::app(&sym.name, args.iter().map(|&a| terms[a].clone()).collect());
            let v = &terms[b.apply(f, &args)];
            if &t != v {
                literals.push(Formula::eq(t, v.clone()));
            }
        }
    }
    for (p, sym) in sig.predicates().iter().enumerate() {
        for args in tuples(n, sym.arity) {
            let atom = Formula::pred(&sym.name, args.iter().map(|&a| terms[a].clone()).collect());
            literals.push(if b.holds(p, &args) {
                atom
            } else {
                Formula::not(atom)
            });
        }
    }
    for (i, j) in (0..n).tuple_combinations() {
        literals.push(Formula::neq(terms[i].clone(), terms[j].clone()));
    }
    Some(DiagramSentence {
        generators: gen_names.to_vec(),
        structure: b.clone(),
        generator_elems: gens.to_vec(),
        terms,
        literals,
    })
}

/// The existential sentence `exists x0 ... x(λ-1). OR of diagrams`, one
/// diagram for each structure of at most `nu` elements generated by a tuple
/// of `lambda` generators (up to isomorphism fixing the generators) that
/// satisfies `phi`.
pub fn theta_bounded_to_existential_functional(
    phi: &Formula,
    sig: &Arc<Signature>,
    lambda: usize,
    nu: usize,
    cap: u64,
) -> Result<FunctionalTranslation, ThetaError> {
    check_sentence(phi)?;
    check_bound(sig, lambda)?;
    if nu < lambda.max(1) {
        return Err(ThetaError::Bound(format!(
            "ν = {nu} must be at least λ = {lambda} and positive"
        )));
    }
    let total: u128 = (1..=nu)
        .map(|m| labelled_count(sig, m).saturating_mul((m as u128).saturating_pow(lambda as u32)))
        .fold(0u128, u128::saturating_add);
    if total > cap as u128 {
        return Err(StructureError::CapExceeded { count: total, cap }.into());
    }
    let compiled = CompiledFormula::compile(phi, sig)?;
    let names = symbol_names(sig);
    let gen_names = fresh_variables(&names, &["g", "c_gen"], lambda);
    let vars = fresh_variables(&names, &["x", "y", "v"], lambda);
    let mut diagrams = Vec::new();
    for m in 1..=nu {
        for b in enumerate_structures(sig, m, false, cap)? {
            if !compiled.eval_sentence(&b)? {
                continue;
            }
            for gens in generator_tuples(m, lambda) {
                diagrams.extend(diagram(&b, &gens, &gen_names));
            }
        }
    }
    let body = Formula::or(diagrams.iter().map(|d| d.open_formula(&vars)).collect());
    let sentence = if diagrams.is_empty() {
        Formula::False
    } else {
        Formula::exists_all(&vars, body)
    };
    Ok(FunctionalTranslation {
        sentence,
        diagrams,
        lambda,
        nu,
    })
}

/// All `lambda`-tuples over `0..m`, lexicographically.
fn generator_tuples(m: usize, lambda: usize) -> Box<dyn Iterator<Item = Vec<Elem>>> {
    if lambda == 0 {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new((0..lambda).map(|_| 0..m).multi_cartesian_product())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, render_formula};
    use crate::structures::DEFAULT_ENUMERATION_CAP;

    fn graph() -> Signature {
        Signature::builder().predicate("R", 2).build().unwrap()
    }

    fn unar() -> Arc<Signature> {
        Arc::new(Signature::builder().function("F", 1).build().unwrap())
    }

    #[test]
    fn eso_shape() {
        let sig = graph();
        let f = theta_to_eso(&parse_formula("exists x. R(x,x)", &sig).unwrap(), &sig).unwrap();
        assert_eq!(
            f,
            parse_formula(
                "existsSet X. (exists x. X(x)) & exists x. (X(x) & R(x,x))",
                &sig
            )
            .unwrap()
        );
        let u = unar();
        let g = theta_to_eso(&parse_formula("exists x. F(x) != x", &u).unwrap(), &u).unwrap();
        assert!(
            render_formula(&g).contains("(forall x. (X(x) -> X(F(x))))"),
            "{g}"
        );
    }

    #[test]
    fn predicate_case_examples() {
        let sig = graph();
        let t = |text: &str| {
            let f = theta_bounded_to_existential_predicate(
                &parse_formula(text, &sig).unwrap(),
                &sig,
                1,
            )
            .unwrap();
            assert!(f.is_existential());
            render_formula(&f)
        };
        assert_eq!(t("exists x. forall y. R(x,y)"), "exists x0. R(x0,x0)");
        assert_eq!(t("!forall x. exists y. R(x,y)"), "exists x0. !R(x0,x0)");
        assert_eq!(t("true"), "exists x0. true");
        let u = unar();
        assert_eq!(
            theta_bounded_to_existential_predicate(&Formula::True, &u, 1),
            Err(ThetaError::FunctionalSignature)
        );
    }

    #[test]
    fn functional_case_examples() {
        let u = unar();
        let phi = parse_formula("exists x. F(x) != x", &u).unwrap();
        let t = theta_bounded_to_existential_functional(&phi, &u, 1, 2, DEFAULT_ENUMERATION_CAP)
            .unwrap();
        assert_eq!(t.disjuncts(), 2);
        assert!(t.sentence.is_existential());
        let text = render_formula(&t.sentence);
        assert!(text.contains("F(F(x0)) = F(x0)"), "{text}");
        assert!(text.contains("F(F(x0)) = x0"), "{text}");

        let fixed = parse_formula("forall x. F(x) = x", &u).unwrap();
        let t = theta_bounded_to_existential_functional(&fixed, &u, 1, 4, DEFAULT_ENUMERATION_CAP)
            .unwrap();
        assert_eq!(render_formula(&t.sentence), "exists x0. F(x0) = x0");

        let none = theta_bounded_to_existential_functional(
            &Formula::False,
            &u,
            1,
            3,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert_eq!(none.sentence, Formula::False);
    }

    #[test]
    fn functional_case_cap() {
        let u = unar();
        let err =
            theta_bounded_to_existential_functional(&Formula::True, &u, 2, 4, 10).unwrap_err();
        assert!(matches!(
            err,
            ThetaError::Structure(StructureError::CapExceeded { .. })
        ));
    }

    #[test]
    fn diagrams_use_breadth_first_terms() {
        let u = unar();
        let t = theta_bounded_to_existential_functional(
            &Formula::True,
            &u,
            1,
            3,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        // 1-generated unars with 1, 2 and 3 elements: 1 + 2 + 3.
        assert_eq!(t.disjuncts(), 6);
        let d = t.diagrams.last().unwrap();
        assert_eq!(
            d.terms.iter().map(ToString::to_string).collect::<Vec<_>>(),
            ["g0", "F(g0)", "F(F(g0))"]
        );
    }
}
