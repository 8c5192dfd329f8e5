// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use super::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelativizeError {
    #[error("set variable `{0}` already occurs in the formula")]
    SetVariableOccurs(String),
    #[error("variable `{0}` is not fresh for the formula")]
    NotFresh(String),
    #[error("formula uses function or constant symbols; use the functional translation")]
    FunctionalSymbols,
    #[error("formula contains a set quantifier")]
    NotFirstOrder,
    #[error("at least one variable is required")]
    NoVariables,
}

/// Bounds every first-order quantifier by membership in the set variable
/// `set`: `exists y. b` becomes `exists y. (set(y) & b)` and `forall y. b`
/// becomes `forall y. (set(y) -> b)`.
pub fn relativize_to_set_variable(f: &Formula, set: &str) -> Result<Formula, RelativizeError> {
    if !f.is_first_order() {
        return Err(RelativizeError::NotFirstOrder);
    }
    if f.set_variables().contains(set) {
        return Err(RelativizeError::SetVariableOccurs(set.to_string()));
    }
    Ok(to_set(f, set))
}

fn to_set(f: &Formula, set: &str) -> Formula {
    use Formula::*;
    match f {
        True | False | Pred(..) | Eq(..) | InSet(..) => f.clone(),
        Not(g) => Formula::not(to_set(g, set)),
        And(gs) => And(gs.iter().map(|g| to_set(g, set)).collect()),
        Or(gs) => Or(gs.iter().map(|g| to_set(g, set)).collect()),
        Implies(a, b) => Formula::implies(to_set(a, set), to_set(b, set)),
        Iff(a, b) => Formula::iff(to_set(a, set), to_set(b, set)),
        Exists(y, body) => Formula::exists(
            y,
            And(vec![Formula::in_set(set, Term::var(y)), to_set(body, set)]),
        ),
        Forall(y, body) => Formula::forall(
            y,
            Formula::implies(Formula::in_set(set, Term::var(y)), to_set(body, set)),
        ),
        ExistsSet(..) => unreachable!("checked first-order"),
    }
}

/// Eliminates quantifiers by letting each bound variable range over `vars`:
/// `exists y. b` becomes the disjunction of `b[y:=v]` over `vars`, and
/// `forall y. b` the conjunction. Only predicate-only formulas qualify.
pub fn relativize_to_variables<S: AsRef<str>>(
    f: &Formula,
    vars: &[S],
) -> Result<Formula, RelativizeError> {
    if !f.is_first_order() {
        return Err(RelativizeError::NotFirstOrder);
    }
    if f.uses_functional_symbols() {
        return Err(RelativizeError::FunctionalSymbols);
    }
    if vars.is_empty() {
        return Err(RelativizeError::NoVariables);
    }
    let used = f.variables();
    if let Some(v) = vars.iter().find(|v| used.contains(v.as_ref())) {
        return Err(RelativizeError::NotFresh(v.as_ref().to_string()));
    }
    let terms: Vec<Term> = vars.iter().map(|v| Term::var(v.as_ref())).collect();
    Ok(to_vars(f, &terms))
}

fn to_vars(f: &Formula, vars: &[Term]) -> Formula {
    use Formula::*;
    match f {
        True | False | Pred(..) | Eq(..) | InSet(..) => f.clone(),
        Not(g) => Formula::not(to_vars(g, vars)),
        And(gs) => Formula::and(gs.iter().map(|g| to_vars(g, vars)).collect()),
        Or(gs) => Formula::or(gs.iter().map(|g| to_vars(g, vars)).collect()),
        Implies(a, b) => Formula::implies(to_vars(a, vars), to_vars(b, vars)),
        Iff(a, b) => Formula::iff(to_vars(a, vars), to_vars(b, vars)),
        Exists(y, body) => {
            let b = to_vars(body, vars);
            Formula::or(vars.iter().map(|v| b.substitute(y, v)).collect())
        }
        Forall(y, body) => {
            let b = to_vars(body, vars);
            Formula::and(vars.iter().map(|v| b.substitute(y, v)).collect())
        }
        ExistsSet(..) => unreachable!("checked first-order"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::structures::Signature;

    fn sig() -> Signature {
        Signature::builder().predicate("R", 2).build().unwrap()
    }

    fn parse(text: &str) -> Formula {
        parse_formula(text, &sig()).unwrap()
    }

    #[test]
    fn set_relativization_examples() {
        let f = relativize_to_set_variable(&parse("exists x. R(x,x)"), "X").unwrap();
        assert_eq!(f, parse("exists x. (X(x) & R(x,x))"));
        let g = relativize_to_set_variable(&parse("forall x. exists y. R(x,y)"), "X").unwrap();
        assert_eq!(g, parse("forall x. (X(x) -> exists y. (X(y) & R(x,y)))"));
        let qf = parse("R(x,y) | !R(y,x)");
        assert_eq!(relativize_to_set_variable(&qf, "X").unwrap(), qf);
        assert!(relativize_to_set_variable(&parse("X(x)"), "X").is_err());
    }

    #[test]
    fn variable_relativization_examples() {
        let f = relativize_to_variables(&parse("exists x. forall y. R(x,y)"), &["x0"]).unwrap();
        assert_eq!(f, parse("R(x0,x0)"));
        let g =
            relativize_to_variables(&parse("forall x. exists y. R(x,y)"), &["x0", "x1"]).unwrap();
        assert_eq!(g, parse("(R(x0,x0) | R(x0,x1)) & (R(x1,x0) | R(x1,x1))"));
        let qf = parse("R(x,y)");
        assert_eq!(relativize_to_variables(&qf, &["x0"]).unwrap(), qf);
    }

    #[test]
    fn variable_relativization_errors() {
        assert_eq!(
            relativize_to_variables(&parse("exists x. R(x,x)"), &["x"]),
            Err(RelativizeError::NotFresh("x".into()))
        );
        let unar = Signature::builder().function("F", 1).build().unwrap();
        let f = parse_formula("exists x. F(x) = x", &unar).unwrap();
        assert_eq!(
            relativize_to_variables(&f, &["x0"]),
            Err(RelativizeError::FunctionalSymbols)
        );
    }
}
