// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use super::{Formula, Term};

pub(crate) fn render_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t);
    out
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Var(v) | Term::Const(v) => out.push_str(v),
        Term::App(f, args) => {
            out.push_str(f);
            write_args(out, args);
        }
    }
}

fn write_args(out: &mut String, args: &[Term]) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_term(out, a);
    }
    out.push(')');
}

/// Renders a formula in the concrete syntax accepted by the parser.
/// Binary and n-ary connectives are always parenthesized, so the output does
/// not depend on precedence or associativity.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(&mut out, f);
    out
}

fn write(out: &mut String, f: &Formula) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Pred(p, args) => {
            out.push_str(p);
            write_args(out, args);
        }
        Formula::InSet(x, t) => {
            out.push_str(x);
            out.push('(');
            write_term(out, t);
            out.push(')');
        }
        Formula::Eq(a, b) => {
            write_term(out, a);
            out.push_str(" = ");
            write_term(out, b);
        }
        Formula::Not(g) => match &**g {
            Formula::Eq(a, b) => {
                write_term(out, a);
                out.push_str(" != ");
                write_term(out, b);
            }
            inner => {
                out.push('!');
                write_operand(out, inner);
            }
        },
        Formula::And(fs) | Formula::Or(fs) if fs.is_empty() => {
            out.push_str(if matches!(f, Formula::And(_)) {
                "true"
            } else {
                "false"
            })
        }
        Formula::And(fs) | Formula::Or(fs) if fs.len() == 1 => write(out, &fs[0]),
        Formula::And(fs) | Formula::Or(fs) => {
            let sep = if matches!(f, Formula::And(_)) {
                " & "
            } else {
                " | "
            };
            out.push('(');
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                write_operand(out, g);
            }
            out.push(')');
        }
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            let sep = if matches!(f, Formula::Implies(..)) {
                " -> "
            } else {
                " <-> "
            };
            out.push('(');
            write_operand(out, a);
            out.push_str(sep);
            write_operand(out, b);
            out.push(')');
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            out.push_str(if matches!(f, Formula::Forall(..)) {
                "forall "
            } else {
                "exists "
            });
            out.push_str(v);
            out.push_str(". ");
            write(out, body);
        }
        Formula::ExistsSet(x, body) => {
            out.push_str("existsSet ");
            out.push_str(x);
            out.push_str(". ");
            write(out, body);
        }
    }
}

/// Operands of connectives: quantified formulas and (dis)equalities are
/// wrapped so their scope is explicit.
fn write_operand(out: &mut String, f: &Formula) {
    let wrap = match f {
        Formula::Forall(..) | Formula::Exists(..) | Formula::ExistsSet(..) | Formula::Eq(..) => {
            true
        }
        Formula::Not(g) => matches!(**g, Formula::Eq(..)),
        _ => false,
    };
    if wrap {
        out.push('(');
        write(out, f);
        out.push(')');
    } else {
        write(out, f);
    }
}
