//! Re-parsable printing of expressions.
//!
//! Every expression is printed bare when its precedence is at least the
//! context's, and parenthesized otherwise. Constructs that extend to the right
//! (`let`, `fun`, `match`, `if`) only appear bare in final positions, i.e.
//! contexts 0 and 1; context 0 additionally admits a bare sequence.

use std::fmt::Write;

use super::ast::*;

const SEQ: u8 = 0;
const FINAL: u8 = 1;
const NONFINAL: u8 = 2;
const ATOM: u8 = 12;

fn binary_info(op: &str) -> Option<(u8, Assoc)> {
    Some(match op {
        ":=" => (1, Assoc::Right),
        "||" => (3, Assoc::Right),
        "&&" => (4, Assoc::Right),
        "=" | "<" | ">" | "<=" | ">=" | "<>" | "==" | "!=" => (5, Assoc::Left),
        "^" | "@" => (6, Assoc::Right),
        "::" => (7, Assoc::Right),
        "+" | "-" | "+." | "-." => (8, Assoc::Left),
        "*" | "/" | "*." | "/." => (9, Assoc::Left),
        _ => return None,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Assoc {
    Left,
    Right,
}

fn is_operator(name: &str) -> bool {
    name.starts_with(|c: char| "+-*/<>=:!^&|@~.".contains(c))
}

pub fn pretty_expr(e: &Expr) -> String {
    let mut out = String::new();
    expr(&mut out, e, SEQ);
    out
}

pub fn pretty_program(prog: &Program) -> String {
    let mut out = String::new();
    for def in &prog.defs {
        out.push_str(if def.is_rec { "let rec " } else { "let " });
        out.push_str(&def.name);
        out.push_str(" = ");
        expr(&mut out, &def.body, SEQ);
        out.push('\n');
    }
    out
}

fn prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Seq(..) => 0,
        ExprKind::Let { .. } | ExprKind::Fun(..) | ExprKind::Match(..) | ExprKind::If(..) => 1,
        ExprKind::Tuple(_) => 2,
        ExprKind::ConstInt(i) if *i < 0 => 10,
        ExprKind::ConstFloat(f) if f.is_sign_negative() => 10,
        ExprKind::App(f, args) => match &f.kind {
            ExprKind::Var(op) if args.len() == 2 && binary_info(op).is_some() => {
                binary_info(op).map(|(p, _)| p).unwrap_or(11)
            }
            ExprKind::Var(op) if args.len() == 1 && (op == "~-" || op == "~-.") => 10,
            ExprKind::Var(op) if args.len() == 1 && op == "!" => ATOM,
            _ => 11,
        },
        _ => ATOM,
    }
}

fn expr(out: &mut String, e: &Expr, ctx: u8) {
    if prec(e) < ctx {
        out.push('(');
        expr_bare(out, e);
        out.push(')');
    } else {
        expr_bare(out, e);
    }
}

fn expr_bare(out: &mut String, e: &Expr) {
    match &e.kind {
        ExprKind::Var(x) if is_operator(x) => {
            let _ = write!(out, "({x})");
        }
        ExprKind::Var(x) => out.push_str(x),
        ExprKind::ConstInt(i) => {
            let _ = write!(out, "{i}");
        }
        ExprKind::ConstFloat(f) => out.push_str(&float_literal(*f)),
        ExprKind::ConstBool(b) => {
            let _ = write!(out, "{b}");
        }
        ExprKind::ConstString(s) => string_literal(out, s),
        ExprKind::ConstChar(c) => char_literal(out, *c),
        ExprKind::ConstUnit => out.push_str("()"),
        ExprKind::Fun(params, body) => {
            out.push_str("fun");
            for p in params {
                out.push(' ');
                pattern(out, p, 2);
            }
            out.push_str(" -> ");
            expr(out, body, SEQ);
        }
        ExprKind::App(f, args) => app(out, f, args),
        ExprKind::Let {
            is_rec,
            name,
            bound,
            body,
        } => {
            out.push_str(if *is_rec { "let rec " } else { "let " });
            out.push_str(name);
            out.push_str(" = ");
            expr(out, bound, SEQ);
            out.push_str(" in ");
            expr(out, body, SEQ);
        }
        ExprKind::If(c, t, el) => {
            out.push_str("if ");
            expr(out, c, SEQ);
            out.push_str(" then ");
            match el {
                Some(el) => {
                    expr(out, t, NONFINAL);
                    out.push_str(" else ");
                    expr(out, el, FINAL);
                }
                None => expr(out, t, FINAL),
            }
        }
        ExprKind::Match(scrut, arms) => {
            out.push_str("match ");
            expr(out, scrut, SEQ);
            out.push_str(" with");
            for (i, (p, body)) in arms.iter().enumerate() {
                out.push_str(" | ");
                pattern(out, p, 0);
                out.push_str(" -> ");
                let ctx = if i + 1 == arms.len() { SEQ } else { NONFINAL };
                expr(out, body, ctx);
            }
        }
        ExprKind::While(c, body) => {
            out.push_str("while ");
            expr(out, c, SEQ);
            out.push_str(" do ");
            expr(out, body, SEQ);
            out.push_str(" done");
        }
        ExprKind::Seq(a, b) => {
            expr(out, a, NONFINAL);
            out.push_str("; ");
            expr(out, b, SEQ);
        }
        ExprKind::Tuple(es) => {
            for (i, el) in es.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                expr(out, el, 3);
            }
        }
        ExprKind::ListLit(es) => {
            out.push('[');
            for (i, el) in es.iter().enumerate() {
                if i > 0 {
                    out.push_str("; ");
                }
                expr(out, el, NONFINAL);
            }
            out.push(']');
        }
        ExprKind::Annot(inner, ty) => {
            out.push('(');
            expr(out, inner, SEQ);
            out.push_str(" : ");
            type_expr(out, ty, 0);
            out.push(')');
        }
    }
}

fn app(out: &mut String, f: &Expr, args: &[Expr]) {
    if let ExprKind::Var(op) = &f.kind {
        if args.len() == 2 {
            if let Some((p, assoc)) = binary_info(op) {
                let (lctx, rctx) = match assoc {
                    Assoc::Left => (p, p + 1),
                    Assoc::Right => (p + 1, p),
                };
                // Operands of `:=` sit below the tuple level.
                let lctx = lctx.max(NONFINAL);
                expr(out, &args[0], lctx);
                let _ = write!(out, " {op} ");
                expr(out, &args[1], rctx);
                return;
            }
        }
        if args.len() == 1 && (op == "~-" || op == "~-.") {
            out.push_str(if op == "~-" { "-(" } else { "-.(" });
            expr(out, &args[0], SEQ);
            out.push(')');
            return;
        }
        if args.len() == 1 && op == "!" {
            out.push('!');
            expr(out, &args[0], ATOM);
            return;
        }
    }
    expr(out, f, ATOM);
    for a in args {
        out.push(' ');
        expr(out, a, ATOM);
    }
}

fn pattern(out: &mut String, p: &Pattern, ctx: u8) {
    let p_prec = match &p.kind {
        PatternKind::Tuple(_) => 0,
        PatternKind::Cons(..) => 1,
        _ => 2,
    };
    if p_prec < ctx {
        out.push('(');
    }
    match &p.kind {
        PatternKind::Var(x) => out.push_str(x),
        PatternKind::Wildcard => out.push('_'),
        PatternKind::ConstInt(i) => {
            let _ = write!(out, "{i}");
        }
        PatternKind::ConstFloat(f) => out.push_str(&float_literal(*f)),
        PatternKind::ConstBool(b) => {
            let _ = write!(out, "{b}");
        }
        PatternKind::ConstString(s) => string_literal(out, s),
        PatternKind::ConstChar(c) => char_literal(out, *c),
        PatternKind::ConstUnit => out.push_str("()"),
        PatternKind::Nil => out.push_str("[]"),
        PatternKind::Tuple(ps) => {
            for (i, el) in ps.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                pattern(out, el, 1);
            }
        }
        PatternKind::Cons(h, t) => {
            pattern(out, h, 2);
            out.push_str(" :: ");
            pattern(out, t, 1);
        }
        PatternKind::Annot(inner, ty) => {
            out.push('(');
            pattern(out, inner, 0);
            out.push_str(" : ");
            type_expr(out, ty, 0);
            out.push(')');
        }
    }
    if p_prec < ctx {
        out.push(')');
    }
}

/// Prints a type annotation; `ctx` 0 = anywhere, 1 = tuple element, 2 = constructor argument.
pub(crate) fn type_expr(out: &mut String, t: &TypeExpr, ctx: u8) {
    let t_prec = match t {
        TypeExpr::Arrow(..) => 0,
        TypeExpr::Tuple(_) => 1,
        _ => 2,
    };
    if t_prec < ctx {
        out.push('(');
    }
    match t {
        TypeExpr::Var(v) => {
            let _ = write!(out, "'{v}");
        }
        TypeExpr::Con(name, args) => {
            for a in args {
                type_expr(out, a, 2);
                out.push(' ');
            }
            out.push_str(name);
        }
        TypeExpr::Arrow(a, b) => {
            type_expr(out, a, 1);
            out.push_str(" -> ");
            type_expr(out, b, 0);
        }
        TypeExpr::Tuple(ts) => {
            for (i, el) in ts.iter().enumerate() {
                if i > 0 {
                    out.push_str(" * ");
                }
                type_expr(out, el, 2);
            }
        }
    }
    if t_prec < ctx {
        out.push(')');
    }
}

fn float_literal(f: f64) -> String {
    let s = format!("{f:?}");
    if s.contains(['.', 'e', 'E']) || !s.bytes().all(|b| b.is_ascii_digit() || b == b'-') {
        s
    } else {
        format!("{s}.")
    }
}

fn string_literal(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
}

fn char_literal(out: &mut String, c: char) {
    match c {
        '\'' => out.push_str("'\\''"),
        '\\' => out.push_str("'\\\\'"),
        '\n' => out.push_str("'\\n'"),
        '\t' => out.push_str("'\\t'"),
        '\r' => out.push_str("'\\r'"),
        c => {
            let _ = write!(out, "'{c}'");
        }
    }
}
