//! Checking with expected types pushed down into subexpressions. Errors are
//! reported where the first contradiction with the expectation shows up.

use super::{pattern_type, unbound, unify_at, Session};
use crate::diagnostics::Diagnostic;
use crate::surface::{Expr, ExprKind};
use crate::tycore::{Node, Scheme, TyCon, TyId};

/// Infers the type of a closed-over expression in the session environment.
pub fn infer_classic(s: &mut Session, e: &Expr) -> Result<TyId, Diagnostic> {
    let t = s.fresh();
    check(s, e, t)?;
    Ok(t)
}

pub(super) fn let_binding(
    s: &mut Session,
    is_rec: bool,
    name: &str,
    bound: &Expr,
) -> Result<Scheme, Diagnostic> {
    s.env.enter_level();
    let t = s.fresh();
    let r = if is_rec {
        let depth = s.env.depth();
        s.env.bind(name, Scheme::mono(t));
        let r = check(s, bound, t);
        s.env.truncate(depth);
        r
    } else {
        check(s, bound, t)
    };
    s.env.exit_level();
    r?;
    Ok(s.close(bound, t))
}

/// The parameter and result of `expected`, forcing it to be an arrow.
fn split_arrow(s: &mut Session, expected: TyId, e: &Expr) -> Result<(TyId, TyId), Diagnostic> {
    let r = s.store.repr(expected);
    if let Node::Arrow(p, q) = s.store.node(r) {
        return Ok((*p, *q));
    }
    let (p, q) = (s.fresh(), s.fresh());
    let arrow = s.store.arrow(p, q);
    unify_at(s, expected, arrow, &e.span)?;
    Ok((p, q))
}

fn check(s: &mut Session, e: &Expr, expected: TyId) -> Result<(), Diagnostic> {
    match &e.kind {
        ExprKind::Var(x) => {
            let t = s.instance(x).ok_or_else(|| unbound(x, &e.span, false))?;
            unify_at(s, expected, t, &e.span)
        }
        ExprKind::ConstInt(_) => constant(s, TyCon::Int, expected, e),
        ExprKind::ConstFloat(_) => constant(s, TyCon::Float, expected, e),
        ExprKind::ConstBool(_) => constant(s, TyCon::Bool, expected, e),
        ExprKind::ConstString(_) => constant(s, TyCon::String, expected, e),
        ExprKind::ConstChar(_) => constant(s, TyCon::Char, expected, e),
        ExprKind::ConstUnit => constant(s, TyCon::Unit, expected, e),
        ExprKind::Fun(params, body) => {
            let depth = s.env.depth();
            let mut cur = expected;
            let mut binds = Vec::new();
            for p in params {
                let (param, res) = split_arrow(s, cur, e)?;
                let pt = pattern_type(s, p, &mut binds)?;
                unify_at(s, param, pt, &p.span)?;
                cur = res;
            }
            for (x, t) in binds {
                s.env.bind(x, Scheme::mono(t));
            }
            let r = check(s, body, cur);
            s.env.truncate(depth);
            r
        }
        ExprKind::App(f, args) => {
            let mut tf = infer_classic(s, f)?;
            for (i, arg) in args.iter().enumerate() {
                let r = s.store.repr(tf);
                let (p, q) = match s.store.node(r) {
                    Node::Arrow(p, q) => (*p, *q),
                    _ => {
                        let (p, q) = (s.fresh(), s.fresh());
                        let arrow = s.store.arrow(p, q);
                        // Blame the function applied to the arguments so far.
                        let head = if i == 0 {
                            f.span.clone()
                        } else {
                            f.span.to(&args[i - 1].span)
                        };
                        unify_at(s, arrow, tf, &head)?;
                        (p, q)
                    }
                };
                check(s, arg, p)?;
                tf = q;
            }
            unify_at(s, expected, tf, &e.span)
        }
        ExprKind::Let {
            is_rec,
            name,
            bound,
            body,
        } => {
            let scheme = let_binding(s, *is_rec, name, bound)?;
            let depth = s.env.depth();
            s.env.bind(name.clone(), scheme);
            let r = check(s, body, expected);
            s.env.truncate(depth);
            r
        }
        ExprKind::If(c, t, els) => {
            let b = s.base(TyCon::Bool);
            check(s, c, b)?;
            match els {
                Some(els) => {
                    check(s, t, expected)?;
                    check(s, els, expected)
                }
                None => {
                    let u = s.base(TyCon::Unit);
                    check(s, t, u)?;
                    unify_at(s, expected, u, &e.span)
                }
            }
        }
        ExprKind::Match(scrut, arms) => {
            let ts = infer_classic(s, scrut)?;
            for (p, body) in arms {
                let depth = s.env.depth();
                let mut binds = Vec::new();
                let pt = pattern_type(s, p, &mut binds)?;
                unify_at(s, ts, pt, &p.span)?;
                for (x, t) in binds {
                    s.env.bind(x, Scheme::mono(t));
                }
                let r = check(s, body, expected);
                s.env.truncate(depth);
                r?;
            }
            Ok(())
        }
        ExprKind::While(c, body) => {
            let b = s.base(TyCon::Bool);
            check(s, c, b)?;
            let u = s.base(TyCon::Unit);
            check(s, body, u)?;
            unify_at(s, expected, u, &e.span)
        }
        ExprKind::Seq(a, b) => {
            let u = s.base(TyCon::Unit);
            check(s, a, u)?;
            check(s, b, expected)
        }
        ExprKind::Tuple(es) => {
            let r = s.store.repr(expected);
            let elems = match s.store.node(r) {
                Node::Tuple(ts) if ts.len() == es.len() => ts.clone(),
                _ => {
                    let ts: Vec<TyId> = es.iter().map(|_| s.fresh()).collect();
                    let tup = s.store.tuple(ts.clone());
                    unify_at(s, expected, tup, &e.span)?;
                    ts
                }
            };
            for (x, t) in es.iter().zip(elems) {
                check(s, x, t)?;
            }
            Ok(())
        }
        ExprKind::ListLit(es) => {
            let r = s.store.repr(expected);
            let elem = match s.store.node(r) {
                Node::Con(TyCon::List, Some(a)) => *a,
                _ => {
                    let a = s.fresh();
                    let l = s.store.list(a);
                    unify_at(s, expected, l, &e.span)?;
                    a
                }
            };
            for x in es {
                check(s, x, elem)?;
            }
            Ok(())
        }
        ExprKind::Annot(inner, ty) => {
            let a = s.annotation(ty);
            unify_at(s, expected, a, &e.span)?;
            check(s, inner, a)
        }
    }
}

fn constant(s: &mut Session, c: TyCon, expected: TyId, e: &Expr) -> Result<(), Diagnostic> {
    let t = s.base(c);
    unify_at(s, expected, t, &e.span)
}
