//! Bottom-up checking for error explanation. Arguments and branches are typed
//! independently, their types are copied, and only then unified, so that a
//! failure can show every type involved without blaming one of them.

use super::{pattern_type, unbound, Session};
use crate::diagnostics::{
    ArgRow, BranchReport, Construct, Diagnostic, DiagnosticKind, SubexprRole, Suggestion,
};
use crate::surface::{Expr, ExprKind, Pattern, Span};
use crate::tycore::{snapshot, DisplayTy, NamingContext, Scheme, TyCon, TyId};
use crate::unify::{arrow_decompose, display_unifiable, unify, UnifyConflict};

pub fn infer_easy(s: &mut Session, e: &Expr) -> Result<TyId, Diagnostic> {
    match &e.kind {
        ExprKind::Var(x) => lookup_with_shadow(s, x, &e.span),
        ExprKind::ConstInt(_) => Ok(s.base(TyCon::Int)),
        ExprKind::ConstFloat(_) => Ok(s.base(TyCon::Float)),
        ExprKind::ConstBool(_) => Ok(s.base(TyCon::Bool)),
        ExprKind::ConstString(_) => Ok(s.base(TyCon::String)),
        ExprKind::ConstChar(_) => Ok(s.base(TyCon::Char)),
        ExprKind::ConstUnit => Ok(s.base(TyCon::Unit)),
        ExprKind::Fun(params, body) => {
            let depth = s.env.depth();
            let mut binds = Vec::new();
            let mut pts = Vec::with_capacity(params.len());
            for p in params {
                pts.push(pattern_type(s, p, &mut binds)?);
            }
            for (x, t) in binds {
                s.env.bind(x, Scheme::mono(t));
            }
            let r = infer_easy(s, body);
            s.env.truncate(depth);
            let r = r?;
            Ok(s.store.arrows(&pts, r))
        }
        ExprKind::App(f, args) => check_app_easy(s, e, f, args),
        ExprKind::Let {
            is_rec,
            name,
            bound,
            body,
        } => {
            let scheme = let_binding(s, *is_rec, name, bound)?;
            let depth = s.env.depth();
            s.env.bind(name.clone(), scheme);
            let r = infer_easy(s, body);
            s.env.truncate(depth);
            r
        }
        ExprKind::If(c, t, els) => check_if_easy(s, e, c, t, els.as_deref()),
        ExprKind::Match(scrut, arms) => check_match_easy(s, scrut, arms),
        ExprKind::While(c, body) => {
            let b = s.base(TyCon::Bool);
            check_subexpr_role(s, c, SubexprRole::WhileCondition, b)?;
            let u = s.base(TyCon::Unit);
            check_subexpr_role(s, body, SubexprRole::WhileBody, u)?;
            Ok(u)
        }
        ExprKind::Seq(a, b) => {
            let u = s.base(TyCon::Unit);
            check_subexpr_role(s, a, SubexprRole::SeqLeft, u)?;
            infer_easy(s, b)
        }
        ExprKind::Tuple(es) => {
            let ts = es
                .iter()
                .map(|x| infer_easy(s, x))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(s.store.tuple(ts))
        }
        ExprKind::ListLit(es) => {
            let elem = s.fresh();
            for x in es {
                let t = infer_easy(s, x)?;
                unify_generic(s, elem, t, &x.span, false)?;
            }
            Ok(s.store.list(elem))
        }
        ExprKind::Annot(inner, ty) => {
            let t = infer_easy(s, inner)?;
            let a = s.annotation(ty);
            unify_generic(s, a, t, &inner.span, false)?;
            Ok(a)
        }
    }
}

pub(super) fn let_binding(
    s: &mut Session,
    is_rec: bool,
    name: &str,
    bound: &Expr,
) -> Result<Scheme, Diagnostic> {
    s.env.enter_level();
    let r = if is_rec {
        let depth = s.env.depth();
        let v = s.fresh();
        s.env.bind(name, Scheme::mono(v));
        let r = infer_easy(s, bound).and_then(|t| unify_generic(s, v, t, &bound.span, false));
        s.env.truncate(depth);
        r.map(|()| v)
    } else {
        s.env.push_shadow(name);
        let r = infer_easy(s, bound);
        s.env.pop_shadow();
        r
    };
    s.env.exit_level();
    let t = r?;
    Ok(s.close(bound, t))
}

/// Looks `name` up; an unbound name that is being defined by an enclosing
/// non-recursive `let` suggests a missing `rec`.
pub fn lookup_with_shadow(s: &mut Session, name: &str, span: &Span) -> Result<TyId, Diagnostic> {
    if let Some(t) = s.instance(name) {
        return Ok(t);
    }
    let missing_rec = s.env.has_shadow(name);
    let mut d = unbound(name, span, missing_rec);
    if missing_rec {
        d.suggest(Suggestion::MissingRec {
            name: name.to_string(),
        });
    }
    Err(d)
}

fn check_app_easy(s: &mut Session, e: &Expr, f: &Expr, args: &[Expr]) -> Result<TyId, Diagnostic> {
    let tf = infer_easy(s, f)?;
    let targs = args
        .iter()
        .map(|a| infer_easy(s, a))
        .collect::<Result<Vec<_>, _>>()?;
    let n = args.len();
    let shape = arrow_decompose(&s.store, tf, n);
    if shape.shortfall > 0 && !shape.ret_is_var {
        return Err(too_many(e, shape.params.len(), n));
    }
    let k = shape.params.len();

    let mut naming = NamingContext::new();
    let mut rows: Vec<ArgRow> = (0..k)
        .map(|i| ArgRow {
            index: i + 1,
            expected: snapshot(&s.store, shape.params[i], &mut naming),
            actual: snapshot(&s.store, targs[i], &mut naming),
            clashed: false,
        })
        .collect();
    let fn_return = snapshot(&s.store, shape.ret, &mut naming);

    for i in 0..k {
        if let Err(conflict) = unify(&mut s.store, shape.params[i], targs[i]) {
            rows[i].clashed = true;
            let certain = rows[i].expected == DisplayTy::con(TyCon::Unit);
            let mut d = Diagnostic::new(DiagnosticKind::AppMismatch { rows }, e.span.clone());
            add_suggestions(&mut d, &conflict, certain);
            return Err(d);
        }
    }
    if shape.shortfall == 0 {
        return Ok(shape.ret);
    }

    // The result was a bare variable: it may stand for a function type.
    let rest = arrow_decompose(&s.store, shape.ret, shape.shortfall);
    if rest.shortfall > 0 && !rest.ret_is_var {
        return Err(too_many(e, k + rest.params.len(), n));
    }
    let mut params = rest.params;
    let mut ret = rest.ret;
    if rest.shortfall > 0 {
        let extra: Vec<TyId> = (0..rest.shortfall).map(|_| s.fresh()).collect();
        let r = s.fresh();
        let arrows = s.store.arrows(&extra, r);
        // `ret` is an unlinked variable here, so this cannot fail.
        let _ = unify(&mut s.store, ret, arrows);
        params.extend(extra);
        ret = r;
    }
    for (p, a) in params.into_iter().zip(&targs[k..]) {
        if let Err(conflict) = unify(&mut s.store, p, *a) {
            let mut d = Diagnostic::new(DiagnosticKind::IllTypedApp { fn_return }, e.span.clone());
            add_suggestions(&mut d, &conflict, false);
            return Err(d);
        }
    }
    Ok(ret)
}

fn too_many(e: &Expr, expected_arity: usize, given_arity: usize) -> Diagnostic {
    Diagnostic::new(
        DiagnosticKind::TooManyArgs {
            expected_arity,
            given_arity,
        },
        e.span.clone(),
    )
}

fn check_if_easy(
    s: &mut Session,
    e: &Expr,
    c: &Expr,
    then_b: &Expr,
    else_b: Option<&Expr>,
) -> Result<TyId, Diagnostic> {
    let b = s.base(TyCon::Bool);
    check_subexpr_role(s, c, SubexprRole::IfCondition, b)?;
    let t1 = infer_easy(s, then_b)?;
    let Some(else_b) = else_b else {
        let u = s.base(TyCon::Unit);
        let then_type = s.store.display(t1);
        return match unify(&mut s.store, u, t1) {
            Ok(()) => Ok(u),
            Err(conflict) => {
                let mut d =
                    Diagnostic::new(DiagnosticKind::MissingElse { then_type }, e.span.clone());
                add_suggestions(&mut d, &conflict, true);
                Err(d)
            }
        };
    };
    let t2 = infer_easy(s, else_b)?;
    let mut naming = NamingContext::new();
    let accumulated = snapshot(&s.store, t1, &mut naming);
    let offending = snapshot(&s.store, t2, &mut naming);
    match unify(&mut s.store, t1, t2) {
        Ok(()) => Ok(t1),
        Err(conflict) => {
            let report = BranchReport {
                construct: Construct::If,
                accumulated,
                offending,
                offending_index: 2,
                offending_span: else_b.span.clone(),
                counterpart_span: then_b.span.clone(),
            };
            let span = then_b.span.to(&else_b.span);
            let mut d = Diagnostic::new(DiagnosticKind::BranchMismatch { report }, span);
            add_suggestions(&mut d, &conflict, false);
            Err(d)
        }
    }
}

fn check_match_easy(
    s: &mut Session,
    scrut: &Expr,
    arms: &[(Pattern, Expr)],
) -> Result<TyId, Diagnostic> {
    let ts = infer_easy(s, scrut)?;
    let mut arm_types = Vec::with_capacity(arms.len());
    for (p, body) in arms {
        let depth = s.env.depth();
        let mut binds = Vec::new();
        let pt = pattern_type(s, p, &mut binds)?;
        let mut naming = NamingContext::new();
        let expected = snapshot(&s.store, ts, &mut naming);
        let actual = snapshot(&s.store, pt, &mut naming);
        if let Err(conflict) = unify(&mut s.store, ts, pt) {
            let role = SubexprRole::PatternOfMatch;
            let kind = DiagnosticKind::SubexprMismatch {
                role,
                expected,
                actual,
            };
            let mut d = Diagnostic::new(kind, p.span.clone());
            add_suggestions(&mut d, &conflict, false);
            return Err(d);
        }
        for (x, t) in binds {
            s.env.bind(x, Scheme::mono(t));
        }
        let r = infer_easy(s, body);
        s.env.truncate(depth);
        arm_types.push(r?);
    }
    let acc = arm_types[0];
    for (i, &t) in arm_types.iter().enumerate().skip(1) {
        let mut naming = NamingContext::new();
        let accumulated = snapshot(&s.store, acc, &mut naming);
        let offending = snapshot(&s.store, t, &mut naming);
        if let Err(conflict) = unify(&mut s.store, acc, t) {
            let first = &arms[0].1.span;
            let report = BranchReport {
                construct: Construct::Match,
                accumulated,
                offending,
                offending_index: i + 1,
                offending_span: arms[i].1.span.clone(),
                counterpart_span: first.to(&arms[i - 1].1.span),
            };
            let span = first.to(&arms[i].1.span);
            let mut d = Diagnostic::new(DiagnosticKind::BranchMismatch { report }, span);
            add_suggestions(&mut d, &conflict, false);
            return Err(d);
        }
    }
    Ok(acc)
}

/// Infers `e` on its own and requires it to have type `required`.
pub(crate) fn check_subexpr_role(
    s: &mut Session,
    e: &Expr,
    role: SubexprRole,
    required: TyId,
) -> Result<(), Diagnostic> {
    let t = infer_easy(s, e)?;
    let mut naming = NamingContext::new();
    let expected = snapshot(&s.store, required, &mut naming);
    let actual = snapshot(&s.store, t, &mut naming);
    unify(&mut s.store, required, t).map_err(|conflict| {
        let certain = expected == DisplayTy::con(TyCon::Unit);
        let kind = DiagnosticKind::SubexprMismatch {
            role,
            expected,
            actual,
        };
        let mut d = Diagnostic::new(kind, e.span.clone());
        add_suggestions(&mut d, &conflict, certain);
        d
    })
}

fn unify_generic(
    s: &mut Session,
    expected: TyId,
    actual: TyId,
    span: &Span,
    certain: bool,
) -> Result<(), Diagnostic> {
    unify(&mut s.store, expected, actual).map_err(|conflict| {
        let mut d = Diagnostic::new(
            DiagnosticKind::GenericUnify {
                conflict: conflict.clone(),
            },
            span.clone(),
        );
        add_suggestions(&mut d, &conflict, certain);
        d
    })
}

fn add_suggestions(d: &mut Diagnostic, c: &UnifyConflict, expected_is_unit_context: bool) {
    if let Some(sg) = detect_missing_unit(c, expected_is_unit_context) {
        d.suggest(sg);
    }
    if let Some(sg) = detect_missing_bang(c) {
        d.suggest(sg);
    }
}

/// Candidate (shaped side, other side) pairs: whole operands first, then
/// the innermost clash.
fn pairs(c: &UnifyConflict) -> [(&DisplayTy, &DisplayTy); 4] {
    [
        (&c.whole_left, &c.whole_right),
        (&c.whole_right, &c.whole_left),
        (&c.left, &c.right),
        (&c.right, &c.left),
    ]
}

/// A `unit -> t` on one side, where `t` would fit the other side.
pub fn detect_missing_unit(
    c: &UnifyConflict,
    expected_is_unit_context: bool,
) -> Option<Suggestion> {
    pairs(c).into_iter().find_map(|(x, y)| {
        let t = x.unit_arrow_result()?;
        (!display_unifiable(x, y) && display_unifiable(t, y)).then_some(Suggestion::MissingUnit {
            certain: expected_is_unit_context,
        })
    })
}

/// A `t ref` on one side, where `t` would fit the other side.
pub fn detect_missing_bang(c: &UnifyConflict) -> Option<Suggestion> {
    pairs(c).into_iter().find_map(|(x, y)| {
        let t = x.ref_payload()?;
        (!display_unifiable(x, y) && display_unifiable(t, y)).then_some(Suggestion::MissingBang)
    })
}
