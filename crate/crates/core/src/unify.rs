//! Destructive first-order unification with occurs check.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::tycore::{build_display, snapshot, DisplayTy, NamingContext, Node, TyId, TyStore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConflictKind {
    Mismatch,
    OccursCheck,
}

/// Why two types failed to unify. `left`/`right` are the innermost clashing
/// subterms; the `whole_*` fields are the operands passed to [`unify`]. All
/// four are snapshots taken when the failure was detected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnifyConflict {
    pub kind: ConflictKind,
    pub left: DisplayTy,
    pub right: DisplayTy,
    pub whole_left: DisplayTy,
    pub whole_right: DisplayTy,
}

struct Clash {
    kind: ConflictKind,
    left: TyId,
    right: TyId,
}

pub fn unify(store: &mut TyStore, t1: TyId, t2: TyId) -> Result<(), UnifyConflict> {
    unify_rec(store, t1, t2).map_err(|clash| {
        let mut naming = NamingContext::new();
        let whole_left = snapshot(store, t1, &mut naming);
        let whole_right = snapshot(store, t2, &mut naming);
        UnifyConflict {
            kind: clash.kind,
            left: snapshot(store, clash.left, &mut naming),
            right: snapshot(store, clash.right, &mut naming),
            whole_left,
            whole_right,
        }
    })
}

fn unify_rec(store: &mut TyStore, t1: TyId, t2: TyId) -> Result<(), Clash> {
    let a = store.repr(t1);
    let b = store.repr(t2);
    if a == b {
        return Ok(());
    }
    match (store.node(a).clone(), store.node(b).clone()) {
        (Node::Var { level: la, .. }, Node::Var { level: lb, .. }) => {
            store.link(a, b);
            store.set_level(b, la.min(lb));
            Ok(())
        }
        (Node::Var { level, .. }, _) => bind(store, a, level, b, false),
        (_, Node::Var { level, .. }) => bind(store, b, level, a, true),
        (Node::Arrow(p1, r1), Node::Arrow(p2, r2)) => {
            unify_rec(store, p1, p2)?;
            unify_rec(store, r1, r2)
        }
        (Node::Con(c1, x1), Node::Con(c2, x2)) if c1 == c2 => match (x1, x2) {
            (Some(x1), Some(x2)) => unify_rec(store, x1, x2),
            _ => Ok(()),
        },
        (Node::Tuple(e1), Node::Tuple(e2)) if e1.len() == e2.len() => {
            for (x, y) in e1.into_iter().zip(e2) {
                unify_rec(store, x, y)?;
            }
            Ok(())
        }
        _ => Err(Clash {
            kind: ConflictKind::Mismatch,
            left: a,
            right: b,
        }),
    }
}

fn bind(store: &mut TyStore, var: TyId, level: u32, t: TyId, flipped: bool) -> Result<(), Clash> {
    if occurs_adjust(store, var, level, t) {
        let (left, right) = if flipped { (t, var) } else { (var, t) };
        return Err(Clash {
            kind: ConflictKind::OccursCheck,
            left,
            right,
        });
    }
    store.link(var, t);
    Ok(())
}

/// Occurs check that also lowers levels in `t` to `level`.
fn occurs_adjust(store: &mut TyStore, var: TyId, level: u32, t: TyId) -> bool {
    let t = store.repr(t);
    if t == var {
        return true;
    }
    match store.node(t).clone() {
        Node::Var { level: l, .. } => {
            if l > level {
                store.set_level(t, level);
            }
            false
        }
        Node::Arrow(a, b) => {
            occurs_adjust(store, var, level, a) || occurs_adjust(store, var, level, b)
        }
        Node::Con(_, arg) => arg.is_some_and(|a| occurs_adjust(store, var, level, a)),
        Node::Tuple(ts) => ts.into_iter().any(|e| occurs_adjust(store, var, level, e)),
    }
}

/// Whether the unlinked variable `var` is reachable from `t`.
pub fn occurs(store: &TyStore, var: TyId, t: TyId) -> bool {
    let t = store.resolve(t);
    if t == var {
        return true;
    }
    match store.node(t) {
        Node::Var { .. } => false,
        Node::Arrow(a, b) => occurs(store, var, *a) || occurs(store, var, *b),
        Node::Con(_, arg) => arg.is_some_and(|a| occurs(store, var, a)),
        Node::Tuple(ts) => ts.iter().any(|e| occurs(store, var, *e)),
    }
}

/// Result of peeling arrows off a function type.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrowShape {
    pub params: Vec<TyId>,
    pub ret: TyId,
    /// Requested arity minus the number of arrows found.
    pub shortfall: usize,
    /// The type left after peeling is a bare variable.
    pub ret_is_var: bool,
}

/// Peels up to `n` arrows off `t` without touching the store.
pub fn arrow_decompose(store: &TyStore, t: TyId, n: usize) -> ArrowShape {
    let mut params = Vec::new();
    let mut cur = store.resolve(t);
    while params.len() < n {
        match store.node(cur) {
            Node::Arrow(p, r) => {
                params.push(*p);
                cur = store.resolve(*r);
            }
            _ => break,
        }
    }
    ArrowShape {
        shortfall: n - params.len(),
        ret_is_var: matches!(store.node(cur), Node::Var { .. }),
        params,
        ret: cur,
    }
}

/// Whether two snapshots would unify, tested on fresh copies in a scratch
/// store. Variables with the same display name are the same variable.
pub fn display_unifiable(a: &DisplayTy, b: &DisplayTy) -> bool {
    let mut scratch = TyStore::new();
    let mut vars = HashMap::new();
    let ta = build_display(&mut scratch, a, &mut vars);
    let tb = build_display(&mut scratch, b, &mut vars);
    unify_rec(&mut scratch, ta, tb).is_ok()
}
