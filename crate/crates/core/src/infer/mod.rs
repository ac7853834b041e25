//! Type inference: the classic expected-type-propagating checker and the
//! bottom-up checker used to explain errors.

mod classic;
mod easy;

use std::collections::HashMap;

use crate::diagnostics::{Diagnostic, DiagnosticKind};
use crate::surface::{Expr, Pattern, PatternKind, Program, Span, TopDef, TypeExpr};
use crate::tycore::{
    export_scheme, generalize, import_scheme, initial_env, instantiate, type_of_annotation,
    DisplayScheme, Scheme, TyCon, TyEnv, TyId, TyStore,
};
use crate::unify::unify;

pub use classic::infer_classic;
pub use easy::{detect_missing_bang, detect_missing_unit, infer_easy, lookup_with_shadow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Classic,
    Easy,
}

/// A type store with its environment. One session checks one program (or,
/// for the second pass, one definition).
pub struct Session {
    pub store: TyStore,
    pub env: TyEnv,
    annot_vars: HashMap<String, TyId>,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl Session {
    pub fn new() -> Self {
        let mut store = TyStore::new();
        let env = initial_env(&mut store);
        Session {
            store,
            env,
            annot_vars: HashMap::new(),
        }
    }

    /// Fresh session with `prelude` bound on top of the primitives.
    pub fn with_prelude(prelude: &[(String, DisplayScheme)]) -> Self {
        let mut s = Session::new();
        for (name, ds) in prelude {
            if name != "_" {
                let scheme = import_scheme(&mut s.store, ds);
                s.env.bind(name.clone(), scheme);
            }
        }
        s
    }

    pub(crate) fn fresh(&mut self) -> TyId {
        self.store.fresh_var(self.env.current_level)
    }

    pub(crate) fn base(&mut self, c: TyCon) -> TyId {
        self.store.base(c)
    }

    pub(crate) fn instance(&mut self, name: &str) -> Option<TyId> {
        let scheme = self.env.lookup(name)?.clone();
        Some(instantiate(
            &mut self.store,
            &scheme,
            self.env.current_level,
        ))
    }

    pub(crate) fn annotation(&mut self, t: &TypeExpr) -> TyId {
        let level = self.env.current_level;
        type_of_annotation(&mut self.store, t, level, &mut self.annot_vars)
    }

    /// The canonical scheme currently bound to `name`.
    pub fn scheme_of(&self, name: &str) -> Option<DisplayScheme> {
        self.env.lookup(name).map(|s| export_scheme(&self.store, s))
    }

    /// Generalizes `t` (already computed one level deeper) if `bound` is a
    /// syntactic value, otherwise pins its variables to the current level.
    pub(crate) fn close(&mut self, bound: &Expr, t: TyId) -> Scheme {
        let level = self.env.current_level;
        if bound.is_syntactic_value() {
            generalize(&self.store, level, t)
        } else {
            self.store.clamp_levels(t, level);
            Scheme::mono(t)
        }
    }

    /// Checks one top-level definition and binds it.
    pub fn check_def(&mut self, def: &TopDef, mode: Mode) -> Result<DisplayScheme, Diagnostic> {
        self.annot_vars.clear();
        let scheme = match mode {
            Mode::Classic => classic::let_binding(self, def.is_rec, &def.name, &def.body)?,
            Mode::Easy => easy::let_binding(self, def.is_rec, &def.name, &def.body)?,
        };
        let ds = export_scheme(&self.store, &scheme);
        if def.name != "_" {
            self.env.bind(def.name.clone(), scheme);
        }
        Ok(ds)
    }
}

/// Types a pattern bottom-up, collecting its variables with fresh types.
pub(crate) fn pattern_type(
    s: &mut Session,
    p: &Pattern,
    binds: &mut Vec<(String, TyId)>,
) -> Result<TyId, Diagnostic> {
    Ok(match &p.kind {
        PatternKind::Var(x) => {
            let t = s.fresh();
            binds.push((x.clone(), t));
            t
        }
        PatternKind::Wildcard => s.fresh(),
        PatternKind::ConstInt(_) => s.base(TyCon::Int),
        PatternKind::ConstFloat(_) => s.base(TyCon::Float),
        PatternKind::ConstBool(_) => s.base(TyCon::Bool),
        PatternKind::ConstString(_) => s.base(TyCon::String),
        PatternKind::ConstChar(_) => s.base(TyCon::Char),
        PatternKind::ConstUnit => s.base(TyCon::Unit),
        PatternKind::Tuple(ps) => {
            let ts = ps
                .iter()
                .map(|q| pattern_type(s, q, binds))
                .collect::<Result<Vec<_>, _>>()?;
            s.store.tuple(ts)
        }
        PatternKind::Nil => {
            let a = s.fresh();
            s.store.list(a)
        }
        PatternKind::Cons(h, t) => {
            let th = pattern_type(s, h, binds)?;
            let tt = pattern_type(s, t, binds)?;
            let lh = s.store.list(th);
            unify_at(s, lh, tt, &t.span)?;
            lh
        }
        PatternKind::Annot(inner, ty) => {
            let pt = pattern_type(s, inner, binds)?;
            let a = s.annotation(ty);
            unify_at(s, a, pt, &inner.span)?;
            a
        }
    })
}

/// Unifies `expected` with `actual`, reporting a generic mismatch at `span`.
pub(crate) fn unify_at(
    s: &mut Session,
    expected: TyId,
    actual: TyId,
    span: &Span,
) -> Result<(), Diagnostic> {
    unify(&mut s.store, expected, actual).map_err(|conflict| {
        Diagnostic::new(DiagnosticKind::GenericUnify { conflict }, span.clone())
    })
}

pub(crate) fn unbound(name: &str, span: &Span, missing_rec: bool) -> Diagnostic {
    Diagnostic::new(
        DiagnosticKind::UnboundVar {
            name: name.to_string(),
            missing_rec,
        },
        span.clone(),
    )
}

/// The first ill-typed definition of a program.
#[derive(Debug, Clone)]
pub struct FirstFailure {
    /// 1-based position of the definition.
    pub index: usize,
    pub diagnostic: Diagnostic,
    /// Schemes of the definitions before it, in order.
    pub preceding: Vec<(String, DisplayScheme)>,
}

pub type Typings = Vec<(String, DisplayScheme)>;

/// Checks every definition in order, stopping at the first failure.
pub fn check_program(prog: &Program, mode: Mode) -> Result<Typings, FirstFailure> {
    let mut s = Session::new();
    let mut out = Vec::with_capacity(prog.defs.len());
    for (i, def) in prog.defs.iter().enumerate() {
        match s.check_def(def, mode) {
            Ok(ds) => out.push((def.name.clone(), ds)),
            Err(diagnostic) => {
                return Err(FirstFailure {
                    index: i + 1,
                    diagnostic,
                    preceding: out,
                })
            }
        }
    }
    Ok(out)
}

pub fn check_program_classic(prog: &Program) -> Result<Typings, FirstFailure> {
    check_program(prog, Mode::Classic)
}

/// Re-checks a single definition bottom-up in a fresh session seeded with
/// the schemes of the definitions before it.
pub fn recheck_easy(
    preceding: &[(String, DisplayScheme)],
    def: &TopDef,
) -> Result<DisplayScheme, Diagnostic> {
    let mut s = Session::with_prelude(preceding);
    s.check_def(def, Mode::Easy)
}
