//! Structured diagnostics and their renderers.
//!
//! A [`Diagnostic`] carries only data: the failing span, a kind-specific
//! payload made of immutable type snapshots, and suggestions. Rendering to
//! text ([`render_text`]) and to JSON ([`render_json`]) are separate passes.

mod json;
mod text;

use serde::{Deserialize, Serialize};

use crate::surface::{ParseError, Span};
use crate::tycore::DisplayTy;
use crate::unify::UnifyConflict;

pub use json::{parse_json, render_json, JSON_VERSION};
pub use text::render_text;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub span: Span,
    #[serde(flatten)]
    pub kind: DiagnosticKind,
    pub suggestions: Vec<Suggestion>,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, span: Span) -> Self {
        Diagnostic {
            span,
            kind,
            suggestions: Vec::new(),
        }
    }

    pub fn from_parse_error(e: &ParseError) -> Self {
        Diagnostic::new(
            DiagnosticKind::ParseError {
                message: e.message.clone(),
            },
            e.span.clone(),
        )
    }

    /// Adds a suggestion unless one of the same kind is already present.
    pub fn suggest(&mut self, s: Suggestion) {
        let same = |o: &Suggestion| std::mem::discriminant(o) == std::mem::discriminant(&s);
        if !self.suggestions.iter().any(same) {
            self.suggestions.push(s);
        }
    }

    pub fn is_occurs_check(&self) -> bool {
        matches!(&self.kind, DiagnosticKind::GenericUnify { conflict }
            if conflict.kind == crate::unify::ConflictKind::OccursCheck)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiagnosticKind {
    AppMismatch {
        rows: Vec<ArgRow>,
    },
    TooManyArgs {
        expected_arity: usize,
        given_arity: usize,
    },
    IllTypedApp {
        fn_return: DisplayTy,
    },
    BranchMismatch {
        report: BranchReport,
    },
    MissingElse {
        then_type: DisplayTy,
    },
    SubexprMismatch {
        role: SubexprRole,
        expected: DisplayTy,
        actual: DisplayTy,
    },
    UnboundVar {
        name: String,
        missing_rec: bool,
    },
    GenericUnify {
        conflict: UnifyConflict,
    },
    ParseError {
        message: String,
    },
}

impl DiagnosticKind {
    pub fn tag(&self) -> &'static str {
        match self {
            DiagnosticKind::AppMismatch { .. } => "app_mismatch",
            DiagnosticKind::TooManyArgs { .. } => "too_many_args",
            DiagnosticKind::IllTypedApp { .. } => "ill_typed_app",
            DiagnosticKind::BranchMismatch { .. } => "branch_mismatch",
            DiagnosticKind::MissingElse { .. } => "missing_else",
            DiagnosticKind::SubexprMismatch { .. } => "subexpr_mismatch",
            DiagnosticKind::UnboundVar { .. } => "unbound_var",
            DiagnosticKind::GenericUnify { .. } => "generic_unify",
            DiagnosticKind::ParseError { .. } => "parse_error",
        }
    }
}

/// One argument of an ill-typed application.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArgRow {
    /// 1-based.
    pub index: usize,
    pub expected: DisplayTy,
    pub actual: DisplayTy,
    pub clashed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construct {
    If,
    Match,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    pub construct: Construct,
    /// Unified type of branches `1..offending_index`.
    pub accumulated: DisplayTy,
    pub offending: DisplayTy,
    pub offending_index: usize,
    pub offending_span: Span,
    pub counterpart_span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubexprRole {
    WhileCondition,
    WhileBody,
    IfCondition,
    SeqLeft,
    PatternOfMatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "suggestion", rename_all = "snake_case")]
pub enum Suggestion {
    MissingUnit { certain: bool },
    MissingBang,
    MissingRec { name: String },
}

impl Suggestion {
    pub fn sentence(&self) -> String {
        match self {
            Suggestion::MissingUnit { certain: true } => {
                "You probably forgot to provide `()` as argument.".into()
            }
            Suggestion::MissingUnit { certain: false } => {
                "You probably forgot to provide `()` as argument somewhere.".into()
            }
            Suggestion::MissingBang => "You probably forgot a `!` or a `ref` somewhere.".into(),
            Suggestion::MissingRec { .. } => "You probably meant to use `let rec`.".into(),
        }
    }
}
