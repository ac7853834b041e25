use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A source region. Columns are 1-based; `end_col` points one past the last
/// character, so a one-character token at column 5 has `start_col = 5` and
/// `end_col = 6`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub file: Arc<str>,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
    pub byte_start: usize,
    pub byte_end: usize,
}

impl Span {
    /// Smallest span covering both `self` and `other`.
    pub fn to(&self, other: &Span) -> Span {
        let (start, end) = (self.min_start(other), self.max_end(other));
        Span {
            file: self.file.clone(),
            start_line: start.0,
            start_col: start.1,
            end_line: end.0,
            end_col: end.1,
            byte_start: self.byte_start.min(other.byte_start),
            byte_end: self.byte_end.max(other.byte_end),
        }
    }

    fn min_start(&self, other: &Span) -> (u32, u32) {
        (self.start_line, self.start_col).min((other.start_line, other.start_col))
    }

    fn max_end(&self, other: &Span) -> (u32, u32) {
        (self.end_line, self.end_col).max((other.end_line, other.end_col))
    }

    pub fn contains(&self, inner: &Span) -> bool {
        self.byte_start <= inner.byte_start
            && inner.byte_end <= self.byte_end
            && (self.start_line, self.start_col) <= (inner.start_line, inner.start_col)
            && (inner.end_line, inner.end_col) <= (self.end_line, self.end_col)
    }

    /// A zero-width span at the start of `file`, for diagnostics without a location.
    pub fn dummy(file: &str) -> Span {
        Span {
            file: Arc::from(file),
            start_line: 1,
            start_col: 1,
            end_line: 1,
            end_col: 1,
            byte_start: 0,
            byte_end: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Var(String),
    ConstInt(i64),
    ConstFloat(f64),
    ConstBool(bool),
    ConstString(String),
    ConstChar(char),
    ConstUnit,
    Fun(Vec<Pattern>, Box<Expr>),
    /// N-ary application; the function is never itself an `App`.
    App(Box<Expr>, Vec<Expr>),
    Let {
        is_rec: bool,
        name: String,
        bound: Box<Expr>,
        body: Box<Expr>,
    },
    If(Box<Expr>, Box<Expr>, Option<Box<Expr>>),
    Match(Box<Expr>, Vec<(Pattern, Expr)>),
    While(Box<Expr>, Box<Expr>),
    Seq(Box<Expr>, Box<Expr>),
    Tuple(Vec<Expr>),
    ListLit(Vec<Expr>),
    Annot(Box<Expr>, TypeExpr),
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// Syntactic values are the expressions whose type may be generalized.
    pub fn is_syntactic_value(&self) -> bool {
        match &self.kind {
            ExprKind::Var(_)
            | ExprKind::ConstInt(_)
            | ExprKind::ConstFloat(_)
            | ExprKind::ConstBool(_)
            | ExprKind::ConstString(_)
            | ExprKind::ConstChar(_)
            | ExprKind::ConstUnit
            | ExprKind::Fun(..) => true,
            ExprKind::Tuple(es) | ExprKind::ListLit(es) => es.iter().all(Expr::is_syntactic_value),
            ExprKind::Annot(e, _) => e.is_syntactic_value(),
            // `x :: xs` is a constructor application.
            ExprKind::App(f, args) => {
                matches!(&f.kind, ExprKind::Var(op) if op == "::")
                    && args.len() == 2
                    && args.iter().all(Expr::is_syntactic_value)
            }
            _ => false,
        }
    }
}

/// Structural equality ignoring spans.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PatternKind {
    Var(String),
    Wildcard,
    ConstInt(i64),
    ConstFloat(f64),
    ConstBool(bool),
    ConstString(String),
    ConstChar(char),
    ConstUnit,
    Tuple(Vec<Pattern>),
    Nil,
    Cons(Box<Pattern>, Box<Pattern>),
    Annot(Box<Pattern>, TypeExpr),
}

#[derive(Debug, Clone)]
pub struct Pattern {
    pub kind: PatternKind,
    pub span: Span,
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Pattern {
    pub fn new(kind: PatternKind, span: Span) -> Self {
        Pattern { kind, span }
    }

    /// Variables bound by the pattern, left to right.
    pub fn bound_vars(&self) -> Vec<(&str, &Span)> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<(&'a str, &'a Span)>) {
        match &self.kind {
            PatternKind::Var(name) => out.push((name, &self.span)),
            PatternKind::Tuple(ps) => ps.iter().for_each(|p| p.collect_vars(out)),
            PatternKind::Cons(h, t) => {
                h.collect_vars(out);
                t.collect_vars(out);
            }
            PatternKind::Annot(p, _) => p.collect_vars(out),
            _ => {}
        }
    }
}

/// Surface syntax of type annotations.
#[derive(Debug, Clone, PartialEq)]
pub enum TypeExpr {
    Var(String),
    Con(String, Vec<TypeExpr>),
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
    Tuple(Vec<TypeExpr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopDef {
    pub is_rec: bool,
    pub name: String,
    pub body: Expr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub file: Arc<str>,
    pub defs: Vec<TopDef>,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}-{}:{}",
            self.file, self.start_line, self.start_col, self.end_line, self.end_col
        )
    }
}
