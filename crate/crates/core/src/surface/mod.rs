//! Lexer, parser and printer for the source language.

mod ast;
mod lexer;
mod parser;
mod pretty;

pub use ast::*;
pub use parser::{parse_expr, parse_program, parse_type};
pub use pretty::{pretty_expr, pretty_program};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}
