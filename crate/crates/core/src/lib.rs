//! A type checker for a core ML dialect that explains type errors without
//! the left-to-right bias of classic inference.
//!
//! A program is first checked by [`infer::check_program_classic`]. Only when
//! a definition fails is it checked again bottom-up, and that second pass
//! produces the reported [`diagnostics::Diagnostic`]. See [`driver`].

#![allow(clippy::result_large_err)]

pub mod batch;
pub mod diagnostics;
pub mod driver;
pub mod infer;
pub mod surface;
pub mod tycore;
pub mod unify;
