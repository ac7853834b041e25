use std::fmt::Write;

use super::{ArgRow, Construct, Diagnostic, DiagnosticKind, SubexprRole};
use crate::surface::Span;
use crate::tycore::DisplayTy;
use crate::unify::{ConflictKind, UnifyConflict};

const RED: &str = "\x1b[31;1m";
const BOLD: &str = "\x1b[1m";
const RESET: &str = "\x1b[0m";

/// Longest excerpt shown in full; longer spans show their first and last lines.
const MAX_EXCERPT_LINES: u32 = 4;

/// Renders `d` for a terminal. `source` is the text of the file the span
/// points into.
pub fn render_text(d: &Diagnostic, source: &str, color: bool) -> String {
    let mut out = String::new();
    header(&mut out, &d.span);
    excerpt(&mut out, &d.span, source, color);
    body(&mut out, &d.kind, color);
    for s in &d.suggestions {
        out.push_str(&s.sentence());
        out.push('\n');
    }
    out
}

fn header(out: &mut String, span: &Span) {
    let c1 = span.start_col.saturating_sub(1);
    let c2 = span.end_col.saturating_sub(1);
    if span.start_line == span.end_line {
        let _ = writeln!(
            out,
            "File \"{}\", line {}, characters {}-{}:",
            span.file, span.start_line, c1, c2
        );
    } else {
        let _ = writeln!(
            out,
            "File \"{}\", lines {}-{}, characters {}-{}:",
            span.file, span.start_line, span.end_line, c1, c2
        );
    }
}

fn excerpt(out: &mut String, span: &Span, source: &str, color: bool) {
    let lines: Vec<&str> = source.lines().collect();
    if span.start_line == 0 || span.start_line as usize > lines.len() {
        return;
    }
    let last = span.end_line.min(lines.len() as u32);
    let shown: Vec<u32> = if last - span.start_line < MAX_EXCERPT_LINES {
        (span.start_line..=last).collect()
    } else {
        vec![span.start_line, span.start_line + 1, last]
    };
    let width = last.to_string().len();
    let mut prev = None;
    for l in shown {
        if prev.is_some_and(|p| p + 1 != l) {
            let _ = writeln!(out, "{:width$} | ...", "");
        }
        prev = Some(l);
        let text = lines[l as usize - 1];
        let _ = writeln!(out, "{l:width$} | {text}");
        let from = if l == span.start_line {
            span.start_col as usize
        } else {
            1
        };
        let to = if l == span.end_line {
            span.end_col as usize
        } else {
            text.chars().count() + 1
        };
        if to <= from {
            continue;
        }
        let pad: String = text
            .chars()
            .take(from - 1)
            .map(|c| if c == '\t' { '\t' } else { ' ' })
            .collect();
        let carets = "^".repeat(to - from);
        if color {
            let _ = writeln!(out, "{:width$} | {pad}{RED}{carets}{RESET}", "");
        } else {
            let _ = writeln!(out, "{:width$} | {pad}{carets}", "");
        }
    }
}

fn body(out: &mut String, kind: &DiagnosticKind, color: bool) {
    match kind {
        DiagnosticKind::AppMismatch { rows } => {
            out.push_str("Error: This function application is ill-typed.\n");
            table(out, rows, color);
        }
        DiagnosticKind::TooManyArgs {
            expected_arity,
            given_arity,
        } => {
            let _ = writeln!(
                out,
                "Error: This function is applied to too many arguments: it expects {} but is given {}.",
                plural(*expected_arity, "argument"),
                given_arity
            );
        }
        DiagnosticKind::IllTypedApp { fn_return } => {
            let _ = writeln!(
                out,
                "Error: This function application is ill-typed. The result type of the function is {fn_return}, which does not accept the extra arguments provided."
            );
        }
        DiagnosticKind::BranchMismatch { report } => match report.construct {
            Construct::If => {
                out.push_str(
                    "Error: The two branches of this if-statement have incompatible types.\n",
                );
                let _ = writeln!(out, "The then-branch has type {}", report.accumulated);
                let _ = writeln!(out, "but the else-branch has type {}.", report.offending);
            }
            Construct::Match => {
                let _ = writeln!(
                    out,
                    "Error: The branches of this match have incompatible types. Branch {} is the first one whose type does not unify with the previous branches; it is not necessarily the one to blame.",
                    report.offending_index
                );
                let _ = writeln!(
                    out,
                    "The previous branches have type {}",
                    report.accumulated
                );
                let _ = writeln!(
                    out,
                    "but branch {} has type {}.",
                    report.offending_index, report.offending
                );
            }
        },
        DiagnosticKind::MissingElse { then_type } => {
            let _ = writeln!(
                out,
                "Error: This if-statement has no else branch, so its then-branch should have type unit, but it has type {then_type}. Maybe the else branch is missing."
            );
        }
        DiagnosticKind::SubexprMismatch {
            role,
            expected,
            actual,
        } => {
            let sentence = match role {
                SubexprRole::WhileCondition => format!(
                    "This expression is the condition of a while loop, so it should have type {expected}, but it has type {actual}."
                ),
                SubexprRole::WhileBody => format!(
                    "This expression is the body of a while loop, so it should have type {expected}, but it has type {actual}."
                ),
                SubexprRole::IfCondition => format!(
                    "This expression is the condition of an if-statement, so it should have type {expected}, but it has type {actual}."
                ),
                SubexprRole::SeqLeft => format!(
                    "This expression is followed by a semicolon, so it should have type {expected}, but it has type {actual}."
                ),
                SubexprRole::PatternOfMatch => format!(
                    "This pattern matches values of type {actual}, but the matched expression has type {expected}."
                ),
            };
            let _ = writeln!(out, "Error: {sentence}");
        }
        DiagnosticKind::UnboundVar { name, .. } => {
            let _ = writeln!(out, "Error: Unbound value {name}.");
        }
        DiagnosticKind::GenericUnify { conflict } => generic(out, conflict),
        DiagnosticKind::ParseError { message } => {
            let _ = writeln!(out, "Error: Syntax error: {message}.");
        }
    }
}

fn generic(out: &mut String, c: &UnifyConflict) {
    let _ = writeln!(
        out,
        "Error: This expression has type {} but an expression was expected of type {}.",
        c.whole_right, c.whole_left
    );
    match c.kind {
        ConflictKind::OccursCheck => {
            let (var, ty) = if matches!(c.left, DisplayTy::Var(_)) {
                (&c.left, &c.right)
            } else {
                (&c.right, &c.left)
            };
            let _ = writeln!(out, "The type variable {var} occurs inside {ty}.");
        }
        ConflictKind::Mismatch => {
            if c.left != c.whole_left || c.right != c.whole_right {
                let _ = writeln!(
                    out,
                    "Type {} is not compatible with type {}.",
                    c.right, c.left
                );
            }
        }
    }
}

/// Two left-aligned columns; the clashing row is starred.
fn table(out: &mut String, rows: &[ArgRow], color: bool) {
    let idx_w = rows.len().to_string().len();
    let cells: Vec<(String, String)> = rows
        .iter()
        .map(|r| (r.expected.to_string(), r.actual.to_string()))
        .collect();
    let left_w = cells
        .iter()
        .map(|(e, _)| e.chars().count())
        .chain(std::iter::once("expected".len()))
        .max()
        .unwrap_or(0);
    let lead = " ".repeat(idx_w + 3);
    let _ = writeln!(out, "{lead}{:left_w$} | provided", "expected");
    for (row, (e, a)) in rows.iter().zip(cells) {
        let mark = if row.clashed { '*' } else { ' ' };
        let line = format!(" {mark}{:>idx_w$} {e:left_w$} | {a}", row.index);
        if color && row.clashed {
            let _ = writeln!(out, "{BOLD}{line}{RESET}");
        } else {
            let _ = writeln!(out, "{line}");
        }
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}
