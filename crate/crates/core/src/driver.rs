//! Two-pass checking of whole files, output formatting and the golden corpus runner.
//!
//! Pass one runs classic inference over the program. If some definition
//! fails, pass two re-checks only that definition bottom-up, in a fresh
//! session that sees the schemes of the definitions before it.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::batch;
use crate::diagnostics::{render_json, render_text, Diagnostic};
use crate::infer::{check_program_classic, recheck_easy, Typings};
use crate::surface::parse_program;

pub const EXIT_OK: i32 = 0;
pub const EXIT_TYPE_ERROR: i32 = 1;
pub const EXIT_PARSE_ERROR: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Easy,
    Classic,
    Both,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Status {
    WellTyped {
        schemes: Typings,
    },
    IllTyped {
        classic: Diagnostic,
        /// Absent when pass two was not requested.
        easy: Option<Diagnostic>,
        /// 1-based index of the failing definition.
        def_index: usize,
    },
    ParseError(Diagnostic),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Timing {
    pub parse: Duration,
    pub classic: Duration,
    pub easy: Duration,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub status: Status,
    pub timing: Timing,
    /// Number of times the bottom-up pass ran (0 or 1).
    pub easy_passes: u32,
}

impl CheckOutcome {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::WellTyped { .. } => EXIT_OK,
            Status::IllTyped { .. } => EXIT_TYPE_ERROR,
            Status::ParseError(_) => EXIT_PARSE_ERROR,
        }
    }

    /// The diagnostic reported in `mode`, if any.
    pub fn diagnostic(&self, mode: Mode) -> Option<&Diagnostic> {
        match &self.status {
            Status::WellTyped { .. } => None,
            Status::ParseError(d) => Some(d),
            Status::IllTyped { classic, easy, .. } => match mode {
                Mode::Classic => Some(classic),
                _ => Some(easy.as_ref().unwrap_or(classic)),
            },
        }
    }
}

/// Checks program text. `file` is the name recorded in spans.
pub fn check_source(source: &str, file: &str, mode: Mode) -> CheckOutcome {
    let mut timing = Timing::default();
    let start = Instant::now();
    let parsed = parse_program(source, file);
    timing.parse = start.elapsed();
    let prog = match parsed {
        Ok(p) => p,
        Err(e) => {
            return CheckOutcome {
                status: Status::ParseError(Diagnostic::from_parse_error(&e)),
                timing,
                easy_passes: 0,
            }
        }
    };

    let start = Instant::now();
    let first = check_program_classic(&prog);
    timing.classic = start.elapsed();
    let failure = match first {
        Ok(schemes) => {
            return CheckOutcome {
                status: Status::WellTyped { schemes },
                timing,
                easy_passes: 0,
            }
        }
        Err(f) => f,
    };

    let mut easy_passes = 0;
    let easy = if mode == Mode::Classic {
        None
    } else {
        let start = Instant::now();
        let def = &prog.defs[failure.index - 1];
        let result = recheck_easy(&failure.preceding, def);
        timing.easy = start.elapsed();
        easy_passes = 1;
        // Both passes accept the same programs; should pass two still accept
        // the definition, the classic diagnostic stands in.
        Some(result.err().unwrap_or_else(|| failure.diagnostic.clone()))
    };
    CheckOutcome {
        status: Status::IllTyped {
            classic: failure.diagnostic,
            easy,
            def_index: failure.index,
        },
        timing,
        easy_passes,
    }
}

pub fn check_file(path: &Path, mode: Mode) -> io::Result<(CheckOutcome, String)> {
    let source = fs::read_to_string(path)?;
    let outcome = check_source(&source, &path.display().to_string(), mode);
    Ok((outcome, source))
}

/// Text written to standard output and standard error for one outcome.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
}

pub fn render_outcome(
    outcome: &CheckOutcome,
    source: &str,
    mode: Mode,
    json: bool,
    color: bool,
) -> Rendered {
    let mut r = Rendered::default();
    match &outcome.status {
        Status::WellTyped { schemes } => {
            if !json {
                r.stdout = val_lines(schemes);
            }
        }
        Status::ParseError(d) => emit(&mut r, d, source, json, color),
        Status::IllTyped { classic, easy, .. } => {
            let easy = easy.as_ref().unwrap_or(classic);
            match mode {
                Mode::Easy => emit(&mut r, easy, source, json, color),
                Mode::Classic => emit(&mut r, classic, source, json, color),
                Mode::Both => {
                    if !json {
                        r.stderr.push_str("[classic]\n");
                    }
                    emit(&mut r, classic, source, json, color);
                    if !json {
                        r.stderr.push_str("[easy]\n");
                    }
                    emit(&mut r, easy, source, json, color);
                }
            }
        }
    }
    r
}

fn emit(r: &mut Rendered, d: &Diagnostic, source: &str, json: bool, color: bool) {
    if json {
        r.stdout.push_str(&render_json(d));
        r.stdout.push('\n');
    } else {
        r.stderr.push_str(&render_text(d, source, color));
    }
}

pub fn val_lines(schemes: &Typings) -> String {
    let mut out = String::new();
    for (name, ds) in schemes {
        if name != "_" {
            let _ = writeln!(out, "val {name} : {ds}");
        }
    }
    out
}

/// The golden text of an outcome: `val` lines, or the uncolored diagnostic.
pub fn golden_text(outcome: &CheckOutcome, source: &str, mode: Mode) -> String {
    match &outcome.status {
        Status::WellTyped { schemes } => val_lines(schemes),
        _ => outcome
            .diagnostic(mode)
            .map(|d| render_text(d, source, false))
            .unwrap_or_default(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryStatus {
    Pass,
    Fail { diff: String },
    MissingGolden,
    Updated,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub status: EntryStatus,
    pub outcome: CheckOutcome,
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub entries: Vec<CorpusEntry>,
    pub elapsed: Duration,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.entries
            .iter()
            .all(|e| matches!(e.status, EntryStatus::Pass | EntryStatus::Updated))
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match &e.status {
                EntryStatus::Pass => {
                    let _ = writeln!(out, "PASS {}", e.name);
                }
                EntryStatus::Updated => {
                    let _ = writeln!(out, "UPDATED {}", e.name);
                }
                EntryStatus::MissingGolden => {
                    let _ = writeln!(out, "FAIL {} (missing golden)", e.name);
                }
                EntryStatus::Fail { diff } => {
                    let _ = writeln!(out, "FAIL {}\n{diff}", e.name);
                }
            }
        }
        let passed = self
            .entries
            .iter()
            .filter(|e| matches!(e.status, EntryStatus::Pass | EntryStatus::Updated))
            .count();
        let _ = writeln!(
            out,
            "{passed}/{} corpus programs passed in {:.3}s",
            self.entries.len(),
            self.elapsed.as_secs_f64()
        );
        out
    }
}

/// `NAME.src` files of `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "src"))
        .collect();
    files.sort();
    Ok(files)
}

fn golden_path(dir: &Path, name: &str, classic: bool) -> PathBuf {
    let suffix = if classic {
        ".classic.expected"
    } else {
        ".expected"
    };
    dir.join("expected").join(format!("{name}{suffix}"))
}

/// Checks every program in `dir` against its goldens, or rewrites them.
pub fn run_corpus(dir: &Path, update: bool) -> io::Result<CorpusReport> {
    let start = Instant::now();
    let mut inputs = Vec::new();
    for path in corpus_files(dir)? {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let source = fs::read_to_string(&path)?;
        inputs.push((format!("{name}.src"), source));
    }
    let outcomes = batch::check_sources(&inputs, Mode::Both);

    if update {
        fs::create_dir_all(dir.join("expected"))?;
    }
    let mut entries = Vec::with_capacity(inputs.len());
    for ((file, source), outcome) in inputs.iter().zip(outcomes) {
        let name = file.trim_end_matches(".src").to_string();
        let easy_text = golden_text(&outcome, source, Mode::Easy);
        let classic_text = matches!(outcome.status, Status::IllTyped { .. })
            .then(|| golden_text(&outcome, source, Mode::Classic));
        let easy_path = golden_path(dir, &name, false);
        let classic_path = golden_path(dir, &name, true);
        let status = if update {
            fs::write(&easy_path, &easy_text)?;
            match &classic_text {
                Some(t) => fs::write(&classic_path, t)?,
                None if classic_path.exists() => fs::remove_file(&classic_path)?,
                None => {}
            }
            EntryStatus::Updated
        } else {
            compare(
                &easy_path,
                &easy_text,
                &classic_path,
                classic_text.as_deref(),
            )?
        };
        entries.push(CorpusEntry {
            name,
            status,
            outcome,
        });
    }
    Ok(CorpusReport {
        entries,
        elapsed: start.elapsed(),
    })
}

fn compare(
    easy_path: &Path,
    easy_text: &str,
    classic_path: &Path,
    classic_text: Option<&str>,
) -> io::Result<EntryStatus> {
    let Some(want) = read_optional(easy_path)? else {
        return Ok(EntryStatus::MissingGolden);
    };
    let mut diff = String::new();
    if want != easy_text {
        diff.push_str(&line_diff(&want, easy_text));
    }
    if let Some(want) = read_optional(classic_path)? {
        let got = classic_text.unwrap_or("");
        if want != got {
            diff.push_str("[classic]\n");
            diff.push_str(&line_diff(&want, got));
        }
    }
    Ok(if diff.is_empty() {
        EntryStatus::Pass
    } else {
        EntryStatus::Fail { diff }
    })
}

fn read_optional(path: &Path) -> io::Result<Option<String>> {
    match fs::read_to_string(path) {
        Ok(s) => Ok(Some(s)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e),
    }
}

/// Line-by-line listing of differing lines.
fn line_diff(want: &str, got: &str) -> String {
    let (w, g): (Vec<&str>, Vec<&str>) = (want.lines().collect(), got.lines().collect());
    let mut out = String::new();
    for i in 0..w.len().max(g.len()) {
        let (a, b) = (w.get(i), g.get(i));
        if a != b {
            if let Some(a) = a {
                let _ = writeln!(out, "  -{:>4} {a}", i + 1);
            }
            if let Some(b) = b {
                let _ = writeln!(out, "  +{:>4} {b}", i + 1);
            }
        }
    }
    if out.is_empty() {
        out.push_str("  (trailing newline differs)\n");
    }
    out
}
