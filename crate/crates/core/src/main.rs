use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, ArgAction, Parser, ValueEnum};

use easytype::driver::{
    check_file, render_outcome, run_corpus, Mode, EXIT_IO, EXIT_TYPE_ERROR, EXIT_USAGE,
};

const STACK_SIZE: usize = 256 << 20;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Color {
    Auto,
    Always,
    Never,
}

/// Type-check a program, explaining type errors without left-to-right bias.
#[derive(Debug, Parser)]
#[command(name = "easytype", version)]
struct Cli {
    /// Program to check.
    #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
    file: Option<PathBuf>,

    /// Report errors found by the bottom-up second pass (default).
    #[arg(long, action = ArgAction::SetTrue, conflicts_with_all = ["classic", "both"])]
    easy_type_errors: bool,

    /// Report errors as found by classic inference.
    #[arg(long, action = ArgAction::SetTrue, conflicts_with = "both")]
    classic: bool,

    /// Report both diagnostics, labeled.
    #[arg(long, action = ArgAction::SetTrue)]
    both: bool,

    /// Print diagnostics as JSON objects on standard output.
    #[arg(long, action = ArgAction::SetTrue)]
    json: bool,

    #[arg(long, value_enum, default_value = "auto")]
    color: Color,

    /// Check every NAME.src in DIR against DIR/expected/NAME.expected.
    #[arg(long, value_name = "DIR")]
    corpus: Option<PathBuf>,

    /// With --corpus, rewrite the golden files instead of comparing.
    #[arg(long, action = ArgAction::SetTrue, requires = "corpus")]
    update_goldens: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let worker = std::thread::Builder::new()
        .stack_size(STACK_SIZE)
        .spawn(move || run(cli))
        .expect("spawn checker thread");
    ExitCode::from(worker.join().unwrap_or(EXIT_IO) as u8)
}

fn run(cli: Cli) -> i32 {
    if let Some(dir) = &cli.corpus {
        return match run_corpus(dir, cli.update_goldens) {
            Ok(report) => {
                print!("{}", report.summary());
                if report.ok() {
                    0
                } else {
                    EXIT_TYPE_ERROR
                }
            }
            Err(e) => {
                eprintln!("easytype: {}: {e}", dir.display());
                EXIT_IO
            }
        };
    }

    let mode = if cli.classic {
        Mode::Classic
    } else if cli.both {
        Mode::Both
    } else {
        Mode::Easy
    };
    let color = match cli.color {
        Color::Always => true,
        Color::Never => false,
        Color::Auto => std::io::stderr().is_terminal(),
    };
    let Some(path) = cli.file else {
        return EXIT_USAGE;
    };
    match check_file(&path, mode) {
        Ok((outcome, source)) => {
            let r = render_outcome(&outcome, &source, mode, cli.json, color);
            let _ = std::io::stdout().write_all(r.stdout.as_bytes());
            let _ = std::io::stderr().write_all(r.stderr.as_bytes());
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("easytype: {}: {e}", path.display());
            EXIT_IO
        }
    }
}
