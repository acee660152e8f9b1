//! Command-line frontend for `splitcheck`. Every subcommand produces a [`report::Report`]
//! that is printed as canonical JSON or as a plain-text table.
//!
//! Exit codes: 0 on success, 2 on a usage error, 3 when `reduce --strict` finds a
//! failed check or an unverified claim, 1 if an internal consistency check fails.

pub mod args;
pub mod commands;
pub mod report;

use clap::Parser;

use crate::args::{Cli, Command, Format};
use crate::commands::{Failure, Outcome};
use crate::report::{emit_json, emit_table, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_STRICT: i32 = 3;

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses and dispatches without printing. Returns the report when one was produced,
/// together with the strict-mode hit count and any LaTeX rendering.
pub fn dispatch(cli: &Cli) -> Outcome<(Report, Format, usize, Option<String>)> {
    Ok(match &cli.command {
        Command::Dynkin(a) => (commands::dynkin(a)?, a.output.format, 0, None),
        Command::Onesplit(a) => (commands::onesplit(a)?, a.output.format, 0, None),
        Command::Bwb(a) => (commands::bwb(a)?, a.output.format, 0, None),
        Command::Bb(a) => (commands::bb(a)?, a.output.format, 0, None),
        Command::Ppos(a) => (commands::ppos(a)?, a.output.format, 0, None),
        Command::Reduce(a) => {
            let (r, hits) = commands::reduce(a)?;
            let hits = if a.strict { hits } else { 0 };
            (r, a.output.format, hits, None)
        }
        Command::Catalog(a) => {
            let (r, latex) = commands::catalog_cmd(a)?;
            (r, a.output.format, 0, latex)
        }
        Command::Crosscheck(a) => (commands::crosscheck(a)?, a.output.format, 0, None),
    })
}

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                },
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Output {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                },
                _ => Output {
                    stdout: String::new(),
                    stderr: format!(
                        "{}\n",
                        text.lines().next().unwrap_or("error: invalid usage")
                    ),
                    code: EXIT_USAGE,
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok((report, format, hits, latex)) => {
            let stdout = match (format, latex) {
                (Format::Latex, Some(tex)) => tex,
                (Format::Table, _) => emit_table(&report),
                _ => emit_json(&report),
            };
            let (stderr, code) = if hits > 0 {
                (
                    format!("strict: {hits} failed check(s) or unverified claim(s)\n"),
                    EXIT_STRICT,
                )
            } else {
                (String::new(), EXIT_OK)
            };
            Output {
                stdout,
                stderr,
                code,
            }
        }
        Err(Failure::Usage(msg)) => Output {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
        },
        Err(Failure::Internal(msg)) => Output {
            stdout: String::new(),
            stderr: format!("internal error: {msg}\n"),
            code: EXIT_INTERNAL,
        },
    }
}
