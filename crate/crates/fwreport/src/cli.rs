//! Command-line front end.
//!
//! The first positional argument selects the report (`s`, `d`, `u`,
//! `i`, `a`, `h`); a missing or unrecognized selector falls back to the
//! help screen and exits 0, while malformed flag values are usage
//! errors that print the help on stderr and exit 2. Report bytes go
//! only to the output stream or `--output` file; diagnostics only to
//! the error stream.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::Parser;
use thiserror::Error;

use crate::aggregate::{
    extract_key, is_log_record, rank_entries, FrequencyCounter, MatchMode, ReportKind,
    StatsAccumulator,
};
use crate::parser::{LineOutcome, ParseDiagnostic, RecordStream};
use crate::render::{render_jsonl, render_report, OutputFormat, RenderOptions, ReportSection};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    Source,
    Destination,
    Service,
    Interface,
    All,
    Help,
}

/// A fully parsed invocation. When `selector` is `Help` every other
/// field is ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub selector: Selector,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub top_n: usize,
    pub match_mode: MatchMode,
    pub format: OutputFormat,
    pub generated_on: Option<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum MatchModeArg {
    Exact,
    Legacy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum FormatArg {
    Text,
    Jsonl,
}

#[derive(Parser)]
#[command(
    name = "fwreport",
    disable_help_flag = true,
    disable_version_flag = true
)]
struct RawArgs {
    selector: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    top: u64,
    #[arg(long, value_enum, default_value_t = MatchModeArg::Exact)]
    match_mode: MatchModeArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    generated_on: Option<String>,
}

/// Parses the arguments that follow the program name.
pub fn parse_args<I, T>(args: I) -> Result<Command, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("fwreport")).chain(args.into_iter().map(Into::into));
    let raw = RawArgs::try_parse_from(argv).map_err(|e| UsageError(e.to_string()))?;

    let selector = match raw.selector.as_deref() {
        Some("s") => Selector::Source,
        Some("d") => Selector::Destination,
        Some("u") => Selector::Service,
        Some("i") => Selector::Interface,
        Some("a") => Selector::All,
        // "h", no selector, and anything unrecognized all land on help.
        _ => Selector::Help,
    };

    Ok(Command {
        selector,
        input: raw.input,
        output: raw.output,
        top_n: raw.top as usize,
        match_mode: match raw.match_mode {
            MatchModeArg::Exact => MatchMode::Exact,
            MatchModeArg::Legacy => MatchMode::LegacySubstring,
        },
        format: match raw.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Jsonl => OutputFormat::Jsonl,
        },
        generated_on: raw.generated_on,
    })
}

pub fn help_text() -> String {
    "\
You need to pass command line argument: Following options are available

s - Create the Source Addresses report
d - Create the Destination Address report
u - Create the Service Usage report
i - Create the Network Interface report
a - Create all reports
h - Display the help screen

Usage: fwreport <selector> [--input PATH] [--output PATH] [--top N]
                [--match-mode exact|legacy] [--format text|jsonl]
                [--generated-on STRING]

  --input PATH         read the log from PATH (default: standard input)
  --output PATH        write the report to PATH (default: standard output)
  --top N              rows per report (default: 10)
  --match-mode MODE    exact (default) counts identical keys only; legacy
                       counts case-insensitive substring matches
  --format FORMAT      text (default) or jsonl
  --generated-on TEXT  pin the generated-on stamp for reproducible output

Exit codes: 0 success, 1 I/O failure, 2 usage error
"
    .to_string()
}

fn selected_kinds(selector: Selector) -> Vec<ReportKind> {
    match selector {
        Selector::Source => vec![ReportKind::Source],
        Selector::Destination => vec![ReportKind::Destination],
        Selector::Service => vec![ReportKind::Service],
        Selector::Interface => vec![ReportKind::Interface],
        Selector::All => ReportKind::ALL.to_vec(),
        Selector::Help => Vec::new(),
    }
}

fn kind_name(kind: ReportKind) -> &'static str {
    match kind {
        ReportKind::Source => "source",
        ReportKind::Destination => "destination",
        ReportKind::Service => "service",
        ReportKind::Interface => "interface",
    }
}

fn emit_diagnostic(err: &mut dyn Write, diag: &ParseDiagnostic) {
    let _ = writeln!(
        err,
        "fwreport: line {}: {}: {}",
        diag.line_number,
        diag.severity.as_str(),
        diag.message
    );
}

/// Executes a parsed command. Returns the process exit code: 0 on
/// success, 1 on I/O failure. Parse diagnostics never change the exit
/// code.
pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if cmd.selector == Selector::Help {
        let _ = out.write_all(help_text().as_bytes());
        return 0;
    }

    let reader: Box<dyn BufRead> = match &cmd.input {
        Some(path) => match File::open(path) {
            Ok(file) => Box::new(BufReader::new(file)),
            Err(e) => {
                let _ = writeln!(err, "fwreport: cannot open {}: {}", path.display(), e);
                return 1;
            }
        },
        None => Box::new(io::stdin().lock()),
    };

    let kinds = selected_kinds(cmd.selector);
    let mut counters: Vec<(ReportKind, FrequencyCounter)> = kinds
        .iter()
        .map(|&kind| (kind, FrequencyCounter::new()))
        .collect();
    let mut stats = StatsAccumulator::new();

    // Single forward pass: records are aggregated and dropped, so
    // memory tracks the distinct-key count rather than the file size.
    let mut stream = RecordStream::new(reader);
    for item in &mut stream {
        match item {
            Err(e) => {
                let _ = writeln!(err, "fwreport: read error: {}", e);
                return 1;
            }
            Ok(LineOutcome::Record {
                record,
                diagnostics,
            }) => {
                for diag in &diagnostics {
                    emit_diagnostic(err, diag);
                }
                if is_log_record(&record) {
                    stats.push(&record);
                    for (kind, counter) in &mut counters {
                        counter.push(extract_key(&record, *kind));
                    }
                }
            }
            Ok(LineOutcome::Header(diag)) => emit_diagnostic(err, &diag),
            Ok(LineOutcome::Blank) => {}
        }
    }

    for (kind, counter) in &counters {
        if counter.empty_keys() > 0 {
            let _ = writeln!(
                err,
                "fwreport: {} report: {} record(s) with an empty key skipped",
                kind_name(*kind),
                counter.empty_keys()
            );
        }
    }

    let stats = stats.finish();
    let sections: Vec<ReportSection> = counters
        .into_iter()
        .map(|(kind, counter)| {
            let table = counter.finish(cmd.match_mode);
            let (entries, total_distinct) = rank_entries(&table, cmd.top_n);
            ReportSection {
                kind,
                entries,
                total_distinct,
            }
        })
        .collect();

    let opts = RenderOptions {
        generated_on: cmd.generated_on.clone(),
        top_n: cmd.top_n,
        format: cmd.format,
    };
    let document = match cmd.format {
        OutputFormat::Text => render_report(&sections, &stats, &opts),
        OutputFormat::Jsonl => render_jsonl(&sections, &stats, &opts),
    };

    let write_result = match &cmd.output {
        Some(path) => File::create(path)
            .and_then(|mut file| file.write_all(document.as_bytes()))
            .map_err(|e| (format!("cannot write {}", path.display()), e)),
        None => out
            .write_all(document.as_bytes())
            .map_err(|e| ("cannot write output".to_string(), e)),
    };
    if let Err((what, e)) = write_result {
        let _ = writeln!(err, "fwreport: {}: {}", what, e);
        return 1;
    }
    0
}

/// Process entry point: parse `std::env` arguments and run. Usage
/// errors print the clap message plus the help screen on stderr and
/// exit 2.
pub fn main_entry() -> i32 {
    let args: Vec<OsString> = std::env::args_os().skip(1).collect();
    let stdout = io::stdout();
    let stderr = io::stderr();
    match parse_args(args) {
        Ok(cmd) => run(&cmd, &mut stdout.lock(), &mut stderr.lock()),
        Err(usage) => {
            let mut err = stderr.lock();
            let _ = writeln!(err, "{}", usage);
            let _ = err.write_all(help_text().as_bytes());
            2
        }
    }
}
