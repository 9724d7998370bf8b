//! Streaming parser for semicolon-delimited firewall log exports.
//!
//! One record per physical line, 21 positional fields, optional header
//! line, LF or CRLF terminators. Records are never dropped for having
//! too few or too many fields: short lines are padded, long lines fold
//! the excess into `sys_msgs`, and a warning diagnostic is attached
//! either way. The only hard failure is an unreadable stream.

use std::io::{self, BufRead};

use crate::model::{LogRecord, FIELD_COUNT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

/// Per-line note produced while parsing. `line_number` is the physical
/// 1-based line in the input.
#[derive(Debug, Clone)]
pub struct ParseDiagnostic {
    pub line_number: u64,
    pub severity: Severity,
    pub message: String,
    pub raw_line: String,
}

/// Everything a full pass over one input produced. `records` preserves
/// input order; `lines_read` counts every physical line, so it is
/// always >= the record count.
#[derive(Debug, Default)]
pub struct ParseResult {
    pub records: Vec<LogRecord>,
    pub diagnostics: Vec<ParseDiagnostic>,
    pub lines_read: u64,
}

/// Splits one line (without its terminator) on `;` and trims each field
/// of leading/trailing ASCII whitespace.
///
/// Empty fields between adjacent semicolons come out as empty strings,
/// and trailing empty fields are preserved: positional assignment
/// depends on them, and real export lines end in runs of `;`. A line
/// with k semicolons always yields k+1 fields.
pub fn split_record(line: &str) -> Vec<String> {
    line.split(';')
        .map(|field| field.trim_ascii().to_string())
        .collect()
}

/// Assigns split fields positionally to a [`LogRecord`], padding or
/// folding as needed. Returned diagnostics are warnings only; the
/// record itself is always produced.
pub fn parse_record(line: &str, line_number: u64) -> (LogRecord, Vec<ParseDiagnostic>) {
    record_from_fields(split_record(line), line, line_number)
}

fn record_from_fields(
    mut fields: Vec<String>,
    raw_line: &str,
    line_number: u64,
) -> (LogRecord, Vec<ParseDiagnostic>) {
    let mut diagnostics = Vec::new();
    let diag = |message: String| ParseDiagnostic {
        line_number,
        severity: Severity::Warning,
        message,
        raw_line: raw_line.to_string(),
    };

    if fields.len() < FIELD_COUNT {
        diagnostics.push(diag(format!(
            "short line: {} fields, missing fields treated as empty",
            fields.len()
        )));
        fields.resize(FIELD_COUNT, String::new());
    } else if fields.len() > FIELD_COUNT {
        diagnostics.push(diag(format!(
            "long line: {} fields, extra fields folded into sys_msgs",
            fields.len()
        )));
        let folded = fields[FIELD_COUNT - 1..].join(";");
        fields.truncate(FIELD_COUNT - 1);
        fields.push(folded);
    }

    let num = if fields[0].is_empty() {
        None
    } else {
        match fields[0].parse::<u64>() {
            Ok(n) => Some(n),
            Err(_) => {
                diagnostics.push(diag(format!(
                    "num field {:?} is not a non-negative integer, using 0",
                    fields[0]
                )));
                Some(0)
            }
        }
    };

    let mut it = fields.into_iter().skip(1);
    let mut next = || it.next().expect("exactly 21 fields after padding");
    let record = LogRecord {
        num,
        date: next(),
        time: next(),
        orig: next(),
        msg_type: next(),
        action: next(),
        alert: next(),
        if_name: next(),
        if_dir: next(),
        proto: next(),
        src: next(),
        dst: next(),
        service: next(),
        s_port: next(),
        len: next(),
        rule: next(),
        icmp_type: next(),
        icmp_code: next(),
        h_len: next(),
        ip_vers: next(),
        sys_msgs: next(),
    };
    (record, diagnostics)
}

/// What one physical line turned into.
// Records ride in the enum unboxed: one is produced per input line and
// consumed immediately, so a per-line heap allocation would cost more
// than the move.
#[allow(clippy::large_enum_variant)]
#[derive(Debug)]
pub enum LineOutcome {
    Record {
        record: LogRecord,
        diagnostics: Vec<ParseDiagnostic>,
    },
    /// Schema header line, skipped.
    Header(ParseDiagnostic),
    /// Empty or whitespace-only line, skipped silently.
    Blank,
}

/// Forward-only iterator over the lines of a log stream. Memory use is
/// bounded by the longest single line; nothing is accumulated.
pub struct RecordStream<R> {
    reader: R,
    buf: Vec<u8>,
    line_number: u64,
    done: bool,
}

impl<R: BufRead> RecordStream<R> {
    pub fn new(reader: R) -> Self {
        RecordStream {
            reader,
            buf: Vec::new(),
            line_number: 0,
            done: false,
        }
    }

    /// Physical lines consumed so far.
    pub fn lines_read(&self) -> u64 {
        self.line_number
    }
}

impl<R: BufRead> Iterator for RecordStream<R> {
    type Item = io::Result<LineOutcome>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        self.buf.clear();
        match self.reader.read_until(b'\n', &mut self.buf) {
            Ok(0) => {
                self.done = true;
                None
            }
            Ok(_) => {
                self.line_number += 1;
                if self.buf.last() == Some(&b'\n') {
                    self.buf.pop();
                    if self.buf.last() == Some(&b'\r') {
                        self.buf.pop();
                    }
                }
                Some(Ok(self.line_outcome()))
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

impl<R: BufRead> RecordStream<R> {
    fn line_outcome(&self) -> LineOutcome {
        let line_number = self.line_number;
        let (line, decode_warning) = decode_line(&self.buf);

        if line.trim_ascii().is_empty() {
            return LineOutcome::Blank;
        }

        let fields = split_record(&line);
        if fields[0] == "num" && fields.get(1).is_some_and(|f| f == "date") {
            return LineOutcome::Header(ParseDiagnostic {
                line_number,
                severity: Severity::Info,
                message: "header line skipped".to_string(),
                raw_line: line.into_owned(),
            });
        }

        let (record, mut diagnostics) = record_from_fields(fields, &line, line_number);
        if decode_warning {
            diagnostics.insert(
                0,
                ParseDiagnostic {
                    line_number,
                    severity: Severity::Warning,
                    message: "line is not valid UTF-8, bytes decoded as Latin-1".to_string(),
                    raw_line: line.into_owned(),
                },
            );
        }
        LineOutcome::Record {
            record,
            diagnostics,
        }
    }
}

/// Interprets raw line bytes as UTF-8, falling back to a Latin-1 byte
/// mapping so no input byte is ever destroyed. The flag reports that
/// the fallback fired.
fn decode_line(bytes: &[u8]) -> (std::borrow::Cow<'_, str>, bool) {
    match std::str::from_utf8(bytes) {
        Ok(s) => (s.into(), false),
        Err(_) => (
            bytes.iter().map(|&b| b as char).collect::<String>().into(),
            true,
        ),
    }
}

/// Reads a whole stream in a single forward pass, collecting records in
/// input order. Blank lines are skipped; a header line (first field
/// `num`, second `date`) is skipped with an info diagnostic. An I/O
/// error aborts the read and nothing partial is returned.
pub fn read_log<R: BufRead>(reader: R) -> io::Result<ParseResult> {
    let mut result = ParseResult::default();
    let mut stream = RecordStream::new(reader);
    for item in &mut stream {
        match item? {
            LineOutcome::Record {
                record,
                diagnostics,
            } => {
                result.records.push(record);
                result.diagnostics.extend(diagnostics);
            }
            LineOutcome::Header(diag) => result.diagnostics.push(diag),
            LineOutcome::Blank => {}
        }
    }
    result.lines_read = stream.lines_read();
    Ok(result)
}
