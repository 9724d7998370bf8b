//! Frequency aggregation over log-type records.
//!
//! Counting runs in one of two modes. `Exact` is ordinary multiset
//! frequency: an occurrence counts only toward its own key.
//! `LegacySubstring` reproduces the classic behavior of older report
//! scripts, where a key's count is the number of occurrences that
//! contain it as a case-insensitive literal substring — so
//! `ns4.foo.co` absorbs every `ns4.foo.com` occurrence on top of its
//! own and keys can overlap. Exact is the default; legacy is opt-in
//! for matching reports produced by those scripts.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{parse_timestamp, LogRecord, Timestamp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchMode {
    #[default]
    Exact,
    LegacySubstring,
}

/// Which of the four reports a key is extracted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Source,
    Destination,
    Service,
    Interface,
}

impl ReportKind {
    /// All kinds in the fixed report order.
    pub const ALL: [ReportKind; 4] = [
        ReportKind::Source,
        ReportKind::Destination,
        ReportKind::Service,
        ReportKind::Interface,
    ];
}

/// Distinct key -> occurrence count, plus the denominator used for
/// percentages. In `Exact` mode the counts sum to `total_occurrences`;
/// in `LegacySubstring` mode each count is >= its exact counterpart and
/// the sum may exceed the total.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    pub entries: HashMap<String, u64>,
    pub total_occurrences: u64,
}

/// One display row of a report. `key` is untruncated; truncation to 16
/// characters happens at render time only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub key: String,
    pub count: u64,
    pub percent: String,
}

/// Totals for the report header.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SummaryStats {
    pub total_log_records: u64,
    pub inbound: u64,
    pub outbound: u64,
    pub period_start: Option<Timestamp>,
    pub period_end: Option<Timestamp>,
}

/// True for records summarized by the reports: msg_type exactly "log".
pub fn is_log_record(record: &LogRecord) -> bool {
    record.msg_type == "log"
}

/// Keeps only log-type records, preserving order.
pub fn filter_log_records<I>(records: I) -> impl Iterator<Item = LogRecord>
where
    I: IntoIterator<Item = LogRecord>,
{
    records.into_iter().filter(is_log_record)
}

/// Builds the report key for one record.
///
/// Source and Destination use the address fields directly. Service is
/// the composite `proto__service`, collapsing to the bare protocol when
/// the service field is empty. Interface is `orig__if-name_if-dir`.
pub fn extract_key(record: &LogRecord, kind: ReportKind) -> String {
    match kind {
        ReportKind::Source => record.src.clone(),
        ReportKind::Destination => record.dst.clone(),
        ReportKind::Service => {
            if record.service.is_empty() {
                record.proto.clone()
            } else {
                format!("{}__{}", record.proto, record.service)
            }
        }
        ReportKind::Interface => {
            format!("{}__{}_{}", record.orig, record.if_name, record.if_dir)
        }
    }
}

/// Streaming key counter. Push keys one at a time; memory is bounded by
/// the number of distinct keys, not occurrences. Empty keys are not
/// counted at all (they would render as a meaningless blank row) but
/// are tallied in `empty_keys` so callers can report them.
#[derive(Debug, Default)]
pub struct FrequencyCounter {
    counts: HashMap<String, u64>,
    total: u64,
    empty_keys: u64,
}

impl FrequencyCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: String) {
        if key.is_empty() {
            self.empty_keys += 1;
            return;
        }
        self.total += 1;
        *self.counts.entry(key).or_insert(0) += 1;
    }

    /// Occurrences skipped because their key was empty.
    pub fn empty_keys(&self) -> u64 {
        self.empty_keys
    }

    pub fn finish(self, mode: MatchMode) -> FrequencyTable {
        let entries = match mode {
            MatchMode::Exact => self.counts,
            MatchMode::LegacySubstring => {
                // A key's legacy count is the number of occurrences it
                // appears in as a substring; weight each distinct
                // occurrence value by its exact count.
                let pairs: Vec<(&String, &u64)> = self.counts.iter().collect();
                pairs
                    .iter()
                    .map(|(key, _)| {
                        let count = pairs
                            .iter()
                            .filter(|(occ, _)| contains_ascii_ci(occ, key))
                            .map(|(_, n)| **n)
                            .sum();
                        ((*key).clone(), count)
                    })
                    .collect()
            }
        };
        FrequencyTable {
            entries,
            total_occurrences: self.total,
        }
    }
}

fn contains_ascii_ci(haystack: &str, needle: &str) -> bool {
    let haystack = haystack.as_bytes();
    let needle = needle.as_bytes();
    if needle.len() > haystack.len() {
        return false;
    }
    haystack
        .windows(needle.len())
        .any(|window| window.eq_ignore_ascii_case(needle))
}

/// Counts a whole key sequence at once. `total_occurrences` is the
/// number of non-empty keys regardless of mode.
pub fn count_frequencies<I, S>(keys: I, mode: MatchMode) -> FrequencyTable
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut counter = FrequencyCounter::new();
    for key in keys {
        counter.push(key.into());
    }
    counter.finish(mode)
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("cannot compute a percentage of a zero total")]
pub struct ZeroTotal;

/// Formats `count / total * 100` with exactly two fractional digits,
/// rounding half away from zero on the exact rational value. Done in
/// integer arithmetic so e.g. 2649/2735 comes out as "96.86" without
/// floating-point drift.
pub fn format_percent(count: u64, total: u64) -> Result<String, ZeroTotal> {
    if total == 0 {
        return Err(ZeroTotal);
    }
    let scaled = count as u128 * 10_000;
    let total = total as u128;
    let mut hundredths = scaled / total;
    if (scaled % total) * 2 >= total {
        hundredths += 1;
    }
    Ok(format!("{}.{:02}", hundredths / 100, hundredths % 100))
}

/// Turns a frequency table into display rows: sorted by count
/// descending with a bytewise-ascending key tiebreak, truncated to the
/// first `top_n`. Returns the rows and the number of distinct keys
/// before truncation. Output depends only on the table contents, never
/// on insertion order.
pub fn rank_entries(table: &FrequencyTable, top_n: usize) -> (Vec<ReportEntry>, usize) {
    let mut items: Vec<(&String, u64)> = table.entries.iter().map(|(k, &c)| (k, c)).collect();
    items.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let total_distinct = items.len();
    let entries = items
        .into_iter()
        .take(top_n)
        .map(|(key, count)| ReportEntry {
            key: key.clone(),
            count,
            percent: format_percent(count, table.total_occurrences)
                .expect("table with entries has a non-zero total"),
        })
        .collect();
    (entries, total_distinct)
}

/// One-shot report build over already-filtered log records.
pub fn build_report(
    records: &[LogRecord],
    kind: ReportKind,
    mode: MatchMode,
    top_n: usize,
) -> (Vec<ReportEntry>, usize) {
    let mut counter = FrequencyCounter::new();
    for record in records {
        counter.push(extract_key(record, kind));
    }
    rank_entries(&counter.finish(mode), top_n)
}

/// Streaming summary accumulator for the header block.
#[derive(Debug, Default)]
pub struct StatsAccumulator {
    stats: SummaryStats,
}

impl StatsAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: &LogRecord) {
        self.stats.total_log_records += 1;
        if record.if_dir.eq_ignore_ascii_case("inbound") {
            self.stats.inbound += 1;
        } else if record.if_dir.eq_ignore_ascii_case("outbound") {
            self.stats.outbound += 1;
        }
        // Records without a parseable timestamp still count above; they
        // just cannot contribute to the period.
        if let Ok(ts) = parse_timestamp(&record.date, &record.time) {
            match &mut self.stats.period_start {
                Some(start) if *start <= ts => {}
                slot => *slot = Some(ts),
            }
            match &mut self.stats.period_end {
                Some(end) if *end >= ts => {}
                slot => *slot = Some(ts),
            }
        }
    }

    pub fn finish(self) -> SummaryStats {
        self.stats
    }
}

/// One-shot summary over already-filtered log records.
pub fn summary_stats(records: &[LogRecord]) -> SummaryStats {
    let mut acc = StatsAccumulator::new();
    for record in records {
        acc.push(record);
    }
    acc.finish()
}
