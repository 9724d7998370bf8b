//! Renders the summary header and report sections as plain text or as
//! JSON Lines.
//!
//! The text layout is fixed so output can be golden-file tested: LF
//! line endings, a 31-dash banner rule, 26-equals section rules, and
//! rows of two-space indent + key (truncated to 16 characters) + tab +
//! count + tab + percent. The section titles keep the historical
//! "Addressess" spelling of the original reports.

use chrono::{Datelike, Timelike};
use serde::{Deserialize, Serialize};

use crate::aggregate::{ReportEntry, ReportKind, SummaryStats};
use crate::model::{Timestamp, MONTH_ABBREVS};

const BANNER_RULE: &str = "-------------------------------";
const SECTION_RULE: &str = "==========================";

const WEEKDAY_NAMES: [&str; 7] = ["Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"];
const GENERATED_MONTH_NAMES: [&str; 12] = [
    "January", "February", "March", "April", "May", "June", "July", "August", "Sept", "October",
    "November", "December",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Jsonl,
}

/// Rendering knobs. `generated_on` pins the generated-on stamp for
/// reproducible output; when absent the wall clock is read once per
/// render.
#[derive(Debug, Clone, Default)]
pub struct RenderOptions {
    pub generated_on: Option<String>,
    pub top_n: usize,
    pub format: OutputFormat,
}

/// One selected report: its rows (already ranked and truncated to
/// top_n) plus the distinct-key count behind them.
#[derive(Debug, Clone)]
pub struct ReportSection {
    pub kind: ReportKind,
    pub entries: Vec<ReportEntry>,
    pub total_distinct: usize,
}

pub fn section_title(kind: ReportKind) -> &'static str {
    match kind {
        ReportKind::Source => "Users/Source Addressess :",
        ReportKind::Destination => "Users/Destination Addressess :",
        ReportKind::Service => "Service Usage :",
        ReportKind::Interface => "Network Interface Usage :",
    }
}

/// First 16 characters of the key (Unicode scalar values), the whole
/// key when shorter. Display-only: aggregation always works on full
/// keys.
pub fn truncate_key(key: &str) -> String {
    key.chars().take(16).collect()
}

/// `17 Feb 2006 07:13:02` — period-line form.
fn period_stamp(ts: &Timestamp) -> String {
    format!(
        "{} {} {:04} {:02}:{:02}:{:02}",
        ts.day,
        MONTH_ABBREVS[ts.month as usize - 1],
        ts.year,
        ts.hour,
        ts.minute,
        ts.second
    )
}

/// `2006-02-17T07:13:02` — jsonl form.
fn iso8601(ts: &Timestamp) -> String {
    format!(
        "{:04}-{:02}-{:02}T{:02}:{:02}:{:02}",
        ts.year, ts.month, ts.day, ts.hour, ts.minute, ts.second
    )
}

/// Generated-on stamp from the local wall clock, e.g.
/// `Wed 20 May 2009 03:55:42`. Weekday comes from the calendar date and
/// the month index is 1-based.
fn wall_clock_stamp() -> String {
    let now = chrono::Local::now();
    format!(
        "{} {} {} {:04} {:02}:{:02}:{:02}",
        WEEKDAY_NAMES[now.weekday().num_days_from_sunday() as usize],
        now.day(),
        GENERATED_MONTH_NAMES[now.month() as usize - 1],
        now.year(),
        now.hour(),
        now.minute(),
        now.second()
    )
}

fn generated_on(opts: &RenderOptions) -> String {
    opts.generated_on.clone().unwrap_or_else(wall_clock_stamp)
}

/// Banner, generated-on stamp, matched-data period (omitted when no
/// record carried a parseable timestamp) and traffic totals, followed
/// by a blank line.
pub fn render_header(stats: &SummaryStats, opts: &RenderOptions) -> String {
    let mut out = String::new();
    out.push_str(BANNER_RULE);
    out.push('\n');
    out.push_str("| Firewall Log Summary Report |\n");
    out.push_str(BANNER_RULE);
    out.push('\n');
    out.push_str(&format!("Report generated on:{}\n", generated_on(opts)));
    if let (Some(start), Some(end)) = (&stats.period_start, &stats.period_end) {
        out.push_str(&format!(
            "Period for matched data: {} to {}\n",
            period_stamp(start),
            period_stamp(end)
        ));
    }
    out.push_str(&format!(
        "Total entries processed: {}\n",
        stats.total_log_records
    ));
    out.push_str(&format!("Inbound traffic: {}\n", stats.inbound));
    out.push_str(&format!("Outbound traffic: {}\n", stats.outbound));
    out.push('\n');
    out
}

/// Title between rules, one row per entry, then the
/// `<-----Top X of Y Entries----->` footer where X is the number of
/// rows actually rendered and Y the distinct-key count.
pub fn render_section(
    kind: ReportKind,
    entries: &[ReportEntry],
    total_distinct: usize,
    _opts: &RenderOptions,
) -> String {
    let mut out = String::new();
    out.push_str(SECTION_RULE);
    out.push('\n');
    out.push_str(section_title(kind));
    out.push('\n');
    out.push_str(SECTION_RULE);
    out.push('\n');
    for entry in entries {
        out.push_str(&format!(
            "  {}\t{}\t{}%\n",
            truncate_key(&entry.key),
            entry.count,
            entry.percent
        ));
    }
    out.push_str(&format!(
        "<-----Top {} of {} Entries----->\n",
        entries.len(),
        total_distinct
    ));
    out.push('\n');
    out
}

/// Full text document: header block plus the selected sections, always
/// emitted in the fixed order Source, Destination, Service, Interface
/// regardless of the order `sections` arrived in.
pub fn render_report(
    sections: &[ReportSection],
    stats: &SummaryStats,
    opts: &RenderOptions,
) -> String {
    let mut out = render_header(stats, opts);
    for kind in ReportKind::ALL {
        if let Some(section) = sections.iter().find(|s| s.kind == kind) {
            out.push_str(&render_section(
                kind,
                &section.entries,
                section.total_distinct,
                opts,
            ));
        }
    }
    out
}

/// One line of jsonl output. The summary line always comes first and
/// carries the selected report kinds so a document can be rebuilt even
/// when a report had no rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum JsonlRecord {
    Summary {
        generated_on: String,
        total: u64,
        inbound: u64,
        outbound: u64,
        period_start: Option<String>,
        period_end: Option<String>,
        sections: Vec<ReportKind>,
    },
    Entry {
        report: ReportKind,
        rank: usize,
        key: String,
        count: u64,
        percent: String,
        total_distinct: usize,
    },
}

/// Machine-readable variant of [`render_report`]: one summary record,
/// then one record per report row in text-format order. UTF-8, LF
/// terminated.
pub fn render_jsonl(
    sections: &[ReportSection],
    stats: &SummaryStats,
    opts: &RenderOptions,
) -> String {
    let ordered: Vec<&ReportSection> = ReportKind::ALL
        .iter()
        .filter_map(|kind| sections.iter().find(|s| s.kind == *kind))
        .collect();

    let mut records = vec![JsonlRecord::Summary {
        generated_on: generated_on(opts),
        total: stats.total_log_records,
        inbound: stats.inbound,
        outbound: stats.outbound,
        period_start: stats.period_start.as_ref().map(iso8601),
        period_end: stats.period_end.as_ref().map(iso8601),
        sections: ordered.iter().map(|s| s.kind).collect(),
    }];
    for section in &ordered {
        for (index, entry) in section.entries.iter().enumerate() {
            records.push(JsonlRecord::Entry {
                report: section.kind,
                rank: index + 1,
                key: entry.key.clone(),
                count: entry.count,
                percent: entry.percent.clone(),
                total_distinct: section.total_distinct,
            });
        }
    }

    let mut out = String::new();
    for record in &records {
        out.push_str(&serde_json::to_string(record).expect("jsonl records serialize"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_timestamp;

    fn entry(key: &str, count: u64, percent: &str) -> ReportEntry {
        ReportEntry {
            key: key.to_string(),
            count,
            percent: percent.to_string(),
        }
    }

    fn sample_stats() -> SummaryStats {
        SummaryStats {
            total_log_records: 2735,
            inbound: 2734,
            outbound: 1,
            period_start: Some(parse_timestamp("17Feb2006", "07:13:02").unwrap()),
            period_end: Some(parse_timestamp("26Feb2006", "23:59:01").unwrap()),
        }
    }

    fn pinned() -> RenderOptions {
        RenderOptions {
            generated_on: Some("Wed 20 May 2009 03:55:42".to_string()),
            top_n: 10,
            format: OutputFormat::Text,
        }
    }

    #[test]
    fn truncates_to_sixteen_characters() {
        assert_eq!(truncate_key("corelinkmain01.foo.com"), "corelinkmain01.f");
        assert_eq!(truncate_key("udp"), "udp");
        assert_eq!(
            truncate_key("dhcp-100-101-167-22.example"),
            "dhcp-100-101-167"
        );
        // Characters, not bytes.
        assert_eq!(truncate_key("ααααααααααααααααββ"), "αααααααααααααααα");
    }

    #[test]
    fn renders_header_block() {
        let text = render_header(&sample_stats(), &pinned());
        let expected = "\
-------------------------------
| Firewall Log Summary Report |
-------------------------------
Report generated on:Wed 20 May 2009 03:55:42
Period for matched data: 17 Feb 2006 07:13:02 to 26 Feb 2006 23:59:01
Total entries processed: 2735
Inbound traffic: 2734
Outbound traffic: 1

";
        assert_eq!(text, expected);
    }

    #[test]
    fn omits_period_line_when_empty() {
        let text = render_header(&SummaryStats::default(), &pinned());
        assert!(!text.contains("Period for matched data"));
        assert!(text.contains("Total entries processed: 0\n"));
        assert!(text.contains("Inbound traffic: 0\n"));
    }

    #[test]
    fn renders_single_digit_days_unpadded() {
        let stats = SummaryStats {
            period_start: Some(parse_timestamp("4Nov2006", "8:42:14").unwrap()),
            period_end: Some(parse_timestamp("17Nov2006", "14:10:58").unwrap()),
            ..SummaryStats::default()
        };
        let text = render_header(&stats, &pinned());
        assert!(
            text.contains("Period for matched data: 4 Nov 2006 08:42:14 to 17 Nov 2006 14:10:58\n")
        );
    }

    #[test]
    fn wall_clock_stamp_has_expected_shape() {
        let stamp = wall_clock_stamp();
        let mut parts = stamp.splitn(4, ' ');
        let weekday = parts.next().unwrap();
        let day = parts.next().unwrap();
        let month = parts.next().unwrap();
        let rest = parts.next().unwrap();
        assert!(WEEKDAY_NAMES.contains(&weekday));
        assert!(day.parse::<u8>().is_ok());
        assert!(GENERATED_MONTH_NAMES.contains(&month));
        assert_eq!(rest.len(), "2009 03:55:42".len());
    }

    #[test]
    fn renders_section_rows_and_footer() {
        let entries = [entry("udp__ntp-udp", 2669, "97.59")];
        let text = render_section(ReportKind::Service, &entries, 16, &pinned());
        let expected = "\
==========================
Service Usage :
==========================
  udp__ntp-udp\t2669\t97.59%
<-----Top 1 of 16 Entries----->

";
        assert_eq!(text, expected);
    }

    #[test]
    fn renders_empty_section() {
        let text = render_section(ReportKind::Source, &[], 0, &pinned());
        assert!(text.contains("Users/Source Addressess :\n"));
        assert!(text.contains("<-----Top 0 of 0 Entries----->\n"));
    }

    #[test]
    fn footer_reflects_rendered_rows() {
        let entries = [
            entry("fwrtrmain01.foo.com", 1337, "48.88"),
            entry("corelinkmain01.foo.com", 1321, "48.30"),
        ];
        let text = render_section(ReportKind::Source, &entries, 18, &pinned());
        assert!(text.contains("  fwrtrmain01.foo.\t1337\t48.88%\n"));
        assert!(text.contains("  corelinkmain01.f\t1321\t48.30%\n"));
        assert!(text.contains("<-----Top 2 of 18 Entries----->\n"));
    }

    fn four_sections() -> Vec<ReportSection> {
        ReportKind::ALL
            .iter()
            .map(|kind| ReportSection {
                kind: *kind,
                entries: vec![entry("k", 1, "100.00")],
                total_distinct: 1,
            })
            .collect()
    }

    #[test]
    fn orders_sections_canonically() {
        let mut sections = four_sections();
        sections.reverse();
        let text = render_report(&sections, &sample_stats(), &pinned());
        let positions: Vec<usize> = [
            "Users/Source Addressess :",
            "Users/Destination Addressess :",
            "Service Usage :",
            "Network Interface Usage :",
        ]
        .iter()
        .map(|title| text.find(title).unwrap())
        .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn renders_header_only_for_empty_selection() {
        let text = render_report(&[], &sample_stats(), &pinned());
        assert_eq!(text, render_header(&sample_stats(), &pinned()));
    }

    #[test]
    fn single_selection_renders_one_section() {
        let sections = vec![ReportSection {
            kind: ReportKind::Source,
            entries: vec![entry("fwrtrmain01.foo.com", 1337, "48.88")],
            total_distinct: 18,
        }];
        let text = render_report(&sections, &sample_stats(), &pinned());
        assert_eq!(text.matches(SECTION_RULE).count(), 2);
        assert!(text.contains("Users/Source Addressess :"));
        assert!(!text.contains("Service Usage :"));
    }

    #[test]
    fn jsonl_summary_carries_totals() {
        let text = render_jsonl(&four_sections(), &sample_stats(), &pinned());
        let first = text.lines().next().unwrap();
        let value: serde_json::Value = serde_json::from_str(first).unwrap();
        assert_eq!(value["type"], "summary");
        assert_eq!(value["total"], 2735);
        assert_eq!(value["inbound"], 2734);
        assert_eq!(value["outbound"], 1);
        assert_eq!(value["period_start"], "2006-02-17T07:13:02");
        assert_eq!(value["period_end"], "2006-02-26T23:59:01");
    }

    #[test]
    fn jsonl_for_no_rows_is_summary_only() {
        let sections = vec![ReportSection {
            kind: ReportKind::Source,
            entries: Vec::new(),
            total_distinct: 0,
        }];
        let text = render_jsonl(&sections, &SummaryStats::default(), &pinned());
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn jsonl_rows_follow_text_order() {
        let text = render_jsonl(&four_sections(), &sample_stats(), &pinned());
        let reports: Vec<String> = text
            .lines()
            .skip(1)
            .map(|line| {
                let v: serde_json::Value = serde_json::from_str(line).unwrap();
                assert_eq!(v["type"], "entry");
                assert_eq!(v["rank"], 1);
                v["report"].as_str().unwrap().to_string()
            })
            .collect();
        assert_eq!(reports, ["source", "destination", "service", "interface"]);
    }
}
