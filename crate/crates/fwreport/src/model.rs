//! Record schema and timestamp handling shared by the parser, the
//! aggregator and the renderer.

use thiserror::Error;

/// Number of positional fields in one export line.
pub const FIELD_COUNT: usize = 21;

/// One parsed log line. Field order follows the export header:
/// `num;date;time;orig;type;action;alert;if_name;if_dir;proto;src;dst;
/// service;s_port;len;rule;icmp-type;icmp-code;h_len;ip_vers;sys_msgs`.
///
/// Every field may be empty. String fields hold the raw value with
/// leading/trailing ASCII whitespace removed; interior bytes are kept
/// untouched.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LogRecord {
    /// Record sequence number. `None` when the field is empty.
    pub num: Option<u64>,
    /// Raw date string, e.g. `17Nov2006`.
    pub date: String,
    /// Raw time string, e.g. `14:10:43` or `8:42:14`.
    pub time: String,
    /// Originating device.
    pub orig: String,
    /// Message type, e.g. `control` or `log`. Only `log` records are
    /// summarized.
    pub msg_type: String,
    pub action: String,
    pub alert: String,
    /// Interface name, e.g. `hme0`.
    pub if_name: String,
    /// Interface direction, `inbound`/`outbound`/other.
    pub if_dir: String,
    pub proto: String,
    pub src: String,
    pub dst: String,
    pub service: String,
    pub s_port: String,
    pub len: String,
    pub rule: String,
    pub icmp_type: String,
    pub icmp_code: String,
    pub h_len: String,
    pub ip_vers: String,
    /// Free text, last field.
    pub sys_msgs: String,
}

/// Calendar date-time taken from a record's `date` and `time` fields.
///
/// Ordering is lexicographic over (year, month, day, hour, minute,
/// second), which the derived `Ord` provides given the field order
/// below. No calendar validation is done beyond per-field ranges, so
/// e.g. Feb 30 is representable; the tool summarizes logs and must not
/// silently drop odd dates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp {
    pub year: u16,
    pub month: u8,
    pub day: u8,
    pub hour: u8,
    pub minute: u8,
    pub second: u8,
}

/// Three-letter month abbreviations used in the `date` field, matched
/// case-insensitively.
pub const MONTH_ABBREVS: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MalformedTimestamp {
    #[error("date {0:?} does not match DDMonYYYY")]
    BadDate(String),
    #[error("unknown month abbreviation {0:?}")]
    UnknownMonth(String),
    #[error("time {0:?} does not match HH:MM:SS")]
    BadTime(String),
    #[error("{field} {value} out of range")]
    OutOfRange { field: &'static str, value: u32 },
}

/// Parses the record `date` (`DDMonYYYY`, 1-2 digit day) and `time`
/// (`H:MM:SS` or `HH:MM:SS`) fields. Both are trimmed first, so the
/// single-digit-hour form ` 8:42:14` seen in real exports is accepted.
///
/// Callers treat a `MalformedTimestamp` as "record has no timestamp"
/// for period computation; the record still counts in every report.
pub fn parse_timestamp(date: &str, time: &str) -> Result<Timestamp, MalformedTimestamp> {
    let date = date.trim_ascii();
    let time = time.trim_ascii();

    let bad_date = || MalformedTimestamp::BadDate(date.to_string());

    let day_len = date
        .bytes()
        .position(|b| !b.is_ascii_digit())
        .ok_or_else(bad_date)?;
    if !(1..=2).contains(&day_len) {
        return Err(bad_date());
    }
    let (day_str, rest) = date.split_at(day_len);
    if rest.len() != 7 {
        return Err(bad_date());
    }
    let (mon_str, year_str) = rest.split_at(3);
    if !mon_str.bytes().all(|b| b.is_ascii_alphabetic()) {
        return Err(bad_date());
    }
    if !year_str.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad_date());
    }

    let month = MONTH_ABBREVS
        .iter()
        .position(|m| m.eq_ignore_ascii_case(mon_str))
        .ok_or_else(|| MalformedTimestamp::UnknownMonth(mon_str.to_string()))?
        + 1;

    let day: u32 = day_str.parse().map_err(|_| bad_date())?;
    let year: u32 = year_str.parse().map_err(|_| bad_date())?;
    check_range("day", day, 1, 31)?;

    let bad_time = || MalformedTimestamp::BadTime(time.to_string());
    let mut parts = time.split(':');
    let (hour_str, min_str, sec_str) =
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(h), Some(m), Some(s), None) => (h, m, s),
            _ => return Err(bad_time()),
        };
    if !(1..=2).contains(&hour_str.len()) || min_str.len() != 2 || sec_str.len() != 2 {
        return Err(bad_time());
    }
    let hour: u32 = hour_str.parse().map_err(|_| bad_time())?;
    let minute: u32 = min_str.parse().map_err(|_| bad_time())?;
    let second: u32 = sec_str.parse().map_err(|_| bad_time())?;
    check_range("hour", hour, 0, 23)?;
    check_range("minute", minute, 0, 59)?;
    check_range("second", second, 0, 59)?;

    Ok(Timestamp {
        year: year as u16,
        month: month as u8,
        day: day as u8,
        hour: hour as u8,
        minute: minute as u8,
        second: second as u8,
    })
}

fn check_range(
    field: &'static str,
    value: u32,
    min: u32,
    max: u32,
) -> Result<(), MalformedTimestamp> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(MalformedTimestamp::OutOfRange { field, value })
    }
}
