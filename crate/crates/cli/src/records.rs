//! Line-oriented machine-readable output.
//!
//! The first line is the header `slicekit/1`. Every following line is one
//! record: a kind, then tab-separated `key=value` fields. Values never
//! contain tabs or line breaks. Example:
//!
//! ```text
//! slicekit/1
//! row	A={0,1}	d=1	W=2	k=2	kappa=2	s=1
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use slicekit::{ThresholdRow, ValueSet};

use crate::Failure;

pub const HEADER: &str = "slicekit/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Self {
            kind: kind.to_string(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        let value = value.to_string();
        debug_assert!(!value.contains(['\t', '\n']), "record values are single-line");
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Header plus one line per record, newline-terminated.
pub fn write_records(records: &[Record]) -> String {
    let mut out = format!("{HEADER}\n");
    for r in records {
        out.push_str(&r.kind);
        for (k, v) in &r.fields {
            let _ = write!(out, "\t{k}={v}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_records(text: &str) -> Result<Vec<Record>, Failure> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, HEADER)) => {}
        _ => return Err(Failure::input(format!("line 1: expected header {HEADER}"))),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let mut parts = line.split('\t');
            let kind = parts.next().unwrap_or_default().to_string();
            let fields = parts
                .map(|p| {
                    p.split_once('=')
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .ok_or_else(|| Failure::input(format!("line {}: field without '='", i + 1)))
                })
                .collect::<Result<_, _>>()?;
            Ok(Record { kind, fields })
        })
        .collect()
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn row_record(row: &ThresholdRow) -> Record {
    Record::new("row")
        .field("A", &row.set)
        .field("d", row.d)
        .field("W", row.w)
        .field("k", row.k)
        .field("kappa", row.kappa)
        .field("s", join(&row.attaining_s))
}

/// Reads back the `row` records of a threshold table.
pub fn rows_from_records(records: &[Record]) -> Result<Vec<ThresholdRow>, Failure> {
    records
        .iter()
        .filter(|r| r.kind == "row")
        .map(|r| {
            let text = |key: &str| {
                r.get(key)
                    .ok_or_else(|| Failure::input(format!("row without {key}")))
            };
            let number = |key: &str| {
                text(key)?
                    .parse::<usize>()
                    .map_err(|e| Failure::input(format!("{key}: {e}")))
            };
            let set: ValueSet = text("A")?
                .parse()
                .map_err(|e| Failure::input(format!("A: {e}")))?;
            let attaining_s = text("s")?
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|e| Failure::input(format!("s: {e}"))))
                .collect::<Result<BTreeSet<_>, _>>()?;
            Ok(ThresholdRow {
                set,
                d: number("d")?,
                w: number("W")?,
                k: number("k")?,
                kappa: number("kappa")?,
                attaining_s,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use slicekit::thresholds::build_table;

    #[test]
    fn row_layout() {
        let rows = build_table(&["{0,1}".parse().unwrap()], 1).unwrap();
        let text = write_records(&[row_record(&rows[0])]);
        assert_eq!(text, "slicekit/1\nrow\tA={0,1}\td=1\tW=2\tk=2\tkappa=2\ts=1\n");
    }

    #[test]
    fn table_round_trip() {
        let sets: Vec<ValueSet> = ["{0,1}", "{0,1,3}", "{-1/2,0,7}"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let rows = build_table(&sets, 3).unwrap();
        let records: Vec<Record> = rows.iter().map(row_record).collect();
        let parsed = parse_records(&write_records(&records)).unwrap();
        assert_eq!(parsed, records);
        assert_eq!(rows_from_records(&parsed).unwrap(), rows);
    }

    #[test]
    fn malformed_records() {
        assert!(parse_records("").is_err());
        assert!(parse_records("slicekit/2\n").is_err());
        assert!(parse_records("slicekit/1\nrow\tA\n").is_err());
        assert_eq!(parse_records("slicekit/1\n").unwrap(), vec![]);
    }
}
