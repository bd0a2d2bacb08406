//! Text output for each report, in both formats.

use std::fmt::Write as _;

use slicekit::{Rational, ThresholdRow};

use crate::commands::{Analysis, ConstructReport, Decomposition, Expansion, Membership, VerificationReport};
use crate::records::{row_record, write_records, Record};
use crate::Format;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn values_list(values: &[Rational]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn table(rows: &[ThresholdRow], format: Format) -> String {
    match format {
        Format::Records => write_records(&rows.iter().map(row_record).collect::<Vec<_>>()),
        Format::Human => {
            let width = rows
                .iter()
                .map(|r| r.set.to_string().len())
                .max()
                .unwrap_or(1)
                .max(1);
            let mut out = format!("{:<width$}  {:>2}  {:>3}  {:>3}  s\n", "A", "d", "W", "k");
            for r in rows {
                let s: Vec<String> = r.attaining_s.iter().map(|s| s.to_string()).collect();
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>2}  {:>3}  {:>3}  [{}]",
                    r.set.to_string(),
                    r.d,
                    r.w,
                    r.k,
                    s.join(",")
                );
            }
            out
        }
    }
}

pub fn analysis(a: &Analysis, format: Format) -> String {
    let mut records = vec![Record::new("analysis")
        .field("n", a.domain.n())
        .field("k", a.domain.k())
        .field("degree", a.degree)];
    if let Some((d, ok)) = a.degree_bound {
        records.push(Record::new("degree_bound").field("d", d).field("holds", yes_no(ok)));
    }
    if let Some((set, status)) = &a.membership {
        let r = Record::new("a_valued").field("A", set);
        records.push(match status {
            Membership::Valued => r.field("holds", "yes"),
            Membership::Outside { point, value } => r
                .field("holds", "no")
                .field("point", point)
                .field("value", value),
        });
    }
    match &a.expansion {
        Expansion::Computed {
            d,
            nonzero,
            sparse,
            exceptions,
        } => {
            records.push(
                Record::new("expansion")
                    .field("d", d)
                    .field("nonzero", nonzero)
                    .field("exceptions", exceptions.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")),
            );
            records.push(
                Record::new("sparse")
                    .field("terms", sparse.coeffs().len())
                    .field("support", sparse.support())
                    .field("poly", sparse.to_poly()),
            );
        }
        Expansion::Skipped(reason) => records.push(Record::new("expansion").field("skipped", reason)),
    }
    records.push(
        Record::new("junta")
            .field("min", a.junta.min_size)
            .field("witness", a.junta.witness),
    );
    match format {
        Format::Records => write_records(&records),
        Format::Human => human(&records),
    }
}

pub fn construct(c: &ConstructReport, format: Format) -> String {
    let s = &c.spec;
    let mut head = Record::new("construct")
        .field("family", s.family.name())
        .field("A", &s.set)
        .field("d", s.d)
        .field("k", s.k)
        .field("m", s.m)
        .field("n", s.n);
    head = match &s.family {
        slicekit::constructions::Family::BlockSum { a, b } => head.field("a", a).field("b", b),
        slicekit::constructions::Family::Gate { a, e } => head.field("a", a).field("e", e),
        slicekit::constructions::Family::BlockGate { a, t, r, s } => {
            head.field("a", a).field("t", t).field("r", r).field("s", s)
        }
    };
    if let Some(p) = &s.witness_poly {
        head = head.field("P", p);
    }
    let check = Record::new("check")
        .field("a_valued", yes_no(c.a_valued))
        .field("poly_degree", c.poly_degree)
        .field("degree_le_d", yes_no(c.degree_by_extraction))
        .field(
            "rank_degree",
            c.degree_by_rank.map_or_else(|| "skipped".to_string(), |r| r.to_string()),
        );
    let cert = Record::new("certificate")
        .field("I", s.i_set)
        .field("J", s.j_set)
        .field("lower_bound", c.lower_bound)
        .field("min_junta", c.min_junta)
        .field("witness", c.junta_witness);
    let records = vec![head, check, cert, Record::new("poly").field("text", &c.poly)];
    match format {
        Format::Records => write_records(&records),
        Format::Human => human(&records),
    }
}

pub fn verification(v: &VerificationReport, format: Format) -> String {
    let mut records = vec![Record::new("verify")
        .field("n", v.domain.n())
        .field("k", v.domain.k())
        .field("d", v.d)
        .field("A", &v.set)
        .field("bound", v.bound)
        .field("scanned", v.functions_scanned)
        .field("degree_le_d", v.degree_le_d_count)
        .field("max_min_junta", v.max_min_junta)
        .field("violations", v.violations.len())];
    for x in &v.violations {
        records.push(
            Record::new("violation")
                .field("table", x.index)
                .field("min_junta", x.min_junta)
                .field("witness", x.witness)
                .field("values", values_list(&x.values)),
        );
    }
    match format {
        Format::Records => write_records(&records),
        Format::Human => human(&records),
    }
}

pub fn decomposition(dec: &Decomposition, format: Format) -> String {
    let mut records = vec![Record::new("decompose")
        .field("n", dec.table.domain().n())
        .field("k", dec.table.domain().k())
        .field("degree", dec.degree)];
    for (a, part) in &dec.parts {
        records.push(
            Record::new("part")
                .field("a", a)
                .field("degree", dec.part_degrees[a])
                .field("values", values_list(part.values())),
        );
    }
    records.push(Record::new("check").field("reconstructs", yes_no(dec.reconstructs)));
    match format {
        Format::Records => write_records(&records),
        Format::Human => human(&records),
    }
}

/// One line per record: the kind, then `key: value` pairs.
fn human(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = write!(out, "{:<12}", r.kind);
        for (i, (k, v)) in r.fields.iter().enumerate() {
            let sep = if i == 0 { "" } else { "  " };
            let _ = write!(out, "{sep}{k}: {v}");
        }
        out.push('\n');
    }
    out
}
