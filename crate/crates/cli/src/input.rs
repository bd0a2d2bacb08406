//! Reading `--set` and `--poly` arguments, which name a file or hold the
//! text itself.

use std::path::Path;

use anyhow::Context;
use slicekit::slice::{multilinearize, parse_raw};
use slicekit::{Error, MultilinearPoly, ValueSet};

use crate::Failure;

/// File contents if `arg` names an existing file, else `arg` itself.
pub fn read_source(arg: &str) -> anyhow::Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))
    } else {
        Ok(arg.to_string())
    }
}

/// Lines that carry content: not blank, not starting with `#`. Literal
/// arguments may use `;` instead of line breaks.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let sep = if text.contains('\n') { '\n' } else { ';' };
    text.split(sep)
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim_end_matches('\r')))
        .filter(|(_, line)| !line.trim().is_empty() && !line.trim_start().starts_with('#'))
}

fn located(line: usize, err: Error) -> anyhow::Error {
    match err {
        Error::Parse { column, message } => {
            Failure::input(format!("line {line}, column {column}: {message}")).into()
        }
        other => Failure::input(format!("line {line}: {other}")).into(),
    }
}

/// One value set per content line, e.g. `{0,1,3}`.
pub fn parse_sets(text: &str) -> anyhow::Result<Vec<ValueSet>> {
    let sets = content_lines(text)
        .map(|(line, body)| body.parse::<ValueSet>().map_err(|e| located(line, e)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if sets.is_empty() {
        return Err(Failure::input("no value sets given").into());
    }
    Ok(sets)
}

/// A value set given literally, as for `--A`.
pub fn parse_set(text: &str) -> anyhow::Result<ValueSet> {
    text.parse::<ValueSet>()
        .map_err(|e| Failure::input(format!("--A: {e}")).into())
}

/// A polynomial in the text grammar; may span several lines, and lines
/// starting with `#` are ignored.
pub fn parse_polynomial(text: &str, n: usize) -> anyhow::Result<MultilinearPoly> {
    let cleaned: Vec<&str> = text
        .lines()
        .map(|l| if l.trim_start().starts_with('#') { "" } else { l })
        .collect();
    let joined = cleaned.join("\n");
    let raw = parse_raw(&joined).map_err(|e| match e {
        Error::Parse { column, message } => {
            let (line, col) = line_column(&joined, column);
            anyhow::Error::from(Failure::input(format!("line {line}, column {col}: {message}")))
        }
        other => other.into(),
    })?;
    multilinearize(&raw, n).map_err(|e| Failure::input(e.to_string()).into())
}

/// Converts a 1-based character offset into 1-based line and column.
fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for c in text.chars().take(offset - 1) {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}
