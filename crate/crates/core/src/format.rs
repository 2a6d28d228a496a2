//! Plain-text matrix and function files.
//!
//! Matrix file: first line `N`, then `N` lines of `N` nonnegative integers.
//! Function file: first line `window k`, then one `word value` line per
//! admissible `k`-word. In both, `#` starts a comment and blank lines are skipped.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::sft::Word;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_matrix(text: &str) -> Result<Vec<Vec<u64>>> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "missing size line"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(line_no, format!("expected matrix size, found {header:?}")))?;
    if n == 0 {
        return Err(parse_err(line_no, "matrix size must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in lines.by_ref().take(n) {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| parse_err(line_no, format!("{tok:?} is not a nonnegative integer")))
            })
            .collect::<Result<Vec<u64>>>()?;
        if row.len() != n {
            return Err(parse_err(line_no, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() < n {
        return Err(parse_err(text.lines().count().max(1), format!("expected {n} rows, found {}", rows.len())));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(line_no, "trailing content after the last row"));
    }
    Ok(rows)
}

pub fn format_matrix(rows: &[Vec<u64>]) -> String {
    let mut out = format!("{}\n", rows.len());
    for r in rows {
        let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Raw function file: the window and the `word -> value` table, words still unchecked
/// against any matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionFile {
    pub window: usize,
    pub values: BTreeMap<Word, i64>,
}

pub fn parse_function(text: &str, alphabet: usize) -> Result<FunctionFile> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "missing `window k` line"))?;
    let window = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["window", k] => k
            .parse::<usize>()
            .ok()
            .filter(|&k| k >= 1)
            .ok_or_else(|| parse_err(line_no, format!("bad window {k:?}")))?,
        _ => return Err(parse_err(line_no, format!("expected `window k`, found {header:?}"))),
    };
    let mut values = BTreeMap::new();
    for (line_no, line) in lines {
        let [word, value] = line.split_whitespace().collect::<Vec<_>>()[..] else {
            return Err(parse_err(line_no, "expected `word value`"));
        };
        let w = Word::parse(word, alphabet).map_err(|e| parse_err(line_no, e.to_string()))?;
        if w.len() != window {
            return Err(parse_err(line_no, format!("word {word} does not have length {window}")));
        }
        let v: i64 = value
            .parse()
            .map_err(|_| parse_err(line_no, format!("{value:?} is not an integer")))?;
        if values.insert(w, v).is_some() {
            return Err(parse_err(line_no, format!("duplicate word {word}")));
        }
    }
    Ok(FunctionFile { window, values })
}

pub fn format_function(window: usize, values: &BTreeMap<Word, i64>) -> String {
    let mut out = format!("window {window}\n");
    for (w, v) in values {
        out.push_str(&format!("{w} {v}\n"));
    }
    out
}
