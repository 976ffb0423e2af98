//! Plain-text generator matrices.
//!
//! ```text
//! # comment lines start with '#'
//! q n k
//! a_11 a_12 ... a_1n
//! ...
//! a_k1 a_k2 ... a_kn
//! ```
//!
//! Entries are field element encodings in decimal, separated by single
//! spaces, and the file ends with a newline.

use std::fmt::Write as _;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(line_no, format!("not a decimal integer: {tok:?}")))
        })
        .collect()
}

/// Parses the text format. The rows must be linearly independent.
pub fn parse_generator_matrix(text: &str) -> Result<LinearCode> {
    if !text.ends_with('\n') {
        return Err(parse_err(
            text.lines().count().max(1),
            "missing trailing newline",
        ));
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing \"q n k\" header"))?;
    let header = numbers(hline, header)?;
    let [q, n, k] = header[..] else {
        return Err(parse_err(hline, "header must be \"q n k\""));
    };
    let field = Field::with_order(q).map_err(|e| parse_err(hline, e.to_string()))?;
    let (n, k) = (n as usize, k as usize);
    if k > n {
        return Err(parse_err(hline, format!("k = {k} exceeds n = {n}")));
    }
    let mut values = Vec::with_capacity(n * k);
    let mut last = hline;
    for _ in 0..k {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {k} matrix rows")))?;
        let row = numbers(no, line)?;
        if row.len() != n {
            return Err(parse_err(
                no,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= q) {
            return Err(parse_err(no, format!("{bad} is not an element of GF({q})")));
        }
        values.extend(row);
        last = no;
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, "unexpected content after the matrix rows"));
    }
    let m = Matrix::from_values(&field, k, n, &values)?;
    let code = LinearCode::from_generator(&field, &m);
    if code.k() != k {
        return Err(parse_err(
            hline,
            format!("rows span only {} dimensions, not {k}", code.k()),
        ));
    }
    Ok(code)
}

/// Writes the canonical (RREF) generator in the text format.
pub fn format_generator_matrix(code: &LinearCode) -> String {
    let mut out = format!("{} {} {}\n", code.field().q(), code.n(), code.k());
    write_rows(&mut out, code.generator());
    out
}

pub(crate) fn write_rows(out: &mut String, m: &Matrix) {
    for r in 0..m.rows() {
        let row = m.row(r);
        for (i, x) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{x}").unwrap();
        }
        out.push('\n');
    }
}

/// One code per line: the RREF entries flattened row-major.
pub fn format_flat(code: &LinearCode) -> String {
    let entries: Vec<String> = code
        .generator()
        .entries()
        .iter()
        .map(|x| x.to_string())
        .collect();
    entries.join(" ")
}
