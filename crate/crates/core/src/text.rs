//! Plain-text matrix format.
//!
//! One row per line, entries separated by whitespace. Finite entries are
//! decimal literals; ε is written `eps` (`-inf` is also accepted on input).
//! Blank lines and lines starting with `#` are skipped.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::MaxPlus;

pub fn parse_scalar(token: &str) -> Option<MaxPlus> {
    match token {
        "eps" | "-inf" => Some(MaxPlus::EPS),
        _ => {
            // Rust's float parser also accepts inf/nan spellings; only plain
            // decimal literals are valid here.
            if !token
                .bytes()
                .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'))
            {
                return None;
            }
            token.parse::<f64>().ok().filter(|v| v.is_finite()).map(MaxPlus::new)
        }
    }
}

/// Parses a whitespace-separated vector such as `"0 eps 1.5"`.
pub fn parse_vector(text: &str) -> Result<Vec<MaxPlus>, Error> {
    let mut out = Vec::new();
    for (column, token) in (1..).zip(text.split_whitespace()) {
        out.push(parse_scalar(token).ok_or_else(|| Error::ParseToken {
            line: 1,
            column,
            token: token.to_string(),
        })?);
    }
    if out.is_empty() {
        return Err(Error::ParseEmpty);
    }
    Ok(out)
}

/// Parses a matrix. Errors report 1-based line numbers and 1-based column
/// (entry) positions.
pub fn parse_matrix(text: &str) -> Result<Matrix, Error> {
    let mut rows: Vec<Vec<MaxPlus>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row = trimmed
            .split_whitespace()
            .enumerate()
            .map(|(col, token)| {
                parse_scalar(token).ok_or_else(|| Error::ParseToken {
                    line: line_no,
                    column: col + 1,
                    token: token.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::ParseRagged {
                    line: line_no,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::ParseEmpty);
    }
    Matrix::from_scalar_rows(rows)
}

pub fn format_row(values: &[MaxPlus]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
