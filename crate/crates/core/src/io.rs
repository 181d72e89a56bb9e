//! Shared pieces of the line-oriented text formats.

use thiserror::Error;

use crate::ff::{FieldCtx, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// 1-based column of `needle` inside `line` (pointer arithmetic on a subslice).
pub(crate) fn column_of(line: &str, needle: &str) -> usize {
    let start = line.as_ptr() as usize;
    let at = needle.as_ptr() as usize;
    if at >= start && at <= start + line.len() {
        at - start + 1
    } else {
        1
    }
}

/// Splits `key=value` tokens after a leading keyword, checking the keyword.
pub(crate) fn keyed_fields<'a>(
    line_no: usize,
    line: &'a str,
    keyword: &str,
) -> Result<Vec<(&'a str, &'a str)>, ParseError> {
    let mut tokens = line.split_whitespace();
    match tokens.next() {
        Some(k) if k == keyword => {}
        _ => return Err(ParseError::new(line_no, 1, format!("expected `{keyword}` header"))),
    }
    tokens
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| ParseError::new(line_no, column_of(line, tok), format!("expected key=value, got `{tok}`")))
        })
        .collect()
}

pub(crate) fn lookup<'a>(
    fields: &[(&'a str, &'a str)],
    key: &str,
    line_no: usize,
) -> Result<&'a str, ParseError> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| ParseError::new(line_no, 1, format!("missing `{key}=`")))
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: &str, tok: &str, line_no: usize) -> Result<T, ParseError> {
    tok.trim()
        .parse()
        .map_err(|_| ParseError::new(line_no, column_of(line, tok), format!("invalid number `{tok}`")))
}

pub(crate) fn parse_list<T: std::str::FromStr>(line: &str, tok: &str, line_no: usize) -> Result<Vec<T>, ParseError> {
    tok.split(',').map(|t| parse_num(line, t, line_no)).collect()
}

/// Parses `field p=<p> n=<n> poly=<c0,...,cn>`.
pub fn parse_field_header(line_no: usize, line: &str) -> Result<FieldCtx, ParseError> {
    let fields = keyed_fields(line_no, line, "field")?;
    let p: u32 = parse_num(line, lookup(&fields, "p", line_no)?, line_no)?;
    let n: usize = parse_num(line, lookup(&fields, "n", line_no)?, line_no)?;
    let poly_tok = lookup(&fields, "poly", line_no)?;
    let poly: Vec<u32> = parse_list(line, poly_tok, line_no)?;
    if poly.len() != n + 1 {
        return Err(ParseError::new(
            line_no,
            column_of(line, poly_tok),
            format!("modulus has {} coefficients, expected {}", poly.len(), n + 1),
        ));
    }
    FieldCtx::new(p, poly).map_err(|e: FieldError| ParseError::new(line_no, 1, e.to_string()))
}
