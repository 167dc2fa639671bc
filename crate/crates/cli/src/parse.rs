//! The poset file format.
//!
//! ```text
//! # comments run to the end of the line
//! elements: 3
//! labels: 3 1 2      # optional, defaults to a natural labeling
//! 0 < 1
//! 0 < 2
//! ```

use std::collections::HashMap;
use std::fmt;

use posetpoly::poset::MAX_ELEMENTS;
use posetpoly::{LabeledPoset, Labeling, Poset, PosetError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    MissingHeader,
    DuplicateLabels,
    Malformed(&'static str),
    BadNumber(String),
    TooLarge(usize),
    OutOfRange { index: usize, n: usize },
    Cycle { low: usize, high: usize },
    LabelCount { expected: usize, got: usize },
    DuplicateLabel(u32),
    NonPositiveLabel,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => f.write_str("empty poset file"),
            ParseErrorKind::MissingHeader => f.write_str("expected `elements: n` before anything else"),
            ParseErrorKind::DuplicateLabels => f.write_str("labels given twice"),
            ParseErrorKind::Malformed(expected) => write!(f, "expected {expected}"),
            ParseErrorKind::BadNumber(token) => {
                write!(f, "`{token}` is not a non-negative integer")
            }
            ParseErrorKind::TooLarge(n) => {
                write!(f, "{n} elements, at most {MAX_ELEMENTS} are supported")
            }
            ParseErrorKind::OutOfRange { index, n } => {
                write!(f, "element {index} out of range for a poset with {n} elements")
            }
            ParseErrorKind::Cycle { low, high } => {
                write!(f, "relation {low} < {high} closes a cycle")
            }
            ParseErrorKind::LabelCount { expected, got } => {
                write!(f, "expected {expected} labels, got {got}")
            }
            ParseErrorKind::DuplicateLabel(l) => write!(f, "label {l} is used more than once"),
            ParseErrorKind::NonPositiveLabel => f.write_str("labels must be positive integers"),
        }
    }
}

/// A parsed poset file: the labeled poset plus the relations as written.
#[derive(Debug, Clone)]
pub struct PosetFile {
    pub poset: LabeledPoset,
    pub relations: Vec<(usize, usize)>,
    pub explicit_labels: bool,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> impl Iterator<Item = Token<'_>> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let column = line[..offset + start].chars().count() + 1;
        let text = &tail[..len];
        offset += start + len;
        rest = &rest[start + len..];
        Some(Token { text, column })
    })
}

fn number(token: &Token<'_>, line: usize) -> Result<usize, ParseError> {
    token.text.parse().map_err(|_| ParseError {
        line,
        column: token.column,
        kind: ParseErrorKind::BadNumber(token.text.to_string()),
    })
}

fn first_column(text: &str) -> usize {
    text.chars().take_while(|c| c.is_whitespace()).count() + 1
}

pub fn parse_poset_file(text: &str) -> Result<PosetFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("")))
        .filter(|(_, body)| !body.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError { line: 1, column: 1, kind: ParseErrorKind::Empty })?;
    let err = |line, column, kind| ParseError { line, column, kind };
    let n = match header.trim_start().strip_prefix("elements:") {
        Some(rest) => {
            let offset = header.len() - rest.len();
            let mut toks = tokens(rest);
            let tok = toks.next().ok_or(err(header_line, header.len() + 1, ParseErrorKind::Malformed("a count")))?;
            let column = tok.column + header[..offset].chars().count();
            let n = number(&tok, header_line).map_err(|e| ParseError { column, ..e })?;
            if let Some(extra) = toks.next() {
                let column = extra.column + header[..offset].chars().count();
                return Err(err(header_line, column, ParseErrorKind::Malformed("end of line after the count")));
            }
            if n > MAX_ELEMENTS {
                return Err(err(header_line, column, ParseErrorKind::TooLarge(n)));
            }
            n
        }
        None => return Err(err(header_line, first_column(header), ParseErrorKind::MissingHeader)),
    };

    let mut labels: Option<Vec<u32>> = None;
    let mut relations = Vec::new();
    let mut relation_lines = Vec::new();
    for (line, body) in lines {
        if let Some(rest) = body.trim_start().strip_prefix("labels:") {
            if labels.is_some() {
                return Err(err(line, first_column(body), ParseErrorKind::DuplicateLabels));
            }
            let prefix = body[..body.len() - rest.len()].chars().count();
            let mut seen = HashMap::new();
            let mut parsed = Vec::new();
            for tok in tokens(rest) {
                let column = tok.column + prefix;
                let value = number(&tok, line).map_err(|e| ParseError { column, ..e })?;
                let label =
                    u32::try_from(value).map_err(|_| err(line, column, ParseErrorKind::BadNumber(tok.text.into())))?;
                if label == 0 {
                    return Err(err(line, column, ParseErrorKind::NonPositiveLabel));
                }
                if seen.insert(label, column).is_some() {
                    return Err(err(line, column, ParseErrorKind::DuplicateLabel(label)));
                }
                parsed.push(label);
            }
            if parsed.len() != n {
                let kind = ParseErrorKind::LabelCount { expected: n, got: parsed.len() };
                return Err(err(line, first_column(body), kind));
            }
            labels = Some(parsed);
            continue;
        }
        let toks: Vec<Token<'_>> = tokens(body).collect();
        let (low, high) = match toks.as_slice() {
            [a, op, b] if op.text == "<" => (a, b),
            _ => return Err(err(line, first_column(body), ParseErrorKind::Malformed("`i < j`"))),
        };
        let mut pair = [0usize; 2];
        for (slot, tok) in pair.iter_mut().zip([low, high]) {
            let index = number(tok, line)?;
            if index >= n {
                return Err(err(line, tok.column, ParseErrorKind::OutOfRange { index, n }));
            }
            *slot = index;
        }
        relations.push((pair[0], pair[1]));
        relation_lines.push((line, first_column(body)));
    }

    let poset = Poset::from_covers(n, &relations).map_err(|e| match e {
        PosetError::Cycle { relation, low, high } => {
            let (line, column) = relation_lines[relation];
            err(line, column, ParseErrorKind::Cycle { low, high })
        }
        other => unreachable!("validated while parsing: {other}"),
    })?;
    let explicit_labels = labels.is_some();
    let labeling = match labels {
        Some(l) => Labeling::new(l).expect("labels validated while parsing"),
        None => Labeling::natural(&poset),
    };
    let poset = LabeledPoset::new(poset, labeling).expect("label count validated while parsing");
    Ok(PosetFile { poset, relations, explicit_labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind_at(text: &str) -> (usize, usize, ParseErrorKind) {
        let e = parse_poset_file(text).unwrap_err();
        (e.line, e.column, e.kind)
    }

    #[test]
    fn chains() {
        let natural = parse_poset_file("elements: 2\n0 < 1").unwrap();
        assert!(natural.poset.is_natural());
        assert!(!natural.explicit_labels);
        let strict = parse_poset_file("elements: 2\nlabels: 2 1\n0 < 1").unwrap();
        assert!(strict.poset.is_strict());
        assert_eq!(strict.poset.labeling().labels(), &[2, 1]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a shrub\n\nelements: 3   # three\n0 < 2\n\n1 < 2 # last\n";
        let f = parse_poset_file(text).unwrap();
        assert_eq!(f.relations, vec![(0, 2), (1, 2)]);
        assert!(f.poset.poset().less(1, 2));
    }

    #[test]
    fn cycle_reports_its_line() {
        assert_eq!(kind_at("elements: 2\n0 < 1\n1 < 0"), (3, 1, ParseErrorKind::Cycle { low: 1, high: 0 }));
        assert_eq!(kind_at("elements: 1\n\n  0 < 0").0, 3);
    }

    #[test]
    fn positional_errors() {
        assert_eq!(kind_at(""), (1, 1, ParseErrorKind::Empty));
        assert_eq!(kind_at("0 < 1"), (1, 1, ParseErrorKind::MissingHeader));
        assert_eq!(kind_at("elements: x").1, 11);
        assert_eq!(kind_at("elements: 2\n0 < 7"), (2, 5, ParseErrorKind::OutOfRange { index: 7, n: 2 }));
        assert_eq!(kind_at("elements: 2\n0 <= 1").2, ParseErrorKind::Malformed("`i < j`"));
        assert_eq!(kind_at("elements: 2\nlabels: 1 1"), (2, 11, ParseErrorKind::DuplicateLabel(1)));
        assert_eq!(kind_at("elements: 2\nlabels: 0 1"), (2, 9, ParseErrorKind::NonPositiveLabel));
        assert_eq!(kind_at("elements: 3\nlabels: 1 2").2, ParseErrorKind::LabelCount { expected: 3, got: 2 });
        assert_eq!(kind_at("elements: 2\nlabels: 1 2\nlabels: 2 1").2, ParseErrorKind::DuplicateLabels);
        assert_eq!(kind_at("elements: 65").2, ParseErrorKind::TooLarge(65));
    }

    #[test]
    fn error_message_names_the_line() {
        let e = parse_poset_file("elements: 2\n0 < 1\n1 < 0").unwrap_err();
        assert_eq!(e.to_string(), "line 3, column 1: relation 1 < 0 closes a cycle");
    }
}
