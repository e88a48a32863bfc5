//! The `.mag` Cayley-table text format.
//!
//! ```text
//! # comment
//! 3
//! 0 1 2
//! 0 1 2
//! 2 0 1
//! 1 2 0
//! ```
//!
//! Line 1 is the order `n`, line 2 the `n` labels, then `n` rows of `n`
//! labels where row `i`, column `j` is `element_i · element_j`. `#` starts a
//! comment; blank lines are ignored.

use std::collections::HashMap;
use std::fmt;

use super::Groupoid;
use crate::error::{Error, Result};

fn parse_error(line: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        token: token.to_string(),
        message: message.into(),
    }
}

/// Lines of `text` with comments stripped, numbered from `first_line`,
/// blank lines dropped.
pub(crate) fn content_lines(text: &str, first_line: usize) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + first_line, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect()
}

pub fn parse_mag(text: &str) -> Result<Groupoid> {
    parse_mag_lines(&content_lines(text, 1), 1)
}

/// Parses pre-split content lines; `eof_line` is reported when input ends early.
pub(crate) fn parse_mag_lines(lines: &[(usize, &str)], eof_line: usize) -> Result<Groupoid> {
    let mut it = lines.iter().copied();
    let last = lines.last().map_or(eof_line, |&(l, _)| l);

    let (ln, header) = it
        .next()
        .ok_or_else(|| parse_error(eof_line, "", "expected the order on the first line"))?;
    let mut header_tokens = header.split_whitespace();
    let first = header_tokens.next().unwrap_or("");
    let n: usize = first
        .parse()
        .map_err(|_| parse_error(ln, first, "order must be a positive integer"))?;
    if n == 0 {
        return Err(parse_error(ln, first, "order must be a positive integer"));
    }
    if let Some(extra) = header_tokens.next() {
        return Err(parse_error(ln, extra, "unexpected token after the order"));
    }

    let (ln, label_line) = it
        .next()
        .ok_or_else(|| parse_error(last, "", format!("expected {n} labels")))?;
    let names: Vec<&str> = label_line.split_whitespace().collect();
    if names.len() != n {
        let tok = names.get(n).copied().unwrap_or(label_line.trim());
        return Err(parse_error(
            ln,
            tok,
            format!("expected {n} labels, found {}", names.len()),
        ));
    }
    let mut index = HashMap::new();
    for (i, &name) in names.iter().enumerate() {
        if index.insert(name, i).is_some() {
            return Err(parse_error(ln, name, "duplicate label"));
        }
    }

    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let (ln, line) = it.next().ok_or_else(|| {
            parse_error(last, "", format!("expected {n} table rows, found {row}"))
        })?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            let tok = tokens.get(n).copied().unwrap_or(line.trim());
            return Err(parse_error(
                ln,
                tok,
                format!("expected {n} entries in row {}, found {}", names[row], tokens.len()),
            ));
        }
        for tok in tokens {
            let &v = index
                .get(tok)
                .ok_or_else(|| parse_error(ln, tok, "unknown label"))?;
            table.push(v);
        }
    }
    if let Some((ln, line)) = it.next() {
        let tok = line.split_whitespace().next().unwrap_or("");
        return Err(parse_error(ln, tok, "unexpected content after the table"));
    }
    Groupoid::new(names.into_iter().map(String::from).collect(), table)
}

impl fmt::Display for Groupoid {
    /// Writes the `.mag` form, one trailing newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        writeln!(f, "{n}")?;
        writeln!(f, "{}", self.names().join(" "))?;
        for a in 0..n {
            let row: Vec<&str> = (0..n).map(|b| self.name(self.op(a, b))).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const F1: &str = "\
# commutative inverse semigroup
4
a b e f
e e a a
e f b: b # not a label
";

    #[test]
    fn parses_and_prints_f1() {
        let text = "4\na b e f\ne e a a\ne f a b\na a e e\na b e f\n";
        let g = parse_mag(text).unwrap();
        assert_eq!(g, fixtures::f1());
        assert_eq!(g.to_string(), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\n\n2  # order\n x   y\n\nx y\n y x # row\n";
        let g = parse_mag(text).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.op(1, 1), 0);
    }

    #[test]
    fn errors_name_line_and_token() {
        let err = parse_mag(F1).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 5,
                token: "b:".into(),
                message: "unknown label".into()
            }
        );
        let err = parse_mag("two\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, ref token, .. } if token == "two"));
        let err = parse_mag("2\nx x\nx x\nx x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, ref token, .. } if token == "x"));
        let err = parse_mag("2\nx y\nx y\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_mag("1\nx\nx\nx\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_mag("2\nx y\nx y z\ny x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, ref token, .. } if token == "z"));
    }
}
