//! Text form of polynomials and polynomial matrices.
//!
//! Polynomials are signed sums of terms; a term is an optional integer (or
//! `p/q`) coefficient followed by juxtaposed variables with optional `^`
//! powers, e.g. `X^2-ZU` or `-YT^2U`. A `*` may separate factors.
//! Whitespace is insignificant.
//!
//! Matrices are rows of comma-separated polynomials between brackets, one
//! bracket group per row; `#` starts a comment running to end of line.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{HomPoly, Monomial};
use super::scalar::Domain;
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    names: &'a [String],
    end: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &str, offset: usize, names: &'a [String]) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + offset, c))
            .collect();
        Cursor {
            chars,
            at: 0,
            names,
            end: offset + text.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return None;
        }
        let digits: String = self.chars[start..self.at].iter().map(|&(_, c)| c).collect();
        Some(digits.parse().expect("digits"))
    }

    /// Longest declared variable name starting here.
    fn variable(&mut self) -> Option<usize> {
        let rest: String = self.chars[self.at..].iter().map(|&(_, c)| c).collect();
        let (idx, name) = self
            .names
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len())?;
        self.at += name.chars().count();
        Some(idx)
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let nvars = self.names.len();
        let mut coeff = BigRational::from_integer(1.into());
        let mut exps = vec![0u32; nvars];
        let mut saw_anything = false;
        if let Some(num) = self.integer() {
            saw_anything = true;
            let mut q = BigRational::from_integer(num);
            if self.peek() == Some('/') {
                self.at += 1;
                let den = self.integer().ok_or_else(|| self.err("expected denominator"))?;
                if den == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                q /= BigRational::from_integer(den);
            }
            coeff = q;
            if self.peek() == Some('*') {
                self.at += 1;
            }
        }
        loop {
            let before = self.pos();
            let Some(v) = self.variable() else {
                if self.peek() == Some('*') && saw_anything {
                    return Err(self.err("dangling '*'"));
                }
                break;
            };
            saw_anything = true;
            let mut e = 1u32;
            if self.peek() == Some('^') {
                self.at += 1;
                let p = self.integer().ok_or_else(|| self.err("expected exponent after '^'"))?;
                e = p
                    .try_into()
                    .map_err(|_| Error::Syntax { pos: before, msg: "exponent too large".into() })?;
            }
            exps[v] += e;
            if self.peek() == Some('*') {
                self.at += 1;
                if self.peek().is_none() {
                    return Err(self.err("dangling '*'"));
                }
            }
        }
        if !saw_anything {
            return Err(match self.peek() {
                Some(c) => self.err(format!("unexpected character '{c}'")),
                None => self.err("unexpected end of input"),
            });
        }
        Ok((Monomial(exps), coeff))
    }
}

fn parse_at(text: &str, offset: usize, names: &[String], domain: Domain) -> Result<HomPoly> {
    let mut cur = Cursor::new(text, offset, names);
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut raw = Vec::new();
    let mut first = true;
    loop {
        let neg = match cur.peek() {
            Some('+') => {
                cur.at += 1;
                false
            }
            Some('-') => {
                cur.at += 1;
                true
            }
            _ if first => false,
            Some(c) => return Err(cur.err(format!("expected '+' or '-', found '{c}'"))),
            None => break,
        };
        first = false;
        let (m, mut c) = cur.term()?;
        if neg {
            c = -c;
        }
        raw.push((m, c));
        if cur.peek().is_none() {
            break;
        }
    }
    let terms = raw
        .iter()
        .map(|(m, c)| Ok((m.clone(), domain.from_rational(c)?)))
        .collect::<Result<Vec<_>>>()?;
    HomPoly::from_terms(names.len(), terms).map_err(|e| match e {
        Error::Inhomogeneous { degrees, .. } => {
            let offending = raw
                .iter()
                .map(|(m, _)| {
                    let p = HomPoly::monomial(m.clone(), Domain::Rational.one());
                    format!("{} (deg {})", p.to_string_with(names), m.degree())
                })
                .collect::<Vec<_>>()
                .join(", ");
            Error::Inhomogeneous { degrees, offending }
        }
        other => other,
    })
}

/// Parse one homogeneous polynomial over the declared variables.
pub fn parse_poly(text: &str, names: &[String], domain: Domain) -> Result<HomPoly> {
    parse_at(text, 0, names, domain)
}

/// Parse a `vars: X,Y,Z` header line.
pub fn parse_vars_line(line: &str) -> Result<Vec<String>> {
    let rest = line
        .trim()
        .strip_prefix("vars:")
        .ok_or_else(|| Error::Syntax { pos: 0, msg: "expected 'vars:' header".into() })?;
    let names: Vec<String> = rest
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "no variables declared".into() });
    }
    for (i, n) in names.iter().enumerate() {
        if !n.chars().all(|c| c.is_alphanumeric() || c == '_')
            || n.chars().next().is_some_and(|c| c.is_ascii_digit())
        {
            return Err(Error::Syntax { pos: 0, msg: format!("invalid variable name '{n}'") });
        }
        if names[..i].contains(n) {
            return Err(Error::Syntax { pos: 0, msg: format!("duplicate variable '{n}'") });
        }
    }
    Ok(names)
}

/// Blank out `#` comments, keeping byte offsets intact.
pub(crate) fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|line| match line.find('#') {
            Some(i) => format!("{}{}", &line[..i], " ".repeat(line.len() - i)),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parse a matrix written as bracketed rows. Syntax and degree errors carry
/// the `(row, col)` of the offending entry.
pub fn parse_matrix(text: &str, names: &[String], domain: Domain) -> Result<Vec<Vec<HomPoly>>> {
    parse_matrix_at(&strip_comments(text), 0, names, domain)
}

pub(crate) fn parse_matrix_at(
    text: &str,
    offset: usize,
    names: &[String],
    domain: Domain,
) -> Result<Vec<Vec<HomPoly>>> {
    let mut rows = Vec::new();
    let mut rest = text;
    let mut base = offset;
    loop {
        let Some(open) = rest.find('[') else {
            if let Some((i, c)) = rest.char_indices().find(|(_, c)| !c.is_whitespace()) {
                return Err(Error::Syntax {
                    pos: base + i,
                    msg: format!("unexpected '{c}' outside a bracketed row"),
                });
            }
            break;
        };
        if let Some((i, c)) = rest[..open].char_indices().find(|(_, c)| !c.is_whitespace()) {
            return Err(Error::Syntax {
                pos: base + i,
                msg: format!("unexpected '{c}' outside a bracketed row"),
            });
        }
        let close = rest[open..].find(']').ok_or_else(|| Error::Syntax {
            pos: base + open,
            msg: "unclosed '['".into(),
        })? + open;
        let inner = &rest[open + 1..close];
        let row_idx = rows.len();
        let mut row = Vec::new();
        let mut cell_start = open + 1;
        for (col, cell) in inner.split(',').enumerate() {
            let p = parse_at(cell, base + cell_start, names, domain).map_err(|e| match e {
                Error::Syntax { pos, msg } => Error::Syntax {
                    pos,
                    msg: format!("entry ({row_idx}, {col}): {msg}"),
                },
                Error::Inhomogeneous { degrees, offending } => Error::Inhomogeneous {
                    degrees,
                    offending: format!("entry ({row_idx}, {col}): {offending}"),
                },
                other => other,
            })?;
            row.push(p);
            cell_start += cell.len() + 1;
        }
        rows.push(row);
        base += close + 1;
        rest = &rest[close + 1..];
    }
    if let Some(w) = rows.first().map(Vec::len) {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != w) {
            return Err(Error::Syntax {
                pos: offset,
                msg: format!("row {i} has {} entries, row 0 has {w}", r.len()),
            });
        }
    }
    Ok(rows)
}

/// Print a matrix in the bracketed-row form.
pub fn format_matrix(rows: &[Vec<HomPoly>], names: &[String]) -> String {
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|p| p.to_string_with(names)).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
