//! Join expressions.
//!
//! ```text
//! expr := atom ('*' atom)*
//! atom := 'S' <odd-dim> | 'Sk(' k ')' | 'F(' d ',' n ')' | 'T(' p1 ',' p2 ',' p3 ')'
//!       | 'Omega(' k [',' 'order=' m] ')' | '@' <catalog-name>
//! ```
//!
//! `*` associates to the left. Whitespace is allowed between tokens.

use std::fmt;

use num_bigint::BigUint;
use sejoin_core::catalog::{
    make_circle, make_del_pezzo_bundle, make_fermat_link, make_sphere, make_three_sasakian,
    make_toric_omega, Catalog,
};
use sejoin_core::join::JoinExpr;
use sejoin_core::SeSpace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    /// Malformed input; `column` is 1-based.
    #[error("parse error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown atom `{name}` at column {column}")]
    UnknownAtom { column: usize, name: String },
    /// Well-formed atom whose parameters the constructor rejects.
    #[error("invalid atom at column {column}: {source}")]
    Invalid {
        column: usize,
        source: sejoin_core::Error,
    },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. }
            | ParseError::UnknownAtom { column, .. }
            | ParseError::Invalid { column, .. } => *column,
        }
    }

    /// True for errors in the text itself, as opposed to rejected parameters.
    pub fn is_syntax(&self) -> bool {
        !matches!(self, ParseError::Invalid { .. })
    }

    /// The input with a caret under the offending column.
    pub fn pointer(&self, input: &str) -> String {
        format!("  {input}\n  {}^", " ".repeat(self.column().saturating_sub(1)))
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    catalog: &'a Catalog,
}

pub fn parse_expr(text: &str, catalog: &Catalog) -> Result<JoinExpr, ParseError> {
    let mut p = Parser { text, pos: 0, catalog };
    let mut expr = JoinExpr::leaf(p.atom()?);
    loop {
        p.skip_ws();
        if p.eof() {
            return Ok(expr);
        }
        p.expect('*')?;
        expr = JoinExpr::join(expr, JoinExpr::leaf(p.atom()?));
    }
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eof(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => self.syntax(format!("expected `{c}`, found `{d}`")),
            None => self.syntax(format!("expected `{c}`, found end of input")),
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return match self.peek() {
                Some(c) => self.syntax(format!("expected a number, found `{c}`")),
                None => self.syntax("expected a number, found end of input"),
            };
        }
        let value = self.rest()[..digits].parse::<u64>();
        match value {
            Ok(v) => {
                self.pos += digits;
                Ok(v)
            }
            Err(_) => self.syntax("number does not fit in 64 bits"),
        }
    }

    fn args(&mut self, count: usize) -> Result<Vec<u64>, ParseError> {
        self.expect('(')?;
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                self.expect(',')?;
            }
            out.push(self.number()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn word(&mut self) -> &'a str {
        let len = self
            .rest()
            .char_indices()
            .find(|(_, c)| !c.is_ascii_alphanumeric())
            .map_or(self.rest().len(), |(i, _)| i);
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    fn atom(&mut self) -> Result<SeSpace, ParseError> {
        self.skip_ws();
        let column = self.column();
        let invalid = |source| ParseError::Invalid { column, source };
        if self.peek() == Some('@') {
            self.pos += 1;
            let len = self
                .rest()
                .find(|c: char| c.is_whitespace() || c == '*')
                .unwrap_or(self.rest().len());
            let name = &self.rest()[..len];
            if name.is_empty() {
                return self.syntax("expected a catalog name after `@`");
            }
            self.pos += len;
            return self.catalog.get(name).cloned().ok_or(ParseError::UnknownAtom {
                column,
                name: format!("@{name}"),
            });
        }
        let word = self.word();
        match word {
            "" => match self.peek() {
                Some(c) => self.syntax(format!("expected an atom, found `{c}`")),
                None => self.syntax("expected an atom, found end of input"),
            },
            "Sk" => {
                let a = self.args(1)?;
                make_del_pezzo_bundle(a[0]).map_err(invalid)
            }
            "F" => {
                let a = self.args(2)?;
                make_fermat_link(a[0], a[1]).map_err(invalid)
            }
            "T" => {
                let a = self.args(3)?;
                make_three_sasakian(a[0], a[1], a[2]).map_err(invalid)
            }
            "Omega" => self.omega().and_then(|(k, m)| make_toric_omega(k, m).map_err(invalid)),
            w if w.starts_with('S') && w.len() > 1 && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
                let dim: u64 = w[1..].parse().map_err(|_| ParseError::Syntax {
                    column,
                    message: "sphere dimension does not fit in 64 bits".into(),
                })?;
                match dim {
                    1 => Ok(make_circle()),
                    d if d % 2 == 1 => make_sphere((d - 1) / 2).map_err(invalid),
                    _ => Err(ParseError::Syntax {
                        column,
                        message: format!("sphere dimension must be odd, got {dim}"),
                    }),
                }
            }
            w => Err(ParseError::UnknownAtom {
                column,
                name: w.to_string(),
            }),
        }
    }

    fn omega(&mut self) -> Result<(u64, Option<BigUint>), ParseError> {
        self.expect('(')?;
        let k = self.number()?;
        self.skip_ws();
        let mut order = None;
        if self.peek() == Some(',') {
            self.pos += 1;
            self.skip_ws();
            if self.word() != "order" {
                return self.syntax("expected `order=`");
            }
            self.expect('=')?;
            order = Some(BigUint::from(self.number()?));
        }
        self.expect(')')?;
        Ok((k, order))
    }
}

/// Canonical text of a parsed expression: leaf names joined by ` * `.
pub struct Pretty<'a>(pub &'a JoinExpr);

impl fmt::Display for Pretty<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.leaves().into_iter().map(|s| s.name.as_str()).collect();
        f.write_str(&names.join(" * "))
    }
}
