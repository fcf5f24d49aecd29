//! Recursive-descent parser for structure equations in Salamon notation:
//!
//! ```text
//! list  := "(" entry ("," entry)* ")"
//! entry := "0" | sum
//! sum   := ["+"|"-"] term (("+"|"-") term)*
//! term  := [coeff ["*"]] "h" digit digit ["/" atom]
//! coeff := atom | "(" coeff-sum ")"
//! atom  := rational | [rational] ("r2"|"r3"|"r6")
//! ```
//!
//! Whitespace is ignored and `−` (U+2212) is accepted as a minus sign.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Coframe;
use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::scalars::{FieldElem, Rational};

/// Parses `text` into an anonymous coframe with `dim` generators.
pub fn parse_structure_equations(text: &str, dim: usize) -> Result<Coframe> {
    let mut p = Parser { src: text, pos: 0, dim };
    let entries = p.list()?;
    if entries.len() != dim {
        return Err(Error::Parse {
            offset: 0,
            message: format!("expected {dim} entries, found {}", entries.len()),
        });
    }
    let forms = entries
        .into_iter()
        .map(|terms| {
            let mut f = KForm::zero(dim, 2);
            for (i, j, c) in terms {
                f = f.add(&KForm::monomial(dim, &[i, j], c));
            }
            f
        })
        .collect();
    Coframe::new("custom", forms)
}

type Entry = Vec<(usize, usize, FieldElem)>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    dim: usize,
}

impl Parser<'_> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if !ch.is_whitespace() {
                break;
            }
            self.pos += ch.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.peek()?;
        self.pos += ch.len_utf8();
        Some(ch)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        let at = self.pos_after_ws();
        match self.bump() {
            Some(ch) if ch == want => Ok(()),
            Some(ch) => self.err(at, format!("expected `{want}`, found `{ch}`")),
            None => self.err(at, format!("expected `{want}`, found end of input")),
        }
    }

    fn pos_after_ws(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    /// `+1` / `-1` if the next character is a sign, consuming it.
    fn sign(&mut self) -> Option<i64> {
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(1)
            }
            Some('-') | Some('\u{2212}') => {
                self.bump();
                Some(-1)
            }
            _ => None,
        }
    }

    fn list(&mut self) -> Result<Vec<Entry>> {
        self.expect('(')?;
        let mut entries = vec![self.entry()?];
        loop {
            let at = self.pos_after_ws();
            match self.bump() {
                Some(',') => entries.push(self.entry()?),
                Some(')') => break,
                Some(ch) => return self.err(at, format!("expected `,` or `)`, found `{ch}`")),
                None => return self.err(at, "unterminated list, expected `)`"),
            }
        }
        let at = self.pos_after_ws();
        if at < self.src.len() {
            return self.err(at, "trailing input after `)`");
        }
        Ok(entries)
    }

    fn entry(&mut self) -> Result<Entry> {
        let start = self.pos_after_ws();
        let rest = &self.src[start..];
        if let Some(after) = rest.strip_prefix('0') {
            let after = after.trim_start();
            if after.starts_with(',') || after.starts_with(')') {
                self.pos = start + 1;
                return Ok(Vec::new());
            }
        }
        let mut terms = Vec::new();
        let s = self.sign().unwrap_or(1);
        terms.push(self.term(s)?);
        loop {
            match self.peek() {
                Some(',') | Some(')') | None => break,
                _ => {}
            }
            let at = self.pos_after_ws();
            let Some(s) = self.sign() else {
                let ch = self.peek().unwrap();
                return self.err(at, format!("expected `+`, `-`, `,` or `)`, found `{ch}`"));
            };
            terms.push(self.term(s)?);
        }
        Ok(terms)
    }

    fn term(&mut self, sign: i64) -> Result<(usize, usize, FieldElem)> {
        let mut c = FieldElem::integer(sign);
        if self.peek() != Some('h') {
            c = c * self.coeff()?;
            if self.peek() == Some('*') {
                self.bump();
            }
        }
        let at = self.pos_after_ws();
        if self.bump() != Some('h') {
            return self.err(at, "expected `h` followed by two indices");
        }
        let i = self.index()?;
        let j = self.index()?;
        if i == j {
            return self.err(at, format!("repeated index in h{i}{j}"));
        }
        if self.peek() == Some('/') {
            self.bump();
            let at = self.pos_after_ws();
            let divisor = self.atom()?;
            c = c.checked_div(&divisor).map_err(|_| Error::Parse { offset: at, message: "division by zero".into() })?;
        }
        Ok((i, j, c))
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        match self.src[self.pos..].chars().next() {
            Some(ch @ '1'..='9') => {
                self.pos += 1;
                let i = ch as usize - '0' as usize;
                if i > self.dim {
                    return self.err(at, format!("index {i} out of range 1..={}", self.dim));
                }
                Ok(i)
            }
            _ => self.err(at, "expected an index digit"),
        }
    }

    fn coeff(&mut self) -> Result<FieldElem> {
        if self.peek() == Some('(') {
            self.bump();
            let mut total = FieldElem::zero();
            let s = self.sign().unwrap_or(1);
            total = total + FieldElem::integer(s) * self.atom()?;
            while let Some(s) = self.sign() {
                total = total + FieldElem::integer(s) * self.atom()?;
            }
            self.expect(')')?;
            return Ok(total);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<FieldElem> {
        let at = self.pos_after_ws();
        let q = self.rational()?;
        let surd = if self.src[self.pos..].starts_with('r') {
            let root = self.src[self.pos + 1..].chars().next();
            let s = match root {
                Some('2') => FieldElem::sqrt2(),
                Some('3') => FieldElem::sqrt3(),
                Some('6') => FieldElem::sqrt6(),
                _ => return self.err(self.pos, "expected r2, r3 or r6"),
            };
            self.pos += 2;
            Some(s)
        } else {
            None
        };
        match (q, surd) {
            (Some(q), Some(s)) => Ok(FieldElem::rational(q) * s),
            (Some(q), None) => Ok(FieldElem::rational(q)),
            (None, Some(s)) => Ok(s),
            (None, None) => self.err(at, "expected a coefficient"),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        rest[..len].parse().ok()
    }

    fn rational(&mut self) -> Result<Option<Rational>> {
        let Some(num) = self.digits() else { return Ok(None) };
        let rest = &self.src[self.pos..];
        // `p/q` only when a digit follows the slash; `h16/r2` divides a term.
        if rest.starts_with('/') && rest[1..].starts_with(|c: char| c.is_ascii_digit()) {
            let at = self.pos + 1;
            self.pos += 1;
            let den = self.digits().expect("digit follows");
            if den.is_zero() {
                return self.err(at, "zero denominator");
            }
            return Ok(Some(Rational::new(num, den)));
        }
        Ok(Some(Rational::from_integer(num)))
    }
}
