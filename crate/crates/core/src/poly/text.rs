//! Plain-text form of rational polynomials: terms `c*t^k`, `t^k`, `c`
//! joined by `+`/`-`, highest power first, e.g. `t^4 + 1/2*t - 3`.
//!
//! The parser is whitespace-insensitive, accepts the Unicode minus `−`,
//! allows any single ASCII letter as the variable (consistently within one
//! input), tolerates a missing `*` between coefficient and variable, and
//! reports the byte position of the first offending character.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::numeric::Rational;
use crate::poly::Poly;

/// Parse failure with the byte position in the (minus-normalized) input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

impl From<ParseError> for crate::Error {
    fn from(e: ParseError) -> Self {
        crate::Error::InvalidArgument(format!("polynomial parse error {e}"))
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    var: Option<u8>,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn take_unsigned_integer(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a digit"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string())
    }

    /// `p` or `p/q`, unsigned.
    fn take_unsigned_rational(&mut self) -> Result<Rational, ParseError> {
        let numer = self.take_unsigned_integer()?;
        let mut text = numer;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let denom = self.take_unsigned_integer()?;
            if denom.chars().all(|c| c == '0') {
                return Err(self.err("zero denominator"));
            }
            text.push('/');
            text.push_str(&denom);
        }
        text.parse::<Rational>()
            .map_err(|e| self.err(format!("bad rational: {e}")))
    }

    /// Variable reference with optional `^exponent`; registers/checks the
    /// variable letter.
    fn take_var_power(&mut self) -> Result<usize, ParseError> {
        let b = self.peek().expect("caller checked a letter is present");
        match self.var {
            None => self.var = Some(b),
            Some(v) if v != b => {
                return Err(self.err(format!(
                    "variable '{}' conflicts with earlier '{}'",
                    b as char, v as char
                )))
            }
            _ => {}
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.take_unsigned_integer()?;
            e.parse::<usize>()
                .map_err(|_| self.err("exponent out of range"))
        } else {
            Ok(1)
        }
    }

    /// One term after its sign: `c`, `c*t^k`, `c t^k`, or `t^k`.
    fn take_term(&mut self) -> Result<(Rational, usize), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = self.take_unsigned_rational()?;
                self.skip_ws();
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        self.skip_ws();
                        if self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
                            let k = self.take_var_power()?;
                            Ok((c, k))
                        } else {
                            Err(self.err("expected a variable after '*'"))
                        }
                    }
                    Some(b) if b.is_ascii_alphabetic() => {
                        let k = self.take_var_power()?;
                        Ok((c, k))
                    }
                    _ => Ok((c, 0)),
                }
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let k = self.take_var_power()?;
                Ok((Rational::one(), k))
            }
            Some(_) => Err(self.err("expected a term")),
            None => Err(self.err("expected a term, found end of input")),
        }
    }
}

impl Poly<Rational> {
    /// Parse the text form. See the module documentation for the grammar.
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        // Normalize the Unicode minus up front; it is the only non-ASCII
        // character the grammar admits. Positions refer to the normalized
        // string (same length: '−' is 3 bytes, "-  " keeps offsets stable).
        let normalized: String = input.replace('\u{2212}', "-  ");
        let mut cur = Cursor {
            bytes: normalized.as_bytes(),
            pos: 0,
            var: None,
        };
        let mut acc: Vec<(Rational, usize)> = Vec::new();
        cur.skip_ws();
        if cur.peek().is_none() {
            return Err(cur.err("empty polynomial"));
        }
        // Optional leading sign.
        let mut negate = false;
        loop {
            match cur.peek() {
                Some(b'+') => cur.pos += 1,
                Some(b'-') => {
                    negate = !negate;
                    cur.pos += 1;
                }
                _ => break,
            }
            cur.skip_ws();
        }
        loop {
            let (c, k) = cur.take_term()?;
            acc.push((if negate { -c } else { c }, k));
            cur.skip_ws();
            match cur.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(b) => {
                    return Err(cur.err(format!(
                        "expected '+', '-' or end of input, found '{}'",
                        b as char
                    )))
                }
            }
            cur.pos += 1;
            cur.skip_ws();
            // Allow stacked signs after the operator, e.g. "+ -3".
            loop {
                match cur.peek() {
                    Some(b'+') => cur.pos += 1,
                    Some(b'-') => {
                        negate = !negate;
                        cur.pos += 1;
                    }
                    _ => break,
                }
                cur.skip_ws();
            }
        }
        let top = acc.iter().map(|&(_, k)| k).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); top + 1];
        for (c, k) in acc {
            coeffs[k] += c;
        }
        Ok(Poly::new(coeffs))
    }

    /// Emit the text form with the given variable letter.
    pub fn to_text(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let coeff_part = if mag.is_one() && k > 0 {
                None
            } else {
                Some(mag.to_string())
            };
            match (coeff_part, k) {
                (Some(c), 0) => out.push_str(&c),
                (None, _) => out.push_str(&power(var, k)),
                (Some(c), _) => {
                    out.push_str(&c);
                    out.push('*');
                    out.push_str(&power(var, k));
                }
            }
        }
        out
    }
}

fn power(var: char, k: usize) -> String {
    if k == 1 {
        var.to_string()
    } else {
        format!("{var}^{k}")
    }
}

/// Displays with variable `t`.
impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text('t'))
    }
}
