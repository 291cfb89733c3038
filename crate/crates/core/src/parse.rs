//! Text form of multivectors.
//!
//! ```text
//! element := term (('+' | '-') term)*
//! term    := coeff ws '[' factor (ws factor)* ']'
//! factor  := '1' | 'g' digit+        digits from {1,2,3}, no repeats
//! coeff   := rational | rational? 'i' | rational ('+'|'-') rational 'i'
//! ```
//!
//! Factors written out of order (`g31`) are canonicalized with the sign of
//! the sorting permutation. The zero element renders as `0`.

use crate::blade::{Blade, FactorBlade};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::scalar::GaussianRational;

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    /// Coefficient text runs up to whitespace or `[`.
    fn coeff(&mut self) -> Result<GaussianRational> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '[' {
                break;
            }
            self.pos += c.len_utf8();
        }
        let text = &self.src[start..self.pos];
        if text.is_empty() {
            return Err(syntax(start, "expected coefficient"));
        }
        text.parse().map_err(|_| syntax(start, format!("invalid coefficient `{text}`")))
    }

    fn factor(&mut self) -> Result<(i8, FactorBlade)> {
        let start = self.pos;
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok((1, FactorBlade::ONE))
            }
            Some('g') => {
                self.pos += 1;
                let mut word = Vec::new();
                while let Some(c) = self.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    let d = c as u8 - b'0';
                    if !(1..=3).contains(&d) {
                        return Err(syntax(self.pos, format!("generator index {d} not in 1..3")));
                    }
                    if word.contains(&d) {
                        return Err(syntax(self.pos, format!("repeated generator index {d}")));
                    }
                    word.push(d);
                    self.pos += 1;
                }
                if word.is_empty() {
                    return Err(syntax(start, "expected generator digits after `g`"));
                }
                FactorBlade::from_word(&word).map_err(|_| syntax(start, "bad generator word"))
            }
            Some(c) => Err(syntax(start, format!("expected factor, found `{c}`"))),
            None => Err(syntax(start, "expected factor, found end of input")),
        }
    }

    fn blade(&mut self) -> Result<(i8, Blade)> {
        let open = self.pos;
        if !self.eat('[') {
            return Err(syntax(self.pos, "expected `[`"));
        }
        let mut sign = 1i8;
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            if self.eat(']') {
                break;
            }
            if self.at_end() {
                return Err(syntax(self.pos, "unclosed `[`"));
            }
            if !factors.is_empty() && !self.src[..self.pos].ends_with(char::is_whitespace) {
                return Err(syntax(self.pos, "factors must be separated by whitespace"));
            }
            let (s, f) = self.factor()?;
            sign *= s;
            factors.push(f);
        }
        if factors.is_empty() {
            return Err(syntax(open, "empty blade"));
        }
        Ok((sign, Blade::new(factors)?))
    }
}

/// Parse an element; the factor count is taken from its terms.
pub fn parse_element(text: &str) -> Result<Multivector> {
    parse_terms(text, None)
}

/// Parse an element of known factor count; also accepts `0`.
pub fn parse_element_with_factors(text: &str, m: usize) -> Result<Multivector> {
    parse_terms(text, Some(m))
}

fn parse_terms(text: &str, expected: Option<usize>) -> Result<Multivector> {
    let mut cur = Cursor { src: text, pos: 0 };
    cur.skip_ws();
    if cur.src[cur.pos..].trim_end() == "0" {
        return match expected {
            Some(m) if m >= 1 => Ok(Multivector::zero(m)),
            Some(_) => Err(Error::NoFactors),
            None => Err(Error::UnknownFactorCount),
        };
    }
    let mut out: Option<Multivector> = expected.map(Multivector::zero);
    let mut negate = false;
    loop {
        cur.skip_ws();
        let term_start = cur.pos;
        let c = cur.coeff()?;
        cur.skip_ws();
        let (sign, blade) = cur.blade()?;
        let acc = out.get_or_insert_with(|| Multivector::zero(blade.num_factors()));
        if blade.num_factors() != acc.num_factors() {
            return Err(syntax(
                term_start,
                format!(
                    "term has {} factors, expected {}",
                    blade.num_factors(),
                    acc.num_factors()
                ),
            ));
        }
        let mut c = if sign < 0 { -c } else { c };
        if negate {
            c = -c;
        }
        acc.add_term(blade, c);
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        if cur.eat('+') {
            negate = false;
        } else if cur.eat('-') {
            negate = true;
        } else {
            return Err(syntax(cur.pos, "expected `+`, `-` or end of input"));
        }
        cur.skip_ws();
        if cur.at_end() {
            return Err(syntax(cur.pos, "dangling operator"));
        }
    }
    out.ok_or_else(|| syntax(0, "empty element"))
}

/// Canonical text: terms in blade order, coefficients signed.
pub fn render_element(mv: &Multivector) -> String {
    render_terms(mv.terms())
}

/// Render terms in the given order. Terms whose coefficient negates to a
/// plain value are joined with ` - `, all others with ` + `.
pub fn render_terms<'a>(terms: impl IntoIterator<Item = (&'a Blade, &'a GaussianRational)>) -> String {
    let mut out = String::new();
    for (b, c) in terms {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let negated = (-c).to_string();
        let subtract = text.strip_prefix('-') == Some(negated.as_str());
        match (out.is_empty(), subtract) {
            (true, _) => out.push_str(&format!("{text} {b}")),
            (false, true) => out.push_str(&format!(" - {negated} {b}")),
            (false, false) => out.push_str(&format!(" + {text} {b}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl std::fmt::Display for Multivector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_element(self))
    }
}

impl std::str::FromStr for Multivector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_element(s)
    }
}
