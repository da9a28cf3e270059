//! Text notation for linear systems: `L3(d; m1^r1, m2^r2, ...)`.
//!
//! Exponents are optional and expand to repeated multiplicities; at most
//! eight multiplicities in total. Rendering groups equal runs and drops
//! trailing zeros, so `parse(render(x)) == x` for every valid class.

use fatpoints::DivisorClass;
use std::fmt;

/// A parse failure with the byte offset of the offending character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.pos + 1, self.msg)
    }
}

impl ParseError {
    /// The error message plus the input with a caret under the position.
    pub fn with_caret(&self, input: &str) -> String {
        let mut out = format!("{self}\n  {input}\n  ");
        for _ in 0..self.pos {
            out.push(' ');
        }
        out.push('^');
        out
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_spaces(&mut self) {
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", ch as char)))
        }
    }

    fn integer(&mut self, what: &str) -> Result<i64, ParseError> {
        if self.peek() == Some(b'-') {
            return Err(self.error(format!("{what} must be nonnegative")));
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(format!("expected {what}")));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<i64>().map_err(|_| ParseError {
            pos: start,
            msg: format!("{what} out of range"),
        })
    }
}

/// Parses `L3(d; m1^r1, ...)` into a divisor class, padding missing
/// multiplicities with zeros.
pub fn parse_system(input: &str) -> Result<DivisorClass, ParseError> {
    let mut cur = Cursor::new(input);
    cur.skip_spaces();
    if !input[cur.pos..].starts_with("L3") {
        return Err(cur.error("expected 'L3'"));
    }
    cur.pos += 2;
    cur.skip_spaces();
    cur.expect(b'(')?;
    cur.skip_spaces();
    let d = cur.integer("degree")?;
    cur.skip_spaces();

    let mut mults = Vec::new();
    if cur.peek() == Some(b';') {
        cur.pos += 1;
        loop {
            cur.skip_spaces();
            let m = cur.integer("multiplicity")?;
            let at = cur.pos;
            cur.skip_spaces();
            let reps = if cur.peek() == Some(b'^') {
                cur.pos += 1;
                cur.skip_spaces();
                let r = cur.integer("exponent")?;
                if r < 1 {
                    return Err(ParseError { pos: at, msg: "exponent must be at least 1".into() });
                }
                r as usize
            } else {
                1
            };
            if mults.len() + reps > 8 {
                return Err(ParseError { pos: at, msg: "more than 8 points".into() });
            }
            mults.extend(std::iter::repeat(m).take(reps));
            cur.skip_spaces();
            match cur.peek() {
                Some(b',') => cur.pos += 1,
                _ => break,
            }
        }
    }
    cur.expect(b')')?;
    cur.skip_spaces();
    if cur.pos != input.len() {
        return Err(cur.error("unexpected trailing input"));
    }
    mults.resize(8, 0);
    Ok(DivisorClass::from_parts(d, mults.try_into().unwrap()))
}

/// Renders a class in grouped notation, e.g. `L3(15;13,10,9,7,6,3^2,2)`.
pub fn render_system(l: &DivisorClass) -> String {
    let last = l.mults().iter().rposition(|&m| m != 0);
    let Some(last) = last else {
        return format!("L3({})", l.degree());
    };
    let mut parts = Vec::new();
    let mults = &l.mults()[..=last];
    let mut k = 0;
    while k < mults.len() {
        let mut run = 1;
        while k + run < mults.len() && mults[k + run] == mults[k] {
            run += 1;
        }
        if run >= 2 {
            parts.push(format!("{}^{}", mults[k], run));
        } else {
            parts.push(format!("{}", mults[k]));
        }
        k += run;
    }
    format!("L3({};{})", l.degree(), parts.join(","))
}
