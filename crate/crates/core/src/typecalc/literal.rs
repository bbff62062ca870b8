//! Parser for type literals `d;m1[^e1],m2[^e2],...`, e.g. `13;8,4^6,2^2`.

use super::MultiplicityType;
use thiserror::Error;

/// A literal that could not be read. `column` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self, what: &str) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return match self.peek() {
                Some(c) => self.err(format!("expected {what}, found '{}'", c as char)),
                None => self.err(format!("expected {what}, found end of input")),
            };
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err(format!("{what} '{text}' does not fit in 64 bits"))
        })
    }
}

/// Reads a user-supplied type; negative multiplicities are rejected.
pub fn parse_literal(input: &str) -> Result<MultiplicityType, ParseError> {
    let mut cur = Cursor {
        src: input.as_bytes(),
        pos: 0,
    };
    let degree = cur.integer("degree")?;
    if !cur.eat(b';') {
        return cur.err("expected ';' after the degree");
    }
    let mut mults = Vec::new();
    loop {
        cur.skip_ws();
        let at = cur.pos;
        let value = cur.integer("multiplicity")?;
        if value < 0 {
            cur.pos = at;
            return cur.err(format!("negative multiplicity {value}"));
        }
        let mut reps = 1i64;
        if cur.eat(b'^') {
            cur.skip_ws();
            let at = cur.pos;
            reps = cur.integer("repetition count")?;
            if reps < 1 {
                cur.pos = at;
                return cur.err(format!("repetition count must be ≥ 1, got {reps}"));
            }
            if reps > 1_000_000 {
                cur.pos = at;
                return cur.err(format!("repetition count {reps} is too large"));
            }
        }
        mults.extend(std::iter::repeat_n(value, reps as usize));
        if cur.eat(b',') {
            continue;
        }
        cur.skip_ws();
        if cur.peek().is_some() {
            return cur.err(format!(
                "expected ',' or end of input, found '{}'",
                cur.peek().unwrap() as char
            ));
        }
        break;
    }
    Ok(MultiplicityType::new(degree, mults).expect("non-empty and non-negative"))
}
