//! Parser for group element text, shaped by the group spec the element
//! belongs to. The syntax is exactly the `Display` form:
//!   Z:    a signed integer, e.g. `-3`
//!   prod: `(a,b)` with factor elements inside
//!   free: `e` or letters `L…`/`R…` joined by `.`, e.g. `L1.R2.L-1`;
//!         non-integer letter payloads are parenthesized
//!   hnn:  `t^i.hN`, e.g. `t^2.h-3`

use std::fmt;

use aperiodic_core::groups::{GroupElement, GroupSpec, Letter, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElemParseError {
    pub message: String,
}

impl fmt::Display for ElemParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for ElemParseError {}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> ElemParseError {
        ElemParseError {
            message: format!("at offset {}: {}", self.pos, message.into()),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ElemParseError> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.bump();
                Ok(())
            }
            Some(got) => Err(self.error(format!("expected '{c}', found '{got}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<i64, ElemParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.bump();
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }
}

fn parse_inner(cur: &mut Cursor<'_>, spec: &GroupSpec) -> Result<GroupElement, ElemParseError> {
    cur.skip_ws();
    match spec {
        GroupSpec::Z => Ok(GroupElement::Int(cur.integer()?)),
        GroupSpec::Prod(a, b) => {
            cur.expect('(')?;
            let left = parse_inner(cur, a)?;
            cur.expect(',')?;
            let right = parse_inner(cur, b)?;
            cur.expect(')')?;
            Ok(GroupElement::pair(left, right))
        }
        GroupSpec::Free(a, b) => {
            if cur.peek() == Some('e') {
                cur.bump();
                return GroupElement::word(spec, Vec::new())
                    .map_err(|e| cur.error(e.to_string()));
            }
            let mut letters = Vec::new();
            loop {
                let side = match cur.bump() {
                    Some('L') => Side::Left,
                    Some('R') => Side::Right,
                    Some(c) => return Err(cur.error(format!("expected 'L' or 'R', found '{c}'"))),
                    None => return Err(cur.error("expected 'L' or 'R', found end of input")),
                };
                let factor = if side == Side::Left { a } else { b };
                let elem = match factor.as_ref() {
                    GroupSpec::Z | GroupSpec::Prod(_, _) => parse_inner(cur, factor)?,
                    _ => {
                        cur.expect('(')?;
                        let e = parse_inner(cur, factor)?;
                        cur.expect(')')?;
                        e
                    }
                };
                letters.push(Letter { side, elem });
                if cur.peek() == Some('.') {
                    cur.bump();
                } else {
                    break;
                }
            }
            GroupElement::word(spec, letters).map_err(|e| cur.error(e.to_string()))
        }
        GroupSpec::Hnn { base, .. } => {
            cur.expect('t')?;
            cur.expect('^')?;
            let power = cur.integer()?;
            cur.expect('.')?;
            cur.expect('h')?;
            let base_elem = parse_inner(cur, base)?;
            Ok(GroupElement::hnn(power, base_elem))
        }
    }
}

pub fn parse_element(spec: &GroupSpec, text: &str) -> Result<GroupElement, ElemParseError> {
    let mut cur = Cursor { src: text, pos: 0 };
    let elem = parse_inner(&mut cur, spec)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(elem)
}
