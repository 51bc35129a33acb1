//! Recursive-descent parser for group constructor expressions.
//!
//! Grammar:
//!   group := "Z"
//!          | "prod(" group "," group ")"
//!          | "free(" group "," group ")"
//!          | "hnn("  group "," ("id" | "inv") ")"
//!
//! Whitespace (including newlines) is allowed between tokens. Errors carry
//! 1-based line/column positions.

use std::fmt;

use aperiodic_core::groups::{Auto, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for (i, c) in self.src.char_indices() {
            if i >= pos {
                break;
            }
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, pos: usize, message: String) -> ParseError {
        let (line, col) = self.line_col(pos);
        ParseError { line, col, message }
    }

    fn error(&self, message: String) -> ParseError {
        self.error_at(self.pos, message)
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

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.pos += got.len_utf8();
                Ok(())
            }
            Some(got) => Err(self.error(format!("expected '{c}', found '{got}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    /// Read a maximal identifier (ASCII alphanumeric) and its start offset.
    fn ident(&mut self) -> Result<(&'a str, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if self.pos == start {
            match self.peek() {
                Some(c) => Err(self.error(format!("expected a name, found '{c}'"))),
                None => Err(self.error("expected a name, found end of input".into())),
            }
        } else {
            Ok((&self.src[start..self.pos], start))
        }
    }
}

fn parse_group(cur: &mut Cursor<'_>) -> Result<GroupSpec, ParseError> {
    let (name, start) = cur.ident()?;
    match name {
        "Z" => Ok(GroupSpec::Z),
        "prod" | "free" => {
            cur.expect('(')?;
            let left = parse_group(cur)?;
            cur.expect(',')?;
            let right = parse_group(cur)?;
            cur.expect(')')?;
            Ok(if name == "prod" {
                GroupSpec::prod(left, right)
            } else {
                GroupSpec::free(left, right)
            })
        }
        "hnn" => {
            cur.expect('(')?;
            cur.skip_ws();
            let base_start = cur.pos;
            let base = parse_group(cur)?;
            cur.expect(',')?;
            let (auto_name, auto_start) = cur.ident()?;
            let auto = match auto_name {
                "id" => Auto::Identity,
                "inv" => Auto::Inversion,
                other => {
                    return Err(
                        cur.error_at(auto_start, format!("expected 'id' or 'inv', found '{other}'"))
                    )
                }
            };
            cur.expect(')')?;
            GroupSpec::hnn(base, auto).map_err(|_| {
                cur.error_at(base_start, "hnn base must be Z".into())
            })
        }
        other => Err(cur.error_at(
            start,
            format!("expected 'Z', 'prod', 'free' or 'hnn', found '{other}'"),
        )),
    }
}

pub fn parse_spec(input: &str) -> Result<GroupSpec, ParseError> {
    let mut cur = Cursor::new(input);
    let spec = parse_group(&mut cur)?;
    cur.skip_ws();
    if let Some(c) = cur.peek() {
        return Err(cur.error(format!("unexpected trailing input starting at '{c}'")));
    }
    Ok(spec)
}
