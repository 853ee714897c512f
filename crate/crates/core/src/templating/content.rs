//! The content file format: one `name = literal` entry per line, with blank
//! lines and `#` comment lines ignored. Literals cover the atomic values
//! plus tuples `(a, b)`, lists `[a; b]`, and injections `inj k lit`.

use crate::domains::Value;
use crate::syntax::Ident;
use crate::typecheck::ContentValue;

use super::{ContentRecord, ParseError};

pub fn parse_content(source: &str) -> Result<ContentRecord, ParseError> {
    let mut entries = std::collections::BTreeMap::new();
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(ParseError::new(line_no, 1, "expected `name = literal`"));
        };
        let name = Ident::new(raw[..eq].trim())
            .map_err(|e| ParseError::new(line_no, 1, e.to_string()))?;
        if entries.contains_key(&name) {
            return Err(ParseError::new(
                line_no,
                1,
                format!("duplicate key `{name}`"),
            ));
        }
        let mut p = LitParser {
            chars: raw[eq + 1..].chars().collect(),
            pos: 0,
            line: line_no,
            col_base: eq + 2,
        };
        let cv = p.lit()?;
        p.skip_ws();
        if p.peek().is_some() {
            return Err(p.err_here("unexpected text after literal"));
        }
        entries.insert(name, cv);
    }
    Ok(ContentRecord { entries })
}

struct LitParser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_base: usize,
}

impl LitParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col_base + self.pos, message)
    }

    fn lit(&mut self) -> Result<ContentValue, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('"') => self.string(),
            Some('(') => {
                self.bump();
                let mut items = vec![self.lit()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => {
                            self.bump();
                            items.push(self.lit()?);
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(ContentValue::Tuple(items));
                        }
                        _ => return Err(self.err_here("expected `,` or `)`")),
                    }
                }
            }
            Some('[') => {
                self.bump();
                self.skip_ws();
                if self.peek() == Some(']') {
                    self.bump();
                    return Ok(ContentValue::List(vec![]));
                }
                let mut items = vec![self.lit()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(';') => {
                            self.bump();
                            items.push(self.lit()?);
                        }
                        Some(']') => {
                            self.bump();
                            return Ok(ContentValue::List(items));
                        }
                        _ => return Err(self.err_here("expected `;` or `]`")),
                    }
                }
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(ContentValue::Atom(Value::IntV(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let word = self.word();
                match word.as_str() {
                    "true" => Ok(ContentValue::Atom(Value::BoolV(true))),
                    "false" => Ok(ContentValue::Atom(Value::BoolV(false))),
                    "inj" => {
                        let k = self.index()?;
                        let payload = self.lit()?;
                        Ok(ContentValue::Inj(k, Box::new(payload)))
                    }
                    other => Err(self.err_here(format!("unknown word `{other}` in literal"))),
                }
            }
            Some(c) => Err(self.err_here(format!("unexpected `{c}` in literal"))),
            None => Err(self.err_here("expected a literal")),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.bump();
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == digits_start {
            return Err(self.err_here("expected digits after `-`"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| self.err_here("integer out of range"))
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err_here("expected an injection index"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(self.err_here("injection index must be a positive integer")),
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn string(&mut self) -> Result<ContentValue, ParseError> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err_here("unterminated string")),
                Some('"') => return Ok(ContentValue::Atom(Value::str(&out))),
                Some('\\') => match self.bump() {
                    Some('"') => out.push('"'),
                    Some('\\') => out.push('\\'),
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some('r') => out.push('\r'),
                    Some(c) => return Err(self.err_here(format!("bad escape `\\{c}`"))),
                    None => return Err(self.err_here("unterminated string")),
                },
                Some(c) => out.push(c),
            }
        }
    }
}
