//! Abstract syntax, lexing, parsing, and pretty-printing.
//!
//! The command grammar:
//!
//! ```text
//! C ::= I = E | if (E) C else C | C ; C | read I | write E | { C }
//! E ::= true | false | <int> | <string> | I
//! ```
//!
//! `;` parses right-associatively and `else` binds to the nearest `if`.
//! Strict mode restricts integer literals to `0` and `1` and rejects string
//! literals, `read`, `write`, and grouping braces; what remains is the
//! minimal assignment/conditional/sequence language.

mod lexer;
mod parser;
mod pretty;

use std::fmt;
use std::sync::Arc;

pub use parser::{parse_com, parse_exp, parse_program};
pub use pretty::{pretty_print, pretty_print_exp};

/// Words that can never be used as identifiers.
pub const RESERVED_WORDS: [&str; 6] = ["true", "false", "if", "else", "read", "write"];

/// An identifier: `[A-Za-z_][A-Za-z0-9_]*`, not a reserved word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(Arc<str>);

impl Ident {
    pub fn new(name: &str) -> Result<Ident, InvalidIdent> {
        let mut chars = name.chars();
        let head_ok = chars
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
        if !head_ok || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(InvalidIdent {
                name: name.to_string(),
                reason: "must match [A-Za-z_][A-Za-z0-9_]*",
            });
        }
        if RESERVED_WORDS.contains(&name) {
            return Err(InvalidIdent {
                name: name.to_string(),
                reason: "is a reserved word",
            });
        }
        Ok(Ident(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ident({})", self.0)
    }
}

/// Rejected identifier text, with the violated rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidIdent {
    pub name: String,
    pub reason: &'static str,
}

impl fmt::Display for InvalidIdent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid identifier `{}`: {}", self.name, self.reason)
    }
}

impl std::error::Error for InvalidIdent {}

/// Expressions. Strict mode admits only `true`, `false`, `0`, `1`, and
/// identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exp {
    TrueLit,
    FalseLit,
    IntLit(i64),
    StrLit(Arc<str>),
    Var(Ident),
}

impl Exp {
    pub fn str_lit(s: &str) -> Exp {
        Exp::StrLit(Arc::from(s))
    }
}

/// Commands. `Read` and `Write` exist only in extended mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Com {
    Assign(Ident, Exp),
    If(Exp, Box<Com>, Box<Com>),
    Seq(Box<Com>, Box<Com>),
    Read(Ident),
    Write(Exp),
}

impl Com {
    pub fn seq(first: Com, second: Com) -> Com {
        Com::Seq(Box::new(first), Box::new(second))
    }

    pub fn if_(cond: Exp, then: Com, els: Com) -> Com {
        Com::If(cond, Box::new(then), Box::new(els))
    }
}

/// A parse failure, positioned at the offending token (1-based line/column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Wrong token: what was found and what would have been accepted.
    Unexpected {
        found: String,
        expected: Vec<&'static str>,
    },
    /// Extended-grammar construct in strict mode.
    StrictViolation { construct: String },
    UnterminatedString,
    BadEscape(char),
    IntOutOfRange,
    InvalidChar(char),
}

impl ParseError {
    pub(crate) fn at(line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line, col, kind }
    }

    /// True when the source was rejected only because of strict mode.
    pub fn is_strict_violation(&self) -> bool {
        matches!(self.kind, ParseErrorKind::StrictViolation { .. })
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "expected ")?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        let sep = if i + 1 == expected.len() { " or " } else { ", " };
                        f.write_str(sep)?;
                    }
                    f.write_str(e)?;
                }
                write!(f, ", found {found}")
            }
            ParseErrorKind::StrictViolation { construct } => {
                write!(f, "not allowed in strict mode: {construct}")
            }
            ParseErrorKind::UnterminatedString => write!(f, "unterminated string literal"),
            ParseErrorKind::BadEscape(c) => write!(f, "unknown escape sequence `\\{c}`"),
            ParseErrorKind::IntOutOfRange => write!(f, "integer literal out of range"),
            ParseErrorKind::InvalidChar(c) => write!(f, "unexpected character `{c}`"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Escapes a string body for literal syntax (used by the pretty-printer and
/// the canonical value form).
pub(crate) fn escape_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out
}
