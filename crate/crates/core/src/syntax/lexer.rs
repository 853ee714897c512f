//! Tokenizer. Whitespace-insensitive; `//` comments run to end of line.

use std::sync::Arc;

use super::{Ident, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(Ident),
    /// `signed` records whether the literal was written with a leading `-`,
    /// which strict mode rejects even for `-0`.
    Int {
        value: i64,
        signed: bool,
    },
    Str(Arc<str>),
    True,
    False,
    If,
    Else,
    Read,
    Write,
    Assign,
    Semi,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Eof,
}

impl TokenKind {
    /// Short description used in "found ..." diagnostics.
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(id) => format!("identifier `{id}`"),
            TokenKind::Int { value, .. } => format!("integer literal `{value}`"),
            TokenKind::Str(_) => "string literal".to_string(),
            TokenKind::True => "`true`".to_string(),
            TokenKind::False => "`false`".to_string(),
            TokenKind::If => "`if`".to_string(),
            TokenKind::Else => "`else`".to_string(),
            TokenKind::Read => "`read`".to_string(),
            TokenKind::Write => "`write`".to_string(),
            TokenKind::Assign => "`=`".to_string(),
            TokenKind::Semi => "`;`".to_string(),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
            TokenKind::LBrace => "`{`".to_string(),
            TokenKind::RBrace => "`}`".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

struct Lexer<'s> {
    src: &'s [u8],
    pos: usize,
    line: usize,
    col: usize,
}

pub(crate) fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let mut lx = Lexer {
        src: source.as_bytes(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();
    loop {
        let tok = lx.next_token()?;
        let done = tok.kind == TokenKind::Eof;
        tokens.push(tok);
        if done {
            return Ok(tokens);
        }
    }
}

impl<'s> Lexer<'s> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn skip_trivia(&mut self) {
        while let Some(b) = self.peek() {
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'/' if self.src.get(self.pos + 1) == Some(&b'/') => {
                    while let Some(b) = self.peek() {
                        if b == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, ParseError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        let at = |kind| Token { kind, line, col };
        let Some(b) = self.peek() else {
            return Ok(at(TokenKind::Eof));
        };
        match b {
            b'=' => {
                self.bump();
                Ok(at(TokenKind::Assign))
            }
            b';' => {
                self.bump();
                Ok(at(TokenKind::Semi))
            }
            b'(' => {
                self.bump();
                Ok(at(TokenKind::LParen))
            }
            b')' => {
                self.bump();
                Ok(at(TokenKind::RParen))
            }
            b'{' => {
                self.bump();
                Ok(at(TokenKind::LBrace))
            }
            b'}' => {
                self.bump();
                Ok(at(TokenKind::RBrace))
            }
            b'"' => {
                self.bump();
                let body = self.string_body(line, col)?;
                Ok(at(TokenKind::Str(body)))
            }
            b'-' | b'0'..=b'9' => {
                let signed = b == b'-';
                let start = self.pos;
                self.bump();
                if signed && !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(ParseError::at(line, col, ParseErrorKind::InvalidChar('-')));
                }
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let value = text
                    .parse::<i64>()
                    .map_err(|_| ParseError::at(line, col, ParseErrorKind::IntOutOfRange))?;
                Ok(at(TokenKind::Int { value, signed }))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.bump();
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let kind = match word {
                    "true" => TokenKind::True,
                    "false" => TokenKind::False,
                    "if" => TokenKind::If,
                    "else" => TokenKind::Else,
                    "read" => TokenKind::Read,
                    "write" => TokenKind::Write,
                    _ => TokenKind::Ident(Ident::new(word).expect("lexed word is a valid ident")),
                };
                Ok(at(kind))
            }
            other => Err(ParseError::at(
                line,
                col,
                ParseErrorKind::InvalidChar(char::from(other)),
            )),
        }
    }

    /// Reads a string body after the opening quote. Escapes: `\" \\ \n \t \r`.
    /// Raw newlines terminate the literal with an error.
    fn string_body(&mut self, line: usize, col: usize) -> Result<Arc<str>, ParseError> {
        let mut body = String::new();
        loop {
            let (el, ec) = (self.line, self.col);
            match self.bump() {
                None => return Err(ParseError::at(line, col, ParseErrorKind::UnterminatedString)),
                Some(b'"') => return Ok(Arc::from(body.as_str())),
                Some(b'\n') | Some(b'\r') => {
                    return Err(ParseError::at(line, col, ParseErrorKind::UnterminatedString))
                }
                Some(b'\\') => match self.bump() {
                    Some(b'"') => body.push('"'),
                    Some(b'\\') => body.push('\\'),
                    Some(b'n') => body.push('\n'),
                    Some(b't') => body.push('\t'),
                    Some(b'r') => body.push('\r'),
                    Some(other) => {
                        return Err(ParseError::at(
                            el,
                            ec,
                            ParseErrorKind::BadEscape(char::from(other)),
                        ))
                    }
                    None => {
                        return Err(ParseError::at(line, col, ParseErrorKind::UnterminatedString))
                    }
                },
                Some(b) if b < 0x80 => body.push(char::from(b)),
                Some(b) => {
                    // Reassemble a multi-byte UTF-8 scalar; the source is valid UTF-8.
                    let len = match b {
                        0xC0..=0xDF => 2,
                        0xE0..=0xEF => 3,
                        _ => 4,
                    };
                    let start = self.pos - 1;
                    for _ in 1..len {
                        self.bump();
                    }
                    let s = std::str::from_utf8(&self.src[start..start + len]).unwrap();
                    body.push_str(s);
                }
            }
        }
    }
}
