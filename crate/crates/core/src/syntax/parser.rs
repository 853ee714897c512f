//! Recursive-descent parser for expressions and commands.

use super::lexer::{tokenize, Token, TokenKind};
use super::{Com, Exp, ParseError, ParseErrorKind};

/// Parses a complete expression. The entire source must be consumed.
pub fn parse_exp(source: &str, strict: bool) -> Result<Exp, ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser::new(&tokens, strict);
    let e = p.exp()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses a complete command. The entire source must be consumed.
pub fn parse_com(source: &str, strict: bool) -> Result<Com, ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser::new(&tokens, strict);
    let c = p.com()?;
    p.expect_eof()?;
    Ok(c)
}

/// Parses a program file: like [`parse_com`], but source containing no tokens
/// (empty, whitespace, or comments only) is the empty program, `Ok(None)`.
pub fn parse_program(source: &str, strict: bool) -> Result<Option<Com>, ParseError> {
    let tokens = tokenize(source)?;
    if tokens[0].kind == TokenKind::Eof {
        return Ok(None);
    }
    let mut p = Parser::new(&tokens, strict);
    let c = p.com()?;
    p.expect_eof()?;
    Ok(Some(c))
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    strict: bool,
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token], strict: bool) -> Parser<'t> {
        Parser {
            tokens,
            pos: 0,
            strict,
        }
    }

    fn peek(&self) -> &'t Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, tok: &Token, expected: Vec<&'static str>) -> ParseError {
        ParseError::at(
            tok.line,
            tok.col,
            ParseErrorKind::Unexpected {
                found: tok.kind.describe(),
                expected,
            },
        )
    }

    fn strict_violation(&self, tok: &Token, construct: String) -> ParseError {
        ParseError::at(tok.line, tok.col, ParseErrorKind::StrictViolation { construct })
    }

    fn expect(&mut self, kind: TokenKind, describe: &'static str) -> Result<&'t Token, ParseError> {
        let tok = self.peek();
        if tok.kind == kind {
            Ok(self.bump())
        } else {
            Err(self.unexpected(tok, vec![describe]))
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        let tok = self.peek();
        if tok.kind == TokenKind::Eof {
            Ok(())
        } else {
            Err(self.unexpected(tok, vec!["end of input"]))
        }
    }

    /// com := item (';' com)?   — right-associative sequencing.
    fn com(&mut self) -> Result<Com, ParseError> {
        let first = self.item()?;
        if self.peek().kind == TokenKind::Semi {
            self.bump();
            let rest = self.com()?;
            Ok(Com::seq(first, rest))
        } else {
            Ok(first)
        }
    }

    /// item := I '=' E | 'if' '(' E ')' com 'else' com
    ///       | 'read' I | 'write' E | '{' com '}'
    fn item(&mut self) -> Result<Com, ParseError> {
        let tok = self.peek();
        match &tok.kind {
            TokenKind::Ident(id) => {
                let id = id.clone();
                self.bump();
                self.expect(TokenKind::Assign, "`=`")?;
                let rhs = self.exp()?;
                Ok(Com::Assign(id, rhs))
            }
            TokenKind::If => {
                self.bump();
                self.expect(TokenKind::LParen, "`(`")?;
                let cond = self.exp()?;
                self.expect(TokenKind::RParen, "`)`")?;
                let then = self.com()?;
                self.expect(TokenKind::Else, "`else`")?;
                let els = self.com()?;
                Ok(Com::if_(cond, then, els))
            }
            TokenKind::Read => {
                if self.strict {
                    return Err(self.strict_violation(tok, "`read` command".to_string()));
                }
                self.bump();
                let id_tok = self.peek();
                match &id_tok.kind {
                    TokenKind::Ident(id) => {
                        let id = id.clone();
                        self.bump();
                        Ok(Com::Read(id))
                    }
                    _ => Err(self.unexpected(id_tok, vec!["identifier"])),
                }
            }
            TokenKind::Write => {
                if self.strict {
                    return Err(self.strict_violation(tok, "`write` command".to_string()));
                }
                self.bump();
                let rhs = self.exp()?;
                Ok(Com::Write(rhs))
            }
            TokenKind::LBrace => {
                if self.strict {
                    return Err(self.strict_violation(tok, "grouping braces".to_string()));
                }
                self.bump();
                let inner = self.com()?;
                self.expect(TokenKind::RBrace, "`}`")?;
                Ok(inner)
            }
            _ => Err(self.unexpected(tok, vec!["identifier", "`if`", "`read`", "`write`", "`{`"])),
        }
    }

    /// exp := 'true' | 'false' | <int> | <string> | I
    fn exp(&mut self) -> Result<Exp, ParseError> {
        let tok = self.peek();
        match &tok.kind {
            TokenKind::True => {
                self.bump();
                Ok(Exp::TrueLit)
            }
            TokenKind::False => {
                self.bump();
                Ok(Exp::FalseLit)
            }
            TokenKind::Int { value, signed } => {
                if self.strict && (*signed || !matches!(value, 0 | 1)) {
                    return Err(
                        self.strict_violation(tok, format!("integer literal `{value}` (only 0 and 1)"))
                    );
                }
                let value = *value;
                self.bump();
                Ok(Exp::IntLit(value))
            }
            TokenKind::Str(s) => {
                if self.strict {
                    return Err(self.strict_violation(tok, "string literal".to_string()));
                }
                let s = s.clone();
                self.bump();
                Ok(Exp::StrLit(s))
            }
            TokenKind::Ident(id) => {
                let id = id.clone();
                self.bump();
                Ok(Exp::Var(id))
            }
            _ => Err(self.unexpected(
                tok,
                vec!["`true`", "`false`", "integer literal", "string literal", "identifier"],
            )),
        }
    }
}
