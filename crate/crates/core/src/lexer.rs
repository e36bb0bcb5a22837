use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Pos, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Int,
    Ident,
    Str,
    Op,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Assign,
    Semi,
    Newline,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Int => "integer",
            TokenKind::Ident => "identifier",
            TokenKind::Str => "string",
            TokenKind::Op => "operator",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::LBracket => "'['",
            TokenKind::RBracket => "']'",
            TokenKind::Comma => "','",
            TokenKind::Dot => "'.'",
            TokenKind::Assign => "'='",
            TokenKind::Semi => "';'",
            TokenKind::Newline => "end of line",
            TokenKind::Eof => "end of input",
        };
        f.write_str(s)
    }
}

/// A lexeme. For `Str` tokens `text` holds the unquoted contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub pos: Pos,
}

impl Token {
    pub fn is_op(&self, op: &str) -> bool {
        self.kind == TokenKind::Op && self.text == op
    }

    pub fn int_value(&self) -> Option<BigInt> {
        match self.kind {
            TokenKind::Int => self.text.parse().ok(),
            _ => None,
        }
    }

    pub(crate) fn describe(&self) -> String {
        match self.kind {
            TokenKind::Newline | TokenKind::Eof => self.kind.to_string(),
            _ => format!("'{}'", self.text),
        }
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Cursor<'_> {
    fn pos(&self) -> Pos {
        Pos::new(self.line, self.col)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, out: &mut String, pred: impl Fn(char) -> bool) {
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
    }
}

/// Splits source text into tokens. The result always ends with `Eof`.
pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut cur = Cursor {
        chars: src.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();
    loop {
        let pos = cur.pos();
        let Some(c) = cur.peek() else {
            tokens.push(Token {
                kind: TokenKind::Eof,
                text: String::new(),
                pos,
            });
            return Ok(tokens);
        };
        let mut text = String::new();
        let kind = match c {
            ' ' | '\t' | '\r' => {
                cur.bump();
                continue;
            }
            '#' => {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
                continue;
            }
            '\\' => {
                cur.bump();
                while matches!(cur.peek(), Some(' ' | '\t' | '\r')) {
                    cur.bump();
                }
                match cur.peek() {
                    Some('\n') => {
                        cur.bump();
                        continue;
                    }
                    None => continue,
                    Some(_) => {
                        return Err(Error::Lex {
                            pos,
                            message: "'\\' must end the line".into(),
                        })
                    }
                }
            }
            '\n' => {
                cur.bump();
                text.push('\n');
                TokenKind::Newline
            }
            '0'..='9' => {
                cur.take_while(&mut text, |c| c.is_ascii_digit());
                TokenKind::Int
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                cur.take_while(&mut text, |c| c.is_ascii_alphanumeric() || c == '_');
                TokenKind::Ident
            }
            '\'' | '"' => {
                let quote = c;
                cur.bump();
                loop {
                    match cur.bump() {
                        Some(c) if c == quote => break,
                        Some('\n') | None => {
                            return Err(Error::Lex {
                                pos,
                                message: "unterminated string".into(),
                            })
                        }
                        Some(c) => text.push(c),
                    }
                }
                TokenKind::Str
            }
            '*' => {
                cur.bump();
                text.push('*');
                if cur.peek() == Some('*') {
                    cur.bump();
                    text.push('*');
                }
                TokenKind::Op
            }
            '+' | '-' | '/' | '^' => {
                cur.bump();
                text.push(c);
                TokenKind::Op
            }
            '(' | ')' | '[' | ']' | ',' | '.' | '=' | ';' => {
                cur.bump();
                text.push(c);
                match c {
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '[' => TokenKind::LBracket,
                    ']' => TokenKind::RBracket,
                    ',' => TokenKind::Comma,
                    '.' => TokenKind::Dot,
                    '=' => TokenKind::Assign,
                    _ => TokenKind::Semi,
                }
            }
            other => {
                return Err(Error::Lex {
                    pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        tokens.push(Token { kind, text, pos });
    }
}
