//! Precedence-climbing parser for the surface language.
//!
//! Loosest to tightest: assignment, `+ -`, `* /` (and juxtaposition when
//! implicit multiplication is on), unary `-`, `^`/`**` (right-associative),
//! then postfix calls, method calls and indexing.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Pos, Result};
use crate::expr::Prec;
use crate::lexer::{tokenize, Token, TokenKind};
use crate::number::BinOp;

/// An expression node. Equality ignores source positions.
#[derive(Debug, Clone)]
pub struct Ast {
    pub kind: AstKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AstKind {
    Int(BigInt),
    Str(String),
    Ident(String),
    Neg(Box<Ast>),
    BinOp(BinOp, Box<Ast>, Box<Ast>),
    List(Vec<Ast>),
    Call(String, Vec<Ast>),
    Method(Box<Ast>, String, Vec<Ast>),
    Index(Box<Ast>, Box<Ast>),
}

impl PartialEq for Ast {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Ast {
    fn new(kind: AstKind, pos: Pos) -> Ast {
        Ast { kind, pos }
    }

    fn prec(&self) -> Prec {
        match &self.kind {
            AstKind::Neg(_) => Prec::Unary,
            AstKind::BinOp(op, ..) => Prec::of(*op),
            _ => Prec::Atom,
        }
    }

    fn starts_with_minus(&self) -> bool {
        match &self.kind {
            AstKind::Neg(_) => true,
            AstKind::BinOp(_, l, _) => l.starts_with_minus(),
            _ => false,
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Ast]) -> fmt::Result {
    for (i, a) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Ast, floor: Prec, right: bool) -> fmt::Result {
    if e.prec() < floor || (right && e.starts_with_minus()) {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AstKind::Int(n) => write!(f, "{n}"),
            AstKind::Str(s) => write!(f, "'{s}'"),
            AstKind::Ident(s) => f.write_str(s),
            AstKind::Neg(e) => {
                f.write_str("-")?;
                write_operand(f, e, Prec::Unary, false)
            }
            AstKind::BinOp(op, l, r) => {
                write_operand(f, l, Prec::operand_floor(*op, false), false)?;
                f.write_str(op.symbol())?;
                write_operand(f, r, Prec::operand_floor(*op, true), true)
            }
            AstKind::List(items) => {
                f.write_str("[")?;
                write_list(f, items)?;
                f.write_str("]")
            }
            AstKind::Call(name, args) => {
                write!(f, "{name}(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
            AstKind::Method(recv, name, args) => {
                write_operand(f, recv, Prec::Atom, false)?;
                write!(f, ".{name}(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
            AstKind::Index(recv, idx) => {
                write_operand(f, recv, Prec::Atom, false)?;
                write!(f, "[{idx}]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Assign(String, Ast),
    /// `x, y = ...`, the one destructuring form.
    AssignMany(Vec<String>, Ast),
    Expr(Ast),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
    /// False when the statement was terminated by `;`.
    pub echo: bool,
}

/// Parses a token list with implicit multiplication off.
pub fn parse(tokens: &[Token]) -> Result<Vec<Stmt>> {
    Parser::new(tokens, None).statements()
}

/// Parses with juxtaposition read as multiplication. `is_callable` decides
/// whether `name(...)` is a call or a product.
pub fn parse_with_implicit_mul(
    tokens: &[Token],
    is_callable: &dyn Fn(&str) -> bool,
) -> Result<Vec<Stmt>> {
    Parser::new(tokens, Some(is_callable)).statements()
}

/// Tokenizes and parses in one step.
pub fn parse_source(src: &str) -> Result<Vec<Stmt>> {
    parse(&tokenize(src)?)
}

/// Parses a single expression (no statement terminators).
pub fn parse_expr(src: &str) -> Result<Ast> {
    let tokens = tokenize(src)?;
    let mut p = Parser::new(&tokens, None);
    let e = p.expr()?;
    p.expect(TokenKind::Eof)?;
    Ok(e)
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
    implicit: Option<&'a dyn Fn(&str) -> bool>,
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token], implicit: Option<&'a dyn Fn(&str) -> bool>) -> Self {
        Parser {
            tokens,
            at: 0,
            implicit,
        }
    }

    fn peek(&self) -> &Token {
        // The lexer guarantees a trailing Eof.
        &self.tokens[self.at.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, offset: usize) -> &Token {
        &self.tokens[(self.at + offset).min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.at.min(self.tokens.len() - 1)];
        if self.at < self.tokens.len() - 1 {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Parse {
            pos: t.pos,
            message: format!("expected {expected}, found {}", t.describe()),
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<&Token> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            Err(self.error(&kind.to_string()))
        }
    }

    fn statements(&mut self) -> Result<Vec<Stmt>> {
        if self.tokens.last().map(|t| t.kind) != Some(TokenKind::Eof) {
            return Err(Error::Parse {
                pos: self.tokens.last().map(|t| t.pos).unwrap_or_default(),
                message: "token stream must end with end of input".into(),
            });
        }
        let mut out = Vec::new();
        loop {
            match self.peek().kind {
                TokenKind::Eof => return Ok(out),
                TokenKind::Semi | TokenKind::Newline => {
                    self.advance();
                }
                _ => {
                    let pos = self.peek().pos;
                    let kind = self.statement()?;
                    let echo = match self.peek().kind {
                        TokenKind::Semi => {
                            self.advance();
                            false
                        }
                        TokenKind::Newline => {
                            self.advance();
                            true
                        }
                        TokenKind::Eof => true,
                        _ => return Err(self.error("end of statement")),
                    };
                    out.push(Stmt { kind, pos, echo });
                }
            }
        }
    }

    fn statement(&mut self) -> Result<StmtKind> {
        if let Some(targets) = self.assignment_targets() {
            self.at += targets.len() * 2;
            let value = self.expr()?;
            return Ok(if targets.len() == 1 {
                StmtKind::Assign(targets.into_iter().next().unwrap(), value)
            } else {
                StmtKind::AssignMany(targets, value)
            });
        }
        Ok(StmtKind::Expr(self.expr()?))
    }

    /// Looks ahead for `ident (, ident)* =` without consuming anything.
    fn assignment_targets(&self) -> Option<Vec<String>> {
        let mut names = Vec::new();
        let mut i = 0;
        loop {
            let t = self.peek_at(i);
            if t.kind != TokenKind::Ident {
                return None;
            }
            names.push(t.text.clone());
            match self.peek_at(i + 1).kind {
                TokenKind::Assign => return Some(names),
                TokenKind::Comma => i += 2,
                _ => return None,
            }
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut left = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                t if t.is_op("+") => BinOp::Add,
                t if t.is_op("-") => BinOp::Sub,
                _ => return Ok(left),
            };
            let pos = self.advance().pos;
            let right = self.multiplicative()?;
            left = Ast::new(AstKind::BinOp(op, Box::new(left), Box::new(right)), pos);
        }
    }

    fn starts_operand(&self) -> bool {
        matches!(
            self.peek().kind,
            TokenKind::Int | TokenKind::Ident | TokenKind::LParen
        )
    }

    fn multiplicative(&mut self) -> Result<Ast> {
        let mut left = self.unary()?;
        loop {
            let op_pos;
            let op = match self.peek() {
                t if t.is_op("*") => {
                    op_pos = self.advance().pos;
                    BinOp::Mul
                }
                t if t.is_op("/") => {
                    op_pos = self.advance().pos;
                    BinOp::Div
                }
                _ if self.implicit.is_some() && self.starts_operand() => {
                    let prev = &self.tokens[self.at - 1];
                    if prev.kind == TokenKind::Int && self.peek().kind == TokenKind::Int {
                        return Err(Error::Parse {
                            pos: self.peek().pos,
                            message: "juxtaposed integer literals need an explicit '*'".into(),
                        });
                    }
                    op_pos = self.peek().pos;
                    BinOp::Mul
                }
                _ => return Ok(left),
            };
            let right = self.unary()?;
            left = Ast::new(AstKind::BinOp(op, Box::new(left), Box::new(right)), op_pos);
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.peek().is_op("-") {
            let pos = self.advance().pos;
            let operand = self.unary()?;
            return Ok(Ast::new(AstKind::Neg(Box::new(operand)), pos));
        }
        if self.peek().is_op("+") {
            self.advance();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.postfix()?;
        if self.peek().is_op("^") || self.peek().is_op("**") {
            let pos = self.advance().pos;
            // Right-associative, and the exponent may carry a sign.
            let exponent = self.unary()?;
            return Ok(Ast::new(
                AstKind::BinOp(BinOp::Pow, Box::new(base), Box::new(exponent)),
                pos,
            ));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<Ast> {
        let mut e = self.primary()?;
        loop {
            match self.peek().kind {
                TokenKind::LParen => {
                    let AstKind::Ident(name) = &e.kind else {
                        if self.implicit.is_some() {
                            return Ok(e);
                        }
                        return Err(self.error("operator or end of statement"));
                    };
                    if let Some(is_callable) = self.implicit {
                        if !is_callable(name) {
                            return Ok(e);
                        }
                    }
                    let name = name.clone();
                    self.advance();
                    let args = self.sequence(TokenKind::RParen)?;
                    e = Ast::new(AstKind::Call(name, args), e.pos);
                }
                TokenKind::Dot => {
                    self.advance();
                    let name = self.expect(TokenKind::Ident)?.text.clone();
                    self.expect(TokenKind::LParen)?;
                    let args = self.sequence(TokenKind::RParen)?;
                    let pos = e.pos;
                    e = Ast::new(AstKind::Method(Box::new(e), name, args), pos);
                }
                TokenKind::LBracket => {
                    self.advance();
                    let idx = self.expr()?;
                    self.expect(TokenKind::RBracket)?;
                    let pos = e.pos;
                    e = Ast::new(AstKind::Index(Box::new(e), Box::new(idx)), pos);
                }
                _ => return Ok(e),
            }
        }
    }

    /// Comma-separated expressions up to `close`, which is consumed.
    fn sequence(&mut self, close: TokenKind) -> Result<Vec<Ast>> {
        let mut items = Vec::new();
        if self.peek().kind == close {
            self.advance();
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            match self.peek().kind {
                TokenKind::Comma => {
                    self.advance();
                }
                k if k == close => {
                    self.advance();
                    return Ok(items);
                }
                _ => return Err(self.error(&format!("',' or {close}"))),
            }
        }
    }

    fn primary(&mut self) -> Result<Ast> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Int => {
                self.advance();
                let n = t.int_value().ok_or_else(|| Error::Parse {
                    pos: t.pos,
                    message: format!("bad integer literal '{}'", t.text),
                })?;
                Ok(Ast::new(AstKind::Int(n), t.pos))
            }
            TokenKind::Str => {
                self.advance();
                Ok(Ast::new(AstKind::Str(t.text), t.pos))
            }
            TokenKind::Ident => {
                self.advance();
                Ok(Ast::new(AstKind::Ident(t.text), t.pos))
            }
            TokenKind::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(e)
            }
            TokenKind::LBracket => {
                self.advance();
                let items = self.sequence(TokenKind::RBracket)?;
                Ok(Ast::new(AstKind::List(items), t.pos))
            }
            _ => Err(self.error("an expression")),
        }
    }
}
