//! Symbolic expression trees.
//!
//! Trees are built through the smart constructors on [`Expr`], which fold
//! numeric subterms as soon as both operands are numbers. Anything that
//! touches a symbol stays unevaluated.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::number::{BinOp, Number};

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A named indeterminate. Symbols compare by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(name: &str) -> Result<Sym> {
        if !is_identifier(name) {
            return Err(Error::BadSymbolName(name.to_string()));
        }
        Ok(Sym(Arc::from(name)))
    }

    /// Builds a symbol without validating its name. Used for internal
    /// variables that must never collide with user symbols.
    pub(crate) fn internal(name: &str) -> Sym {
        Sym(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(Number),
    Sym(Sym),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

impl Expr {
    pub fn num(n: impl Into<Number>) -> Expr {
        Expr::Num(n.into())
    }

    pub fn sym(name: &str) -> Result<Expr> {
        Sym::new(name).map(Expr::Sym)
    }

    /// Applies `op`, folding when both sides are numbers.
    pub fn binop(op: BinOp, left: Expr, right: Expr) -> Result<Expr> {
        match (left, right) {
            (Expr::Num(a), Expr::Num(b)) => Number::binop(op, &a, &b).map(Expr::Num),
            (l, r) => Ok(Expr::Binary(op, Box::new(l), Box::new(r))),
        }
    }

    pub fn neg(e: Expr) -> Expr {
        match e {
            Expr::Num(n) => Expr::Num(n.neg()),
            Expr::Neg(inner) => *inner,
            other => Expr::Neg(Box::new(other)),
        }
    }

    pub fn call(name: &str, args: Vec<Expr>) -> Result<Expr> {
        if !is_identifier(name) {
            return Err(Error::BadSymbolName(name.to_string()));
        }
        Ok(Expr::Call(name.to_string(), args))
    }

    pub fn as_number(&self) -> Option<&Number> {
        match self {
            Expr::Num(n) => Some(n),
            _ => None,
        }
    }

    /// Visits every node, parents before children.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Expr)) {
        visit(self);
        match self {
            Expr::Num(_) | Expr::Sym(_) => {}
            Expr::Neg(e) => e.walk(visit),
            Expr::Binary(_, l, r) => {
                l.walk(visit);
                r.walk(visit);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.walk(visit)),
        }
    }

    fn prec(&self) -> Prec {
        match self {
            Expr::Num(Number::Rat(_)) => Prec::Mul,
            Expr::Num(n) if n.is_negative() => Prec::Unary,
            Expr::Num(_) | Expr::Sym(_) | Expr::Call(..) => Prec::Atom,
            Expr::Neg(_) => Prec::Unary,
            Expr::Binary(op, ..) => Prec::of(*op),
        }
    }

    fn starts_with_minus(&self) -> bool {
        match self {
            Expr::Num(n) => n.is_negative(),
            Expr::Neg(_) => true,
            Expr::Binary(_, l, _) => l.starts_with_minus(),
            _ => false,
        }
    }
}

/// Binding strength of printed forms, loosest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Prec {
    Add,
    Mul,
    Unary,
    Pow,
    Atom,
}

impl Prec {
    pub(crate) fn of(op: BinOp) -> Prec {
        match op {
            BinOp::Add | BinOp::Sub => Prec::Add,
            BinOp::Mul | BinOp::Div => Prec::Mul,
            BinOp::Pow => Prec::Pow,
        }
    }

    /// Minimum precedence an operand needs to print without parentheses.
    pub(crate) fn operand_floor(op: BinOp, right: bool) -> Prec {
        match (op, right) {
            // `^` is right-associative and accepts a signed exponent.
            (BinOp::Pow, false) => Prec::Atom,
            (BinOp::Pow, true) => Prec::Unary,
            (op, false) => Prec::of(op),
            // Left-associative: an equal-precedence right operand needs parens.
            (BinOp::Add | BinOp::Sub, true) => Prec::Mul,
            (BinOp::Mul | BinOp::Div, true) => Prec::Unary,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_operand(f, e, Prec::Unary, false)
            }
            Expr::Binary(op, l, r) => {
                write_operand(f, l, Prec::operand_floor(*op, false), false)?;
                f.write_str(op.symbol())?;
                write_operand(f, r, Prec::operand_floor(*op, true), true)
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, floor: Prec, right: bool) -> fmt::Result {
    if e.prec() < floor || (right && e.starts_with_minus()) {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Expr {
        Expr::sym("x").unwrap()
    }
    fn y() -> Expr {
        Expr::sym("y").unwrap()
    }
    fn n(v: i64) -> Expr {
        Expr::num(v)
    }

    #[test]
    fn symbols() {
        assert_eq!(Sym::new("x").unwrap().to_string(), "x");
        assert_eq!(Sym::new("alpha_1").unwrap().name(), "alpha_1");
        assert_eq!(Sym::new(""), Err(Error::BadSymbolName(String::new())));
        assert!(Sym::new("1a").is_err());
        assert_eq!(Expr::sym("x").unwrap(), x());
    }

    #[test]
    fn toy_session_outputs() {
        assert_eq!(Expr::binop(BinOp::Add, n(1), x()).unwrap().to_string(), "1+x");
        assert_eq!(Expr::binop(BinOp::Add, x(), y()).unwrap().to_string(), "x+y");
        let six = Expr::binop(BinOp::Mul, n(2), n(3)).unwrap();
        assert_eq!(Expr::binop(BinOp::Add, six, x()).unwrap().to_string(), "6+x");
        assert_eq!(Expr::binop(BinOp::Add, n(1), n(2)).unwrap(), n(3));
    }

    #[test]
    fn negation() {
        assert_eq!(Expr::neg(n(5)), n(-5));
        assert_eq!(Expr::neg(x()).to_string(), "-x");
        assert_eq!(Expr::neg(Expr::neg(x())), x());
        let sq = Expr::binop(BinOp::Pow, x(), n(2)).unwrap();
        assert_eq!(Expr::neg(sq).to_string(), "-x^2");
        let prod = Expr::binop(BinOp::Mul, x(), y()).unwrap();
        assert_eq!(Expr::neg(prod).to_string(), "-(x*y)");
    }

    #[test]
    fn calls() {
        assert_eq!(Expr::call("sin", vec![x()]).unwrap().to_string(), "sin(x)");
        let arg = Expr::binop(BinOp::Add, n(1), y()).unwrap();
        assert_eq!(Expr::call("f", vec![x(), arg]).unwrap().to_string(), "f(x,1+y)");
        assert!(matches!(Expr::call("", vec![x()]), Err(Error::BadSymbolName(_))));
    }

    #[test]
    fn parenthesization() {
        let sum = Expr::binop(BinOp::Add, x(), y()).unwrap();
        let e = Expr::binop(BinOp::Mul, sum, Expr::sym("z").unwrap()).unwrap();
        assert_eq!(e.to_string(), "(x+y)*z");
        assert_eq!(Expr::binop(BinOp::Pow, x(), n(3)).unwrap().to_string(), "x^3");
        let diff = Expr::binop(BinOp::Sub, y(), n(1)).unwrap();
        assert_eq!(Expr::binop(BinOp::Sub, x(), diff).unwrap().to_string(), "x-(y-1)");
        let p = Expr::binop(BinOp::Pow, x(), n(2)).unwrap();
        assert_eq!(Expr::binop(BinOp::Pow, p.clone(), n(3)).unwrap().to_string(), "(x^2)^3");
        assert_eq!(Expr::binop(BinOp::Pow, n(2), p).unwrap().to_string(), "2^x^2");
        let half = Expr::num(Number::binop(BinOp::Div, &1.into(), &2.into()).unwrap());
        assert_eq!(Expr::binop(BinOp::Mul, x(), half.clone()).unwrap().to_string(), "x*(1/2)");
        assert_eq!(Expr::binop(BinOp::Mul, half, x()).unwrap().to_string(), "1/2*x");
        assert_eq!(Expr::binop(BinOp::Add, x(), n(-5)).unwrap().to_string(), "x+(-5)");
        assert_eq!(Expr::binop(BinOp::Pow, n(-5), x()).unwrap().to_string(), "(-5)^x");
    }

    #[test]
    fn division_by_zero_propagates() {
        assert_eq!(Expr::binop(BinOp::Div, n(1), n(0)), Err(Error::DivisionByZero));
        assert!(Expr::binop(BinOp::Div, x(), n(0)).is_ok());
    }
}
