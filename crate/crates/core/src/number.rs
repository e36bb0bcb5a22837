//! Exact integers and rationals, and the numeric end of the coercion lattice.
//!
//! A [`Number`] is always held in canonical form: a rational whose
//! denominator reduces to one is stored as an integer, so equality and
//! printing never have to look through representations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The arithmetic operators shared by numbers, expressions and the parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Numeric domains, ordered by inclusion: `Int < Rat`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NumberType {
    Int,
    Rat,
}

impl NumberType {
    /// Least upper bound of two domains.
    pub fn join(self, other: NumberType) -> NumberType {
        self.max(other)
    }
}

impl fmt::Display for NumberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumberType::Int => f.write_str("Z"),
            NumberType::Rat => f.write_str("Q"),
        }
    }
}

pub fn most_general_number_type(a: NumberType, b: NumberType) -> NumberType {
    a.join(b)
}

/// An exact number. `Rat` values always have a denominator greater than one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Number {
    Int(BigInt),
    Rat(BigRational),
}

impl Number {
    pub fn zero() -> Number {
        Number::Int(BigInt::zero())
    }

    pub fn one() -> Number {
        Number::Int(BigInt::one())
    }

    /// Builds the canonical representative of a rational value.
    pub fn from_rational(r: BigRational) -> Number {
        if r.denom().is_one() {
            Number::Int(r.numer().clone())
        } else {
            Number::Rat(r)
        }
    }

    pub fn number_type(&self) -> NumberType {
        match self {
            Number::Int(_) => NumberType::Int,
            Number::Rat(_) => NumberType::Rat,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Number::Int(n) => BigRational::from_integer(n.clone()),
            Number::Rat(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Number::Int(n) if n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Number::Int(n) if n.is_one())
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Number::Int(n) => n.is_negative(),
            Number::Rat(r) => r.is_negative(),
        }
    }

    pub fn neg(&self) -> Number {
        match self {
            Number::Int(n) => Number::Int(-n),
            Number::Rat(r) => Number::Rat(-r),
        }
    }

    pub fn abs(&self) -> Number {
        match self {
            Number::Int(n) => Number::Int(n.abs()),
            Number::Rat(r) => Number::Rat(r.abs()),
        }
    }

    /// Embeds `self` into domain `target`. Moving down the lattice is an error.
    ///
    /// Since integers and rationals share one value representation, the
    /// embedding returns the same canonical number.
    pub fn promote(&self, target: NumberType) -> Result<Number> {
        if target < self.number_type() {
            return Err(Error::Demotion {
                value: self.to_string(),
                target: target.to_string(),
            });
        }
        Ok(self.clone())
    }

    /// Exact arithmetic. `/` is field division; `**` needs a nonnegative
    /// integer exponent.
    pub fn binop(op: BinOp, a: &Number, b: &Number) -> Result<Number> {
        if let (Number::Int(x), Number::Int(y)) = (a, b) {
            match op {
                BinOp::Add => return Ok(Number::Int(x + y)),
                BinOp::Sub => return Ok(Number::Int(x - y)),
                BinOp::Mul => return Ok(Number::Int(x * y)),
                _ => {}
            }
        }
        let x = a.to_rational();
        match op {
            BinOp::Add => Ok(Number::from_rational(x + b.to_rational())),
            BinOp::Sub => Ok(Number::from_rational(x - b.to_rational())),
            BinOp::Mul => Ok(Number::from_rational(x * b.to_rational())),
            BinOp::Div => {
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Number::from_rational(x / b.to_rational()))
            }
            BinOp::Pow => {
                let e = b.to_exponent()?;
                Ok(Number::from_rational(num_traits::pow(x, e)))
            }
        }
    }

    /// Interprets `self` as a power exponent.
    pub fn to_exponent(&self) -> Result<usize> {
        match self {
            Number::Int(n) if !n.is_negative() => n
                .to_u32()
                .map(|e| e as usize)
                .ok_or_else(|| Error::UnsupportedExponent(format!("{n} is too large"))),
            other => Err(Error::UnsupportedExponent(format!(
                "{other} (exponents must be nonnegative integers)"
            ))),
        }
    }
}

impl From<i64> for Number {
    fn from(n: i64) -> Self {
        Number::Int(BigInt::from(n))
    }
}

impl From<BigInt> for Number {
    fn from(n: BigInt) -> Self {
        Number::Int(n)
    }
}

impl Ord for Number {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Number::Int(a), Number::Int(b)) => a.cmp(b),
            _ => self.to_rational().cmp(&other.to_rational()),
        }
    }
}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Int(n) => write!(f, "{n}"),
            Number::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}
