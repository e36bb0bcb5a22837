//! Moving between expression trees and polynomials, and inferring the ring
//! an expression naturally lives in.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{Expr, Sym};
use crate::number::{BinOp, Number, NumberType};
use crate::poly::{MonomialOrder, Polynomial, Ring};

/// Every symbol name occurring in `e`, sorted and deduplicated.
pub fn collect_symbols(e: &Expr) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    e.walk(&mut |node| {
        if let Expr::Sym(s) = node {
            out.insert(s.name().to_string());
        }
    });
    out
}

/// The coefficient domain `e` needs: `Rat` as soon as a rational literal or
/// a division appears anywhere in it.
pub fn most_general_number_type_of(e: &Expr) -> NumberType {
    let mut t = NumberType::Int;
    e.walk(&mut |node| match node {
        Expr::Num(n) => t = t.join(n.number_type()),
        Expr::Binary(BinOp::Div, ..) => t = NumberType::Rat,
        _ => {}
    });
    t
}

/// The smallest ring holding every expression: union of their symbols in
/// ascending order, joined coefficient domain.
pub fn infer_ring(es: &[Expr], order: MonomialOrder) -> Result<Ring> {
    if es.is_empty() {
        return Err(Error::EmptyInput("ring inference".into()));
    }
    let mut vars = BTreeSet::new();
    let mut domain = NumberType::Int;
    for e in es {
        vars.extend(collect_symbols(e));
        domain = domain.join(most_general_number_type_of(e));
    }
    Ok(Ring::new_unchecked(domain, vars.into_iter().collect(), order))
}

/// The image of `e` in `ring`.
pub fn expr_to_poly(ring: &Arc<Ring>, e: &Expr) -> Result<Polynomial> {
    match e {
        Expr::Num(n) => {
            if n.number_type() > ring.domain() {
                return Err(Error::Conversion(format!(
                    "coefficient {n} does not lie in {ring}"
                )));
            }
            Polynomial::constant(ring, n)
        }
        Expr::Sym(s) => Polynomial::var(ring, s.name()).ok_or_else(|| {
            Error::Conversion(format!("symbol {s} is not a variable of {ring}"))
        }),
        Expr::Neg(inner) => Ok(expr_to_poly(ring, inner)?.neg()),
        Expr::Binary(op, l, r) => {
            let left = expr_to_poly(ring, l)?;
            match op {
                BinOp::Add => left.add(&expr_to_poly(ring, r)?),
                BinOp::Sub => left.sub(&expr_to_poly(ring, r)?),
                BinOp::Mul => left.mul(&expr_to_poly(ring, r)?),
                BinOp::Div => {
                    let divisor = constant_divisor(r)?;
                    if ring.domain() < NumberType::Rat {
                        return Err(Error::Conversion(format!(
                            "division in {e} needs rational coefficients, ring is {ring}"
                        )));
                    }
                    Ok(left.scale(&divisor.to_rational().recip()))
                }
                BinOp::Pow => {
                    let Expr::Num(n) = r.as_ref() else {
                        return Err(Error::Conversion(format!(
                            "symbolic exponent in {e}"
                        )));
                    };
                    let k = n.to_exponent().map_err(|_| {
                        Error::Conversion(format!(
                            "exponent {n} in {e} is not a nonnegative integer"
                        ))
                    })?;
                    Ok(left.pow(k))
                }
            }
        }
        Expr::Call(name, _) => Err(Error::Conversion(format!(
            "function application {name}(...) is not a polynomial"
        ))),
    }
}

fn constant_divisor(e: &Expr) -> Result<Number> {
    // Numeric subtrees are folded at construction, so a number here is the
    // only way a divisor can be constant.
    match e {
        Expr::Num(n) if n.is_zero() => Err(Error::DivisionByZero),
        Expr::Num(n) => Ok(n.clone()),
        other => Err(Error::Conversion(format!(
            "symbolic denominator {other}"
        ))),
    }
}

/// Rebuilds an expression tree from a polynomial, terms in ring order.
/// The tree prints the same way the polynomial does.
pub fn poly_to_expr(p: &Polynomial) -> Expr {
    let vars = p.ring().vars();
    let mul = |a: Expr, b: Expr| Expr::Binary(BinOp::Mul, Box::new(a), Box::new(b));
    let mut acc: Option<Expr> = None;
    for (m, c) in p.terms() {
        let coeff = Number::from_rational(c.clone());
        let first = acc.is_none();
        // The leading term carries its own sign; later ones use `+`/`-`.
        let shown = if first { coeff.clone() } else { coeff.abs() };
        let mut factors: Vec<Expr> = vars
            .iter()
            .zip(m)
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                let s = Expr::Sym(Sym::internal(v));
                if e > 1 {
                    Expr::Binary(BinOp::Pow, Box::new(s), Box::new(Expr::num(i64::from(e))))
                } else {
                    s
                }
            })
            .collect();
        if factors.is_empty() {
            factors.push(Expr::Num(shown));
        } else if shown.abs().is_one() {
            if shown.is_negative() {
                factors[0] = Expr::neg(factors[0].clone());
            }
        } else {
            factors.insert(0, Expr::Num(shown));
        }
        let term = factors.into_iter().reduce(mul).expect("at least one factor");
        acc = Some(match acc {
            None => term,
            Some(a) => {
                let op = if coeff.is_negative() { BinOp::Sub } else { BinOp::Add };
                Expr::Binary(op, Box::new(a), Box::new(term))
            }
        });
    }
    acc.unwrap_or_else(|| Expr::Num(Number::zero()))
}
