//! Sparse multivariate polynomials over Z or Q.
//!
//! A [`Polynomial`] keeps its terms sorted descending under its ring's
//! monomial order, so the leading term is always `terms[0]`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::is_identifier;
use crate::number::{Number, NumberType};

/// Exponent vector, one entry per ring variable.
pub type Monomial = Vec<u32>;

pub fn total_degree(m: &[u32]) -> u64 {
    m.iter().map(|&e| u64::from(e)).sum()
}

/// True when `a` divides `b`.
pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    /// Graded reverse lexicographic.
    Graded,
    /// Lex on the first `k` variables, then graded on the rest.
    Elim(usize),
}

impl MonomialOrder {
    pub fn compare(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Graded => grevlex(a, b),
            MonomialOrder::Elim(k) => {
                let k = k.min(a.len());
                a[..k].cmp(&b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    /// Checked comparison for monomials of possibly different arity.
    pub fn try_compare(self, a: &[u32], b: &[u32]) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::ArityMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        Ok(self.compare(a, b))
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| {
        // The smaller exponent at the last differing position wins.
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Graded => f.write_str("graded"),
            MonomialOrder::Elim(k) => write!(f, "elim({k})"),
        }
    }
}

/// A polynomial ring: coefficient domain, ordered variables, monomial order.
/// The first listed variable is the most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    domain: NumberType,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(domain: NumberType, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::BadSymbolName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(Error::BadSymbolName(format!("{v} (listed twice)")));
            }
        }
        Ok(Ring::new_unchecked(domain, vars, order))
    }

    pub(crate) fn new_unchecked(domain: NumberType, vars: Vec<String>, order: MonomialOrder) -> Ring {
        Ring {
            domain,
            vars,
            order,
        }
    }

    pub fn domain(&self) -> NumberType {
        self.domain
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_domain(&self, domain: NumberType) -> Ring {
        Ring {
            domain,
            ..self.clone()
        }
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring {
            order,
            ..self.clone()
        }
    }

    /// The smallest ring containing both: the larger variable list when one
    /// contains the other, else the sorted union; joined domain; `self`'s order.
    pub fn join(&self, other: &Ring) -> Ring {
        let contains = |a: &Ring, b: &Ring| b.vars.iter().all(|v| a.vars.contains(v));
        let vars = if contains(self, other) {
            self.vars.clone()
        } else if contains(other, self) {
            other.vars.clone()
        } else {
            let mut all: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
            all.sort();
            all.dedup();
            all
        };
        Ring {
            domain: self.domain.join(other.domain),
            vars,
            order: self.order,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.domain, self.vars.join(","))?;
        if self.order != MonomialOrder::Graded {
            write!(f, " {}", self.order)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    /// Nonzero terms, sorted descending by the ring's order.
    terms: Vec<(Monomial, BigRational)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: &Number) -> Result<Polynomial> {
        let c = c.promote(ring.domain)?.to_rational();
        Ok(Polynomial::from_terms(ring, vec![(vec![0; ring.arity()], c)]))
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::from_terms(ring, vec![(vec![0; ring.arity()], BigRational::one())])
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Option<Polynomial> {
        let i = ring.var_index(name)?;
        let mut m = vec![0; ring.arity()];
        m[i] = 1;
        Some(Polynomial::from_terms(ring, vec![(m, BigRational::one())]))
    }

    /// Builds a polynomial from arbitrary terms: like monomials are merged,
    /// zeros dropped, and the result sorted. Coefficients are not checked
    /// against the ring's domain.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, BigRational)>) -> Polynomial {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.arity());
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already nonzero, merged and sorted descending.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, BigRational)>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Everything but the leading term.
    pub(crate) fn tail(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.get(1..).unwrap_or_default().to_vec(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// The constant value, when the polynomial has no variables in it.
    pub fn as_constant(&self) -> Option<Number> {
        match self.terms.as_slice() {
            [] => Some(Number::zero()),
            [(m, c)] if m.iter().all(|&e| e == 0) => Some(Number::from_rational(c.clone())),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &[u32]) -> BigRational {
        self.terms
            .iter()
            .find(|(t, _)| t.as_slice() == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| total_degree(m)).max()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{} and {} live in different rings",
                self.ring, other.ring
            )))
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &BigRational| if negate { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.compare(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), rhs(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                terms.push((m, ca * cb));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the term `c * m`. Order is preserved since monomial
    /// orders are compatible with multiplication.
    pub fn mul_term(&self, m: &[u32], c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.iter().zip(m).map(|(x, y)| x + y).collect(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        result
    }

    /// Divides by the leading coefficient. The zero polynomial is returned as is.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Re-expresses this polynomial in `target`, which must contain every
    /// variable that actually occurs and a domain at least as general.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if *self.ring == **target {
            return Ok(Polynomial {
                ring: target.clone(),
                terms: self.terms.clone(),
            });
        }
        if target.domain < self.ring.domain
            && self.terms.iter().any(|(_, c)| !c.is_integer())
        {
            return Err(Error::Conversion(format!(
                "{self} has rational coefficients and does not fit {target}"
            )));
        }
        let mut map = Vec::with_capacity(self.ring.arity());
        for (i, v) in self.ring.vars.iter().enumerate() {
            let used = self.terms.iter().any(|(m, _)| m[i] > 0);
            match target.var_index(v) {
                Some(j) => map.push(Some(j)),
                None if used => {
                    return Err(Error::Conversion(format!(
                        "variable {v} is not in {target}"
                    )))
                }
                None => map.push(None),
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = vec![0; target.arity()];
                for (i, e) in m.iter().enumerate() {
                    if let Some(j) = map[i] {
                        out[j] = *e;
                    }
                }
                (out, c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &[u32]) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(m) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(v)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if negative {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let abs = Number::from_rational(c.abs());
            let constant = m.iter().all(|&e| e == 0);
            if constant {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.ring.vars, m)?;
            }
        }
        Ok(())
    }
}

pub fn int_coefficient(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
