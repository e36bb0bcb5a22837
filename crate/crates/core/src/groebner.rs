//! Multivariate division, Buchberger's algorithm and ideal operations.
//!
//! All computations happen over Q. Inputs with integer coefficients are
//! embedded into the rational ring before anything else happens.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::number::NumberType;
use crate::poly::{coprime, divides, lcm, Monomial, MonomialOrder, Polynomial, Ring};

/// Quotients and remainder of dividing by a list of polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

fn same_ring(p: &Polynomial, divisors: &[Polynomial]) -> Result<()> {
    match divisors.iter().find(|g| g.ring() != p.ring()) {
        Some(g) => Err(Error::RingMismatch(format!(
            "cannot divide an element of {} by an element of {}",
            p.ring(),
            g.ring()
        ))),
        None => Ok(()),
    }
}

/// Full multivariate division. At each step the leading term is cancelled
/// by the first divisor (in list order) whose leading monomial divides it;
/// otherwise it moves to the remainder.
pub fn divide(p: &Polynomial, divisors: &[Polynomial]) -> Result<Division> {
    same_ring(p, divisors)?;
    let ring = p.ring();
    let mut quotients: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); divisors.len()];
    let mut remainder = Vec::new();
    let mut rest = p.clone();
    while let Some((m, c)) = rest.terms().first().cloned() {
        let hit = divisors.iter().enumerate().find(|(_, g)| {
            g.leading_monomial().is_some_and(|lm| divides(lm, &m))
        });
        match hit {
            Some((i, g)) => {
                let lm = g.leading_monomial().expect("nonzero divisor");
                let shift: Monomial = m.iter().zip(lm).map(|(a, b)| a - b).collect();
                let q = c / g.leading_coefficient().expect("nonzero divisor");
                rest = rest.sub(&g.mul_term(&shift, &q))?;
                quotients[i].push((shift, q));
            }
            None => {
                remainder.push((m, c));
                rest = rest.tail();
            }
        }
    }
    Ok(Division {
        quotients: quotients
            .into_iter()
            .map(|ts| Polynomial::from_terms(ring, ts))
            .collect(),
        remainder: Polynomial::from_sorted_terms(ring, remainder),
    })
}

pub fn normal_form(p: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    divide(p, divisors).map(|d| d.remainder)
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    same_ring(f, std::slice::from_ref(g))?;
    let (Some(mf), Some(mg)) = (f.leading_monomial(), g.leading_monomial()) else {
        return Err(Error::ZeroOperand("S-polynomial".into()));
    };
    let l = lcm(mf, mg);
    let shift = |m: &Monomial| -> Monomial { l.iter().zip(m).map(|(a, b)| a - b).collect() };
    let cf = f.leading_coefficient().expect("nonzero").recip();
    let cg = g.leading_coefficient().expect("nonzero").recip();
    f.mul_term(&shift(mf), &cf).sub(&g.mul_term(&shift(mg), &cg))
}

/// Counters from one Buchberger run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GbStats {
    /// Critical pairs taken off the queue.
    pub pairs: usize,
    /// Pairs skipped by the coprime leading monomial criterion.
    pub skipped: usize,
    /// S-polynomials whose normal form was zero.
    pub zero_reductions: usize,
    /// Size of the basis before inter-reduction.
    pub peak_basis: usize,
}

impl fmt::Display for GbStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs={} skipped={} zero_reductions={} peak_basis={}",
            self.pairs, self.skipped, self.zero_reductions, self.peak_basis
        )
    }
}

/// The reduced Gröbner basis of the ideal generated by `generators`, in
/// their ring made rational and re-ordered by `order`.
pub fn buchberger(generators: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    buchberger_with_stats(generators, order).map(|(gb, _)| gb)
}

pub fn buchberger_with_stats(
    generators: &[Polynomial],
    order: MonomialOrder,
) -> Result<(Vec<Polynomial>, GbStats)> {
    let Some(first) = generators.first() else {
        return Err(Error::EmptyInput("groebner".into()));
    };
    let ring = Arc::new(
        first
            .ring()
            .with_domain(NumberType::Rat)
            .with_order(order),
    );
    let mut basis = Vec::with_capacity(generators.len());
    for g in generators {
        if g.ring() != first.ring() {
            return Err(Error::RingMismatch(format!(
                "generators from {} and {}",
                first.ring(),
                g.ring()
            )));
        }
        let g = g.embed(&ring)?;
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    let mut stats = GbStats::default();
    if basis.is_empty() {
        return Ok((basis, stats));
    }

    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let lm = |p: &Polynomial| p.leading_monomial().expect("nonzero").clone();
    while !pairs.is_empty() {
        // Normal strategy: smallest lcm first, ties by generator index.
        let (at, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(a, b)), (_, &(c, d))| {
                let l1 = lcm(&lm(&basis[a]), &lm(&basis[b]));
                let l2 = lcm(&lm(&basis[c]), &lm(&basis[d]));
                order.compare(&l1, &l2).then((b, a).cmp(&(d, c)))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(at);
        stats.pairs += 1;
        if coprime(&lm(&basis[i]), &lm(&basis[j])) {
            stats.skipped += 1;
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j])?;
        let r = normal_form(&s, &basis)?;
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let k = basis.len();
        basis.push(r.monic());
        pairs.extend((0..k).map(|i| (i, k)));
    }
    stats.peak_basis = basis.len();
    Ok((reduce_basis(basis), stats))
}

/// Turns a Gröbner basis into the reduced one: drop elements whose leading
/// monomial is a multiple of another's, reduce each remaining element by
/// the others, make everything monic, sort descending.
pub fn reduce_basis(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let Some(first) = basis.first() else {
        return basis;
    };
    let ring = first.ring().clone();
    let order = ring.order();
    if basis.iter().any(|g| g.as_constant().is_some_and(|c| !c.is_zero())) {
        return vec![Polynomial::one(&ring)];
    }
    let lm = |p: &Polynomial| p.leading_monomial().expect("nonzero").clone();

    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let m = lm(g);
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let n = lm(h);
            j != i && divides(&n, &m) && (n != m || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }

    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let reduced = normal_form(&minimal[i], &others).expect("same ring");
        minimal[i] = reduced.monic();
    }
    minimal.sort_by(|a, b| order.compare(&lm(b), &lm(a)));
    minimal
}

/// Checks the Buchberger criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial]) -> Result<bool> {
    for (j, g) in basis.iter().enumerate() {
        for f in &basis[..j] {
            if !normal_form(&s_polynomial(f, g)?, basis)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Monic, and no term of any element divisible by another's leading monomial.
pub fn is_reduced(basis: &[Polynomial]) -> bool {
    basis.iter().enumerate().all(|(i, g)| {
        g.leading_coefficient().is_some_and(|c| c.is_one())
            && basis.iter().enumerate().all(|(j, h)| {
                i == j
                    || g.terms().iter().all(|(m, _)| {
                        !divides(h.leading_monomial().expect("nonzero"), m)
                    })
            })
    })
}

/// An ideal of a rational polynomial ring. Its reduced Gröbner basis is
/// computed on first use.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    gb: OnceLock<(Vec<Polynomial>, GbStats)>,
}

impl Ideal {
    /// Builds the ideal generated by `generators` inside `ring` (made rational).
    pub fn new(ring: &Ring, generators: &[Polynomial]) -> Result<Ideal> {
        let ring = Arc::new(ring.with_domain(NumberType::Rat));
        let generators = generators
            .iter()
            .map(|g| g.embed(&ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal {
            ring,
            generators,
            gb: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    fn gb_entry(&self) -> &(Vec<Polynomial>, GbStats) {
        self.gb.get_or_init(|| {
            if self.generators.is_empty() {
                return (Vec::new(), GbStats::default());
            }
            buchberger_with_stats(&self.generators, self.ring.order())
                .expect("generators share the ideal's ring")
        })
    }

    /// The reduced Gröbner basis.
    pub fn gb(&self) -> &[Polynomial] {
        &self.gb_entry().0
    }

    pub fn gb_stats(&self) -> GbStats {
        self.gb_entry().1
    }

    /// A new ideal whose generators are this one's reduced Gröbner basis.
    pub fn to_gb(&self) -> Ideal {
        let (gb, stats) = self.gb_entry().clone();
        Ideal {
            ring: self.ring.clone(),
            generators: gb.clone(),
            gb: OnceLock::from((gb, stats)),
        }
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        let p = p.embed(&self.ring).map_err(|e| match e {
            Error::Conversion(msg) => Error::RingMismatch(msg),
            other => other,
        })?;
        Ok(normal_form(&p, self.gb())?.is_zero())
    }

    /// Re-embeds into a larger ring.
    pub fn embed(&self, ring: &Ring) -> Result<Ideal> {
        Ideal::new(ring, &self.generators)
    }

    /// Same ideal, compared through reduced Gröbner bases in a common ring.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        let joint = self.ring.join(&other.ring);
        let a = self.embed(&joint)?;
        let b = other.embed(&joint)?;
        Ok(a.gb() == b.gb())
    }

    /// `self ∩ other` by elimination: with a fresh variable t ordered above
    /// everything, the elements free of t in a Gröbner basis of
    /// t·I + (1-t)·J generate the intersection.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        let joint = Arc::new(self.ring.join(&other.ring).with_domain(NumberType::Rat));
        let mut vars = Vec::with_capacity(joint.arity() + 1);
        // `#` cannot appear in a parsed identifier.
        vars.push("#t".to_string());
        vars.extend(joint.vars().iter().cloned());
        let elim = Arc::new(Ring::new_unchecked(
            NumberType::Rat,
            vars,
            MonomialOrder::Elim(1),
        ));
        let lift = |p: &Polynomial| -> Result<Polynomial> {
            let p = p.embed(&joint)?;
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut shifted = Vec::with_capacity(m.len() + 1);
                    shifted.push(0);
                    shifted.extend_from_slice(m);
                    (shifted, c.clone())
                })
                .collect();
            Ok(Polynomial::from_terms(&elim, terms))
        };
        let mut t = vec![0; elim.arity()];
        t[0] = 1;
        let one = BigRational::one();

        let mut combined = Vec::new();
        for f in &self.generators {
            combined.push(lift(f)?.mul_term(&t, &one));
        }
        for g in &other.generators {
            let g = lift(g)?;
            combined.push(g.sub(&g.mul_term(&t, &one))?);
        }
        if combined.iter().all(Polynomial::is_zero) {
            return Ideal::new(&joint, &[]);
        }
        let (gb, stats) = buchberger_with_stats(&combined, MonomialOrder::Elim(1))?;
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m[0] == 0))
            .map(|p| {
                let terms = p.terms().iter().map(|(m, c)| (m[1..].to_vec(), c.clone())).collect();
                Polynomial::from_terms(&joint, terms)
            })
            .collect();
        let generators = if kept.is_empty() {
            kept
        } else {
            buchberger(&kept, joint.order())?
        };
        Ok(Ideal {
            ring: joint,
            generators: generators.clone(),
            gb: OnceLock::from((generators, stats)),
        })
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ideal(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.same_ideal(other).unwrap_or(false)
    }
}
