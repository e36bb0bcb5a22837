#![allow(dead_code)]

use std::sync::Arc;

use casdsl::{MonomialOrder, NumberType, Polynomial, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub fn qring(vars: &[&str], order: MonomialOrder) -> Arc<Ring> {
    Arc::new(
        Ring::new(
            NumberType::Rat,
            vars.iter().map(|s| s.to_string()).collect(),
            order,
        )
        .unwrap(),
    )
}

/// A random polynomial with at most `max_terms` terms of total degree at
/// most `max_deg` and small rational coefficients.
pub fn random_poly(rng: &mut impl Rng, ring: &Arc<Ring>, max_deg: u32, max_terms: usize) -> Polynomial {
    let n = ring.arity();
    let terms = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let mut m = vec![0u32; n];
            let deg = rng.gen_range(0..=max_deg);
            for _ in 0..deg {
                m[rng.gen_range(0..n)] += 1;
            }
            let num = rng.gen_range(-5i64..=5);
            let den = rng.gen_range(1i64..=3);
            (m, BigRational::new(BigInt::from(num), BigInt::from(den)))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Between one and `max_gens` nonzero random generators.
pub fn random_generators(
    rng: &mut impl Rng,
    ring: &Arc<Ring>,
    max_deg: u32,
    max_gens: usize,
) -> Vec<Polynomial> {
    let count = rng.gen_range(1..=max_gens);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_poly(rng, ring, max_deg, 3);
        if !p.is_zero() {
            out.push(p);
        }
    }
    out
}
