mod common;

use casdsl::convert::{collect_symbols, expr_to_poly, infer_ring, poly_to_expr};
use casdsl::groebner::{buchberger, divide, is_groebner_basis, is_reduced, normal_form};
use casdsl::{BinOp, Expr, Interpreter, MonomialOrder, Number, Value};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use common::{qring, random_generators, random_poly};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (-9i64..10).prop_map(Expr::num),
        prop::sample::select(vec!["x", "y", "z"]).prop_map(|s| Expr::sym(s).unwrap()),
    ]
}

/// Random trees built only through the smart constructors, powers kept to
/// small literal exponents and divisions to nonzero literal divisors.
fn expr_tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), 0usize..3).prop_map(|(a, b, k)| {
                let op = [BinOp::Add, BinOp::Sub, BinOp::Mul][k];
                Expr::binop(op, a, b).unwrap()
            }),
            (inner.clone(), 0i64..4).prop_map(|(a, e)| Expr::binop(BinOp::Pow, a, Expr::num(e)).unwrap()),
            (inner.clone(), 1i64..5).prop_map(|(a, d)| Expr::binop(BinOp::Div, a, Expr::num(d)).unwrap()),
            inner.prop_map(Expr::neg),
        ]
    })
}

fn no_foldable_nodes(e: &Expr) -> bool {
    let mut ok = true;
    e.walk(&mut |n| {
        if let Expr::Binary(_, l, r) = n {
            if l.as_number().is_some() && r.as_number().is_some() {
                ok = false;
            }
        }
    });
    ok
}

fn reparse(e: &Expr) -> Expr {
    let v = Interpreter::default().eval_expr_str(&e.to_string()).unwrap();
    v.as_expr().unwrap()
}

fn poly_of(e: &Expr) -> casdsl::Polynomial {
    let ring = qring(&["x", "y", "z"], MonomialOrder::Graded);
    expr_to_poly(&ring, e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn folding_is_complete(e in expr_tree()) {
        prop_assert!(no_foldable_nodes(&e));
    }

    #[test]
    fn printing_reparses_to_the_same_tree(e in expr_tree()) {
        prop_assert_eq!(reparse(&e), e.clone());
        prop_assert_eq!(poly_of(&reparse(&e)), poly_of(&e));
    }

    #[test]
    fn numeric_left_operands_dispatch(n in -9i64..10, e in expr_tree(), k in 0usize..2) {
        let op = [BinOp::Add, BinOp::Mul][k];
        let left = Expr::binop(op, Expr::num(n), e.clone()).unwrap();
        let right = Expr::binop(op, e, Expr::num(n)).unwrap();
        prop_assert_eq!(poly_of(&left), poly_of(&right));
    }

    #[test]
    fn conversion_is_a_homomorphism(a in expr_tree(), b in expr_tree(), k in 0usize..3) {
        let op = [BinOp::Add, BinOp::Sub, BinOp::Mul][k];
        let combined = poly_of(&Expr::binop(op, a.clone(), b.clone()).unwrap());
        let (pa, pb) = (poly_of(&a), poly_of(&b));
        let expected = match op {
            BinOp::Add => pa.add(&pb),
            BinOp::Sub => pa.sub(&pb),
            _ => pa.mul(&pb),
        }.unwrap();
        prop_assert_eq!(combined, expected);
    }

    #[test]
    fn rebuilt_expressions_carry_the_used_variables(e in expr_tree()) {
        let p = poly_of(&e);
        let used: std::collections::BTreeSet<String> = p
            .ring()
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| p.terms().iter().any(|(m, _)| m[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect();
        prop_assert_eq!(collect_symbols(&poly_to_expr(&p)), used);
    }

    #[test]
    fn binding_shadows_auto_symbols(n in -50i64..50) {
        let mut cas = Interpreter::default();
        cas.eval_expr_str(&format!("x = {n}")).unwrap();
        prop_assert_eq!(cas.eval_expr_str("1+x").unwrap(), Value::Number(Number::from(n + 1)));
    }

    #[test]
    fn division_identity(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ring = qring(&["x", "y", "z"], MonomialOrder::Graded);
        let p = random_poly(&mut rng, &ring, 4, 5);
        let gs = random_generators(&mut rng, &ring, 2, 3);
        let d = divide(&p, &gs).unwrap();
        let mut rebuilt = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&gs) {
            rebuilt = rebuilt.add(&q.mul(g).unwrap()).unwrap();
        }
        prop_assert_eq!(rebuilt, p);
        for (m, _) in d.remainder.terms() {
            prop_assert!(gs.iter().all(|g| !casdsl::poly::divides(g.leading_monomial().unwrap(), m)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn groebner_bases_are_sound_reduced_and_canonical(seed in any::<u64>(), lex in any::<bool>()) {
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::Graded };
        let mut rng = StdRng::seed_from_u64(seed);
        let ring = qring(&["x", "y", "z"], order);
        let mut gens = random_generators(&mut rng, &ring, 2, 3);
        let gb = buchberger(&gens, order).unwrap();
        prop_assert!(is_groebner_basis(&gb).unwrap());
        prop_assert!(is_reduced(&gb));
        for g in &gens {
            prop_assert!(normal_form(g, &gb).unwrap().is_zero());
        }
        gens.shuffle(&mut rng);
        prop_assert_eq!(buchberger(&gens, order).unwrap(), gb);
    }
}

#[test]
fn every_session_generator_reduces_to_zero_mod_its_gb() {
    let mut cas = Interpreter::default();
    cas.execute(
        "I = ideal(x^2*y - z, y*z^2 - x, x*z - y^2); H = I.GB()",
        1,
        &mut |_| {},
    )
    .unwrap();
    let (Some(Value::Ideal(i)), Some(Value::Ideal(h))) = (cas.get("I"), cas.get("H")) else {
        panic!("ideals not bound");
    };
    for g in i.generators() {
        assert!(normal_form(g, h.generators()).unwrap().is_zero());
    }
}

#[test]
fn inferred_rings_list_symbols_in_ascending_order() {
    let e = Expr::binop(
        BinOp::Add,
        Expr::sym("zeta").unwrap(),
        Expr::sym("alpha").unwrap(),
    )
    .unwrap();
    let r = infer_ring(&[e], MonomialOrder::Graded).unwrap();
    assert_eq!(r.vars(), ["alpha", "zeta"]);
}
