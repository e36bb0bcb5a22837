//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use casdsl::convert::infer_ring;
use casdsl::groebner::{buchberger, is_groebner_basis, is_reduced, normal_form, Ideal};
use casdsl::number::most_general_number_type;
use casdsl::parser::{parse_expr, AstKind};
use casdsl::{BinOp, Interpreter, MonomialOrder, NumberType, Value};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::{qring, random_generators};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn echo(cas: &mut Interpreter, src: &str) -> Result<String, String> {
    cas.eval_expr_str(src)
        .map(|v| v.to_string())
        .map_err(|e| format!("{src}: {e}"))
}

fn session_transcript() -> Outcome {
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/session.cas");
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_casdsl"))
        .arg("--script")
        .arg(&script)
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(out.status.success(), || {
        format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = stdout.lines().collect();
    check(lines.first() == Some(&"x^3*y+x^2*z-5/9"), || {
        format!("f echoed as {:?}", lines.first())
    })?;
    check(lines.get(3) == Some(&"Q[w,x,y,z]"), || {
        format!("PolynomialRing(F) reported {:?}", lines.get(3))
    })?;
    check(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;

    // K must lie in both I and J.
    let mut cas = Interpreter::default();
    let src = std::fs::read_to_string(&script).map_err(|e| e.to_string())?;
    cas.execute(&src, 1, &mut |_| {}).map_err(|d| d.to_string())?;
    let (Some(Value::Ideal(i)), Some(Value::Ideal(j)), Some(Value::Ideal(k))) =
        (cas.get("I"), cas.get("J"), cas.get("K"))
    else {
        return Err("I, J, K not bound to ideals".into());
    };
    for g in k.generators() {
        let ok = i.contains(g).map_err(|e| e.to_string())?
            && j.embed(k.ring()).and_then(|j| j.contains(g)).map_err(|e| e.to_string())?;
        check(ok, || format!("{g} is not in both I and J"))?;
    }
    Ok(format!("exit 0 in {elapsed:.2?}, |K| = {}", k.generators().len()))
}

fn toy_semantics() -> Outcome {
    let mut cas = Interpreter::default();
    for (src, want) in [("1+2", "3"), ("1+x", "1+x"), ("x+y", "x+y"), ("2*3+x", "6+x")] {
        let got = echo(&mut cas, src)?;
        check(got == want, || format!("{src} printed {got}, want {want}"))?;
    }
    Ok("4/4 outputs exact".into())
}

fn fraction_contract() -> Outcome {
    let mut cas = Interpreter::default();
    for (src, want) in [("5/9", "5/9"), ("1/2", "1/2"), ("4/2", "2")] {
        let got = echo(&mut cas, src)?;
        check(got == want, || format!("{src} printed {got}, want {want}"))?;
    }
    Ok("5/9, 1/2, 4/2 exact".into())
}

/// Decimal digits of 2^n by repeated squaring over base-10^9 limbs.
fn pow2_decimal(n: u32) -> String {
    const BASE: u64 = 1_000_000_000;
    fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            let mut carry = 0u64;
            for (j, &y) in b.iter().enumerate() {
                let cur = out[i + j] + x * y + carry;
                out[i + j] = cur % BASE;
                carry = cur / BASE;
            }
            let mut k = i + b.len();
            while carry > 0 {
                let cur = out[k] + carry;
                out[k] = cur % BASE;
                carry = cur / BASE;
                k += 1;
            }
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }
    let mut result = vec![1u64];
    let mut base = vec![2u64];
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    let mut s = result.last().unwrap().to_string();
    for limb in result.iter().rev().skip(1) {
        s.push_str(&format!("{limb:09}"));
    }
    s
}

fn power_contract() -> Outcome {
    let mut cas = Interpreter::default();
    let got = echo(&mut cas, "2^3^2")?;
    check(got == "512", || format!("2^3^2 printed {got}"))?;

    let tree = parse_expr("2*x^3").map_err(|e| e.to_string())?;
    let AstKind::BinOp(BinOp::Mul, l, r) = &tree.kind else {
        return Err(format!("2*x^3 root is {:?}", tree.kind));
    };
    check(matches!(&l.kind, AstKind::Int(n) if *n == 2.into()), || "left of * is not 2".into())?;
    let AstKind::BinOp(BinOp::Pow, base, exp) = &r.kind else {
        return Err("right of * is not a power".into());
    };
    check(
        matches!(&base.kind, AstKind::Ident(s) if s == "x")
            && matches!(&exp.kind, AstKind::Int(n) if *n == 3.into()),
        || "power is not x^3".into(),
    )?;

    let big = echo(&mut cas, "2**200")?;
    let oracle = pow2_decimal(200);
    check(big == oracle, || format!("2**200 = {big}, oracle {oracle}"))?;
    check(big.len() == 61, || format!("{} digits", big.len()))?;
    // The float rendering 1.6069380442589903E60 keeps only its leading digits.
    check(big.starts_with("16069380442589902") || big.starts_with("16069380442589903"), || {
        "leading digits disagree with 1.6069380442589903E60".into()
    })?;
    Ok(format!("2**200 = {big}"))
}

fn groebner_properties() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let vars = ["x", "y", "z"];
    let mut checked = 0;
    for case in 0..60 {
        let nvars = rng.gen_range(1..=3);
        let order = if case % 2 == 0 { MonomialOrder::Graded } else { MonomialOrder::Lex };
        let ring = qring(&vars[..nvars], order);
        let gens = random_generators(&mut rng, &ring, 3, 3);
        let gb = buchberger(&gens, order).map_err(|e| e.to_string())?;
        let ctx = || format!("case {case}: generators {gens:?}");
        check(is_groebner_basis(&gb).map_err(|e| e.to_string())?, || {
            format!("{}: an S-polynomial does not reduce to 0", ctx())
        })?;
        for g in &gens {
            check(normal_form(g, &gb).map_err(|e| e.to_string())?.is_zero(), || {
                format!("{}: generator {g} does not reduce to 0", ctx())
            })?;
        }
        check(is_reduced(&gb), || format!("{}: basis not reduced and monic", ctx()))?;
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        check(buchberger(&shuffled, order).map_err(|e| e.to_string())? == gb, || {
            format!("{}: basis changed under permutation", ctx())
        })?;
        checked += 1;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("suite took {elapsed:?}"))?;
    Ok(format!("{checked} ideals in {elapsed:.2?}"))
}

fn intersection() -> Outcome {
    let r = qring(&["x", "y"], MonomialOrder::Graded);
    let var = |n: &str| casdsl::Polynomial::var(&r, n).unwrap();
    let i = Ideal::new(&r, &[var("x")]).map_err(|e| e.to_string())?;
    let j = Ideal::new(&r, &[var("y")]).map_err(|e| e.to_string())?;
    let k = i.intersect(&j).map_err(|e| e.to_string())?;
    let xy = Ideal::new(&r, &[var("x").mul(&var("y")).unwrap()]).map_err(|e| e.to_string())?;
    check(k.gb() == xy.gb(), || format!("(x)∩(y) = {k}"))?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for case in 0..20 {
        let ring = qring(&["x", "y", "z"][..rng.gen_range(2..=3)], MonomialOrder::Graded);
        let a = random_generators(&mut rng, &ring, 2, 2);
        let b = random_generators(&mut rng, &ring, 2, 2);
        let ia = Ideal::new(&ring, &a).map_err(|e| e.to_string())?;
        let ib = Ideal::new(&ring, &b).map_err(|e| e.to_string())?;
        let ik = ia.intersect(&ib).map_err(|e| e.to_string())?;
        for g in ik.generators() {
            let both = ia.contains(g).map_err(|e| e.to_string())?
                && ib.contains(g).map_err(|e| e.to_string())?;
            check(both, || format!("case {case}: {g} not in both inputs"))?;
        }
        for f in &a {
            for g in &b {
                let prod = f.mul(g).unwrap();
                check(ik.contains(&prod).map_err(|e| e.to_string())?, || {
                    format!("case {case}: product {prod} not in the intersection")
                })?;
            }
        }
    }
    Ok("(x)∩(y) = (x*y); 20 random pairs sound".into())
}

fn coercion_lattice() -> Outcome {
    use NumberType::*;
    let all = [Int, Rat];
    for a in all {
        check(most_general_number_type(a, a) == a, || format!("join({a},{a})"))?;
        for b in all {
            check(most_general_number_type(a, b) == most_general_number_type(b, a), || {
                format!("join not commutative at {a},{b}")
            })?;
            check(most_general_number_type(a, b) == a.max(b), || format!("join({a},{b}) not the lub"))?;
            for c in all {
                let l = most_general_number_type(most_general_number_type(a, b), c);
                let r = most_general_number_type(a, most_general_number_type(b, c));
                check(l == r, || format!("join not associative at {a},{b},{c}"))?;
            }
        }
    }

    let mut cas = Interpreter::default();
    let f = cas.eval_expr_str("x**3 * y + x**2 * z - 5/9").map_err(|e| e.to_string())?;
    let g = cas.eval_expr_str("y**4 - z**6 + 7 * w").map_err(|e| e.to_string())?;
    let exprs = [f.as_expr().unwrap(), g.as_expr().unwrap()];
    let ring = infer_ring(&exprs, MonomialOrder::Graded).map_err(|e| e.to_string())?;
    check(ring.vars() == ["w", "x", "y", "z"] && ring.domain() == Rat, || {
        format!("infer_ring([f,g]) = {ring}")
    })?;
    let ring_g = infer_ring(&exprs[1..], MonomialOrder::Graded).map_err(|e| e.to_string())?;
    check(ring_g.domain() == Int, || format!("infer_ring([g]) = {ring_g}"))?;

    // Random sums of monomials; the generator knows whether it inserted a
    // division or a reduced fraction literal.
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for _ in 0..200 {
        let mut has_division = false;
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..4) {
            let var = ["x", "y", "z"][rng.gen_range(0..3)];
            let term = match rng.gen_range(0..6) {
                0 => {
                    has_division = true;
                    format!("{var}/{}", rng.gen_range(2..7))
                }
                1 => {
                    has_division = true;
                    let d = rng.gen_range(2..9);
                    let n = (1..d).filter(|n| gcd(*n, d) == 1).nth(0).unwrap();
                    format!("{n}/{d}*{var}")
                }
                _ => format!("{}*{var}^{}", rng.gen_range(1..9), rng.gen_range(0..4)),
            };
            terms.push(term);
        }
        let src = terms.join(" + ");
        let e = cas.eval_expr_str(&src).map_err(|e| e.to_string())?;
        let e = e.as_expr().unwrap();
        let ring = infer_ring(&[e], MonomialOrder::Graded).map_err(|e| e.to_string())?;
        let want = if has_division { Rat } else { Int };
        check(ring.domain() == want, || format!("{src} inferred {ring}"))?;
    }
    Ok("lattice laws exhaustive; Q[w,x,y,z]; 200 domain checks".into())
}

fn gcd(a: i32, b: i32) -> i32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Random surface source with power operators left as `@` placeholders.
fn random_source(rng: &mut StdRng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..3) {
            0 => rng.gen_range(0..20).to_string(),
            _ => ["x", "y", "z", "w"][rng.gen_range(0..4)].to_string(),
        };
    }
    match rng.gen_range(0..8) {
        0 => format!("-{}", random_source(rng, depth - 1)),
        1 => format!("({})", random_source(rng, depth - 1)),
        2 | 3 => {
            // Exponents stay small so evaluated powers stay cheap.
            let exp = match rng.gen_range(0..4) {
                0 => ["x", "y", "z", "w"][rng.gen_range(0..4)].to_string(),
                1 => format!("-{}", rng.gen_range(0..4)),
                _ => rng.gen_range(0..4).to_string(),
            };
            format!("{}@{exp}", random_source(rng, depth - 1))
        }
        k => {
            let op = ["+", "-", "*", "/"][k - 4];
            format!(
                "{}{op}{}",
                random_source(rng, depth - 1),
                random_source(rng, depth - 1)
            )
        }
    }
}

fn round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut evaluated = 0;
    for case in 0..500 {
        let template = random_source(&mut rng, 5);
        let caret = template.replace('@', "^");
        let stars = template.replace('@', "**");
        let a = parse_expr(&caret).map_err(|e| format!("{caret}: {e}"))?;
        let b = parse_expr(&stars).map_err(|e| format!("{stars}: {e}"))?;
        check(a == b, || format!("case {case}: ^ and ** trees differ for {template}"))?;
        let printed = a.to_string();
        let again = parse_expr(&printed).map_err(|e| format!("{printed}: {e}"))?;
        check(again == a, || format!("case {case}: {caret} -> {printed} changed the tree"))?;

        // The same fixpoint on evaluated trees, when evaluation succeeds.
        let mut cas = Interpreter::default();
        if let Ok(v) = cas.eval_expr_str(&caret) {
            let shown = v.to_string();
            let back = cas.eval_expr_str(&shown).map_err(|e| format!("{shown}: {e}"))?;
            check(back == v, || format!("case {case}: {caret} -> {shown} changed the value"))?;
            evaluated += 1;
        }
    }
    Ok(format!("500 sources; {evaluated} also checked after evaluation"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("AC1 session transcript", session_transcript),
        ("AC2 toy semantics", toy_semantics),
        ("AC3 fraction contract", fraction_contract),
        ("AC4 power contract", power_contract),
        ("AC5 GB property suite", groebner_properties),
        ("AC6 intersection", intersection),
        ("AC7 coercion lattice", coercion_lattice),
        ("AC8 round trip", round_trip),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
