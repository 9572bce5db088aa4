//! Exit gate: one PASS/FAIL line per acceptance criterion. Exits nonzero if
//! any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bicanon_core::arith::{
    holomorphic_lefschetz_case_a, holomorphic_lefschetz_case_b, isometries_with_trace, lattice_invariants,
    moduli_dimension, topological_lefschetz_count, FixedCurveData, Sign,
};
use bicanon_core::claims::claim;
use bicanon_core::cover::{check_bis_condition, epsilon_fixed_point_free, k3_cover, specialize, BisCondition};
use bicanon_core::maps::{sigma, DEFAULT_MAX_ORDER};
use bicanon_core::moduli::builtin_actions;
use bicanon_core::poly::vars::{PARAM_A, PARAM_B, PARAM_C, PARAM_D, PARAM_E, PARAM_F, Y_LOWER, Z_LOWER};
use bicanon_core::poly::{jacobian_det2, parse_expr, poly_substitute, Assignment};
use bicanon_core::qaut::{k4_normal_form_check, QAut};
use bicanon_core::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

const GOLDEN: &str = include_str!("golden/certificate.json");
const PROPERTY_CASES: u32 = 128;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn poly(src: &str) -> MPoly {
    parse_expr(src, &VarTable::standard())
        .expect("test expression parses")
        .as_polynomial()
        .expect("test expression is polynomial")
}

fn show(p: &MPoly) -> String {
    p.display(&VarTable::standard()).to_string()
}

fn invariance() -> Check {
    let start = Instant::now();
    for k in 1..=3 {
        let chk = check_equation_invariance(&family(k).map_err(err)?, &sigma(k).map_err(err)?).map_err(err)?;
        ensure(
            chk.invariant && chk.witness.is_zero(),
            format!("family {k}: residual {}", show(&chk.witness)),
        )?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), format!("took {t:?}"))?;
    Ok(format!("3/3 identities, {t:.2?}"))
}

fn orders_and_indices() -> Check {
    let expected = [
        (4, -FieldElem::one(), 2),
        (8, -FieldElem::i(), 4),
        (8, -FieldElem::one(), 2),
    ];
    let mut pairs = Vec::new();
    for (k, (order, ratio, index)) in (1..=3).zip(expected) {
        let s = sigma(k).map_err(err)?;
        let n = map_order(&s, DEFAULT_MAX_ORDER).map_err(err)?;
        ensure(n == Some(order), format!("sigma{k}: order {n:?}"))?;
        let r = bitwoform_pullback_ratio(&family(k).map_err(err)?, &s).map_err(err)?;
        ensure(r.constancy_certificate, format!("sigma{k}: ratio not constant"))?;
        ensure(r.value == ratio, format!("sigma{k}: ratio {}", r.value.to_expr()))?;
        let i = index_of(&r).map_err(err)?;
        ensure(i == index, format!("sigma{k}: index {i}"))?;
        pairs.push(format!("({order},{i}) ratio {}", r.value.to_expr()));
    }
    Ok(pairs.join("; "))
}

fn sigma_two_squared() -> Check {
    let (s1, s2) = (sigma(1).map_err(err)?, sigma(2).map_err(err)?);
    ensure(compose(&s2, &s2).map_err(err)? == s1, "sigma2^2 != sigma1")?;
    let f2 = family(2).map_err(err)?;
    let r2 = bitwoform_pullback_ratio(&f2, &s2).map_err(err)?.value;
    let r1 = bitwoform_pullback_ratio(&f2, &s1).map_err(err)?.value;
    ensure(
        &r2 * &r2 == r1 && r1 == -FieldElem::one(),
        format!("ratios {} and {}", r2.to_expr(), r1.to_expr()),
    )?;
    Ok(format!("({})^2 = {}", r2.to_expr(), r1.to_expr()))
}

fn specializations() -> Check {
    let f1 = family(1).map_err(err)?;
    let to_two: BTreeMap<Var, MPoly> = [
        (PARAM_A, poly("A")),
        (PARAM_B, poly("B")),
        (PARAM_C, poly("-i*A")),
        (PARAM_D, poly("D")),
        (PARAM_E, poly("-i*D")),
        (PARAM_F, poly("-i*B")),
    ]
    .into();
    let s = specialize(&f1, &to_two).map_err(err)?;
    ensure(
        s.branch() == family(2).map_err(err)?.branch(),
        format!("got {}", show(s.branch())),
    )?;

    let one_param: BTreeMap<Var, MPoly> = [
        (PARAM_A, poly("1")),
        (PARAM_B, poly("-C-1")),
        (PARAM_C, poly("C")),
        (PARAM_D, poly("0")),
        (PARAM_E, poly("0")),
        (PARAM_F, poly("-C+1")),
    ]
    .into();
    let s = specialize(&f1, &one_param).map_err(err)?;
    let expected = poly("y^4*z^2 - z^2 + (-C-1)*(y^4*z - z^3) + C*(y^4 - z^4) + (-C+1)*(y^2*z - y^2*z^3)");
    ensure(s.branch() == &expected, format!("got {}", show(s.branch())))?;
    ensure(
        s.parameters() == [PARAM_C],
        "one-parameter family should depend on C only",
    )?;
    Ok("family 2 and the one-parameter subfamily".into())
}

fn k3_covers() -> Check {
    for k in 1..=3 {
        let g = k3_cover(&family(k).map_err(err)?).map_err(err)?;
        ensure(
            g.bidegree() == (4, 4),
            format!("family {k}: bidegree {:?}", g.bidegree()),
        )?;
        ensure(
            check_bis_condition(g.branch(), BisCondition::IotaInvariant).map_err(err)?,
            format!("family {k}: not iota-invariant"),
        )?;
    }
    let g1 = k3_cover(&family(1).map_err(err)?).map_err(err)?;
    ensure(
        check_bis_condition(g1.branch(), BisCondition::Inversion).map_err(err)?,
        "inversion condition",
    )?;
    let g2 = k3_cover(&family(2).map_err(err)?).map_err(err)?;
    ensure(
        check_bis_condition(g2.branch(), BisCondition::Rotation).map_err(err)?,
        "rotation condition",
    )?;
    let eps = epsilon_fixed_point_free(&family(1).map_err(err)?).map_err(err)?;
    let want = [poly("-A"), poly("C"), poly("-C"), poly("A")];
    ensure(
        eps.fixed_point_free && eps.corners == want,
        format!("corners {:?}", eps.corners.iter().map(show).collect::<Vec<_>>()),
    )?;
    Ok("corners (-A, C, -C, A)".into())
}

fn lefschetz() -> Check {
    for sign in [Sign::Plus, Sign::Minus] {
        let n = holomorphic_lefschetz_case_b(sign).map_err(err)?;
        ensure(n == 4, format!("{sign:?}: N = {n}"))?;
        let cmp = holomorphic_lefschetz_case_a(sign, FixedCurveData::new(9, 16).map_err(err)?);
        ensure(!cmp.equal, format!("{sign:?}: curve case holds"))?;
    }
    let iota = QAut::iota();
    let phi1 = QAut::inversion();
    let cases = [
        ("iota", iota.clone(), 4),
        ("phi1", phi1.clone(), 4),
        ("iota*phi1", iota.compose(&phi1), 4),
        ("(1/Z,Y)", QAut::rotation(1), 2),
    ];
    let mut counts = Vec::new();
    for (name, g, want) in cases {
        let n = qaut_fixed_points(&g).map_err(err)?.count as i64;
        ensure(n == want, format!("{name}: {n} fixed points"))?;
        ensure(
            n == topological_lefschetz_count(qaut_ns_trace(&g)),
            format!("{name}: count != 2 + trace"),
        )?;
        counts.push(n.to_string());
    }
    Ok(format!("N = 4; fixed points {}", counts.join(", ")))
}

fn lattices() -> Check {
    let u2 = GramLattice::hyperbolic(2);
    let (rank, det) = lattice_invariants(&u2);
    ensure(rank == 2 && det == -4, format!("rank {rank}, det {det}"))?;
    let isos = isometries_with_trace(&u2, 2, 2).map_err(err)?;
    ensure(isos == vec![vec![vec![1, 0], vec![0, 1]]], format!("{isos:?}"))?;
    let phi1 = QAut::inversion();
    for s in [1, -1] {
        let r = QAut::rotation(s);
        ensure(r.compose(&r) == phi1, format!("rotation {s} does not square to phi1"))?;
    }
    let start = Instant::now();
    let chk = k4_normal_form_check();
    let t = start.elapsed();
    ensure(chk.passed(), format!("{chk:?}"))?;
    ensure(t < Duration::from_secs(5), format!("brute force took {t:?}"))?;
    Ok(format!(
        "det -4; {} monomial candidates, {} square roots, {t:.2?}",
        chk.candidates_searched,
        chk.monomial_square_roots.len()
    ))
}

fn moduli() -> Check {
    let mut counts = Vec::new();
    for k in 1..=3 {
        let fam = family(k).map_err(err)?;
        counts.push(moduli_number(&fam, &builtin_actions(&fam, k)).map_err(err)?);
    }
    ensure(counts == [5, 2, 2], format!("moduli numbers {counts:?}"))?;
    let dims: Vec<i64> = [(12, 4), (12, 8), (6, 4)]
        .into_iter()
        .map(|(t, n)| moduli_dimension(t, n))
        .collect::<Result<_>>()
        .map_err(err)?;
    ensure(dims == [5, 2, 2], format!("dimensions {dims:?}"))?;
    Ok("5, 2, 2 both ways".into())
}

fn classification() -> Check {
    let cls = admissible_pairs();
    let want: BTreeSet<(u32, u32)> = [(4, 2), (8, 4), (8, 2)].into();
    ensure(cls.admissible == want, format!("admissible {:?}", cls.admissible))?;
    for p in &cls.pruned {
        let cited = p.rule.citation().id;
        ensure(
            claim(cited).is_some(),
            format!("({},{}) cites unknown {cited}", p.order, p.index),
        )?;
    }
    let rules: BTreeSet<&str> = cls.pruned.iter().map(|p| p.rule.id()).collect();
    let orders = allowed_orders();
    ensure(orders == [1, 2, 3, 4, 5, 6, 8].into(), format!("orders {orders:?}"))?;
    Ok(format!(
        "{} candidates pruned by {} rules",
        cls.pruned.len(),
        rules.len()
    ))
}

fn property<S, F>(name: &str, strategy: S, test: F) -> Result<(), String>
where
    S: proptest::strategy::Strategy,
    F: Fn(S::Value) -> std::result::Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn check(cond: bool, msg: &str) -> std::result::Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.to_string()))
    }
}

fn properties() -> Check {
    use common::*;

    property(
        "field axioms",
        (field_elem(), field_elem(), field_elem()),
        |(a, b, c)| {
            check(&(&a + &b) + &c == &a + &(&b + &c), "additive associativity")?;
            check(&(&a * &b) * &c == &a * &(&b * &c), "multiplicative associativity")?;
            check(&a * &b == &b * &a, "commutativity")?;
            check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity")?;
            check(&a + &(-a.clone()) == FieldElem::zero(), "additive inverse")?;
            if !a.is_zero() {
                check(&a * &a.inv().unwrap() == FieldElem::one(), "multiplicative inverse")?;
            }
            Ok(())
        },
    )?;

    let asg = (ratfunc(), ratfunc());
    property(
        "substitution homomorphism",
        (small_poly(), small_poly(), asg),
        |(p, q, (ry, rz))| {
            let a = Assignment::new().set(Y_LOWER, ry).set(Z_LOWER, rz);
            let sp = poly_substitute(&p, &a).unwrap();
            let sq = poly_substitute(&q, &a).unwrap();
            check(poly_substitute(&(&p + &q), &a).unwrap() == &sp + &sq, "sum")?;
            check(poly_substitute(&(&p * &q), &a).unwrap() == &sp * &sq, "product")
        },
    )?;

    property("exact division", (poly(), nonzero_poly()), |(p, q)| {
        check((&p * &q).exact_divide(&q).unwrap() == p, "(p*q)/q != p")
    })?;

    property(
        "jacobian multiplicativity",
        (polynomial_map(), polynomial_map()),
        |((f1, f2), (g1, g2))| {
            let vars = (Y_LOWER, Z_LOWER);
            let at_g = Assignment::new().set(Y_LOWER, g1.clone()).set(Z_LOWER, g2.clone());
            let c1 = f1.substitute(&at_g).unwrap();
            let c2 = f2.substitute(&at_g).unwrap();
            let lhs = jacobian_det2(&c1, &c2, vars);
            let rhs = &jacobian_det2(&f1, &f2, vars).substitute(&at_g).unwrap() * &jacobian_det2(&g1, &g2, vars);
            check(lhs == rhs, "J(f o g) != J(f)(g) * J(g)")
        },
    )?;

    property("fixed points = 2 + trace", finite_qaut(), |g| {
        let n = qaut_fixed_points(&g).unwrap().count as i64;
        check(n == topological_lefschetz_count(qaut_ns_trace(&g)), "fixed-point count")
    })?;

    let first = verify_all().to_json();
    ensure(first == verify_all().to_json(), "certificate differs between runs")?;
    ensure(
        first == GOLDEN,
        "certificate differs from tests/golden/certificate.json",
    )?;
    Ok(format!(
        "5 suites x {PROPERTY_CASES} cases; golden certificate identical"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("equation invariance", invariance),
        ("orders and indices", orders_and_indices),
        ("sigma2 squared", sigma_two_squared),
        ("specializations", specializations),
        ("K3 covers", k3_covers),
        ("Lefschetz suite", lefschetz),
        ("lattice suite", lattices),
        ("moduli table", moduli),
        ("classification", classification),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.into_iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", 10 - failed, 10);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
