//! Acceptance criteria, one line per criterion. Values marked as derived are
//! recomputed here by independent oracles from `common`; stated values are
//! transcribed from the published tables and formulas.
//!
//! Exits nonzero only on an unexpected result. A criterion listed in
//! `EXPECTED_FAILURES` is printed as FAIL but does not fail the run.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use enriques::algebra::{parse_poly, parse_ratfunc, var, FiniteField, Poly, RatFunc, Var};
use enriques::constructions::{
    verify_kummer_appendix, verify_sigma_y, verify_type_i, verify_type_ii, verify_type_vi, CheckStatus,
    IdentityCheckReport,
};
use enriques::curve_config::{
    self, build_x_config, build_y_config, divisor_pairing, integral_set, quotient_blowdown_gram, CurveConfig,
};
use enriques::derivations::{divisorial_part_d, euler_bookkeeping, Derivation};
use enriques::dynkin::{
    automorphism_count, build_e10_graph, build_type_vii_graph, connected_parabolics, maximal_parabolics,
    recognize_connected_parabolic, type_census, vinberg_check, DualGraph,
};
use enriques::enriques_rules::{facts_from_graph, table1_report, trace, Cell, EnriquesClass};
use enriques::kodaira::KodairaType;
use enriques::suite::hexagon_with_pendant;
use enriques::weierstrass::builtins::{curve, e_points, ystar_sections};
use enriques::weierstrass::{half_fiber_j, CurvePoint};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

/// Criteria that cannot pass as stated, with the check ids expected to fail.
const EXPECTED_FAILURES: [(u32, &[&str], &str); 1] = [(
    8,
    &["kummer.tau_prime_fixed_point"],
    "the printed point (1,b',b,bb') maps to bb'(1,1,1,1); the fixed point is (1,sqrt(b'),sqrt(b),sqrt(bb'))",
)];

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn gf4(s: &str) -> RatFunc {
    parse_ratfunc(s, FiniteField::GF4).unwrap()
}

fn gf2(s: &str) -> RatFunc {
    parse_ratfunc(s, FiniteField::GF2).unwrap()
}

fn criterion_1() -> Outcome {
    let y = curve("Ystar").map_err(|e| e.to_string())?;
    let delta = gf4("(t + 1)^10*(t^2 + t + 1)^2");
    let j = gf4("t^24").try_div(&delta).unwrap();
    let oracle_delta = common::discriminant(y.coefficients());
    ensure!(oracle_delta == delta, "oracle Delta_Y = {oracle_delta}");
    ensure!(common::j_invariant(y.coefficients()) == j, "oracle j_Y differs from t^24/Delta");
    let inv = y.invariants().unwrap();
    ensure!(inv.delta == delta && inv.j == j, "library: Delta = {}, j = {}", inv.delta, inv.j);

    let r = curve("R").unwrap();
    let delta_r = gf4("(s + 1)^5*(s^2 + s + 1)");
    let oracle_r = common::discriminant(r.coefficients());
    ensure!(oracle_r == delta_r, "oracle Delta_R = {oracle_r}");
    ensure!(r.discriminant().unwrap() == delta_r, "library Delta_R differs");
    // v_(s+1) = 5: the cofactor s^2 + s + 1 is nonzero at s = 1.
    let one = HashMap::from([(var("s"), FiniteField::GF4.one())]);
    let cofactor = delta_r.try_div(&gf4("(s + 1)^5")).unwrap();
    ensure!(!cofactor.eval_all(&one).unwrap().is_zero(), "(s+1)^6 divides Delta_R");
    // a1 = s is a unit at s = 1 and at infinity, so both places are
    // multiplicative; a rational elliptic surface has total v(Delta) = 12.
    let deg = oracle_r.num().degree_in(var("s")).unwrap();
    ensure!(12 - deg == 5, "v_inf(Delta_R) = {}", 12 - deg);
    let i5: Vec<String> = r
        .place_analysis()
        .unwrap()
        .into_iter()
        .filter(|f| f.kodaira == Some(KodairaType::I(5)))
        .map(|f| f.place.to_string())
        .collect();
    ensure!(i5 == ["s=1", "s=inf"], "library I5 places: {i5:?}");
    Ok("Delta_Y, j_Y, Delta_R match; I5 at s = 1 and s = inf".into())
}

fn criterion_2() -> Outcome {
    let e = curve("E").unwrap();
    let a = e.coefficients();
    let pts = e_points();
    let p1 = &pts[1].1;
    for (i, (name, p)) in pts.iter().enumerate() {
        ensure!(common::on_curve(a, p), "{name} is not on E");
        ensure!(common::mul(a, i as u32, p1) == *p, "{name} != {i} P1");
        ensure!(e.mul_point(i as i64, p1).unwrap() == *p, "library: {name} != {i} P1");
    }
    ensure!(common::mul(a, 5, p1).is_infinity(), "5 P1 != O");

    let y = curve("Ystar").unwrap();
    let a = y.coefficients();
    let secs: HashMap<&str, CurvePoint> = ystar_sections().into_iter().collect();
    let (s1, m0) = (&secs["s1"], &secs["m0"]);
    for (name, p) in &secs {
        ensure!(common::on_curve(a, p), "{name} is not on Ystar");
    }
    for i in 0..5u32 {
        let si = common::mul(a, i, s1);
        ensure!(si == secs[format!("s{i}").as_str()], "s{i} != {i} s1");
        ensure!(common::add(a, m0, &si) == secs[format!("m{i}").as_str()], "m{i} != m0 + s{i}");
        ensure!(y.add_points(m0, &si).unwrap() == secs[format!("m{i}").as_str()], "library: m{i} != m0 + s{i}");
    }
    ensure!(common::mul(a, 5, s1).is_infinity(), "5 s1 != s0");
    ensure!(common::add(a, m0, m0) == secs["s0"], "2 m0 != s0");
    Ok("E(GF(4)) = Z/5 generated by P1; sections form Z/10 = <m0> + <s1>".into())
}

fn criterion_3() -> Outcome {
    let (t, x) = (var("t"), var("x"));
    let b = "(a/(a + 1))";
    let sub_b = |s: &str| gf2(&s.replace('b', b));
    let dp = (sub_b("(t + 1)*(t + a)*(t + b)"), gf2("1 + t^2*x"));
    let d = (sub_b("(t + a)*(t + b)"), gf2("(1 + t^2*x)/(t + 1)"));
    let ab = sub_b("a*b");
    let t2 = gf2("t^2");
    for g in [gf2("t"), gf2("x"), gf2("t^3*x + a*x^2 + 1/(t + 1)")] {
        let once = common::derive(&dp.0, &dp.1, t, x, &g);
        ensure!(common::derive(&dp.0, &dp.1, t, x, &once) == &t2 * &once, "D'^2 != t^2 D' on {g}");
        let once = common::derive(&d.0, &d.1, t, x, &g);
        ensure!(common::derive(&d.0, &d.1, t, x, &once) == &ab * &once, "D^2 != ab D on {g}");
    }
    let lib_d = Derivation::builtin("D").unwrap();
    let lib_dp = Derivation::builtin("Dprime").unwrap();
    ensure!(lib_dp.p_closure_multiplier() == Some(t2), "library multiplier of D'");
    ensure!(lib_d.p_closure_multiplier() == Some(ab), "library multiplier of D");

    // a = b = 0: D^2 = 0 on generators while D != 0.
    let at0 = |r: &RatFunc| r.substitute(var("a"), &gf2("0")).unwrap();
    let d0 = (at0(&d.0), at0(&d.1));
    for g in [gf2("t"), gf2("x")] {
        let once = common::derive(&d0.0, &d0.1, t, x, &g);
        ensure!(common::derive(&d0.0, &d0.1, t, x, &once).is_zero(), "D^2 != 0 at a = 0 on {g}");
    }
    ensure!(!d0.0.is_zero() || !d0.1.is_zero(), "D vanishes at a = 0");

    // The fiber t = c is integral iff the t-coefficient vanishes there.
    for root in ["a", b] {
        ensure!(d.0.substitute(t, &gf2(root)).unwrap().is_zero(), "D(t) is nonzero at t = {root}");
    }
    let places: Vec<String> = lib_d.integral_fiber_places().unwrap().iter().map(|(p, m)| format!("{p}^{m}")).collect();
    ensure!(places == ["t=a^1", "t=a/(a + 1)^1"], "library places of D: {places:?}");
    let zero = lib_d.specialize(FiniteField::GF2.zero()).unwrap();
    let places: Vec<String> = zero.integral_fiber_places().unwrap().iter().map(|(p, m)| format!("{p}^{m}")).collect();
    ensure!(places == ["t=0^2"], "library places at a = 0: {places:?}");
    Ok("D'^2 = t^2 D', D^2 = ab D, additive at a = 0, integral fibers {a, b} and {0}".into())
}

fn criterion_4() -> Outcome {
    let y = build_y_config();
    let d = divisorial_part_d();
    let mut square = 0;
    for (p, x) in d.iter() {
        for (q, z) in d.iter() {
            square += x * z * y.gram()[y.index_of(p).unwrap()][y.index_of(q).unwrap()];
        }
    }
    ensure!(y.len() == 34, "{} curves", y.len());
    ensure!(square == -24, "oracle (D)^2 = {square}");
    ensure!(divisor_pairing(&y, &d, &d).unwrap() == -24, "library (D)^2 differs");
    let euler = euler_bookkeeping(24, square, 0);
    ensure!(euler.degree_of_isolated_part == 0, "deg<D> = {}", euler.degree_of_isolated_part);
    Ok("(D)^2 = -24, deg<D> = 24 + 0 - 24 = 0".into())
}

fn criterion_5() -> Outcome {
    let q = quotient_blowdown_gram(&build_y_config(), &integral_set()).unwrap();
    let g = q.config.to_dual_graph().unwrap();
    let vii = build_type_vii_graph();
    let iso = common::count_isomorphisms(&g, &vii);
    ensure!(iso > 0, "quotient graph is not isomorphic to the type VII graph");
    let doubles = |i: usize| (0..g.len()).filter(|&j| g.mult(i, j) == 2).count();
    let s2: Vec<usize> = (0..g.len()).filter(|&i| doubles(i) > 1).collect();
    let s1: Vec<usize> = (0..g.len()).filter(|i| !s2.contains(i)).collect();
    ensure!(s2.len() == 5, "|S2| = {}", s2.len());
    ensure!(s2.iter().all(|&i| s2.iter().all(|&j| i == j || g.mult(i, j) == 2)), "S2 is not a double K5");
    let line = common::petersen_line_graph();
    ensure!(common::count_isomorphisms(&g.induced(&s1), &line) > 0, "S1 is not the Petersen line graph");
    let aut = common::count_isomorphisms(&g, &g);
    ensure!(aut == 120 && iso == 120, "oracle |Aut| = {aut}, isomorphisms to type VII = {iso}");
    ensure!(automorphism_count(&g) == 120, "library |Aut| = {}", automorphism_count(&g));
    Ok("quotient = type VII graph; S1 = L(Petersen), S2 = double K5; |Aut| = 120".into())
}

/// Library and oracle agree on every connected subset of size at most ten.
fn agrees_with_oracle(name: &str, g: &DualGraph) -> Result<usize, String> {
    let subsets = common::connected_subsets(g, 10);
    let oracle: BTreeSet<Vec<usize>> =
        subsets.iter().filter(|s| common::psd_corank(&g.induced_gram(s)) == Some(1)).cloned().collect();
    for s in &subsets {
        ensure!(recognize_connected_parabolic(g, s).is_some() == oracle.contains(s), "{name}: disagree on {s:?}");
    }
    let listed: BTreeSet<Vec<usize>> = connected_parabolics(g)
        .unwrap()
        .into_iter()
        .map(|c| {
            let mut v = c.vertices;
            v.sort_unstable();
            v
        })
        .filter(|v| v.len() <= 10)
        .collect();
    ensure!(listed == oracle, "{name}: enumeration differs from the oracle");
    Ok(subsets.len())
}

fn criterion_6() -> Outcome {
    let vii = build_type_vii_graph();
    let e10 = build_e10_graph();
    let expected_vii: BTreeSet<String> =
        ["~A8", "~A4+~A4", "~A5+~A2+~A1", "~A7+~A1"].iter().map(|s| s.to_string()).collect();
    let census = |g: &DualGraph| -> BTreeSet<String> {
        type_census(&maximal_parabolics(g).unwrap()).into_iter().map(|(t, _)| t).collect()
    };
    ensure!(vinberg_check(&vii).unwrap().finite_index, "Vinberg fails on type VII");
    ensure!(census(&vii) == expected_vii, "library maximal types on VII: {:?}", census(&vii));
    let oracle_vii = common::oracle_maximal_types(&vii, 10);
    ensure!(oracle_vii == expected_vii, "oracle maximal types on VII: {oracle_vii:?}");
    let expected_e10: BTreeSet<String> = ["~E8".to_string()].into();
    ensure!(vinberg_check(&e10).unwrap().finite_index, "Vinberg fails on E10");
    ensure!(census(&e10) == expected_e10, "library maximal types on E10: {:?}", census(&e10));
    let oracle_e10 = common::oracle_maximal_types(&e10, 10);
    ensure!(oracle_e10 == expected_e10, "oracle maximal types on E10: {oracle_e10:?}");
    let hex = hexagon_with_pendant();
    let report = vinberg_check(&hex).unwrap();
    ensure!(!report.finite_index, "hexagon with pendant passes Vinberg");
    let n =
        agrees_with_oracle("typeVII", &vii)? + agrees_with_oracle("E10", &e10)? + agrees_with_oracle("hexagon", &hex)?;
    Ok(format!("VII and E10 pass, counterexample fails; {n} connected subsets agree with the oracle"))
}

fn criterion_7() -> Outcome {
    // Rows singular, classical, supersingular; columns I..VII.
    const PUBLISHED: [&str; 3] = ["ooxxxox", "xxxxxxo", "xxxxxxo"];
    let t = table1_report().map_err(|e| e.to_string())?;
    let mut cells = 0;
    for (r, row) in PUBLISHED.iter().enumerate() {
        for (c, mark) in row.chars().enumerate() {
            let exists = t.cells[r][c] == Cell::ExistsByConstruction;
            ensure!(exists == (mark == 'o'), "cell ({}, {}) differs", EnriquesClass::ALL[r], c + 1);
            cells += 1;
        }
    }
    ensure!(cells == 21, "{cells} cells");
    let facts = facts_from_graph(&build_type_vii_graph()).unwrap();
    let singular: Vec<String> =
        trace(&facts).into_iter().filter(|e| e.class == EnriquesClass::Singular).map(|e| e.description).collect();
    ensure!(
        singular.iter().any(|d| d == "(I6, IV, I2) multiple [IV]"),
        "singular exclusion on VII traced to {singular:?}"
    );
    Ok("21 cells match; VII = (x, o, o); singular VII excluded by (I6, IV, I2) with IV multiple".into())
}

fn gf2_poly(s: &str) -> Poly {
    parse_poly(s, FiniteField::GF2).unwrap()
}

fn compose(p: &str, subs: &[(&str, &str)]) -> Poly {
    let map: HashMap<Var, Poly> = subs.iter().map(|(v, e)| (var(v), gf2_poly(e))).collect();
    gf2_poly(p).compose(&map)
}

/// Recomputes three of the stated identities by direct expansion.
fn expanded_identities() -> Result<(), String> {
    let f = FiniteField::GF4;
    let lhs = parse_poly("(z + w*u + v^2)*(z + w^2*u + v^2) + v^4", f).unwrap();
    let rhs = parse_poly("z^2 + u*z + u*(u + v^2)", f).unwrap();
    ensure!(lhs == rhs, "A3 product: {lhs} != {rhs}");
    // The Artin-Schreier cover of the quadric in the Segre chart
    // (x0, x1, x2, x3) = (1, x', x, xx').
    let chart = compose(
        "z^2 + x0*x3*z + x0*x3*(x1*x3 + bp*x0*x2 + x2*x3 + b*x0*x1)",
        &[("x0", "1"), ("x1", "xp"), ("x2", "x"), ("x3", "x*xp")],
    );
    let kummer = gf2_poly("z^2 + x*xp*z + x^2*(xp^3 + bp*xp) + xp^2*(x^3 + b*x)");
    ensure!(chart == kummer, "Segre chart gives {chart}");
    let point = [("x0", "1"), ("x1", "bp"), ("x2", "b"), ("x3", "b*bp")];
    let image: Vec<Poly> = ["x3", "bp*x2", "b*x1", "b*bp*x0"].iter().map(|c| compose(c, &point)).collect();
    ensure!(image.iter().all(|c| *c == gf2_poly("b*bp")), "tau'(1,b',b,bb') = {image:?}");
    Ok(())
}

fn criterion_8() -> Outcome {
    expanded_identities()?;
    let reports: Vec<IdentityCheckReport> =
        [verify_type_i(), verify_type_ii(), verify_type_vi(), verify_kummer_appendix()].concat();
    let status: BTreeMap<&str, CheckStatus> = reports.iter().map(|r| (r.check_id.as_str(), r.status)).collect();
    for id in [
        "typeII.a3_normal_form",
        "typeVI.cremona_fixed_exhaustive",
        "typeVI.cremona_fixed_symbolic",
        "typeVI.petersen_incidence",
        "kummer.segre_chart",
    ] {
        ensure!(status.get(id) == Some(&CheckStatus::Pass), "{id}: {:?}", status.get(id));
    }
    let failing: Vec<&IdentityCheckReport> = reports.iter().filter(|r| !r.passed()).collect();
    ensure!(
        failing.is_empty(),
        "not passing: {} | {}",
        failing.iter().map(|r| r.check_id.as_str()).collect::<Vec<_>>().join(", "),
        failing
            .iter()
            .map(|r| format!("{}: {}", r.status, r.residual.as_deref().unwrap_or("-")))
            .collect::<Vec<_>>()
            .join("; ")
    );
    Ok(format!("{} identity checks pass with zero residual", reports.len()))
}

fn criterion_9() -> Outcome {
    let e10 = CurveConfig::builtin("E10").unwrap();
    let (sig, det) = common::signature_and_det(e10.gram());
    ensure!(sig == (1, 9, 0) && det == (-1).into(), "oracle E10: signature {sig:?}, det {det}");
    let lib = curve_config::lattice_invariants(&e10);
    ensure!(lib.rank == 10 && lib.det == -1 && lib.signature() == (1, 9, 0), "library E10: {lib:?}");
    for (name, gram) in [("X20", build_x_config().gram().to_vec()), ("typeVII", build_type_vii_graph().gram())] {
        let (sig, _) = common::signature_and_det(&gram);
        ensure!(gram.len() == 20 && sig == (1, 9, 10), "oracle {name}: signature {sig:?}");
    }
    let lib = curve_config::lattice_invariants(&build_x_config());
    ensure!(lib.rank == 10 && lib.signature() == (1, 9, 10), "library X20: {lib:?}");
    Ok("E10: rank 10, det -1, (1,9); type VII: rank 10, (1,9), radical of dimension 10".into())
}

fn criterion_10() -> Outcome {
    let y = curve("Ystar").unwrap();
    let a = gf4("a");
    let hj = half_fiber_j(&y, &a).map_err(|e| e.to_string())?;
    let stated = gf4("a^48/((a + 1)^20*(a^2 + a + 1)^4)");
    let j_a = common::j_invariant(y.coefficients()).substitute(var("t"), &a).unwrap();
    ensure!(hj == stated, "half-fiber j = {hj}");
    ensure!(hj == j_a.square(), "half-fiber j is not j(E_a)^2 = {}", j_a.square());
    ensure!(!hj.is_constant(), "half-fiber j is constant");

    let r = curve("R").unwrap();
    let t2 = gf4("t^2");
    let changed: Vec<RatFunc> = r.coefficients().iter().map(|c| c.substitute(var("s"), &t2).unwrap()).collect();
    let target: Vec<RatFunc> = y.coefficients().into_iter().cloned().collect();
    ensure!(changed == target, "R(s = t^2) coefficients {changed:?}");
    ensure!(r.frobenius_base_change(var("t")).unwrap() == y, "library base change differs");
    let lhs = common::discriminant(r.coefficients()).substitute(var("s"), &t2).unwrap();
    ensure!(lhs == common::discriminant(y.coefficients()), "Delta_R(t^2) != Delta_Y");
    Ok("half-fiber j = j(E_a)^2, non-constant; R(s = t^2) = Ystar with Delta_R(t^2) = Delta_Y".into())
}

/// Image of a point of P^1(GF(4)) under t -> t/(t+1); `None` is infinity.
fn mobius(p: Option<u32>) -> Option<u32> {
    let f = FiniteField::GF4;
    match p {
        None => Some(1),
        Some(1) => None,
        Some(c) => {
            let c = f.element(c);
            let v = c.try_mul(c.try_add(f.one()).unwrap().inv().unwrap()).unwrap();
            (0..4).find(|&i| f.element(i) == v)
        }
    }
}

fn criterion_11() -> Outcome {
    let pts: Vec<Option<u32>> = vec![None, Some(0), Some(1), Some(2), Some(3)];
    ensure!(pts.iter().all(|&p| mobius(mobius(p)) == p), "Mobius map is not an involution");
    ensure!(pts.iter().any(|&p| mobius(p) != p), "Mobius map is the identity");
    // GF(4) = {0, 1, w = 2, w^2 = 3}.
    ensure!(mobius(Some(1)).is_none() && mobius(None) == Some(1), "{{1, inf}} not swapped");
    ensure!(mobius(Some(2)) == Some(3) && mobius(Some(3)) == Some(2), "{{w, w^2}} not swapped");

    let sigma: HashMap<Var, RatFunc> =
        [("t", "t/(t + 1)"), ("x", "(x + t^4 + t^2 + 1)/(t + 1)^4"), ("y", "(x + y + t^6 + t^2)/(t + 1)^6")]
            .iter()
            .map(|(v, e)| (var(v), gf4(e)))
            .collect();
    let sections = ystar_sections();
    let back = HashMap::from([(var("t"), gf4("t/(t + 1)"))]);
    let push = |p: &CurvePoint| -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let at = HashMap::from([(var("x"), x.clone()), (var("y"), y.clone())]);
                let img = |v: &str| sigma[&var(v)].compose(&at).unwrap().compose(&back).unwrap();
                CurvePoint::affine(img("x"), img("y"))
            }
        }
    };
    // sigma^*(P) = Q iff sigma(Q) = P.
    let mut pullback = BTreeMap::new();
    for (q, point) in &sections {
        let image = push(point);
        let p =
            sections.iter().find(|(_, s)| *s == image).map(|(n, _)| *n).ok_or(format!("sigma({q}) is no section"))?;
        pullback.insert(p, *q);
    }
    let printed: BTreeMap<&str, &str> = [
        ("s0", "s0"),
        ("s1", "s2"),
        ("s2", "s4"),
        ("s4", "s3"),
        ("s3", "s1"),
        ("m0", "m0"),
        ("m1", "m2"),
        ("m2", "m4"),
        ("m4", "m3"),
        ("m3", "m1"),
    ]
    .into();
    ensure!(pullback == printed, "oracle sigma^*: {pullback:?}");

    let f = curve("Ystar").unwrap().equation(var("x"), var("y"));
    let composed = RatFunc::from_poly(f.clone()).compose(&sigma).unwrap();
    let ratio = composed.try_div(&RatFunc::from_poly(f)).unwrap();
    let preserved = !ratio.vars().contains(&var("x")) && !ratio.vars().contains(&var("y"));
    let lib: BTreeMap<String, CheckStatus> = verify_sigma_y().into_iter().map(|r| (r.check_id, r.status)).collect();
    let eq = lib["sigmaY.equation_preserved"];
    ensure!(lib["sigmaY.base_action"] == CheckStatus::Pass, "library base action: {}", lib["sigmaY.base_action"]);
    ensure!(lib["sigmaY.section_permutation"] == CheckStatus::Pass, "library permutation check fails");
    ensure!(
        (preserved && eq == CheckStatus::Pass) || (!preserved && eq == CheckStatus::Open),
        "equation preserved: {preserved}, library status {eq}"
    );
    Ok(format!("Mobius involution swaps {{1,inf}}, {{w,w^2}}; printed sigma^* reproduced; equation residual: {eq}"))
}

/// The id list of a "not passing: ids | details" message.
fn failing_ids(msg: &str) -> Option<String> {
    msg.strip_prefix("not passing: ")?.split(" | ").next().map(str::to_string)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "discriminant and j", criterion_1),
        (2, "point groups", criterion_2),
        (3, "derivations", criterion_3),
        (4, "divisorial bookkeeping", criterion_4),
        (5, "graph cross-validation", criterion_5),
        (6, "Vinberg", criterion_6),
        (7, "rule engine", criterion_7),
        (8, "constructions", criterion_8),
        (9, "lattice invariants", criterion_9),
        (10, "non-isotriviality", criterion_10),
        (11, "sigma diagnostics", criterion_11),
    ];
    let mut unexpected = 0;
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let expected = EXPECTED_FAILURES.iter().find(|(k, _, _)| *k == n);
        match (outcome, expected) {
            (Ok(msg), None) => println!("criterion {n} ({name}): PASS: {msg} [{secs:.2}s]"),
            (Ok(msg), Some(_)) => {
                unexpected += 1;
                println!("criterion {n} ({name}): PASS, but a failure was expected: {msg} [{secs:.2}s]");
            }
            (Err(msg), Some((_, ids, why))) if failing_ids(&msg) == Some(ids.join(", ")) => {
                println!("criterion {n} ({name}): FAIL (expected: {why}): {msg} [{secs:.2}s]");
            }
            (Err(msg), _) => {
                unexpected += 1;
                println!("criterion {n} ({name}): FAIL: {msg} [{secs:.2}s]");
            }
        }
    }
    if unexpected == 0 {
        println!("acceptance: no unexpected results");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
