use std::collections::HashMap;
use std::sync::OnceLock;

use enriques::algebra::{valuation, var, FieldElement, FiniteField, Monomial, Place, Poly, RatFunc, Var};
use enriques::derivations::{b_of_a, Derivation};
use enriques::dynkin::{build_e10_graph, build_type_vii_graph, isotropic_class, maximal_parabolics};
use enriques::enriques_rules::{
    admissible_classes_for_fibration, classify, Fibration, FibrationFacts, Provenance, FACTS_NAMES,
};
use proptest::prelude::*;

fn field(k: u8) -> FiniteField {
    FiniteField::new(k).unwrap()
}

fn elem(k: u8, bits: u32) -> FieldElement {
    field(k).element(bits % field(k).order())
}

fn add(a: FieldElement, b: FieldElement) -> FieldElement {
    a.try_add(b).unwrap()
}

fn mul(a: FieldElement, b: FieldElement) -> FieldElement {
    a.try_mul(b).unwrap()
}

/// Polynomials in x, y over GF(4) with up to six terms of degree < 4 in each
/// variable.
fn poly_xy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u8..4, 0u32..4, 0u32..4), 0..6).prop_map(|terms| {
        Poly::from_terms(
            FiniteField::GF4,
            terms.into_iter().map(|(c, i, j)| (c, Monomial::from_pairs(vec![(var("x"), i), (var("y"), j)]))),
        )
    })
}

fn poly_t(max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u8..4, 0..=max_deg), 1..5).prop_map(|terms| {
        Poly::from_terms(
            FiniteField::GF4,
            terms.into_iter().map(|(c, e)| (c, Monomial::from_pairs(vec![(var("t"), e)]))),
        )
    })
}

/// Rational functions in t and x over GF(2) with nonzero denominators.
fn ratfunc_tx() -> impl Strategy<Value = RatFunc> {
    let p = || {
        prop::collection::vec((0u32..3, 0u32..3), 1..4).prop_map(|ms| {
            Poly::from_terms(
                FiniteField::GF2,
                ms.into_iter().map(|(i, j)| (1, Monomial::from_pairs(vec![(var("t"), i), (var("x"), j)]))),
            )
        })
    };
    (p(), p()).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

/// Every fibration of the built-in facts, computed once.
fn fibration_pool() -> &'static [Fibration] {
    static POOL: OnceLock<Vec<Fibration>> = OnceLock::new();
    POOL.get_or_init(|| FACTS_NAMES.iter().flat_map(|n| FibrationFacts::builtin(n).unwrap().fibrations).collect())
}

proptest! {
    #[test]
    fn field_axioms(k in 1u8..=8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (a, b, c) = (elem(k, a), elem(k, b), elem(k, c));
        prop_assert_eq!(add(a, b), add(b, a));
        prop_assert_eq!(mul(a, b), mul(b, a));
        prop_assert_eq!(add(add(a, b), c), add(a, add(b, c)));
        prop_assert_eq!(mul(mul(a, b), c), mul(a, mul(b, c)));
        prop_assert_eq!(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
        prop_assert!(add(a, a).is_zero());
        if !a.is_zero() {
            prop_assert!(mul(a, a.inv().unwrap()).is_one());
            prop_assert!(a.pow(u64::from(field(k).order()) - 1).is_one());
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism(k in 1u8..=8, a in any::<u32>(), b in any::<u32>()) {
        let (a, b) = (elem(k, a), elem(k, b));
        prop_assert_eq!(add(a, b).frobenius(), add(a.frobenius(), b.frobenius()));
        prop_assert_eq!(mul(a, b).frobenius(), mul(a.frobenius(), b.frobenius()));
        let mut x = a;
        for _ in 0..k {
            x = x.frobenius();
        }
        prop_assert_eq!(x, a);
    }

    #[test]
    fn poly_ring_laws(f in poly_xy(), g in poly_xy(), h in poly_xy()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f + &f).is_zero());
        prop_assert_eq!((&f + &g).square(), &f.square() + &g.square());
    }

    #[test]
    fn partial_derivative_is_leibniz(f in poly_xy(), g in poly_xy()) {
        for v in [var("x"), var("y")] {
            prop_assert_eq!((&f * &g).partial(v), &(&f.partial(v) * &g) + &(&f * &g.partial(v)));
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(f in poly_xy(), g in poly_xy(), x in 0u32..4, y in 0u32..4) {
        let point: HashMap<Var, FieldElement> =
            HashMap::from([(var("x"), FiniteField::GF4.element(x)), (var("y"), FiniteField::GF4.element(y))]);
        let ev = |p: &Poly| p.eval_all(&point).unwrap();
        prop_assert_eq!(ev(&(&f * &g)), mul(ev(&f), ev(&g)));
        prop_assert_eq!(ev(&(&f + &g)), add(ev(&f), ev(&g)));
    }

    #[test]
    fn valuation_is_additive(f in poly_t(6), g in poly_t(6), c in 0u32..4) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let t = var("t");
        let (f, g) = (RatFunc::from_poly(f), RatFunc::from_poly(g));
        for place in [Place::at(t, FiniteField::GF4.element(c)), Place::infinity(t)] {
            let vf = valuation(&f, &place).unwrap();
            let vg = valuation(&g, &place).unwrap();
            prop_assert_eq!(valuation(&(&f * &g), &place).unwrap(), vf + vg);
            prop_assert_eq!(valuation(&f.try_div(&g).unwrap(), &place).unwrap(), vf - vg);
        }
    }

    #[test]
    fn derivations_satisfy_leibniz(f in ratfunc_tx(), g in ratfunc_tx()) {
        let d = Derivation::builtin("Dprime").unwrap().specialize(FiniteField::GF2.zero()).unwrap();
        prop_assert_eq!(d.apply(&(&f * &g)), &(&d.apply(&f) * &g) + &(&f * &d.apply(&g)));
        prop_assert!(d.apply(&(&f * &f)).is_zero());
    }

    #[test]
    fn specialization_commutes_with_closure(k in 2u8..=8, bits in any::<u32>(), which in 0usize..2) {
        let f = field(k);
        let alpha = elem(k, bits);
        let name = ["D", "Dprime"][which];
        let sym = Derivation::builtin(name).unwrap();
        match sym.specialize(alpha) {
            Ok(spec) => {
                let h = sym.p_closure_multiplier().unwrap();
                let a = RatFunc::constant(alpha);
                let h_alpha = h.substitute(var("a"), &a).unwrap();
                prop_assert_eq!(spec.p_closure_multiplier(), Some(h_alpha));
                prop_assert!(!b_of_a(f).den().eval_all(&HashMap::from([(var("a"), alpha)])).unwrap().is_zero());
            }
            Err(_) => prop_assert!(alpha.pow(3).is_one()),
        }
    }

    #[test]
    fn classify_refines_every_fibration(mask in 1u32..(1 << 12)) {
        let pool = fibration_pool();
        let chosen: Vec<_> = pool.iter().enumerate().filter(|(i, _)| mask & (1 << (i % 12)) != 0).map(|(_, f)| f.clone()).collect();
        let facts = FibrationFacts { name: "random".into(), provenance: Provenance::PaperStated, fibrations: chosen.clone() };
        let set = classify(&facts).unwrap();
        for f in &chosen {
            prop_assert!(set.is_subset(&admissible_classes_for_fibration(f).unwrap()));
        }
        let fewer = FibrationFacts { fibrations: chosen[1..].to_vec(), ..facts };
        prop_assert!(set.is_subset(&classify(&fewer).unwrap()));
    }
}

/// Each component of a maximal parabolic subdiagram carries a primitive
/// positive kernel vector of its Gram matrix.
#[test]
fn isotropic_marks_span_the_kernel() {
    for g in [build_type_vii_graph(), build_e10_graph()] {
        let gram = g.gram();
        for p in maximal_parabolics(&g).unwrap() {
            for c in &p.components {
                let marks = isotropic_class(&g, &c.vertices).unwrap();
                assert!(marks.iter().all(|&m| m > 0));
                assert_eq!(marks.iter().copied().fold(0, num_integer::gcd), 1);
                for &i in &c.vertices {
                    let s: i64 = c.vertices.iter().zip(&marks).map(|(&j, &m)| gram[i][j] * m as i64).sum();
                    assert_eq!(s, 0, "{}", p.describe(&g));
                }
            }
        }
    }
}
