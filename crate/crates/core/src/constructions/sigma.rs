//! The automorphism σ of the K3 surface y^2 + t^2xy + y = x^3 + x^2 + t^2
//! covering t ↦ t/(t+1), read with the printed s taken to be t.

use std::collections::HashMap;

use super::IdentityCheckReport;
use crate::algebra::{parse_ratfunc, var, FieldElement, FiniteField, RatFunc, Var};
use crate::weierstrass::builtins::{curve, ystar_sections};
use crate::weierstrass::CurvePoint;

const SIGMA: [(&str, &str); 3] =
    [("t", "t/(t + 1)"), ("x", "(x + t^4 + t^2 + 1)/(t + 1)^4"), ("y", "(x + y + t^6 + t^2)/(t + 1)^6")];

/// The printed table of σ^* on sections.
pub const PRINTED_PULLBACK: [(&str, &str); 10] = [
    ("s0", "s0"),
    ("s1", "s2"),
    ("s2", "s4"),
    ("s3", "s1"),
    ("s4", "s3"),
    ("m0", "m0"),
    ("m1", "m2"),
    ("m2", "m4"),
    ("m3", "m1"),
    ("m4", "m3"),
];

fn sigma_map() -> HashMap<Var, RatFunc> {
    SIGMA.iter().map(|(v, s)| (var(v), parse_ratfunc(s, FiniteField::GF4).expect("valid"))).collect()
}

pub fn verify_sigma_y() -> Vec<IdentityCheckReport> {
    vec![base_action(), section_permutation(), equation_preserved(), order()]
}

/// Image of a point of P^1(GF(4)) under t ↦ t/(t+1); `None` is ∞.
fn mobius(p: Option<FieldElement>) -> Option<FieldElement> {
    let one = FiniteField::GF4.one();
    match p {
        None => Some(one),
        Some(c) => {
            let den = c.try_add(one).expect("same field");
            if den.is_zero() {
                None
            } else {
                Some(c.try_mul(den.inv().expect("nonzero")).expect("same field"))
            }
        }
    }
}

fn show(p: Option<FieldElement>) -> String {
    p.map_or("inf".to_string(), |c| c.to_string())
}

fn base_action() -> IdentityCheckReport {
    let field = FiniteField::GF4;
    let m = parse_ratfunc("t/(t + 1)", field).expect("valid");
    let twice = m.substitute(var("t"), &m).expect("defined");
    let w = field.generator();
    let points: Vec<Option<FieldElement>> = std::iter::once(None).chain(field.elements().map(Some)).collect();
    let images: Vec<String> = points.iter().map(|&p| format!("{} -> {}", show(p), show(mobius(p)))).collect();
    let swaps = mobius(Some(field.one())).is_none()
        && mobius(None) == Some(field.one())
        && mobius(Some(w)) == Some(w.pow(2))
        && mobius(Some(w.pow(2))) == Some(w)
        && mobius(Some(field.zero())) == Some(field.zero());
    let involution = twice == RatFunc::var(field, var("t")) && points.iter().all(|&p| mobius(mobius(p)) == p);
    let details = format!("(t/(t+1)) o (t/(t+1)) = {twice}; {}", images.join(", "));
    if swaps && involution {
        IdentityCheckReport::pass("sigmaY.base_action", details)
    } else {
        IdentityCheckReport::fail("sigmaY.base_action", None, details)
    }
}

fn apply(map: &HashMap<Var, RatFunc>, p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => {
            let at = HashMap::from([(var("x"), x.clone()), (var("y"), y.clone())]);
            let t = var("t");
            // The new parameter is t' = t/(t+1), so t = t'/(t'+1).
            let back = HashMap::from([(t, map[&t].clone())]);
            let push = |v: &str| map[&var(v)].compose(&at).and_then(|r| r.compose(&back)).expect("defined");
            CurvePoint::affine(push("x"), push("y"))
        }
    }
}

/// σ_*(P) for each of the ten sections, by name; `None` if the image is not
/// among them.
pub fn pushforward_sections() -> Vec<(&'static str, Option<&'static str>)> {
    let map = sigma_map();
    let sections = ystar_sections();
    sections
        .iter()
        .map(|(name, p)| {
            let image = apply(&map, p);
            (*name, sections.iter().find(|(_, q)| *q == image).map(|(n, _)| *n))
        })
        .collect()
}

/// σ^*(P) = Q iff σ(Q) = P.
fn section_permutation() -> IdentityCheckReport {
    let push = pushforward_sections();
    let mut pullback = Vec::new();
    for (target, _) in &push {
        let source = push.iter().find(|(_, img)| *img == Some(*target)).map(|(n, _)| *n);
        pullback.push((*target, source));
    }
    let mismatches: Vec<String> = PRINTED_PULLBACK
        .iter()
        .filter(|(p, q)| pullback.iter().find(|(t, _)| t == p).and_then(|(_, s)| *s) != Some(*q))
        .map(|(p, q)| format!("{p} -> {q}"))
        .collect();
    let shown = pullback.iter().map(|(p, q)| format!("{p}->{}", q.unwrap_or("?"))).collect::<Vec<_>>().join(" ");
    if mismatches.is_empty() {
        IdentityCheckReport::pass("sigmaY.section_permutation", format!("sigma^*: {shown}"))
    } else {
        IdentityCheckReport::fail(
            "sigmaY.section_permutation",
            None,
            format!("sigma^*: {shown}; printed entries not reproduced: {}", mismatches.join(", ")),
        )
    }
}

/// F ∘ σ = c F with c a function of t alone.
fn equation_preserved() -> IdentityCheckReport {
    let f = curve("Ystar").expect("built-in").equation(var("x"), var("y"));
    let composed = RatFunc::from_poly(f.clone()).compose(&sigma_map()).expect("defined");
    match composed.num().div_exact(&f) {
        Some(c) if !c.contains_var(var("x")) && !c.contains_var(var("y")) => {
            let factor = RatFunc::new(c, composed.den().clone()).expect("nonzero");
            IdentityCheckReport::pass("sigmaY.equation_preserved", format!("with s = t: F(sigma) = ({factor}) F"))
        }
        _ => IdentityCheckReport::open(
            "sigmaY.equation_preserved",
            Some(composed.num().to_string()),
            "with s = t the equation is not preserved; the intended formula is unresolved",
        ),
    }
}

fn order() -> IdentityCheckReport {
    let map = sigma_map();
    let identity: HashMap<Var, RatFunc> =
        ["t", "x", "y"].iter().map(|v| (var(v), RatFunc::var(FiniteField::GF4, var(v)))).collect();
    let mut power = map.clone();
    for k in 1..=8 {
        if power == identity {
            let details = format!("sigma has order {k} on (t, x, y)");
            return if k == 4 {
                IdentityCheckReport::pass("sigmaY.order", details)
            } else {
                IdentityCheckReport::fail("sigmaY.order", None, details)
            };
        }
        power = power.iter().map(|(v, r)| (*v, r.compose(&map).expect("defined"))).collect();
    }
    IdentityCheckReport::fail("sigmaY.order", None, "sigma has order greater than 8")
}
