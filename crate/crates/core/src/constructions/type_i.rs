//! The smooth quadric x0x3 + x1x2 = 0, the involution reversing coordinates
//! and the pencil λ(x0+x3)(x1+x2) + μx0x3.

use super::{
    empty_certificate, eval_point, poly, projective_points, proportional, root_multiplicity, single_point_certificate,
    substitute, tjurina_exponent, IdentityCheckReport, ProjectiveMap,
};
use crate::algebra::{var, FiniteField, Poly, Var};

const QUADRIC: &str = "x0*x3 + x1*x2";
const PENCIL: &str = "lam*(x0 + x3)*(x1 + x2) + mu*x0*x3";
const COORDS: [&str; 4] = ["x0", "x1", "x2", "x3"];

pub(crate) fn segre_substitution() -> [(&'static str, &'static str); 4] {
    [("x0", "u0*v0"), ("x1", "u0*v1"), ("x2", "u1*v0"), ("x3", "u1*v1")]
}

fn tau() -> ProjectiveMap {
    ProjectiveMap::from_strs(&COORDS, &["x3", "x2", "x1", "x0"], FiniteField::GF2).expect("valid map")
}

pub fn verify_type_i() -> Vec<IdentityCheckReport> {
    vec![
        segre(),
        tau_fixed_points_exhaustive(),
        tau_fixed_points_symbolic(),
        fixed_point_off_branch(),
        degenerate_members(),
        conic_tangency(),
        isolated_singularity(),
    ]
}

fn segre() -> IdentityCheckReport {
    let q = poly(QUADRIC, FiniteField::GF2);
    let r = substitute(&q, &segre_substitution());
    IdentityCheckReport::from_residual("typeI.segre", &r, "x0x3 + x1x2 vanishes on (u0v0, u0v1, u1v0, u1v1)")
}

fn tau_fixed_points_exhaustive() -> IdentityCheckReport {
    let q = poly(QUADRIC, FiniteField::GF2);
    let t = tau();
    let coords: Vec<Var> = COORDS.iter().map(|c| var(c)).collect();
    let mut found = Vec::new();
    for k in 1..=4u8 {
        let field = FiniteField::new(k).expect("supported degree");
        let fixed: Vec<String> = projective_points(field, 4)
            .into_iter()
            .filter(|p| eval_point(&q, &coords, p).is_zero())
            .filter(|p| {
                let image: Vec<_> = t.components().iter().map(|c| eval_point(c, &coords, p)).collect();
                proportional(p, &image)
            })
            .map(|p| format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        found.push((k, fixed));
    }
    let ok = found.iter().all(|(_, f)| f.len() == 1 && f[0] == "(1,1,1,1)");
    let details = found.iter().map(|(k, f)| format!("GF(2^{k}): {}", f.join(" "))).collect::<Vec<_>>().join("; ");
    if ok {
        IdentityCheckReport::pass("typeI.tau_fixed_points_exhaustive", details)
    } else {
        IdentityCheckReport::fail("typeI.tau_fixed_points_exhaustive", None, details)
    }
}

/// Fixed points of τ on Q over the algebraic closure, chart by chart.
fn tau_fixed_points_symbolic() -> IdentityCheckReport {
    let field = FiniteField::GF2;
    let q = poly(QUADRIC, field);
    let t = tau();
    let x = t.coord_polys();
    let mut gens = t.fixed_point_minors(&x);
    gens.push(q);
    let mut notes = Vec::new();
    for chart in 0..4 {
        // x_chart = 1 and earlier coordinates vanish.
        let mut subs: Vec<(&str, &str)> = (0..chart).map(|i| (COORDS[i], "0")).collect();
        subs.push((COORDS[chart], "1"));
        let local: Vec<Poly> = gens.iter().map(|g| substitute(g, &subs)).filter(|g| !g.is_zero()).collect();
        if chart == 0 {
            let pt: Vec<_> = COORDS[1..].iter().map(|c| (var(c), field.one())).collect();
            match single_point_certificate(&local, &pt) {
                Ok(d) => notes.push(format!("x0=1: only (1,1,1,1); {d}")),
                Err(e) => return IdentityCheckReport::fail("typeI.tau_fixed_points_symbolic", None, e),
            }
        } else if empty_certificate(&local) {
            notes.push(format!("{}=1: none", COORDS[chart]));
        } else {
            return IdentityCheckReport::fail(
                "typeI.tau_fixed_points_symbolic",
                None,
                format!("fixed points in the chart {}=1", COORDS[chart]),
            );
        }
    }
    IdentityCheckReport::pass("typeI.tau_fixed_points_symbolic", notes.join("; "))
}

/// The fixed point is a smooth point of Q outside the branch curve C_{0,1}.
fn fixed_point_off_branch() -> IdentityCheckReport {
    let field = FiniteField::GF2;
    let q = poly(QUADRIC, field);
    let coords: Vec<Var> = COORDS.iter().map(|c| var(c)).collect();
    let p = vec![field.one(); 4];
    let branch = eval_point(&poly("x0*x3", field), &coords, &p);
    let smooth = coords.iter().any(|&v| !eval_point(&q.partial(v), &coords, &p).is_zero());
    if branch.is_zero() || !smooth {
        IdentityCheckReport::fail("typeI.fixed_point_off_branch", None, "(1,1,1,1) is singular on Q or lies on C_{0,1}")
    } else {
        IdentityCheckReport::pass("typeI.fixed_point_off_branch", "x0x3 = 1 at (1,1,1,1); Q smooth there")
    }
}

/// C_{1,0} = Q1 + Q2 and C_{0,1} = L01 + L02 + L13 + L23.
fn degenerate_members() -> IdentityCheckReport {
    let field = FiniteField::GF2;
    let pencil = poly(PENCIL, field);
    let q = poly(QUADRIC, field);
    let c10 = substitute(&pencil, &[("lam", "1"), ("mu", "0")]);
    let c01 = substitute(&pencil, &[("lam", "0"), ("mu", "1")]);
    let residuals = [
        &c10 + &poly("(x0 + x3)*(x1 + x2)", field),
        &c01 + &poly("x0*x3", field),
        // x0 = 0 on Q is L01 + L02, x3 = 0 on Q is L13 + L23.
        &substitute(&q, &[("x0", "0")]) + &poly("x1*x2", field),
        &substitute(&q, &[("x3", "0")]) + &poly("x1*x2", field),
    ];
    IdentityCheckReport::from_residuals(
        "typeI.degenerate_members",
        &residuals,
        "C_{1,0} = (x0+x3)(x1+x2) = Q1 + Q2; C_{0,1} = x0x3 = L01 + L02 + L13 + L23",
    )
}

/// Q1 and Q2 meet every member of the pencil in two double points at
/// vertices of the quadrangle.
fn conic_tangency() -> IdentityCheckReport {
    let field = FiniteField::GF2;
    let pencil = poly(PENCIL, field);
    let q = poly(QUADRIC, field);
    let (r, s) = (var("r"), var("s"));
    let (zero, one) = (field.zero(), field.one());
    // (conic, parametrization, [(root, vertex)])
    let cases = [
        ("Q1", "x0 + x3", ["r*s", "s^2", "r^2", "r*s"], [((zero, one), "e1"), ((one, zero), "e2")]),
        ("Q2", "x1 + x2", ["s^2", "r*s", "r*s", "r^2"], [((zero, one), "e0"), ((one, zero), "e3")]),
    ];
    let mut notes = Vec::new();
    for (name, plane, param, roots) in cases {
        let subs: Vec<(&str, &str)> = COORDS.iter().copied().zip(param).collect();
        let on_q = substitute(&q, &subs);
        let on_plane = substitute(&poly(plane, field), &subs);
        if !on_q.is_zero() || !on_plane.is_zero() {
            return IdentityCheckReport::fail("typeI.conic_tangency", Some((&on_q + &on_plane).to_string()), name);
        }
        let restricted = substitute(&pencil, &subs);
        let mut rest = restricted.clone();
        for ((a, b), vertex) in roots {
            if root_multiplicity(&restricted, r, s, a, b) < 2 {
                return IdentityCheckReport::fail(
                    "typeI.conic_tangency",
                    Some(restricted.to_string()),
                    format!("{name} is not tangent at {vertex}"),
                );
            }
            let lin = &Poly::var(field, r).scale(b) + &Poly::var(field, s).scale(a);
            rest = rest.div_exact(&lin.square()).expect("double root");
            notes.push(format!("{name} double at {vertex}"));
        }
        if rest.contains_var(r) || rest.contains_var(s) {
            return IdentityCheckReport::fail("typeI.conic_tangency", Some(restricted.to_string()), "extra roots");
        }
    }
    IdentityCheckReport::pass("typeI.conic_tangency", format!("restricted pencil = mu*r^2*s^2; {}", notes.join(", ")))
}

fn isolated_singularity() -> IdentityCheckReport {
    let f = poly("z^2 + u*v*z + u*v*(u + v)", FiniteField::GF2);
    let vars = [var("u"), var("v"), var("z")];
    if !super::singular_at_origin(&f, &vars) {
        return IdentityCheckReport::fail("typeI.isolated_singularity", None, "origin is not singular");
    }
    match tjurina_exponent(&f, &vars, 4) {
        Some(k) => IdentityCheckReport::pass(
            "typeI.isolated_singularity",
            format!("m^{k} lies in (f, f_u, f_v, f_z) for f = {f}"),
        ),
        None => IdentityCheckReport::fail("typeI.isolated_singularity", None, "m^4 not in the Tjurina ideal"),
    }
}
