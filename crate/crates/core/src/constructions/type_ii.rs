//! The pencil λ(x0+x1+x2+x3)^2 + μx0x3 on the quadric x0x3 + x1x2 = 0 and
//! the rational double points of the resulting double cover.

use super::{node_certificate, poly, root_multiplicity, singular_at_origin, substitute, IdentityCheckReport};
use crate::algebra::{var, FiniteField, Poly};

const QUADRIC: &str = "x0*x3 + x1*x2";
const PENCIL: &str = "lam*(x0 + x1 + x2 + x3)^2 + mu*x0*x3";
const COORDS: [&str; 4] = ["x0", "x1", "x2", "x3"];

pub fn verify_type_ii() -> Vec<IdentityCheckReport> {
    vec![quadrangle_tangency(), double_lines(), a3_normal_form(), a3_coordinate_change(), a1_node()]
}

/// Each member of the pencil touches each line of the quadrangle at one
/// point.
fn quadrangle_tangency() -> IdentityCheckReport {
    let field = FiniteField::GF2;
    let pencil = poly(PENCIL, field);
    let (r, s) = (var("r"), var("s"));
    let one = field.one();
    let lines = [
        ("L01", ["0", "0", "r", "s"], "(0,0,1,1)"),
        ("L02", ["0", "r", "0", "s"], "(0,1,0,1)"),
        ("L13", ["r", "0", "s", "0"], "(1,0,1,0)"),
        ("L23", ["r", "s", "0", "0"], "(1,1,0,0)"),
    ];
    let mut notes = Vec::new();
    for (name, param, point) in lines {
        let subs: Vec<(&str, &str)> = COORDS.iter().copied().zip(param).collect();
        if !substitute(&poly(QUADRIC, field), &subs).is_zero() {
            return IdentityCheckReport::fail("typeII.quadrangle_tangency", None, format!("{name} is not on Q"));
        }
        let restricted = substitute(&pencil, &subs);
        // The double root r = s is the stated point.
        let image: Vec<String> =
            param.iter().map(|c| substitute(&poly(c, field), &[("r", "1"), ("s", "1")]).to_string()).collect();
        let tangent_point = format!("({})", image.join(","));
        let rest = restricted.div_exact(&poly("(r + s)^2", field));
        let ok = root_multiplicity(&restricted, r, s, one, one) >= 2
            && tangent_point == point
            && rest.is_some_and(|q| !q.contains_var(r) && !q.contains_var(s));
        if !ok {
            return IdentityCheckReport::fail(
                "typeII.quadrangle_tangency",
                Some(restricted.to_string()),
                format!("{name}: no double root at {point}"),
            );
        }
        notes.push(format!("{name} at {point}"));
    }
    IdentityCheckReport::pass(
        "typeII.quadrangle_tangency",
        format!("restricted pencil lam*(r + s)^2: {}", notes.join(", ")),
    )
}

/// C_{1,0} is the plane x0+x1+x2+x3 = 0 doubled, which cuts Q in L1 + L2.
fn double_lines() -> IdentityCheckReport {
    let field = FiniteField::GF2;
    let q = poly(QUADRIC, field);
    let on_plane = substitute(&q, &[("x3", "x0 + x1 + x2")]);
    let residual = &on_plane + &poly("(x0 + x1)*(x0 + x2)", field);
    IdentityCheckReport::from_residual(
        "typeII.double_lines",
        &residual,
        "Q restricted to x0+x1+x2+x3 = 0 is (x0+x1)(x0+x2): C_{1,0} = 2L1 + 2L2",
    )
}

/// f = z^2 + uz + u(u+v^2) satisfies f = ts + v^4 for t = z+ωu+v^2,
/// s = z+ω^2u+v^2.
fn a3_normal_form() -> IdentityCheckReport {
    let field = FiniteField::GF4;
    let f = poly("z^2 + u*z + u*(u + v^2)", field);
    let ts = poly("(z + w*u + v^2)*(z + w^2*u + v^2)", field);
    let residual = &(&ts + &poly("v^4", field)) + &f;
    let without_v4 = &ts + &f;
    IdentityCheckReport::from_residual(
        "typeII.a3_normal_form",
        &residual,
        format!(
            "(z+wu+v^2)(z+w^2u+v^2) + v^4 = z^2 + uz + u(u+v^2) over GF(4), so f = 0 is v^4 + ts = 0; \
             the product alone differs from f by {without_v4}"
        ),
    )
}

/// (z, u, v) -> (t, s, v) is invertible: its Jacobian determinant is the
/// constant ω + ω^2 = 1, and the origin is singular on f = 0.
fn a3_coordinate_change() -> IdentityCheckReport {
    let field = FiniteField::GF4;
    let f = poly("z^2 + u*z + u*(u + v^2)", field);
    let vars = [var("u"), var("v"), var("z")];
    let t = poly("z + w*u + v^2", field);
    let s = poly("z + w^2*u + v^2", field);
    let jac = |p: &Poly, x: &str| p.partial(var(x));
    // Rows (t, s, v), columns (z, u, v); the v row is (0, 0, 1).
    let det = &(&jac(&t, "z") * &jac(&s, "u")) + &(&jac(&t, "u") * &jac(&s, "z"));
    let residual = &det + &Poly::one(field);
    if !singular_at_origin(&f, &vars) {
        return IdentityCheckReport::fail("typeII.a3_coordinate_change", None, "origin is not singular");
    }
    IdentityCheckReport::from_residual(
        "typeII.a3_coordinate_change",
        &residual,
        format!("Jacobian determinant {det}; f singular at the origin"),
    )
}

fn a1_node() -> IdentityCheckReport {
    let f = poly("z^2 + u*v*z + u*v", FiniteField::GF2);
    let vars = [var("u"), var("v"), var("z")];
    IdentityCheckReport::from_result("typeII.a1_node", node_certificate(&f, &vars))
}
