//! Built-in curves and the ten sections of the K3 surface `Ystar`.

use super::{CurvePoint, WeierstrassCurve, WeierstrassError};
use crate::algebra::{parse_ratfunc, var, FiniteField, RatFunc};

pub const CURVE_NAMES: [&str; 4] = ["E", "R", "Ystar", "kummerEF"];

/// Built-in curve by name:
/// - `E`: y^2 + y = x^3 + x^2 over GF(4);
/// - `R`: y^2 + s xy + y = x^3 + x^2 + s over GF(4)(s);
/// - `Ystar`: y^2 + t^2 xy + y = x^3 + x^2 + t^2 over GF(4)(t);
/// - `kummerEF`: y^2 + xy = x^3 + bx over GF(2)(b).
pub fn curve(name: &str) -> Result<WeierstrassCurve, WeierstrassError> {
    let gf4 = FiniteField::GF4;
    match name {
        "E" => WeierstrassCurve::from_strs(gf4, None, ["0", "1", "1", "0", "0"]),
        "R" => WeierstrassCurve::from_strs(gf4, Some(var("s")), ["s", "1", "1", "0", "s"]),
        "Ystar" => WeierstrassCurve::from_strs(gf4, Some(var("t")), ["t^2", "1", "1", "0", "t^2"]),
        "kummerEF" => WeierstrassCurve::from_strs(FiniteField::GF2, None, ["1", "0", "0", "b", "0"]),
        _ => Err(WeierstrassError::UnknownBuiltin(name.to_string())),
    }
}

fn point(x: &str, y: &str) -> CurvePoint {
    let f = FiniteField::GF4;
    CurvePoint::affine(parse_ratfunc(x, f).expect("valid"), parse_ratfunc(y, f).expect("valid"))
}

/// The GF(4)-points P0..P4 of `E`, P0 = infinity.
pub fn e_points() -> Vec<(&'static str, CurvePoint)> {
    vec![
        ("P0", CurvePoint::Infinity),
        ("P1", point("1", "0")),
        ("P2", point("0", "0")),
        ("P3", point("0", "1")),
        ("P4", point("1", "1")),
    ]
}

/// The sections s0..s4, m0..m4 of `Ystar`.
pub fn ystar_sections() -> Vec<(&'static str, CurvePoint)> {
    vec![
        ("s0", CurvePoint::Infinity),
        ("s1", point("1", "t^2")),
        ("s2", point("t^2", "t^2")),
        ("s3", point("t^2", "t^4 + t^2 + 1")),
        ("s4", point("1", "1")),
        ("m0", point("1/t^2", "1/t^3 + 1/t^2 + t")),
        ("m1", point("t^3 + t + 1", "t^4 + t^3 + t")),
        ("m2", point("t", "t^3")),
        ("m3", point("t", "1")),
        ("m4", point("t^3 + t + 1", "t^5 + t^4 + t^2 + t + 1")),
    ]
}

pub fn ystar_section(name: &str) -> Option<CurvePoint> {
    ystar_sections().into_iter().find(|(n, _)| *n == name).map(|p| p.1)
}

/// All elements of GF(4) as constant rational functions.
pub fn gf4_constants() -> Vec<RatFunc> {
    FiniteField::GF4.elements().map(RatFunc::constant).collect()
}
