//! Long Weierstrass models in characteristic 2 and their group law.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::WeierstrassError;
use crate::algebra::{parse_ratfunc, FiniteField, Poly, RatFunc, Var};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with coefficients in
/// GF(2^k) or in a rational function field over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub field: FiniteField,
    /// Parameter of the base curve for elliptic surfaces; `None` for a curve
    /// over a field.
    pub base: Option<Var>,
    pub a1: RatFunc,
    pub a2: RatFunc,
    pub a3: RatFunc,
    pub a4: RatFunc,
    pub a6: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: RatFunc,
    pub b4: RatFunc,
    pub b6: RatFunc,
    pub b8: RatFunc,
    pub c4: RatFunc,
    pub delta: RatFunc,
    pub j: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: RatFunc, y: RatFunc },
}

impl CurvePoint {
    pub fn affine(x: RatFunc, y: RatFunc) -> CurvePoint {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("inf"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl WeierstrassCurve {
    pub fn new(field: FiniteField, base: Option<Var>, a: [RatFunc; 5]) -> WeierstrassCurve {
        let [a1, a2, a3, a4, a6] = a;
        WeierstrassCurve { field, base, a1, a2, a3, a4, a6 }
    }

    /// Parses coefficients written in the polynomial grammar.
    pub fn from_strs(
        field: FiniteField,
        base: Option<Var>,
        a: [&str; 5],
    ) -> Result<WeierstrassCurve, WeierstrassError> {
        let mut parsed = Vec::with_capacity(5);
        for s in a {
            parsed.push(parse_ratfunc(s, field)?);
        }
        let a: [RatFunc; 5] = parsed.try_into().expect("five coefficients");
        Ok(WeierstrassCurve::new(field, base, a))
    }

    pub fn coefficients(&self) -> [&RatFunc; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    /// Characteristic-2 invariants. Fails with `SingularModel` when Δ = 0.
    pub fn invariants(&self) -> Result<Invariants, WeierstrassError> {
        let inv = self.invariants_unchecked();
        if inv.delta.is_zero() {
            return Err(WeierstrassError::SingularModel);
        }
        Ok(inv)
    }

    fn invariants_unchecked(&self) -> Invariants {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1.square();
        let b4 = a1 * a3;
        let b6 = a3.square();
        let b8 = &(&(&(&b2 * a6) + &(&b4 * a4)) + &(a2 * &b6)) + &a4.square();
        let c4 = b2.square();
        let delta = &(&(&b2.square() * &b8) + &b6.square()) + &(&(&b2 * &b4) * &b6);
        let j = if delta.is_zero() {
            RatFunc::zero(self.field)
        } else {
            (&(&c4 * &c4) * &c4).try_div(&delta).expect("nonzero discriminant")
        };
        Invariants { b2, b4, b6, b8, c4, delta, j }
    }

    pub fn discriminant(&self) -> Result<RatFunc, WeierstrassError> {
        Ok(self.invariants()?.delta)
    }

    /// Left side minus right side of the equation at (x, y).
    pub fn residual(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        let lhs = &(&y.square() + &(&(&self.a1 * x) * y)) + &(&self.a3 * y);
        let x2 = x.square();
        let rhs = &(&(&(&x2 * x) + &(&self.a2 * &x2)) + &(&self.a4 * x)) + &self.a6;
        &lhs + &rhs
    }

    pub fn on_curve(&self, p: &CurvePoint) -> Result<bool, WeierstrassError> {
        match p {
            CurvePoint::Infinity => Ok(true),
            CurvePoint::Affine { x, y } => {
                if x.field().join(self.field).is_none() || y.field().join(self.field).is_none() {
                    return Err(WeierstrassError::Algebra(crate::algebra::AlgebraError::FieldMismatch(
                        x.field(),
                        self.field,
                    )));
                }
                Ok(self.residual(x, y).is_zero())
            }
        }
    }

    fn require_on_curve(&self, p: &CurvePoint) -> Result<(), WeierstrassError> {
        if self.on_curve(p)? {
            Ok(())
        } else {
            Err(WeierstrassError::PointNotOnCurve(p.to_string()))
        }
    }

    /// -(x, y) = (x, y + a1 x + a3).
    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), &(y + &(&self.a1 * x)) + &self.a3),
        }
    }

    /// Chord-tangent addition for the long Weierstrass form.
    pub fn add_points(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, WeierstrassError> {
        self.require_on_curve(p)?;
        self.require_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        if *q == self.negate(p) {
            return CurvePoint::Infinity;
        }
        let lambda = if x1 == x2 {
            // Tangent: (3x^2 + 2 a2 x + a4 - a1 y) / (2y + a1 x + a3).
            let num = &(&x1.square() + &self.a4) + &(&self.a1 * y1);
            let den = &(&self.a1 * x1) + &self.a3;
            num.try_div(&den).expect("nonzero since P != -P")
        } else {
            (y1 + y2).try_div(&(x1 + x2)).expect("distinct abscissae")
        };
        let nu = y1 + &(&lambda * x1);
        let x3 = &(&(&(&lambda.square() + &(&self.a1 * &lambda)) + &self.a2) + x1) + x2;
        let y3 = &(&(&(&lambda + &self.a1) * &x3) + &nu) + &self.a3;
        CurvePoint::affine(x3, y3)
    }

    pub fn mul_point(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint, WeierstrassError> {
        self.require_on_curve(p)?;
        let mut base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Smallest n > 0 with nP = 0, searched up to `bound`.
    pub fn point_order(&self, p: &CurvePoint, bound: u32) -> Result<Option<u32>, WeierstrassError> {
        self.require_on_curve(p)?;
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Ok(Some(n));
            }
            acc = self.add_unchecked(&acc, p);
        }
        Ok(None)
    }

    /// Simultaneous substitution into all coefficients.
    pub fn substitute(
        &self,
        map: &HashMap<Var, RatFunc>,
        base: Option<Var>,
    ) -> Result<WeierstrassCurve, WeierstrassError> {
        let sub = |r: &RatFunc| r.compose(map);
        Ok(WeierstrassCurve {
            field: self.field,
            base,
            a1: sub(&self.a1)?,
            a2: sub(&self.a2)?,
            a3: sub(&self.a3)?,
            a4: sub(&self.a4)?,
            a6: sub(&self.a6)?,
        })
    }

    /// The specialization of a surface at `base = c`.
    pub fn fiber_curve(&self, c: crate::algebra::FieldElement) -> Result<WeierstrassCurve, WeierstrassError> {
        let base = self.base.ok_or(WeierstrassError::NoBase)?;
        self.substitute(&HashMap::from([(base, RatFunc::constant(c))]), None)
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile {
            field: FieldSpec {
                k: self.field.degree(),
                base: self.base.map_or_else(|| "none".to_string(), |v| v.to_string()),
            },
            a1: self.a1.to_string(),
            a2: self.a2.to_string(),
            a3: self.a3.to_string(),
            a4: self.a4.to_string(),
            a6: self.a6.to_string(),
        }
    }

    pub fn from_file(file: &CurveFile) -> Result<WeierstrassCurve, WeierstrassError> {
        let field = FiniteField::new(file.field.k)?;
        let base = match file.field.base.as_str() {
            "none" => None,
            name => Some(Var::new(name)?),
        };
        WeierstrassCurve::from_strs(field, base, [&file.a1, &file.a2, &file.a3, &file.a4, &file.a6])
    }

    pub fn from_json(text: &str) -> Result<WeierstrassCurve, WeierstrassError> {
        let file: CurveFile = serde_json::from_str(text).map_err(|e| WeierstrassError::Format(e.to_string()))?;
        WeierstrassCurve::from_file(&file)
    }

    /// The equation `lhs + rhs` as a polynomial in x, y (with base symbols),
    /// after clearing coefficient denominators.
    pub fn equation(&self, x: Var, y: Var) -> Poly {
        let xr = RatFunc::var(self.field, x);
        let yr = RatFunc::var(self.field, y);
        self.residual(&xr, &yr).num().clone()
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lhs = vec!["y^2".to_string()];
        let term = |c: &RatFunc, m: &str| -> Option<String> {
            if c.is_zero() {
                None
            } else if c.is_one() {
                Some(m.to_string())
            } else {
                Some(format!("({c})*{m}"))
            }
        };
        lhs.extend(term(&self.a1, "x*y"));
        lhs.extend(term(&self.a3, "y"));
        let mut rhs = vec!["x^3".to_string()];
        rhs.extend(term(&self.a2, "x^2"));
        rhs.extend(term(&self.a4, "x"));
        if !self.a6.is_zero() {
            rhs.push(format!("{}", self.a6));
        }
        write!(f, "{} = {}", lhs.join(" + "), rhs.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub k: u8,
    pub base: String,
}

/// On-disk curve description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub field: FieldSpec,
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
    pub a6: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::builtins;

    #[test]
    fn invariants_satisfy_j_delta_identity() {
        for name in builtins::CURVE_NAMES {
            let c = builtins::curve(name).unwrap();
            let inv = c.invariants().unwrap();
            assert_eq!(&inv.j * &inv.delta, &(&inv.c4 * &inv.c4) * &inv.c4, "{name}");
        }
    }

    #[test]
    fn singular_model_is_rejected() {
        let c = WeierstrassCurve::from_strs(FiniteField::GF2, None, ["0", "0", "0", "0", "0"]).unwrap();
        assert_eq!(c.invariants(), Err(WeierstrassError::SingularModel));
    }

    #[test]
    fn json_round_trip() {
        let c = builtins::curve("Ystar").unwrap();
        let text = serde_json::to_string(&c.to_file()).unwrap();
        assert_eq!(WeierstrassCurve::from_json(&text).unwrap(), c);
    }

    #[test]
    fn off_curve_points_are_rejected() {
        let e = builtins::curve("E").unwrap();
        let f = e.field;
        let bad = CurvePoint::affine(RatFunc::one(f), RatFunc::constant(f.generator()));
        assert!(matches!(e.add_points(&bad, &bad), Err(WeierstrassError::PointNotOnCurve(_))));
    }
}
