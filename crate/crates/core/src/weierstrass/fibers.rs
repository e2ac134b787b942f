//! Place-by-place reduction types of an elliptic surface over GF(2^k)(t),
//! inseparable base change and Shioda–Tate bookkeeping.

use std::collections::HashMap;

use serde::Serialize;

use super::{WeierstrassCurve, WeierstrassError};
use crate::algebra::{factor_univariate, lcm, valuation, Place, Poly, RatFunc, Var};
use crate::kodaira::{KodairaType, Reduction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    #[serde(serialize_with = "display")]
    pub place: Place,
    pub degree: u32,
    pub v_delta: i64,
    pub v_j: i64,
    pub reduction: Reduction,
    /// I_n for multiplicative fibers; additive fibers are left unlabeled.
    pub kodaira: Option<KodairaType>,
}

fn display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// A model with polynomial coefficients in the chart around a set of places.
struct Chart {
    a: [Poly; 5],
    delta: Poly,
}

impl WeierstrassCurve {
    fn base_var(&self) -> Result<Var, WeierstrassError> {
        let t = self.base.ok_or(WeierstrassError::NoBase)?;
        for c in self.coefficients() {
            if c.vars().iter().any(|v| *v != t) {
                return Err(WeierstrassError::Algebra(crate::algebra::AlgebraError::NotUnivariate(t.to_string())));
            }
        }
        Ok(t)
    }

    /// Rescales (x, y) -> (x/L^2, y/L^3) with L the lcm of coefficient
    /// denominators, so that every a_i becomes a polynomial in t.
    fn finite_chart(&self) -> Result<Chart, WeierstrassError> {
        let mut l = Poly::one(self.field);
        for c in self.coefficients() {
            l = lcm(&l, c.den());
        }
        let mut a = Vec::with_capacity(5);
        for (c, i) in self.coefficients().into_iter().zip([1u32, 2, 3, 4, 6]) {
            let scaled = c * &RatFunc::from_poly(l.pow(i));
            a.push(scaled.as_poly().expect("denominators cleared"));
        }
        self.chart_from(a)
    }

    /// Substitutes t = 1/u and rescales by the least u^m clearing poles; the
    /// place at infinity becomes u = 0 (written in the same variable).
    fn infinity_chart(&self, t: Var) -> Result<Chart, WeierstrassError> {
        let inv = RatFunc::var(self.field, t).inv()?;
        let mut flipped = Vec::with_capacity(5);
        let mut m = 0i64;
        for (c, i) in self.coefficients().into_iter().zip([1i64, 2, 3, 4, 6]) {
            let f = c.substitute(t, &inv)?;
            if !f.is_zero() {
                let pole = -valuation(&f, &Place::at(t, self.field.zero()))?;
                m = m.max((pole + i - 1).div_euclid(i));
            }
            flipped.push(f);
        }
        let m = m.max(0);
        let tv = RatFunc::var(self.field, t);
        let mut a = Vec::with_capacity(5);
        for (f, i) in flipped.into_iter().zip([1i64, 2, 3, 4, 6]) {
            let g = &f * &tv.pow(i * m)?;
            a.push(g.as_poly().expect("poles cleared at 0, other poles impossible"));
        }
        self.chart_from(a)
    }

    fn chart_from(&self, a: Vec<Poly>) -> Result<Chart, WeierstrassError> {
        let a: [Poly; 5] = a.try_into().expect("five coefficients");
        let model = WeierstrassCurve::new(self.field, self.base, a.clone().map(RatFunc::from_poly));
        let delta = model.discriminant()?.as_poly().expect("polynomial model");
        Ok(Chart { a, delta })
    }

    /// Local reduction data at a single place.
    pub fn fiber_at(&self, place: &Place) -> Result<FiberReport, WeierstrassError> {
        let t = self.base_var()?;
        if place.var() != t {
            return Err(WeierstrassError::Algebra(crate::algebra::AlgebraError::UnknownVariable(
                place.var().to_string(),
            )));
        }
        let j = self.invariants()?.j;
        let (chart, local) = match place {
            Place::Finite { .. } => (self.finite_chart()?, place.clone()),
            Place::Infinity { .. } => (self.infinity_chart(t)?, Place::at(t, self.field.zero())),
        };
        self.report(&chart, place, &local, &j)
    }

    fn report(
        &self,
        chart: &Chart,
        place: &Place,
        local: &Place,
        j: &RatFunc,
    ) -> Result<FiberReport, WeierstrassError> {
        let v = |p: &Poly| -> Result<i64, WeierstrassError> {
            if p.is_zero() {
                Ok(i64::MAX)
            } else {
                Ok(valuation(&RatFunc::from_poly(p.clone()), local)?)
            }
        };
        let v_delta = v(&chart.delta)?;
        let v_j = if j.is_zero() { i64::MAX } else { valuation(j, place)? };
        let va: Vec<i64> = chart.a.iter().map(&v).collect::<Result<_, _>>()?;
        if v_delta >= 12 && va.iter().zip([1, 2, 3, 4, 6]).all(|(&x, i)| x >= i) {
            return Err(WeierstrassError::NonMinimalModel(place.to_string()));
        }
        // The tangent cone at the singular point of the reduction is
        // Y^2 + a1 XY + c X^2 after translation; translation does not change
        // the XY coefficient, and in characteristic 2 this binary form splits
        // into distinct lines exactly when a1 is a unit.
        let (reduction, kodaira) = if v_delta == 0 {
            (Reduction::Good, Some(KodairaType::I(0)))
        } else if va[0] == 0 {
            (Reduction::Multiplicative, Some(KodairaType::I(v_delta as u32)))
        } else {
            (Reduction::Additive, None)
        };
        Ok(FiberReport { place: place.clone(), degree: place.degree(), v_delta, v_j, reduction, kodaira })
    }

    /// One report per place with bad reduction, finite places first (by
    /// degree, then lexicographically), then infinity if bad.
    pub fn place_analysis(&self) -> Result<Vec<FiberReport>, WeierstrassError> {
        let t = self.base_var()?;
        let j = self.invariants()?.j;
        let chart = self.finite_chart()?;
        let mut out = Vec::new();
        for (p, _) in factor_univariate(&chart.delta)?.factors {
            let place = Place::finite(t, &p)?;
            out.push(self.report(&chart, &place, &place, &j)?);
        }
        let inf = self.infinity_chart(t)?;
        let report = self.report(&inf, &Place::infinity(t), &Place::at(t, self.field.zero()), &j)?;
        if report.v_delta > 0 {
            out.push(report);
        }
        Ok(out)
    }

    /// Substitutes s := t^2 in the coefficients.
    pub fn frobenius_base_change(&self, t: Var) -> Result<WeierstrassCurve, WeierstrassError> {
        let s = self.base.ok_or(WeierstrassError::NoBase)?;
        let t2 = RatFunc::var(self.field, t).square();
        self.substitute(&HashMap::from([(s, t2)]), Some(t))
    }
}

/// j of the fiber of the surface over `t = a`, squared: the j-invariant of the
/// Frobenius twist of that fiber.
pub fn half_fiber_j(surface: &WeierstrassCurve, a: &RatFunc) -> Result<RatFunc, WeierstrassError> {
    let t = surface.base.ok_or(WeierstrassError::NoBase)?;
    let j = surface.invariants()?.j;
    Ok(j.substitute(t, a)?.square())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// Picard number 22.
    SupersingularK3,
    /// Picard number 10.
    Rational,
    Picard(u32),
}

impl Ambient {
    pub fn picard_number(self) -> u32 {
        match self {
            Ambient::SupersingularK3 => 22,
            Ambient::Rational => 10,
            Ambient::Picard(n) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiodaTateReport {
    pub picard_number: u32,
    pub trivial_rank: u32,
    pub mordell_weil_rank: u32,
    pub torsion_order: u64,
    /// Product of fiber-lattice determinants.
    pub fiber_discriminant: u64,
    /// |disc NS| = fiber_discriminant / torsion^2 when the rank is 0.
    pub ns_discriminant: Option<u64>,
    pub torsion_consistent: bool,
    /// Artin invariant of a supersingular K3 (|disc NS| = 2^(2 sigma)).
    pub artin_invariant: Option<u32>,
}

/// rho = 2 + sum(m_v - 1) + rank MW, plus the discriminant constraint on the
/// torsion subgroup: torsion^2 divides the product of fiber discriminants, and
/// for rank 0 the quotient is |disc NS| (1 for rational surfaces, a power of 4
/// for supersingular K3 surfaces).
pub fn shioda_tate_check(
    fibers: &[KodairaType],
    torsion_order: u64,
    ambient: Ambient,
) -> Result<ShiodaTateReport, WeierstrassError> {
    let rho = ambient.picard_number();
    let trivial_rank = 2 + fibers.iter().map(|k| k.components() - 1).sum::<u32>();
    if trivial_rank > rho {
        return Err(WeierstrassError::InconsistentData(format!(
            "fibers span rank {trivial_rank} > Picard number {rho}"
        )));
    }
    if torsion_order == 0 {
        return Err(WeierstrassError::InconsistentData("torsion order must be positive".into()));
    }
    let rank = rho - trivial_rank;
    let fiber_discriminant: u64 = fibers.iter().map(|k| k.lattice_det()).product();
    let t2 = torsion_order * torsion_order;
    let divides = fiber_discriminant.is_multiple_of(t2);
    let ns_discriminant = (rank == 0 && divides).then(|| fiber_discriminant / t2);
    let artin_invariant = match (ambient, ns_discriminant) {
        (Ambient::SupersingularK3, Some(d)) if d > 1 && d.is_power_of_two() && d.trailing_zeros() % 2 == 0 => {
            Some(d.trailing_zeros() / 2).filter(|s| (1..=10).contains(s))
        }
        _ => None,
    };
    let torsion_consistent = divides
        && match (ambient, rank) {
            (Ambient::Rational, 0) => ns_discriminant == Some(1),
            (Ambient::SupersingularK3, 0) => artin_invariant.is_some(),
            _ => true,
        };
    Ok(ShiodaTateReport {
        picard_number: rho,
        trivial_rank,
        mordell_weil_rank: rank,
        torsion_order,
        fiber_discriminant,
        ns_discriminant,
        torsion_consistent,
        artin_invariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{var, FiniteField};
    use crate::weierstrass::builtins;

    #[test]
    fn ystar_fibers() {
        let y = builtins::curve("Ystar").unwrap();
        let reports = y.place_analysis().unwrap();
        let kinds: Vec<String> = reports.iter().map(|r| format!("{}:{}", r.place, r.kodaira.unwrap())).collect();
        assert_eq!(kinds, ["t=1:I10", "t=w:I2", "t=w + 1:I2", "t=inf:I10"]);
        for r in &reports {
            assert_eq!(r.v_j, -r.v_delta);
        }
        let total: i64 = reports.iter().map(|r| r.v_delta * r.degree as i64).sum();
        assert_eq!(total, 24);
    }

    #[test]
    fn good_fiber_at_zero_is_e() {
        let y = builtins::curve("Ystar").unwrap();
        let t = var("t");
        let r = y.fiber_at(&Place::at(t, y.field.zero())).unwrap();
        assert_eq!(r.reduction, Reduction::Good);
        assert_eq!(y.fiber_curve(y.field.zero()).unwrap(), builtins::curve("E").unwrap());
    }

    #[test]
    fn rational_surface_r() {
        let r = builtins::curve("R").unwrap();
        let reports = r.place_analysis().unwrap();
        let total: i64 = reports.iter().map(|x| x.v_delta * x.degree as i64).sum();
        assert_eq!(total, 12);
        let labels: Vec<KodairaType> = reports.iter().filter_map(|x| x.kodaira).collect();
        assert_eq!(labels, [KodairaType::I(5), KodairaType::I(1), KodairaType::I(1), KodairaType::I(5)]);
    }

    #[test]
    fn non_minimal_model_is_reported() {
        // y^2 + t x y + t^3 y = x^3 + t^6: every a_i divisible by t^i.
        let c = WeierstrassCurve::from_strs(FiniteField::GF2, Some(var("t")), ["t", "t^2", "t^3", "0", "t^6 + t^7"])
            .unwrap();
        let err = c.fiber_at(&Place::at(var("t"), FiniteField::GF2.zero()));
        assert!(matches!(err, Err(WeierstrassError::NonMinimalModel(_))), "{err:?}");
    }

    #[test]
    fn additive_fiber_left_unlabeled() {
        // y^2 + y = x^3 + t: a1 = 0 so every bad fiber is additive.
        let c = WeierstrassCurve::from_strs(FiniteField::GF2, Some(var("t")), ["0", "0", "1", "0", "t"]).unwrap();
        let reports = c.place_analysis().unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports.iter().all(|r| r.reduction == Reduction::Additive && r.kodaira.is_none()));
    }

    #[test]
    fn shioda_tate_examples() {
        use KodairaType::I;
        let y = shioda_tate_check(&[I(10), I(10), I(2), I(2)], 10, Ambient::SupersingularK3).unwrap();
        assert_eq!((y.mordell_weil_rank, y.torsion_consistent, y.artin_invariant), (0, true, Some(1)));
        let r = shioda_tate_check(&[I(5), I(5), I(1), I(1)], 5, Ambient::Rational).unwrap();
        assert_eq!((r.mordell_weil_rank, r.torsion_consistent), (0, true));
        let e = shioda_tate_check(&[], 1, Ambient::Picard(2)).unwrap();
        assert_eq!(e.mordell_weil_rank, 0);
        let bad = shioda_tate_check(&[I(5), I(5), I(1), I(1)], 10, Ambient::Rational).unwrap();
        assert!(!bad.torsion_consistent);
        assert!(shioda_tate_check(&[I(12)], 1, Ambient::Rational).is_err());
    }
}
