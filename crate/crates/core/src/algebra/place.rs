//! Places of a rational function field K(t): monic irreducible polynomials in
//! t, and the place at infinity.

use std::fmt;

use super::factor::is_irreducible;
use super::{AlgebraError, FieldElement, FiniteField, Poly, RatFunc, Var};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    /// Zeros of a monic irreducible polynomial in `var`. The polynomial may
    /// carry other symbols as coefficients (for instance `t + a`).
    Finite {
        var: Var,
        poly: Poly,
    },
    Infinity {
        var: Var,
    },
}

impl Place {
    /// A finite place; `poly` is made monic and, when it involves only `var`,
    /// checked for irreducibility.
    pub fn finite(var: Var, poly: &Poly) -> Result<Place, AlgebraError> {
        if !poly.contains_var(var) {
            return Err(AlgebraError::NotUnivariate(var.to_string()));
        }
        let lead = poly.coefficients_in(var).pop().expect("nonzero");
        let poly = match lead.constant_value() {
            Some(lc) => poly.scale(lc.inv()?),
            None => poly.monic(),
        };
        if poly.univariate_var() == Some(Some(var)) && !is_irreducible(&poly)? {
            return Err(AlgebraError::NotIrreducible(poly.to_string()));
        }
        Ok(Place::Finite { var, poly })
    }

    /// The degree-one place `var = c`.
    pub fn at(var: Var, c: FieldElement) -> Place {
        let poly = &Poly::var(c.field(), var) + &Poly::constant(c);
        Place::Finite { var, poly }
    }

    pub fn infinity(var: Var) -> Place {
        Place::Infinity { var }
    }

    pub fn var(&self) -> Var {
        match self {
            Place::Finite { var, .. } | Place::Infinity { var } => *var,
        }
    }

    /// Residue degree: degree of the defining polynomial, 1 at infinity.
    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite { var, poly } => poly.degree_in(*var).unwrap_or(0),
            Place::Infinity { .. } => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity { .. })
    }

    pub fn field(&self) -> Option<FiniteField> {
        match self {
            Place::Finite { poly, .. } => Some(poly.field()),
            Place::Infinity { .. } => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite { var, poly } => {
                // Degree-one places print as `t=c`.
                if poly.degree_in(*var) == Some(1) {
                    let cs = poly.coefficients_in(*var);
                    match (cs[0].constant_value(), cs[1].is_one()) {
                        (Some(root), true) => write!(f, "{var}={root}"),
                        (None, true) => write!(f, "{var}={}", cs[0]),
                        _ => match RatFunc::new(cs[0].clone(), cs[1].clone()) {
                            Ok(root) => write!(f, "{var}={root}"),
                            Err(_) => write!(f, "{poly}=0"),
                        },
                    }
                } else {
                    write!(f, "{poly}=0")
                }
            }
            Place::Infinity { var } => write!(f, "{var}=inf"),
        }
    }
}

/// Order of vanishing of `f` at `place`.
pub fn valuation(f: &RatFunc, place: &Place) -> Result<i64, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroFunction);
    }
    match place {
        Place::Finite { poly, .. } => Ok(f.num().multiplicity_of(poly) as i64 - f.den().multiplicity_of(poly) as i64),
        Place::Infinity { var } => {
            let dn = f.num().degree_in(*var).unwrap_or(0) as i64;
            let dd = f.den().degree_in(*var).unwrap_or(0) as i64;
            Ok(dd - dn)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, parse_ratfunc, var};

    #[test]
    fn discriminant_valuations() {
        let f = FiniteField::GF2;
        let t = var("t");
        let delta = parse_ratfunc("t^14+t^8+t^6+1", f).unwrap();
        let p1 = Place::finite(t, &parse_poly("t+1", f).unwrap()).unwrap();
        assert_eq!(valuation(&delta, &p1), Ok(10));
        assert_eq!(valuation(&delta, &Place::infinity(t)), Ok(-14));
        let j = parse_ratfunc("t^24/(t^14+t^8+t^6+1)", f).unwrap();
        let p2 = Place::finite(t, &parse_poly("t^2+t+1", f).unwrap()).unwrap();
        assert_eq!(valuation(&j, &p2), Ok(-2));
        assert_eq!(valuation(&RatFunc::zero(f), &p2), Err(AlgebraError::ZeroFunction));
    }

    #[test]
    fn rejects_reducible() {
        let f = FiniteField::GF2;
        assert!(Place::finite(var("t"), &parse_poly("t^2+1", f).unwrap()).is_err());
        let w = FiniteField::GF4.generator();
        assert_eq!(Place::at(var("t"), w).to_string(), "t=w");
    }
}
