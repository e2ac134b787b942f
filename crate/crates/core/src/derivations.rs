//! Rational vector fields f ∂/∂t + g ∂/∂x on GF(2^k)(a)(t, x): action,
//! p-closedness, integral fibers and the Euler-number bookkeeping of the
//! divisorial part.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    factor_univariate, parse_ratfunc, var, AlgebraError, FieldElement, FiniteField, ParseError, Place, Poly, RatFunc,
    Var,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("parameter {0} is forbidden (a^3 = 1)")]
    ForbiddenParameter(String),
    #[error("derivation is not p-closed")]
    NotPClosed,
    #[error("only a symbolic derivation can be specialized")]
    AlreadySpecialized,
    #[error("unknown built-in derivation `{0}`")]
    UnknownBuiltin(String),
    #[error("malformed derivation file: {0}")]
    Format(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<ParseError> for DerivationError {
    fn from(e: ParseError) -> Self {
        DerivationError::Algebra(AlgebraError::Parse(e))
    }
}

/// The parameter pair (a, b) with a + b = ab.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    /// a stays a variable; b is rewritten as a/(a+1).
    Symbolic,
    /// a = α, b = α/(α+1).
    Specialized(FieldElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub coeff_t: RatFunc,
    pub coeff_x: RatFunc,
    pub param: Param,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorFieldType {
    Additive,
    Multiplicative,
}

impl fmt::Display for VectorFieldType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VectorFieldType::Additive => "additive",
            VectorFieldType::Multiplicative => "multiplicative",
        })
    }
}

pub fn t_var() -> Var {
    var("t")
}

pub fn x_var() -> Var {
    var("x")
}

/// b = a/(a+1) as a rational function of a.
pub fn b_of_a(field: FiniteField) -> RatFunc {
    let a = RatFunc::var(field, var("a"));
    a.try_div(&(&a + &RatFunc::one(field))).expect("a + 1 is nonzero")
}

impl Derivation {
    /// Builds a symbolic derivation from coefficient texts in t, x, a, b.
    pub fn symbolic(coeff_t: &str, coeff_x: &str) -> Result<Derivation, DerivationError> {
        let f = FiniteField::GF2;
        let sub = HashMap::from([(var("b"), b_of_a(f))]);
        Ok(Derivation {
            coeff_t: parse_ratfunc(coeff_t, f)?.compose(&sub)?,
            coeff_x: parse_ratfunc(coeff_x, f)?.compose(&sub)?,
            param: Param::Symbolic,
        })
    }

    pub fn builtin(name: &str) -> Result<Derivation, DerivationError> {
        match name {
            "Dprime" => Derivation::symbolic("(t+1)*(t+a)*(t+b)", "1 + t^2*x"),
            "D" => Derivation::symbolic("(t+a)*(t+b)", "(1 + t^2*x)/(t+1)"),
            _ => Err(DerivationError::UnknownBuiltin(name.to_string())),
        }
    }

    /// Specializes a = α. Cube roots of unity are forbidden: α = 1 has no b,
    /// and α = ω, ω^2 give a = b.
    pub fn specialize(&self, alpha: FieldElement) -> Result<Derivation, DerivationError> {
        if self.param != Param::Symbolic {
            return Err(DerivationError::AlreadySpecialized);
        }
        if alpha.pow(3).is_one() {
            return Err(DerivationError::ForbiddenParameter(alpha.to_string()));
        }
        let sub = HashMap::from([(var("a"), RatFunc::constant(alpha))]);
        Ok(Derivation {
            coeff_t: self.coeff_t.compose(&sub)?,
            coeff_x: self.coeff_x.compose(&sub)?,
            param: Param::Specialized(alpha),
        })
    }

    /// Multiplies both coefficients by `h`.
    pub fn scaled(&self, h: &RatFunc) -> Derivation {
        Derivation { coeff_t: &self.coeff_t * h, coeff_x: &self.coeff_x * h, param: self.param.clone() }
    }

    /// D(f) = coeff_t ∂f/∂t + coeff_x ∂f/∂x.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        &(&self.coeff_t * &f.partial(t_var())) + &(&self.coeff_x * &f.partial(x_var()))
    }

    /// h with D^2 = h D, if it exists. D^2 is a derivation in characteristic 2,
    /// and two derivations agree once they agree on the generators t and x, so
    /// comparing D^2(t), D^2(x) with h D(t), h D(x) decides the identity.
    pub fn p_closure_multiplier(&self) -> Option<RatFunc> {
        let dt = &self.coeff_t;
        let dx = &self.coeff_x;
        let d2t = self.apply(dt);
        let d2x = self.apply(dx);
        let h = if !dt.is_zero() {
            d2t.try_div(dt).ok()?
        } else if !dx.is_zero() {
            d2x.try_div(dx).ok()?
        } else {
            return Some(RatFunc::zero(dt.field()));
        };
        (&h * dt == d2t && &h * dx == d2x).then_some(h)
    }

    pub fn vector_field_type(&self) -> Result<VectorFieldType, DerivationError> {
        let h = self.p_closure_multiplier().ok_or(DerivationError::NotPClosed)?;
        Ok(if h.is_zero() { VectorFieldType::Additive } else { VectorFieldType::Multiplicative })
    }

    /// Places of the t-line over which coeff_t vanishes, with multiplicity.
    /// Over GF(2^k)(a) only roots rational in a are split off; a remaining
    /// factor without such roots is reported as one place.
    pub fn integral_fiber_places(&self) -> Result<Vec<(Place, u32)>, DerivationError> {
        let t = t_var();
        let num = self.coeff_t.num().clone();
        if num.is_zero() || !num.contains_var(t) {
            return Ok(Vec::new());
        }
        let params: Vec<Var> = num.vars().into_iter().filter(|v| *v != t).collect();
        if params.is_empty() {
            let mut out = Vec::new();
            for (p, m) in factor_univariate(&num)?.factors {
                out.push((Place::finite(t, &p)?, m));
            }
            return Ok(out);
        }
        if params.len() > 1 {
            return Err(AlgebraError::NotUnivariate(t.to_string()).into());
        }
        Ok(rational_root_places(&num, t, params[0])?)
    }

    pub fn to_file(&self) -> DerivationFile {
        DerivationFile {
            coeff_t: self.coeff_t.to_string(),
            coeff_x: self.coeff_x.to_string(),
            param: match &self.param {
                Param::Symbolic => ParamSpec::Symbolic("symbolic".into()),
                Param::Specialized(a) => ParamSpec::Value { a: a.to_string() },
            },
            k: match &self.param {
                Param::Symbolic => None,
                Param::Specialized(a) => Some(a.field().degree()),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Derivation, DerivationError> {
        let file: DerivationFile = serde_json::from_str(text).map_err(|e| DerivationError::Format(e.to_string()))?;
        let sym = Derivation::symbolic(&file.coeff_t, &file.coeff_x)?;
        match file.param {
            ParamSpec::Symbolic(s) if s == "symbolic" => Ok(sym),
            ParamSpec::Symbolic(s) => Err(DerivationError::Format(format!("unknown param `{s}`"))),
            ParamSpec::Value { a } => {
                let field = FiniteField::new(file.k.unwrap_or(8))?;
                let alpha = parse_ratfunc(&a, field)?
                    .constant_value()
                    .ok_or_else(|| DerivationError::Format("parameter must be a constant".into()))?;
                sym.specialize(alpha)
            }
        }
    }
}

/// Splits off linear factors q t + p of `num` with p | c0 and q | lc in
/// GF(2^k)[a], then reports what remains.
fn rational_root_places(num: &Poly, t: Var, a: Var) -> Result<Vec<(Place, u32)>, AlgebraError> {
    let field = num.field();
    let mut rest = num.clone();
    let mut out: Vec<(Place, u32)> = Vec::new();
    loop {
        let coeffs = rest.coefficients_in(t);
        if coeffs.len() <= 1 {
            break;
        }
        let c0 = &coeffs[0];
        let lc = coeffs.last().expect("nonempty");
        if c0.is_zero() {
            let p = Poly::var(field, t);
            let m = rest.multiplicity_of(&p);
            rest = rest.div_exact(&p.pow(m)).expect("divides");
            out.push((Place::Finite { var: t, poly: p }, m));
            continue;
        }
        let mut found = None;
        'search: for p in divisors(c0, a)? {
            for q in divisors(lc, a)? {
                for u in field.elements().filter(|u| !u.is_zero()) {
                    let lin = &(&Poly::var(field, t) * &q) + &p.scale(u);
                    if rest.div_exact(&lin).is_some() {
                        found = Some(lin.monic());
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(lin) => {
                let m = rest.multiplicity_of(&lin);
                rest = rest.div_exact(&lin.pow(m)).expect("divides");
                out.push((Place::Finite { var: t, poly: lin }, m));
            }
            None => {
                out.push((Place::Finite { var: t, poly: rest.monic() }, 1));
                break;
            }
        }
    }
    out.sort_by_key(|(p, _)| p.to_string());
    Ok(out)
}

/// Monic divisors of a nonzero polynomial in `a` (constants give `[1]`).
fn divisors(p: &Poly, a: Var) -> Result<Vec<Poly>, AlgebraError> {
    let field = p.field();
    if p.is_constant() {
        return Ok(vec![Poly::one(field)]);
    }
    if p.vars().iter().any(|v| *v != a) {
        return Err(AlgebraError::NotUnivariate(a.to_string()));
    }
    let mut out = vec![Poly::one(field)];
    for (f, m) in factor_univariate(p)?.factors {
        let mut next = Vec::new();
        for d in &out {
            let mut pw = Poly::one(field);
            for _ in 0..=m {
                next.push(d * &pw);
                pw = &pw * &f;
            }
        }
        out = next;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamSpec {
    Symbolic(String),
    Value { a: String },
}

/// On-disk derivation description. `k` selects GF(2^k) for a specialized
/// parameter (default 8).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationFile {
    pub coeff_t: String,
    pub coeff_x: String,
    pub param: ParamSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u8>,
}

/// An integer combination of named curve classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClassCombination(pub BTreeMap<String, i64>);

impl DivisorClassCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: &str, coeff: i64) -> &mut Self {
        let slot = self.0.entry(name.to_string()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.0.remove(name);
        }
        self
    }

    pub fn plus(&self, other: &DivisorClassCombination, scale: i64) -> DivisorClassCombination {
        let mut out = self.clone();
        for (n, c) in &other.0 {
            out.add(n, scale * c);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(n, c)| (n.as_str(), *c))
    }

    pub fn support(&self) -> Vec<String> {
        self.0.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DivisorClassCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (n, &c)) in self.0.iter().enumerate() {
            let sign = match (i, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            match c.abs() {
                1 => write!(f, "{sign}{n}")?,
                a => write!(f, "{sign}{a}*{n}")?,
            }
        }
        Ok(())
    }
}

/// Full fiber class over t = 1: F1 + E1_1 + ... + E1_9.
pub fn fiber_class_one() -> DivisorClassCombination {
    let mut d = DivisorClassCombination::new();
    d.add("F1", 1);
    for i in 1..=9 {
        d.add(&format!("E1_{i}"), 1);
    }
    d
}

/// Full fiber class over t = ∞.
pub fn fiber_class_infinity() -> DivisorClassCombination {
    let mut d = DivisorClassCombination::new();
    d.add("Finf", 1);
    for i in 1..=9 {
        d.add(&format!("Einf_{i}"), 1);
    }
    d
}

/// The divisorial part (D) of the vector field D = D'/(t+1) on the K3 cover.
pub fn divisorial_part_d() -> DivisorClassCombination {
    let mut d = DivisorClassCombination::new();
    for n in ["F1", "E1_2", "E1_4", "E1_6", "E1_8", "Finf", "Einf_2", "Einf_4", "Einf_6", "Einf_8", "Ew", "Ew2"] {
        d.add(n, -1);
    }
    d
}

/// The divisorial part (D') of D'.
pub fn divisorial_part_dprime() -> DivisorClassCombination {
    let mut d = DivisorClassCombination::new();
    for i in [1, 3, 5, 7, 9] {
        d.add(&format!("E1_{i}"), 1);
        d.add(&format!("Einf_{i}"), 1);
    }
    d.add("Ew", -1);
    d.add("Ew2", -1);
    d.plus(&fiber_class_infinity(), -2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EulerVerdict {
    Divisorial,
    IsolatedZeros,
    Inconsistent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerBookkeeping {
    pub degree_of_isolated_part: i64,
    pub verdict: EulerVerdict,
}

/// From c2 = deg<D> - K·(D) - (D)^2, returns deg<D>.
pub fn euler_bookkeeping(c2: i64, d_square: i64, k_dot_d: i64) -> EulerBookkeeping {
    let deg = c2 + k_dot_d + d_square;
    let verdict = match deg.signum() {
        0 => EulerVerdict::Divisorial,
        1 => EulerVerdict::IsolatedZeros,
        _ => EulerVerdict::Inconsistent,
    };
    EulerBookkeeping { degree_of_isolated_part: deg, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2(s: &str) -> RatFunc {
        parse_ratfunc(s, FiniteField::GF2).unwrap()
    }

    #[test]
    fn action_on_generators() {
        let d = Derivation::builtin("Dprime").unwrap();
        let b = b_of_a(FiniteField::GF2);
        let expected = &(&gf2("(t+1)*(t+a)") * &(&gf2("t") + &b)) * &RatFunc::one(FiniteField::GF2);
        assert_eq!(d.apply(&gf2("t")), expected);
        assert_eq!(d.apply(&gf2("x")), gf2("1 + t^2*x"));
        assert!(d.apply(&gf2("x^2")).is_zero());
    }

    #[test]
    fn closure_multipliers() {
        let dp = Derivation::builtin("Dprime").unwrap();
        assert_eq!(dp.p_closure_multiplier(), Some(gf2("t^2")));
        let d = Derivation::builtin("D").unwrap();
        let ab = &gf2("a") * &b_of_a(FiniteField::GF2);
        assert_eq!(d.p_closure_multiplier(), Some(ab));
        assert_eq!(d.vector_field_type(), Ok(VectorFieldType::Multiplicative));
    }

    #[test]
    fn additive_at_zero() {
        let d = Derivation::builtin("D").unwrap().specialize(FiniteField::GF2.zero()).unwrap();
        assert_eq!(d.p_closure_multiplier(), Some(RatFunc::zero(FiniteField::GF2)));
        assert_eq!(d.vector_field_type(), Ok(VectorFieldType::Additive));
        let places = d.integral_fiber_places().unwrap();
        assert_eq!(places.len(), 1);
        assert_eq!((places[0].0.to_string(), places[0].1), ("t=0".to_string(), 2));
    }

    #[test]
    fn pure_translation_is_additive() {
        let d = Derivation { coeff_t: gf2("1"), coeff_x: gf2("0"), param: Param::Symbolic };
        assert_eq!(d.vector_field_type(), Ok(VectorFieldType::Additive));
    }

    #[test]
    fn not_p_closed() {
        let d = Derivation { coeff_t: gf2("x"), coeff_x: gf2("t"), param: Param::Symbolic };
        assert_eq!(d.p_closure_multiplier(), None);
        assert_eq!(d.vector_field_type(), Err(DerivationError::NotPClosed));
    }

    #[test]
    fn forbidden_parameters() {
        let d = Derivation::builtin("D").unwrap();
        let f = FiniteField::GF4;
        for alpha in [f.one(), f.generator(), f.generator().pow(2)] {
            assert!(matches!(d.specialize(alpha), Err(DerivationError::ForbiddenParameter(_))));
        }
    }

    #[test]
    fn symbolic_integral_places() {
        let dp = Derivation::builtin("Dprime").unwrap();
        let names: Vec<String> = dp.integral_fiber_places().unwrap().iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(names, ["t=1", "t=a", "t=a/(a + 1)"]);
    }

    #[test]
    fn dprime_minus_d_is_divisor_of_t_plus_one() {
        let diff = divisorial_part_dprime().plus(&divisorial_part_d(), -1);
        assert_eq!(diff, fiber_class_one().plus(&fiber_class_infinity(), -1));
    }

    #[test]
    fn euler() {
        assert_eq!(euler_bookkeeping(24, -24, 0).verdict, EulerVerdict::Divisorial);
        assert_eq!(euler_bookkeeping(24, -20, 0).degree_of_isolated_part, 4);
        assert_eq!(euler_bookkeeping(12, -12, 0).degree_of_isolated_part, 0);
        assert_eq!(euler_bookkeeping(12, -14, 0).verdict, EulerVerdict::Inconsistent);
    }

    #[test]
    fn json_round_trip() {
        let d = Derivation::builtin("D").unwrap();
        let text = serde_json::to_string(&d.to_file()).unwrap();
        assert_eq!(Derivation::from_json(&text).unwrap(), d);
    }
}
