//! Reduced rational functions over GF(2^k).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::gcd::gcd;
use super::{AlgebraError, FieldElement, FiniteField, Poly, Var};

/// `num / den` with `gcd(num, den) = 1` and the leading coefficient of `den`
/// equal to 1, so equality is syntactic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFunc {
        let field = num.field().join(den.field()).expect("field mismatch");
        if num.is_zero() {
            return RatFunc { num: Poly::zero(field), den: Poly::one(field) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let lc = den.lead_coefficient().inv().expect("nonzero denominator").embed(field).expect("embeds");
        RatFunc { num: num.scale(lc).embed(field).expect("embeds"), den: den.scale(lc).embed(field).expect("embeds") }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let f = p.field();
        RatFunc { num: p, den: Poly::one(f) }
    }

    pub fn zero(field: FiniteField) -> RatFunc {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: FiniteField) -> RatFunc {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn constant(c: FieldElement) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn var(field: FiniteField, v: Var) -> RatFunc {
        RatFunc::from_poly(Poly::var(field, v))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> FiniteField {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<Poly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        n.try_mul(d.inv().ok()?).ok()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn inv(&self) -> Result<RatFunc, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        Ok(self * &other.inv()?)
    }

    pub fn square(&self) -> RatFunc {
        RatFunc { num: self.num.square(), den: self.den.square() }
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs() as u32;
        // Powers of coprime polynomials stay coprime.
        Ok(RatFunc { num: base.num.pow(n), den: base.den.pow(n) })
    }

    pub fn scale(&self, c: FieldElement) -> RatFunc {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// Formal partial derivative by the quotient rule.
    pub fn partial(&self, v: Var) -> RatFunc {
        let dn = self.num.partial(v);
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        let top = &(&dn * &self.den) + &(&self.num * &dd);
        Self::reduce(top, self.den.square())
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn compose(&self, map: &HashMap<Var, RatFunc>) -> Result<RatFunc, AlgebraError> {
        let (n1, d1) = compose_poly(&self.num, map);
        let (n2, d2) = compose_poly(&self.den, map);
        // (n1/d1) / (n2/d2)
        let den = &d1 * &n2;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(&n1 * &d2, den))
    }

    pub fn substitute(&self, v: Var, value: &RatFunc) -> Result<RatFunc, AlgebraError> {
        self.compose(&HashMap::from([(v, value.clone())]))
    }

    pub fn eval_all(&self, point: &HashMap<Var, FieldElement>) -> Result<FieldElement, AlgebraError> {
        let n = self.num.eval_all(point)?;
        let d = self.den.eval_all(point)?;
        n.try_mul(d.inv()?)
    }

    /// Applies the Frobenius to coefficients and squares every variable, i.e.
    /// returns `self^2`.
    pub fn frobenius(&self) -> RatFunc {
        self.square()
    }
}

/// Substitutes into a polynomial, returning an unreduced numerator and
/// denominator over a common denominator.
fn compose_poly(p: &Poly, map: &HashMap<Var, RatFunc>) -> (Poly, Poly) {
    let mut field = p.field();
    for r in map.values() {
        field = field.join(r.field()).expect("field mismatch in compose");
    }
    // Maximal exponent of each substituted variable.
    let mut max_exp: HashMap<Var, u32> = HashMap::new();
    for (_, m) in p.terms() {
        for &(v, e) in m.pairs() {
            if map.contains_key(&v) {
                let slot = max_exp.entry(v).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
    }
    let mut num_pows: HashMap<(Var, u32), Poly> = HashMap::new();
    let mut den_pows: HashMap<(Var, u32), Poly> = HashMap::new();
    let mut num = Poly::zero(field);
    for (c, m) in p.terms() {
        let mut t = Poly::constant(c.embed(field).expect("embeds"));
        let mut rest = Vec::new();
        let mut used: HashMap<Var, u32> = HashMap::new();
        for &(v, e) in m.pairs() {
            match map.get(&v) {
                Some(r) => {
                    let np = num_pows.entry((v, e)).or_insert_with(|| r.num.pow(e));
                    t = &t * &*np;
                    used.insert(v, e);
                }
                None => rest.push((v, e)),
            }
        }
        for (&v, &emax) in &max_exp {
            let e = used.get(&v).copied().unwrap_or(0);
            if emax > e {
                let dp = den_pows.entry((v, emax - e)).or_insert_with(|| map[&v].den.pow(emax - e));
                t = &t * &*dp;
            }
        }
        if !rest.is_empty() {
            t = t.mul_monomial(field.one(), &super::Monomial::from_pairs(rest));
        }
        num = &num + &t;
    }
    let mut den = Poly::one(field);
    for (&v, &emax) in &max_exp {
        den = &den * &map[&v].den.pow(emax);
    }
    (num, den)
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::reduce(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc::reduce(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        if o.den.is_one() {
            return RatFunc::reduce(&(&o.num * &self.den) + &self.num, self.den.clone());
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::reduce(num, &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    // Characteristic 2: subtraction is addition.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + o
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.field().join(o.field()).expect("field mismatch"));
        }
        // Cross-cancel so the product is reduced without a large gcd.
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("divides");
        let d2 = o.den.div_exact(&g1).expect("divides");
        let n2 = o.num.div_exact(&g2).expect("divides");
        let d1 = self.den.div_exact(&g2).expect("divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let field = num.field().join(den.field()).expect("field mismatch");
        let lc = den.lead_coefficient().inv().expect("nonzero").embed(field).expect("embeds");
        RatFunc { num: num.scale(lc).embed(field).unwrap(), den: den.scale(lc).embed(field).unwrap() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, other: RatFunc) -> RatFunc {
                (&self).$method(&other)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, other: &RatFunc) -> RatFunc {
                (&self).$method(other)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, other: RatFunc) -> RatFunc {
                self.$method(&other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.num_terms() > 1 || s.contains('+') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
