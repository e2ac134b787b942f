//! Sparse multivariate polynomials over GF(2^k) in lexicographic order.
//!
//! Variables are ordered by name; a lexicographically smaller name is the more
//! significant variable. All symbols, including parameters such as `a`, are
//! ordinary variables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{AlgebraError, FieldElement, FiniteField};

/// A variable name of at most eight bytes: `[a-z][a-z0-9_]*`, excluding `w`,
/// which denotes the field generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var([u8; 8]);

impl Var {
    pub fn new(name: &str) -> Result<Var, AlgebraError> {
        let bytes = name.as_bytes();
        let valid = !bytes.is_empty()
            && bytes.len() <= 8
            && bytes[0].is_ascii_lowercase()
            && bytes[1..].iter().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || *c == b'_')
            && name != "w";
        if !valid {
            return Err(AlgebraError::InvalidVariable(name.to_string()));
        }
        let mut buf = [0u8; 8];
        buf[..bytes.len()].copy_from_slice(bytes);
        Ok(Var(buf))
    }

    pub fn name(&self) -> &str {
        let len = self.0.iter().position(|&c| c == 0).unwrap_or(8);
        std::str::from_utf8(&self.0[..len]).expect("ascii name")
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector stored sparsely, sorted by variable, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|p| p.1 > 0);
        pairs.sort_by_key(|p| p.0);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut pairs: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            let slot = pairs.entry(v).or_insert(0);
            *slot = (*slot).max(e);
        }
        Monomial(pairs.into_iter().collect())
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, f)| (v, f * e)).collect())
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect())
    }
}

impl Ord for Monomial {
    /// Lexicographic order: the first variable (by name) whose exponents differ
    /// decides.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Equal if ea == eb => {
                        i += 1;
                        j += 1;
                    }
                    Ordering::Equal => return ea.cmp(&eb),
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FiniteField,
    terms: BTreeMap<Monomial, u8>,
}

impl Poly {
    pub fn zero(field: FiniteField) -> Poly {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FiniteField) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::term(c, Monomial::one())
    }

    pub fn term(c: FieldElement, m: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c.bits());
        }
        Poly { field: c.field(), terms }
    }

    pub fn var(field: FiniteField, v: Var) -> Poly {
        Poly::term(field.one(), Monomial::var(v, 1))
    }

    /// Builds a polynomial from (coefficient bits, monomial) pairs, summing
    /// repeated monomials.
    pub fn from_terms(field: FiniteField, terms: impl IntoIterator<Item = (u8, Monomial)>) -> Poly {
        let mut map = BTreeMap::new();
        for (c, m) in terms {
            let c = field.element(c as u32).bits();
            accumulate(&mut map, m, c);
        }
        Poly { field, terms: map }
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()) == Some(&1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_zero() {
            Some(self.field.zero())
        } else if self.is_constant() {
            Some(self.field.element(self.terms[&Monomial::one()] as u32))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (FieldElement, &Monomial)> + '_ {
        let f = self.field;
        self.terms.iter().rev().map(move |(m, &c)| (f.element(c as u32), m))
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.field.element(self.terms.get(m).copied().unwrap_or(0) as u32)
    }

    /// Lexicographically leading term.
    pub fn lead(&self) -> Option<(FieldElement, &Monomial)> {
        self.terms.iter().next_back().map(|(m, &c)| (self.field.element(c as u32), m))
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn lead_coefficient(&self) -> FieldElement {
        self.lead().map_or(self.field.zero(), |l| l.0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|p| p.0)).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// The most significant variable occurring, if any.
    pub fn main_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(|m| m.0.first().map(|p| p.0)).min()
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The only variable occurring, when there is at most one.
    pub fn univariate_var(&self) -> Option<Option<Var>> {
        let vars = self.vars();
        match vars.len() {
            0 => Some(None),
            1 => vars.into_iter().next().map(Some),
            _ => None,
        }
    }

    /// Re-reads a polynomial over a larger field. Only GF(2) polynomials move.
    pub fn embed(&self, target: FiniteField) -> Result<Poly, AlgebraError> {
        match self.field.join(target) {
            Some(f) if f == target => Ok(Poly { field: target, terms: self.terms.clone() }),
            _ => Err(AlgebraError::FieldMismatch(self.field, target)),
        }
    }

    fn join(&self, other: &Poly) -> FiniteField {
        self.field.join(other.field).unwrap_or_else(|| panic!("field mismatch: {} and {}", self.field, other.field))
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.field.join(other.field).ok_or(AlgebraError::FieldMismatch(self.field, other.field))?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.field.join(other.field).ok_or(AlgebraError::FieldMismatch(self.field, other.field))?;
        Ok(self * other)
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let field = self.field.join(c.field()).expect("field mismatch in scale");
        if c.is_zero() {
            return Poly::zero(field);
        }
        let terms = self.terms.iter().map(|(m, &x)| (m.clone(), field.mul_bits(x, c.bits()))).collect();
        Poly { field, terms }
    }

    pub fn mul_monomial(&self, c: FieldElement, m: &Monomial) -> Poly {
        let field = self.field.join(c.field()).expect("field mismatch in mul_monomial");
        if c.is_zero() {
            return Poly::zero(field);
        }
        let terms = self.terms.iter().map(|(n, &x)| (n.mul(m), field.mul_bits(x, c.bits()))).collect();
        Poly { field, terms }
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some((c, _)) if c.is_one() => self.clone(),
            Some((c, _)) => self.scale(c.inv().expect("nonzero lead")),
        }
    }

    /// Squaring is additive in characteristic 2, so it acts termwise.
    pub fn square(&self) -> Poly {
        let f = self.field;
        let terms = self.terms.iter().map(|(m, &c)| (m.pow(2), f.mul_bits(c, c))).collect();
        Poly { field: f, terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Formal partial derivative; integer coefficients are reduced mod 2.
    pub fn partial(&self, v: Var) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            let e = m.exponent(v);
            if e % 2 == 1 {
                let pairs = m.0.iter().map(|&(w, f)| if w == v { (w, f - 1) } else { (w, f) }).collect();
                accumulate(&mut terms, Monomial::from_pairs(pairs), c);
            }
        }
        Poly { field: self.field, terms }
    }

    /// Coefficients as a polynomial in `v`: entry i is the coefficient of v^i.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![BTreeMap::new(); deg + 1];
        for (m, &c) in &self.terms {
            accumulate(&mut out[m.exponent(v) as usize], m.without(v), c);
        }
        out.into_iter().map(|terms| Poly { field: self.field, terms }).collect()
    }

    /// Inverse of [`Poly::coefficients_in`].
    pub fn from_coefficients(field: FiniteField, v: Var, coeffs: &[Poly]) -> Poly {
        let mut terms = BTreeMap::new();
        let mut field = field;
        for (i, c) in coeffs.iter().enumerate() {
            field = field.join(c.field).expect("field mismatch");
            let vm = Monomial::var(v, i as u32);
            for (m, &x) in &c.terms {
                accumulate(&mut terms, m.mul(&vm), x);
            }
        }
        Poly { field, terms }
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn compose(&self, map: &HashMap<Var, Poly>) -> Poly {
        let mut field = self.field;
        for p in map.values() {
            field = field.join(p.field).expect("field mismatch in compose");
        }
        let mut cache: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut acc = Poly::zero(field);
        for (m, &c) in &self.terms {
            let mut t = Poly::constant(field.element(c as u32));
            let mut rest = Vec::new();
            for &(v, e) in &m.0 {
                match map.get(&v) {
                    Some(p) => {
                        let pe = cache.entry((v, e)).or_insert_with(|| p.pow(e));
                        t = &t * &*pe;
                    }
                    None => rest.push((v, e)),
                }
            }
            if !rest.is_empty() {
                t = t.mul_monomial(field.one(), &Monomial(rest));
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        self.compose(&HashMap::from([(v, value.clone())]))
    }

    /// Evaluates the variables listed in `point`; others are kept symbolic.
    pub fn evaluate(&self, point: &HashMap<Var, FieldElement>) -> Poly {
        let map = point.iter().map(|(v, c)| (*v, Poly::constant(*c))).collect();
        self.compose(&map)
    }

    /// Full evaluation to a field element.
    pub fn eval_all(&self, point: &HashMap<Var, FieldElement>) -> Result<FieldElement, AlgebraError> {
        let p = self.evaluate(point);
        match p.constant_value() {
            Some(c) => Ok(c),
            None => {
                Err(AlgebraError::UnknownVariable(p.vars().iter().map(Var::to_string).collect::<Vec<_>>().join(",")))
            }
        }
    }

    /// Applies the Frobenius x -> x^2 to every coefficient.
    pub fn frobenius_coefficients(&self) -> Poly {
        let f = self.field;
        let terms = self.terms.iter().map(|(m, &c)| (m.clone(), f.mul_bits(c, c))).collect();
        Poly { field: f, terms }
    }

    /// Multivariate division by a single divisor in lex order. Returns
    /// `(quotient, remainder)` where no term of the remainder is divisible by
    /// the leading monomial of `d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        let (dc, dm) = d.lead().ok_or(AlgebraError::DivisionByZero)?;
        let dinv = dc.inv()?;
        let field = self.join(d);
        let mut q = Poly::zero(field);
        let mut r = Poly::zero(field);
        let mut p = self.embed(field)?;
        while let Some((c, m)) = p.lead() {
            let m = m.clone();
            match m.div(dm) {
                Some(k) => {
                    let coef = c.embed(field)?.try_mul(dinv.embed(field)?)?;
                    p = &p + &d.mul_monomial(coef, &k);
                    accumulate(&mut q.terms, k, coef.bits());
                }
                None => {
                    p.terms.remove(&m);
                    accumulate(&mut r.terms, m, c.bits());
                }
            }
        }
        Ok((q, r))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let (dc, dm) = d.lead()?;
        let dinv = dc.inv().ok()?;
        let field = self.join(d);
        let dinv = dinv.embed(field).ok()?;
        let mut q = Poly::zero(field);
        let mut p = self.embed(field).ok()?;
        while let Some((c, m)) = p.lead() {
            let k = m.div(dm)?;
            let coef = c.try_mul(dinv).ok()?;
            p = &p + &d.mul_monomial(coef, &k);
            accumulate(&mut q.terms, k, coef.bits());
        }
        Some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Multiplicity of `d` as a factor of `self` (`self` nonzero, `d` non-constant).
    pub fn multiplicity_of(&self, d: &Poly) -> u32 {
        assert!(!self.is_zero() && !d.is_constant());
        let mut n = 0;
        let mut p = self.clone();
        while let Some(q) = p.div_exact(d) {
            p = q;
            n += 1;
        }
        n
    }

    pub fn renamed(&self, from: Var, to: Var) -> Poly {
        self.substitute(from, &Poly::var(self.field, to))
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, u8>, m: Monomial, c: u8) {
    if c == 0 {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = *e.get() ^ c;
            if v == 0 {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let field = self.join(other);
        let (big, small) = if self.terms.len() >= other.terms.len() { (self, other) } else { (other, self) };
        let mut terms = big.terms.clone();
        for (m, &c) in &small.terms {
            accumulate(&mut terms, m.clone(), c);
        }
        Poly { field, terms }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    // Characteristic 2: subtraction is addition.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, other: &Poly) -> Poly {
        self + other
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        let field = self.join(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(field);
        }
        let mut acc: HashMap<Monomial, u8> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let c = field.mul_bits(c1, c2);
                *acc.entry(m1.mul(m2)).or_insert(0) ^= c;
            }
        }
        let terms = acc.into_iter().filter(|p| p.1 != 0).collect();
        Poly { field, terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, other: Poly) -> Poly {
                (&self).$method(&other)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, other: &Poly) -> Poly {
                (&self).$method(other)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, other: Poly) -> Poly {
                self.$method(&other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (c, m) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = c.to_string();
            match (c.is_one(), m.is_one()) {
                (_, true) if cs.contains('+') => write!(f, "({cs})")?,
                (_, true) => f.write_str(&cs)?,
                (true, false) => write!(f, "{m}")?,
                (false, false) if cs.contains('+') => write!(f, "({cs})*{m}")?,
                (false, false) => write!(f, "{cs}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, var};

    fn p(s: &str) -> Poly {
        parse_poly(s, FiniteField::GF4).unwrap()
    }

    #[test]
    fn lex_order_prefers_smaller_names() {
        let a = Monomial::var(var("a"), 1);
        let t5 = Monomial::var(var("t"), 5);
        assert!(a > t5);
        let x2 = Monomial::var(var("x"), 2);
        let x = Monomial::var(var("x"), 1);
        assert!(x2 > x);
        assert!(x > Monomial::one());
        assert_eq!(p("t^2 + a + 1").lead_monomial(), Some(&a));
    }

    #[test]
    fn characteristic_two_cancellation() {
        assert!((p("t + x") + p("x + t")).is_zero());
        assert_eq!(p("(t+1)^2"), p("t^2+1"));
        assert_eq!(p("3*t + 2"), p("t"));
    }

    #[test]
    fn derivatives() {
        let t = var("t");
        let x = var("x");
        assert!(p("t^2*x").partial(t).is_zero());
        assert_eq!(p("x^3 + x^2").partial(x), p("x^2"));
        assert_eq!(p("t^3*x + w*t").partial(t), p("t^2*x + w"));
        assert!(p("t").partial(x).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = p("t^2 + w*t*x + 1");
        let b = p("x^3 + t + w");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &Poly::one(FiniteField::GF4)).div_exact(&a), None);
        assert_eq!(prod.multiplicity_of(&p("x^3 + t + w")), 1);
        assert_eq!(p("(t+1)^5*(t^2+t+1)").multiplicity_of(&p("t+1")), 5);
    }

    #[test]
    fn coefficients_round_trip() {
        let x = var("x");
        let f = p("t*x^3 + w*x + t^2 + 1");
        let c = f.coefficients_in(x);
        assert_eq!(c.len(), 4);
        assert_eq!(c[2], Poly::zero(FiniteField::GF4));
        assert_eq!(Poly::from_coefficients(FiniteField::GF4, x, &c), f);
    }

    #[test]
    fn compose_and_evaluate() {
        let f = p("x^2 + t*x + 1");
        let g = f.substitute(var("x"), &p("t + 1"));
        assert_eq!(g, p("t^2 + 1 + t^2 + t + 1"));
        let val =
            f.eval_all(&HashMap::from([(var("x"), FiniteField::GF4.generator()), (var("t"), FiniteField::GF4.one())]));
        // w^2 + w + 1 = 0
        assert!(val.unwrap().is_zero());
    }

    #[test]
    fn display_round_trips_through_parser() {
        for s in ["t^2*x + 1", "w*t + (w + 1)*x^3", "0", "a*b + x0^2"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
    }
}
