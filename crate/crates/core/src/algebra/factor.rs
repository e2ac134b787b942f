//! Dense univariate polynomials over GF(2^k) and their factorization:
//! square-free decomposition, distinct-degree splitting and the
//! characteristic-2 trace splitting of equal-degree products.

use super::{AlgebraError, FieldElement, FiniteField, Monomial, Poly, Var};

/// Coefficient vector, index = degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense {
    field: FiniteField,
    c: Vec<u8>,
}

impl Dense {
    fn new(field: FiniteField, mut c: Vec<u8>) -> Dense {
        while c.last() == Some(&0) {
            c.pop();
        }
        Dense { field, c }
    }

    fn x(field: FiniteField) -> Dense {
        Dense { field, c: vec![0, 1] }
    }

    pub(crate) fn from_poly(p: &Poly, v: Var) -> Dense {
        let mut c = vec![0u8; p.degree_in(v).map_or(0, |d| d as usize + 1)];
        for (coef, m) in p.terms() {
            c[m.exponent(v) as usize] = coef.bits();
        }
        Dense::new(p.field(), c)
    }

    pub(crate) fn to_poly(&self, v: Var) -> Poly {
        Poly::from_terms(self.field, self.c.iter().enumerate().map(|(i, &b)| (b, Monomial::var(v, i as u32))))
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn is_one(&self) -> bool {
        self.c == [1]
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lead(&self) -> u8 {
        *self.c.last().unwrap_or(&0)
    }

    fn add(&self, o: &Dense) -> Dense {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.c.get(i).copied().unwrap_or(0) ^ o.c.get(i).copied().unwrap_or(0)).collect();
        Dense::new(self.field, c)
    }

    fn mul(&self, o: &Dense) -> Dense {
        if self.is_zero() || o.is_zero() {
            return Dense::new(self.field, vec![]);
        }
        let mut c = vec![0u8; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] ^= self.field.mul_bits(a, b);
            }
        }
        Dense::new(self.field, c)
    }

    fn scale(&self, s: u8) -> Dense {
        Dense::new(self.field, self.c.iter().map(|&a| self.field.mul_bits(a, s)).collect())
    }

    fn monic(&self) -> Dense {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv_bits(self.lead()).expect("nonzero lead"))
    }

    fn div_rem(&self, d: &Dense) -> (Dense, Dense) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let inv = self.field.inv_bits(d.lead()).expect("nonzero lead");
        let mut r = self.c.clone();
        let dd = d.degree();
        if r.len() < d.c.len() {
            return (Dense::new(self.field, vec![]), self.clone());
        }
        let mut q = vec![0u8; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = self.field.mul_bits(r[i], inv);
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (j, &b) in d.c.iter().enumerate() {
                r[i - dd + j] ^= self.field.mul_bits(coef, b);
            }
        }
        (Dense::new(self.field, q), Dense::new(self.field, r))
    }

    fn rem(&self, d: &Dense) -> Dense {
        self.div_rem(d).1
    }

    fn div_exact(&self, d: &Dense) -> Dense {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    pub(crate) fn gcd(&self, o: &Dense) -> Dense {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> Dense {
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| if i % 2 == 1 { a } else { 0 }).collect();
        Dense::new(self.field, c)
    }

    /// Square root of a polynomial with only even exponents.
    fn sqrt(&self) -> Dense {
        let e = 1u64 << (self.field.degree() - 1);
        let c = self.c.iter().step_by(2).map(|&a| self.field.pow_bits(a, e)).collect();
        Dense::new(self.field, c)
    }

    fn square_mod(&self, m: &Dense) -> Dense {
        self.mul(self).rem(m)
    }
}

/// A factorization `unit * prod(factor^multiplicity)` with monic irreducible
/// factors sorted by degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Poly {
        self.factors.iter().fold(Poly::constant(self.unit), |acc, (f, m)| &acc * &f.pow(*m))
    }

    pub fn multiplicity(&self, f: &Poly) -> u32 {
        let f = f.monic();
        self.factors.iter().find(|(g, _)| *g == f).map_or(0, |p| p.1)
    }
}

/// Factors a nonzero univariate polynomial into monic irreducibles.
pub fn factor_univariate(p: &Poly) -> Result<Factorization, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let unit = p.lead_coefficient();
    let v = match p.univariate_var() {
        None => {
            let names: Vec<String> = p.vars().iter().map(Var::to_string).collect();
            return Err(AlgebraError::NotUnivariate(names.join(",")));
        }
        Some(None) => return Ok(Factorization { unit, factors: vec![] }),
        Some(Some(v)) => v,
    };
    let f = Dense::from_poly(p, v).monic();
    let mut out: Vec<(Dense, u32)> = Vec::new();
    for (sq, m) in square_free(&f) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d) {
                out.push((h, m));
            }
        }
    }
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (h, m) in out {
        let hp = h.to_poly(v);
        match factors.iter_mut().find(|(g, _)| *g == hp) {
            Some(slot) => slot.1 += m,
            None => factors.push((hp, m)),
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree_in(v)
            .cmp(&b.0.degree_in(v))
            .then_with(|| a.0.lead_monomial().cmp(&b.0.lead_monomial()))
            .then_with(|| poly_key(&a.0).cmp(&poly_key(&b.0)))
    });
    Ok(Factorization { unit, factors })
}

fn poly_key(p: &Poly) -> Vec<(Monomial, u8)> {
    p.terms().map(|(c, m)| (m.clone(), c.bits())).collect()
}

pub fn is_irreducible(p: &Poly) -> Result<bool, AlgebraError> {
    if p.is_constant() {
        return Ok(false);
    }
    let f = factor_univariate(p)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

fn square_free(f: &Dense) -> Vec<(Dense, u32)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in square_free(&f.sqrt()) {
            out.push((g, 2 * m));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if fac.degree() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in square_free(&c.monic().sqrt()) {
            out.push((g, 2 * m));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree.
fn distinct_degree(f: &Dense) -> Vec<(Dense, usize)> {
    let field = f.field;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = Dense::x(field).rem(&rest);
    let mut d = 1;
    while rest.degree() >= 2 * d {
        for _ in 0..field.degree() {
            h = h.square_mod(&rest);
        }
        let g = rest.gcd(&h.add(&Dense::x(field)));
        if !g.is_one() {
            rest = rest.div_exact(&g).monic();
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest, deg));
    }
    out
}

fn equal_degree(f: &Dense, d: usize) -> Vec<Dense> {
    if f.degree() == d {
        return vec![f.clone()];
    }
    let field = f.field;
    let q = field.order() as u64;
    let trace_len = field.degree() as usize * d;
    for n in 2u64.. {
        // Candidate a(x): the base-q digits of n as coefficients.
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % q) as u8);
            m /= q;
        }
        let a = Dense::new(field, digits).rem(f);
        if a.degree() == 0 {
            continue;
        }
        let mut term = a.clone();
        let mut tr = a;
        for _ in 1..trace_len {
            term = term.square_mod(f);
            tr = tr.add(&term);
        }
        let g = f.gcd(&tr);
        if g.degree() > 0 && g.degree() < f.degree() {
            let mut parts = equal_degree(&g, d);
            parts.extend(equal_degree(&f.div_exact(&g).monic(), d));
            return parts;
        }
    }
    unreachable!("trace splitting always succeeds on a reducible equal-degree product")
}
