//! Multivariate gcd by recursion on the most significant variable with
//! primitive pseudo-remainder sequences.

use super::factor::Dense;
use super::{Poly, Var};

/// Greatest common divisor, normalized so its leading coefficient is 1.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let field = a.field().join(b.field()).expect("field mismatch in gcd");
    if a.is_constant() || b.is_constant() {
        return Poly::one(field);
    }
    if a == b {
        return a.monic();
    }
    if let (Some(Some(va)), Some(Some(vb))) = (a.univariate_var(), b.univariate_var()) {
        if va == vb {
            let g = Dense::from_poly(a, va).gcd(&Dense::from_poly(b, va));
            return g.to_poly(va);
        }
    }
    let v = match (a.main_var(), b.main_var()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => unreachable!("constants handled above"),
    };
    let in_a = a.contains_var(v);
    let in_b = b.contains_var(v);
    if !in_a {
        return gcd(a, &content(b, v));
    }
    if !in_b {
        return gcd(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    (&c * &g).monic()
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.field().join(b.field()).expect("field mismatch"));
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub(crate) fn content(p: &Poly, v: Var) -> Poly {
    let mut acc = Poly::zero(p.field());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

pub(crate) fn primitive_part(p: &Poly, v: Var) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, v);
    p.div_exact(&c).expect("content divides")
}

fn primitive_prs(mut a: Poly, mut b: Poly, v: Var) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(v) == Some(0) {
            return Poly::one(a.field());
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

/// A multiple of `a` by a power of lc_v(b), reduced modulo `b` in `v`.
fn pseudo_remainder(a: &Poly, b: &Poly, v: Var) -> Poly {
    let bc = b.coefficients_in(v);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let mut r = a.coefficients_in(v);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        let shift = dr - db;
        for (i, bi) in bc.iter().enumerate() {
            let t = &lr * bi;
            r[i + shift] = &r[i + shift] + &t;
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(Poly::is_zero) {
            r.pop();
        }
    }
    Poly::from_coefficients(a.field(), v, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, FiniteField};

    fn p(s: &str) -> Poly {
        parse_poly(s, FiniteField::GF4).unwrap()
    }

    #[test]
    fn univariate() {
        assert_eq!(gcd(&p("t^2+1"), &p("t^3+1")), p("t+1"));
        assert_eq!(gcd(&p("t^2+t+1"), &p("t+w")), p("t+w"));
        assert!(gcd(&p("t"), &p("t+1")).is_one());
    }

    #[test]
    fn multivariate() {
        let g = p("x*t + a + w");
        let a = &g * &p("x^2 + t*a + 1");
        let b = &g * &p("t^3 + x + a^2");
        assert_eq!(gcd(&a, &b), g.monic());
        let g2 = p("(a+1)*t + a");
        let a2 = &g2 * &p("t^2 + a*t + 1");
        let b2 = &g2.pow(2) * &p("t + a^3");
        assert_eq!(gcd(&a2, &b2), g2.monic());
    }

    #[test]
    fn content_and_lcm() {
        let t = crate::algebra::var("t");
        assert_eq!(content(&p("a*t^2 + a^2*t + a"), t), p("a"));
        assert_eq!(lcm(&p("t+1"), &p("t^2+1")), p("t^2+1"));
    }
}
