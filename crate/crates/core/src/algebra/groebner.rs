//! Reduced lexicographic Gröbner bases by Buchberger's algorithm. Intended for
//! the small zero-dimensional systems that certify fixed points and isolated
//! singularities.

use std::collections::VecDeque;

use super::Poly;

/// Fully reduces `p` modulo `basis`.
pub fn normal_form(p: &Poly, basis: &[Poly]) -> Poly {
    let field = basis.iter().fold(p.field(), |f, g| f.join(g.field()).expect("field mismatch"));
    let mut rest = p.embed(field).expect("embeds");
    let mut out = Poly::zero(field);
    'outer: while let Some((c, m)) = rest.lead() {
        let m = m.clone();
        for g in basis {
            let (gc, gm) = g.lead().expect("basis elements are nonzero");
            if let Some(k) = m.div(gm) {
                let coef = c.try_mul(gc.inv().expect("nonzero").embed(field).expect("embeds")).expect("same field");
                rest = &rest + &g.mul_monomial(coef, &k);
                continue 'outer;
            }
        }
        let lead = Poly::term(c, m);
        rest = &rest + &lead;
        out = &out + &lead;
    }
    out
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (fc, fm) = f.lead().expect("nonzero");
    let (gc, gm) = g.lead().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_monomial(fc.inv().expect("nonzero"), &l.div(fm).expect("lcm"));
    let b = g.mul_monomial(gc.inv().expect("nonzero"), &l.div(gm).expect("lcm"));
    &a + &b
}

/// The reduced Gröbner basis of the ideal generated by `gens`, monic and
/// sorted by decreasing leading monomial. The unit ideal gives `[1]`.
pub fn groebner_basis(gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.iter().any(Poly::is_constant) {
        return vec![Poly::one(basis[0].field())];
    }
    let mut pairs: VecDeque<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop_front() {
        let (mi, mj) = (basis[i].lead_monomial().unwrap(), basis[j].lead_monomial().unwrap());
        // Coprime leading monomials reduce to zero.
        if mi.mul(mj) == mi.lcm(mj) {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Poly::one(r.field())];
        }
        let k = basis.len();
        basis.push(r.monic());
        pairs.extend((0..k).map(|i| (i, k)));
    }
    reduce_basis(basis)
}

fn reduce_basis(mut basis: Vec<Poly>) -> Vec<Poly> {
    // Drop elements whose leading monomial is divisible by another's.
    let mut keep: Vec<Poly> = Vec::new();
    basis.sort_by(|a, b| a.lead_monomial().cmp(&b.lead_monomial()));
    for g in basis {
        let gm = g.lead_monomial().unwrap().clone();
        if keep.iter().all(|h| !h.lead_monomial().unwrap().divides(&gm)) {
            keep.push(g);
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let lead = Poly::term(keep[i].lead_coefficient(), keep[i].lead_monomial().unwrap().clone());
        let tail = normal_form(&(&keep[i] + &lead), &others);
        out.push((&lead + &tail).monic());
    }
    out.sort_by(|a, b| b.lead_monomial().cmp(&a.lead_monomial()));
    out
}

pub fn is_unit_ideal(basis: &[Poly]) -> bool {
    basis.len() == 1 && basis[0].is_one()
}

pub fn ideal_contains(basis: &[Poly], p: &Poly) -> bool {
    normal_form(p, basis).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, FiniteField};

    fn p(s: &str) -> Poly {
        parse_poly(s, FiniteField::GF2).unwrap()
    }

    #[test]
    fn single_point() {
        let gb = groebner_basis(&[p("x*y + 1"), p("x + y")]);
        // x = y, x^2 = 1 so x = y = 1 in characteristic 2, doubled.
        assert_eq!(gb, vec![p("x + y"), p("y^2 + 1")]);
        assert!(ideal_contains(&gb, &p("x^2 + 1")));
        assert!(!ideal_contains(&gb, &p("x + 1")));
    }

    #[test]
    fn inconsistent_system() {
        let gb = groebner_basis(&[p("x + 1"), p("x")]);
        assert!(is_unit_ideal(&gb));
        let gb = groebner_basis(&[p("x*y + 1"), p("y")]);
        assert!(is_unit_ideal(&gb));
    }

    #[test]
    fn basis_generates_same_ideal() {
        let gens = [p("x^2 + y*z"), p("y^2 + x + z"), p("z^3 + x*y + 1")];
        let gb = groebner_basis(&gens);
        for g in &gens {
            assert!(ideal_contains(&gb, g));
        }
    }
}
