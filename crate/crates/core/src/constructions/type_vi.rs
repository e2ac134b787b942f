//! The surface σ1 = σ4 = 0 in P^4 (σ4 = x1⋯x5 Σ 1/x_i), its ten nodes and
//! ten lines, the Cremona involution and the Petersen incidence of the
//! curves on the quotient.

use super::{
    eval_point, node_certificate, poly, projective_points, proportional, rank, single_point_certificate, substitute,
    IdentityCheckReport, ProjectiveMap,
};
use crate::algebra::groebner::{groebner_basis, ideal_contains};
use crate::algebra::{factor_univariate, var, FieldElement, FiniteField, Poly, Var};
use crate::dynkin::{are_isomorphic, automorphism_count, build_petersen, DualGraph};

const COORDS: [&str; 5] = ["x1", "x2", "x3", "x4", "x5"];

fn coords() -> Vec<Var> {
    COORDS.iter().map(|c| var(c)).collect()
}

fn sigma1() -> Poly {
    poly("x1 + x2 + x3 + x4 + x5", FiniteField::GF2)
}

fn sigma4() -> Poly {
    poly("x2*x3*x4*x5 + x1*x3*x4*x5 + x1*x2*x4*x5 + x1*x2*x3*x5 + x1*x2*x3*x4", FiniteField::GF2)
}

fn cremona() -> ProjectiveMap {
    let comps: Vec<String> =
        (0..5).map(|i| (0..5).filter(|&j| j != i).map(|j| COORDS[j]).collect::<Vec<_>>().join("*")).collect();
    let comps: Vec<&str> = comps.iter().map(String::as_str).collect();
    ProjectiveMap::from_strs(&COORDS, &comps, FiniteField::GF2).expect("valid map")
}

fn triples() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn pairs() -> Vec<[usize; 2]> {
    (0..5).flat_map(|i| (i + 1..5).map(move |j| [i, j])).collect()
}

fn complement(idx: &[usize]) -> Vec<usize> {
    (0..5).filter(|i| !idx.contains(i)).collect()
}

fn label(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect()
}

/// The node p_ijk: x_i = x_j = x_k = 0, the other two coordinates 1.
fn node_point(t: &[usize; 3]) -> Vec<FieldElement> {
    let f = FiniteField::GF2;
    (0..5).map(|i| if t.contains(&i) { f.zero() } else { f.one() }).collect()
}

/// Generators of the ideal of the line ℓ_ij.
fn line_ideal(p: &[usize; 2]) -> Vec<Poly> {
    let f = FiniteField::GF2;
    let rest = complement(p);
    vec![
        Poly::var(f, var(COORDS[p[0]])),
        Poly::var(f, var(COORDS[p[1]])),
        poly(&rest.iter().map(|&i| COORDS[i]).collect::<Vec<_>>().join(" + "), f),
    ]
}

pub fn verify_type_vi() -> Vec<IdentityCheckReport> {
    vec![nodes(), lines(), cremona_fixed_exhaustive(), cremona_fixed_symbolic(), hyperplane_sections(), incidence()]
}

fn nodes() -> IdentityCheckReport {
    let x = coords();
    let (s1, s4) = (sigma1(), sigma4());
    let mut notes = Vec::new();
    for t in triples() {
        let p = node_point(&t);
        if !eval_point(&s1, &x, &p).is_zero() || !eval_point(&s4, &x, &p).is_zero() {
            return IdentityCheckReport::fail("typeVI.nodes", None, format!("p_{} is not on S", label(&t)));
        }
        let jac: Vec<Vec<FieldElement>> =
            [&s1, &s4].iter().map(|g| x.iter().map(|&v| eval_point(&g.partial(v), &x, &p)).collect()).collect();
        let r = rank(jac);
        if r >= 2 {
            return IdentityCheckReport::fail("typeVI.nodes", None, format!("S is smooth at p_{}", label(&t)));
        }
        // Chart x_l = 1; σ1 = 0 eliminates x_m; the node is at the origin.
        let rest = complement(&t);
        let (l, m) = (COORDS[rest[0]], COORDS[rest[1]]);
        let others: Vec<&str> = t.iter().map(|&i| COORDS[i]).collect();
        let elim = format!("1 + {}", others.join(" + "));
        let local = substitute(&s4, &[(l, "1"), (m, elim.as_str())]);
        let local_vars: Vec<Var> = others.iter().map(|c| var(c)).collect();
        if let Err(e) = node_certificate(&local, &local_vars) {
            return IdentityCheckReport::fail("typeVI.nodes", None, format!("p_{}: {e}", label(&t)));
        }
        if notes.is_empty() {
            notes.push(format!(
                "p_{}: Jacobian rank {r}, {}",
                label(&t),
                node_certificate(&local, &local_vars).unwrap()
            ));
        }
    }
    notes.push("all ten p_ijk are nodes of S".to_string());
    IdentityCheckReport::pass("typeVI.nodes", notes.join("; "))
}

fn lines() -> IdentityCheckReport {
    for p in pairs() {
        let basis = groebner_basis(&line_ideal(&p));
        if !ideal_contains(&basis, &sigma1()) || !ideal_contains(&basis, &sigma4()) {
            return IdentityCheckReport::fail("typeVI.lines", None, format!("l_{} is not contained in S", label(&p)));
        }
    }
    IdentityCheckReport::pass("typeVI.lines", "sigma1, sigma4 lie in the ideal of every l_ij")
}

fn cremona_fixed_exhaustive() -> IdentityCheckReport {
    let x = coords();
    let c = cremona();
    let field = FiniteField::GF4;
    let candidates: Vec<_> =
        projective_points(field, 5).into_iter().filter(|p| p.iter().all(|v| !v.is_zero())).collect();
    let fixed: Vec<Vec<FieldElement>> = candidates
        .iter()
        .filter(|p| {
            let image: Vec<_> = c.components().iter().map(|g| eval_point(g, &x, p)).collect();
            proportional(p, &image)
        })
        .cloned()
        .collect();
    let ok = fixed.len() == 1 && fixed[0].iter().all(|v| v.is_one());
    let off_s = fixed.first().is_some_and(|p| !eval_point(&sigma1(), &x, p).is_zero());
    let details = format!(
        "{} points of P^4(GF(4)) with nonzero coordinates; fixed: {}; sigma1(1,1,1,1,1) = 1, so the point is off S",
        candidates.len(),
        fixed
            .iter()
            .map(|p| format!("({})", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    );
    if ok && off_s {
        IdentityCheckReport::pass("typeVI.cremona_fixed_exhaustive", details)
    } else {
        IdentityCheckReport::fail("typeVI.cremona_fixed_exhaustive", None, details)
    }
}

/// Fixed points with all coordinates nonzero over the algebraic closure:
/// chart x1 = 1, the minors of (x, C(x)) and the saturation
/// `sat * x2x3x4x5 = 1`.
fn cremona_fixed_symbolic() -> IdentityCheckReport {
    let field = FiniteField::GF2;
    let c = cremona();
    let mut gens: Vec<Poly> =
        c.fixed_point_minors(&c.coord_polys()).iter().map(|g| substitute(g, &[("x1", "1")])).collect();
    gens.push(poly("sat*x2*x3*x4*x5 + 1", field));
    gens.retain(|g| !g.is_zero());
    let mut point: Vec<(Var, FieldElement)> = COORDS[1..].iter().map(|v| (var(v), field.one())).collect();
    point.push((var("sat"), field.one()));
    let r = single_point_certificate(&gens, &point).map(|d| format!("only (1,1,1,1,1); {d}"));
    IdentityCheckReport::from_result("typeVI.cremona_fixed_symbolic", r)
}

/// σ4 on x_i = x_j is x_i^2 (x_k x_l + x_k x_m + x_l x_m): the double line
/// ℓ_ij plus a conic that splits over GF(4) into two lines through p_klm.
fn hyperplane_sections() -> IdentityCheckReport {
    let field = FiniteField::GF2;
    let mut residuals = Vec::new();
    for p in pairs() {
        let (i, j) = (COORDS[p[0]], COORDS[p[1]]);
        let rest: Vec<&str> = complement(&p).iter().map(|&k| COORDS[k]).collect();
        let (k, l, m) = (rest[0], rest[1], rest[2]);
        let restricted = substitute(&sigma4(), &[(j, i)]);
        let conic = poly(&format!("{k}*{l} + {k}*{m} + {l}*{m}"), field);
        let expected = &poly(&format!("{i}^2"), field) * &conic;
        residuals.push(&restricted + &expected);
        residuals.push(&substitute(&sigma1(), &[(j, i)]) + &poly(&format!("{k} + {l} + {m}"), field));
        // On the plane x_m = x_k + x_l the conic is x_k^2 + x_k x_l + x_l^2.
        let on_plane = substitute(&conic, &[(m, &format!("{k} + {l}"))]);
        residuals.push(&on_plane + &poly(&format!("{k}^2 + {k}*{l} + {l}^2"), field));
    }
    // x^2 + x + 1 has two distinct roots in GF(4): the conic splits.
    let split = factor_univariate(&poly("x^2 + x + 1", FiniteField::GF4)).expect("nonzero");
    let linear =
        split.factors.iter().all(|(f, e)| f.degree_in(var("x")) == Some(1) && *e == 1) && split.factors.len() == 2;
    if !linear {
        return IdentityCheckReport::fail("typeVI.hyperplane_sections", None, "conic does not split over GF(4)");
    }
    IdentityCheckReport::from_residuals(
        "typeVI.hyperplane_sections",
        &residuals,
        "for all ten pairs: sigma4|_{x_i=x_j} = x_i^2 (x_kx_l + x_kx_m + x_lx_m); the conic is two lines through p_klm over GF(4)",
    )
}

/// Intersection numbers of the twenty curves L_ij, E_klm on the resolved
/// K3 surface and of their ten images on the quotient.
///
/// L_ij meets E_klm once iff p_klm lies on ℓ_ij; two lines meet only at
/// nodes, so their proper transforms are disjoint. The Cremona involution
/// swaps L_ij and E_klm ({k,l,m} the complement), so the image of L_ij
/// pairs with the image of L_ab as L_ij · (L_ab + E_complement(ab)).
pub fn petersen_incidence() -> DualGraph {
    let x = coords();
    let f = FiniteField::GF2;
    let on_line = |p: &[usize; 2], t: &[usize; 3]| {
        let pt = node_point(t);
        line_ideal(p).iter().all(|g| eval_point(g, &x, &pt).is_zero())
    };
    let nodes: Vec<Vec<FieldElement>> = triples().iter().map(node_point).collect();
    let lines_meet_off_nodes = |a: &[usize; 2], b: &[usize; 2]| {
        let mut gens = line_ideal(a);
        gens.extend(line_ideal(b));
        projective_points(f, 5)
            .into_iter()
            .any(|pt| gens.iter().all(|g| eval_point(g, &x, &pt).is_zero()) && !nodes.contains(&pt))
    };
    let ps = pairs();
    let mut g = DualGraph::new(ps.iter().map(|p| label(p)));
    for (a, pa) in ps.iter().enumerate() {
        for (b, pb) in ps.iter().enumerate().skip(a + 1) {
            let ll = i64::from(lines_meet_off_nodes(pa, pb));
            let comp: [usize; 3] = complement(pb).try_into().expect("three indices");
            let le = i64::from(on_line(pa, &comp));
            let m = ll + le;
            if m > 0 {
                g.set_edge(a, b, m as u8);
            }
        }
    }
    g
}

fn incidence() -> IdentityCheckReport {
    let g = petersen_incidence();
    let iso = are_isomorphic(&g, &build_petersen());
    let aut = automorphism_count(&g);
    let pentagon = ["12", "34", "15", "24", "35"];
    let idx: Vec<usize> = pentagon.iter().map(|n| g.index(n).expect("vertex")).collect();
    let cycle = (0..5).all(|i| {
        (0..5).all(|j| {
            let adjacent = (i + 1) % 5 == j || (j + 1) % 5 == i;
            i == j || (g.mult(idx[i], idx[j]) == 1) == adjacent
        })
    });
    let details = format!(
        "{} edges, all simple; isomorphic to Petersen: {iso}; automorphisms: {aut}; L12+L34+L15+L24+L35 induced pentagon: {cycle}",
        g.edges().len()
    );
    if iso && aut == 120 && cycle && g.max_multiplicity() == 1 {
        IdentityCheckReport::pass("typeVI.petersen_incidence", details)
    } else {
        IdentityCheckReport::fail("typeVI.petersen_incidence", None, details)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        for r in verify_type_vi() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn adjacency_is_disjointness() {
        let g = petersen_incidence();
        assert_eq!(g.mult(g.index("12").unwrap(), g.index("34").unwrap()), 1);
        assert_eq!(g.mult(g.index("12").unwrap(), g.index("13").unwrap()), 0);
        assert!((0..10).all(|i| g.degree(i) == 3));
    }

    #[test]
    fn cremona_fixed_point_is_all_ones() {
        assert!(cremona_fixed_exhaustive().details.contains("fixed: (1,1,1,1,1);"));
    }
}
