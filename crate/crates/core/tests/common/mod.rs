//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's own implementation of the quantity being checked.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use enriques::algebra::{RatFunc, Var};
use enriques::dynkin::DualGraph;
use enriques::weierstrass::CurvePoint;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

/// Corank of the negated Gram matrix if it is positive semidefinite, by
/// symmetric elimination over the rationals.
pub fn psd_corank(gram: &[Vec<i64>]) -> Option<usize> {
    let n = gram.len();
    let mut m: Vec<Vec<Rational64>> = gram.iter().map(|r| r.iter().map(|&x| Rational64::from(-x)).collect()).collect();
    let mut corank = 0;
    for k in 0..n {
        let p = m[k][k];
        if p < Rational64::zero() {
            return None;
        }
        if p.is_zero() {
            if (k + 1..n).any(|j| !m[k][j].is_zero()) {
                return None;
            }
            corank += 1;
            continue;
        }
        for i in k + 1..n {
            let f = m[i][k] / p;
            for j in k..n {
                let d = f * m[k][j];
                m[i][j] -= d;
            }
        }
    }
    Some(corank)
}

/// All connected vertex subsets of size at most `max`, each listed once.
pub fn connected_subsets(g: &DualGraph, max: usize) -> Vec<Vec<usize>> {
    fn grow(
        g: &DualGraph,
        root: usize,
        sub: &mut Vec<usize>,
        ext: Vec<usize>,
        nbhd: &BTreeSet<usize>,
        max: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let mut s = sub.clone();
        s.sort_unstable();
        out.push(s);
        if sub.len() == max {
            return;
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            next.extend(g.neighbors(w).filter(|&u| u > root && !nbhd.contains(&u)));
            let mut nb = nbhd.clone();
            nb.extend(g.neighbors(w));
            sub.push(w);
            grow(g, root, sub, next, &nb, max, out);
            sub.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..g.len() {
        let nbhd: BTreeSet<usize> = g.neighbors(v).chain([v]).collect();
        let ext: Vec<usize> = g.neighbors(v).filter(|&u| u > v).collect();
        grow(g, v, &mut vec![v], ext, &nbhd, max, &mut out);
    }
    out
}

/// Connected parabolic vertex sets of size at most `max` according to
/// `psd_corank`.
pub fn oracle_parabolics(g: &DualGraph, max: usize) -> BTreeSet<Vec<usize>> {
    connected_subsets(g, max).into_iter().filter(|s| psd_corank(&g.induced_gram(s)) == Some(1)).collect()
}

/// Name of an affine diagram of type ~A or ~E8 on `s`, "?" otherwise.
pub fn oracle_label(g: &DualGraph, s: &[usize]) -> String {
    let deg = |v: usize| s.iter().filter(|&&u| g.mult(u, v) > 0).count();
    if s.len() == 2 && g.mult(s[0], s[1]) == 2 {
        return "~A1".into();
    }
    let simple = s.iter().all(|&u| s.iter().all(|&v| g.mult(u, v) <= 1));
    if simple && s.iter().all(|&v| deg(v) == 2) {
        return format!("~A{}", s.len() - 1);
    }
    let branch: Vec<usize> = s.iter().copied().filter(|&v| deg(v) == 3).collect();
    let edges: usize = s.iter().map(|&v| deg(v)).sum::<usize>() / 2;
    if simple && s.len() == 9 && edges == 8 && branch.len() == 1 {
        // Arm lengths of a tree with one branch point.
        let mut arms = Vec::new();
        for start in s.iter().copied().filter(|&u| g.mult(u, branch[0]) > 0) {
            let (mut prev, mut cur, mut len) = (branch[0], start, 1);
            loop {
                let next: Vec<usize> = s.iter().copied().filter(|&w| w != prev && g.mult(w, cur) > 0).collect();
                match next.as_slice() {
                    [w] => {
                        prev = cur;
                        cur = *w;
                        len += 1;
                    }
                    _ => break,
                }
            }
            arms.push(len);
        }
        arms.sort_unstable();
        if arms == [1, 2, 5] {
            return "~E8".into();
        }
    }
    "?".into()
}

/// Type strings of the inclusion-maximal families of pairwise orthogonal
/// connected parabolics, each family's labels sorted and joined with "+".
pub fn oracle_maximal_types(g: &DualGraph, max: usize) -> BTreeSet<String> {
    let comps: Vec<Vec<usize>> = oracle_parabolics(g, max).into_iter().collect();
    let orth = |a: &[usize], b: &[usize]| a.iter().all(|&u| b.iter().all(|&v| u != v && g.mult(u, v) == 0));
    let mut out = BTreeSet::new();
    fn extend(
        comps: &[Vec<usize>],
        orth: &dyn Fn(&[usize], &[usize]) -> bool,
        chosen: &mut Vec<usize>,
        start: usize,
        g: &DualGraph,
        out: &mut BTreeSet<String>,
    ) {
        let fits = |i: usize, chosen: &[usize]| chosen.iter().all(|&c| orth(&comps[c], &comps[i]));
        for i in start..comps.len() {
            if fits(i, chosen) {
                chosen.push(i);
                extend(comps, orth, chosen, i + 1, g, out);
                chosen.pop();
            }
        }
        let maximal = (0..comps.len()).all(|i| chosen.contains(&i) || !fits(i, chosen));
        if maximal && !chosen.is_empty() {
            let mut labels: Vec<String> = chosen.iter().map(|&c| oracle_label(g, &comps[c])).collect();
            labels.sort_by_key(|l| std::cmp::Reverse((l.len(), l.clone())));
            out.insert(labels.join("+"));
        }
    }
    extend(&comps, &orth, &mut Vec::new(), 0, g, &mut out);
    out
}

/// Number of multiplicity-preserving bijections from `g` to `h`, by
/// backtracking.
pub fn count_isomorphisms(g: &DualGraph, h: &DualGraph) -> u64 {
    fn go(g: &DualGraph, h: &DualGraph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        let i = map.len();
        if i == g.len() {
            return 1;
        }
        let mut total = 0;
        for j in 0..h.len() {
            if used[j] || g.weighted_degree(i) != h.weighted_degree(j) {
                continue;
            }
            if (0..i).all(|k| g.mult(i, k) == h.mult(j, map[k])) {
                map.push(j);
                used[j] = true;
                total += go(g, h, map, used);
                used[j] = false;
                map.pop();
            }
        }
        total
    }
    if g.len() != h.len() {
        return 0;
    }
    go(g, h, &mut Vec::new(), &mut vec![false; h.len()])
}

/// Edges of the Petersen graph on the 2-subsets of {0..4}, adjacent when
/// disjoint.
pub fn petersen_kneser_edges() -> Vec<(usize, usize)> {
    let verts: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in verts.iter().enumerate() {
        for (j, &(c, d)) in verts.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Line graph of the Petersen graph built from the Kneser description.
pub fn petersen_line_graph() -> DualGraph {
    let edges = petersen_kneser_edges();
    let mut g = DualGraph::new((0..edges.len()).map(|i| format!("e{i}")));
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                g.set_edge(i, j, 1);
            }
        }
    }
    g
}

/// Signature (positive, negative, zero) and determinant of a symmetric
/// integer matrix, by congruence diagonalization over the rationals.
pub fn signature_and_det(gram: &[Vec<i64>]) -> ((usize, usize, usize), BigInt) {
    let n = gram.len();
    let mut m: Vec<Vec<BigRational>> =
        gram.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut det = BigRational::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // Row and column k += row and column j; unimodular, so the
                // determinant is unchanged.
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[k][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][k] += v;
                }
            }
        }
        let p = m[k][k].clone();
        det *= p.clone();
        if p.is_zero() {
            zero += 1;
            continue;
        }
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = m[i][k].clone() / p.clone();
            for j in k..n {
                let d = f.clone() * m[k][j].clone();
                m[i][j] -= d;
            }
        }
    }
    ((pos, neg, zero), det.to_integer())
}

/// Discriminant of y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6 in
/// characteristic 2, from b2 = a1^2, b4 = a1a3, b6 = a3^2 and
/// b8 = a1^2a6 + a1a3a4 + a2a3^2 + a4^2.
pub fn discriminant(a: [&RatFunc; 5]) -> RatFunc {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1.square();
    let b4 = a1 * a3;
    let b6 = a3.square();
    let b8 = &(&(&(&b2 * a6) + &(&b4 * a4)) + &(a2 * &b6)) + &a4.square();
    &(&(&b2.square() * &b8) + &b6.square()) + &(&(&b2 * &b4) * &b6)
}

/// j = c4^3 / Delta with c4 = b2^2 = a1^4.
pub fn j_invariant(a: [&RatFunc; 5]) -> RatFunc {
    a[0].pow(12).unwrap().try_div(&discriminant(a)).unwrap()
}

/// Chord-and-tangent addition on y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6
/// in characteristic 2.
pub fn add(a: [&RatFunc; 5], p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    let [a1, a2, a3, a4, _] = a;
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return q.clone(),
        (_, CurvePoint::Infinity) => return p.clone(),
        (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
    };
    let lambda = if x1 != x2 {
        (y1 + y2).try_div(&(x1 + x2)).unwrap()
    } else {
        // Same x: either q = -p = (x1, y1 + a1x1 + a3) or q = p.
        let minus_y1 = &(y1 + &(a1 * x1)) + a3;
        if *y2 == minus_y1 {
            return CurvePoint::Infinity;
        }
        let num = &(&x1.square() + a4) + &(a1 * y1);
        num.try_div(&(&(a1 * x1) + a3)).unwrap()
    };
    let nu = y1 + &(&lambda * x1);
    let x3 = &(&(&(&lambda.square() + &(a1 * &lambda)) + a2) + x1) + x2;
    let y3 = &(&(&(&lambda + a1) * &x3) + &nu) + a3;
    CurvePoint::affine(x3, y3)
}

pub fn mul(a: [&RatFunc; 5], n: u32, p: &CurvePoint) -> CurvePoint {
    (0..n).fold(CurvePoint::Infinity, |acc, _| add(a, &acc, p))
}

/// The point lies on the curve.
pub fn on_curve(a: [&RatFunc; 5], p: &CurvePoint) -> bool {
    let [a1, a2, a3, a4, a6] = a;
    match p {
        CurvePoint::Infinity => true,
        CurvePoint::Affine { x, y } => {
            let lhs = &(&y.square() + &(&(a1 * x) * y)) + &(a3 * y);
            let rhs = &(&(&x.pow(3).unwrap() + &(a2 * &x.square())) + &(a4 * x)) + a6;
            lhs == rhs
        }
    }
}

/// Applies the derivation c_t d/dt + c_x d/dx.
pub fn derive(ct: &RatFunc, cx: &RatFunc, t: Var, x: Var, f: &RatFunc) -> RatFunc {
    &(ct * &f.partial(t)) + &(cx * &f.partial(x))
}
