//! Parabolic subdiagrams: recognition, enumeration, Vinberg's criterion,
//! isotropic fiber classes and Kodaira assignments.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use super::{AffineLabel, DualGraph, DynkinError};
use crate::kodaira::KodairaType;
use crate::lattice::{inertia, negative_semidefinite_corank};

/// Rank of a parabolic subdiagram spanning a full fibration on an Enriques
/// surface.
pub const FULL_RANK: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParabolicComponent {
    pub label: AffineLabel,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParabolicSubdiagram {
    /// Sorted by decreasing rank, then label, then vertex set.
    pub components: Vec<ParabolicComponent>,
}

impl ParabolicSubdiagram {
    pub fn new(mut components: Vec<ParabolicComponent>) -> ParabolicSubdiagram {
        components.sort_by(|a, b| {
            b.label.rank().cmp(&a.label.rank()).then(a.label.cmp(&b.label)).then(a.vertices.cmp(&b.vertices))
        });
        ParabolicSubdiagram { components }
    }

    pub fn rank(&self) -> u32 {
        self.components.iter().map(|c| c.label.rank()).sum()
    }

    pub fn labels(&self) -> Vec<AffineLabel> {
        self.components.iter().map(|c| c.label).collect()
    }

    /// `~A5+~A2+~A1`.
    pub fn type_string(&self) -> String {
        self.labels().iter().map(ToString::to_string).collect::<Vec<_>>().join("+")
    }

    pub fn vertex_set(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.components.iter().flat_map(|c| c.vertices.iter().copied()).collect();
        v.sort_unstable();
        v
    }

    pub fn describe(&self, g: &DualGraph) -> String {
        self.components
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.vertices.iter().map(|&i| g.name(i)).collect();
                format!("{}{{{}}}", c.label, names.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for ParabolicSubdiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.type_string())
    }
}

/// Determinant of a small integer matrix by fraction-free elimination.
fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn neg_gram_det(g: &DualGraph, subset: &[usize]) -> i128 {
    let m = g.induced_gram(subset).into_iter().map(|r| r.into_iter().map(|v| -(v as i128)).collect()).collect();
    det_i128(m)
}

/// Affine label of a connected vertex set, if its Gram matrix is negative
/// semidefinite of corank exactly one.
pub fn recognize_connected_parabolic(g: &DualGraph, subset: &[usize]) -> Option<AffineLabel> {
    if !g.is_connected_subset(subset) {
        return None;
    }
    (negative_semidefinite_corank(&g.induced_gram(subset)) == Some(1)).then(|| label_by_shape(g, subset))
}

/// Shape-based label of a connected parabolic vertex set.
fn label_by_shape(g: &DualGraph, subset: &[usize]) -> AffineLabel {
    let n = subset.len() as u32;
    let mut edges = 0;
    let mut double = false;
    let mut branch = Vec::new();
    for &i in subset {
        let d = subset.iter().filter(|&&j| g.mult(i, j) > 0).count();
        if d >= 3 {
            branch.push(d);
        }
        for &j in subset {
            if j > i && g.mult(i, j) > 0 {
                edges += 1;
                double |= g.mult(i, j) >= 2;
            }
        }
    }
    if double || edges == n {
        return AffineLabel::A(n - 1);
    }
    match (branch.as_slice(), n) {
        ([3], 7) => AffineLabel::E(6),
        ([3], 8) => AffineLabel::E(7),
        ([3], 9) => AffineLabel::E(8),
        _ => AffineLabel::D(n - 1),
    }
}

fn masks(g: &DualGraph) -> Result<Vec<u64>, DynkinError> {
    if g.len() > 64 {
        return Err(DynkinError::TooLarge(g.len()));
    }
    Ok((0..g.len()).map(|i| g.neighbors(i).fold(0u64, |m, j| m | 1 << j)).collect())
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// All connected parabolic vertex sets.
///
/// Connected sets are grown one vertex at a time, each set visited once
/// (rooted at its smallest vertex). Every proper subset of a connected
/// parabolic set is negative definite, so growth continues only from
/// negative definite sets. Adding a vertex to a negative definite set gives
/// a semidefinite corank-one matrix exactly when det(-G) becomes 0.
pub fn connected_parabolics(g: &DualGraph) -> Result<Vec<ParabolicComponent>, DynkinError> {
    let nbr = masks(g)?;
    let mut out = Vec::new();
    for root in 0..g.len() {
        let above = if root + 1 >= 64 { 0 } else { !0u64 << (root + 1) };
        let ext = nbr[root] & above;
        grow(g, &nbr, 1 << root, nbr[root], ext, above, &mut out);
    }
    out.sort();
    Ok(out)
}

fn grow(
    g: &DualGraph,
    nbr: &[u64],
    sub: u64,
    sub_nbr: u64,
    mut ext: u64,
    above: u64,
    out: &mut Vec<ParabolicComponent>,
) {
    while ext != 0 {
        let w = ext.trailing_zeros() as usize;
        ext &= ext - 1;
        let next = sub | 1 << w;
        let vs = bits(next);
        let d = neg_gram_det(g, &vs);
        if d == 0 {
            out.push(ParabolicComponent { label: label_by_shape(g, &vs), vertices: vs });
        } else if d > 0 {
            let fresh = nbr[w] & !sub & !sub_nbr & above;
            grow(g, nbr, next, sub_nbr | nbr[w], ext | fresh, above, out);
        }
    }
}

/// Every parabolic subdiagram: unions of pairwise disjoint, mutually
/// non-adjacent connected parabolic components.
pub fn enumerate_parabolics(g: &DualGraph) -> Result<Vec<ParabolicSubdiagram>, DynkinError> {
    let nbr = masks(g)?;
    let comps = connected_parabolics(g)?;
    let info: Vec<(u64, u64)> = comps
        .iter()
        .map(|c| {
            let m = c.vertices.iter().fold(0u64, |m, &v| m | 1 << v);
            let closed = c.vertices.iter().fold(m, |acc, &v| acc | nbr[v]);
            (m, closed)
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    combine(&comps, &info, 0, 0, &mut chosen, &mut out);
    Ok(out)
}

fn combine(
    comps: &[ParabolicComponent],
    info: &[(u64, u64)],
    start: usize,
    blocked: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<ParabolicSubdiagram>,
) {
    for i in start..comps.len() {
        if info[i].0 & blocked != 0 {
            continue;
        }
        chosen.push(i);
        out.push(ParabolicSubdiagram::new(chosen.iter().map(|&k| comps[k].clone()).collect()));
        combine(comps, info, i + 1, blocked | info[i].1, chosen, out);
        chosen.pop();
    }
}

/// Parabolic subdiagrams of the largest rank occurring.
pub fn maximal_parabolics(g: &DualGraph) -> Result<Vec<ParabolicSubdiagram>, DynkinError> {
    let all = enumerate_parabolics(g)?;
    let top = all.iter().map(ParabolicSubdiagram::rank).max().unwrap_or(0);
    Ok(all.into_iter().filter(|p| p.rank() == top).collect())
}

/// Distinct type strings of a list of subdiagrams with their counts.
pub fn type_census(ps: &[ParabolicSubdiagram]) -> Vec<(String, usize)> {
    let mut m: std::collections::BTreeMap<String, usize> = std::collections::BTreeMap::new();
    for p in ps {
        *m.entry(p.type_string()).or_default() += 1;
    }
    m.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VinbergReport {
    pub finite_index: bool,
    pub lattice_rank: usize,
    pub signature: (usize, usize, usize),
    pub connected_parabolics: usize,
    /// For each connected parabolic type, the type of one rank-8 extension.
    pub witnesses: Vec<(String, String)>,
    /// A connected parabolic with no rank-8 extension.
    pub counterexample: Option<String>,
    pub reason: Option<String>,
}

/// Vinberg's criterion: the reflection group has finite index iff every
/// connected parabolic subdiagram is a component of a parabolic subdiagram of
/// rank 8. The graph must embed in a lattice of signature (1, 9); a Gram
/// matrix of rank below 10 cannot certify finite index.
pub fn vinberg_check(g: &DualGraph) -> Result<VinbergReport, DynkinError> {
    if let Some((i, j, m)) = g.edges().into_iter().find(|&(_, _, m)| m >= 3) {
        return Err(DynkinError::TripleEdge(g.name(i).to_string(), g.name(j).to_string(), m));
    }
    let (pos, neg) = inertia(&g.gram());
    if pos > 1 || neg > 9 {
        return Err(DynkinError::DegenerateGraph(format!("signature ({pos}, {neg}) does not embed in (1, 9)")));
    }
    let rank = pos + neg;
    let comps = connected_parabolics(g)?;
    let full: Vec<ParabolicSubdiagram> =
        enumerate_parabolics(g)?.into_iter().filter(|p| p.rank() == FULL_RANK).collect();
    let mut witnesses: Vec<(String, String)> = Vec::new();
    let mut counterexample = None;
    for c in &comps {
        match full.iter().find(|p| p.components.contains(c)) {
            Some(p) => {
                let w = (c.label.to_string(), p.type_string());
                if !witnesses.iter().any(|x| x.0 == w.0) {
                    witnesses.push(w);
                }
            }
            None => {
                let names: Vec<&str> = c.vertices.iter().map(|&i| g.name(i)).collect();
                counterexample = Some(format!("{}{{{}}}", c.label, names.join(",")));
                break;
            }
        }
    }
    witnesses.sort();
    let mut reasons = Vec::new();
    if let Some(c) = &counterexample {
        reasons.push(format!("{c} extends to no rank-8 parabolic subdiagram"));
    }
    if rank < 10 {
        reasons.push(format!("Gram matrix has rank {rank} < 10"));
    }
    let reason = (!reasons.is_empty()).then(|| reasons.join("; "));
    Ok(VinbergReport {
        finite_index: rank == 10 && counterexample.is_none(),
        lattice_rank: rank,
        signature: (pos, neg, g.len() - rank),
        connected_parabolics: comps.len(),
        witnesses,
        counterexample,
        reason,
    })
}

/// The primitive positive kernel vector of a connected parabolic component:
/// its affine marks, in the order of `component`.
pub fn isotropic_class(g: &DualGraph, component: &[usize]) -> Result<Vec<u64>, DynkinError> {
    if recognize_connected_parabolic(g, component).is_none() {
        return Err(DynkinError::NotParabolic(component.iter().map(|&i| g.name(i)).collect::<Vec<_>>().join(",")));
    }
    let n = component.len();
    let mut m: Vec<Vec<Ratio<i128>>> = g
        .induced_gram(component)
        .into_iter()
        .map(|r| r.into_iter().map(|v| Ratio::from_integer(v as i128)).collect())
        .collect();
    // Reduced row echelon form; corank one leaves exactly one free column.
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| m[i][col] != Ratio::from_integer(0)) else {
            continue;
        };
        m.swap(row, p);
        let pv = m[row][col];
        for k in 0..n {
            m[row][k] /= pv;
        }
        for i in 0..n {
            if i != row && m[i][col] != Ratio::from_integer(0) {
                let f = m[i][col];
                for k in 0..n {
                    let v = f * m[row][k];
                    m[i][k] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).expect("corank one");
    let mut v = vec![Ratio::from_integer(0i128); n];
    v[free] = Ratio::from_integer(1);
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -m[r][free];
    }
    let l = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * Ratio::from_integer(l)).to_integer()).collect();
    let gcd = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    let sign = if ints.iter().any(|&x| x < 0) { -1 } else { 1 };
    Ok(ints.iter().map(|&x| (sign * x / gcd) as u64).collect())
}

/// An outside vertex pairing oddly with the isotropic class of `component`,
/// with the pairing value.
pub fn multiple_fiber_witness(
    g: &DualGraph,
    parabolic: &ParabolicSubdiagram,
    component: usize,
) -> Result<Option<(usize, u64)>, DynkinError> {
    let comp = &parabolic.components[component];
    let marks = isotropic_class(g, &comp.vertices)?;
    let inside = parabolic.vertex_set();
    for u in (0..g.len()).filter(|u| !inside.contains(u)) {
        let pairing: u64 = comp.vertices.iter().zip(&marks).map(|(&c, &k)| k * g.mult(u, c) as u64).sum();
        if pairing % 2 == 1 {
            return Ok(Some((u, pairing)));
        }
    }
    Ok(None)
}

/// A fiber whose class pairs oddly with some curve cannot be a full fiber
/// when the full fiber class is twice a half-fiber, so it is multiple.
pub fn multiple_fiber_test(
    g: &DualGraph,
    parabolic: &ParabolicSubdiagram,
    component: usize,
) -> Result<bool, DynkinError> {
    Ok(multiple_fiber_witness(g, parabolic, component)?.is_some())
}

/// Configurations of reducible fibers allowed on a genus-one fibration of an
/// Enriques surface with finite automorphism group.
pub const FIBER_CATALOGUE: [&[KodairaType]; 11] = {
    use KodairaType::*;
    [
        &[I(3), I(3), I(3), I(3)],
        &[I(5), I(5)],
        &[I(9)],
        &[IStar(4)],
        &[IIStar],
        &[III, I(8)],
        &[IStar(1), I(4)],
        &[IIIStar, I(2)],
        &[IV, IVStar],
        &[IV, I(2), I(6)],
        &[IVStar, I(3)],
    ]
};

pub fn kodaira_candidates(label: AffineLabel) -> Vec<KodairaType> {
    use KodairaType::*;
    match label {
        AffineLabel::A(1) => vec![I(2), III],
        AffineLabel::A(2) => vec![I(3), IV],
        AffineLabel::A(n) => vec![I(n + 1)],
        AffineLabel::D(n) => vec![IStar(n - 4)],
        AffineLabel::E(6) => vec![IVStar],
        AffineLabel::E(7) => vec![IIIStar],
        AffineLabel::E(_) => vec![IIStar],
    }
}

fn sorted(v: &[KodairaType]) -> Vec<KodairaType> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// Fiber-type assignments (one per component, in component order) compatible
/// with the affine labels and present in the catalogue.
pub fn kodaira_assignments(parabolic: &ParabolicSubdiagram) -> Vec<Vec<KodairaType>> {
    let mut partial: Vec<Vec<KodairaType>> = vec![Vec::new()];
    for label in parabolic.labels() {
        partial = partial
            .into_iter()
            .flat_map(|p| {
                kodaira_candidates(label).into_iter().map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    let catalogue: Vec<Vec<KodairaType>> = FIBER_CATALOGUE.iter().map(|c| sorted(c)).collect();
    partial.into_iter().filter(|a| catalogue.contains(&sorted(a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{build_e10_graph, build_type_vii_graph, cycle_graph, path_graph};

    fn all(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn recognition_examples() {
        let c9 = cycle_graph(9);
        assert_eq!(recognize_connected_parabolic(&c9, &all(9)), Some(AffineLabel::A(8)));
        let mut pair = DualGraph::new(["a", "b"]);
        pair.set_edge(0, 1, 2);
        assert_eq!(recognize_connected_parabolic(&pair, &all(2)), Some(AffineLabel::A(1)));
        assert_eq!(recognize_connected_parabolic(&path_graph(4), &all(4)), None);
        let e10 = build_e10_graph();
        assert_eq!(recognize_connected_parabolic(&e10, &[0, 1, 2, 3, 4, 5, 6, 7, 9]), Some(AffineLabel::E(8)));
        assert_eq!(recognize_connected_parabolic(&e10, &all(10)), None);
    }

    #[test]
    fn d_and_e_shapes() {
        let mut d4 = DualGraph::new(["c", "a", "b", "d", "e"]);
        for i in 1..5 {
            d4.set_edge(0, i, 1);
        }
        assert_eq!(recognize_connected_parabolic(&d4, &all(5)), Some(AffineLabel::D(4)));
        // ~D6: two branch vertices joined by a path of length 2.
        let mut d6 = DualGraph::new(["x1", "x2", "y1", "y2", "u", "v", "w"]);
        d6.set_edge(4, 0, 1);
        d6.set_edge(4, 1, 1);
        d6.set_edge(4, 5, 1);
        d6.set_edge(5, 6, 1);
        d6.set_edge(6, 2, 1);
        d6.set_edge(6, 3, 1);
        assert_eq!(recognize_connected_parabolic(&d6, &all(7)), Some(AffineLabel::D(6)));
        assert_eq!(isotropic_class(&d6, &all(7)).unwrap(), vec![1, 1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn cycle_five() {
        let ps = maximal_parabolics(&cycle_graph(5)).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!((ps[0].type_string(), ps[0].rank()), ("~A4".to_string(), 4));
        assert_eq!(isotropic_class(&cycle_graph(5), &all(5)).unwrap(), vec![1; 5]);
    }

    #[test]
    fn e8_marks() {
        let e10 = build_e10_graph();
        // n1..n8 then b.
        let comp = [0, 1, 2, 3, 4, 5, 6, 7, 9];
        assert_eq!(isotropic_class(&e10, &comp).unwrap(), vec![2, 4, 6, 5, 4, 3, 2, 1, 3]);
        assert!(isotropic_class(&e10, &[0, 1, 2]).is_err());
    }

    #[test]
    fn type_vii_maximal() {
        let g = build_type_vii_graph();
        let max = maximal_parabolics(&g).unwrap();
        assert!(max.iter().all(|p| p.rank() == 8));
        let kinds: Vec<String> = type_census(&max).into_iter().map(|x| x.0).collect();
        assert_eq!(kinds, ["~A4+~A4", "~A5+~A2+~A1", "~A7+~A1", "~A8"]);
        let report = vinberg_check(&g).unwrap();
        assert!(report.finite_index, "{report:?}");
    }

    #[test]
    fn assignments() {
        use KodairaType::*;
        let sub = |labels: &[AffineLabel]| {
            ParabolicSubdiagram::new(
                labels.iter().enumerate().map(|(i, &l)| ParabolicComponent { label: l, vertices: vec![i] }).collect(),
            )
        };
        let a = AffineLabel::A;
        assert_eq!(kodaira_assignments(&sub(&[a(5), a(2), a(1)])), vec![vec![I(6), IV, I(2)]]);
        assert_eq!(kodaira_assignments(&sub(&[a(7), a(1)])), vec![vec![I(8), III]]);
        assert_eq!(kodaira_assignments(&sub(&[a(4), a(4)])), vec![vec![I(5), I(5)]]);
        assert_eq!(kodaira_assignments(&sub(&[a(2), a(2), a(2), a(2)])), vec![vec![I(3); 4]]);
        assert!(kodaira_assignments(&sub(&[a(3)])).is_empty());
    }

    #[test]
    fn determinant() {
        assert_eq!(det_i128(vec![vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(det_i128(vec![vec![0, 1], vec![1, 0]]), -1);
    }
}
