//! Dual graphs of (-2)-curves: weighted multigraphs with edge multiplicity
//! equal to the intersection number.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::DynkinError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    names: Vec<String>,
    adj: Vec<Vec<u8>>,
}

/// On-disk graph: `{"vertices": [...], "edges": [["a", "b", 1], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u8)>,
}

pub const GRAPH_NAMES: [&str; 4] = ["petersen", "petersen-line", "typeVII", "E10"];

impl DualGraph {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> DualGraph {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        DualGraph { names, adj: vec![vec![0; n]; n] }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sets the multiplicity between two distinct vertices.
    pub fn set_edge(&mut self, i: usize, j: usize, m: u8) {
        assert_ne!(i, j, "loops are not allowed");
        self.adj[i][j] = m;
        self.adj[j][i] = m;
    }

    pub fn set_edge_by_name(&mut self, a: &str, b: &str, m: u8) -> Result<(), DynkinError> {
        let i = self.index(a).ok_or_else(|| DynkinError::UnknownVertex(a.to_string()))?;
        let j = self.index(b).ok_or_else(|| DynkinError::UnknownVertex(b.to_string()))?;
        if i == j {
            return Err(DynkinError::Format(format!("loop at `{a}`")));
        }
        self.set_edge(i, j, m);
        Ok(())
    }

    pub fn mult(&self, i: usize, j: usize) -> u8 {
        self.adj[i][j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().enumerate().filter(|(_, &m)| m > 0).map(|(j, _)| j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Sum of multiplicities at `i`.
    pub fn weighted_degree(&self, i: usize) -> u32 {
        self.adj[i].iter().map(|&m| m as u32).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize, u8)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adj[i][j] > 0 {
                    out.push((i, j, self.adj[i][j]));
                }
            }
        }
        out
    }

    pub fn max_multiplicity(&self) -> u8 {
        self.adj.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Diagonal -2, off-diagonal the multiplicity.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.induced_gram(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn induced_gram(&self, subset: &[usize]) -> Vec<Vec<i64>> {
        subset
            .iter()
            .map(|&i| subset.iter().map(|&j| if i == j { -2 } else { self.adj[i][j] as i64 }).collect())
            .collect()
    }

    pub fn is_connected_subset(&self, subset: &[usize]) -> bool {
        let Some(&start) = subset.first() else {
            return false;
        };
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in subset {
                if self.adj[v][u] > 0 && !seen.contains(&u) {
                    seen.push(u);
                    stack.push(u);
                }
            }
        }
        seen.len() == subset.len()
    }

    pub fn induced(&self, subset: &[usize]) -> DualGraph {
        let mut g = DualGraph::new(subset.iter().map(|&i| self.names[i].clone()));
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                if a != b {
                    g.adj[a][b] = self.adj[i][j];
                }
            }
        }
        g
    }

    /// The graph of a curve configuration; the diagonal must be -2 and
    /// off-diagonal entries nonnegative.
    pub fn from_gram(names: &[String], gram: &[Vec<i64>]) -> Result<DualGraph, DynkinError> {
        let mut g = DualGraph::new(names.iter().cloned());
        for i in 0..names.len() {
            if gram[i][i] != -2 {
                return Err(DynkinError::Format(format!("`{}` is not a (-2)-curve", names[i])));
            }
            for j in 0..names.len() {
                if i != j {
                    let m = u8::try_from(gram[i][j])
                        .map_err(|_| DynkinError::Format(format!("bad pairing {}", gram[i][j])))?;
                    g.adj[i][j] = m;
                }
            }
        }
        Ok(g)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(i, j, m)| (self.names[i].clone(), self.names[j].clone(), m))
                .collect(),
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<DualGraph, DynkinError> {
        let mut seen = std::collections::HashSet::new();
        for v in &file.vertices {
            if !seen.insert(v) {
                return Err(DynkinError::Format(format!("duplicate vertex `{v}`")));
            }
        }
        let mut g = DualGraph::new(file.vertices.iter().cloned());
        for (a, b, m) in &file.edges {
            g.set_edge_by_name(a, b, *m)?;
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<DualGraph, DynkinError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| DynkinError::Format(e.to_string()))?;
        DualGraph::from_file(&file)
    }

    pub fn builtin(name: &str) -> Result<DualGraph, DynkinError> {
        match name {
            "petersen" => Ok(build_petersen()),
            "petersen-line" => Ok(line_graph(&build_petersen())),
            "typeVII" => Ok(build_type_vii_graph()),
            "E10" => Ok(build_e10_graph()),
            _ => Err(DynkinError::UnknownBuiltin(name.to_string())),
        }
    }
}

/// Cycle on n vertices `c1..cn` with simple edges.
pub fn cycle_graph(n: usize) -> DualGraph {
    let mut g = DualGraph::new((1..=n).map(|i| format!("c{i}")));
    for i in 0..n {
        g.set_edge(i, (i + 1) % n, 1);
    }
    g
}

/// Path on n vertices `p1..pn`.
pub fn path_graph(n: usize) -> DualGraph {
    let mut g = DualGraph::new((1..=n).map(|i| format!("p{i}")));
    for i in 1..n {
        g.set_edge(i - 1, i, 1);
    }
    g
}

fn pair_name(a: u8, b: u8) -> String {
    format!("{a}{b}")
}

/// Kneser graph K(5,2): 2-subsets of {1..5}, adjacent when disjoint.
pub fn build_petersen() -> DualGraph {
    let pairs: Vec<(u8, u8)> = (1..=5).flat_map(|a| (a + 1..=5).map(move |b| (a, b))).collect();
    let mut g = DualGraph::new(pairs.iter().map(|&(a, b)| pair_name(a, b)));
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if a != c && a != d && b != c && b != d {
                g.set_edge(i, j, 1);
            }
        }
    }
    g
}

/// Vertices are the edges of `g` (named `u|v`), adjacent when they share an
/// endpoint.
pub fn line_graph(g: &DualGraph) -> DualGraph {
    let edges = g.edges();
    let mut l = DualGraph::new(edges.iter().map(|&(i, j, _)| format!("{}|{}", g.name(i), g.name(j))));
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            let (i, j, _) = edges[a];
            let (k, m, _) = edges[b];
            if i == k || i == m || j == k || j == m {
                l.set_edge(a, b, 1);
            }
        }
    }
    l
}

/// Line graph of the Petersen graph plus five vertices `K1..K5` joined
/// pairwise by double edges. A Petersen edge {ab, cd} misses exactly one
/// element e of {1..5}; the corresponding line-graph vertex is joined to
/// `Ke` by a double edge.
pub fn build_type_vii_graph() -> DualGraph {
    let petersen = build_petersen();
    let line = line_graph(&petersen);
    let mut names: Vec<String> = line.names().to_vec();
    names.extend((1..=5).map(|e| format!("K{e}")));
    let mut g = DualGraph::new(names);
    let n = line.len();
    for (i, j, m) in line.edges() {
        g.set_edge(i, j, m);
    }
    for a in 0..5 {
        for b in a + 1..5 {
            g.set_edge(n + a, n + b, 2);
        }
    }
    for v in 0..n {
        let used: String = line.name(v).chars().filter(|c| c.is_ascii_digit()).collect();
        let missing = (1..=5u8).find(|e| !used.contains(char::from(b'0' + e))).expect("one element missing");
        g.set_edge(v, n + missing as usize - 1, 2);
    }
    g
}

/// T-shaped tree: path `n1..n9` with a branch vertex `b` attached to `n3`.
pub fn build_e10_graph() -> DualGraph {
    let mut names: Vec<String> = (1..=9).map(|i| format!("n{i}")).collect();
    names.push("b".into());
    let mut g = DualGraph::new(names);
    for i in 1..9 {
        g.set_edge(i - 1, i, 1);
    }
    g.set_edge(2, 9, 1);
    g
}

/// Initial vertex colors: sorted multiset of incident multiplicities.
fn colors(g: &DualGraph) -> Vec<Vec<u8>> {
    (0..g.len())
        .map(|i| {
            let mut c: Vec<u8> = g.adj[i].iter().copied().filter(|&m| m > 0).collect();
            c.sort_unstable();
            c
        })
        .collect()
}

/// One round of color refinement: a vertex's new color is its old color plus
/// the multiset of (neighbor color, multiplicity).
fn refine(g: &DualGraph, h: &DualGraph) -> (Vec<usize>, Vec<usize>) {
    let (cg, ch) = (colors(g), colors(h));
    let mut ids: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for c in cg.iter().chain(ch.iter()) {
        let k = ids.len();
        ids.entry(c.clone()).or_insert(k);
    }
    let mut a: Vec<usize> = cg.iter().map(|c| ids[c]).collect();
    let mut b: Vec<usize> = ch.iter().map(|c| ids[c]).collect();
    for _ in 0..g.len().max(1) {
        let sig = |gr: &DualGraph, col: &[usize], i: usize| {
            let mut s: Vec<(usize, u8)> = gr.neighbors(i).map(|j| (col[j], gr.adj[i][j])).collect();
            s.sort_unstable();
            (col[i], s)
        };
        let sa: Vec<_> = (0..g.len()).map(|i| sig(g, &a, i)).collect();
        let sb: Vec<_> = (0..h.len()).map(|i| sig(h, &b, i)).collect();
        let mut ids = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            let k = ids.len();
            ids.entry(s.clone()).or_insert(k);
        }
        let na: Vec<usize> = sa.iter().map(|s| ids[s]).collect();
        let nb: Vec<usize> = sb.iter().map(|s| ids[s]).collect();
        let stable = ids.len() == count_distinct(&a, &b);
        a = na;
        b = nb;
        if stable {
            break;
        }
    }
    (a, b)
}

fn count_distinct(a: &[usize], b: &[usize]) -> usize {
    let mut v: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Matcher<'a> {
    g: &'a DualGraph,
    h: &'a DualGraph,
    cg: Vec<usize>,
    ch: Vec<usize>,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    /// Visits every isomorphism; `f` returns false to stop.
    fn search(&mut self, depth: usize, f: &mut dyn FnMut(&[Option<usize>]) -> bool) -> bool {
        if depth == self.order.len() {
            return f(&self.map);
        }
        let v = self.order[depth];
        for w in 0..self.h.len() {
            if self.used[w] || self.cg[v] != self.ch[w] {
                continue;
            }
            let ok = self.order[..depth].iter().all(|&u| {
                let img = self.map[u].expect("mapped");
                self.g.adj[v][u] == self.h.adj[w][img]
            });
            if !ok {
                continue;
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            let go_on = self.search(depth + 1, f);
            self.map[v] = None;
            self.used[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn matcher<'a>(g: &'a DualGraph, h: &'a DualGraph) -> Option<Matcher<'a>> {
    if g.len() != h.len() {
        return None;
    }
    let (cg, ch) = refine(g, h);
    let mut hist: HashMap<usize, i64> = HashMap::new();
    for &c in &cg {
        *hist.entry(c).or_default() += 1;
    }
    for &c in &ch {
        *hist.entry(c).or_default() -= 1;
    }
    if hist.values().any(|&v| v != 0) {
        return None;
    }
    // Breadth-first order keeps each new vertex adjacent to mapped ones.
    let mut order = Vec::new();
    let mut seen = vec![false; g.len()];
    for s in 0..g.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let n = g.len();
    Some(Matcher { g, h, cg, ch, order, map: vec![None; n], used: vec![false; n] })
}

/// An isomorphism `g -> h` preserving multiplicities, as `perm[i] = image`.
pub fn find_isomorphism(g: &DualGraph, h: &DualGraph) -> Option<Vec<usize>> {
    let mut m = matcher(g, h)?;
    let mut found = None;
    m.search(0, &mut |map| {
        found = Some(map.iter().map(|x| x.expect("complete")).collect());
        false
    });
    found
}

pub fn are_isomorphic(g: &DualGraph, h: &DualGraph) -> bool {
    find_isomorphism(g, h).is_some()
}

pub fn automorphism_count(g: &DualGraph) -> u64 {
    let Some(mut m) = matcher(g, g) else {
        return 0;
    };
    let mut count = 0u64;
    m.search(0, &mut |_| {
        count += 1;
        true
    });
    count
}
