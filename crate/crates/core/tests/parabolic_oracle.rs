//! Cross-checks parabolic enumeration against a direct semidefiniteness test
//! on every connected vertex subset of size at most ten.

mod common;

use std::collections::BTreeSet;

use common::{connected_subsets, psd_corank};
use enriques::dynkin::{
    build_e10_graph, build_petersen, build_type_vii_graph, connected_parabolics, cycle_graph, line_graph,
    recognize_connected_parabolic, DualGraph,
};
use enriques::suite::hexagon_with_pendant;

const MAX_SIZE: usize = 10;

fn check(name: &str, g: &DualGraph) -> usize {
    let subsets = connected_subsets(g, MAX_SIZE);
    let unique: BTreeSet<&Vec<usize>> = subsets.iter().collect();
    assert_eq!(unique.len(), subsets.len(), "{name}: duplicate subsets");
    let oracle: BTreeSet<Vec<usize>> =
        subsets.iter().filter(|s| psd_corank(&g.induced_gram(s)) == Some(1)).cloned().collect();
    for s in &subsets {
        assert_eq!(recognize_connected_parabolic(g, s).is_some(), oracle.contains(s), "{name}: {s:?}");
    }
    let enumerated: BTreeSet<Vec<usize>> = connected_parabolics(g)
        .unwrap()
        .into_iter()
        .map(|c| {
            let mut v = c.vertices;
            v.sort_unstable();
            v
        })
        .filter(|v| v.len() <= MAX_SIZE)
        .collect();
    assert_eq!(enumerated, oracle, "{name}");
    subsets.len()
}

#[test]
fn enumeration_matches_semidefinite_oracle() {
    let graphs = [
        ("typeVII", build_type_vii_graph()),
        ("E10", build_e10_graph()),
        ("petersen", build_petersen()),
        ("petersen-line", line_graph(&build_petersen())),
        ("hexagon+pendant", hexagon_with_pendant()),
        ("cycle9", cycle_graph(9)),
    ];
    for (name, g) in graphs {
        let n = check(name, &g);
        println!("{name}: {n} connected subsets checked");
    }
}

#[test]
fn subset_enumeration_is_complete_on_small_graphs() {
    // Compare against filtering all 2^n subsets.
    for g in [hexagon_with_pendant(), cycle_graph(6), build_e10_graph()] {
        let mut brute = BTreeSet::new();
        for mask in 1u32..(1 << g.len()) {
            let s: Vec<usize> = (0..g.len()).filter(|i| mask & (1 << i) != 0).collect();
            if g.is_connected_subset(&s) {
                brute.insert(s);
            }
        }
        let esu: BTreeSet<Vec<usize>> = connected_subsets(&g, g.len()).into_iter().collect();
        assert_eq!(esu, brute);
    }
}
