//! Brute-force cross-check of stable graph enumeration: every labeled
//! decorated multigraph is generated without pruning and classes are merged
//! by a direct pairwise isomorphism test.

use twisted_roots::graphs::{canonical_form, enumerate_stable_graphs};
use twisted_roots::{DualGraph, Edge, Vertex};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn isomorphic(a: &DualGraph, b: &DualGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let key = |g: &DualGraph, v: usize| (g.vertices()[v].genus, g.vertices()[v].legs.len());
    let edges = |g: &DualGraph, perm: &[usize]| {
        let mut es: Vec<(usize, usize, u64)> = g
            .edges()
            .iter()
            .map(|e| {
                let (x, y) = (perm[e.tail], perm[e.head]);
                (x.min(y), x.max(y), e.stabilizer)
            })
            .collect();
        es.sort_unstable();
        es
    };
    let id: Vec<usize> = (0..b.vertex_count()).collect();
    let target = edges(b, &id);
    permutations(a.vertex_count()).into_iter().any(|perm| {
        (0..a.vertex_count()).all(|v| key(a, v) == key(b, perm[v])) && edges(a, &perm) == target
    })
}

fn all_vectors(len: usize, values: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn multisets(items: usize, size: usize, start: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in start..items {
        for mut rest in multisets(items, size - 1, i) {
            rest.insert(0, i);
            out.push(rest);
        }
    }
    out
}

fn oracle(g: u64, n: usize, choices: &[u64]) -> Vec<DualGraph> {
    let mut classes: Vec<DualGraph> = Vec::new();
    let max_v = 2 * g as usize + n - 2;
    let genus_values: Vec<u64> = (0..=g).collect();
    for nv in 1..=max_v {
        let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|i| (i..nv).map(move |j| (i, j))).collect();
        for genera in all_vectors(nv, &genus_values) {
            let s: u64 = genera.iter().sum();
            if s > g {
                continue;
            }
            let ne = (g - s) as usize + nv - 1;
            // each leg goes to any vertex; only per-vertex counts matter
            for leg_home in all_vectors(n, &(0..nv as u64).collect::<Vec<_>>()) {
                let mut legs = vec![Vec::new(); nv];
                for (i, &v) in leg_home.iter().enumerate() {
                    legs[v as usize].push(i as u32 + 1);
                }
                let vertices: Vec<Vertex> =
                    genera.iter().zip(&legs).map(|(&gv, l)| Vertex::new(gv, l.clone())).collect();
                for chosen in multisets(pairs.len(), ne, 0) {
                    for stabs in all_vectors(ne, choices) {
                        let edges = chosen
                            .iter()
                            .zip(&stabs)
                            .map(|(&p, &l)| Edge::new(pairs[p].0, pairs[p].1, l))
                            .collect();
                        let Ok(graph) = DualGraph::new(vertices.clone(), edges) else {
                            continue;
                        };
                        if !graph.is_stable() || graph.genus() != g {
                            continue;
                        }
                        if !classes.iter().any(|c| isomorphic(c, &graph)) {
                            classes.push(graph);
                        }
                    }
                }
            }
        }
    }
    classes
}

fn check(g: u64, n: usize, choices: &[u64]) -> usize {
    let expected = oracle(g, n, choices);
    let got = enumerate_stable_graphs(g, n, choices).unwrap();
    assert_eq!(got.len(), expected.len(), "g={g} n={n} choices={choices:?}");
    for c in &expected {
        let label = canonical_form(c).unwrap();
        assert!(got.iter().any(|x| canonical_form(x).unwrap() == label));
    }
    got.len()
}

#[test]
fn genus_two_unpointed() {
    assert_eq!(check(2, 0, &[1]), 7);
}

#[test]
fn genus_one_pointed() {
    assert_eq!(check(1, 1, &[1]), 2);
    check(1, 2, &[1]);
}

#[test]
fn genus_two_with_two_stabilizers() {
    // smooth 1, irreducible one-node 2, g1-g1 2, g1 to rational loop 4,
    // rational two-loop 3, theta 4, dumbbell 6
    assert_eq!(check(2, 0, &[1, 2]), 22);
}

#[test]
fn genus_two_pointed() {
    check(2, 1, &[1]);
}

#[test]
fn genus_three_shapes() {
    assert_eq!(check(3, 0, &[1]), 42);
}

#[test]
fn genus_four_shapes() {
    // the number of boundary strata types of the moduli of genus-4 curves
    let graphs = enumerate_stable_graphs(4, 0, &[1]).unwrap();
    assert_eq!(graphs.len(), 379);
}
