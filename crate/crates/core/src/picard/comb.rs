use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use super::roots::{check_r, discrete_roots, rootsnum_criterion};
use super::LineBundle;
use crate::error::{Error, Result};
use crate::exactalg::{hom_image_contains, Matrix};
use crate::graphs::{DualGraph, NodeType};
use crate::CyclicHom;

fn check_hypotheses(graph: &DualGraph, r: u64, t: &[u64]) -> Result<Vec<u64>> {
    check_r(r)?;
    if t.len() != graph.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: graph.vertex_count(),
            found: t.len(),
        });
    }
    for (e, edge) in graph.edges().iter().enumerate() {
        if edge.stabilizer % r != 0 && !graph.classify_node(e).is_separating() {
            return Err(Error::HypothesisViolated(format!(
                "nonseparating edge {e} has stabilizer {} not divisible by {r}",
                edge.stabilizer
            )));
        }
    }
    let t: Vec<u64> = t.iter().map(|x| x % r).collect();
    if t.iter().sum::<u64>() % r != 0 {
        return Err(Error::AugmentationNonzero);
    }
    Ok(t)
}

/// Whether `t` lies in the image of [`delta_embed`](super::delta_embed),
/// decided edge by edge: at every separating edge the sum of `t` over the
/// head side must be a multiple of `r / gcd(l_e, r)`.
pub fn comb_membership(graph: &DualGraph, r: u64, t: &[u64]) -> Result<bool> {
    let t = check_hypotheses(graph, r, t)?;
    Ok((0..graph.edge_count()).all(|e| match graph.classify_node(e) {
        NodeType::Nonseparating => true,
        NodeType::Separating { sides, .. } => {
            let eps: u64 = sides.plus_vertices.iter().map(|&v| t[v]).sum::<u64>() % r;
            eps % (r / graph.edges()[e].stabilizer.gcd(&r)) == 0
        }
    }))
}

/// A preimage of `t` under [`delta_embed`](super::delta_embed), built by
/// cutting the graph at bridges; `None` when `t` is not in the image.
pub fn comb_lift(graph: &DualGraph, r: u64, t: &[u64]) -> Result<Option<Vec<u64>>> {
    let t = check_hypotheses(graph, r, t)?;
    let bridges = graph.bridges();
    let original = t.clone();
    let mut target: Vec<u64> = t;
    let mut x = vec![0u64; graph.edge_count()];
    let vertices: Vec<usize> = (0..graph.vertex_count()).collect();
    let edges: Vec<usize> = (0..graph.edge_count()).collect();
    let mut pending = vec![(vertices, edges)];
    while let Some((vs, es)) = pending.pop() {
        let Some(&e) = es.iter().find(|e| bridges.binary_search(e).is_ok()) else {
            if !solve_bridgeless(graph, r, &vs, &es, &target, &mut x)? {
                return Ok(None);
            }
            continue;
        };
        let edge = graph.edges()[e];
        let h = edge.stabilizer.gcd(&r);
        let scale = r / h;
        let plus = side_of(graph, &es, e, edge.head);
        let eps = vs.iter().filter(|&&v| plus[v]).map(|&v| target[v]).sum::<u64>() % r;
        if eps % scale != 0 {
            return Ok(None);
        }
        x[e] = eps / scale;
        let shift = eps;
        target[edge.head] = (target[edge.head] + r - shift) % r;
        target[edge.tail] = (target[edge.tail] + shift) % r;
        let split = |keep: bool| -> (Vec<usize>, Vec<usize>) {
            (
                vs.iter().copied().filter(|&v| plus[v] == keep).collect(),
                es.iter()
                    .copied()
                    .filter(|&f| f != e && plus[graph.edges()[f].tail] == keep)
                    .collect(),
            )
        };
        pending.push(split(true));
        pending.push(split(false));
    }
    debug_assert_eq!(image_of(graph, r, &x), original);
    Ok(Some(x))
}

fn image_of(graph: &DualGraph, r: u64, x: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; graph.vertex_count()];
    for (e, edge) in graph.edges().iter().enumerate() {
        let v = (r / edge.stabilizer.gcd(&r)) * x[e] % r;
        out[edge.head] = (out[edge.head] + v) % r;
        out[edge.tail] = (out[edge.tail] + r - v) % r;
    }
    out
}

/// Vertices reachable from `start` through `edges` without crossing `cut`.
fn side_of(graph: &DualGraph, edges: &[usize], cut: usize, start: usize) -> Vec<bool> {
    let mut seen = vec![false; graph.vertex_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &f in edges {
            if f == cut {
                continue;
            }
            let edge = graph.edges()[f];
            let w = if edge.tail == v {
                edge.head
            } else if edge.head == v {
                edge.tail
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

fn solve_bridgeless(
    graph: &DualGraph,
    r: u64,
    vs: &[usize],
    es: &[usize],
    target: &[u64],
    x: &mut [u64],
) -> Result<bool> {
    if es.is_empty() {
        return Ok(vs.iter().all(|&v| target[v] == 0));
    }
    let row = |v: usize| vs.iter().position(|&w| w == v).expect("vertex in part");
    let edges: Vec<_> = es.iter().map(|&e| graph.edges()[e]).collect();
    let matrix = Matrix::from_fn(vs.len(), es.len(), |i, j| {
        let e = edges[j];
        let scale = BigInt::from(r / e.stabilizer.gcd(&r));
        let mut entry = BigInt::zero();
        if row(e.head) == i {
            entry += &scale;
        }
        if row(e.tail) == i {
            entry -= &scale;
        }
        entry
    });
    let domain = edges
        .iter()
        .map(|e| BigInt::from(e.stabilizer.gcd(&r)))
        .collect();
    let hom = CyclicHom::new(matrix, domain, vec![BigInt::from(r); vs.len()])?;
    let local: Vec<BigInt> = vs.iter().map(|&v| BigInt::from(target[v])).collect();
    match hom_image_contains(&hom, &local)? {
        Some(y) => {
            for (j, &e) in es.iter().enumerate() {
                x[e] = y[j].to_u64().expect("reduced coordinate");
            }
            Ok(true)
        }
        None => Ok(false),
    }
}

/// An r-th root of `f` built from the numerical criterion: a twist `M`
/// absorbing the multiplicities, and a root of the remaining pullback found
/// through [`comb_lift`]. `None` when the criterion fails.
pub fn construct_root_from_criterion<'g>(
    f: &LineBundle<'g>,
    r: u64,
) -> Result<Option<LineBundle<'g>>> {
    let graph = f.graph();
    if !rootsnum_criterion(f, r)?.holds {
        return Ok(None);
    }
    let mut twist = Vec::with_capacity(graph.edge_count());
    for (e, edge) in graph.edges().iter().enumerate() {
        let l = edge.stabilizer as i64;
        let k = match graph.classify_node(e) {
            NodeType::Nonseparating => f.head_mult(e) as i64 / r as i64,
            NodeType::Separating { sides, .. } => {
                (f.side_degree(&sides.plus_vertices) * Ratio::from_integer(l)).to_integer()
                    / r as i64
            }
        };
        twist.push(k.mod_floor(&l) as u64);
    }
    let m = LineBundle::new(graph, vec![0; graph.vertex_count()], twist)?;
    let a = f.tensor(&m.power(-(r as i64)))?;
    debug_assert!(a.is_pullback());
    let t: Vec<u64> = a
        .int_part()
        .iter()
        .map(|d| d.mod_floor(&(r as i64)) as u64)
        .collect();
    let Some(y) = comb_lift(graph, r, &t)? else {
        return Ok(None);
    };
    let mult = graph
        .edges()
        .iter()
        .zip(&y)
        .map(|(edge, &ye)| (edge.stabilizer / edge.stabilizer.gcd(&r)) * ye)
        .collect();
    let degrees: Vec<_> = a
        .int_part()
        .iter()
        .map(|&d| Ratio::new(d, r as i64))
        .collect();
    let n = LineBundle::from_degrees(graph, &degrees, mult)?;
    let root = n.tensor(&m)?;
    debug_assert_eq!(&root.rth_power(r), f);
    Ok(Some(root))
}

/// Some r-th root of `f`, or `None` when there is none. Uses the constructive
/// route when the criterion holds and falls back to enumeration otherwise.
pub fn construct_root<'g>(
    f: &LineBundle<'g>,
    r: u64,
    max_domain: u64,
) -> Result<Option<LineBundle<'g>>> {
    check_r(r)?;
    if f.total_degree()?.rem_euclid(r as i64) != 0 {
        return Ok(None);
    }
    if let Some(root) = construct_root_from_criterion(f, r)? {
        return Ok(Some(root));
    }
    Ok(discrete_roots(f, r, max_domain)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::graphs::fixtures::*;
    use crate::graphs::{Edge, Vertex};
    use crate::picard::{count_roots, delta_embed, DEFAULT_MAX_DOMAIN};

    fn in_image(graph: &DualGraph, r: u64, t: &[u64]) -> bool {
        let d = delta_embed(graph, r).unwrap();
        let t: Vec<BigInt> = t.iter().map(|&v| BigInt::from(v)).collect();
        d.preimage_by_enumeration(&t).unwrap().is_some()
    }

    fn check_lift(graph: &DualGraph, r: u64, t: &[u64], x: &[u64]) {
        let d = delta_embed(graph, r).unwrap();
        let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let image = d.apply(&x).unwrap();
        let t: Vec<BigInt> = t.iter().map(|&v| BigInt::from(v % r)).collect();
        assert_eq!(image, t);
    }

    #[test]
    fn lift_examples() {
        let g = two_vertex_bridge(1, 1, 2);
        assert_eq!(comb_lift(&g, 2, &[0, 0]).unwrap(), Some(vec![0]));
        assert!(comb_membership(&g, 2, &[1, 1]).unwrap());
        assert_eq!(comb_lift(&g, 2, &[1, 1]).unwrap(), Some(vec![1]));

        let g = two_vertex_bridge(1, 1, 1);
        assert!(!comb_membership(&g, 2, &[1, 1]).unwrap());
        assert_eq!(comb_lift(&g, 2, &[1, 1]).unwrap(), None);
    }

    #[test]
    fn lift_errors() {
        let g = theta([2, 2, 3]);
        assert!(matches!(
            comb_membership(&g, 2, &[0, 0]),
            Err(Error::HypothesisViolated(_))
        ));
        let g = two_vertex_bridge(1, 1, 2);
        assert_eq!(comb_lift(&g, 2, &[1, 0]), Err(Error::AugmentationNonzero));
    }

    #[test]
    fn construct_examples() {
        let g = two_vertex_bridge(1, 1, 1);
        let w = LineBundle::omega_power(&g, 1);
        assert_eq!(construct_root(&w, 2, DEFAULT_MAX_DOMAIN).unwrap(), None);

        let g = loop_graph(0, vec![1], 2);
        let o = LineBundle::trivial(&g);
        let root = construct_root(&o, 2, DEFAULT_MAX_DOMAIN).unwrap().unwrap();
        let classes = [(0u64, 0i64), (1, -1)];
        assert!(classes.contains(&(root.mult()[0], root.int_part()[0])));
        assert_eq!(root.rth_power(2), o);
    }

    fn chain_graph(ls: &[u64], extra_loop: u64) -> DualGraph {
        // path with every other step doubled, closed by a loop at the far end
        let n = ls.len() + 1;
        let mut vertices: Vec<Vertex> = (0..n).map(|i| Vertex::new((i % 2) as u64, vec![])).collect();
        vertices[0].legs.push(1);
        let mut edges = Vec::new();
        for (i, &l) in ls.iter().enumerate() {
            if i % 2 == 1 {
                edges.push(Edge::new(i, i + 1, extra_loop));
                edges.push(Edge::new(i + 1, i, extra_loop));
            } else {
                edges.push(Edge::new(i, i + 1, l));
            }
        }
        edges.push(Edge::new(n - 1, n - 1, extra_loop));
        DualGraph::new(vertices, edges).unwrap()
    }

    proptest! {
        #[test]
        fn membership_matches_image(
            ls in proptest::collection::vec(1u64..7, 1..4),
            r in prop::sample::select(vec![2u64, 3, 4, 6]),
            raw in proptest::collection::vec(0u64..12, 4),
        ) {
            let g = chain_graph(&ls, r);
            let mut t: Vec<u64> = raw.iter().take(g.vertex_count()).map(|v| v % r).collect();
            let s: u64 = t.iter().sum();
            t[0] = (t[0] + r - s % r) % r;
            let member = comb_membership(&g, r, &t).unwrap();
            prop_assert_eq!(member, in_image(&g, r, &t));
            match comb_lift(&g, r, &t).unwrap() {
                Some(x) => { prop_assert!(member); check_lift(&g, r, &t, &x); }
                None => prop_assert!(!member),
            }
        }

        #[test]
        fn constructs_roots_of_powers(
            ls in proptest::collection::vec(1u64..7, 1..4),
            r in 1u64..5,
            phi in proptest::collection::vec(-4i64..5, 4),
            mu in proptest::collection::vec(0u64..100, 8),
        ) {
            let g = chain_graph(&ls, 2);
            let mult = g.stabilizers().iter().zip(&mu).map(|(l, m)| m % l).collect();
            let l = LineBundle::new(&g, phi[..g.vertex_count()].to_vec(), mult).unwrap();
            let f = l.rth_power(r);
            let root = construct_root(&f, r, DEFAULT_MAX_DOMAIN).unwrap().unwrap();
            prop_assert_eq!(root.rth_power(r), f.clone());
            if let Some(root) = construct_root_from_criterion(&f, r).unwrap() {
                prop_assert_eq!(root.rth_power(r), f.clone());
            }
            let exists = count_roots(&f, r, DEFAULT_MAX_DOMAIN).unwrap() > 0u32.into();
            prop_assert!(exists);
        }
    }
}
