use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graphs::{DualGraph, Edge, Vertex};
use crate::picard::{discrete_roots, LineBundle};

/// Order of the ghost automorphism group, the product of the stabilizers.
pub fn ghost_group_order(graph: &DualGraph) -> BigUint {
    graph.edges().iter().map(|e| BigUint::from(e.stabilizer)).product()
}

/// The genus-1 one-pointed curve with one node of stabilizer `l`: a rational
/// component glued to itself.
pub fn nodal_fixture(l: u64) -> DualGraph {
    DualGraph::new(vec![Vertex::new(0, vec![1])], vec![Edge::new(0, 0, l)])
        .expect("one vertex with a loop is a valid graph")
}

/// An r-th root on a graph whose components are all rational.
///
/// The multiplicities fix the discrete part; the gluing `beta[e]` in `Z/r`
/// records how the fibres are identified at node `e`, modulo rescaling each
/// component. Gluings are kept zero on the breadth-first spanning tree, so
/// equal classes have equal data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootClass<'g> {
    graph: &'g DualGraph,
    r: u64,
    mult: Vec<u64>,
    gluing: Vec<u64>,
}

impl<'g> RootClass<'g> {
    pub fn new(graph: &'g DualGraph, r: u64, mult: Vec<u64>, gluing: Vec<u64>) -> Result<Self> {
        if graph.vertices().iter().any(|v| v.genus > 0) {
            return Err(Error::NotRational);
        }
        if r == 0 {
            return Err(Error::InvalidArgument("r must be positive".into()));
        }
        if mult.len() != graph.edge_count() || gluing.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.edge_count(),
                found: mult.len().min(gluing.len()),
            });
        }
        if mult.iter().zip(graph.edges()).any(|(m, e)| *m >= e.stabilizer) {
            return Err(Error::InvalidArgument("multiplicity out of range".into()));
        }
        let mut class = RootClass {
            graph,
            r,
            mult,
            gluing: gluing.into_iter().map(|b| b % r).collect(),
        };
        class.normalize();
        Ok(class)
    }

    pub fn graph(&self) -> &'g DualGraph {
        self.graph
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn mult(&self) -> &[u64] {
        &self.mult
    }

    pub fn gluing(&self) -> &[u64] {
        &self.gluing
    }

    pub fn is_pullback(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Adds the coboundary that clears the gluing on the spanning tree.
    fn normalize(&mut self) {
        let graph = self.graph;
        let r = self.r;
        let tree = graph.spanning_tree();
        let n = graph.vertex_count();
        // rescaling vertex v by alpha_v changes beta_e by alpha_head - alpha_tail
        let mut alpha: Vec<Option<u64>> = vec![None; n];
        alpha[0] = Some(0);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for (e, edge) in graph.edges().iter().enumerate() {
                if !tree[e] {
                    continue;
                }
                let a = alpha[v].expect("visited");
                if edge.tail == v && alpha[edge.head].is_none() {
                    alpha[edge.head] = Some((a + 2 * r - self.gluing[e]) % r);
                    queue.push_back(edge.head);
                } else if edge.head == v && alpha[edge.tail].is_none() {
                    alpha[edge.tail] = Some((self.gluing[e] + a) % r);
                    queue.push_back(edge.tail);
                }
            }
        }
        for (e, edge) in graph.edges().iter().enumerate() {
            let head = alpha[edge.head].expect("connected");
            let tail = alpha[edge.tail].expect("connected");
            self.gluing[e] = (self.gluing[e] + head + r - tail) % r;
        }
    }
}

/// Pullback along the ghost generator at edge `e`: the gluing at `e` is
/// twisted by `xi^mult`, which as an element of `Z/r` is `r mult / l_e`.
/// Needs `l_e | r mult_e`, which holds for roots of pullback bundles.
pub fn ghost_act<'g>(class: &RootClass<'g>, e: usize) -> Result<RootClass<'g>> {
    ghost_act_by(class, e, 1)
}

fn ghost_act_by<'g>(class: &RootClass<'g>, e: usize, times: u64) -> Result<RootClass<'g>> {
    let l = class.graph.edges()[e].stabilizer;
    let r = class.r;
    let m = class.mult[e];
    if (r * m) % l != 0 {
        return Err(Error::StabilizerNotDivisible {
            edge: e,
            stabilizer: l,
            r,
            mult: m,
        });
    }
    let mut out = class.clone();
    out.gluing[e] = (out.gluing[e] + times % r * ((r * m / l) % r)) % r;
    out.normalize();
    Ok(out)
}

/// `(mult, beta) -> (-mult, -beta)`, the action of the elliptic involution.
pub fn involution<'g>(class: &RootClass<'g>) -> RootClass<'g> {
    let r = class.r;
    let mut out = class.clone();
    for (e, edge) in class.graph.edges().iter().enumerate() {
        out.mult[e] = (edge.stabilizer - class.mult[e]) % edge.stabilizer;
        out.gluing[e] = (r - class.gluing[e]) % r;
    }
    out.normalize();
    out
}

/// Every root class of `f` on a rational graph: the discrete roots times the
/// `r^b1` gluings off the spanning tree.
pub fn enumerate_root_classes<'g>(
    f: &LineBundle<'g>,
    r: u64,
    max_domain: u64,
) -> Result<Vec<RootClass<'g>>> {
    let graph = f.graph();
    if graph.vertices().iter().any(|v| v.genus > 0) {
        return Err(Error::NotRational);
    }
    let roots = discrete_roots(f, r, max_domain)?;
    let tree = graph.spanning_tree();
    let free: Vec<usize> = (0..graph.edge_count()).filter(|&e| !tree[e]).collect();
    let total = BigUint::from(roots.len()) * BigUint::from(r).pow(free.len() as u32);
    if total > BigUint::from(max_domain) {
        return Err(Error::DomainTooLarge {
            size: total,
            cap: max_domain,
        });
    }
    let mut out = Vec::new();
    for root in &roots {
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut gluing = vec![0; graph.edge_count()];
            for (d, &e) in digits.iter().zip(&free) {
                gluing[e] = *d;
            }
            out.push(RootClass::new(graph, r, root.mult().to_vec(), gluing)?);
            let mut j = 0;
            while j < digits.len() {
                digits[j] += 1;
                if digits[j] < r {
                    break;
                }
                digits[j] = 0;
                j += 1;
            }
            if j == digits.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// Orbits of the ghost group, optionally extended by the involution, on the
/// root classes of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport<'g> {
    pub classes: Vec<RootClass<'g>>,
    /// Orbits as sorted lists of indices into `classes`, ordered by their
    /// smallest element.
    pub orbits: Vec<Vec<usize>>,
    /// Group order and total fixed points behind the Burnside count.
    pub group_order: BigUint,
    pub fixed_points: BigUint,
}

impl OrbitReport<'_> {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Orbits not containing the trivial class (all multiplicities and
    /// gluings zero).
    pub fn nontrivial_orbits(&self) -> usize {
        self.orbits
            .iter()
            .filter(|o| {
                !o.iter().any(|&i| {
                    let c = &self.classes[i];
                    c.is_pullback() && c.gluing.iter().all(|&b| b == 0)
                })
            })
            .count()
    }
}

pub fn orbit_count<'g>(
    f: &LineBundle<'g>,
    r: u64,
    with_involution: bool,
    max_domain: u64,
) -> Result<OrbitReport<'g>> {
    let graph = f.graph();
    let classes = enumerate_root_classes(f, r, max_domain)?;
    let index: HashMap<RootClass<'g>, usize> =
        classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let lookup = |c: &RootClass<'g>| index.get(c).copied().ok_or(Error::InvolutionUndefined);

    let mut moves: Vec<Vec<usize>> = Vec::new();
    if with_involution {
        moves.push(classes.iter().map(|c| lookup(&involution(c))).collect::<Result<_>>()?);
    }
    for e in 0..graph.edge_count() {
        let mut images = Vec::with_capacity(classes.len());
        for c in &classes {
            images.push(index[&ghost_act(c, e)?]);
        }
        moves.push(images);
    }

    let mut orbit_of = vec![usize::MAX; classes.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..classes.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for m in &moves {
                let j = m[i];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }

    let (group_order, fixed_points) = burnside(graph, &classes, with_involution, max_domain)?;
    let (count, rem) = fixed_points.div_rem(&group_order);
    if rem != BigUint::from(0u32) || count != BigUint::from(orbits.len()) {
        return Err(Error::OrbitCountMismatch {
            direct: orbits.len(),
            burnside: Ratio::new(fixed_points, group_order).to_string(),
        });
    }
    Ok(OrbitReport {
        classes,
        orbits,
        group_order,
        fixed_points,
    })
}

/// Sum of fixed points over every element of the group, and its order.
fn burnside(
    graph: &DualGraph,
    classes: &[RootClass<'_>],
    with_involution: bool,
    max_domain: u64,
) -> Result<(BigUint, BigUint)> {
    let ls = graph.stabilizers();
    let mut order = ghost_group_order(graph);
    if with_involution {
        order *= 2u32;
    }
    let work = &order * BigUint::from(classes.len().max(1));
    if work > BigUint::from(max_domain) {
        return Err(Error::DomainTooLarge {
            size: work,
            cap: max_domain,
        });
    }
    let mut fixed = BigUint::from(0u32);
    let flips: &[bool] = if with_involution { &[false, true] } else { &[false] };
    let mut element = vec![0u64; ls.len()];
    loop {
        for &flip in flips {
            for c in classes {
                let mut image = if flip { involution(c) } else { c.clone() };
                for (e, &a) in element.iter().enumerate() {
                    if a != 0 {
                        image = ghost_act_by(&image, e, a)?;
                    }
                }
                if &image == c {
                    fixed += 1u32;
                }
            }
        }
        let mut j = 0;
        while j < element.len() {
            element[j] += 1;
            if element[j] < ls[j] {
                break;
            }
            element[j] = 0;
            j += 1;
        }
        if j == element.len() {
            break;
        }
    }
    Ok((order, fixed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::fixtures::*;
    use crate::picard::DEFAULT_MAX_DOMAIN;

    fn labels(classes: &[RootClass<'_>]) -> Vec<(u64, u64)> {
        classes.iter().map(|c| (c.mult()[0], c.gluing()[0])).collect()
    }

    #[test]
    fn group_orders() {
        assert_eq!(ghost_group_order(&DualGraph::smooth(2, vec![])), BigUint::from(1u32));
        assert_eq!(ghost_group_order(&nodal_fixture(2)), BigUint::from(2u32));
        assert_eq!(ghost_group_order(&theta([2, 3, 1])), BigUint::from(6u32));
    }

    #[test]
    fn pointed_loop_square_roots() {
        let g = nodal_fixture(2);
        let omega = LineBundle::omega_power(&g, 1);
        let classes = enumerate_root_classes(&omega, 2, DEFAULT_MAX_DOMAIN).unwrap();
        assert_eq!(labels(&classes), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let report = orbit_count(&omega, 2, false, DEFAULT_MAX_DOMAIN).unwrap();
        assert_eq!(report.orbits, vec![vec![0], vec![1], vec![2, 3]]);
    }

    #[test]
    fn ghost_examples() {
        let g = nodal_fixture(2);
        let c = RootClass::new(&g, 2, vec![1], vec![0]).unwrap();
        assert_eq!(ghost_act(&c, 0).unwrap().gluing(), &[1]);
        let fixed = RootClass::new(&g, 2, vec![0], vec![1]).unwrap();
        assert_eq!(ghost_act(&fixed, 0).unwrap(), fixed);

        let g = nodal_fixture(3);
        for b in 0..3 {
            let c = RootClass::new(&g, 3, vec![1], vec![b]).unwrap();
            let mut d = c.clone();
            for _ in 0..3 {
                d = ghost_act(&d, 0).unwrap();
            }
            assert_eq!(d, c);
        }
    }

    #[test]
    fn twist_must_be_torsion() {
        let g = nodal_fixture(4);
        let c = RootClass::new(&g, 2, vec![1], vec![0]).unwrap();
        assert!(matches!(ghost_act(&c, 0), Err(Error::StabilizerNotDivisible { .. })));
    }

    #[test]
    fn theta_classes() {
        let g = theta([1, 1, 1]);
        let o = LineBundle::trivial(&g);
        let classes = enumerate_root_classes(&o, 2, DEFAULT_MAX_DOMAIN).unwrap();
        assert_eq!(classes.len(), 4);
        assert_eq!(orbit_count(&o, 2, false, DEFAULT_MAX_DOMAIN).unwrap().orbit_count(), 4);
    }

    #[test]
    fn failing_bridge_has_no_classes() {
        let g = DualGraph::new(
            vec![Vertex::new(0, vec![1, 2, 3]), Vertex::new(0, vec![4, 5, 6])],
            vec![Edge::new(0, 1, 1)],
        )
        .unwrap();
        let f = LineBundle::new(&g, vec![1, 1], vec![0]).unwrap();
        assert!(enumerate_root_classes(&f, 2, DEFAULT_MAX_DOMAIN).unwrap().is_empty());
        assert_eq!(orbit_count(&f, 2, true, DEFAULT_MAX_DOMAIN).unwrap().orbit_count(), 0);
    }

    #[test]
    fn positive_genus_rejected() {
        let g = loop_graph(1, vec![], 2);
        let o = LineBundle::trivial(&g);
        assert_eq!(enumerate_root_classes(&o, 2, DEFAULT_MAX_DOMAIN), Err(Error::NotRational));
    }

    #[test]
    fn nodal_fixture_counts() {
        for r in [5u64, 7, 11, 13] {
            let g = nodal_fixture(r);
            let o = LineBundle::trivial(&g);
            let plain = orbit_count(&o, r, false, DEFAULT_MAX_DOMAIN).unwrap();
            assert_eq!(plain.classes.len() as u64, r * r);
            // r fixed pullbacks plus r - 1 free orbits
            assert_eq!(plain.orbit_count() as u64, 2 * r - 1);
            let full = orbit_count(&o, r, true, DEFAULT_MAX_DOMAIN).unwrap();
            assert_eq!(full.nontrivial_orbits() as u64, r - 1);
        }
    }

    #[test]
    fn ghosts_commute_and_fix_pullbacks() {
        let g = DualGraph::new(
            vec![Vertex::new(0, vec![1]), Vertex::new(0, vec![])],
            vec![Edge::new(0, 1, 2), Edge::new(1, 0, 4), Edge::new(1, 1, 2)],
        )
        .unwrap();
        let o = LineBundle::trivial(&g);
        let classes = enumerate_root_classes(&o, 4, DEFAULT_MAX_DOMAIN).unwrap();
        assert!(!classes.is_empty());
        for c in &classes {
            for a in 0..3 {
                for b in 0..3 {
                    let ab = ghost_act(&ghost_act(c, a).unwrap(), b).unwrap();
                    let ba = ghost_act(&ghost_act(c, b).unwrap(), a).unwrap();
                    assert_eq!(ab, ba);
                }
                let mut d = c.clone();
                for _ in 0..g.edges()[a].stabilizer {
                    d = ghost_act(&d, a).unwrap();
                }
                assert_eq!(&d, c);
                if c.is_pullback() {
                    assert_eq!(&ghost_act(c, a).unwrap(), c);
                }
            }
        }
        let report = orbit_count(&o, 4, false, DEFAULT_MAX_DOMAIN).unwrap();
        let total: usize = report.orbits.iter().map(Vec::len).sum();
        assert_eq!(total, classes.len());
    }

    #[test]
    fn involution_needs_closed_class_set() {
        let g = nodal_fixture(3);
        let f = LineBundle::new(&g, vec![1], vec![1]).unwrap();
        let classes = enumerate_root_classes(&f, 2, DEFAULT_MAX_DOMAIN).unwrap();
        assert!(classes.iter().all(|c| c.mult() == [2]));
        assert_eq!(
            orbit_count(&f, 2, true, DEFAULT_MAX_DOMAIN).map(|r| r.orbit_count()),
            Err(Error::InvolutionUndefined)
        );
    }
}
