//! Decorated dual graphs of twisted nodal curves.
//!
//! Vertices carry a genus and marking identifiers, edges carry the order of
//! the stabilizer at the node. The stored `(tail, head)` pair of an edge fixes
//! its orientation; the head branch is the `+` branch everywhere in the crate.

mod canonical;
mod enumerate;

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::{canonical_form, canonical_form_with_limit, DEFAULT_MAX_VERTICES};
pub use enumerate::{
    enumerate_stable_graphs, enumerate_stable_graphs_with, stable_shapes, EnumerationLimits,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertex {
    pub genus: u64,
    #[serde(default)]
    pub legs: Vec<u32>,
}

impl Vertex {
    pub fn new(genus: u64, legs: Vec<u32>) -> Self {
        Vertex { genus, legs }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    #[serde(default = "default_stabilizer")]
    pub stabilizer: u64,
}

fn default_stabilizer() -> u64 {
    1
}

impl Edge {
    pub fn new(tail: usize, head: usize, stabilizer: u64) -> Self {
        Edge {
            tail,
            head,
            stabilizer,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<Vertex>,
    #[serde(default)]
    edges: Vec<Edge>,
}

/// Connected multigraph with loops, decorated by genera, markings and
/// stabilizer orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for DualGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        DualGraph::new(raw.vertices, raw.edges)
    }
}

impl DualGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let n = vertices.len();
        for (i, e) in edges.iter().enumerate() {
            for (field, v) in [("tail", e.tail), ("head", e.head)] {
                if v >= n {
                    return Err(Error::BadIndex {
                        field: format!("edges[{i}].{field}"),
                        index: v,
                        bound: n,
                    });
                }
            }
            if e.stabilizer == 0 {
                return Err(Error::InvalidStabilizer { edge: i });
            }
        }
        let mut seen = BTreeSet::new();
        for leg in vertices.iter().flat_map(|v| &v.legs) {
            if !seen.insert(*leg) {
                return Err(Error::DuplicateMarking(*leg));
            }
        }
        let g = DualGraph { vertices, edges };
        if !g.is_connected_without(None) {
            return Err(Error::DisconnectedGraph);
        }
        Ok(g)
    }

    /// Single vertex of genus `genus` with no nodes.
    pub fn smooth(genus: u64, legs: Vec<u32>) -> Self {
        DualGraph {
            vertices: vec![Vertex::new(genus, legs)],
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn stabilizers(&self) -> Vec<u64> {
        self.edges.iter().map(|e| e.stabilizer).collect()
    }

    /// First Betti number `1 - |V| + |E|`.
    pub fn betti_number(&self) -> u64 {
        (1 + self.edges.len() - self.vertices.len()) as u64
    }

    pub fn vertex_genus_sum(&self) -> u64 {
        self.vertices.iter().map(|v| v.genus).sum()
    }

    /// Arithmetic genus `b_1 + sum_v g_v`.
    pub fn genus(&self) -> u64 {
        self.betti_number() + self.vertex_genus_sum()
    }

    pub fn leg_count(&self) -> usize {
        self.vertices.iter().map(|v| v.legs.len()).sum()
    }

    /// Number of half-edges at `v`; loops count twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    pub fn is_rational(&self) -> bool {
        self.vertices.iter().all(|v| v.genus == 0)
    }

    pub fn marking_vertex(&self, id: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.legs.contains(&id))
    }

    /// `2 g_v - 2 + valence + legs > 0` at every vertex.
    pub fn is_stable(&self) -> bool {
        (0..self.vertices.len()).all(|v| {
            let vx = &self.vertices[v];
            2 * vx.genus as i64 - 2 + self.valence(v) as i64 + vx.legs.len() as i64 > 0
        })
    }

    /// Stable, and every edge of type `i` has stabilizer `l_i`.
    pub fn is_l_stable(&self, l: &MultiIndex) -> Result<bool> {
        let expected = (self.genus() / 2) as usize + 1;
        if l.len() != expected {
            return Err(Error::MultiIndexLengthMismatch {
                expected,
                found: l.len(),
            });
        }
        if !self.is_stable() {
            return Ok(false);
        }
        Ok((0..self.edges.len()).all(|e| {
            let t = self.classify_node(e).type_index() as usize;
            l.get(t) == Some(self.edges[e].stabilizer)
        }))
    }

    /// Node type of edge `e`, with the head component as the `+` side.
    pub fn classify_node(&self, e: usize) -> NodeType {
        let edge = self.edges[e];
        if edge.is_loop() || self.is_connected_without(Some(e)) {
            return NodeType::Nonseparating;
        }
        let plus = self.component_without(edge.head, Some(e));
        let mut sides = SidePartition::default();
        for v in 0..self.vertices.len() {
            if plus[v] {
                sides.plus_vertices.push(v);
            } else {
                sides.minus_vertices.push(v);
            }
        }
        for (i, f) in self.edges.iter().enumerate() {
            if i == e {
                continue;
            }
            if plus[f.tail] {
                sides.plus_edges.push(i);
            } else {
                sides.minus_edges.push(i);
            }
        }
        let side_genus = |vs: &[usize], es: &[usize]| -> u64 {
            let betti = 1 + es.len() as u64 - vs.len() as u64;
            betti + vs.iter().map(|&v| self.vertices[v].genus).sum::<u64>()
        };
        let gp = side_genus(&sides.plus_vertices, &sides.plus_edges);
        let gm = side_genus(&sides.minus_vertices, &sides.minus_edges);
        NodeType::Separating {
            index: gp.min(gm),
            sides,
        }
    }

    /// Bridges by Tarjan's low-link numbering. Parallel edges are told apart by
    /// edge index, so a doubled edge is never a bridge.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            adj[e.tail].push((e.head, i));
            adj[e.head].push((e.tail, i));
        }
        let mut order = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut counter = 0;
        // iterative DFS: (vertex, parent edge, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        order[0] = 0;
        low[0] = 0;
        counter += 1;
        while let Some(top) = stack.last_mut() {
            let (v, parent_edge) = (top.0, top.1);
            if top.2 < adj[v].len() {
                let (w, id) = adj[v][top.2];
                top.2 += 1;
                if id == parent_edge {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push((w, id, 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] > order[u] {
                        out.push(parent_edge);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Same graph with edge `e` reversed.
    pub fn flip_edge(&self, e: usize) -> DualGraph {
        let mut g = self.clone();
        let edge = &mut g.edges[e];
        std::mem::swap(&mut edge.tail, &mut edge.head);
        g
    }

    /// Graph with edge `e` removed; fails if that disconnects it.
    pub fn delete_edge(&self, e: usize) -> Result<DualGraph> {
        let mut edges = self.edges.clone();
        edges.remove(e);
        DualGraph::new(self.vertices.clone(), edges)
    }

    /// Same shape with the given stabilizers, in edge order.
    pub fn with_stabilizers(&self, stabilizers: &[u64]) -> Result<DualGraph> {
        if stabilizers.len() != self.edges.len() {
            return Err(Error::DimensionMismatch {
                expected: self.edges.len(),
                found: stabilizers.len(),
            });
        }
        let edges = self
            .edges
            .iter()
            .zip(stabilizers)
            .map(|(e, &l)| Edge::new(e.tail, e.head, l))
            .collect();
        DualGraph::new(self.vertices.clone(), edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> DualGraph {
        let mut vertices = vec![Vertex::new(0, Vec::new()); self.vertices.len()];
        for (v, vx) in self.vertices.iter().enumerate() {
            vertices[perm[v]] = vx.clone();
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.tail], perm[e.head], e.stabilizer))
            .collect();
        DualGraph { vertices, edges }
    }

    /// Breadth-first spanning tree from vertex 0, scanning edges in order.
    /// Returns the tree edges as a mask over the edge list.
    pub fn spanning_tree(&self) -> Vec<bool> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut tree = vec![false; self.edges.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (i, e) in self.edges.iter().enumerate() {
                let w = if e.tail == v {
                    e.head
                } else if e.head == v {
                    e.tail
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    tree[i] = true;
                    queue.push_back(w);
                }
            }
        }
        tree
    }

    fn component_without(&self, start: usize, skip: Option<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for (i, e) in self.edges.iter().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                for (a, b) in [(e.tail, e.head), (e.head, e.tail)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        seen
    }

    fn is_connected_without(&self, skip: Option<usize>) -> bool {
        self.component_without(0, skip).iter().all(|&s| s)
    }
}

/// Stabilizer profile `(l_0, ..., l_{floor(g/2)})`, indexed by node type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u64>);

impl MultiIndex {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::InvalidMultiIndex);
        }
        Ok(MultiIndex(entries))
    }

    /// Multi-index of the right length for genus `g` with every entry `l`.
    pub fn constant(g: u64, l: u64) -> Result<Self> {
        Self::new(vec![l; (g / 2) as usize + 1])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        self.0.get(i).copied()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// Every multi-index of length `len` with entries in `1..=max`, in
    /// lexicographic order.
    pub fn all_bounded(len: usize, max: u64) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    (1..=max).map(move |l| {
                        let mut p = prefix.clone();
                        p.push(l);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

/// Vertex and edge split induced by a separating edge; `+` is the side of the
/// head endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SidePartition {
    pub plus_vertices: Vec<usize>,
    pub minus_vertices: Vec<usize>,
    pub plus_edges: Vec<usize>,
    pub minus_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NodeType {
    Nonseparating,
    /// `index` is the smaller of the two side genera. On pointed graphs it can
    /// be 0 when one side is a rational tail.
    Separating { index: u64, sides: SidePartition },
}

impl NodeType {
    /// 0 for nonseparating nodes, the side index otherwise.
    pub fn type_index(&self) -> u64 {
        match self {
            NodeType::Nonseparating => 0,
            NodeType::Separating { index, .. } => *index,
        }
    }

    pub fn is_separating(&self) -> bool {
        matches!(self, NodeType::Separating { .. })
    }

    pub fn sides(&self) -> Option<&SidePartition> {
        match self {
            NodeType::Nonseparating => None,
            NodeType::Separating { sides, .. } => Some(sides),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(DualGraph::smooth(2, vec![]).genus(), 2);
        for g0 in 0..4 {
            assert_eq!(loop_graph(g0, vec![], 1).genus(), g0 + 1);
        }
        assert_eq!(theta([1, 1, 1]).genus(), 2);
        assert_eq!(dumbbell([1, 1], 1).genus(), 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(DualGraph::new(vec![], vec![]), Err(Error::EmptyGraph));
        let two = vec![Vertex::new(0, vec![]), Vertex::new(1, vec![])];
        assert_eq!(
            DualGraph::new(two.clone(), vec![]),
            Err(Error::DisconnectedGraph)
        );
        assert!(matches!(
            DualGraph::new(two.clone(), vec![Edge::new(0, 5, 1)]),
            Err(Error::BadIndex { index: 5, bound: 2, .. })
        ));
        assert_eq!(
            DualGraph::new(two, vec![Edge::new(0, 1, 0)]),
            Err(Error::InvalidStabilizer { edge: 0 })
        );
        let dup = vec![Vertex::new(1, vec![1]), Vertex::new(0, vec![1])];
        assert_eq!(
            DualGraph::new(dup, vec![Edge::new(0, 1, 1)]),
            Err(Error::DuplicateMarking(1))
        );
    }

    #[test]
    fn node_types() {
        assert_eq!(loop_graph(0, vec![], 2).classify_node(0), NodeType::Nonseparating);
        for g in 2..6 {
            let t = two_vertex_bridge(g - 1, 1, 1).classify_node(0);
            assert_eq!(t.type_index(), 1);
            let sides = t.sides().unwrap();
            assert_eq!(sides.plus_vertices, vec![1]);
            assert_eq!(sides.minus_vertices, vec![0]);
        }
        let d = dumbbell([1, 1], 1);
        assert_eq!(d.classify_node(1).type_index(), 1);
        let sides = d.classify_node(1).sides().cloned().unwrap();
        assert_eq!(sides.plus_edges, vec![2]);
        assert_eq!(sides.minus_edges, vec![0]);
        assert!(!d.classify_node(0).is_separating());
        assert!(!theta([1, 1, 1]).classify_node(2).is_separating());
    }

    #[test]
    fn flipping_swaps_sides_only() {
        let d = dumbbell([1, 2], 3);
        let t = d.classify_node(1);
        let f = d.flip_edge(1).classify_node(1);
        assert_eq!(t.type_index(), f.type_index());
        let (a, b) = (t.sides().unwrap(), f.sides().unwrap());
        assert_eq!(a.plus_vertices, b.minus_vertices);
        assert_eq!(a.plus_edges, b.minus_edges);
    }

    #[test]
    fn stability() {
        assert!(loop_graph(0, vec![1], 1).is_stable());
        let bare = DualGraph::new(
            vec![Vertex::new(0, vec![]), Vertex::new(2, vec![])],
            vec![Edge::new(0, 1, 1)],
        )
        .unwrap();
        assert!(!bare.is_stable());
        assert!(!DualGraph::smooth(1, vec![]).is_stable());
    }

    #[test]
    fn l_stability() {
        let l11 = MultiIndex::new(vec![1, 1]).unwrap();
        assert!(theta([1, 1, 1]).is_l_stable(&l11).unwrap());
        assert!(dumbbell([1, 1], 1).is_l_stable(&l11).unwrap());
        let pointed = loop_graph(0, vec![1], 2);
        assert!(pointed.is_l_stable(&MultiIndex::new(vec![2]).unwrap()).unwrap());
        assert!(!pointed.is_l_stable(&MultiIndex::new(vec![3]).unwrap()).unwrap());
        assert_eq!(
            pointed.is_l_stable(&l11),
            Err(Error::MultiIndexLengthMismatch {
                expected: 1,
                found: 2
            })
        );
        // loop stabilizer 2, bridge 1 matches (l_0, l_1) = (2, 1)
        let d = dumbbell([2, 2], 1);
        assert!(d.is_l_stable(&MultiIndex::new(vec![2, 1]).unwrap()).unwrap());
        assert!(!d.is_l_stable(&MultiIndex::new(vec![2, 2]).unwrap()).unwrap());
    }

    #[test]
    fn bridges_match_classification() {
        for g in [
            theta([1, 1, 1]),
            dumbbell([1, 1], 1),
            two_vertex_bridge(1, 1, 1),
            loop_graph(1, vec![], 1),
        ] {
            let by_partition: Vec<usize> = (0..g.edge_count())
                .filter(|&e| g.classify_node(e).is_separating())
                .collect();
            assert_eq!(g.bridges(), by_partition);
        }
    }

    #[test]
    fn json_schema() {
        let g: DualGraph = serde_json::from_str(
            r#"{"vertices":[{"genus":0,"legs":[1]}],"edges":[{"tail":0,"head":0,"stabilizer":2}]}"#,
        )
        .unwrap();
        assert_eq!(g, loop_graph(0, vec![1], 2));
        let err = serde_json::from_str::<DualGraph>(
            r#"{"vertices":[{"genus":0},{"genus":1}],"edges":[{"tail":0,"head":5}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("edges[0].head"), "{err}");
        let back: DualGraph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn spanning_tree_is_bfs() {
        let t = theta([1, 1, 1]).spanning_tree();
        assert_eq!(t, vec![true, false, false]);
        let d = dumbbell([1, 1], 1).spanning_tree();
        assert_eq!(d, vec![false, true, false]);
    }
}
