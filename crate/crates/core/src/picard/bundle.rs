use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::DualGraph;
use crate::VertexDegree;

/// Wire form of a line bundle: arrays parallel to the graph's vertex and edge
/// lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleData {
    pub int_part: Vec<i64>,
    pub mult: Vec<u64>,
}

/// Discrete class of a line bundle on a twisted curve.
///
/// `mult[e]` is the multiplicity on the head branch of node `e`, in
/// `0..l_e`; the tail branch carries the inverse character
/// `(l_e - mult[e]) mod l_e`. The degree on vertex `v` is `int_part[v]` plus
/// the branch fractions `mult / l` over the branches at `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineBundle<'g> {
    graph: &'g DualGraph,
    int_part: Vec<i64>,
    mult: Vec<u64>,
}

impl<'g> LineBundle<'g> {
    pub fn new(graph: &'g DualGraph, int_part: Vec<i64>, mult: Vec<u64>) -> Result<Self> {
        if int_part.len() != graph.vertex_count() {
            return Err(Error::InvalidBundle(format!(
                "int_part has {} entries for {} vertices",
                int_part.len(),
                graph.vertex_count()
            )));
        }
        if mult.len() != graph.edge_count() {
            return Err(Error::InvalidBundle(format!(
                "mult has {} entries for {} edges",
                mult.len(),
                graph.edge_count()
            )));
        }
        for (e, (m, edge)) in mult.iter().zip(graph.edges()).enumerate() {
            if *m >= edge.stabilizer {
                return Err(Error::InvalidBundle(format!(
                    "mult[{e}] = {m} is not below the stabilizer {}",
                    edge.stabilizer
                )));
            }
        }
        Ok(LineBundle {
            graph,
            int_part,
            mult,
        })
    }

    pub fn from_data(graph: &'g DualGraph, data: &BundleData) -> Result<Self> {
        Self::new(graph, data.int_part.clone(), data.mult.clone())
    }

    pub fn to_data(&self) -> BundleData {
        BundleData {
            int_part: self.int_part.clone(),
            mult: self.mult.clone(),
        }
    }

    /// The structure sheaf.
    pub fn trivial(graph: &'g DualGraph) -> Self {
        LineBundle {
            graph,
            int_part: vec![0; graph.vertex_count()],
            mult: vec![0; graph.edge_count()],
        }
    }

    /// `omega^k(-sum h_i [sigma_i])`, pulled back from the coarse curve: all
    /// multiplicities vanish and the degree on `v` is
    /// `k (2 g_v - 2 + valence(v)) - sum of h over the legs at v`.
    pub fn omega_twisted(graph: &'g DualGraph, k: i64, h: &BTreeMap<u32, i64>) -> Result<Self> {
        for id in h.keys() {
            if graph.marking_vertex(*id).is_none() {
                return Err(Error::InvalidBundle(format!("unknown marking {id}")));
            }
        }
        let int_part = graph
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, vx)| {
                let canonical = 2 * vx.genus as i64 - 2 + graph.valence(v) as i64;
                let twist: i64 = vx.legs.iter().map(|id| h.get(id).copied().unwrap_or(0)).sum();
                k * canonical - twist
            })
            .collect();
        Ok(LineBundle {
            graph,
            int_part,
            mult: vec![0; graph.edge_count()],
        })
    }

    pub fn omega_power(graph: &'g DualGraph, k: i64) -> Self {
        Self::omega_twisted(graph, k, &BTreeMap::new()).expect("no markings twisted")
    }

    /// Bundle with the given vertex degrees and multiplicities; fails unless
    /// every degree differs from its branch fractions by an integer.
    pub fn from_degrees(
        graph: &'g DualGraph,
        degrees: &[VertexDegree],
        mult: Vec<u64>,
    ) -> Result<Self> {
        let mut bundle = Self::new(graph, vec![0; graph.vertex_count()], mult)?;
        if degrees.len() != graph.vertex_count() {
            return Err(Error::InvalidBundle("degree vector has wrong length".into()));
        }
        for (v, d) in degrees.iter().enumerate() {
            let int = d - bundle.branch_fraction(v);
            if !int.is_integer() {
                return Err(Error::InvalidBundle(format!(
                    "degree {d} at vertex {v} is incompatible with the multiplicities"
                )));
            }
            bundle.int_part[v] = int.to_integer();
        }
        Ok(bundle)
    }

    pub fn graph(&self) -> &'g DualGraph {
        self.graph
    }

    pub fn int_part(&self) -> &[i64] {
        &self.int_part
    }

    pub fn mult(&self) -> &[u64] {
        &self.mult
    }

    pub fn head_mult(&self, e: usize) -> u64 {
        self.mult[e]
    }

    pub fn tail_mult(&self, e: usize) -> u64 {
        let l = self.graph.edges()[e].stabilizer;
        (l - self.mult[e]) % l
    }

    /// Sum of `mult / l` over the branches at `v`, loops contributing both.
    pub fn branch_fraction(&self, v: usize) -> VertexDegree {
        let mut sum = Ratio::zero();
        for (e, edge) in self.graph.edges().iter().enumerate() {
            let l = edge.stabilizer as i64;
            if edge.head == v {
                sum += Ratio::new(self.head_mult(e) as i64, l);
            }
            if edge.tail == v {
                sum += Ratio::new(self.tail_mult(e) as i64, l);
            }
        }
        sum
    }

    pub fn vertex_degree(&self, v: usize) -> VertexDegree {
        Ratio::from_integer(self.int_part[v]) + self.branch_fraction(v)
    }

    pub fn vertex_degrees(&self) -> Vec<VertexDegree> {
        (0..self.graph.vertex_count())
            .map(|v| self.vertex_degree(v))
            .collect()
    }

    /// Total degree on a set of vertices.
    pub fn side_degree(&self, vertices: &[usize]) -> VertexDegree {
        vertices.iter().map(|&v| self.vertex_degree(v)).sum()
    }

    pub fn total_degree(&self) -> Result<i64> {
        let total: VertexDegree = self.vertex_degrees().into_iter().sum();
        if !total.is_integer() {
            return Err(Error::NonIntegralTotal);
        }
        Ok(total.to_integer())
    }

    pub fn tensor(&self, other: &LineBundle<'_>) -> Result<LineBundle<'g>> {
        self.check_same_graph(other)?;
        let degrees: Vec<VertexDegree> = self
            .vertex_degrees()
            .iter()
            .zip(other.vertex_degrees())
            .map(|(a, b)| a + b)
            .collect();
        let mult = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| (self.mult[e] + other.mult[e]) % edge.stabilizer)
            .collect();
        Self::from_degrees(self.graph, &degrees, mult)
    }

    /// `L^k` for any integer `k`, negative powers included.
    pub fn power(&self, k: i64) -> LineBundle<'g> {
        let degrees: Vec<VertexDegree> = self
            .vertex_degrees()
            .into_iter()
            .map(|d| d * Ratio::from_integer(k))
            .collect();
        let mult = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let l = edge.stabilizer as i128;
                (k as i128 * self.mult[e] as i128).mod_floor(&l) as u64
            })
            .collect();
        Self::from_degrees(self.graph, &degrees, mult).expect("powers stay consistent")
    }

    pub fn rth_power(&self, r: u64) -> LineBundle<'g> {
        self.power(r as i64)
    }

    pub fn dual(&self) -> LineBundle<'g> {
        self.power(-1)
    }

    /// The same bundle seen on `flipped`, which is this graph with edge `e`
    /// reversed: the stored head multiplicity becomes the old tail one.
    pub fn flip_edge<'h>(&self, e: usize, flipped: &'h DualGraph) -> LineBundle<'h> {
        let mut mult = self.mult.clone();
        mult[e] = self.tail_mult(e);
        LineBundle {
            graph: flipped,
            int_part: self.int_part.clone(),
            mult,
        }
    }

    pub fn same_graph(&self, other: &LineBundle<'_>) -> bool {
        std::ptr::eq(self.graph, other.graph) || self.graph == other.graph
    }

    pub(crate) fn check_same_graph(&self, other: &LineBundle<'_>) -> Result<()> {
        if self.same_graph(other) {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    /// True when every multiplicity vanishes, i.e. the bundle is pulled back
    /// from the coarse curve.
    pub fn is_pullback(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }
}
