use std::collections::HashSet;

use super::{canonical_form_with_limit, DualGraph, Edge, Vertex};
use crate::error::{Error, Result};

/// Hard caps for exhaustive graph generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_genus: u64,
    pub max_vertices: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_genus: 4,
            max_vertices: super::DEFAULT_MAX_VERTICES,
        }
    }
}

/// All connected stable graphs of genus `g` with `n` legs whose stabilizers
/// are drawn from `choices`, one per isomorphism class, in a fixed order.
/// Legs are numbered `1..=n` in vertex order.
pub fn enumerate_stable_graphs(g: u64, n: usize, choices: &[u64]) -> Result<Vec<DualGraph>> {
    enumerate_stable_graphs_with(g, n, choices, &EnumerationLimits::default())
}

pub fn enumerate_stable_graphs_with(
    g: u64,
    n: usize,
    choices: &[u64],
    limits: &EnumerationLimits,
) -> Result<Vec<DualGraph>> {
    if choices.is_empty() || choices.contains(&0) {
        return Err(Error::InvalidArgument(
            "stabilizer choices must be a non-empty list of positive integers".into(),
        ));
    }
    let mut choices = choices.to_vec();
    choices.sort_unstable();
    choices.dedup();

    let shapes = stable_shapes(g, n, limits)?;
    let mut out = Vec::new();
    for shape in shapes {
        let e = shape.edge_count();
        let mut seen = HashSet::new();
        let mut idx = vec![0usize; e];
        loop {
            let stabilizers: Vec<u64> = idx.iter().map(|&i| choices[i]).collect();
            let decorated = shape.with_stabilizers(&stabilizers)?;
            if seen.insert(canonical_form_with_limit(&decorated, limits.max_vertices)?) {
                out.push(decorated);
            }
            let mut j = 0;
            while j < e {
                idx[j] += 1;
                if idx[j] < choices.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == e {
                break;
            }
        }
    }
    Ok(out)
}

/// Undecorated stable graphs (all stabilizers 1), one per isomorphism class.
pub fn stable_shapes(g: u64, n: usize, limits: &EnumerationLimits) -> Result<Vec<DualGraph>> {
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::UnsupportedGenus { genus: g, legs: n });
    }
    if g > limits.max_genus {
        return Err(Error::SizeLimitExceeded {
            what: "genus",
            value: g,
            limit: limits.max_genus,
        });
    }
    let max_v = (2 * g as usize + n).saturating_sub(2);
    if max_v > limits.max_vertices {
        return Err(Error::SizeLimitExceeded {
            what: "vertex count",
            value: max_v as u64,
            limit: limits.max_vertices as u64,
        });
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for nv in 1..=max_v {
        for profile in vertex_profiles(nv, g, n) {
            let genus_sum: u64 = profile.iter().map(|p| p.0).sum();
            let ne = (g - genus_sum) as usize + nv - 1;
            let mut next_leg = 1u32;
            let vertices: Vec<Vertex> = profile
                .iter()
                .map(|&(gv, legs)| {
                    let ids = (next_leg..next_leg + legs as u32).collect();
                    next_leg += legs as u32;
                    Vertex::new(gv, ids)
                })
                .collect();
            let need: Vec<i64> = profile
                .iter()
                .map(|&(gv, legs)| {
                    let stable = 3 - 2 * gv as i64 - legs as i64;
                    stable.max(if nv > 1 { 1 } else { 0 })
                })
                .collect();
            let pairs: Vec<(usize, usize)> = (0..nv)
                .flat_map(|i| (i..nv).map(move |j| (i, j)))
                .collect();
            let mut builder = EdgeSearch {
                pairs: &pairs,
                need: &need,
                valence: vec![0; nv],
                chosen: Vec::with_capacity(ne),
                found: Vec::new(),
            };
            builder.extend(0, ne);
            for edges in builder.found {
                let edges = edges
                    .into_iter()
                    .map(|p| Edge::new(pairs[p].0, pairs[p].1, 1))
                    .collect();
                let Ok(graph) = DualGraph::new(vertices.clone(), edges) else {
                    continue;
                };
                if !graph.is_stable() {
                    continue;
                }
                if seen.insert(canonical_form_with_limit(&graph, limits.max_vertices)?) {
                    out.push(graph);
                }
            }
        }
    }
    Ok(out)
}

/// Lexicographically nonincreasing `(genus, legs)` sequences of length `nv`
/// with genus sum at most `g` and leg sum exactly `n`.
fn vertex_profiles(nv: usize, g: u64, n: usize) -> Vec<Vec<(u64, usize)>> {
    fn rec(
        nv: usize,
        g_left: u64,
        n_left: usize,
        bound: (u64, usize),
        prefix: &mut Vec<(u64, usize)>,
        out: &mut Vec<Vec<(u64, usize)>>,
    ) {
        if prefix.len() == nv {
            if n_left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for gv in (0..=g_left.min(bound.0)).rev() {
            let max_legs = if gv == bound.0 { bound.1.min(n_left) } else { n_left };
            for legs in (0..=max_legs).rev() {
                prefix.push((gv, legs));
                rec(nv, g_left - gv, n_left - legs, (gv, legs), prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(nv, g, n, (g, n), &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing sequences of vertex pairs, pruned by the valence still
/// missing for stability.
struct EdgeSearch<'a> {
    pairs: &'a [(usize, usize)],
    need: &'a [i64],
    valence: Vec<i64>,
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl EdgeSearch<'_> {
    fn extend(&mut self, start: usize, remaining: usize) {
        let deficit: i64 = self
            .need
            .iter()
            .zip(&self.valence)
            .map(|(n, v)| (n - v).max(0))
            .sum();
        if deficit > 2 * remaining as i64 {
            return;
        }
        if remaining == 0 {
            self.found.push(self.chosen.clone());
            return;
        }
        for p in start..self.pairs.len() {
            let (a, b) = self.pairs[p];
            self.valence[a] += 1;
            self.valence[b] += 1;
            self.chosen.push(p);
            self.extend(p, remaining - 1);
            self.chosen.pop();
            self.valence[a] -= 1;
            self.valence[b] -= 1;
        }
    }
}
