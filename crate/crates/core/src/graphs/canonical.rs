use std::fmt::Write;

use super::DualGraph;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_VERTICES: usize = 8;

/// Isomorphism-invariant label of a decorated graph.
///
/// Two graphs get the same label iff some vertex bijection preserves genera,
/// leg counts and the multiset of (unordered) edges with their stabilizers.
/// Marking identifiers and edge orientations are ignored.
pub fn canonical_form(g: &DualGraph) -> Result<String> {
    canonical_form_with_limit(g, DEFAULT_MAX_VERTICES)
}

pub fn canonical_form_with_limit(g: &DualGraph, max_vertices: usize) -> Result<String> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(Error::SizeLimitExceeded {
            what: "vertex count",
            value: n as u64,
            limit: max_vertices as u64,
        });
    }
    // Only bijections preserving the invariant key can be isomorphisms, so the
    // minimum is taken over key-sorted labelings.
    let keys: Vec<(u64, usize, usize)> = (0..n)
        .map(|v| {
            let vx = &g.vertices()[v];
            (vx.genus, vx.legs.len(), g.valence(v))
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| keys[v]);
    let slot_keys: Vec<_> = order.iter().map(|&v| keys[v]).collect();

    let mut search = Search {
        g,
        keys: &keys,
        slot_keys: &slot_keys,
        perm: vec![usize::MAX; n],
        used: vec![false; n],
        best: None,
    };
    search.assign(0);
    let best = search.best.unwrap_or_default();

    let mut out = String::new();
    for (i, k) in slot_keys.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "{}.{}", k.0, k.1).unwrap();
    }
    out.push('|');
    for (i, (a, b, l)) in best.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "{a}-{b}:{l}").unwrap();
    }
    Ok(out)
}

struct Search<'a> {
    g: &'a DualGraph,
    keys: &'a [(u64, usize, usize)],
    slot_keys: &'a [(u64, usize, usize)],
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<Vec<(usize, usize, u64)>>,
}

impl Search<'_> {
    fn assign(&mut self, slot: usize) {
        let n = self.perm.len();
        if slot == n {
            let mut edges: Vec<(usize, usize, u64)> = self
                .g
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = (self.perm[e.tail], self.perm[e.head]);
                    (a.min(b), a.max(b), e.stabilizer)
                })
                .collect();
            edges.sort_unstable();
            if self.best.as_ref().is_none_or(|b| edges < *b) {
                self.best = Some(edges);
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.keys[v] != self.slot_keys[slot] {
                continue;
            }
            self.used[v] = true;
            self.perm[v] = slot;
            self.assign(slot + 1);
            self.used[v] = false;
        }
    }
}
