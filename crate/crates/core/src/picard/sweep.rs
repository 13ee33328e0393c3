//! Exhaustive consistency sweeps over families of decorated graphs.
//!
//! Each sweep runs in parallel over graphs on the current rayon pool and
//! merges per-graph results in input order, so the outcome does not depend on
//! scheduling.

use num_bigint::BigUint;
use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::roots::pow_u64;
use super::{count_roots, delta_embed, rootsnum_criterion, torsion_count, BundleData, LineBundle};
use crate::error::Result;
use crate::exactalg::{hom_image_contains, hom_kernel_size};
use crate::CyclicHom;
use crate::graphs::{enumerate_stable_graphs_with, DualGraph, EnumerationLimits, NodeType};

/// Graph family and bundle choices for [`verify_rootsnum`].
#[derive(Clone, Debug)]
pub struct RootsnumSweep {
    pub rs: Vec<u64>,
    /// Powers `k` of the canonical bundle tested on every graph.
    pub omega_powers: Vec<i64>,
    pub random_bundles: usize,
    pub seed: u64,
    pub max_domain: u64,
}

impl Default for RootsnumSweep {
    fn default() -> Self {
        RootsnumSweep {
            rs: vec![2, 3, 4, 6],
            omega_powers: vec![1, 2, 0],
            random_bundles: 50,
            seed: 0,
            max_domain: super::DEFAULT_MAX_DOMAIN,
        }
    }
}

/// A case where the criterion and the count disagree, or the count is
/// neither zero nor the torsion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootsnumDiscrepancy {
    pub graph: DualGraph,
    pub r: u64,
    pub bundle: BundleData,
    pub label: String,
    pub criterion: Option<bool>,
    pub count: BigUint,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootsnumSummary {
    pub graphs: usize,
    pub cases: u64,
    /// Cases whose total degree is not a multiple of `r`; only the count is
    /// checked there (it must vanish).
    pub off_hypothesis: u64,
    pub criterion_true: u64,
    pub discrepancies: Vec<RootsnumDiscrepancy>,
}

/// Stable graphs of every genus in `genera`, stabilizers drawn from `choices`.
pub fn sweep_family(
    genera: impl IntoIterator<Item = u64>,
    choices: &[u64],
    limits: &EnumerationLimits,
) -> Result<Vec<DualGraph>> {
    let mut out = Vec::new();
    for g in genera {
        out.extend(enumerate_stable_graphs_with(g, 0, choices, limits)?);
    }
    Ok(out)
}

/// Random bundle on `graph` whose total degree is a multiple of `r`. One
/// third are r-th powers, one third have multiplicities in `r Z / l`, the
/// rest are uniform.
pub fn random_bundle<'g>(graph: &'g DualGraph, r: u64, rng: &mut impl Rng) -> LineBundle<'g> {
    let style = rng.gen_range(0..3);
    let mut phi: Vec<i64> = (0..graph.vertex_count()).map(|_| rng.gen_range(-3..=3)).collect();
    let mult: Vec<u64> = graph
        .edges()
        .iter()
        .map(|e| {
            let l = e.stabilizer;
            match style {
                1 => (r * rng.gen_range(0..l)) % l,
                _ => rng.gen_range(0..l),
            }
        })
        .collect();
    let base = LineBundle::new(graph, phi.clone(), mult).expect("valid random data");
    if style == 0 {
        return base.rth_power(r);
    }
    let total = base.total_degree().expect("integral total");
    phi[0] -= total.rem_euclid(r as i64);
    LineBundle::new(graph, phi, base.mult().to_vec()).expect("valid random data")
}

fn graph_rng(seed: u64, index: usize, r: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((index as u64) << 16) | r);
    rng
}

/// Checks the numerical root criterion against brute-force counting on
/// every graph of `graphs`.
pub fn verify_rootsnum(graphs: &[DualGraph], config: &RootsnumSweep) -> Result<RootsnumSummary> {
    let parts = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| rootsnum_on_graph(i, g, config))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = RootsnumSummary {
        graphs: graphs.len(),
        ..Default::default()
    };
    for part in parts {
        summary.cases += part.cases;
        summary.off_hypothesis += part.off_hypothesis;
        summary.criterion_true += part.criterion_true;
        summary.discrepancies.extend(part.discrepancies);
    }
    Ok(summary)
}

fn rootsnum_on_graph(index: usize, graph: &DualGraph, config: &RootsnumSweep) -> Result<RootsnumSummary> {
    let mut out = RootsnumSummary::default();
    for &r in &config.rs {
        let torsion = torsion_count(graph, r)?;
        let full = pow_u64(r, 2 * graph.genus());
        let mut rng = graph_rng(config.seed, index, r);
        let mut bundles: Vec<(String, LineBundle<'_>)> = config
            .omega_powers
            .iter()
            .map(|&k| (format!("omega^{k}"), LineBundle::omega_power(graph, k)))
            .collect();
        for j in 0..config.random_bundles {
            bundles.push((format!("random#{j}"), random_bundle(graph, r, &mut rng)));
        }
        for (label, f) in bundles {
            out.cases += 1;
            let count = count_roots(&f, r, config.max_domain)?;
            let torsor_ok = count.is_zero() || count == torsion;
            let criterion = if f.total_degree()?.rem_euclid(r as i64) == 0 {
                Some(rootsnum_criterion(&f, r)?.holds)
            } else {
                out.off_hypothesis += 1;
                None
            };
            let agrees = match criterion {
                Some(c) => {
                    if c {
                        out.criterion_true += 1;
                    }
                    c == (count == full)
                }
                None => count.is_zero(),
            };
            if !(agrees && torsor_ok) {
                out.discrepancies.push(RootsnumDiscrepancy {
                    graph: graph.clone(),
                    r,
                    bundle: f.to_data(),
                    label,
                    criterion,
                    count,
                });
            }
        }
    }
    Ok(out)
}

/// Which kernel identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelLaw {
    /// Kernel of order `r^b1` exactly when `r` divides every nonseparating
    /// stabilizer.
    FullKernel,
    /// Deleting a nonseparating edge divides the kernel order by
    /// `gcd(r, l_e)`. Only guaranteed when `r` divides every nonseparating
    /// stabilizer.
    Deletion { edge: usize },
    /// Deleting a nonseparating edge divides the kernel order by the number
    /// of multiples of its column that the smaller graph can reach.
    DeletionExact { edge: usize },
    /// With `r` dividing every stabilizer: image of order `r^(|V|-1)`.
    ImageOrder,
    /// With `r` dividing every stabilizer: torsion `r^(2 sum g_v + 2 b1)`.
    TorsionOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLawFailure {
    pub graph: DualGraph,
    pub r: u64,
    pub law: KernelLaw,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KernelLawSummary {
    pub graphs: usize,
    pub cases: u64,
    pub deletions: u64,
    pub failures: Vec<KernelLawFailure>,
    /// Deletions outside the divisible regime where the kernel does not
    /// shrink by exactly `gcd(r, l_e)`. These are not failures.
    pub deletion_counterexamples: Vec<KernelLawFailure>,
}

/// Checks the kernel-order identities for `delta_embed` on every graph and
/// every `r` in `rs`.
pub fn verify_kernel_laws(graphs: &[DualGraph], rs: &[u64]) -> Result<KernelLawSummary> {
    let parts = graphs
        .par_iter()
        .map(|g| kernel_laws_on_graph(g, rs))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = KernelLawSummary {
        graphs: graphs.len(),
        ..Default::default()
    };
    for part in parts {
        summary.cases += part.cases;
        summary.deletions += part.deletions;
        summary.failures.extend(part.failures);
        summary
            .deletion_counterexamples
            .extend(part.deletion_counterexamples);
    }
    Ok(summary)
}

fn kernel_laws_on_graph(graph: &DualGraph, rs: &[u64]) -> Result<KernelLawSummary> {
    let mut out = KernelLawSummary::default();
    for &r in rs {
        out.cases += 1;
        let record = |law| KernelLawFailure {
            graph: graph.clone(),
            r,
            law,
        };
        let delta = delta_embed(graph, r)?;
        let kernel = hom_kernel_size(&delta);
        let b1 = graph.betti_number();
        let nonseparating: Vec<usize> = (0..graph.edge_count())
            .filter(|&e| graph.classify_node(e) == NodeType::Nonseparating)
            .collect();
        let divisible = nonseparating
            .iter()
            .all(|&e| graph.edges()[e].stabilizer % r == 0);
        if (kernel == pow_u64(r, b1)) != divisible {
            out.failures.push(record(KernelLaw::FullKernel));
        }
        for &e in &nonseparating {
            out.deletions += 1;
            let smaller = graph.delete_edge(e)?;
            let sub_delta = delta_embed(&smaller, r)?;
            let sub = hom_kernel_size(&sub_delta);
            if kernel != &sub * graph.edges()[e].stabilizer.gcd(&r) {
                let failure = record(KernelLaw::Deletion { edge: e });
                if divisible {
                    out.failures.push(failure);
                } else {
                    out.deletion_counterexamples.push(failure);
                }
            }
            if kernel != sub * reachable_multiples(&delta, &sub_delta, e)? {
                out.failures.push(record(KernelLaw::DeletionExact { edge: e }));
            }
        }
        if graph.edges().iter().all(|e| e.stabilizer % r == 0) {
            let image = delta.domain_order() / &kernel;
            if image != pow_u64(r, graph.vertex_count() as u64 - 1) {
                out.failures.push(record(KernelLaw::ImageOrder));
            }
            let exponent = 2 * graph.vertex_genus_sum() + 2 * b1;
            if torsion_count(graph, r)? != pow_u64(r, exponent) {
                out.failures.push(record(KernelLaw::TorsionOrder));
            }
        }
    }
    Ok(out)
}

/// Number of `x` in `Z/h_e` with `x` times column `e` of `delta` in the
/// image of `sub`.
fn reachable_multiples(delta: &CyclicHom, sub: &CyclicHom, e: usize) -> Result<u64> {
    let h = delta.domain_moduli()[e].to_u64().expect("small modulus");
    let column = delta.matrix().column(e);
    let mut reachable = 0;
    for x in 0..h {
        let target: Vec<BigInt> = column.iter().map(|c| -(c * BigInt::from(x))).collect();
        if hom_image_contains(sub, &target)?.is_some() {
            reachable += 1;
        }
    }
    Ok(reachable)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rootsnum_sweep_is_clean() {
        let graphs = sweep_family([2], &[1, 2, 4], &EnumerationLimits::default()).unwrap();
        let config = RootsnumSweep {
            rs: vec![2, 4],
            random_bundles: 5,
            ..Default::default()
        };
        let summary = verify_rootsnum(&graphs, &config).unwrap();
        assert!(summary.discrepancies.is_empty(), "{:?}", summary.discrepancies.first());
        assert!(summary.criterion_true > 0);
        assert!(summary.criterion_true < summary.cases);
        assert_eq!(verify_rootsnum(&graphs, &config).unwrap(), summary);
    }

    #[test]
    fn small_kernel_sweep_is_clean() {
        let graphs = sweep_family([2], &[1, 2, 3, 6], &EnumerationLimits::default()).unwrap();
        let summary = verify_kernel_laws(&graphs, &[2, 3, 6]).unwrap();
        assert!(summary.failures.is_empty(), "{:?}", summary.failures.first());
        assert!(summary.deletions > 0);
        assert!(!summary.deletion_counterexamples.is_empty());
    }

    #[test]
    fn deletion_law_needs_divisibility() {
        let g = crate::graphs::fixtures::theta([2, 1, 1]);
        let summary = verify_kernel_laws(std::slice::from_ref(&g), &[2]).unwrap();
        assert!(summary.failures.is_empty());
        assert_eq!(
            summary.deletion_counterexamples,
            vec![KernelLawFailure { graph: g, r: 2, law: KernelLaw::Deletion { edge: 0 } }]
        );
    }

    #[test]
    fn random_bundles_meet_hypothesis() {
        let graphs = sweep_family([2], &[2, 3], &EnumerationLimits::default()).unwrap();
        let mut rng = graph_rng(7, 0, 3);
        for g in &graphs {
            for _ in 0..20 {
                let f = random_bundle(g, 3, &mut rng);
                assert_eq!(f.total_degree().unwrap().rem_euclid(3), 0);
            }
        }
    }
}
