use serde_json::{json, Map, Value};
use twisted_roots::graphs::{canonical_form_with_limit, enumerate_stable_graphs_with, EnumerationLimits};
use twisted_roots::orbits::{aj_aut_ratio, nr_report, orbit_count, verify_cond, CondReport};
use twisted_roots::picard::sweep::{sweep_family, verify_rootsnum, RootsnumSweep};
use twisted_roots::picard::{
    comb_lift, comb_membership, count_roots, discrete_roots, rootsnum_criterion, torsion_count,
};
use twisted_roots::{DualGraph, MultiIndex, NodeType};

use crate::input::{load_bundle, parse_graph};
use crate::output::{big, big_signed, render};
use crate::{Cli, CliError, Command, Global};

type Records = Vec<Map<String, Value>>;

fn record(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("records are objects"),
    }
}

fn limits(global: &Global, max_genus: u64) -> EnumerationLimits {
    EnumerationLimits {
        max_genus: max_genus.max(EnumerationLimits::default().max_genus),
        max_vertices: global.max_vertices,
    }
}

fn graph_json(g: &DualGraph) -> Value {
    serde_json::to_value(g).expect("graphs serialize")
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let global = &cli.global;
    let records = match &cli.command {
        Command::Genus { graph } => {
            let g = parse_graph(graph)?;
            vec![record(json!({
                "genus": g.genus(),
                "betti": g.betti_number(),
                "vertex_genus_sum": g.vertex_genus_sum(),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "stable": g.is_stable(),
            }))]
        }
        Command::Classify { graph } => {
            let g = parse_graph(graph)?;
            (0..g.edge_count())
                .map(|e| {
                    let node = g.classify_node(e);
                    let (kind, plus) = match &node {
                        NodeType::Nonseparating => ("nonseparating", Value::Null),
                        NodeType::Separating { sides, .. } => {
                            ("separating", json!(sides.plus_vertices))
                        }
                    };
                    record(json!({
                        "edge": e,
                        "stabilizer": g.edges()[e].stabilizer,
                        "kind": kind,
                        "type": node.type_index(),
                        "plus_vertices": plus,
                    }))
                })
                .collect()
        }
        Command::Torsion { graph, r } => {
            let g = parse_graph(graph)?;
            vec![record(json!({ "torsion_count": big(&torsion_count(&g, *r)?) }))]
        }
        Command::Roots {
            graph,
            r,
            bundle,
            list,
        } => {
            let g = parse_graph(graph)?;
            let f = load_bundle(&g, bundle.bundle.as_deref(), bundle.bundle_file.as_deref())?;
            let mut out = vec![record(json!({ "count": big(&count_roots(&f, *r, global.max_domain)?) }))];
            if *list {
                for root in discrete_roots(&f, *r, global.max_domain)? {
                    out.push(record(serde_json::to_value(root.to_data()).expect("bundles serialize")));
                }
            }
            out
        }
        Command::Criterion { graph, r, bundle } => {
            let g = parse_graph(graph)?;
            let f = load_bundle(&g, bundle.bundle.as_deref(), bundle.bundle_file.as_deref())?;
            let report = rootsnum_criterion(&f, *r)?;
            vec![record(serde_json::to_value(report).expect("reports serialize"))]
        }
        Command::Lift { graph, r, target } => {
            let g = parse_graph(graph)?;
            let member = comb_membership(&g, *r, target)?;
            let lift = comb_lift(&g, *r, target)?;
            vec![record(json!({ "member": member, "lift": lift }))]
        }
        Command::Orbits {
            graph,
            r,
            bundle,
            involution,
        } => {
            let g = parse_graph(graph)?;
            let f = load_bundle(&g, bundle.bundle.as_deref(), bundle.bundle_file.as_deref())?;
            let report = orbit_count(&f, *r, *involution, global.max_domain)?;
            let mut out = vec![record(json!({
                "classes": report.classes.len(),
                "orbits": report.orbit_count(),
                "nontrivial_orbits": report.nontrivial_orbits(),
                "group_order": big(&report.group_order),
            }))];
            for orbit in &report.orbits {
                let members: Vec<Value> = orbit
                    .iter()
                    .map(|&i| {
                        let c = &report.classes[i];
                        json!({ "mult": c.mult(), "gluing": c.gluing() })
                    })
                    .collect();
                out.push(record(json!({ "size": orbit.len(), "members": members })));
            }
            out
        }
        Command::Enumerate { g, n, stabilizers } => {
            let graphs = enumerate_stable_graphs_with(*g, *n, stabilizers, &limits(global, *g))?;
            let mut out = Vec::with_capacity(graphs.len());
            for graph in &graphs {
                let mut rec = record(graph_json(graph));
                if global.format == crate::output::Format::Tsv {
                    rec = record(json!({
                        "canonical": canonical_form_with_limit(graph, global.max_vertices)?,
                        "graph": graph_json(graph).to_string(),
                    }));
                }
                out.push(rec);
            }
            out
        }
        Command::VerifyRootsnum {
            min_genus,
            max_genus,
            stabilizers,
            r,
            random,
        } => {
            let config = RootsnumSweep {
                rs: r.clone(),
                random_bundles: *random,
                seed: global.seed,
                max_domain: global.max_domain,
                ..Default::default()
            };
            let lim = limits(global, *max_genus);
            let summary = in_pool(global.jobs, || {
                let graphs = sweep_family(*min_genus..=*max_genus, stabilizers, &lim)?;
                verify_rootsnum(&graphs, &config)
            })??;
            let mut out = vec![record(json!({
                "graphs": summary.graphs,
                "cases": summary.cases,
                "off_hypothesis": summary.off_hypothesis,
                "criterion_true": summary.criterion_true,
                "discrepancies": summary.discrepancies.len(),
            }))];
            for d in &summary.discrepancies {
                out.push(record(json!({
                    "graph": graph_json(&d.graph),
                    "r": d.r,
                    "bundle": d.label,
                    "data": serde_json::to_value(&d.bundle).expect("bundles serialize"),
                    "criterion": d.criterion,
                    "count": big(&d.count),
                })));
            }
            out
        }
        Command::VerifyCond {
            g,
            r,
            k,
            l,
            max_entry,
        } => {
            let lim = limits(global, *g);
            let indices = match l {
                Some(entries) => vec![MultiIndex::new(entries.clone())?],
                None => MultiIndex::all_bounded((*g / 2) as usize + 1, max_entry.unwrap_or(2 * r)),
            };
            let reports = in_pool(global.jobs, || {
                use rayon::prelude::*;
                indices
                    .par_iter()
                    .map(|mi| verify_cond(*g, *r, mi, *k, &lim, global.max_domain))
                    .collect::<Result<Vec<_>, _>>()
            })??;
            cond_records(&reports, l.is_some())
        }
        Command::Nr { r } => {
            let report = nr_report(*r)?;
            vec![record(json!({
                "degree": report.degree,
                "j1728": report.n_j1728,
                "j0": report.n_j0,
                "cusp": report.n_cusp,
                "chi": report.euler,
                "genus": report.genus_nr,
            }))]
        }
        Command::Ratio { r, orders } => {
            let ratio = aj_aut_ratio(*r, orders)?;
            vec![record(json!({
                "numer": big_signed(ratio.numer()),
                "denom": big_signed(ratio.denom()),
                "ratio": ratio.to_string(),
            }))]
        }
    };
    Ok(render(&records, global.format))
}

fn cond_records(reports: &[CondReport], single: bool) -> Records {
    let mut out = Vec::new();
    if !single {
        out.push(record(json!({
            "multi_indices": reports.len(),
            "equivalent": reports.iter().all(|r| r.equivalent),
            "predicted_true": reports.iter().filter(|r| r.predicted).count(),
            "witnessed": reports.iter().filter(|r| !r.witnesses.is_empty()).count(),
        })));
    }
    for report in reports {
        out.push(record(json!({
            "g": report.g,
            "r": report.r,
            "k": report.k,
            "l": report.l.entries(),
            "degree_hypothesis": report.degree_hypothesis,
            "predicted": report.predicted,
            "graphs": report.graphs,
            "equivalent": report.equivalent,
            "witnesses": report.witnesses.len(),
        })));
        if single {
            for w in &report.witnesses {
                out.push(record(json!({
                    "graph": graph_json(&w.graph),
                    "count": big(&w.count),
                })));
            }
        }
    }
    out
}

/// Runs `f` on a pool with `jobs` threads, or the global pool when `jobs` is 0.
fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}
