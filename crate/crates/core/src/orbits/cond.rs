use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graphs::{stable_shapes, DualGraph, EnumerationLimits, MultiIndex};
use crate::picard::{count_roots, LineBundle};
use crate::BigRational;

fn check_length(g: u64, l: &MultiIndex) -> Result<()> {
    let expected = (g / 2) as usize + 1;
    if l.len() != expected {
        return Err(Error::MultiIndexLengthMismatch {
            expected,
            found: l.len(),
        });
    }
    Ok(())
}

/// Numerical condition for every l-stable curve of genus `g` to carry the
/// full `r^(2g)` r-th roots of `omega^k`: `r | l_0` and
/// `r | (2i - 1) k l_i` for `i >= 1`.
pub fn cond_check(g: u64, r: u64, l: &MultiIndex, k: i64) -> Result<bool> {
    check_length(g, l)?;
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let r = r as i128;
    if ((2 * g as i128 - 2) * k as i128) % r != 0 {
        return Err(Error::HypothesisViolated(format!(
            "(2g - 2) k = {} is not a multiple of {r}",
            (2 * g as i64 - 2) * k
        )));
    }
    let entries = l.entries();
    Ok(entries[0] as i128 % r == 0
        && entries
            .iter()
            .enumerate()
            .skip(1)
            .all(|(i, &li)| ((2 * i as i128 - 1) * k as i128 * li as i128) % r == 0))
}

/// Every l-stable graph of genus `g` without markings: each stable shape
/// with the stabilizer of a type-i node set to `l_i`.
pub fn l_stable_graphs(g: u64, l: &MultiIndex, limits: &EnumerationLimits) -> Result<Vec<DualGraph>> {
    check_length(g, l)?;
    stable_shapes(g, 0, limits)?
        .into_iter()
        .map(|shape| {
            let stabilizers: Vec<u64> = (0..shape.edge_count())
                .map(|e| l.entries()[shape.classify_node(e).type_index() as usize])
                .collect();
            shape.with_stabilizers(&stabilizers)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondWitness {
    pub graph: DualGraph,
    pub count: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondReport {
    pub g: u64,
    pub r: u64,
    pub k: i64,
    pub l: MultiIndex,
    /// Whether `r | (2g - 2) k`. Without it `omega^k` has no r-th roots at
    /// all and the condition is taken to fail.
    pub degree_hypothesis: bool,
    pub predicted: bool,
    pub graphs: usize,
    pub equivalent: bool,
    /// Graphs whose root count differs from `r^(2g)`.
    pub witnesses: Vec<CondWitness>,
}

/// Compares [`cond_check`] with brute-force root counts on every l-stable
/// graph of genus `g`.
pub fn verify_cond(
    g: u64,
    r: u64,
    l: &MultiIndex,
    k: i64,
    limits: &EnumerationLimits,
    max_domain: u64,
) -> Result<CondReport> {
    let (degree_hypothesis, predicted) = match cond_check(g, r, l, k) {
        Ok(p) => (true, p),
        Err(Error::HypothesisViolated(_)) => (false, false),
        Err(e) => return Err(e),
    };
    let graphs = l_stable_graphs(g, l, limits)?;
    let full = BigUint::from(r).pow(2 * g as u32);
    let mut witnesses = Vec::new();
    for graph in &graphs {
        let f = LineBundle::omega_power(graph, k);
        let count = count_roots(&f, r, max_domain)?;
        if count != full {
            witnesses.push(CondWitness {
                graph: graph.clone(),
                count,
            });
        }
    }
    let all_full = witnesses.is_empty();
    Ok(CondReport {
        g,
        r,
        k,
        l: l.clone(),
        degree_hypothesis,
        predicted,
        graphs: graphs.len(),
        equivalent: predicted == all_full,
        witnesses,
    })
}

/// `r^m / prod d_i`, the ratio of automorphism group orders between r-stable
/// and Abramovich-Jarvis r-spin curves with nodes of orders `d_i`.
pub fn aj_aut_ratio(r: u64, stabilizers: &[u64]) -> Result<BigRational> {
    if stabilizers.contains(&0) {
        return Err(Error::InvalidArgument("node orders must be positive".into()));
    }
    let numer = BigInt::from(r).pow(stabilizers.len() as u32);
    let denom: BigInt = stabilizers.iter().map(|&d| BigInt::from(d)).product();
    Ok(Ratio::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::fixtures::*;

    fn mi(v: &[u64]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cond_examples() {
        assert!(cond_check(2, 2, &mi(&[2, 2]), 1).unwrap());
        assert!(!cond_check(2, 2, &mi(&[2, 1]), 1).unwrap());
        for g in 2..6 {
            let ones = MultiIndex::constant(g, 1).unwrap();
            for r in 2..5 {
                if (2 * g - 2) % r == 0 {
                    assert!(!cond_check(g, r, &ones, 1).unwrap());
                }
            }
        }
        // k = 0 only constrains l_0
        assert!(cond_check(3, 3, &mi(&[3, 1]), 0).unwrap());
        assert!(matches!(cond_check(2, 3, &mi(&[3, 3]), 1), Err(Error::HypothesisViolated(_))));
        assert!(matches!(
            cond_check(2, 2, &mi(&[2]), 1),
            Err(Error::MultiIndexLengthMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn verify_examples() {
        let limits = EnumerationLimits::default();
        let report = verify_cond(2, 2, &mi(&[2, 2]), 1, &limits, 1_000_000).unwrap();
        assert!(report.predicted && report.equivalent);
        assert_eq!(report.graphs, 7);
        assert!(report.witnesses.is_empty());

        let report = verify_cond(2, 2, &mi(&[2, 1]), 1, &limits, 1_000_000).unwrap();
        assert!(!report.predicted && report.equivalent);
        let bridge = two_vertex_bridge(1, 1, 1);
        let w = report.witnesses.iter().find(|w| w.graph == bridge).unwrap();
        assert_eq!(w.count, BigUint::from(0u32));

        let report = verify_cond(2, 2, &mi(&[1, 1]), 1, &limits, 1_000_000).unwrap();
        assert!(!report.predicted && report.equivalent);
        let irreducible = loop_graph(1, vec![], 1);
        let w = report.witnesses.iter().find(|w| w.graph == irreducible).unwrap();
        assert_eq!(w.count, BigUint::from(8u32));
    }

    #[test]
    fn off_hypothesis_sweep() {
        let report =
            verify_cond(2, 3, &mi(&[3, 3]), 1, &EnumerationLimits::default(), 1_000_000).unwrap();
        assert!(!report.degree_hypothesis);
        assert!(report.equivalent);
        assert_eq!(report.witnesses.len(), report.graphs);
    }

    #[test]
    fn ratios() {
        assert_eq!(aj_aut_ratio(5, &[]).unwrap(), Ratio::from_integer(BigInt::from(1)));
        assert_eq!(aj_aut_ratio(4, &[2, 2]).unwrap(), Ratio::from_integer(BigInt::from(4)));
        assert_eq!(aj_aut_ratio(2, &[2]).unwrap(), Ratio::from_integer(BigInt::from(1)));
        assert_eq!(aj_aut_ratio(3, &[2]).unwrap(), Ratio::new(BigInt::from(3), BigInt::from(2)));
    }
}
