use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::LineBundle;
use crate::error::{Error, Result};
use crate::exactalg::{hom_kernel_size, solve_congruence, Matrix};
use crate::graphs::{DualGraph, NodeType};
use crate::CyclicHom;

/// Default cap on the number of discrete candidates enumerated by
/// [`count_roots`] and friends.
pub const DEFAULT_MAX_DOMAIN: u64 = 1_000_000;

pub(crate) fn check_r(r: u64) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    Ok(())
}

/// The boundary map composed with the embedding of the stabilizer data:
/// `prod_e Z/h_e -> (Z/r)^V`, `h_e = gcd(l_e, r)`, sending the generator at
/// `e` to `(r / h_e) ([head] - [tail])`.
pub fn delta_embed(graph: &DualGraph, r: u64) -> Result<CyclicHom> {
    check_r(r)?;
    let edges = graph.edges();
    let domain: Vec<BigInt> = edges
        .iter()
        .map(|e| BigInt::from(e.stabilizer.gcd(&r)))
        .collect();
    let matrix = Matrix::from_fn(graph.vertex_count(), edges.len(), |v, j| {
        let e = edges[j];
        let scale = BigInt::from(r / e.stabilizer.gcd(&r));
        let mut entry = BigInt::zero();
        if e.head == v {
            entry += &scale;
        }
        if e.tail == v {
            entry -= &scale;
        }
        entry
    });
    CyclicHom::new(matrix, domain, vec![BigInt::from(r); graph.vertex_count()])
}

/// `r^(2 sum g_v + b_1)`: the r-torsion of the connected part of the Picard
/// group.
pub fn continuous_torsion(graph: &DualGraph, r: u64) -> BigUint {
    let exponent = 2 * graph.vertex_genus_sum() + graph.betti_number();
    BigUint::from(r).pow(exponent as u32)
}

/// Order of the r-torsion subgroup of the Picard group of the twisted curve.
pub fn torsion_count(graph: &DualGraph, r: u64) -> Result<BigUint> {
    Ok(continuous_torsion(graph, r) * hom_kernel_size(&delta_embed(graph, r)?))
}

/// Walks every multiplicity vector of a discrete r-th root of `f`.
fn for_each_root_mult(
    f: &LineBundle<'_>,
    r: u64,
    max_domain: u64,
    mut visit: impl FnMut(&[u64]),
) -> Result<()> {
    check_r(r)?;
    let graph = f.graph();
    let edges = graph.edges();

    let mut base = Vec::with_capacity(edges.len());
    let mut step = Vec::with_capacity(edges.len());
    let mut sizes = Vec::with_capacity(edges.len());
    for (e, edge) in edges.iter().enumerate() {
        let l = edge.stabilizer as i128;
        match solve_congruence(&(r as i128), &(f.head_mult(e) as i128), &l) {
            Some((x0, s)) => {
                base.push(x0 as u64);
                step.push(s as u64);
                sizes.push(edge.stabilizer / s as u64);
            }
            None => return Ok(()),
        }
    }
    let domain: BigUint = sizes.iter().map(|&h| BigUint::from(h)).product();
    if domain > BigUint::from(max_domain) {
        return Err(Error::DomainTooLarge {
            size: domain,
            cap: max_domain,
        });
    }

    // Everything is scaled by N = r * lcm(l_e): vertex v is accepted when
    // L deg_F(v) - sum over branches of r L mult / l vanishes mod N.
    let lcm = edges
        .iter()
        .try_fold(1i128, |acc, e| {
            let l = e.stabilizer as i128;
            (acc / acc.gcd(&l)).checked_mul(l)
        })
        .ok_or_else(|| Error::InvalidArgument("stabilizers too large".into()))?;
    let n = lcm
        .checked_mul(r as i128)
        .ok_or_else(|| Error::InvalidArgument("stabilizers too large".into()))?;
    let scaled_branch = |e: usize, m: u64| -> i128 { (r as i128) * (lcm / edges[e].stabilizer as i128) * m as i128 };

    let mut acc: Vec<i128> = f
        .vertex_degrees()
        .iter()
        .map(|d| {
            let s = Ratio::new(*d.numer() as i128, *d.denom() as i128) * Ratio::from_integer(lcm);
            s.to_integer().mod_floor(&n)
        })
        .collect();
    let mut mult = base.clone();
    let apply = |acc: &mut Vec<i128>, e: usize, m: u64, sign: i128| {
        let edge = edges[e];
        let l = edge.stabilizer;
        let head = scaled_branch(e, m);
        let tail = scaled_branch(e, (l - m) % l);
        acc[edge.head] = (acc[edge.head] - sign * head).mod_floor(&n);
        acc[edge.tail] = (acc[edge.tail] - sign * tail).mod_floor(&n);
    };
    for (e, &m) in mult.iter().enumerate() {
        apply(&mut acc, e, m, 1);
    }
    let mut digits = vec![0u64; edges.len()];
    loop {
        if acc.iter().all(|a| *a == 0) {
            visit(&mult);
        }
        let mut j = 0;
        loop {
            if j == digits.len() {
                return Ok(());
            }
            apply(&mut acc, j, mult[j], -1);
            digits[j] += 1;
            if digits[j] == sizes[j] {
                digits[j] = 0;
            }
            mult[j] = base[j] + step[j] * digits[j];
            apply(&mut acc, j, mult[j], 1);
            if digits[j] != 0 {
                break;
            }
            j += 1;
        }
    }
}

/// Number of r-th roots of `f`, by enumerating the discrete candidates and
/// multiplying by the continuous torsion.
pub fn count_roots(f: &LineBundle<'_>, r: u64, max_domain: u64) -> Result<BigUint> {
    let mut accepted = 0u64;
    for_each_root_mult(f, r, max_domain, |_| accepted += 1)?;
    Ok(continuous_torsion(f.graph(), r) * accepted)
}

/// One representative for every discrete class of r-th roots of `f`.
pub fn discrete_roots<'g>(
    f: &LineBundle<'g>,
    r: u64,
    max_domain: u64,
) -> Result<Vec<LineBundle<'g>>> {
    let mut mults = Vec::new();
    for_each_root_mult(f, r, max_domain, |m| mults.push(m.to_vec()))?;
    let degrees: Vec<_> = f
        .vertex_degrees()
        .into_iter()
        .map(|d| d / Ratio::from_integer(r as i64))
        .collect();
    mults
        .into_iter()
        .map(|m| LineBundle::from_degrees(f.graph(), &degrees, m))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EdgeCondition {
    /// `r` does not divide the stabilizer of a nonseparating node.
    Stabilizer { stabilizer: u64 },
    HeadMult { mult: u64 },
    TailMult { mult: u64 },
    /// `l_e` times the degree on one side is not a multiple of `r`.
    SideDegree { plus: bool, scaled: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeFailure {
    pub edge: usize,
    #[serde(flatten)]
    pub condition: EdgeCondition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub holds: bool,
    pub failures: Vec<EdgeFailure>,
}

/// Numerical criterion for `f` to have the full `r^(2g)` roots, edge by edge.
pub fn rootsnum_criterion(f: &LineBundle<'_>, r: u64) -> Result<CriterionReport> {
    check_r(r)?;
    let total = f.total_degree()?;
    if total.rem_euclid(r as i64) != 0 {
        return Err(Error::HypothesisViolated(format!(
            "total degree {total} is not a multiple of {r}"
        )));
    }
    let graph = f.graph();
    let mut failures = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        let l = edge.stabilizer;
        let mut fail = |condition| failures.push(EdgeFailure { edge: e, condition });
        match graph.classify_node(e) {
            NodeType::Nonseparating => {
                if l % r != 0 {
                    fail(EdgeCondition::Stabilizer { stabilizer: l });
                }
                if f.head_mult(e) % r != 0 {
                    fail(EdgeCondition::HeadMult { mult: f.head_mult(e) });
                }
                if f.tail_mult(e) % r != 0 {
                    fail(EdgeCondition::TailMult { mult: f.tail_mult(e) });
                }
            }
            NodeType::Separating { sides, .. } => {
                for (plus, vs) in [(true, &sides.plus_vertices), (false, &sides.minus_vertices)] {
                    let scaled = f.side_degree(vs) * Ratio::from_integer(l as i64);
                    assert!(scaled.is_integer(), "side degree outside (1/l)Z");
                    let scaled = scaled.to_integer();
                    if scaled.rem_euclid(r as i64) != 0 {
                        fail(EdgeCondition::SideDegree { plus, scaled });
                    }
                }
            }
        }
    }
    Ok(CriterionReport {
        holds: failures.is_empty(),
        failures,
    })
}

pub(crate) fn pow_u64(r: u64, k: u64) -> BigUint {
    BigUint::from(r).pow(k.to_u32().expect("exponent fits"))
}
