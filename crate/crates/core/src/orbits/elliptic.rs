use serde::Serialize;

use super::classes::{nodal_fixture, orbit_count};
use crate::error::{Error, Result};
use crate::picard::{LineBundle, DEFAULT_MAX_DOMAIN};

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Generator of the automorphism group of an elliptic curve with `order`
/// automorphisms, acting on its r-torsion `(Z/r)^2`.
fn generator(order: u32) -> Result<[[i64; 2]; 2]> {
    match order {
        2 => Ok([[-1, 0], [0, -1]]),
        4 => Ok([[0, -1], [1, 0]]),
        6 => Ok([[0, -1], [1, 1]]),
        _ => Err(Error::BadAutOrder(order)),
    }
}

fn apply(m: &[[i64; 2]; 2], v: (i64, i64), r: i64) -> (i64, i64) {
    (
        (m[0][0] * v.0 + m[0][1] * v.1).rem_euclid(r),
        (m[1][0] * v.0 + m[1][1] * v.1).rem_euclid(r),
    )
}

/// Orbits of the automorphism group of order `aut_order` on the nonzero
/// r-torsion points of an elliptic curve. Direct enumeration, checked against
/// Burnside's count.
pub fn elliptic_torsion_orbits(r: u64, aut_order: u32) -> Result<u64> {
    let m = generator(aut_order)?;
    if !is_prime(r) || r < 5 {
        return Err(Error::BadR(r));
    }
    let ri = r as i64;
    let idx = |v: (i64, i64)| (v.0 * ri + v.1) as usize;
    let mut seen = vec![false; (r * r) as usize];
    seen[0] = true;
    let mut orbits = 0u64;
    for a in 0..ri {
        for b in 0..ri {
            if seen[idx((a, b))] {
                continue;
            }
            orbits += 1;
            let mut v = (a, b);
            while !seen[idx(v)] {
                seen[idx(v)] = true;
                v = apply(&m, v, ri);
            }
        }
    }

    let mut fixed = 0u64;
    let mut power = [[1, 0], [0, 1]];
    for _ in 0..aut_order {
        for a in 0..ri {
            for b in 0..ri {
                if (a, b) != (0, 0) && apply(&power, (a, b), ri) == (a, b) {
                    fixed += 1;
                }
            }
        }
        power = mul(&m, &power);
    }
    if fixed % aut_order as u64 != 0 || fixed / aut_order as u64 != orbits {
        return Err(Error::OrbitCountMismatch {
            direct: orbits as usize,
            burnside: format!("{fixed}/{aut_order}"),
        });
    }
    Ok(orbits)
}

fn mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Euler characteristic of a degree `degree` cover of the projective line
/// whose only special fibres have the listed numbers of points.
pub fn riemann_hurwitz_chi(degree: u64, fibres: &[u64]) -> Result<i64> {
    let mut chi = 2 * degree as i64;
    for &n in fibres {
        if n > degree {
            return Err(Error::FibreExceedsDegree { fibre: n, degree });
        }
        chi -= (degree - n) as i64;
    }
    Ok(chi)
}

/// Fibre data of the coarse curve of nontrivial r-spin structures over the
/// moduli line of one-pointed genus-1 curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NrReport {
    pub r: u64,
    pub degree: u64,
    pub n_j1728: u64,
    pub n_j0: u64,
    pub n_cusp: u64,
    pub euler: i64,
    pub genus_nr: i64,
}

pub fn nr_report(r: u64) -> Result<NrReport> {
    if !is_prime(r) || r < 5 {
        return Err(Error::BadR(r));
    }
    let degree = elliptic_torsion_orbits(r, 2)?;
    let n_j1728 = elliptic_torsion_orbits(r, 4)?;
    let n_j0 = elliptic_torsion_orbits(r, 6)?;
    let nodal = nodal_fixture(r);
    let trivial = LineBundle::trivial(&nodal);
    let n_cusp = orbit_count(&trivial, r, true, DEFAULT_MAX_DOMAIN)?.nontrivial_orbits() as u64;
    let euler = riemann_hurwitz_chi(degree, &[n_j1728, n_j0, n_cusp])?;
    Ok(NrReport {
        r,
        degree,
        n_j1728,
        n_j0,
        n_cusp,
        euler,
        genus_nr: 1 - euler / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_orbits() {
        assert_eq!(elliptic_torsion_orbits(11, 2).unwrap(), 60);
        assert_eq!(elliptic_torsion_orbits(11, 4).unwrap(), 30);
        assert_eq!(elliptic_torsion_orbits(11, 6).unwrap(), 20);
        assert_eq!(elliptic_torsion_orbits(5, 2).unwrap(), 12);
        assert_eq!(elliptic_torsion_orbits(5, 3), Err(Error::BadAutOrder(3)));
        assert_eq!(elliptic_torsion_orbits(9, 2), Err(Error::BadR(9)));
        for r in [5, 7, 11, 13, 17, 19, 23] {
            for a in [2, 4, 6] {
                assert_eq!(elliptic_torsion_orbits(r, a).unwrap(), (r * r - 1) / a as u64);
            }
        }
    }

    #[test]
    fn chi_examples() {
        assert_eq!(riemann_hurwitz_chi(60, &[30, 20, 10]).unwrap(), 0);
        assert_eq!(riemann_hurwitz_chi(7, &[]).unwrap(), 14);
        assert_eq!(riemann_hurwitz_chi(12, &[6, 4, 4]).unwrap(), 2);
        assert_eq!(
            riemann_hurwitz_chi(3, &[4]),
            Err(Error::FibreExceedsDegree { fibre: 4, degree: 3 })
        );
    }

    #[test]
    fn nr_reports() {
        let r11 = nr_report(11).unwrap();
        assert_eq!(
            (r11.degree, r11.n_j1728, r11.n_j0, r11.n_cusp, r11.euler, r11.genus_nr),
            (60, 30, 20, 10, 0, 1)
        );
        for r in [5i64, 7, 11, 13, 17, 19, 23] {
            let report = nr_report(r as u64).unwrap();
            assert_eq!(report.euler, -(report.degree as i64) + (report.n_j1728 + report.n_j0 + report.n_cusp) as i64);
            assert_eq!(report.genus_nr, (r - 5) * (r - 7) / 24);
        }
        assert_eq!(nr_report(13).unwrap().genus_nr, 2);
        assert_eq!(nr_report(3), Err(Error::BadR(3)));
        assert_eq!(nr_report(15), Err(Error::BadR(15)));
    }
}
