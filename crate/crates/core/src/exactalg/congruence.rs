use super::Scalar;

/// Solves `a * x = b (mod n)`.
///
/// Returns `(x0, step)` with `0 <= x0 < step`; the solutions are exactly
/// `x0 + k * step`. `None` when `gcd(a, n)` does not divide `b`.
pub fn solve_congruence<T: Scalar>(a: &T, b: &T, n: &T) -> Option<(T, T)> {
    assert!(n.is_positive(), "modulus must be positive");
    let e = a.mod_floor(n).extended_gcd(n);
    let g = e.gcd.abs();
    if !b.is_multiple_of(&g) {
        return None;
    }
    let step = n.clone() / g.clone();
    // e.x * a = g (mod n)  =>  x = e.x * (b / g)
    let x0 = (e.x * (b.clone() / g)).mod_floor(&step);
    Some((x0, step))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_cases() {
        assert_eq!(solve_congruence(&2i64, &0, &4), Some((0, 2)));
        assert_eq!(solve_congruence(&2i64, &1, &4), None);
        assert_eq!(solve_congruence(&3i64, &2, &5), Some((4, 5)));
    }

    #[test]
    fn exhaustive_small_moduli() {
        for n in 1i64..=12 {
            for a in -12i64..=12 {
                for b in -3i64..=12 {
                    let brute: Vec<i64> = (0..n).filter(|x| (a * x - b).rem_euclid(n) == 0).collect();
                    match solve_congruence(&a, &b, &n) {
                        None => assert!(brute.is_empty(), "{a} {b} {n}"),
                        Some((x0, step)) => {
                            let expected: Vec<i64> =
                                (0..n).filter(|x| (x - x0).rem_euclid(step) == 0).collect();
                            assert_eq!(brute, expected, "{a} {b} {n}");
                            assert!(x0 >= 0 && x0 < step);
                        }
                    }
                }
            }
        }
    }
}
