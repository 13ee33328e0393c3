use num_integer::Integer;

use super::LineBundle;
use crate::error::{Error, Result};

/// `L -> (L^r2, L^r1)`: an `r1 r2`-th root of `F` splits into an r1-th and
/// an r2-th root of `F`.
pub fn split_coprime<'g>(
    l: &LineBundle<'g>,
    r1: u64,
    r2: u64,
) -> Result<(LineBundle<'g>, LineBundle<'g>)> {
    check_coprime(r1, r2)?;
    Ok((l.rth_power(r2), l.rth_power(r1)))
}

/// Inverse of [`split_coprime`]: `L1^h2 L2^h1` with `h1 r1 + h2 r2 = 1`.
pub fn combine_coprime<'g>(
    l1: &LineBundle<'g>,
    l2: &LineBundle<'_>,
    r1: u64,
    r2: u64,
) -> Result<LineBundle<'g>> {
    check_coprime(r1, r2)?;
    l1.check_same_graph(l2)?;
    if l1.rth_power(r1).to_data() != l2.rth_power(r2).to_data() {
        return Err(Error::HypothesisViolated(format!(
            "not an {r1}-th and an {r2}-th root of the same bundle"
        )));
    }
    let e = (r1 as i64).extended_gcd(&(r2 as i64));
    let (h1, h2) = (e.x, e.y);
    l1.power(h2).tensor(&l2.power(h1))
}

fn check_coprime(r1: u64, r2: u64) -> Result<()> {
    if r1 == 0 || r2 == 0 || r1.gcd(&r2) != 1 {
        return Err(Error::NotCoprime { r1, r2 });
    }
    Ok(())
}
