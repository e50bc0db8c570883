//! Kauffman-bracket state sum, kept apart from the homology pipeline so the
//! two can check each other.

use super::poly::Laurent;
use crate::cube::all_circle_counts;
use crate::diagram::PlanarDiagram;
use crate::error::Result;

/// Unnormalised Jones polynomial in `q` (the unknot gives `q + q^-1`).
pub fn jones_oracle(d: &PlanarDiagram, cap: usize) -> Result<Laurent> {
    let n = d.crossing_count();
    let counts = all_circle_counts(d, cap)?;
    // bracket in A
    let delta = Laurent::from_terms([(2, -1), (-2, -1)]);
    let max_circles = counts.iter().copied().max().unwrap_or(1);
    let mut delta_pows = vec![Laurent::monomial(1, 0)];
    for k in 1..=max_circles {
        delta_pows.push(&delta_pows[k - 1] * &delta);
    }
    let mut bracket = Laurent::zero();
    for (mask, &circles) in counts.iter().enumerate() {
        let ones = (mask as u32).count_ones() as i32;
        let a_exp = (n as i32 - ones) - ones;
        bracket = &bracket + &delta_pows[circles - 1].shift(a_exp);
    }
    let w = d.writhe() as i32;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalised = &(&bracket * &Laurent::monomial(sign, -3 * w)) * &delta;
    // A^2 ↦ -q^-1; every surviving exponent is even
    Ok(Laurent::from_terms(normalised.terms().map(|(e, c)| {
        debug_assert_eq!(e % 2, 0);
        let k = e / 2;
        (-k, if k % 2 == 0 { c } else { -c })
    })))
}
