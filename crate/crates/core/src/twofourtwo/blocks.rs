//! Brute-force census of building blocks: height-3 polygons with row
//! profile (2,4,2).

use std::collections::BTreeMap;

use crate::algebra::{IntPoly, Mono};
use crate::polygon::{for_each_polygon, GenerationLimits, RowProfile};

/// `(top row length, bottom row length, hhp) -> count`.
pub type BlockCensus = BTreeMap<(u32, u32, u32), u64>;

/// Blocks with top and bottom rows of length at most `max_row_length` and
/// `hhp <= max_hhp`.
pub fn brute_blocks(max_row_length: u32, max_hhp: u32) -> BlockCensus {
    let limits = GenerationLimits {
        max_hhp: Some(max_hhp),
        vertical_bonds: Some(8),
        profile: Some(RowProfile::alternating_242(3)),
        ..Default::default()
    };
    let mut census = BlockCensus::new();
    for_each_polygon(&limits, |p| {
        let rows = p.vertical_bonds_by_row();
        let bottom = (rows[0][1] - rows[0][0]) as u32;
        let top = (rows[2][1] - rows[2][0]) as u32;
        if top <= max_row_length && bottom <= max_row_length {
            *census.entry((top, bottom, p.hhp())).or_insert(0) += 1;
        }
    });
    census
}

/// The census as a polynomial in `t` (top), `s` (bottom) and `x` (hhp).
pub fn census_poly(census: &BlockCensus) -> IntPoly {
    IntPoly::from_terms(
        census
            .iter()
            .map(|(&(t, s, x), &c)| (Mono::new([t, s, x, 0]), c as i64)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_is_symmetric_and_starts_at_formula() {
        let census = brute_blocks(3, 6);
        for (&(t, s, x), &c) in &census {
            assert_eq!(census.get(&(s, t, x)), Some(&c));
        }
        let series = super::super::t_hat().t.taylor_box(&[3, 3, 6, 0]).unwrap();
        assert_eq!(series, census_poly(&census));
        let lowest = census.keys().min_by_key(|(t, s, x)| (t + s, *x)).unwrap();
        // One top cell over two split middle cells over a bottom run of three.
        assert_eq!(*lowest, (1, 3, 3));
    }
}
