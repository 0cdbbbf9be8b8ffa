//! Witnesses for the extremal section counts.

use std::collections::BTreeSet;

use crate::polygon::{Point, Polygon};

/// Cells of a spiral hook with `2k - 1` rows whose second column is a
/// single `k`-section. Even rows are full runs from column 0, shortening by
/// two per step upward; odd rows hold the left wall and one cell just past
/// the end of the run above.
fn hook_cells(k: u32) -> BTreeSet<Point> {
    let k = k as i32;
    if k == 1 {
        return BTreeSet::from([(0, 0)]);
    }
    let run_end = |row: i32| 2 * k - row;
    let mut cells = BTreeSet::new();
    for row in 0..(2 * k - 1) {
        if row % 2 == 0 {
            cells.extend((0..run_end(row)).map(|x| (x, row)));
        } else {
            cells.insert((0, row));
            cells.insert((run_end(row + 1) + 1, row));
        }
    }
    cells
}

/// A section-minimal polygon with `6k - 4` vertical bonds and one `k`-section.
pub fn construct_hook(k: u32) -> Polygon {
    assert!(k >= 1, "k must be positive");
    Polygon::from_cells(&hook_cells(k)).expect("hook is a simple polygon")
}

/// The hook with `M` pairs of `k`-section columns inserted right of its
/// `k`-section: first a copy of that column with an extra cell hanging
/// below the bottom row, then a plain copy. The result has `6k - 4 + 2M`
/// vertical bonds and `2M + 1` sections of size `k`.
pub fn construct_many(k: u32, m: u32) -> Polygon {
    assert!(k >= 1, "k must be positive");
    let hook = hook_cells(k);
    let split = if k == 1 { 0 } else { 1 };
    let column: Vec<i32> = hook.iter().filter(|c| c.0 == split).map(|c| c.1).collect();
    let inserted = 2 * m as i32;
    let mut cells: BTreeSet<Point> = hook
        .iter()
        .map(|&(x, y)| if x > split { (x + inserted, y) } else { (x, y) })
        .collect();
    for j in 0..inserted {
        let x = split + 1 + j;
        cells.extend(column.iter().map(|&y| (x, y)));
        if j % 2 == 0 {
            cells.insert((x, -1));
        }
    }
    Polygon::from_cells(&cells).expect("inserted columns keep the polygon simple")
}
