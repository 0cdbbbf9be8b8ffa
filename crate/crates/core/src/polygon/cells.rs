use std::collections::BTreeSet;

use super::{validate, Bond, Point, Polygon, PolygonError};

impl Polygon {
    /// The boundary of a set of unit cells, given by lower-left corners.
    /// Fails unless the cells form a simply connected region whose boundary
    /// is a single self-avoiding cycle.
    pub fn from_cells(cells: &BTreeSet<Point>) -> Result<Polygon, PolygonError> {
        let mut bonds = Vec::new();
        for &(x, y) in cells {
            if !cells.contains(&(x, y - 1)) {
                bonds.push(Bond::horizontal(x, y));
            }
            if !cells.contains(&(x, y + 1)) {
                bonds.push(Bond::horizontal(x, y + 1));
            }
            if !cells.contains(&(x - 1, y)) {
                bonds.push(Bond::vertical(x, y));
            }
            if !cells.contains(&(x + 1, y)) {
                bonds.push(Bond::vertical(x + 1, y));
            }
        }
        validate(bonds)
    }
}
