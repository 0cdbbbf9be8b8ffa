//! Section lines, pages and sections of a polygon; deletion of duplicate
//! sections down to a section-minimal polygon; extremal witnesses.

mod construct;
mod delete;

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::polygon::{Orientation, Polygon};

pub use construct::{construct_hook, construct_many};
pub use delete::{delete_duplicate, duplicates, reduce_minimal, reduction_outcomes};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HaruspicyError {
    #[error("no section with id {0}")]
    NoSuchSection(usize),
    #[error("section {0} is not a duplicate of its left neighbour")]
    NotDuplicate(usize),
    #[error("recombining after deleting section {id} failed: {reason}")]
    Recombination { id: usize, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// A section line entering row `row` from `side`, stopped by the vertical
/// bond on lattice line `blocked_at`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionLine {
    pub row: i32,
    pub side: Side,
    pub blocked_at: i32,
}

/// Vertical cut on lattice line `x`, separating bands `from_band..=to_band`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerticalCut {
    pub x: i32,
    pub from_band: i32,
    pub to_band: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub id: usize,
    pub page: usize,
    /// The section occupies the column between lattice lines `column` and
    /// `column + 1`.
    pub column: i32,
    /// Covered rows bounding the section below and above.
    pub lower_row: i32,
    pub upper_row: i32,
    /// Ordinates of its horizontal bonds, ascending.
    pub bonds: Vec<i32>,
    pub k: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Page {
    pub id: usize,
    pub sections: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageDecomposition {
    pub section_lines: Vec<SectionLine>,
    pub cuts: Vec<VerticalCut>,
    pub pages: Vec<Page>,
    pub sections: Vec<Section>,
    pub between_page_vertical_bonds: u32,
    pub within_page_vertical_bonds: u32,
    pub sigma: BTreeMap<u32, u32>,
}

/// Row geometry shared by decomposition and deletion.
pub(crate) struct Rows {
    pub height: i32,
    pub width: i32,
    /// First and last vertical-bond positions per row.
    pub first: Vec<i32>,
    pub last: Vec<i32>,
}

impl Rows {
    pub fn of(p: &Polygon) -> Rows {
        let by_row = p.vertical_bonds_by_row();
        Rows {
            height: p.height(),
            width: p.width(),
            first: by_row.iter().map(|r| r[0]).collect(),
            last: by_row.iter().map(|r| *r.last().expect("row has bonds")).collect(),
        }
    }

    fn inside(&self, row: i32) -> bool {
        (0..self.height).contains(&row)
    }

    /// Whether a section line runs through the middle of cell `(column, row)`.
    pub fn covers_column(&self, column: i32, row: i32) -> bool {
        if !self.inside(row) {
            return true;
        }
        let r = row as usize;
        column < self.first[r] || column >= self.last[r]
    }

    /// Whether a section line in `row` reaches lattice line `x`.
    fn reaches_line(&self, x: i32, row: i32) -> bool {
        if !self.inside(row) {
            return true;
        }
        let r = row as usize;
        self.first[r] >= x || self.last[r] <= x
    }

    fn cut_from(&self, x: i32, row: i32) -> VerticalCut {
        let mut below = row - 1;
        while !self.reaches_line(x, below) {
            below -= 1;
        }
        let mut above = row + 1;
        while !self.reaches_line(x, above) {
            above += 1;
        }
        VerticalCut {
            x,
            from_band: below + 1,
            to_band: above,
        }
    }

    /// Covered rows in a column, ascending, including one margin row on
    /// each side.
    pub fn covered_rows(&self, column: i32) -> Vec<i32> {
        (-1..=self.height)
            .filter(|&r| self.covers_column(column, r))
            .collect()
    }
}

fn horizontal_by_column(p: &Polygon, width: i32) -> Vec<Vec<i32>> {
    let mut cols = vec![Vec::new(); width as usize];
    for b in p.bonds() {
        if b.orientation == Orientation::Horizontal {
            cols[b.x as usize].push(b.y);
        }
    }
    for c in cols.iter_mut() {
        c.sort_unstable();
    }
    cols
}

/// Node grid over columns `-1..=width` and bands `-1..=height+1`.
pub(crate) struct Grid {
    pub min_col: i32,
    pub cols: i32,
    pub min_band: i32,
    pub bands: i32,
}

impl Grid {
    pub fn around(rows: &Rows) -> Grid {
        Grid {
            min_col: -1,
            cols: rows.width + 2,
            min_band: -1,
            bands: rows.height + 3,
        }
    }

    pub fn index(&self, c: i32, b: i32) -> Option<usize> {
        let (i, j) = (c - self.min_col, b - self.min_band);
        if i < 0 || j < 0 || i >= self.cols || j >= self.bands {
            return None;
        }
        Some((i * self.bands + j) as usize)
    }

    pub fn len(&self) -> usize {
        (self.cols * self.bands) as usize
    }

    pub fn node(&self, idx: usize) -> (i32, i32) {
        let idx = idx as i32;
        (idx / self.bands + self.min_col, idx % self.bands + self.min_band)
    }

    /// Connected components under the given wall predicates, skipping
    /// `removed` nodes. `vertical_wall(c, b)` separates `(c,b)` from
    /// `(c,b+1)`; `horizontal_wall(c, b)` separates `(c,b)` from `(c+1,b)`.
    pub fn components(
        &self,
        removed: &dyn Fn(i32, i32) -> bool,
        vertical_wall: &dyn Fn(i32, i32) -> bool,
        horizontal_wall: &dyn Fn(i32, i32) -> bool,
    ) -> Vec<Option<usize>> {
        let mut label: Vec<Option<usize>> = vec![None; self.len()];
        let mut next = 0;
        for start in 0..self.len() {
            let (c, b) = self.node(start);
            if label[start].is_some() || removed(c, b) {
                continue;
            }
            label[start] = Some(next);
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let (c, b) = self.node(i);
                let steps = [
                    (c, b + 1, vertical_wall(c, b)),
                    (c, b - 1, vertical_wall(c, b - 1)),
                    (c + 1, b, horizontal_wall(c, b)),
                    (c - 1, b, horizontal_wall(c - 1, b)),
                ];
                for (nc, nb, wall) in steps {
                    if wall || removed(nc, nb) {
                        continue;
                    }
                    if let Some(j) = self.index(nc, nb) {
                        if label[j].is_none() {
                            label[j] = Some(next);
                            queue.push_back(j);
                        }
                    }
                }
            }
            next += 1;
        }
        label
    }
}

pub fn decompose(p: &Polygon) -> PageDecomposition {
    let rows = Rows::of(p);
    let mut section_lines = Vec::new();
    let mut cuts = Vec::new();
    for r in 0..rows.height {
        let (first, last) = (rows.first[r as usize], rows.last[r as usize]);
        section_lines.push(SectionLine { row: r, side: Side::Left, blocked_at: first });
        section_lines.push(SectionLine { row: r, side: Side::Right, blocked_at: last });
        cuts.push(rows.cut_from(first, r));
        cuts.push(rows.cut_from(last, r));
    }
    cuts.sort_by_key(|c| (c.x, c.from_band));
    cuts.dedup();

    let grid = Grid::around(&rows);
    let horizontal_wall = |c: i32, b: i32| {
        cuts.iter()
            .any(|cut| cut.x == c + 1 && (cut.from_band..=cut.to_band).contains(&b))
    };
    let vertical_wall = |c: i32, b: i32| rows.covers_column(c, b);
    let labels = grid.components(&|_, _| false, &vertical_wall, &horizontal_wall);

    let mut sections = Vec::new();
    let mut page_of_label: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pages: Vec<Page> = Vec::new();
    for (column, ys) in horizontal_by_column(p, rows.width).iter().enumerate() {
        let column = column as i32;
        let covered = rows.covered_rows(column);
        for w in covered.windows(2) {
            let (lower_row, upper_row) = (w[0], w[1]);
            let bonds: Vec<i32> = ys
                .iter()
                .copied()
                .filter(|&y| y > lower_row && y <= upper_row)
                .collect();
            if bonds.is_empty() {
                continue;
            }
            let label = labels[grid.index(column, bonds[0]).expect("on grid")].expect("labelled");
            let page = *page_of_label.entry(label).or_insert_with(|| {
                pages.push(Page { id: pages.len(), sections: Vec::new() });
                pages.len() - 1
            });
            let id = sections.len();
            pages[page].sections.push(id);
            let k = bonds.len() as u32 / 2;
            sections.push(Section { id, page, column, lower_row, upper_row, bonds, k });
        }
    }

    let mut between = 0;
    let mut total = 0;
    for b in p.bonds() {
        if b.orientation != Orientation::Vertical {
            continue;
        }
        total += 1;
        // Row b.y is cut when both of its half-bands lie in the cut's range.
        if cuts
            .iter()
            .any(|cut| cut.x == b.x && cut.from_band <= b.y && b.y < cut.to_band)
        {
            between += 1;
        }
    }
    let mut sigma = BTreeMap::new();
    for s in &sections {
        *sigma.entry(s.k).or_insert(0) += 1;
    }
    PageDecomposition {
        section_lines,
        cuts,
        pages,
        sections,
        between_page_vertical_bonds: between,
        within_page_vertical_bonds: total - between,
        sigma,
    }
}

pub fn sigma(p: &Polygon) -> BTreeMap<u32, u32> {
    decompose(p).sigma
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn rect(w: i32, h: i32) -> Polygon {
        let cells: BTreeSet<(i32, i32)> =
            (0..w).flat_map(|x| (0..h).map(move |y| (x, y))).collect();
        Polygon::from_cells(&cells).unwrap()
    }

    #[test]
    fn unit_square_and_bar() {
        let d = decompose(&rect(1, 1));
        assert_eq!((d.pages.len(), d.sections.len()), (1, 1));
        assert_eq!(d.sigma, BTreeMap::from([(1, 1)]));
        assert_eq!((d.between_page_vertical_bonds, d.within_page_vertical_bonds), (2, 0));
        let d = decompose(&rect(3, 1));
        assert_eq!((d.pages.len(), d.sections.len()), (1, 3));
        assert!(d.sections.iter().all(|s| s.k == 1));
    }

    #[test]
    fn square_and_deletion() {
        let sq = rect(2, 2);
        assert_eq!(sigma(&sq), BTreeMap::from([(1, 2)]));
        let d = decompose(&sq);
        assert_eq!(duplicates(&sq, &d), vec![1]);
        let domino = delete_duplicate(&sq, 1).unwrap();
        assert_eq!(domino, rect(1, 2));
        assert!(matches!(delete_duplicate(&sq, 0), Err(HaruspicyError::NotDuplicate(0))));
        assert_eq!(reduce_minimal(&rect(5, 1)), rect(1, 1));
        assert_eq!(reduce_minimal(&rect(1, 1)), rect(1, 1));
    }

    #[test]
    fn hooks() {
        assert_eq!(construct_hook(1), rect(1, 1));
        for k in 2..=4 {
            let h = construct_hook(k);
            assert_eq!(2 * h.vhp(), 6 * k - 4, "k = {k}");
            assert_eq!(sigma(&h).get(&k), Some(&1), "k = {k}");
            assert_eq!(reduce_minimal(&h), h, "hook {k} is section-minimal");
        }
    }

    #[test]
    fn many_sections() {
        for (k, m) in [(1, 0), (1, 2), (2, 0), (2, 1), (3, 2)] {
            let p = construct_many(k, m);
            assert_eq!(2 * p.vhp(), 6 * k - 4 + 2 * m, "({k},{m})");
            assert_eq!(sigma(&p).get(&k), Some(&(2 * m + 1)), "({k},{m})");
            assert_eq!(reduce_minimal(&p), p, "({k},{m}) is section-minimal");
        }
        assert_eq!(construct_many(2, 0), construct_hook(2));
    }
}
