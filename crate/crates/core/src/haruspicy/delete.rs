use std::collections::{BTreeMap, BTreeSet};

use super::{decompose, Grid, HaruspicyError, PageDecomposition, Rows, Section};
use crate::polygon::{validate, Bond, Orientation, Polygon};

fn left_twin<'a>(d: &'a PageDecomposition, s: &Section) -> Option<&'a Section> {
    d.sections
        .iter()
        .find(|t| t.column == s.column - 1 && t.page == s.page && t.bonds == s.bonds)
}

fn is_duplicate(p: &Polygon, d: &PageDecomposition, s: &Section) -> bool {
    left_twin(d, s).is_some()
        && !p.bonds().iter().any(|b| {
            b.orientation == Orientation::Vertical
                && b.x == s.column
                && (s.lower_row..=s.upper_row).contains(&b.y)
        })
}

/// Ids of sections identical to the section on their left, ordered
/// leftmost first and then topmost first.
pub fn duplicates(p: &Polygon, d: &PageDecomposition) -> Vec<usize> {
    let mut out: Vec<&Section> = d.sections.iter().filter(|s| is_duplicate(p, d, s)).collect();
    out.sort_by_key(|s| (s.column, -s.upper_row));
    out.into_iter().map(|s| s.id).collect()
}

/// Removes duplicate section `id` (numbered as in `decompose(p)`) and closes
/// the gap by moving everything on the far side of it one column left.
pub fn delete_duplicate(p: &Polygon, id: usize) -> Result<Polygon, HaruspicyError> {
    let d = decompose(p);
    delete_in(p, &d, id)
}

fn delete_in(p: &Polygon, d: &PageDecomposition, id: usize) -> Result<Polygon, HaruspicyError> {
    let s = d.sections.get(id).ok_or(HaruspicyError::NoSuchSection(id))?;
    if !is_duplicate(p, d, s) {
        return Err(HaruspicyError::NotDuplicate(id));
    }
    let rows = Rows::of(p);
    let grid = Grid::around(&rows);
    let col = s.column;
    let removed = |c: i32, b: i32| c == col && b > s.lower_row && b <= s.upper_row;
    // The two bounding section lines, from the strip out to their own side.
    let wall_row = |row: i32, c: i32| {
        if row < 0 || row >= rows.height {
            return true;
        }
        if col < rows.first[row as usize] {
            c <= col
        } else {
            c >= col
        }
    };
    let vertical_wall = |c: i32, b: i32| {
        (b == s.lower_row && wall_row(b, c)) || (b == s.upper_row && wall_row(b, c))
    };
    let labels = grid.components(&removed, &vertical_wall, &|_, _| false);
    let left_label = labels[grid.index(col - 1, s.lower_row + 1).expect("on grid")];
    let on_left = |c: i32, b: i32| labels[grid.index(c, b).expect("on grid")] == left_label;

    let recombination = |reason: String| HaruspicyError::Recombination { id, reason };
    let mut bonds = Vec::with_capacity(p.bonds().len());
    for b in p.bonds() {
        let (column, band) = match b.orientation {
            Orientation::Horizontal => {
                if removed(b.x, b.y) {
                    continue;
                }
                (b.x, b.y)
            }
            Orientation::Vertical => {
                let usable = |c: i32| !removed(c, b.y) && !removed(c, b.y + 1) && !vertical_wall(c, b.y);
                let column = [b.x, b.x - 1]
                    .into_iter()
                    .find(|&c| usable(c))
                    .ok_or_else(|| recombination(format!("vertical bond at ({}, {}) straddles the slice", b.x, b.y)))?;
                (column, b.y)
            }
        };
        bonds.push(if on_left(column, band) {
            *b
        } else {
            Bond { x: b.x - 1, ..*b }
        });
    }
    validate(bonds).map_err(|e| recombination(e.to_string()))
}

/// Deletes duplicates, leftmost-topmost first, until none remain.
pub fn reduce_minimal(p: &Polygon) -> Polygon {
    let mut current = p.clone();
    loop {
        let d = decompose(&current);
        let Some(&id) = duplicates(&current, &d).first() else {
            return current;
        };
        current = delete_in(&current, &d, id).expect("duplicate deletion recombines");
    }
}

/// Every section-minimal polygon reachable by some order of deletions.
pub fn reduction_outcomes(p: &Polygon) -> Result<BTreeSet<Polygon>, HaruspicyError> {
    let mut memo: BTreeMap<Polygon, BTreeSet<Polygon>> = BTreeMap::new();
    outcomes(p, &mut memo)
}

fn outcomes(
    p: &Polygon,
    memo: &mut BTreeMap<Polygon, BTreeSet<Polygon>>,
) -> Result<BTreeSet<Polygon>, HaruspicyError> {
    if let Some(done) = memo.get(p) {
        return Ok(done.clone());
    }
    let d = decompose(p);
    let ids = duplicates(p, &d);
    let mut out = BTreeSet::new();
    if ids.is_empty() {
        out.insert(p.clone());
    }
    for id in ids {
        let next = delete_in(p, &d, id)?;
        out.extend(outcomes(&next, memo)?);
    }
    memo.insert(p.clone(), out.clone());
    Ok(out)
}
