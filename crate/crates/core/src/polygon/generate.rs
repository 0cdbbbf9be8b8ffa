//! Exhaustive generation by rooted cycle growth.
//!
//! Each polygon is grown once from its lowest-then-leftmost vertex, taking
//! the first step to the right and closing by the step down from `(0, 1)`.
//! That rooting makes the output duplicate-free without a seen-set.

use super::{Point, Polygon, RowProfile};

/// Bounds on the polygons to grow.
#[derive(Clone, Debug, Default)]
pub struct GenerationLimits {
    /// Upper bound on `hhp + vhp`.
    pub max_half_perimeter: Option<u32>,
    pub max_hhp: Option<u32>,
    /// Exact vertical bond count `2V`.
    pub vertical_bonds: Option<u32>,
    /// Exact row profile, top row first.
    pub profile: Option<RowProfile>,
}

struct Walk<'a> {
    limits: &'a GenerationLimits,
    /// Per-row caps, bottom row first, from the profile filter.
    row_caps: Option<Vec<u32>>,
    max_steps: u32,
    max_h: u32,
    max_v: u32,
    path: Vec<Point>,
    occupied: std::collections::HashSet<Point>,
    row_counts: Vec<u32>,
    h: u32,
    v: u32,
}

const STEPS: [(i32, i32); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

impl<'a> Walk<'a> {
    fn allowed(p: Point) -> bool {
        p.1 > 0 || (p.1 == 0 && p.0 >= 0)
    }

    fn feasible(&self, p: Point, h: u32, v: u32) -> bool {
        let (dx, dy) = (p.0.unsigned_abs(), p.1.unsigned_abs());
        h + v + dx + dy <= self.max_steps && h + dx <= self.max_h && v + dy <= self.max_v
    }

    fn accept(&self) -> bool {
        if let Some(two_v) = self.limits.vertical_bonds {
            if self.v != two_v {
                return false;
            }
        }
        match &self.row_caps {
            Some(caps) => self.row_counts == *caps,
            None => true,
        }
    }

    fn grow(&mut self, emit: &mut dyn FnMut(&Polygon)) {
        let here = *self.path.last().expect("rooted path");
        for (dx, dy) in STEPS {
            let next = (here.0 + dx, here.1 + dy);
            let (nh, nv) = (self.h + (dx != 0) as u32, self.v + (dy != 0) as u32);
            let row = here.1.min(next.1);
            if dy != 0 {
                if let Some(caps) = &self.row_caps {
                    let r = row as usize;
                    if r >= caps.len() || self.row_counts[r] >= caps[r] {
                        continue;
                    }
                }
            }
            if next == (0, 0) {
                if here == (0, 1) && self.path.len() > 2 {
                    self.v += 1;
                    if self.row_caps.is_some() {
                        self.row_counts[0] += 1;
                    }
                    if self.accept() {
                        emit(&Polygon::from_cycle(&self.path));
                    }
                    if self.row_caps.is_some() {
                        self.row_counts[0] -= 1;
                    }
                    self.v -= 1;
                }
                continue;
            }
            if !Self::allowed(next) || self.occupied.contains(&next) || !self.feasible(next, nh, nv)
            {
                continue;
            }
            if dy != 0 && self.row_caps.is_some() {
                self.row_counts[row as usize] += 1;
            }
            let (h, v) = (self.h, self.v);
            self.h = nh;
            self.v = nv;
            self.path.push(next);
            self.occupied.insert(next);
            self.grow(emit);
            self.occupied.remove(&next);
            self.path.pop();
            self.h = h;
            self.v = v;
            if dy != 0 && self.row_caps.is_some() {
                self.row_counts[row as usize] -= 1;
            }
        }
    }
}

/// Calls `emit` once for every polygon (up to translation) within `limits`.
/// At least one of the perimeter bounds must be finite.
pub fn for_each_polygon(limits: &GenerationLimits, mut emit: impl FnMut(&Polygon)) {
    let half = |x: Option<u32>| x.map(|b| 2 * b).unwrap_or(u32::MAX);
    let max_v = match (limits.vertical_bonds, &limits.profile) {
        (Some(v), _) => v,
        (None, Some(p)) => p.total(),
        (None, None) => u32::MAX,
    };
    let max_h = half(limits.max_hhp);
    let max_steps = half(limits.max_half_perimeter).min(max_h.saturating_add(max_v));
    assert!(max_steps < u32::MAX, "generation needs a finite perimeter bound");
    let row_caps = limits.profile.as_ref().map(|p| {
        let mut caps = p.0.clone();
        caps.reverse();
        caps
    });
    let rows = row_caps.as_ref().map_or(0, Vec::len);
    let mut walk = Walk {
        limits,
        row_caps,
        max_steps,
        max_h,
        max_v,
        path: vec![(0, 0), (1, 0)],
        occupied: [(0, 0), (1, 0)].into_iter().collect(),
        row_counts: vec![0; rows],
        h: 1,
        v: 0,
    };
    if walk.feasible((1, 0), 1, 0) {
        walk.grow(&mut emit);
    }
}

/// Every polygon with `hhp + vhp <= bound`.
pub fn generate_all(bound: u32) -> Vec<Polygon> {
    let limits = GenerationLimits {
        max_half_perimeter: Some(bound),
        ..Default::default()
    };
    let mut out = Vec::new();
    for_each_polygon(&limits, |p| out.push(p.clone()));
    out
}

/// Polygons with exactly `two_v` vertical bonds and `hhp <= max_hhp`,
/// optionally restricted to an exact row profile.
pub fn generate_with_vertical_bonds(
    two_v: u32,
    max_hhp: u32,
    profile: Option<&RowProfile>,
) -> Vec<Polygon> {
    let limits = GenerationLimits {
        max_hhp: Some(max_hhp),
        vertical_bonds: Some(two_v),
        profile: profile.cloned(),
        ..Default::default()
    };
    let mut out = Vec::new();
    for_each_polygon(&limits, |p| out.push(p.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    #[test]
    fn counts_by_half_perimeter() {
        let all = generate_all(7);
        let mut by: BTreeMap<u32, usize> = BTreeMap::new();
        for p in &all {
            *by.entry(p.hhp() + p.vhp()).or_default() += 1;
        }
        assert_eq!(by, BTreeMap::from([(2, 1), (3, 2), (4, 7), (5, 28), (6, 124), (7, 588)]));
        let distinct: BTreeSet<&Polygon> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        for p in &all {
            assert_eq!(super::super::validate(p.bonds().to_vec()).as_ref(), Ok(p));
        }
    }

    #[test]
    fn small_bounds() {
        assert_eq!(generate_all(2).len(), 1);
        assert_eq!(generate_all(3).len(), 3);
    }

    #[test]
    fn single_row_rectangles() {
        let ps = generate_with_vertical_bonds(2, 5, None);
        assert_eq!(ps.len(), 5);
        assert!(ps.iter().all(|p| p.height() == 1));
    }

    #[test]
    fn four_vertical_bonds() {
        let ps = generate_with_vertical_bonds(4, 2, None);
        // The vertical domino (hhp 1), the 2x2 square and four L-trominoes.
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().filter(|p| p.hhp() == 2).count(), 5);
    }

    #[test]
    fn profile_filter() {
        let prof = RowProfile::alternating_242(3);
        let ps = generate_with_vertical_bonds(8, 6, Some(&prof));
        assert!(!ps.is_empty());
        assert!(ps.iter().all(|p| p.profile() == prof));
        let unfiltered = generate_with_vertical_bonds(8, 6, None);
        let expect: BTreeSet<&Polygon> = unfiltered.iter().filter(|p| p.profile() == prof).collect();
        assert_eq!(ps.iter().collect::<BTreeSet<_>>(), expect);
    }
}
