//! Square-lattice self-avoiding polygons: representation, validation,
//! measurement and exhaustive generation.

mod cells;
mod generate;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use generate::{
    for_each_polygon, generate_all, generate_with_vertical_bonds, GenerationLimits,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Unit bond from `(x, y)` to `(x + 1, y)` or `(x, y + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bond {
    pub x: i32,
    pub y: i32,
    pub orientation: Orientation,
}

pub type Point = (i32, i32);

impl Bond {
    pub fn horizontal(x: i32, y: i32) -> Bond {
        Bond { x, y, orientation: Orientation::Horizontal }
    }

    pub fn vertical(x: i32, y: i32) -> Bond {
        Bond { x, y, orientation: Orientation::Vertical }
    }

    /// The bond joining two lattice points at distance one.
    pub fn between(a: Point, b: Point) -> Option<Bond> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match (hi.0 - lo.0, hi.1 - lo.1) {
            (1, 0) => Some(Bond::horizontal(lo.0, lo.1)),
            (0, 1) => Some(Bond::vertical(lo.0, lo.1)),
            _ => None,
        }
    }

    pub fn endpoints(&self) -> [Point; 2] {
        match self.orientation {
            Orientation::Horizontal => [(self.x, self.y), (self.x + 1, self.y)],
            Orientation::Vertical => [(self.x, self.y), (self.x, self.y + 1)],
        }
    }

    fn shifted(&self, dx: i32, dy: i32) -> Bond {
        Bond { x: self.x + dx, y: self.y + dy, ..*self }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("empty bond set")]
    Empty,
    #[error("vertex ({x},{y}) has degree {degree}")]
    Degree { x: i32, y: i32, degree: usize },
    #[error("bond set is disconnected")]
    Disconnected,
    #[error("segment {0:?} is not a unit lattice bond")]
    NotUnitBond([Point; 2]),
    #[error("repeated bond {0:?}")]
    Repeated([Point; 2]),
    #[error("malformed polygon file: {0}")]
    Format(String),
}

/// A self-avoiding polygon, translated so that its minimal x and y are 0.
/// Bonds are sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polygon {
    bonds: Vec<Bond>,
}

/// Vertical-bond counts per row, top row first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RowProfile(pub Vec<u32>);

impl RowProfile {
    /// `(2, 4, 2, ..., 4, 2)` with `rows` entries (`rows` odd).
    pub fn alternating_242(rows: usize) -> RowProfile {
        RowProfile((0..rows).map(|i| if i % 2 == 0 { 2 } else { 4 }).collect())
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for RowProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Measure {
    pub hhp: u32,
    pub vhp: u32,
    pub profile: RowProfile,
}

/// Checks the degree-two and connectivity conditions and normalizes.
pub fn validate(bonds: impl IntoIterator<Item = Bond>) -> Result<Polygon, PolygonError> {
    let mut list: Vec<Bond> = bonds.into_iter().collect();
    if list.is_empty() {
        return Err(PolygonError::Empty);
    }
    list.sort();
    if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
        return Err(PolygonError::Repeated(w[0].endpoints()));
    }
    let mut adjacency: HashMap<Point, Vec<Point>> = HashMap::new();
    for b in &list {
        let [p, q] = b.endpoints();
        adjacency.entry(p).or_default().push(q);
        adjacency.entry(q).or_default().push(p);
    }
    let mut degrees: Vec<(&Point, usize)> =
        adjacency.iter().map(|(p, n)| (p, n.len())).collect();
    degrees.sort();
    if let Some((p, d)) = degrees.into_iter().find(|(_, d)| *d != 2) {
        return Err(PolygonError::Degree { x: p.0, y: p.1, degree: d });
    }
    let start = list[0].endpoints()[0];
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for q in &adjacency[&p] {
            if seen.insert(*q) {
                stack.push(*q);
            }
        }
    }
    if seen.len() != adjacency.len() {
        return Err(PolygonError::Disconnected);
    }
    Ok(Polygon::normalized(list))
}

/// Validates a list of segments given by their endpoints.
pub fn validate_segments(
    segments: impl IntoIterator<Item = [Point; 2]>,
) -> Result<Polygon, PolygonError> {
    let bonds = segments
        .into_iter()
        .map(|[a, b]| Bond::between(a, b).ok_or(PolygonError::NotUnitBond([a, b])))
        .collect::<Result<Vec<_>, _>>()?;
    validate(bonds)
}

pub fn measure(p: &Polygon) -> Measure {
    Measure {
        hhp: p.hhp(),
        vhp: p.vhp(),
        profile: p.profile(),
    }
}

impl Polygon {
    /// Translates so the minimal coordinates are zero and sorts.
    fn normalized(mut bonds: Vec<Bond>) -> Polygon {
        let min_x = bonds.iter().map(|b| b.x).min().unwrap_or(0);
        let min_y = bonds.iter().map(|b| b.y).min().unwrap_or(0);
        for b in bonds.iter_mut() {
            *b = b.shifted(-min_x, -min_y);
        }
        bonds.sort();
        Polygon { bonds }
    }

    /// Builds from a closed vertex walk `v_0, v_1, ..., v_{k-1}` (the edge
    /// `v_{k-1} v_0` is implied). The walk must be self-avoiding.
    pub(crate) fn from_cycle(points: &[Point]) -> Polygon {
        let n = points.len();
        let bonds = (0..n)
            .map(|i| Bond::between(points[i], points[(i + 1) % n]).expect("unit step"))
            .collect();
        Polygon::normalized(bonds)
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn hhp(&self) -> u32 {
        self.count(Orientation::Horizontal) / 2
    }

    pub fn vhp(&self) -> u32 {
        self.count(Orientation::Vertical) / 2
    }

    fn count(&self, o: Orientation) -> u32 {
        self.bonds.iter().filter(|b| b.orientation == o).count() as u32
    }

    pub fn width(&self) -> i32 {
        self.bonds.iter().map(|b| b.endpoints()[1].0).max().unwrap_or(0)
    }

    pub fn height(&self) -> i32 {
        self.bonds.iter().map(|b| b.endpoints()[1].1).max().unwrap_or(0)
    }

    /// Sorted x positions of the vertical bonds in each row, bottom row first.
    pub fn vertical_bonds_by_row(&self) -> Vec<Vec<i32>> {
        let mut rows = vec![Vec::new(); self.height() as usize];
        for b in &self.bonds {
            if b.orientation == Orientation::Vertical {
                rows[b.y as usize].push(b.x);
            }
        }
        for r in rows.iter_mut() {
            r.sort_unstable();
        }
        rows
    }

    pub fn profile(&self) -> RowProfile {
        RowProfile(
            self.vertical_bonds_by_row()
                .iter()
                .rev()
                .map(|r| r.len() as u32)
                .collect(),
        )
    }

    /// Interior unit cells `(x, y)` (lower-left corners), by crossing parity.
    pub fn cells(&self) -> BTreeSet<Point> {
        let mut out = BTreeSet::new();
        for (y, xs) in self.vertical_bonds_by_row().iter().enumerate() {
            for pair in xs.chunks(2) {
                for x in pair[0]..pair[1] {
                    out.insert((x, y as i32));
                }
            }
        }
        out
    }

    /// Boundary vertices with their two neighbours.
    pub fn adjacency(&self) -> BTreeMap<Point, Vec<Point>> {
        let mut adj: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
        for b in &self.bonds {
            let [p, q] = b.endpoints();
            adj.entry(p).or_default().push(q);
            adj.entry(q).or_default().push(p);
        }
        adj
    }

    pub fn segments(&self) -> Vec<[Point; 2]> {
        self.bonds.iter().map(Bond::endpoints).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.segments()).expect("segments serialize")
    }

    pub fn from_json(text: &str) -> Result<Polygon, PolygonError> {
        let segments: Vec<[Point; 2]> =
            serde_json::from_str(text).map_err(|e| PolygonError::Format(e.to_string()))?;
        validate_segments(segments)
    }

    /// ASCII drawing, top row first; `#` marks interior cells.
    pub fn render(&self) -> String {
        let cells = self.cells();
        let mut out = String::new();
        for y in (0..self.height()).rev() {
            for x in 0..self.width() {
                out.push(if cells.contains(&(x, y)) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

/// Reads polygons from text holding either one JSON bond list per line or a
/// single JSON list of bond lists.
pub fn read_polygons(text: &str) -> Result<Vec<Polygon>, PolygonError> {
    let trimmed = text.trim();
    if let Ok(many) = serde_json::from_str::<Vec<Vec<[Point; 2]>>>(trimmed) {
        return many.into_iter().map(validate_segments).collect();
    }
    trimmed
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(Polygon::from_json)
        .collect()
}
