use std::collections::{BTreeMap, BTreeSet};

use haruspex_core::enumerator::{enumerate, Budget, EnumerationParams};
use haruspex_core::polygon::{
    generate_all, generate_with_vertical_bonds, read_polygons, validate_segments, Polygon, PolygonError,
    RowProfile,
};

#[test]
fn exhaustive_generation_agrees_with_transfer_matrix() {
    let mut oracle: BTreeMap<(u32, u32), u128> = BTreeMap::new();
    for p in generate_all(8) {
        *oracle.entry((p.hhp(), p.vhp())).or_default() += 1;
    }
    let table = enumerate(&EnumerationParams { n_max: 7, m_max: 7, profile: None }, &Budget::default()).unwrap();
    for m in 1..=7 {
        for n in 1..=8 - m {
            assert_eq!(table.get(m, n), Some(oracle.get(&(m, n)).copied().unwrap_or(0)), "a({m},{n})");
        }
    }
}

#[test]
fn generation_is_duplicate_free_and_valid() {
    let all = generate_all(8);
    let distinct: BTreeSet<&Polygon> = all.iter().collect();
    assert_eq!(distinct.len(), all.len());
    for p in &all {
        let again = validate_segments(p.segments()).unwrap();
        assert_eq!(&again, p);
        assert!(p.profile().0.iter().all(|r| r % 2 == 0 && *r > 0));
    }
}

#[test]
fn counts_by_half_perimeter() {
    let all = generate_all(7);
    let mut by_size = BTreeMap::new();
    for p in &all {
        *by_size.entry(p.hhp() + p.vhp()).or_insert(0) += 1;
    }
    assert_eq!(by_size, BTreeMap::from([(2, 1), (3, 2), (4, 7), (5, 28), (6, 124), (7, 588)]));
}

#[test]
fn rectangles_with_two_vertical_bonds() {
    let rows = generate_with_vertical_bonds(2, 5, None);
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|p| p.height() == 1));
}

#[test]
fn four_vertical_bonds_up_to_two_columns() {
    let ps = generate_with_vertical_bonds(4, 2, None);
    // 2x2 square, four L-trominoes and the vertical domino.
    assert_eq!(ps.len(), 6);
    assert_eq!(ps.iter().filter(|p| p.hhp() == 2).count(), 5);
}

#[test]
fn profile_filter_keeps_only_242() {
    let profile = RowProfile::alternating_242(3);
    let ps = generate_with_vertical_bonds(8, 6, Some(&profile));
    assert!(!ps.is_empty());
    assert!(ps.iter().all(|p| p.profile() == profile));
}

#[test]
fn file_formats() {
    let square = "[[[0,0],[1,0]],[[1,0],[1,1]],[[1,1],[0,1]],[[0,1],[0,0]]]";
    let one = read_polygons(square).unwrap();
    let lines = read_polygons(&format!("[{square}]")).unwrap();
    assert_eq!(one, lines);
    let shifted = read_polygons("[[[5,5],[6,5]],[[6,5],[6,6]],[[6,6],[5,6]],[[5,6],[5,5]]]").unwrap();
    assert_eq!(shifted, one, "translation is normalized away");
    assert_eq!(Polygon::from_json(&one[0].to_json()).unwrap(), one[0]);
}

#[test]
fn rejects_malformed_input() {
    assert!(matches!(validate_segments(vec![]), Err(PolygonError::Empty)));
    assert!(read_polygons("[[[0,0],[2,0]]]").is_err());
    assert!(read_polygons("not json").is_err());
    // Two disjoint unit squares.
    let two = "[[[0,0],[1,0]],[[1,0],[1,1]],[[1,1],[0,1]],[[0,1],[0,0]],\
               [[3,0],[4,0]],[[4,0],[4,1]],[[4,1],[3,1]],[[3,1],[3,0]]]";
    assert!(read_polygons(two).is_err());
}
