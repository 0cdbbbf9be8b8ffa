use std::collections::BTreeMap;

use haruspex_core::haruspicy::{
    construct_hook, construct_many, decompose, delete_duplicate, duplicates, reduce_minimal, reduction_outcomes,
    sigma, HaruspicyError,
};
use haruspex_core::polygon::{generate_all, read_polygons, Polygon};

fn rect(w: i32, h: i32) -> Polygon {
    Polygon::from_cells(&(0..w).flat_map(|x| (0..h).map(move |y| (x, y))).collect()).unwrap()
}

#[test]
fn figure_polygon_has_three_pages_of_two_sections() {
    let p = read_polygons(include_str!("fixtures/three_pages.json")).unwrap().remove(0);
    let d = decompose(&p);
    assert_eq!(d.pages.len(), 3);
    assert!(d.pages.iter().all(|g| g.sections.len() == 2));
    assert_eq!(d.between_page_vertical_bonds, 10);
    assert_eq!(d.within_page_vertical_bonds, 4);
}

#[test]
fn rectangles() {
    assert_eq!(sigma(&rect(1, 1)), BTreeMap::from([(1, 1)]));
    assert_eq!(sigma(&rect(2, 2)), BTreeMap::from([(1, 2)]));
    let d = decompose(&rect(3, 1));
    assert_eq!((d.pages.len(), d.sections.len()), (1, 3));
    assert_eq!(reduce_minimal(&rect(5, 1)), rect(1, 1));
}

#[test]
fn deleting_a_column_of_the_square() {
    let sq = rect(2, 2);
    let d = decompose(&sq);
    let dup = duplicates(&sq, &d);
    assert!(!dup.is_empty());
    let out = delete_duplicate(&sq, dup[0]).unwrap();
    assert_eq!((out.hhp(), out.vhp()), (1, 2));
}

#[test]
fn only_duplicates_can_be_deleted() {
    let hook = construct_hook(2);
    let d = decompose(&hook);
    assert!(duplicates(&hook, &d).is_empty());
    assert!(matches!(delete_duplicate(&hook, 0), Err(HaruspicyError::NotDuplicate(_))));
    assert!(matches!(delete_duplicate(&hook, 999), Err(HaruspicyError::NoSuchSection(_))));
}

#[test]
fn deletion_drops_k_horizontal_half_perimeter() {
    for p in generate_all(7) {
        let d = decompose(&p);
        for id in duplicates(&p, &d) {
            let k = d.sections[id].k;
            let q = delete_duplicate(&p, id).unwrap();
            assert_eq!(q.hhp() + k, p.hhp());
            assert_eq!(q.vhp(), p.vhp());
        }
    }
}

#[test]
fn every_horizontal_bond_in_one_section() {
    for p in generate_all(7) {
        let d = decompose(&p);
        let bonds: usize = d.sections.iter().map(|s| s.bonds.len()).sum();
        assert_eq!(bonds as u32, 2 * p.hhp());
        assert_eq!(d.between_page_vertical_bonds + d.within_page_vertical_bonds, 2 * p.vhp());
        assert!(d.sections.iter().all(|s| s.k >= 1 && s.bonds.len() == 2 * s.k as usize));
    }
}

#[test]
fn reduction_is_confluent_on_small_polygons() {
    for p in generate_all(6) {
        let outs = reduction_outcomes(&p).unwrap();
        assert_eq!(outs.len(), 1);
        assert!(outs.contains(&reduce_minimal(&p)));
    }
}

#[test]
fn hook_witnesses() {
    for k in 1..=4 {
        let h = construct_hook(k);
        assert_eq!(2 * h.vhp(), 6 * k - 4);
        assert_eq!(sigma(&h).get(&k), Some(&1));
        assert_eq!(reduce_minimal(&h), h);
    }
    assert_eq!(construct_hook(1), rect(1, 1));
}

#[test]
fn many_sections() {
    for (k, m) in [(1, 0), (1, 2), (2, 1), (2, 2), (3, 1)] {
        let p = construct_many(k, m);
        assert_eq!(2 * p.vhp(), 6 * k - 4 + 2 * m, "k={k} M={m}");
        assert_eq!(sigma(&p).get(&k), Some(&(2 * m + 1)), "k={k} M={m}");
    }
    assert_eq!(construct_many(3, 0), construct_hook(3));
}
