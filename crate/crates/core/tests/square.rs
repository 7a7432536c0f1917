use std::collections::BTreeSet;

use cofil_core::chains::{Chain, Ring};
use cofil_core::fixtures::square_filtration;
use cofil_core::persistence::{
    cofiltration_of_spanning_trees, colimit_persistent_set, is_cofiltration, precover, precover_map_and_check,
    representative_persistent_set, subfiltration_of_spanning_trees, upper_set_decompose, CofiltrationDefect,
    Filtration, DEFAULT_SEARCH_BUDGET,
};
use cofil_core::spanning::SpanningTree;
use cofil_core::Simplex;

fn f() -> Filtration {
    square_filtration()
}

/// Edge by its labels, e.g. `e(&f, "2 4")`.
fn e(f: &Filtration, labels: &str) -> Simplex {
    let parts: Vec<&str> = labels.split(' ').collect();
    f.simplex_by_labels(&parts).unwrap()
}

fn q(f: &Filtration, id: &str) -> usize {
    f.poset().index_of(id).unwrap()
}

fn edges(f: &Filtration, labels: &[&str]) -> BTreeSet<Simplex> {
    labels.iter().map(|l| e(f, l)).collect()
}

fn chain(f: &Filtration, terms: &[(&str, i64)]) -> Chain {
    Chain::from_terms(Ring::Integers, 1, terms.iter().map(|&(l, k)| (e(f, l), k))).unwrap()
}

fn up(f: &Filtration, gens: &[&str]) -> BTreeSet<usize> {
    let g: Vec<usize> = gens.iter().map(|id| q(f, id)).collect();
    f.poset().upper_closure(&g).members().clone()
}

#[test]
fn frames() {
    let f = f();
    let bottom = f.filtration_at("0,0").unwrap();
    assert_eq!((bottom.count_of_dim(0), bottom.count_of_dim(1)), (4, 0));
    assert_eq!(f.filtration_at("0,1").unwrap().count_of_dim(1), 2);
    assert_eq!(f.filtration_at("1,1").unwrap().count_of_dim(1), 4);
    assert_eq!(f.filtration_at("2,2").unwrap(), *f.total_complex());
    assert!(f.filtration_at("3,0").is_err());
}

#[test]
fn cofiltration_trees() {
    let f = f();
    let t = cofiltration_of_spanning_trees(&f);
    assert_eq!(is_cofiltration(&f, t.trees()), Ok(()));
    assert_eq!(*t.tree(q(&f, "1,1")).edges(), edges(&f, &["1 2", "1 3", "2 4"]));
    assert_eq!(t.complement(&f, q(&f, "1,1")), vec![e(&f, "3 4")]);
    assert_eq!(t.complement(&f, q(&f, "0,2")), vec![e(&f, "2 4")]);
    assert_eq!(t.complement(&f, q(&f, "2,0")), vec![e(&f, "3 4")]);
    assert_eq!(t.complement(&f, q(&f, "2,2")), vec![e(&f, "2 4"), e(&f, "3 4")]);
}

#[test]
fn broken_cofiltration_is_detected() {
    let f = f();
    let mut trees = cofiltration_of_spanning_trees(&f).trees().to_vec();
    // complement {1 2} at (1,1) but 1 2 kept at (1,2)
    trees[q(&f, "1,1")] = SpanningTree::from_edges(edges(&f, &["1 3", "2 4", "3 4"]));
    trees[q(&f, "1,2")] = SpanningTree::from_edges(edges(&f, &["1 2", "1 3", "1 4"]));
    assert!(matches!(
        is_cofiltration(&f, &trees),
        Err(CofiltrationDefect::ComplementNotMonotone { .. })
    ));
}

#[test]
fn no_subfiltration() {
    assert_eq!(subfiltration_of_spanning_trees(&f(), DEFAULT_SEARCH_BUDGET), Ok(None));
}

#[test]
fn representative_sets() {
    let f = f();
    let t = cofiltration_of_spanning_trees(&f);
    let z24 = chain(&f, &[("2 4", 1), ("1 4", -1), ("1 2", 1)]);
    let za = chain(&f, &[("3 4", 1), ("2 4", -1), ("1 2", -1), ("1 3", 1)]);
    let zb = chain(&f, &[("3 4", 1), ("1 4", -1), ("1 3", 1)]);

    let b24 = representative_persistent_set(&f, &t, &e(&f, "2 4"), Ring::Integers).unwrap();
    assert_eq!(b24.fiber(q(&f, "2,2")), std::slice::from_ref(&z24));
    assert!(b24.fiber(q(&f, "1,1")).is_empty());
    let d24 = upper_set_decompose(&b24).unwrap();
    assert_eq!(d24.len(), 1);
    assert_eq!(d24[0].element, z24);
    assert_eq!(*d24[0].upper_set.members(), up(&f, &["0,2", "2,1"]));

    let b34 = representative_persistent_set(&f, &t, &e(&f, "3 4"), Ring::Integers).unwrap();
    let fiber: BTreeSet<Chain> = b34.fiber(q(&f, "1,2")).iter().cloned().collect();
    assert_eq!(fiber, BTreeSet::from([za.clone(), zb.clone()]));
    let colim = colimit_persistent_set(&b34);
    assert!((0..9).all(|g| colim.is_injective_at(g)));
    let d34 = upper_set_decompose(&b34).unwrap();
    let got: BTreeSet<(Chain, BTreeSet<usize>)> =
        d34.into_iter().map(|c| (c.element, c.upper_set.members().clone())).collect();
    assert_eq!(
        got,
        BTreeSet::from([(za, up(&f, &["1,1"])), (zb, up(&f, &["2,0", "1,2"]))])
    );

    assert!(representative_persistent_set(&f, &t, &e(&f, "1 2"), Ring::Integers).is_err());
}

#[test]
fn precover_ranks() {
    let f = f();
    for ring in [Ring::Integers, Ring::Rationals, Ring::Prime(2)] {
        let p = precover(&f, ring).unwrap();
        assert_eq!(p.classes().count(), 3);
        let checks = precover_map_and_check(&f, &p);
        assert!(checks.iter().all(|c| c.surjective));
        let at = |id: &str| &checks[q(&f, id)];
        assert_eq!((at("2,2").precover_rank, at("2,2").cycle_rank, at("2,2").image_rank), (3, 2, 2));
        assert_eq!((at("1,1").image_rank, at("1,1").cycle_rank), (1, 1));
        assert_eq!((at("0,0").precover_rank, at("0,0").image_rank, at("0,0").cycle_rank), (0, 0, 0));
    }
}
