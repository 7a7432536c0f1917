use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cofil_core::chains::{Chain, Ring};
use cofil_core::complex::Simplex;
use cofil_core::format::{parse_filtration, write_filtration};
use cofil_core::persistence::{
    cofiltration_of_spanning_trees, is_cofiltration, precover, precover_map_and_check, subfiltration_of_spanning_trees,
    Filtration, PersistenceError, DEFAULT_SEARCH_BUDGET,
};
use cofil_core::spanning::{cycle_basis_rel_tree, is_spanning_tree};
use cofil_core::{fixtures, random, Poset};

/// Random filtration over the chain `0 < 1 < ... < len-1`.
fn chain_filtration(rng: &mut StdRng, len: usize) -> Filtration {
    let x = random::random_graph(rng, 6);
    let poset = Poset::chain(len).unwrap();
    let mut grade: BTreeMap<Simplex, usize> = BTreeMap::new();
    for s in x.simplices() {
        let g = s.facets().map(|f| grade[&f]).fold(rng.random_range(0..len), usize::max);
        grade.insert(s.clone(), g);
    }
    Filtration::new(poset, x, grade.into_iter().map(|(s, g)| (s, vec![g]))).unwrap()
}

#[test]
fn totally_ordered_grades_admit_nested_trees() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..40 {
        let f = chain_filtration(&mut rng, 4);
        let trees = subfiltration_of_spanning_trees(&f, DEFAULT_SEARCH_BUDGET)
            .unwrap()
            .expect("chains admit nested trees");
        for q in 0..4 {
            let xq = f.at(q);
            assert_eq!(is_spanning_tree(&xq, &trees[q].simplices(&xq)), Ok(()));
            if q > 0 {
                assert!(trees[q - 1].edges().is_subset(trees[q].edges()));
            }
        }
        // a nonzero cycle of X^q never lies in the chains of a later tree
        for q in 0..4 {
            let xq = f.at(q);
            let basis = cycle_basis_rel_tree(&xq, &trees[q], Ring::Integers).unwrap();
            for later in &trees[q..] {
                for (_, z) in &basis {
                    assert!(!z.support().all(|s| later.contains(s)));
                }
                let mut sum = Chain::zero(Ring::Integers, 1);
                for (_, z) in &basis {
                    let k = Ring::Integers.from_int(rng.random_range(-3..=3));
                    sum = sum.add(&z.scale(&k).unwrap()).unwrap();
                }
                assert!(sum.is_zero() || !sum.support().all(|s| later.contains(s)));
            }
        }
    }
}

#[test]
fn constant_filtration_has_a_constant_subfiltration() {
    let f = Filtration::constant(Poset::grid(&[2, 3]).unwrap(), fixtures::projective_plane()).unwrap();
    let trees = subfiltration_of_spanning_trees(&f, DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
    assert!(trees.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn search_budget_is_reported() {
    let f = Filtration::constant(Poset::chain(2).unwrap(), fixtures::projective_plane()).unwrap();
    assert!(matches!(
        subfiltration_of_spanning_trees(&f, 10),
        Err(PersistenceError::SearchBudgetExceeded { .. })
    ));
}

#[test]
fn random_filtrations_round_trip_through_text() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut multi = 0;
    for _ in 0..50 {
        let f = random::random_filtration(&mut rng, 8, 3);
        multi += f
            .total_complex()
            .simplices()
            .iter()
            .filter(|s| f.entry_grades(s).unwrap().len() > 1)
            .count();
        let text = write_filtration(&f);
        assert_eq!(parse_filtration(&text).unwrap(), f);
        assert_eq!(write_filtration(&parse_filtration(&text).unwrap()), text);
    }
    assert!(multi > 0, "generator never produced a multi-critical entry");
}

#[test]
fn random_cofiltrations_are_valid() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..30 {
        let f = random::random_filtration(&mut rng, 8, 3);
        let t = cofiltration_of_spanning_trees(&f);
        assert_eq!(is_cofiltration(&f, t.trees()), Ok(()));
    }
}

#[test]
fn acyclic_filtration_has_empty_precover() {
    let x = cofil_core::OrderedSimplicialComplex::from_simplices([vec![1, 2], vec![2, 3], vec![2, 4]]).unwrap();
    let f = Filtration::constant(Poset::grid(&[2, 2]).unwrap(), x).unwrap();
    let p = precover(&f, Ring::Integers).unwrap();
    assert!(p.summands.is_empty());
    assert!(precover_map_and_check(&f, &p).iter().all(|c| c.surjective && c.cycle_rank == 0));
}

#[test]
fn hollow_triangle_precover_is_one_principal_summand() {
    let text = include_str!("../fixtures/hollow_triangle.filt");
    let f = parse_filtration(text).unwrap();
    let p = precover(&f, Ring::Integers).unwrap();
    assert_eq!(p.summands.len(), 1);
    assert_eq!(p.summands[0].classes.len(), 1);
    let u = &p.summands[0].classes[0].upper_set;
    assert_eq!(u.generators(f.poset()).len(), 1);
    assert_eq!(p.summands[0].edge, f.simplex_by_labels(&["2", "3"]).unwrap());
}

#[test]
fn hollow_tetrahedron_fixture() {
    let f = parse_filtration(include_str!("../fixtures/hollow_tetrahedron.filt")).unwrap();
    for ring in [Ring::Integers, Ring::Prime(3)] {
        let p = precover(&f, ring).unwrap();
        let checks = precover_map_and_check(&f, &p);
        assert!(checks.iter().all(|c| c.surjective));
        let top = f.poset().index_of("1,1").unwrap();
        assert_eq!((checks[top].cycle_rank, checks[top].h1_rank), (3, 0));
    }
}
