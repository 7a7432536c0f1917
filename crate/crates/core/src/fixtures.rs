//! Small named complexes and filtrations.

use std::collections::BTreeMap;

use crate::complex::{OrderedSimplicialComplex, Simplex, SimplicialMap, Vertex};
use crate::persistence::Filtration;
use crate::poset::Poset;

fn complex(gens: &[&[Vertex]]) -> OrderedSimplicialComplex {
    OrderedSimplicialComplex::from_simplices(gens.iter().map(|g| g.to_vec())).expect("valid generators")
}

/// Edges 12, 13, 23.
pub fn hollow_triangle() -> OrderedSimplicialComplex {
    complex(&[&[1, 2], &[1, 3], &[2, 3]])
}

pub fn full_triangle() -> OrderedSimplicialComplex {
    complex(&[&[1, 2, 3]])
}

/// The four triangles of the 3-simplex on vertices 1..4.
pub fn tetrahedron_boundary() -> OrderedSimplicialComplex {
    complex(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
}

/// Six-vertex triangulation of the real projective plane.
pub fn projective_plane() -> OrderedSimplicialComplex {
    complex(&[
        &[1, 2, 3],
        &[1, 3, 4],
        &[1, 4, 5],
        &[1, 5, 6],
        &[1, 2, 6],
        &[2, 3, 5],
        &[3, 4, 6],
        &[2, 4, 5],
        &[3, 5, 6],
        &[2, 4, 6],
    ])
}

/// Two triangles `[1,2,4]` and `[1,3,5]` sharing vertex 1, folded onto the
/// triangle `[1,2,3]` by `1↦1, 2↦2, 3↦2, 4↦3, 5↦3`.
pub fn wedge_onto_triangle() -> (SimplicialMap, OrderedSimplicialComplex, OrderedSimplicialComplex) {
    let x = complex(&[&[1, 2, 4], &[1, 3, 5]]);
    let y = full_triangle();
    let map = SimplicialMap::new(BTreeMap::from([(1, 1), (2, 2), (3, 2), (4, 3), (5, 3)]));
    (map, x, y)
}

/// The square with a bicritical diagonal over the 3×3 grid; vertex ids
/// `0..4` carry labels `1..4`.
pub fn square_filtration() -> Filtration {
    let poset = Poset::grid(&[3, 3]).expect("nonempty grid");
    let g = |id: &str| poset.index_of(id).expect("grid id");
    let x = OrderedSimplicialComplex::from_simplices([vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 3], vec![2, 3]])
        .expect("edges");
    let mut entry: Vec<(Simplex, Vec<usize>)> = (0..4).map(|v| (Simplex::vertex(v), vec![g("0,0")])).collect();
    entry.extend([
        (Simplex::edge(0, 1), vec![g("0,1")]),
        (Simplex::edge(0, 2), vec![g("1,0")]),
        (Simplex::edge(0, 3), vec![g("2,0"), g("0,2")]),
        (Simplex::edge(1, 3), vec![g("0,1")]),
        (Simplex::edge(2, 3), vec![g("1,0")]),
    ]);
    let labels = (1..=4).map(|v: u32| v.to_string()).collect();
    Filtration::with_labels(poset, x, entry, labels).expect("faces enter first")
}
