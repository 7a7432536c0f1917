//! Seeded workloads for the benchmarks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cofil_core::oracle::IntegerMatrix;
use cofil_core::persistence::Filtration;
use cofil_core::{random, OrderedSimplicialComplex, Vertex};

/// `G(n, p)` on vertices `0..n`.
pub fn graph(n: u32, p: f64, seed: u64) -> OrderedSimplicialComplex {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut gens: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                gens.push(vec![a, b]);
            }
        }
    }
    OrderedSimplicialComplex::from_simplices(gens).expect("valid simplices")
}

/// Random filtrations over the `side × side` grid.
pub fn filtrations(count: usize, max_vertices: usize, side: usize, seed: u64) -> Vec<Filtration> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random::random_filtration(&mut rng, max_vertices, side)).collect()
}

pub fn matrix(rows: usize, cols: usize, seed: u64) -> IntegerMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    random::random_matrix(&mut rng, rows, cols, -9, 9)
}

/// Random 2-complex on at most `max_vertices` vertices.
pub fn two_complex(max_vertices: usize, seed: u64) -> OrderedSimplicialComplex {
    let mut rng = StdRng::seed_from_u64(seed);
    random::random_two_complex(&mut rng, max_vertices)
}
