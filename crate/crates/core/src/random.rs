//! Seeded random instances for property tests and benchmarks.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::chains::{Chain, Ring};
use crate::complex::{OrderedSimplicialComplex, Simplex, Vertex};
use crate::oracle::IntegerMatrix;
use crate::persistence::Filtration;
use crate::poset::{grid_id, Poset};

/// `G(n, p)` on vertices `0..n` with `n` in `1..=max_vertices` and `p` drawn
/// from `[0.2, 0.8)`.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> OrderedSimplicialComplex {
    let n = rng.random_range(1..=max_vertices) as Vertex;
    let p = rng.random_range(0.2..0.8);
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

/// Random graph plus random triangles on its vertices (with their edges).
pub fn random_two_complex<R: Rng>(rng: &mut R, max_vertices: usize) -> OrderedSimplicialComplex {
    let n = rng.random_range(3..=max_vertices.max(3)) as Vertex;
    let p_edge = rng.random_range(0.2..0.8);
    let p_tri = rng.random_range(0.1..0.7);
    let mut gens: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p_edge) {
                gens.push(vec![a, b]);
            }
            for c in b + 1..n {
                if rng.random_bool(p_tri) {
                    gens.push(vec![a, b, c]);
                }
            }
        }
    }
    OrderedSimplicialComplex::from_simplices(gens).expect("valid simplices")
}

/// A random face-closed subcomplex of `x`, with the restricted order.
pub fn random_subcomplex<R: Rng>(rng: &mut R, x: &OrderedSimplicialComplex) -> OrderedSimplicialComplex {
    let p = rng.random_range(0.2..0.9);
    let mut kept: BTreeSet<Simplex> = BTreeSet::new();
    for s in x.simplices() {
        if s.facets().all(|f| kept.contains(&f)) && rng.random_bool(p) {
            kept.insert(s.clone());
        }
    }
    x.restrict(|s| kept.contains(s))
}

/// A random simplicial order on `x`: a random linear extension of the face
/// relation.
pub fn random_simplicial_order<R: Rng>(rng: &mut R, x: &OrderedSimplicialComplex) -> OrderedSimplicialComplex {
    let mut placed: BTreeSet<Simplex> = BTreeSet::new();
    let mut order = Vec::with_capacity(x.len());
    while order.len() < x.len() {
        let ready: Vec<&Simplex> = x
            .simplices()
            .iter()
            .filter(|s| !placed.contains(*s) && s.facets().all(|f| placed.contains(&f)))
            .collect();
        let s = (*ready.choose(rng).expect("some simplex has all faces placed")).clone();
        placed.insert(s.clone());
        order.push(s);
    }
    x.with_order(order).expect("faces precede cofaces")
}

/// A filtration over the `side × side` grid: random 2-complex on at most
/// `max_vertices` vertices, each simplex entering at a random antichain of
/// one or two grades, pushed up by componentwise joins so that faces come
/// first.
pub fn random_filtration<R: Rng>(rng: &mut R, max_vertices: usize, side: usize) -> Filtration {
    let x = if rng.random_bool(0.5) {
        random_graph(rng, max_vertices)
    } else {
        random_two_complex(rng, max_vertices)
    };
    let poset = Poset::grid(&[side, side]).expect("nonempty grid");
    let mut coords: BTreeMap<Simplex, Vec<[usize; 2]>> = BTreeMap::new();
    for s in x.simplices() {
        let k = rng.random_range(1..=2);
        let mut grades = Vec::with_capacity(k);
        for _ in 0..k {
            let mut g = [rng.random_range(0..side), rng.random_range(0..side)];
            for f in s.facets() {
                let fg = coords[&f].choose(rng).expect("faces have entries");
                g = [g[0].max(fg[0]), g[1].max(fg[1])];
            }
            grades.push(g);
        }
        coords.insert(s.clone(), grades);
    }
    let entry: Vec<(Simplex, Vec<usize>)> = coords
        .into_iter()
        .map(|(s, gs)| {
            let ids = gs
                .iter()
                .map(|g| poset.index_of(&grid_id(g)).expect("grid coordinates"))
                .collect();
            (s, ids)
        })
        .collect();
    Filtration::new(poset, x, entry).expect("entries dominate faces")
}

/// Integer matrix of the given shape with entries in `lo..=hi`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, lo: i64, hi: i64) -> IntegerMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(lo..=hi)).collect())
        .collect();
    let mut m = IntegerMatrix::zeros(rows, cols);
    for (r, row) in data.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            m[(r, c)] = v.into();
        }
    }
    m
}

/// Sum of a few random closed walks in the 1-skeleton, each with a random
/// integer weight. May be zero.
pub fn random_integer_cycle<R: Rng>(rng: &mut R, x: &OrderedSimplicialComplex) -> Chain {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in x.edges() {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut z = Chain::zero(Ring::Integers, 1);
    let starts: Vec<Vertex> = adj.keys().copied().collect();
    if starts.is_empty() {
        return z;
    }
    for _ in 0..rng.random_range(1..=3) {
        let start = *starts.choose(rng).expect("nonempty");
        let weight = Ring::Integers.from_int(*[-2i64, -1, 1, 2, 3].choose(rng).expect("nonempty"));
        let mut walk = vec![start];
        for _ in 0..rng.random_range(1..=8) {
            let here = *walk.last().expect("nonempty walk");
            walk.push(*adj[&here].choose(rng).expect("vertex with an edge"));
        }
        let closing = shortest_path(&adj, walk[walk.len() - 1], start);
        walk.extend(closing);
        for pair in walk.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let sign = if a < b { weight.clone() } else { -weight.clone() };
            z.add_term(Simplex::edge(a.min(b), a.max(b)), &sign);
        }
    }
    z
}

fn shortest_path(adj: &BTreeMap<Vertex, Vec<Vertex>>, from: Vertex, to: Vertex) -> Vec<Vertex> {
    let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    prev.insert(from, from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[&v] {
            if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(w) {
                e.insert(v);
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    while *path.last().expect("nonempty") != from {
        path.push(prev[path.last().expect("nonempty")]);
    }
    path.reverse();
    path.into_iter().skip(1).collect()
}
