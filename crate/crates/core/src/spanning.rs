//! Homological spanning trees and their higher-dimensional analogues.
//!
//! A spanning tree of `X` is a subcomplex with all vertices of `X`, no
//! 1-cycles, and the same connected components as `X`; it need not be
//! connected. The order-minimal tree (the lexicographic minimum among all
//! spanning trees) is the Kruskal forest obtained by scanning edges in
//! simplicial order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::chains::{Chain, Ring};
use crate::complex::{OrderedSimplicialComplex, Simplex, Vertex};
use crate::oracle::{self, IntegerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanningError {
    #[error("no tree path joins the endpoints of {0}")]
    NoPath(Simplex),
    #[error("{0} is not an edge")]
    NotAnEdge(Simplex),
    #[error("spanning complexes need n >= 1")]
    ZeroDimension,
    #[error("greedy {n}-spanning complex does not reproduce B_{m}(X) over {ring}", m = .n - 1)]
    SpanVerificationFailed { n: usize, ring: Ring },
}

/// Why a candidate is not a spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeDefect {
    /// A simplex of the candidate is missing from the host, or a face is missing.
    NotASubcomplex(Simplex),
    /// Vertex sets differ.
    VertexMismatch,
    /// The candidate has a 1-cycle (closing edge reported).
    Cycle(Simplex),
    /// Same vertices, no cycles, but fewer connections than the host.
    ComponentMismatch,
}

impl fmt::Display for TreeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeDefect::NotASubcomplex(s) => write!(f, "{s} is not in the host or lacks a face"),
            TreeDefect::VertexMismatch => write!(f, "vertex sets differ"),
            TreeDefect::Cycle(s) => write!(f, "edge {s} closes a cycle"),
            TreeDefect::ComponentMismatch => write!(f, "component partitions differ"),
        }
    }
}

/// Disjoint sets with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// Union-find keyed by vertex id.
struct VertexPartition {
    index: BTreeMap<Vertex, usize>,
    uf: UnionFind,
}

impl VertexPartition {
    fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let index: BTreeMap<Vertex, usize> =
            vertices.into_iter().enumerate().map(|(i, v)| (v, i)).collect();
        let uf = UnionFind::new(index.len());
        VertexPartition { index, uf }
    }

    fn join(&mut self, e: &Simplex) -> bool {
        let v = e.vertices();
        self.uf.union(self.index[&v[0]], self.index[&v[1]])
    }

    /// Canonical labelling: each vertex mapped to the smallest vertex of its class.
    fn classes(&mut self) -> BTreeMap<Vertex, Vertex> {
        let mut rep_min: BTreeMap<usize, Vertex> = BTreeMap::new();
        let verts: Vec<(Vertex, usize)> = self.index.iter().map(|(&v, &i)| (v, i)).collect();
        for &(v, i) in &verts {
            let r = self.uf.find(i);
            rep_min.entry(r).or_insert(v);
        }
        verts.into_iter().map(|(v, i)| (v, rep_min[&self.uf.find(i)])).collect()
    }
}

/// A spanning tree: every vertex of the host plus `edges`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    edges: BTreeSet<Simplex>,
}

impl fmt::Debug for SpanningTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.edges).finish()
    }
}

impl SpanningTree {
    /// Wraps an edge set without checking it; see [`is_spanning_tree`].
    pub fn from_edges<I: IntoIterator<Item = Simplex>>(edges: I) -> Self {
        SpanningTree { edges: edges.into_iter().collect() }
    }

    pub fn edges(&self) -> &BTreeSet<Simplex> {
        &self.edges
    }

    pub fn contains(&self, e: &Simplex) -> bool {
        self.edges.contains(e)
    }

    /// All simplices of the subcomplex: host vertices plus tree edges.
    pub fn simplices(&self, host: &OrderedSimplicialComplex) -> BTreeSet<Simplex> {
        host.simplices_of_dim(0).cloned().chain(self.edges.iter().cloned()).collect()
    }

    /// The tree as an ordered complex with the host's restricted order.
    pub fn as_complex(&self, host: &OrderedSimplicialComplex) -> OrderedSimplicialComplex {
        host.restrict(|s| s.dim() == 0 || self.edges.contains(s))
    }

    /// Host edges outside the tree, in simplicial order.
    pub fn complement<'a>(&'a self, host: &'a OrderedSimplicialComplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        host.edges().filter(move |e| !self.edges.contains(e))
    }

    /// `T + σ − τ`.
    pub fn exchange(&self, add: &Simplex, remove: &Simplex) -> SpanningTree {
        let mut edges = self.edges.clone();
        edges.remove(remove);
        edges.insert(add.clone());
        SpanningTree { edges }
    }
}

/// Checks the three spanning tree conditions for a candidate subcomplex.
pub fn is_spanning_tree(host: &OrderedSimplicialComplex, candidate: &BTreeSet<Simplex>) -> Result<(), TreeDefect> {
    for s in candidate {
        if !host.contains(s) || s.facets().any(|f| !candidate.contains(&f)) {
            return Err(TreeDefect::NotASubcomplex(s.clone()));
        }
    }
    let host_vertices: BTreeSet<Vertex> = host.vertices().collect();
    let cand_vertices: BTreeSet<Vertex> =
        candidate.iter().filter(|s| s.dim() == 0).map(|s| s.vertices()[0]).collect();
    if host_vertices != cand_vertices {
        return Err(TreeDefect::VertexMismatch);
    }
    // injectivity of ∂₁: no edge closes a cycle (a 2-simplex forces one too)
    let mut tree = VertexPartition::new(host_vertices.iter().copied());
    for e in candidate.iter().filter(|s| s.dim() == 1) {
        if !tree.join(e) {
            return Err(TreeDefect::Cycle(e.clone()));
        }
    }
    if let Some(s) = candidate.iter().find(|s| s.dim() >= 2) {
        return Err(TreeDefect::Cycle(s.clone()));
    }
    // B₀ equality as equality of component partitions
    let mut full = VertexPartition::new(host_vertices.iter().copied());
    for e in host.edges() {
        full.join(e);
    }
    if tree.classes() != full.classes() {
        return Err(TreeDefect::ComponentMismatch);
    }
    Ok(())
}

/// [`is_spanning_tree`] for a [`SpanningTree`].
pub fn check_tree(host: &OrderedSimplicialComplex, tree: &SpanningTree) -> Result<(), TreeDefect> {
    is_spanning_tree(host, &tree.simplices(host))
}

/// Kruskal over edges in simplicial order.
pub fn order_minimal_spanning_tree(x: &OrderedSimplicialComplex) -> SpanningTree {
    let mut parts = VertexPartition::new(x.vertices());
    SpanningTree { edges: x.edges().filter(|e| parts.join(e)).cloned().collect() }
}

/// The unique 1-chain `c` in `T` with `∂c = ∂σ`, found by walking the tree path
/// from the first to the last vertex of `σ`.
pub fn tree_path_chain(tree: &SpanningTree, edge: &Simplex, ring: Ring) -> Result<Chain, SpanningError> {
    if edge.dim() != 1 {
        return Err(SpanningError::NotAnEdge(edge.clone()));
    }
    let (from, to) = (edge.vertices()[0], edge.vertices()[1]);
    let mut adjacent: BTreeMap<Vertex, Vec<(Vertex, &Simplex)>> = BTreeMap::new();
    for e in &tree.edges {
        let v = e.vertices();
        adjacent.entry(v[0]).or_default().push((v[1], e));
        adjacent.entry(v[1]).or_default().push((v[0], e));
    }
    let mut came_from: BTreeMap<Vertex, (Vertex, &Simplex)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(w, e) in adjacent.get(&v).into_iter().flatten() {
            if w != from && !came_from.contains_key(&w) {
                came_from.insert(w, (v, e));
                queue.push_back(w);
            }
        }
    }
    if !came_from.contains_key(&to) {
        return Err(SpanningError::NoPath(edge.clone()));
    }
    let mut chain = Chain::zero(ring, 1);
    let mut v = to;
    while v != from {
        let (prev, e) = came_from[&v];
        // traversing [a,b] from a to b contributes +[a,b], since ∂[a,b] = b − a
        let sign = if e.vertices()[1] == v { 1 } else { -1 };
        chain.add_term(e.clone(), &ring.from_int(sign));
        v = prev;
    }
    Ok(chain)
}

/// Tree edges `τ` for which `T + σ − τ` is again a spanning tree.
pub fn edge_exchange_candidates(tree: &SpanningTree, edge: &Simplex) -> Result<BTreeSet<Simplex>, SpanningError> {
    let path = tree_path_chain(tree, edge, Ring::Integers)?;
    Ok(path.support().cloned().collect())
}

/// `σ − c_σ` for each non-tree edge `σ`, where `c_σ` is its tree path chain.
pub fn fundamental_cycle(tree: &SpanningTree, edge: &Simplex, ring: Ring) -> Result<Chain, SpanningError> {
    let path = tree_path_chain(tree, edge, ring)?;
    Ok(Chain::simplex(ring, edge.clone()).sub(&path).expect("same ring and dimension"))
}

/// The fundamental cycles of all non-tree edges, in simplicial order. They form
/// a basis of `Z₁(X)`.
pub fn cycle_basis_rel_tree(
    x: &OrderedSimplicialComplex,
    tree: &SpanningTree,
    ring: Ring,
) -> Result<Vec<(Simplex, Chain)>, SpanningError> {
    tree.complement(x)
        .map(|e| fundamental_cycle(tree, e, ring).map(|z| (e.clone(), z)))
        .collect()
}

/// Whether the B_{n−1} equality of a greedy spanning complex was confirmed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanVerification {
    Verified,
    Failed,
}

/// A subcomplex `A ⊆ X` with full `(n−1)`-skeleton and injective `∂ₙ`.
#[derive(Clone, Debug)]
pub struct NSpanningComplex {
    pub n: usize,
    pub ring: Ring,
    pub complex: OrderedSimplicialComplex,
    /// `n`-simplices of `X` left out of `A`, in simplicial order.
    pub excluded: Vec<Simplex>,
    /// Outcome of the oracle check `B_{n−1}(A) = B_{n−1}(X)`.
    pub verification: SpanVerification,
}

impl NSpanningComplex {
    pub fn check(&self) -> Result<(), SpanningError> {
        match self.verification {
            SpanVerification::Verified => Ok(()),
            SpanVerification::Failed => Err(SpanningError::SpanVerificationFailed { n: self.n, ring: self.ring }),
        }
    }
}

/// Incrementally maintained echelon basis over ℚ or ℤ/p.
struct IndependenceTester {
    ring: Ring,
    /// pivot row -> reduced vector with leading 1 at the pivot
    basis: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

impl IndependenceTester {
    fn new(ring: Ring) -> Self {
        // over ℤ, injectivity of ∂ is decided over the fraction field
        let ring = if ring == Ring::Integers { Ring::Rationals } else { ring };
        IndependenceTester { ring, basis: BTreeMap::new() }
    }

    /// Inserts `v` if it is independent of the current basis.
    fn insert(&mut self, mut v: BTreeMap<usize, BigRational>) -> bool {
        let r = self.ring;
        loop {
            let Some((&lead, coef)) = v.iter().next() else { return false };
            match self.basis.get(&lead) {
                Some(b) => {
                    let f = coef.clone();
                    for (&i, x) in b {
                        let cur = v.remove(&i).unwrap_or_else(BigRational::zero);
                        let next = r.add(&cur, &r.neg(&r.mul(&f, x)));
                        if !next.is_zero() {
                            v.insert(i, next);
                        }
                    }
                }
                None => {
                    let inv = r.inverse(coef).expect("field element");
                    let v = v.into_iter().map(|(i, x)| (i, r.mul(&x, &inv))).collect();
                    self.basis.insert(lead, v);
                    return true;
                }
            }
        }
    }
}

/// Greedy `n`-spanning complex: keep an `n`-simplex iff its boundary is
/// independent of the boundaries kept so far. The submodule condition on
/// `B_{n−1}` is then checked with the oracle.
pub fn n_spanning_complex(x: &OrderedSimplicialComplex, n: usize, ring: Ring) -> Result<NSpanningComplex, SpanningError> {
    if n == 0 {
        return Err(SpanningError::ZeroDimension);
    }
    let rows: BTreeMap<&Simplex, usize> = x.simplices_of_dim(n - 1).enumerate().map(|(i, s)| (s, i)).collect();
    let mut tester = IndependenceTester::new(ring);
    let mut kept = BTreeSet::new();
    let mut excluded = Vec::new();
    for s in x.simplices_of_dim(n) {
        let column: BTreeMap<usize, BigRational> = Chain::simplex(ring, s.clone())
            .boundary()
            .terms()
            .iter()
            .map(|(f, k)| (rows[f], k.clone()))
            .collect();
        if tester.insert(column) {
            kept.insert(s.clone());
        } else {
            excluded.push(s.clone());
        }
    }
    let complex = x.restrict(|s| s.dim() < n || kept.contains(s));

    let (bx, _, _) = IntegerMatrix::boundary(x, n);
    let (ba, _, _) = IntegerMatrix::boundary(&complex, n);
    let verification = if oracle::image_submodule_equal(&ba, &bx, ring) {
        SpanVerification::Verified
    } else {
        SpanVerification::Failed
    };
    Ok(NSpanningComplex { n, ring, complex, excluded, verification })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::cycle_rank;

    fn e(a: u32, b: u32) -> Simplex {
        Simplex::edge(a, b)
    }

    fn cx(gens: Vec<Vec<u32>>) -> OrderedSimplicialComplex {
        OrderedSimplicialComplex::from_simplices(gens).unwrap()
    }

    fn hollow() -> OrderedSimplicialComplex {
        cx(vec![vec![1, 2], vec![2, 3], vec![1, 3]])
    }

    fn with_vertices(x: &OrderedSimplicialComplex, edges: &[Simplex]) -> BTreeSet<Simplex> {
        x.simplices_of_dim(0).cloned().chain(edges.iter().cloned()).collect()
    }

    #[test]
    fn spanning_tree_checks() {
        let x = hollow();
        assert_eq!(is_spanning_tree(&x, &with_vertices(&x, &[e(1, 2), e(1, 3)])), Ok(()));
        assert!(matches!(
            is_spanning_tree(&x, &with_vertices(&x, &[e(1, 2), e(1, 3), e(2, 3)])),
            Err(TreeDefect::Cycle(_))
        ));
        assert_eq!(
            is_spanning_tree(&x, &with_vertices(&x, &[e(1, 2)])),
            Err(TreeDefect::ComponentMismatch)
        );
        let missing_vertex: BTreeSet<Simplex> = [Simplex::vertex(1), Simplex::vertex(2), e(1, 2)].into();
        assert_eq!(is_spanning_tree(&x, &missing_vertex), Err(TreeDefect::VertexMismatch));
    }

    #[test]
    fn order_minimal_examples() {
        let t = order_minimal_spanning_tree(&hollow());
        assert_eq!(t.edges(), &[e(1, 2), e(1, 3)].into());

        let path = cx(vec![vec![1, 2], vec![2, 3]]);
        assert_eq!(order_minimal_spanning_tree(&path).edges().len(), 2);

        let two = cx(vec![vec![1, 2], vec![3, 4]]);
        let t = order_minimal_spanning_tree(&two);
        assert_eq!(t.edges(), &[e(1, 2), e(3, 4)].into());
        assert_eq!(check_tree(&two, &t), Ok(()));
    }

    #[test]
    fn greedy_is_lex_minimum_on_triangle() {
        let x = hollow();
        let trees = [[e(1, 2), e(1, 3)], [e(1, 2), e(2, 3)], [e(1, 3), e(2, 3)]];
        let sets: Vec<BTreeSet<Simplex>> = trees.iter().map(|t| t.iter().cloned().collect()).collect();
        let min = sets.iter().min_by(|a, b| x.lex_compare(a, b)).unwrap();
        assert_eq!(min, order_minimal_spanning_tree(&x).edges());
    }

    #[test]
    fn path_chains() {
        let t = SpanningTree::from_edges([e(1, 2), e(1, 3)]);
        let c = tree_path_chain(&t, &e(2, 3), Ring::Integers).unwrap();
        let expected = Chain::from_terms(Ring::Integers, 1, [(e(1, 3), 1), (e(1, 2), -1)]).unwrap();
        assert_eq!(c, expected);
        assert_eq!(c.boundary(), Chain::simplex(Ring::Integers, e(2, 3)).boundary());

        let same = tree_path_chain(&t, &e(1, 2), Ring::Integers).unwrap();
        assert_eq!(same, Chain::simplex(Ring::Integers, e(1, 2)));

        let star = SpanningTree::from_edges([e(0, 1), e(0, 2), e(0, 3), e(0, 4)]);
        let c = tree_path_chain(&star, &e(2, 4), Ring::Integers).unwrap();
        let expected = Chain::from_terms(Ring::Integers, 1, [(e(0, 4), 1), (e(0, 2), -1)]).unwrap();
        assert_eq!(c, expected);

        let split = SpanningTree::from_edges([e(1, 2)]);
        assert_eq!(tree_path_chain(&split, &e(1, 3), Ring::Integers), Err(SpanningError::NoPath(e(1, 3))));
    }

    #[test]
    fn exchange_candidates() {
        let x = hollow();
        let t = order_minimal_spanning_tree(&x);
        let cands = edge_exchange_candidates(&t, &e(2, 3)).unwrap();
        assert_eq!(cands, [e(1, 2), e(1, 3)].into());
        for tau in &cands {
            assert_eq!(check_tree(&x, &t.exchange(&e(2, 3), tau)), Ok(()));
            assert!(x.compare(tau, &e(2, 3)).is_le());
        }
    }

    #[test]
    fn cycle_bases() {
        let x = hollow();
        let t = order_minimal_spanning_tree(&x);
        let basis = cycle_basis_rel_tree(&x, &t, Ring::Integers).unwrap();
        let z = Chain::from_terms(Ring::Integers, 1, [(e(2, 3), 1), (e(1, 3), -1), (e(1, 2), 1)]).unwrap();
        assert_eq!(basis, vec![(e(2, 3), z)]);

        let path = cx(vec![vec![1, 2], vec![2, 3]]);
        assert!(cycle_basis_rel_tree(&path, &order_minimal_spanning_tree(&path), Ring::Integers)
            .unwrap()
            .is_empty());

        let k4 = cx(vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        let basis = cycle_basis_rel_tree(&k4, &order_minimal_spanning_tree(&k4), Ring::Integers).unwrap();
        assert_eq!(basis.len(), 3);
        assert_eq!(cycle_rank(&k4, 1, Ring::Integers), 3);
        for (_, z) in &basis {
            assert!(z.boundary().is_zero());
        }
    }

    #[test]
    fn spanning_complex_of_sphere() {
        let sphere = cx(vec![vec![1, 2, 3, 4]]).skeleton(2);
        let a = n_spanning_complex(&sphere, 2, Ring::Integers).unwrap();
        assert_eq!(a.complex.count_of_dim(2), 3);
        assert_eq!(a.excluded.len(), 1);
        assert_eq!(a.verification, SpanVerification::Verified);
        assert_eq!(cycle_rank(&a.complex, 2, Ring::Integers), 0);
        assert_eq!(cycle_rank(&sphere, 2, Ring::Integers), 1);
        assert_eq!(a.complex.skeleton(1), sphere.skeleton(1));
    }

    #[test]
    fn spanning_complex_in_dimension_one_is_the_tree() {
        for x in [hollow(), cx(vec![vec![1, 2, 3], vec![3, 4], vec![4, 5], vec![3, 5], vec![6]])] {
            let a = n_spanning_complex(&x, 1, Ring::Integers).unwrap();
            let t = order_minimal_spanning_tree(&x);
            let kept: BTreeSet<Simplex> = a.complex.edges().cloned().collect();
            assert_eq!(&kept, t.edges());
        }
    }

    #[test]
    fn spanning_complex_without_top_simplices() {
        let x = hollow();
        let a = n_spanning_complex(&x, 2, Ring::Integers).unwrap();
        assert_eq!(a.complex, x);
        assert_eq!(a.check(), Ok(()));
        assert_eq!(n_spanning_complex(&x, 0, Ring::Integers).unwrap_err(), SpanningError::ZeroDimension);
    }

    fn rp2() -> OrderedSimplicialComplex {
        cx(vec![
            vec![1, 2, 3], vec![1, 3, 4], vec![1, 4, 5], vec![1, 5, 6], vec![1, 2, 6],
            vec![2, 3, 5], vec![3, 4, 6], vec![2, 4, 5], vec![3, 5, 6], vec![2, 4, 6],
        ])
    }

    #[test]
    fn projective_plane_spanning_complexes() {
        // ∂₂ is injective over ℤ; over ℤ/2 the fundamental class is a cycle
        let x = rp2();
        let over_z = n_spanning_complex(&x, 2, Ring::Integers).unwrap();
        assert_eq!(over_z.excluded.len(), 0);
        assert_eq!(over_z.check(), Ok(()));
        let over_f2 = n_spanning_complex(&x, 2, Ring::Prime(2)).unwrap();
        assert_eq!(over_f2.excluded.len(), 1);
        assert_eq!(over_f2.check(), Ok(()));
    }

    #[test]
    fn greedy_over_z_can_miss_boundaries() {
        // a triangle glued along a non-contractible loop, ordered last
        let base = rp2();
        let extra = Simplex::new(vec![1, 2, 4]).unwrap();
        let full = cx(base.simplices().iter().map(|s| s.vertices().to_vec()).chain([vec![1, 2, 4]]).collect());
        let mut order: Vec<Simplex> = base.simplices().to_vec();
        order.push(extra.clone());
        let x = full.with_order(order).unwrap();
        let over_z = n_spanning_complex(&x, 2, Ring::Integers).unwrap();
        assert_eq!(over_z.excluded, vec![extra.clone()]);
        assert_eq!(over_z.check(), Err(SpanningError::SpanVerificationFailed { n: 2, ring: Ring::Integers }));
        let over_q = n_spanning_complex(&x, 2, Ring::Rationals).unwrap();
        assert_eq!(over_q.excluded, vec![extra]);
        assert_eq!(over_q.check(), Ok(()));
    }
}
