//! Finite ordered simplicial complexes.
//!
//! An [`OrderedSimplicialComplex`] keeps its simplices in a vector sorted by the
//! simplicial order, so the order of two simplices is the order of their
//! positions. The default order sorts by dimension and then lexicographically
//! by vertex tuple; custom orders are accepted when every face precedes its
//! cofaces.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex {0:?} repeats a vertex")]
    DuplicateVertexInSimplex(Vec<Vertex>),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("{0} is not a subcomplex of the host complex")]
    NotASubcomplex(Simplex),
    #[error("simplicial order lists {listed} simplices but the complex has {expected}")]
    OrderSizeMismatch { listed: usize, expected: usize },
    #[error("simplicial order mentions {0}, which is not in the complex")]
    OrderUnknownSimplex(Simplex),
    #[error("simplicial order places face {face} after coface {coface}")]
    FaceAfterCoface { face: Simplex, coface: Simplex },
    #[error("vertex {0} is not in the domain of the simplicial map")]
    VertexNotInDomain(Vertex),
    #[error("{0} is not a simplex of the target complex")]
    ImageNotInTarget(Simplex),
}

/// A nonempty strictly increasing vertex tuple.
///
/// The derived `Ord` is the lexicographic order on vertex tuples. It is *not*
/// the simplicial order, which lives on [`OrderedSimplicialComplex`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts the vertices; rejects repeats and the empty tuple.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Simplex, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertexInSimplex(vertices));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: Vertex) -> Simplex {
        Simplex(vec![v])
    }

    pub fn edge(a: Vertex, b: Vertex) -> Simplex {
        Simplex::new(vec![a, b]).expect("edge endpoints must differ")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces, `i`-th face omits vertex `i`.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

fn default_key(s: &Simplex) -> (usize, &[Vertex]) {
    (s.dim(), s.vertices())
}

/// A finite simplicial complex together with a simplicial order.
#[derive(Clone)]
pub struct OrderedSimplicialComplex {
    simplices: Vec<Simplex>,
    position: HashMap<Simplex, usize>,
}

impl PartialEq for OrderedSimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for OrderedSimplicialComplex {}

impl fmt::Debug for OrderedSimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.simplices).finish()
    }
}

impl OrderedSimplicialComplex {
    /// Face closure of `generators` under the default order.
    pub fn from_simplices<I>(generators: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Vec<Vertex>>,
    {
        let mut all = BTreeSet::new();
        for g in generators {
            let s = Simplex::new(g)?;
            all.extend(s.faces());
        }
        Ok(Self::from_closed_set(all))
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new())
    }

    /// Caller guarantees face closure.
    fn from_closed_set(set: BTreeSet<Simplex>) -> Self {
        let mut simplices: Vec<Simplex> = set.into_iter().collect();
        simplices.sort_by(|a, b| default_key(a).cmp(&default_key(b)));
        Self::from_sorted(simplices)
    }

    fn from_sorted(simplices: Vec<Simplex>) -> Self {
        let position = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        OrderedSimplicialComplex { simplices, position }
    }

    /// Replaces the simplicial order. `order` must list every simplex once and
    /// place faces before cofaces.
    pub fn with_order(&self, order: Vec<Simplex>) -> Result<Self, ComplexError> {
        if order.len() != self.simplices.len() {
            return Err(ComplexError::OrderSizeMismatch {
                listed: order.len(),
                expected: self.simplices.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for s in &order {
            if !self.contains(s) || !seen.insert(s.clone()) {
                return Err(ComplexError::OrderUnknownSimplex(s.clone()));
            }
        }
        let out = Self::from_sorted(order);
        for s in &out.simplices {
            for f in s.facets() {
                if out.position[&f] > out.position[s] {
                    return Err(ComplexError::FaceAfterCoface { face: f, coface: s.clone() });
                }
            }
        }
        Ok(out)
    }

    /// Whether the order is the default (dimension, vertex tuple) order.
    pub fn has_default_order(&self) -> bool {
        self.simplices
            .windows(2)
            .all(|w| default_key(&w[0]) < default_key(&w[1]))
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Simplices in simplicial order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.position.contains_key(s)
    }

    /// Rank of `s` in the simplicial order.
    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.position.get(s).copied()
    }

    pub fn compare(&self, a: &Simplex, b: &Simplex) -> Ordering {
        self.position[a].cmp(&self.position[b])
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// `n`-simplices in simplicial order.
    pub fn simplices_of_dim(&self, n: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().filter(move |s| s.dim() == n)
    }

    pub fn count_of_dim(&self, n: usize) -> usize {
        self.simplices_of_dim(n).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices_of_dim(0).map(|s| s.vertices()[0])
    }

    pub fn edges(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices_of_dim(1)
    }

    /// Restriction to the simplices kept by `keep`, preserving the order.
    /// The caller is responsible for face closure of the kept set.
    pub fn restrict<F: FnMut(&Simplex) -> bool>(&self, mut keep: F) -> Self {
        Self::from_sorted(self.simplices.iter().filter(|s| keep(s)).cloned().collect())
    }

    /// Restriction to a face-closed subset; fails if `subset` is not closed or
    /// not contained in `self`.
    pub fn subcomplex<'a, I>(&self, subset: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = &'a Simplex>,
    {
        let set: BTreeSet<&Simplex> = subset.into_iter().collect();
        for s in &set {
            if !self.contains(s) {
                return Err(ComplexError::NotASubcomplex((*s).clone()));
            }
            for f in s.facets() {
                if !set.contains(&f) {
                    return Err(ComplexError::NotASubcomplex((*s).clone()));
                }
            }
        }
        Ok(self.restrict(|s| set.contains(s)))
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.simplices.iter().all(|s| other.contains(s))
    }

    pub fn skeleton(&self, n: usize) -> Self {
        self.restrict(|s| s.dim() <= n)
    }

    /// All simplices of dimension below `n`, plus the `n`-simplices of `self`
    /// that are not in `sub`.
    pub fn n_difference(&self, sub: &Self, n: usize) -> Result<Self, ComplexError> {
        if let Some(s) = sub.simplices.iter().find(|s| !self.contains(s)) {
            return Err(ComplexError::NotASubcomplex(s.clone()));
        }
        Ok(self.restrict(|s| s.dim() < n || (s.dim() == n && !sub.contains(s))))
    }

    /// Whether the order puts faces first; checked by scanning every facet.
    pub fn faces_precede_cofaces(&self) -> bool {
        self.simplices.iter().enumerate().all(|(i, s)| {
            s.facets().all(|f| self.position.get(&f).is_some_and(|&j| j < i))
        })
    }

    /// Lexicographic comparison of simplex sets under this complex's order.
    pub fn lex_compare(&self, a: &BTreeSet<Simplex>, b: &BTreeSet<Simplex>) -> Ordering {
        lex_compare(a, b, |s| self.position[s])
    }
}

/// Compares subsets of a totally ordered set: `A <= B` iff `A = B` or the
/// smallest element of the symmetric difference lies in `A`.
///
/// `key` realizes the underlying total order.
pub fn lex_compare<T, K, F>(a: &BTreeSet<T>, b: &BTreeSet<T>, key: F) -> Ordering
where
    T: Ord,
    K: Ord,
    F: Fn(&T) -> K,
{
    let smallest = a
        .symmetric_difference(b)
        .min_by_key(|x| key(x));
    match smallest {
        None => Ordering::Equal,
        Some(x) if a.contains(x) => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}

/// A vertex map between complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    vertex_map: BTreeMap<Vertex, Vertex>,
}

impl SimplicialMap {
    pub fn new(vertex_map: BTreeMap<Vertex, Vertex>) -> Self {
        SimplicialMap { vertex_map }
    }

    pub fn identity<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        SimplicialMap { vertex_map: vertices.into_iter().map(|v| (v, v)).collect() }
    }

    pub fn vertex_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.vertex_map
    }

    /// Image simplex; repeated images collapse.
    pub fn apply(&self, s: &Simplex) -> Result<Simplex, ComplexError> {
        let mut image = s
            .vertices()
            .iter()
            .map(|v| self.vertex_map.get(v).copied().ok_or(ComplexError::VertexNotInDomain(*v)))
            .collect::<Result<Vec<_>, _>>()?;
        image.sort_unstable();
        image.dedup();
        Ok(Simplex(image))
    }

    /// Checks that every simplex of `domain` lands in `target`.
    pub fn is_simplicial(
        &self,
        domain: &OrderedSimplicialComplex,
        target: &OrderedSimplicialComplex,
    ) -> Result<(), ComplexError> {
        for s in domain.simplices() {
            let img = self.apply(s)?;
            if !target.contains(&img) {
                return Err(ComplexError::ImageNotInTarget(img));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&[Vertex]]) -> BTreeSet<Simplex> {
        items.iter().map(|v| Simplex::new(v.to_vec()).unwrap()).collect()
    }

    fn hollow_triangle() -> OrderedSimplicialComplex {
        OrderedSimplicialComplex::from_simplices(vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap()
    }

    #[test]
    fn face_closure_counts() {
        let full = OrderedSimplicialComplex::from_simplices(vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(full.len(), 7);
        let pts = OrderedSimplicialComplex::from_simplices(vec![vec![1], vec![2]]).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(hollow_triangle().len(), 6);
        assert_eq!(
            OrderedSimplicialComplex::from_simplices(vec![vec![1, 1]]).unwrap_err(),
            ComplexError::DuplicateVertexInSimplex(vec![1, 1])
        );
    }

    #[test]
    fn closure_is_idempotent() {
        let full = OrderedSimplicialComplex::from_simplices(vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        let again = OrderedSimplicialComplex::from_simplices(
            full.simplices().iter().map(|s| s.vertices().to_vec()),
        )
        .unwrap();
        assert_eq!(full, again);
    }

    #[test]
    fn default_order_is_simplicial() {
        let x = OrderedSimplicialComplex::from_simplices(vec![vec![1, 2, 3, 4], vec![4, 5]]).unwrap();
        assert!(x.faces_precede_cofaces());
        assert!(x.has_default_order());
        let edges: Vec<_> = hollow_triangle().edges().cloned().collect();
        assert_eq!(edges, vec![Simplex::edge(1, 2), Simplex::edge(1, 3), Simplex::edge(2, 3)]);
    }

    #[test]
    fn custom_order_validation() {
        let x = hollow_triangle();
        let mut order: Vec<Simplex> = x.simplices().to_vec();
        order.swap(3, 5); // 23 before 12
        let y = x.with_order(order).unwrap();
        assert_eq!(y.compare(&Simplex::edge(2, 3), &Simplex::edge(1, 2)), Ordering::Less);
        assert!(!y.has_default_order());

        let mut bad = x.simplices().to_vec();
        bad.swap(2, 3); // edge 12 before vertex 3 is fine, so move a vertex after its edge
        bad.swap(0, 3);
        assert!(matches!(x.with_order(bad), Err(ComplexError::FaceAfterCoface { .. })));
        assert!(matches!(
            x.with_order(x.simplices()[..3].to_vec()),
            Err(ComplexError::OrderSizeMismatch { .. })
        ));
    }

    #[test]
    fn skeleta() {
        let full = OrderedSimplicialComplex::from_simplices(vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(full.skeleton(1), hollow_triangle());
        assert_eq!(full.skeleton(2), full);
        assert_eq!(hollow_triangle().skeleton(0).len(), 3);
    }

    #[test]
    fn n_difference_examples() {
        let x = hollow_triangle();
        let tree = x.subcomplex(&set(&[&[1], &[2], &[3], &[1, 2], &[1, 3]])).unwrap();
        let d = x.n_difference(&tree, 1).unwrap();
        assert_eq!(d.simplices().to_vec(), {
            let mut v: Vec<Simplex> = set(&[&[1], &[2], &[3]]).into_iter().collect();
            v.push(Simplex::edge(2, 3));
            v
        });
        assert_eq!(x.n_difference(&x, 1).unwrap(), x.skeleton(0));
        let verts = x.skeleton(0);
        assert_eq!(x.n_difference(&verts, 1).unwrap(), x.skeleton(1));

        let other = OrderedSimplicialComplex::from_simplices(vec![vec![7]]).unwrap();
        assert!(matches!(x.n_difference(&other, 1), Err(ComplexError::NotASubcomplex(_))));
    }

    #[test]
    fn n_difference_keeps_lower_skeleton() {
        let x = OrderedSimplicialComplex::from_simplices(vec![vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
        let a = x.skeleton(1);
        let d = x.n_difference(&a, 2).unwrap();
        assert_eq!(d.skeleton(1), x.skeleton(1));
        assert_eq!(d, x);
    }

    #[test]
    fn subcomplex_requires_closure() {
        let x = hollow_triangle();
        let err = x.subcomplex(&set(&[&[1, 2]])).unwrap_err();
        assert!(matches!(err, ComplexError::NotASubcomplex(_)));
    }

    #[test]
    fn lex_examples() {
        let key = |v: &u32| *v;
        let s = |v: &[u32]| v.iter().copied().collect::<BTreeSet<u32>>();
        assert_eq!(lex_compare(&s(&[1, 2]), &s(&[1, 3]), key), Ordering::Less);
        assert_eq!(lex_compare(&s(&[1, 3]), &s(&[2, 3]), key), Ordering::Less);
        assert_eq!(lex_compare(&s(&[1]), &s(&[1, 2]), key), Ordering::Greater);
        assert_eq!(lex_compare(&s(&[1, 2]), &s(&[1, 2]), key), Ordering::Equal);
        // supersets come first, the empty set is the maximum
        assert_eq!(lex_compare(&s(&[]), &s(&[3]), key), Ordering::Greater);
        assert_eq!(lex_compare(&s(&[1, 2, 3]), &s(&[1]), key), Ordering::Less);
    }

    #[test]
    fn complex_lex_uses_simplicial_order() {
        let x = hollow_triangle();
        let t1 = set(&[&[1, 2], &[1, 3]]);
        let t3 = set(&[&[1, 3], &[2, 3]]);
        assert_eq!(x.lex_compare(&t1, &t3), Ordering::Less);
    }

    #[test]
    fn simplicial_map_application() {
        let id = SimplicialMap::identity([1, 2, 3]);
        let s = Simplex::new(vec![1, 2, 3]).unwrap();
        assert_eq!(id.apply(&s).unwrap(), s);

        let collapse = SimplicialMap::new([(1, 10), (2, 10)].into_iter().collect());
        let img = collapse.apply(&Simplex::edge(1, 2)).unwrap();
        assert_eq!(img, Simplex::vertex(10));
        assert_eq!(img.dim(), 0);
        assert_eq!(
            collapse.apply(&Simplex::edge(1, 3)).unwrap_err(),
            ComplexError::VertexNotInDomain(3)
        );
    }

    #[test]
    fn wedge_onto_triangle() {
        let wedge = OrderedSimplicialComplex::from_simplices(vec![vec![1, 2, 4], vec![1, 3, 5]]).unwrap();
        let tri = OrderedSimplicialComplex::from_simplices(vec![vec![1, 2, 3]]).unwrap();
        let f = SimplicialMap::new([(1, 1), (2, 2), (3, 2), (4, 3), (5, 3)].into_iter().collect());
        f.is_simplicial(&wedge, &tri).unwrap();
        let full = Simplex::new(vec![1, 2, 3]).unwrap();
        for t in wedge.simplices_of_dim(2) {
            assert_eq!(f.apply(t).unwrap(), full);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn subset() -> impl Strategy<Value = BTreeSet<u8>> {
            proptest::collection::btree_set(0u8..6, 0..6)
        }

        proptest! {
            #[test]
            fn lex_is_a_total_order(a in subset(), b in subset(), c in subset()) {
                let k = |x: &u8| *x;
                let ab = lex_compare(&a, &b, k);
                prop_assert_eq!(ab, lex_compare(&b, &a, k).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                if ab != Ordering::Greater && lex_compare(&b, &c, k) != Ordering::Greater {
                    prop_assert_ne!(lex_compare(&a, &c, k), Ordering::Greater);
                }
            }
        }
    }
}
