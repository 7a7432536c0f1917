use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::complex::{OrderedSimplicialComplex, Simplex, SimplicialMap};
use crate::spanning::{check_tree, order_minimal_spanning_tree, SpanningTree, TreeDefect, UnionFind};

use super::{Filtration, PersistenceError};

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// One spanning tree per grade; `trees[q]` spans `X^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningCofiltration {
    trees: Vec<SpanningTree>,
}

impl SpanningCofiltration {
    /// Wraps per-grade trees without checking them.
    pub fn from_trees(trees: Vec<SpanningTree>) -> Self {
        SpanningCofiltration { trees }
    }

    pub fn tree(&self, q: usize) -> &SpanningTree {
        &self.trees[q]
    }

    pub fn trees(&self) -> &[SpanningTree] {
        &self.trees
    }

    /// Edges of `X^q` outside `T^q`, in simplicial order.
    pub fn complement(&self, f: &Filtration, q: usize) -> Vec<Simplex> {
        let t = &self.trees[q];
        f.total_complex()
            .edges()
            .filter(|e| f.contains_at(e, q) && !t.contains(e))
            .cloned()
            .collect()
    }
}

/// The order-minimal spanning tree of every `X^q`.
pub fn cofiltration_of_spanning_trees(f: &Filtration) -> SpanningCofiltration {
    let trees = (0..f.poset().len())
        .map(|q| order_minimal_spanning_tree(&f.at(q)))
        .collect();
    SpanningCofiltration { trees }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofiltrationDefect {
    WrongLength { expected: usize, found: usize },
    NotATree { grade: usize, defect: TreeDefect },
    /// `edge` is outside `T^lower` but inside `T^upper` although `lower <= upper`.
    ComplementNotMonotone { lower: usize, upper: usize, edge: Simplex },
}

impl fmt::Display for CofiltrationDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CofiltrationDefect::WrongLength { expected, found } => {
                write!(f, "expected {expected} trees, found {found}")
            }
            CofiltrationDefect::NotATree { grade, defect } => write!(f, "grade #{grade}: {defect}"),
            CofiltrationDefect::ComplementNotMonotone { lower, upper, edge } => {
                write!(f, "{edge} leaves the complement between grades #{lower} and #{upper}")
            }
        }
    }
}

/// Checks that every `T^q` spans `X^q` and that `X^q \ T^q ⊆ X^{q'} \ T^{q'}`
/// for all `q <= q'`.
pub fn is_cofiltration(f: &Filtration, trees: &[SpanningTree]) -> Result<(), CofiltrationDefect> {
    let n = f.poset().len();
    if trees.len() != n {
        return Err(CofiltrationDefect::WrongLength { expected: n, found: trees.len() });
    }
    let complexes: Vec<OrderedSimplicialComplex> = (0..n).map(|q| f.at(q)).collect();
    for q in 0..n {
        check_tree(&complexes[q], &trees[q]).map_err(|defect| CofiltrationDefect::NotATree { grade: q, defect })?;
    }
    for p in 0..n {
        for q in 0..n {
            if p == q || !f.poset().leq(p, q) {
                continue;
            }
            // X^p \ T^p ⊆ X^q always holds, so only membership in T^q can fail
            if let Some(edge) = complexes[p]
                .edges()
                .find(|e| !trees[p].contains(e) && trees[q].contains(e))
            {
                return Err(CofiltrationDefect::ComplementNotMonotone { lower: p, upper: q, edge: edge.clone() });
            }
        }
    }
    Ok(())
}

/// Every spanning tree of `x`, as edge sets, in lexicographic order of the
/// include/exclude search over edges in simplicial order. Each search node
/// consumes one unit of `budget`.
pub fn enumerate_spanning_trees(
    x: &OrderedSimplicialComplex,
    budget: &mut u64,
) -> Result<Vec<SpanningTree>, PersistenceError> {
    let edges: Vec<&Simplex> = x.edges().collect();
    let index: BTreeMap<u32, usize> = x.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let ends: Vec<(usize, usize)> = edges
        .iter()
        .map(|e| (index[&e.vertices()[0]], index[&e.vertices()[1]]))
        .collect();
    let target = order_minimal_spanning_tree(x).edges().len();

    struct Search<'a> {
        ends: &'a [(usize, usize)],
        target: usize,
        budget: &'a mut u64,
        used: u64,
        chosen: Vec<usize>,
        out: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize, uf: &UnionFind) -> Result<(), PersistenceError> {
            if *self.budget == 0 {
                return Err(PersistenceError::SearchBudgetExceeded { used: self.used });
            }
            *self.budget -= 1;
            self.used += 1;
            if self.chosen.len() == self.target {
                self.out.push(self.chosen.clone());
                return Ok(());
            }
            if i == self.ends.len() || self.chosen.len() + (self.ends.len() - i) < self.target {
                return Ok(());
            }
            let (a, b) = self.ends[i];
            let mut with = uf.clone();
            if with.union(a, b) {
                self.chosen.push(i);
                self.go(i + 1, &with)?;
                self.chosen.pop();
            }
            self.go(i + 1, uf)
        }
    }

    let mut search = Search { ends: &ends, target, budget, used: 0, chosen: Vec::new(), out: Vec::new() };
    search.go(0, &UnionFind::new(index.len()))?;
    Ok(search
        .out
        .into_iter()
        .map(|ids| SpanningTree::from_edges(ids.into_iter().map(|i| edges[i].clone())))
        .collect())
}

/// Searches for spanning trees `T^q ⊆ T^{q'}` for all `q <= q'`.
///
/// Exhaustive backtracking over all spanning trees per grade, visiting grades
/// in a linear extension of the poset. `Ok(None)` means no nested family
/// exists.
pub fn subfiltration_of_spanning_trees(
    f: &Filtration,
    budget: u64,
) -> Result<Option<Vec<SpanningTree>>, PersistenceError> {
    let mut remaining = budget;
    let n = f.poset().len();
    let mut candidates = Vec::with_capacity(n);
    for q in 0..n {
        candidates.push(enumerate_spanning_trees(&f.at(q), &mut remaining)?);
    }
    let order = f.poset().linear_extension();

    fn extend(
        f: &Filtration,
        order: &[usize],
        candidates: &[Vec<SpanningTree>],
        depth: usize,
        chosen: &mut Vec<Option<usize>>,
        remaining: &mut u64,
        budget: u64,
    ) -> Result<bool, PersistenceError> {
        if depth == order.len() {
            return Ok(true);
        }
        let q = order[depth];
        for (k, tree) in candidates[q].iter().enumerate() {
            if *remaining == 0 {
                return Err(PersistenceError::SearchBudgetExceeded { used: budget });
            }
            *remaining -= 1;
            let nested = order[..depth].iter().all(|&p| {
                !f.poset().leq(p, q)
                    || candidates[p][chosen[p].expect("assigned earlier")]
                        .edges()
                        .is_subset(tree.edges())
            });
            if nested {
                chosen[q] = Some(k);
                if extend(f, order, candidates, depth + 1, chosen, remaining, budget)? {
                    return Ok(true);
                }
                chosen[q] = None;
            }
        }
        Ok(false)
    }

    let mut chosen = vec![None; n];
    if extend(f, &order, &candidates, 0, &mut chosen, &mut remaining, budget)? {
        Ok(Some(
            chosen
                .into_iter()
                .enumerate()
                .map(|(q, k)| candidates[q][k.expect("all grades assigned")].clone())
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

/// For an order- and dimension-preserving simplicial map `f: X → Y`, checks
/// that `f` sends `X ⊟₁ T_X` into `Y ⊟₁ T_Y` for the order-minimal trees.
pub fn check_tau1_functoriality(
    map: &SimplicialMap,
    x: &OrderedSimplicialComplex,
    y: &OrderedSimplicialComplex,
) -> Result<bool, PersistenceError> {
    map.is_simplicial(x, y)?;
    let images = x
        .simplices()
        .iter()
        .map(|s| map.apply(s))
        .collect::<Result<Vec<_>, _>>()?;
    for (s, img) in x.simplices().iter().zip(&images) {
        if s.dim() != img.dim() {
            return Err(PersistenceError::NotDimensionPreserving(s.clone()));
        }
    }
    for (w, iw) in x.simplices().windows(2).zip(images.windows(2)) {
        if y.compare(&iw[0], &iw[1]).is_gt() {
            return Err(PersistenceError::NotOrderPreserving(w[0].clone(), w[1].clone()));
        }
    }

    let tx = order_minimal_spanning_tree(x);
    let ty = order_minimal_spanning_tree(y);
    let x_diff = x.n_difference(&tx.as_complex(x), 1)?;
    let y_diff = y.n_difference(&ty.as_complex(y), 1)?;
    let image: BTreeSet<Simplex> = x_diff
        .simplices()
        .iter()
        .map(|s| images[x.position(s).expect("subcomplex of x")].clone())
        .collect();
    Ok(image.iter().all(|s| y_diff.contains(s)))
}
