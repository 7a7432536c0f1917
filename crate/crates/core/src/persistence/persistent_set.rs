use std::collections::{BTreeMap, BTreeSet};

use crate::poset::{Poset, UpperSet};
use crate::spanning::UnionFind;

use super::PersistenceError;

/// A set-valued functor on a finite poset.
///
/// Fibers are finite lists of elements; structure maps are stored for covering
/// pairs only and composed along chains of covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistentSet<K> {
    poset: Poset,
    fibers: Vec<Vec<K>>,
    cover_maps: BTreeMap<(usize, usize), Vec<usize>>,
}

impl<K: Ord + Clone> PersistentSet<K> {
    /// Fibers that grow by inclusion: `fiber(p) ⊆ fiber(q)` for `p <= q`,
    /// with structure maps the inclusions.
    pub fn from_inclusions(poset: &Poset, fibers: Vec<BTreeSet<K>>) -> Result<Self, PersistenceError> {
        let fibers: Vec<Vec<K>> = fibers.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut cover_maps = BTreeMap::new();
        for (p, q) in poset.covers() {
            let map = fibers[p]
                .iter()
                .map(|x| fibers[q].binary_search(x))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PersistenceError::BadStructureMap { from: p, to: q, reason: "not an inclusion" })?;
            cover_maps.insert((p, q), map);
        }
        Ok(PersistentSet { poset: poset.clone(), fibers, cover_maps })
    }

    /// Rebuilds the persistent set `⊔ₓ pt[Uₓ]` labelled by `x`.
    pub fn from_upper_sets(poset: &Poset, classes: &[UpperSetClass<K>]) -> Result<Self, PersistenceError> {
        let fibers = (0..poset.len())
            .map(|q| {
                classes
                    .iter()
                    .filter(|c| c.upper_set.contains(q))
                    .map(|c| c.element.clone())
                    .collect()
            })
            .collect();
        Self::from_inclusions(poset, fibers)
    }
}

impl<K: Clone> PersistentSet<K> {
    /// General structure maps, one per covering pair, each given as the index
    /// of the image element in the target fiber. Functoriality is checked.
    pub fn with_maps(
        poset: &Poset,
        fibers: Vec<Vec<K>>,
        cover_maps: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self, PersistenceError> {
        for (p, q) in poset.covers() {
            let Some(m) = cover_maps.get(&(p, q)) else {
                return Err(PersistenceError::BadStructureMap { from: p, to: q, reason: "missing" });
            };
            if m.len() != fibers[p].len() || m.iter().any(|&i| i >= fibers[q].len()) {
                return Err(PersistenceError::BadStructureMap { from: p, to: q, reason: "out of range" });
            }
        }
        let set = PersistentSet { poset: poset.clone(), fibers, cover_maps };
        set.composites()?;
        Ok(set)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn fiber(&self, q: usize) -> &[K] {
        &self.fibers[q]
    }

    pub fn fibers(&self) -> &[Vec<K>] {
        &self.fibers
    }

    /// Structure maps for every comparable pair, built along covers in a
    /// linear extension; fails if two cover paths disagree.
    #[allow(clippy::type_complexity)]
    pub fn composites(&self) -> Result<BTreeMap<(usize, usize), Vec<usize>>, PersistenceError> {
        let order = self.poset.linear_extension();
        let covers = self.poset.covers();
        let mut comp: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &p in &order {
            comp.insert((p, p), (0..self.fibers[p].len()).collect());
            for &q in &order {
                if !self.poset.lt(p, q) {
                    continue;
                }
                let mut result: Option<Vec<usize>> = None;
                for &(r, _) in covers.iter().filter(|&&(r, t)| t == q && self.poset.leq(p, r)) {
                    let step = &self.cover_maps[&(r, q)];
                    let via: Vec<usize> = comp[&(p, r)].iter().map(|&i| step[i]).collect();
                    match &result {
                        None => result = Some(via),
                        Some(prev) if *prev != via => {
                            return Err(PersistenceError::BadStructureMap { from: p, to: q, reason: "not functorial" })
                        }
                        Some(_) => {}
                    }
                }
                comp.insert((p, q), result.expect("some cover below q lies above p"));
            }
        }
        Ok(comp)
    }
}

/// The colimit as a quotient of the disjoint union of fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub classes: usize,
    /// `projection[q][i]` is the class of element `i` of `fiber(q)`.
    pub projection: Vec<Vec<usize>>,
}

impl Colimit {
    pub fn is_injective_at(&self, q: usize) -> bool {
        let p = &self.projection[q];
        p.iter().collect::<BTreeSet<_>>().len() == p.len()
    }

    /// First grade with a non-injective projection.
    pub fn first_non_injective(&self) -> Option<usize> {
        (0..self.projection.len()).find(|&q| !self.is_injective_at(q))
    }
}

/// Identifies each element with its images under the structure maps. Classes
/// are numbered by first appearance over grades in index order.
pub fn colimit_persistent_set<K: Clone>(set: &PersistentSet<K>) -> Colimit {
    let offsets: Vec<usize> = set
        .fibers
        .iter()
        .scan(0, |acc, f| {
            let o = *acc;
            *acc += f.len();
            Some(o)
        })
        .collect();
    let total: usize = set.fibers.iter().map(Vec::len).sum();
    let mut uf = UnionFind::new(total);
    for (&(p, q), m) in &set.cover_maps {
        for (i, &j) in m.iter().enumerate() {
            uf.union(offsets[p] + i, offsets[q] + j);
        }
    }
    let mut label: BTreeMap<usize, usize> = BTreeMap::new();
    let projection = set
        .fibers
        .iter()
        .enumerate()
        .map(|(q, f)| {
            (0..f.len())
                .map(|i| {
                    let root = uf.find(offsets[q] + i);
                    let next = label.len();
                    *label.entry(root).or_insert(next)
                })
                .collect()
        })
        .collect();
    Colimit { classes: label.len(), projection }
}

/// One colimit class `x` with a representative element and its support `Uₓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperSetClass<K> {
    pub element: K,
    pub upper_set: UpperSet,
}

/// Splits a persistent set with injective colimit projections into upper set
/// pieces `Uₓ = { q : x ∈ ι_q(B(q)) }`.
pub fn upper_set_decompose<K: Clone>(set: &PersistentSet<K>) -> Result<Vec<UpperSetClass<K>>, PersistenceError> {
    let colim = colimit_persistent_set(set);
    if let Some(grade) = colim.first_non_injective() {
        return Err(PersistenceError::NotInjective { grade });
    }
    let mut members: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); colim.classes];
    let mut reps: Vec<Option<K>> = vec![None; colim.classes];
    for (q, proj) in colim.projection.iter().enumerate() {
        for (i, &x) in proj.iter().enumerate() {
            members[x].insert(q);
            reps[x].get_or_insert_with(|| set.fibers[q][i].clone());
        }
    }
    members
        .into_iter()
        .zip(reps)
        .map(|(m, rep)| {
            let upper_set = set
                .poset
                .upper_set(m)
                .expect("supports of colimit classes are upward closed");
            Ok(UpperSetClass { element: rep.expect("every class has an element"), upper_set })
        })
        .collect()
}
