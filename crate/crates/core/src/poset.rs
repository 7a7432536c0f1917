//! Finite partially ordered index sets.
//!
//! A [`Poset`] stores its order as a dense reachability table computed once at
//! construction, so `leq` is a constant-time bit lookup. Elements are addressed
//! by their position (`usize`) and carry an opaque textual id used in files and
//! reports. Grid posets use ids of the form `"a,b,c"`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation has a cycle through `{0}` and `{1}`")]
    CycleInRelation(String, String),
    #[error("unknown poset element `{0}`")]
    UnknownElement(String),
    #[error("duplicate poset element `{0}`")]
    DuplicateElement(String),
    #[error("grid extent {0} is zero")]
    EmptyExtent(usize),
}

/// Row-major bit table, `bits[p]` holds the set `{ q : p <= q }`.
#[derive(Clone, PartialEq, Eq)]
struct BitTable {
    words: usize,
    bits: Vec<u64>,
}

impl BitTable {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitTable { words, bits: vec![0; words * n] }
    }

    #[inline]
    fn get(&self, p: usize, q: usize) -> bool {
        self.bits[p * self.words + q / 64] >> (q % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, p: usize, q: usize) {
        self.bits[p * self.words + q / 64] |= 1 << (q % 64);
    }

    /// `row[dst] |= row[src]`; returns whether anything changed.
    fn or_row(&mut self, dst: usize, src: usize) -> bool {
        let mut changed = false;
        for w in 0..self.words {
            let s = self.bits[src * self.words + w];
            let d = &mut self.bits[dst * self.words + w];
            let next = *d | s;
            changed |= next != *d;
            *d = next;
        }
        changed
    }
}

/// A finite partial order.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    up: BitTable,
    grid: Option<Vec<usize>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("ids", &self.ids)
            .field("covers", &self.covers())
            .finish()
    }
}

impl Poset {
    /// Builds the reflexive-transitive closure of `covers`.
    pub fn from_covers<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Poset, PosetError> {
        let ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut index = BTreeMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(id.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(s.as_ref().to_owned()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            pairs.push((lookup(a)?, lookup(b)?));
        }
        let up = closure(ids.len(), &pairs);
        for p in 0..ids.len() {
            for q in (p + 1)..ids.len() {
                if up.get(p, q) && up.get(q, p) {
                    return Err(PosetError::CycleInRelation(ids[p].clone(), ids[q].clone()));
                }
            }
        }
        Ok(Poset { ids, index, up, grid: None })
    }

    /// The product of chains `0 < 1 < ... < e-1`, one per extent, ordered componentwise.
    pub fn grid(extents: &[usize]) -> Result<Poset, PosetError> {
        if let Some(axis) = extents.iter().position(|&e| e == 0) {
            return Err(PosetError::EmptyExtent(axis));
        }
        let coords = grid_coords(extents);
        let ids: Vec<String> = coords.iter().map(|c| grid_id(c)).collect();
        let index = ids.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let n = coords.len();
        let mut up = BitTable::new(n);
        for p in 0..n {
            for q in 0..n {
                if coords[p].iter().zip(&coords[q]).all(|(a, b)| a <= b) {
                    up.set(p, q);
                }
            }
        }
        Ok(Poset { ids, index, up, grid: Some(extents.to_vec()) })
    }

    /// A chain `0 < 1 < ... < len-1`.
    pub fn chain(len: usize) -> Result<Poset, PosetError> {
        Poset::grid(&[len])
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, p: usize) -> &str {
        &self.ids[p]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(id.to_owned()))
    }

    /// Grid extents when the poset was built by [`Poset::grid`].
    pub fn grid_extents(&self) -> Option<&[usize]> {
        self.grid.as_deref()
    }

    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up.get(p, q)
    }

    #[inline]
    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq(p, q)
    }

    pub fn comparable(&self, p: usize, q: usize) -> bool {
        self.leq(p, q) || self.leq(q, p)
    }

    /// All `q` with `p <= q`.
    pub fn up(&self, p: usize) -> UpperSet {
        UpperSet { members: (0..self.len()).filter(|&q| self.leq(p, q)).collect() }
    }

    /// Covering pairs `(p, q)`: `p < q` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if self.lt(p, q) && !(0..n).any(|r| self.lt(p, r) && self.lt(r, q)) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// A deterministic linear extension: repeatedly take the smallest-index minimal element.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&q| !placed[q] && (0..n).all(|p| placed[p] || !self.lt(p, q)))
                .expect("partial order has a minimal element");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// Minimal elements of `set`, in index order.
    pub fn minimal_elements(&self, set: &BTreeSet<usize>) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&q| !set.iter().any(|&p| self.lt(p, q)))
            .collect()
    }

    pub fn is_antichain(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &p)| set[i + 1..].iter().all(|&q| !self.comparable(p, q)))
    }

    pub fn is_upper_set(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&a| (0..self.len()).all(|q| !self.leq(a, q) || set.contains(&q)))
    }

    /// [`Poset::is_upper_set`] over element ids.
    pub fn is_upper_set_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<bool, PosetError> {
        let set = ids
            .iter()
            .map(|s| self.index_of(s.as_ref()))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(self.is_upper_set(&set))
    }

    /// Wraps `set` after checking upward closure.
    pub fn upper_set(&self, set: BTreeSet<usize>) -> Option<UpperSet> {
        self.is_upper_set(&set).then_some(UpperSet { members: set })
    }

    /// Union of the principal upper sets of `generators`.
    pub fn upper_closure(&self, generators: &[usize]) -> UpperSet {
        UpperSet {
            members: (0..self.len())
                .filter(|&q| generators.iter().any(|&g| self.leq(g, q)))
                .collect(),
        }
    }
}

fn closure(n: usize, pairs: &[(usize, usize)]) -> BitTable {
    let mut up = BitTable::new(n);
    for p in 0..n {
        up.set(p, p);
    }
    for &(a, b) in pairs {
        up.set(a, b);
    }
    // Warshall: if p <= k then up(p) includes up(k).
    for k in 0..n {
        for p in 0..n {
            if p != k && up.get(p, k) {
                up.or_row(p, k);
            }
        }
    }
    up
}

fn grid_coords(extents: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &e in extents {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..e).map(move |i| {
                    let mut c = prefix.clone();
                    c.push(i);
                    c
                })
            })
            .collect();
    }
    out
}

pub fn grid_id(coords: &[usize]) -> String {
    coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// An upward closed set of poset elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UpperSet {
    members: BTreeSet<usize>,
}

impl UpperSet {
    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, q: usize) -> bool {
        self.members.contains(&q)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn union(&self, other: &UpperSet) -> UpperSet {
        UpperSet { members: self.members.union(&other.members).copied().collect() }
    }

    pub fn intersection(&self, other: &UpperSet) -> UpperSet {
        UpperSet { members: self.members.intersection(&other.members).copied().collect() }
    }

    /// Minimal generators of the set.
    pub fn generators(&self, poset: &Poset) -> Vec<usize> {
        poset.minimal_elements(&self.members)
    }
}
