use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::chains::{Chain, Ring};
use crate::complex::Simplex;
use crate::oracle::{self, IntegerMatrix};
use crate::spanning::fundamental_cycle;

use super::{
    cofiltration_of_spanning_trees, upper_set_decompose, Filtration, PersistenceError, PersistentSet,
    SpanningCofiltration, UpperSetClass,
};

/// `B_σ^q = { σ − c_σ(T^{q'}) : q' <= q, σ ∈ X^{q'} \ T^{q'} }` with inclusions
/// as structure maps.
pub fn representative_persistent_set(
    f: &Filtration,
    trees: &SpanningCofiltration,
    sigma: &Simplex,
    ring: Ring,
) -> Result<PersistentSet<Chain>, PersistenceError> {
    let poset = f.poset();
    let mut cycles: Vec<Option<Chain>> = vec![None; poset.len()];
    for (q, slot) in cycles.iter_mut().enumerate() {
        if f.contains_at(sigma, q) && !trees.tree(q).contains(sigma) {
            *slot = Some(fundamental_cycle(trees.tree(q), sigma, ring)?);
        }
    }
    if cycles.iter().all(Option::is_none) {
        return Err(PersistenceError::EdgeNeverExcluded(sigma.clone()));
    }
    let fibers = (0..poset.len())
        .map(|q| {
            cycles
                .iter()
                .enumerate()
                .filter(|&(p, _)| poset.leq(p, q))
                .filter_map(|(_, z)| z.clone())
                .collect::<BTreeSet<Chain>>()
        })
        .collect();
    PersistentSet::from_inclusions(poset, fibers)
}

/// One summand `k[B_σ] = ⊕ₓ k[pt[Uₓ]]` of the precover.
#[derive(Clone, Debug)]
pub struct Summand {
    pub edge: Simplex,
    pub set: PersistentSet<Chain>,
    pub classes: Vec<UpperSetClass<Chain>>,
}

/// `⊕_σ k[B_σ]` over the edges excluded from some tree of the cofiltration.
#[derive(Clone, Debug)]
pub struct Precover {
    pub ring: Ring,
    pub trees: SpanningCofiltration,
    pub summands: Vec<Summand>,
}

impl Precover {
    /// All upper set pieces, in summand order.
    pub fn classes(&self) -> impl Iterator<Item = (&Simplex, &UpperSetClass<Chain>)> + '_ {
        self.summands.iter().flat_map(|s| s.classes.iter().map(move |c| (&s.edge, c)))
    }

    /// Number of free generators alive at `q`.
    pub fn rank_at(&self, q: usize) -> usize {
        self.classes().filter(|(_, c)| c.upper_set.contains(q)).count()
    }

    /// Images of the generators alive at `q` under the evaluation map.
    pub fn generators_at(&self, q: usize) -> Vec<&Chain> {
        self.classes()
            .filter(|(_, c)| c.upper_set.contains(q))
            .map(|(_, c)| &c.element)
            .collect()
    }
}

/// The precover for the cofiltration of order-minimal spanning trees.
pub fn precover(f: &Filtration, ring: Ring) -> Result<Precover, PersistenceError> {
    let trees = cofiltration_of_spanning_trees(f);
    precover_for(f, trees, ring)
}

/// The precover for a given cofiltration of spanning trees.
pub fn precover_for(f: &Filtration, trees: SpanningCofiltration, ring: Ring) -> Result<Precover, PersistenceError> {
    super::is_cofiltration(f, trees.trees()).map_err(|d| PersistenceError::NotACofiltration(d.to_string()))?;
    let excluded: BTreeSet<&Simplex> = (0..f.poset().len())
        .flat_map(|q| {
            let t = trees.tree(q);
            f.total_complex().edges().filter(move |e| f.contains_at(e, q) && !t.contains(e))
        })
        .collect();
    let mut summands = Vec::new();
    for edge in f.total_complex().edges().filter(|e| excluded.contains(e)) {
        let set = representative_persistent_set(f, &trees, edge, ring)?;
        let classes = upper_set_decompose(&set)?;
        summands.push(Summand { edge: edge.clone(), set, classes });
    }
    Ok(Precover { ring, trees, summands })
}

/// Surjectivity of the evaluation map at one grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeCheck {
    pub grade: usize,
    pub cycle_rank: usize,
    pub precover_rank: usize,
    pub image_rank: usize,
    pub h1_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Every generator is a cycle of `X^q`.
    pub cycles_valid: bool,
    /// Over ℤ: the image is a direct summand of the edge module. Always true
    /// over a field.
    pub saturated: bool,
    pub surjective: bool,
}

/// Evaluates the precover at every grade and compares the image with `Z₁(X^q)`.
pub fn precover_map_and_check(f: &Filtration, precover: &Precover) -> Vec<GradeCheck> {
    let ring = precover.ring;
    (0..f.poset().len())
        .map(|q| {
            let xq = f.at(q);
            let edges: Vec<Simplex> = xq.edges().cloned().collect();
            let gens: Vec<Chain> = precover.generators_at(q).into_iter().cloned().collect();
            let cycles_valid = gens
                .iter()
                .all(|z| z.support().all(|s| xq.contains(s)) && z.boundary().is_zero());
            let m = if cycles_valid {
                IntegerMatrix::from_chains(&gens, &edges)
            } else {
                IntegerMatrix::zeros(edges.len(), 0)
            };
            let image_rank = oracle::rank(&m, ring);
            let cycle_rank = oracle::cycle_rank(&xq, 1, ring);
            let saturated = ring != Ring::Integers || oracle::is_saturated(&m);
            let h1 = oracle::homology(&xq, 1, ring);
            GradeCheck {
                grade: q,
                cycle_rank,
                precover_rank: gens.len(),
                image_rank,
                h1_rank: h1.betti,
                torsion: h1.torsion,
                cycles_valid,
                saturated,
                surjective: cycles_valid && saturated && image_rank == cycle_rank,
            }
        })
        .collect()
}

/// First grade where the evaluation map is not onto.
pub fn ensure_epimorphism(f: &Filtration, checks: &[GradeCheck]) -> Result<(), PersistenceError> {
    match checks.iter().find(|c| !c.surjective) {
        Some(c) => Err(PersistenceError::EpimorphismFailed { grade: f.poset().id(c.grade).to_owned() }),
        None => Ok(()),
    }
}
