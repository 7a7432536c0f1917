use std::collections::BTreeSet;

use crate::complex::{OrderedSimplicialComplex, Simplex, Vertex};
use crate::poset::Poset;

use super::PersistenceError;

/// A poset-indexed family of subcomplexes of a total complex.
///
/// Each simplex carries the antichain of grades at which it enters; it is
/// present at `q` iff one of those grades is `<= q`. Multi-critical entries
/// are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    poset: Poset,
    complex: OrderedSimplicialComplex,
    /// Entry grades per simplex, aligned with `complex.simplices()`.
    entry: Vec<Vec<usize>>,
    vertex_labels: Vec<String>,
}

impl Filtration {
    /// `entry` lists the entry grades of every simplex of `complex`. Each list
    /// is reduced to its minimal elements; faces must enter no later than
    /// their cofaces.
    pub fn new(
        poset: Poset,
        complex: OrderedSimplicialComplex,
        entry: impl IntoIterator<Item = (Simplex, Vec<usize>)>,
    ) -> Result<Filtration, PersistenceError> {
        let max_vertex = complex.vertices().max().map_or(0, |v| v as usize + 1);
        let labels = (0..max_vertex).map(|v| v.to_string()).collect();
        Filtration::with_labels(poset, complex, entry, labels)
    }

    /// [`Filtration::new`] with display labels for vertices `0..labels.len()`.
    pub fn with_labels(
        poset: Poset,
        complex: OrderedSimplicialComplex,
        entry: impl IntoIterator<Item = (Simplex, Vec<usize>)>,
        vertex_labels: Vec<String>,
    ) -> Result<Filtration, PersistenceError> {
        let mut grades: Vec<Option<Vec<usize>>> = vec![None; complex.len()];
        for (s, g) in entry {
            let pos = complex
                .position(&s)
                .ok_or_else(|| PersistenceError::UnknownSimplex(s.clone()))?;
            if let Some(&bad) = g.iter().find(|&&q| q >= poset.len()) {
                return Err(PersistenceError::UnknownGrade(bad.to_string()));
            }
            if g.is_empty() {
                return Err(PersistenceError::MissingEntry(s));
            }
            let set: BTreeSet<usize> = g.into_iter().collect();
            grades[pos] = Some(poset.minimal_elements(&set));
        }
        let entry = grades
            .into_iter()
            .zip(complex.simplices())
            .map(|(g, s)| g.ok_or_else(|| PersistenceError::MissingEntry(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;

        let f = Filtration { poset, complex, entry, vertex_labels };
        f.check_face_grades()?;
        Ok(f)
    }

    /// Every simplex enters at the same (minimum) grade.
    pub fn constant(poset: Poset, complex: OrderedSimplicialComplex) -> Result<Filtration, PersistenceError> {
        let minimal = poset.minimal_elements(&(0..poset.len()).collect());
        let entry: Vec<_> = complex.simplices().iter().map(|s| (s.clone(), minimal.clone())).collect();
        Filtration::new(poset, complex, entry)
    }

    fn check_face_grades(&self) -> Result<(), PersistenceError> {
        for (i, s) in self.complex.simplices().iter().enumerate() {
            for f in s.facets() {
                let fi = self.complex.position(&f).expect("complex is face closed");
                for &g in &self.entry[i] {
                    if !self.entry[fi].iter().any(|&h| self.poset.leq(h, g)) {
                        return Err(PersistenceError::FaceGradeViolation {
                            face: self.format_simplex(&f),
                            coface: self.format_simplex(s),
                            grade: self.poset.id(g).to_owned(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// The union of all `X^q`.
    pub fn total_complex(&self) -> &OrderedSimplicialComplex {
        &self.complex
    }

    pub fn entry_grades(&self, s: &Simplex) -> Option<&[usize]> {
        self.complex.position(s).map(|i| self.entry[i].as_slice())
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn vertex_label(&self, v: Vertex) -> String {
        self.vertex_labels
            .get(v as usize)
            .cloned()
            .unwrap_or_else(|| v.to_string())
    }

    pub fn format_simplex(&self, s: &Simplex) -> String {
        s.vertices().iter().map(|&v| self.vertex_label(v)).collect::<Vec<_>>().join(" ")
    }

    /// Looks up a simplex by vertex labels.
    pub fn simplex_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Option<Simplex> {
        let verts = labels
            .iter()
            .map(|l| self.vertex_labels.iter().position(|x| x == l.as_ref()).map(|v| v as Vertex))
            .collect::<Option<Vec<_>>>()?;
        Simplex::new(verts).ok()
    }

    pub fn contains_at(&self, s: &Simplex, q: usize) -> bool {
        self.complex
            .position(s)
            .is_some_and(|i| self.entry[i].iter().any(|&g| self.poset.leq(g, q)))
    }

    /// `X^q` with the restricted simplicial order.
    pub fn at(&self, q: usize) -> OrderedSimplicialComplex {
        let mut i = 0;
        self.complex.restrict(|_| {
            let keep = self.entry[i].iter().any(|&g| self.poset.leq(g, q));
            i += 1;
            keep
        })
    }

    /// [`Filtration::at`] by grade id.
    pub fn filtration_at(&self, grade: &str) -> Result<OrderedSimplicialComplex, PersistenceError> {
        let q = self
            .poset
            .index_of(grade)
            .map_err(|_| PersistenceError::UnknownGrade(grade.to_owned()))?;
        Ok(self.at(q))
    }

    /// Grades in a fixed linear extension of the poset.
    pub fn grades(&self) -> Vec<usize> {
        self.poset.linear_extension()
    }
}
