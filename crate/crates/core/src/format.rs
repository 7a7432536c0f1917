//! Plain-text filtration files.
//!
//! ```text
//! filtration v1
//! # comments and blank lines are ignored
//! poset grid 3 3                 # or: poset elements a b c  + cover lines
//! cover a b                      # only with `poset elements`
//! vertices 1 2 3 4               # vertex labels; order fixes the vertex ids
//! order 1                        # optional, one simplex per line, all simplices
//! simplex 1 2 : 0,1              # vertex labels, then the entry grades
//! simplex 1 4 : 2,0 0,2
//! ```
//!
//! Every simplex of the complex needs its own `simplex` line. Without `order`
//! lines the simplicial order is by dimension, then lexicographic in vertex ids.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{ComplexError, OrderedSimplicialComplex, Simplex, Vertex};
use crate::persistence::{Filtration, PersistenceError};
use crate::poset::{Poset, PosetError};

pub const HEADER: &str = "filtration v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown poset element `{id}`")]
    UnknownPosetElement { line: usize, id: String },
    #[error("line {line}: face `{face}` enters after its coface `{coface}` (coface grade `{grade}`)")]
    FaceGradeViolation { line: usize, face: String, coface: String, grade: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Filtration(#[from] PersistenceError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

enum PosetSpec {
    Grid(Vec<usize>),
    Elements(Vec<String>),
}

pub fn parse_filtration(text: &str) -> Result<Filtration, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>() == ["filtration", "v1"] => {}
        Some((n, _)) => return Err(parse_err(n, format!("expected `{HEADER}`"))),
        None => return Err(parse_err(1, "empty file")),
    }

    let mut poset_spec: Option<(usize, PosetSpec)> = None;
    let mut covers: Vec<(usize, String, String)> = Vec::new();
    let mut labels: Option<Vec<String>> = None;
    let mut order: Vec<(usize, Vec<String>)> = Vec::new();
    let mut simplices: Vec<(usize, Vec<String>, Vec<String>)> = Vec::new();

    for (n, line) in lines {
        let mut words = line.split_whitespace();
        let keyword = words.next().expect("line is not blank");
        let rest: Vec<String> = words.map(str::to_owned).collect();
        match keyword {
            "poset" => {
                if poset_spec.is_some() {
                    return Err(parse_err(n, "second poset block"));
                }
                let spec = match rest.first().map(String::as_str) {
                    Some("grid") => {
                        let extents = rest[1..]
                            .iter()
                            .map(|w| w.parse::<usize>().map_err(|_| parse_err(n, format!("bad grid extent `{w}`"))))
                            .collect::<Result<Vec<_>, _>>()?;
                        if extents.is_empty() {
                            return Err(parse_err(n, "grid needs at least one extent"));
                        }
                        PosetSpec::Grid(extents)
                    }
                    Some("elements") => PosetSpec::Elements(rest[1..].to_vec()),
                    _ => return Err(parse_err(n, "expected `poset grid ...` or `poset elements ...`")),
                };
                poset_spec = Some((n, spec));
            }
            "cover" => {
                let [a, b] = <[String; 2]>::try_from(rest).map_err(|_| parse_err(n, "cover takes two elements"))?;
                covers.push((n, a, b));
            }
            "vertices" => {
                if labels.is_some() {
                    return Err(parse_err(n, "second vertices line"));
                }
                for (i, l) in rest.iter().enumerate() {
                    if rest[..i].contains(l) {
                        return Err(parse_err(n, format!("duplicate vertex `{l}`")));
                    }
                }
                labels = Some(rest);
            }
            "order" => {
                if rest.is_empty() {
                    return Err(parse_err(n, "empty simplex"));
                }
                order.push((n, rest));
            }
            "simplex" => {
                let colon = rest
                    .iter()
                    .position(|w| w == ":")
                    .ok_or_else(|| parse_err(n, "expected `simplex <vertices> : <grades>`"))?;
                let (verts, grades) = (rest[..colon].to_vec(), rest[colon + 1..].to_vec());
                if verts.is_empty() {
                    return Err(parse_err(n, "empty simplex"));
                }
                if grades.is_empty() {
                    return Err(parse_err(n, "simplex without entry grade"));
                }
                simplices.push((n, verts, grades));
            }
            other => return Err(parse_err(n, format!("unknown keyword `{other}`"))),
        }
    }

    let (poset_line, spec) = poset_spec.ok_or_else(|| parse_err(1, "missing poset block"))?;
    let poset = match spec {
        PosetSpec::Grid(extents) => {
            if let Some((n, _, _)) = covers.first() {
                return Err(parse_err(*n, "cover lines need `poset elements`"));
            }
            Poset::grid(&extents).map_err(|e| parse_err(poset_line, e.to_string()))?
        }
        PosetSpec::Elements(ids) => {
            for (n, a, b) in &covers {
                for id in [a, b] {
                    if !ids.contains(id) {
                        return Err(FormatError::UnknownPosetElement { line: *n, id: id.clone() });
                    }
                }
            }
            let pairs: Vec<(String, String)> = covers.iter().map(|(_, a, b)| (a.clone(), b.clone())).collect();
            Poset::from_covers(&ids, &pairs).map_err(|e| parse_err(poset_line, e.to_string()))?
        }
    };

    let labels = labels.unwrap_or_default();
    let vertex_of: BTreeMap<&str, Vertex> =
        labels.iter().enumerate().map(|(i, l)| (l.as_str(), i as Vertex)).collect();
    let to_simplex = |n: usize, verts: &[String]| -> Result<Simplex, FormatError> {
        let ids = verts
            .iter()
            .map(|v| vertex_of.get(v.as_str()).copied().ok_or_else(|| parse_err(n, format!("unknown vertex `{v}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Simplex::new(ids).map_err(|e| parse_err(n, e.to_string()))
    };

    let mut entries: Vec<(Simplex, Vec<usize>)> = Vec::with_capacity(simplices.len());
    let mut line_of: BTreeMap<Simplex, usize> = BTreeMap::new();
    for (n, verts, grades) in &simplices {
        let s = to_simplex(*n, verts)?;
        if line_of.insert(s.clone(), *n).is_some() {
            return Err(parse_err(*n, format!("simplex `{}` listed twice", verts.join(" "))));
        }
        let gs = grades
            .iter()
            .map(|g| poset.index_of(g).map_err(|_| FormatError::UnknownPosetElement { line: *n, id: g.clone() }))
            .collect::<Result<Vec<_>, _>>()?;
        entries.push((s, gs));
    }
    for (s, &n) in &line_of {
        for f in s.facets() {
            if !line_of.contains_key(&f) {
                let name = |s: &Simplex| s.vertices().iter().map(|&v| labels[v as usize].as_str()).collect::<Vec<_>>().join(" ");
                return Err(parse_err(n, format!("face `{}` of `{}` has no simplex line", name(&f), name(s))));
            }
        }
    }

    let mut complex = OrderedSimplicialComplex::from_simplices(entries.iter().map(|(s, _)| s.vertices().to_vec()))?;
    if !order.is_empty() {
        let listed = order
            .iter()
            .map(|(n, verts)| to_simplex(*n, verts))
            .collect::<Result<Vec<_>, _>>()?;
        complex = complex.with_order(listed)?;
    }

    match Filtration::with_labels(poset, complex, entries, labels.clone()) {
        Ok(f) => Ok(f),
        Err(PersistenceError::FaceGradeViolation { face, coface, grade }) => {
            let verts: Vec<String> = coface.split(' ').map(str::to_owned).collect();
            let line = to_simplex(0, &verts).ok().and_then(|s| line_of.get(&s).copied()).unwrap_or(0);
            Err(FormatError::FaceGradeViolation { line, face, coface, grade })
        }
        Err(e) => Err(e.into()),
    }
}

/// Serializes `f` so that [`parse_filtration`] gives it back.
pub fn write_filtration(f: &Filtration) -> String {
    let mut out = String::new();
    let poset = f.poset();
    writeln!(out, "{HEADER}").unwrap();
    match poset.grid_extents() {
        Some(ext) => {
            let ext: Vec<String> = ext.iter().map(usize::to_string).collect();
            writeln!(out, "poset grid {}", ext.join(" ")).unwrap();
        }
        None => {
            writeln!(out, "poset elements {}", poset.ids().join(" ")).unwrap();
            for (a, b) in poset.covers() {
                writeln!(out, "cover {} {}", poset.id(a), poset.id(b)).unwrap();
            }
        }
    }
    writeln!(out, "vertices {}", f.vertex_labels().join(" ")).unwrap();
    let x = f.total_complex();
    if !x.has_default_order() {
        for s in x.simplices() {
            writeln!(out, "order {}", f.format_simplex(s)).unwrap();
        }
    }
    for s in x.simplices() {
        let grades: Vec<&str> = f
            .entry_grades(s)
            .expect("simplex of the total complex")
            .iter()
            .map(|&g| poset.id(g))
            .collect();
        writeln!(out, "simplex {} : {}", f.format_simplex(s), grades.join(" ")).unwrap();
    }
    out
}
