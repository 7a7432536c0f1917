//! Subcommands of the `cofil` tool. Each command turns a parsed filtration
//! into a serializable report plus an exit status.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use cofil_core::chains::{Chain, Ring};
use cofil_core::format::{parse_filtration, write_filtration, FormatError};
use cofil_core::oracle;
use cofil_core::persistence::{
    check_tau1_functoriality, cofiltration_of_spanning_trees, is_cofiltration, precover, precover_map_and_check,
    subfiltration_of_spanning_trees, Filtration, PersistenceError, DEFAULT_SEARCH_BUDGET,
};
use cofil_core::spanning::{n_spanning_complex, order_minimal_spanning_tree, SpanVerification, SpanningError};
use cofil_core::{OrderedSimplicialComplex, Simplex, SimplicialMap};

pub const SCHEMA: &str = "cofil-report/1";

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error(transparent)]
    Spanning(#[from] SpanningError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Tree,
    Cofiltration,
    Subfiltration,
    Precover,
    SpanN,
    Homology,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Tree => "tree",
            Command::Cofiltration => "cofiltration",
            Command::Subfiltration => "subfiltration",
            Command::Precover => "precover",
            Command::SpanN => "span-n",
            Command::Homology => "homology",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub ring: Ring,
    pub grade: Option<String>,
    pub n: usize,
    pub budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { ring: Ring::Integers, grade: None, n: 1, budget: DEFAULT_SEARCH_BUDGET }
    }
}

/// A report and the exit status it implies.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit: u8,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub ring: String,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Body {
    Tree(TreeReport),
    Cofiltration(CofiltrationReport),
    Subfiltration(SubfiltrationReport),
    Precover(PrecoverReport),
    SpanN(SpanReport),
    Homology(HomologyReport),
    Verify(VerifyReport),
}

/// Vertex labels of a simplex joined by single spaces.
pub type Labels = String;

#[derive(Debug, Serialize)]
pub struct TreeReport {
    pub grade: String,
    pub tree: Vec<Labels>,
    pub complement: Vec<Labels>,
}

#[derive(Debug, Serialize)]
pub struct CofiltrationReport {
    pub grades: Vec<TreeReport>,
    pub complement_monotone: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SubfiltrationReport {
    pub exists: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trees: Vec<TreeReport>,
}

#[derive(Debug, Serialize)]
pub struct Term {
    pub coefficient: String,
    pub simplex: Labels,
}

#[derive(Debug, Serialize)]
pub struct SummandReport {
    pub edge: Labels,
    pub cycle: Vec<Term>,
    pub generators: Vec<String>,
    pub grades: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct RankRow {
    pub grade: String,
    pub precover_rank: usize,
    pub image_rank: usize,
    pub z1_rank: usize,
    pub h1_rank: usize,
    pub torsion: Vec<String>,
    pub surjective: bool,
}

#[derive(Debug, Serialize)]
pub struct PrecoverReport {
    pub summands: Vec<SummandReport>,
    pub ranks: Vec<RankRow>,
    pub epimorphism: bool,
}

#[derive(Debug, Serialize)]
pub struct SpanReport {
    pub grade: String,
    pub n: usize,
    pub kept: Vec<Labels>,
    pub excluded: Vec<Labels>,
    pub verified: bool,
}

#[derive(Debug, Serialize)]
pub struct HomologyGroup {
    pub n: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct HomologyRow {
    pub grade: String,
    pub groups: Vec<HomologyGroup>,
}

#[derive(Debug, Serialize)]
pub struct HomologyReport {
    pub grades: Vec<HomologyRow>,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

pub fn read_filtration(path: &str) -> Result<Filtration, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    Ok(parse_filtration(&text)?)
}

pub fn run(command: Command, f: &Filtration, opts: &Options) -> Result<Outcome, CliError> {
    let (body, exit) = match command {
        Command::Tree => (Body::Tree(tree(f, opts)?), EXIT_OK),
        Command::Cofiltration => {
            let r = cofiltration(f);
            let exit = if r.complement_monotone { EXIT_OK } else { EXIT_VIOLATION };
            (Body::Cofiltration(r), exit)
        }
        Command::Subfiltration => {
            let r = subfiltration(f, opts)?;
            let exit = if r.exists { EXIT_OK } else { EXIT_VIOLATION };
            (Body::Subfiltration(r), exit)
        }
        Command::Precover => {
            let r = precover_report(f, opts.ring)?;
            let exit = if r.epimorphism { EXIT_OK } else { EXIT_VIOLATION };
            (Body::Precover(r), exit)
        }
        Command::SpanN => {
            let r = span_n(f, opts)?;
            let exit = if r.verified { EXIT_OK } else { EXIT_VIOLATION };
            (Body::SpanN(r), exit)
        }
        Command::Homology => (Body::Homology(homology(f, opts.ring)), EXIT_OK),
        Command::Verify => {
            let r = verify(f, opts);
            let exit = if r.passed { EXIT_OK } else { EXIT_VIOLATION };
            (Body::Verify(r), exit)
        }
    };
    let report = Report { schema: SCHEMA, command: command.name(), ring: opts.ring.to_string(), body };
    Ok(Outcome { report, exit })
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn labels(f: &Filtration, s: &Simplex) -> Labels {
    f.format_simplex(s)
}

fn grade_of(f: &Filtration, opts: &Options) -> Result<usize, CliError> {
    match &opts.grade {
        Some(id) => f
            .poset()
            .index_of(id)
            .map_err(|_| CliError::Usage(format!("unknown grade `{id}`"))),
        None => f
            .grades()
            .last()
            .copied()
            .ok_or_else(|| CliError::Usage("the poset is empty".into())),
    }
}

fn tree_report(f: &Filtration, q: usize, tree: &cofil_core::SpanningTree) -> TreeReport {
    let xq = f.at(q);
    TreeReport {
        grade: f.poset().id(q).to_owned(),
        tree: xq.edges().filter(|e| tree.contains(e)).map(|e| labels(f, e)).collect(),
        complement: xq.edges().filter(|e| !tree.contains(e)).map(|e| labels(f, e)).collect(),
    }
}

fn tree(f: &Filtration, opts: &Options) -> Result<TreeReport, CliError> {
    let q = grade_of(f, opts)?;
    Ok(tree_report(f, q, &order_minimal_spanning_tree(&f.at(q))))
}

fn cofiltration(f: &Filtration) -> CofiltrationReport {
    let t = cofiltration_of_spanning_trees(f);
    let check = is_cofiltration(f, t.trees());
    CofiltrationReport {
        grades: f.grades().into_iter().map(|q| tree_report(f, q, t.tree(q))).collect(),
        complement_monotone: check.is_ok(),
        defect: check.err().map(|d| d.to_string()),
    }
}

fn subfiltration(f: &Filtration, opts: &Options) -> Result<SubfiltrationReport, CliError> {
    Ok(match subfiltration_of_spanning_trees(f, opts.budget)? {
        Some(trees) => SubfiltrationReport {
            exists: true,
            trees: f.grades().into_iter().map(|q| tree_report(f, q, &trees[q])).collect(),
        },
        None => SubfiltrationReport { exists: false, trees: Vec::new() },
    })
}

fn terms(f: &Filtration, z: &Chain) -> Vec<Term> {
    let x = f.total_complex();
    let mut support: Vec<&Simplex> = z.support().collect();
    support.sort_by_key(|s| x.position(s));
    support
        .into_iter()
        .map(|s| Term { coefficient: z.coefficient(s).to_string(), simplex: labels(f, s) })
        .collect()
}

fn precover_report(f: &Filtration, ring: Ring) -> Result<PrecoverReport, CliError> {
    let p = precover(f, ring)?;
    let order = f.grades();
    let ids = |set: &BTreeSet<usize>| -> Vec<String> {
        order.iter().filter(|q| set.contains(q)).map(|&q| f.poset().id(q).to_owned()).collect()
    };
    let summands = p
        .classes()
        .map(|(edge, class)| {
            let gens: BTreeSet<usize> = class.upper_set.generators(f.poset()).into_iter().collect();
            SummandReport {
                edge: labels(f, edge),
                cycle: terms(f, &class.element),
                generators: ids(&gens),
                grades: ids(class.upper_set.members()),
            }
        })
        .collect();
    let checks = precover_map_and_check(f, &p);
    let ranks = order
        .iter()
        .map(|&q| {
            let c = &checks[q];
            RankRow {
                grade: f.poset().id(q).to_owned(),
                precover_rank: c.precover_rank,
                image_rank: c.image_rank,
                z1_rank: c.cycle_rank,
                h1_rank: c.h1_rank,
                torsion: c.torsion.iter().map(ToString::to_string).collect(),
                surjective: c.surjective,
            }
        })
        .collect();
    Ok(PrecoverReport { summands, ranks, epimorphism: checks.iter().all(|c| c.surjective) })
}

fn span_n(f: &Filtration, opts: &Options) -> Result<SpanReport, CliError> {
    let q = grade_of(f, opts)?;
    let a = n_spanning_complex(&f.at(q), opts.n, opts.ring)?;
    Ok(SpanReport {
        grade: f.poset().id(q).to_owned(),
        n: opts.n,
        kept: a.complex.simplices_of_dim(opts.n).map(|s| labels(f, s)).collect(),
        excluded: a.excluded.iter().map(|s| labels(f, s)).collect(),
        verified: a.verification == SpanVerification::Verified,
    })
}

fn homology(f: &Filtration, ring: Ring) -> HomologyReport {
    let grades = f
        .grades()
        .into_iter()
        .map(|q| {
            let xq = f.at(q);
            let top = xq.dim().unwrap_or(0);
            let groups = (0..=top)
                .map(|n| {
                    let h = oracle::homology(&xq, n, ring);
                    HomologyGroup { n, rank: h.betti, torsion: h.torsion.iter().map(ToString::to_string).collect() }
                })
                .collect();
            HomologyRow { grade: f.poset().id(q).to_owned(), groups }
        })
        .collect();
    HomologyReport { grades }
}

fn check(name: &'static str, result: Result<(), String>) -> Check {
    Check { name, passed: result.is_ok(), detail: result.err() }
}

fn first_failure<I: IntoIterator<Item = Result<(), String>>>(items: I) -> Result<(), String> {
    items.into_iter().collect()
}

fn verify(f: &Filtration, opts: &Options) -> VerifyReport {
    let poset = f.poset();
    let n = poset.len();
    let complexes: Vec<OrderedSimplicialComplex> = (0..n).map(|q| f.at(q)).collect();
    let comparable: Vec<(usize, usize)> =
        (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).filter(|&(p, q)| p != q && poset.leq(p, q)).collect();
    let mut checks = Vec::new();

    checks.push(check(
        "face closure",
        first_failure(complexes.iter().enumerate().map(|(q, x)| {
            if x.faces_precede_cofaces() {
                Ok(())
            } else {
                Err(format!("X^{} is not face closed", poset.id(q)))
            }
        })),
    ));
    checks.push(check(
        "monotone",
        first_failure(comparable.iter().map(|&(p, q)| {
            if complexes[p].is_subcomplex_of(&complexes[q]) {
                Ok(())
            } else {
                Err(format!("X^{} is not contained in X^{}", poset.id(p), poset.id(q)))
            }
        })),
    ));
    checks.push(check(
        "text round trip",
        match parse_filtration(&write_filtration(f)) {
            Ok(g) if g == *f => Ok(()),
            Ok(_) => Err("reparsed filtration differs".into()),
            Err(e) => Err(e.to_string()),
        },
    ));

    let t = cofiltration_of_spanning_trees(f);
    checks.push(check("cofiltration", is_cofiltration(f, t.trees()).map_err(|d| d.to_string())));
    checks.push(check(
        "complement size equals cycle rank",
        first_failure((0..n).map(|q| {
            let excluded = t.complement(f, q).len();
            let nullity = oracle::cycle_rank(&complexes[q], 1, opts.ring);
            if excluded == nullity {
                Ok(())
            } else {
                Err(format!("grade {}: {excluded} excluded edges, cycle rank {nullity}", poset.id(q)))
            }
        })),
    ));
    checks.push(check(
        "inclusions preserve 1-differences",
        first_failure(poset.covers().into_iter().map(|(p, q)| {
            let inclusion = SimplicialMap::identity(complexes[p].vertices());
            match check_tau1_functoriality(&inclusion, &complexes[p], &complexes[q]) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("{} -> {}", poset.id(p), poset.id(q))),
                Err(e) => Err(e.to_string()),
            }
        })),
    ));
    checks.push(check(
        "precover epimorphism",
        match precover(f, opts.ring) {
            Ok(p) => first_failure(precover_map_and_check(f, &p).into_iter().map(|c| {
                if c.surjective {
                    Ok(())
                } else {
                    Err(format!("grade {}: image rank {} of {}", poset.id(c.grade), c.image_rank, c.cycle_rank))
                }
            })),
            Err(e) => Err(e.to_string()),
        },
    ));
    checks.push(check(
        "spanning complexes",
        first_failure((0..n).flat_map(|q| {
            let x = &complexes[q];
            (1..=x.dim().unwrap_or(0)).map(move |k| match n_spanning_complex(x, k, opts.ring) {
                Ok(a) => {
                    let zero_kernel = oracle::cycle_rank(&a.complex, k, opts.ring) == 0;
                    match (a.check(), zero_kernel) {
                        (Ok(()), true) => Ok(()),
                        (Ok(()), false) => Err(format!("grade {} n={k}: kernel is nonzero", f.poset().id(q))),
                        (Err(e), _) => Err(format!("grade {}: {e}", f.poset().id(q))),
                    }
                }
                Err(e) => Err(e.to_string()),
            })
        })),
    ));

    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { checks, passed }
}
