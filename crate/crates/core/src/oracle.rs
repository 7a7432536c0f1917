//! Exact linear algebra used to cross-check everything else.
//!
//! Nothing in here knows about spanning trees. Ranks over ℤ and torsion come
//! from the Smith normal form, ranks over ℚ from rational Gaussian
//! elimination, ranks over ℤ/p from elimination mod p, and submodule equality
//! over ℤ from a canonical Hermite form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chains::{Chain, Ring};
use crate::complex::{OrderedSimplicialComplex, Simplex};

/// Dense matrix with arbitrary precision integer entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            for (j, v) in r.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Columns side by side; both must have the same row count.
    pub fn hcat(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out[(r, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination; square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = k * &self[(src, c)];
            self[(dst, c)] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = k * &self[(r, src)];
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    /// Matrix of `∂ₙ` with rows indexed by `(n−1)`-simplices and columns by
    /// `n`-simplices, both in simplicial order. Returns the index lists too.
    pub fn boundary(x: &OrderedSimplicialComplex, n: usize) -> (IntegerMatrix, Vec<Simplex>, Vec<Simplex>) {
        let cols: Vec<Simplex> = x.simplices_of_dim(n).cloned().collect();
        if n == 0 {
            return (IntegerMatrix::zeros(0, cols.len()), Vec::new(), cols);
        }
        let rows: Vec<Simplex> = x.simplices_of_dim(n - 1).cloned().collect();
        let row_of: BTreeMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for (i, f) in s.facets().enumerate() {
                m[(row_of[&f], j)] = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            }
        }
        (m, rows, cols)
    }

    /// One column per chain, rows indexed by `basis`. Rational columns are
    /// scaled to clear denominators, which preserves rank over ℚ.
    pub fn from_chains(chains: &[Chain], basis: &[Simplex]) -> IntegerMatrix {
        let row_of: BTreeMap<&Simplex, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = IntegerMatrix::zeros(basis.len(), chains.len());
        for (j, c) in chains.iter().enumerate() {
            let lcm = c
                .terms()
                .values()
                .fold(BigInt::one(), |acc, k| acc.lcm(k.denom()));
            for (s, k) in c.terms() {
                let scaled = k * BigRational::from_integer(lcm.clone());
                m[(row_of[s], j)] = scaled.to_integer();
            }
        }
        m
    }
}

/// `U·M·V = S` with `S` diagonal, `d₁ | d₂ | …`, nonnegative diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| d > &BigInt::one()).collect()
    }

    /// Checks `U·M·V = S`, diagonality, the divisibility chain and unimodularity.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        let diag = self.diagonal();
        let chain_ok = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            }
        });
        self.u.mul(m).mul(&self.v) == self.s
            && self.s.is_diagonal()
            && diag.iter().all(|d| !d.is_negative())
            && chain_ok
            && self.u.is_unimodular()
            && self.v.is_unimodular()
    }
}

/// Smith normal form over ℤ. Pivots are chosen with minimal absolute value.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = min_abs_entry(&s, t) else { break };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            // clear column t below the pivot
            let mut dirty = false;
            for r in t + 1..rows {
                if s[(r, t)].is_zero() {
                    continue;
                }
                let q = -s[(r, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                dirty |= !s[(r, t)].is_zero();
            }
            // clear row t right of the pivot
            for c in t + 1..cols {
                if s[(t, c)].is_zero() {
                    continue;
                }
                let q = -s[(t, c)].div_floor(&s[(t, t)]);
                s.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                dirty |= !s[(t, c)].is_zero();
            }
            if dirty {
                // a remainder survived: move the smallest entry of row/column t to the pivot
                let (pr, pc) = min_abs_in_cross(&s, t);
                s.swap_rows(t, pr);
                u.swap_rows(t, pr);
                s.swap_cols(t, pc);
                v.swap_cols(t, pc);
                continue;
            }
            // pivot must divide the rest of the trailing block
            let offender = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(&s[(r, c)] % &s[(t, t)]).is_zero());
            match offender {
                Some((r, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

fn min_abs_entry(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for r in t..m.rows {
        for c in t..m.cols {
            let a = m[(r, c)].abs();
            if !a.is_zero() && best.as_ref().is_none_or(|(_, b)| &a < b) {
                best = Some(((r, c), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

fn min_abs_in_cross(m: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut best = ((t, t), m[(t, t)].abs());
    let candidates = (t..m.rows).map(|r| (r, t)).chain((t..m.cols).map(|c| (t, c)));
    for (r, c) in candidates {
        let a = m[(r, c)].abs();
        if !a.is_zero() && (best.1.is_zero() || a < best.1) {
            best = ((r, c), a);
        }
    }
    best.0
}

/// Canonical basis of the lattice spanned by the rows of `m`: echelon form,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`, zero
/// rows dropped.
pub fn row_hermite_form(m: &IntegerMatrix) -> IntegerMatrix {
    let mut a = m.clone();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        loop {
            let best = (pivot_row..a.rows)
                .filter(|&r| !a[(r, c)].is_zero())
                .min_by(|&x, &y| a[(x, c)].abs().cmp(&a[(y, c)].abs()));
            let Some(r) = best else { break };
            a.swap_rows(pivot_row, r);
            let mut done = true;
            for r in pivot_row + 1..a.rows {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let q = -a[(r, c)].div_floor(&a[(pivot_row, c)]);
                a.add_row_multiple(r, pivot_row, &q);
                done &= a[(r, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if a[(pivot_row, c)].is_zero() {
            continue;
        }
        if a[(pivot_row, c)].is_negative() {
            a.negate_row(pivot_row);
        }
        pivots.push((pivot_row, c));
        pivot_row += 1;
    }
    for &(pr, pc) in &pivots {
        for r in 0..pr {
            let q = -a[(r, pc)].div_floor(&a[(pr, pc)]);
            if !q.is_zero() {
                a.add_row_multiple(r, pr, &q);
            }
        }
    }
    let mut out = IntegerMatrix::zeros(pivot_row, a.cols);
    for r in 0..pivot_row {
        for c in 0..a.cols {
            out[(r, c)] = a[(r, c)].clone();
        }
    }
    out
}

/// Canonical form of the column span of `m` (as rows of the result).
pub fn column_hermite_form(m: &IntegerMatrix) -> IntegerMatrix {
    row_hermite_form(&m.transpose())
}

/// Rank of `m` over the fraction field of `ring` (ℚ for ℤ) or over ℤ/p.
pub fn rank(m: &IntegerMatrix, ring: Ring) -> usize {
    match ring {
        Ring::Integers | Ring::Rationals => rational_rank(m),
        Ring::Prime(p) => modular_rank(m, p),
    }
}

/// Gaussian elimination over ℚ.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| BigRational::from_integer(m[(r, c)].clone())).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(p) = (rank..m.rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut().filter(|row| !row[c].is_zero()) {
            let f = &row[c] / &pivot_row[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Gaussian elimination over ℤ/p.
pub fn modular_rank(m: &IntegerMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let p = p as u128;
    let mut a: Vec<Vec<u128>> = (0..m.rows)
        .map(|r| {
            (0..m.cols)
                .map(|c| {
                    let v = m[(r, c)].mod_floor(&pb);
                    u128::try_from(v).expect("residue fits")
                })
                .collect()
        })
        .collect();
    let inv = |x: u128| -> u128 {
        // Fermat
        let (mut base, mut e, mut acc) = (x % p, p - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(pr) = (rank..m.rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pr);
        let pinv = inv(a[rank][c]);
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut().filter(|row| row[c] != 0) {
            let f = row[c] * pinv % p;
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Whether the column spans of `m` and `n` agree as submodules over `ring`.
pub fn image_submodule_equal(m: &IntegerMatrix, n: &IntegerMatrix, ring: Ring) -> bool {
    assert_eq!(m.rows, n.rows, "column spans live in different modules");
    match ring {
        Ring::Integers => column_hermite_form(m) == column_hermite_form(n),
        _ => {
            let rm = rank(m, ring);
            rm == rank(n, ring) && rm == rank(&m.hcat(n), ring)
        }
    }
}

/// Rank and torsion of one homology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub n: usize,
    pub ring: Ring,
    pub betti: usize,
    /// Invariant factors > 1; always empty over a field.
    pub torsion: Vec<BigInt>,
}

/// `Hₙ(X)` over `ring`: `betti = nullity(∂ₙ) − rank(∂ₙ₊₁)`.
pub fn homology(x: &OrderedSimplicialComplex, n: usize, ring: Ring) -> HomologySummary {
    let (dn, _, cols) = IntegerMatrix::boundary(x, n);
    let (dn1, _, _) = IntegerMatrix::boundary(x, n + 1);
    match ring {
        Ring::Integers => {
            let rank_n = smith_normal_form(&dn).rank();
            let snf = smith_normal_form(&dn1);
            HomologySummary {
                n,
                ring,
                betti: cols.len() - rank_n - snf.rank(),
                torsion: snf.torsion(),
            }
        }
        _ => HomologySummary {
            n,
            ring,
            betti: cols.len() - rank(&dn, ring) - rank(&dn1, ring),
            torsion: Vec::new(),
        },
    }
}

/// Rank of `Zₙ(X) = ker ∂ₙ` over `ring`.
pub fn cycle_rank(x: &OrderedSimplicialComplex, n: usize, ring: Ring) -> usize {
    let (dn, _, cols) = IntegerMatrix::boundary(x, n);
    cols.len() - rank(&dn, ring)
}

/// Whether the column span of `m` is a direct summand of ℤ^rows (all invariant
/// factors equal one).
pub fn is_saturated(m: &IntegerMatrix) -> bool {
    smith_normal_form(m).diagonal().iter().all(|d| d.is_zero() || d.is_one())
}
