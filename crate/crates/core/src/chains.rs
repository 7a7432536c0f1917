//! Sparse chains with exact coefficients in ℤ, ℚ or ℤ/p.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::{OrderedSimplicialComplex, Simplex};

/// Coefficient values are stored as rationals normalized for their ring:
/// integers for ℤ, reduced residues `0..p` for ℤ/p.
pub type Coefficient = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("chain dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("boundary of a 0-chain")]
    DimensionZero,
    #[error("leading simplex of the zero chain")]
    ZeroChain,
    #[error("{value} is not an element of {ring}")]
    NotInRing { ring: Ring, value: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown coefficient ring `{0}` (expected z, q or zp:<p>)")]
    UnknownRing(String),
    #[error("simplex {0} does not have dimension {1}")]
    WrongSimplexDimension(Simplex, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Ring {
    #[default]
    Integers,
    Rationals,
    /// ℤ/p, `p` prime.
    Prime(u64),
}

impl Ring {
    pub fn prime(p: u64) -> Result<Ring, ChainError> {
        if is_prime(p) {
            Ok(Ring::Prime(p))
        } else {
            Err(ChainError::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// Brings `x` into canonical form for this ring.
    pub fn normalize(self, x: BigRational) -> Result<Coefficient, ChainError> {
        match self {
            Ring::Rationals => Ok(x),
            Ring::Integers if x.is_integer() => Ok(x),
            Ring::Integers => Err(ChainError::NotInRing { ring: self, value: x.to_string() }),
            Ring::Prime(p) => {
                let p = BigInt::from(p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(ChainError::NotInRing { ring: self, value: x.to_string() });
                }
                let inv = mod_inverse(&den, &p);
                let r = (x.numer().mod_floor(&p) * inv).mod_floor(&p);
                Ok(BigRational::from_integer(r))
            }
        }
    }

    pub fn from_int(self, v: i64) -> Coefficient {
        self.normalize(BigRational::from_integer(v.into())).expect("integers embed in every ring")
    }

    pub fn add(self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        self.normalize(a + b).expect("closed under addition")
    }

    pub fn mul(self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        self.normalize(a * b).expect("closed under multiplication")
    }

    pub fn neg(self, a: &Coefficient) -> Coefficient {
        self.normalize(-a).expect("closed under negation")
    }

    /// Multiplicative inverse when it exists in the ring.
    pub fn inverse(self, a: &Coefficient) -> Option<Coefficient> {
        if a.is_zero() {
            return None;
        }
        match self {
            Ring::Integers => (a.abs().is_one()).then(|| a.clone()),
            _ => self.normalize(a.recip()).ok(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "z"),
            Ring::Rationals => write!(f, "q"),
            Ring::Prime(p) => write!(f, "zp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" => Ok(Ring::Integers),
            "q" => Ok(Ring::Rationals),
            other => match other.strip_prefix("zp:").map(str::parse::<u64>) {
                Some(Ok(p)) => Ring::prime(p),
                _ => Err(ChainError::UnknownRing(s.to_owned())),
            },
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

/// A finite formal combination of `n`-simplices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    ring: Ring,
    dim: usize,
    terms: BTreeMap<Simplex, Coefficient>,
}

impl Chain {
    pub fn zero(ring: Ring, dim: usize) -> Chain {
        Chain { ring, dim, terms: BTreeMap::new() }
    }

    /// `1·σ`.
    pub fn simplex(ring: Ring, s: Simplex) -> Chain {
        let dim = s.dim();
        Chain { ring, dim, terms: BTreeMap::from([(s, ring.from_int(1))]) }
    }

    /// Sums integer multiples of `n`-simplices.
    pub fn from_terms<I>(ring: Ring, dim: usize, terms: I) -> Result<Chain, ChainError>
    where
        I: IntoIterator<Item = (Simplex, i64)>,
    {
        let mut c = Chain::zero(ring, dim);
        for (s, k) in terms {
            if s.dim() != dim {
                return Err(ChainError::WrongSimplexDimension(s, dim));
            }
            c.add_term(s, &ring.from_int(k));
        }
        Ok(c)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Simplex, Coefficient> {
        &self.terms
    }

    pub fn coefficient(&self, s: &Simplex) -> Coefficient {
        self.terms.get(s).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.terms.keys()
    }

    /// Adds `k·σ` in place. `σ` must have the chain's dimension.
    pub fn add_term(&mut self, s: Simplex, k: &Coefficient) {
        debug_assert_eq!(s.dim(), self.dim);
        let k = self.ring.normalize(k.clone()).expect("coefficient in ring");
        if k.is_zero() {
            return;
        }
        let ring = self.ring;
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = ring.add(e.get(), &k);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Chain) -> Result<(), ChainError> {
        if self.ring != other.ring {
            return Err(ChainError::RingMismatch(self.ring, other.ring));
        }
        if self.dim != other.dim {
            return Err(ChainError::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, k) in &other.terms {
            out.add_term(s.clone(), k);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Chain {
        Chain {
            ring: self.ring,
            dim: self.dim,
            terms: self.terms.iter().map(|(s, k)| (s.clone(), self.ring.neg(k))).collect(),
        }
    }

    pub fn scale(&self, lambda: &Coefficient) -> Result<Chain, ChainError> {
        let lambda = self.ring.normalize(lambda.clone())?;
        let mut out = Chain::zero(self.ring, self.dim);
        for (s, k) in &self.terms {
            out.add_term(s.clone(), &self.ring.mul(k, &lambda));
        }
        Ok(out)
    }

    /// `∂[v₀,…,vₙ] = Σᵢ (−1)^i [v₀,…,v̂ᵢ,…,vₙ]`, extended linearly.
    pub fn try_boundary(&self) -> Result<Chain, ChainError> {
        if self.dim == 0 {
            return Err(ChainError::DimensionZero);
        }
        let mut out = Chain::zero(self.ring, self.dim - 1);
        for (s, k) in &self.terms {
            for (i, face) in s.facets().enumerate() {
                let k = if i % 2 == 0 { k.clone() } else { self.ring.neg(k) };
                out.add_term(face, &k);
            }
        }
        Ok(out)
    }

    /// Like [`Chain::try_boundary`], but a 0-chain maps to the zero 0-chain.
    pub fn boundary(&self) -> Chain {
        self.try_boundary().unwrap_or_else(|_| Chain::zero(self.ring, 0))
    }

    /// The support simplex that is largest in the simplicial order of `order`.
    pub fn leading_simplex(&self, order: &OrderedSimplicialComplex) -> Result<&Simplex, ChainError> {
        self.terms
            .keys()
            .max_by_key(|s| order.position(s).expect("chain lives on the complex"))
            .ok_or(ChainError::ZeroChain)
    }

    /// Integer coefficients, when every coefficient is integral.
    pub fn integer_terms(&self) -> Option<BTreeMap<Simplex, BigInt>> {
        self.terms
            .iter()
            .map(|(s, k)| k.is_integer().then(|| (s.clone(), k.to_integer())))
            .collect()
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, k)) in self.terms.iter().enumerate() {
            let neg = k.is_negative();
            let mag = k.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Small helper for tests and reports: coefficient as `i64` when it fits.
pub fn coefficient_as_i64(k: &Coefficient) -> Option<i64> {
    k.is_integer().then(|| k.to_integer().to_i64()).flatten()
}
