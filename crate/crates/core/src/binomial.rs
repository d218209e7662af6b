//! Exponent data of a binomial `x^C (x^A - rho x^B)` and the two
//! lexicographic measures used to prove termination of the blowup loops.
//!
//! The coefficient never influences which centers are chosen, so it lives
//! beside the exponent data as a display tag only.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Non-negative exponents, one slot per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// Entry sum `|A|`.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices with a positive entry, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Sum of the entries over `indices`.
    pub fn sum_over(&self, indices: &[usize]) -> u64 {
        indices.iter().map(|&i| u64::from(self.0[i])).sum()
    }

    /// Maximal entry, the smallest index attaining it, and its multiplicity.
    pub fn max_entry(&self) -> (u32, usize, usize) {
        let mut best = 0u32;
        let mut first = 0usize;
        let mut count = 0usize;
        for (i, &e) in self.0.iter().enumerate() {
            if e > best || count == 0 {
                best = e;
                first = i;
                count = 1;
            } else if e == best {
                count += 1;
            }
        }
        (best, first, count)
    }

    pub(crate) fn set(&mut self, i: usize, value: u32) {
        self.0[i] = value;
    }
}

impl Index<usize> for ExponentVector {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Nonzero rational coefficient `rho` of `x^A - rho x^B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coefficient(BigRational);

impl Coefficient {
    pub fn one() -> Self {
        Coefficient(BigRational::one())
    }

    /// Returns `None` for zero.
    pub fn new(value: BigRational) -> Option<Self> {
        if value.is_zero() {
            None
        } else {
            Some(Coefficient(value))
        }
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Coefficient {
        Coefficient(self.0.abs())
    }
}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::one()
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Coefficient {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let value: BigRational = s
            .trim()
            .parse()
            .map_err(|_| format!("`{s}` is not a rational literal"))?;
        Coefficient::new(value).ok_or_else(|| "coefficient must be nonzero".to_string())
    }
}

/// A raw binomial `x^A - rho x^B` before the common factor is removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binomial {
    pub a: ExponentVector,
    pub b: ExponentVector,
    pub rho: Coefficient,
}

impl Binomial {
    pub fn new(a: impl Into<ExponentVector>, b: impl Into<ExponentVector>) -> Self {
        Binomial {
            a: a.into(),
            b: b.into(),
            rho: Coefficient::one(),
        }
    }

    pub fn with_coefficient(mut self, rho: Coefficient) -> Self {
        self.rho = rho;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.a.len()
    }
}

/// Result of splitting off the common monomial factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub a: ExponentVector,
    pub b: ExponentVector,
    pub c: ExponentVector,
    /// Both monomials coincided, leaving `x^C (1 - rho)` with `rho != 1`.
    pub already_monomial: bool,
}

/// Splits `x^A_raw - rho x^B_raw` as `x^C (x^A - rho x^B)` with `A_i B_i = 0`.
pub fn normalize(
    a_raw: &ExponentVector,
    b_raw: &ExponentVector,
    rho: &Coefficient,
) -> Result<Normalized> {
    if a_raw.len() != b_raw.len() {
        return Err(Error::LengthMismatch {
            left: a_raw.len(),
            right: b_raw.len(),
        });
    }
    let n = a_raw.len();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut c = Vec::with_capacity(n);
    for (x, y) in a_raw.iter().zip(b_raw.iter()) {
        let common = x.min(y);
        a.push(x - common);
        b.push(y - common);
        c.push(common);
    }
    let a = ExponentVector(a);
    let b = ExponentVector(b);
    let already_monomial = a.is_zero() && b.is_zero();
    if already_monomial && rho.is_one() {
        return Err(Error::DegenerateZero);
    }
    Ok(Normalized {
        a,
        b,
        c: ExponentVector(c),
        already_monomial,
    })
}

/// `(alpha, #alpha, beta, #beta)`: maximal entries of A and B with their
/// multiplicities. Ordered lexicographically in field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IotaTuple {
    pub alpha: u32,
    pub a_count: usize,
    pub beta: u32,
    pub b_count: usize,
}

impl fmt::Display for IotaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.alpha, self.a_count, self.beta, self.b_count
        )
    }
}

pub fn iota(a: &ExponentVector, b: &ExponentVector) -> IotaTuple {
    let (alpha, _, a_count) = a.max_entry();
    let (beta, _, b_count) = b.max_entry();
    IotaTuple {
        alpha,
        a_count,
        beta,
        b_count,
    }
}

/// `(min{|A|,|B|}, max{|A|,|B|})`, ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvPair {
    pub min: u64,
    pub max: u64,
}

impl fmt::Display for InvPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.min, self.max)
    }
}

pub fn inv_pair(a: &ExponentVector, b: &ExponentVector) -> InvPair {
    let (sa, sb) = (a.total(), b.total());
    InvPair {
        min: sa.min(sb),
        max: sa.max(sb),
    }
}

/// Chart-local total transform `x^C (x^A - rho x^B)` together with the
/// exceptional-variable marks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialState {
    pub a: ExponentVector,
    pub b: ExponentVector,
    pub c: ExponentVector,
    pub exceptional: Vec<bool>,
}

impl BinomialState {
    /// Normalized root state with no exceptional variables.
    pub fn from_binomial(f: &Binomial) -> Result<(Self, bool)> {
        let norm = normalize(&f.a, &f.b, &f.rho)?;
        let n = norm.a.len();
        Ok((
            BinomialState {
                a: norm.a,
                b: norm.b,
                c: norm.c,
                exceptional: vec![false; n],
            },
            norm.already_monomial,
        ))
    }

    pub fn num_vars(&self) -> usize {
        self.a.len()
    }

    pub fn iota(&self) -> IotaTuple {
        iota(&self.a, &self.b)
    }

    pub fn inv(&self) -> InvPair {
        inv_pair(&self.a, &self.b)
    }

    pub fn is_exceptional(&self, i: usize) -> bool {
        self.exceptional[i]
    }

    /// Holds `A_i B_i = 0` in every slot.
    pub fn is_coprime(&self) -> bool {
        self.a
            .iter()
            .zip(self.b.iter())
            .all(|(x, y)| x == 0 || y == 0)
    }
}
