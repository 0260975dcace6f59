//! Exact arithmetic over `ℕ[x]`, `ℤ[x]` and the Gaussian integers.
//!
//! Polynomials are dense, exponent-indexed coefficient vectors with
//! arbitrary-precision entries. The canonical form has no trailing zero
//! coefficients, so the zero polynomial is the empty vector and structural
//! equality coincides with polynomial equality.

mod gauss;
mod parse;

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

pub use gauss::GaussInt;
pub use parse::ParsePolyError;

/// A polynomial with natural-number coefficients, an element of the free rig `ℕ[x]`.
///
/// Also read as a multiset of monomials: `coeff(k)` copies of `x^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NatPoly {
    coeffs: Vec<BigUint>,
}

/// A polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

fn trim<T: Zero>(coeffs: &mut Vec<T>) {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
}

impl NatPoly {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1u32)
    }

    pub fn constant(n: impl Into<BigUint>) -> Self {
        Self::new(vec![n.into()])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        Self::term(1u32, k)
    }

    /// `c·x^k`.
    pub fn term(c: impl Into<BigUint>, k: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigUint> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Multiplicity of `x^k` when it fits in a machine word.
    pub fn multiplicity(&self, k: usize) -> Option<u64> {
        match self.coeffs.get(k) {
            None => Some(0),
            Some(c) => u64::try_from(c).ok(),
        }
    }

    pub fn has_monomial(&self, k: usize) -> bool {
        self.coeffs.get(k).is_some_and(|c| !c.is_zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and every other constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigUint> {
        match self.coeffs.len() {
            0 => Some(BigUint::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Number of monomial copies, i.e. `p(1)`.
    pub fn monomial_count(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Multiply by `x^m`.
    pub fn shift(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigUint::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, factor: &BigUint) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiset inclusion: every monomial of `self` occurs in `other` at least as often.
    pub fn is_submultiset_of(&self, other: &NatPoly) -> bool {
        self.coeffs.len() <= other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }

    /// How many disjoint copies of `self` fit inside `other`. `None` if `self` is zero.
    pub fn times_contained_in(&self, other: &NatPoly) -> Option<BigUint> {
        let mut best: Option<BigUint> = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let avail = other.coeffs.get(k).cloned().unwrap_or_default();
            let fit = avail / c;
            best = Some(match best {
                Some(b) if b <= fit => b,
                _ => fit,
            });
        }
        best
    }

    /// Multiset difference `self − other`; `None` if `other` is not contained in `self`.
    pub fn checked_sub(&self, other: &NatPoly) -> Option<NatPoly> {
        if !other.is_submultiset_of(self) {
            return None;
        }
        let mut coeffs = self.coeffs.clone();
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        Some(Self::new(coeffs))
    }

    /// Coefficient-wise maximum (multiset union with maximal overlap).
    pub fn union_max(&self, other: &NatPoly) -> NatPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| {
                let a = self.coeffs.get(k);
                let b = other.coeffs.get(k);
                match (a, b) {
                    (Some(a), Some(b)) => a.max(b).clone(),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => BigUint::zero(),
                }
            })
            .collect();
        Self::new(coeffs)
    }

    /// Coefficient-wise minimum (multiset intersection).
    pub fn intersect_min(&self, other: &NatPoly) -> NatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.min(b).clone())
            .collect();
        Self::new(coeffs)
    }

    /// Exact value at `x = 2`; the termination measure of the rewrite system.
    pub fn eval_at_two(&self) -> BigUint {
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| (acc << 1u32) + c)
    }

    /// Exact value at `x = i`, reducing exponents modulo 4.
    pub fn eval_at_i(&self) -> GaussInt {
        eval_at_i_signed(self.coeffs.iter().map(|c| BigInt::from(c.clone())))
    }

    /// The signed difference `self − other` in `ℤ[x]`.
    pub fn signed_sub(&self, other: &NatPoly) -> IntPoly {
        IntPoly::from(self) - IntPoly::from(other)
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut Vec<BigUint> {
        &mut self.coeffs
    }

    pub(crate) fn retrim(&mut self) {
        trim(&mut self.coeffs);
    }
}

fn eval_at_i_signed(coeffs: impl Iterator<Item = BigInt>) -> GaussInt {
    // buckets for exponents ≡ 0, 1, 2, 3 (mod 4)
    let mut b: [BigInt; 4] = Default::default();
    for (k, c) in coeffs.enumerate() {
        b[k % 4] += c;
    }
    let [b0, b1, b2, b3] = b;
    GaussInt {
        re: b0 - b2,
        im: b1 - b3,
    }
}

impl Add for &NatPoly {
    type Output = NatPoly;
    fn add(self, rhs: &NatPoly) -> NatPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (k, c) in short.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        NatPoly { coeffs }
    }
}

impl Add for NatPoly {
    type Output = NatPoly;
    fn add(self, rhs: NatPoly) -> NatPoly {
        &self + &rhs
    }
}

impl Mul for &NatPoly {
    type Output = NatPoly;
    fn mul(self, rhs: &NatPoly) -> NatPoly {
        if self.is_zero() || rhs.is_zero() {
            return NatPoly::zero();
        }
        let mut coeffs = vec![BigUint::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        NatPoly::new(coeffs)
    }
}

impl Mul for NatPoly {
    type Output = NatPoly;
    fn mul(self, rhs: NatPoly) -> NatPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for NatPoly {
    fn sum<I: Iterator<Item = NatPoly>>(iter: I) -> NatPoly {
        iter.fold(NatPoly::zero(), |acc, p| &acc + &p)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, mag: &impl fmt::Display, is_one: bool, k: usize) -> fmt::Result {
    match k {
        0 => write!(f, "{mag}"),
        _ => {
            if !is_one {
                write!(f, "{mag}")?;
            }
            if k == 1 {
                f.write_str("x")
            } else {
                write!(f, "x^{k}")
            }
        }
    }
}

/// Ascending exponents, unit coefficients elided: `2 + 3x + x^4`.
impl fmt::Display for NatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write_term(f, c, c.is_one(), k)?;
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_at_i(&self) -> GaussInt {
        eval_at_i_signed(self.coeffs.iter().cloned())
    }

    /// Long division by the monic `1 + x²`: returns `(quotient, remainder)` with
    /// `self = quotient·(1 + x²) + remainder` and `deg(remainder) ≤ 1`.
    pub fn divide_by_one_plus_x_squared(&self) -> (IntPoly, IntPoly) {
        let mut rem = self.coeffs.clone();
        if rem.len() < 3 {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - 2];
        for e in (2..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[e]);
            if lead.is_zero() {
                continue;
            }
            rem[e - 2] -= &lead;
            quot[e - 2] = lead;
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Splits `self = positive − negative` into natural polynomials with disjoint support.
    pub fn pos_neg_split(&self) -> (NatPoly, NatPoly) {
        let mut pos = Vec::with_capacity(self.coeffs.len());
        let mut neg = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let mag = c.magnitude().clone();
            match c.sign() {
                Sign::Minus => {
                    pos.push(BigUint::zero());
                    neg.push(mag);
                }
                _ => {
                    pos.push(mag);
                    neg.push(BigUint::zero());
                }
            }
        }
        (NatPoly::new(pos), NatPoly::new(neg))
    }

    /// The polynomial as a `NatPoly` if no coefficient is negative.
    pub fn to_nat(&self) -> Option<NatPoly> {
        if self.coeffs.iter().any(Signed::is_negative) {
            return None;
        }
        Some(NatPoly::new(
            self.coeffs.iter().map(|c| c.magnitude().clone()).collect(),
        ))
    }
}

impl From<&NatPoly> for IntPoly {
    fn from(p: &NatPoly) -> Self {
        IntPoly {
            coeffs: p.coeffs.iter().map(|c| BigInt::from(c.clone())).collect(),
        }
    }
}

impl From<NatPoly> for IntPoly {
    fn from(p: NatPoly) -> Self {
        IntPoly::from(&p)
    }
}

fn zip_with(a: &[BigInt], b: &[BigInt], op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Vec<BigInt> {
    let zero = BigInt::zero();
    (0..a.len().max(b.len()))
        .map(|k| op(a.get(k).unwrap_or(&zero), b.get(k).unwrap_or(&zero)))
        .collect()
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl std::ops::Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl std::ops::Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

/// Like `NatPoly`'s printing, with `-` separators for negative terms: `2 + x^2 - x^4`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.magnitude();
            write_term(f, mag, mag.is_one(), k)?;
        }
        Ok(())
    }
}
