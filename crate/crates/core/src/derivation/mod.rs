//! Checkable derivations built from single unfold/fold steps.
//!
//! An unfold at pivot `k` replaces one copy of `x^(k+1)` by
//! `x^k + x^(k+1) + x^(k+2)`; a fold at pivot `k` does the reverse. Both act
//! on the monomial multiset, and every equality of the quotient rig has a
//! derivation made of nothing else.
//!
//! Copies of a monomial are ordered. A step's `copy` names which copy of
//! `x^(k+1)` it works on; the other two monomials a step creates are appended
//! after the existing copies of their exponent, and the ones a fold consumes
//! are the last copies. This fixes a unique value-level reading of every step
//! (see `crate::motzkin`) and makes `Unfold(k, c)` and `Fold(k, c)` exact
//! inverses.

mod file;
mod lemma;
mod search;

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polynomial::NatPoly;
use crate::quotient::decide_equal;

pub use file::DerivationFileError;
pub use lemma::{lemma_monomial_absorb, lemma_plus_zero, lemma_times_zero};
pub use search::derive_bfs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Unfold,
    Fold,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Self::Unfold => Self::Fold,
            Self::Fold => Self::Unfold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub dir: Direction,
    pub pivot: usize,
    pub copy: usize,
}

impl Step {
    pub fn unfold(pivot: usize) -> Self {
        Self { dir: Direction::Unfold, pivot, copy: 0 }
    }

    pub fn fold(pivot: usize) -> Self {
        Self { dir: Direction::Fold, pivot, copy: 0 }
    }

    pub fn with_copy(self, copy: usize) -> Self {
        Self { copy, ..self }
    }

    /// The step undoing this one.
    pub fn inverse(self) -> Self {
        Self { dir: self.dir.flip(), ..self }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.dir {
            Direction::Unfold => "unfold",
            Direction::Fold => "fold",
        };
        write!(f, "{dir} k={} copy={}", self.pivot, self.copy)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("unfold at pivot {pivot}: no x^{exponent} to unfold")]
    PivotMissing { pivot: usize, exponent: usize },
    #[error("fold at pivot {pivot}: x^{exponent} is missing")]
    FoldTripleMissing { pivot: usize, exponent: usize },
    #[error("copy {copy} of x^{exponent} requested but only {multiplicity} present")]
    CopyOutOfRange { exponent: usize, copy: usize, multiplicity: BigUint },
}

/// Applies a single unfold/fold step to `p`.
pub fn apply_step(p: &NatPoly, s: Step) -> Result<NatPoly, StepError> {
    let k = s.pivot;
    let mid = p.coeff(k + 1);
    match s.dir {
        Direction::Unfold if mid.is_zero() => {
            return Err(StepError::PivotMissing { pivot: k, exponent: k + 1 });
        }
        Direction::Fold => {
            for e in [k, k + 1, k + 2] {
                if !p.has_monomial(e) {
                    return Err(StepError::FoldTripleMissing { pivot: k, exponent: e });
                }
            }
        }
        _ => {}
    }
    if BigUint::from(s.copy) >= mid {
        return Err(StepError::CopyOutOfRange { exponent: k + 1, copy: s.copy, multiplicity: mid });
    }
    let mut out = p.clone();
    let coeffs = out.coeffs_mut();
    match s.dir {
        Direction::Unfold => {
            if coeffs.len() < k + 3 {
                coeffs.resize(k + 3, BigUint::zero());
            }
            coeffs[k] += 1u32;
            coeffs[k + 2] += 1u32;
        }
        Direction::Fold => {
            coeffs[k] -= 1u32;
            coeffs[k + 2] -= 1u32;
        }
    }
    out.retrim();
    Ok(out)
}

/// A derivation `start ∼ end` as a sequence of primitive steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub start: NatPoly,
    pub steps: Vec<Step>,
    pub end: NatPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("step {index} ({step}) is invalid: {source}")]
    InvalidStep {
        index: usize,
        step: Step,
        #[source]
        source: StepError,
    },
    #[error("replay ends at {actual}, but the derivation claims {expected}")]
    EndpointMismatch { expected: NatPoly, actual: NatPoly },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("{p} and {q} are not equal in the quotient rig")]
    NotEqual { p: NatPoly, q: NatPoly },
    #[error("{constant} is constant and {other} is not; they are never equal")]
    ConstantMismatch { constant: NatPoly, other: NatPoly },
    #[error("{0} is constant, the lemma needs a non-constant polynomial")]
    ConstantPolynomial(NatPoly),
    #[error("the lemma needs a non-zero polynomial")]
    ZeroPolynomial,
    #[error("{0} has too many monomial copies to expand step by step")]
    TooLarge(NatPoly),
}

/// Replays `steps` from `start`, returning every intermediate polynomial
/// (`steps.len() + 1` entries, starting with `start`).
pub fn replay(start: &NatPoly, steps: &[Step]) -> Result<Vec<NatPoly>, CheckError> {
    let mut trail = Vec::with_capacity(steps.len() + 1);
    trail.push(start.clone());
    for (index, &step) in steps.iter().enumerate() {
        let next = apply_step(trail.last().expect("non-empty"), step)
            .map_err(|source| CheckError::InvalidStep { index, step, source })?;
        trail.push(next);
    }
    Ok(trail)
}

/// Validates a derivation: every step applies and the replay lands exactly on `end`.
pub fn check(d: &Derivation) -> Result<(), CheckError> {
    let actual = replay(&d.start, &d.steps)?.pop().expect("non-empty");
    if actual != d.end {
        return Err(CheckError::EndpointMismatch { expected: d.end.clone(), actual });
    }
    Ok(())
}

impl Derivation {
    /// Builds a derivation by replaying `steps`, so the endpoint is correct by construction.
    pub fn from_steps(start: NatPoly, steps: Vec<Step>) -> Result<Self, CheckError> {
        let end = replay(&start, &steps)?.pop().expect("non-empty");
        Ok(Self { start, steps, end })
    }

    pub fn empty(p: NatPoly) -> Self {
        Self { start: p.clone(), steps: Vec::new(), end: p }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The derivation `end ∼ start`.
    pub fn reverse(&self) -> Self {
        Self {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
            end: self.start.clone(),
        }
    }

    /// The same steps with `ctx` added to both endpoints.
    ///
    /// Valid whenever `self` is: extra monomials only raise multiplicities.
    pub fn in_context(&self, ctx: &NatPoly) -> Self {
        Self {
            start: &self.start + ctx,
            steps: self.steps.clone(),
            end: &self.end + ctx,
        }
    }
}

/// Accumulates steps while tracking the current polynomial.
#[derive(Debug)]
pub(crate) struct Chain {
    start: NatPoly,
    current: NatPoly,
    steps: Vec<Step>,
}

impl Chain {
    pub(crate) fn new(start: NatPoly) -> Self {
        Self { current: start.clone(), start, steps: Vec::new() }
    }

    pub(crate) fn current(&self) -> &NatPoly {
        &self.current
    }

    pub(crate) fn push(&mut self, step: Step) {
        self.current = apply_step(&self.current, step)
            .unwrap_or_else(|e| panic!("internal derivation step {step} on {}: {e}", self.current));
        self.steps.push(step);
    }

    /// Appends `d`, whose start must be the current polynomial.
    pub(crate) fn append(&mut self, d: &Derivation) {
        assert_eq!(self.current, d.start, "derivation segments do not meet");
        for &s in &d.steps {
            self.push(s);
        }
        debug_assert_eq!(self.current, d.end);
    }

    pub(crate) fn finish(self) -> Derivation {
        Derivation { start: self.start, steps: self.steps, end: self.current }
    }
}

pub(crate) fn small(c: &BigUint, whole: &NatPoly) -> Result<usize, DeriveError> {
    usize::try_from(c).map_err(|_| DeriveError::TooLarge(whole.clone()))
}

/// Builds a derivation `p ∼ q` by division by `1 + x²` and the cancellation
/// law, eliminated into primitive steps.
///
/// With `p − q = (w1 − w2)(1 + x²)` and `r = (w1 + w2)·x`, the derivation runs
/// `p ⇒ p + 0̄ ⇒ p + r + x²r ⇒ q + r + x²r ⇒ q + 0̄ ⇒ q`, where `0̄ = 1 + x²`
/// and the middle segment unfolds the copies of `w2·x` and folds the copies
/// of `w1·(1 + x + x²)`.
pub fn derive(p: &NatPoly, q: &NatPoly) -> Result<Derivation, DeriveError> {
    match (p.is_constant(), q.is_constant()) {
        (true, true) if p == q => return Ok(Derivation::empty(p.clone())),
        (true, true) => return Err(DeriveError::NotEqual { p: p.clone(), q: q.clone() }),
        (true, false) => {
            return Err(DeriveError::ConstantMismatch { constant: p.clone(), other: q.clone() })
        }
        (false, true) => {
            return Err(DeriveError::ConstantMismatch { constant: q.clone(), other: p.clone() })
        }
        (false, false) => {}
    }
    if !decide_equal(p, q) {
        return Err(DeriveError::NotEqual { p: p.clone(), q: q.clone() });
    }
    if p == q {
        return Ok(Derivation::empty(p.clone()));
    }
    let (quotient, remainder) = p.signed_sub(q).divide_by_one_plus_x_squared();
    assert!(remainder.is_zero(), "equal classes must leave no remainder");
    let (w1, w2) = quotient.pos_neg_split();
    let r = (&w1 + &w2).shift(1);
    let r_bar = &r + &r.shift(2);

    let mut chain = Chain::new(p.clone());
    // p ⇒ p + 0̄ ⇒ p + r + x²r
    chain.append(&lemma_plus_zero(p)?.reverse());
    chain.append(&lemma_times_zero(&r)?.reverse().in_context(p));
    debug_assert_eq!(*chain.current(), p + &r_bar);

    // unfold each copy of w2·x into w2·(1 + x + x²)
    for (e, c) in w2.coeffs().iter().enumerate() {
        for _ in 0..small(c, &w2)? {
            chain.push(Step::unfold(e));
        }
    }
    // now equal, as a polynomial, to q + w1·(1 + x + x²) + w2·x + x²r; fold w1 back
    for (e, c) in w1.coeffs().iter().enumerate() {
        for _ in 0..small(c, &w1)? {
            chain.push(Step::fold(e));
        }
    }
    debug_assert_eq!(*chain.current(), q + &r_bar);

    // q + r + x²r ⇒ q + 0̄ ⇒ q
    chain.append(&lemma_times_zero(&r)?.in_context(q));
    chain.append(&lemma_plus_zero(q)?);
    let d = chain.finish();
    debug_assert_eq!(d.end, *q);
    Ok(d)
}
