//! Value-level reading of unfold/fold steps and compiled bijections.
//!
//! An unfold at pivot `k`, copy `c` routes a value of copy `c` of `X^(k+1)`
//! by its last tree, following `X ≅ 1 + X + X²`:
//!
//! * `e`      → a fresh (last) copy of `X^k`,
//! * `s(u)`   → copy `c` of `X^(k+1)`, last tree replaced by `u`,
//! * `m(u,w)` → a fresh (last) copy of `X^(k+2)`, last tree replaced by `u, w`.
//!
//! Values in every other copy are untouched. A fold at the same pivot and copy
//! is the exact inverse.

use thiserror::Error;

use crate::derivation::{apply_step, check, replay, CheckError, Derivation, Direction, Step, StepError};
use crate::polynomial::NatPoly;

use super::{e, m, s, tuples, MotzkinTree, TypeValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("value {value} does not inhabit {ty}")]
    TypeMismatch { value: TypeValue, ty: NatPoly },
    #[error(transparent)]
    InvalidStep(#[from] StepError),
    #[error("multiplicity of x^{0} does not fit in a copy index")]
    MultiplicityTooLarge(usize),
}

/// Copy slots a step needs besides `copy`, precomputed from the polynomial it acts on.
#[derive(Debug, Clone, Copy)]
struct Route {
    step: Step,
    /// Unfold: index of the fresh `X^k` copy. Fold: index of the last `X^k` copy.
    low: usize,
    /// Same for `X^(k+2)`.
    high: usize,
}

impl Route {
    fn new(step: Step, source: &NatPoly) -> Result<Self, ValueError> {
        let k = step.pivot;
        let count = |e: usize| -> Result<usize, ValueError> {
            source
                .multiplicity(e)
                .and_then(|c| usize::try_from(c).ok())
                .ok_or(ValueError::MultiplicityTooLarge(e))
        };
        let (low, high) = (count(k)?, count(k + 2)?);
        Ok(match step.dir {
            Direction::Unfold => Self { step, low, high },
            // a valid fold has both counts ≥ 1
            Direction::Fold => Self { step, low: low - 1, high: high - 1 },
        })
    }

    fn route(&self, mut v: TypeValue) -> TypeValue {
        let Step { dir, pivot: k, copy: c } = self.step;
        match dir {
            Direction::Unfold => {
                if v.exponent != k + 1 || v.copy != c {
                    return v;
                }
                match v.trees.pop().expect("exponent k+1 ≥ 1") {
                    MotzkinTree::Leaf => TypeValue { exponent: k, copy: self.low, trees: v.trees },
                    MotzkinTree::Unary(u) => {
                        v.trees.push(*u);
                        v
                    }
                    MotzkinTree::Binary(u, w) => {
                        v.trees.push(*u);
                        v.trees.push(*w);
                        TypeValue { exponent: k + 2, copy: self.high, trees: v.trees }
                    }
                }
            }
            Direction::Fold => {
                if v.exponent == k && v.copy == self.low {
                    v.trees.push(e());
                } else if v.exponent == k + 1 && v.copy == c {
                    let t = v.trees.pop().expect("exponent k+1 ≥ 1");
                    v.trees.push(s(t));
                } else if v.exponent == k + 2 && v.copy == self.high {
                    let w = v.trees.pop().expect("exponent k+2 ≥ 2");
                    let u = v.trees.pop().expect("exponent k+2 ≥ 2");
                    v.trees.push(m(u, w));
                } else {
                    return v;
                }
                TypeValue { exponent: k + 1, copy: c, trees: v.trees }
            }
        }
    }
}

/// The bijection of one step from the type `source` to the type `apply_step(source, s)`.
pub fn step_value(s: Step, source: &NatPoly, v: TypeValue) -> Result<TypeValue, ValueError> {
    if !v.has_type(source) {
        return Err(ValueError::TypeMismatch { value: v, ty: source.clone() });
    }
    apply_step(source, s)?;
    Ok(Route::new(s, source)?.route(v))
}

/// A checked derivation read as a pair of mutually inverse maps between value sets.
#[derive(Debug, Clone)]
pub struct Bijection {
    pub source: NatPoly,
    pub target: NatPoly,
    pub derivation: Derivation,
    forward: Vec<Route>,
    backward: Vec<Route>,
}

/// Compiles a derivation; fails exactly when the checker does.
pub fn compile(d: &Derivation) -> Result<Bijection, CompileError> {
    check(d)?;
    let trail = replay(&d.start, &d.steps)?;
    let forward = d
        .steps
        .iter()
        .zip(&trail)
        .map(|(&s, src)| Route::new(s, src))
        .collect::<Result<Vec<_>, _>>()?;
    let backward = d
        .steps
        .iter()
        .zip(&trail[1..])
        .rev()
        .map(|(&s, dst)| Route::new(s.inverse(), dst))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Bijection {
        source: d.start.clone(),
        target: d.end.clone(),
        derivation: d.clone(),
        forward,
        backward,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Value(#[from] ValueError),
}

impl Bijection {
    /// Identity on `p`.
    pub fn identity(p: &NatPoly) -> Self {
        compile(&Derivation::empty(p.clone())).expect("empty derivation checks")
    }

    pub fn forward(&self, v: TypeValue) -> Result<TypeValue, ValueError> {
        if !v.has_type(&self.source) {
            return Err(ValueError::TypeMismatch { value: v, ty: self.source.clone() });
        }
        let out = self.forward.iter().fold(v, |acc, r| r.route(acc));
        debug_assert!(out.has_type(&self.target));
        Ok(out)
    }

    pub fn backward(&self, v: TypeValue) -> Result<TypeValue, ValueError> {
        if !v.has_type(&self.target) {
            return Err(ValueError::TypeMismatch { value: v, ty: self.target.clone() });
        }
        let out = self.backward.iter().fold(v, |acc, r| r.route(acc));
        debug_assert!(out.has_type(&self.source));
        Ok(out)
    }
}

/// Every value of type `ty` whose trees have total size at most `max_total`.
///
/// Copies are enumerated only up to `u32::MAX` per exponent.
pub fn values_of_type(ty: &NatPoly, max_total: usize) -> Vec<TypeValue> {
    let mut out = Vec::new();
    for (k, c) in ty.coeffs().iter().enumerate() {
        let copies = u32::try_from(c).unwrap_or(u32::MAX) as usize;
        if copies == 0 {
            continue;
        }
        let tuples = tuples(k, max_total);
        for copy in 0..copies {
            out.extend(tuples.iter().map(|t| TypeValue { exponent: k, copy, trees: t.clone() }));
        }
    }
    out
}
