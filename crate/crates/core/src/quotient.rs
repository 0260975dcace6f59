//! Canonical forms for the quotient rig `ℕ[x]/(x ≈ 1 + x + x²)`.
//!
//! A class is either the class of a constant `n` (constants are equivalent
//! only to themselves) or the class of a non-constant polynomial, and the
//! non-constant classes are in bijection with the Gaussian integers via
//! evaluation at `i`. The rig is therefore `ℕ ⊎ ℤ[i]`, with `ℕ` acting on
//! `ℤ[i]` by shifting the real part and multiplication extended freely.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::polynomial::{GaussInt, NatPoly};

/// The canonical form of a quotient class: `ℕ ⊎ ℤ[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RigElement {
    /// The class of the constant polynomial `n`.
    Nat(BigUint),
    /// The class of every non-constant polynomial evaluating to `g` at `i`.
    Gauss(GaussInt),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("the constant {0} has no additive inverse in the rig")]
    ConstantHasNoNegative(BigUint),
}

impl RigElement {
    pub fn nat(n: impl Into<BigUint>) -> Self {
        Self::Nat(n.into())
    }

    pub fn gauss(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self::Gauss(GaussInt::new(re, im))
    }

    /// The class of `x²`, which negates under multiplication.
    pub fn neg_one() -> Self {
        Self::gauss(-1, 0)
    }

    /// The class of `1 + x²`, additive unit of the non-constant ring.
    pub fn zero_bar() -> Self {
        Self::gauss(0, 0)
    }

    /// The class of `2 + x²`, multiplicative unit of the non-constant ring.
    pub fn one_bar() -> Self {
        Self::gauss(1, 0)
    }

    pub fn is_gauss(&self) -> bool {
        matches!(self, Self::Gauss(_))
    }
}

impl fmt::Display for RigElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Nat(n) => write!(f, "nat:{n}"),
            // both parts always shown: `gauss:0+1i`, `gauss:3-2i`
            Self::Gauss(g) => {
                let sign = if g.im.is_negative() { '-' } else { '+' };
                write!(f, "gauss:{}{sign}{}i", g.re, g.im.abs())
            }
        }
    }
}

/// The canonical form of the class of `p`.
pub fn canon(p: &NatPoly) -> RigElement {
    match p.as_constant() {
        Some(n) => RigElement::Nat(n),
        None => RigElement::Gauss(p.eval_at_i()),
    }
}

pub fn rig_add(a: &RigElement, b: &RigElement) -> RigElement {
    use RigElement::*;
    match (a, b) {
        (Nat(l), Nat(r)) => Nat(l + r),
        (Nat(l), Gauss(g)) | (Gauss(g), Nat(l)) => Gauss(GaussInt {
            re: &g.re + BigInt::from(l.clone()),
            im: g.im.clone(),
        }),
        (Gauss(g), Gauss(h)) => Gauss(g + h),
    }
}

pub fn rig_mul(a: &RigElement, b: &RigElement) -> RigElement {
    use RigElement::*;
    match (a, b) {
        (Nat(l), Nat(r)) => Nat(l * r),
        // the empty sum of Gaussian classes is the constant 0
        (Nat(l), Gauss(_)) | (Gauss(_), Nat(l)) if l.is_zero() => Nat(BigUint::zero()),
        (Nat(l), Gauss(g)) | (Gauss(g), Nat(l)) => Gauss(g.scale(&BigInt::from(l.clone()))),
        (Gauss(g), Gauss(h)) => Gauss(g * h),
    }
}

/// Additive inverse inside the non-constant ring: multiplication by the class of `x²`.
pub fn ring_neg(a: &RigElement) -> Result<RigElement, QuotientError> {
    match a {
        RigElement::Nat(n) => Err(QuotientError::ConstantHasNoNegative(n.clone())),
        g => Ok(rig_mul(&RigElement::neg_one(), g)),
    }
}

/// Decides `p ∼ q` in the quotient rig.
pub fn decide_equal(p: &NatPoly, q: &NatPoly) -> bool {
    canon(p) == canon(q)
}

/// The normal-form polynomial representing the Gaussian integer `g`.
///
/// The result is irreducible under the rewrite system and `canon` maps it back
/// to `Gauss(g)`. Gaussian zero is `1 + x²`, never the constant `0`.
pub fn embed_gauss(g: &GaussInt) -> NatPoly {
    let m = g.re.magnitude().clone();
    let n = g.im.magnitude().clone();
    let re_neg = g.re.is_negative();
    match (re_neg, g.im.sign()) {
        // m + 1 + x²
        (false, Sign::NoSign) => NatPoly::new(vec![m + 1u32, BigUint::zero(), 1u32.into()]),
        // m + n·x
        (false, Sign::Plus) => NatPoly::new(vec![m, n]),
        // m + |n|·x³
        (false, Sign::Minus) => NatPoly::new(vec![m, BigUint::zero(), BigUint::zero(), n]),
        // |m|·x² + n·x
        (true, Sign::NoSign | Sign::Plus) => NatPoly::new(vec![BigUint::zero(), n, m]),
        // |m|·x² + |n|·x³
        (true, Sign::Minus) => NatPoly::new(vec![BigUint::zero(), BigUint::zero(), m, n]),
    }
}

/// The canonical polynomial representative of a class.
pub fn representative(a: &RigElement) -> NatPoly {
    match a {
        RigElement::Nat(n) => NatPoly::constant(n.clone()),
        RigElement::Gauss(g) => embed_gauss(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NatPoly {
        s.parse().unwrap()
    }

    #[test]
    fn canon_examples() {
        assert_eq!(canon(&p("x^2")), RigElement::neg_one());
        assert_eq!(canon(&p("1 + x^2")), RigElement::zero_bar());
        assert_eq!(canon(&p("2 + x^2")), RigElement::one_bar());
        assert_eq!(canon(&p("7")), RigElement::nat(7u32));
        assert_eq!(canon(&NatPoly::zero()), RigElement::nat(0u32));
    }

    #[test]
    fn addition_uses_the_natural_action() {
        assert_eq!(rig_add(&RigElement::nat(3u32), &RigElement::gauss(-1, 2)), RigElement::gauss(2, 2));
        assert_eq!(rig_add(&RigElement::gauss(-1, 2), &RigElement::nat(3u32)), RigElement::gauss(2, 2));
        let a = RigElement::gauss(4, -9);
        assert_eq!(rig_add(&RigElement::nat(0u32), &a), a);
        assert_eq!(rig_add(&RigElement::gauss(1, 1), &RigElement::gauss(-1, -1)), RigElement::zero_bar());
        assert_eq!(rig_add(&RigElement::nat(2u32), &RigElement::nat(5u32)), RigElement::nat(7u32));
    }

    #[test]
    fn multiplication_extends_freely() {
        assert_eq!(rig_mul(&RigElement::nat(0u32), &RigElement::gauss(5, -2)), RigElement::nat(0u32));
        assert_eq!(rig_mul(&RigElement::gauss(5, -2), &RigElement::nat(0u32)), RigElement::nat(0u32));
        assert_eq!(rig_mul(&RigElement::nat(2u32), &RigElement::gauss(1, 1)), RigElement::gauss(2, 2));
        assert_eq!(rig_mul(&RigElement::gauss(0, 1), &RigElement::gauss(0, 1)), RigElement::gauss(-1, 0));
        let a = RigElement::gauss(3, 7);
        assert_eq!(rig_mul(&RigElement::nat(1u32), &a), a);
    }

    #[test]
    fn deciding() {
        assert!(decide_equal(&p("x"), &p("x^5")));
        assert!(decide_equal(&p("2 + x^2"), &p("x^4")));
        assert!(!decide_equal(&p("1 + x^2"), &p("x^4")));
        assert!(!decide_equal(&p("1"), &p("2")));
        // a constant is never equivalent to a non-constant
        assert!(!decide_equal(&p("1"), &p("1 + 1 + x^2")));
        assert!(!decide_equal(&p("0"), &p("1 + x^2")));
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(embed_gauss(&GaussInt::new(0, 0)), p("1 + x^2"));
        assert_eq!(embed_gauss(&GaussInt::new(0, 1)), p("x"));
        assert_eq!(embed_gauss(&GaussInt::new(-3, -2)), p("3x^2 + 2x^3"));
        assert_eq!(embed_gauss(&GaussInt::new(4, 0)), p("5 + x^2"));
        assert_eq!(embed_gauss(&GaussInt::new(2, -1)), p("2 + x^3"));
        assert_eq!(embed_gauss(&GaussInt::new(-1, 0)), p("x^2"));
        assert_eq!(embed_gauss(&GaussInt::new(-2, 5)), p("5x + 2x^2"));
    }

    #[test]
    fn embedding_is_a_section_of_canon() {
        for m in -20i64..=20 {
            for n in -20i64..=20 {
                let g = GaussInt::new(m, n);
                let e = embed_gauss(&g);
                assert!(!e.is_constant(), "{g} embedded as constant");
                assert_eq!(canon(&e), RigElement::Gauss(g));
            }
        }
    }

    #[test]
    fn negation() {
        assert_eq!(ring_neg(&RigElement::gauss(1, 0)).unwrap(), RigElement::gauss(-1, 0));
        assert_eq!(ring_neg(&RigElement::zero_bar()).unwrap(), RigElement::zero_bar());
        assert_eq!(ring_neg(&RigElement::gauss(2, -3)).unwrap(), RigElement::gauss(-2, 3));
        assert_eq!(
            ring_neg(&RigElement::nat(4u32)),
            Err(QuotientError::ConstantHasNoNegative(4u32.into()))
        );
        let a = RigElement::gauss(6, -1);
        assert_eq!(rig_add(&a, &ring_neg(&a).unwrap()), RigElement::zero_bar());
    }

    #[test]
    fn display() {
        assert_eq!(RigElement::nat(7u32).to_string(), "nat:7");
        assert_eq!(RigElement::gauss(2, 2).to_string(), "gauss:2+2i");
        assert_eq!(RigElement::gauss(0, 0).to_string(), "gauss:0+0i");
        assert_eq!(RigElement::gauss(0, 1).to_string(), "gauss:0+1i");
        assert_eq!(RigElement::gauss(-1, -3).to_string(), "gauss:-1-3i");
    }

    #[test]
    fn constants_are_only_equal_to_themselves() {
        // every polynomial of degree ≤ 3 with coefficients ≤ 3
        for code in 0..4u64.pow(4) {
            let coeffs: Vec<u64> = (0..4).map(|k| (code / 4u64.pow(k)) % 4).collect();
            let q = NatPoly::from_u64s(&coeffs);
            for n in 0..=30u64 {
                let c = NatPoly::constant(n);
                assert_eq!(decide_equal(&q, &c), q == c, "{q} vs {n}");
            }
        }
    }
}
