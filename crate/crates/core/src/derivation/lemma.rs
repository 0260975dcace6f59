//! Constructive versions of the basic absorption identities, as primitive-step derivations.

use crate::polynomial::NatPoly;

use super::{small, Chain, DeriveError, Derivation, Step};

fn zero_bar() -> NatPoly {
    NatPoly::from_u64s(&[1, 0, 1])
}

/// `x^n + x^(n+2) ⇒ 1 + x²` in `2n` steps.
///
/// Each round unfolds `x^j` and folds `x^j + x^(j+1) + x^(j+2)`, turning
/// `x^j + x^(j+2)` into `x^(j-1) + x^(j+1)`.
pub fn lemma_monomial_absorb(n: usize) -> Derivation {
    let start = &NatPoly::monomial(n) + &NatPoly::monomial(n + 2);
    let mut chain = Chain::new(start);
    for j in (1..=n).rev() {
        chain.push(Step::unfold(j - 1));
        chain.push(Step::fold(j));
    }
    chain.finish()
}

/// `p + 1 + x² ⇒ p` for non-constant `p`.
///
/// Lifts `1 + x²` to `x^n + x^(n+2)` beside the lowest non-constant monomial
/// `x^(n+1)` of `p` and folds the three together.
pub fn lemma_plus_zero(p: &NatPoly) -> Result<Derivation, DeriveError> {
    let n = (1..p.coeffs().len())
        .find(|&k| p.has_monomial(k))
        .ok_or_else(|| DeriveError::ConstantPolynomial(p.clone()))?
        - 1;
    let mut chain = Chain::new(p + &zero_bar());
    chain.append(&lemma_monomial_absorb(n).reverse().in_context(p));
    chain.push(Step::fold(n));
    Ok(chain.finish())
}

/// `p·(1 + x²) ⇒ 1 + x²` for non-zero `p`.
///
/// Absorbs every monomial copy `x^e + x^(e+2)` into its own `1 + x²`, then
/// merges the copies of `1 + x²` pairwise.
pub fn lemma_times_zero(p: &NatPoly) -> Result<Derivation, DeriveError> {
    if p.is_zero() {
        return Err(DeriveError::ZeroPolynomial);
    }
    let mut chain = Chain::new(p * &zero_bar());
    let mut copies = 0usize;
    for (e, c) in p.coeffs().iter().enumerate() {
        let c = small(c, p)?;
        for _ in 0..c {
            let absorb = lemma_monomial_absorb(e);
            for &s in &absorb.steps {
                chain.push(s);
            }
        }
        copies += c;
    }
    let merge = lemma_plus_zero(&zero_bar())?;
    for _ in 1..copies {
        for &s in &merge.steps {
            chain.push(s);
        }
    }
    let d = chain.finish();
    debug_assert_eq!(d.end, zero_bar());
    Ok(d)
}
