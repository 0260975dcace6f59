//! Hand-written isomorphisms `X⁴ ≅ U`, `X × U ≅ X` and their composite `X⁵ ≅ X`,
//! where `U = o1 | o2 | p of X * X` is the type `2 + x²`.

use super::{e, m, s, MotzkinTree, TypeValue};

use MotzkinTree::{Binary, Leaf, Unary};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UValue {
    O1,
    O2,
    P(MotzkinTree, MotzkinTree),
}

impl UValue {
    /// `o1`, `o2` are copies 0 and 1 of the constant summand; `p` is the `x²` summand.
    pub fn to_type_value(&self) -> TypeValue {
        match self {
            Self::O1 => TypeValue::new(0, vec![]),
            Self::O2 => TypeValue::new(1, vec![]),
            Self::P(a, b) => TypeValue::new(0, vec![a.clone(), b.clone()]),
        }
    }

    pub fn from_type_value(v: &TypeValue) -> Option<Self> {
        match (v.exponent, v.copy, v.trees.as_slice()) {
            (0, 0, []) => Some(Self::O1),
            (0, 1, []) => Some(Self::O2),
            (2, 0, [a, b]) => Some(Self::P(a.clone(), b.clone())),
            _ => None,
        }
    }
}

/// `X⁴ → U`.
pub fn fold1([a, b, c, d]: [MotzkinTree; 4]) -> UValue {
    use UValue::*;
    match a {
        // ( s(t1), t2, t3, t4 ) => p( m(m(t1,t2),t3), t4 )
        Unary(t1) => return P(m(m(*t1, b), c), d),
        // ( m(t1,t2), t3, t4, t5 ) => p( m(s(m(m(t1,t2),t3)),t4), t5 )
        Binary(t1, t2) => return P(m(s(m(m(*t1, *t2), b)), c), d),
        Leaf => {}
    }
    match b {
        // ( e, s(t1), t2, t3 ) => p( m(s(m(e,t1)),t2), t3 )
        Unary(t1) => return P(m(s(m(e(), *t1)), c), d),
        // ( e, m(t1,t2), t3, t4 ) => p( m(s(m(s(t1),t2)),t3), t4 )
        Binary(t1, t2) => return P(m(s(m(s(*t1), *t2)), c), d),
        Leaf => {}
    }
    match c {
        // ( e, e, s(t1), t2 ) => p( m(s(e),t1), t2 )
        Unary(t1) => P(m(s(e()), *t1), d),
        // ( e, e, m(t1,t2), t3 ) => p( m(s(s(t1)),t2), t3 )
        Binary(t1, t2) => P(m(s(s(*t1)), *t2), d),
        Leaf => match d {
            Leaf => O1,
            Unary(u) => match *u {
                Leaf => O2,
                // ( e, e, e, s(s(t)) ) => p( e, t )
                Unary(t) => P(e(), *t),
                // ( e, e, e, s(m(t1,t2)) ) => p( s(t1), t2 )
                Binary(t1, t2) => P(s(*t1), *t2),
            },
            // ( e, e, e, m(t1,t2) ) => p( m(e,t1), t2 )
            Binary(t1, t2) => P(m(e(), *t1), *t2),
        },
    }
}

/// `U → X⁴`, inverse of [`fold1`].
pub fn fold1_inv(u: UValue) -> [MotzkinTree; 4] {
    let (a, b) = match u {
        UValue::O1 => return [e(), e(), e(), e()],
        UValue::O2 => return [e(), e(), e(), s(e())],
        UValue::P(a, b) => (a, b),
    };
    match a {
        Leaf => [e(), e(), e(), s(s(b))],
        Unary(t1) => [e(), e(), e(), s(m(*t1, b))],
        Binary(x, y) => match *x {
            Leaf => [e(), e(), e(), m(*y, b)],
            Binary(t1, t2) => [s(*t1), *t2, *y, b],
            Unary(x1) => match *x1 {
                Leaf => [e(), e(), s(*y), b],
                Unary(t1) => [e(), e(), m(*t1, *y), b],
                Binary(p1, p2) => match *p1 {
                    Leaf => [e(), s(*p2), *y, b],
                    Unary(t1) => [e(), m(*t1, *p2), *y, b],
                    Binary(t1, t2) => [m(*t1, *t2), *p2, *y, b],
                },
            },
        },
    }
}

/// `X × U → X`.
pub fn fold2(t: MotzkinTree, u: UValue) -> MotzkinTree {
    match (t, u) {
        (t, UValue::O1) => s(t),
        (Leaf, UValue::O2) => e(),
        (Unary(t), UValue::O2) => m(e(), *t),
        (Binary(t1, t2), UValue::O2) => m(s(*t1), *t2),
        (t1, UValue::P(t2, t3)) => m(m(t1, t2), t3),
    }
}

/// `X → X × U`, inverse of [`fold2`].
pub fn fold2_inv(t: MotzkinTree) -> (MotzkinTree, UValue) {
    match t {
        Leaf => (e(), UValue::O2),
        Unary(t) => (*t, UValue::O1),
        Binary(l, r) => match *l {
            Leaf => (s(*r), UValue::O2),
            Unary(t1) => (m(*t1, *r), UValue::O2),
            Binary(t1, t2) => (*t1, UValue::P(*t2, *r)),
        },
    }
}

/// `X⁵ → X`: `fold2(t1, fold1(t2..t5))`.
pub fn fold5([t1, t2, t3, t4, t5]: [MotzkinTree; 5]) -> MotzkinTree {
    fold2(t1, fold1([t2, t3, t4, t5]))
}

/// `X → X⁵`, inverse of [`fold5`].
pub fn fold5_inv(t: MotzkinTree) -> [MotzkinTree; 5] {
    let (t1, u) = fold2_inv(t);
    let [t2, t3, t4, t5] = fold1_inv(u);
    [t1, t2, t3, t4, t5]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motzkin::{enumerate, tuples};

    fn arr<const N: usize>(v: Vec<MotzkinTree>) -> [MotzkinTree; N] {
        v.try_into().expect("arity")
    }

    #[test]
    fn listing_examples() {
        assert_eq!(fold1([e(), e(), e(), e()]), UValue::O1);
        assert_eq!(fold1([e(), e(), e(), s(e())]), UValue::O2);
        let (t1, t2, t3, t4) = (s(e()), m(e(), e()), e(), s(s(e())));
        assert_eq!(
            fold1([s(t1.clone()), t2.clone(), t3.clone(), t4.clone()]),
            UValue::P(m(m(t1, t2), t3), t4)
        );
        let t = m(s(e()), e());
        assert_eq!(fold2(t.clone(), UValue::O1), s(t));
        assert_eq!(fold2(e(), UValue::O2), e());
        let (a, b, c) = (e(), s(e()), m(e(), e()));
        assert_eq!(fold2(a.clone(), UValue::P(b.clone(), c.clone())), m(m(a, b), c));
    }

    #[test]
    fn fold5_examples() {
        let t = s(m(e(), e()));
        assert_eq!(fold5([t.clone(), e(), e(), e(), e()]), s(t));
        assert_eq!(fold5([e(), e(), e(), e(), s(e())]), e());
    }

    #[test]
    fn u_encoding() {
        for u in [UValue::O1, UValue::O2, UValue::P(s(e()), e())] {
            let v = u.to_type_value();
            assert!(v.has_type(&"2 + x^2".parse().unwrap()));
            assert_eq!(UValue::from_type_value(&v), Some(u));
        }
        assert_eq!(UValue::from_type_value(&TypeValue::new(0, vec![e()])), None);
    }

    #[test]
    fn inverses_on_small_inputs() {
        for v in tuples(4, 6) {
            let v: [MotzkinTree; 4] = arr(v);
            assert_eq!(fold1_inv(fold1(v.clone())), v);
        }
        for t in enumerate(8) {
            let (a, u) = fold2_inv(t.clone());
            assert_eq!(fold2(a, u), t);
            assert_eq!(fold5(fold5_inv(t.clone())), t);
        }
    }
}
