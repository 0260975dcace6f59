//! Motzkin trees `X = e | s of X | m of X * X` and values of polynomial types.
//!
//! A polynomial `Σ c_k·x^k` read as a type has `c_k` tagged copies of `X^k`;
//! a value picks an exponent, a copy and a `k`-tuple of trees.

mod bijection;
mod programs;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::polynomial::NatPoly;

pub use bijection::{compile, step_value, values_of_type, Bijection, CompileError, ValueError};
pub use programs::{fold1, fold1_inv, fold2, fold2_inv, fold5, fold5_inv, UValue};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MotzkinTree {
    Leaf,
    Unary(Box<MotzkinTree>),
    Binary(Box<MotzkinTree>, Box<MotzkinTree>),
}

/// `e`
pub fn e() -> MotzkinTree {
    MotzkinTree::Leaf
}

/// `s(t)`
pub fn s(t: MotzkinTree) -> MotzkinTree {
    MotzkinTree::Unary(Box::new(t))
}

/// `m(l, r)`
pub fn m(l: MotzkinTree, r: MotzkinTree) -> MotzkinTree {
    MotzkinTree::Binary(Box::new(l), Box::new(r))
}

impl MotzkinTree {
    /// Number of edges: a unary node contributes one, a binary node two.
    pub fn size(&self) -> usize {
        match self {
            Self::Leaf => 0,
            Self::Unary(t) => 1 + t.size(),
            Self::Binary(l, r) => 2 + l.size() + r.size(),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Self::Leaf => 0,
            Self::Unary(_) => 1,
            Self::Binary(..) => 2,
        }
    }
}

/// Size first, then constructor (`e < s < m`), then children left to right.
impl Ord for MotzkinTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| match (self, other) {
                (Self::Unary(a), Self::Unary(b)) => a.cmp(b),
                (Self::Binary(a1, a2), Self::Binary(b1, b2)) => a1.cmp(b1).then_with(|| a2.cmp(b2)),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for MotzkinTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MotzkinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf => f.write_str("e"),
            Self::Unary(t) => write!(f, "s({t})"),
            Self::Binary(l, r) => write!(f, "m({l},{r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseTreeError {
    #[error("unexpected `{found}` at position {pos}, expected {expected}")]
    Unexpected { pos: usize, found: char, expected: &'static str },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("trailing input at position {pos}")]
    Trailing { pos: usize },
    #[error("bad value header `{0}`, expected `<exponent>#<copy>:`")]
    BadHeader(String),
    #[error("value declares exponent {exponent} but holds {found} trees")]
    Arity { exponent: usize, found: usize },
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, want: u8, expected: &'static str) -> Result<(), ParseTreeError> {
        match self.peek() {
            Some(b) if b == want => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(ParseTreeError::Unexpected { pos: self.pos, found: b as char, expected }),
            None => Err(ParseTreeError::UnexpectedEnd { expected }),
        }
    }

    fn tree(&mut self) -> Result<MotzkinTree, ParseTreeError> {
        const WANT: &str = "`e`, `s(` or `m(`";
        match self.peek() {
            Some(b'e') => {
                self.pos += 1;
                Ok(e())
            }
            Some(b's') => {
                self.pos += 1;
                self.expect(b'(', "`(`")?;
                let t = self.tree()?;
                self.expect(b')', "`)`")?;
                Ok(s(t))
            }
            Some(b'm') => {
                self.pos += 1;
                self.expect(b'(', "`(`")?;
                let l = self.tree()?;
                self.expect(b',', "`,`")?;
                let r = self.tree()?;
                self.expect(b')', "`)`")?;
                Ok(m(l, r))
            }
            Some(b) => Err(ParseTreeError::Unexpected { pos: self.pos, found: b as char, expected: WANT }),
            None => Err(ParseTreeError::UnexpectedEnd { expected: WANT }),
        }
    }

    fn finish(&mut self) -> Result<(), ParseTreeError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(ParseTreeError::Trailing { pos: self.pos }),
        }
    }
}

impl FromStr for MotzkinTree {
    type Err = ParseTreeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut r = Reader { bytes: text.as_bytes(), pos: 0 };
        let t = r.tree()?;
        r.finish()?;
        Ok(t)
    }
}

/// All trees of each size `0..=max_size`, indexed by size, each list in tree order.
pub fn trees_by_size(max_size: usize) -> Vec<Vec<MotzkinTree>> {
    let mut by_size: Vec<Vec<MotzkinTree>> = vec![vec![e()]];
    for n in 1..=max_size {
        let mut level: Vec<MotzkinTree> = by_size[n - 1].iter().cloned().map(s).collect();
        for left in 0..n.saturating_sub(1) {
            for l in &by_size[left] {
                for r in &by_size[n - 2 - left] {
                    level.push(m(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size
}

/// Every tree of size at most `max_size` exactly once, by size then constructor order.
pub fn enumerate(max_size: usize) -> impl Iterator<Item = MotzkinTree> {
    trees_by_size(max_size).into_iter().flatten()
}

/// All `k`-tuples of trees whose sizes sum to at most `max_total`.
pub fn tuples(k: usize, max_total: usize) -> Vec<Vec<MotzkinTree>> {
    let by_size = trees_by_size(max_total);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fill_tuples(&by_size, k, max_total, &mut cur, &mut out);
    out
}

fn fill_tuples(
    by_size: &[Vec<MotzkinTree>],
    k: usize,
    budget: usize,
    cur: &mut Vec<MotzkinTree>,
    out: &mut Vec<Vec<MotzkinTree>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for (size, trees) in by_size.iter().enumerate().take(budget + 1) {
        for t in trees {
            cur.push(t.clone());
            fill_tuples(by_size, k, budget - size, cur, out);
            cur.pop();
        }
    }
}

/// An inhabitant of a polynomial type: copy `copy` of the summand `X^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeValue {
    pub exponent: usize,
    pub copy: usize,
    pub trees: Vec<MotzkinTree>,
}

impl TypeValue {
    pub fn new(copy: usize, trees: Vec<MotzkinTree>) -> Self {
        Self { exponent: trees.len(), copy, trees }
    }

    pub fn total_size(&self) -> usize {
        self.trees.iter().map(MotzkinTree::size).sum()
    }

    /// Whether the value inhabits the type `ty`.
    pub fn has_type(&self, ty: &NatPoly) -> bool {
        self.trees.len() == self.exponent
            && ty.multiplicity(self.exponent).is_none_or(|c| (self.copy as u64) < c)
    }
}

impl fmt::Display for TypeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}:[", self.exponent, self.copy)?;
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for TypeValue {
    type Err = ParseTreeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (header, body) = text.split_once(':').ok_or_else(|| ParseTreeError::BadHeader(text.to_owned()))?;
        let (exp, copy) = header.split_once('#').ok_or_else(|| ParseTreeError::BadHeader(header.to_owned()))?;
        let bad = || ParseTreeError::BadHeader(header.to_owned());
        let exponent: usize = exp.trim().parse().map_err(|_| bad())?;
        let copy: usize = copy.trim().parse().map_err(|_| bad())?;

        let offset = header.len() + 1;
        let mut r = Reader { bytes: body.as_bytes(), pos: 0 };
        let shift = |err: ParseTreeError| match err {
            ParseTreeError::Unexpected { pos, found, expected } => {
                ParseTreeError::Unexpected { pos: pos + offset, found, expected }
            }
            ParseTreeError::Trailing { pos } => ParseTreeError::Trailing { pos: pos + offset },
            other => other,
        };
        r.expect(b'[', "`[`").map_err(shift)?;
        let mut trees = Vec::new();
        if r.peek() == Some(b']') {
            r.pos += 1;
        } else {
            loop {
                trees.push(r.tree().map_err(shift)?);
                match r.peek() {
                    Some(b',') => r.pos += 1,
                    _ => {
                        r.expect(b']', "`,` or `]`").map_err(shift)?;
                        break;
                    }
                }
            }
        }
        r.finish().map_err(shift)?;
        if trees.len() != exponent {
            return Err(ParseTreeError::Arity { exponent, found: trees.len() });
        }
        Ok(Self { exponent, copy, trees })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(e().size(), 0);
        assert_eq!(s(e()).size(), 1);
        assert_eq!(m(s(e()), m(e(), e())).size(), 5);
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(enumerate(0).collect::<Vec<_>>(), vec![e()]);
        let two = &trees_by_size(2)[2];
        assert_eq!(two, &vec![s(s(e())), m(e(), e())]);
        let all: Vec<_> = enumerate(7).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tuple_counts() {
        // pairs with total size ≤ 1: (e,e), (e,s e), (s e,e)
        assert_eq!(tuples(2, 1).len(), 3);
        assert_eq!(tuples(0, 5), vec![Vec::<MotzkinTree>::new()]);
        assert_eq!(tuples(1, 3).len(), 1 + 1 + 2 + 4);
    }

    #[test]
    fn tree_text_roundtrip() {
        for t in enumerate(5) {
            assert_eq!(t.to_string().parse::<MotzkinTree>().unwrap(), t);
        }
        assert_eq!(" m( s(e) , e ) ".parse::<MotzkinTree>().unwrap(), m(s(e()), e()));
        assert!(matches!("m(e)".parse::<MotzkinTree>(), Err(ParseTreeError::Unexpected { pos: 3, .. })));
        assert!(matches!("s(e".parse::<MotzkinTree>(), Err(ParseTreeError::UnexpectedEnd { .. })));
        assert!(matches!("e e".parse::<MotzkinTree>(), Err(ParseTreeError::Trailing { pos: 2 })));
        assert!(matches!("x".parse::<MotzkinTree>(), Err(ParseTreeError::Unexpected { found: 'x', .. })));
    }

    #[test]
    fn value_text() {
        let v = TypeValue::new(1, vec![e(), m(e(), s(e()))]);
        assert_eq!(v.to_string(), "2#1:[e,m(e,s(e))]");
        assert_eq!(v.to_string().parse::<TypeValue>().unwrap(), v);
        let unit = TypeValue::new(0, vec![]);
        assert_eq!(unit.to_string(), "0#0:[]");
        assert_eq!("0#0:[]".parse::<TypeValue>().unwrap(), unit);
        assert_eq!("2#0:[e]".parse::<TypeValue>(), Err(ParseTreeError::Arity { exponent: 2, found: 1 }));
        assert!(matches!("2:[e,e]".parse::<TypeValue>(), Err(ParseTreeError::BadHeader(_))));
        assert!(matches!("1#0:[q]".parse::<TypeValue>(), Err(ParseTreeError::Unexpected { pos: 5, .. })));
    }

    #[test]
    fn typing() {
        let ty: NatPoly = "2 + x^2".parse().unwrap();
        assert!(TypeValue::new(1, vec![]).has_type(&ty));
        assert!(!TypeValue::new(2, vec![]).has_type(&ty));
        assert!(TypeValue::new(0, vec![e(), e()]).has_type(&ty));
        assert!(!TypeValue::new(0, vec![e()]).has_type(&ty));
    }
}
