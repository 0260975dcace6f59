//! An independent interpreter for first-match case listings over `e`, `s`,
//! `m`, `o1`, `o2`, `p`, used as an oracle for the hand-written isomorphisms.

#![allow(dead_code)]

use std::collections::HashMap;

use gaussrig::motzkin::{MotzkinTree, UValue};

/// A ground or pattern term; in patterns, lowercase names outside the
/// constructor set are variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Ctor(String, Vec<Term>),
    Var(String),
}

const CTORS: [&str; 6] = ["e", "s", "m", "o1", "o2", "p"];
const TUPLE: &str = "()";

pub const FOLD1: &str = "
    ( e, e, e, e )            =>  o1
  | ( e, e, e, s(e) )         =>  o2
  | ( e, e, e, s(s(t)) )      =>  p( e, t )
  | ( e, e, e, s(m(t1,t2)) )  =>  p( s(t1), t2 )
  | ( e, e, e, m(t1,t2) )     =>  p( m(e,t1), t2 )
  | ( e, e, s(t1), t2 )       =>  p( m(s(e),t1), t2 )
  | ( e, e, m(t1,t2), t3 )    =>  p( m(s(s(t1)),t2), t3 )
  | ( e, s(t1), t2, t3 )      =>  p( m(s(m(e,t1)),t2), t3 )
  | ( e, m(t1,t2), t3, t4 )   =>  p( m(s(m(s(t1),t2)),t3), t4 )
  | ( s(t1), t2, t3, t4 )     =>  p( m(m(t1,t2),t3), t4 )
  | ( m(t1,t2), t3, t4, t5 )  =>  p( m(s(m(m(t1,t2),t3)),t4), t5 )
";

pub const FOLD2: &str = "
    ( t, o1 )         =>  s(t)
  | ( e, o2 )         =>  e
  | ( s(t), o2 )      =>  m(e,t)
  | ( m(t1,t2), o2 )  =>  m(s(t1),t2)
  | ( t1, p(t2,t3) )  =>  m(m(t1,t2),t3)
";

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) {
        assert!(self.eat(c), "expected `{}` at {}", c as char, self.pos);
    }

    fn ident(&mut self) -> String {
        self.ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        assert!(self.pos > start, "expected a name at {start}");
        String::from_utf8(self.src[start..self.pos].to_vec()).unwrap()
    }

    fn args(&mut self) -> Vec<Term> {
        let mut out = vec![self.term()];
        while self.eat(b',') {
            out.push(self.term());
        }
        self.expect(b')');
        out
    }

    fn term(&mut self) -> Term {
        if self.eat(b'(') {
            return Term::Ctor(TUPLE.into(), self.args());
        }
        let name = self.ident();
        if !CTORS.contains(&name.as_str()) {
            return Term::Var(name);
        }
        let args = if self.eat(b'(') { self.args() } else { Vec::new() };
        Term::Ctor(name, args)
    }
}

/// Parses `pat => out | pat => out | ...`.
pub fn parse_listing(text: &str) -> Vec<(Term, Term)> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let mut clauses = Vec::new();
    loop {
        let pat = lx.term();
        lx.expect(b'=');
        lx.expect(b'>');
        clauses.push((pat, lx.term()));
        if !lx.eat(b'|') {
            break;
        }
    }
    lx.ws();
    assert_eq!(lx.pos, text.len(), "trailing listing text");
    clauses
}

fn matches(pat: &Term, t: &Term, env: &mut HashMap<String, Term>) -> bool {
    match (pat, t) {
        (Term::Var(v), _) => {
            env.insert(v.clone(), t.clone());
            true
        }
        (Term::Ctor(f, ps), Term::Ctor(g, ts)) => {
            f == g && ps.len() == ts.len() && ps.iter().zip(ts).all(|(p, t)| matches(p, t, env))
        }
        (Term::Ctor(..), Term::Var(_)) => false,
    }
}

fn subst(t: &Term, env: &HashMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => env[v].clone(),
        Term::Ctor(f, args) => Term::Ctor(f.clone(), args.iter().map(|a| subst(a, env)).collect()),
    }
}

/// Indices of every clause whose pattern matches `input`.
pub fn matching_clauses(listing: &[(Term, Term)], input: &Term) -> Vec<usize> {
    (0..listing.len())
        .filter(|&i| matches(&listing[i].0, input, &mut HashMap::new()))
        .collect()
}

/// The listing's output for `input` under first-match semantics.
pub fn eval(listing: &[(Term, Term)], input: &Term) -> Option<Term> {
    listing.iter().find_map(|(pat, out)| {
        let mut env = HashMap::new();
        matches(pat, input, &mut env).then(|| subst(out, &env))
    })
}

pub fn tree(t: &MotzkinTree) -> Term {
    match t {
        MotzkinTree::Leaf => Term::Ctor("e".into(), vec![]),
        MotzkinTree::Unary(a) => Term::Ctor("s".into(), vec![tree(a)]),
        MotzkinTree::Binary(a, b) => Term::Ctor("m".into(), vec![tree(a), tree(b)]),
    }
}

pub fn uvalue(u: &UValue) -> Term {
    match u {
        UValue::O1 => Term::Ctor("o1".into(), vec![]),
        UValue::O2 => Term::Ctor("o2".into(), vec![]),
        UValue::P(a, b) => Term::Ctor("p".into(), vec![tree(a), tree(b)]),
    }
}

pub fn tuple(items: Vec<Term>) -> Term {
    Term::Ctor(TUPLE.into(), items)
}

/// Every `U` value whose trees total at most `max_total`.
pub fn all_u(max_total: usize) -> Vec<UValue> {
    let mut out = vec![UValue::O1, UValue::O2];
    for pair in gaussrig::motzkin::tuples(2, max_total) {
        let [a, b]: [MotzkinTree; 2] = pair.try_into().unwrap();
        out.push(UValue::P(a, b));
    }
    out
}
