//! Bidirectional breadth-first search for short derivations.

use std::collections::HashMap;

use crate::polynomial::NatPoly;
use crate::quotient::decide_equal;

use super::{Derivation, Step};

/// Compact search state: trimmed coefficient vector.
type State = Vec<u32>;

fn to_state(p: &NatPoly) -> Option<State> {
    p.coeffs().iter().map(|c| u32::try_from(c).ok()).collect()
}

fn neighbours(s: &State) -> Vec<(Step, State)> {
    let at = |k: usize| s.get(k).copied().unwrap_or(0);
    let mut out = Vec::new();
    for k in 0..s.len() {
        if at(k + 1) > 0 {
            let mut t = s.clone();
            if t.len() < k + 3 {
                t.resize(k + 3, 0);
            }
            t[k] += 1;
            t[k + 2] += 1;
            out.push((Step::unfold(k), t));
        }
        if at(k) > 0 && at(k + 1) > 0 && at(k + 2) > 0 {
            let mut t = s.clone();
            t[k] -= 1;
            t[k + 2] -= 1;
            while t.last() == Some(&0) {
                t.pop();
            }
            out.push((Step::fold(k), t));
        }
    }
    out
}

/// (depth, predecessor, step linking the predecessor and this state)
type Seen = HashMap<State, (usize, Option<(State, Step)>)>;

fn expand(frontier: &[State], seen: &mut Seen, depth: usize) -> Vec<State> {
    let mut next = Vec::new();
    for s in frontier {
        for (step, t) in neighbours(s) {
            if !seen.contains_key(&t) {
                seen.insert(t.clone(), (depth + 1, Some((s.clone(), step))));
                next.push(t);
            }
        }
    }
    next
}

/// Shortest derivation `p ∼ q` of length at most `step_budget`, if any.
///
/// Copy indices are always 0. Returns `None` when the polynomials are not
/// equal, when no derivation fits the budget, or when a coefficient exceeds
/// `u32` (far outside what a bounded search can reach).
pub fn derive_bfs(p: &NatPoly, q: &NatPoly, step_budget: usize) -> Option<Derivation> {
    if !decide_equal(p, q) {
        return None;
    }
    if p == q {
        return Some(Derivation::empty(p.clone()));
    }
    let (src, dst) = (to_state(p)?, to_state(q)?);
    let mut fwd: Seen = HashMap::from([(src.clone(), (0, None))]);
    let mut bwd: Seen = HashMap::from([(dst.clone(), (0, None))]);
    let (mut f_front, mut b_front) = (vec![src], vec![dst]);
    let (mut f_depth, mut b_depth) = (0usize, 0usize);

    while f_depth + b_depth < step_budget {
        if f_front.is_empty() || b_front.is_empty() {
            return None;
        }
        let forward = f_front.len() <= b_front.len();
        let (front, seen, other, depth) = if forward {
            (&mut f_front, &mut fwd, &bwd, &mut f_depth)
        } else {
            (&mut b_front, &mut bwd, &fwd, &mut b_depth)
        };
        *front = expand(front, seen, *depth);
        *depth += 1;
        let meet = front
            .iter()
            .filter_map(|s| other.get(s).map(|(d, _)| (*d, s)))
            .min_by_key(|(d, _)| *d)
            .map(|(_, s)| s.clone());
        if let Some(m) = meet {
            return Some(stitch(p, q, &m, &fwd, &bwd));
        }
    }
    None
}

fn stitch(p: &NatPoly, q: &NatPoly, meet: &State, fwd: &Seen, bwd: &Seen) -> Derivation {
    // p ... meet, walking predecessors back to the source
    let mut steps = Vec::new();
    let mut cur = meet.clone();
    while let Some((_, Some((prev, step)))) = fwd.get(&cur) {
        steps.push(*step);
        cur = prev.clone();
    }
    steps.reverse();
    // meet ... q: each backward edge was found from the q side, so invert it
    let mut cur = meet.clone();
    while let Some((_, Some((prev, step)))) = bwd.get(&cur) {
        steps.push(step.inverse());
        cur = prev.clone();
    }
    let d = Derivation::from_steps(p.clone(), steps).expect("search edges are valid steps");
    debug_assert_eq!(d.end, *q);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::{check, derive};

    fn p(s: &str) -> NatPoly {
        s.parse().unwrap()
    }

    #[test]
    fn finds_x_to_x5_within_the_table_length() {
        // the hand calculation takes 12 single steps, which is optimal
        let d = derive_bfs(&p("x"), &p("x^5"), 16).expect("found");
        assert_eq!(d.len(), 12);
        assert_eq!(check(&d), Ok(()));
        assert_eq!((d.start.clone(), d.end.clone()), (p("x"), p("x^5")));
    }

    #[test]
    fn finds_two_plus_x_squared_within_nine() {
        let d = derive_bfs(&p("2 + x^2"), &p("x^4"), 12).expect("found");
        assert!(d.len() <= 9, "length {}", d.len());
        assert_eq!(check(&d), Ok(()));
    }

    #[test]
    fn unequal_inputs_are_not_found() {
        assert!(derive_bfs(&p("1"), &p("2"), 100).is_none());
        assert!(derive_bfs(&p("x"), &p("x^2"), 10).is_none());
    }

    #[test]
    fn budget_is_respected() {
        assert!(derive_bfs(&p("x"), &p("x^5"), 1).is_none());
        let d = derive_bfs(&p("x"), &p("1 + x + x^2"), 1).unwrap();
        assert_eq!(d.steps, vec![Step::unfold(0)]);
    }

    #[test]
    fn search_is_no_longer_than_the_generator() {
        for (a, b) in [("x", "x^5"), ("2 + x^2", "x^4"), ("x^2", "x^6"), ("x + x^2", "x^5 + x^6")] {
            let (a, b) = (p(a), p(b));
            let gen = derive(&a, &b).unwrap();
            let found = derive_bfs(&a, &b, 14).expect("found");
            assert!(found.len() <= gen.len());
        }
    }
}
