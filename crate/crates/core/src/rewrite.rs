//! The reduction system
//!
//! ```text
//! R1     x^4         → 2 + x^2
//! R2     x + x^3     → 1 + x^2
//! R3(n)  x^n + 1 + x^2 → x^n        (1 ≤ n ≤ 3)
//! ```
//!
//! closed under multiplication by `x^m` and under additive context, acting on
//! polynomials as multisets of monomials. Every step strictly decreases the
//! value at `x = 2`, so the system terminates; normal forms are the constants
//! and one representative per Gaussian integer.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::polynomial::NatPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    /// `x^n + 1 + x² → x^n`, `n ∈ {1, 2, 3}`.
    R3(u8),
}

/// All rules in id order.
pub const RULES: [Rule; 5] = [Rule::R1, Rule::R2, Rule::R3(1), Rule::R3(2), Rule::R3(3)];

impl Rule {
    pub fn lhs(self) -> NatPoly {
        match self {
            Rule::R1 => NatPoly::from_u64s(&[0, 0, 0, 0, 1]),
            Rule::R2 => NatPoly::from_u64s(&[0, 1, 0, 1]),
            Rule::R3(n) => &NatPoly::from_u64s(&[1, 0, 1]) + &NatPoly::monomial(n as usize),
        }
    }

    pub fn rhs(self) -> NatPoly {
        match self {
            Rule::R1 => NatPoly::from_u64s(&[2, 0, 1]),
            Rule::R2 => NatPoly::from_u64s(&[1, 0, 1]),
            Rule::R3(n) => NatPoly::monomial(n as usize),
        }
    }

    fn lhs_degree(self) -> usize {
        match self {
            Rule::R1 => 4,
            Rule::R2 => 3,
            Rule::R3(n) => (n as usize).max(2),
        }
    }

    /// `lhs(2) − rhs(2)`: the measure lost by one unscaled application.
    fn measure_drop(self) -> u32 {
        match self {
            Rule::R1 => 10,
            Rule::R2 | Rule::R3(_) => 5,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::R1 => f.write_str("R1"),
            Rule::R2 => f.write_str("R2"),
            Rule::R3(n) => write!(f, "R3({n})"),
        }
    }
}

/// A rule multiplied through by `x^scale`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleInstance {
    pub rule: Rule,
    pub scale: usize,
}

impl RuleInstance {
    pub fn new(rule: Rule, scale: usize) -> Self {
        Self { rule, scale }
    }

    pub fn lhs(&self) -> NatPoly {
        self.rule.lhs().shift(self.scale)
    }

    pub fn rhs(&self) -> NatPoly {
        self.rule.rhs().shift(self.scale)
    }

    pub fn lhs_degree(&self) -> usize {
        self.rule.lhs_degree() + self.scale
    }

    fn measure_drop(&self) -> BigUint {
        BigUint::from(self.rule.measure_drop()) << self.scale
    }

    /// Whether the scaled left-hand side is a sub-multiset of `p`.
    pub fn matches(&self, p: &NatPoly) -> bool {
        let m = self.scale;
        let has = |k: usize, c: u32| p.coeffs().get(k).is_some_and(|v| *v >= BigUint::from(c));
        match self.rule {
            Rule::R1 => has(m + 4, 1),
            Rule::R2 => has(m + 1, 1) && has(m + 3, 1),
            Rule::R3(2) => has(m, 1) && has(m + 2, 2),
            Rule::R3(n) => has(m, 1) && has(m + 2, 1) && has(m + n as usize, 1),
        }
    }
}

impl fmt::Display for RuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},m={}", self.rule, self.scale)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule instance {instance} does not apply to {poly}")]
    NotApplicable { instance: RuleInstance, poly: NatPoly },
    #[error("{poly} is not a normal form: {instance} applies")]
    NotNormalForm { poly: NatPoly, instance: RuleInstance },
}

/// Every instance whose left-hand side occurs in `p`, ordered by rule id then scale.
pub fn applicable_instances(p: &NatPoly) -> Vec<RuleInstance> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for rule in RULES {
        let base = rule.lhs_degree();
        if base > deg {
            continue;
        }
        for scale in 0..=deg - base {
            let inst = RuleInstance::new(rule, scale);
            if inst.matches(p) {
                out.push(inst);
            }
        }
    }
    out
}

pub fn is_normal_form(p: &NatPoly) -> bool {
    first_instance(p).is_none()
}

/// The instance the deterministic strategy fires next: rules in id order,
/// each at its highest applicable scale.
pub fn first_instance(p: &NatPoly) -> Option<RuleInstance> {
    let deg = p.degree()?;
    RULES.into_iter().find_map(|rule| {
        let base = rule.lhs_degree();
        if base > deg {
            return None;
        }
        (0..=deg - base)
            .rev()
            .map(|scale| RuleInstance::new(rule, scale))
            .find(|inst| inst.matches(p))
    })
}

/// The measure: `p(2)`.
pub fn measure(p: &NatPoly) -> BigUint {
    p.eval_at_two()
}

/// One rewrite step `p → p − lhs + rhs`.
pub fn apply(p: &NatPoly, inst: RuleInstance) -> Result<NatPoly, RewriteError> {
    if !inst.matches(p) {
        return Err(RewriteError::NotApplicable { instance: inst, poly: p.clone() });
    }
    let mut out = p.clone();
    apply_times(&mut out, inst, &BigUint::one());
    debug_assert!(measure(&out) < measure(p), "{inst} did not decrease the measure of {p}");
    Ok(out)
}

/// Applies `inst` `times` times in place. The caller guarantees the instance fits that often.
fn apply_times(p: &mut NatPoly, inst: RuleInstance, times: &BigUint) {
    let m = inst.scale;
    let top = inst.lhs_degree();
    let coeffs = p.coeffs_mut();
    if coeffs.len() <= top {
        coeffs.resize(top + 1, BigUint::zero());
    }
    match inst.rule {
        Rule::R1 => {
            coeffs[m + 4] -= times;
            coeffs[m] += times * 2u32;
            coeffs[m + 2] += times;
        }
        Rule::R2 => {
            coeffs[m + 1] -= times;
            coeffs[m + 3] -= times;
            coeffs[m] += times;
            coeffs[m + 2] += times;
        }
        Rule::R3(_) => {
            coeffs[m] -= times;
            coeffs[m + 2] -= times;
        }
    }
    p.retrim();
}

/// The normal form of `p` under the deterministic strategy.
///
/// Instances fire with full multiplicity (all disjoint copies at once), which
/// is the same sequence of single steps the strategy takes one at a time.
pub fn normalize(p: &NatPoly) -> NatPoly {
    let mut cur = p.clone();
    let mut budget = cfg!(debug_assertions).then(|| measure(p));

    // every R1 instance, highest scale first, brings the degree down to ≤ 3
    let len = cur.coeffs().len();
    for top in (4..len).rev() {
        let coeffs = cur.coeffs_mut();
        let k = std::mem::take(&mut coeffs[top]);
        if k.is_zero() {
            continue;
        }
        coeffs[top - 4] += &k * 2u32;
        coeffs[top - 2] += &k;
        if let Some(b) = budget.as_mut() {
            let drop = RuleInstance::new(Rule::R1, top - 4).measure_drop() * &k;
            assert!(drop > BigUint::zero() && drop <= *b);
            *b -= drop;
        }
    }
    cur.retrim();

    while let Some(inst) = first_instance(&cur) {
        let k = inst.lhs().times_contained_in(&cur).expect("non-zero lhs");
        apply_times(&mut cur, inst, &k);
        if let Some(b) = budget.as_mut() {
            let drop = inst.measure_drop() * &k;
            assert!(drop > BigUint::zero() && drop <= *b);
            *b -= drop;
        }
    }
    if let Some(b) = budget {
        debug_assert_eq!(b, measure(&cur), "measure bookkeeping diverged normalizing {p}");
    }
    cur
}

/// One line of a normalization trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub before: NatPoly,
    pub instance: RuleInstance,
    pub after: NatPoly,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  --[{}]-->  {}", self.before, self.instance, self.after)
    }
}

/// Normalizes one step at a time, recording every application.
pub fn normalize_traced(p: &NatPoly) -> (NatPoly, Vec<TraceStep>) {
    let mut cur = p.clone();
    let mut trace = Vec::new();
    while let Some(inst) = first_instance(&cur) {
        let next = apply(&cur, inst).expect("strategy picks an applicable instance");
        trace.push(TraceStep { before: cur, instance: inst, after: next.clone() });
        cur = next;
    }
    (cur, trace)
}

/// The six shapes of normal forms; parameters are the polynomial's coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NormalFormClass {
    /// `n`
    Constant(BigUint),
    /// `m + 1 + x²`
    OnePlusXSquared(BigUint),
    /// `m + n·x`, `n ≥ 1`
    Linear(BigUint, BigUint),
    /// `m + n·x³`, `n ≥ 1`
    Cubic(BigUint, BigUint),
    /// `m·x² + n·x`, `m ≥ 1`
    QuadLinear(BigUint, BigUint),
    /// `m·x² + n·x³`, `m, n ≥ 1`
    QuadCubic(BigUint, BigUint),
}

impl NormalFormClass {
    /// The polynomial this class describes.
    pub fn to_poly(&self) -> NatPoly {
        let z = BigUint::zero;
        match self {
            Self::Constant(n) => NatPoly::constant(n.clone()),
            Self::OnePlusXSquared(m) => NatPoly::new(vec![m + 1u32, z(), BigUint::one()]),
            Self::Linear(m, n) => NatPoly::new(vec![m.clone(), n.clone()]),
            Self::Cubic(m, n) => NatPoly::new(vec![m.clone(), z(), z(), n.clone()]),
            Self::QuadLinear(m, n) => NatPoly::new(vec![z(), n.clone(), m.clone()]),
            Self::QuadCubic(m, n) => NatPoly::new(vec![z(), z(), m.clone(), n.clone()]),
        }
    }
}

pub fn classify(p: &NatPoly) -> Result<NormalFormClass, RewriteError> {
    if let Some(instance) = first_instance(p) {
        return Err(RewriteError::NotNormalForm { poly: p.clone(), instance });
    }
    let [a, b, c, d] = [0, 1, 2, 3].map(|k| p.coeff(k));
    let class = if p.is_constant() {
        NormalFormClass::Constant(a)
    } else if !c.is_zero() && !a.is_zero() {
        // irreducible forces b = d = 0 and c = 1
        NormalFormClass::OnePlusXSquared(a - 1u32)
    } else if c.is_zero() {
        if d.is_zero() {
            NormalFormClass::Linear(a, b)
        } else {
            NormalFormClass::Cubic(a, d)
        }
    } else if d.is_zero() {
        NormalFormClass::QuadLinear(c, b)
    } else {
        NormalFormClass::QuadCubic(c, d)
    };
    debug_assert_eq!(class.to_poly(), *p);
    Ok(class)
}

fn monus(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b {
        a - b
    } else {
        BigUint::zero()
    }
}

/// The result of exhausting R2 on `a + b·x + c·x² + d·x³`:
/// `(a + min(b,d)) + (b ∸ d)·x + (c + min(b,d))·x² + (d ∸ b)·x³`.
pub fn reduce_cubic_closed_form(a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> NatPoly {
    let common = b.min(d);
    NatPoly::new(vec![a + common, monus(b, d), c + common, monus(d, b)])
}

/// An overlap of two distinct instances and the normal forms of its two one-step reducts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub left: RuleInstance,
    pub right: RuleInstance,
    pub peak: NatPoly,
    pub nf_left: NatPoly,
    pub nf_right: NatPoly,
    pub joinable: bool,
}

impl fmt::Display for CriticalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] / [{}]  peak {}  =>  {}  |  {}  {}",
            self.left,
            self.right,
            self.peak,
            self.nf_left,
            self.nf_right,
            if self.joinable { "joinable" } else { "NOT joinable" }
        )
    }
}

/// All critical pairs whose peak has degree at most `max_degree`.
///
/// Two instances overlap when their left-hand sides share a monomial; the
/// peak is the coefficient-wise maximum of the two left-hand sides.
pub fn critical_pairs(max_degree: usize) -> Vec<CriticalPair> {
    let instances: Vec<RuleInstance> = RULES
        .into_iter()
        .flat_map(|rule| {
            let base = rule.lhs_degree();
            (0..=max_degree.saturating_sub(base))
                .filter(move |_| base <= max_degree)
                .map(move |scale| RuleInstance::new(rule, scale))
        })
        .collect();
    let mut out = Vec::new();
    for (i, &left) in instances.iter().enumerate() {
        for &right in &instances[i + 1..] {
            let (l, r) = (left.lhs(), right.lhs());
            if l.intersect_min(&r).is_zero() {
                continue;
            }
            let peak = l.union_max(&r);
            let nf_left = normalize(&apply(&peak, left).expect("left lhs is in the peak"));
            let nf_right = normalize(&apply(&peak, right).expect("right lhs is in the peak"));
            let joinable = nf_left == nf_right;
            out.push(CriticalPair { left, right, peak, nf_left, nf_right, joinable });
        }
    }
    out
}

/// Explores every reduction sequence, memoising the set of reachable normal
/// forms per polynomial. Confluence means each set is a singleton.
#[derive(Debug, Default)]
pub struct StrategyExplorer {
    memo: HashMap<NatPoly, BTreeSet<NatPoly>>,
}

impl StrategyExplorer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn visited(&self) -> usize {
        self.memo.len()
    }

    /// All normal forms reachable from `p` by any sequence of steps.
    pub fn normal_forms(&mut self, p: &NatPoly) -> BTreeSet<NatPoly> {
        if let Some(hit) = self.memo.get(p) {
            return hit.clone();
        }
        // iterative post-order so deep reductions do not exhaust the stack
        let mut stack: Vec<(NatPoly, Option<Vec<NatPoly>>)> = vec![(p.clone(), None)];
        while let Some((q, succs)) = stack.pop() {
            if self.memo.contains_key(&q) {
                continue;
            }
            match succs {
                None => {
                    let next: Vec<NatPoly> = applicable_instances(&q)
                        .into_iter()
                        .map(|inst| apply(&q, inst).expect("instance was applicable"))
                        .collect();
                    if next.is_empty() {
                        self.memo.insert(q.clone(), BTreeSet::from([q]));
                        continue;
                    }
                    let pending: Vec<NatPoly> =
                        next.iter().filter(|s| !self.memo.contains_key(*s)).cloned().collect();
                    stack.push((q, Some(next)));
                    stack.extend(pending.into_iter().map(|s| (s, None)));
                }
                Some(next) => {
                    let mut acc = BTreeSet::new();
                    for s in &next {
                        acc.extend(self.memo[s].iter().cloned());
                    }
                    self.memo.insert(q, acc);
                }
            }
        }
        self.memo[p].clone()
    }
}

/// Exhaustively explores every reduction sequence of every input, in parallel
/// chunks; returns the inputs that reach more than one normal form.
pub fn find_divergent(inputs: &[NatPoly]) -> Vec<(NatPoly, BTreeSet<NatPoly>)> {
    let chunk = inputs.len().div_ceil(rayon::current_num_threads().max(1) * 4).max(1);
    let mut out: Vec<_> = inputs
        .par_chunks(chunk)
        .flat_map_iter(|part| {
            let mut explorer = StrategyExplorer::new();
            part.iter()
                .filter_map(|p| {
                    let nfs = explorer.normal_forms(p);
                    (nfs.len() != 1).then(|| (p.clone(), nfs))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
