//! Quantum → classical reduction of structure constants `N_{u,v}^{w,λ}`.
//!
//! Rewrites act on quadruples `(u, v, w, λ)` and preserve the structure
//! constant. Every rewrite is also checked against the engine.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::qh::engine::QhEngine;
use crate::roots::DegreeVector;
use crate::weyl::{all_permutations, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quad {
    pub u: Permutation,
    pub v: Permutation,
    pub w: Permutation,
    pub lambda: DegreeVector,
}

impl Quad {
    pub fn new(u: Permutation, v: Permutation, w: Permutation, lambda: DegreeVector) -> Self {
        Quad { u, v, w, lambda }
    }

    pub fn degree_balanced(&self) -> bool {
        (self.u.length() + self.v.length()) as i64
            == self.w.length() as i64 + self.lambda.pair_2rho() as i64
    }

    fn sgn(&self, i: usize) -> (i64, i64, i64, i64) {
        (
            self.u.sgn_alpha(i) as i64,
            self.v.sgn_alpha(i) as i64,
            self.w.sgn_alpha(i) as i64,
            self.lambda.pair_root(i) as i64,
        )
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N[{}, {}; {}, {}]",
            self.u.word_string(),
            self.v.word_string(),
            self.w.word_string(),
            self.lambda.q_monomial()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    /// `(u, v, w, λ) → (us, vs, w, λ − α^∨)`
    DropBoth,
    /// `(u, v, w, λ) → (u, vs, ws, λ − α^∨ or λ)`
    ShiftRight,
    /// same with the roles of `u` and `v` exchanged
    ShiftLeft,
    /// `(u, v, w, 0) → (u, vs, ws, 0)` when `sgn(u) = 0`, `sgn(v) = sgn(w) = 1`
    ClassicalRight,
    ClassicalLeft,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::DropBoth => "drop-both",
            Rule::ShiftRight => "shift-right",
            Rule::ShiftLeft => "shift-left",
            Rule::ClassicalRight => "classical-right",
            Rule::ClassicalLeft => "classical-left",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: Rule,
    pub alpha: usize,
    /// `true` when the step undoes a rewrite (moves away from `λ = 0`)
    pub reverse: bool,
    pub to: Quad,
}

/// Why a constant is zero without computing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Vanishing {
    NegativeDegree,
    DegreeMismatch,
    Sign { alpha: usize },
}

pub fn vanishing(q: &Quad) -> Option<Vanishing> {
    if !q.lambda.is_nonnegative() {
        return Some(Vanishing::NegativeDegree);
    }
    if !q.degree_balanced() {
        return Some(Vanishing::DegreeMismatch);
    }
    (1..q.u.n())
        .find(|&i| {
            let (su, sv, sw, p) = q.sgn(i);
            sw + p > su + sv
        })
        .map(|alpha| Vanishing::Sign { alpha })
}

/// Forward rewrites at a single simple root.
fn forward_at(q: &Quad, i: usize) -> Vec<(Rule, Quad)> {
    let n = q.u.n();
    let (su, sv, sw, p) = q.sgn(i);
    let a = DegreeVector::simple_coroot(n, i);
    let mut out = Vec::new();
    if su == 1 && sv == 1 && sw + p == 2 {
        let lowered = &q.lambda - &a;
        let shifted = if sw == 0 {
            lowered.clone()
        } else {
            q.lambda.clone()
        };
        out.push((
            Rule::DropBoth,
            Quad::new(
                q.u.mul_simple_right(i),
                q.v.mul_simple_right(i),
                q.w.clone(),
                lowered,
            ),
        ));
        out.push((
            Rule::ShiftRight,
            Quad::new(
                q.u.clone(),
                q.v.mul_simple_right(i),
                q.w.mul_simple_right(i),
                shifted.clone(),
            ),
        ));
        out.push((
            Rule::ShiftLeft,
            Quad::new(
                q.u.mul_simple_right(i),
                q.v.clone(),
                q.w.mul_simple_right(i),
                shifted,
            ),
        ));
    }
    if q.lambda.is_zero() && sw == 1 {
        if su == 0 && sv == 1 {
            out.push((
                Rule::ClassicalRight,
                Quad::new(
                    q.u.clone(),
                    q.v.mul_simple_right(i),
                    q.w.mul_simple_right(i),
                    q.lambda.clone(),
                ),
            ));
        }
        if sv == 0 && su == 1 {
            out.push((
                Rule::ClassicalLeft,
                Quad::new(
                    q.u.mul_simple_right(i),
                    q.v.clone(),
                    q.w.mul_simple_right(i),
                    q.lambda.clone(),
                ),
            ));
        }
    }
    out
}

/// Quadruples `p` with a forward rewrite `p → q` at root `i`.
fn backward_at(q: &Quad, i: usize) -> Vec<(Rule, Quad)> {
    let n = q.u.n();
    let a = DegreeVector::simple_coroot(n, i);
    let mut out = Vec::new();
    let flip = |x: &Permutation, f: bool| if f { x.mul_simple_right(i) } else { x.clone() };
    for mask in 0u8..8 {
        for raise in [false, true] {
            let lambda = if raise {
                &q.lambda + &a
            } else {
                q.lambda.clone()
            };
            let cand = Quad::new(
                flip(&q.u, mask & 1 != 0),
                flip(&q.v, mask & 2 != 0),
                flip(&q.w, mask & 4 != 0),
                lambda,
            );
            for (rule, target) in forward_at(&cand, i) {
                if &target == q && !out.iter().any(|(r, c)| *r == rule && *c == cand) {
                    out.push((rule, cand.clone()));
                }
            }
        }
    }
    out
}

/// All single-step rewrites of `q`: forward rewrites first, then reverse
/// ones, each group ordered by root index.
pub fn reduce_step(q: &Quad) -> Vec<Step> {
    let n = q.u.n();
    let mut out = Vec::new();
    for i in 1..n {
        for (rule, to) in forward_at(q, i) {
            out.push(Step {
                rule,
                alpha: i,
                reverse: false,
                to,
            });
        }
    }
    for i in 1..n {
        for (rule, to) in backward_at(q, i) {
            out.push(Step {
                rule,
                alpha: i,
                reverse: true,
                to,
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Terminal {
    /// Reached `λ = 0`; the value is a classical intersection number.
    Classical { value: u64 },
    /// Certified zero.
    Vanishes { reason: Vanishing },
    /// No chain to `λ = 0` within the search limits.
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub start: Quad,
    pub steps: Vec<Step>,
    pub terminal: Terminal,
    pub value: u64,
}

impl Trace {
    pub fn end(&self) -> &Quad {
        self.steps.last().map(|s| &s.to).unwrap_or(&self.start)
    }

    pub fn render(&self) -> String {
        let mut lines = vec![self.start.to_string()];
        for s in &self.steps {
            let dir = if s.reverse { " (reverse)" } else { "" };
            lines.push(format!(
                "  = {}    [{} at alpha_{}{}]",
                s.to, s.rule, s.alpha, dir
            ));
        }
        match &self.terminal {
            Terminal::Classical { value } => lines.push(format!("  = {value}")),
            Terminal::Vanishes { reason } => lines.push(format!("  = 0    [{reason:?}]")),
            Terminal::Stuck => {
                lines.push("  stuck: no rewrite chain to a classical constant".into())
            }
        }
        lines.join("\n")
    }
}

pub const MAX_DEPTH: usize = 12;
pub const MAX_STATES: usize = 50_000;

/// Breadth-first search for a shortest rewrite chain from `start` to a
/// quadruple with `λ = 0`, or to one that vanishes for sign reasons.
/// Every step of the returned chain is re-checked with the engine.
pub fn reduce_trace(engine: &QhEngine, start: &Quad) -> Result<Trace> {
    let value = engine.structure_constant(&start.u, &start.v, &start.w, &start.lambda)?;
    let finish = |steps: Vec<Step>, terminal: Terminal| -> Result<Trace> {
        let mut prev = start.clone();
        for s in &steps {
            let a = engine.structure_constant(&prev.u, &prev.v, &prev.w, &prev.lambda)?;
            let b = engine.structure_constant(&s.to.u, &s.to.v, &s.to.w, &s.to.lambda)?;
            if a != b {
                return Err(Error::FormulaViolation(format!(
                    "rewrite {} at alpha_{}: {prev} = {a} but {} = {b}",
                    s.rule, s.alpha, s.to
                )));
            }
            prev = s.to.clone();
        }
        let claimed = match &terminal {
            Terminal::Classical { value } => Some(*value),
            Terminal::Vanishes { .. } => Some(0),
            Terminal::Stuck => None,
        };
        if let Some(c) = claimed {
            if c != value {
                return Err(Error::FormulaViolation(format!(
                    "chain from {start} ends at {c}, engine gives {value}"
                )));
            }
        }
        Ok(Trace {
            start: start.clone(),
            steps,
            terminal,
            value,
        })
    };

    let terminal_of = |q: &Quad| -> Result<Option<Terminal>> {
        if let Some(reason) = vanishing(q) {
            return Ok(Some(Terminal::Vanishes { reason }));
        }
        if q.lambda.is_zero() {
            let value = engine.structure_constant(&q.u, &q.v, &q.w, &q.lambda)?;
            return Ok(Some(Terminal::Classical { value }));
        }
        Ok(None)
    };

    if let Some(t) = terminal_of(start)? {
        return finish(Vec::new(), t);
    }
    let mut parent: HashMap<Quad, Option<(Quad, Step)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    while let Some((q, depth)) = queue.pop_front() {
        if depth >= MAX_DEPTH {
            continue;
        }
        for step in reduce_step(&q) {
            if parent.contains_key(&step.to) {
                continue;
            }
            // sign-vanishing states say nothing about a nonzero start
            if step.to.lambda.is_nonnegative() || value == 0 {
                parent.insert(step.to.clone(), Some((q.clone(), step.clone())));
            } else {
                continue;
            }
            if let Some(t) = terminal_of(&step.to)? {
                let mut steps = vec![step.clone()];
                let mut cur = q.clone();
                while let Some(Some((p, s))) = parent.get(&cur) {
                    steps.push(s.clone());
                    cur = p.clone();
                }
                steps.reverse();
                return finish(steps, t);
            }
            if parent.len() >= MAX_STATES {
                return finish(Vec::new(), Terminal::Stuck);
            }
            queue.push_back((step.to, depth + 1));
        }
    }
    finish(Vec::new(), Terminal::Stuck)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionFailure {
    pub identity: String,
    pub alpha: usize,
    pub left: String,
    pub right: String,
    pub left_value: u64,
    pub right_value: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ReductionReport {
    pub n: usize,
    pub vanishing_checked: u64,
    pub rewrite_checked: u64,
    pub classical_checked: u64,
    pub failures: Vec<ReductionFailure>,
}

impl ReductionReport {
    pub fn total(&self) -> u64 {
        self.vanishing_checked + self.rewrite_checked + self.classical_checked
    }
}

fn value(engine: &QhEngine, q: &Quad) -> Result<u64> {
    engine.structure_constant(&q.u, &q.v, &q.w, &q.lambda)
}

/// Exhaustive check of the sign-vanishing statement and of every forward
/// rewrite, both sides computed independently by the engine.
pub fn verify_reduction(engine: &QhEngine, strategy: Strategy) -> Result<ReductionReport> {
    let n = engine.n();
    let perms = all_permutations(n);
    let pairs: Vec<(Permutation, Permutation)> = perms
        .iter()
        .flat_map(|u| perms.iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    let parts = strategy.try_map(&pairs, |(u, v)| -> Result<ReductionReport> {
        let mut rep = ReductionReport::default();
        let product = engine.quantum_product(u, v)?;
        // nonzero constants never violate the sign bound
        for (lambda, w, c) in product.iter() {
            let q = Quad::new(u.clone(), v.clone(), w.clone(), lambda.clone());
            rep.vanishing_checked += 1;
            if let Some(Vanishing::Sign { alpha }) = vanishing(&q) {
                rep.failures.push(ReductionFailure {
                    identity: "sign-vanishing".into(),
                    alpha,
                    left: q.to_string(),
                    right: "0".into(),
                    left_value: c.to_integer().try_into().unwrap_or(u64::MAX),
                    right_value: 0,
                });
            }
        }
        let total = u.length() + v.length();
        for w in &perms {
            if w.length() > total || (total - w.length()) % 2 != 0 {
                continue;
            }
            let budget = (total - w.length()) / 2;
            for lambda in crate::qh::grading::effective_degrees(n, 2 * budget) {
                if lambda.total() as usize != budget {
                    continue;
                }
                let q = Quad::new(u.clone(), v.clone(), w.clone(), lambda);
                for i in 1..n {
                    for (rule, to) in forward_at(&q, i) {
                        let (a, b) = (value(engine, &q)?, value(engine, &to)?);
                        match rule {
                            Rule::ClassicalLeft | Rule::ClassicalRight => {
                                rep.classical_checked += 1
                            }
                            _ => rep.rewrite_checked += 1,
                        }
                        if a != b {
                            rep.failures.push(ReductionFailure {
                                identity: rule.to_string(),
                                alpha: i,
                                left: q.to_string(),
                                right: to.to_string(),
                                left_value: a,
                                right_value: b,
                            });
                        }
                    }
                }
            }
        }
        Ok(rep)
    })?;
    let mut out = ReductionReport {
        n,
        ..Default::default()
    };
    for p in parts {
        out.vanishing_checked += p.vanishing_checked;
        out.rewrite_checked += p.rewrite_checked;
        out.classical_checked += p.classical_checked;
        out.failures.extend(p.failures);
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct GrassmannianReport {
    pub n: usize,
    pub checked: u64,
    pub reached_classical: u64,
    pub stuck: Vec<String>,
}

/// For Grassmannian-type `u`, every nonzero quantum constant reduces to a
/// classical one.
pub fn verify_grassmannian_reduction(
    engine: &QhEngine,
    strategy: Strategy,
) -> Result<GrassmannianReport> {
    let n = engine.n();
    let perms = all_permutations(n);
    let pairs: Vec<(Permutation, Permutation)> = perms
        .iter()
        .filter(|u| u.grassmannian_descent().is_some())
        .flat_map(|u| perms.iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    let parts = strategy.try_map(&pairs, |(u, v)| -> Result<GrassmannianReport> {
        let mut rep = GrassmannianReport::default();
        let product = engine.quantum_product(u, v)?;
        for (lambda, w, _) in product.quantum_part().iter() {
            let q = Quad::new(u.clone(), v.clone(), w.clone(), lambda.clone());
            rep.checked += 1;
            let t = reduce_trace(engine, &q)?;
            match t.terminal {
                Terminal::Classical { .. } => rep.reached_classical += 1,
                _ => rep.stuck.push(q.to_string()),
            }
        }
        Ok(rep)
    })?;
    let mut out = GrassmannianReport {
        n,
        ..Default::default()
    };
    for p in parts {
        out.checked += p.checked;
        out.reached_classical += p.reached_classical;
        out.stuck.extend(p.stuck);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, word: &[usize]) -> Permutation {
        Permutation::from_word(n, word).unwrap()
    }

    fn dv(c: &[i32]) -> DegreeVector {
        DegreeVector::from_coeffs(c.to_vec())
    }

    #[test]
    fn fl3_one_step() {
        let e = QhEngine::new(3);
        let start = Quad::new(w(3, &[2, 1]), w(3, &[2, 1]), w(3, &[1, 2]), dv(&[1, 0]));
        let target = Quad::new(w(3, &[2]), w(3, &[2]), w(3, &[1, 2]), dv(&[0, 0]));
        let steps = reduce_step(&start);
        assert!(steps.iter().any(|s| !s.reverse && s.to == target));
        let t = reduce_trace(&e, &start).unwrap();
        assert_eq!(t.value, value(&e, &target).unwrap());
        assert!(matches!(t.terminal, Terminal::Classical { .. }));
    }

    #[test]
    fn printed_fl4_chain_is_made_of_rewrites() {
        let n = 4;
        let chain = [
            Quad::new(
                w(n, &[3, 2, 1, 2]),
                w(n, &[2, 1, 2]),
                w(n, &[1, 2, 3]),
                dv(&[1, 1, 0]),
            ),
            Quad::new(
                w(n, &[3, 2, 1, 2]),
                w(n, &[2, 1, 2, 3]),
                w(n, &[1, 2]),
                dv(&[1, 1, 1]),
            ),
            Quad::new(
                w(n, &[3, 2, 1]),
                w(n, &[2, 1, 2, 3]),
                w(n, &[1]),
                dv(&[1, 1, 1]),
            ),
            Quad::new(
                w(n, &[3, 2, 1]),
                w(n, &[2, 1, 2]),
                w(n, &[1, 3]),
                dv(&[1, 1, 0]),
            ),
            Quad::new(
                w(n, &[3, 2, 1]),
                w(n, &[2, 1]),
                w(n, &[1, 3, 2]),
                dv(&[1, 0, 0]),
            ),
            Quad::new(w(n, &[3, 2]), w(n, &[2]), w(n, &[1, 3, 2]), dv(&[0, 0, 0])),
        ];
        // each printed equality is one rewrite, or two rewrites out of a
        // common quadruple (the pattern used to derive the classical rule)
        let near = |a: &Quad, b: &Quad| {
            reduce_step(a)
                .iter()
                .any(|s| s.to == *b || reduce_step(&s.to).iter().any(|t| t.to == *b))
        };
        for pair in chain.windows(2) {
            assert!(near(&pair[0], &pair[1]), "{} -> {}", pair[0], pair[1]);
        }
        let e = QhEngine::new(n);
        for q in &chain {
            assert_eq!(value(&e, q).unwrap(), 1, "{q}");
        }
        let t = reduce_trace(&e, &chain[0]).unwrap();
        assert_eq!(t.terminal, Terminal::Classical { value: 1 });
    }

    #[test]
    fn vanishing_reasons() {
        let id = Permutation::identity(3);
        let q = Quad::new(id.clone(), id.clone(), id.clone(), dv(&[-1, 0]));
        assert_eq!(vanishing(&q), Some(Vanishing::NegativeDegree));
        let q = Quad::new(id.clone(), id.clone(), w(3, &[1]), dv(&[0, 0]));
        assert_eq!(vanishing(&q), Some(Vanishing::DegreeMismatch));
        // sgn_1(s1) = 1 > 0 + 0
        let q = Quad::new(w(3, &[2]), id.clone(), w(3, &[1]), dv(&[0, 0]));
        assert_eq!(vanishing(&q), Some(Vanishing::Sign { alpha: 1 }));
    }

    #[test]
    fn classical_start_is_terminal() {
        let e = QhEngine::new(3);
        let q = Quad::new(w(3, &[1]), w(3, &[2]), w(3, &[1, 2]), dv(&[0, 0]));
        let t = reduce_trace(&e, &q).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.terminal, Terminal::Classical { value: 1 });
    }

    #[test]
    fn exhaustive_n3() {
        let e = QhEngine::new(3);
        let rep = verify_reduction(&e, Strategy::Sequential).unwrap();
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
        assert!(rep.rewrite_checked > 0 && rep.classical_checked > 0);
        let g = verify_grassmannian_reduction(&e, Strategy::Sequential).unwrap();
        assert!(g.stuck.is_empty(), "{:?}", g.stuck);
    }
}
