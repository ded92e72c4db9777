//! The `ℤ²`-grading `gr_α` and the filtration it induces.

use std::ops::Add;

use serde::Serialize;

use crate::error::Result;
use crate::exec::Strategy;
use crate::qh::engine::QhEngine;
use crate::roots::DegreeVector;
use crate::weyl::{all_permutations, Permutation};

/// `(a, b)` compared lexicographically; derive order matches that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GradePair {
    pub a: i64,
    pub b: i64,
}

impl GradePair {
    pub fn total(&self) -> i64 {
        self.a + self.b
    }
}

impl Add for GradePair {
    type Output = GradePair;
    fn add(self, o: GradePair) -> GradePair {
        GradePair {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl std::fmt::Display for GradePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `gr_α(q_λ σ^w) = (sgn_α(w) + ⟨α,λ⟩, ℓ(w) + ⟨2ρ,λ⟩ − sgn_α(w) − ⟨α,λ⟩)`.
pub fn gr_alpha(i: usize, lambda: &DegreeVector, w: &Permutation) -> GradePair {
    let a = w.sgn_alpha(i) as i64 + lambda.pair_root(i) as i64;
    let total = w.length() as i64 + lambda.pair_2rho() as i64;
    GradePair { a, b: total - a }
}

/// The two numerical conditions characterizing additivity of grades.
pub fn additivity_conditions(
    i: usize,
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
    lambda: &DegreeVector,
) -> bool {
    let degree = w.length() as i64 + lambda.pair_2rho() as i64 == (u.length() + v.length()) as i64;
    let sgn = w.sgn_alpha(i) as i64 + lambda.pair_root(i) as i64
        == (u.sgn_alpha(i) + v.sgn_alpha(i)) as i64;
    degree && sgn
}

pub fn grades_add_up(
    i: usize,
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
    lambda: &DegreeVector,
) -> bool {
    let zero = DegreeVector::zero(u.n());
    gr_alpha(i, &zero, u) + gr_alpha(i, &zero, v) == gr_alpha(i, lambda, w)
}

/// All `λ ≥ 0` in `ℤ^{n-1}` with `⟨2ρ,λ⟩ ≤ max_degree`.
pub fn effective_degrees(n: usize, max_degree: usize) -> Vec<DegreeVector> {
    let budget = max_degree / 2;
    let mut out = Vec::new();
    let mut cur = vec![0i32; n - 1];
    fn rec(idx: usize, left: usize, cur: &mut Vec<i32>, out: &mut Vec<DegreeVector>) {
        if idx == cur.len() {
            out.push(DegreeVector::from_coeffs(cur.clone()));
            return;
        }
        for c in 0..=left {
            cur[idx] = c as i32;
            rec(idx + 1, left - c, cur, out);
        }
        cur[idx] = 0;
    }
    rec(0, budget, &mut cur, &mut out);
    out
}

/// Basis elements `q_λ σ^w` of total degree at most `cap`.
pub fn basis_up_to(n: usize, cap: usize) -> Vec<(DegreeVector, Permutation)> {
    let mut out = Vec::new();
    for w in all_permutations(n) {
        if w.length() > cap {
            continue;
        }
        for lambda in effective_degrees(n, cap - w.length()) {
            out.push((lambda, w.clone()));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationViolation {
    pub alpha: usize,
    pub left: String,
    pub right: String,
    pub term: String,
    pub input_grade: GradePair,
    pub term_grade: GradePair,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FiltrationReport {
    pub n: usize,
    pub degree_cap: usize,
    pub pairs: u64,
    pub terms: u64,
    pub violations: Vec<FiltrationViolation>,
}

/// Checks `F_a ⋆ F_b ⊆ F_{a+b}` on every pair of basis elements whose
/// product has degree at most `degree_cap`, for one simple root.
pub fn verify_filtration(
    engine: &QhEngine,
    i: usize,
    degree_cap: usize,
    strategy: Strategy,
) -> Result<FiltrationReport> {
    let n = engine.n();
    let basis = basis_up_to(n, degree_cap);
    let partials = strategy.try_map(&basis, |(lam, u)| -> Result<FiltrationReport> {
        let mut rep = FiltrationReport::default();
        let left_deg = u.length() + lam.pair_2rho() as usize;
        let g_left = gr_alpha(i, lam, u);
        for (mu, v) in &basis {
            if left_deg + v.length() + mu.pair_2rho() as usize > degree_cap {
                continue;
            }
            let bound = g_left + gr_alpha(i, mu, v);
            let product = engine.quantum_product(u, v)?;
            rep.pairs += 1;
            let shift = lam + mu;
            for (nu, w, _) in product.iter() {
                rep.terms += 1;
                let total = nu + &shift;
                let g = gr_alpha(i, &total, w);
                if g > bound {
                    rep.violations.push(FiltrationViolation {
                        alpha: i,
                        left: format!("{}*{}", lam.q_monomial(), u),
                        right: format!("{}*{}", mu.q_monomial(), v),
                        term: format!("{}*{}", total.q_monomial(), w),
                        input_grade: bound,
                        term_grade: g,
                    });
                }
            }
        }
        Ok(rep)
    })?;
    let mut out = FiltrationReport {
        n,
        degree_cap,
        ..Default::default()
    };
    for p in partials {
        out.pairs += p.pairs;
        out.terms += p.terms;
        out.violations.extend(p.violations);
    }
    Ok(out)
}
