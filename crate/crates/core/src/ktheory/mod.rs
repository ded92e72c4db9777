//! K-theory: hook products in `K(Fl_n)`, the conjectural Seidel/Pieri shape
//! in `QK(Fl_n)`, and the push-forward to partial flag varieties.

pub mod grothendieck;
pub mod poly;

use std::cmp::Reverse;

use serde::Serialize;

use crate::class::{KClass, QClass};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::qh::engine::QhEngine;
use crate::roots::DegreeVector;
use crate::weyl::{all_permutations, Permutation};

pub use grothendieck::KEngine;

/// `𝒪^{s_{n−m} ⋯ s_{n−1}} · 𝒪^v` in `K(Fl_n)`.
pub fn k_cup_special(k: &KEngine, m: usize, v: &Permutation) -> Result<KClass> {
    let hook = Permutation::hook(k.n(), m)?;
    k.product(&hook, v)
}

/// Conjectured `𝒯(𝒪^u) = q_{λ(u)} 𝒪^{u↑1}`; same data as in cohomology.
pub fn qk_seidel(u: &Permutation) -> (DegreeVector, Permutation) {
    (u.lambda(), u.up(1))
}

/// Applies `𝒯^j` termwise (as a formal operator on basis classes).
pub fn seidel_power_class<C: crate::class::Coefficient>(
    c: &crate::class::Class<C>,
    j: usize,
) -> crate::class::Class<C> {
    let mut out = crate::class::Class::new();
    for (lambda, w, x) in c.iter() {
        out.add_term(lambda + &w.lambda_cumulative(j), w.up(j), x.clone());
    }
    out
}

/// Multiplies by `q_shift · q_1^{−1} q_2^{−2} ⋯ q_{n−1}^{1−n}` and checks
/// that every exponent of the result is nonnegative.
fn apply_prefactor<C: crate::class::Coefficient>(
    c: &crate::class::Class<C>,
    shift: &DegreeVector,
    what: &str,
) -> Result<crate::class::Class<C>> {
    let n = shift.n();
    let total = shift - &DegreeVector::staircase(n);
    let out = c.shifted(&total);
    if let Some((lambda, w, _)) = out.iter().find(|(l, _, _)| !l.is_nonnegative()) {
        return Err(Error::FormulaViolation(format!(
            "{what}: term with w = {w} has degree {lambda}"
        )));
    }
    Ok(out)
}

/// Conjectured quantum K Pieri formula:
/// `q^{−(1,2,…,n−1)} q_{λ(u,k)} 𝒯^{n−k}(𝒪^{hook} · 𝒪^{u↑k})`, `k = n − u(n)`.
pub fn qk_conjecture_product(k_engine: &KEngine, m: usize, u: &Permutation) -> Result<KClass> {
    let n = u.n();
    let k = n - u.apply(n);
    let cup = k_cup_special(k_engine, m, &u.up(k))?;
    let moved = seidel_power_class(&cup, n - k);
    apply_prefactor(&moved, &u.lambda_cumulative(k), "conjectured QK product")
}

/// `π_*` to `QK(G/P)`: `𝒪^w ↦ 𝒪^{w'}` with `w'` the minimal coset
/// representative, and `q_i ↦ 1` for `α_i ∈ Δ_P`.
pub fn pi_star(delta_p: &[usize], c: &KClass) -> KClass {
    let mut out = KClass::new();
    for (lambda, w, x) in c.iter() {
        let mut l = lambda.clone();
        for &i in delta_p {
            l.set(i, 0);
        }
        out.add_term(l, w.min_coset_representative(delta_p), *x);
    }
    out
}

/// Partition label `(μ_1,…)` of a Grassmannian class, trailing zeros dropped.
pub fn partition_label(w: &Permutation, k: usize) -> Result<String> {
    let mu = w.to_partition(k)?;
    let parts: Vec<String> = mu
        .iter()
        .filter(|&&p| p > 0)
        .map(|p| p.to_string())
        .collect();
    Ok(format!("({})", parts.join(",")))
}

/// Renders a class on `Gr(k, n)` in partition labels. Terms are ordered by
/// q-degree (highest first), then partition size, then reverse-lex on the
/// partition (last part first).
pub fn render_grassmannian(c: &KClass, k: usize) -> Result<String> {
    let mut terms = Vec::new();
    for (lambda, w, x) in c.iter() {
        let mu = w.to_partition(k)?;
        terms.push((lambda.clone(), mu, w.clone(), *x));
    }
    terms.sort_by_key(|(lambda, mu, _, _)| {
        let size: usize = mu.iter().sum();
        let revlex: Vec<usize> = mu.iter().rev().copied().collect();
        (
            Reverse(lambda.total()),
            Reverse(lambda.clone()),
            size,
            revlex,
        )
    });
    if terms.is_empty() {
        return Ok("0".into());
    }
    let mut out = String::new();
    for (idx, (lambda, _, w, x)) in terms.iter().enumerate() {
        if idx == 0 {
            if *x < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if *x < 0 { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if x.abs() != 1 {
            factors.push(x.abs().to_string());
        }
        if !lambda.is_zero() {
            factors.push(lambda.q_monomial());
        }
        factors.push(format!("O{}", partition_label(w, k)?));
        out.push_str(&factors.join("*"));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KFailure {
    pub m: usize,
    pub v: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct KReport {
    pub n: usize,
    pub total: u64,
    pub passed: u64,
    pub failures: Vec<KFailure>,
}

/// Checks one hook product against the structural properties of
/// K-theoretic Schubert structure constants.
pub fn check_k_product(
    qh: &QhEngine,
    m: usize,
    v: &Permutation,
    prod: &KClass,
) -> Result<Vec<String>> {
    let n = v.n();
    let hook = Permutation::hook(n, m)?;
    let base = hook.length() + v.length();
    let mut problems = Vec::new();
    for (lambda, w, &c) in prod.iter() {
        if !lambda.is_zero() {
            problems.push(format!(
                "quantum term {} in a classical product",
                lambda.q_monomial()
            ));
        }
        if w.length() < base {
            problems.push(format!("{w} below the product degree"));
            continue;
        }
        let expected_sign = if (w.length() - base).is_multiple_of(2) { 1 } else { -1 };
        if c.signum() != expected_sign {
            problems.push(format!("coefficient {c} of {w} has the wrong sign"));
        }
        if !hook.bruhat_leq(w) || !v.bruhat_leq(w) {
            problems.push(format!("{w} is not above both factors in Bruhat order"));
        }
    }
    let mut lowest = QClass::new();
    for (lambda, w, &c) in prod.iter() {
        if w.length() == base {
            lowest.add_term(lambda.clone(), w.clone(), crate::class::rat(c));
        }
    }
    let cup = qh.classical_product(&hook, v)?;
    if lowest != *cup {
        problems.push(format!(
            "lowest-degree part {} differs from the cup product {}",
            lowest.render("O"),
            cup.render("s")
        ));
    }
    Ok(problems)
}

/// Sweeps every hook product in `K(Fl_n)`.
pub fn k_verify(k: &KEngine, qh: &QhEngine, strategy: Strategy) -> Result<KReport> {
    let n = k.n();
    let cases: Vec<(usize, Permutation)> = (1..n)
        .flat_map(|m| all_permutations(n).into_iter().map(move |v| (m, v)))
        .collect();
    let results = strategy.try_map(&cases, |(m, v)| -> Result<Vec<String>> {
        let prod = k_cup_special(k, *m, v)?;
        check_k_product(qh, *m, v, &prod)
    })?;
    let mut rep = KReport {
        n,
        ..Default::default()
    };
    for ((m, v), problems) in cases.iter().zip(results) {
        rep.total += 1;
        if problems.is_empty() {
            rep.passed += 1;
        } else {
            for reason in problems {
                rep.failures.push(KFailure {
                    m: *m,
                    v: v.to_string(),
                    reason,
                });
            }
        }
    }
    Ok(rep)
}
