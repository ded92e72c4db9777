//! The Seidel operator `𝒯 = σ^{s_1⋯s_{n−1}} ⋆ ·`, the quantum Pieri rule for
//! hook classes that follows from it, and the sweeps that check both
//! against the general product engine.

use serde::Serialize;

use crate::class::{Class, Coefficient, QClass};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::qh::engine::QhEngine;
use crate::report::{Counterexample, VerifyReport};
use crate::roots::DegreeVector;
use crate::weyl::{all_permutations, Permutation};

/// `𝒯(σ^u) = q_{λ(u)} σ^{u↑1}`.
pub fn seidel_apply(u: &Permutation) -> (DegreeVector, Permutation) {
    (u.lambda(), u.up(1))
}

/// `𝒯^k(σ^u) = q_{λ(u,k)} σ^{u↑k}`.
pub fn seidel_power(u: &Permutation, k: usize) -> (DegreeVector, Permutation) {
    (u.lambda_cumulative(k), u.up(k))
}

/// `𝒯^k` applied termwise to a class.
pub fn seidel_class<C: Coefficient>(c: &Class<C>, k: usize) -> Class<C> {
    let mut out = Class::new();
    for (lambda, w, x) in c.iter() {
        let (l, v) = seidel_power(w, k);
        out.add_term(lambda + &l, v, x.clone());
    }
    out
}

/// Closed form of `σ^{cycle} ⋆ σ^u` as a class.
pub fn seidel_closed_form(u: &Permutation) -> QClass {
    let (l, v) = seidel_apply(u);
    QClass::term(l, v, crate::class::rat(1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieriResult {
    pub closed_form: QClass,
    pub engine_form: Option<QClass>,
    pub agrees: bool,
}

/// `σ^{s_{n−m}⋯s_{n−1}} ⋆ σ^u` from the Seidel operator:
/// `q^{−(1,2,…,n−1)} q_{λ(u,k)} 𝒯^{n−k}(σ^{hook} ∪ σ^{u↑k})`, `k = n − u(n)`.
pub fn quantum_pieri(
    engine: &QhEngine,
    m: usize,
    u: &Permutation,
    engine_check: bool,
) -> Result<PieriResult> {
    let n = engine.n();
    if u.n() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: u.n(),
        });
    }
    let hook = Permutation::hook(n, m)?;
    let k = n - u.apply(n);
    let cup = engine.classical_product(&hook, &u.up(k))?;
    let moved = seidel_class(&cup, n - k);
    let shift = &u.lambda_cumulative(k) - &DegreeVector::staircase(n);
    let closed_form = moved.shifted(&shift);
    if let Some((lambda, w, _)) = closed_form.iter().find(|(l, _, _)| !l.is_nonnegative()) {
        return Err(Error::FormulaViolation(format!(
            "hook {m} times {u}: term {w} has degree {lambda}"
        )));
    }
    let engine_form = if engine_check {
        Some((*engine.quantum_product(&hook, u)?).clone())
    } else {
        None
    };
    let agrees = engine_form.as_ref().is_none_or(|e| *e == closed_form);
    Ok(PieriResult {
        closed_form,
        engine_form,
        agrees,
    })
}

/// Compares the engine's `σ^{cycle} ⋆ σ^u` with the closed form for every `u`.
pub fn verify_seidel(engine: &QhEngine, strategy: Strategy) -> Result<VerifyReport> {
    let n = engine.n();
    let cycle = Permutation::cycle(n);
    let perms = all_permutations(n);
    let outcomes = strategy.try_map(&perms, |u| -> Result<Option<Counterexample>> {
        let got = engine.quantum_product(&cycle, u)?;
        let want = seidel_closed_form(u);
        Ok((*got != want).then(|| Counterexample {
            case: format!("u={u}"),
            expected: want.render("s"),
            got: got.render("s"),
        }))
    })?;
    let mut rep = VerifyReport::new("seidel", n);
    outcomes.into_iter().for_each(|o| rep.record(o));
    Ok(rep)
}

/// Every `(m, u)` pair for `S_n`.
pub fn pieri_cases(n: usize) -> Vec<(usize, Permutation)> {
    (1..n)
        .flat_map(|m| all_permutations(n).into_iter().map(move |u| (m, u)))
        .collect()
}

/// Closed-form Pieri products against engine products on the given cases.
pub fn verify_pieri(
    engine: &QhEngine,
    cases: &[(usize, Permutation)],
    strategy: Strategy,
) -> Result<VerifyReport> {
    let outcomes = strategy.map(cases, |(m, u)| -> Option<Counterexample> {
        match quantum_pieri(engine, *m, u, true) {
            Ok(r) if r.agrees => None,
            Ok(r) => Some(Counterexample {
                case: format!("m={m} u={u}"),
                expected: r.closed_form.render("s"),
                got: r.engine_form.map(|e| e.render("s")).unwrap_or_default(),
            }),
            Err(e) => Some(Counterexample {
                case: format!("m={m} u={u}"),
                expected: "closed form".into(),
                got: e.to_string(),
            }),
        }
    });
    let mut rep = VerifyReport::new("pieri", engine.n());
    outcomes.into_iter().for_each(|o| rep.record(o));
    Ok(rep)
}

/// Support of hook products: quantum terms only when `u(n) ≠ n`, and each
/// such degree is `α_k^∨ + ⋯ + α_{n−1}^∨`.
pub fn support_violation(u: &Permutation, product: &QClass) -> Option<String> {
    let n = u.n();
    for (lambda, w, _) in product.quantum_part().iter() {
        if u.apply(n) == n {
            return Some(format!(
                "quantum term {}*{w} although u(n) = n",
                lambda.q_monomial()
            ));
        }
        match lambda.as_interval() {
            Some((_, r)) if r == n - 1 => {}
            _ => return Some(format!("degree {lambda} of {w} is not a tail interval")),
        }
    }
    None
}

pub fn verify_support(engine: &QhEngine, strategy: Strategy) -> Result<VerifyReport> {
    let n = engine.n();
    let cases = pieri_cases(n);
    let outcomes = strategy.try_map(&cases, |(m, u)| -> Result<Option<Counterexample>> {
        let hook = Permutation::hook(n, *m)?;
        let product = engine.quantum_product(&hook, u)?;
        Ok(support_violation(u, &product).map(|why| Counterexample {
            case: format!("m={m} u={u}"),
            expected: "tail-interval degrees, none when u(n) = n".into(),
            got: why,
        }))
    })?;
    let mut rep = VerifyReport::new("support", n);
    outcomes.into_iter().for_each(|o| rep.record(o));
    Ok(rep)
}

/// `σ^{s_1⋯s_{n−1}} ∪ σ^u` should be `σ^{s_1⋯s_{n−1} u}` when `u(n) = n`
/// and zero otherwise.
pub fn verify_cycle_cup(engine: &QhEngine, strategy: Strategy) -> Result<VerifyReport> {
    let n = engine.n();
    let cycle = Permutation::cycle(n);
    let perms = all_permutations(n);
    let outcomes = strategy.try_map(&perms, |u| -> Result<Option<Counterexample>> {
        let got = engine.classical_product(&cycle, u)?;
        let want = if u.apply(n) == n {
            QClass::basis(&cycle * u)
        } else {
            QClass::new()
        };
        Ok((*got != want).then(|| Counterexample {
            case: format!("u={u}"),
            expected: want.render("s"),
            got: got.render("s"),
        }))
    })?;
    let mut rep = VerifyReport::new("cycle-cup", n);
    outcomes.into_iter().for_each(|o| rep.record(o));
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExploreRow {
    pub u: String,
    pub word: String,
    pub descents: Vec<usize>,
    pub last: usize,
    pub equal: bool,
}

/// For every `u`, whether `σ^{s_i⋯s_j} ⋆ σ^u` has no quantum terms.
pub fn explore_classical_equality(
    engine: &QhEngine,
    i: usize,
    j: usize,
    strategy: Strategy,
) -> Result<Vec<ExploreRow>> {
    let n = engine.n();
    if !(1 <= i && i <= j && j < n) {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let seg = Permutation::segment(n, i, j)?;
    let perms = all_permutations(n);
    strategy.try_map(&perms, |u| -> Result<ExploreRow> {
        let q = engine.quantum_product(&seg, u)?;
        let c = engine.classical_product(&seg, u)?;
        Ok(ExploreRow {
            u: u.to_string(),
            word: u.word_string(),
            descents: u.descents(),
            last: u.apply(n),
            equal: *q == *c,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, word: &[usize]) -> Permutation {
        Permutation::from_word(n, word).unwrap()
    }

    #[test]
    fn seidel_examples() {
        let u = Permutation::parse("43512").unwrap();
        let (l, v) = seidel_apply(&u);
        assert_eq!(l, DegreeVector::from_coeffs(vec![0, 0, 1, 1]));
        assert_eq!(v, w(5, &[3, 4, 2, 3, 1, 2, 1]));
        let (l3, v3) = seidel_power(&u, 3);
        assert_eq!(l3.q_monomial(), "q1*q2^2*q3^3*q4^3");
        assert_eq!(v3, w(5, &[1]));
        let s1 = w(5, &[1]);
        assert_eq!(
            seidel_apply(&s1),
            (DegreeVector::zero(5), w(5, &[1, 2, 3, 4, 1]))
        );
    }

    #[test]
    fn full_turn_is_staircase() {
        for n in 2..=5 {
            for u in all_permutations(n) {
                assert_eq!(seidel_power(&u, n), (DegreeVector::staircase(n), u.clone()));
            }
        }
    }

    #[test]
    fn fl5_pieri_example() {
        let e = QhEngine::new(5);
        let u = Permutation::parse("43512").unwrap();
        let r = quantum_pieri(&e, 3, &u, true).unwrap();
        assert!(r.agrees);
        assert_eq!(
            r.closed_form.render("s"),
            "q3*q4*s[4,2,3,1,2,1] + q3*q4*s[3,4,2,3,1,2]"
        );
    }

    #[test]
    fn identity_gives_hook() {
        let e = QhEngine::new(4);
        for m in 1..4 {
            let r = quantum_pieri(&e, m, &Permutation::identity(4), false).unwrap();
            assert_eq!(
                r.closed_form,
                QClass::basis(Permutation::hook(4, m).unwrap())
            );
        }
    }

    #[test]
    fn sweeps_n3() {
        let e = QhEngine::new(3);
        assert_eq!(
            verify_seidel(&e, Strategy::Sequential).unwrap().summary(),
            "6/6 pass"
        );
        let p = verify_pieri(&e, &pieri_cases(3), Strategy::Sequential).unwrap();
        assert!(p.ok());
        assert_eq!(p.total, 12);
        assert!(verify_support(&e, Strategy::Sequential).unwrap().ok());
        assert!(verify_cycle_cup(&e, Strategy::Sequential).unwrap().ok());
    }

    #[test]
    fn explore_full_hook() {
        let e = QhEngine::new(4);
        let rows = explore_classical_equality(&e, 1, 3, Strategy::Sequential).unwrap();
        assert_eq!(rows.len(), 24);
        for r in rows {
            assert_eq!(r.equal, r.last == 4, "{}", r.u);
        }
    }
}
