//! Quantum Chevalley (Monk) rule: multiplication by a divisor class `σ^{s_i}`.

use crate::class::{Class, Coefficient};
use crate::roots::DegreeVector;
use crate::weyl::Permutation;

/// Output of multiplying a single `σ^u` by `σ^{s_i}`: classical targets
/// `u s_γ`, and quantum targets `(u s_γ, γ^∨)`. All coefficients are
/// `⟨χ_i, γ^∨⟩ = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChevalleyTerms {
    pub classical: Vec<Permutation>,
    pub quantum: Vec<(Permutation, DegreeVector)>,
}

/// Enumerates `γ = e_a - e_b` with `a ≤ i < b` (exactly the roots with
/// `⟨χ_i, γ^∨⟩ ≠ 0`) and sorts them by the two length conditions.
pub fn chevalley_terms(i: usize, u: &Permutation, quantum: bool) -> ChevalleyTerms {
    let n = u.n();
    let v = u.one_line();
    let mut classical = Vec::new();
    let mut quantum_terms = Vec::new();
    for a in 1..=i {
        for b in i + 1..=n {
            let (ua, ub) = (v[a - 1], v[b - 1]);
            let between = v[a..b - 1].iter();
            if ua < ub {
                // ℓ(u s_γ) = ℓ(u) + 1 iff nothing in between has a value in (ua, ub)
                if between.clone().all(|&x| x < ua || x > ub) {
                    classical.push(u.mul_transposition_right(a, b));
                }
            } else if quantum {
                // ℓ(u s_γ) = ℓ(u) + 1 - 2(b - a) iff every value in between lies in (ub, ua)
                if between.clone().all(|&x| x > ub && x < ua) {
                    quantum_terms.push((
                        u.mul_transposition_right(a, b),
                        DegreeVector::interval(n, a, b - 1),
                    ));
                }
            }
        }
    }
    ChevalleyTerms {
        classical,
        quantum: quantum_terms,
    }
}

/// `c ⋆ σ^{s_i}`, extended linearly. With `quantum = false` this is the
/// classical Monk rule (the `q = 0` specialization).
pub fn chevalley_apply<C: Coefficient>(i: usize, c: &Class<C>, quantum: bool) -> Class<C> {
    let mut out = Class::new();
    for (lambda, u, coeff) in c.iter() {
        let t = chevalley_terms(i, u, quantum);
        for w in t.classical {
            out.add_term(lambda.clone(), w, coeff.clone());
        }
        for (w, d) in t.quantum {
            out.add_term(lambda + &d, w, coeff.clone());
        }
    }
    out
}

/// `c ⋆ σ^{s_i}` in `QH^*(Fl_n)`.
pub fn quantum_chevalley<C: Coefficient>(i: usize, c: &Class<C>) -> Class<C> {
    chevalley_apply(i, c, true)
}
