//! Peterson–Woodward lift of curve degrees from `G/P` to `G/B`, and the
//! injection `ψ_α : QH^*(G/P_α) → QH^*(G/B)` built from it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::report::{Counterexample, VerifyReport};
use crate::roots::{parabolic_positive_roots, DegreeVector};
use crate::weyl::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PwLift {
    pub lambda_b: DegreeVector,
    pub delta_p_prime: Vec<usize>,
}

/// Maximal runs `[p, r]` of consecutive indices in `Δ_P`.
fn intervals(delta_p: &[usize]) -> Vec<(usize, usize)> {
    let mut d = delta_p.to_vec();
    d.sort_unstable();
    d.dedup();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for i in d {
        match out.last_mut() {
            Some((_, r)) if *r + 1 == i => *r = i,
            _ => out.push((i, i)),
        }
    }
    out
}

/// The unique `λ_B ≡ λ_P (mod Q_P^∨)` with `⟨γ, λ_B⟩ ∈ {0, −1}` for every
/// `γ ∈ R_P^+`.
///
/// On a run `[p, r]` of `Δ_P` put `d_j = λ_j − λ_{j−1}` for `j = p..r+1`.
/// Then `⟨α_a+⋯+α_b, λ⟩ = d_a − d_{b+1}`, so the condition says `d` is
/// nondecreasing with spread at most one. Its sum is fixed by the entries
/// just outside the run, which pins `d` down.
pub fn peterson_woodward_lift(lambda_p: &DegreeVector, delta_p: &[usize]) -> Result<PwLift> {
    let n = lambda_p.n();
    if let Some(&bad) = delta_p.iter().find(|&&i| i == 0 || i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    let mut lam = lambda_p.clone();
    let entry = |l: &DegreeVector, i: usize| if i == 0 || i >= n { 0 } else { l.get(i) };
    for (p, r) in intervals(delta_p) {
        let left = entry(&lam, p - 1) as i64;
        let right = entry(&lam, r + 1) as i64;
        let m = (r - p + 2) as i64;
        let total = right - left;
        let base = total.div_euclid(m);
        let extra = total.rem_euclid(m);
        let mut cur = left;
        for (k, j) in (p..=r).enumerate() {
            // the last `extra` increments get +1
            let bump = if (k as i64) >= m - extra { 1 } else { 0 };
            cur += base + bump;
            lam.set(j, cur as i32);
        }
    }
    let delta_p_prime = {
        let mut d: Vec<usize> = delta_p
            .iter()
            .copied()
            .filter(|&i| lam.pair_root(i) == 0)
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    let lift = PwLift {
        lambda_b: lam,
        delta_p_prime,
    };
    if !is_valid_lift(&lift.lambda_b, delta_p) {
        return Err(Error::InvariantViolation(format!(
            "lift {} of {} fails the pairing condition",
            lift.lambda_b, lambda_p
        )));
    }
    Ok(lift)
}

/// `⟨γ, λ⟩ ∈ {0, −1}` for every positive root of the Levi.
pub fn is_valid_lift(lambda_b: &DegreeVector, delta_p: &[usize]) -> bool {
    parabolic_positive_roots(lambda_b.n(), delta_p)
        .into_iter()
        .all(|g| matches!(lambda_b.pair_with_root(g), 0 | -1))
}

/// Every valid lift in the box `lo..=hi` on the `Δ_P` coordinates. Serves as
/// an exhaustive oracle for [`peterson_woodward_lift`].
pub fn brute_force_lifts(
    lambda_p: &DegreeVector,
    delta_p: &[usize],
    lo: i32,
    hi: i32,
) -> Vec<DegreeVector> {
    let free: Vec<usize> = {
        let mut d = delta_p.to_vec();
        d.sort_unstable();
        d.dedup();
        d
    };
    let mut out = Vec::new();
    let mut cur = lambda_p.clone();
    fn rec(
        k: usize,
        free: &[usize],
        lo: i32,
        hi: i32,
        cur: &mut DegreeVector,
        delta_p: &[usize],
        out: &mut Vec<DegreeVector>,
    ) {
        if k == free.len() {
            if is_valid_lift(cur, delta_p) {
                out.push(cur.clone());
            }
            return;
        }
        for x in lo..=hi {
            cur.set(free[k], x);
            rec(k + 1, free, lo, hi, cur, delta_p, out);
        }
    }
    rec(0, &free, lo, hi, &mut cur, delta_p, &mut out);
    out
}

/// `ψ_α(q_{λ_P} σ^w) = q_{λ_B} σ^{w w_P w_{P'}}` for the maximal parabolic
/// with `Δ_P = {α_i}`.
pub fn psi_alpha(
    i: usize,
    lambda_p: &DegreeVector,
    w: &Permutation,
) -> Result<(DegreeVector, Permutation)> {
    let n = w.n();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if lambda_p.n() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: lambda_p.n(),
        });
    }
    if !w.is_min_coset_representative(&[i]) {
        return Err(Error::NotMinimalRepresentative {
            perm: w.to_string(),
        });
    }
    let lift = peterson_woodward_lift(lambda_p, &[i])?;
    // w_P = s_i; w_{P'} = s_i when α_i ∈ Δ_{P'}, and the two cancel
    let image = if lift.delta_p_prime.contains(&i) {
        w.clone()
    } else {
        w.mul_simple_right(i)
    };
    Ok((lift.lambda_b, image))
}

/// Constructive lift against the brute-force box `lo..=hi`, for every
/// `Δ_P ⊆ {1,…,n−1}` and every representative with entries in `0..=max_entry`.
pub fn verify_pw(n: usize, max_entry: i32, lo: i32, hi: i32, strategy: Strategy) -> VerifyReport {
    let subsets: Vec<Vec<usize>> = (0u32..1 << (n - 1))
        .map(|m| (1..n).filter(|i| m & (1 << (i - 1)) != 0).collect())
        .collect();
    let reps: Vec<DegreeVector> = {
        let mut out = vec![Vec::new()];
        for _ in 1..n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i32>| {
                    (0..=max_entry).map(move |x| {
                        let mut v = v.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(DegreeVector::from_coeffs).collect()
    };
    let cases: Vec<(Vec<usize>, DegreeVector)> = subsets
        .iter()
        .flat_map(|d| reps.iter().map(move |l| (d.clone(), l.clone())))
        .collect();
    let outcomes = strategy.map(&cases, |(delta, lp)| {
        let all = brute_force_lifts(lp, delta, lo, hi);
        let got = peterson_woodward_lift(lp, delta);
        match got {
            Ok(l) if all == [l.lambda_b.clone()] => None,
            other => Some(Counterexample {
                case: format!("lambda_P={lp} delta_P={delta:?}"),
                expected: format!("{all:?}"),
                got: match other {
                    Ok(l) => l.lambda_b.to_string(),
                    Err(e) => e.to_string(),
                },
            }),
        }
    });
    let mut rep = VerifyReport::new("pw", n);
    outcomes.into_iter().for_each(|o| rep.record(o));
    rep
}
