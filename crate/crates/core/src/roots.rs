//! Type A root data: positive roots as index pairs, coroots as degree vectors
//! in the coroot lattice, and the pairings used by the quantum Chevalley rule
//! and the gradings.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::Permutation;

/// A root `±(e_a - e_b)` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub a: usize,
    pub b: usize,
    pub positive: bool,
}

impl Root {
    pub fn positive(a: usize, b: usize) -> Self {
        assert!(a < b, "root indices must satisfy a < b");
        Root {
            a,
            b,
            positive: true,
        }
    }

    pub fn simple(i: usize) -> Self {
        Root::positive(i, i + 1)
    }

    pub fn negate(self) -> Self {
        Root {
            positive: !self.positive,
            ..self
        }
    }

    /// Height of the root, i.e. the number of simple roots it sums.
    pub fn height(&self) -> usize {
        self.b - self.a
    }

    /// Simple-root indices `a..b` that the root is supported on.
    pub fn support(&self) -> std::ops::Range<usize> {
        self.a..self.b
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { "" } else { "-" };
        write!(f, "{}(e{}-e{})", sign, self.a, self.b)
    }
}

/// All positive roots of `A_{n-1}` in lexicographic order of `(a, b)`.
pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 1..=n {
        for b in a + 1..=n {
            out.push(Root::positive(a, b));
        }
    }
    out
}

/// Positive roots whose support lies inside the given set of simple roots.
pub fn parabolic_positive_roots(n: usize, delta_p: &[usize]) -> Vec<Root> {
    positive_roots(n)
        .into_iter()
        .filter(|r| r.support().all(|i| delta_p.contains(&i)))
        .collect()
}

/// The reflection `s_γ` as a permutation: the transposition `(a b)`.
pub fn reflection(n: usize, root: Root) -> Permutation {
    Permutation::transposition(n, root.a, root.b)
}

/// Coroot of a positive root: the 0/1 interval vector on `[a, b-1]`.
pub fn coroot(n: usize, root: Root) -> DegreeVector {
    let v = DegreeVector::interval(n, root.a, root.b - 1);
    if root.positive {
        v
    } else {
        -v
    }
}

/// An element of the coroot lattice, written in the basis of simple coroots.
/// Doubles as a curve degree and as the exponent vector of `q_1..q_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeVector(Vec<i32>);

impl DegreeVector {
    pub fn zero(n: usize) -> Self {
        DegreeVector(vec![0; n.saturating_sub(1)])
    }

    pub fn from_coeffs(coeffs: Vec<i32>) -> Self {
        DegreeVector(coeffs)
    }

    /// `α_l^∨ + … + α_r^∨` (1-based, inclusive).
    pub fn interval(n: usize, l: usize, r: usize) -> Self {
        let mut v = vec![0; n - 1];
        for c in &mut v[l - 1..r] {
            *c = 1;
        }
        DegreeVector(v)
    }

    pub fn simple_coroot(n: usize, i: usize) -> Self {
        DegreeVector::interval(n, i, i)
    }

    /// `(1, 2, …, n-1)`, the degree of `q_1 q_2^2 ⋯ q_{n-1}^{n-1}`.
    pub fn staircase(n: usize) -> Self {
        DegreeVector((1..n as i32).collect())
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    /// Rank parameter `n` of the ambient flag variety.
    pub fn n(&self) -> usize {
        self.0.len() + 1
    }

    /// Coefficient of `α_i^∨` (1-based).
    pub fn get(&self, i: usize) -> i32 {
        self.0[i - 1]
    }

    pub fn set(&mut self, i: usize, value: i32) {
        self.0[i - 1] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Sum of the coefficients.
    pub fn total(&self) -> i32 {
        self.0.iter().sum()
    }

    /// `⟨χ_i, λ⟩`.
    pub fn pair_chi(&self, i: usize) -> i32 {
        self.get(i)
    }

    /// `⟨2ρ, λ⟩`; this is `⟨c_1(Fl_n), λ⟩`.
    pub fn pair_2rho(&self) -> i32 {
        2 * self.total()
    }

    /// `⟨α_i, λ⟩ = 2λ_i - λ_{i-1} - λ_{i+1}` (boundary terms zero).
    pub fn pair_root(&self, i: usize) -> i32 {
        let prev = if i >= 2 { self.get(i - 1) } else { 0 };
        let next = if i < self.0.len() { self.get(i + 1) } else { 0 };
        2 * self.get(i) - prev - next
    }

    /// `⟨γ, λ⟩` for an arbitrary root.
    pub fn pair_with_root(&self, root: Root) -> i32 {
        let v: i32 = root.support().map(|i| self.pair_root(i)).sum();
        if root.positive {
            v
        } else {
            -v
        }
    }

    /// If the vector is `α_l^∨ + … + α_r^∨`, returns `(l, r)`.
    pub fn as_interval(&self) -> Option<(usize, usize)> {
        let ones: Vec<usize> = (1..=self.0.len()).filter(|&i| self.get(i) != 0).collect();
        let (&l, &r) = (ones.first()?, ones.last()?);
        let contiguous = r - l + 1 == ones.len();
        if contiguous && ones.iter().all(|&i| self.get(i) == 1) {
            Some((l, r))
        } else {
            None
        }
    }

    /// Parses a comma-separated coefficient list such as `"1,1,0"`.
    pub fn parse_csv(n: usize, s: &str) -> Result<Self> {
        let coeffs = if s.trim().is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i32>()
                        .map_err(|e| Error::Parse(format!("degree entry {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        if coeffs.len() != n - 1 {
            return Err(Error::Parse(format!(
                "degree vector {s:?} has {} entries, expected {}",
                coeffs.len(),
                n - 1
            )));
        }
        Ok(DegreeVector(coeffs))
    }

    pub fn to_csv(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }

    /// q-monomial form, e.g. `q1*q2^2*q4`; the zero vector renders as `1`.
    pub fn q_monomial(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("q{}", i + 1)
                } else {
                    format!("q{}^{}", i + 1, c)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.q_monomial())
    }
}

impl Add<&DegreeVector> for &DegreeVector {
    type Output = DegreeVector;
    fn add(self, rhs: &DegreeVector) -> DegreeVector {
        assert_eq!(self.0.len(), rhs.0.len(), "degree vector rank mismatch");
        DegreeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&DegreeVector> for &DegreeVector {
    type Output = DegreeVector;
    fn sub(self, rhs: &DegreeVector) -> DegreeVector {
        assert_eq!(self.0.len(), rhs.0.len(), "degree vector rank mismatch");
        DegreeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&DegreeVector> for DegreeVector {
    fn add_assign(&mut self, rhs: &DegreeVector) {
        assert_eq!(self.0.len(), rhs.0.len(), "degree vector rank mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Neg for DegreeVector {
    type Output = DegreeVector;
    fn neg(self) -> DegreeVector {
        DegreeVector(self.0.into_iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coroot_examples() {
        assert_eq!(coroot(3, Root::simple(1)).coeffs(), &[1, 0]);
        assert_eq!(coroot(3, Root::positive(1, 3)).coeffs(), &[1, 1]);
        assert_eq!(coroot(5, Root::positive(2, 5)).coeffs(), &[0, 1, 1, 1]);
    }

    #[test]
    fn pairings() {
        for n in 2..=6 {
            for r in positive_roots(n) {
                let cv = coroot(n, r);
                assert_eq!(cv.pair_2rho(), 2 * (r.b - r.a) as i32);
                // ⟨γ, γ^∨⟩ = 2 in simply-laced type
                assert_eq!(cv.pair_with_root(r), 2);
            }
            for i in 1..n {
                assert_eq!(DegreeVector::simple_coroot(n, i).pair_root(i), 2);
            }
        }
        assert_eq!(DegreeVector::simple_coroot(3, 2).pair_chi(1), 0);
        assert_eq!(DegreeVector::simple_coroot(4, 2).pair_root(1), -1);
    }

    #[test]
    fn positive_root_count() {
        for n in 2..=7 {
            assert_eq!(positive_roots(n).len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn parabolic_roots() {
        assert_eq!(parabolic_positive_roots(3, &[1]), vec![Root::simple(1)]);
        let got = parabolic_positive_roots(4, &[1, 2]);
        assert_eq!(
            got,
            vec![
                Root::positive(1, 2),
                Root::positive(1, 3),
                Root::positive(2, 3)
            ]
        );
        assert!(parabolic_positive_roots(4, &[]).is_empty());
    }

    #[test]
    fn reflection_of_simple_root() {
        assert_eq!(
            reflection(3, Root::simple(1)),
            Permutation::simple(3, 1).unwrap()
        );
    }

    #[test]
    fn coroot_injective() {
        let n = 6;
        let mut seen = std::collections::HashSet::new();
        for r in positive_roots(n) {
            assert!(seen.insert(coroot(n, r)));
        }
    }

    #[test]
    fn q_monomial_rendering() {
        let v = DegreeVector::from_coeffs(vec![1, 2, 0, 3]);
        assert_eq!(v.q_monomial(), "q1*q2^2*q4^3");
        assert_eq!(DegreeVector::zero(4).q_monomial(), "1");
        assert_eq!(
            DegreeVector::parse_csv(4, "1,1,0").unwrap().to_csv(),
            "1,1,0"
        );
        assert!(DegreeVector::parse_csv(4, "1,1").is_err());
    }

    #[test]
    fn interval_detection() {
        assert_eq!(DegreeVector::interval(5, 2, 4).as_interval(), Some((2, 4)));
        assert_eq!(DegreeVector::from_coeffs(vec![1, 0, 1]).as_interval(), None);
        assert_eq!(DegreeVector::from_coeffs(vec![0, 2, 1]).as_interval(), None);
        assert_eq!(DegreeVector::zero(4).as_interval(), None);
    }
}
