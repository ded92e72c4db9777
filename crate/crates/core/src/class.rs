//! Finite formal sums of basis elements `q_λ · σ^w` (or `q_λ · 𝒪^w`).

use std::collections::BTreeMap;
use std::fmt::Display;
use std::ops::{AddAssign, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::roots::DegreeVector;
use crate::weyl::Permutation;

pub trait Coefficient:
    Clone
    + PartialEq
    + Zero
    + One
    + Signed
    + Display
    + for<'a> AddAssign<&'a Self>
    + Neg<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Signed
        + Display
        + for<'a> AddAssign<&'a T>
        + Neg<Output = T>
        + Mul<Output = T>
        + Send
        + Sync
{
}

pub type Key = (DegreeVector, Permutation);

/// Sparse linear combination keyed by `(λ, w)`. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class<C> {
    terms: BTreeMap<Key, C>,
}

/// Rational coefficients; an element of `QH^*(Fl_n)` or its localization.
pub type QClass = Class<BigRational>;
/// Integer coefficients; an element of `QK(Fl_n)` or `K(Fl_n)`.
pub type KClass = Class<i64>;
/// Integer-coefficient cohomology class used inside the product engine.
pub type IntClass = Class<i64>;

impl<C> Default for Class<C> {
    fn default() -> Self {
        Class {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient> Class<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(lambda: DegreeVector, w: Permutation, c: C) -> Self {
        let mut out = Self::new();
        out.add_term(lambda, w, c);
        out
    }

    /// `σ^w` (or `𝒪^w`) with unit coefficient and zero degree.
    pub fn basis(w: Permutation) -> Self {
        let lambda = DegreeVector::zero(w.n());
        Self::term(lambda, w, C::one())
    }

    pub fn add_term(&mut self, lambda: DegreeVector, w: Permutation, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((lambda, w)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += scale · q_shift · other`.
    pub fn add_scaled(&mut self, other: &Class<C>, scale: &C, shift: Option<&DegreeVector>) {
        for ((lambda, w), c) in &other.terms {
            let lam = match shift {
                Some(s) => lambda + s,
                None => lambda.clone(),
            };
            self.add_term(lam, w.clone(), scale.clone() * c.clone());
        }
    }

    pub fn add_class(&mut self, other: &Class<C>) {
        self.add_scaled(other, &C::one(), None);
    }

    pub fn sub_class(&mut self, other: &Class<C>) {
        self.add_scaled(other, &-C::one(), None);
    }

    pub fn scaled(&self, scale: &C) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, scale, None);
        out
    }

    /// Multiplication by the monomial `q_shift`.
    pub fn shifted(&self, shift: &DegreeVector) -> Self {
        Class {
            terms: self
                .terms
                .iter()
                .map(|((l, w), c)| ((l + shift, w.clone()), c.clone()))
                .collect(),
        }
    }

    pub fn coefficient(&self, lambda: &DegreeVector, w: &Permutation) -> C {
        self.terms
            .get(&(lambda.clone(), w.clone()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DegreeVector, &Permutation, &C)> {
        self.terms.iter().map(|((l, w), c)| (l, w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms with `λ = 0`.
    pub fn classical_part(&self) -> Self {
        Class {
            terms: self
                .terms
                .iter()
                .filter(|((l, _), _)| l.is_zero())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms with `λ ≠ 0`.
    pub fn quantum_part(&self) -> Self {
        Class {
            terms: self
                .terms
                .iter()
                .filter(|((l, _), _)| !l.is_zero())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// `ℓ(w) + ⟨2ρ, λ⟩` of every term, deduplicated.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self
            .terms
            .keys()
            .map(|(l, w)| w.length() as i64 + l.pair_2rho() as i64)
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.degrees().iter().all(|&d| d == degree)
    }

    pub fn all_degrees_nonnegative(&self) -> bool {
        self.terms.keys().all(|(l, _)| l.is_nonnegative())
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Class<D> {
        let mut out = Class::new();
        for ((l, w), c) in &self.terms {
            out.add_term(l.clone(), w.clone(), f(c));
        }
        out
    }

    /// Terms in canonical output order: `λ` ascending lexicographically, then
    /// `w` by one-line form, descending.
    pub fn ordered_terms(&self) -> Vec<(&DegreeVector, &Permutation, &C)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0).then_with(|| b.1.cmp(a.1)));
        v
    }

    /// Text rendering, e.g. `q3*q4*s[4,2,3,1,2,1] + q3*q4*s[3,4,2,3,1,2]`.
    /// `symbol` is `"s"` for cohomology and `"O"` for K-theory.
    pub fn render(&self, symbol: &str) -> String {
        self.render_with(|w| format!("{symbol}{}", &w.word_string()[1..]))
    }

    pub fn render_with(&self, label: impl Fn(&Permutation) -> String) -> String {
        let terms = self.ordered_terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (lambda, w, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() {
                factors.push(mag.to_string());
            }
            if !lambda.is_zero() {
                factors.push(lambda.q_monomial());
            }
            factors.push(label(w));
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl QClass {
    pub fn from_int(c: &IntClass) -> QClass {
        c.map_coefficients(|&x| BigRational::from_integer(BigInt::from(x)))
    }

    /// Converts to integer coefficients if every coefficient is integral.
    pub fn to_int(&self) -> Option<IntClass> {
        let mut out = IntClass::new();
        for (l, w, c) in self.iter() {
            if !c.is_integer() {
                return None;
            }
            out.add_term(l.clone(), w.clone(), c.to_integer().to_i64()?);
        }
        Some(out)
    }
}

/// `N` as a rational number.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut c = IntClass::basis(perm("213"));
        c.add_term(DegreeVector::zero(3), perm("213"), -1);
        assert!(c.is_empty());
        assert_eq!(c.render("s"), "0");
    }

    #[test]
    fn rendering_order_and_signs() {
        let l = DegreeVector::from_coeffs(vec![0, 0, 1, 1]);
        let mut c = IntClass::new();
        c.add_term(l.clone(), perm("45123"), 1);
        c.add_term(l, perm("53124"), 1);
        assert_eq!(c.render("s"), "q3*q4*s[4,2,3,1,2,1] + q3*q4*s[3,4,2,3,1,2]");

        let mut k = KClass::basis(perm("1234"));
        k.add_term(DegreeVector::from_coeffs(vec![1, 1, 1]), perm("1243"), -2);
        assert_eq!(k.render("O"), "O[] - 2*q1*q2*q3*O[3]");
    }

    #[test]
    fn shifts_and_parts() {
        let c = IntClass::basis(perm("132")).shifted(&DegreeVector::from_coeffs(vec![1, 0]));
        assert!(c.classical_part().is_empty());
        assert_eq!(c.quantum_part(), c);
        assert_eq!(c.degrees(), vec![3]);
        assert!(QClass::from_int(&c).to_int().unwrap() == c);
    }
}
