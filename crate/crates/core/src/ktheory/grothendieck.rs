//! Grothendieck polynomials and products in `K(Fl_n) ≅ ℤ[x]/(e_1, …, e_n)`.

use std::collections::HashMap;

use crate::class::KClass;
use crate::error::{Error, Result};
use crate::ktheory::poly::{mono_from, CoinvariantReducer, Mono, Poly, MAX_VARS};
use crate::roots::DegreeVector;
use crate::weyl::{all_permutations, Permutation};

/// All Grothendieck polynomials of `S_n`, with the quotient-ring reducer.
#[derive(Debug, Clone)]
pub struct KEngine {
    n: usize,
    polys: HashMap<Permutation, Poly>,
    by_code: HashMap<Mono, Permutation>,
    reducer: CoinvariantReducer,
}

/// `x^{code(w)}`.
fn code_monomial(w: &Permutation) -> Mono {
    mono_from(&w.code())
}

impl KEngine {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_VARS).contains(&n) {
            return Err(Error::Parse(format!(
                "K-theory engine supports 2 <= n <= {MAX_VARS}, got {n}"
            )));
        }
        let mut perms = all_permutations(n);
        perms.sort_by_key(|p| std::cmp::Reverse(p.length()));
        let staircase: Vec<u8> = (1..=n).map(|i| (n - i) as u8).collect();
        let mut polys: HashMap<Permutation, Poly> = HashMap::with_capacity(perms.len());
        for w in perms {
            let p = if w == Permutation::longest(n) {
                Poly::monomial(mono_from(&staircase), 1)
            } else {
                // an ascent i gives ℓ(w s_i) = ℓ(w) + 1, already computed
                let i = (1..n)
                    .find(|&i| !w.has_descent(i))
                    .expect("w is not longest");
                polys[&w.mul_simple_right(i)].isobaric(i)
            };
            polys.insert(w, p);
        }
        let by_code = polys
            .keys()
            .map(|w| (code_monomial(w), w.clone()))
            .collect();
        let engine = KEngine {
            n,
            polys,
            by_code,
            reducer: CoinvariantReducer::new(n),
        };
        engine.check_triangularity()?;
        Ok(engine)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grothendieck(&self, w: &Permutation) -> &Poly {
        &self.polys[w]
    }

    /// The expansion relies on two facts, checked once per engine: every
    /// `𝔊_w` is already a standard polynomial, and the leading monomial of
    /// its lowest-degree part is `x^{code(w)}` with coefficient one.
    fn check_triangularity(&self) -> Result<()> {
        for (w, p) in &self.polys {
            if !p.terms.keys().all(|&m| self.reducer.is_standard(m)) {
                return Err(Error::InvariantViolation(format!("G_{w} is not standard")));
            }
            let (d, low) = p.lowest_component().expect("nonzero");
            let lead = low.leading().expect("nonzero");
            if d as usize != w.length() || lead != (code_monomial(w), 1) {
                return Err(Error::InvariantViolation(format!(
                    "lowest part of G_{w} does not lead with its code"
                )));
            }
        }
        Ok(())
    }

    /// Expands a polynomial in the Grothendieck basis of the quotient.
    pub fn expand(&self, p: &Poly) -> Result<KClass> {
        let mut rest = self.reducer.reduce(p);
        let mut out = KClass::new();
        let zero = DegreeVector::zero(self.n);
        while let Some((_, low)) = rest.lowest_component() {
            let (m, c) = low.leading().expect("nonzero");
            let w = self.by_code.get(&m).ok_or_else(|| {
                Error::InvariantViolation(format!("no permutation with code monomial {m:#x}"))
            })?;
            rest.add_scaled(&self.polys[w], -c);
            out.add_term(zero.clone(), w.clone(), c);
        }
        Ok(out)
    }

    /// `𝒪^u · 𝒪^v` in `K(Fl_n)`.
    pub fn product(&self, u: &Permutation, v: &Permutation) -> Result<KClass> {
        for p in [u, v] {
            if p.n() != self.n {
                return Err(Error::RankMismatch {
                    expected: self.n,
                    found: p.n(),
                });
            }
        }
        self.expand(&self.polys[u].mul(&self.polys[v]))
    }
}
