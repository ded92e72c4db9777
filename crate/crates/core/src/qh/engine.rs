//! General products in `QH^*(Fl_n)` from the quantum Chevalley rule.
//!
//! The divisor classes `σ^{s_1}, …, σ^{s_{n-1}}` generate the ring. For each
//! degree `d` the engine writes every `σ^u` with `ℓ(u) = d` as a rational
//! combination of `q_μ · (σ^{s_1})^{a_1} ⋆ ⋯ ⋆ (σ^{s_{n-1}})^{a_{n-1}}` with
//! `Σa + ⟨2ρ, μ⟩ = d`. The classical part comes from an exact linear solve on
//! the monomials of degree `d`; quantum corrections are subtracted using the
//! (already known) expansions of lower degree. A product `σ^u ⋆ σ^v` is then
//! the same combination of Chevalley chains applied to `σ^v`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::class::{IntClass, QClass};
use crate::error::{Error, Result};
use crate::linalg::{invert, IndependentColumns};
use crate::qh::chevalley::chevalley_apply;
use crate::roots::DegreeVector;
use crate::weyl::{all_permutations, Permutation};

/// Exponent vector `(a_1, …, a_{n-1})` of a product of divisor classes.
pub type Monomial = Vec<u8>;

/// One summand `coeff · q_μ · σ^{s_{w_1}} ⋆ ⋯ ⋆ σ^{s_{w_k}}` of a generator
/// expansion. `word` is weakly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorTerm {
    pub mu: DegreeVector,
    pub word: Vec<usize>,
    pub coeff: BigRational,
}

impl GeneratorTerm {
    pub fn monomial(&self, n: usize) -> Monomial {
        word_to_monomial(n, &self.word)
    }
}

pub fn monomial_to_word(m: &Monomial) -> Vec<usize> {
    m.iter()
        .enumerate()
        .flat_map(|(i, &a)| std::iter::repeat_n(i + 1, a as usize))
        .collect()
}

pub fn word_to_monomial(n: usize, word: &[usize]) -> Monomial {
    let mut m = vec![0u8; n - 1];
    for &i in word {
        m[i - 1] += 1;
    }
    m
}

/// All exponent vectors of total degree `d` in `k` variables, in
/// lexicographically decreasing order.
pub fn monomials_of_degree(k: usize, d: usize) -> Vec<Monomial> {
    fn rec(k: usize, d: usize, prefix: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if k == 1 {
            prefix.push(d as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a as u8);
            rec(k - 1, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(k, d, &mut Vec::new(), &mut out);
    out
}

type ClassicalExpansions = BTreeMap<Permutation, Vec<(Monomial, BigRational)>>;
type QuantumExpansions = BTreeMap<Permutation, Vec<GeneratorTerm>>;

/// Memoizing product engine for a fixed `n`. Safe to share across threads;
/// every cache is write-once per key.
pub struct QhEngine {
    n: usize,
    by_length: Vec<Vec<Permutation>>,
    quantum_id_images: Mutex<HashMap<Monomial, Arc<IntClass>>>,
    classical_id_images: Mutex<HashMap<Monomial, Arc<IntClass>>>,
    classical: Vec<OnceLock<Arc<ClassicalExpansions>>>,
    quantum: Vec<OnceLock<Arc<QuantumExpansions>>>,
    products: RwLock<HashMap<(Permutation, Permutation), Arc<QClass>>>,
    classical_products: RwLock<HashMap<(Permutation, Permutation), Arc<QClass>>>,
}

impl std::fmt::Debug for QhEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QhEngine")
            .field("n", &self.n)
            .finish_non_exhaustive()
    }
}

impl QhEngine {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "flag varieties need n >= 2");
        let max_len = n * (n - 1) / 2;
        let mut by_length = vec![Vec::new(); max_len + 1];
        for p in all_permutations(n) {
            by_length[p.length()].push(p);
        }
        QhEngine {
            n,
            by_length,
            quantum_id_images: Mutex::new(HashMap::new()),
            classical_id_images: Mutex::new(HashMap::new()),
            classical: (0..=max_len).map(|_| OnceLock::new()).collect(),
            quantum: (0..=max_len).map(|_| OnceLock::new()).collect(),
            products: RwLock::new(HashMap::new()),
            classical_products: RwLock::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn permutations_of_length(&self, d: usize) -> &[Permutation] {
        &self.by_length[d]
    }

    fn check_rank(&self, u: &Permutation) -> Result<()> {
        if u.n() != self.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: u.n(),
            });
        }
        Ok(())
    }

    /// Image of a divisor monomial applied to `base`, memoized by prefix:
    /// the chain for `m` is the chain for `m - e_i` followed by `σ^{s_i}`,
    /// with `i` the largest index present in `m`.
    fn monomial_image(
        base: &IntClass,
        m: &Monomial,
        quantum: bool,
        memo: &mut HashMap<Monomial, Arc<IntClass>>,
    ) -> Arc<IntClass> {
        if let Some(img) = memo.get(m) {
            return img.clone();
        }
        let img = match m.iter().rposition(|&a| a > 0) {
            None => Arc::new(base.clone()),
            Some(idx) => {
                let mut prefix = m.clone();
                prefix[idx] -= 1;
                let prev = Self::monomial_image(base, &prefix, quantum, memo);
                Arc::new(chevalley_apply(idx + 1, &prev, quantum))
            }
        };
        memo.insert(m.clone(), img.clone());
        img
    }

    fn id_image(&self, m: &Monomial, quantum: bool) -> Arc<IntClass> {
        let cache = if quantum {
            &self.quantum_id_images
        } else {
            &self.classical_id_images
        };
        if let Some(img) = cache.lock().unwrap().get(m) {
            return img.clone();
        }
        // compute outside the lock against a snapshot, then merge
        let mut local = cache.lock().unwrap().clone();
        let base = IntClass::basis(Permutation::identity(self.n));
        let img = Self::monomial_image(&base, m, quantum, &mut local);
        let mut shared = cache.lock().unwrap();
        for (k, v) in local {
            shared.entry(k).or_insert(v);
        }
        img
    }

    /// Classical expansions of every `σ^u` with `ℓ(u) = d` in divisor
    /// monomials of degree `d`.
    pub fn classical_expansions(&self, d: usize) -> Result<Arc<ClassicalExpansions>> {
        if let Some(e) = self.classical[d].get() {
            return Ok(e.clone());
        }
        let computed = Arc::new(self.compute_classical_expansions(d)?);
        Ok(self.classical[d].get_or_init(|| computed).clone())
    }

    fn compute_classical_expansions(&self, d: usize) -> Result<ClassicalExpansions> {
        let perms = &self.by_length[d];
        let row_of: HashMap<&Permutation, usize> =
            perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let r = perms.len();
        let mut selector = IndependentColumns::new(r);
        let mut chosen: Vec<(Monomial, Vec<BigInt>)> = Vec::new();
        for m in monomials_of_degree(self.n - 1, d) {
            let img = self.id_image(&m, false);
            let mut col = vec![BigInt::zero(); r];
            for (_, w, c) in img.iter() {
                col[row_of[w]] = BigInt::from(*c);
            }
            if selector.offer(&col) {
                chosen.push((m, col));
                if selector.is_full() {
                    break;
                }
            }
        }
        if !selector.is_full() {
            return Err(Error::NotInSpan(format!(
                "divisor monomials of degree {d} span rank {} < {r} in H^*(Fl_{})",
                selector.rank(),
                self.n
            )));
        }
        let matrix: Vec<Vec<BigInt>> = (0..r)
            .map(|row| chosen.iter().map(|(_, col)| col[row].clone()).collect())
            .collect();
        let inv = invert(&matrix)
            .ok_or_else(|| Error::NotInSpan(format!("singular selection in degree {d}")))?;
        let mut out = BTreeMap::new();
        for (t, u) in perms.iter().enumerate() {
            let terms: Vec<(Monomial, BigRational)> = chosen
                .iter()
                .enumerate()
                .filter(|(a, _)| !inv[*a][t].is_zero())
                .map(|(a, (m, _))| (m.clone(), inv[a][t].clone()))
                .collect();
            out.insert(u.clone(), terms);
        }
        Ok(out)
    }

    /// Quantum generator expansions of every `σ^u` with `ℓ(u) = d`.
    pub fn quantum_expansions(&self, d: usize) -> Result<Arc<QuantumExpansions>> {
        if let Some(e) = self.quantum[d].get() {
            return Ok(e.clone());
        }
        let computed = Arc::new(self.compute_quantum_expansions(d)?);
        Ok(self.quantum[d].get_or_init(|| computed).clone())
    }

    fn compute_quantum_expansions(&self, d: usize) -> Result<QuantumExpansions> {
        let classical = self.classical_expansions(d)?;
        let zero = DegreeVector::zero(self.n);
        let mut out = BTreeMap::new();
        for u in &self.by_length[d] {
            let mut terms: BTreeMap<(DegreeVector, Monomial), BigRational> = BTreeMap::new();
            let mut acc = QClass::new();
            for (m, c) in &classical[u] {
                *terms
                    .entry((zero.clone(), m.clone()))
                    .or_insert_with(BigRational::zero) += c;
                acc.add_scaled(&QClass::from_int(&self.id_image(m, true)), c, None);
            }
            if acc.classical_part() != QClass::basis(u.clone()) {
                return Err(Error::NotInSpan(format!(
                    "classical solve for {u} does not reproduce the class"
                )));
            }
            for (lambda, w, r) in acc.quantum_part().iter() {
                let lower = self.quantum_expansions(w.length())?;
                for t in &lower[w] {
                    let key = (lambda + &t.mu, t.monomial(self.n));
                    *terms.entry(key).or_insert_with(BigRational::zero) -= r * &t.coeff;
                }
            }
            let list: Vec<GeneratorTerm> = terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((mu, m), coeff)| GeneratorTerm {
                    mu,
                    word: monomial_to_word(&m),
                    coeff,
                })
                .collect();
            out.insert(u.clone(), list);
        }
        Ok(out)
    }

    /// `σ^u = Σ coeff · q_μ · (Chevalley word applied to σ^{id})`.
    pub fn expand_in_generators(&self, u: &Permutation) -> Result<Vec<GeneratorTerm>> {
        self.check_rank(u)?;
        Ok(self.quantum_expansions(u.length())?[u].clone())
    }

    /// Evaluates a generator expansion on `σ^v`.
    pub fn apply_expansion(
        &self,
        terms: &[GeneratorTerm],
        v: &Permutation,
        quantum: bool,
    ) -> QClass {
        let base = IntClass::basis(v.clone());
        let mut memo = HashMap::new();
        let mut out = QClass::new();
        for t in terms {
            if !quantum && !t.mu.is_zero() {
                continue;
            }
            let img = Self::monomial_image(&base, &t.monomial(self.n), quantum, &mut memo);
            let shift = (!t.mu.is_zero()).then_some(&t.mu);
            out.add_scaled(&QClass::from_int(&img), &t.coeff, shift);
        }
        out
    }

    /// `σ^u ⋆ σ^v`, computed by expanding `u` specifically. Used to test
    /// commutativity; [`QhEngine::quantum_product`] picks the cheaper side.
    pub fn product_via(&self, expand: &Permutation, onto: &Permutation) -> Result<QClass> {
        self.check_rank(expand)?;
        self.check_rank(onto)?;
        let terms = self.expand_in_generators(expand)?;
        let out = self.apply_expansion(&terms, onto, true);
        validate_product(expand, onto, &out, true)?;
        Ok(out)
    }

    pub fn quantum_product(&self, u: &Permutation, v: &Permutation) -> Result<Arc<QClass>> {
        let key = canonical_pair(u, v);
        if let Some(p) = self.products.read().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.product_via(&key.0, &key.1)?);
        let mut w = self.products.write().unwrap();
        Ok(w.entry(key).or_insert(p).clone())
    }

    /// Cup product `σ^u ∪ σ^v`: the `q = 0` part of the quantum product.
    /// Uses the classical Monk chains only, which never produce q-terms.
    pub fn classical_product(&self, u: &Permutation, v: &Permutation) -> Result<Arc<QClass>> {
        self.check_rank(u)?;
        self.check_rank(v)?;
        let key = canonical_pair(u, v);
        if let Some(p) = self.classical_products.read().unwrap().get(&key) {
            return Ok(p.clone());
        }
        if let Some(p) = self.products.read().unwrap().get(&key) {
            return Ok(Arc::new(p.classical_part()));
        }
        let (a, b) = &key;
        let expansion = self.classical_expansions(a.length())?;
        let base = IntClass::basis(b.clone());
        let mut memo = HashMap::new();
        let mut out = QClass::new();
        for (m, c) in &expansion[a] {
            let img = Self::monomial_image(&base, m, false, &mut memo);
            out.add_scaled(&QClass::from_int(&img), c, None);
        }
        validate_product(a, b, &out, false)?;
        let p = Arc::new(out);
        let mut w = self.classical_products.write().unwrap();
        Ok(w.entry(key).or_insert(p).clone())
    }

    /// `N_{u,v}^{w,λ}`; zero unless `λ ≥ 0` and the degree axiom holds.
    pub fn structure_constant(
        &self,
        u: &Permutation,
        v: &Permutation,
        w: &Permutation,
        lambda: &DegreeVector,
    ) -> Result<u64> {
        if !lambda.is_nonnegative() {
            return Ok(0);
        }
        let lhs = (u.length() + v.length()) as i64;
        if lhs != w.length() as i64 + lambda.pair_2rho() as i64 {
            return Ok(0);
        }
        let p = if lambda.is_zero() {
            self.classical_product(u, v)?
        } else {
            self.quantum_product(u, v)?
        };
        let c = p.coefficient(lambda, w);
        Ok(c.to_integer()
            .try_into()
            .expect("validated nonnegative integer"))
    }

    /// Seeds the product cache (e.g. from a persisted table).
    pub fn seed_product(&self, u: Permutation, v: Permutation, product: QClass) {
        let key = canonical_pair(&u, &v);
        self.products
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::new(product));
    }

    /// Installs precomputed expansions for a whole degree. Ignored if the
    /// degree is already known or the map does not cover every permutation.
    pub fn seed_expansions(&self, d: usize, expansions: QuantumExpansions) -> bool {
        if expansions.len() != self.by_length[d].len()
            || self.by_length[d]
                .iter()
                .any(|u| !expansions.contains_key(u))
        {
            return false;
        }
        self.quantum[d].set(Arc::new(expansions)).is_ok()
    }

    /// Every expansion computed so far, by degree.
    pub fn known_expansions(&self) -> Vec<(usize, Arc<QuantumExpansions>)> {
        self.quantum
            .iter()
            .enumerate()
            .filter_map(|(d, cell)| cell.get().map(|e| (d, e.clone())))
            .collect()
    }

    pub fn cached_products(&self) -> Vec<((Permutation, Permutation), Arc<QClass>)> {
        let mut v: Vec<_> = self
            .products
            .read()
            .unwrap()
            .iter()
            .map(|(k, p)| (k.clone(), p.clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Orders a pair so that the factor expanded is the shorter one.
fn canonical_pair(u: &Permutation, v: &Permutation) -> (Permutation, Permutation) {
    if (u.length(), u) <= (v.length(), v) {
        (u.clone(), v.clone())
    } else {
        (v.clone(), u.clone())
    }
}

/// Degree axiom, effectivity and positivity/integrality of a product of
/// two Schubert classes.
/// Nonnegative integer coefficients, `λ ≥ 0` (zero when classical), degree axiom.
pub fn validate_product(u: &Permutation, v: &Permutation, p: &QClass, quantum: bool) -> Result<()> {
    let degree = (u.length() + v.length()) as i64;
    for (lambda, w, c) in p.iter() {
        let ok_degree = w.length() as i64 + lambda.pair_2rho() as i64 == degree;
        let ok_lambda = lambda.is_nonnegative() && (quantum || lambda.is_zero());
        let ok_coeff = c.is_integer() && c.is_positive();
        if !(ok_degree && ok_lambda && ok_coeff) {
            return Err(Error::InvariantViolation(format!(
                "term {c}*{}*{w} in σ^{u} ⋆ σ^{v}",
                lambda.q_monomial()
            )));
        }
    }
    Ok(())
}

/// Checks an expansion by re-applying it to `σ^{id}`.
pub fn expansion_reproduces(engine: &QhEngine, u: &Permutation, terms: &[GeneratorTerm]) -> bool {
    let got = engine.apply_expansion(terms, &Permutation::identity(u.n()), true);
    got == QClass::basis(u.clone())
        && terms
            .iter()
            .all(|t| (t.word.len() as i64 + t.mu.pair_2rho() as i64) == u.length() as i64)
}

/// `true` iff every coefficient is one.
pub fn is_multiplicity_free(c: &QClass) -> bool {
    c.iter().all(|(_, _, x)| x.is_one())
}
