//! Symmetric-group combinatorics for type `A_{n-1}`.
//!
//! Products compose as functions: `(uv)(x) = u(v(x))`. Right multiplication
//! by `s_i` swaps the entries in positions `i, i+1` of the one-line form,
//! left multiplication swaps the values `i, i+1`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::roots::DegreeVector;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// Builds a permutation from its one-line form `u(1), …, u(n)`.
    pub fn from_one_line(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty one-line form".into()));
        }
        let mut seen = vec![false; n + 1];
        for &x in &images {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses `"43512"`, `"4 3 5 1 2"` or `"4,3,5,1,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<&str> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .collect()
        } else {
            s.split("").filter(|t| !t.is_empty()).collect()
        };
        let images = parts
            .iter()
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_one_line(images)
    }

    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// Product `s_{w_1} s_{w_2} ⋯ s_{w_k}` of simple reflections.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut p = Permutation::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            p.images.swap(i - 1, i);
        }
        Ok(p)
    }

    /// Parses a comma-separated reduced word such as `"2,3,4,1,2,3,1"`.
    pub fn parse_word(n: usize, s: &str) -> Result<Self> {
        Permutation::from_word(n, &parse_word_letters(s)?)
    }

    /// The longest element `w_0`, with `w_0(j) = n + 1 - j`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).rev().collect(),
        }
    }

    /// The `n`-cycle `s_1 s_2 ⋯ s_{n-1}`, one-line `2 3 … n 1`.
    pub fn cycle(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).map(|x| x % n as u8 + 1).collect(),
        }
    }

    /// The hook element `s_{n-m} ⋯ s_{n-1}`.
    pub fn hook(n: usize, m: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::IndexOutOfRange { index: m, n });
        }
        let word: Vec<usize> = (n - m..n).collect();
        Permutation::from_word(n, &word)
    }

    /// `s_i s_{i+1} ⋯ s_j`.
    pub fn segment(n: usize, i: usize, j: usize) -> Result<Self> {
        let word: Vec<usize> = (i..=j).collect();
        Permutation::from_word(n, &word)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `u(x)` for `1 ≤ x ≤ n`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize
    }

    pub fn one_line(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize == i + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.images;
        let mut count = 0;
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                if v[a] > v[b] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn try_mul(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize - 1])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Permutation { images: inv }
    }

    /// `u s_i`.
    pub fn mul_simple_right(&self, i: usize) -> Permutation {
        let mut p = self.clone();
        p.images.swap(i - 1, i);
        p
    }

    /// `s_i u`.
    pub fn mul_simple_left(&self, i: usize) -> Permutation {
        let mut p = self.clone();
        for x in &mut p.images {
            if *x as usize == i {
                *x += 1;
            } else if *x as usize == i + 1 {
                *x -= 1;
            }
        }
        p
    }

    /// `u · (a b)`: swaps positions `a` and `b`.
    pub fn mul_transposition_right(&self, a: usize, b: usize) -> Permutation {
        let mut p = self.clone();
        p.images.swap(a - 1, b - 1);
        p
    }

    /// Right descent indicator: 1 iff `ℓ(u s_i) < ℓ(u)`, i.e. `u(i) > u(i+1)`.
    pub fn sgn_alpha(&self, i: usize) -> u8 {
        u8::from(self.images[i - 1] > self.images[i])
    }

    pub fn has_descent(&self, i: usize) -> bool {
        self.sgn_alpha(i) == 1
    }

    /// Right descent set.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.has_descent(i)).collect()
    }

    /// Lehmer code `c_i = #{j > i : u(j) < u(i)}`.
    pub fn code(&self) -> Vec<u8> {
        let v = &self.images;
        (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&y| y < v[i]).count() as u8)
            .collect()
    }

    /// Inverse of [`Permutation::code`]; `None` unless `c_i ≤ n - i` for all `i`.
    pub fn from_code(code: &[u8]) -> Option<Permutation> {
        let n = code.len();
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        let mut images = Vec::with_capacity(n);
        for &c in code {
            if c as usize >= avail.len() {
                return None;
            }
            images.push(avail.remove(c as usize));
        }
        Some(Permutation { images })
    }

    /// Unique factorization `u = u^{(n-1)}_{j_{n-1}} ⋯ u^{(1)}_{j_1}` with
    /// `u^{(m)}_j = s_{m-j+1} ⋯ s_m`. Peels the top block by locating where
    /// the largest remaining value sits.
    pub fn canonical_factorization(&self) -> CanonicalFactorization {
        let n = self.n();
        let mut p: Vec<usize> = self.images.iter().map(|&x| x as usize).collect();
        let mut j = vec![0usize; n.saturating_sub(1)];
        for m in (1..n).rev() {
            let top = m + 1;
            let jm = top - p[top - 1];
            j[m - 1] = jm;
            // p <- (u^{(m)}_{jm})^{-1} p
            let lo = top - jm;
            for x in p.iter_mut() {
                if *x == lo {
                    *x = top;
                } else if *x > lo && *x <= top {
                    *x -= 1;
                }
            }
        }
        CanonicalFactorization { j }
    }

    /// The reduced word read off the canonical factorization.
    pub fn reduced_word(&self) -> Vec<usize> {
        self.canonical_factorization().word()
    }

    /// Bruhat order via the tableau criterion: sorted prefixes compare
    /// entrywise.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let n = self.n();
        let mut a: Vec<u8> = Vec::with_capacity(n);
        let mut b: Vec<u8> = Vec::with_capacity(n);
        for k in 0..n {
            let pos_a = a.partition_point(|&x| x < self.images[k]);
            a.insert(pos_a, self.images[k]);
            let pos_b = b.partition_point(|&x| x < other.images[k]);
            b.insert(pos_b, other.images[k]);
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// `Some(k)` if `u` has at most one descent (`k` the descent, or 0 for
    /// the identity).
    pub fn grassmannian_descent(&self) -> Option<usize> {
        match self.descents().as_slice() {
            [] => Some(0),
            [k] => Some(*k),
            _ => None,
        }
    }

    /// Partition `(u(k)-k, …, u(2)-2, u(1)-1)` of a permutation with at most
    /// one descent, at `k`.
    pub fn to_partition(&self, k: usize) -> Result<Vec<usize>> {
        let n = self.n();
        if k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let v = &self.images;
        let increasing = |s: &[u8]| s.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&v[..k]) || !increasing(&v[k..]) {
            return Err(Error::NotGrassmannian(self.to_string()));
        }
        Ok((1..=k).rev().map(|i| v[i - 1] as usize - i).collect())
    }

    /// Inverse of [`Permutation::to_partition`].
    pub fn from_partition(mu: &[usize], k: usize, n: usize) -> Result<Self> {
        if mu.len() > k || k > n {
            return Err(Error::Parse(format!(
                "partition {mu:?} does not fit Gr({k},{n})"
            )));
        }
        let mut parts = mu.to_vec();
        parts.resize(k, 0);
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.first().is_some_and(|&p| p > n - k) {
            return Err(Error::Parse(format!(
                "partition {mu:?} does not fit Gr({k},{n})"
            )));
        }
        let mut images: Vec<u8> = (1..=k).map(|i| (parts[k - i] + i) as u8).collect();
        let rest: Vec<u8> = (1..=n as u8).filter(|x| !images.contains(x)).collect();
        images.extend(rest);
        Permutation::from_one_line(images)
    }

    /// Minimal-length representative of `u W_P`: sorts the entries inside
    /// each block of positions cut out by the simple roots outside `Δ_P`.
    pub fn min_coset_representative(&self, delta_p: &[usize]) -> Permutation {
        let mut p = self.clone();
        for (lo, hi) in parabolic_blocks(self.n(), delta_p) {
            p.images[lo - 1..hi].sort_unstable();
        }
        p
    }

    /// Factorization `u = u' u''` with `u' ∈ W^P`, `u'' ∈ W_P`.
    pub fn parabolic_factorization(&self, delta_p: &[usize]) -> (Permutation, Permutation) {
        let head = self.min_coset_representative(delta_p);
        let tail = head.inverse() * self;
        (head, tail)
    }

    pub fn is_min_coset_representative(&self, delta_p: &[usize]) -> bool {
        delta_p.iter().all(|&i| !self.has_descent(i))
    }

    /// `λ(u)`: zero when `u(n) = n`, otherwise `α_l^∨ + … + α_{n-1}^∨` where
    /// `l` is the largest `i` with `j_i > 0` and `j_{i-1} = 0`.
    pub fn lambda(&self) -> DegreeVector {
        let n = self.n();
        let j = self.canonical_factorization().j;
        if j[n - 2] == 0 {
            return DegreeVector::zero(n);
        }
        let l = (1..n)
            .filter(|&i| j[i - 1] > 0 && (i == 1 || j[i - 2] == 0))
            .max()
            .expect("top block is nonzero so the set is nonempty");
        DegreeVector::interval(n, l, n - 1)
    }

    /// `u↑k = (s_1 ⋯ s_{n-1})^k u`: every value shifts up by `k` cyclically.
    pub fn up(&self, k: usize) -> Permutation {
        let n = self.n();
        let k = k % n;
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| ((x as usize - 1 + k) % n + 1) as u8)
                .collect(),
        }
    }

    /// `λ(u, k) = Σ_{j<k} λ(u↑j)`.
    pub fn lambda_cumulative(&self, k: usize) -> DegreeVector {
        let mut acc = DegreeVector::zero(self.n());
        let mut cur = self.clone();
        for _ in 0..k {
            acc += &cur.lambda();
            cur = cur.up(1);
        }
        acc
    }

    /// Word rendering `s[2,3,4]`; the identity is `s[]`.
    pub fn word_string(&self) -> String {
        word_to_string(&self.reduced_word())
    }
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;

    /// Panics on rank mismatch; use [`Permutation::try_mul`] to handle it.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.try_mul(rhs)
            .expect("rank mismatch in permutation product")
    }
}

impl Mul<&Permutation> for Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        &self * rhs
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for x in &self.images {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// The exponents `(j_1, …, j_{n-1})`, `0 ≤ j_m ≤ m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalFactorization {
    pub j: Vec<usize>,
}

impl CanonicalFactorization {
    pub fn n(&self) -> usize {
        self.j.len() + 1
    }

    /// Concatenated word `u^{(n-1)}_{j_{n-1}} ⋯ u^{(1)}_{j_1}`.
    pub fn word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.j.iter().sum());
        for m in (1..=self.j.len()).rev() {
            let jm = self.j[m - 1];
            word.extend(m + 1 - jm..=m);
        }
        word
    }

    pub fn reconstruct(&self) -> Permutation {
        Permutation::from_word(self.n(), &self.word()).expect("letters are in range")
    }
}

/// All of `S_n` in lexicographic order of one-line forms.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation {
            images: cur.clone(),
        });
        // next permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Maximal runs of consecutive positions joined by simple roots in `Δ_P`,
/// as inclusive 1-based `(lo, hi)` pairs.
pub fn parabolic_blocks(n: usize, delta_p: &[usize]) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut lo = 1;
    for i in 1..n {
        if !delta_p.contains(&i) {
            blocks.push((lo, i));
            lo = i + 1;
        }
    }
    blocks.push((lo, n));
    blocks
}

/// Longest element `w_P` of the parabolic subgroup `W_P`.
pub fn parabolic_longest(n: usize, delta_p: &[usize]) -> Permutation {
    let mut p = Permutation::identity(n);
    for (lo, hi) in parabolic_blocks(n, delta_p) {
        p.images[lo - 1..hi].reverse();
    }
    p
}

pub fn parse_word_letters(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad word letter {t:?}")))
        })
        .collect()
}

pub fn word_to_string(word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(|i| i.to_string()).collect();
    format!("s[{}]", parts.join(","))
}
