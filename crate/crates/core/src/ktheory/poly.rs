//! Integer polynomials in `x_1, …, x_n` (n ≤ 8) with packed exponents.
//!
//! A monomial is a `u64` with the exponent of `x_j` in byte `j − 1`, so the
//! numeric order on keys is lexicographic with `x_n` most significant.

use std::collections::BTreeMap;

pub type Mono = u64;

pub const MAX_VARS: usize = 8;

pub fn exponent(m: Mono, j: usize) -> u8 {
    ((m >> (8 * (j - 1))) & 0xff) as u8
}

pub fn with_exponent(m: Mono, j: usize, e: u8) -> Mono {
    let shift = 8 * (j - 1);
    (m & !(0xffu64 << shift)) | ((e as u64) << shift)
}

pub fn mono_from(exps: &[u8]) -> Mono {
    assert!(exps.len() <= MAX_VARS);
    exps.iter()
        .enumerate()
        .fold(0, |m, (i, &e)| m | ((e as u64) << (8 * i)))
}

pub fn mono_exponents(m: Mono, n: usize) -> Vec<u8> {
    (1..=n).map(|j| exponent(m, j)).collect()
}

pub fn mono_degree(m: Mono) -> u32 {
    m.to_le_bytes().iter().map(|&b| b as u32).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: BTreeMap<Mono, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(0, 1)
    }

    pub fn monomial(m: Mono, c: i64) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Mono) -> i64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: i64) {
        for (&m, &x) in &other.terms {
            self.add_term(m, c * x);
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&a, &x) in &self.terms {
            for (&b, &y) in &other.terms {
                // exponents stay below 256 for the sizes used here
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn mul_mono(&self, m: Mono, c: i64) -> Poly {
        let mut out = Poly::zero();
        for (&a, &x) in &self.terms {
            out.add_term(a + m, x * c);
        }
        out
    }

    /// Lowest total degree present, with that homogeneous component.
    pub fn lowest_component(&self) -> Option<(u32, Poly)> {
        let d = self.terms.keys().map(|&m| mono_degree(m)).min()?;
        let mut p = Poly::zero();
        for (&m, &c) in &self.terms {
            if mono_degree(m) == d {
                p.add_term(m, c);
            }
        }
        Some((d, p))
    }

    /// Largest monomial in the packed order (`x_n` most significant).
    pub fn leading(&self) -> Option<(Mono, i64)> {
        self.terms.iter().next_back().map(|(&m, &c)| (m, c))
    }

    /// Divided difference `∂_i f = (f − s_i f) / (x_i − x_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (&m, &c) in &self.terms {
            let a = exponent(m, i);
            let b = exponent(m, i + 1);
            let rest = with_exponent(with_exponent(m, i, 0), i + 1, 0);
            let place = |p: u8, q: u8| with_exponent(with_exponent(rest, i, p), i + 1, q);
            if a > b {
                for k in 0..(a - b) {
                    out.add_term(place(a - 1 - k, b + k), c);
                }
            } else if b > a {
                for k in 0..(b - a) {
                    out.add_term(place(a + k, b - 1 - k), -c);
                }
            }
        }
        out
    }

    /// Isobaric divided difference `π_i f = ∂_i((1 − x_{i+1}) f)`.
    pub fn isobaric(&self, i: usize) -> Poly {
        let x = with_exponent(0, i + 1, 1);
        let mut g = self.clone();
        g.add_scaled(&self.mul_mono(x, 1), -1);
        g.divided_difference(i)
    }

    /// Exchanges `x_i` and `x_{i+1}`.
    pub fn swap(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (&m, &c) in &self.terms {
            let a = exponent(m, i);
            let b = exponent(m, i + 1);
            out.add_term(with_exponent(with_exponent(m, i, b), i + 1, a), c);
        }
        out
    }

    pub fn render(&self, n: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (&m, &c) in self.terms.iter().rev() {
            let vars: Vec<String> = (1..=n)
                .filter(|&j| exponent(m, j) > 0)
                .map(|j| match exponent(m, j) {
                    1 => format!("x{j}"),
                    e => format!("x{j}^{e}"),
                })
                .collect();
            let body = if vars.is_empty() {
                "1".to_string()
            } else {
                vars.join("*")
            };
            parts.push(if c == 1 {
                body
            } else if c == -1 {
                format!("-{body}")
            } else {
                format!("{c}*{body}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Normal forms modulo `(e_1, …, e_n)` in `ℤ[x_1, …, x_n]`.
///
/// The reduced Gröbner basis for the lex order with `x_n` most significant is
/// `g_j = h_{n−j+1}(x_1, …, x_j)`, leading term `x_j^{n−j+1}`. Standard
/// monomials are those with `a_j ≤ n − j`.
#[derive(Debug, Clone)]
pub struct CoinvariantReducer {
    n: usize,
    // tails[j-1] = x_j^{n-j+1} − h_{n-j+1}(x_1..x_j)
    tails: Vec<Poly>,
}

/// All monomials of degree `d` in `x_1..x_j`.
fn complete_homogeneous(j: usize, d: u8) -> Vec<Mono> {
    fn rec(var: usize, j: usize, left: u8, cur: Mono, out: &mut Vec<Mono>) {
        if var == j {
            out.push(with_exponent(cur, j, left));
            return;
        }
        for e in 0..=left {
            rec(var + 1, j, left - e, with_exponent(cur, var, e), out);
        }
    }
    let mut out = Vec::new();
    rec(1, j, d, 0, &mut out);
    out
}

impl CoinvariantReducer {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        let tails = (1..=n)
            .map(|j| {
                let d = (n - j + 1) as u8;
                let lead = with_exponent(0, j, d);
                let mut t = Poly::zero();
                for m in complete_homogeneous(j, d) {
                    if m != lead {
                        t.add_term(m, -1);
                    }
                }
                t
            })
            .collect();
        CoinvariantReducer { n, tails }
    }

    pub fn is_standard(&self, m: Mono) -> bool {
        (1..=self.n).all(|j| exponent(m, j) as usize <= self.n - j)
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut work = p.clone();
        let mut out = Poly::zero();
        // every rewrite produces strictly smaller monomials
        while let Some((m, c)) = work.terms.pop_last() {
            let bad = (1..=self.n).find(|&j| exponent(m, j) as usize > self.n - j);
            match bad {
                None => out.add_term(m, c),
                Some(j) => {
                    let d = (self.n - j + 1) as u8;
                    let rest = with_exponent(m, j, exponent(m, j) - d);
                    work.add_scaled(&self.tails[j - 1].mul_mono(rest, 1), c);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(j: usize) -> Poly {
        Poly::monomial(with_exponent(0, j, 1), 1)
    }

    #[test]
    fn packing() {
        let m = mono_from(&[2, 0, 1]);
        assert_eq!(mono_exponents(m, 3), vec![2, 0, 1]);
        assert_eq!(mono_degree(m), 3);
        // x3 outranks any power of x1
        assert!(mono_from(&[0, 0, 1]) > mono_from(&[9, 9, 0]));
    }

    #[test]
    fn divided_difference_basic() {
        // ∂_1 x1 = 1, ∂_1 x1^2 = x1 + x2, ∂_1 x2 = -1
        assert_eq!(x(1).divided_difference(1), Poly::one());
        let mut e = x(1);
        e.add_scaled(&x(2), 1);
        assert_eq!(x(1).mul(&x(1)).divided_difference(1), e);
        assert_eq!(x(2).divided_difference(1), Poly::monomial(0, -1));
    }

    #[test]
    fn divided_difference_is_exact_quotient() {
        let mut f = Poly::zero();
        f.add_term(mono_from(&[3, 1, 2]), 2);
        f.add_term(mono_from(&[0, 4, 1]), -5);
        f.add_term(mono_from(&[1, 1, 0]), 7);
        for i in 1..3 {
            let d = f.divided_difference(i);
            let mut lhs = d.mul(&x(i));
            lhs.add_scaled(&d.mul(&x(i + 1)), -1);
            let mut rhs = f.clone();
            rhs.add_scaled(&f.swap(i), -1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn elementary_symmetric_reduce_to_zero() {
        let r = CoinvariantReducer::new(3);
        let mut e1 = x(1);
        e1.add_scaled(&x(2), 1);
        e1.add_scaled(&x(3), 1);
        assert!(r.reduce(&e1).is_zero());
        let e3 = x(1).mul(&x(2)).mul(&x(3));
        assert!(r.reduce(&e3).is_zero());
        assert!(r.reduce(&e1.mul(&x(2))).is_zero());
        // x1^2 is standard for n = 3
        assert_eq!(r.reduce(&x(1).mul(&x(1))), x(1).mul(&x(1)));
        // x2^2 = -x1 x2 - x1^2 modulo the ideal
        let got = r.reduce(&x(2).mul(&x(2)));
        let mut want = x(1).mul(&x(2));
        want.add_scaled(&x(1).mul(&x(1)), 1);
        assert_eq!(got, want.mul_mono(0, -1));
    }
}
