//! Cup products against Schubert polynomials in ℤ[x]/(e_1, …, e_n).
//!
//! Normal forms use the Gröbner basis `h_{n−k+1}(x_1, …, x_k)` (lex, `x_n`
//! largest) and the Schubert expansion is a dense linear solve; nothing
//! here shares code with the engines.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use flagq_core::qh::QhEngine;
use flagq_core::weyl::all_permutations;
use flagq_core::{DegreeVector, Permutation, QClass};

type Poly = BTreeMap<Vec<u32>, i64>;

/// Basis permutations, standard monomials, inverse coordinate matrix.
type Solve = (Vec<Permutation>, Vec<Vec<u32>>, Vec<Vec<BigRational>>);

fn add(p: &mut Poly, m: Vec<u32>, c: i64) {
    let e = p.entry(m.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        p.remove(&m);
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            add(&mut out, m, ca * cb);
        }
    }
    out
}

/// `∂_i` on monomials: `(f − s_i f) / (x_i − x_{i+1})`, `i` zero-based.
fn divided_difference(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (m, &c) in p {
        let (a, b) = (m[i], m[i + 1]);
        let (lo, hi, sign) = if a > b { (b, a, 1) } else { (a, b, -1) };
        for k in 0..hi - lo {
            let mut t = m.clone();
            // x_i^{hi−1−k} x_{i+1}^{lo+k}, roles swapped when a < b
            if sign == 1 {
                t[i] = hi - 1 - k;
                t[i + 1] = lo + k;
            } else {
                t[i] = lo + k;
                t[i + 1] = hi - 1 - k;
            }
            add(&mut out, t, sign * c);
        }
    }
    out
}

fn schubert_polynomials(n: usize) -> HashMap<Permutation, Poly> {
    let w0 = Permutation::longest(n);
    let top: Vec<u32> = (0..n).map(|i| (n - 1 - i) as u32).collect();
    let mut out = HashMap::new();
    out.insert(w0.clone(), Poly::from([(top, 1)]));
    let mut frontier = vec![w0];
    while let Some(w) = frontier.pop() {
        for i in 1..n {
            let (a, b) = (w.apply(i), w.apply(i + 1));
            if a > b {
                let v = w.mul_simple_right(i);
                if !out.contains_key(&v) {
                    let p = divided_difference(&out[&w], i - 1);
                    out.insert(v.clone(), p);
                    frontier.push(v);
                }
            }
        }
    }
    out
}

/// Complete homogeneous `h_d` in the variables `0..=k` (zero-based), as
/// monomials of the full ring.
fn complete_homogeneous(n: usize, k: usize, d: u32) -> Poly {
    let mut out = Poly::new();
    fn rec(last: usize, j: usize, left: u32, cur: &mut Vec<u32>, out: &mut Poly) {
        if j == last {
            cur[j] = left;
            add(out, cur.clone(), 1);
            cur[j] = 0;
            return;
        }
        for e in 0..=left {
            cur[j] = e;
            rec(last, j + 1, left - e, cur, out);
        }
        cur[j] = 0;
    }
    let mut cur = vec![0; n];
    rec(k, 0, d, &mut cur, &mut out);
    out
}

fn normal_form(n: usize, p: &Poly, relations: &[Poly]) -> Poly {
    let mut p = p.clone();
    loop {
        // any nonstandard monomial; each step only adds smaller ones
        let hit = p.iter().find_map(|(m, &c)| {
            (0..n)
                .find(|&k| m[k] as usize > n - 1 - k)
                .map(|k| (m.clone(), c, k))
        });
        let Some((m, c, k)) = hit else {
            return p;
        };
        let mut rest = m.clone();
        rest[k] -= (n - k) as u32;
        let shift = Poly::from([(rest, 1)]);
        for (t, x) in mul(&shift, &relations[k]) {
            add(&mut p, t, -c * x);
        }
    }
}

struct Oracle {
    n: usize,
    polys: HashMap<Permutation, Poly>,
    relations: Vec<Poly>,
    solve: HashMap<usize, Solve>,
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let k = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero()).expect("singular");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..k {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..k {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] = &a[r][j] - x;
                    inv[r][j] = &inv[r][j] - y;
                }
            }
        }
    }
    inv
}

impl Oracle {
    fn new(n: usize) -> Self {
        let polys = schubert_polynomials(n);
        let relations = (0..n)
            .map(|k| complete_homogeneous(n, k, (n - k) as u32))
            .collect();
        let mut by_degree: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
        for w in polys.keys() {
            by_degree.entry(w.length()).or_default().push(w.clone());
        }
        let mut solve = HashMap::new();
        for (d, mut perms) in by_degree {
            perms.sort();
            let mut monos: Vec<Vec<u32>> = perms
                .iter()
                .flat_map(|w| polys[w].keys().cloned())
                .collect();
            monos.sort();
            monos.dedup();
            assert_eq!(monos.len(), perms.len(), "degree {d} is not square");
            // column j = coordinates of the j-th Schubert polynomial
            let a: Vec<Vec<BigRational>> = monos
                .iter()
                .map(|m| {
                    perms
                        .iter()
                        .map(|w| {
                            BigRational::from_integer(polys[w].get(m).copied().unwrap_or(0).into())
                        })
                        .collect()
                })
                .collect();
            solve.insert(d, (perms, monos, invert(a)));
        }
        Oracle {
            n,
            polys,
            relations,
            solve,
        }
    }

    fn product(&self, u: &Permutation, v: &Permutation) -> QClass {
        let f = normal_form(
            self.n,
            &mul(&self.polys[u], &self.polys[v]),
            &self.relations,
        );
        let mut out = QClass::new();
        let d = u.length() + v.length();
        let Some((perms, monos, inv)) = self.solve.get(&d) else {
            assert!(f.is_empty());
            return out;
        };
        let rhs: Vec<BigRational> = monos
            .iter()
            .map(|m| BigRational::from_integer(f.get(m).copied().unwrap_or(0).into()))
            .collect();
        for (j, w) in perms.iter().enumerate() {
            let c: BigRational = inv[j].iter().zip(&rhs).map(|(a, b)| a * b).sum();
            if !c.is_zero() {
                out.add_term(DegreeVector::zero(self.n), w.clone(), c);
            }
        }
        out
    }
}

fn check_pair(o: &Oracle, e: &QhEngine, u: &Permutation, v: &Permutation) {
    let want = o.product(u, v);
    let cup = e.classical_product(u, v).unwrap();
    assert_eq!(*cup, want, "cup {u} * {v}");
    let q = e.quantum_product(u, v).unwrap();
    assert_eq!(q.classical_part(), want, "q = 0 part of {u} * {v}");
}

#[test]
fn oracle_knows_fl3() {
    let o = Oracle::new(3);
    let s1 = Permutation::simple(3, 1).unwrap();
    let s2 = Permutation::simple(3, 2).unwrap();
    let mut want = QClass::basis(&s1 * &s2);
    want.add_class(&QClass::basis(&s2 * &s1));
    assert_eq!(o.product(&s1, &s2), want);
    assert!(o.product(&Permutation::longest(3), &s1).is_empty());
}

#[test]
fn exhaustive_up_to_4() {
    for n in 2..=4 {
        let o = Oracle::new(n);
        let e = QhEngine::new(n);
        let perms = all_permutations(n);
        for u in &perms {
            for v in &perms {
                check_pair(&o, &e, u, v);
            }
        }
    }
}

#[test]
fn exhaustive_n5() {
    let o = Oracle::new(5);
    let e = QhEngine::new(5);
    let perms = all_permutations(5);
    for u in &perms {
        for v in &perms {
            if u <= v {
                check_pair(&o, &e, u, v);
            }
        }
    }
}
