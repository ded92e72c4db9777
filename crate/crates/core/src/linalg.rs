//! Exact linear algebra over `ℚ` for the generator-expansion solver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Greedy selection of linearly independent columns.
///
/// Columns are offered one at a time; [`IndependentColumns::offer`] keeps a
/// column iff it is independent of those already kept.
#[derive(Debug, Clone)]
pub struct IndependentColumns {
    dim: usize,
    // reduced basis vectors with their pivot coordinate; pivot entry is 1
    reduced: Vec<(usize, Vec<BigRational>)>,
}

impl IndependentColumns {
    pub fn new(dim: usize) -> Self {
        IndependentColumns {
            dim,
            reduced: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn offer(&mut self, column: &[BigInt]) -> bool {
        assert_eq!(column.len(), self.dim);
        let mut v: Vec<BigRational> = column
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for (pivot, basis) in &self.reduced {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, b) in v.iter_mut().zip(basis) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        self.reduced.push((pivot, v));
        true
    }
}

/// Inverse of a nonsingular square integer matrix, by fraction-free
/// Gauss-Jordan elimination on `[A | I]`. Pivot rows are chosen by fewest
/// nonzero entries. Returns `None` if `A` is singular.
#[allow(clippy::needless_range_loop)]
pub fn invert(a: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let width = 2 * n;
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            r
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i].iter().filter(|x| !x.is_zero()).count())?;
        m.swap(k, pivot);
        let pk = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..width {
                if j == k {
                    continue;
                }
                let num = &pk * &m[i][j] - &f * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = pk;
    }
    // every diagonal entry now equals the last pivot (± det A)
    let det = prev;
    Some(
        m.into_iter()
            .map(|row| {
                row[n..]
                    .iter()
                    .map(|x| BigRational::new(x.clone(), det.clone()))
                    .collect()
            })
            .collect(),
    )
}
