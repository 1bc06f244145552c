//! Smith normal form over ℤ with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `U · A · V = S` with `S` diagonal, `d₁ | d₂ | … | d_rank`, all positive.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// The nonzero diagonal entries `d₁ | … | d_rank`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith normal form of `a`, tracking both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut w = Work {
        a: a.clone(),
        u: Some(IntMatrix::identity(a.rows())),
        v: Some(IntMatrix::identity(a.cols())),
    };
    let rank = w.run();
    SnfResult {
        s: w.a,
        u: w.u.unwrap(),
        v: w.v.unwrap(),
        rank,
    }
}

/// Only the nonzero diagonal of the Smith normal form.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let mut w = Work {
        a: a.clone(),
        u: None,
        v: None,
    };
    let rank = w.run();
    (0..rank).map(|i| w.a[(i, i)].clone()).collect()
}

struct Work {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.sub_row(dst, src, q);
        if let Some(u) = &mut self.u {
            u.sub_row(dst, src, q);
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.sub_col(dst, src, q);
        if let Some(v) = &mut self.v {
            v.sub_col(dst, src, q);
        }
    }

    /// Nonzero entry of least absolute value in the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => x.abs() < self.a[b].abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs() == BigInt::from(1) {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // Clear column t and row t by division with remainder; any
                // nonzero remainder smaller than the pivot becomes the new pivot.
                let mut smaller: Option<(usize, usize)> = None;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.sub_row(i, t, &q);
                    if !self.a[(i, t)].is_zero() {
                        smaller = Some((i, t));
                    }
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.sub_col(j, t, &q);
                    if !self.a[(t, j)].is_zero() {
                        smaller = Some((t, j));
                    }
                }
                if let Some((i, j)) = smaller {
                    // Pull the smallest remainder in row/column t to the pivot.
                    let mut best = (i, j);
                    for k in t + 1..rows {
                        if !self.a[(k, t)].is_zero() && self.a[(k, t)].abs() < self.a[best].abs() {
                            best = (k, t);
                        }
                    }
                    for k in t + 1..cols {
                        if !self.a[(t, k)].is_zero() && self.a[(t, k)].abs() < self.a[best].abs() {
                            best = (t, k);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Row and column t are clear; enforce divisibility on the rest.
                let p = self.a[(t, t)].clone();
                let bad = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&p))
                });
                match bad {
                    Some(i) => {
                        // row t += row i brings a non-multiple into row t.
                        self.sub_row(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.a.negate_row(t);
                if let Some(u) = &mut self.u {
                    u.negate_row(t);
                }
            }
            t += 1;
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(r.u.mul(a).mul(&r.v), r.s);
        assert!(r.u.determinant().abs().is_one());
        assert!(r.v.determinant().abs().is_one());
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j || i >= r.rank {
                    assert!(r.s[(i, j)].is_zero());
                }
            }
        }
        let d = r.diagonal();
        assert!(d.iter().all(|x| x.is_positive()));
        assert!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        r
    }

    #[test]
    fn zero_matrix() {
        let r = check(&IntMatrix::zeros(3, 4));
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn identity_matrix() {
        let r = check(&IntMatrix::identity(4));
        assert_eq!(r.rank, 4);
        assert!(r.diagonal().iter().all(One::is_one));
    }

    #[test]
    fn two_by_two() {
        // d₁ = gcd of entries = 2 and d₁·d₂ = |det| = 8.
        let a = IntMatrix::from_rows(2, [[2i64, 4], [6, 8]]);
        let r = check(&a);
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(elementary_divisors(&a), r.diagonal());
    }

    #[test]
    fn non_square_and_divisibility_fixup() {
        let a = IntMatrix::from_rows(3, [[2i64, 0, 0], [0, 3, 0]]);
        let r = check(&a);
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let b = IntMatrix::from_rows(2, [[0i64, 0], [0, 0], [5, 0], [0, 10]]);
        assert_eq!(check(&b).diagonal(), vec![BigInt::from(5), BigInt::from(10)]);
    }

    #[test]
    fn empty_dimensions() {
        assert_eq!(check(&IntMatrix::zeros(0, 3)).rank, 0);
        assert_eq!(check(&IntMatrix::zeros(2, 0)).rank, 0);
    }
}
