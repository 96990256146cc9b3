//! Smith normal form over ℤ (and row-reduced diagonal form over ℤ/p).
//!
//! Pivoting is deterministic: at every stage the nonzero entry of minimal
//! absolute value in the remaining submatrix is chosen, ties broken in
//! row-major order. Reports built from these decompositions are therefore
//! byte-for-byte reproducible.

use super::matrix::IntMatrix;
use crate::Int;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A Smith decomposition `left · m · right = diag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Unimodular row transform.
    pub left: IntMatrix,
    /// Diagonal matrix `d₁ | d₂ | …`, nonnegative, zero off the diagonal.
    pub diag: IntMatrix,
    /// Unimodular column transform.
    pub right: IntMatrix,
    /// Inverse of `left`.
    pub left_inv: IntMatrix,
    /// Inverse of `right`.
    pub right_inv: IntMatrix,
}

impl Snf {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.diag.rows().min(self.diag.cols());
        (0..n)
            .map(|i| self.diag.get(i, i).clone())
            .take_while(|v| !v.is_zero())
            .collect()
    }

    /// Rank of the decomposed matrix.
    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Position of the nonzero entry of minimal absolute value in the submatrix
/// `[t.., t..]`, ties broken row-major.
fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms: `left · m · right = diag`.
///
/// Total on every integer matrix, including empty and zero matrices.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut left = Transform::new(rows);
    let mut right = Transform::new(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_pivot(&d, t) else {
                return finish(left, d, right);
            };
            d.swap_rows(t, pi);
            left.swap(t, pi);
            d.swap_cols(t, pj);
            right.swap(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t) / &pivot;
                if !q.is_zero() {
                    let f = -q;
                    d.add_row_multiple(i, t, &f);
                    left.add(i, t, &f);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j) / &pivot;
                if !q.is_zero() {
                    let f = -q;
                    d.add_col_multiple(j, t, &f);
                    right.add(j, t, &f);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: pull an offending row into the pivot row.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = Int::one();
                    d.add_row_multiple(t, i, &one);
                    left.add(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            left.negate(t);
        }
    }
    finish(left, d, right)
}

/// An elementary-operation accumulator keeping a matrix and its inverse.
///
/// Operations are phrased for the row transform `L` (acting on rows); the
/// column transform `R` is stored transposed so the same code applies, and
/// transposed back in [`finish`].
struct Transform {
    m: IntMatrix,
    inv: IntMatrix,
}

impl Transform {
    fn new(n: usize) -> Self {
        Transform {
            m: IntMatrix::identity(n),
            inv: IntMatrix::identity(n),
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.inv.swap_cols(a, b);
    }

    /// `row[target] += f · row[src]`.
    fn add(&mut self, target: usize, src: usize, f: &Int) {
        self.m.add_row_multiple(target, src, f);
        self.inv.add_col_multiple(src, target, &-f);
    }

    fn negate(&mut self, i: usize) {
        self.m.negate_row(i);
        self.inv.negate_col(i);
    }

    /// `row[i] *= f`, where `f·g ≡ 1`.
    fn scale(&mut self, i: usize, f: &Int, g: &Int) {
        for j in 0..self.m.cols() {
            let v = self.m.get(i, j) * f;
            self.m.set(i, j, v);
        }
        for r in 0..self.inv.rows() {
            let v = self.inv.get(r, i) * g;
            self.inv.set(r, i, v);
        }
    }

    fn reduce(&mut self, p: &Int) {
        for x in [&mut self.m, &mut self.inv] {
            for i in 0..x.rows() {
                for j in 0..x.cols() {
                    let v = x.get(i, j).mod_floor(p);
                    x.set(i, j, v);
                }
            }
        }
    }
}

fn finish(left: Transform, diag: IntMatrix, right: Transform) -> Snf {
    Snf {
        left: left.m,
        diag,
        right: right.m.transpose(),
        left_inv: left.inv,
        right_inv: right.inv.transpose(),
    }
}

/// Modular inverse of `a` modulo the prime `p`.
pub(crate) fn inv_mod(a: &Int, p: &Int) -> Int {
    let e = a.mod_floor(p).extended_gcd(p);
    debug_assert!(e.gcd.is_one(), "not invertible modulo p");
    e.x.mod_floor(p)
}

/// Diagonalisation over the prime field ℤ/p.
///
/// Returns matrices with entries in `[0, p)` such that
/// `left · m · right ≡ diag (mod p)`, where `diag` carries ones on its first
/// `rank` diagonal entries and zeros elsewhere; `left` and `right` are
/// invertible modulo `p`. Pivots follow the same minimal-representative,
/// row-major rule as [`smith_normal_form`]. `p` must be prime.
pub fn smith_normal_form_mod(m: &IntMatrix, p: &Int) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            d.set(i, j, m.get(i, j).mod_floor(p));
        }
    }
    let mut left = Transform::new(rows);
    let mut right = Transform::new(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        left.swap(t, pi);
        d.swap_cols(t, pj);
        right.swap(t, pj);
        // Scale the pivot row to make the pivot 1.
        let pivot = d.get(t, t).clone();
        let inv = inv_mod(&pivot, p);
        for j in 0..cols {
            let v = (d.get(t, j) * &inv).mod_floor(p);
            d.set(t, j, v);
        }
        left.scale(t, &inv, &pivot);
        for i in t + 1..rows {
            let f = -d.get(i, t).clone();
            d.add_row_multiple(i, t, &f);
            left.add(i, t, &f);
        }
        for j in t + 1..cols {
            let f = -d.get(t, j).clone();
            d.add_col_multiple(j, t, &f);
            right.add(j, t, &f);
        }
        for i in 0..rows {
            for j in 0..cols {
                let v = d.get(i, j).mod_floor(p);
                d.set(i, j, v);
            }
        }
        left.reduce(p);
        right.reduce(p);
    }
    finish(left, d, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.left.mul(m).mul(&s.right), s.diag);
        assert!(s.left.is_unimodular());
        assert!(s.right.is_unimodular());
        assert_eq!(s.left.mul(&s.left_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.right.mul(&s.right_inv), IntMatrix::identity(m.cols()));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.left, IntMatrix::identity(2));
        assert_eq!(s.right, IntMatrix::identity(2));
        let z = IntMatrix::zeros(3, 2);
        let s = check(&z);
        assert_eq!(s.left, IntMatrix::identity(3));
        assert_eq!(s.right, IntMatrix::identity(2));
        assert!(s.diag.is_zero());
    }

    #[test]
    fn two_by_two_with_divisibility_fix() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 1], vec![0, 2]]));
        assert_eq!(s.invariant_factors(), vec![Int::from(1), Int::from(4)]);
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn empty_matrices() {
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn mod_p_rank() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let p = Int::from(2);
        let s = smith_normal_form_mod(&m, &p);
        let prod = s.left.mul(&m).mul(&s.right);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(prod.get(i, j).mod_floor(&p), s.diag.get(i, j).clone());
            }
        }
        assert_eq!(s.rank(), 1);
        let id = s.left.mul(&s.left_inv);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(id.get(i, j).mod_floor(&p), IntMatrix::identity(2).get(i, j).clone());
            }
        }
    }
}
