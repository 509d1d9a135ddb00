//! Smith normal form with transforms.

use super::{Matrix, Scalar};

/// `left * input * right = diag`, with `left`, `right` unimodular and the
/// nonzero diagonal entries positive and dividing each other in sequence.
#[derive(Clone, Debug)]
pub struct Smith<T: std::fmt::Display> {
    pub left: Matrix<T>,
    pub diag: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T: Scalar> Smith<T> {
    /// Nonzero diagonal entries.
    pub fn factors(&self) -> Vec<T> {
        let n = self.diag.rows().min(self.diag.cols());
        (0..n)
            .map(|i| self.diag.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

fn min_abs_in_block<T: Scalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith<T: Scalar>(m: &Matrix<T>) -> Smith<T> {
    let r = m.rows();
    let c = m.cols();
    let mut a = m.clone();
    let mut left = Matrix::identity(r);
    let mut right = Matrix::identity(c);
    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_abs_in_block(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    let v = a.get(i, t);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let v = a.get(t, j);
                    if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    left.swap_rows(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    right.swap_cols(t, best.1);
                }
                continue;
            }
            let piv = a.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).mod_floor(&piv).is_zero()));
            match bad {
                Some(i) => {
                    let one = T::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    Smith {
        left,
        diag: a,
        right,
    }
}

/// Invariant factors `d1 | d2 | ... | dk` of `m`.
pub fn invariant_factors<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    smith(m).factors()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = Matrix<BigInt>;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn two_by_two() {
        let m = M::from_i64(&[&[2, 4], &[6, 8]], 2);
        assert_eq!(invariant_factors(&m), ints(&[2, 4]));
        let s = smith(&m);
        assert_eq!(s.left.mul(&m).mul(&s.right), s.diag);
    }

    #[test]
    fn identity_and_scalar() {
        assert_eq!(invariant_factors(&M::identity(3)), ints(&[1, 1, 1]));
        assert_eq!(invariant_factors(&M::from_i64(&[&[6]], 1)), ints(&[6]));
    }

    #[test]
    fn rectangular() {
        let m = M::from_i64(&[&[0, 2], &[0, 0], &[3, 0]], 2);
        assert_eq!(invariant_factors(&m), ints(&[1, 6]));
    }
}
