//! Column-style Hermite normal form.
//!
//! Convention: the basis is returned as the columns of a lower-triangular
//! matrix. Column `k` has its pivot (first nonzero entry) at row `pivots[k]`,
//! pivots strictly increase with `k`, every pivot is positive, and in each
//! pivot row the entries of the earlier columns lie in `[0, pivot)`.
//! This form is unique for a given column lattice.

use super::{Matrix, Scalar};

#[derive(Clone, Debug)]
pub struct HnfResult<T: std::fmt::Display> {
    /// `rows x rank`, columns form the canonical basis.
    pub basis: Matrix<T>,
    /// Pivot row of each basis column.
    pub pivots: Vec<usize>,
    /// Unimodular `cols x cols` matrix with `input * transform = [basis | 0]`.
    pub transform: Matrix<T>,
}

impl<T: Scalar> HnfResult<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn ext_gcd<T: Scalar>(a: &T, b: &T) -> (T, T, T) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Hermite normal form of the column lattice of `m`, with transform.
pub fn column_hnf<T: Scalar>(m: &Matrix<T>) -> HnfResult<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = Matrix::identity(cols);
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..rows {
        if k == cols {
            break;
        }
        for j in k + 1..cols {
            if a.get(i, j).is_zero() {
                continue;
            }
            let ak = a.get(i, k).clone();
            let aj = a.get(i, j).clone();
            let (g, x, y) = ext_gcd(&ak, &aj);
            let p = aj.clone() / g.clone();
            let q = ak.clone() / g.clone();
            // [c_k, c_j] <- [x c_k + y c_j, -p c_k + q c_j]; determinant 1.
            for mat in [&mut a, &mut u] {
                for r in 0..mat.rows() {
                    let ck = mat.get(r, k).clone();
                    let cj = mat.get(r, j).clone();
                    mat.set(r, k, x.clone() * ck.clone() + y.clone() * cj.clone());
                    mat.set(r, j, q.clone() * cj - p.clone() * ck);
                }
            }
        }
        if a.get(i, k).is_zero() {
            continue;
        }
        if a.get(i, k).is_negative() {
            a.negate_col(k);
            u.negate_col(k);
        }
        let piv = a.get(i, k).clone();
        for j in 0..k {
            let q = a.get(i, j).div_floor(&piv);
            if !q.is_zero() {
                let nq = -q;
                a.add_col_multiple(j, k, &nq);
                u.add_col_multiple(j, k, &nq);
            }
        }
        pivots.push(i);
        k += 1;
    }
    let idx: Vec<usize> = (0..k).collect();
    HnfResult {
        basis: a.select_cols(&idx),
        pivots,
        transform: u,
    }
}

/// Basis (in Hermite form) of the integer kernel `{x : m x = 0}`.
pub fn integer_kernel<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let h = column_hnf(m);
    let idx: Vec<usize> = (h.rank()..m.cols()).collect();
    let k = h.transform.select_cols(&idx);
    column_hnf(&k).basis
}

/// Some integer solution of `m x = b`, if one exists.
pub fn solve_integer<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let h = column_hnf(m);
    let y = triangular_coords(&h.basis, &h.pivots, b)?;
    let mut full = y;
    full.resize(m.cols(), T::zero());
    Some(h.transform.mul_vec(&full))
}

/// Coordinates of `v` in a Hermite basis, if `v` lies in its span over Z.
pub(crate) fn triangular_coords<T: Scalar>(
    basis: &Matrix<T>,
    pivots: &[usize],
    v: &[T],
) -> Option<Vec<T>> {
    let mut res = v.to_vec();
    let mut coords = Vec::with_capacity(pivots.len());
    for (k, &p) in pivots.iter().enumerate() {
        let piv = basis.get(p, k);
        let (q, r) = res[p].div_rem(piv);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (i, x) in res.iter_mut().enumerate() {
                *x = x.clone() - q.clone() * basis.get(i, k).clone();
            }
        }
        coords.push(q);
    }
    if res.iter().all(|x| x.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

/// Inverse of a unimodular square matrix.
pub fn unimodular_inverse<T: Scalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    if m.rows() != m.cols() {
        return None;
    }
    let h = column_hnf(m);
    if h.basis != Matrix::identity(m.rows()) {
        return None;
    }
    Some(h.transform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = Matrix<BigInt>;

    #[test]
    fn already_normal() {
        let m = M::from_i64(&[&[2, 0], &[0, 3]], 2);
        assert_eq!(column_hnf(&m).basis, m);
    }

    #[test]
    fn index_two_sublattice() {
        // columns (1,3) and (2,4)
        let m = M::from_i64(&[&[1, 2], &[3, 4]], 2);
        let h = column_hnf(&m);
        assert_eq!(h.basis, M::from_i64(&[&[1, 0], &[1, 2]], 2));
        assert_eq!(m.mul(&h.transform), h.basis);
    }

    #[test]
    fn zero_matrix_has_empty_basis() {
        let m = M::zeros(3, 2);
        let h = column_hnf(&m);
        assert_eq!(h.rank(), 0);
        assert_eq!(h.basis.cols(), 0);
    }

    #[test]
    fn kernel_of_projection() {
        let m = M::from_i64(&[&[1, 0]], 2);
        assert_eq!(integer_kernel(&m), M::from_i64(&[&[0], &[1]], 1));
    }

    #[test]
    fn solve_and_inverse() {
        let m = M::from_i64(&[&[2, 1], &[1, 1]], 2);
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), M::identity(2));
        let x = solve_integer(&m, &crate::linalg::from_i64s(&[5, 3])).unwrap();
        assert_eq!(m.mul_vec(&x), crate::linalg::from_i64s::<BigInt>(&[5, 3]));
        let two = M::from_i64(&[&[2]], 1);
        assert!(solve_integer(&two, &crate::linalg::from_i64s(&[3])).is_none());
        assert!(unimodular_inverse(&two).is_none());
    }

    #[test]
    fn generic_over_machine_integers() {
        let m = Matrix::<i64>::from_i64(&[&[1, 2], &[3, 4]], 2);
        assert_eq!(column_hnf(&m).basis, Matrix::<i64>::from_i64(&[&[1, 0], &[1, 2]], 2));
    }
}
