use std::fmt;

use super::hnf::triangular_coords;
use super::{column_hnf, integer_kernel, Matrix, Scalar};

/// A sublattice of `Z^n`, stored by its canonical Hermite basis.
///
/// Two lattices are equal exactly when their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice<T> {
    ambient: usize,
    basis: Matrix<T>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Lattice<T> {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: Matrix::zeros(ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_generator_matrix(&Matrix::identity(ambient))
    }

    /// Lattice spanned by the columns of `m`.
    pub fn from_generator_matrix(m: &Matrix<T>) -> Self {
        let h = column_hnf(m);
        Lattice {
            ambient: m.rows(),
            basis: h.basis,
            pivots: h.pivots,
        }
    }

    pub fn from_generators(ambient: usize, gens: &[Vec<T>]) -> Self {
        Self::from_generator_matrix(&Matrix::from_cols(gens, ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<T>> {
        self.basis.columns()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the Hermite basis, if `v` belongs to the lattice.
    pub fn coords(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.ambient, "vector length does not match lattice");
        triangular_coords(&self.basis, &self.pivots, v)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice<T>) -> bool {
        other.basis_vectors().iter().all(|b| self.contains(b))
    }

    /// Canonical representative of the coset `v + L`.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut res = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let q = res[p].div_floor(self.basis.get(p, k));
            if !q.is_zero() {
                for (i, x) in res.iter_mut().enumerate() {
                    *x = x.clone() - q.clone() * self.basis.get(i, k).clone();
                }
            }
        }
        res
    }

    pub fn sum(&self, other: &Lattice<T>) -> Lattice<T> {
        assert_eq!(self.ambient, other.ambient, "lattice rank mismatch");
        Self::from_generator_matrix(&self.basis.hstack(&other.basis))
    }

    /// `L1 ∩ L2` via the kernel of `[B1 | -B2]`.
    pub fn intersect(&self, other: &Lattice<T>) -> Lattice<T> {
        assert_eq!(self.ambient, other.ambient, "lattice rank mismatch");
        let stacked = self.basis.hstack(&other.basis.neg());
        let ker = integer_kernel(&stacked);
        let k1 = self.rank();
        let top: Vec<usize> = (0..k1).collect();
        let a = ker.select_rows(&top);
        Self::from_generator_matrix(&self.basis.mul(&a))
    }

    /// Index in `Z^n` when of full rank.
    pub fn index(&self) -> Option<T> {
        if self.rank() != self.ambient {
            return None;
        }
        Some(
            (0..self.rank())
                .map(|k| self.basis.get(self.pivots[k], k).clone())
                .fold(T::one(), |a, b| a * b),
        )
    }
}

impl<T: Scalar> fmt::Debug for Lattice<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span")?;
        let cols = self.basis_vectors();
        write!(f, "{{")?;
        for (i, c) in cols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, x) in c.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = Lattice<BigInt>;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn span(gens: &[&[i64]]) -> L {
        let g: Vec<Vec<BigInt>> = gens.iter().map(|x| v(x)).collect();
        L::from_generators(gens[0].len(), &g)
    }

    #[test]
    fn membership() {
        let l = span(&[&[2, 0], &[0, 3]]);
        assert!(l.contains(&v(&[4, 3])));
        assert!(l.contains(&v(&[0, 0])));
        assert!(!l.contains(&v(&[1, 0])));
    }

    #[test]
    fn intersections() {
        let a = span(&[&[2, 0], &[0, 1]]);
        let b = span(&[&[1, 0], &[0, 3]]);
        assert_eq!(a.intersect(&b), span(&[&[2, 0], &[0, 3]]));
        assert_eq!(a.intersect(&a), a);
        let d1 = span(&[&[1, 1]]);
        let d2 = span(&[&[1, -1]]);
        assert_eq!(d1.intersect(&d2).rank(), 0);
    }

    #[test]
    fn reduce_is_canonical() {
        let l = span(&[&[2, 0], &[0, 3]]);
        assert_eq!(l.reduce(&v(&[5, -4])), v(&[1, 2]));
        assert_eq!(l.reduce(&v(&[-1, 2])), v(&[1, 2]));
    }
}
