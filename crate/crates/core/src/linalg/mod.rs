//! Exact integer linear algebra: dense matrices, Hermite and Smith normal
//! forms, and sublattices of `Z^n`.
//!
//! Everything here is generic over [`Scalar`]. The rest of the crate uses
//! the arbitrary-precision instantiation ([`crate::Int`]); fixed-width
//! instantiations exist for tests and for callers that can bound their
//! entries.

mod hnf;
mod lattice;
mod matrix;
mod snf;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub use hnf::{column_hnf, integer_kernel, solve_integer, unimodular_inverse, HnfResult};
pub use lattice::Lattice;
pub use matrix::Matrix;
pub use snf::{invariant_factors, smith, Smith};

/// Integer-like scalar usable by the lattice kernels.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// Dot product of two equal-length slices.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn vec_add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_neg<T: Scalar>(a: &[T]) -> Vec<T> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn vec_scale<T: Scalar>(k: &T, a: &[T]) -> Vec<T> {
    a.iter().map(|x| k.clone() * x.clone()).collect()
}

pub fn is_zero_vec<T: Scalar>(a: &[T]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn zero_vec<T: Scalar>(n: usize) -> Vec<T> {
    vec![T::zero(); n]
}

/// Converts a slice of machine integers.
pub fn from_i64s<T: Scalar>(xs: &[i64]) -> Vec<T> {
    xs.iter()
        .map(|&x| T::from_i64(x).expect("i64 fits every scalar"))
        .collect()
}
