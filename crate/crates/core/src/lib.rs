pub mod carriers;
pub mod category;
pub mod corpus;
pub mod error;
pub mod finite;
pub mod galois;
pub mod linalg;
pub mod monoid;
pub mod normal;
pub mod reflect;
pub mod verdict;

pub use error::{ModelError, Result};
pub use finite::{validate_group_table, FiniteGroup, IndexSet};
pub use verdict::{Element, Verdict, Witness, WordElement};

/// Arbitrary-precision integer used by every lattice computation.
pub type Int = num_bigint::BigInt;
pub type ZVec = Vec<Int>;
pub type ZMatrix = linalg::Matrix<Int>;
pub type ZLattice = linalg::Lattice<Int>;
