//! Finitely generated cones in free abelian groups: exact membership,
//! Hilbert bases, fiber products and direct images.

mod cone;
mod hilbert;

pub use cone::{search_functional, ConeCertificate, FreeCone, ImageOptions};
pub use hilbert::{extreme_rays, hilbert_basis, nonnegative_points, positive_support};
