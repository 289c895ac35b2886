//! Lattices, rational cones, affine monoids and monoid ideals.

pub mod cone;
pub mod lattice;
pub mod monoid;

pub use cone::Cone;
pub use lattice::Vector;
pub use monoid::{
    coordinates_in, decompose, hilbert_basis, kummer_refine, minimalize, monoid_saturate_ideal, present_monoid_algebra,
    refine_lattice, AffineMonoid, KummerRefinement, LatticeChange, MonoidIdeal,
};
