//! The chart data model and logarithmic differential calculus on charts.

pub mod chart;
pub mod derivation;
pub mod ops;

pub use chart::{fresh_name, Character, Chart, ChartMap, Provenance};
pub use derivation::{
    derivation_basis, derivation_basis_excluding, derive_ideal, derive_ideal_excluding, LogDerivation,
};
pub use ops::{
    add_free_variable, fraction_apply, free_variable_map, kummer_cover, kummer_cover_pullback,
    localize_monomial_variable, localize_ray_generator, restrict_to_hypersurface, restrict_to_stratum,
    substitute_coordinate, substitution_map, untwist_unit, KummerCover, MonomialLocalization, RayLocalization,
    Untwisting,
};
