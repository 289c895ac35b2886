//! The marked-ideal calculus: logarithmic order, monomial saturation,
//! cleaning, homogenization, coefficient ideals, admissibility and maximal
//! contact.

pub mod center;
pub mod contact;
pub mod marked;
pub mod order;

pub use center::{describe_root, integral_closure_of_center_power, is_admissible, KummerCenter};
pub use contact::{
    find_monomial_split, find_root_cover, linear_in, select_from_basis, select_maximal_contact, Contact, MonomialSplit,
    RootCover,
};
pub use marked::{coefficient_ideal, factorial, homogenize, marked_product, marked_sum, ring_power, MarkedIdeal};
pub use order::{clean_part, cosupport, derivation_fixpoint, max_logord, monomial_saturation, monomials, Order};

use crate::toroidal_chart::{derive_ideal_excluding, Chart};
use crate::Poly;

/// A chart together with ordinary variables excluded from the derivation
/// basis. Excluding the maximal contact chain realizes the calculus on the
/// iterated hypersurface without building a separate chart.
#[derive(Clone, Copy, Debug)]
pub struct Scope<'a> {
    pub chart: &'a Chart,
    pub excluded: &'a [usize],
}

impl<'a> Scope<'a> {
    pub fn full(chart: &'a Chart) -> Self {
        Scope { chart, excluded: &[] }
    }

    pub fn new(chart: &'a Chart, excluded: &'a [usize]) -> Self {
        Scope { chart, excluded }
    }

    /// `D^(<=i)(I)` in this scope.
    pub fn derive(&self, gens: &[Poly], i: u64) -> Vec<Poly> {
        derive_ideal_excluding(self.chart, gens, u32::try_from(i).unwrap_or(u32::MAX), self.excluded)
    }
}
