//! Logarithmic derivations on a chart and the derivative ideals
//! `D^(<=i)(I)`.

use super::chart::Chart;
use crate::monoid_lattice::lattice::dot;
use crate::{Poly, Rational};

/// A logarithmic derivation of a chart ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogDerivation {
    /// `d/dx_i` for the ordinary variable with this index.
    Ordinary(usize),
    /// The derivation multiplying each monomial `m_g` by `L(g)`.
    Monomial(Vec<i64>),
}

impl LogDerivation {
    pub fn apply(&self, chart: &Chart, f: &Poly) -> Poly {
        match self {
            LogDerivation::Ordinary(i) => f.partial(*i),
            LogDerivation::Monomial(l) => f.map_terms_scalar(|e| {
                let g = chart.term_lattice_vector(e);
                Rational::from_integer(dot(l, &g).into())
            }),
        }
    }
}

/// `d/dx_i` for every ordinary variable plus the coordinate dual vectors of
/// the lattice.
pub fn derivation_basis(chart: &Chart) -> Vec<LogDerivation> {
    derivation_basis_excluding(chart, &[])
}

/// The derivation basis without the ordinary variables listed in `excluded`.
///
/// Derivations on a coordinate hypersurface `x = 0` are the ambient ones
/// other than `d/dx`, so restricted computations use this basis.
pub fn derivation_basis_excluding(chart: &Chart, excluded: &[usize]) -> Vec<LogDerivation> {
    let mut out: Vec<LogDerivation> =
        (0..chart.ordinary.len()).filter(|i| !excluded.contains(i)).map(LogDerivation::Ordinary).collect();
    for k in 0..chart.rank {
        let l = (0..chart.rank).map(|j| i64::from(j == k)).collect();
        out.push(LogDerivation::Monomial(l));
    }
    out
}

/// `D^(<=i)(I)` as canonical generators of the chart ring.
pub fn derive_ideal(chart: &Chart, gens: &[Poly], i: u32) -> Vec<Poly> {
    derive_ideal_excluding(chart, gens, i, &[])
}

/// `D^(<=i)(I)` using the basis without the excluded ordinary variables.
pub fn derive_ideal_excluding(chart: &Chart, gens: &[Poly], i: u32, excluded: &[usize]) -> Vec<Poly> {
    let ring = chart.ring();
    let basis = derivation_basis_excluding(chart, excluded);
    let mut current = ring.canonical(gens);
    for _ in 0..i {
        if current.iter().any(|g| g.is_nonzero_constant()) {
            break;
        }
        let mut next = current.clone();
        for g in &current {
            for d in &basis {
                let dg = d.apply(chart, g);
                if !dg.is_zero() {
                    next.push(dg);
                }
            }
        }
        let next = ring.canonical(&next);
        if next == current {
            break;
        }
        current = next;
    }
    current
}

/// One derivation step `D^(<=1)` followed by canonicalization.
pub fn derive_once(chart: &Chart, gens: &[Poly], excluded: &[usize]) -> Vec<Poly> {
    derive_ideal_excluding(chart, gens, 1, excluded)
}

/// True when `D(f)` lies in the relation ideal for each relation `f` and
/// basis derivation `D`.
pub fn preserves_relations(chart: &Chart) -> bool {
    let ring = chart.ring();
    let rel = ring.basis(&[]);
    derivation_basis(chart).iter().all(|d| {
        chart.relations.iter().all(|r| {
            let dr = d.apply(chart, r);
            dr.is_zero() || crate::exact_algebra::Ring::<Rational>::reduces_to_zero(&rel, &dr)
        })
    })
}
