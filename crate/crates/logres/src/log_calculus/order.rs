//! Logarithmic order, cosupport, monomial saturation and cleaning.

use std::fmt;

use super::Scope;
use crate::error::{Error, Result};
use crate::monoid_lattice::{minimalize, Vector};
use crate::toroidal_chart::derivation::derive_once;
use crate::Poly;

/// A logarithmic order: a natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(a) => Some(a),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(a) => write!(f, "{a}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// The least `a` with `D^(<=a)(I) = (1)`, or infinity when the derivative
/// chain stabilizes at a proper ideal.
pub fn max_logord(scope: Scope<'_>, gens: &[Poly]) -> Order {
    let ring = scope.chart.ring();
    let mut current = ring.canonical(gens);
    let mut a = 0u64;
    loop {
        if current.iter().any(|g| g.is_nonzero_constant()) {
            return Order::Finite(a);
        }
        let next = derive_once(scope.chart, &current, scope.excluded);
        if next == current {
            return Order::Infinite;
        }
        current = next;
        a += 1;
    }
}

/// `D^(<=a-1)(I)`, the ideal of the cosupport of `(I, a)`.
pub fn cosupport(scope: Scope<'_>, gens: &[Poly], mark: u64) -> Vec<Poly> {
    assert!(mark >= 1, "marks are positive");
    scope.derive(gens, mark - 1)
}

/// The derivative closure `D^inf(I)`.
pub fn derivation_fixpoint(scope: Scope<'_>, gens: &[Poly]) -> Vec<Poly> {
    let ring = scope.chart.ring();
    let mut current = ring.canonical(gens);
    loop {
        if current.iter().any(|g| g.is_nonzero_constant()) {
            return current;
        }
        let next = derive_once(scope.chart, &current, scope.excluded);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Minimal monoid generators of the monomial saturation `M(I)`.
///
/// The unit ideal is returned as the zero vector; the zero ideal as the
/// empty list.
pub fn monomial_saturation(scope: Scope<'_>, gens: &[Poly]) -> Result<Vec<Vector>> {
    let chart = scope.chart;
    let fix = derivation_fixpoint(scope, gens);
    if fix.is_empty() {
        return Ok(Vec::new());
    }
    if fix.iter().any(|g| g.is_nonzero_constant()) {
        return Ok(vec![vec![0; chart.rank]]);
    }
    // every term of an element of a monomial ideal lies in the ideal
    let ring = chart.ring();
    let basis = ring.basis(&fix);
    let mut found: Vec<Vector> = Vec::new();
    for g in &fix {
        for t in g.terms() {
            let v = chart.term_lattice_vector(&t.exps);
            if found.contains(&v) {
                continue;
            }
            let m = chart.monomial_poly(&v).ok_or(Error::NotMonomialFixpoint)?;
            if !crate::exact_algebra::Ring::reduces_to_zero(&basis, &m) {
                return Err(Error::NotMonomialFixpoint);
            }
            found.push(v);
        }
    }
    Ok(minimalize(chart.cone(), &found))
}

/// Monomials of a list of monoid elements.
pub fn monomials(scope: Scope<'_>, vs: &[Vector]) -> Vec<Poly> {
    vs.iter().map(|v| scope.chart.monomial_poly(v).expect("monoid element")).collect()
}

/// Factorization `I = M(I) * I^cln` of a balanced ideal: returns the
/// generator of `M(I)` and the clean part `I : M(I)`.
pub fn clean_part(scope: Scope<'_>, gens: &[Poly]) -> Result<(Vector, Vec<Poly>)> {
    let chart = scope.chart;
    let m = monomial_saturation(scope, gens)?;
    match m.len() {
        0 => Ok((vec![0; chart.rank], Vec::new())),
        1 => {
            let mono = chart.monomial_poly(&m[0]).expect("monoid element");
            let cln =
                if mono.is_nonzero_constant() { chart.ring().canonical(gens) } else { chart.ring().colon(gens, &mono) };
            Ok((m[0].clone(), cln))
        }
        _ => {
            let shown: Vec<String> = monomials(scope, &m).iter().map(|p| chart.format(p)).collect();
            Err(Error::NotBalanced(format!("M(I) = ({})", shown.join(", "))))
        }
    }
}
