//! Maximal contact coordinates.

use num_traits::{One, Zero};

use super::marked::MarkedIdeal;
use super::Scope;
use crate::error::{Error, Result};
use crate::{Poly, Rational};

/// A maximal contact coordinate `x_var` obtained after the straightening
/// substitution `x_var -> x_var - shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct Contact {
    pub var: usize,
    pub shift: Poly,
}

/// Writes `g = c * x_var + h` with `h` free of `x_var` and `c` a nonzero
/// constant.
pub fn linear_in(g: &Poly, var: usize) -> Option<(Rational, Poly)> {
    let mut c = Rational::zero();
    let mut rest: Vec<(Rational, Vec<u32>)> = Vec::new();
    for t in g.terms() {
        match t.exps[var] {
            0 => rest.push((t.coeff.clone(), t.exps.clone())),
            1 if t.exps.iter().enumerate().all(|(i, &e)| i == var || e == 0) => c = t.coeff.clone(),
            _ => return None,
        }
    }
    if c.is_zero() {
        return None;
    }
    Some((c, Poly::from_terms(g.nvars(), rest)))
}

/// Scans the reduced basis of `T = D^(<=a-1)(I)` for the first generator
/// linear with constant coefficient in an ordinary variable in scope.
pub fn select_maximal_contact(scope: Scope<'_>, m: &MarkedIdeal) -> Result<Contact> {
    let t = scope.derive(&m.ideal, m.mark - 1);
    select_from_basis(scope, &t)
}

/// Contact selection on an already computed `T`.
pub fn select_from_basis(scope: Scope<'_>, t: &[Poly]) -> Result<Contact> {
    let chart = scope.chart;
    for g in t {
        for var in 0..chart.ordinary.len() {
            if scope.excluded.contains(&var) {
                continue;
            }
            if let Some((c, h)) = linear_in(g, var) {
                let shift = h.scale(&(Rational::from_integer(1.into()) / c));
                return Ok(Contact { var, shift });
            }
        }
    }
    Err(Error::NoMaximalContact { chart: chart.describe(), basis: chart.format_all(t).join(", ") })
}

/// A generator `g = c*z + h` of `T` linear in a monomial variable `z`
/// with `(c*z, g)` the unit ideal. Where `c*z` is invertible the variable
/// is traded for the ordinary coordinate `g`, a maximal contact; where `g`
/// is invertible the cosupport is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialSplit {
    pub var: usize,
    pub generator: Poly,
    pub coefficient: Poly,
    pub rest: Poly,
    /// `z` occurs in the toric relations; it spans an extremal ray and the
    /// split inverts it with its whole ray.
    pub ray: bool,
}

/// Writes `g = c * z + h` with `c` and `h` free of `z`.
pub fn linear_with_coefficient(g: &Poly, z: usize) -> Option<(Poly, Poly)> {
    let mut c: Vec<(Rational, Vec<u32>)> = Vec::new();
    let mut rest: Vec<(Rational, Vec<u32>)> = Vec::new();
    for t in g.terms() {
        match t.exps[z] {
            0 => rest.push((t.coeff.clone(), t.exps.clone())),
            1 => {
                let mut e = t.exps.clone();
                e[z] = 0;
                c.push((t.coeff.clone(), e));
            }
            _ => return None,
        }
    }
    if c.is_empty() {
        return None;
    }
    Some((Poly::from_terms(g.nvars(), c), Poly::from_terms(g.nvars(), rest)))
}

pub fn find_monomial_split(scope: Scope<'_>, t: &[Poly]) -> Option<MonomialSplit> {
    let chart = scope.chart;
    let n = chart.ordinary.len();
    let ring = chart.ring();
    for g in t {
        for z in n..chart.nvars() {
            let Some((c, h)) = linear_with_coefficient(g, z) else { continue };
            let others: Vec<Vec<i64>> =
                chart.vectors.iter().enumerate().filter(|(j, _)| *j != z - n).map(|(_, v)| v.clone()).collect();
            let free = chart.relations.iter().all(|r| r.is_free_of(z))
                && crate::monoid_lattice::lattice::rank(&others) + 1 == chart.rank;
            let usable = if free {
                c.is_nonzero_constant() || chart.characters.is_empty()
            } else {
                c.is_nonzero_constant()
                    && chart.characters.is_empty()
                    && h.terms().iter().all(|t| t.exps[n..].iter().all(|&e| e == 0))
                    && chart.cone().extreme_rays().contains(&chart.vectors[z - n])
            };
            if !usable || !ring.is_unit(&[&chart.var(z) * &c, g.clone()]) {
                continue;
            }
            return Some(MonomialSplit { var: z, generator: g.clone(), coefficient: c, rest: h, ray: !free });
        }
    }
    None
}

/// A generator of `T` that is a univariate polynomial in one monomial `y`
/// (a single variable or a product of variables) splitting into distinct
/// rational linear factors `y - r_i`. The opens where all factors but one
/// are invertible cover the chart, and on each the remaining factor has
/// logarithmic order one.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCover {
    /// Exponents of the monomial `y`.
    pub base: Vec<u32>,
    pub generator: Poly,
    pub factors: Vec<Poly>,
}

/// Writes `g` as `sum c_k y^k` for a primitive monomial `y`.
fn as_power_series_in_monomial(g: &Poly) -> Option<(Vec<u32>, Vec<Rational>)> {
    use num_integer::Integer;
    let first = g.terms().iter().map(|t| &t.exps).find(|e| e.iter().any(|&x| x > 0))?;
    let step = first.iter().fold(0u32, |acc, &x| acc.gcd(&x));
    let base: Vec<u32> = first.iter().map(|&x| x / step).collect();
    let pivot = base.iter().position(|&x| x > 0)?;
    let mut coeffs: Vec<Rational> = Vec::new();
    for t in g.terms() {
        let k = t.exps[pivot] / base[pivot];
        if t.exps.iter().zip(&base).any(|(&e, &b)| e != k * b) {
            return None;
        }
        let k = k as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] = t.coeff.clone();
    }
    Some((base, coeffs))
}

pub fn find_root_cover(scope: Scope<'_>, t: &[Poly]) -> Option<RootCover> {
    let chart = scope.chart;
    let n = chart.ordinary.len();
    for g in t {
        let Some((base, coeffs)) = as_power_series_in_monomial(g) else { continue };
        if coeffs.len() < 3 {
            continue;
        }
        let support: Vec<usize> = (0..base.len()).filter(|&i| base[i] > 0).collect();
        if support.iter().any(|&i| i < n && scope.excluded.contains(&i)) {
            continue;
        }
        let single_ordinary = support.len() == 1 && base[support[0]] == 1 && support[0] < n;
        if support.len() == 1 && support[0] >= n && chart.relations.iter().any(|r| !r.is_free_of(support[0])) {
            continue;
        }
        let Some(roots) = rational_roots(&coeffs) else { continue };
        if roots.len() + 1 != coeffs.len() || (!single_ordinary && roots.iter().any(|r| r.is_zero())) {
            continue;
        }
        let nv = chart.nvars();
        let y = Poly::monomial(nv, Rational::one(), base.clone());
        let factors = roots.iter().map(|r| &y - &Poly::constant(nv, r.clone())).collect();
        return Some(RootCover { base, generator: g.clone(), factors });
    }
    None
}

/// Distinct rational roots of `sum c_i y^i`, or `None` when the integer
/// coefficients are too large to enumerate divisors.
fn rational_roots(coeffs: &[Rational]) -> Option<Vec<Rational>> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let den = coeffs.iter().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<i64> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer().to_i64())
        .collect::<Option<_>>()?;
    let mut roots = Vec::new();
    let low = ints.iter().position(|&c| c != 0)?;
    if low > 0 {
        roots.push(Rational::zero());
    }
    let (a0, an) = (ints[low].abs(), ints.last().copied()?.abs());
    if a0 > 1_000_000 || an > 1_000_000 {
        return None;
    }
    let divisors = |m: i64| (1..=m).filter(move |d| m % d == 0);
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Rational::new((sign * p).into(), q.into());
                let value = coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &r + c);
                if value.is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}
