//! Passage from a clean marked ideal of maximal order to the restricted
//! coefficient ideal on a maximal contact hypersurface.

use crate::error::{Error, Result};
use crate::log_calculus::{
    coefficient_ideal, find_monomial_split, find_root_cover, homogenize, select_from_basis, MarkedIdeal, Scope,
};
use crate::toroidal_chart::{
    fraction_apply, localize_monomial_variable, localize_ray_generator, substitution_map, untwist_unit, Chart,
    ChartMap, RayLocalization, Untwisting,
};
use crate::Poly;

/// Outcome of one descent attempt.
pub(crate) enum Descend {
    Contact(Box<ContactDescent>),
    /// No polynomial maximal contact exists on the whole chart; these
    /// localizations cover it and each admits one.
    Cover(Vec<Localized>),
}

pub(crate) struct ContactDescent {
    /// The chart after the straightening substitution (only the inverted
    /// elements can change).
    pub chart: Chart,
    pub var: usize,
    pub shift: Poly,
    /// The substitution `x -> x - shift`.
    pub map: ChartMap,
    pub coefficient: MarkedIdeal,
    pub restriction: MarkedIdeal,
}

pub(crate) struct Localized {
    pub chart: Chart,
    pub map: LocalMap,
    pub description: String,
}

/// A map into a localization, applied to ideals up to units.
#[derive(Clone, Debug)]
pub(crate) enum LocalMap {
    Polynomial(ChartMap),
    /// `x_i -> images[i]`, except that the image of `var` is divided by the
    /// inverted `denominator`.
    Fraction {
        map: ChartMap,
        var: usize,
        denominator: Poly,
    },
    /// Passage to invariant coordinates where a unit carries the character.
    Untwist(Untwisting),
    /// Inversion of a monomial generator spanning an extremal ray.
    Ray(RayLocalization),
}

impl LocalMap {
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        match self {
            LocalMap::Polynomial(map) => Ok(map.apply(f)),
            LocalMap::Fraction { map, var, denominator } => Ok(fraction_apply(map, *var, denominator, f)),
            LocalMap::Untwist(u) => u.apply(f),
            LocalMap::Ray(r) => Ok(r.apply(f)),
        }
    }

    pub fn apply_all(&self, fs: &[Poly]) -> Result<Vec<Poly>> {
        fs.iter().map(|f| self.apply(f)).collect()
    }
}

pub(crate) fn identity_map(chart: &Chart) -> ChartMap {
    ChartMap { images: (0..chart.nvars()).map(|i| chart.var(i)).collect() }
}

/// Homogenizes `(cln, b)`, selects a maximal contact `x` outside the
/// excluded chain, straightens it and returns `C(H, b)|_{x=0}` with mark
/// `b!`. Falls back to a covering by localizations when the contact only
/// exists locally.
pub(crate) fn descend(chart: &Chart, excluded: &[usize], cln: &[Poly], b: u64) -> Result<Descend> {
    let scope = Scope::new(chart, excluded);
    let h = homogenize(scope, &MarkedIdeal::new(cln.to_vec(), b));
    let t = scope.derive(&h.ideal, b - 1);
    match select_from_basis(scope, &t) {
        Ok(contact) => {
            let map = substitution_map(chart, contact.var, &contact.shift);
            let mut moved = chart.clone();
            moved.inverted = map.apply_all(&chart.inverted);
            let ring = moved.ring();
            let hs = MarkedIdeal::new(ring.canonical(&map.apply_all(&h.ideal)), b);
            let coefficient = coefficient_ideal(Scope::new(&moved, excluded), &hs);
            let restricted: Vec<Poly> = coefficient.ideal.iter().map(|f| f.set_zero(contact.var)).collect();
            let restriction = MarkedIdeal::new(ring.canonical(&restricted), coefficient.mark);
            Ok(Descend::Contact(Box::new(ContactDescent {
                chart: moved,
                var: contact.var,
                shift: contact.shift,
                map,
                coefficient,
                restriction,
            })))
        }
        Err(Error::NoMaximalContact { chart: desc, basis }) => {
            if let Some(split) = find_monomial_split(scope, &t) {
                let z = chart.names()[split.var].clone();
                let inverted_factor = if split.coefficient.is_nonzero_constant() {
                    z.clone()
                } else {
                    format!("{z}*({})", chart.format(&split.coefficient))
                };
                let g = chart.format(&split.generator);
                let (local_chart, map, t_name) = if split.ray {
                    let c = split.coefficient.terms()[0].coeff.clone();
                    let local = localize_ray_generator(chart, split.var, &c, &split.rest)?;
                    let t_name = local.chart.names()[local.coordinate].clone();
                    (local.chart.clone(), LocalMap::Ray(local), t_name)
                } else {
                    let local = localize_monomial_variable(chart, split.var, &split.coefficient, &split.rest)?;
                    let t_name = local.chart.names()[local.coordinate].clone();
                    let map =
                        LocalMap::Fraction { map: local.map, var: local.variable, denominator: local.denominator };
                    (local.chart, map, t_name)
                };
                let mut away = chart.clone();
                away.inverted.push(split.generator.monic());
                return Ok(Descend::Cover(vec![
                    Localized {
                        map,
                        chart: local_chart,
                        description: format!("{inverted_factor} invertible, {t_name} = {g}"),
                    },
                    Localized {
                        map: LocalMap::Polynomial(identity_map(chart)),
                        chart: away,
                        description: format!("{g} invertible"),
                    },
                ]));
            }
            if let Some(cover) = find_root_cover(scope, &t) {
                let parts = (0..cover.factors.len())
                    .map(|i| {
                        let mut local = chart.clone();
                        let others: Vec<&Poly> =
                            cover.factors.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f).collect();
                        local.inverted.extend(others.iter().map(|f| (*f).clone()));
                        let shown: Vec<String> = others.iter().map(|f| chart.format(f)).collect();
                        Localized {
                            chart: local,
                            map: LocalMap::Polynomial(identity_map(chart)),
                            description: format!("{} invertible", shown.join(", ")),
                        }
                    })
                    .collect();
                return Ok(Descend::Cover(parts));
            }
            if let Some(parts) = untwist_cover(scope, &t)? {
                return Ok(Descend::Cover(parts));
            }
            Err(Error::NoMaximalContact { chart: desc, basis })
        }
        Err(e) => Err(e),
    }
}

/// On a chart with one character, an ordinary variable `x` whose weight
/// generates the group and an element `g` of `t` with `(x, g) = 1` give the
/// cover by `D(g)` and the invariant chart of `D(x)`.
fn untwist_cover(scope: Scope<'_>, t: &[Poly]) -> Result<Option<Vec<Localized>>> {
    let chart = scope.chart;
    if chart.characters.len() != 1 {
        return Ok(None);
    }
    let ring = chart.ring();
    let basis = ring.basis(t);
    for x in (0..chart.ordinary.len()).filter(|i| !scope.excluded.contains(i)) {
        let Ok(u) = untwist_unit(chart, x) else { continue };
        let xv = chart.var(x);
        let Some(g) = basis.iter().find(|g| ring.is_unit(&[xv.clone(), (*g).clone()])) else { continue };
        let name = &chart.names()[x];
        let shown = chart.format(g);
        let mut away = chart.clone();
        away.inverted.push(g.monic());
        let description = format!("{name} invertible, {} = {name}^{}", u.chart.names()[x], u.modulus);
        return Ok(Some(vec![
            Localized { chart: u.chart.clone(), map: LocalMap::Untwist(u), description },
            Localized {
                chart: away,
                map: LocalMap::Polynomial(identity_map(chart)),
                description: format!("{shown} invertible"),
            },
        ]));
    }
    Ok(None)
}
