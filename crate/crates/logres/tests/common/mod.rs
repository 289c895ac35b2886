//! Random inputs and property checks shared by the property tests and the
//! acceptance runner.
#![allow(dead_code)]

use proptest::prelude::*;

use logres::exact_algebra::ideal_product;
use logres::kummer_blowup::{blow_up, controlled_transform};
use logres::log_calculus::{
    is_admissible, max_logord, monomial_saturation, ring_power, KummerCenter, MarkedIdeal, Order, Scope,
};
use logres::toroidal_chart::{derive_ideal, restrict_to_stratum, Chart};
use logres::{Poly, Rational};

/// Terms as `(coefficient, exponents)` pairs.
pub type RawPoly = Vec<(i64, Vec<u32>)>;

pub fn build(nvars: usize, raw: &RawPoly) -> Poly {
    Poly::from_terms(nvars, raw.iter().map(|(c, e)| (Rational::from_integer((*c).into()), e.clone())))
}

pub fn build_all(nvars: usize, raws: &[RawPoly]) -> Vec<Poly> {
    raws.iter().map(|r| build(nvars, r)).filter(|f| !f.is_zero()).collect()
}

pub fn raw_poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    let coeff = prop_oneof![-3i64..=-1, 1i64..=3];
    prop::collection::vec((coeff, prop::collection::vec(0..=max_exp, nvars)), 1..=max_terms)
}

pub fn raw_ideal(nvars: usize, max_exp: u32, max_terms: usize, max_gens: usize) -> impl Strategy<Value = Vec<RawPoly>> {
    prop::collection::vec(raw_poly(nvars, max_exp, max_terms), 1..=max_gens)
}

/// `k[x, y][u, v]` with `u`, `v` free monomial variables.
pub fn chart_xy_uv() -> Chart {
    Chart::smooth("X", &["x", "y"], &["u", "v"])
}

/// `k[x][u]`, the chart of the boundary fixtures.
pub fn chart_x_u() -> Chart {
    Chart::smooth("X", &["x"], &["u"])
}

/// `k[x][a, b, c]/(b^2 - a*c)`, a singular toric chart.
pub fn chart_x_cone() -> Chart {
    let names = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    Chart::new("X", vec!["x".into()], names, 2, vec![vec![1, 0], vec![1, 1], vec![1, 2]]).expect("valid chart")
}

/// The centers occurring in the boundary fixtures, on `k[x][u]`.
pub fn fixture_centers() -> Vec<KummerCenter> {
    vec![
        KummerCenter::new(vec![0], vec![], 1),
        KummerCenter::new(vec![0], vec![vec![1]], 1),
        KummerCenter::new(vec![0], vec![vec![1]], 2),
        KummerCenter::new(vec![0], vec![vec![3]], 2),
        KummerCenter::new(vec![0], vec![vec![2]], 1),
        KummerCenter::new(vec![], vec![vec![1]], 1),
        KummerCenter::new(vec![], vec![vec![1]], 2),
    ]
}

/// `D^(<=i)(N * I) = N * D^(<=i)(I)` for the monomial ideal `N`.
pub fn derivatives_commute_with_monomials(chart: &Chart, n: &[Poly], i: &[Poly], order: u32) -> Result<(), String> {
    let ring = chart.ring();
    let left = derive_ideal(chart, &ideal_product(n, i), order);
    let right = ideal_product(n, &derive_ideal(chart, i, order));
    if ring.equal(&left, &right) {
        Ok(())
    } else {
        Err(format!("D(N*I) = {:?} but N*D(I) = {:?}", chart.format_all(&left), chart.format_all(&right)))
    }
}

/// `D^(<=i)(I)|_S = D_S^(<=i)(I|_S)` for the stratum where `zs` vanish.
pub fn derivatives_commute_with_strata(chart: &Chart, zs: &[usize], i: &[Poly], order: u32) -> Result<(), String> {
    let (s, restricted_derivatives) =
        restrict_to_stratum(chart, zs, &derive_ideal(chart, i, order)).map_err(|e| e.to_string())?;
    let (_, restricted) = restrict_to_stratum(chart, zs, i).map_err(|e| e.to_string())?;
    let derived = derive_ideal(&s, &restricted, order);
    if s.ring().equal(&restricted_derivatives, &derived) {
        Ok(())
    } else {
        Err(format!(
            "on {}: D(I)|S = {:?} but D(I|S) = {:?}",
            s.id,
            s.format_all(&restricted_derivatives),
            s.format_all(&derived)
        ))
    }
}

/// Every controlled transform of `(I, a)` along an admissible fixture
/// center has maximal order at most `a`, when `(I, a)` has maximal order.
/// Returns the number of admissible centers seen.
pub fn order_does_not_increase(chart: &Chart, i: &[Poly]) -> Result<usize, String> {
    let Order::Finite(a) = max_logord(Scope::full(chart), i) else { return Ok(0) };
    if a == 0 {
        return Ok(0);
    }
    let m = MarkedIdeal::new(i.to_vec(), a);
    let mut seen = 0;
    for center in fixture_centers() {
        if !is_admissible(chart, &m, &center).map_err(|e| e.to_string())? {
            continue;
        }
        seen += 1;
        let result = blow_up(chart, &center).map_err(|e| e.to_string())?;
        for bc in &result.charts {
            let t = controlled_transform(&m, bc).map_err(|e| e.to_string())?;
            let b = max_logord(Scope::full(&bc.chart), &t.ideal);
            if b > Order::Finite(a) {
                return Err(format!(
                    "center {} chart {}: transform {:?} has order {b} > {a}",
                    center.describe(chart),
                    bc.chart.id,
                    bc.chart.format_all(&t.ideal)
                ));
            }
        }
    }
    Ok(seen)
}

/// The controlled transform of `(I, a)` along `M(I)^(1/a)` is clean on
/// every chart.
pub fn cleaning_gives_clean_ideals(chart: &Chart, i: &[Poly], a: u64) -> Result<(), String> {
    let scope = Scope::full(chart);
    let m = monomial_saturation(scope, i).map_err(|e| e.to_string())?;
    if m.is_empty() || m.iter().any(|v| v.iter().all(|&x| x == 0)) {
        return Ok(());
    }
    let marked = MarkedIdeal::new(i.to_vec(), a);
    let center = KummerCenter::new(Vec::new(), m, i64::try_from(a).expect("small mark"));
    let result = blow_up(chart, &center).map_err(|e| e.to_string())?;
    for bc in &result.charts {
        let t = controlled_transform(&marked, bc).map_err(|e| e.to_string())?;
        let sat = monomial_saturation(Scope::full(&bc.chart), &t.ideal).map_err(|e| e.to_string())?;
        if !sat.iter().any(|v| v.iter().all(|&x| x == 0)) {
            return Err(format!("chart {}: transform {:?} is not clean", bc.chart.id, bc.chart.format_all(&t.ideal)));
        }
    }
    Ok(())
}

/// A fixture center is admissible for `(I, a)` exactly when it is
/// admissible for `(I^2, 2a)`.
pub fn admissibility_is_stable_under_squaring(chart: &Chart, i: &[Poly], a: u64) -> Result<(), String> {
    let square = ring_power(&chart.ring(), i, 2);
    for center in fixture_centers() {
        let one = is_admissible(chart, &MarkedIdeal::new(i.to_vec(), a), &center).map_err(|e| e.to_string())?;
        let two = is_admissible(chart, &MarkedIdeal::new(square.clone(), 2 * a), &center).map_err(|e| e.to_string())?;
        if one != two {
            return Err(format!(
                "center {}: {one} for (I, {a}) but {two} for (I^2, {})",
                center.describe(chart),
                2 * a
            ));
        }
    }
    Ok(())
}
