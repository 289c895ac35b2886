//! Marked ideals: homogenization, coefficient ideals, sums and products.

use super::Scope;
use crate::exact_algebra::{ideal_product, ideal_sum, Ring};
use crate::{Poly, Rational};

/// An ideal together with a positive integer mark.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedIdeal {
    pub ideal: Vec<Poly>,
    pub mark: u64,
}

impl MarkedIdeal {
    pub fn new(ideal: Vec<Poly>, mark: u64) -> Self {
        assert!(mark >= 1, "marks are positive");
        MarkedIdeal { ideal, mark }
    }
}

/// `I^n` in the chart ring, canonicalized after each multiplication.
pub fn ring_power(ring: &Ring<Rational>, gens: &[Poly], n: u64) -> Vec<Poly> {
    let mut acc = vec![Poly::one(ring.nvars())];
    let base = ring.canonical(gens);
    // square and multiply keeps the number of Gröbner computations small
    let mut square = base;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = ring.canonical(&ideal_product(&acc, &square));
        }
        k >>= 1;
        if k > 0 {
            square = ring.canonical(&ideal_product(&square, &square));
        }
    }
    acc
}

/// `H(I, a) = sum_{i<a} D^(<=i)(I) * T^i` with `T = D^(<=a-1)(I)`.
pub fn homogenize(scope: Scope<'_>, m: &MarkedIdeal) -> MarkedIdeal {
    let ring = scope.chart.ring();
    let a = m.mark;
    let t = scope.derive(&m.ideal, a - 1);
    let mut total = ring.canonical(&m.ideal);
    let mut t_power = vec![Poly::one(scope.chart.nvars())];
    for i in 1..a {
        t_power = ring.canonical(&ideal_product(&t_power, &t));
        let di = scope.derive(&m.ideal, i);
        total = ideal_sum(&total, &ideal_product(&di, &t_power));
    }
    MarkedIdeal::new(ring.canonical(&total), a)
}

pub fn factorial(a: u64) -> u64 {
    (1..=a).product()
}

/// `C(I, a) = sum_{i<a} D^(<=i)(I)^(a!/(a-i))` with mark `a!`.
pub fn coefficient_ideal(scope: Scope<'_>, m: &MarkedIdeal) -> MarkedIdeal {
    let ring = scope.chart.ring();
    let a = m.mark;
    let fa = factorial(a);
    let mut total: Vec<Poly> = Vec::new();
    for i in 0..a {
        let di = scope.derive(&m.ideal, i);
        total = ideal_sum(&total, &ring_power(&ring, &di, fa / (a - i)));
        total = ring.canonical(&total);
    }
    MarkedIdeal::new(total, fa)
}

/// `sum (I_i, a_i) = (sum I_i^(prod a / a_i), prod a)`.
pub fn marked_sum(scope: Scope<'_>, list: &[MarkedIdeal]) -> MarkedIdeal {
    let ring = scope.chart.ring();
    let prod: u64 = list.iter().map(|m| m.mark).product();
    let mut total: Vec<Poly> = Vec::new();
    for m in list {
        total = ideal_sum(&total, &ring_power(&ring, &m.ideal, prod / m.mark));
    }
    MarkedIdeal::new(ring.canonical(&total), prod)
}

/// `prod (I_i, a_i) = (prod I_i, sum a_i)`.
pub fn marked_product(scope: Scope<'_>, list: &[MarkedIdeal]) -> MarkedIdeal {
    let ring = scope.chart.ring();
    let mut total = vec![Poly::one(scope.chart.nvars())];
    for m in list {
        total = ring.canonical(&ideal_product(&total, &m.ideal));
    }
    MarkedIdeal::new(total, list.iter().map(|m| m.mark).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toroidal_chart::Chart;

    #[test]
    fn homogenization_examples() {
        let c = Chart::affine("c", &["x", "y"]);
        let h = homogenize(Scope::full(&c), &MarkedIdeal::new(c.parse_all(&["x*y"]).unwrap(), 2));
        assert!(c.ring().equal(&h.ideal, &c.parse_all(&["x^2", "x*y", "y^2"]).unwrap()));
        let i = c.parse_all(&["x^3 + y"]).unwrap();
        assert!(c.ring().equal(&homogenize(Scope::full(&c), &MarkedIdeal::new(i.clone(), 1)).ideal, &i));
    }

    #[test]
    fn coefficient_ideal_examples() {
        let c = Chart::smooth("c", &["x"], &["u"]);
        let s = Scope::full(&c);
        let i = c.parse_all(&["x^3", "x*u^3", "u^6"]).unwrap();
        let ci = coefficient_ideal(s, &MarkedIdeal::new(i, 3));
        assert_eq!(ci.mark, 6);
        assert!(c.ring().equal(&ci.ideal, &c.parse_all(&["x^6", "x^4*u^3", "x^2*u^6", "u^9"]).unwrap()));
        let j = c.parse_all(&["x^2", "u"]).unwrap();
        let cj = coefficient_ideal(s, &MarkedIdeal::new(j.clone(), 2));
        assert_eq!(cj.mark, 2);
        assert!(c.ring().equal(&cj.ideal, &j));
        let k = c.parse_all(&["x + u^2"]).unwrap();
        assert!(c.ring().equal(&coefficient_ideal(s, &MarkedIdeal::new(k.clone(), 1)).ideal, &k));
    }

    #[test]
    fn sums_and_products() {
        let c = Chart::affine("c", &["x", "y"]);
        let s = Scope::full(&c);
        let i = MarkedIdeal::new(c.parse_all(&["x"]).unwrap(), 2);
        let j = MarkedIdeal::new(c.parse_all(&["y"]).unwrap(), 3);
        let sum = marked_sum(s, &[i.clone(), j.clone()]);
        assert_eq!(sum.mark, 6);
        assert!(c.ring().equal(&sum.ideal, &c.parse_all(&["x^3", "y^2"]).unwrap()));
        let prod = marked_product(s, &[i.clone(), j.clone()]);
        assert_eq!(prod.mark, 5);
        assert!(c.ring().equal(&prod.ideal, &c.parse_all(&["x*y"]).unwrap()));
        let one = marked_sum(s, &[MarkedIdeal::new(i.ideal.clone(), 1), MarkedIdeal::new(j.ideal.clone(), 1)]);
        assert!(c.ring().equal(&one.ideal, &c.parse_all(&["x", "y"]).unwrap()));
    }
}
