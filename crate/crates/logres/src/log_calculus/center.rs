//! Kummer centers, integral closures of their powers and admissibility.

use super::marked::MarkedIdeal;
use crate::error::{Error, Result};
use crate::exact_algebra::ideal_product;
use crate::monoid_lattice::lattice::{as_integers, to_rational_vec};
use crate::monoid_lattice::{minimalize, monoid_saturate_ideal, Vector};
use crate::toroidal_chart::{kummer_cover, Chart, KummerCover};
use crate::{Poly, Rational};

/// The center `(x_i : i in ordinary) + N^(1/root)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerCenter {
    pub ordinary: Vec<usize>,
    pub monomial: Vec<Vector>,
    pub root: i64,
}

impl KummerCenter {
    pub fn new(ordinary: Vec<usize>, monomial: Vec<Vector>, root: i64) -> Self {
        assert!(root >= 1, "root index is positive");
        let mut ord: Vec<usize> = Vec::new();
        for i in ordinary {
            if !ord.contains(&i) {
                ord.push(i);
            }
        }
        KummerCenter { ordinary: ord, monomial, root }
    }

    pub fn is_empty(&self) -> bool {
        self.ordinary.is_empty() && self.monomial.is_empty()
    }

    /// True when some generator is a unit, so the center is the whole chart.
    pub fn is_whole_chart(&self) -> bool {
        self.monomial.iter().any(|v| v.iter().all(|&x| x == 0))
    }

    /// Minimal monomial generators in graded order.
    pub fn normalized(&self, chart: &Chart) -> KummerCenter {
        let mono = if chart.rank == 0 { self.monomial.clone() } else { minimalize(chart.cone(), &self.monomial) };
        KummerCenter { ordinary: self.ordinary.clone(), monomial: mono, root: self.root }
    }

    /// Text such as `(x, u^(1/2))`.
    pub fn describe(&self, chart: &Chart) -> String {
        let mut parts: Vec<String> = self.ordinary.iter().map(|&i| chart.names()[i].clone()).collect();
        for v in &self.monomial {
            parts.push(describe_root(chart, v, self.root));
        }
        format!("({})", parts.join(", "))
    }
}

/// Formats `m^(1/d)` for the monomial of `v`.
pub fn describe_root(chart: &Chart, v: &[i64], d: i64) -> String {
    let m = chart.monomial_poly(v).map(|p| chart.format(&p)).unwrap_or_else(|| format!("{v:?}"));
    if d == 1 {
        return m;
    }
    let single = chart.monomial_exponents(v).filter(|e| e.iter().filter(|&&k| k > 0).count() == 1).map(|e| {
        let (j, k) = e.iter().enumerate().find(|(_, k)| **k > 0).expect("one nonzero exponent");
        (j, i64::from(*k))
    });
    match single {
        Some((j, k)) => {
            let g = num_integer::Integer::gcd(&k, &d);
            let (p, q) = (k / g, d / g);
            let name = &chart.monomial[j];
            if q == 1 {
                if p == 1 {
                    name.clone()
                } else {
                    format!("{name}^{p}")
                }
            } else {
                format!("{name}^({p}/{q})")
            }
        }
        None => format!("({m})^(1/{d})"),
    }
}

/// Monomials of the ordinary variables of total degree `k`.
fn ordinary_power(chart: &Chart, vars: &[usize], k: u64) -> Vec<Poly> {
    let mut acc = vec![Poly::one(chart.nvars())];
    for _ in 0..k {
        let mut next: Vec<Poly> = Vec::new();
        for p in &acc {
            for &v in vars {
                let q = p * &chart.var(v);
                if !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        acc = next;
    }
    acc
}

/// `(J^a)^nor` on the Kummer cover where `N^(1/d)` becomes integral:
/// `sum_j (N^j/d)^sat * (ordinary part)^(a-j)`.
pub fn integral_closure_of_center_power(
    chart: &Chart,
    center: &KummerCenter,
    a: u64,
) -> Result<(KummerCover, Vec<Poly>)> {
    let cover = kummer_cover(chart, &center.monomial, center.root, &[])?;
    let c = &cover.chart;
    let roots: Vec<Vector> = center
        .monomial
        .iter()
        .map(|v| {
            let q = cover.change.to_new_rational(&to_rational_vec(v));
            let d = Rational::from_integer(center.root.into());
            let scaled: Vec<Rational> = q.iter().map(|x| x / &d).collect();
            as_integers(&scaled).expect("root is integral on the cover")
        })
        .collect();
    let ordinary: Vec<usize> = center.ordinary.clone();
    let mut total: Vec<Poly> = Vec::new();
    let mut nj: Vec<Vector> = vec![vec![0; c.rank]];
    for j in 0..=a {
        if j > 0 {
            if roots.is_empty() {
                break;
            }
            let mut next: Vec<Vector> = Vec::new();
            for p in &nj {
                for r in &roots {
                    next.push(p.iter().zip(r).map(|(x, y)| x + y).collect());
                }
            }
            nj = if c.rank == 0 { vec![vec![]] } else { minimalize(c.cone(), &next) };
        }
        let sat = if c.rank == 0 { nj.clone() } else { monoid_saturate_ideal(c.cone(), &nj) };
        let monos: Vec<Poly> = sat.iter().map(|v| c.monomial_poly(v).expect("monoid element")).collect();
        let ords = ordinary_power(c, &ordinary, a - j);
        total.extend(ideal_product(&monos, &ords));
    }
    let ideal = c.ring().canonical(&total);
    Ok((cover, ideal))
}

/// `I ⊆ (J^a)^nor`, tested on the Kummer cover.
pub fn is_admissible(chart: &Chart, m: &MarkedIdeal, center: &KummerCenter) -> Result<bool> {
    if center.is_empty() {
        return Err(Error::EmptyCenter);
    }
    let (cover, closure) = integral_closure_of_center_power(chart, center, m.mark)?;
    let pulled = cover.map.apply_all(&m.ideal);
    Ok(cover.chart.ring().contains_all(&closure, &pulled))
}
