//! Chart-level Kummer blowups, controlled and strict transforms, and
//! pushforward of centers along a maximal contact chain.

use crate::error::{Error, Result};
use crate::exact_algebra::Ring;
use crate::log_calculus::{describe_root, KummerCenter, MarkedIdeal};
use crate::monoid_lattice::lattice::{as_integers, dot_rational, integral_direction, to_rational_vec};
use crate::monoid_lattice::{hilbert_basis, refine_lattice, LatticeChange, Vector};
use crate::toroidal_chart::{Character, Chart, ChartMap, Provenance};
use crate::{Poly, Rational};

/// One chart of a Kummer blowup.
#[derive(Clone, Debug)]
pub struct BlowupChart {
    pub chart: Chart,
    /// Pullback from the parent chart ring.
    pub map: ChartMap,
    /// The exceptional monomial `m_E` generating the pulled back center.
    pub exceptional: Poly,
    pub exceptional_vector: Vector,
    /// The center generator whose chart this is, e.g. `x` or `u^(1/2)`.
    pub generator: String,
}

/// All charts of one blowup.
#[derive(Clone, Debug)]
pub struct BlowupResult {
    pub parent: String,
    pub center: KummerCenter,
    pub charts: Vec<BlowupChart>,
    /// True when the center has a single generator, so the blowup only
    /// enlarges the log structure or extracts a root.
    pub trivial: bool,
}

enum Generator {
    Ordinary(usize),
    Root(Vector),
}

const FRESH: [&str; 7] = ["v", "w", "s", "t", "p", "q", "r"];
const FRESH_ROOT: [&str; 7] = ["w", "v", "s", "t", "p", "q", "r"];

fn pick_name(preferred: &[&str], avoid: &[String]) -> String {
    for n in preferred {
        if !avoid.iter().any(|a| a == n) {
            return n.to_string();
        }
    }
    (1..).map(|i| format!("z{i}")).find(|n| !avoid.contains(n)).expect("infinitely many names")
}

/// Blows up `center` on `chart`, one chart per center generator (ordinary
/// coordinates first, then minimal monomial roots in graded order).
pub fn blow_up(chart: &Chart, center: &KummerCenter) -> Result<BlowupResult> {
    if center.is_empty() || center.is_whole_chart() {
        return Err(Error::EmptyCenter);
    }
    for &i in &center.ordinary {
        if !chart.is_ordinary(i) {
            return Err(Error::Invalid(format!("center coordinate {i} is not ordinary")));
        }
    }
    for v in &center.monomial {
        if v.len() != chart.rank || !chart.in_monoid(v) {
            return Err(Error::Invalid(format!("center monomial {v:?} is not in the monoid")));
        }
    }
    let center = center.normalized(chart);
    let mut gens: Vec<Generator> = center.ordinary.iter().map(|&i| Generator::Ordinary(i)).collect();
    gens.extend(center.monomial.iter().cloned().map(Generator::Root));
    let trivial = gens.len() == 1;
    let mut charts = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let built = match g {
            Generator::Ordinary(s) => ordinary_chart(chart, &center, *s),
            Generator::Root(nu) => root_chart(chart, &center, nu),
        };
        match built {
            Ok(Some(mut bc)) => {
                bc.chart.id = format!("{}.{}", chart.id, k + 1);
                bc.chart.provenance = Some(Provenance {
                    parent: chart.id.clone(),
                    step: format!("blowup {} chart {}", center.describe(chart), bc.generator),
                });
                charts.push(bc);
            }
            Ok(None) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(BlowupResult { parent: chart.id.clone(), center, charts, trivial })
}

fn name_vectors(hb: &[Vector], kept: &[(Vector, String)], root: Option<&Vector>, ordinary: &[String]) -> Vec<String> {
    let mut names: Vec<Option<String>> =
        hb.iter().map(|h| kept.iter().find(|(v, _)| v == h).map(|(_, n)| n.clone())).collect();
    let mut avoid: Vec<String> = ordinary.to_vec();
    avoid.extend(names.iter().flatten().cloned());
    for (h, slot) in hb.iter().zip(names.iter_mut()) {
        if slot.is_none() {
            let list: &[&str] = if Some(h) == root { &FRESH_ROOT } else { &FRESH };
            let n = pick_name(list, &avoid);
            avoid.push(n.clone());
            *slot = Some(n);
        }
    }
    names.into_iter().map(|n| n.expect("every vector named")).collect()
}

fn monomial_in(chart: &Chart, v: &[i64]) -> Poly {
    chart.monomial_poly(v).expect("vector lies in the chart monoid")
}

/// Chart where the ordinary center coordinate `x_s` generates the center.
fn ordinary_chart(chart: &Chart, center: &KummerCenter, s: usize) -> Result<Option<BlowupChart>> {
    let r = chart.rank;
    let d = center.root;
    let lift = |v: &Vector| {
        let mut w = v.clone();
        w.push(0);
        w
    };
    let ex: Vector = (0..=r).map(|i| i64::from(i == r)).collect();
    let mut cone_gens: Vec<Vector> = chart.vectors.iter().map(lift).collect();
    cone_gens.push(ex.clone());
    for nu in &center.monomial {
        let mut w = nu.clone();
        w.push(-d);
        cone_gens.push(w);
    }
    let hb = hilbert_basis(r + 1, &cone_gens)?;
    let ordinary: Vec<String> =
        chart.ordinary.iter().enumerate().filter(|(i, _)| *i != s).map(|(_, n)| n.clone()).collect();
    let mut kept: Vec<(Vector, String)> =
        chart.vectors.iter().zip(&chart.monomial).map(|(v, n)| (lift(v), n.clone())).collect();
    kept.push((ex.clone(), chart.ordinary[s].clone()));
    let names = name_vectors(&hb, &kept, None, &ordinary);
    let characters: Vec<Character> = chart
        .characters
        .iter()
        .map(|c| {
            let ws = c.ordinary[s].clone();
            let mut lattice = c.lattice.clone();
            lattice.push(ws.clone());
            let ord = (0..chart.ordinary.len())
                .filter(|&t| t != s)
                .map(|t| if center.ordinary.contains(&t) { &c.ordinary[t] - &ws } else { c.ordinary[t].clone() })
                .collect();
            Character { lattice, ordinary: ord }
        })
        .collect();
    let new = Chart::with_data(chart.id.clone(), ordinary, names, r + 1, hb, characters, Vec::new())?;
    let e_poly = monomial_in(&new, &ex);
    let total = new.nvars();
    let mut images: Vec<Poly> = Vec::with_capacity(chart.nvars());
    for t in 0..chart.ordinary.len() {
        let img = if t == s {
            e_poly.clone()
        } else {
            let idx = if t < s { t } else { t - 1 };
            let v = Poly::var(total, idx);
            if center.ordinary.contains(&t) {
                &v * &e_poly
            } else {
                v
            }
        };
        images.push(img);
    }
    for v in &chart.vectors {
        images.push(monomial_in(&new, &lift(v)));
    }
    finish(chart, new, ChartMap { images }, e_poly, ex, chart.ordinary[s].clone())
}

/// Chart where the monomial root `nu^(1/d)` generates the center.
fn root_chart(chart: &Chart, center: &KummerCenter, nu: &Vector) -> Result<Option<BlowupChart>> {
    let r = chart.rank;
    let d = center.root;
    let (change, new_form) = match refine_lattice(nu, d) {
        Some((ch, _, form)) => (ch, Some(form)),
        None => (LatticeChange::identity(r), None),
    };
    let dq = Rational::from_integer(d.into());
    let to_new = |v: &Vector| change.to_new_rational(&to_rational_vec(v));
    let g: Vector = as_integers(&to_new(nu).iter().map(|x| x / &dq).collect::<Vec<_>>())
        .expect("adjoined root is integral in the refined lattice");
    let images_old: Vec<Vector> = chart.vectors.iter().map(|v| change.to_new(v)).collect();
    let mut cone_gens = images_old.clone();
    cone_gens.push(g.clone());
    for other in &center.monomial {
        if other != nu {
            let diff: Vector = other.iter().zip(nu).map(|(a, b)| a - b).collect();
            cone_gens.push(integral_direction(&to_new(&diff)));
        }
    }
    let hb = match hilbert_basis(r, &cone_gens) {
        Ok(hb) => hb,
        // the generator is not a vertex of the Newton polyhedron: its chart
        // is covered by the others
        Err(Error::NotSharp) => return Ok(None),
        Err(e) => return Err(e),
    };
    let kept: Vec<(Vector, String)> = images_old.iter().cloned().zip(chart.monomial.iter().cloned()).collect();
    let names = name_vectors(&hb, &kept, Some(&g), &chart.ordinary);
    let mut characters: Vec<Character> = chart
        .characters
        .iter()
        .map(|c| {
            let lattice = change.form_to_new(&c.lattice);
            let wg = dot_rational(&lattice, &g);
            let ord = (0..chart.ordinary.len())
                .map(|t| if center.ordinary.contains(&t) { &c.ordinary[t] - &wg } else { c.ordinary[t].clone() })
                .collect();
            Character { lattice, ordinary: ord }
        })
        .collect();
    if let Some(form) = new_form {
        let wg = dot_rational(&form, &g);
        let ord = (0..chart.ordinary.len())
            .map(|t| if center.ordinary.contains(&t) { -wg.clone() } else { Rational::from_integer(0.into()) })
            .collect();
        characters.push(Character { lattice: form, ordinary: ord });
    }
    let new = Chart::with_data(chart.id.clone(), chart.ordinary.clone(), names, r, hb, characters, Vec::new())?;
    let e_poly = monomial_in(&new, &g);
    let total = new.nvars();
    let mut images: Vec<Poly> = (0..chart.ordinary.len())
        .map(|t| {
            let v = Poly::var(total, t);
            if center.ordinary.contains(&t) {
                &v * &e_poly
            } else {
                v
            }
        })
        .collect();
    for w in &images_old {
        images.push(monomial_in(&new, w));
    }
    let label = describe_root(chart, nu, d);
    finish(chart, new, ChartMap { images }, e_poly, g, label)
}

fn finish(
    parent: &Chart,
    mut new: Chart,
    map: ChartMap,
    exceptional: Poly,
    exceptional_vector: Vector,
    generator: String,
) -> Result<Option<BlowupChart>> {
    new.inverted = map.apply_all(&parent.inverted);
    Ok(Some(BlowupChart { chart: new, map, exceptional, exceptional_vector, generator }))
}

impl BlowupChart {
    /// Pullback of generators from the parent chart.
    pub fn pullback(&self, gens: &[Poly]) -> Vec<Poly> {
        self.map.apply_all(gens)
    }

    /// `m_E^a`.
    pub fn exceptional_power(&self, a: u64) -> Poly {
        self.exceptional.pow(u32::try_from(a).expect("mark fits in u32"))
    }

    /// Exact division of pulled back generators by `m_E^a`.
    pub fn divide(&self, pulled: &[Poly], a: u64) -> Result<Vec<Poly>> {
        let ring = self.chart.ring();
        let ea = self.exceptional_power(a);
        let exps = ea.terms().first().map(|t| t.exps.clone()).unwrap_or_default();
        let fast: Option<Vec<Poly>> = pulled.iter().map(|f| f.div_monomial(&exps)).collect();
        if let Some(q) = fast {
            return Ok(ring.canonical(&q));
        }
        if !ring.contains_all(std::slice::from_ref(&ea), pulled) {
            return Err(Error::NotDivisible(format!(
                "[{}] by {}",
                self.chart.format_all(pulled).join(", "),
                self.chart.format(&ea)
            )));
        }
        Ok(ring.colon(pulled, &ea))
    }
}

/// `sigma^c(I, a) = m_E^(-a) * I O'` with the same mark.
pub fn controlled_transform(m: &MarkedIdeal, entry: &BlowupChart) -> Result<MarkedIdeal> {
    let pulled = entry.pullback(&m.ideal);
    Ok(MarkedIdeal::new(entry.divide(&pulled, m.mark)?, m.mark))
}

/// Saturation of the pullback by the exceptional monomial.
pub fn strict_transform(ideal: &[Poly], entry: &BlowupChart) -> Vec<Poly> {
    let pulled = entry.pullback(ideal);
    entry.chart.ring().saturate(&pulled, &entry.exceptional)
}

/// Center on the ambient chart from a center on the iterated hypersurface
/// cut out by the contact chain.
pub fn pushforward_center(chain: &[usize], on_hypersurface: &KummerCenter) -> KummerCenter {
    let mut ordinary = chain.to_vec();
    ordinary.extend(on_hypersurface.ordinary.iter().copied());
    KummerCenter::new(ordinary, on_hypersurface.monomial.clone(), on_hypersurface.root)
}

/// Checks that the pulled back center generates `(m_E)` on the chart, by
/// comparing `d`-th powers, which are functions on both charts.
pub fn exceptional_is_principal(parent: &Chart, center: &KummerCenter, entry: &BlowupChart) -> bool {
    let d = u32::try_from(center.root).expect("root index fits");
    let mut gens: Vec<Poly> = center.ordinary.iter().map(|&i| parent.var(i).pow(d)).collect();
    for v in &center.monomial {
        gens.push(parent.monomial_poly(v).expect("monoid element"));
    }
    let pulled = entry.pullback(&gens);
    let ed = entry.exceptional.pow(d);
    let ring: Ring<Rational> = entry.chart.ring();
    ring.contains_all(std::slice::from_ref(&ed), &pulled) && ring.contains(&pulled, &ed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::ideal::basis;
    use crate::log_calculus::{max_logord, Order, Scope};

    fn xu() -> Chart {
        Chart::smooth("c", &["x"], &["u"])
    }

    fn same_relations(c: &Chart, expected: &[&str]) -> bool {
        basis(&c.relations) == basis(&c.parse_all(expected).unwrap())
    }

    #[test]
    fn blowup_of_x_and_u_squared() {
        let c = xu();
        let center = KummerCenter::new(vec![0], vec![vec![2]], 1);
        let b = blow_up(&c, &center).unwrap();
        assert_eq!(b.charts.len(), 2);
        let xc = &b.charts[0];
        assert!(same_relations(&xc.chart, &["x*v - u^2"]));
        assert_eq!(xc.chart.format(&xc.exceptional), "x");
        let uc = &b.charts[1];
        assert!(uc.chart.relations.is_empty());
        assert_eq!(uc.chart.format(&uc.exceptional), "u^2");
        let m = MarkedIdeal::new(c.parse_all(&["u^2", "x"]).unwrap(), 1);
        for e in &b.charts {
            assert!(exceptional_is_principal(&c, &b.center, e));
            let t = controlled_transform(&m, e).unwrap();
            assert!(e.chart.ring().is_unit(&t.ideal));
        }
    }

    #[test]
    fn kummer_blowup_of_x_and_root_u() {
        let c = xu();
        let center = KummerCenter::new(vec![0], vec![vec![1]], 2);
        let b = blow_up(&c, &center).unwrap();
        assert_eq!(b.charts.len(), 2);
        let xc = &b.charts[0];
        assert_eq!(xc.chart.format(&xc.map.apply(&c.parse("u").unwrap())), "x^2*v");
        assert!(xc.chart.characters.is_empty());
        let wc = &b.charts[1];
        assert_eq!(wc.chart.names(), vec!["x", "w"]);
        assert_eq!(wc.chart.character_display(), vec![(2, vec![1, 1])]);
        assert_eq!(wc.chart.format(&wc.exceptional), "w");
        let m = MarkedIdeal::new(c.parse_all(&["x^2", "u"]).unwrap(), 2);
        for e in &b.charts {
            assert!(exceptional_is_principal(&c, &b.center, e));
            let t = controlled_transform(&m, e).unwrap();
            assert!(e.chart.ring().is_unit(&t.ideal));
        }
        let z = strict_transform(&c.parse_all(&["x"]).unwrap(), wc);
        assert_eq!(wc.chart.format_all(&z), vec!["x"]);
    }

    #[test]
    fn blowup_of_two_monomials() {
        let c = Chart::smooth("c", &[], &["u", "v"]);
        let b = blow_up(&c, &KummerCenter::new(vec![], vec![vec![1, 0], vec![0, 1]], 1)).unwrap();
        assert_eq!(b.charts.len(), 2);
        let uc = &b.charts[0];
        assert_eq!(uc.chart.format(&uc.exceptional), "u");
        assert!(uc.chart.relations.is_empty());
        let st = strict_transform(&c.parse_all(&["u - v"]).unwrap(), uc);
        assert!(uc.chart.ring().equal(&st, &uc.chart.parse_all(&["1 - v"]).unwrap()));
        assert_eq!(b.charts[1].chart.format(&b.charts[1].exceptional), "v");
    }

    #[test]
    fn notenough_center() {
        let c = xu();
        let center = pushforward_center(&[0], &KummerCenter::new(vec![], vec![vec![3]], 2));
        assert_eq!(center, KummerCenter::new(vec![0], vec![vec![3]], 2));
        let b = blow_up(&c, &center).unwrap();
        let m = MarkedIdeal::new(c.parse_all(&["x^3", "x*u^3", "u^6"]).unwrap(), 3);
        let tx = controlled_transform(&m, &b.charts[0]).unwrap();
        assert!(b.charts[0].chart.ring().is_unit(&tx.ideal));
        let wc = &b.charts[1];
        let tw = controlled_transform(&m, wc).unwrap();
        assert_eq!(wc.chart.names(), vec!["x", "v"]);
        assert_eq!(wc.chart.format(&wc.exceptional), "v^3");
        assert!(wc.chart.ring().equal(&tw.ideal, &wc.chart.parse_all(&["x", "v^3"]).unwrap()));
        assert_eq!(max_logord(Scope::full(&wc.chart), &tw.ideal), Order::Finite(1));
        let bad = MarkedIdeal::new(c.parse_all(&["x"]).unwrap(), 2);
        assert!(matches!(controlled_transform(&bad, &b.charts[0]), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn empty_centers_are_rejected() {
        let c = xu();
        assert!(matches!(blow_up(&c, &KummerCenter::new(vec![], vec![], 1)), Err(Error::EmptyCenter)));
        assert!(matches!(blow_up(&c, &KummerCenter::new(vec![], vec![vec![0]], 1)), Err(Error::EmptyCenter)));
        assert!(pushforward_center(&[], &KummerCenter::new(vec![], vec![vec![1]], 2)).ordinary.is_empty());
    }
}
