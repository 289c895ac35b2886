//! Chart operations: restriction to a coordinate hypersurface or a
//! logarithmic stratum, coordinate substitution, free variable extension
//! and Kummer cover pullback.

use num_traits::{One, Zero};

use super::chart::{fresh_name, Character, Chart, ChartMap};
use crate::error::{Error, Result};
use crate::monoid_lattice::monoid::span_lattice;
use crate::monoid_lattice::{coordinates_in, decompose, kummer_refine, LatticeChange, Vector};
use crate::{Poly, Rational};

/// Removes the ordinary variable `x` and sets it to zero in `gens`. Fails
/// when an inverted element vanishes on `x = 0`.
pub fn restrict_to_hypersurface(chart: &Chart, x: usize, gens: &[Poly]) -> Result<(Chart, Vec<Poly>)> {
    if !chart.is_ordinary(x) {
        return Err(Error::Invalid(format!("variable {x} is not ordinary")));
    }
    let n = chart.nvars();
    let map: Vec<Option<usize>> = (0..n)
        .map(|i| match i.cmp(&x) {
            std::cmp::Ordering::Less => Some(i),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(i - 1),
        })
        .collect();
    let restrict = |f: &Poly| f.set_zero(x).remap(n - 1, &map);
    let mut ordinary = chart.ordinary.clone();
    ordinary.remove(x);
    let characters = chart
        .characters
        .iter()
        .map(|c| {
            let mut ord = c.ordinary.clone();
            ord.remove(x);
            Character { lattice: c.lattice.clone(), ordinary: ord }
        })
        .collect();
    let mut inverted = Vec::new();
    for f in chart.inverted.iter().map(restrict) {
        if f.is_zero() {
            return Err(Error::Invalid(format!("{} = 0 misses the chart {}", chart.ordinary[x], chart.id)));
        }
        if !f.is_nonzero_constant() {
            inverted.push(f.monic());
        }
    }
    let mut sub = Chart::with_data(
        format!("{}|{}", chart.id, chart.ordinary[x]),
        ordinary,
        chart.monomial.clone(),
        chart.rank,
        chart.vectors.clone(),
        characters,
        inverted,
    )?;
    sub.provenance = chart.provenance.clone();
    let ideal = sub.ring().canonical(&gens.iter().map(restrict).collect::<Vec<_>>());
    Ok((sub, ideal))
}

/// Restricts to the logarithmic stratum where the monomial variables
/// `zs` vanish. The remaining generators must be exactly the generators on
/// a face of the cone; they are re-expressed in the lattice the face spans.
pub fn restrict_to_stratum(chart: &Chart, zs: &[usize], gens: &[Poly]) -> Result<(Chart, Vec<Poly>)> {
    let n = chart.ordinary.len();
    if let Some(z) = zs.iter().find(|&&z| z < n || z >= chart.nvars()) {
        return Err(Error::Invalid(format!("variable {z} is not monomial")));
    }
    let kept: Vec<usize> = (0..chart.monomial.len()).filter(|j| !zs.contains(&(n + j))).collect();
    let face: Vec<Vector> = kept.iter().map(|&j| chart.vectors[j].clone()).collect();
    let walls: Vec<&Vector> = chart
        .cone()
        .facets()
        .iter()
        .filter(|f| face.iter().all(|v| crate::monoid_lattice::lattice::dot(f, v) == 0))
        .collect();
    let on_face = |v: &Vector| walls.iter().all(|f| crate::monoid_lattice::lattice::dot(f, v) == 0);
    if zs.is_empty() || chart.vectors.iter().filter(|v| on_face(v)).count() != kept.len() {
        return Err(Error::Invalid("the vanishing variables do not cut out a logarithmic stratum".into()));
    }
    let rank = crate::monoid_lattice::lattice::rank(&face);
    let basis = if rank == 0 { Vec::new() } else { span_lattice(chart.rank, &face) };
    let vectors: Vec<Vector> = face
        .iter()
        .map(|v| coordinates_in(&basis, v).ok_or_else(|| Error::Invalid("face generator outside its lattice".into())))
        .collect::<Result<_>>()?;
    let characters = chart
        .characters
        .iter()
        .map(|c| Character {
            lattice: basis.iter().map(|b| crate::monoid_lattice::lattice::dot_rational(&c.lattice, b)).collect(),
            ordinary: c.ordinary.clone(),
        })
        .collect();
    let total = chart.nvars();
    let mut map: Vec<Option<usize>> = Vec::with_capacity(total);
    let mut next = 0;
    for i in 0..total {
        if zs.contains(&i) {
            map.push(None);
        } else {
            map.push(Some(next));
            next += 1;
        }
    }
    let restrict = |f: &Poly| zs.iter().fold(f.clone(), |g, &z| g.set_zero(z)).remap(next, &map);
    let names = chart.names();
    let shown: Vec<&str> = zs.iter().map(|&z| names[z].as_str()).collect();
    let mut inverted = Vec::new();
    for f in chart.inverted.iter().map(restrict) {
        if f.is_zero() {
            return Err(Error::Invalid(format!("the stratum {} = 0 misses the chart {}", shown.join(" = "), chart.id)));
        }
        if !f.is_nonzero_constant() {
            inverted.push(f.monic());
        }
    }
    let mut sub = Chart::with_data(
        format!("{}|{}", chart.id, shown.join(",")),
        chart.ordinary.clone(),
        kept.iter().map(|&j| chart.monomial[j].clone()).collect(),
        rank,
        vectors,
        characters,
        inverted,
    )?;
    sub.provenance = chart.provenance.clone();
    let ideal = sub.ring().canonical(&gens.iter().map(restrict).collect::<Vec<_>>());
    Ok((sub, ideal))
}

/// The ring automorphism `x -> x - h`.
pub fn substitution_map(chart: &Chart, x: usize, h: &Poly) -> ChartMap {
    let images = (0..chart.nvars()).map(|i| if i == x { &chart.var(x) - h } else { chart.var(i) }).collect();
    ChartMap { images }
}

/// Applies `x -> x - h` to the generators. `h` must not involve `x`.
pub fn substitute_coordinate(chart: &Chart, x: usize, h: &Poly, gens: &[Poly]) -> Result<Vec<Poly>> {
    if !chart.is_ordinary(x) {
        return Err(Error::Invalid(format!("variable {x} is not ordinary")));
    }
    if !h.is_free_of(x) {
        return Err(Error::Invalid("substituted polynomial involves the coordinate".into()));
    }
    Ok(substitution_map(chart, x, h).apply_all(gens))
}

/// Adds a fresh ordinary variable after the existing ordinary ones and
/// returns the extended chart with `I + (x_new)`.
pub fn add_free_variable(chart: &Chart, name: &str, gens: &[Poly]) -> Result<(Chart, Vec<Poly>)> {
    let n = chart.ordinary.len();
    let total = chart.nvars();
    let map: Vec<Option<usize>> = (0..total).map(|i| Some(if i < n { i } else { i + 1 })).collect();
    let mut ordinary = chart.ordinary.clone();
    ordinary.push(name.to_string());
    let characters = chart
        .characters
        .iter()
        .map(|c| {
            let mut ord = c.ordinary.clone();
            ord.push(Rational::from_integer(0.into()));
            Character { lattice: c.lattice.clone(), ordinary: ord }
        })
        .collect();
    let inverted = chart.inverted.iter().map(|f| f.remap(total + 1, &map)).collect();
    let mut ext = Chart::with_data(
        chart.id.clone(),
        ordinary,
        chart.monomial.clone(),
        chart.rank,
        chart.vectors.clone(),
        characters,
        inverted,
    )?;
    ext.provenance = chart.provenance.clone();
    let mut ideal: Vec<Poly> = gens.iter().map(|f| f.remap(total + 1, &map)).collect();
    ideal.push(Poly::var(total + 1, n));
    Ok((ext, ideal))
}

/// Embedding of the chart ring into the extension by a free variable.
pub fn free_variable_map(chart: &Chart) -> ChartMap {
    let n = chart.ordinary.len();
    let total = chart.nvars();
    ChartMap { images: (0..total).map(|i| Poly::var(total + 1, if i < n { i } else { i + 1 })).collect() }
}

/// Result of pulling back along a Kummer cover.
#[derive(Clone, Debug)]
pub struct KummerCover {
    pub chart: Chart,
    pub map: ChartMap,
    pub change: LatticeChange,
    pub ideal: Vec<Poly>,
}

/// Pulls back along the cover extracting the `d`-th root of the monoid
/// element `m`.
pub fn kummer_cover_pullback(chart: &Chart, m: &[i64], d: i64, gens: &[Poly]) -> Result<KummerCover> {
    kummer_cover(chart, &[m.to_vec()], d, gens)
}

/// Pulls back along the cover extracting `d`-th roots of all `elements`.
pub fn kummer_cover(chart: &Chart, elements: &[Vector], d: i64, gens: &[Poly]) -> Result<KummerCover> {
    let refinement = kummer_refine(&chart.monoid(), elements, d)?;
    let new_vectors = refinement.monoid.generators.clone();
    let old_images: Vec<Vector> = chart.vectors.iter().map(|g| refinement.change.to_new(g)).collect();
    let mut used: Vec<String> = chart.ordinary.clone();
    let mut names: Vec<String> = Vec::new();
    for v in &new_vectors {
        let keep = old_images.iter().position(|w| w == v).map(|j| chart.monomial[j].clone());
        let name = keep.unwrap_or_else(|| {
            let mut avoid = used.clone();
            avoid.extend(chart.monomial.iter().cloned());
            fresh_name(&avoid)
        });
        used.push(name.clone());
        names.push(name);
    }
    let mut characters: Vec<Character> = chart
        .characters
        .iter()
        .map(|c| Character { lattice: refinement.change.form_to_new(&c.lattice), ordinary: c.ordinary.clone() })
        .collect();
    for (_, form) in &refinement.characters {
        characters.push(Character {
            lattice: form.clone(),
            ordinary: vec![Rational::from_integer(0.into()); chart.ordinary.len()],
        });
    }
    let n = chart.ordinary.len();
    let inverted_src = chart.inverted.clone();
    let mut cover = Chart::with_data(
        format!("{}[root]", chart.id),
        chart.ordinary.clone(),
        names,
        chart.rank,
        new_vectors.clone(),
        characters,
        Vec::new(),
    )?;
    let total = cover.nvars();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(total, i)).collect();
    for w in &old_images {
        let e = decompose(cover.cone(), &new_vectors, w).expect("old generator lies in refined monoid");
        let mut exps = vec![0u32; n];
        exps.extend(e);
        images.push(Poly::monomial(total, Rational::one(), exps));
    }
    let map = ChartMap { images };
    cover.inverted = map.apply_all(&inverted_src);
    cover.provenance = chart.provenance.clone();
    let ideal = cover.ring().canonical(&map.apply_all(gens));
    Ok(KummerCover { chart: cover, map, change: refinement.change, ideal })
}

/// Result of splitting off an invertible monomial variable.
#[derive(Clone, Debug)]
pub struct MonomialLocalization {
    pub chart: Chart,
    pub map: ChartMap,
    /// Index of the new ordinary variable `t` standing for `c*z + h`.
    pub coordinate: usize,
    /// The image of `z` is `map.images[z] / denominator`; the denominator
    /// is inverted on the new chart and equals one for constant `c`.
    pub denominator: Poly,
    /// Index of `z` on the source chart.
    pub variable: usize,
}

/// On the open set where the free monomial variable `z` and the coefficient
/// `c` are invertible, replaces `z` by the ordinary coordinate
/// `t = c*z + h` (so `z = (t - h)/c`).
///
/// `z` must be a free generator: it occurs in no relation and the remaining
/// generators span a lattice of rank one less. `c` and `h` must not involve
/// `z`; a non-constant `c` is only accepted on charts without characters.
pub fn localize_monomial_variable(chart: &Chart, z: usize, c: &Poly, h: &Poly) -> Result<MonomialLocalization> {
    let n = chart.ordinary.len();
    if z < n || z >= chart.nvars() {
        return Err(Error::Invalid(format!("variable {z} is not monomial")));
    }
    if !h.is_free_of(z) || !c.is_free_of(z) || c.is_zero() {
        return Err(Error::Invalid("split generator must be linear in the variable".into()));
    }
    let constant = c.is_nonzero_constant();
    if !constant && !chart.characters.is_empty() {
        return Err(Error::Invalid("non-constant split coefficient on a chart with characters".into()));
    }
    if chart.relations.iter().any(|r| !r.is_free_of(z)) {
        return Err(Error::Invalid("split variable occurs in a relation".into()));
    }
    let zj = z - n;
    let others: Vec<Vector> =
        chart.vectors.iter().enumerate().filter(|(j, _)| *j != zj).map(|(_, v)| v.clone()).collect();
    let span = span_lattice(chart.rank, &others);
    if span.len() + 1 != chart.rank && !(chart.rank == 1 && others.is_empty()) {
        return Err(Error::Invalid("split variable is not a free generator".into()));
    }
    let span = if others.is_empty() { Vec::new() } else { span };
    let new_vectors: Vec<Vector> = others
        .iter()
        .map(|v| coordinates_in(&span, v).ok_or_else(|| Error::Invalid("generator outside its span".into())))
        .collect::<Result<_>>()?;
    let mut ordinary = chart.ordinary.clone();
    let t_name = fresh_name(&chart.names());
    ordinary.push(t_name);
    let monomial: Vec<String> =
        chart.monomial.iter().enumerate().filter(|(j, _)| *j != zj).map(|(_, s)| s.clone()).collect();
    let characters: Vec<Character> = chart
        .characters
        .iter()
        .map(|ch| {
            let lattice = span
                .iter()
                .map(|b| {
                    b.iter()
                        .zip(&ch.lattice)
                        .fold(Rational::zero(), |acc, (x, q)| acc + q * Rational::from_integer((*x).into()))
                })
                .collect();
            let mut ord = ch.ordinary.clone();
            let mut e = vec![0u32; chart.nvars()];
            e[z] = 1;
            ord.push(ch.weight_of(chart, &e));
            Character { lattice, ordinary: ord }
        })
        .collect();
    let total = chart.nvars();
    let mut new = Chart::with_data(
        format!("{}:{}", chart.id, chart.names()[z]),
        ordinary,
        monomial,
        span.len(),
        new_vectors,
        characters,
        Vec::new(),
    )?;
    let t = n;
    let mut images: Vec<Poly> = Vec::with_capacity(total);
    for i in 0..total {
        let img = if i < n {
            Poly::var(total, i)
        } else if i == z {
            Poly::zero(total)
        } else if i < z {
            Poly::var(total, i + 1)
        } else {
            Poly::var(total, i)
        };
        images.push(img);
    }
    let h_image = h.substitute(&images);
    let c_image = c.substitute(&images);
    let numerator = &Poly::var(total, t) - &h_image;
    let denominator = if constant {
        let inv_c = Rational::one() / c.terms()[0].coeff.clone();
        images[z] = numerator.scale(&inv_c);
        Poly::one(total)
    } else {
        images[z] = numerator;
        c_image
    };
    let map = ChartMap { images };
    let mut inverted: Vec<Poly> = chart.inverted.iter().map(|f| fraction_apply(&map, z, &denominator, f)).collect();
    inverted.push(map.images[z].monic());
    if !constant {
        inverted.push(denominator.monic());
    }
    new.inverted = inverted;
    new.provenance = chart.provenance.clone();
    Ok(MonomialLocalization { chart: new, map, coordinate: t, denominator, variable: z })
}

impl MonomialLocalization {
    /// Image of `f`, up to a power of the inverted denominator.
    pub fn apply(&self, f: &Poly) -> Poly {
        fraction_apply(&self.map, self.variable, &self.denominator, f)
    }
}

/// `f` with `x_z -> images[z] / d` and other variables by `images`,
/// multiplied by `d^(deg_z f)`.
pub fn fraction_apply(map: &ChartMap, z: usize, d: &Poly, f: &Poly) -> Poly {
    let k = f.degree_in(z);
    if d.is_nonzero_constant() || k == 0 {
        return map.apply(f);
    }
    let nv = d.nvars();
    let mut out = Poly::zero(nv);
    for term in f.terms() {
        let e = term.exps[z];
        let single = Poly::monomial(f.nvars(), term.coeff.clone(), term.exps.clone());
        out = &out + &(&map.apply(&single) * &d.pow(k - e));
    }
    out
}

/// Result of inverting a monomial generator `z` spanning an extremal ray
/// and trading it for the ordinary coordinate `t = c*z + h`.
#[derive(Clone, Debug)]
pub struct RayLocalization {
    pub chart: Chart,
    /// Index of `t` on the new chart.
    pub coordinate: usize,
    /// The unit `z = (t - h)/c` on the new chart.
    pub unit: Poly,
    /// Image of each source variable as a monomial times a power of `z`.
    pub images: Vec<(Poly, i64)>,
}

/// On `D(z)` the monoid becomes `M' x Z z` with `M'` the image of the
/// monoid modulo `z`; the new chart has the generators of `M'` as monomial
/// variables and `t = c*z + h` as an extra ordinary coordinate.
///
/// `z` must span an extremal ray of the cone, `c` must be a nonzero
/// constant, `h` a polynomial in the ordinary variables, and the chart must
/// carry no characters.
pub fn localize_ray_generator(chart: &Chart, z: usize, c: &Rational, h: &Poly) -> Result<RayLocalization> {
    let n = chart.ordinary.len();
    if z < n || z >= chart.nvars() {
        return Err(Error::Invalid(format!("variable {z} is not monomial")));
    }
    if c.is_zero() || !chart.characters.is_empty() {
        return Err(Error::Invalid("ray localization needs a constant coefficient and no characters".into()));
    }
    if h.terms().iter().any(|t| t.exps[n..].iter().any(|&e| e > 0)) {
        return Err(Error::Invalid("the rest of the split generator involves monomial variables".into()));
    }
    let vz = &chart.vectors[z - n];
    if !chart.cone().extreme_rays().contains(vz) {
        return Err(Error::Invalid(format!("{} does not span an extremal ray", chart.names()[z])));
    }
    let u = crate::monoid_lattice::lattice::unimodular_to_first(vz)
        .ok_or_else(|| Error::Invalid("ray generator is not primitive".into()))?;
    let coords: Vec<Vector> = chart
        .vectors
        .iter()
        .map(|v| u.iter().map(|row| crate::monoid_lattice::lattice::dot(row, v)).collect())
        .collect();
    let projected: Vec<Vector> = coords.iter().map(|c| c[1..].to_vec()).filter(|p| p.iter().any(|&x| x != 0)).collect();
    let rank = chart.rank - 1;
    let hb = if rank == 0 { Vec::new() } else { crate::monoid_lattice::hilbert_basis(rank, &projected)? };
    let mut names: Vec<String> = Vec::new();
    let mut used = chart.names();
    for g in &hb {
        let reuse = chart
            .monomial
            .iter()
            .zip(&coords)
            .enumerate()
            .find(|(j, (name, cj))| *j != z - n && &cj[1..] == g.as_slice() && !names.contains(name))
            .map(|(_, (name, _))| name.clone());
        let name = reuse.unwrap_or_else(|| {
            let f = fresh_name(&used);
            used.push(f.clone());
            f
        });
        names.push(name);
    }
    used.extend(names.iter().cloned());
    let t_name = fresh_name(&used);
    let mut ordinary = chart.ordinary.clone();
    ordinary.push(t_name);
    let new = Chart::with_data(
        format!("{}:{}", chart.id, chart.names()[z]),
        ordinary,
        names,
        rank,
        hb,
        Vec::new(),
        Vec::new(),
    )?;
    let total = new.nvars();
    let t = n;
    let embed: Vec<Option<usize>> = (0..chart.nvars()).map(|i| (i < n).then_some(i)).collect();
    let h_image = h.remap(total, &embed);
    let unit = (&Poly::var(total, t) - &h_image).scale(&(Rational::one() / c));
    let mut images: Vec<(Poly, i64)> = (0..n).map(|i| (Poly::var(total, i), 0)).collect();
    for cj in &coords {
        let mono = new
            .monomial_poly(&cj[1..])
            .ok_or_else(|| Error::Invalid("projected generator outside the new monoid".into()))?;
        images.push((mono, cj[0]));
    }
    let mut loc = RayLocalization { chart: new, coordinate: t, unit, images };
    let mut inverted: Vec<Poly> = chart.inverted.iter().map(|f| loc.apply(f)).collect();
    inverted.push(loc.unit.monic());
    loc.chart.inverted = inverted;
    loc.chart.provenance = chart.provenance.clone();
    Ok(loc)
}

impl RayLocalization {
    /// Image of `f`, up to a power of the unit `z`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let nv = self.unit.nvars();
        let parts: Vec<(Poly, i64)> = f
            .terms()
            .iter()
            .map(|term| {
                let mut p = Poly::constant(nv, term.coeff.clone());
                let mut k = 0i64;
                for (e, (img, shift)) in term.exps.iter().zip(&self.images) {
                    if *e > 0 {
                        p = &p * &img.pow(*e);
                        k += i64::from(*e) * shift;
                    }
                }
                (p, k)
            })
            .collect();
        let low = parts.iter().map(|(_, k)| *k).min().unwrap_or(0);
        parts.into_iter().fold(Poly::zero(nv), |acc, (p, k)| {
            &acc + &(&p * &self.unit.pow(u32::try_from(k - low).expect("exponent fits")))
        })
    }
}

/// Passage to invariant coordinates on the open set where an ordinary
/// variable `x` of the single character is invertible: every other variable
/// `y` becomes `y * x^(e_y)` of weight zero and `x` is replaced by
/// `X = x^m`, after which the chart has no characters.
#[derive(Clone, Debug)]
pub struct Untwisting {
    pub chart: Chart,
    /// Index of `x`, which is also the index of `X` on the new chart.
    pub variable: usize,
    pub modulus: i64,
    /// Twisting exponents `e_y` per source variable (zero for `x`).
    pub twists: Vec<i64>,
}

/// Builds the invariant chart of `D(x)`. The chart must carry exactly one
/// character in which the weight of `x` generates the group.
pub fn untwist_unit(chart: &Chart, x: usize) -> Result<Untwisting> {
    let n = chart.ordinary.len();
    if x >= n {
        return Err(Error::Invalid(format!("variable {x} is not ordinary")));
    }
    let [ch] = chart.characters.as_slice() else {
        return Err(Error::Invalid("untwisting needs exactly one character".into()));
    };
    let (m, weights) = ch.display(chart);
    let g = num_integer::Integer::extended_gcd(&weights[x], &m);
    if g.gcd != 1 {
        return Err(Error::Invalid(format!("the weight of {} does not generate the group", chart.names()[x])));
    }
    let inv = g.x.rem_euclid(m);
    let modulus = Rational::from_integer(m.into());
    let form: Vec<i64> = ch
        .lattice
        .iter()
        .map(|q| {
            let v = q * &modulus;
            if v.is_integer() {
                v.to_integer().try_into().map_err(|_| Error::Invalid("character form too large".into()))
            } else {
                Err(Error::Invalid("character form is not integral after scaling".into()))
            }
        })
        .collect::<Result<_>>()?;
    let mut twists = vec![0i64; chart.nvars()];
    for (y, t) in twists.iter_mut().enumerate() {
        *t = if y == x {
            0
        } else if y < n {
            (-weights[y] * inv).rem_euclid(m)
        } else {
            -inv * chart.vectors[y - n].iter().zip(&form).map(|(a, b)| a * b).sum::<i64>()
        };
    }
    let mut ordinary = chart.ordinary.clone();
    ordinary[x] = fresh_name(&chart.names());
    let mut new = Chart::with_data(
        chart.id.clone(),
        ordinary,
        chart.monomial.clone(),
        chart.rank,
        chart.vectors.clone(),
        Vec::new(),
        Vec::new(),
    )?;
    new.provenance = chart.provenance.clone();
    let mut u = Untwisting { chart: new, variable: x, modulus: m, twists };
    let mut inverted = chart.inverted.iter().map(|f| u.apply(f)).collect::<Result<Vec<_>>>()?;
    inverted.push(u.chart.var(x));
    u.chart.inverted = inverted;
    Ok(u)
}

impl Untwisting {
    /// Image of a semi-invariant `f`, up to a power of the unit `x`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let x = self.variable;
        let exps: Vec<i64> = f
            .terms()
            .iter()
            .map(|t| {
                i64::from(t.exps[x]) - t.exps.iter().zip(&self.twists).map(|(&a, &e)| i64::from(a) * e).sum::<i64>()
            })
            .collect();
        let Some(&low) = exps.iter().min() else { return Ok(f.clone()) };
        if exps.iter().any(|e| (e - low) % self.modulus != 0) {
            return Err(Error::Invalid("polynomial is not semi-invariant".into()));
        }
        let terms = f.terms().iter().zip(&exps).map(|(t, e)| {
            let mut ex = t.exps.clone();
            ex[x] = u32::try_from((e - low) / self.modulus).expect("exponent fits");
            (t.coeff.clone(), ex)
        });
        Ok(Poly::from_terms(f.nvars(), terms))
    }

    pub fn apply_all(&self, fs: &[Poly]) -> Result<Vec<Poly>> {
        fs.iter().map(|f| self.apply(f)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_examples() {
        let c = Chart::smooth("c", &["x"], &["u"]);
        let (h, r) = restrict_to_hypersurface(&c, 0, &c.parse_all(&["x^2", "u"]).unwrap()).unwrap();
        assert_eq!(h.format_all(&r), vec!["u"]);
        let (_, z) = restrict_to_hypersurface(&c, 0, &c.parse_all(&["x"]).unwrap()).unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn stratum_examples() {
        let c = Chart::smooth("c", &["x"], &["u", "v"]);
        let (s, r) = restrict_to_stratum(&c, &[1], &c.parse_all(&["x^2 + u", "v*x + u*v"]).unwrap()).unwrap();
        assert_eq!(s.monomial, vec!["v"]);
        assert_eq!(s.vectors, vec![vec![1]]);
        assert_eq!(s.format_all(&r), vec!["x*v", "x^2"]);
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let cone = Chart::new("k", vec![], names, 2, vec![vec![1, 0], vec![1, 1], vec![1, 2]]).unwrap();
        assert!(restrict_to_stratum(&cone, &[2], &[]).is_err());
        let (s, r) = restrict_to_stratum(&cone, &[1, 2], &cone.parse_all(&["a^2 + b"]).unwrap()).unwrap();
        assert_eq!(s.monomial, vec!["a"]);
        assert_eq!(s.vectors, vec![vec![1]]);
        assert_eq!(s.format_all(&r), vec!["a^2"]);
        let (s, _) = restrict_to_stratum(&cone, &[0, 1, 2], &[]).unwrap();
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn substitution_examples() {
        let c = Chart::affine("c", &["x", "y"]);
        let g = c.parse_all(&["x + y^2", "y"]).unwrap();
        let h = c.parse("y^2").unwrap();
        let s = substitute_coordinate(&c, 0, &h, &g).unwrap();
        assert!(c.ring().equal(&s, &c.parse_all(&["x", "y"]).unwrap()));
        let back = substitute_coordinate(&c, 0, &(-&h), &s).unwrap();
        assert_eq!(back, g);
        assert!(substitute_coordinate(&c, 0, &c.parse("x").unwrap(), &g).is_err());
    }

    #[test]
    fn free_variable_examples() {
        let c = Chart::smooth("c", &["x"], &["u"]);
        let (e, i) = add_free_variable(&c, "y", &c.parse_all(&["u^2", "x"]).unwrap()).unwrap();
        assert_eq!(e.names(), vec!["x", "y", "u"]);
        assert!(e.ring().equal(&i, &e.parse_all(&["u^2", "x", "y"]).unwrap()));
        let (e, i) = add_free_variable(&c, "y", &[]).unwrap();
        assert_eq!(e.format_all(&i), vec!["y"]);
    }

    #[test]
    fn kummer_cover_examples() {
        let c = Chart::smooth("c", &["x"], &["u"]);
        let k = kummer_cover_pullback(&c, &[1], 2, &c.parse_all(&["x^2", "u"]).unwrap()).unwrap();
        assert_eq!(k.chart.monomial, vec!["v"]);
        assert!(k.chart.ring().equal(&k.ideal, &k.chart.parse_all(&["x^2", "v^2"]).unwrap()));
        assert_eq!(k.chart.character_display(), vec![(2, vec![0, 1])]);
        let id = kummer_cover_pullback(&c, &[1], 1, &c.parse_all(&["u"]).unwrap()).unwrap();
        assert_eq!(id.chart.monomial, vec!["u"]);
        assert!(id.chart.characters.is_empty());
        let cube = kummer_cover_pullback(&c, &[1], 3, &c.parse_all(&["u"]).unwrap()).unwrap();
        assert_eq!(cube.chart.format_all(&cube.ideal), vec!["v^3"]);
    }

    #[test]
    fn monomial_split() {
        let c = Chart::smooth("c", &[], &["u", "v"]);
        let one = Poly::one(c.nvars());
        let h = c.parse("-1").unwrap();
        // t = v - 1, so v = t + 1
        let loc = localize_monomial_variable(&c, 1, &one, &h).unwrap();
        assert_eq!(loc.chart.ordinary, vec!["w"]);
        assert_eq!(loc.chart.monomial, vec!["u"]);
        let img = loc.map.apply(&c.parse("1 - v").unwrap());
        assert_eq!(loc.chart.format(&img), "-w");
        assert_eq!(loc.chart.format_all(&loc.chart.inverted), vec!["w + 1"]);
    }

    #[test]
    fn monomial_split_with_polynomial_coefficient() {
        let c = Chart::smooth("c", &["y"], &["x"]);
        let g = c.parse("x*y^3 + 1").unwrap();
        let loc = localize_monomial_variable(&c, 1, &c.parse("y^3").unwrap(), &c.parse("1").unwrap()).unwrap();
        assert_eq!(loc.chart.ordinary, vec!["y", "v"]);
        assert!(loc.chart.monomial.is_empty());
        assert_eq!(loc.chart.format(&loc.apply(&g)), "y^3*v");
        assert!(loc.chart.ring().equal(&[loc.apply(&g)], &loc.chart.parse_all(&["v"]).unwrap()));
        assert_eq!(loc.chart.format_all(&loc.chart.inverted), vec!["v - 1", "y^3"]);
        let d = Chart::smooth("d", &["y"], &["x"]);
        assert!(localize_monomial_variable(&d, 1, &d.parse("x").unwrap(), &d.parse("1").unwrap()).is_err());
    }

    #[test]
    fn untwisting_examples() {
        let ch = Character {
            lattice: vec![Rational::new(1.into(), 2.into())],
            ordinary: vec![Rational::new(1.into(), 2.into())],
        };
        let c =
            Chart::with_data("c", vec!["x".into()], vec!["w".into()], 1, vec![vec![1]], vec![ch], Vec::new()).unwrap();
        let u = untwist_unit(&c, 0).unwrap();
        assert!(u.chart.characters.is_empty());
        assert_eq!(u.chart.names(), vec!["v", "w"]);
        let f = u.apply(&c.parse("w^3*x^2 + w^3").unwrap()).unwrap();
        assert_eq!(u.chart.format(&f), "v*w^3 + w^3");
        let g = u.apply(&c.parse("x + w").unwrap()).unwrap();
        assert!(u.chart.ring().equal(&[g], &u.chart.parse_all(&["w + 1"]).unwrap()));
        assert_eq!(u.chart.format_all(&u.chart.inverted), vec!["v"]);
        assert!(u.apply(&c.parse("x + 1").unwrap()).is_err());
        assert!(untwist_unit(&Chart::affine("a", &["x"]), 0).is_err());
    }

    #[test]
    fn ray_localization_on_a_singular_cone() {
        let c = Chart::new(
            "c",
            vec![],
            vec!["u".into(), "v".into(), "w".into()],
            2,
            vec![vec![1, 0], vec![1, 1], vec![1, 2]],
        )
        .unwrap();
        assert_eq!(c.format_all(&c.relations), vec!["v^2 - u*w"]);
        let loc = localize_ray_generator(&c, 2, &Rational::one(), &c.parse("1").unwrap()).unwrap();
        assert_eq!(loc.chart.ordinary.len(), 1);
        assert_eq!(loc.chart.rank, 1);
        assert!(loc.chart.relations.is_empty());
        let t = loc.chart.names()[loc.coordinate].clone();
        let g = loc.apply(&c.parse("w + 1").unwrap());
        assert!(loc.chart.ring().equal(&[g], &loc.chart.parse_all(&[&t]).unwrap()));
        let uv = loc.apply(&c.parse("v^2 - u*w").unwrap());
        assert!(uv.is_zero());
        assert!(localize_ray_generator(&c, 1, &Rational::one(), &c.parse("1").unwrap()).is_err());
    }
}
