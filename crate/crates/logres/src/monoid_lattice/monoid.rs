//! Affine monoids, Hilbert bases, monoid ideals and their saturation,
//! Kummer refinements and binomial presentations.

use num_traits::{One, Zero};

use super::cone::Cone;
use super::lattice::{
    add, as_integers, bezout, dot, integer_kernel, lattice_basis, nullspace, rank, rat, rref, scale, sub,
    to_rational_vec, Vector,
};
use crate::error::{Error, Result};
use crate::exact_algebra::{ideal::saturate_by_element, Ring};
use crate::{Poly, Rational};

/// A sharp affine monoid generated by lattice vectors in `Z^rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMonoid {
    pub rank: usize,
    pub generators: Vec<Vector>,
}

impl AffineMonoid {
    /// Validates sharpness and nonzero generators.
    pub fn new(rank: usize, generators: Vec<Vector>) -> Result<Self> {
        for g in &generators {
            if g.len() != rank {
                return Err(Error::Invalid(format!("generator {g:?} has wrong rank")));
            }
            if g.iter().all(|&x| x == 0) {
                return Err(Error::Invalid("zero monoid generator".into()));
            }
        }
        let m = AffineMonoid { rank, generators };
        if !m.cone().is_pointed() {
            return Err(Error::NotSharp);
        }
        Ok(m)
    }

    pub fn cone(&self) -> Cone {
        Cone::new(self.rank, &self.generators)
    }

    /// Membership in the saturated monoid `cone ∩ Z^rank`.
    pub fn contains(&self, v: &[i64]) -> bool {
        if self.rank == 0 {
            return true;
        }
        self.cone().contains(v)
    }
}

/// Finitely generated ideal of an affine monoid.
#[derive(Clone, Debug, PartialEq)]
pub struct MonoidIdeal {
    pub generators: Vec<Vector>,
}

impl MonoidIdeal {
    pub fn new(generators: Vec<Vector>) -> Self {
        MonoidIdeal { generators }
    }

    /// The whole monoid, generated by the zero element.
    pub fn unit(rank: usize) -> Self {
        MonoidIdeal { generators: vec![vec![0; rank]] }
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }
}

fn box_points(bounds: &[(i64, i64)], mut visit: impl FnMut(&[i64])) {
    let n = bounds.len();
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut v: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        visit(&v);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if v[i] < bounds[i].1 {
                v[i] += 1;
                break;
            }
            v[i] = bounds[i].0;
            i += 1;
        }
    }
}

/// Hilbert basis of the saturated monoid `cone(generators) ∩ Z^rank`.
///
/// Works in the lattice `span ∩ Z^rank` when the generators do not span.
/// Fails with `NotSharp` when the cone contains a line.
pub fn hilbert_basis(rank_: usize, generators: &[Vector]) -> Result<Vec<Vector>> {
    let cone = Cone::new(rank_, generators);
    if cone.generators().is_empty() {
        return Ok(Vec::new());
    }
    if !cone.is_full_dimensional() {
        let span = span_lattice(rank_, cone.generators());
        let k = span.len();
        let coords: Vec<Vector> = cone
            .generators()
            .iter()
            .map(|g| coordinates_in(&span, g).expect("generator lies in its span lattice"))
            .collect();
        let hb = hilbert_basis(k, &coords)?;
        return Ok(hb
            .iter()
            .map(|c| {
                let mut v = vec![0i64; rank_];
                for (ci, b) in c.iter().zip(&span) {
                    v = add(&v, &scale(b, *ci));
                }
                v
            })
            .collect());
    }
    if !cone.is_pointed() {
        return Err(Error::NotSharp);
    }
    Ok(hilbert_basis_full(&cone))
}

fn hilbert_basis_full(cone: &Cone) -> Vec<Vector> {
    let rays = cone.extreme_rays();
    let ell = cone.positive_form();
    let bound: i64 = rays.iter().map(|r| dot(&ell, r)).sum();
    let bounds: Vec<(i64, i64)> = (0..cone.dim())
        .map(|i| {
            let b: i64 = rays.iter().map(|r| r[i].abs()).sum();
            (-b, b)
        })
        .collect();
    let mut candidates: Vec<(i64, Vector)> = Vec::new();
    box_points(&bounds, |v| {
        if v.iter().all(|&x| x == 0) {
            return;
        }
        let l = dot(&ell, v);
        if l <= bound && cone.contains(v) {
            candidates.push((l, v.to_vec()));
        }
    });
    candidates.sort();
    let mut basis: Vec<Vector> = Vec::new();
    for (_, v) in candidates {
        let reducible = basis.iter().any(|h| cone.contains(&sub(&v, h)));
        if !reducible {
            basis.push(v);
        }
    }
    basis
}

/// Basis of `span(vectors) ∩ Z^rank`.
pub fn span_lattice(rank_: usize, vectors: &[Vector]) -> Vec<Vector> {
    let normals = nullspace(vectors, rank_);
    if normals.is_empty() {
        return (0..rank_).map(|i| (0..rank_).map(|j| if i == j { 1 } else { 0 }).collect()).collect();
    }
    let columns: Vec<Vector> = (0..rank_).map(|i| normals.iter().map(|n| n[i]).collect()).collect();
    lattice_basis(&integer_kernel(&columns))
}

/// Integer coordinates of `v` in the given lattice basis, if any.
pub fn coordinates_in(basis: &[Vector], v: &[i64]) -> Option<Vector> {
    let k = basis.len();
    let n = v.len();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| rat(b[i])).collect();
            row.push(rat(v[i]));
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = m[row][k].clone();
    }
    as_integers(&x)
}

/// Removes generators divisible (in the monoid) by another generator.
pub fn minimalize(cone: &Cone, gens: &[Vector]) -> Vec<Vector> {
    let mut uniq: Vec<Vector> = Vec::new();
    for g in gens {
        if !uniq.contains(g) {
            uniq.push(g.clone());
        }
    }
    let mut out: Vec<Vector> =
        uniq.iter().filter(|g| !uniq.iter().any(|h| h != *g && in_cone(cone, &sub(g, h)))).cloned().collect();
    out.sort_by_key(|v| (v.iter().sum::<i64>(), std::cmp::Reverse(v.clone())));
    out
}

fn in_cone(cone: &Cone, v: &[i64]) -> bool {
    if cone.dim() == 0 {
        return true;
    }
    cone.contains(v)
}

/// Saturation `J^sat = {x : l x ∈ l J for some l > 0}` of a monoid ideal in
/// the saturated monoid of `cone`, as a minimal generating set.
///
/// The saturation consists of the lattice points of the Newton polyhedron
/// `conv(J) + cone`. Minimal generators `x = sum λ_i g_i + sum μ_k ρ_k` have
/// all `μ_k < 1`, which bounds every coordinate by `max |g| + sum |ρ|`.
pub fn monoid_saturate_ideal(cone: &Cone, gens: &[Vector]) -> Vec<Vector> {
    let r = cone.dim();
    if gens.is_empty() {
        return Vec::new();
    }
    if r == 0 || gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
        return vec![vec![0; r]];
    }
    let rays = cone.extreme_rays();
    let mut homog: Vec<Vector> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h.push(1);
            h
        })
        .collect();
    for ray in &rays {
        let mut h = ray.clone();
        h.push(0);
        homog.push(h);
    }
    let newton = Cone::new(r + 1, &homog);
    let ell = cone.positive_form();
    let bound = gens.iter().map(|g| dot(&ell, g)).max().unwrap_or(0) + rays.iter().map(|x| dot(&ell, x)).sum::<i64>();
    let bounds: Vec<(i64, i64)> = (0..r)
        .map(|i| {
            let b = gens.iter().map(|g| g[i].abs()).max().unwrap_or(0) + rays.iter().map(|x| x[i].abs()).sum::<i64>();
            (-b, b)
        })
        .collect();
    let mut points: Vec<Vector> = Vec::new();
    box_points(&bounds, |v| {
        if dot(&ell, v) > bound || !cone.contains(v) {
            return;
        }
        let mut h = v.to_vec();
        h.push(1);
        if newton.contains(&h) {
            points.push(v.to_vec());
        }
    });
    minimalize(cone, &points)
}

/// Writes a monoid element as a nonnegative combination of a Hilbert basis.
///
/// Greedy descent suffices: in a saturated monoid, subtracting any basis
/// element that stays inside the cone leaves a monoid element.
pub fn decompose(cone: &Cone, hb: &[Vector], v: &[i64]) -> Option<Vec<u32>> {
    let mut exps = vec![0u32; hb.len()];
    let mut rest = v.to_vec();
    let ell = if cone.dim() == 0 { Vec::new() } else { cone.positive_form() };
    loop {
        if rest.iter().all(|&x| x == 0) {
            return Some(exps);
        }
        if cone.dim() == 0 || !cone.contains(&rest) {
            return None;
        }
        // prefer the basis element with the largest positive form value
        let choice = hb
            .iter()
            .enumerate()
            .filter(|(_, h)| cone.contains(&sub(&rest, h)))
            .max_by_key(|(i, h)| (dot(&ell, h), std::cmp::Reverse(*i)))?;
        exps[choice.0] += 1;
        rest = sub(&rest, choice.1);
    }
}

/// Binomial presentation of `k[M]` as a quotient of `k[z_1..z_m]`: the lattice
/// ideal of the kernel basis, saturated by the product of all variables.
pub fn present_monoid_algebra(generators: &[Vector]) -> Vec<Poly> {
    let m = generators.len();
    let kernel = integer_kernel(generators);
    if kernel.is_empty() {
        return Vec::new();
    }
    let binomials: Vec<Poly> = kernel.iter().map(|k| binomial(m, k)).collect();
    let prod = (0..m).fold(Poly::one(m), |acc, i| &acc * &Poly::var(m, i));
    let sat = saturate_by_element(&binomials, &prod);
    Ring::polynomial(m).canonical(&sat)
}

fn binomial(m: usize, k: &[i64]) -> Poly {
    let plus: Vec<u32> = k.iter().map(|&x| x.max(0) as u32).collect();
    let minus: Vec<u32> = k.iter().map(|&x| (-x).max(0) as u32).collect();
    &Poly::monomial(m, Rational::one(), plus) - &Poly::monomial(m, Rational::one(), minus)
}

/// A change of lattice: the new lattice is spanned by `basis` (vectors in
/// the old rational coordinates).
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeChange {
    pub basis: Vec<Vec<Rational>>,
}

impl LatticeChange {
    pub fn identity(rank_: usize) -> Self {
        LatticeChange {
            basis: (0..rank_)
                .map(|i| (0..rank_).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// New coordinates of an old rational vector.
    pub fn to_new_rational(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.basis.len();
        let a: Vec<Vec<Rational>> = (0..n).map(|i| self.basis.iter().map(|b| b[i].clone()).collect()).collect();
        super::lattice::solve(&a, v).expect("lattice change is invertible")
    }

    /// New integer coordinates of an old lattice vector.
    pub fn to_new(&self, v: &[i64]) -> Vector {
        as_integers(&self.to_new_rational(&to_rational_vec(v))).expect("vector lies in the refined lattice")
    }

    /// Old coordinates of a new vector.
    pub fn to_old(&self, c: &[i64]) -> Vec<Rational> {
        let n = self.basis.len();
        let mut out = vec![Rational::zero(); n];
        for (ci, b) in c.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o = o.clone() + rat(*ci) * x.clone();
            }
        }
        out
    }

    /// Pulls a linear form given in old coordinates to new coordinates.
    pub fn form_to_new(&self, form: &[Rational]) -> Vec<Rational> {
        self.basis
            .iter()
            .map(|b| b.iter().zip(form).fold(Rational::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
            .collect()
    }

    /// Composition: `self` followed by `next` (whose basis is expressed in
    /// the coordinates produced by `self`).
    pub fn then(&self, next: &LatticeChange) -> LatticeChange {
        let n = self.basis.len();
        let basis = next
            .basis
            .iter()
            .map(|c| {
                let mut out = vec![Rational::zero(); n];
                for (ci, b) in c.iter().zip(&self.basis) {
                    for (o, x) in out.iter_mut().zip(b) {
                        *o = o.clone() + ci.clone() * x.clone();
                    }
                }
                out
            })
            .collect();
        LatticeChange { basis }
    }
}

/// Refines `Z^rank` by the single element `element / d`.
///
/// Returns `None` when `element / d` is already integral. Otherwise returns
/// the lattice change, the order `e` of the adjoined root modulo the old
/// lattice, and a generator of the new deck characters as a rational
/// linear form in the new coordinates (integral on the old lattice, taking
/// the value `1/e` modulo 1 on the root).
pub fn refine_lattice(element: &[i64], d: i64) -> Option<(LatticeChange, i64, Vec<Rational>)> {
    let r = element.len();
    let g = element.iter().fold(d, |acc, &x| num_integer::Integer::gcd(&acc, &x));
    let e = d / g;
    if e == 1 {
        return None;
    }
    let mu: Vector = element.iter().map(|&x| x / g).collect();
    let mut gens: Vec<Vector> = (0..r).map(|i| (0..r).map(|j| if i == j { e } else { 0 }).collect()).collect();
    gens.push(mu.clone());
    let scaled = lattice_basis(&gens);
    assert_eq!(scaled.len(), r, "refined lattice has full rank");
    let basis: Vec<Vec<Rational>> =
        scaled.iter().map(|b| b.iter().map(|&x| Rational::new(x.into(), e.into())).collect()).collect();
    let change = LatticeChange { basis };
    // phi . mu ≡ 1 (mod e): Bezout on (mu, e)
    let mut ext = mu.clone();
    ext.push(e);
    let (one, coeffs) = bezout(&ext);
    assert_eq!(one, 1, "reduced root is primitive modulo its order");
    let form_old: Vec<Rational> = coeffs[..r].iter().map(|&c| rat(c)).collect();
    let form = change.form_to_new(&form_old);
    Some((change, e, form))
}

/// Result of a Kummer refinement of an affine monoid.
#[derive(Clone, Debug)]
pub struct KummerRefinement {
    /// Saturated monoid in the refined lattice (new coordinates).
    pub monoid: AffineMonoid,
    /// Coordinate change from the old lattice to the refined one.
    pub change: LatticeChange,
    /// One deck character per adjoined root: `(order, linear form)` with the
    /// form in new coordinates.
    pub characters: Vec<(i64, Vec<Rational>)>,
}

/// Refines the lattice of `monoid` by `elements / d` and saturates.
pub fn kummer_refine(monoid: &AffineMonoid, elements: &[Vector], d: i64) -> Result<KummerRefinement> {
    assert!(d > 0, "root index must be positive");
    let mut change = LatticeChange::identity(monoid.rank);
    let mut characters: Vec<(i64, Vec<Rational>)> = Vec::new();
    for el in elements {
        if !monoid.contains(el) {
            return Err(Error::Invalid(format!("{el:?} is not in the monoid")));
        }
        // express el in current coordinates, then refine by (el / d)
        let current = change.to_new_rational(&to_rational_vec(el));
        let current = as_integers(&current).expect("old lattice embeds in the refinement");
        if let Some((step, e, form)) = refine_lattice(&current, d) {
            for (_, f) in characters.iter_mut() {
                *f = step.form_to_new(f);
            }
            characters.push((e, form));
            change = change.then(&step);
        }
    }
    let gens: Vec<Vector> = monoid.generators.iter().map(|g| change.to_new(g)).collect();
    let hb = hilbert_basis(monoid.rank, &gens)?;
    let refined = AffineMonoid::new(monoid.rank, hb)?;
    Ok(KummerRefinement { monoid: refined, change, characters })
}

/// Rank of a family of lattice vectors.
pub fn vector_rank(vs: &[Vector]) -> usize {
    rank(vs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_basis_examples() {
        assert_eq!(hilbert_basis(2, &[vec![1, 0], vec![1, 2]]).unwrap(), vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        let smooth = hilbert_basis(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(smooth.len(), 2);
        assert!(smooth.contains(&vec![1, 0]) && smooth.contains(&vec![0, 1]));
        // x-chart of Bl(u^2, x): x=(1,0), u=(0,1), v=(-1,2)
        let hb = hilbert_basis(2, &[vec![1, 0], vec![0, 1], vec![-1, 2]]).unwrap();
        assert_eq!(hb.len(), 3);
        assert_eq!(hilbert_basis(2, &[vec![1, 0], vec![-1, 0]]), Err(Error::NotSharp));
    }

    #[test]
    fn hilbert_basis_of_lower_dimensional_cone() {
        let hb = hilbert_basis(3, &[vec![1, 0, 0], vec![1, 2, 0]]).unwrap();
        assert_eq!(hb.len(), 3);
        assert!(hb.contains(&vec![1, 1, 0]));
    }

    #[test]
    fn saturation_examples() {
        let quadrant = Cone::new(2, &[vec![1, 0], vec![0, 1]]);
        let sat = monoid_saturate_ideal(&quadrant, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(sat.len(), 3);
        assert!(sat.contains(&vec![1, 1]));
        let ray = Cone::new(1, &[vec![1]]);
        assert_eq!(monoid_saturate_ideal(&ray, &[vec![2]]), vec![vec![2]]);
    }

    #[test]
    fn presentation_examples() {
        assert!(present_monoid_algebra(&[vec![1, 0], vec![0, 1]]).is_empty());
        let rel = present_monoid_algebra(&[vec![2, 0], vec![1, 1], vec![0, 2]]);
        let z1 = Poly::var(3, 0);
        let z2 = Poly::var(3, 1);
        let z3 = Poly::var(3, 2);
        assert_eq!(rel.len(), 1);
        assert_eq!(rel[0].monic(), (&(&z1 * &z3) - &z2.pow(2)).monic());
    }

    #[test]
    fn kummer_refine_square_root() {
        let m = AffineMonoid::new(1, vec![vec![1]]).unwrap();
        let k = kummer_refine(&m, &[vec![1]], 2).unwrap();
        assert_eq!(k.monoid.generators, vec![vec![1]]);
        // u is twice the new generator
        assert_eq!(k.change.to_new(&[1]), vec![2]);
        assert_eq!(k.characters.len(), 1);
        assert_eq!(k.characters[0].0, 2);
        assert_eq!(k.characters[0].1, vec![Rational::new(1.into(), 2.into())]);
        let id = kummer_refine(&m, &[], 1).unwrap();
        assert_eq!(id.change, LatticeChange::identity(1));
    }

    #[test]
    fn kummer_refine_diagonal() {
        let m = AffineMonoid::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let k = kummer_refine(&m, &[vec![1, 1]], 2).unwrap();
        assert_eq!(k.monoid.generators.len(), 3);
        let old: Vec<Vec<Rational>> = k.monoid.generators.iter().map(|g| k.change.to_old(g)).collect();
        let half = Rational::new(1.into(), 2.into());
        assert!(old.contains(&vec![half.clone(), half]));
    }
}
