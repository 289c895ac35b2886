//! Ideal operations in polynomial rings and in presented quotient rings.

use std::sync::OnceLock;

use super::groebner::{groebner_basis, reduce, MonomialOrder};
use super::polynomial::{Field, Polynomial};

/// A finitely generated ideal with a lazily computed reduced Gröbner basis
/// (degrevlex) in the ambient polynomial ring.
#[derive(Debug)]
pub struct IdealPresentation<F> {
    nvars: usize,
    generators: Vec<Polynomial<F>>,
    cache: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Field> Clone for IdealPresentation<F> {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(b) = self.cache.get() {
            let _ = cache.set(b.clone());
        }
        IdealPresentation { nvars: self.nvars, generators: self.generators.clone(), cache }
    }
}

impl<F: Field> IdealPresentation<F> {
    pub fn new(nvars: usize, generators: Vec<Polynomial<F>>) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        IdealPresentation { nvars, generators, cache: OnceLock::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(nvars, vec![Polynomial::one(nvars)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// Reduced degrevlex Gröbner basis, computed once.
    pub fn groebner(&self) -> &[Polynomial<F>] {
        self.cache.get_or_init(|| groebner_basis(&self.generators, MonomialOrder::DegRevLex))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        reduce(f, self.groebner(), MonomialOrder::DegRevLex).is_zero()
    }

    pub fn contains_ideal(&self, other: &IdealPresentation<F>) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &IdealPresentation<F>) -> bool {
        self.groebner() == other.groebner()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_nonzero_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Reduced Gröbner basis of `gens` under degrevlex.
pub fn basis<F: Field>(gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    groebner_basis(gens, MonomialOrder::DegRevLex)
}

/// Membership of `f` in the ideal generated by `gens`.
pub fn ideal_contains<F: Field>(gens: &[Polynomial<F>], f: &Polynomial<F>) -> bool {
    let b = basis(gens);
    reduce(f, &b, MonomialOrder::DegRevLex).is_zero()
}

/// Generators of `I + J`.
pub fn ideal_sum<F: Field>(i: &[Polynomial<F>], j: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    i.iter().chain(j).filter(|g| !g.is_zero()).cloned().collect()
}

/// Pairwise products of generators.
pub fn ideal_product<F: Field>(i: &[Polynomial<F>], j: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut out = Vec::with_capacity(i.len() * j.len());
    for a in i {
        for b in j {
            let p = a * b;
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// The `n`-fold product, interreduced after every multiplication. The
/// zeroth power is the unit ideal.
pub fn ideal_power<F: Field>(nvars: usize, i: &[Polynomial<F>], n: u32) -> Vec<Polynomial<F>> {
    let mut result = vec![Polynomial::one(nvars)];
    for _ in 0..n {
        result = basis(&ideal_product(&result, i));
    }
    result
}

/// Saturation `I : m^∞` in the polynomial ring, via an auxiliary variable.
pub fn saturate_by_element<F: Field>(gens: &[Polynomial<F>], m: &Polynomial<F>) -> Vec<Polynomial<F>> {
    assert!(!m.is_zero(), "saturation by zero");
    if gens.is_empty() {
        return Vec::new();
    }
    let n = m.nvars();
    let lift = lift_map(n);
    let s = Polynomial::var(n + 1, n);
    let mut ext: Vec<Polynomial<F>> = gens.iter().map(|g| g.remap(n + 1, &lift)).collect();
    ext.push(&(&s * &m.remap(n + 1, &lift)) - &Polynomial::one(n + 1));
    project(groebner_basis(&ext, MonomialOrder::Eliminate(n)), n)
}

/// Colon ideal `I : m` in the polynomial ring.
pub fn ideal_colon<F: Field>(gens: &[Polynomial<F>], m: &Polynomial<F>) -> Vec<Polynomial<F>> {
    assert!(!m.is_zero(), "colon by zero");
    if gens.is_empty() {
        return Vec::new();
    }
    let n = m.nvars();
    let lift = lift_map(n);
    let t = Polynomial::var(n + 1, n);
    let one_minus_t = &Polynomial::one(n + 1) - &t;
    let mut ext: Vec<Polynomial<F>> = gens.iter().map(|g| &t * &g.remap(n + 1, &lift)).collect();
    ext.push(&one_minus_t * &m.remap(n + 1, &lift));
    let inter = project(groebner_basis(&ext, MonomialOrder::Eliminate(n)), n);
    let quotients: Vec<Polynomial<F>> =
        inter.iter().map(|g| exact_division(g, m).expect("intersection lies in (m)")).collect();
    basis(&quotients)
}

fn lift_map(n: usize) -> Vec<Option<usize>> {
    (0..n).map(Some).collect()
}

fn project<F: Field>(gb: Vec<Polynomial<F>>, n: usize) -> Vec<Polynomial<F>> {
    let mut map: Vec<Option<usize>> = (0..n).map(Some).collect();
    map.push(None);
    let kept: Vec<Polynomial<F>> = gb.into_iter().filter(|g| g.is_free_of(n)).map(|g| g.remap(n, &map)).collect();
    basis(&kept)
}

/// Exact polynomial division `f / m`, `None` when `m` does not divide `f`.
pub fn exact_division<F: Field>(f: &Polynomial<F>, m: &Polynomial<F>) -> Option<Polynomial<F>> {
    if m.is_monomial() {
        let t = m.leading().expect("nonzero");
        return f.div_monomial(&t.exps).map(|q| q.scale(&(F::one() / t.coeff.clone())));
    }
    let mut q = Polynomial::zero(f.nvars());
    let mut r = f.clone();
    let lm = m.leading().expect("nonzero divisor").clone();
    while let Some(lt) = r.leading().cloned() {
        if !super::polynomial::divides(&lm.exps, &lt.exps) {
            return None;
        }
        let e: Vec<u32> = lt.exps.iter().zip(&lm.exps).map(|(a, b)| a - b).collect();
        let c = lt.coeff.clone() / lm.coeff.clone();
        let step = Polynomial::monomial(f.nvars(), c, e);
        r = &r - &(&step * m);
        q = &q + &step;
    }
    Some(q)
}

/// A quotient ring `k[vars] / relations`, optionally localized at finitely
/// many elements. Every ideal computation adjoins the relations and
/// saturates by the inverted elements.
#[derive(Clone, Debug)]
pub struct Ring<F> {
    nvars: usize,
    relations: Vec<Polynomial<F>>,
    inverted: Vec<Polynomial<F>>,
}

impl<F: Field> Ring<F> {
    pub fn new(nvars: usize, relations: Vec<Polynomial<F>>, inverted: Vec<Polynomial<F>>) -> Self {
        Ring { nvars, relations, inverted }
    }

    pub fn polynomial(nvars: usize) -> Self {
        Self::new(nvars, Vec::new(), Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn relations(&self) -> &[Polynomial<F>] {
        &self.relations
    }

    pub fn inverted(&self) -> &[Polynomial<F>] {
        &self.inverted
    }

    /// Reduced Gröbner basis of the preimage of the ideal in the polynomial
    /// ring: relations included, inverted elements saturated out.
    pub fn basis(&self, gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        let all = ideal_sum(gens, &self.relations);
        let mut b = basis(&all);
        for p in &self.inverted {
            if b.is_empty() || b.iter().any(|g| g.is_nonzero_constant()) {
                break;
            }
            b = saturate_by_element(&b, p);
        }
        b
    }

    pub fn contains(&self, gens: &[Polynomial<F>], f: &Polynomial<F>) -> bool {
        let b = self.basis(gens);
        reduce(f, &b, MonomialOrder::DegRevLex).is_zero()
    }

    /// Membership against a basis previously returned by [`Ring::basis`].
    pub fn reduces_to_zero(basis: &[Polynomial<F>], f: &Polynomial<F>) -> bool {
        reduce(f, basis, MonomialOrder::DegRevLex).is_zero()
    }

    pub fn contains_all(&self, gens: &[Polynomial<F>], fs: &[Polynomial<F>]) -> bool {
        let b = self.basis(gens);
        fs.iter().all(|f| Self::reduces_to_zero(&b, f))
    }

    pub fn equal(&self, a: &[Polynomial<F>], b: &[Polynomial<F>]) -> bool {
        self.basis(a) == self.basis(b)
    }

    pub fn is_unit(&self, gens: &[Polynomial<F>]) -> bool {
        self.basis(gens).iter().any(|g| g.is_nonzero_constant())
    }

    pub fn is_zero(&self, gens: &[Polynomial<F>]) -> bool {
        let rel = self.basis(&[]);
        gens.iter().all(|g| Self::reduces_to_zero(&rel, g))
    }

    /// Canonical generators: the reduced basis with elements of the
    /// relation ideal removed.
    pub fn canonical(&self, gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        let b = self.basis(gens);
        if b.iter().any(|g| g.is_nonzero_constant()) {
            return vec![Polynomial::one(self.nvars)];
        }
        let rel = self.basis(&[]);
        b.into_iter().filter(|g| !Self::reduces_to_zero(&rel, g)).collect()
    }

    /// A minimal generating subset of the canonical generators: elements
    /// lying in the ideal of the others (plus relations) are dropped,
    /// scanning from the largest leading monomial down.
    pub fn minimal(&self, gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        let mut kept = self.canonical(gens);
        let mut i = kept.len();
        while i > 0 {
            i -= 1;
            let others: Vec<Polynomial<F>> =
                kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            if self.contains(&others, &kept[i]) {
                kept.remove(i);
            }
        }
        kept
    }

    /// Colon ideal `I : m` in the ring.
    pub fn colon(&self, gens: &[Polynomial<F>], m: &Polynomial<F>) -> Vec<Polynomial<F>> {
        let b = self.basis(gens);
        let q = ideal_colon(&b, m);
        self.canonical(&q)
    }

    /// Saturation `I : m^∞` in the ring.
    pub fn saturate(&self, gens: &[Polynomial<F>], m: &Polynomial<F>) -> Vec<Polynomial<F>> {
        let b = self.basis(gens);
        let q = saturate_by_element(&b, m);
        self.canonical(&q)
    }
}
