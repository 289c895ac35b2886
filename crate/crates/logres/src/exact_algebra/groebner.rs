//! Buchberger's algorithm with the coprime and chain criteria, producing
//! reduced Gröbner bases.

use std::cmp::Ordering;

use super::polynomial::{degrevlex, divides, lcm, Exponents, Field, Polynomial};

/// Monomial orders supported by the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic order in declaration order.
    DegRevLex,
    /// Block order eliminating every variable with index `>= k`: the tail
    /// block is compared first (degrevlex), then the head block.
    Eliminate(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Eliminate(k) => match degrevlex(&a[k..], &b[k..]) {
                Ordering::Equal => degrevlex(&a[..k], &b[..k]),
                o => o,
            },
        }
    }
}

/// Working polynomial: terms sorted decreasing in the active order.
#[derive(Clone, Debug)]
struct Work<F> {
    terms: Vec<(Exponents, F)>,
}

impl<F: Field> Work<F> {
    fn from_poly(p: &Polynomial<F>, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Exponents, F)> = p.terms().iter().map(|t| (t.exps.clone(), t.coeff.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Work { terms }
    }

    fn to_poly(&self, nvars: usize) -> Polynomial<F> {
        Polynomial::from_terms(nvars, self.terms.iter().map(|(e, c)| (c.clone(), e.clone())))
    }

    fn lm(&self) -> &Exponents {
        &self.terms[0].0
    }

    fn lc(&self) -> &F {
        &self.terms[0].1
    }

    fn monic(mut self) -> Self {
        let inv = F::one() / self.lc().clone();
        for t in &mut self.terms {
            t.1 = t.1.clone() * inv.clone();
        }
        self
    }

    /// Computes `self - c * x^shift * g`, merging in order.
    fn sub_scaled(&self, g: &Work<F>, c: &F, shift: &[u32], order: MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted: Vec<(Exponents, F)> = g
            .terms
            .iter()
            .map(|(e, k)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), k.clone() * c.clone()))
            .collect();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < shifted.len() {
            match order.cmp(&self.terms[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (e, k) = &shifted[j];
                    out.push((e.clone(), -k.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = self.terms[i].1.clone() - shifted[j].1.clone();
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (e, k) in &shifted[j..] {
            out.push((e.clone(), -k.clone()));
        }
        Work { terms: out }
    }
}

/// Full normal form of `f` modulo `basis`.
fn normal_form<F: Field>(f: &Work<F>, basis: &[Work<F>], order: MonomialOrder) -> Work<F> {
    let mut p = f.clone();
    let mut rem: Vec<(Exponents, F)> = Vec::new();
    while !p.terms.is_empty() {
        let (e, c) = p.terms[0].clone();
        if let Some(g) = basis.iter().find(|g| divides(g.lm(), &e)) {
            let shift: Exponents = e.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
            let factor = c / g.lc().clone();
            p = p.sub_scaled(g, &factor, &shift, order);
        } else {
            rem.push((e, c));
            p.terms.remove(0);
        }
    }
    Work { terms: rem }
}

fn s_polynomial<F: Field>(f: &Work<F>, g: &Work<F>, order: MonomialOrder) -> Work<F> {
    let l = lcm(f.lm(), g.lm());
    let sf: Exponents = l.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
    let sg: Exponents = l.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
    let fz = Work::<F> { terms: Vec::new() }.sub_scaled(f, &(-(F::one() / f.lc().clone())), &sf, order);
    fz.sub_scaled(g, &(F::one() / g.lc().clone()), &sg, order)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
///
/// The result is monic, interreduced and sorted increasingly by leading
/// monomial, hence unique for a given ideal and order. The zero ideal has
/// the empty basis.
pub fn groebner_basis<F: Field>(gens: &[Polynomial<F>], order: MonomialOrder) -> Vec<Polynomial<F>> {
    let nvars = match gens.first() {
        Some(p) => p.nvars(),
        None => return Vec::new(),
    };
    let mut basis: Vec<Work<F>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut inputs: Vec<Work<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| Work::from_poly(g, order)).collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in inputs {
        let r = normal_form(&f, &basis, order);
        if !r.terms.is_empty() {
            add_to_basis(&mut basis, &mut pairs, r.monic());
        }
    }
    while !pairs.is_empty() {
        // Normal selection strategy: smallest lcm first.
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, p), (_, q)| {
                let lp = lcm(basis[p.0].lm(), basis[p.1].lm());
                let lq = lcm(basis[q.0].lm(), basis[q.1].lm());
                order.cmp(&lp, &lq)
            })
            .expect("nonempty pair list");
        let (i, j) = pairs.swap_remove(idx);
        if coprime(basis[i].lm(), basis[j].lm()) {
            continue;
        }
        let l = lcm(basis[i].lm(), basis[j].lm());
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && divides(basis[k].lm(), &l) && !pending(&pairs, i, k) && !pending(&pairs, j, k)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if !r.terms.is_empty() {
            add_to_basis(&mut basis, &mut pairs, r.monic());
        }
    }
    reduce_basis(basis, order).iter().map(|w| w.to_poly(nvars)).collect()
}

fn pending(pairs: &[(usize, usize)], a: usize, b: usize) -> bool {
    let (x, y) = if a < b { (a, b) } else { (b, a) };
    pairs.iter().any(|&(p, q)| p == x && q == y)
}

fn add_to_basis<F: Field>(basis: &mut Vec<Work<F>>, pairs: &mut Vec<(usize, usize)>, g: Work<F>) {
    let n = basis.len();
    basis.push(g);
    for i in 0..n {
        pairs.push((i, n));
    }
}

fn reduce_basis<F: Field>(basis: Vec<Work<F>>, order: MonomialOrder) -> Vec<Work<F>> {
    let mut minimal: Vec<Work<F>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant =
            basis.iter().enumerate().any(|(j, h)| j != i && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || j < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Work<F>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Work<F>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, w)| w.clone()).collect();
        let head = Work { terms: vec![minimal[i].terms[0].clone()] };
        let tail = Work { terms: minimal[i].terms[1..].to_vec() };
        let mut r = normal_form(&tail, &others, order);
        let mut terms = head.terms;
        terms.append(&mut r.terms);
        reduced.push(Work { terms }.monic());
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    reduced
}

/// Normal form of a polynomial modulo a Gröbner basis computed under `order`.
pub fn reduce<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>], order: MonomialOrder) -> Polynomial<F> {
    let b: Vec<Work<F>> = basis.iter().map(|g| Work::from_poly(g, order)).collect();
    normal_form(&Work::from_poly(f, order), &b, order).to_poly(f.nvars())
}
