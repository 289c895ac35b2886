//! Sparse multivariate polynomials over a field, kept in canonical
//! degree-reverse-lexicographic form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Num};

/// Coefficient field used by every polynomial computation.
///
/// Any exact field implementing the `num-traits` arithmetic traits
/// qualifies; the crate instantiates it with arbitrary precision rationals.
pub trait Field: Num + Clone + Neg<Output = Self> + FromPrimitive + fmt::Debug + fmt::Display {}

impl<T> Field for T where T: Num + Clone + Neg<Output = T> + FromPrimitive + fmt::Debug + fmt::Display {}

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// Compares two exponent vectors in degree reverse lexicographic order.
pub fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// Returns true when `a` divides `b` as monomials.
pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Least common multiple of two monomials.
pub fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// A single term `coeff * x^exps`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<F> {
    pub coeff: F,
    pub exps: Exponents,
}

/// A polynomial in a fixed number of variables.
///
/// Terms are sorted strictly decreasing in degrevlex order, carry nonzero
/// coefficients and have pairwise distinct exponents. The empty term list
/// is the zero polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: Vec<Term<F>>,
}

impl<F: Field> Polynomial<F> {
    /// The zero polynomial.
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    /// The constant one.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    /// The variable with the given index.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, F::one(), e)
    }

    /// A single term.
    pub fn monomial(nvars: usize, coeff: F, exps: Exponents) -> Self {
        assert_eq!(exps.len(), nvars, "exponent length mismatch");
        if coeff.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![Term { coeff, exps }] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (F, Exponents)>) -> Self {
        let mut map: BTreeMap<Exponents, F> = BTreeMap::new();
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            let entry = map.entry(e).or_insert_with(F::zero);
            *entry = entry.clone() + c;
        }
        let mut terms: Vec<Term<F>> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(exps, coeff)| Term { coeff, exps }).collect();
        terms.sort_by(|a, b| degrevlex(&b.exps, &a.exps));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for nonzero constants.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].exps.iter().all(|&e| e == 0)
    }

    /// True when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under degrevlex.
    pub fn leading(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exps.iter().sum()).max()
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.exps[var]).max().unwrap_or(0)
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: t.coeff.clone() * c.clone(), exps: t.exps.clone() })
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(t) => self.scale(&(F::one() / t.coeff.clone())),
        }
    }

    /// Multiplies by a monomial `c * x^e`.
    pub fn mul_term(&self, c: &F, e: &[u32]) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone() * c.clone(),
                    exps: t.exps.iter().zip(e).map(|(a, b)| a + b).collect(),
                })
                .collect(),
        }
    }

    /// Raises to a nonnegative power.
    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to one variable.
    pub fn partial(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|t| t.exps[var] > 0).map(|t| {
            let mut e = t.exps.clone();
            let k = e[var];
            e[var] -= 1;
            (t.coeff.clone() * F::from_u32(k).expect("exponent fits the field"), e)
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Multiplies every term by a scalar depending on its exponents.
    pub fn map_terms_scalar(&self, f: impl Fn(&[u32]) -> F) -> Self {
        let terms = self.terms.iter().map(|t| (t.coeff.clone() * f(&t.exps), t.exps.clone()));
        Self::from_terms(self.nvars, terms)
    }

    /// Sets one variable to zero, keeping the variable count.
    pub fn set_zero(&self, var: usize) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().filter(|t| t.exps[var] == 0).cloned().collect() }
    }

    /// True when the variable does not occur.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.iter().all(|t| t.exps[var] == 0)
    }

    /// Reindexes variables: variable `i` moves to position `map[i]` in a ring
    /// with `nvars` variables. Variables mapped to `None` must not occur.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Self {
        let terms = self.terms.iter().map(|t| {
            let mut e = vec![0; nvars];
            for (i, &k) in t.exps.iter().enumerate() {
                if k > 0 {
                    let j = map[i].expect("remapped variable occurs in polynomial");
                    e[j] += k;
                }
            }
            (t.coeff.clone(), e)
        });
        Self::from_terms(nvars, terms)
    }

    /// Substitutes a polynomial for each variable.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<Polynomial<F>>> = vec![Vec::new(); self.nvars];
        let mut acc: BTreeMap<Exponents, F> = BTreeMap::new();
        for t in &self.terms {
            let mut prod = Polynomial::constant(target, t.coeff.clone());
            for (i, &k) in t.exps.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Polynomial::one(target));
                }
                while powers.len() <= k as usize {
                    let next = powers.last().expect("nonempty") * &images[i];
                    powers.push(next);
                }
                prod = &prod * &powers[k as usize];
            }
            for term in prod.terms {
                let entry = acc.entry(term.exps).or_insert_with(F::zero);
                *entry = entry.clone() + term.coeff;
            }
        }
        Self::from_terms(target, acc.into_iter().map(|(e, c)| (c, e)))
    }

    /// Exact division by a monomial, returning `None` when some term is
    /// not divisible.
    pub fn div_monomial(&self, e: &[u32]) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !divides(e, &t.exps) {
                return None;
            }
            terms.push(Term { coeff: t.coeff.clone(), exps: t.exps.iter().zip(e).map(|(a, b)| a - b).collect() });
        }
        Some(Polynomial { nvars: self.nvars, terms })
    }

    /// Formats the polynomial with the given variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let mut coeff = t.coeff.clone();
            let negative = is_negative(&coeff);
            if negative {
                coeff = -coeff;
            }
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &p) in t.exps.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], p)),
                }
            }
            let c = coeff.to_string();
            if factors.is_empty() {
                out.push_str(&c);
            } else {
                if !coeff.is_one() {
                    out.push_str(&c);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

fn is_negative<F: Field>(c: &F) -> bool {
    c.to_string().starts_with('-')
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (a, b) = (&self.terms[i], &rhs.terms[j]);
            match degrevlex(&a.exps, &b.exps) {
                Ordering::Greater => {
                    terms.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.coeff.clone() + b.coeff.clone();
                    if !c.is_zero() {
                        terms.push(Term { coeff: c, exps: a.exps.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&rhs.terms[j..]);
        Polynomial { nvars: self.nvars, terms }
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&(-F::one()))
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut acc: BTreeMap<Exponents, F> = BTreeMap::new();
        for a in &self.terms {
            for b in &rhs.terms {
                let e: Exponents = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
                let entry = acc.entry(e).or_insert_with(F::zero);
                *entry = entry.clone() + a.coeff.clone() * b.coeff.clone();
            }
        }
        Polynomial::from_terms(self.nvars, acc.into_iter().map(|(e, c)| (c, e)))
    }
}
