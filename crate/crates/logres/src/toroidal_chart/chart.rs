//! Affine toroidal charts: ordinary variables, a saturated affine monoid of
//! boundary monomials, binomial relations and orbifold characters.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{format_rational, Ring};
use crate::monoid_lattice::lattice::rank;
use crate::monoid_lattice::{decompose, hilbert_basis, present_monoid_algebra, AffineMonoid, Cone, Vector};
use crate::{Poly, Rational};

/// A character of the finite deck group, given as a rational linear form
/// modulo 1 on the lattice together with rational weights on the ordinary
/// variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub lattice: Vec<Rational>,
    pub ordinary: Vec<Rational>,
}

fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

impl Character {
    /// Weight (in `[0,1)`) of a monomial with the given chart exponents.
    pub fn weight_of(&self, chart: &Chart, exps: &[u32]) -> Rational {
        let n = chart.ordinary.len();
        let mut w = Rational::zero();
        for (i, q) in self.ordinary.iter().enumerate() {
            w += q * Rational::from_integer(exps[i].into());
        }
        let gamma = chart.lattice_vector(&exps[n..]);
        for (q, g) in self.lattice.iter().zip(&gamma) {
            w += q * Rational::from_integer((*g).into());
        }
        frac(&w)
    }

    /// Weights of all chart variables in `[0,1)`.
    pub fn variable_weights(&self, chart: &Chart) -> Vec<Rational> {
        (0..chart.nvars())
            .map(|i| {
                let mut e = vec![0u32; chart.nvars()];
                e[i] = 1;
                self.weight_of(chart, &e)
            })
            .collect()
    }

    /// `(modulus, integer weights)` display form.
    pub fn display(&self, chart: &Chart) -> (i64, Vec<i64>) {
        let ws = self.variable_weights(chart);
        let modulus = ws.iter().fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let m = Rational::from_integer(modulus.clone());
        let ints = ws.iter().map(|q| (q * &m).to_integer().to_i64().expect("weight fits")).collect();
        (modulus.to_i64().expect("modulus fits"), ints)
    }

    pub fn is_trivial(&self, chart: &Chart) -> bool {
        self.variable_weights(chart).iter().all(|w| w.is_zero())
    }
}

/// Where a chart came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub parent: String,
    pub step: String,
}

/// An affine toroidal orbifold chart.
///
/// Variables are indexed ordinary first, then monomial generators. The
/// coordinate ring is the polynomial ring modulo the toric relations,
/// localized at the `inverted` polynomials.
#[derive(Clone, Debug)]
pub struct Chart {
    pub id: String,
    pub ordinary: Vec<String>,
    pub monomial: Vec<String>,
    pub rank: usize,
    pub vectors: Vec<Vector>,
    pub relations: Vec<Poly>,
    pub characters: Vec<Character>,
    pub inverted: Vec<Poly>,
    pub provenance: Option<Provenance>,
    cone: Cone,
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.ordinary == other.ordinary
            && self.monomial == other.monomial
            && self.rank == other.rank
            && self.vectors == other.vectors
            && self.relations == other.relations
            && self.characters == other.characters
            && self.inverted == other.inverted
            && self.provenance == other.provenance
    }
}

impl Chart {
    /// Builds and validates a chart without characters or localization.
    pub fn new(
        id: impl Into<String>,
        ordinary: Vec<String>,
        monomial: Vec<String>,
        rank_: usize,
        vectors: Vec<Vector>,
    ) -> Result<Chart> {
        Chart::with_data(id, ordinary, monomial, rank_, vectors, Vec::new(), Vec::new())
    }

    /// Builds and validates a chart with orbifold characters and inverted
    /// polynomials. Trivial characters are dropped.
    pub fn with_data(
        id: impl Into<String>,
        ordinary: Vec<String>,
        monomial: Vec<String>,
        rank_: usize,
        vectors: Vec<Vector>,
        characters: Vec<Character>,
        inverted: Vec<Poly>,
    ) -> Result<Chart> {
        let mut names: Vec<&String> = ordinary.iter().chain(&monomial).collect();
        names.sort();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("variable names must be unique".into()));
        }
        if monomial.len() != vectors.len() {
            return Err(Error::Invalid("one lattice vector per monomial variable is required".into()));
        }
        for v in &vectors {
            if v.len() != rank_ {
                return Err(Error::Invalid(format!("vector {v:?} does not have rank {rank_}")));
            }
        }
        if rank(&vectors) != rank_ {
            return Err(Error::Invalid("monoid generators must span the lattice".into()));
        }
        let monoid = AffineMonoid::new(rank_, vectors.clone())?;
        let hb = hilbert_basis(rank_, &monoid.generators)?;
        if let Some(missing) = hb.iter().find(|h| !vectors.contains(h)) {
            return Err(Error::NotSaturated(format!("{missing:?} is missing from the generators")));
        }
        if hb.len() != vectors.len() {
            return Err(Error::NotSaturated("generators are not a minimal Hilbert basis".into()));
        }
        let n = ordinary.len();
        let m = monomial.len();
        let map: Vec<Option<usize>> = (0..m).map(|j| Some(n + j)).collect();
        let relations = present_monoid_algebra(&vectors).iter().map(|r| r.remap(n + m, &map)).collect();
        for c in &characters {
            if c.lattice.len() != rank_ || c.ordinary.len() != n {
                return Err(Error::Invalid("character has wrong length".into()));
            }
        }
        let cone = Cone::new(rank_, &vectors);
        let mut chart = Chart {
            id: id.into(),
            ordinary,
            monomial,
            rank: rank_,
            vectors,
            relations,
            characters: Vec::new(),
            inverted,
            provenance: None,
            cone,
        };
        let kept: Vec<Character> = characters.into_iter().filter(|c| !c.is_trivial(&chart)).collect();
        chart.characters = kept;
        Ok(chart)
    }

    /// Smooth chart `k[x_1..x_n]` with trivial log structure.
    pub fn affine(id: impl Into<String>, ordinary: &[&str]) -> Chart {
        Chart::new(id, ordinary.iter().map(|s| s.to_string()).collect(), Vec::new(), 0, Vec::new())
            .expect("affine space is a valid chart")
    }

    /// Smooth toric chart `k[x..][u..]` with the monomial variables free.
    pub fn smooth(id: impl Into<String>, ordinary: &[&str], monomial: &[&str]) -> Chart {
        let r = monomial.len();
        let vectors = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        Chart::new(
            id,
            ordinary.iter().map(|s| s.to_string()).collect(),
            monomial.iter().map(|s| s.to_string()).collect(),
            r,
            vectors,
        )
        .expect("free monoid chart is valid")
    }

    pub fn nvars(&self) -> usize {
        self.ordinary.len() + self.monomial.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.ordinary.iter().chain(&self.monomial).cloned().collect()
    }

    pub fn is_ordinary(&self, var: usize) -> bool {
        var < self.ordinary.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn monoid(&self) -> AffineMonoid {
        AffineMonoid { rank: self.rank, generators: self.vectors.clone() }
    }

    /// The presented ring used for every ideal-theoretic test.
    pub fn ring(&self) -> Ring<Rational> {
        Ring::new(self.nvars(), self.relations.clone(), self.inverted.clone())
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        crate::exact_algebra::parse_polynomial(text, &self.names())
    }

    pub fn parse_all(&self, texts: &[&str]) -> Result<Vec<Poly>> {
        texts.iter().map(|t| self.parse(t)).collect()
    }

    pub fn format(&self, f: &Poly) -> String {
        f.to_string_with(&self.names())
    }

    pub fn format_all(&self, fs: &[Poly]) -> Vec<String> {
        fs.iter().map(|f| self.format(f)).collect()
    }

    /// Lattice vector of a monomial given its monomial-block exponents.
    pub fn lattice_vector(&self, mono_exps: &[u32]) -> Vector {
        let mut v = vec![0i64; self.rank];
        for (e, g) in mono_exps.iter().zip(&self.vectors) {
            for (a, b) in v.iter_mut().zip(g) {
                *a += i64::from(*e) * b;
            }
        }
        v
    }

    /// Lattice vector of a full exponent vector (ordinary part ignored).
    pub fn term_lattice_vector(&self, exps: &[u32]) -> Vector {
        self.lattice_vector(&exps[self.ordinary.len()..])
    }

    /// Membership of a lattice vector in the monoid.
    pub fn in_monoid(&self, v: &[i64]) -> bool {
        if self.rank == 0 {
            return true;
        }
        self.cone.contains(v)
    }

    /// Monomial-block exponents realizing a monoid element.
    pub fn monomial_exponents(&self, v: &[i64]) -> Option<Vec<u32>> {
        if self.rank == 0 {
            return Some(Vec::new());
        }
        decompose(&self.cone, &self.vectors, v)
    }

    /// The monomial of a monoid element as a polynomial.
    pub fn monomial_poly(&self, v: &[i64]) -> Option<Poly> {
        let e = self.monomial_exponents(v)?;
        let mut exps = vec![0u32; self.ordinary.len()];
        exps.extend(e);
        Some(Poly::monomial(self.nvars(), Rational::one(), exps))
    }

    /// True when every term has the same weight under each character.
    pub fn is_semi_invariant(&self, f: &Poly) -> bool {
        self.characters.iter().all(|c| {
            let mut ws = f.terms().iter().map(|t| c.weight_of(self, &t.exps));
            match ws.next() {
                None => true,
                Some(first) => ws.all(|w| w == first),
            }
        })
    }

    /// Character display data `(modulus, weights over all variables)`.
    pub fn character_display(&self) -> Vec<(i64, Vec<i64>)> {
        self.characters.iter().map(|c| c.display(self)).collect()
    }

    /// One-line human readable description.
    pub fn describe(&self) -> String {
        let mono: Vec<String> = self.monomial.iter().zip(&self.vectors).map(|(n, v)| format!("{n}={v:?}")).collect();
        let rel = self.format_all(&self.relations).join(", ");
        let inv = self.format_all(&self.inverted).join(", ");
        let chars: Vec<String> = self.character_display().iter().map(|(m, w)| format!("Z/{m}{w:?}")).collect();
        format!(
            "{} ordinary [{}] monomial [{}] relations [{}] inverted [{}] characters [{}]",
            self.id,
            self.ordinary.join(", "),
            mono.join(", "),
            rel,
            inv,
            chars.join(", ")
        )
    }
}

/// A ring map between charts given by the image of each source variable.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartMap {
    pub images: Vec<Poly>,
}

impl ChartMap {
    pub fn apply(&self, f: &Poly) -> Poly {
        if self.images.is_empty() {
            return f.clone();
        }
        f.substitute(&self.images)
    }

    pub fn apply_all(&self, fs: &[Poly]) -> Vec<Poly> {
        fs.iter().map(|f| self.apply(f)).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ChartMap) -> ChartMap {
        ChartMap { images: self.images.iter().map(|p| next.apply(p)).collect() }
    }
}

/// Picks a name not in `used`, trying a fixed list first.
pub fn fresh_name(used: &[String]) -> String {
    for n in ["v", "w", "s", "t", "p", "q", "r"] {
        if !used.iter().any(|u| u == n) {
            return n.to_string();
        }
    }
    (1..).map(|i| format!("z{i}")).find(|n| !used.contains(n)).expect("infinitely many names")
}

/// Rational vector formatting used in diagnostics.
pub fn format_form(q: &[Rational]) -> String {
    let parts: Vec<String> = q.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}
