//! Rational polyhedral cones given by generators, with facets found by
//! exhaustive search over generator subsets.

use super::lattice::{dot, nullspace, primitive, rank, Vector};

/// A finitely generated cone in `Q^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vector>,
    facets: Vec<Vector>,
    full: bool,
}

impl Cone {
    /// Builds the cone spanned by `gens` (zero vectors ignored).
    pub fn new(dim: usize, gens: &[Vector]) -> Self {
        let mut generators: Vec<Vector> = Vec::new();
        for g in gens {
            assert_eq!(g.len(), dim, "generator dimension mismatch");
            if g.iter().all(|&x| x == 0) {
                continue;
            }
            let p = primitive(g);
            if !generators.contains(&p) {
                generators.push(p);
            }
        }
        let full = rank(&generators) == dim;
        let facets = if full { compute_facets(dim, &generators) } else { Vec::new() };
        Cone { dim, generators, facets, full }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// Inner facet normals (primitive integer vectors).
    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.full
    }

    /// Membership of a lattice point. Only defined for full dimensional cones.
    pub fn contains(&self, v: &[i64]) -> bool {
        assert!(self.full, "membership needs a full dimensional cone");
        self.facets.iter().all(|n| dot(n, v) >= 0)
    }

    /// True when the cone contains no line.
    pub fn is_pointed(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        if !self.full {
            // a lower dimensional cone is pointed iff it is pointed in its span
            return pointed_by_search(self.dim, &self.generators);
        }
        rank(&self.facets) == self.dim
    }

    /// Primitive generators of the extreme rays of a pointed full cone.
    pub fn extreme_rays(&self) -> Vec<Vector> {
        if self.dim == 1 {
            return self.generators.clone();
        }
        self.generators
            .iter()
            .filter(|g| {
                let tight: Vec<Vector> = self.facets.iter().filter(|n| dot(n, g) == 0).cloned().collect();
                rank(&tight) == self.dim - 1
            })
            .cloned()
            .collect()
    }

    /// A linear form positive on every nonzero point of a pointed full cone.
    pub fn positive_form(&self) -> Vector {
        let mut l = vec![0i64; self.dim];
        for n in &self.facets {
            for (a, b) in l.iter_mut().zip(n) {
                *a += b;
            }
        }
        l
    }
}

fn compute_facets(dim: usize, gens: &[Vector]) -> Vec<Vector> {
    let mut facets: Vec<Vector> = Vec::new();
    if dim == 0 {
        return facets;
    }
    if dim == 1 {
        let pos = gens.iter().any(|g| g[0] > 0);
        let neg = gens.iter().any(|g| g[0] < 0);
        if pos && !neg {
            facets.push(vec![1]);
        }
        if neg && !pos {
            facets.push(vec![-1]);
        }
        return facets;
    }
    let k = dim - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    if gens.len() < k {
        return facets;
    }
    loop {
        let subset: Vec<Vector> = idx.iter().map(|&i| gens[i].clone()).collect();
        if rank(&subset) == k {
            let ns = nullspace(&subset, dim);
            if ns.len() == 1 {
                let n = &ns[0];
                let signs: Vec<i64> = gens.iter().map(|g| dot(n, g).signum()).collect();
                let candidate = if signs.iter().all(|&s| s >= 0) {
                    Some(n.clone())
                } else if signs.iter().all(|&s| s <= 0) {
                    Some(n.iter().map(|x| -x).collect())
                } else {
                    None
                };
                if let Some(c) = candidate {
                    let c = primitive(&c);
                    if !facets.contains(&c) {
                        facets.push(c);
                    }
                }
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                facets.sort();
                return facets;
            }
            i -= 1;
            if idx[i] < gens.len() - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn pointed_by_search(dim: usize, gens: &[Vector]) -> bool {
    // Restrict to the span: project onto coordinates of a basis of the span.
    let span_rank = rank(gens);
    if span_rank == 0 {
        return true;
    }
    // choose coordinates forming a complement of the normals
    let mut coords: Vec<usize> = Vec::new();
    for c in 0..dim {
        let mut trial = coords.clone();
        trial.push(c);
        let projected: Vec<Vector> = gens.iter().map(|g| trial.iter().map(|&i| g[i]).collect()).collect();
        if rank(&projected) == trial.len() {
            coords = trial;
        }
        if coords.len() == span_rank {
            break;
        }
    }
    let projected: Vec<Vector> = gens.iter().map(|g| coords.iter().map(|&i| g[i]).collect()).collect();
    Cone::new(span_rank, &projected).is_pointed()
}
