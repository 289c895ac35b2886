//! Integer lattices and small exact linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Integer vector in a lattice `Z^r`.
pub type Vector = Vec<i64>;

/// Row echelon basis of the subgroup of `Z^n` generated by `vectors`,
/// computed with unimodular row operations. Zero rows are dropped.
pub fn lattice_basis(vectors: &[Vector]) -> Vec<Vector> {
    let n = match vectors.first() {
        Some(v) => v.len(),
        None => return Vec::new(),
    };
    let (rows, _) = echelon(vectors.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect(), n);
    rows.into_iter().filter(|r| r.iter().any(|&x| x != 0)).map(|r| r.into_iter().map(to_i64).collect()).collect()
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("lattice entry overflow")
}

/// Integer row echelon form on the first `cols` columns. Returns the rows and
/// the number of pivots.
fn echelon(mut rows: Vec<Vec<i128>>, cols: usize) -> (Vec<Vec<i128>>, usize) {
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row >= rows.len() {
            break;
        }
        loop {
            // choose the row with the smallest nonzero |entry| in column c
            let best = (pivot_row..rows.len()).filter(|&i| rows[i][c] != 0).min_by_key(|&i| rows[i][c].abs());
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let p = rows[pivot_row][c];
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                let q = rows[i][c].div_euclid(p);
                if q != 0 {
                    let pr = rows[pivot_row].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= q * y;
                    }
                }
                if rows[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][c] != 0 {
            if rows[pivot_row][c] < 0 {
                for x in rows[pivot_row].iter_mut() {
                    *x = -*x;
                }
            }
            // reduce entries above the pivot
            let p = rows[pivot_row][c];
            for i in 0..pivot_row {
                let q = rows[i][c].div_euclid(p);
                if q != 0 {
                    let pr = rows[pivot_row].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= q * y;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    (rows, pivot_row)
}

/// Basis of the kernel `{k in Z^m : sum_j k_j * columns[j] = 0}`.
pub fn integer_kernel(columns: &[Vector]) -> Vec<Vector> {
    let m = columns.len();
    if m == 0 {
        return Vec::new();
    }
    let r = columns[0].len();
    let rows: Vec<Vec<i128>> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut row: Vec<i128> = c.iter().map(|&x| x as i128).collect();
            row.extend((0..m).map(|k| if k == j { 1 } else { 0 }));
            row
        })
        .collect();
    let (rows, _) = echelon(rows, r);
    rows.into_iter()
        .filter(|row| row[..r].iter().all(|&x| x == 0))
        .map(|row| row[r..].iter().map(|&x| to_i64(x)).collect())
        .collect()
}

/// Divides a vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Vector {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|&x| x / g).collect()
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], k: i64) -> Vector {
    a.iter().map(|x| x * k).collect()
}

/// Dense rational matrix stored by rows.
pub type Matrix = Vec<Vec<Rational>>;

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a set of integer vectors.
pub fn rank(vectors: &[Vector]) -> usize {
    let mut m: Matrix = vectors.iter().map(|v| to_rational_vec(v)).collect();
    rref(&mut m).len()
}

/// Basis of the rational nullspace `{x : v . x = 0 for all v}`, scaled to
/// primitive integer vectors.
pub fn nullspace(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let mut m: Matrix = vectors.iter().map(|v| to_rational_vec(v)).collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); dim];
            x[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -m[row][f].clone();
            }
            integral_direction(&x)
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction.
pub fn integral_direction(x: &[Rational]) -> Vector {
    let l = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.iter()
        .map(|v| {
            let w = if g.is_zero() { v.clone() } else { v / &g };
            w.to_i64().expect("direction entry overflow")
        })
        .collect()
}

/// Solves `a x = b` for square invertible `a`.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Converts rationals to integers when all are integral.
pub fn as_integers(x: &[Rational]) -> Option<Vector> {
    x.iter().map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None }).collect()
}

/// Integers `a` with `sum a_k v_k = gcd(v)`; returns `(gcd, a)`.
pub fn bezout(v: &[i64]) -> (i64, Vector) {
    let mut g = 0i64;
    let mut coeffs = vec![0i64; v.len()];
    for (k, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if g == 0 {
            g = x.abs();
            coeffs[k] = x.signum();
            continue;
        }
        let e = g.extended_gcd(&x);
        // e.gcd = e.x * g + e.y * x
        for c in coeffs.iter_mut() {
            *c *= e.x;
        }
        coeffs[k] = e.y;
        g = e.gcd;
        if g < 0 {
            g = -g;
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        }
    }
    (g, coeffs)
}

/// Rows of a unimodular matrix `U` with `U v = e_1`, for primitive `v`.
pub fn unimodular_to_first(v: &[i64]) -> Option<Vec<Vector>> {
    let r = v.len();
    let mut u: Vec<Vector> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut a = v.to_vec();
    for i in 1..r {
        if a[i] == 0 {
            continue;
        }
        let e = a[0].extended_gcd(&a[i]);
        let (p, q) = (e.x, e.y);
        let (s, t) = (-a[i] / e.gcd, a[0] / e.gcd);
        let row0: Vector = u[0].iter().zip(&u[i]).map(|(x, y)| p * x + q * y).collect();
        let rowi: Vector = u[0].iter().zip(&u[i]).map(|(x, y)| s * x + t * y).collect();
        u[0] = row0;
        u[i] = rowi;
        a[0] = e.gcd;
        a[i] = 0;
    }
    match a.first() {
        Some(1) => Some(u),
        Some(-1) => {
            u[0] = u[0].iter().map(|x| -x).collect();
            Some(u)
        }
        _ => None,
    }
}

/// Pairing of a rational form with an integer vector.
pub fn dot_rational(form: &[Rational], v: &[i64]) -> Rational {
    form.iter().zip(v).fold(Rational::zero(), |acc, (q, x)| acc + q * rat(*x))
}

/// Returns true when the rational is negative.
pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}
