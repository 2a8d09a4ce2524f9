//! Double description: extreme rays and lineality of `{x : c·x >= 0}` by
//! incremental constraint insertion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::vector::{dot, IntVector};

/// Generators of a polyhedral cone: `cone = span(lineality) + cone(rays)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGenerators {
    /// Canonical basis of the lineality space (reduced echelon form, primitive rows).
    pub lineality: Vec<IntVector>,
    /// Extreme rays modulo lineality, projected orthogonally to it, primitive, sorted.
    pub rays: Vec<IntVector>,
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Vec<bool>,
}

/// Computes the generators of `{x in R^dim : c·x >= 0 for every c}`.
pub fn extreme_rays(dim: usize, constraints: &[IntVector]) -> ConeGenerators {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim).map(|i| IntVector::unit(dim, i).into_inner()).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed = 0usize;

    for c in constraints {
        debug_assert_eq!(c.dim(), dim);
        if c.is_zero() {
            continue;
        }
        let idx = processed;
        processed += 1;
        for r in rays.iter_mut() {
            r.zeros.push(false);
        }

        let pivot = lineality.iter().position(|l| !dot(c, l).is_zero());
        if let Some(p) = pivot {
            let mut l0 = lineality.swap_remove(p);
            let mut a = dot(c, &l0);
            if a.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                a = -a;
            }
            for l in lineality.iter_mut() {
                let cl = dot(c, l);
                if !cl.is_zero() {
                    *l = primitive(l.iter().zip(&l0).map(|(x, y)| &a * x - &cl * y).collect());
                }
            }
            for r in rays.iter_mut() {
                let cr = dot(c, &r.v);
                if !cr.is_zero() {
                    r.v = primitive(r.v.iter().zip(&l0).map(|(x, y)| &a * x - &cr * y).collect());
                }
                r.zeros[idx] = true;
            }
            let mut zeros = vec![true; idx + 1];
            zeros[idx] = false;
            rays.push(Ray { v: primitive(l0), zeros });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                r.zeros[idx] = v.is_zero();
            }
            continue;
        }

        let mut created = Vec::new();
        for &i in &pos {
            for &j in &neg {
                if !adjacent(&rays, i, j, idx) {
                    continue;
                }
                let (vi, vj) = (&values[i], &values[j]);
                let v: Vec<BigInt> = rays[j].v.iter().zip(&rays[i].v).map(|(x, y)| vi * x - vj * y).collect();
                let mut zeros: Vec<bool> = rays[i].zeros.iter().zip(&rays[j].zeros).map(|(a, b)| *a && *b).collect();
                zeros[idx] = true;
                created.push(Ray { v: primitive(v), zeros });
            }
        }
        let mut kept = Vec::with_capacity(rays.len() - neg.len() + created.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            r.zeros[idx] = v.is_zero();
            kept.push(r);
        }
        kept.extend(created);
        rays = kept;
    }

    canonicalize(dim, lineality, rays.into_iter().map(|r| r.v).collect())
}

/// Combinatorial adjacency test over the first `upto` constraints.
fn adjacent(rays: &[Ray], i: usize, j: usize, upto: usize) -> bool {
    let common: Vec<usize> = (0..upto).filter(|&k| rays[i].zeros[k] && rays[j].zeros[k]).collect();
    !rays.iter().enumerate().any(|(k, r)| k != i && k != j && common.iter().all(|&c| r.zeros[c]))
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    IntVector::new(v).primitive().into_inner()
}

fn canonicalize(dim: usize, lineality: Vec<Vec<BigInt>>, rays: Vec<Vec<BigInt>>) -> ConeGenerators {
    let basis = echelon_basis(dim, &lineality);
    let ortho = gram_schmidt(&basis);
    let mut out: Vec<IntVector> = rays.into_iter().map(|r| project_out(&r, &ortho)).filter(|v| !v.is_zero()).collect();
    out.sort();
    out.dedup();
    ConeGenerators { lineality: basis, rays: out }
}

/// Reduced row echelon basis of the span of `vectors`, each row scaled to a
/// primitive integer vector with a positive pivot.
pub(crate) fn echelon_basis(dim: usize, vectors: &[Vec<BigInt>]) -> Vec<IntVector> {
    let mut m: Vec<Vec<BigRational>> =
        vectors.iter().map(|v| v.iter().cloned().map(BigRational::from_integer).collect()).collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let piv = m[rank][col].clone();
        for x in m[rank].iter_mut() {
            *x = &*x / &piv;
        }
        let prow = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m.into_iter().map(|row| clear_denominators(&row)).collect()
}

fn gram_schmidt(basis: &[IntVector]) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for b in basis {
        let mut v: Vec<BigRational> = b.iter().cloned().map(BigRational::from_integer).collect();
        for q in &out {
            let f = rdot(&v, q) / rdot(q, q);
            for (x, y) in v.iter_mut().zip(q) {
                *x -= &f * y;
            }
        }
        out.push(v);
    }
    out
}

fn project_out(r: &[BigInt], ortho: &[Vec<BigRational>]) -> IntVector {
    if ortho.is_empty() {
        return IntVector::new(r.to_vec()).primitive();
    }
    let mut v: Vec<BigRational> = r.iter().cloned().map(BigRational::from_integer).collect();
    for q in ortho {
        let f = rdot(&v, q) / rdot(q, q);
        for (x, y) in v.iter_mut().zip(q) {
            *x -= &f * y;
        }
    }
    clear_denominators(&v)
}

fn rdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
pub(crate) fn clear_denominators(v: &[BigRational]) -> IntVector {
    let l = v.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    IntVector::new(ints).primitive()
}
