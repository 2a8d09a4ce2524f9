//! Affine semigroups `sg(A)`: membership, associated cone, intersections.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::cone::{contains_nonzero, intersect_cones, is_pointed, RationalCone};
use crate::diophantine::{hilbert_basis_homogeneous, SolutionSpace, SolutionVector};
use crate::error::{Error, Result};
use crate::vector::{combine, IntVector};

/// All nonnegative integer combinations of a finite generator list.
///
/// Zero generators are dropped and duplicates removed at construction; the
/// first occurrence keeps its position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineSemigroup {
    dim: usize,
    generators: Vec<IntVector>,
}

impl AffineSemigroup {
    pub fn new(dim: usize, generators: Vec<IntVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
        }
        let mut kept: Vec<IntVector> = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(AffineSemigroup { dim, generators: kept })
    }

    pub fn from_i64s(dim: usize, generators: &[&[i64]]) -> Result<Self> {
        Self::new(dim, generators.iter().map(|g| IntVector::from_i64s(g)).collect())
    }

    /// Numerical semigroup generated by positive integers.
    pub fn numerical(generators: &[i64]) -> Self {
        Self::new(1, generators.iter().map(|&a| IntVector::from_i64s(&[a])).collect()).expect("dimension 1")
    }

    pub fn trivial(dim: usize) -> Self {
        AffineSemigroup { dim, generators: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn cone(&self) -> RationalCone {
        RationalCone::new(self.dim, self.generators.clone()).expect("generators share the dimension")
    }

    pub fn is_pointed(&self) -> bool {
        is_pointed(&self.cone()).pointed
    }

    /// Reusable membership structure; requires a pointed semigroup.
    pub fn solution_space(&self) -> Result<SolutionSpace> {
        SolutionSpace::new(self.dim, self.generators.clone())
    }

    /// One representation of `b`, if `b` lies in the semigroup.
    pub fn representation(&self, b: &IntVector) -> Result<Option<SolutionVector>> {
        self.check_dim(b)?;
        Ok(self.solution_space()?.first_solution(b))
    }

    pub fn contains(&self, b: &IntVector) -> Result<bool> {
        Ok(self.representation(b)?.is_some())
    }

    fn check_dim(&self, b: &IntVector) -> Result<()> {
        if b.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: b.dim() });
        }
        Ok(())
    }
}

impl std::fmt::Display for AffineSemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sg(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

pub fn cone_of(s: &AffineSemigroup) -> RationalCone {
    s.cone()
}

pub fn is_pointed_semigroup(s: &AffineSemigroup) -> bool {
    s.is_pointed()
}

/// Minimal generators of `S1 ∩ S2`.
pub fn intersect_semigroups(s1: &AffineSemigroup, s2: &AffineSemigroup) -> Result<AffineSemigroup> {
    intersect_family(&[s1.clone(), s2.clone()])
}

/// Minimal generators of `S_1 ∩ ... ∩ S_n` for a nonempty family.
///
/// Computes the Hilbert basis of `{(x_1, ..., x_n) >= 0 : A_1 x_1 = A_i x_i}`
/// in one system, maps each element to `A_1 x_1` and discards images
/// generated by the remaining ones. Output generators are sorted
/// lexicographically. When the image set is not pointed the generating set
/// is returned without the minimality pass.
pub fn intersect_family(family: &[AffineSemigroup]) -> Result<AffineSemigroup> {
    let Some(first) = family.first() else {
        return Err(Error::InvalidArgument("the family needs at least one member".into()));
    };
    let dim = first.dim;
    if let Some(s) = family.iter().find(|s| s.dim != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: s.dim });
    }
    if family.iter().any(AffineSemigroup::is_trivial) {
        return Ok(AffineSemigroup::trivial(dim));
    }
    if dim == 1 {
        if let Some(generators) = intersect_one_dimensional(family) {
            return Ok(AffineSemigroup { dim, generators });
        }
    }
    let family = drop_supersets(family);
    let first = &family[0];
    if family.len() == 1 {
        let mut generators = minimal_generators(dim, first.generators.clone());
        generators.sort();
        return Ok(AffineSemigroup { dim, generators });
    }
    let n1 = first.generators.len();
    let num_vars: usize = family.iter().map(|s| s.generators.len()).sum();
    let mut rows: Vec<IntVector> = Vec::with_capacity(dim * (family.len() - 1));
    let mut offset = n1;
    for s in &family[1..] {
        for r in 0..dim {
            let mut row = vec![BigInt::from(0); num_vars];
            for (j, g) in first.generators.iter().enumerate() {
                row[j] = g[r].clone();
            }
            for (j, g) in s.generators.iter().enumerate() {
                row[offset + j] = -&g[r];
            }
            rows.push(IntVector::new(row));
        }
        offset += s.generators.len();
    }
    let basis = hilbert_basis_homogeneous(&rows, num_vars);
    let mut images: Vec<IntVector> =
        basis.iter().map(|h| combine(&first.generators, &h[..n1], dim)).filter(|v| !v.is_zero()).collect();
    images.sort();
    images.dedup();
    let mut generators = minimal_generators(dim, images);
    generators.sort();
    Ok(AffineSemigroup { dim, generators })
}

/// Largest membership table used by the one-dimensional path.
const TABLE_LIMIT: u64 = 1 << 24;

/// Minimal generators of an intersection of one-dimensional pointed
/// semigroups from membership tables; `None` when some member has both signs
/// or the tables would be too large.
///
/// With `d_i = gcd(A_i)` and `c_i` the conductor of `sg(A_i)`, every multiple
/// of `L = lcm(d_i)` from `C = max c_i` on lies in the intersection. With `m`
/// its least nonzero element, every minimal generator is below `C + m`.
fn intersect_one_dimensional(family: &[AffineSemigroup]) -> Option<Vec<IntVector>> {
    let mut sign = 0i8;
    let mut classes: Vec<Vec<u64>> = Vec::with_capacity(family.len());
    for s in family {
        let values: Vec<i64> = s.generators.iter().map(|g| i64::try_from(&g[0]).ok()).collect::<Option<_>>()?;
        let member_sign = if values.iter().all(|&x| x > 0) {
            1
        } else if values.iter().all(|&x| x < 0) {
            -1
        } else {
            return None;
        };
        if sign != 0 && sign != member_sign {
            return Some(Vec::new());
        }
        sign = member_sign;
        classes.push(values.iter().map(|x| x.unsigned_abs()).collect());
    }
    let mut l = 1u64;
    let mut c = 0u64;
    for a in &classes {
        let d = a.iter().fold(0u64, |g, &x| g.gcd(&x));
        l = l.checked_mul(d / l.gcd(&d))?;
        let scaled: Vec<u64> = a.iter().map(|x| x / d).collect();
        let f = crate::numerical::frobenius(&scaled).ok()?;
        c = c.max(u64::try_from(f + 1).ok()?.checked_mul(d)?);
    }
    let c = c.div_ceil(l).checked_mul(l)?;
    let limit = c.checked_add(c.max(l))?;
    if limit > TABLE_LIMIT {
        return None;
    }
    let tables: Vec<Vec<bool>> = classes.iter().map(|a| crate::numerical::membership_table(a, limit)).collect();
    let mut reach = vec![false; limit as usize + 1];
    reach[0] = true;
    let mut kept: Vec<u64> = Vec::new();
    for x in (l..=limit).step_by(l as usize) {
        let i = x as usize;
        reach[i] = kept.iter().any(|&g| reach[i - g as usize]);
        if !reach[i] && tables.iter().all(|t| t[i]) {
            kept.push(x);
            reach[i] = true;
        }
    }
    let mut generators: Vec<IntVector> =
        kept.into_iter().map(|x| IntVector::new(vec![BigInt::from(sign) * BigInt::from(x)])).collect();
    generators.sort();
    Some(generators)
}

/// Removes members containing another remaining member; the intersection
/// is unchanged.
fn drop_supersets(family: &[AffineSemigroup]) -> Vec<AffineSemigroup> {
    let mut kept: Vec<AffineSemigroup> = family.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let space = if kept[i].is_pointed() { kept[i].solution_space().ok() } else { None };
        let contains_other = space.is_some_and(|space| {
            (0..kept.len()).any(|j| j != i && kept[j].generators.iter().all(|g| space.contains(g)))
        });
        if contains_other {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// Drops every element representable by the others. Needs a pointed set.
///
/// Candidates are scanned by increasing positive grading, so each one is
/// tested only against the kept generators of smaller degree.
pub(crate) fn minimal_generators(dim: usize, gens: Vec<IntVector>) -> Vec<IntVector> {
    let Some(w) = crate::cone::pointedness_of(dim, &gens).witness else {
        return gens;
    };
    let mut graded: Vec<(BigInt, IntVector)> = gens.into_iter().map(|g| (w.dot(&g), g)).collect();
    graded.sort();
    graded.dedup();
    let mut kept: Vec<(BigInt, IntVector)> = Vec::new();
    for (degree, g) in graded {
        let smaller: Vec<IntVector> = kept.iter().filter(|(d, _)| *d < degree).map(|(_, h)| h.clone()).collect();
        let redundant =
            !smaller.is_empty() && SolutionSpace::new(dim, smaller).expect("subset of a pointed set").contains(&g);
        if !redundant {
            kept.push((degree, g));
        }
    }
    kept.into_iter().map(|(_, g)| g).collect()
}

/// Outcome of the nontriviality test for `S_1 ∩ ... ∩ S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyIntersection {
    pub nontrivial: bool,
    /// Nonzero primitive point of the cone intersection.
    pub cone_point: Option<IntVector>,
    /// A common nonzero element of every member; absent when some member is
    /// not pointed.
    pub witness: Option<IntVector>,
}

/// Decides whether a family of semigroups shares a nonzero element by
/// intersecting their cones. A nonzero cone point `p` is scaled into each
/// member and `lcm(k_i) p` returned as the common element.
pub fn family_intersection_nontrivial(family: &[AffineSemigroup]) -> Result<FamilyIntersection> {
    let cones: Vec<RationalCone> = family.iter().map(AffineSemigroup::cone).collect();
    let meet = intersect_cones(&cones)?;
    let Some(p) = contains_nonzero(&meet) else {
        return Ok(FamilyIntersection { nontrivial: false, cone_point: None, witness: None });
    };
    let witness = if family.iter().all(AffineSemigroup::is_pointed) {
        let mut l = BigInt::one();
        for s in family {
            l = l.lcm(&scale_into(s, &p)?);
        }
        Some(p.scaled(&l))
    } else {
        None
    };
    Ok(FamilyIntersection { nontrivial: true, cone_point: Some(p), witness })
}

/// Smallest `k >= 1` with `k p` in `S`, for a nonzero integer point `p` of the cone.
pub fn scale_into(s: &AffineSemigroup, p: &IntVector) -> Result<BigInt> {
    s.check_dim(p)?;
    if p.is_zero() || !s.cone().contains(p) {
        return Err(Error::PointNotInCone(p.clone()));
    }
    let space = s.solution_space()?;
    let mut k = BigInt::one();
    let mut kp = p.clone();
    loop {
        if space.contains(&kp) {
            return Ok(k);
        }
        k += 1;
        kp = &kp + p;
        debug_assert!(!kp.is_zero());
    }
}

/// Every element of `s` with coordinate sum (of absolute values) at most
/// `limit`, by breadth-first closure. Used as a test oracle.
pub fn elements_up_to(s: &AffineSemigroup, limit: u64) -> Vec<IntVector> {
    let norm = |v: &IntVector| -> BigInt { v.iter().map(Signed::abs).sum() };
    let limit = BigInt::from(limit);
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier = vec![IntVector::zeros(s.dim)];
    seen.insert(IntVector::zeros(s.dim));
    while let Some(v) = frontier.pop() {
        for g in &s.generators {
            let w = &v + g;
            if norm(&w) <= limit && seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen.into_iter().collect()
}
