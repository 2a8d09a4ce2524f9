//! Nonnegative integer solutions of `Ax = b`.
//!
//! Enumeration is a depth-first search over the columns in index order. At
//! column `j` the admissible multiplicities form an integer interval, read
//! off from the inequality description of the cone spanned by the remaining
//! columns `j+1..n`: the residual must stay inside it. A strict-positivity
//! witness `w` of the full column set caps every interval, so the search is
//! finite whenever the columns span a pointed cone.

mod hilbert;

use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cone::{pointedness_of, HRep, RationalCone};
use crate::error::{Error, Result};
use crate::vector::{combine, IntVector};

pub use hilbert::hilbert_basis_homogeneous;

/// `Ax = b, x >= 0` with the columns of `A` stored as generator vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineInstance {
    dim: usize,
    columns: Vec<IntVector>,
    target: IntVector,
}

impl DiophantineInstance {
    pub fn new(dim: usize, columns: Vec<IntVector>, target: IntVector) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        for c in columns.iter().chain(std::iter::once(&target)) {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
            }
        }
        Ok(DiophantineInstance { dim, columns, target })
    }

    /// One-row instance `a·x = b`.
    pub fn numerical(coeffs: &[i64], target: i64) -> Self {
        let columns = coeffs.iter().map(|&a| IntVector::from_i64s(&[a])).collect();
        DiophantineInstance { dim: 1, columns, target: IntVector::from_i64s(&[target]) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[IntVector] {
        &self.columns
    }

    pub fn target(&self) -> &IntVector {
        &self.target
    }
}

/// A nonnegative multiplicity vector over the generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SolutionVector(IntVector);

impl SolutionVector {
    pub fn new(multiplicities: IntVector) -> Result<Self> {
        if !multiplicities.is_nonnegative() {
            return Err(Error::InvalidArgument(format!("negative multiplicity in {multiplicities}")));
        }
        Ok(SolutionVector(multiplicities))
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        SolutionVector(IntVector::new(counts.iter().map(|&c| BigInt::from(c)).collect()))
    }

    pub fn multiplicities(&self) -> &IntVector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.0.dim() == 0
    }

    /// Indices with nonzero multiplicity.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }

    /// `A x` for the given generator columns.
    pub fn evaluate(&self, columns: &[IntVector], dim: usize) -> IntVector {
        combine(columns, &self.0, dim)
    }

    /// Embeds a solution over a subset of columns into `len` coordinates.
    pub fn scatter(&self, indices: &[usize], len: usize) -> SolutionVector {
        let mut out = vec![BigInt::zero(); len];
        for (x, &i) in self.0.iter().zip(indices) {
            out[i] = x.clone();
        }
        SolutionVector(IntVector::new(out))
    }
}

impl std::fmt::Display for SolutionVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Precomputed search structure for a fixed, pointed column set; reusable
/// across right-hand sides.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    dim: usize,
    columns: Vec<IntVector>,
    witness: IntVector,
    witness_values: Vec<BigInt>,
    /// `suffix[j]` describes `cone(a_j, ..., a_{n-1})`; `suffix[n]` is `{0}`.
    suffix: Vec<HRep>,
}

impl SolutionSpace {
    pub fn new(dim: usize, columns: Vec<IntVector>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
        }
        if let Some(i) = columns.iter().position(IntVector::is_zero) {
            return Err(Error::ZeroColumn(i));
        }
        let p = pointedness_of(dim, &columns);
        let witness = p.witness.ok_or(Error::NotPointed)?;
        let witness_values = columns.iter().map(|c| witness.dot(c)).collect();
        let n = columns.len();
        let mut suffix = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let cone = RationalCone::new(dim, columns[j..].to_vec())?;
            suffix.push(cone.hrep().clone());
        }
        Ok(SolutionSpace { dim, columns, witness, witness_values, suffix })
    }

    pub fn for_instance(instance: &DiophantineInstance) -> Result<Self> {
        Self::new(instance.dim, instance.columns.clone())
    }

    pub fn columns(&self) -> &[IntVector] {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The strict-positivity functional bounding every coordinate.
    pub fn witness(&self) -> &IntVector {
        &self.witness
    }

    /// Calls `visit` on every solution in lexicographic order until it breaks.
    pub fn for_each_solution<F>(&self, target: &IntVector, mut visit: F)
    where
        F: FnMut(&[BigInt]) -> ControlFlow<()>,
    {
        if target.dim() != self.dim || !self.suffix[0].contains(target) {
            return;
        }
        let mut x = vec![BigInt::zero(); self.columns.len()];
        let _ = self.search(0, target.entries().to_vec(), &mut x, &mut visit);
    }

    fn search<F>(&self, j: usize, residual: Vec<BigInt>, x: &mut [BigInt], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[BigInt]) -> ControlFlow<()>,
    {
        if j == self.columns.len() {
            debug_assert!(residual.iter().all(Zero::is_zero));
            return visit(x);
        }
        let Some((lo, hi)) = self.interval(j, &residual) else {
            return ControlFlow::Continue(());
        };
        let col = &self.columns[j];
        let mut t = lo.clone();
        let mut r: Vec<BigInt> = residual.iter().zip(col.iter()).map(|(a, c)| a - c * &t).collect();
        while t <= hi {
            x[j] = t.clone();
            self.search(j + 1, r.clone(), x, visit)?;
            for (a, c) in r.iter_mut().zip(col.iter()) {
                *a -= c;
            }
            t += 1;
        }
        x[j] = BigInt::zero();
        ControlFlow::Continue(())
    }

    /// Integer interval of `t >= 0` with `residual - t a_j` in the cone of
    /// the remaining columns.
    fn interval(&self, j: usize, residual: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let col = &self.columns[j];
        let rest = &self.suffix[j + 1];
        let mut lo = BigInt::zero();
        let wr = self.witness.dot(residual);
        if wr.is_negative() {
            return None;
        }
        let mut hi = wr.div_floor(&self.witness_values[j]);
        for e in &rest.equalities {
            let er = e.dot(residual);
            let ea = e.dot(col);
            if ea.is_zero() {
                if !er.is_zero() {
                    return None;
                }
                continue;
            }
            let (q, rem) = er.div_rem(&ea);
            if !rem.is_zero() {
                return None;
            }
            lo = lo.max(q.clone());
            hi = hi.min(q);
        }
        for f in &rest.facets {
            // f·r - t f·a >= 0
            let fr = f.dot(residual);
            let fa = f.dot(col);
            if fa.is_positive() {
                hi = hi.min(fr.div_floor(&fa));
            } else if fa.is_negative() {
                // t >= -fr / |fa|
                let bound = -(fr.div_floor(&(-&fa)));
                lo = lo.max(bound);
            } else if fr.is_negative() {
                return None;
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// All solutions, lexicographically sorted.
    pub fn solutions(&self, target: &IntVector) -> Vec<SolutionVector> {
        let mut out = Vec::new();
        self.for_each_solution(target, |x| {
            out.push(SolutionVector(IntVector::new(x.to_vec())));
            ControlFlow::Continue(())
        });
        out.sort();
        out
    }

    /// The lexicographically first solution, if any.
    pub fn first_solution(&self, target: &IntVector) -> Option<SolutionVector> {
        let mut found = None;
        self.for_each_solution(target, |x| {
            found = Some(SolutionVector(IntVector::new(x.to_vec())));
            ControlFlow::Break(())
        });
        found
    }

    pub fn contains(&self, target: &IntVector) -> bool {
        self.first_solution(target).is_some()
    }

    pub fn count(&self, target: &IntVector) -> BigUint {
        let mut n = BigUint::zero();
        self.for_each_solution(target, |_| {
            n += 1u32;
            ControlFlow::Continue(())
        });
        n
    }
}

/// Every nonnegative integer solution of the instance, sorted.
pub fn enumerate_solutions(instance: &DiophantineInstance) -> Result<Vec<SolutionVector>> {
    Ok(SolutionSpace::for_instance(instance)?.solutions(&instance.target))
}

/// Membership `b in sg(A)` with one witness solution.
pub fn is_member(instance: &DiophantineInstance) -> Result<Option<SolutionVector>> {
    Ok(SolutionSpace::for_instance(instance)?.first_solution(&instance.target))
}

/// Number of solutions supported inside the `allowed` columns.
pub fn count_solutions(instance: &DiophantineInstance, allowed: &[usize]) -> Result<BigUint> {
    let mut allowed = allowed.to_vec();
    allowed.sort_unstable();
    allowed.dedup();
    if let Some(&i) = allowed.iter().find(|&&i| i >= instance.columns.len()) {
        return Err(Error::InvalidArgument(format!("column index {i} out of range")));
    }
    let b = &instance.target;
    if allowed.is_empty() {
        return Ok(if b.is_zero() { BigUint::one() } else { BigUint::zero() });
    }
    let cols: Vec<IntVector> = allowed.iter().map(|&i| instance.columns[i].clone()).collect();
    if instance.dim == 1 && cols.iter().all(|c| c[0].is_positive()) {
        let Some(target) = b[0].to_u64() else {
            return Ok(BigUint::zero());
        };
        let coins: Option<Vec<u64>> = cols.iter().map(|c| c[0].to_u64()).collect();
        let coins = coins.ok_or_else(|| Error::InvalidArgument("coefficient too large for a table".into()))?;
        return Ok(denumerant_table(&coins, target).pop().unwrap_or_default());
    }
    Ok(SolutionSpace::new(instance.dim, cols)?.count(b))
}

/// Number of representations of every `0..=limit` over the positive
/// `coins` (the classical denumerant table).
pub fn denumerant_table(coins: &[u64], limit: u64) -> Vec<BigUint> {
    let len = usize::try_from(limit).expect("table limit exceeds address space") + 1;
    let mut table = vec![BigUint::zero(); len];
    table[0] = BigUint::one();
    for &c in coins {
        let c = c as usize;
        for v in c..len {
            let add = table[v - c].clone();
            table[v] += add;
        }
    }
    table
}
