//! Exact rational polyhedral cones.
//!
//! A [`RationalCone`] is stored by its generators (V-representation). The
//! inequality description (H-representation) is computed on demand by double
//! description and cached; both are canonical so cones can be compared by
//! their outputs directly.

pub mod dd;
pub mod lp;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::IntVector;
pub use dd::{extreme_rays, ConeGenerators};
pub use lp::{rational_feasible, Row};

/// Inequality description `{x : f·x >= 0 for f in facets, e·x = 0 for e in equalities}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HRep {
    pub equalities: Vec<IntVector>,
    pub facets: Vec<IntVector>,
}

impl HRep {
    /// All rows `M` with `cone = {x : Mx >= 0}`; equalities appear as `e, -e` pairs.
    pub fn rows(&self) -> Vec<IntVector> {
        let mut rows = self.facets.clone();
        for e in &self.equalities {
            rows.push(e.clone());
            rows.push(e.neg());
        }
        rows
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.equalities.iter().all(|e| e.dot(x).is_zero()) && self.facets.iter().all(|f| !f.dot(x).is_negative())
    }

    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        let eval = |row: &IntVector| -> BigRational {
            row.iter().zip(x).map(|(a, b)| BigRational::from_integer(a.clone()) * b).sum()
        };
        self.equalities.iter().all(|e| eval(e).is_zero()) && self.facets.iter().all(|f| !eval(f).is_negative())
    }
}

#[derive(Debug)]
pub struct RationalCone {
    dim: usize,
    generators: Vec<IntVector>,
    dropped_zero_generators: bool,
    hrep: OnceLock<HRep>,
}

impl Clone for RationalCone {
    fn clone(&self) -> Self {
        let hrep = OnceLock::new();
        if let Some(h) = self.hrep.get() {
            let _ = hrep.set(h.clone());
        }
        RationalCone {
            dim: self.dim,
            generators: self.generators.clone(),
            dropped_zero_generators: self.dropped_zero_generators,
            hrep,
        }
    }
}

impl PartialEq for RationalCone {
    /// Equality as point sets.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.hrep() == other.hrep()
    }
}

impl RationalCone {
    /// Cone generated by `generators` in `R^dim`. Zero generators are dropped
    /// and reported by [`RationalCone::dropped_zero_generators`].
    pub fn new(dim: usize, generators: Vec<IntVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("cone dimension must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
        }
        let before = generators.len();
        let generators: Vec<IntVector> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(RationalCone { dim, dropped_zero_generators: generators.len() != before, generators, hrep: OnceLock::new() })
    }

    /// The trivial cone `{0}`.
    pub fn trivial(dim: usize) -> Self {
        RationalCone { dim, generators: Vec::new(), dropped_zero_generators: false, hrep: OnceLock::new() }
    }

    /// Cone `{x : Mx >= 0}` given by rows; generators come out canonical.
    pub fn from_inequalities(dim: usize, rows: &[IntVector]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
        }
        let gens = extreme_rays(dim, rows);
        RationalCone::new(dim, generators_from(gens))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn dropped_zero_generators(&self) -> bool {
        self.dropped_zero_generators
    }

    /// The canonical H-representation, computed once.
    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| {
            let polar = extreme_rays(self.dim, &self.generators);
            HRep { equalities: polar.lineality, facets: polar.rays }
        })
    }

    pub fn has_hrep(&self) -> bool {
        self.hrep.get().is_some()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.hrep().contains(x)
    }

    /// Canonical generators: lineality basis (both signs) and primitive
    /// extreme rays, sorted lexicographically.
    pub fn canonical_generators(&self) -> Vec<IntVector> {
        generators_from(extreme_rays(self.dim, &self.hrep().rows()))
    }

    /// Structural decomposition into lineality basis and extreme rays.
    pub fn structure(&self) -> ConeGenerators {
        extreme_rays(self.dim, &self.hrep().rows())
    }
}

fn generators_from(gens: ConeGenerators) -> Vec<IntVector> {
    let mut out = gens.rays;
    for l in gens.lineality {
        out.push(l.neg());
        out.push(l);
    }
    out.sort();
    out
}

/// Populates the cached H-representation and returns the cone.
pub fn dd_convert(cone: RationalCone) -> RationalCone {
    cone.hrep();
    cone
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pointedness {
    pub pointed: bool,
    /// Integer functional strictly positive on every nonzero generator.
    pub witness: Option<IntVector>,
}

/// Decides pointedness through the strict-positivity LP `<w, g> > 0`.
pub fn is_pointed(cone: &RationalCone) -> Pointedness {
    pointedness_of(cone.dim(), cone.generators())
}

pub(crate) fn pointedness_of(dim: usize, generators: &[IntVector]) -> Pointedness {
    let rows: Vec<Row> =
        generators.iter().filter(|g| !g.is_zero()).map(|g| Row::from_ints(g, BigInt::zero(), true)).collect();
    match rational_feasible(dim, &rows) {
        None => Pointedness { pointed: false, witness: None },
        Some(w) => {
            let w = dd::clear_denominators(&w);
            debug_assert!(generators.iter().all(|g| g.is_zero() || w.dot(g).is_positive()));
            Pointedness { pointed: true, witness: Some(w) }
        }
    }
}

/// Intersection of a family of cones sharing one ambient dimension.
pub fn intersect_cones(cones: &[RationalCone]) -> Result<RationalCone> {
    let first = cones.first().ok_or(Error::EmptyFamily)?;
    let dim = first.dim();
    if let Some(c) = cones.iter().find(|c| c.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
    }
    let rows: Vec<IntVector> = cones.iter().flat_map(|c| c.hrep().rows()).collect();
    RationalCone::from_inequalities(dim, &rows)
}

/// A nonzero primitive integer point of the cone, if one exists: the
/// lexicographically greatest canonical generator.
pub fn contains_nonzero(cone: &RationalCone) -> Option<IntVector> {
    let witness = cone.canonical_generators().pop()?;
    debug_assert!(cone.contains(&witness));
    Some(witness)
}
