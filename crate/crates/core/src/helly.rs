//! Helly, colorful Helly and Tverberg type audits for families of affine
//! semigroups.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diophantine::SolutionVector;
use crate::error::{Error, Result};
use crate::semigroup::{family_intersection_nontrivial, AffineSemigroup};
use crate::vector::IntVector;

/// Families with more members than this are audited by sampling subsets.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseAssertion {
    /// Every member pointed; the cones do not cover the space.
    PointedNoncover,
    /// Every member pointed; the cones may cover the space.
    PointedCover,
    General,
}

impl CaseAssertion {
    /// Helly number for ambient dimension `m`.
    pub fn helly_number(self, m: usize) -> usize {
        match self {
            CaseAssertion::PointedNoncover => m,
            CaseAssertion::PointedCover => m + 1,
            CaseAssertion::General => 2 * m,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseAssertion::PointedNoncover => "pointed-noncover",
            CaseAssertion::PointedCover => "pointed-cover",
            CaseAssertion::General => "general",
        }
    }
}

impl std::str::FromStr for CaseAssertion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pointed-noncover" | "a" => Ok(CaseAssertion::PointedNoncover),
            "pointed-cover" | "b" => Ok(CaseAssertion::PointedCover),
            "general" | "c" => Ok(CaseAssertion::General),
            other => Err(Error::InvalidArgument(format!("unknown case '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupFamily {
    dim: usize,
    members: Vec<AffineSemigroup>,
    case: CaseAssertion,
}

impl SemigroupFamily {
    pub fn new(members: Vec<AffineSemigroup>, case: CaseAssertion) -> Result<Self> {
        let dim = members.first().ok_or(Error::EmptyFamily)?.dim();
        if let Some(s) = members.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
        }
        if case != CaseAssertion::General {
            if let Some(i) = members.iter().position(|s| !s.is_pointed()) {
                return Err(Error::CaseAssertionInvalid(i));
            }
        }
        Ok(SemigroupFamily { dim, members, case })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[AffineSemigroup] {
        &self.members
    }

    pub fn case(&self) -> CaseAssertion {
        self.case
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn subfamily(&self, indices: &[usize]) -> Vec<AffineSemigroup> {
        indices.iter().map(|&i| self.members[i].clone()).collect()
    }
}

/// Whether every subfamily of a fixed size meets nontrivially.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PremiseCheck {
    /// Requested subfamily size.
    pub size: usize,
    /// Size actually tested: `min(size, n)`.
    pub tested_size: usize,
    pub holds: bool,
    pub subsets_checked: u64,
    /// All subsets were tested (rather than a sample).
    pub exhaustive: bool,
    /// First subset (lexicographic, or in sampling order) with trivial intersection.
    pub counterexample: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HellyAuditReport {
    pub case: CaseAssertion,
    pub dim: usize,
    pub members: usize,
    pub n_used: usize,
    pub premise: PremiseCheck,
    pub premise_below: PremiseCheck,
    pub conclusion_holds: bool,
    pub witness: Option<IntVector>,
    /// Premise at `N` holds but the full intersection is trivial.
    pub anomaly: bool,
    pub seed: Option<u64>,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    pub seed: u64,
    /// Sample budget when the family exceeds [`EXHAUSTIVE_LIMIT`].
    pub max_subsets: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { seed: 0, max_subsets: 2000 }
    }
}

/// Audits the Helly contract for a family: `N` is `m`, `m + 1` or `2m` by
/// the case assertion; the premise is evaluated at `N` and at `N - 1`.
pub fn helly_audit(family: &SemigroupFamily, options: AuditOptions) -> Result<HellyAuditReport> {
    let n = family.len();
    let n_used = family.case.helly_number(family.dim).max(1);
    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    let premise = check_premise(family, n_used, exhaustive, options)?;
    let premise_below = check_premise(family, n_used - 1, exhaustive, options)?;
    let full = family_intersection_nontrivial(family.members())?;
    let anomaly = premise.holds && !full.nontrivial;
    let mut notes = Vec::new();
    if !exhaustive {
        notes.push(format!(
            "{n} members exceed the exhaustive limit {EXHAUSTIVE_LIMIT}; premise sampled, a passing premise is not certified"
        ));
    }
    if family.case == CaseAssertion::PointedNoncover {
        notes.push("non-covering is asserted by the caller, not verified".to_string());
    }
    Ok(HellyAuditReport {
        case: family.case,
        dim: family.dim,
        members: n,
        n_used,
        premise,
        premise_below,
        conclusion_holds: full.nontrivial,
        witness: full.witness.or(full.cone_point),
        anomaly,
        seed: (!exhaustive).then_some(options.seed),
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

fn check_premise(
    family: &SemigroupFamily,
    size: usize,
    exhaustive: bool,
    options: AuditOptions,
) -> Result<PremiseCheck> {
    let n = family.len();
    let tested_size = size.min(n);
    let mut checked = 0u64;
    let mut test = |subset: &[usize]| -> Result<bool> {
        checked += 1;
        // The empty intersection is the whole lattice.
        if subset.is_empty() {
            return Ok(true);
        }
        Ok(family_intersection_nontrivial(&family.subfamily(subset))?.nontrivial)
    };
    let mut counterexample = None;
    if exhaustive {
        for subset in Combinations::new(n, tested_size) {
            if !test(&subset)? {
                counterexample = Some(subset);
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for _ in 0..options.max_subsets {
            let mut subset = sample(&mut rng, n, tested_size).into_vec();
            subset.sort_unstable();
            if !test(&subset)? {
                counterexample = Some(subset);
                break;
            }
        }
    }
    Ok(PremiseCheck {
        size,
        tested_size,
        holds: counterexample.is_none(),
        subsets_checked: checked,
        exhaustive,
        counterexample,
    })
}

/// `k`-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        self.current = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(out)
    }
}

/// Which sharpness construction to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SharpnessCase {
    /// `sg(E \ {e_i})` for the standard basis `E`.
    A,
    /// `sg(V \ {v_i})` for the simplex `e_1, ..., e_d, -(e_1 + ... + e_d)`.
    B,
    /// `sg(E \ {-e_i})` and `sg(E \ {e_i})` for `E = {±e_1, ..., ±e_d}`.
    C,
}

impl std::str::FromStr for SharpnessCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(SharpnessCase::A),
            "b" | "B" => Ok(SharpnessCase::B),
            "c" | "C" => Ok(SharpnessCase::C),
            other => Err(Error::InvalidArgument(format!("unknown example case '{other}'"))),
        }
    }
}

/// The family showing that the Helly number of the given case is sharp in
/// dimension `d`.
pub fn build_mthelly_example(case: SharpnessCase, d: usize) -> Result<SemigroupFamily> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let e = |i: usize| IntVector::unit(d, i);
    let drop = |set: &[IntVector], i: usize| -> Result<AffineSemigroup> {
        let kept = set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
        AffineSemigroup::new(d, kept)
    };
    match case {
        SharpnessCase::A => {
            let basis: Vec<IntVector> = (0..d).map(e).collect();
            let members = (0..d).map(|i| drop(&basis, i)).collect::<Result<_>>()?;
            SemigroupFamily::new(members, CaseAssertion::PointedNoncover)
        }
        SharpnessCase::B => {
            let mut vertices: Vec<IntVector> = (0..d).map(e).collect();
            vertices.push(IntVector::new(vec![BigInt::from(-1); d]));
            let members = (0..=d).map(|i| drop(&vertices, i)).collect::<Result<_>>()?;
            SemigroupFamily::new(members, CaseAssertion::PointedCover)
        }
        SharpnessCase::C => {
            let signed: Vec<IntVector> = (0..d).flat_map(|i| [e(i), e(i).neg()]).collect();
            let mut members = Vec::with_capacity(2 * d);
            for i in 0..d {
                members.push(drop(&signed, 2 * i + 1)?);
                members.push(drop(&signed, 2 * i)?);
            }
            SemigroupFamily::new(members, CaseAssertion::General)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorfulHellyReport {
    pub transversals_checked: u64,
    pub premise_holds: bool,
    /// Member index per family of the first transversal with trivial intersection.
    pub failing_transversal: Option<Vec<usize>>,
    /// Every family index whose members meet nontrivially.
    pub working: Vec<usize>,
    /// Common element of the first working family.
    pub witness: Option<IntVector>,
    /// Premise holds but no family works.
    pub anomaly: bool,
}

/// Checks the colorful Helly statement for `m + 1` families of pointed
/// semigroups in dimension `m`.
pub fn colorful_helly_audit(families: &[Vec<AffineSemigroup>]) -> Result<ColorfulHellyReport> {
    let dim = families.iter().flatten().next().ok_or(Error::EmptyFamily)?.dim();
    if families.len() != dim + 1 {
        return Err(Error::InvalidArgument(format!(
            "expected {} families in dimension {dim}, found {}",
            dim + 1,
            families.len()
        )));
    }
    for f in families {
        if f.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for s in f {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
            }
            if !s.is_pointed() {
                return Err(Error::NotPointed);
            }
        }
    }
    let mut choice = vec![0usize; families.len()];
    let mut checked = 0u64;
    let mut failing = None;
    loop {
        let transversal: Vec<AffineSemigroup> = choice.iter().zip(families).map(|(&i, f)| f[i].clone()).collect();
        checked += 1;
        if !family_intersection_nontrivial(&transversal)?.nontrivial {
            failing = Some(choice.clone());
            break;
        }
        if !advance(&mut choice, families) {
            break;
        }
    }
    let mut working = Vec::new();
    let mut witness = None;
    for (j, f) in families.iter().enumerate() {
        let meet = family_intersection_nontrivial(f)?;
        if meet.nontrivial {
            if witness.is_none() {
                witness = meet.witness;
            }
            working.push(j);
        }
    }
    let premise_holds = failing.is_none();
    Ok(ColorfulHellyReport {
        transversals_checked: checked,
        premise_holds,
        failing_transversal: failing,
        anomaly: premise_holds && working.is_empty(),
        working,
        witness,
    })
}

/// Mixed-radix increment; false after the last choice.
fn advance(choice: &mut [usize], families: &[Vec<AffineSemigroup>]) -> bool {
    for (c, f) in choice.iter_mut().zip(families).rev() {
        *c += 1;
        if *c < f.len() {
            return true;
        }
        *c = 0;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TverbergPartition {
    /// Generator indices of each class.
    pub classes: Vec<Vec<usize>>,
    /// Common element with a monochromatic representation in every class.
    pub point: IntVector,
    /// Representation of `point` over each class, indexed like `classes`.
    pub representations: Vec<SolutionVector>,
    pub hypothesis_met: bool,
    pub partitions_checked: u64,
}

/// Searches the partitions of the generators of `s` into `r` classes, in
/// restricted-growth-string order, for one whose class semigroups share a
/// nonzero element.
pub fn tverberg_partition(s: &AffineSemigroup, r: usize) -> Result<TverbergPartition> {
    if !s.is_pointed() {
        return Err(Error::NotPointed);
    }
    let gens = s.generators();
    let k = gens.len();
    if r == 0 || r > k {
        return Err(Error::InvalidArgument(format!("cannot split {k} generators into {r} nonempty classes")));
    }
    let required = s.dim() * (r - 1) + 1;
    let hypothesis_met = k >= required;
    let mut checked = 0u64;
    let mut found = None;
    let mut failure = None;
    for_each_rgs(k, r, &mut |labels| {
        checked += 1;
        let classes: Vec<Vec<usize>> = (0..r).map(|c| (0..k).filter(|&i| labels[i] == c).collect()).collect();
        let family: Vec<AffineSemigroup> = classes
            .iter()
            .map(|c| {
                AffineSemigroup::new(s.dim(), c.iter().map(|&i| gens[i].clone()).collect()).expect("same dimension")
            })
            .collect();
        match family_intersection_nontrivial(&family) {
            Ok(meet) if meet.nontrivial => {
                found = Some((classes, family, meet.witness.expect("members are pointed")));
                true
            }
            Ok(_) => false,
            Err(e) => {
                failure = Some(e);
                true
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let Some((classes, family, point)) = found else {
        return Err(if hypothesis_met {
            Error::Anomaly(format!("no partition of {k} generators into {r} classes meets nontrivially"))
        } else {
            Error::HypothesisUnmet { generators: k, required }
        });
    };
    let mut representations = Vec::with_capacity(r);
    for (sg, class) in family.iter().zip(&classes) {
        let rep = sg
            .representation(&point)?
            .ok_or_else(|| Error::Anomaly(format!("{point} has no representation over class {class:?}")))?;
        representations.push(rep);
    }
    Ok(TverbergPartition { classes, point, representations, hypothesis_met, partitions_checked: checked })
}

/// Visits restricted growth strings of length `n` with exactly `r` blocks in
/// lexicographic order until `visit` returns true.
fn for_each_rgs(n: usize, r: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(labels: &mut Vec<usize>, used: usize, n: usize, r: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let pos = labels.len();
        if pos == n {
            return used == r && visit(labels);
        }
        // Remaining positions must be able to open the missing blocks.
        if r - used > n - pos {
            return false;
        }
        for c in 0..=used.min(r - 1) {
            labels.push(c);
            let stop = rec(labels, used.max(c + 1), n, r, visit);
            labels.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(&mut Vec::with_capacity(n), 0, n, r, visit);
}

/// Result of sampling directions against the union of the cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "cover", rename_all = "kebab-case")]
pub enum CoverHint {
    /// A direction outside every cone was found.
    NotCovered { direction: IntVector },
    /// Every sampled direction lies in some cone.
    Likely { samples: u64 },
}

/// Samples integer directions with entries in `[-1000, 1000]`. Never a proof
/// of covering.
pub fn cover_heuristic(family: &SemigroupFamily, samples: u64, seed: u64) -> CoverHint {
    let cones: Vec<_> = family.members().iter().map(AffineSemigroup::cone).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let v: Vec<BigInt> = (0..family.dim()).map(|_| BigInt::from(rng.random_range(-1000i64..=1000))).collect();
        if v.iter().all(|x| *x == BigInt::from(0)) {
            continue;
        }
        if !cones.iter().any(|c| c.contains(&v)) {
            return CoverHint::NotCovered { direction: IntVector::new(v) };
        }
    }
    CoverHint::Likely { samples }
}
