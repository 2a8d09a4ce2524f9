//! Colored affine semigroups `sg(A_1, ..., A_l)`: solution classification,
//! chromatic and colorful searches, and the counterexample families.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diophantine::{SolutionSpace, SolutionVector};
use crate::error::{Error, Result};
use crate::semigroup::{intersect_family, AffineSemigroup};
use crate::vector::IntVector;

/// Generators `a_1..a_n` with a partition of the indices into color classes.
///
/// The same vector may appear several times under different colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredSemigroup {
    dim: usize,
    generators: Vec<IntVector>,
    classes: Vec<Vec<usize>>,
    #[serde(skip)]
    color_of: Vec<usize>,
}

impl ColoredSemigroup {
    /// Builds from per-class generator lists; indices run class by class.
    pub fn new(dim: usize, classes: Vec<Vec<IntVector>>) -> Result<Self> {
        let mut generators = Vec::new();
        let mut partition = Vec::with_capacity(classes.len());
        for class in classes {
            let start = generators.len();
            generators.extend(class);
            partition.push((start..generators.len()).collect());
        }
        Self::from_partition(dim, generators, partition)
    }

    /// Builds from a generator list and an explicit index partition.
    pub fn from_partition(dim: usize, generators: Vec<IntVector>, classes: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
        }
        if classes.is_empty() {
            return Err(Error::InvalidColoring("at least one color class is required".into()));
        }
        if let Some(i) = generators.iter().position(IntVector::is_zero) {
            return Err(Error::InvalidColoring(format!("generator {i} is zero")));
        }
        let mut color_of = vec![usize::MAX; generators.len()];
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidColoring(format!("class {c} is empty")));
            }
            for &i in class {
                if i >= generators.len() {
                    return Err(Error::InvalidColoring(format!("index {i} out of range")));
                }
                if color_of[i] != usize::MAX {
                    return Err(Error::InvalidColoring(format!("index {i} has two colors")));
                }
                color_of[i] = c;
            }
        }
        if let Some(i) = color_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidColoring(format!("index {i} has no color")));
        }
        Ok(ColoredSemigroup { dim, generators, classes, color_of })
    }

    /// Colored numerical semigroup with one positive-integer list per class.
    pub fn numerical(classes: &[&[i64]]) -> Result<Self> {
        let classes = classes.iter().map(|c| c.iter().map(|&a| IntVector::from_i64s(&[a])).collect()).collect();
        Self::new(1, classes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_colors(&self) -> usize {
        self.classes.len()
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn color_of(&self, index: usize) -> usize {
        self.color_of[index]
    }

    pub fn class_generators(&self, color: usize) -> Vec<IntVector> {
        self.classes[color].iter().map(|&i| self.generators[i].clone()).collect()
    }

    /// The uncolored semigroup `sg(A)`.
    pub fn base(&self) -> AffineSemigroup {
        AffineSemigroup::new(self.dim, self.generators.clone()).expect("validated at construction")
    }

    /// `sg(A_i)` for one color.
    pub fn class_semigroup(&self, color: usize) -> AffineSemigroup {
        AffineSemigroup::new(self.dim, self.class_generators(color)).expect("validated at construction")
    }

    pub fn solution_space(&self) -> Result<SolutionSpace> {
        SolutionSpace::new(self.dim, self.generators.clone())
    }

    fn check_target(&self, b: &IntVector) -> Result<()> {
        if b.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: b.dim() });
        }
        Ok(())
    }

    fn check_level(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.num_colors() {
            return Err(Error::InvalidArgument(format!("k must lie in 1..={}, got {k}", self.num_colors())));
        }
        Ok(())
    }
}

/// Color statistics of one solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionClassification {
    pub colors_used: Vec<usize>,
    pub chromatic_level: usize,
    pub is_monochromatic: bool,
    pub is_chromatic: bool,
    pub is_colorful: bool,
}

impl SolutionClassification {
    /// Short description such as `chromatic, not colorful`.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.is_monochromatic {
            parts.push("monochromatic".to_string());
        }
        if self.is_chromatic {
            parts.push("chromatic".to_string());
        } else if !self.is_monochromatic {
            parts.push(format!("{}-chromatic", self.chromatic_level));
            parts.push("not chromatic".to_string());
        }
        parts.push(if self.is_colorful { "colorful" } else { "not colorful" }.to_string());
        parts.join(", ")
    }
}

pub fn classify(s: &ColoredSemigroup, x: &SolutionVector) -> Result<SolutionClassification> {
    if x.len() != s.generators.len() {
        return Err(Error::LengthMismatch { expected: s.generators.len(), found: x.len() });
    }
    Ok(classify_entries(s, x.multiplicities()))
}

fn classify_entries(s: &ColoredSemigroup, x: &[BigInt]) -> SolutionClassification {
    let mut per_class = vec![0usize; s.num_colors()];
    for (i, v) in x.iter().enumerate() {
        if !v.is_zero() {
            per_class[s.color_of[i]] += 1;
        }
    }
    let colors_used: Vec<usize> = (0..per_class.len()).filter(|&c| per_class[c] > 0).collect();
    let level = colors_used.len();
    SolutionClassification {
        chromatic_level: level,
        is_monochromatic: level <= 1,
        is_chromatic: level == s.num_colors(),
        is_colorful: per_class.iter().all(|&n| n <= 1),
        colors_used,
    }
}

fn chromatic_level(s: &ColoredSemigroup, x: &[BigInt]) -> usize {
    let mut seen = vec![false; s.num_colors()];
    for (i, v) in x.iter().enumerate() {
        if !v.is_zero() {
            seen[s.color_of[i]] = true;
        }
    }
    seen.iter().filter(|&&u| u).count()
}

/// A solution of `Ax = b` using at least `k` colors, if one exists.
pub fn find_k_chromatic(s: &ColoredSemigroup, b: &IntVector, k: usize) -> Result<Option<SolutionVector>> {
    s.check_target(b)?;
    s.check_level(k)?;
    let space = s.solution_space()?;
    Ok(first_k_chromatic(s, &space, b, k))
}

fn first_k_chromatic(s: &ColoredSemigroup, space: &SolutionSpace, b: &IntVector, k: usize) -> Option<SolutionVector> {
    let mut found = None;
    space.for_each_solution(b, |x| {
        if chromatic_level(s, x) >= k {
            found = Some(SolutionVector::new(IntVector::new(x.to_vec())).expect("nonnegative"));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// A colorful solution (at most one generator index per class), if one
/// exists. Tries every choice of one column per class in lexicographic order.
pub fn find_colorful(s: &ColoredSemigroup, b: &IntVector) -> Result<Option<SolutionVector>> {
    s.check_target(b)?;
    if !s.base().is_pointed() {
        return Err(Error::NotPointed);
    }
    let n = s.generators.len();
    let mut choice = vec![0usize; s.num_colors()];
    loop {
        let indices: Vec<usize> = choice.iter().zip(&s.classes).map(|(&c, class)| class[c]).collect();
        let cols: Vec<IntVector> = indices.iter().map(|&i| s.generators[i].clone()).collect();
        let space = SolutionSpace::new(s.dim, cols)?;
        if let Some(x) = space.first_solution(b) {
            return Ok(Some(x.scatter(&indices, n)));
        }
        // Advance the mixed-radix counter, last class fastest.
        let mut pos = choice.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < s.classes[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// For each class, a solution supported inside it, if one exists.
pub fn monochromatic_profile(s: &ColoredSemigroup, b: &IntVector) -> Result<Vec<Option<SolutionVector>>> {
    s.check_target(b)?;
    if !s.base().is_pointed() {
        return Err(Error::NotPointed);
    }
    let n = s.generators.len();
    s.classes
        .iter()
        .map(|class| {
            let cols = class.iter().map(|&i| s.generators[i].clone()).collect();
            let space = SolutionSpace::new(s.dim, cols)?;
            Ok(space.first_solution(b).map(|x| x.scatter(class, n)))
        })
        .collect()
}

/// An element with a monochromatic solution of every color but no chromatic one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaratheodoryException {
    pub b: IntVector,
    /// One monochromatic solution per color.
    pub monochromatic: Vec<SolutionVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaratheodoryReport {
    /// Minimal generators of the intersection of the class semigroups.
    pub intersection_generators: Vec<IntVector>,
    pub candidates_checked: usize,
    pub exceptions: Vec<CaratheodoryException>,
    /// `b = 0` is never reported.
    pub zero_excluded: bool,
}

/// The finite set of elements having a monochromatic solution of every
/// color but no chromatic solution.
///
/// Every element of `S' = sg(A_1) ∩ ... ∩ sg(A_l)` that is a sum of at least
/// `l` minimal generators of `S'` splits into `l` nonzero parts of `S'` and
/// so has a chromatic solution. The candidates are therefore the sums of
/// `1..l-1` minimal generators with repetition.
pub fn caratheodory_exceptions(s: &ColoredSemigroup) -> Result<CaratheodoryReport> {
    let space = s.solution_space()?;
    let ell = s.num_colors();
    let classes: Vec<AffineSemigroup> = (0..ell).map(|c| s.class_semigroup(c)).collect();
    let meet = intersect_family(&classes)?;
    let gens = meet.generators().to_vec();
    let mut candidates: BTreeSet<IntVector> = BTreeSet::new();
    if ell >= 2 {
        let mut layer: BTreeSet<(usize, IntVector)> = (0..gens.len()).map(|i| (i, gens[i].clone())).collect();
        for _ in 1..ell {
            candidates.extend(layer.iter().map(|(_, v)| v.clone()));
            let mut next = BTreeSet::new();
            for (last, v) in &layer {
                for (i, g) in gens.iter().enumerate().skip(*last) {
                    next.insert((i, v + g));
                }
            }
            layer = next;
        }
    }
    let mut exceptions = Vec::new();
    for b in &candidates {
        if first_k_chromatic(s, &space, b, ell).is_none() {
            let monochromatic = monochromatic_profile(s, b)?
                .into_iter()
                .map(|x| {
                    x.ok_or_else(|| {
                        Error::Anomaly(format!("{b} lies in every class semigroup but has no monochromatic solution"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            exceptions.push(CaratheodoryException { b: b.clone(), monochromatic });
        }
    }
    Ok(CaratheodoryReport {
        intersection_generators: gens,
        candidates_checked: candidates.len(),
        exceptions,
        zero_excluded: true,
    })
}

/// One row `(g_i, g'_i, g''_i)` of the unique-expression family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CtegRow {
    pub g: IntVector,
    pub g1: IntVector,
    pub g2: IntVector,
}

/// The family `S_i = sg(g_i, g'_i, g''_i)`, `1 <= i <= n`, with
/// `g_i = (0, 2^i-1, 2^i)`, `g'_i = (1, n+2^i-1, n+2^i+1)`,
/// `g''_i = (2, 2(n-2^i)+1, 2(n-2^i)+1)` and `p = (3, 3n-1, 3n+2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CtegFamily {
    pub n: usize,
    pub rows: Vec<CtegRow>,
    pub p: IntVector,
}

impl CtegFamily {
    /// One color per row, generators in row order.
    pub fn colored(&self) -> ColoredSemigroup {
        let classes = self.rows.iter().map(|r| vec![r.g.clone(), r.g1.clone(), r.g2.clone()]).collect();
        ColoredSemigroup::new(3, classes).expect("well-formed family")
    }

    pub fn semigroups(&self) -> Vec<AffineSemigroup> {
        let c = self.colored();
        (0..self.n).map(|i| c.class_semigroup(i)).collect()
    }
}

pub fn build_cteg_family(n: usize) -> Result<CtegFamily> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let nn = BigInt::from(n);
    let one = BigInt::one();
    let rows = (1..=n)
        .map(|i| {
            let t = BigInt::one() << i;
            let h = BigInt::from(2) * (&nn - &t) + &one;
            CtegRow {
                g: IntVector::new(vec![BigInt::zero(), &t - &one, t.clone()]),
                g1: IntVector::new(vec![one.clone(), &nn + &t - &one, &nn + &t + &one]),
                g2: IntVector::new(vec![BigInt::from(2), h.clone(), h]),
            }
        })
        .collect();
    let p =
        IntVector::new(vec![BigInt::from(3), BigInt::from(3) * &nn - &one, BigInt::from(3) * &nn + BigInt::from(2)]);
    Ok(CtegFamily { n, rows, p })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CtegVerification {
    pub n: usize,
    pub p: IntVector,
    /// Every representation of `p` over the `3n` pooled generators.
    pub representations: Vec<SolutionVector>,
    pub all_monochromatic: bool,
    /// Representations are exactly `g_i + g'_i + g''_i`, one per `i`.
    pub unique_expressions: bool,
}

/// Enumerates every way to write `p` as a sum of the pooled generators.
pub fn verify_unique_expressions(n: usize) -> Result<CtegVerification> {
    let family = build_cteg_family(n)?;
    let colored = family.colored();
    let space = colored.solution_space()?;
    let representations = space.solutions(&family.p);
    let all_monochromatic =
        representations.iter().all(|x| classify_entries(&colored, x.multiplicities()).is_monochromatic);
    let mut expected: Vec<SolutionVector> = (0..n)
        .map(|i| {
            let mut counts = vec![0u64; 3 * n];
            counts[3 * i..3 * i + 3].fill(1);
            SolutionVector::from_counts(&counts)
        })
        .collect();
    expected.sort();
    Ok(CtegVerification {
        n,
        p: family.p,
        unique_expressions: representations == expected,
        representations,
        all_monochromatic,
    })
}

/// `S x Z_{>=0}` for every class: generators become `(g, 0)` and each class
/// gains its own copy of `(0, ..., 0, 1)` as its last generator. Indices of
/// the result run class by class.
pub fn lift_family(s: &ColoredSemigroup) -> ColoredSemigroup {
    let dim = s.dim + 1;
    let up = IntVector::unit(dim, s.dim);
    let classes = s
        .classes
        .iter()
        .map(|class| {
            let mut lifted: Vec<IntVector> = class
                .iter()
                .map(|&i| {
                    let mut v = s.generators[i].entries().to_vec();
                    v.push(BigInt::zero());
                    IntVector::new(v)
                })
                .collect();
            lifted.push(up.clone());
            lifted
        })
        .collect();
    ColoredSemigroup::new(dim, classes).expect("lift preserves validity")
}
