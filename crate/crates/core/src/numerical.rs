//! Colored numerical semigroups: Frobenius numbers, chromatic Frobenius
//! numbers, and counting of k-chromatic representations.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::colored::ColoredSemigroup;
use crate::diophantine::denumerant_table;
use crate::error::{Error, Result};
use crate::vector::IntVector;

/// Color classes `A_1, ..., A_l` of positive integers with `gcd(A) = 1`.
///
/// Each class is a set (sorted, deduplicated). The same value may appear in
/// several classes, as different colored generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredNumericalSemigroup {
    classes: Vec<Vec<u64>>,
}

impl ColoredNumericalSemigroup {
    pub fn new(classes: Vec<Vec<u64>>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::InvalidColoring("at least one color class is required".into()));
        }
        let mut out = Vec::with_capacity(classes.len());
        for (i, mut c) in classes.into_iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidColoring(format!("class {i} is empty")));
            }
            if c.contains(&0) {
                return Err(Error::InvalidArgument("generators must be positive".into()));
            }
            c.sort_unstable();
            c.dedup();
            out.push(c);
        }
        let g = out.iter().flatten().fold(0u64, |g, &a| g.gcd(&a));
        if g != 1 {
            return Err(Error::NotPrimitive(g));
        }
        Ok(ColoredNumericalSemigroup { classes: out })
    }

    /// One singleton class per value.
    pub fn singletons(values: &[u64]) -> Result<Self> {
        Self::new(values.iter().map(|&a| vec![a]).collect())
    }

    pub fn classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    pub fn num_colors(&self) -> usize {
        self.classes.len()
    }

    /// The union `A` of all classes, sorted and deduplicated.
    pub fn generators(&self) -> Vec<u64> {
        let mut a: Vec<u64> = self.classes.iter().flatten().copied().collect();
        a.sort_unstable();
        a.dedup();
        a
    }

    /// Generators with multiplicity across classes, class by class.
    pub fn colored_generators(&self) -> Vec<u64> {
        self.classes.iter().flatten().copied().collect()
    }

    pub fn to_colored(&self) -> ColoredSemigroup {
        let classes =
            self.classes.iter().map(|c| c.iter().map(|&a| IntVector::new(vec![BigInt::from(a)])).collect()).collect();
        ColoredSemigroup::new(1, classes).expect("positive generators")
    }

    fn check_level(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.num_colors() {
            return Err(Error::InvalidArgument(format!("k must lie in 1..={}, got {k}", self.num_colors())));
        }
        Ok(())
    }

    /// The instance with class `i` removed.
    pub fn without_class(&self, i: usize) -> Result<Self> {
        let rest: Vec<Vec<u64>> =
            self.classes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.clone()).collect();
        Self::new(rest)
    }
}

fn check_primitive(a: &[u64]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::InvalidArgument("empty generator set".into()));
    }
    if a.contains(&0) {
        return Err(Error::InvalidArgument("generators must be positive".into()));
    }
    let g = a.iter().fold(0u64, |g, &x| g.gcd(&x));
    if g != 1 {
        return Err(Error::NotPrimitive(g));
    }
    Ok(())
}

/// `member[b]` for `0 <= b <= limit`.
pub fn membership_table(a: &[u64], limit: u64) -> Vec<bool> {
    let len = usize::try_from(limit).expect("table limit exceeds address space") + 1;
    let mut t = vec![false; len];
    t[0] = true;
    for b in 1..len {
        t[b] = a.iter().any(|&x| (x as usize) <= b && t[b - x as usize]);
    }
    t
}

/// Frobenius number `F(A)`; `-1` when `1` is a generator.
///
/// Computed from the Apéry set with respect to `min(A)` by a shortest-path
/// search over residues.
pub fn frobenius(a: &[u64]) -> Result<i64> {
    check_primitive(a)?;
    let m = *a.iter().min().expect("nonempty");
    if m == 1 {
        return Ok(-1);
    }
    let mut dist = vec![u64::MAX; m as usize];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &x in a {
            let nd = d + x;
            let nr = ((r as u64 + x) % m) as usize;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    let max = *dist.iter().max().expect("m >= 2");
    Ok(max as i64 - m as i64)
}

/// The gap set `Z_{>=0} \ sg(A)`, ascending.
pub fn gaps(a: &[u64]) -> Result<Vec<u64>> {
    let f = frobenius(a)?;
    if f < 0 {
        return Ok(Vec::new());
    }
    let t = membership_table(a, f as u64);
    Ok((0..=f as u64).filter(|&b| !t[b as usize]).collect())
}

/// `m(A, k)`: sums of one generator from each of `k` distinct classes.
pub fn chromatic_offsets(s: &ColoredNumericalSemigroup, k: usize) -> Result<Vec<u64>> {
    s.check_level(k)?;
    let mut out = Vec::new();
    for subset in k_subsets(s.num_colors(), k) {
        let mut sums = vec![0u64];
        for &c in &subset {
            sums = sums.iter().flat_map(|&v| s.classes[c].iter().map(move |&a| v + a)).collect();
            sums.sort_unstable();
            sums.dedup();
        }
        out.extend(sums);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `table[b]` is true when `b` has a `k`-chromatic representation, for
/// `0 <= b <= limit`. Uses `S(A,k) = union of (sg(A) + v)` over `v` in `m(A,k)`.
pub fn k_chromatic_table(s: &ColoredNumericalSemigroup, k: usize, limit: u64) -> Result<Vec<bool>> {
    let offsets = chromatic_offsets(s, k)?;
    let member = membership_table(&s.generators(), limit);
    let mut t = vec![false; member.len()];
    for (b, slot) in t.iter_mut().enumerate() {
        *slot = offsets.iter().take_while(|&&v| v as usize <= b).any(|&v| member[b - v as usize]);
    }
    Ok(t)
}

pub fn k_chromatic_member(s: &ColoredNumericalSemigroup, b: u64, k: usize) -> Result<bool> {
    Ok(k_chromatic_table(s, k, b)?[b as usize])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticFrobeniusReport {
    pub k: usize,
    pub value: i64,
    /// Chromatic gaps `G(A,k)`, ascending; always contains 0.
    pub gaps: Vec<u64>,
    pub offsets: Vec<u64>,
    pub frobenius: i64,
    pub lower: i64,
    pub upper: i64,
    pub bounds_hold: bool,
    /// Set for `k = 1`: zero has no 1-chromatic solution, so the value is `max(F(A), 0)`.
    pub note: Option<String>,
}

/// `CF_k`: the largest integer with no `k`-chromatic representation.
///
/// Every `b > min m(A,k) + F(A)` is a translate `b - v` with `b - v > F(A)`,
/// so scanning up to that bound is complete.
pub fn chromatic_frobenius(s: &ColoredNumericalSemigroup, k: usize) -> Result<ChromaticFrobeniusReport> {
    let offsets = chromatic_offsets(s, k)?;
    let f = frobenius(&s.generators())?;
    let min_m = offsets[0] as i64;
    let upper = min_m + f;
    let lower = min_m - 1;
    let table = k_chromatic_table(s, k, upper.max(0) as u64)?;
    let gaps: Vec<u64> = (0..table.len() as u64).filter(|&b| !table[b as usize]).collect();
    let value = *gaps.last().expect("0 is always a chromatic gap") as i64;
    let note = (k == 1).then(|| "zero has no 1-chromatic solution; value is max(F(A), 0)".to_string());
    Ok(ChromaticFrobeniusReport {
        k,
        value,
        gaps,
        offsets,
        frobenius: f,
        lower,
        upper,
        bounds_hold: lower <= value && value <= upper,
        note,
    })
}

/// `(a_1 + ... + a_l + F(A), CF_l({a_1}, ..., {a_l}))`.
pub fn singleton_formula_check(a: &[u64]) -> Result<(i64, i64)> {
    let s = ColoredNumericalSemigroup::singletons(a)?;
    let formula = a.iter().sum::<u64>() as i64 + frobenius(a)?;
    let computed = chromatic_frobenius(&s, a.len())?.value;
    Ok((formula, computed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl Inequality {
    fn new(lhs: i64, rhs: i64) -> Self {
        Inequality { lhs, rhs, holds: lhs <= rhs }
    }
}

/// The deletion sandwich
/// `CF_l(A) <= CF_{l-1}(A without A_i) + min A_i <= CF_l(A) + F(A \ A_i) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sandwich {
    pub removed: usize,
    pub cf_full: i64,
    pub cf_removed: i64,
    pub min_removed: u64,
    pub frobenius_rest: i64,
    pub upper: Inequality,
    pub lower: Inequality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EstimateReport {
    pub k: usize,
    /// `CF_k <= CF_{k+1}`; absent when `k >= l`.
    pub monotonicity: Option<Inequality>,
    /// Absent when `l = 1`.
    pub sandwich: Option<Sandwich>,
}

impl EstimateReport {
    pub fn all_hold(&self) -> bool {
        self.monotonicity.as_ref().is_none_or(|m| m.holds)
            && self.sandwich.as_ref().is_none_or(|s| s.upper.holds && s.lower.holds)
    }
}

/// Evaluates the monotonicity and deletion inequalities for `CF`.
pub fn estimate_check(s: &ColoredNumericalSemigroup, k: usize, i: usize) -> Result<EstimateReport> {
    s.check_level(k)?;
    let ell = s.num_colors();
    if i >= ell {
        return Err(Error::InvalidArgument(format!("class index {i} out of range")));
    }
    let monotonicity = if k < ell {
        let a = chromatic_frobenius(s, k)?.value;
        let b = chromatic_frobenius(s, k + 1)?.value;
        Some(Inequality::new(a, b))
    } else {
        None
    };
    let sandwich = if ell >= 2 {
        let rest = s.without_class(i)?;
        let cf_full = chromatic_frobenius(s, ell)?.value;
        let cf_removed = chromatic_frobenius(&rest, ell - 1)?.value;
        let min_removed = s.classes[i][0];
        let frobenius_rest = frobenius(&rest.generators())?;
        let mid = cf_removed + min_removed as i64;
        Some(Sandwich {
            removed: i,
            cf_full,
            cf_removed,
            min_removed,
            frobenius_rest,
            upper: Inequality::new(cf_full, mid),
            lower: Inequality::new(mid, cf_full + frobenius_rest + 1),
        })
    } else {
        None
    };
    Ok(EstimateReport { k, monotonicity, sandwich })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionMode {
    /// `(2A_1, ..., 2A_l, {b})` with `2A = {2a : a in A}`; requires `l > k`.
    Doubling,
    /// `(A_1, ..., A_l, {b})`; requires `l = k`.
    Append,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BChoice {
    /// Smallest admissible `b`.
    Minimal,
    /// `b` from `min A_1 + ... + min A_l + F(A)`, without computing `CF`.
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub mode: ReductionMode,
    pub k: usize,
    pub instance: ColoredNumericalSemigroup,
    pub b: u64,
    /// Predicted `CF_{k+1}` of the new instance.
    pub predicted: i64,
}

impl Reduction {
    /// `(predicted, computed)` for `CF_{k+1}` of the new instance.
    pub fn check(&self) -> Result<(i64, i64)> {
        Ok((self.predicted, chromatic_frobenius(&self.instance, self.k + 1)?.value))
    }
}

/// Builds the instance whose `CF_{k+1}` is determined by `CF_k` of `s`.
pub fn reduction_construct(
    s: &ColoredNumericalSemigroup,
    k: usize,
    mode: ReductionMode,
    choice: BChoice,
) -> Result<Reduction> {
    s.check_level(k)?;
    let ell = s.num_colors();
    let mins: i64 = s.classes.iter().map(|c| c[0] as i64).sum();
    let f = frobenius(&s.generators())?;
    match mode {
        ReductionMode::Doubling => {
            if ell <= k {
                return Err(Error::InvalidArgument(format!("doubling needs more than k = {k} classes, found {ell}")));
            }
            let cf_k = chromatic_frobenius(s, k)?.value;
            let b = match choice {
                BChoice::Minimal => {
                    let cf_k1 = chromatic_frobenius(s, k + 1)?.value;
                    let floor = (2 * cf_k1 - 2 * cf_k).max(2 * cf_k).max(0);
                    let b = floor + 1;
                    if b % 2 == 1 {
                        b
                    } else {
                        b + 1
                    }
                }
                BChoice::Explicit => 2 * (mins + f) + 1,
            } as u64;
            let mut classes: Vec<Vec<u64>> = s.classes.iter().map(|c| c.iter().map(|&x| 2 * x).collect()).collect();
            classes.push(vec![b]);
            Ok(Reduction {
                mode,
                k,
                instance: ColoredNumericalSemigroup::new(classes)?,
                b,
                predicted: 2 * cf_k + b as i64,
            })
        }
        ReductionMode::Append => {
            if ell != k {
                return Err(Error::InvalidArgument(format!("appending needs exactly k = {k} classes, found {ell}")));
            }
            let cf = chromatic_frobenius(s, ell)?.value;
            let b = match choice {
                BChoice::Minimal => cf + 1,
                BChoice::Explicit => (mins + f).max(1),
            } as u64;
            let mut classes = s.classes.clone();
            classes.push(vec![b]);
            Ok(Reduction { mode, k, instance: ColoredNumericalSemigroup::new(classes)?, b, predicted: cf + b as i64 })
        }
    }
}

/// `f_k(b)` for every `0 <= b <= limit`.
///
/// With `N_T(b)` the number of representations using only classes in `T`,
/// the count with color set exactly `T` is the Möbius inversion
/// `sum over U ⊆ T of (-1)^{|T|-|U|} N_U(b)`; `f_k` sums those with `|T| >= k`.
pub fn count_k_chromatic_table(s: &ColoredNumericalSemigroup, k: usize, limit: u64) -> Result<Vec<BigUint>> {
    s.check_level(k)?;
    let ell = s.num_colors();
    if ell > 20 {
        return Err(Error::InvalidArgument("too many classes for subset inversion".into()));
    }
    let len = limit as usize + 1;
    let full = 1usize << ell;
    let restricted: Vec<Vec<BigUint>> = (0..full)
        .map(|mask| {
            let coins: Vec<u64> =
                (0..ell).filter(|c| mask >> c & 1 == 1).flat_map(|c| s.classes[c].iter().copied()).collect();
            denumerant_table(&coins, limit)
        })
        .collect();
    let mut total = vec![BigInt::zero(); len];
    for t in 0..full {
        if (t.count_ones() as usize) < k {
            continue;
        }
        // Exact color set t.
        let mut u = t;
        loop {
            let sign_negative = (t.count_ones() - u.count_ones()) % 2 == 1;
            for (acc, n) in total.iter_mut().zip(&restricted[u]) {
                let n = BigInt::from(n.clone());
                if sign_negative {
                    *acc -= n;
                } else {
                    *acc += n;
                }
            }
            if u == 0 {
                break;
            }
            u = (u - 1) & t;
        }
    }
    Ok(total.into_iter().map(|v| v.to_biguint().expect("counts are nonnegative")).collect())
}

pub fn count_k_chromatic(s: &ColoredNumericalSemigroup, b: u64, k: usize) -> Result<BigUint> {
    Ok(count_k_chromatic_table(s, k, b)?.pop().expect("nonempty table"))
}

/// One polynomial in `b` per residue class of `b` modulo `period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// `constituents[r][j]` is the coefficient of `b^j` for `b ≡ r`.
    pub constituents: Vec<Vec<BigRational>>,
    /// Smallest `b` from which agreement with the counts was observed.
    pub threshold: u64,
}

impl QuasiPolynomial {
    pub fn eval(&self, b: u64) -> BigRational {
        let coeffs = &self.constituents[(b % self.period) as usize];
        let x = BigRational::from_integer(BigInt::from(b));
        coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// The value as an integer, when it is one.
    pub fn eval_integer(&self, b: u64) -> Option<BigInt> {
        let v = self.eval(b);
        v.is_integer().then(|| v.to_integer())
    }
}

impl Serialize for QuasiPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let constituents: Vec<Vec<String>> =
            self.constituents.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
        let mut st = serializer.serialize_struct("QuasiPolynomial", 3)?;
        st.serialize_field("period", &self.period)?;
        st.serialize_field("constituents", &constituents)?;
        st.serialize_field("threshold", &self.threshold)?;
        st.end()
    }
}

/// Fits `f_k` by one polynomial of degree `< |A|` per residue modulo
/// `lcm(A)`, sampled from `start` on, and validates it on the `validate`
/// values that follow the sampling window.
pub fn fit_quasipolynomial(
    s: &ColoredNumericalSemigroup,
    k: usize,
    start: u64,
    validate: u64,
) -> Result<QuasiPolynomial> {
    s.check_level(k)?;
    let coins = s.colored_generators();
    let period = coins.iter().fold(1u64, |l, &a| l.lcm(&a));
    let points = coins.len() as u64;
    let fit_end = start + points * period;
    let end = fit_end + validate;
    let counts = count_k_chromatic_table(s, k, end)?;
    let count = |b: u64| BigRational::from_integer(BigInt::from(counts[b as usize].clone()));

    let mut constituents = vec![Vec::new(); period as usize];
    for r in 0..period {
        let first = start + (r + period - start % period) % period;
        let xs: Vec<u64> = (0..points).map(|j| first + j * period).collect();
        let ys: Vec<BigRational> = xs.iter().map(|&x| count(x)).collect();
        constituents[r as usize] = interpolate(&xs, &ys);
    }
    let mut qp = QuasiPolynomial { period, constituents, threshold: start };
    for b in fit_end..=end {
        let predicted = qp.eval(b);
        if predicted != count(b) {
            return Err(Error::ValidationFailed {
                b,
                expected: counts[b as usize].to_string(),
                predicted: predicted.to_string(),
            });
        }
    }
    while qp.threshold > 0 && qp.eval(qp.threshold - 1) == count(qp.threshold - 1) {
        qp.threshold -= 1;
    }
    Ok(qp)
}

/// Coefficients (ascending powers) of the interpolating polynomial.
fn interpolate(xs: &[u64], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let xr: Vec<BigRational> = xs.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
    // Newton divided differences.
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xr[i] - &xr[i - j]);
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for (p, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if p + 1 < n {
                next[p + 1] += c;
            }
            next[p] -= c * &xr[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}
