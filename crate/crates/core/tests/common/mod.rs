//! Brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use colorsg_core::cone::is_pointed;
use colorsg_core::semigroup::AffineSemigroup;
use colorsg_core::IntVector;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::Rng;

pub fn iv(v: &[i64]) -> IntVector {
    IntVector::from_i64s(v)
}

pub fn vector(dim: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(lo..=hi, dim)
}

/// `count` nonzero vectors of length `dim` with entries in `[lo, hi]`.
pub fn nonzero_vectors(
    dim: usize,
    count: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = Vec<IntVector>> {
    proptest::collection::vec(vector(dim, lo, hi).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0)), count)
        .prop_map(|vs| vs.iter().map(|v| iv(v)).collect())
}

/// Integer functional positive on every generator of a pointed semigroup.
pub fn positive_functional(s: &AffineSemigroup) -> Option<Vec<i64>> {
    if s.is_trivial() {
        return Some(vec![1; s.dim()]);
    }
    let w = is_pointed(&s.cone()).witness?;
    w.to_i64s()
}

fn dot(w: &[i64], v: &IntVector) -> i64 {
    w.iter().zip(v.iter()).map(|(a, b)| a * b.to_i64().unwrap()).sum()
}

fn l1(v: &IntVector) -> i64 {
    v.iter().map(|x| x.abs().to_i64().unwrap()).sum()
}

/// Every element of a pointed `s` with L1 norm at most `limit`.
///
/// Sums are grown under the cap `<w, p> <= W`, where `W` bounds `<w, .>` on
/// the L1 ball; partial sums only increase `<w, .>`, so nothing is missed.
pub fn elements_in_ball(s: &AffineSemigroup, limit: i64) -> BTreeSet<IntVector> {
    let w = positive_functional(s).expect("pointed semigroup");
    let cap = limit * w.iter().map(|x| x.abs()).max().unwrap_or(0);
    let mut seen = BTreeSet::new();
    let mut stack = vec![IntVector::zeros(s.dim())];
    seen.insert(IntVector::zeros(s.dim()));
    while let Some(v) = stack.pop() {
        for g in s.generators() {
            let next = &v + g;
            if dot(&w, &next) <= cap && seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen.into_iter().filter(|v| l1(v) <= limit).collect()
}

/// All `x >= 0` with `sum x_j a_j = b`, scanning the grid cut out by a
/// positive functional `w`: `x_j <w, a_j> <= <w, b>`.
pub fn grid_solutions(columns: &[IntVector], w: &[i64], b: &IntVector) -> Vec<Vec<i64>> {
    let budget = dot(w, b);
    let values: Vec<i64> = columns.iter().map(|c| dot(w, c)).collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; columns.len()];
    fn rec(
        j: usize,
        left: i64,
        columns: &[IntVector],
        values: &[i64],
        b: &IntVector,
        x: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if j == columns.len() {
            let sum = columns
                .iter()
                .zip(x.iter())
                .fold(IntVector::zeros(b.dim()), |acc, (c, &k)| &acc + &c.scaled(&BigInt::from(k)));
            if &sum == b {
                out.push(x.clone());
            }
            return;
        }
        let mut k = 0;
        while k * values[j] <= left {
            x[j] = k;
            rec(j + 1, left - k * values[j], columns, values, b, x, out);
            k += 1;
        }
        x[j] = 0;
    }
    if budget >= 0 {
        rec(0, budget, columns, &values, b, &mut x, &mut out);
    }
    out.sort();
    out
}

/// Number of grid points the scan above visits (an upper bound on the work).
pub fn grid_size(columns: &[IntVector], w: &[i64], b: &IntVector) -> f64 {
    let budget = dot(w, b).max(0) as f64;
    columns.iter().map(|c| budget / dot(w, c) as f64 + 1.0).product()
}

/// Numerical membership tables by the naive recurrence.
pub fn member_table(a: &[u64], limit: usize) -> Vec<bool> {
    let mut t = vec![false; limit + 1];
    t[0] = true;
    for b in 1..=limit {
        t[b] = a.iter().any(|&x| x as usize <= b && t[b - x as usize]);
    }
    t
}

/// Every representation of `b` over `coins` (index vectors of multiplicities).
pub fn representations(coins: &[u64], b: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut x = vec![0u64; coins.len()];
    fn rec(j: usize, left: u64, coins: &[u64], x: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if j == coins.len() {
            if left == 0 {
                out.push(x.clone());
            }
            return;
        }
        let mut k = 0;
        while k * coins[j] <= left {
            x[j] = k;
            rec(j + 1, left - k * coins[j], coins, x, out);
            k += 1;
        }
        x[j] = 0;
    }
    rec(0, b, coins, &mut x, &mut out);
    out
}

/// Number of distinct colors used by a representation over the flattened classes.
pub fn colors_used(classes: &[Vec<u64>], x: &[u64]) -> usize {
    let mut i = 0;
    let mut used = 0;
    for c in classes {
        if x[i..i + c.len()].iter().any(|&m| m > 0) {
            used += 1;
        }
        i += c.len();
    }
    used
}

/// Brute-force `f_k(b)`.
pub fn brute_count(classes: &[Vec<u64>], k: usize, b: u64) -> u64 {
    let coins: Vec<u64> = classes.iter().flatten().copied().collect();
    representations(&coins, b).iter().filter(|x| colors_used(classes, x) >= k).count() as u64
}

/// Brute-force largest `b <= limit` with no `k`-chromatic representation.
pub fn brute_chromatic_frobenius(classes: &[Vec<u64>], k: usize, limit: u64) -> i64 {
    (0..=limit).rev().find(|&b| brute_count(classes, k, b) == 0).map_or(-1, |b| b as i64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Random colored numerical instance: `ell` disjoint classes of distinct
/// values in `2..=max_value`, overall gcd 1.
pub fn random_numerical<R: Rng>(
    rng: &mut R,
    max_classes: usize,
    max_value: u64,
    max_per_class: usize,
) -> Vec<Vec<u64>> {
    loop {
        let ell = rng.random_range(1..=max_classes);
        let mut used = BTreeSet::new();
        let mut classes = Vec::with_capacity(ell);
        for _ in 0..ell {
            let size = rng.random_range(1..=max_per_class);
            let mut class = BTreeSet::new();
            for _ in 0..size {
                let v = rng.random_range(2..=max_value);
                if used.insert(v) {
                    class.insert(v);
                }
            }
            classes.push(class.into_iter().collect::<Vec<u64>>());
        }
        if classes.iter().any(Vec::is_empty) {
            continue;
        }
        if classes.iter().flatten().fold(0, |g, &a| gcd(g, a)) == 1 {
            return classes;
        }
    }
}

/// Random pointed semigroup with `1..=max_gens` generators in `[-r, r]^dim`.
pub fn random_pointed<R: Rng>(rng: &mut R, dim: usize, max_gens: usize, r: i64) -> AffineSemigroup {
    loop {
        let n = rng.random_range(1..=max_gens);
        let gens: Vec<IntVector> = (0..n)
            .map(|_| IntVector::new((0..dim).map(|_| BigInt::from(rng.random_range(-r..=r))).collect()))
            .filter(|v| !v.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let s = AffineSemigroup::new(dim, gens).unwrap();
        if s.is_pointed() {
            return s;
        }
    }
}

pub fn is_zero(v: &IntVector) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Every vector in `{0..=max}^n`.
pub fn cube_points(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..=max).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

/// `exact[mask][b]`: `b` is a sum of one nonzero element of `sg(A_i)` for
/// each class `i` in `mask`, built by convolving membership tables.
pub fn exact_color_tables(classes: &[Vec<u64>], limit: usize) -> Vec<Vec<bool>> {
    let members: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let t = member_table(c, limit);
            (1..=limit).filter(|&b| t[b]).collect()
        })
        .collect();
    let ell = classes.len();
    let mut exact = vec![vec![false; limit + 1]; 1 << ell];
    exact[0][0] = true;
    for mask in 1usize..1 << ell {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let row: Vec<bool> =
            (0..=limit).map(|b| members[i].iter().take_while(|&&c| c <= b).any(|&c| exact[rest][b - c])).collect();
        exact[mask] = row;
    }
    exact
}

/// `b <= limit` with a solution using at least `k` colors.
pub fn at_least_k_table(classes: &[Vec<u64>], k: usize, limit: usize) -> Vec<bool> {
    let exact = exact_color_tables(classes, limit);
    (0..=limit).map(|b| exact.iter().enumerate().any(|(mask, row)| mask.count_ones() as usize >= k && row[b])).collect()
}

/// `b <= limit` with a solution using every color, by a chain of convolutions.
pub fn all_colors_table(classes: &[Vec<u64>], limit: usize) -> Vec<bool> {
    let mut current = vec![false; limit + 1];
    current[0] = true;
    for c in classes {
        let t = member_table(c, limit);
        let parts: Vec<usize> = (1..=limit).filter(|&b| t[b]).collect();
        current = (0..=limit).map(|b| parts.iter().take_while(|&&p| p <= b).any(|&p| current[b - p])).collect();
    }
    current
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Membership certificate: the representation returned by `s` is checked by
/// direct evaluation.
pub fn certified_member(s: &AffineSemigroup, v: &IntVector) -> bool {
    let Some(x) = s.representation(v).unwrap() else {
        return false;
    };
    let counts = x.multiplicities();
    counts.iter().all(|c| !c.is_negative())
        && s.generators().iter().zip(counts.iter()).fold(IntVector::zeros(s.dim()), |acc, (g, c)| &acc + &g.scaled(c))
            == *v
}
