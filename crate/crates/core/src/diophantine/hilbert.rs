//! Hilbert basis of `{z in Z_{>=0}^k : Bz = 0}` by completion over the
//! componentwise order, one equation at a time.
//!
//! Start from the unit vectors (the Hilbert basis of the orthant). For each
//! row `l` of `B`, complete the current set `G` under sums `x + y` with
//! `l(x) > 0 > l(y)`, reducing every sum to normal form first. An element
//! `g` reduces `s` when `g <= s` componentwise and `l(g)` lies between `0`
//! and `l(s)`. After completion every element of the current monoid is a
//! sign-compatible sum of elements of `G`, so the elements with `l = 0`
//! generate the next monoid; their componentwise-minimal ones are its
//! Hilbert basis. The next row is the one with the fewest pairs of opposite
//! sign on the current set.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};

use crate::vector::IntVector;

/// Minimal generating set of the nonnegative integer solutions of `Bz = 0`,
/// where `rows` are the rows of `B` and `num_vars` the number of unknowns.
/// Output is sorted lexicographically; empty when only `z = 0` solves.
pub fn hilbert_basis_homogeneous(rows: &[IntVector], num_vars: usize) -> Vec<IntVector> {
    assert!(rows.iter().all(|r| r.dim() == num_vars), "every row needs num_vars entries");
    let small: Option<Vec<Vec<i128>>> =
        rows.iter().map(|r| r.iter().map(|x| i128::try_from(x).ok()).collect()).collect();
    let basis = small
        .and_then(|rows| complete::<i128>(&rows, num_vars))
        .map(|b| b.into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect())
        .unwrap_or_else(|| {
            let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.entries().to_vec()).collect();
            complete::<BigInt>(&rows, num_vars).expect("arbitrary precision never overflows")
        });
    let mut out: Vec<IntVector> = basis.into_iter().map(IntVector::new).collect();
    out.sort();
    out
}

trait Entry: Clone + Ord + Zero + Signed + CheckedAdd + CheckedSub + CheckedMul {}
impl<T: Clone + Ord + Zero + Signed + CheckedAdd + CheckedSub + CheckedMul> Entry for T {}

struct Element<T> {
    v: Vec<T>,
    value: T,
    degree: T,
}

/// Runs the completion; `None` on fixed-width overflow.
fn complete<T: Entry>(rows: &[Vec<T>], num_vars: usize) -> Option<Vec<Vec<T>>> {
    let mut basis: Vec<Vec<T>> =
        (0..num_vars).map(|j| (0..num_vars).map(|i| if i == j { T::one() } else { T::zero() }).collect()).collect();
    let mut remaining: Vec<&Vec<T>> = rows.iter().collect();
    while !remaining.is_empty() && !basis.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in remaining.iter().enumerate() {
            let (mut pos, mut neg) = (0usize, 0usize);
            for v in &basis {
                let value = eval(row, v)?;
                pos += usize::from(value.is_positive());
                neg += usize::from(value.is_negative());
            }
            if best.is_none_or(|(_, p)| pos * neg < p) {
                best = Some((i, pos * neg));
            }
        }
        let (i, _) = best.expect("remaining rows");
        basis = cut(&basis, remaining.swap_remove(i))?;
    }
    Some(basis)
}

fn eval<T: Entry>(row: &[T], v: &[T]) -> Option<T> {
    let mut acc = T::zero();
    for (a, x) in row.iter().zip(v) {
        acc = acc.checked_add(&a.checked_mul(x)?)?;
    }
    Some(acc)
}

fn degree<T: Entry>(v: &[T]) -> Option<T> {
    v.iter().try_fold(T::zero(), |acc, x| acc.checked_add(x))
}

/// `g` reduces `s`: componentwise below it with a value between 0 and `l(s)`.
fn reduces<T: Entry>(g: &Element<T>, v: &[T], value: &T) -> bool {
    let compatible = if value.is_zero() {
        g.value.is_zero()
    } else if value.is_positive() {
        !g.value.is_negative() && g.value <= *value
    } else {
        !g.value.is_positive() && g.value >= *value
    };
    compatible && g.degree > T::zero() && g.v.iter().zip(v).all(|(a, b)| a <= b)
}

/// Hilbert basis of `{z in M : row·z = 0}` from a Hilbert basis of `M`.
fn cut<T: Entry>(basis: &[Vec<T>], row: &[T]) -> Option<Vec<Vec<T>>> {
    let mut elems: Vec<Element<T>> = Vec::with_capacity(basis.len());
    for v in basis {
        elems.push(Element { value: eval(row, v)?, degree: degree(v)?, v: v.clone() });
    }
    // Pending sums, smallest degree first.
    let mut pending: BinaryHeap<Reverse<(T, usize, usize)>> = BinaryHeap::new();
    let push_pairs =
        |elems: &[Element<T>], n: usize, pending: &mut BinaryHeap<Reverse<(T, usize, usize)>>| -> Option<()> {
            let e = &elems[n];
            if e.value.is_zero() {
                return Some(());
            }
            for (m, f) in elems[..n].iter().enumerate() {
                if e.value.is_positive() == f.value.is_negative() && !f.value.is_zero() {
                    pending.push(Reverse((e.degree.checked_add(&f.degree)?, m, n)));
                }
            }
            Some(())
        };
    for n in 0..elems.len() {
        push_pairs(&elems, n, &mut pending)?;
    }

    while let Some(Reverse((_, i, j))) = pending.pop() {
        let mut v: Vec<T> = Vec::with_capacity(elems[i].v.len());
        for (a, b) in elems[i].v.iter().zip(&elems[j].v) {
            v.push(a.checked_add(b)?);
        }
        let mut value = elems[i].value.checked_add(&elems[j].value)?;
        let mut reduced = true;
        while reduced && v.iter().any(|x| !x.is_zero()) {
            reduced = false;
            if let Some(g) = elems.iter().find(|g| reduces(g, &v, &value)) {
                for (x, y) in v.iter_mut().zip(&g.v) {
                    *x = x.checked_sub(y)?;
                }
                value = value.checked_sub(&g.value)?;
                reduced = true;
            }
        }
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let degree = degree(&v)?;
        elems.push(Element { v, value, degree });
        push_pairs(&elems, elems.len() - 1, &mut pending)?;
    }

    let zero: Vec<&Element<T>> = elems.iter().filter(|e| e.value.is_zero()).collect();
    let minimal = zero
        .iter()
        .filter(|e| !zero.iter().any(|f| f.degree < e.degree && f.v.iter().zip(&e.v).all(|(a, b)| a <= b)))
        .map(|e| e.v.clone())
        .collect();
    Some(minimal)
}
