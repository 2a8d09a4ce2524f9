//! Exact rational feasibility via a two-phase tableau simplex with Bland's
//! rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One affine row `coeffs · x >= rhs` (or `>` when `strict`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
    pub strict: bool,
}

impl Row {
    pub fn weak(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Row { coeffs, rhs, strict: false }
    }

    pub fn strict(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Row { coeffs, rhs, strict: true }
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_ints(coeffs: &[BigInt], rhs: BigInt, strict: bool) -> Self {
        Row {
            coeffs: coeffs.iter().cloned().map(BigRational::from_integer).collect(),
            rhs: BigRational::from_integer(rhs),
            strict,
        }
    }

    fn satisfied_by(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        if self.strict {
            lhs > self.rhs
        } else {
            lhs >= self.rhs
        }
    }
}

/// Finds a point of `{x in Q^n : every row holds}`; `None` when the system
/// is infeasible. Rows flagged strict must hold strictly.
///
/// Deterministic: Bland's rule fixes the pivot sequence.
pub fn rational_feasible(num_vars: usize, rows: &[Row]) -> Option<Vec<BigRational>> {
    let any_strict = rows.iter().any(|r| r.strict);

    // Variables: u (n), v (n) with x = u - v, then t when strict rows exist.
    // Row a·x - s t >= rhs becomes -a·u + a·v + s t <= -rhs.
    let n = num_vars;
    let width = 2 * n + usize::from(any_strict);
    let mut g: Vec<Vec<BigRational>> = Vec::with_capacity(rows.len() + 1);
    let mut h: Vec<BigRational> = Vec::with_capacity(rows.len() + 1);
    for row in rows {
        assert_eq!(row.coeffs.len(), n, "row width must equal the number of variables");
        let mut line = Vec::with_capacity(width);
        line.extend(row.coeffs.iter().map(|a| -a));
        line.extend(row.coeffs.iter().cloned());
        if any_strict {
            line.push(if row.strict { BigRational::one() } else { BigRational::zero() });
        }
        g.push(line);
        h.push(-row.rhs.clone());
    }
    let mut objective = vec![BigRational::zero(); width];
    if any_strict {
        let mut cap = vec![BigRational::zero(); width];
        cap[2 * n] = BigRational::one();
        g.push(cap);
        h.push(BigRational::one());
        objective[2 * n] = BigRational::one();
    }

    let y = match maximize(&objective, &g, &h) {
        LpOutcome::Infeasible => return None,
        LpOutcome::Optimal(y) => y,
        // t is capped at 1, so the objective is bounded.
        LpOutcome::Unbounded => unreachable!("bounded objective reported unbounded"),
    };
    if any_strict && !y[2 * n].is_positive() {
        return None;
    }
    let x: Vec<BigRational> = (0..n).map(|i| &y[i] - &y[n + i]).collect();
    debug_assert!(rows.iter().all(|r| r.satisfied_by(&x)));
    Some(x)
}

#[derive(Debug)]
pub(crate) enum LpOutcome {
    Optimal(Vec<BigRational>),
    Infeasible,
    Unbounded,
}

/// `max c·y  s.t.  G y <= h, y >= 0`.
pub(crate) fn maximize(c: &[BigRational], g: &[Vec<BigRational>], h: &[BigRational]) -> LpOutcome {
    let m = g.len();
    let n = c.len();
    // Columns: n structural, m slacks, then one artificial per row with h < 0.
    let needs_art: Vec<bool> = h.iter().map(|x| x.is_negative()).collect();
    let num_art = needs_art.iter().filter(|&&b| b).count();
    let total = n + m + num_art;

    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut art_col = n + m;
    for i in 0..m {
        let mut row = vec![BigRational::zero(); total];
        let flip = needs_art[i];
        let sign = if flip { -BigRational::one() } else { BigRational::one() };
        for j in 0..n {
            row[j] = &g[i][j] * &sign;
        }
        row[n + i] = sign.clone();
        if flip {
            row[art_col] = BigRational::one();
            basis.push(art_col);
            art_col += 1;
        } else {
            basis.push(n + i);
        }
        tab.push(row);
        rhs.push(&h[i] * &sign);
    }

    let mut t = Tableau { tab, rhs, basis };

    if num_art > 0 {
        // Phase 1: maximize -(sum of artificials).
        let mut phase1 = vec![BigRational::zero(); total];
        for col in phase1.iter_mut().skip(n + m) {
            *col = -BigRational::one();
        }
        let allowed: Vec<bool> = vec![true; total];
        t.optimize(&phase1, &allowed);
        let art_sum: BigRational =
            t.basis.iter().zip(&t.rhs).filter(|(&b, _)| b >= n + m).map(|(_, v)| v.clone()).sum();
        if art_sum.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        for r in 0..m {
            if t.basis[r] >= n + m {
                if let Some(col) = (0..n + m).find(|&j| !t.tab[r][j].is_zero()) {
                    t.pivot(r, col);
                }
                // Otherwise the row is redundant; the artificial stays at 0
                // and is barred from re-entering below.
            }
        }
    }

    let mut full_c = vec![BigRational::zero(); total];
    full_c[..n].clone_from_slice(c);
    let allowed: Vec<bool> = (0..total).map(|j| j < n + m).collect();
    if !t.optimize(&full_c, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut y = vec![BigRational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            y[b] = t.rhs[r].clone();
        }
    }
    LpOutcome::Optimal(y)
}

struct Tableau {
    tab: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.tab[r][col].clone();
        for x in self.tab[r].iter_mut() {
            *x = &*x / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        let pivot_row = self.tab[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.tab.len() {
            if i == r {
                continue;
            }
            let f = self.tab[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for (x, pr) in self.tab[i].iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *x -= &f * pr;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = col;
    }

    /// Primal simplex with Bland's rule. Returns false when unbounded.
    fn optimize(&mut self, c: &[BigRational], allowed: &[bool]) -> bool {
        loop {
            // Reduced cost c_j - c_B B^-1 A_j; enter the lowest index with
            // positive reduced cost.
            let entering = (0..c.len()).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut rc = c[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !c[b].is_zero() && !self.tab[r][j].is_zero() {
                        rc -= &c[b] * &self.tab[r][j];
                    }
                }
                rc.is_positive()
            });
            let Some(col) = entering else { return true };
            let mut best: Option<(usize, BigRational)> = None;
            for r in 0..self.tab.len() {
                let a = &self.tab[r][col];
                if a.is_positive() {
                    let ratio = &self.rhs[r] / a;
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, col);
        }
    }
}
