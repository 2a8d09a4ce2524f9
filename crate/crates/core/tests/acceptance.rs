//! Acceptance run: one PASS/FAIL line per criterion with its runtime.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use colorsg_core::colored::{
    build_cteg_family, caratheodory_exceptions, classify, find_colorful, lift_family, monochromatic_profile,
    verify_unique_expressions, ColoredSemigroup,
};
use colorsg_core::diophantine::SolutionVector;
use colorsg_core::helly::{
    build_mthelly_example, helly_audit, AuditOptions, CaseAssertion, SemigroupFamily, SharpnessCase,
};
use colorsg_core::numerical::{
    chromatic_frobenius, estimate_check, fit_quasipolynomial, reduction_construct, BChoice, ColoredNumericalSemigroup,
    ReductionMode,
};
use colorsg_core::semigroup::{intersect_semigroups, AffineSemigroup};
use colorsg_core::IntVector;
use common::{
    all_colors_table, at_least_k_table, brute_count, certified_member, elements_in_ball, gcd, grid_solutions, iv, lcm,
    member_table, positive_functional, random_numerical, random_pointed,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn numerical_f(a: &[u64]) -> i64 {
    let max = *a.iter().max().unwrap() as usize;
    let limit = max * max + 1;
    let t = member_table(a, limit);
    (0..=limit).rev().find(|&b| !t[b]).map_or(-1, |b| b as i64)
}

fn largest_false(t: &[bool]) -> i64 {
    (0..t.len()).rev().find(|&b| !t[b]).map_or(-1, |b| b as i64)
}

fn intro_labels() -> Result<(), String> {
    let s = ColoredSemigroup::numerical(&[&[9, 16], &[11, 14], &[12, 13]]).map_err(|e| e.to_string())?;
    let cases = [
        ([6, 1, 0, 0, 0, 0], (true, false, false, 1)),
        ([3, 1, 0, 1, 0, 1], (false, true, false, 3)),
        ([0, 1, 0, 2, 0, 2], (false, true, true, 3)),
        ([0, 0, 2, 0, 4, 0], (false, false, true, 2)),
    ];
    for (x, (mono, chromatic, colorful, level)) in cases {
        let x = SolutionVector::from_counts(&x);
        ensure!(x.evaluate(s.generators(), 1) == iv(&[70]), "{x} does not evaluate to 70");
        let c = classify(&s, &x).map_err(|e| e.to_string())?;
        ensure!(
            (c.is_monochromatic, c.is_chromatic, c.is_colorful, c.chromatic_level)
                == (mono, chromatic, colorful, level),
            "{x}: got {}",
            c.label()
        );
    }
    Ok(())
}

fn cteg_table() -> Result<(), String> {
    for n in 1..=8 {
        let v = verify_unique_expressions(n).map_err(|e| e.to_string())?;
        ensure!(v.representations.len() == n, "n = {n}: {} representations", v.representations.len());
        ensure!(v.p == iv(&[3, 3 * n as i64 - 1, 3 * n as i64 + 2]), "n = {n}: p = {}", v.p);
        let mut expected: Vec<Vec<u64>> = (0..n).map(|i| (0..3 * n).map(|j| u64::from(j / 3 == i)).collect()).collect();
        expected.sort();
        let mut found: Vec<Vec<u64>> = v
            .representations
            .iter()
            .map(|x| x.multiplicities().iter().map(|m| m.to_u64().unwrap()).collect())
            .collect();
        found.sort();
        ensure!(found == expected, "n = {n}: representations are not g_i + g'_i + g''_i");
    }
    let table = [
        ["(0,1,2)", "(1,7,9)", "(2,9,9)"],
        ["(0,3,4)", "(1,9,11)", "(2,5,5)"],
        ["(0,7,8)", "(1,13,15)", "(2,-3,-3)"],
        ["(0,15,16)", "(1,21,23)", "(2,-19,-19)"],
        ["(0,31,32)", "(1,37,39)", "(2,-51,-51)"],
        ["(0,63,64)", "(1,69,71)", "(2,-115,-115)"],
    ];
    let family = build_cteg_family(6).map_err(|e| e.to_string())?;
    for (row, want) in family.rows.iter().zip(table) {
        let got = [row.g.to_string(), row.g1.to_string(), row.g2.to_string()];
        ensure!(got == want, "row {got:?} != {want:?}");
    }
    Ok(())
}

fn three_blocks() -> ColoredSemigroup {
    let block = |rows: [[i64; 3]; 3]| rows.iter().map(|r| iv(r)).collect::<Vec<_>>();
    ColoredSemigroup::new(
        3,
        vec![
            block([[0, 0, 1], [1, 32, 34], [2, 63, 63]]),
            block([[0, 1, 2], [1, 33, 35], [2, 61, 61]]),
            block([[0, 3, 4], [1, 35, 37], [2, 57, 57]]),
        ],
    )
    .unwrap()
}

fn example_three_blocks() -> Result<(), String> {
    let s = three_blocks();
    let b = iv(&[3, 95, 98]);
    let all = s.solution_space().map_err(|e| e.to_string())?.solutions(&b);
    for i in 0..3 {
        let mut counts = [0u64; 9];
        counts[3 * i..3 * i + 3].fill(1);
        let x = SolutionVector::from_counts(&counts);
        ensure!(all.contains(&x), "{x} missing");
    }
    for x in &all {
        let c = classify(&s, x).map_err(|e| e.to_string())?;
        ensure!(!c.is_chromatic, "{x} is 3-chromatic");
    }
    let w = positive_functional(&s.base()).ok_or("base not pointed")?;
    let grid = grid_solutions(s.generators(), &w, &b);
    ensure!(grid.len() == all.len(), "grid scan found {} solutions, search {}", grid.len(), all.len());
    Ok(())
}

fn lift() -> Result<(), String> {
    let family = build_cteg_family(2).map_err(|e| e.to_string())?;
    let lifted = lift_family(&family.colored());
    let p = &family.p;
    for k in 0..=5i64 {
        let mut v: Vec<BigInt> = p.iter().cloned().collect();
        v.push(BigInt::from(k));
        let b = IntVector::new(v);
        let profile = monochromatic_profile(&lifted, &b).map_err(|e| e.to_string())?;
        ensure!(profile.iter().all(Option::is_some), "k = {k}: a class has no monochromatic solution");
        ensure!(find_colorful(&lifted, &b).map_err(|e| e.to_string())?.is_none(), "k = {k}: colorful solution found");
        let all = lifted.solution_space().map_err(|e| e.to_string())?.solutions(&b);
        for x in &all {
            ensure!(!classify(&lifted, x).map_err(|e| e.to_string())?.is_colorful, "k = {k}: {x} is colorful");
        }
    }
    Ok(())
}

fn cf_products() -> Result<(), String> {
    let mut cases: Vec<(Vec<Vec<u64>>, i64)> = Vec::new();
    for a in 1..=12u64 {
        for b in a + 1..=12 {
            if gcd(a, b) == 1 {
                cases.push((vec![vec![a], vec![b]], (a * b) as i64));
            }
        }
    }
    cases.push((vec![vec![3, 16], vec![5]], 15));
    for (classes, expected) in cases {
        let s = ColoredNumericalSemigroup::new(classes.clone()).map_err(|e| e.to_string())?;
        let value = chromatic_frobenius(&s, 2).map_err(|e| e.to_string())?.value;
        ensure!(value == expected, "{classes:?}: CF_2 = {value}, expected {expected}");
        let oracle = largest_false(&at_least_k_table(&classes, 2, expected as usize + 40));
        ensure!(oracle == expected, "{classes:?}: oracle {oracle}");
    }
    Ok(())
}

fn bounds_and_monotonicity() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let classes = random_numerical(&mut rng, 4, 30, 3);
        let s = ColoredNumericalSemigroup::new(classes.clone()).map_err(|e| e.to_string())?;
        let all: Vec<u64> = classes.iter().flatten().copied().collect();
        let f = numerical_f(&all);
        let mut mins: Vec<i64> = classes.iter().map(|c| *c.iter().min().unwrap() as i64).collect();
        mins.sort_unstable();
        let limit = (mins.iter().sum::<i64>() + f + 5) as usize;
        let mut previous = i64::MIN;
        for k in 1..=classes.len() {
            let min_m: i64 = mins[..k].iter().sum();
            let value = chromatic_frobenius(&s, k).map_err(|e| e.to_string())?.value;
            let oracle = largest_false(&at_least_k_table(&classes, k, limit));
            ensure!(value == oracle, "{classes:?}, k = {k}: CF {value}, oracle {oracle}");
            ensure!(
                min_m - 1 <= value && value <= min_m + f,
                "{classes:?}, k = {k}: {value} outside [{}, {}]",
                min_m - 1,
                min_m + f
            );
            ensure!(previous <= value, "{classes:?}: CF_{} = {previous} > CF_{k} = {value}", k - 1);
            previous = value;
            for i in 0..classes.len() {
                match estimate_check(&s, k, i) {
                    Ok(r) => ensure!(r.all_hold(), "{classes:?}, k = {k}, i = {i}: {r:?}"),
                    Err(colorsg_core::Error::NotPrimitive(_)) => {}
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }
    Ok(())
}

fn reductions() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = [0usize; 2];
    while done.iter().any(|&d| d < 20) {
        let classes = random_numerical(&mut rng, 3, 15, 2);
        let s = ColoredNumericalSemigroup::new(classes.clone()).map_err(|e| e.to_string())?;
        let ell = classes.len();
        let choice = if rng.random_bool(0.5) { BChoice::Minimal } else { BChoice::Explicit };
        let (mode, k, slot) = if ell >= 2 && done[0] < 20 {
            (ReductionMode::Doubling, rng.random_range(1..ell), 0)
        } else if done[1] < 20 {
            (ReductionMode::Append, ell, 1)
        } else {
            continue;
        };
        let r = reduction_construct(&s, k, mode, choice).map_err(|e| e.to_string())?;
        let cf_k = largest_false(&at_least_k_table(&classes, k, 2000));
        let predicted = match mode {
            ReductionMode::Doubling => 2 * cf_k + r.b as i64,
            ReductionMode::Append => cf_k + r.b as i64,
        };
        ensure!(predicted == r.predicted, "{classes:?}: library predicts {}, oracle {predicted}", r.predicted);
        let (_, computed) = r.check().map_err(|e| e.to_string())?;
        let new_classes = r.instance.classes().to_vec();
        let oracle = largest_false(&at_least_k_table(&new_classes, k + 1, predicted as usize + 200));
        ensure!(computed == oracle, "{new_classes:?}: computed {computed}, oracle {oracle}");
        ensure!(
            computed == predicted,
            "{classes:?} {mode:?} k = {k} b = {}: CF_{} = {computed}, predicted {predicted}",
            r.b,
            k + 1
        );
        done[slot] += 1;
    }
    Ok(())
}

fn quasipolynomials() -> Result<(), String> {
    for classes in [vec![vec![3u64], vec![5]], vec![vec![2], vec![3]]] {
        let s = ColoredNumericalSemigroup::new(classes.clone()).map_err(|e| e.to_string())?;
        let qp = fit_quasipolynomial(&s, 2, 1, 30).map_err(|e| e.to_string())?;
        let period = classes.iter().flatten().fold(1, |l, &a| lcm(l, a));
        ensure!(qp.period == period, "period {} != {period}", qp.period);
        let first = 1 + 2 * period;
        for b in first..first + 30 {
            let want = BigInt::from(brute_count(&classes, 2, b));
            ensure!(
                qp.eval_integer(b) == Some(want.clone()),
                "{classes:?}: f_2({b}) = {want}, fit {:?}",
                qp.eval_integer(b)
            );
        }
    }
    Ok(())
}

fn helly_member<R: Rng>(rng: &mut R, dim: usize, case: CaseAssertion) -> AffineSemigroup {
    if case == CaseAssertion::PointedNoncover {
        let gens: Vec<IntVector> = (0..rng.random_range(1..=4))
            .map(|_| {
                let mut v = vec![rng.random_range(1..=4)];
                v.extend((1..dim).map(|_| rng.random_range(-4..=4)));
                iv(&v)
            })
            .collect();
        AffineSemigroup::new(dim, gens).unwrap()
    } else {
        random_pointed(rng, dim, 4, 4)
    }
}

fn helly() -> Result<(), String> {
    for d in 1..=4 {
        for case in [SharpnessCase::A, SharpnessCase::B, SharpnessCase::C] {
            let family = build_mthelly_example(case, d).map_err(|e| e.to_string())?;
            let r = helly_audit(&family, AuditOptions::default()).map_err(|e| e.to_string())?;
            ensure!(r.premise_below.holds && !r.conclusion_holds, "{case:?}, d = {d}: {r:?}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in [CaseAssertion::PointedNoncover, CaseAssertion::PointedCover, CaseAssertion::General] {
        for _ in 0..100 {
            let dim = rng.random_range(1..=3);
            let members: Vec<AffineSemigroup> =
                (0..rng.random_range(1..=5)).map(|_| helly_member(&mut rng, dim, case)).collect();
            let family = SemigroupFamily::new(members.clone(), case).map_err(|e| e.to_string())?;
            let r = helly_audit(&family, AuditOptions::default()).map_err(|e| e.to_string())?;
            ensure!(!r.anomaly, "{case:?}: anomaly {r:?}");
            ensure!(!r.premise.holds || r.conclusion_holds, "{case:?}: premise without conclusion");
            if let Some(w) = &r.witness {
                for s in &members {
                    ensure!(certified_member(s, w), "{w} not in {s}");
                }
            }
        }
    }
    Ok(())
}

fn intersections() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let dim = rng.random_range(1..=2);
        let s1 = random_pointed(&mut rng, dim, 3, 4);
        let s2 = random_pointed(&mut rng, dim, 3, 4);
        let meet = intersect_semigroups(&s1, &s2).map_err(|e| e.to_string())?;
        let expected: BTreeSet<IntVector> =
            elements_in_ball(&s1, 40).intersection(&elements_in_ball(&s2, 40)).cloned().collect();
        ensure!(elements_in_ball(&meet, 40) == expected, "{s1} ∩ {s2} = {meet}");
    }
    let meet = intersect_semigroups(&AffineSemigroup::numerical(&[2]), &AffineSemigroup::numerical(&[3]))
        .map_err(|e| e.to_string())?;
    ensure!(meet.generators() == [iv(&[6])], "sg(2) ∩ sg(3) = {meet}");
    let a = AffineSemigroup::from_i64s(2, &[&[1, 0], &[1, 2]]).map_err(|e| e.to_string())?;
    let b = AffineSemigroup::from_i64s(2, &[&[1, 1]]).map_err(|e| e.to_string())?;
    let meet = intersect_semigroups(&a, &b).map_err(|e| e.to_string())?;
    ensure!(meet.generators() == [iv(&[2, 2])], "planar intersection = {meet}");
    Ok(())
}

fn caratheodory() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let classes = random_numerical(&mut rng, 3, 10, 2);
        let ell = classes.len();
        let s = ColoredNumericalSemigroup::new(classes.clone()).map_err(|e| e.to_string())?;
        let report = caratheodory_exceptions(&s.to_colored()).map_err(|e| e.to_string())?;
        let g: Vec<u64> = report.intersection_generators.iter().map(|v| v[0].to_u64().unwrap()).collect();
        let all: Vec<u64> = classes.iter().flatten().copied().collect();
        let bound = (ell as u64 - 1) * g.iter().max().copied().unwrap_or(0)
            + numerical_f(&all).max(0) as u64
            + all.iter().fold(1, |l, &a| lcm(l, a));
        let limit = bound as usize;
        let members: Vec<Vec<bool>> = classes.iter().map(|c| member_table(c, limit)).collect();
        let meet: Vec<bool> = (0..=limit).map(|b| members.iter().all(|t| t[b])).collect();
        let irreducible: Vec<u64> =
            (1..=limit).filter(|&b| meet[b] && !(1..b).any(|c| meet[c] && meet[b - c])).map(|b| b as u64).collect();
        ensure!(irreducible == g, "{classes:?}: generators {g:?}, brute {irreducible:?}");
        let chromatic = all_colors_table(&classes, limit);
        let brute: Vec<u64> = (1..=limit).filter(|&b| meet[b] && !chromatic[b]).map(|b| b as u64).collect();
        let computed: Vec<u64> = report.exceptions.iter().map(|e| e.b[0].to_u64().unwrap()).collect();
        ensure!(computed == brute, "{classes:?}: exceptions {computed:?}, brute {brute:?}");
    }
    let report = caratheodory_exceptions(&three_blocks()).map_err(|e| e.to_string())?;
    ensure!(report.exceptions.iter().any(|e| e.b == iv(&[3, 95, 98])), "(3,95,98) not among the exceptions");
    Ok(())
}

fn main() {
    let criteria: [(&str, Check, Duration); 11] = [
        ("1 intro example labels", intro_labels, Duration::from_secs(1)),
        ("2 unique-expression family n = 1..8, n = 6 table", cteg_table, Duration::from_secs(60)),
        ("3 three-block example at (3,95,98)", example_three_blocks, Duration::from_secs(10)),
        ("4 lifted family has no colorful solution", lift, Duration::from_secs(30)),
        ("5 CF_2 equals ab", cf_products, Duration::from_secs(5)),
        ("6 CF bounds and monotonicity, 200 instances", bounds_and_monotonicity, Duration::from_secs(120)),
        ("7 reduction identities, 20 per mode", reductions, Duration::from_secs(120)),
        ("8 quasipolynomial fits, 30 held-out values", quasipolynomials, Duration::from_secs(30)),
        ("9 Helly sharpness and random audits", helly, Duration::from_secs(180)),
        ("10 intersection oracle", intersections, Duration::from_secs(180)),
        ("11 chromatic Caratheodory exceptions", caratheodory, Duration::from_secs(180)),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(()) if elapsed > budget => Err(format!("over budget of {:.0} s", budget.as_secs_f64())),
            other => other,
        };
        match outcome {
            Ok(()) => println!("PASS  {name}  ({:.3} s)", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({:.3} s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    println!("total {:.3} s, {failed} failed", total.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
