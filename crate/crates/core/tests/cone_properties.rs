mod common;

use colorsg_core::cone::{contains_nonzero, intersect_cones, is_pointed, rational_feasible, RationalCone, Row};
use colorsg_core::IntVector;
use common::nonzero_vectors;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// `r` is a nonnegative rational combination of `gens`.
fn in_conic_hull(gens: &[IntVector], r: &IntVector) -> bool {
    let n = gens.len();
    let mut rows = Vec::new();
    for i in 0..r.dim() {
        let coeffs: Vec<BigRational> = gens.iter().map(|g| BigRational::from_integer(g[i].clone())).collect();
        let rhs = BigRational::from_integer(r[i].clone());
        rows.push(Row::weak(coeffs.clone(), rhs.clone()));
        rows.push(Row::weak(coeffs.iter().map(|c| -c).collect(), -rhs));
    }
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::from_integer(BigInt::from(1));
        rows.push(Row::weak(e, BigRational::zero()));
    }
    rational_feasible(n, &rows).is_some()
}

fn cone_strategy(max_dim: usize) -> impl Strategy<Value = RationalCone> {
    (1..=max_dim)
        .prop_flat_map(|d| nonzero_vectors(d, 1..=6, -9, 9).prop_map(move |g| RationalCone::new(d, g).unwrap()))
}

fn same_dim_cones(count: usize) -> impl Strategy<Value = Vec<RationalCone>> {
    (1..=3usize).prop_flat_map(move |d| {
        proptest::collection::vec(nonzero_vectors(d, 1..=4, -4, 4), count)
            .prop_map(move |gs| gs.into_iter().map(|g| RationalCone::new(d, g).unwrap()).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_satisfy_hrep_and_rays_lie_in_hull(cone in cone_strategy(4)) {
        for g in cone.generators() {
            prop_assert!(cone.contains(g));
        }
        let structure = cone.structure();
        for r in &structure.rays {
            prop_assert!(in_conic_hull(cone.generators(), r), "ray {r} outside the generated cone");
        }
        for l in &structure.lineality {
            prop_assert!(in_conic_hull(cone.generators(), l));
            prop_assert!(in_conic_hull(cone.generators(), &l.neg()));
        }
    }

    #[test]
    fn pointed_witness_is_strictly_positive(cone in cone_strategy(4)) {
        let p = is_pointed(&cone);
        if let Some(w) = &p.witness {
            prop_assert!(p.pointed);
            for g in cone.generators() {
                prop_assert!(w.dot(g).is_positive());
            }
        } else {
            prop_assert!(!p.pointed);
        }
    }

    #[test]
    fn adding_a_cone_never_creates_a_nonzero_point(cones in same_dim_cones(3)) {
        let before = contains_nonzero(&intersect_cones(&cones[..2]).unwrap()).is_some();
        let after = contains_nonzero(&intersect_cones(&cones).unwrap()).is_some();
        prop_assert!(before || !after);
    }

    #[test]
    fn intersection_is_commutative_and_associative(cones in same_dim_cones(3)) {
        let (a, b, c) = (&cones[0], &cones[1], &cones[2]);
        let ab = intersect_cones(&[a.clone(), b.clone()]).unwrap();
        let ba = intersect_cones(&[b.clone(), a.clone()]).unwrap();
        prop_assert_eq!(ab.canonical_generators(), ba.canonical_generators());
        let left = intersect_cones(&[ab, c.clone()]).unwrap();
        let bc = intersect_cones(&[b.clone(), c.clone()]).unwrap();
        let right = intersect_cones(&[a.clone(), bc]).unwrap();
        prop_assert_eq!(left.canonical_generators(), right.canonical_generators());
    }
}
