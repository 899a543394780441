use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use vbclass::abelian::{cokernel_presentation, smith_normal_form, IntMatrix};
use vbclass::builtins::builtin;
use vbclass::census::enumerate_cp4;
use vbclass::format;
use vbclass::{
    check_rank3, check_rank4, chern_inverse, chern_product, compute_b, rr_value, rr_value_series,
    BundleRank, ChernTuple, Coefficients, CohomologyClass, ManifoldData,
};

const EVEN_FIXTURES: [&str; 4] = ["cp4", "hp2", "cp2xcp2", "cp1xcp3"];
const ALL_FIXTURES: [&str; 7] = [
    "cp4",
    "s8",
    "hp2",
    "cp2xcp2",
    "cp1xcp3",
    "torsion-demo",
    "odd-demo",
];

fn class(d: &ManifoldData, degree: usize, seed: &[i64]) -> CohomologyClass {
    let coords: Vec<BigInt> = (0..d.ngens(degree))
        .map(|i| BigInt::from(seed[i % seed.len()] + i as i64))
        .collect();
    d.integral_class(degree, coords).unwrap()
}

fn tuple(d: &ManifoldData, seed: &[i64; 4]) -> ChernTuple {
    ChernTuple::new(
        class(d, 2, &seed[0..1]),
        class(d, 4, &seed[1..2]),
        class(d, 6, &seed[2..3]),
        class(d, 8, &seed[3..4]),
    )
    .unwrap()
}

fn coeff() -> impl Strategy<Value = i64> {
    -9i64..=9
}

fn seed4() -> impl Strategy<Value = [i64; 4]> {
    [coeff(), coeff(), coeff(), coeff()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cup_is_bilinear(name in prop::sample::select(&ALL_FIXTURES[..]), a in 0usize..=8, b in 0usize..=8,
                       s1 in seed4(), s2 in seed4(), s3 in seed4()) {
        let d = builtin(name).unwrap();
        prop_assume!(a + b <= 8 && d.has_cup_table(a, b, Coefficients::Integers));
        let (x, x2, y) = (class(&d, a, &s1), class(&d, a, &s2), class(&d, b, &s3));
        let lhs = d.cup(&d.add(&x, &x2).unwrap(), &y).unwrap();
        let rhs = d.add(&d.cup(&x, &y).unwrap(), &d.cup(&x2, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = d.cup(&y, &d.add(&x, &x2).unwrap()).unwrap();
        let rhs = d.add(&d.cup(&y, &x).unwrap(), &d.cup(&y, &x2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(d.cup(&x, &d.zero_class(b, Coefficients::Integers).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn even_products_pair_symmetrically(name in prop::sample::select(&EVEN_FIXTURES[..]), a in prop::sample::select(vec![2usize, 4, 6]),
                                         s1 in seed4(), s2 in seed4()) {
        let d = builtin(name).unwrap();
        let b = 8 - a;
        let (x, y) = (class(&d, a, &s1), class(&d, b, &s2));
        prop_assert_eq!(d.pair_top(&d.cup(&x, &y).unwrap()).unwrap(), d.pair_top(&d.cup(&y, &x).unwrap()).unwrap());
    }

    #[test]
    fn pairing_and_operations_are_linear(name in prop::sample::select(&ALL_FIXTURES[..]), n in 0usize..=6,
                                          s1 in seed4(), s2 in seed4()) {
        let d = builtin(name).unwrap();
        let (x, y) = (class(&d, n, &s1), class(&d, n, &s2));
        let sum = d.add(&x, &y).unwrap();
        let rx = d.rho2(&x).unwrap();
        let ry = d.rho2(&y).unwrap();
        prop_assert_eq!(d.rho2(&sum).unwrap(), d.add(&rx, &ry).unwrap());
        if d.op_matrix(vbclass::Operation::Sq2, n).is_ok() {
            prop_assert_eq!(d.sq2(&d.add(&rx, &ry).unwrap()).unwrap(), d.add(&d.sq2(&rx).unwrap(), &d.sq2(&ry).unwrap()).unwrap());
        }
        let (t1, t2) = (class(&d, 8, &s1), class(&d, 8, &s2));
        prop_assert_eq!(d.pair_top(&d.add(&t1, &t2).unwrap()).unwrap(), d.pair_top(&t1).unwrap() + d.pair_top(&t2).unwrap());
    }

    #[test]
    fn beta_kills_reductions(name in prop::sample::select(&ALL_FIXTURES[..]), n in 0usize..=7, s in seed4()) {
        let d = builtin(name).unwrap();
        let x = class(&d, n, &s);
        prop_assert!(d.beta(&d.rho2(&x).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn chern_product_is_commutative_and_associative(name in prop::sample::select(&EVEN_FIXTURES[..]),
                                                    s1 in seed4(), s2 in seed4(), s3 in seed4()) {
        let d = builtin(name).unwrap();
        let (u, v, w) = (tuple(&d, &s1), tuple(&d, &s2), tuple(&d, &s3));
        prop_assert_eq!(chern_product(&u, &v, &d).unwrap(), chern_product(&v, &u, &d).unwrap());
        let left = chern_product(&chern_product(&u, &v, &d).unwrap(), &w, &d).unwrap();
        let right = chern_product(&u, &chern_product(&v, &w, &d).unwrap(), &d).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(chern_product(&u, &ChernTuple::zero(&d), &d).unwrap(), u);
    }

    #[test]
    fn inverse_round_trip(name in prop::sample::select(&EVEN_FIXTURES[..]), s in seed4()) {
        let d = builtin(name).unwrap();
        let u = tuple(&d, &s);
        let inv = chern_inverse(&u, &d).unwrap();
        prop_assert_eq!(chern_product(&u, &inv, &d).unwrap(), ChernTuple::zero(&d));
        prop_assert_eq!(chern_inverse(&inv, &d).unwrap(), u);
    }

    #[test]
    fn riemann_roch_closed_form_matches_series(name in prop::sample::select(&ALL_FIXTURES[..]), s in seed4()) {
        let d = builtin(name).unwrap();
        let u = tuple(&d, &s);
        let rr = rr_value(&d, &u).unwrap();
        prop_assert_eq!(&rr, &rr_value_series(&d, &u).unwrap());
        prop_assert!(BigInt::from(24).is_multiple_of(rr.denom()));
    }

    #[test]
    fn realizable_tuples_have_integral_index(name in prop::sample::select(&ALL_FIXTURES[..]), s in seed4()) {
        let d = builtin(name).unwrap();
        let u = tuple(&d, &s);
        let v = check_rank4(&d, &u).unwrap();
        let rr = rr_value(&d, &u).unwrap();
        if v.condition1.holds {
            prop_assert_eq!(rr.is_integer(), v.realizable);
        }
        if v.realizable {
            prop_assert!(rr.is_integer());
        }
    }

    #[test]
    fn rank3_is_rank4_with_vanishing_top_class(name in prop::sample::select(&ALL_FIXTURES[..]), s in seed4()) {
        let d = builtin(name).unwrap();
        let u = tuple(&d, &s).with_u4(d.zero_class(8, Coefficients::Integers).unwrap()).unwrap();
        let r3 = check_rank3(&d, &u.u1, &u.u2, &u.u3).unwrap();
        let r4 = check_rank4(&d, &u).unwrap();
        prop_assert_eq!(r3.outcome(), r4.outcome());
    }

    #[test]
    fn cp4_has_one_residue_mod_6(a1 in coeff(), a2 in coeff(), a3 in coeff()) {
        let d = builtin("cp4").unwrap();
        let residues: Vec<i64> = (0..6)
            .filter(|&a4| {
                let u = ChernTuple::from_i64(&d, [&[a1], &[a2], &[a3], &[a4]]).unwrap();
                check_rank4(&d, &u).unwrap().realizable
            })
            .collect();
        if (a1 * a2 - a3).rem_euclid(2) == 0 {
            prop_assert_eq!(residues.len(), 1);
            // realizability only depends on a4 mod 6
            let shifted = ChernTuple::from_i64(&d, [&[a1], &[a2], &[a3], &[residues[0] + 6 * a1]]).unwrap();
            prop_assert!(check_rank4(&d, &shifted).unwrap().realizable);
        } else {
            prop_assert!(residues.is_empty());
        }
    }

    #[test]
    fn snf_postconditions(rows in 0usize..=5, cols in 0usize..=5, entries in prop::collection::vec(-30i64..=30, 25)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 5 + j]).collect()).collect();
        let a = if rows == 0 { IntMatrix::zeros(0, cols) } else { IntMatrix::from_rows(&data) };
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero());
        }
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        prop_assert_eq!(smith_normal_form(&a).d, s.d);
    }

    #[test]
    fn cokernel_order_is_determinant(entries in prop::collection::vec(-9i64..=9, 9)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
        let m = IntMatrix::from_rows(&rows);
        let det = {
            let e = |i: usize, j: usize| entries[3 * i + j];
            e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
        };
        let g = cokernel_presentation(3, &m).unwrap();
        if det == 0 {
            prop_assert!(!g.is_finite());
        } else {
            prop_assert_eq!(g.order(), Some(BigInt::from(det.abs())));
        }
    }

    #[test]
    fn format_round_trip_with_random_classes(name in prop::sample::select(&ALL_FIXTURES[..]), s in seed4()) {
        let mut d = builtin(name).unwrap();
        d.p1 = class(&d, 4, &s[0..2]);
        d.spinc = class(&d, 2, &s[2..4]);
        let text = format::to_string(&d);
        prop_assert_eq!(format::parse(&text).unwrap(), d);
    }
}

#[test]
fn b_groups_are_two_torsion() {
    for name in ALL_FIXTURES {
        let b = compute_b(&builtin(name).unwrap()).unwrap();
        assert!(
            b.invariant_factors().iter().all(|f| *f == BigInt::from(2)),
            "{name}: {b}"
        );
    }
}

#[test]
fn census_is_independent_of_worker_count() {
    for rank in [BundleRank::Three, BundleRank::Four] {
        let serial = enumerate_cp4(3, rank, None).unwrap();
        for jobs in [2, 4] {
            assert_eq!(enumerate_cp4(3, rank, Some(jobs)).unwrap(), serial);
        }
    }
}

#[test]
fn census_bounds() {
    let r = enumerate_cp4(0, BundleRank::Four, None).unwrap();
    let realizable: Vec<_> = r.realizable().map(|row| row.coeffs.clone()).collect();
    assert_eq!(realizable, vec![vec![0, 0, 0, 0]]);
    for rank in [BundleRank::Three, BundleRank::Four] {
        let r = enumerate_cp4(6, rank, Some(2)).unwrap();
        assert_eq!(r.disagreement_count(), 0);
        assert!(r.parity_violations().is_empty());
    }
}

#[test]
fn unit_pairs_to_one() {
    for name in ALL_FIXTURES {
        let d = builtin(name).unwrap();
        let g = d.generator(8, 0).unwrap();
        assert!(d.pair_top(&g).unwrap().abs().is_one(), "{name}");
    }
}
