use homtop_core::groups::{
    direct_sum_power, integral_low_homotopy, stable_homotopy_simply_connected, DirectSum,
    FinAbGroup, PrimePower, StemsTable,
};
use homtop_core::oracle::{self, enumerate_words, linalg, DEFAULT_COLUMN_BUDGET};
use homtop_core::ranks::{cumulative_bound_check, homotopy_ranks, pbw_identity_check, PbwCheck};
use homtop_core::series::{quotient_series, tensor_series, GradedDims, TruncatedSeries};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (
        prop::collection::vec(-20i64..20, 1..10),
        0usize..9,
        prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)],
    )
        .prop_map(|(tail, order, c0)| {
            let mut coeffs = vec![c0];
            coeffs.extend(tail);
            TruncatedSeries::from_ints(&coeffs, order)
        })
}

proptest! {
    #[test]
    fn reciprocal_is_inverse(s in unit_series()) {
        let r = s.reciprocal().unwrap();
        prop_assert_eq!(&s * &r, TruncatedSeries::one(s.truncation_order()));
        prop_assert_eq!(r.reciprocal().unwrap(), s);
    }

    #[test]
    fn exp_undoes_log(tail in prop::collection::vec(-9i64..9, 0..10), order in 0usize..10) {
        let mut coeffs = vec![1];
        coeffs.extend(tail);
        let s = TruncatedSeries::from_ints(&coeffs, order);
        prop_assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn torsion_is_canonical_and_powers_add(orders in prop::collection::vec(0u64..200, 0..6), free in 0u64..4, a in 0u64..4, b in 0u64..4) {
        let g = orders.iter().fold(FinAbGroup::free(free), |acc, &n| acc.direct_sum(&FinAbGroup::cyclic(n)));
        let torsion: Vec<PrimePower> = g.torsion().to_vec();
        let mut sorted = torsion.clone();
        sorted.sort();
        prop_assert_eq!(&torsion, &sorted);
        prop_assert!(torsion.iter().all(|t| t.order() > 1 && PrimePower::from_order(t.order()) == Some(*t)));
        let recanon = FinAbGroup::from_parts(g.free_rank(), &g.torsion_orders()).unwrap();
        prop_assert_eq!(&recanon, &g);
        prop_assert_eq!(
            direct_sum_power(&g, a).direct_sum(&direct_sum_power(&g, b)),
            direct_sum_power(&g, a + b)
        );
    }
}

#[test]
fn tensor_series_counts_words() {
    for k in 1..=3u64 {
        let s = tensor_series(&GradedDims::xy_generators(k, 8), 8).unwrap();
        for n in 0..=8 {
            assert_eq!(
                s.to_integers().unwrap()[n],
                BigInt::from(enumerate_words(k, n).len()),
                "k={k} n={n}"
            );
        }
    }
}

#[test]
fn quotient_series_recurrence_and_positivity() {
    for k in 1..=8u64 {
        let a: Vec<i128> = quotient_series(k, 30)
            .unwrap()
            .to_dims()
            .expect("dimension series")
            .iter()
            .map(|c| c.to_i128().unwrap())
            .collect();
        let k = k as i128;
        for n in 3..=30 {
            assert_eq!(a[n], k * a[n - 1] + k * a[n - 2] - a[n - 3]);
        }
    }
}

#[test]
fn ranks_are_nonnegative_integers() {
    // homotopy_ranks rejects non-integral or negative values itself.
    for k in 2..=10 {
        let t = homotopy_ranks(k, 40).unwrap();
        assert_eq!(t.ranks().len(), 40);
        assert_eq!(t.rank(1), Some(&BigUint::from(k)));
    }
}

#[test]
fn hurewicz_anchors() {
    for k in 2..=20u64 {
        let t = homotopy_ranks(k, 2).unwrap();
        assert_eq!(t.rank(2).unwrap(), &BigUint::from((k - 1) * (k + 2) / 2));
    }
}

#[test]
fn b2_two_is_elliptic() {
    let t = homotopy_ranks(2, 40).unwrap();
    assert!(t.ranks()[2..].iter().all(Zero::is_zero));
}

#[test]
fn pbw_identity_through_order_twelve() {
    for k in 2..=6 {
        assert_eq!(pbw_identity_check(k, 12), Ok(PbwCheck::Holds), "k={k}");
    }
}

#[test]
fn pbw_series_are_dimension_series() {
    for k in 1..=6 {
        let t = homotopy_ranks(k, 12).unwrap();
        let s = homtop_core::series::pbw_series(&t, 12).unwrap();
        assert!(s.to_dims().is_some(), "k={k}");
    }
}

#[test]
fn cumulative_bound() {
    for b2 in 3..=7 {
        assert!(
            cumulative_bound_check(b2, 15).unwrap().iter().all(|&ok| ok),
            "b2={b2}"
        );
    }
}

#[test]
fn integral_low_homotopy_matches_ranks() {
    for b2 in 3..=10 {
        let (pi3, pi4) = integral_low_homotopy(b2).unwrap();
        let t = homotopy_ranks(b2, 3).unwrap();
        assert_eq!(BigUint::from(pi3.free_rank()), t.rank(2).unwrap().clone());
        assert_eq!(BigUint::from(pi4.free_rank()), t.rank(3).unwrap().clone());
        assert_eq!(pi4.torsion_orders(), vec![2; 2 * (b2 as usize - 1)]);
    }
}

#[test]
fn stable_formula_low_stems() {
    // Any valid table: pi_0 = Z is forced, the rest is arbitrary here.
    let table = StemsTable::validated(
        vec![
            FinAbGroup::free(1),
            FinAbGroup::cyclic(6),
            FinAbGroup::cyclic(5),
        ],
        "arbitrary",
    )
    .unwrap();
    for k in 1..=5 {
        assert_eq!(
            stable_homotopy_simply_connected(k, 2, &table).unwrap(),
            FinAbGroup::free(k)
        );
    }
    // k = 1: the (pi_{n-3})^0 term must vanish for every n.
    let sym = StemsTable::symbolic(12);
    for n in 0..=14 {
        let g = stable_homotopy_simply_connected(1, n, &sym).unwrap();
        assert_eq!(g.multiplicity(n - 3), 0, "n={n}");
    }
}

#[test]
fn oracle_matches_series() {
    for (k, n) in [(1, 8), (2, 7), (3, 6)] {
        let report = oracle::quotient_dims_oracle(k, n, DEFAULT_COLUMN_BUDGET).unwrap();
        assert!(report.all_series_match(), "k={k}");
        assert!(report.all_euler_ok(), "k={k}");
        for d in 0..=n {
            assert_eq!(
                report.quotient_dims.get(d) + report.ideal_dims.get(d),
                report.tensor_dims.get(d)
            );
        }
    }
}

#[test]
fn ideal_rank_stable_across_primes() {
    for (k, n) in [(1, 8), (2, 6), (3, 5)] {
        let rows = oracle::ideal_spanning_rows(k, n, DEFAULT_COLUMN_BUDGET).unwrap();
        let a = linalg::rank_mod_p(&rows, linalg::PRIMES[0]);
        let b = linalg::rank_mod_p(&rows, linalg::PRIMES[1]);
        assert_eq!(a, b, "k={k} n={n}");
    }
}
