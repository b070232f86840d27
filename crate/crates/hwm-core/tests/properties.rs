//! Randomized consistency checks between the independent computation routes.

use std::collections::BTreeSet;

use proptest::prelude::*;

use hwm_core::cartan::{Gcm, SubdiagramClass};
use hwm_core::characters::{ch_parabolic_verma_alternating, ch_parabolic_verma_induction};
use hwm_core::hull::wt_via_hull;
use hwm_core::rational::{height, q, q_ratio, Q};
use hwm_core::weights::{
    weyl_kac_weight_series, wt_parabolic_verma, wt_simple, wt_simple_via_orbit,
    wt_slice_decomposition, ModuleSpec,
};

/// Rank-2 matrices covering every classification: simply laced, multiply
/// laced, reducible, affine, and strictly hyperbolic.
fn fixtures() -> Vec<Gcm> {
    vec![
        Gcm::new(vec![vec![2, -1], vec![-1, 2]]).unwrap(),
        Gcm::new(vec![vec![2, -2], vec![-1, 2]]).unwrap(),
        Gcm::new(vec![vec![2, -1], vec![-3, 2]]).unwrap(),
        Gcm::new(vec![vec![2, 0], vec![0, 2]]).unwrap(),
        Gcm::new(vec![vec![2, -2], vec![-2, 2]]).unwrap(),
        Gcm::new(vec![vec![2, -3], vec![-3, 2]]).unwrap(),
    ]
}

fn rational() -> impl Strategy<Value = Q> {
    (-4i64..=6, 1i64..=3).prop_map(|(n, d)| q_ratio(n, d))
}

fn mask_to_set(mask: usize) -> Vec<usize> {
    (0..2).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Pairings that are non-negative integers on `j_set` and arbitrary
/// rationals elsewhere.
fn pairings_for(j_set: &[usize], ints: &[i64; 2], rats: &[Q; 2]) -> Vec<Q> {
    (0..2)
        .map(|i| {
            if j_set.contains(&i) {
                q(ints[i])
            } else {
                rats[i].clone()
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn slice_pieces_partition_the_parabolic_verma_weights(
        g_idx in 0usize..6,
        c0 in 0i64..=3,
        c1 in rational(),
        extend in any::<bool>(),
    ) {
        let g = &fixtures()[g_idx];
        let spec = ModuleSpec::new(g, vec![q(c0), c1], &[0]).unwrap();
        let j_prime: &[usize] = if extend { &[0, 1] } else { &[0] };
        let cutoff = 6;
        let pieces = wt_slice_decomposition(g, &spec, j_prime, cutoff).unwrap();
        let mut union: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut total = 0usize;
        for piece in &pieces {
            prop_assert!(!piece.offsets.is_empty(), "empty slice piece at {:?}", piece.mu);
            total += piece.offsets.len();
            union.extend(piece.offsets.iter().cloned());
        }
        prop_assert_eq!(total, union.len(), "slice pieces overlap");
        let pv = wt_parabolic_verma(g, &spec, cutoff).unwrap();
        prop_assert_eq!(union, pv.offsets);
    }

    #[test]
    fn integrable_reflections_preserve_weight_sets(
        g_idx in 0usize..6,
        mask in 1usize..=3,
        ints in [0i64..=3, 0i64..=3],
        rats in [rational(), rational()],
    ) {
        let g = &fixtures()[g_idx];
        let j_set = mask_to_set(mask);
        let cutoff = 7;
        let spec = ModuleSpec::new(g, pairings_for(&j_set, &ints, &rats), &j_set).unwrap();
        let wt = wt_parabolic_verma(g, &spec, cutoff).unwrap();
        for m in wt.iter_sorted() {
            for &j in &j_set {
                let p = ints[j] - (0..2).map(|k| g.entry(j, k) * m[k]).sum::<i64>();
                let mut image = m.clone();
                image[j] += p;
                prop_assert!(image[j] >= 0, "reflection left the offset cone at {:?}", m);
                if height(&image) <= cutoff {
                    prop_assert!(wt.contains(&image), "missing reflection of {:?}", m);
                }
            }
        }
    }

    #[test]
    fn cutoff_extension_preserves_lower_bands(
        g_idx in 0usize..6,
        c0 in rational(),
        c1 in rational(),
    ) {
        let g = &fixtures()[g_idx];
        let c = vec![c0, c1];
        let small = wt_simple(g, &c, 5).unwrap();
        let large = wt_simple(g, &c, 8).unwrap();
        let restricted: BTreeSet<Vec<i64>> =
            large.offsets.iter().filter(|m| height(m) <= 5).cloned().collect();
        prop_assert_eq!(restricted, small.offsets);
    }

    #[test]
    fn induced_and_alternating_characters_agree(
        g_idx in 0usize..6,
        mask in 0usize..=3,
        ints in [0i64..=2, 0i64..=2],
        rats in [rational(), rational()],
    ) {
        let g = &fixtures()[g_idx];
        let j_set = mask_to_set(mask);
        let spec = ModuleSpec::new(g, pairings_for(&j_set, &ints, &rats), &j_set).unwrap();
        let induced = ch_parabolic_verma_induction(g, &spec, 5).unwrap();
        let alternating = ch_parabolic_verma_alternating(g, &spec, 5).unwrap();
        prop_assert_eq!(induced, alternating);
    }

    #[test]
    fn weyl_kac_series_is_the_indicator_of_the_simple_weights(
        g_idx in 0usize..6,
        c0 in 0i64..=2,
        c1 in 1i64..=3,
        swap in any::<bool>(),
    ) {
        let g = &fixtures()[g_idx];
        // One strictly positive pairing keeps the isotropy group finite.
        let c = if swap { vec![q(c1), q(c0)] } else { vec![q(c0), q(c1)] };
        let cutoff = 6;
        let series = weyl_kac_weight_series(g, &c, cutoff).unwrap();
        for (m, coeff) in series.iter_sorted() {
            prop_assert_eq!(coeff, 1, "coefficient at {:?} is not an indicator", m);
        }
        let wt = wt_simple(g, &c, cutoff).unwrap();
        let support: BTreeSet<Vec<i64>> = series.support().into_iter().collect();
        prop_assert_eq!(support, wt.offsets);
    }

    #[test]
    fn hull_route_agrees_for_finite_type_levis(
        g_idx in 0usize..6,
        mask in 0usize..=3,
        ints in [0i64..=3, 0i64..=3],
        rats in [rational(), rational()],
    ) {
        let g = &fixtures()[g_idx];
        let j_set = mask_to_set(mask);
        prop_assume!(g.classify_subdiagram(&j_set).unwrap() == SubdiagramClass::Finite);
        let spec = ModuleSpec::new(g, pairings_for(&j_set, &ints, &rats), &j_set).unwrap();
        prop_assert_eq!(
            wt_via_hull(g, &spec, 4).unwrap(),
            wt_parabolic_verma(g, &spec, 4).unwrap()
        );
    }

    #[test]
    fn orbit_route_agrees_with_the_slice_route(
        g_idx in 0usize..6,
        c0 in 0i64..=2,
        c1 in 1i64..=3,
        swap in any::<bool>(),
    ) {
        let g = &fixtures()[g_idx];
        let c = if swap { vec![q(c1), q(c0)] } else { vec![q(c0), q(c1)] };
        prop_assert_eq!(
            wt_simple_via_orbit(g, &c, 6).unwrap(),
            wt_simple(g, &c, 6).unwrap()
        );
    }
}
