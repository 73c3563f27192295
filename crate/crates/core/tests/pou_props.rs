use eqbaire::eq_core::IndexKey;
use eqbaire::pou::{
    disjointify, grid_scheme, pointwise_finiteness, sorgenfrey_scheme, verify_anchoring, CoverSet, DenseSet, Interval,
    Support,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sorgenfrey_partition_is_exact(x in -3.0..3.0f64, n in 1usize..200) {
        let s = sorgenfrey_scheme(-4.0, 4.0, DenseSet::default(), 256).unwrap();
        let fam = s.partition(n).unwrap();
        prop_assert_eq!(fam.sum_at(&[x]), 1.0);
        prop_assert_eq!(fam.support_keys(&[x]).len(), 1);
        let (key, w) = fam.active(&[x]).pop().unwrap();
        prop_assert_eq!(w, 1.0);
        let a = s.anchor(n, &key).unwrap()[0];
        // The anchor lies in the tile right of the one containing x.
        prop_assert!(x < a && a - x <= 2.0 / n as f64);
    }

    #[test]
    fn grid_partition_sums_to_one(x in -1.0..1.0f64, y in -1.0..1.0f64, n in 1usize..64) {
        let s = grid_scheme(2, vec![-1.0, -1.0], vec![1.0, 1.0], DenseSet::default(), 64).unwrap();
        let fam = s.partition(n).unwrap();
        prop_assert!((fam.sum_at(&[x, y]) - 1.0).abs() <= 1e-12);
        prop_assert!(fam.active(&[x, y]).len() <= 4);
        prop_assert!(pointwise_finiteness([&fam], &[x, y]) <= 9);
        for (key, w) in fam.active(&[x, y]) {
            prop_assert!(w > 0.0);
            prop_assert!(fam.support(&key).unwrap().contains(&[x, y]));
            let a = s.anchor(n, &key).unwrap();
            for (c, k) in a.iter().zip(&key.0) {
                prop_assert!((c - *k as f64 / n as f64).abs() <= 0.5 / n as f64);
            }
        }
    }

    #[test]
    fn sorgenfrey_anchoring_bound(x in -3.0..3.0f64, radius in 0.01..1.0f64) {
        let s = sorgenfrey_scheme(-4.0, 4.0, DenseSet::default(), 256).unwrap();
        let n0 = verify_anchoring(&s, &[x], radius).unwrap();
        prop_assert!(n0 <= (2.0 / radius).ceil() as usize + 1);
    }

    #[test]
    fn disjointified_cells_refine_the_cover(
        cuts in prop::collection::vec((0.0..10.0f64, 0.1..4.0f64), 1..8),
        probe in prop::collection::vec(0.0..10.0f64, 50),
    ) {
        let mut cover: Vec<CoverSet> = cuts
            .iter()
            .enumerate()
            .map(|(i, (a, w))| CoverSet::from_support(i as i64, Support::unscaled(vec![Interval::half_open(*a, a + w)])))
            .collect();
        cover.push(CoverSet::from_support(99i64, Support::unscaled(vec![Interval::closed(0.0, 10.0)])));
        let inputs = cover.clone();
        let samples: Vec<Vec<f64>> = probe.iter().map(|v| vec![*v]).collect();
        let cells = disjointify(cover, &samples).unwrap();
        cells.validate(&samples).unwrap();
        for x in &samples {
            let key = cells.cell_of(x).unwrap();
            let pos = cells.keys().position(|k| k == key).unwrap();
            prop_assert!(cells.cell_contains(pos, x));
            prop_assert!(inputs[pos].contains(x));
            prop_assert!(inputs[..pos].iter().all(|g| !g.contains(x)));
        }
    }
}

#[test]
fn interior_grid_nodes_meet_three_closed_supports() {
    let s = grid_scheme(1, vec![-1.0], vec![1.0], DenseSet::default(), 8).unwrap();
    let fam = s.partition(4).unwrap();
    assert_eq!(fam.support_keys(&[0.5]), vec![IndexKey::single(1), IndexKey::single(2), IndexKey::single(3)]);
    assert_eq!(fam.active(&[0.5]), vec![(IndexKey::single(2), 1.0)]);
}
