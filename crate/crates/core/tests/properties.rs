//! Property-based invariants for colors, colormaps and evaluation.

use cmtest_core::colormap::InterpolationSpace;
use cmtest_core::evaluation::{aggregate, value_difference_field, color_difference_field, FieldKind};
use cmtest_core::{Aggregation, Color, ColorSpace, ColormapKey, ColormapSpec, DifferenceMetric, Domain, Normalization, ScalarField};
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

fn srgb() -> impl Strategy<Value = Color> {
    (unit(), unit(), unit()).prop_map(|(r, g, b)| Color::srgb(r, g, b))
}

fn lab() -> impl Strategy<Value = Color> {
    (0.0..100.0f64, -100.0..100.0f64, -100.0..100.0f64).prop_map(|(l, a, b)| Color::lab(l, a, b))
}

const SYMMETRIC: [DifferenceMetric; 3] =
    [DifferenceMetric::LabEuclidean, DifferenceMetric::Din99Euclidean, DifferenceMetric::Ciede2000];

fn all_metrics() -> [DifferenceMetric; 4] {
    [SYMMETRIC[0], SYMMETRIC[1], DifferenceMetric::De94(Default::default()), SYMMETRIC[2]]
}

proptest! {
    #[test]
    fn srgb_lab_round_trip(c in srgb()) {
        let back = c.to(ColorSpace::Lab).to(ColorSpace::Srgb).components();
        let orig = c.components();
        for k in 0..3 {
            prop_assert!((back[k] - orig[k]).abs() < 1e-6);
        }
    }

    #[test]
    fn din99_round_trip(c in lab()) {
        let back = c.to(ColorSpace::Din99).to(ColorSpace::Lab).components();
        let orig = c.components();
        for k in 0..3 {
            prop_assert!((back[k] - orig[k]).abs() < 1e-8);
        }
    }

    #[test]
    fn metrics_are_symmetric(a in lab(), b in lab()) {
        for m in SYMMETRIC {
            let ab = m.delta_e(&a, &b).unwrap();
            let ba = m.delta_e(&b, &a).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-9 * ab.max(1.0), "{:?}: {} vs {}", m, ab, ba);
        }
    }

    #[test]
    fn metrics_are_non_negative_with_zero_identity(a in lab(), b in lab()) {
        for m in all_metrics() {
            prop_assert!(m.delta_e(&a, &b).unwrap() >= 0.0);
            prop_assert_eq!(m.delta_e(&a, &a).unwrap(), 0.0);
        }
    }

    #[test]
    fn samples_are_collinear_within_a_segment(
        a in lab(), b in lab(), t1 in unit(), t2 in unit(),
        space in prop_oneof![Just(InterpolationSpace::Lab), Just(InterpolationSpace::Din99), Just(InterpolationSpace::Srgb)],
    ) {
        let spec = ColormapSpec::new(
            vec![ColormapKey::new(-2.0, a), ColormapKey::new(3.0, b)],
            space,
            Color::black(),
        ).unwrap();
        let cs = space.color_space();
        let pa = a.to(cs).components();
        let pb = b.to(cs).components();
        for t in [t1, t2] {
            let p = spec.sample_components(-2.0 + 5.0 * t);
            let expected: Vec<f64> = (0..3).map(|k| pa[k] + t * (pb[k] - pa[k])).collect();
            for k in 0..3 {
                prop_assert!((p[k] - expected[k]).abs() <= 1e-9 * (1.0 + expected[k].abs()));
            }
        }
    }

    #[test]
    fn key_colors_do_not_depend_on_interpolation_space(a in srgb(), b in srgb(), c in srgb()) {
        let keys = vec![ColormapKey::new(0.0, a), ColormapKey::twin(0.5, b, c), ColormapKey::new(1.0, a)];
        let lab_map = ColormapSpec::new(keys, InterpolationSpace::Lab, Color::black()).unwrap();
        for space in [InterpolationSpace::Din99, InterpolationSpace::Srgb] {
            let other = lab_map.with_interpolation_space(space);
            for v in [0.0, 0.5, 1.0] {
                let x = lab_map.sample(v).to(ColorSpace::Lab).components();
                let y = other.sample(v).to(ColorSpace::Lab).components();
                for k in 0..3 {
                    prop_assert!((x[k] - y[k]).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn uniform_grayscale_distances_are_proportional(lo in -50.0..50.0f64, span in 0.1..100.0f64, t1 in unit(), t2 in unit()) {
        let hi = lo + span;
        let map = ColormapSpec::grayscale(lo, hi).unwrap();
        let (v1, v2) = (lo + t1 * span, lo + t2 * span);
        let d = DifferenceMetric::LabEuclidean.delta_e(&map.sample(v1), &map.sample(v2)).unwrap();
        prop_assert!((d - (v1 - v2).abs() * 100.0 / span).abs() <= 1e-9);
    }

    #[test]
    fn aggregation_ordering(values in prop::collection::vec(-5.0..5.0f64, 12)) {
        let field = ScalarField::new(4, 3, values, Domain::new(0.0, 1.0, 0.0, 1.0)).unwrap();
        let f = value_difference_field(&field).unwrap();
        let max = aggregate(&f, Aggregation::Max);
        let avg = aggregate(&f, Aggregation::Average);
        let med = aggregate(&f, Aggregation::Median);
        for j in 0..3 {
            for i in 0..4 {
                let min = f.entries(i, j).map(|e| e.normalized).fold(f64::INFINITY, f64::min);
                prop_assert!(max.get(i, j) >= avg.get(i, j) - 1e-15);
                prop_assert!(avg.get(i, j) >= min - 1e-15);
                prop_assert!(med.get(i, j) >= min && med.get(i, j) <= max.get(i, j));
            }
        }
    }

    #[test]
    fn neighbor_differences_are_symmetric(values in prop::collection::vec(-5.0..5.0f64, 20)) {
        let field = ScalarField::new(5, 4, values, Domain::new(0.0, 1.0, 0.0, 1.0)).unwrap();
        let map = ColormapSpec::grayscale(-5.0, 5.0).unwrap();
        let f = color_difference_field(&field, &map, DifferenceMetric::De94(Default::default()), Normalization::BlackWhite).unwrap();
        prop_assert_eq!(f.kind(), FieldKind::Color);
        for j in 0..4 {
            for i in 0..5 {
                for e in f.entries(i, j) {
                    let (ni, nj) = e.neighbor;
                    let back = f.entries(ni, nj).find(|b| b.neighbor == (i, j)).unwrap();
                    prop_assert_eq!(back.raw, e.raw);
                    prop_assert!((0.0..=1.0).contains(&e.normalized));
                }
            }
        }
    }
}
