//! Statistical contracts of the noise module.

use cmtest_core::field::{Domain, ScalarField};
use cmtest_core::noise::{apply_noise, perlin2, sample_distribution, Distribution, NoiseMode, NoiseOptions, NoiseSource};

fn ramp(width: usize, height: usize, lo: f64, hi: f64) -> ScalarField {
    let n = width * height;
    let values = (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect();
    ScalarField::new(width, height, values, Domain::new(0.0, 1.0, 0.0, 1.0)).unwrap()
}

#[test]
fn box_muller_moments() {
    let n = 1_000_000u64;
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for i in 0..n {
        let z = sample_distribution(Distribution::Normal, 2024, i);
        sum += z;
        sum_sq += z * z;
    }
    let mean = sum / n as f64;
    let var = sum_sq / n as f64 - mean * mean;
    assert!(mean.abs() < 0.01, "mean {mean}");
    assert!((var - 1.0).abs() < 0.02, "variance {var}");
}

/// Kolmogorov–Smirnov distance to the arcsine law, F(x) = (2/π)·asin(√x).
fn ks_arcsine(mut draws: Vec<f64>) -> f64 {
    draws.sort_by(f64::total_cmp);
    let n = draws.len() as f64;
    draws
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let cdf = 2.0 / std::f64::consts::PI * x.sqrt().asin();
            (cdf - k as f64 / n).abs().max(((k + 1) as f64 / n - cdf).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn beta_matches_arcsine_law() {
    for seed in [0, 7, 99] {
        let draws = (0..100_000).map(|i| sample_distribution(Distribution::Beta, seed, i)).collect();
        let d = ks_arcsine(draws);
        assert!(d < 0.01, "seed {seed}: KS {d}");
    }
}

#[test]
fn uniform_and_bounded_distributions_stay_in_unit_interval() {
    for dist in [Distribution::Uniform, Distribution::Beta, Distribution::BetaLeft, Distribution::BetaRight] {
        for i in 0..100_000 {
            let v = sample_distribution(dist, 3, i);
            assert!((0.0..=1.0).contains(&v), "{dist:?} {v}");
        }
    }
}

#[test]
fn proportion_is_realized() {
    let field = ramp(1024, 1024, 0.0, 1.0);
    for p in [0.1, 0.25, 0.5, 0.9] {
        let opts = NoiseOptions { mode: NoiseMode::RangeScaled, proportion: p, seed: 11, ..Default::default() };
        let out = apply_noise(&field, (0.0, 1.0), &opts).unwrap();
        let changed = out.values().iter().zip(field.values()).filter(|(a, b)| a != b).count();
        let realized = changed as f64 / field.len() as f64;
        assert!((realized - p).abs() <= 0.01, "p={p}: realized {realized}");
    }
}

#[test]
fn clipped_scaled_modes_never_leave_range() {
    let (m, big_m) = (-3.0, 5.0);
    let field = ramp(1000, 1000, m, big_m);
    for mode in [NoiseMode::MaxScaled, NoiseMode::MinScaled, NoiseMode::RangeScaled] {
        for (dist, source) in [
            (Distribution::Uniform, NoiseSource::Random),
            (Distribution::Normal, NoiseSource::Random),
            (Distribution::BetaRight, NoiseSource::Random),
            (Distribution::Uniform, NoiseSource::perlin()),
        ] {
            let opts = NoiseOptions {
                mode,
                amplitude: 1.0,
                clipping: true,
                distribution: dist,
                source,
                seed: 5,
                ..Default::default()
            };
            let out = apply_noise(&field, (m, big_m), &opts).unwrap();
            assert!(out.values().iter().all(|v| (m..=big_m).contains(v)), "{mode:?} {dist:?} {source:?}");
        }
    }
}

#[test]
fn perlin_lattice_zeros_are_exact() {
    for seed in [0, 1, 17, 12345, u64::MAX] {
        for x in -20..20 {
            for y in -20..20 {
                assert_eq!(perlin2(x as f64, y as f64, seed), 0.0);
            }
        }
    }
}

#[test]
fn replacement_with_full_proportion_fills_range() {
    let field = ramp(64, 64, 10.0, 20.0);
    let opts = NoiseOptions {
        mode: NoiseMode::Replacement,
        replacement_range: Some((0.0, 1.0)),
        proportion: 1.0,
        seed: 3,
        ..Default::default()
    };
    let out = apply_noise(&field, (10.0, 20.0), &opts).unwrap();
    assert!(out.values().iter().all(|v| (0.0..=1.0).contains(v)));
}
