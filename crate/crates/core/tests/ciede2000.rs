//! CIEDE2000 against the published 34-pair reference dataset
//! (Sharma, Wu & Dalal, "The CIEDE2000 color-difference formula").

use cmtest_core::{Color, DifferenceMetric};

fn pairs() -> Vec<([f64; 3], [f64; 3], f64)> {
    include_str!("data/ciede2000_pairs.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let v: Vec<f64> = l.split_whitespace().map(|s| s.parse().unwrap()).collect();
            ([v[0], v[1], v[2]], [v[3], v[4], v[5]], v[6])
        })
        .collect()
}

#[test]
fn all_reference_pairs_within_1e4() {
    let pairs = pairs();
    assert_eq!(pairs.len(), 34);
    for (k, (a, b, expected)) in pairs.iter().enumerate() {
        let ca = Color::lab(a[0], a[1], a[2]);
        let cb = Color::lab(b[0], b[1], b[2]);
        let got = DifferenceMetric::Ciede2000.delta_e(&ca, &cb).unwrap();
        assert!((got - expected).abs() <= 1e-4, "pair {}: got {got}, expected {expected}", k + 1);
        let back = DifferenceMetric::Ciede2000.delta_e(&cb, &ca).unwrap();
        assert!((got - back).abs() < 1e-12, "pair {} not symmetric", k + 1);
    }
}
