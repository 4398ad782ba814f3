//! Two-dimensional improved (2002) Perlin gradient noise.

use libm::floor;

use super::hash::{stream, uniform};

/// Seeded permutation table for Perlin noise.
#[derive(Clone)]
pub struct Perlin {
    perm: [u8; 512],
}

impl core::fmt::Debug for Perlin {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Perlin").finish_non_exhaustive()
    }
}

#[inline]
fn fade(t: f64) -> f64 {
    t * t * t * (t * (t * 6.0 - 15.0) + 10.0)
}

#[inline]
fn lerp(t: f64, a: f64, b: f64) -> f64 {
    a + t * (b - a)
}

#[inline]
fn grad(hash: u8, x: f64, y: f64) -> f64 {
    match hash & 7 {
        0 => x + y,
        1 => -x + y,
        2 => x - y,
        3 => -x - y,
        4 => x,
        5 => -x,
        6 => y,
        _ => -y,
    }
}

impl Perlin {
    pub fn new(seed: u64) -> Self {
        let mut p = [0u8; 256];
        for (i, v) in p.iter_mut().enumerate() {
            *v = i as u8;
        }
        for i in (1..256).rev() {
            let j = (uniform(seed, i as u64, stream::PERMUTATION) * (i + 1) as f64) as usize;
            p.swap(i, j.min(i));
        }
        let mut perm = [0u8; 512];
        for i in 0..512 {
            perm[i] = p[i & 255];
        }
        Perlin { perm }
    }

    /// Noise value in `[−1, 1]`; exactly zero at integer lattice points.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let fx = floor(x);
        let fy = floor(y);
        let xi = (fx as i64 & 255) as usize;
        let yi = (fy as i64 & 255) as usize;
        let xf = x - fx;
        let yf = y - fy;
        let u = fade(xf);
        let v = fade(yf);
        let p = &self.perm;
        let aa = p[p[xi] as usize + yi];
        let ab = p[p[xi] as usize + yi + 1];
        let ba = p[p[xi + 1] as usize + yi];
        let bb = p[p[xi + 1] as usize + yi + 1];
        let x1 = lerp(u, grad(aa, xf, yf), grad(ba, xf - 1.0, yf));
        let x2 = lerp(u, grad(ab, xf, yf - 1.0), grad(bb, xf - 1.0, yf - 1.0));
        lerp(v, x1, x2).clamp(-1.0, 1.0)
    }
}

/// One-shot Perlin evaluation. Builds the permutation table on every call;
/// hold a [`Perlin`] when sampling many points.
pub fn perlin2(x: f64, y: f64, seed: u64) -> f64 {
    Perlin::new(seed).eval(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_on_lattice() {
        for seed in [0, 1, 42, u64::MAX] {
            assert_eq!(perlin2(3.0, 7.0, seed), 0.0);
            let p = Perlin::new(seed);
            for i in -5..5 {
                for j in -5..5 {
                    assert_eq!(p.eval(i as f64, j as f64), 0.0);
                }
            }
        }
    }

    #[test]
    fn bounded_and_deterministic() {
        let p = Perlin::new(9);
        let q = Perlin::new(9);
        for i in 0..512 {
            for j in 0..512 {
                let (x, y) = (i as f64 * 0.0371, j as f64 * 0.0529);
                let v = p.eval(x, y);
                assert!((-1.0..=1.0).contains(&v));
                assert_eq!(v.to_bits(), q.eval(x, y).to_bits());
            }
        }
    }

    #[test]
    fn continuous_across_cells() {
        let p = Perlin::new(3);
        let h = 1e-7;
        for k in 0..50 {
            let y = 0.37 + k as f64 * 0.11;
            let left = p.eval(2.0 - h, y);
            let right = p.eval(2.0 + h, y);
            assert!((left - right).abs() < 1e-5);
        }
    }

    #[test]
    fn seeds_change_the_pattern() {
        assert_ne!(perlin2(0.5, 0.5, 1), perlin2(0.5, 0.5, 2));
    }
}
