//! Benchmark functions from the optimization literature and the Mandelbrot set.
//!
//! Formulas follow the usual references (Jamil & Yang 2013, "A literature
//! survey of benchmark functions for global optimization problems"; Molga &
//! Smutnicki 2005, "Test functions for optimization needs"; the Simon Fraser
//! University virtual library of simulation experiments). Default domains are
//! the ones those references evaluate or plot the functions on:
//!
//! | function         | formula                                                                 | domain                  |
//! |------------------|-------------------------------------------------------------------------|-------------------------|
//! | `bukin6`         | `100·√|y − 0.01x²| + 0.01·|x + 10|`                                      | `[−15, −5] × [−3, 3]`   |
//! | `langermann`     | `Σ cᵢ·exp(−dᵢ/π)·cos(π·dᵢ)`, `dᵢ = |(x, y) − Aᵢ|²`, m = 5                | `[0, 10]²`              |
//! | `cross_in_tray`  | `−0.0001·(|sin x · sin y · exp(|100 − √(x² + y²)/π|)| + 1)^0.1`          | `[−10, 10]²`            |
//! | `levy13`         | `sin²(3πx) + (x − 1)²(1 + sin²(3πy)) + (y − 1)²(1 + sin²(2πy))`         | `[−10, 10]²`            |
//! | `schwefel`       | `418.9829·2 − x·sin√|x| − y·sin√|y|`                                    | `[−500, 500]²`          |
//! | `six_hump_camel` | `(4 − 2.1x² + x⁴/3)x² + xy + (−4 + 4y²)y²`                              | `[−2, 2] × [−1, 1]`     |
//! | `mandelbrot`     | escape-time iteration count of `z ← z² + c`, `c = x + iy`, bailout 2    | `[−2, 1] × [−1.5, 1.5]` |

use core::f64::consts::PI;

use libm::{cos, exp, fabs, pow, sin, sqrt};

use crate::error::{Error, Result};
use crate::field::{Domain, Surface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CollectionFunction {
    Bukin6,
    Langermann,
    CrossInTray,
    Levy13,
    Schwefel,
    SixHumpCamel,
    Mandelbrot,
}

impl CollectionFunction {
    pub const ALL: [CollectionFunction; 7] = [
        CollectionFunction::Bukin6,
        CollectionFunction::Langermann,
        CollectionFunction::CrossInTray,
        CollectionFunction::Levy13,
        CollectionFunction::Schwefel,
        CollectionFunction::SixHumpCamel,
        CollectionFunction::Mandelbrot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CollectionFunction::Bukin6 => "bukin6",
            CollectionFunction::Langermann => "langermann",
            CollectionFunction::CrossInTray => "cross_in_tray",
            CollectionFunction::Levy13 => "levy13",
            CollectionFunction::Schwefel => "schwefel",
            CollectionFunction::SixHumpCamel => "six_hump_camel",
            CollectionFunction::Mandelbrot => "mandelbrot",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn default_domain(self) -> Domain {
        match self {
            CollectionFunction::Bukin6 => Domain::new(-15.0, -5.0, -3.0, 3.0),
            CollectionFunction::Langermann => Domain::new(0.0, 10.0, 0.0, 10.0),
            CollectionFunction::CrossInTray | CollectionFunction::Levy13 => Domain::new(-10.0, 10.0, -10.0, 10.0),
            CollectionFunction::Schwefel => Domain::new(-500.0, 500.0, -500.0, 500.0),
            CollectionFunction::SixHumpCamel => Domain::new(-2.0, 2.0, -1.0, 1.0),
            CollectionFunction::Mandelbrot => Domain::new(-2.0, 1.0, -1.5, 1.5),
        }
    }
}

pub fn bukin6(x: f64, y: f64) -> f64 {
    100.0 * sqrt(fabs(y - 0.01 * x * x)) + 0.01 * fabs(x + 10.0)
}

const LANGERMANN_C: [f64; 5] = [1.0, 2.0, 5.0, 2.0, 3.0];
const LANGERMANN_A: [[f64; 2]; 5] = [[3.0, 5.0], [5.0, 2.0], [2.0, 1.0], [1.0, 4.0], [7.0, 9.0]];

pub fn langermann(x: f64, y: f64) -> f64 {
    LANGERMANN_C
        .iter()
        .zip(LANGERMANN_A.iter())
        .map(|(c, a)| {
            let d = (x - a[0]) * (x - a[0]) + (y - a[1]) * (y - a[1]);
            c * exp(-d / PI) * cos(PI * d)
        })
        .sum()
}

pub fn cross_in_tray(x: f64, y: f64) -> f64 {
    let e = fabs(100.0 - sqrt(x * x + y * y) / PI);
    -0.0001 * pow(fabs(sin(x) * sin(y) * exp(e)) + 1.0, 0.1)
}

pub fn levy13(x: f64, y: f64) -> f64 {
    let s = |v: f64| {
        let t = sin(v);
        t * t
    };
    s(3.0 * PI * x) + (x - 1.0) * (x - 1.0) * (1.0 + s(3.0 * PI * y)) + (y - 1.0) * (y - 1.0) * (1.0 + s(2.0 * PI * y))
}

pub fn schwefel(x: f64, y: f64) -> f64 {
    418.9829 * 2.0 - x * sin(sqrt(fabs(x))) - y * sin(sqrt(fabs(y)))
}

pub fn six_hump_camel(x: f64, y: f64) -> f64 {
    let x2 = x * x;
    (4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x * y + (-4.0 + 4.0 * y * y) * y * y
}

/// Number of iterations before `|z| > 2`, or `max_iter` for points that stay bounded.
pub fn mandelbrot(x: f64, y: f64, max_iter: u32) -> f64 {
    let (mut zr, mut zi) = (0.0f64, 0.0f64);
    for n in 0..max_iter {
        if zr * zr + zi * zi > 4.0 {
            return n as f64;
        }
        let t = zr * zr - zi * zi + x;
        zi = 2.0 * zr * zi + y;
        zr = t;
    }
    max_iter as f64
}

/// A collection function bound to a domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Collection {
    pub function: CollectionFunction,
    pub domain: Domain,
    pub max_iter: u32,
}

impl Collection {
    pub const DEFAULT_MAX_ITER: u32 = 256;

    pub fn new(function: CollectionFunction) -> Self {
        Collection { function, domain: function.default_domain(), max_iter: Self::DEFAULT_MAX_ITER }
    }

    pub fn with_domain(mut self, domain: Domain) -> Result<Self> {
        domain.validate()?;
        self.domain = domain;
        Ok(self)
    }

    pub fn with_max_iter(mut self, max_iter: u32) -> Result<Self> {
        if max_iter == 0 {
            return Err(Error::param("max_iter", "must be positive"));
        }
        self.max_iter = max_iter;
        Ok(self)
    }
}

impl Surface for Collection {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        match self.function {
            CollectionFunction::Bukin6 => bukin6(x, y),
            CollectionFunction::Langermann => langermann(x, y),
            CollectionFunction::CrossInTray => cross_in_tray(x, y),
            CollectionFunction::Levy13 => levy13(x, y),
            CollectionFunction::Schwefel => schwefel(x, y),
            CollectionFunction::SixHumpCamel => six_hump_camel(x, y),
            CollectionFunction::Mandelbrot => mandelbrot(x, y, self.max_iter),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_minima() {
        assert_eq!(bukin6(-10.0, 1.0), 0.0);
        assert_eq!(six_hump_camel(0.0, 0.0), 0.0);
        assert!(fabs(levy13(1.0, 1.0)) < 1e-28);
        assert!(fabs(schwefel(420.9687, 420.9687)) < 1e-3);
        assert!(fabs(cross_in_tray(1.3491, 1.3491) + 2.06261) < 1e-5);
    }

    #[test]
    fn mandelbrot_interior_hits_cap() {
        assert_eq!(mandelbrot(0.0, 0.0, 100), 100.0);
        assert_eq!(mandelbrot(-1.0, 0.0, 50), 50.0);
        assert!(mandelbrot(1.0, 1.0, 100) < 5.0);
    }

    #[test]
    fn names_round_trip() {
        for f in CollectionFunction::ALL {
            assert_eq!(CollectionFunction::from_name(f.name()), Some(f));
        }
    }

    #[test]
    fn langermann_is_finite_on_domain() {
        let c = Collection::new(CollectionFunction::Langermann);
        for i in 0..=10 {
            for j in 0..=10 {
                assert!(c.eval(i as f64, j as f64).is_finite());
            }
        }
    }
}
