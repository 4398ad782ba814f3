use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{fabs, floor, pow, sin};

use super::{check_exponent, check_finite, Shape, ThresholdType};
use crate::error::{Error, Result};
use crate::field::{Domain, Surface};

/// Piecewise-constant steps over `[0, 2n) × [0, n)`.
///
/// Even unit columns hold `a[⌊x⌋/2]`; odd columns run through all of `a`
/// upwards in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    values: Vec<f64>,
}

impl Step {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::param("A", "needs at least 2 values"));
        }
        for v in &values {
            check_finite("A", *v)?;
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param("A", "values must be strictly increasing"));
        }
        Ok(Step { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl Surface for Step {
    fn domain(&self) -> Domain {
        let n = self.values.len() as f64;
        Domain::new(0.0, 2.0 * n, 0.0, n)
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let last = self.values.len() - 1;
        let col = floor(x).max(0.0) as usize;
        if col.is_multiple_of(2) {
            self.values[(col / 2).min(last)]
        } else {
            self.values[(floor(y).max(0.0) as usize).min(last)]
        }
    }
}

/// `g(y)` from `r` at `y = 0` to `R` at `y = 1`.
#[inline]
fn edge_profile(r: f64, big_r: f64, shape: Shape, b: u32, y: f64) -> f64 {
    (big_r - r) * shape.profile(y, b) + r
}

/// Gradient variation over `[0, 1]²`: every row rises from `r` at `x = 0`
/// to `g(y)` at `x = 1`, where `g` itself runs from `r` to `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gradient {
    pub r: f64,
    pub big_r: f64,
    pub b: u32,
    pub tx: Shape,
    pub ty: Shape,
}

impl Gradient {
    pub fn new(r: f64, big_r: f64, b: u32, tx: Shape, ty: Shape) -> Result<Self> {
        check_finite("r", r)?;
        check_finite("R", big_r)?;
        check_exponent("b", b)?;
        if r == big_r {
            return Err(Error::param("R", "r and R must differ"));
        }
        Ok(Gradient { r, big_r, b, tx, ty })
    }
}

impl Surface for Gradient {
    fn domain(&self) -> Domain {
        Domain::new(0.0, 1.0, 0.0, 1.0)
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let g = edge_profile(self.r, self.big_r, self.ty, self.b, y);
        (g - self.r) * self.tx.profile(x, self.b) + self.r
    }
}

/// `o·x² + p·y² + m`: a minimum, maximum or saddle at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinMaxSaddle {
    pub o: f64,
    pub p: f64,
    pub m: f64,
    pub domain: Domain,
}

impl MinMaxSaddle {
    pub const DEFAULT_DOMAIN: Domain = Domain::new(-1.0, 1.0, -1.0, 1.0);

    pub fn new(o: f64, p: f64, m: f64) -> Result<Self> {
        Self::with_domain(o, p, m, Self::DEFAULT_DOMAIN)
    }

    pub fn with_domain(o: f64, p: f64, m: f64, domain: Domain) -> Result<Self> {
        check_finite("o", o)?;
        check_finite("p", p)?;
        check_finite("m", m)?;
        if o == 0.0 {
            return Err(Error::param("o", "must be non-zero (degenerate critical point)"));
        }
        if p == 0.0 {
            return Err(Error::param("p", "must be non-zero (degenerate critical point)"));
        }
        domain.validate()?;
        Ok(MinMaxSaddle { o, p, m, domain })
    }
}

impl Surface for MinMaxSaddle {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.o * x * x + self.p * y * y + self.m
    }
}

/// Ridge (`R > r`) or valley (`R < r`) line along `x = 0` over `[−1, 1] × [0, 1]`.
///
/// Along `x` the value goes from `g(y)` at the line to `r` at `|x| = 1`;
/// `T_x = concave` uses `|x|^b`, `T_x = convex` uses `1 − (1 − |x|)^b`.
/// `b_y` is the exponent of `g(y)` and defaults to `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgeValley {
    pub r: f64,
    pub big_r: f64,
    pub b: u32,
    pub b_y: u32,
    pub tx: Shape,
    pub ty: Shape,
}

impl RidgeValley {
    pub fn new(r: f64, big_r: f64, b: u32, tx: Shape, ty: Shape) -> Result<Self> {
        Self::with_y_exponent(r, big_r, b, b, tx, ty)
    }

    pub fn with_y_exponent(r: f64, big_r: f64, b: u32, b_y: u32, tx: Shape, ty: Shape) -> Result<Self> {
        check_finite("r", r)?;
        check_finite("R", big_r)?;
        check_exponent("b", b)?;
        check_exponent("b_y", b_y)?;
        if r == big_r {
            return Err(Error::param("R", "r and R must differ"));
        }
        Ok(RidgeValley { r, big_r, b, b_y, tx, ty })
    }
}

impl Surface for RidgeValley {
    fn domain(&self) -> Domain {
        Domain::new(-1.0, 1.0, 0.0, 1.0)
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let g = edge_profile(self.r, self.big_r, self.ty, self.b_y, y);
        let ax = fabs(x);
        let s = match self.tx {
            Shape::Linear => ax,
            _ if self.b == 1 => ax,
            Shape::Concave => pow(ax, self.b as f64),
            Shape::Convex => 1.0 - pow(1.0 - ax, self.b as f64),
        };
        (self.r - g) * s + g
    }
}

/// Fewer pixels than this per period of the highest frequency triggers an
/// aliasing warning.
pub const ALIASING_MIN_PIXELS_PER_PERIOD: f64 = 8.0;

/// Sine waves of increasing frequency along `x` with amplitude decaying to
/// zero at `y = 1`.
///
/// Segment `j = 1..=D+1` spans `[x_{j−1}, x_j]` with `x_j = Σ_{k≤j} 1/k` and
/// holds exactly one period of `W(1 − y)·sin(2πj(x − x_j)) + u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frequency {
    pub d: u32,
    pub w: f64,
    pub u: f64,
    bounds: Vec<f64>,
}

impl Frequency {
    pub fn new(d: u32, w: f64, u: f64) -> Result<Self> {
        check_finite("W", w)?;
        check_finite("u", u)?;
        if w <= 0.0 {
            return Err(Error::param("W", "amplitude must be positive"));
        }
        let mut bounds = Vec::with_capacity(d as usize + 2);
        bounds.push(0.0);
        let mut acc = 0.0;
        for k in 1..=d + 1 {
            acc += 1.0 / k as f64;
            bounds.push(acc);
        }
        Ok(Frequency { d, w, u, bounds })
    }

    /// Segment boundaries `x_0 .. x_{D+1}`.
    pub fn boundaries(&self) -> &[f64] {
        &self.bounds
    }

    /// Pixels per period of the highest-frequency segment at `width` columns.
    pub fn pixels_per_period(&self, width: usize) -> f64 {
        let span = self.bounds[self.bounds.len() - 1];
        let period = 1.0 / (self.d as f64 + 1.0);
        width as f64 * period / span
    }

    pub fn aliasing_risk(&self, width: usize) -> bool {
        self.pixels_per_period(width) < ALIASING_MIN_PIXELS_PER_PERIOD
    }
}

impl Surface for Frequency {
    fn domain(&self) -> Domain {
        Domain::new(0.0, self.bounds[self.bounds.len() - 1], 0.0, 1.0)
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let last = self.bounds.len() - 1;
        // smallest j >= 1 with x <= x_j
        let j = self.bounds[1..].partition_point(|&b| b < x) + 1;
        let j = j.min(last);
        self.w * (1.0 - y) * sin(2.0 * PI * j as f64 * (x - self.bounds[j])) + self.u
    }
}

/// Threshold variation over `[−1, 1]²` with the `t` isoline at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub m: f64,
    pub big_m: f64,
    pub t: f64,
    pub kind: ThresholdType,
    pub b: u32,
}

impl Threshold {
    pub fn new(m: f64, big_m: f64, t: f64, kind: ThresholdType, b: u32) -> Result<Self> {
        check_finite("m", m)?;
        check_finite("M", big_m)?;
        check_finite("t", t)?;
        check_exponent("b", b)?;
        if !(m < t && t < big_m) {
            return Err(Error::param("t", "requires m < t < M"));
        }
        Ok(Threshold { m, big_m, t, kind, b })
    }

    /// Right-edge value `f_M(y)`.
    pub fn upper_edge(&self, y: f64) -> f64 {
        (self.big_m + self.t) / 2.0 - (self.big_m - self.t) / 2.0 * y
    }

    /// Left-edge value `f_m(y)`.
    pub fn lower_edge(&self, y: f64) -> f64 {
        (self.t + self.m) / 2.0 + (self.t - self.m) / 2.0 * y
    }
}

impl Surface for Threshold {
    fn domain(&self) -> Domain {
        Domain::new(-1.0, 1.0, -1.0, 1.0)
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let edge = if x <= 0.0 { self.lower_edge(y) } else { self.upper_edge(y) };
        let ax = fabs(x);
        let s = match self.kind {
            ThresholdType::Linear => ax,
            _ if self.b == 1 => ax,
            ThresholdType::Flat => pow(ax, self.b as f64),
            ThresholdType::Steep => 1.0 - pow(1.0 - ax, self.b as f64),
        };
        (edge - self.t) * s + self.t
    }
}

/// Linear ramp `m + (M − m)·y` with `n` sine-shaped grooves on the odd unit
/// stripes of `[0, 2n + 1] × [0, 1]`. Groove depth grows linearly from `g_m`
/// (first) to `g_M` (last); a single groove has depth `g_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LittleBit {
    pub m: f64,
    pub big_m: f64,
    pub g_m: f64,
    pub g_big_m: f64,
    pub grooves: u32,
}

impl LittleBit {
    pub fn new(m: f64, big_m: f64, g_m: f64, g_big_m: f64, grooves: u32) -> Result<Self> {
        for (name, v) in [("m", m), ("M", big_m), ("g_m", g_m), ("g_M", g_big_m)] {
            check_finite(name, v)?;
        }
        if m >= big_m {
            return Err(Error::param("M", "requires m < M"));
        }
        if !(0.0 < g_m && g_m <= g_big_m) {
            return Err(Error::param("g_m", "requires 0 < g_m <= g_M"));
        }
        if grooves < 1 {
            return Err(Error::param("groove_count", "needs at least one groove"));
        }
        Ok(LittleBit { m, big_m, g_m, g_big_m, grooves })
    }

    /// Depth of groove `k` (0-based).
    pub fn groove_depth(&self, k: u32) -> f64 {
        if self.grooves == 1 {
            return self.g_m;
        }
        self.g_m + k as f64 / (self.grooves - 1) as f64 * (self.g_big_m - self.g_m)
    }

    /// Groove index of unit stripe `⌊x⌋`, if it is a groove stripe.
    pub fn groove_of_stripe(&self, stripe: i64) -> Option<u32> {
        if stripe < 1 || stripe % 2 == 0 {
            return None;
        }
        let k = (stripe - 1) / 2;
        (k < self.grooves as i64).then_some(k as u32)
    }
}

impl Surface for LittleBit {
    fn domain(&self) -> Domain {
        Domain::new(0.0, 2.0 * self.grooves as f64 + 1.0, 0.0, 1.0)
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let background = self.m + (self.big_m - self.m) * y;
        let fx = floor(x);
        match self.groove_of_stripe(fx as i64) {
            Some(k) => background - self.groove_depth(k) * sin(PI * (x - fx)),
            None => background,
        }
    }
}
