//! Color spaces (sRGB, CIE XYZ, CIELAB, DIN99) and perceptual difference metrics.
//!
//! All conversions use the D65 white point and the 2° standard observer. The
//! white point is derived from the sRGB primaries matrix so that neutral sRGB
//! colors land exactly on the LAB lightness axis.

use core::f64::consts::PI;

use libm::{atan2, cbrt, cos, exp, fabs, log, pow, sin, sqrt};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColorSpace {
    Srgb,
    Xyz,
    Lab,
    Din99,
}

impl ColorSpace {
    pub const ALL: [ColorSpace; 4] = [ColorSpace::Srgb, ColorSpace::Xyz, ColorSpace::Lab, ColorSpace::Din99];

    pub fn name(self) -> &'static str {
        match self {
            ColorSpace::Srgb => "srgb",
            ColorSpace::Xyz => "xyz",
            ColorSpace::Lab => "lab",
            ColorSpace::Din99 => "din99",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name().eq_ignore_ascii_case(name))
    }
}

/// A color triplet tagged with the space its components live in.
///
/// sRGB components are in `[0, 1]`, LAB lightness in `[0, 100]`, XYZ is
/// scaled so that the white point has `Y = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Color {
    space: ColorSpace,
    c: [f64; 3],
}

/// Result of [`Color::convert`]. `out_of_gamut` is set when the target is sRGB
/// and at least one component falls outside `[0, 1]`; the components are
/// left unclamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Converted {
    pub color: Color,
    pub out_of_gamut: bool,
}

const GAMUT_EPS: f64 = 1e-9;

// linear sRGB -> XYZ (D65)
const RGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
];

const XYZ_TO_RGB: [[f64; 3]; 3] = invert3(RGB_TO_XYZ);

const WHITE: [f64; 3] = [
    RGB_TO_XYZ[0][0] + RGB_TO_XYZ[0][1] + RGB_TO_XYZ[0][2],
    RGB_TO_XYZ[1][0] + RGB_TO_XYZ[1][1] + RGB_TO_XYZ[1][2],
    RGB_TO_XYZ[2][0] + RGB_TO_XYZ[2][1] + RGB_TO_XYZ[2][2],
];

const LAB_EPSILON: f64 = 216.0 / 24389.0;
const LAB_KAPPA: f64 = 24389.0 / 27.0;

const fn invert3(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    let c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    let c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    let det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    let inv = 1.0 / det;
    [
        [c00 * inv, (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv, (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv],
        [c01 * inv, (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv, (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv],
        [c02 * inv, (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv, (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv],
    ]
}

fn mul3(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

// Companding is extended sign-symmetrically so out-of-gamut values survive a round trip.
fn srgb_to_linear(v: f64) -> f64 {
    let a = fabs(v);
    let l = if a <= 0.04045 { a / 12.92 } else { pow((a + 0.055) / 1.055, 2.4) };
    libm::copysign(l, v)
}

fn linear_to_srgb(v: f64) -> f64 {
    let a = fabs(v);
    let s = if a <= 0.0031308 { a * 12.92 } else { 1.055 * pow(a, 1.0 / 2.4) - 0.055 };
    libm::copysign(s, v)
}

fn lab_f(t: f64) -> f64 {
    if t > LAB_EPSILON {
        cbrt(t)
    } else {
        (LAB_KAPPA * t + 16.0) / 116.0
    }
}

fn lab_f_inv(f: f64) -> f64 {
    let f3 = f * f * f;
    if f3 > LAB_EPSILON {
        f3
    } else {
        (116.0 * f - 16.0) / LAB_KAPPA
    }
}

fn xyz_to_lab(xyz: [f64; 3]) -> [f64; 3] {
    let fx = lab_f(xyz[0] / WHITE[0]);
    let fy = lab_f(xyz[1] / WHITE[1]);
    let fz = lab_f(xyz[2] / WHITE[2]);
    [116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)]
}

fn lab_to_xyz(lab: [f64; 3]) -> [f64; 3] {
    let fy = (lab[0] + 16.0) / 116.0;
    let fx = fy + lab[1] / 500.0;
    let fz = fy - lab[2] / 200.0;
    let y = if lab[0] > LAB_KAPPA * LAB_EPSILON { fy * fy * fy } else { lab[0] / LAB_KAPPA };
    [lab_f_inv(fx) * WHITE[0], y * WHITE[1], lab_f_inv(fz) * WHITE[2]]
}

// DIN99 (1999), k_E = k_CH = 1.
const DIN99_HUE_ROT: f64 = 16.0 * PI / 180.0;

fn lab_to_din99(lab: [f64; 3]) -> [f64; 3] {
    let (s, c) = (sin(DIN99_HUE_ROT), cos(DIN99_HUE_ROT));
    let l99 = 105.51 * log(1.0 + 0.0158 * lab[0]);
    let e = lab[1] * c + lab[2] * s;
    let f = 0.7 * (lab[2] * c - lab[1] * s);
    let g = sqrt(e * e + f * f);
    if g == 0.0 {
        return [l99, 0.0, 0.0];
    }
    let c99 = log(1.0 + 0.045 * g) / 0.045;
    let h = atan2(f, e);
    [l99, c99 * cos(h), c99 * sin(h)]
}

fn din99_to_lab(d: [f64; 3]) -> [f64; 3] {
    let (s, c) = (sin(DIN99_HUE_ROT), cos(DIN99_HUE_ROT));
    let l = (exp(d[0] / 105.51) - 1.0) / 0.0158;
    let c99 = sqrt(d[1] * d[1] + d[2] * d[2]);
    if c99 == 0.0 {
        return [l, 0.0, 0.0];
    }
    let g = (exp(0.045 * c99) - 1.0) / 0.045;
    let h = atan2(d[2], d[1]);
    let e = g * cos(h);
    let f = g * sin(h) / 0.7;
    [l, e * c - f * s, e * s + f * c]
}

impl Color {
    /// sRGB color; components are clamped to `[0, 1]`.
    pub fn srgb(r: f64, g: f64, b: f64) -> Self {
        Color { space: ColorSpace::Srgb, c: [r.clamp(0.0, 1.0), g.clamp(0.0, 1.0), b.clamp(0.0, 1.0)] }
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Self {
        Color { space: ColorSpace::Xyz, c: [x, y, z] }
    }

    pub fn lab(l: f64, a: f64, b: f64) -> Self {
        Color { space: ColorSpace::Lab, c: [l, a, b] }
    }

    pub fn din99(l: f64, a: f64, b: f64) -> Self {
        Color { space: ColorSpace::Din99, c: [l, a, b] }
    }

    /// Builds a color in any space. sRGB input is clamped like [`Color::srgb`].
    pub fn new(space: ColorSpace, c: [f64; 3]) -> Self {
        match space {
            ColorSpace::Srgb => Color::srgb(c[0], c[1], c[2]),
            _ => Color { space, c },
        }
    }

    pub fn black() -> Self {
        Color::srgb(0.0, 0.0, 0.0)
    }

    pub fn white() -> Self {
        Color::srgb(1.0, 1.0, 1.0)
    }

    pub fn space(&self) -> ColorSpace {
        self.space
    }

    pub fn components(&self) -> [f64; 3] {
        self.c
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    pub fn convert(&self, target: ColorSpace) -> Converted {
        let color = self.to(target);
        let out_of_gamut = target == ColorSpace::Srgb
            && color.c.iter().any(|&v| !(-GAMUT_EPS..=1.0 + GAMUT_EPS).contains(&v));
        Converted { color, out_of_gamut }
    }

    /// Converts without the gamut flag. Results are never clamped.
    pub fn to(&self, target: ColorSpace) -> Color {
        if self.space == target {
            return *self;
        }
        let xyz = match self.space {
            ColorSpace::Xyz => self.c,
            ColorSpace::Srgb => mul3(&RGB_TO_XYZ, self.c.map(srgb_to_linear)),
            ColorSpace::Lab => {
                if target == ColorSpace::Din99 {
                    return Color { space: target, c: lab_to_din99(self.c) };
                }
                lab_to_xyz(self.c)
            }
            ColorSpace::Din99 => {
                let lab = din99_to_lab(self.c);
                if target == ColorSpace::Lab {
                    return Color { space: target, c: lab };
                }
                lab_to_xyz(lab)
            }
        };
        let c = match target {
            ColorSpace::Xyz => xyz,
            ColorSpace::Srgb => mul3(&XYZ_TO_RGB, xyz).map(linear_to_srgb),
            ColorSpace::Lab => xyz_to_lab(xyz),
            ColorSpace::Din99 => lab_to_din99(xyz_to_lab(xyz)),
        };
        Color { space: target, c }
    }

    /// 8-bit sRGB encoding with clamping.
    pub fn to_rgb8(&self) -> [u8; 3] {
        self.to(ColorSpace::Srgb).c.map(|v| {
            let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
            libm::round(v * 255.0) as u8
        })
    }

    /// Component-wise linear interpolation; both colors must share a space.
    pub(crate) fn lerp_components(a: [f64; 3], b: [f64; 3], t: f64) -> [f64; 3] {
        [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t]
    }

    pub(crate) fn raw(space: ColorSpace, c: [f64; 3]) -> Color {
        Color { space, c }
    }
}

/// Parameters of the CIE94 difference. Defaults are the graphic-arts set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct De94Params {
    pub kl: f64,
    pub k1: f64,
    pub k2: f64,
}

impl De94Params {
    pub const GRAPHIC_ARTS: De94Params = De94Params { kl: 1.0, k1: 0.045, k2: 0.015 };
    pub const TEXTILES: De94Params = De94Params { kl: 2.0, k1: 0.048, k2: 0.014 };
}

impl Default for De94Params {
    fn default() -> Self {
        Self::GRAPHIC_ARTS
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DifferenceMetric {
    LabEuclidean,
    Din99Euclidean,
    /// CIE94. The first operand of [`DifferenceMetric::delta_e`] is the reference color.
    De94(De94Params),
    Ciede2000,
}

impl DifferenceMetric {
    pub fn name(&self) -> &'static str {
        match self {
            DifferenceMetric::LabEuclidean => "lab",
            DifferenceMetric::Din99Euclidean => "din99",
            DifferenceMetric::De94(_) => "de94",
            DifferenceMetric::Ciede2000 => "ciede2000",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name.to_ascii_lowercase().as_str() {
            "lab" | "lab_euclidean" => DifferenceMetric::LabEuclidean,
            "din99" | "din99_euclidean" => DifferenceMetric::Din99Euclidean,
            "de94" => DifferenceMetric::De94(De94Params::default()),
            "ciede2000" | "de2000" => DifferenceMetric::Ciede2000,
            _ => return None,
        })
    }

    /// The space in which this metric reads its operands.
    pub fn operand_space(&self) -> ColorSpace {
        match self {
            DifferenceMetric::Din99Euclidean => ColorSpace::Din99,
            _ => ColorSpace::Lab,
        }
    }

    pub fn delta_e(&self, a: &Color, b: &Color) -> Result<f64> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::NonFiniteColor);
        }
        let space = self.operand_space();
        Ok(self.delta_e_components(a.to(space).c, b.to(space).c))
    }

    /// Difference of two component triplets already expressed in [`Self::operand_space`].
    pub fn delta_e_components(&self, a: [f64; 3], b: [f64; 3]) -> f64 {
        match self {
            DifferenceMetric::LabEuclidean | DifferenceMetric::Din99Euclidean => euclidean(a, b),
            DifferenceMetric::De94(p) => de94(a, b, p),
            DifferenceMetric::Ciede2000 => ciede2000(a, b),
        }
    }
}

/// Convenience wrapper around [`DifferenceMetric::delta_e`].
pub fn delta_e(metric: DifferenceMetric, a: &Color, b: &Color) -> Result<f64> {
    metric.delta_e(a, b)
}

fn euclidean(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
}

fn de94(reference: [f64; 3], sample: [f64; 3], p: &De94Params) -> f64 {
    let dl = reference[0] - sample[0];
    let c1 = sqrt(reference[1] * reference[1] + reference[2] * reference[2]);
    let c2 = sqrt(sample[1] * sample[1] + sample[2] * sample[2]);
    let dc = c1 - c2;
    let da = reference[1] - sample[1];
    let db = reference[2] - sample[2];
    let dh2 = (da * da + db * db - dc * dc).max(0.0);
    let sc = 1.0 + p.k1 * c1;
    let sh = 1.0 + p.k2 * c1;
    let l = dl / p.kl;
    let c = dc / sc;
    sqrt(l * l + c * c + dh2 / (sh * sh))
}

fn deg(rad: f64) -> f64 {
    rad * 180.0 / PI
}

fn rad(deg: f64) -> f64 {
    deg * PI / 180.0
}

fn ciede2000(lab1: [f64; 3], lab2: [f64; 3]) -> f64 {
    const POW25_7: f64 = 6_103_515_625.0;
    let [l1, a1, b1] = lab1;
    let [l2, a2, b2] = lab2;

    let c_bar = (sqrt(a1 * a1 + b1 * b1) + sqrt(a2 * a2 + b2 * b2)) / 2.0;
    let c_bar7 = pow(c_bar, 7.0);
    let g = 0.5 * (1.0 - sqrt(c_bar7 / (c_bar7 + POW25_7)));
    let a1p = (1.0 + g) * a1;
    let a2p = (1.0 + g) * a2;
    let c1p = sqrt(a1p * a1p + b1 * b1);
    let c2p = sqrt(a2p * a2p + b2 * b2);
    let hue = |b: f64, a: f64| {
        if a == 0.0 && b == 0.0 {
            0.0
        } else {
            let h = deg(atan2(b, a));
            if h < 0.0 { h + 360.0 } else { h }
        }
    };
    let h1p = hue(b1, a1p);
    let h2p = hue(b2, a2p);

    let dlp = l2 - l1;
    let dcp = c2p - c1p;
    let chroma_zero = c1p * c2p == 0.0;
    let dhp = if chroma_zero {
        0.0
    } else {
        let d = h2p - h1p;
        if d > 180.0 {
            d - 360.0
        } else if d < -180.0 {
            d + 360.0
        } else {
            d
        }
    };
    let dhp_big = 2.0 * sqrt(c1p * c2p) * sin(rad(dhp / 2.0));

    let l_bar = (l1 + l2) / 2.0;
    let cp_bar = (c1p + c2p) / 2.0;
    let hp_bar = if chroma_zero {
        h1p + h2p
    } else if fabs(h1p - h2p) <= 180.0 {
        (h1p + h2p) / 2.0
    } else if h1p + h2p < 360.0 {
        (h1p + h2p + 360.0) / 2.0
    } else {
        (h1p + h2p - 360.0) / 2.0
    };

    let t = 1.0 - 0.17 * cos(rad(hp_bar - 30.0)) + 0.24 * cos(rad(2.0 * hp_bar)) + 0.32 * cos(rad(3.0 * hp_bar + 6.0))
        - 0.20 * cos(rad(4.0 * hp_bar - 63.0));
    let d_theta = 30.0 * exp(-((hp_bar - 275.0) / 25.0) * ((hp_bar - 275.0) / 25.0));
    let cp_bar7 = pow(cp_bar, 7.0);
    let rc = 2.0 * sqrt(cp_bar7 / (cp_bar7 + POW25_7));
    let l50 = (l_bar - 50.0) * (l_bar - 50.0);
    let sl = 1.0 + 0.015 * l50 / sqrt(20.0 + l50);
    let sc = 1.0 + 0.045 * cp_bar;
    let sh = 1.0 + 0.015 * cp_bar * t;
    let rt = -sin(rad(2.0 * d_theta)) * rc;

    let l = dlp / sl;
    let c = dcp / sc;
    let h = dhp_big / sh;
    sqrt((l * l + c * c + h * h + rt * c * h).max(0.0))
}
