//! Scalar-field file formats.
//!
//! * **CSV** — first line `width,height,x0,x1,y0,y1` (the values; a literal
//!   line of those six names is also accepted before it), then one line per
//!   grid row `j = 0..height` (bottom row first), values comma-separated with
//!   a `.` decimal point.
//! * **CMTF** — little-endian binary: a 32-byte header followed by
//!   `width·height` `f32` values in the same row order.
//!
//!   | offset | type     | content            |
//!   |--------|----------|--------------------|
//!   | 0      | [u8; 4]  | magic `CMTF`       |
//!   | 4      | u16      | version (1)        |
//!   | 6      | u16      | reserved (0)       |
//!   | 8      | u32      | width              |
//!   | 12     | u32      | height             |
//!   | 16     | f32 × 4  | x0, x1, y0, y1     |
//!
//! * **PGM** — binary `P5`, 8 or 16 bit (big-endian), read only. Values are
//!   divided by maxval; the domain is `[0,w]×[0,h]`; the top image row is the
//!   top of the domain.

use std::fmt::Write as _;
use std::path::Path;

use cmtest_core::{Domain, ScalarField};

use crate::error::{Error, Result};
use crate::fsutil;

pub const CMTF_MAGIC: [u8; 4] = *b"CMTF";
pub const CMTF_VERSION: u16 = 1;
pub const CMTF_HEADER_LEN: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldFormat {
    Csv,
    Cmtf,
    Pgm,
}

impl FieldFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
        match ext.as_str() {
            "csv" => Ok(FieldFormat::Csv),
            "cmtf" | "bin" => Ok(FieldFormat::Cmtf),
            "pgm" => Ok(FieldFormat::Pgm),
            _ => Err(Error::format(
                path.display().to_string(),
                "unknown field format; use a .csv, .cmtf or .pgm extension",
            )),
        }
    }
}

pub fn load_field(path: &Path) -> Result<ScalarField> {
    load_field_as(path, FieldFormat::from_path(path)?)
}

pub fn load_field_as(path: &Path, format: FieldFormat) -> Result<ScalarField> {
    let bytes = fsutil::read(path)?;
    let ctx = path.display().to_string();
    match format {
        FieldFormat::Csv => {
            let text = std::str::from_utf8(&bytes).map_err(|_| Error::format(&ctx, "not UTF-8"))?;
            parse_csv(text, &ctx)
        }
        FieldFormat::Cmtf => decode_cmtf(&bytes, &ctx),
        FieldFormat::Pgm => decode_pgm(&bytes, &ctx),
    }
}

pub fn write_field(field: &ScalarField, path: &Path) -> Result<()> {
    let bytes = match FieldFormat::from_path(path)? {
        FieldFormat::Csv => to_csv(field).into_bytes(),
        FieldFormat::Cmtf => encode_cmtf(field),
        FieldFormat::Pgm => {
            return Err(Error::format(path.display().to_string(), "PGM is an input-only format"));
        }
    };
    fsutil::write_atomic(path, &bytes)
}

pub fn to_csv(field: &ScalarField) -> String {
    let d = field.domain();
    let mut out = String::with_capacity(field.len() * 12);
    let _ = writeln!(out, "{},{},{},{},{},{}", field.width(), field.height(), d.x.0, d.x.1, d.y.0, d.y.1);
    for row in field.values().chunks(field.width()) {
        for (k, v) in row.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str, ctx: &str) -> Result<ScalarField> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let mut header = lines.next().ok_or_else(|| Error::format(ctx, "empty file"))?;
    if header.1.trim().replace(' ', "") == "width,height,x0,x1,y0,y1" {
        header = lines.next().ok_or_else(|| Error::format(ctx, "missing header values"))?;
    }
    let cells: Vec<&str> = header.1.split(',').map(str::trim).collect();
    if cells.len() != 6 {
        return Err(Error::format(ctx, format!("header must be width,height,x0,x1,y0,y1; got `{}`", header.1)));
    }
    let dim = |s: &str| s.parse::<usize>().map_err(|_| Error::format(ctx, format!("bad dimension `{s}`")));
    let num = |s: &str| s.parse::<f64>().map_err(|_| Error::format(ctx, format!("bad domain value `{s}`")));
    let (width, height) = (dim(cells[0])?, dim(cells[1])?);
    let domain = Domain::new(num(cells[2])?, num(cells[3])?, num(cells[4])?, num(cells[5])?);
    cmtest_core::field::check_dimensions(width, height)?;

    let mut values = Vec::with_capacity(width * height);
    let mut rows = 0;
    for (lineno, line) in lines {
        let before = values.len();
        for cell in line.split(',') {
            let v = cell.trim().parse::<f64>().map_err(|_| {
                Error::format(ctx, format!("line {}: `{}` is not a number", lineno + 1, cell.trim()))
            })?;
            values.push(v);
        }
        if values.len() - before != width {
            return Err(Error::format(
                ctx,
                format!("line {}: expected {width} values, found {}", lineno + 1, values.len() - before),
            ));
        }
        rows += 1;
    }
    if rows != height {
        return Err(Error::format(ctx, format!("expected {height} rows, found {rows}")));
    }
    if let Some(k) = values.iter().position(|v| !v.is_finite()) {
        return Err(cmtest_core::Error::NonFiniteValue(k).into());
    }
    Ok(ScalarField::new(width, height, values, domain)?)
}

pub fn encode_cmtf(field: &ScalarField) -> Vec<u8> {
    let d = field.domain();
    let mut out = Vec::with_capacity(CMTF_HEADER_LEN + 4 * field.len());
    out.extend_from_slice(&CMTF_MAGIC);
    out.extend_from_slice(&CMTF_VERSION.to_le_bytes());
    out.extend_from_slice(&0u16.to_le_bytes());
    out.extend_from_slice(&(field.width() as u32).to_le_bytes());
    out.extend_from_slice(&(field.height() as u32).to_le_bytes());
    for v in [d.x.0, d.x.1, d.y.0, d.y.1] {
        out.extend_from_slice(&(v as f32).to_le_bytes());
    }
    for &v in field.values() {
        out.extend_from_slice(&(v as f32).to_le_bytes());
    }
    out
}

pub fn decode_cmtf(bytes: &[u8], ctx: &str) -> Result<ScalarField> {
    if bytes.len() < CMTF_HEADER_LEN {
        return Err(Error::format(
            ctx,
            format!("truncated header: expected {CMTF_HEADER_LEN} bytes, got {}", bytes.len()),
        ));
    }
    if bytes[0..4] != CMTF_MAGIC {
        return Err(Error::format(ctx, "missing CMTF magic"));
    }
    let u16_at = |k: usize| u16::from_le_bytes([bytes[k], bytes[k + 1]]);
    let u32_at = |k: usize| u32::from_le_bytes(bytes[k..k + 4].try_into().unwrap());
    let f32_at = |k: usize| f32::from_le_bytes(bytes[k..k + 4].try_into().unwrap());
    let version = u16_at(4);
    if version != CMTF_VERSION {
        return Err(Error::format(ctx, format!("unsupported CMTF version {version}")));
    }
    let (width, height) = (u32_at(8) as usize, u32_at(12) as usize);
    let n = cmtest_core::field::check_dimensions(width, height)?;
    let expected = n
        .checked_mul(4)
        .and_then(|b| b.checked_add(CMTF_HEADER_LEN))
        .ok_or_else(|| Error::format(ctx, "dimensions overflow"))?;
    if bytes.len() != expected {
        return Err(Error::format(
            ctx,
            format!("expected {expected} bytes for {width}x{height}, got {}", bytes.len()),
        ));
    }
    let domain = Domain::new(f32_at(16) as f64, f32_at(20) as f64, f32_at(24) as f64, f32_at(28) as f64);
    let values: Vec<f64> = bytes[CMTF_HEADER_LEN..]
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()) as f64)
        .collect();
    if let Some(k) = values.iter().position(|v| !v.is_finite()) {
        return Err(cmtest_core::Error::NonFiniteValue(k).into());
    }
    Ok(ScalarField::new(width, height, values, domain)?)
}

/// Reads the next whitespace-delimited header token, skipping `#` comments.
fn pgm_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Option<&'a [u8]> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    (start < *pos).then(|| &bytes[start..*pos])
}

pub fn decode_pgm(bytes: &[u8], ctx: &str) -> Result<ScalarField> {
    let mut pos = 0;
    if pgm_token(bytes, &mut pos) != Some(b"P5") {
        return Err(Error::format(ctx, "not a binary PGM (P5)"));
    }
    let mut number = |what: &str| -> Result<usize> {
        pgm_token(bytes, &mut pos)
            .and_then(|t| std::str::from_utf8(t).ok())
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::format(ctx, format!("bad PGM {what}")))
    };
    let width = number("width")?;
    let height = number("height")?;
    let maxval = number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::format(ctx, format!("PGM maxval {maxval} outside 1..=65535")));
    }
    let n = cmtest_core::field::check_dimensions(width, height)?;
    // Exactly one whitespace byte separates the header from the raster.
    pos += 1;
    let bytes_per = if maxval < 256 { 1 } else { 2 };
    let data = bytes.get(pos..).unwrap_or(&[]);
    if data.len() < n * bytes_per {
        return Err(Error::format(ctx, format!("expected {} raster bytes, got {}", n * bytes_per, data.len())));
    }
    let sample = |k: usize| -> f64 {
        let raw = if bytes_per == 1 { data[k] as u32 } else { u16::from_be_bytes([data[2 * k], data[2 * k + 1]]) as u32 };
        raw as f64 / maxval as f64
    };
    let mut values = vec![0.0; n];
    for row in 0..height {
        let j = height - 1 - row;
        for i in 0..width {
            values[j * width + i] = sample(row * width + i);
        }
    }
    Ok(ScalarField::new(width, height, values, Domain::new(0.0, width as f64, 0.0, height as f64))?)
}
