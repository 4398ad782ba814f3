//! Image encoders: PNG (via the `png` crate) and binary PPM (`P6`, maxval 255).

use std::path::Path;

use cmtest_core::Image;

use crate::error::{Error, Result};
use crate::fsutil;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Png,
    Ppm,
}

impl ImageFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("png") => Ok(ImageFormat::Png),
            Some("ppm") => Ok(ImageFormat::Ppm),
            _ => Err(Error::format(path.display().to_string(), "unknown image format; use .png or .ppm")),
        }
    }
}

fn check(img: &Image) -> Result<()> {
    if img.width() == 0 || img.height() == 0 {
        return Err(cmtest_core::Error::InvalidDimensions { width: img.width(), height: img.height() }.into());
    }
    Ok(())
}

pub fn encode_ppm(img: &Image) -> Result<Vec<u8>> {
    check(img)?;
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    Ok(out)
}

pub fn encode_png(img: &Image) -> Result<Vec<u8>> {
    check(img)?;
    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, img.width() as u32, img.height() as u32);
        encoder.set_color(png::ColorType::Rgb);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header().map_err(|e| Error::Png(e.to_string()))?;
        writer.write_image_data(img.pixels()).map_err(|e| Error::Png(e.to_string()))?;
        writer.finish().map_err(|e| Error::Png(e.to_string()))?;
    }
    Ok(out)
}

/// Decodes an 8-bit RGB PNG (as written by [`encode_png`]).
pub fn decode_png(bytes: &[u8]) -> Result<Image> {
    let err = |e: png::DecodingError| Error::format("png", e.to_string());
    let mut reader = png::Decoder::new(std::io::Cursor::new(bytes)).read_info().map_err(err)?;
    let size = reader.output_buffer_size().ok_or_else(|| Error::format("png", "image too large"))?;
    let mut buf = vec![0; size];
    let info = reader.next_frame(&mut buf).map_err(err)?;
    if info.color_type != png::ColorType::Rgb || info.bit_depth != png::BitDepth::Eight {
        return Err(Error::format("png", "only 8-bit RGB images are supported"));
    }
    buf.truncate(info.buffer_size());
    Ok(Image::new(info.width as usize, info.height as usize, buf)?)
}

pub fn write_image(img: &Image, path: &Path) -> Result<()> {
    let bytes = match ImageFormat::from_path(path)? {
        ImageFormat::Png => encode_png(img)?,
        ImageFormat::Ppm => encode_ppm(img)?,
    };
    fsutil::write_atomic(path, &bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ppm_bytes_are_exact() {
        let white = Image::filled(1, 1, [255, 255, 255]).unwrap();
        assert_eq!(encode_ppm(&white).unwrap(), b"P6\n1 1\n255\n\xff\xff\xff");
    }

    #[test]
    fn png_round_trip() {
        let pixels: Vec<u8> = (0..5 * 3 * 3).map(|k| (k * 17 % 256) as u8).collect();
        let img = Image::new(5, 3, pixels).unwrap();
        assert_eq!(decode_png(&encode_png(&img).unwrap()).unwrap(), img);
    }

    #[test]
    fn formats_from_extension() {
        assert_eq!(ImageFormat::from_path(Path::new("a.PNG")).unwrap(), ImageFormat::Png);
        assert_eq!(ImageFormat::from_path(Path::new("a.ppm")).unwrap(), ImageFormat::Ppm);
        assert!(ImageFormat::from_path(Path::new("a.jpg")).is_err());
    }
}
