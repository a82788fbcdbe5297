//! RGB and quaternion image containers, plus 8-bit file I/O.
//!
//! Intensities stay `f64` through every processing step; quantization to
//! 8 bits happens only in [`save_image`].

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use image::{DynamicImage, ImageReader};
use log::warn;

use crate::error::{Error, Result};
use crate::grid::{Grid, Plane};
use crate::quaternion::Quaternion;

/// Nominal channel range of 8-bit sources.
pub const DEFAULT_VALUE_SCALE: f64 = 255.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    pub r: Plane,
    pub g: Plane,
    pub b: Plane,
    pub value_scale: f64,
}

impl RgbImage {
    pub fn new(r: Plane, g: Plane, b: Plane, value_scale: f64) -> Result<Self> {
        r.same_dims(&g)?;
        r.same_dims(&b)?;
        Ok(RgbImage {
            r,
            g,
            b,
            value_scale,
        })
    }

    /// Build an 8-bit-scaled image from a per-pixel `[r, g, b]` function.
    pub fn from_fn(
        height: usize,
        width: usize,
        mut f: impl FnMut(usize, usize) -> [f64; 3],
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(height * width);
        for n in 0..height {
            for m in 0..width {
                pixels.push(f(n, m));
            }
        }
        let r = Grid::from_vec(height, width, pixels.iter().map(|p| p[0]).collect())?;
        let g = Grid::from_vec(height, width, pixels.iter().map(|p| p[1]).collect())?;
        let b = Grid::from_vec(height, width, pixels.iter().map(|p| p[2]).collect())?;
        RgbImage::new(r, g, b, DEFAULT_VALUE_SCALE)
    }

    pub fn height(&self) -> usize {
        self.r.height()
    }

    pub fn width(&self) -> usize {
        self.r.width()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.r.dims()
    }

    pub fn channels(&self) -> [&Plane; 3] {
        [&self.r, &self.g, &self.b]
    }

    pub fn into_channels(self) -> [Plane; 3] {
        [self.r, self.g, self.b]
    }

    pub fn from_channels(channels: [Plane; 3], value_scale: f64) -> Result<Self> {
        let [r, g, b] = channels;
        RgbImage::new(r, g, b, value_scale)
    }

    pub fn pixel(&self, n: usize, m: usize) -> [f64; 3] {
        [self.r[(n, m)], self.g[(n, m)], self.b[(n, m)]]
    }

    /// Clamp every channel to `[0, value_scale]`.
    pub fn clipped(&self) -> RgbImage {
        let s = self.value_scale;
        RgbImage {
            r: self.r.clipped(0.0, s),
            g: self.g.clipped(0.0, s),
            b: self.b.clipped(0.0, s),
            value_scale: s,
        }
    }

    /// Largest per-sample absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &RgbImage) -> f64 {
        self.channels()
            .iter()
            .zip(other.channels())
            .flat_map(|(x, y)| x.iter().zip(y.iter()).map(|(p, q)| (p - q).abs()))
            .fold(0.0, f64::max)
    }
}

/// How the scalar part of each pixel quaternion is populated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScalarPolicy {
    /// Pure quaternion `iR + jG + kB`.
    #[default]
    Zero,
    /// Scalar part set to the channel mean `(R + G + B) / 3`.
    GrayMean,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionImage {
    pub pixels: Grid<Quaternion>,
    pub value_scale: f64,
}

impl QuaternionImage {
    pub fn new(pixels: Grid<Quaternion>, value_scale: f64) -> Self {
        QuaternionImage {
            pixels,
            value_scale,
        }
    }

    pub fn height(&self) -> usize {
        self.pixels.height()
    }

    pub fn width(&self) -> usize {
        self.pixels.width()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.pixels.dims()
    }

    pub fn scalar_plane(&self) -> Plane {
        self.pixels.map(|q| q.a)
    }

    pub fn is_pure(&self) -> bool {
        self.pixels.iter().all(|q| q.is_pure())
    }
}

pub fn rgb_to_quaternion(img: &RgbImage, policy: ScalarPolicy) -> QuaternionImage {
    let (h, w) = img.dims();
    let data = img
        .r
        .iter()
        .zip(img.g.iter())
        .zip(img.b.iter())
        .map(|((&r, &g), &b)| {
            let a = match policy {
                ScalarPolicy::Zero => 0.0,
                ScalarPolicy::GrayMean => (r + g + b) / 3.0,
            };
            Quaternion::new(a, r, g, b)
        })
        .collect();
    let pixels = Grid::from_vec(h, w, data).expect("dimensions come from a valid image");
    QuaternionImage::new(pixels, img.value_scale)
}

/// Read R, G, B back from the `i`, `j`, `k` parts; the scalar part is dropped.
pub fn quaternion_to_rgb(qimg: &QuaternionImage, clip: bool) -> RgbImage {
    let s = qimg.value_scale;
    let take = |f: fn(&Quaternion) -> f64| {
        let plane = qimg.pixels.map(f);
        if clip {
            plane.clipped(0.0, s)
        } else {
            plane
        }
    };
    RgbImage {
        r: take(|q| q.b),
        g: take(|q| q.c),
        b: take(|q| q.d),
        value_scale: s,
    }
}

/// Encodings accepted by [`save_image`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Png,
    Bmp,
    Tiff,
    Jpeg,
}

impl ImageFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        Self::from_name(&ext)
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "png" => Some(ImageFormat::Png),
            "bmp" => Some(ImageFormat::Bmp),
            "tif" | "tiff" => Some(ImageFormat::Tiff),
            "jpg" | "jpeg" => Some(ImageFormat::Jpeg),
            _ => None,
        }
    }

    fn codec(self) -> image::ImageFormat {
        match self {
            ImageFormat::Png => image::ImageFormat::Png,
            ImageFormat::Bmp => image::ImageFormat::Bmp,
            ImageFormat::Tiff => image::ImageFormat::Tiff,
            ImageFormat::Jpeg => image::ImageFormat::Jpeg,
        }
    }
}

/// Decode an 8-bit RGB or grayscale file. Grayscale is replicated into all
/// three channels; an alpha channel is dropped.
pub fn load_image(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Read {
        path: path.to_owned(),
        source,
    })?;
    let reader = ImageReader::new(BufReader::new(file))
        .with_guessed_format()
        .map_err(|source| Error::Read {
            path: path.to_owned(),
            source,
        })?;
    if reader.format().is_none() {
        return Err(Error::UnsupportedFormat {
            path: path.to_owned(),
        });
    }
    let decoded = reader.decode().map_err(|source| match source {
        image::ImageError::Unsupported(_) => Error::UnsupportedFormat {
            path: path.to_owned(),
        },
        source => Error::Decode {
            path: path.to_owned(),
            source,
        },
    })?;
    from_dynamic(decoded, path)
}

fn from_dynamic(img: DynamicImage, path: &Path) -> Result<RgbImage> {
    let rgb = match img {
        DynamicImage::ImageRgb8(buf) => buf,
        DynamicImage::ImageLuma8(_) => img.to_rgb8(),
        DynamicImage::ImageRgba8(_) | DynamicImage::ImageLumaA8(_) => {
            warn!("{}: dropping alpha channel", path.display());
            img.to_rgb8()
        }
        other => {
            return Err(Error::UnsupportedPixelFormat {
                path: path.to_owned(),
                format: format!("{:?}", other.color()),
            })
        }
    };
    let (w, h) = rgb.dimensions();
    let (w, h) = (w as usize, h as usize);
    let raw = rgb.into_raw();
    let channel = |c: usize| {
        Grid::from_vec(
            h,
            w,
            raw.iter()
                .skip(c)
                .step_by(3)
                .map(|&v| f64::from(v))
                .collect(),
        )
    };
    RgbImage::new(channel(0)?, channel(1)?, channel(2)?, DEFAULT_VALUE_SCALE)
}

/// Clip to `[0, value_scale]`, rescale to 0..=255 and round half away from zero.
pub fn quantize(img: &RgbImage) -> image::RgbImage {
    let (h, w) = img.dims();
    let k = 255.0 / img.value_scale;
    let mut raw = Vec::with_capacity(h * w * 3);
    for ((&r, &g), &b) in img.r.iter().zip(img.g.iter()).zip(img.b.iter()) {
        for v in [r, g, b] {
            raw.push(quantize_sample(v * k));
        }
    }
    image::RgbImage::from_raw(w as u32, h as u32, raw).expect("buffer sized from image dims")
}

#[inline]
fn quantize_sample(v: f64) -> u8 {
    // f64::round rounds half away from zero; NaN clamps to 0 through `as`.
    v.clamp(0.0, 255.0).round() as u8
}

/// Write `img` as 8-bit RGB. The file appears at `path` only once fully
/// encoded: bytes go to a temporary sibling that is renamed on success.
pub fn save_image(img: &RgbImage, path: impl AsRef<Path>, format: ImageFormat) -> Result<()> {
    let path = path.as_ref();
    let buf = quantize(img);
    write_atomically(path, |w| {
        buf.write_to(w, format.codec())
            .map_err(|source| Error::Encode {
                path: path.to_owned(),
                source,
            })
    })
}

/// Run `write` against a temp file beside `path`, then rename it into place.
pub fn write_atomically<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<&mut File>) -> Result<()>,
{
    let write_err = |source| Error::Write {
        path: path.to_owned(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(write_err)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        write(&mut w)?;
        w.flush().map_err(write_err)?;
    }
    tmp.persist(path).map_err(|e| write_err(e.error))?;
    Ok(())
}
