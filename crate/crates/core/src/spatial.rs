//! HSV conversion and histogram equalization of the value channel.

use crate::error::{Error, Result};
use crate::grid::{Grid, Plane};
use crate::image::RgbImage;

pub const DEFAULT_BINS: usize = 256;

/// Hexcone HSV planes: `h` in degrees `[0, 360)`, `s` and `v` in `[0, 1]`.
/// Hue of achromatic pixels is stored as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct HsvImage {
    pub h: Plane,
    pub s: Plane,
    pub v: Plane,
}

/// Convert one pixel with components already normalized to `[0, 1]`.
pub fn rgb_pixel_to_hsv(r: f64, g: f64, b: f64) -> [f64; 3] {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let s = if max > 0.0 { delta / max } else { 0.0 };
    let h = if delta == 0.0 {
        0.0
    } else if max == r {
        let h = 60.0 * ((g - b) / delta);
        if h < 0.0 {
            h + 360.0
        } else {
            h
        }
    } else if max == g {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    // (g − b)/delta can round to exactly −0 + 360
    let h = if h >= 360.0 { h - 360.0 } else { h };
    [h, s, max]
}

pub fn hsv_pixel_to_rgb(h: f64, s: f64, v: f64) -> [f64; 3] {
    let c = v * s;
    let hp = h / 60.0;
    let x = c * (1.0 - ((hp % 2.0) - 1.0).abs());
    let m = v - c;
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    [r + m, g + m, b + m]
}

pub fn rgb_to_hsv(img: &RgbImage) -> HsvImage {
    let k = 1.0 / img.value_scale;
    let (height, width) = img.dims();
    let pixels: Vec<[f64; 3]> = img
        .r
        .iter()
        .zip(img.g.iter())
        .zip(img.b.iter())
        .map(|((&r, &g), &b)| rgb_pixel_to_hsv(r * k, g * k, b * k))
        .collect();
    let plane = |c: usize| {
        Grid::from_vec(height, width, pixels.iter().map(|p| p[c]).collect())
            .expect("dims from image")
    };
    HsvImage {
        h: plane(0),
        s: plane(1),
        v: plane(2),
    }
}

pub fn hsv_to_rgb(hsv: &HsvImage, value_scale: f64) -> RgbImage {
    let (height, width) = hsv.v.dims();
    let pixels: Vec<[f64; 3]> = hsv
        .h
        .iter()
        .zip(hsv.s.iter())
        .zip(hsv.v.iter())
        .map(|((&h, &s), &v)| hsv_pixel_to_rgb(h, s, v).map(|c| c * value_scale))
        .collect();
    let plane = |c: usize| {
        Grid::from_vec(height, width, pixels.iter().map(|p| p[c]).collect())
            .expect("dims from image")
    };
    RgbImage {
        r: plane(0),
        g: plane(1),
        b: plane(2),
        value_scale,
    }
}

/// Bin index of a value in `[0, 1]`.
#[inline]
pub fn bin_of(v: f64, bins: usize) -> usize {
    ((v * bins as f64).floor().max(0.0) as usize).min(bins - 1)
}

/// Counts of `values` (in `[0, 1]`) over `bins` equal-width bins.
pub fn histogram<'a>(values: impl IntoIterator<Item = &'a f64>, bins: usize) -> Vec<usize> {
    let mut counts = vec![0usize; bins];
    for &v in values {
        counts[bin_of(v, bins)] += 1;
    }
    counts
}

/// Lookup from bin index to equalized level,
/// `(CDF(q) − CDF_min) / (1 − CDF_min)` where `CDF_min` belongs to the
/// darkest occupied bin. `None` when only one bin is occupied.
fn equalization_lut(counts: &[usize]) -> Option<Vec<f64>> {
    let total: usize = counts.iter().sum();
    let first = counts.iter().position(|&c| c > 0)?;
    let cdf_min = counts[first] as f64 / total as f64;
    if counts[first] == total {
        return None;
    }
    let mut acc = 0usize;
    Some(
        counts
            .iter()
            .map(|&c| {
                acc += c;
                let cdf = acc as f64 / total as f64;
                ((cdf - cdf_min) / (1.0 - cdf_min)).max(0.0)
            })
            .collect(),
    )
}

/// Equalize a plane of values in `[0, 1]`; a single-level plane is returned as is.
pub fn equalize_unit_plane(plane: &Plane, bins: usize) -> Result<Plane> {
    if bins < 2 {
        return Err(Error::InvalidBins(bins));
    }
    let counts = histogram(plane.iter(), bins);
    Ok(match equalization_lut(&counts) {
        Some(lut) => plane.map(|&v| lut[bin_of(v, bins)]),
        None => plane.clone(),
    })
}

/// Equalize `V`; `H` and `S` are carried over untouched.
pub fn equalize_v(hsv: &HsvImage, bins: usize) -> Result<HsvImage> {
    Ok(HsvImage {
        h: hsv.h.clone(),
        s: hsv.s.clone(),
        v: equalize_unit_plane(&hsv.v, bins)?,
    })
}

/// Histogram equalization through HSV: only the value channel changes.
pub fn hist_eq_v(img: &RgbImage, bins: usize) -> Result<RgbImage> {
    let hsv = equalize_v(&rgb_to_hsv(img), bins)?;
    Ok(hsv_to_rgb(&hsv, img.value_scale).clipped())
}

/// Equalizes R, G and B separately. Kept only as a diagnostic: treating the
/// channels independently shifts hues.
pub fn hist_eq_rgb_naive(img: &RgbImage) -> RgbImage {
    let s = img.value_scale;
    let eq = |p: &Plane| {
        let unit = p.map(|&v| (v / s).clamp(0.0, 1.0));
        equalize_unit_plane(&unit, DEFAULT_BINS)
            .expect("DEFAULT_BINS >= 2")
            .map(|&v| v * s)
    };
    RgbImage {
        r: eq(&img.r),
        g: eq(&img.g),
        b: eq(&img.b),
        value_scale: s,
    }
}
