//! Block contrast measures EME (one plane) and CEME (planes taken jointly).
//!
//! The image is tiled into `k1 × k2` blocks of `L1 × L2` pixels, where
//! `k = floor(size / L)`; trailing rows and columns that do not fill a block
//! are ignored. Each block contributes `20·log10(MAX / max(MIN, eps))`, and
//! blocks whose `MAX < eps` contribute 0. The measure is the mean over blocks.

use crate::error::{Error, Result};
use crate::grid::Plane;
use crate::image::RgbImage;

/// Block tiling of an `N × M` image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockGrid {
    /// `L1`
    pub block_h: usize,
    /// `L2`
    pub block_w: usize,
    /// `k1 = floor(N / L1)`
    pub rows: usize,
    /// `k2 = floor(M / L2)`
    pub cols: usize,
}

impl BlockGrid {
    pub fn new(height: usize, width: usize, block_h: usize, block_w: usize) -> Result<Self> {
        if block_h == 0 || block_w == 0 {
            return Err(Error::InvalidBlockSize(block_h, block_w));
        }
        let (rows, cols) = (height / block_h, width / block_w);
        if rows == 0 || cols == 0 {
            return Err(Error::BlockTooLarge {
                height,
                width,
                block_h,
                block_w,
            });
        }
        Ok(BlockGrid {
            block_h,
            block_w,
            rows,
            cols,
        })
    }

    pub fn block_count(&self) -> usize {
        self.rows * self.cols
    }

    fn covers(&self, dims: (usize, usize)) -> bool {
        dims.0 >= self.rows * self.block_h && dims.1 >= self.cols * self.block_w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Eme,
    Ceme,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub kind: MeasureKind,
    /// Mean block log-ratio in decibels.
    pub value: f64,
    pub grid: BlockGrid,
    pub epsilon_used: f64,
}

/// Contribution of one block.
#[inline]
pub fn block_term(max: f64, min: f64, eps: f64) -> f64 {
    if max < eps {
        0.0
    } else {
        20.0 * (max / min.max(eps)).log10()
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(eps))
    }
}

/// Mean block term with MAX/MIN taken jointly over all `planes`.
fn joint_block_measure(planes: &[&Plane], grid: &BlockGrid, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let first = planes.first().ok_or(Error::NoPlanes)?;
    for p in &planes[1..] {
        first.same_dims(p)?;
    }
    if !grid.covers(first.dims()) {
        let (height, width) = first.dims();
        return Err(Error::BlockTooLarge {
            height,
            width,
            block_h: grid.block_h,
            block_w: grid.block_w,
        });
    }

    let (lh, lw) = (grid.block_h, grid.block_w);
    let used_w = grid.cols * lw;
    let mut mins = vec![f64::INFINITY; grid.cols];
    let mut maxs = vec![f64::NEG_INFINITY; grid.cols];
    let mut total = 0.0;
    for k in 0..grid.rows {
        mins.fill(f64::INFINITY);
        maxs.fill(f64::NEG_INFINITY);
        for plane in planes {
            for n in k * lh..(k + 1) * lh {
                let row = &plane.row(n)[..used_w];
                for (l, chunk) in row.chunks_exact(lw).enumerate() {
                    let (lo, hi) = chunk
                        .iter()
                        .fold((mins[l], maxs[l]), |(lo, hi), &v| (lo.min(v), hi.max(v)));
                    mins[l] = lo;
                    maxs[l] = hi;
                }
            }
        }
        for l in 0..grid.cols {
            total += block_term(maxs[l], mins[l], eps);
        }
    }
    Ok(total / grid.block_count() as f64)
}

/// EME of one channel.
pub fn eme(channel: &Plane, grid: &BlockGrid, eps: f64) -> Result<MeasureReport> {
    Ok(MeasureReport {
        kind: MeasureKind::Eme,
        value: joint_block_measure(&[channel], grid, eps)?,
        grid: *grid,
        epsilon_used: eps,
    })
}

/// CEME over exactly the given planes (per block, MAX and MIN are taken
/// over the pixels of every plane at once).
pub fn ceme(planes: &[&Plane], grid: &BlockGrid, eps: f64) -> Result<MeasureReport> {
    Ok(MeasureReport {
        kind: MeasureKind::Ceme,
        value: joint_block_measure(planes, grid, eps)?,
        grid: *grid,
        epsilon_used: eps,
    })
}

/// CEME of a color image with an optional scalar plane.
///
/// An identically zero scalar plane is left out unless `include_zero_scalar`
/// is set; otherwise every block of a pure-quaternion image would have
/// `MIN = 0`.
pub fn ceme_color(
    scalar: Option<&Plane>,
    rgb: &RgbImage,
    grid: &BlockGrid,
    eps: f64,
    include_zero_scalar: bool,
) -> Result<MeasureReport> {
    let [r, g, b] = rgb.channels();
    match scalar {
        Some(s) if include_zero_scalar || !s.is_all_zero() => ceme(&[s, r, g, b], grid, eps),
        _ => ceme(&[r, g, b], grid, eps),
    }
}

/// Block geometry and guards shared by every measurement in a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureConfig {
    pub block_h: usize,
    pub block_w: usize,
    pub eps: f64,
    /// Count the residual scalar plane of the quaternion path in CEME.
    pub scalar_in_ceme: bool,
    /// Keep a scalar plane in CEME even when it is identically zero.
    pub include_zero_scalar: bool,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            block_h: 8,
            block_w: 8,
            eps: 1.0,
            scalar_in_ceme: false,
            include_zero_scalar: false,
        }
    }
}

impl MeasureConfig {
    pub fn validate(&self) -> Result<()> {
        check_eps(self.eps)?;
        if self.block_h == 0 || self.block_w == 0 {
            return Err(Error::InvalidBlockSize(self.block_h, self.block_w));
        }
        Ok(())
    }

    pub fn grid(&self, dims: (usize, usize)) -> Result<BlockGrid> {
        BlockGrid::new(dims.0, dims.1, self.block_h, self.block_w)
    }

    /// CEME of `rgb`; `scalar` is consulted only when `scalar_in_ceme` is set.
    pub fn ceme(&self, rgb: &RgbImage, scalar: Option<&Plane>) -> Result<f64> {
        let grid = self.grid(rgb.dims())?;
        let scalar = scalar.filter(|_| self.scalar_in_ceme);
        Ok(ceme_color(scalar, rgb, &grid, self.eps, self.include_zero_scalar)?.value)
    }

    pub fn eme(&self, channel: &Plane) -> Result<f64> {
        let grid = self.grid(channel.dims())?;
        Ok(eme(channel, &grid, self.eps)?.value)
    }

    pub fn eme_rgb(&self, rgb: &RgbImage) -> Result<[f64; 3]> {
        let [r, g, b] = rgb.channels();
        Ok([self.eme(r)?, self.eme(g)?, self.eme(b)?])
    }
}
