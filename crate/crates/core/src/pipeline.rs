//! End-to-end enhancement runs: α sweeps and the five-row method comparison.

use rayon::prelude::*;

use crate::alpha::{Alpha, AlphaParams, ChannelAlphaParams, ChannelEnhancer, QdftEnhancer};
use crate::error::{Error, Result};
use crate::image::{RgbImage, ScalarPolicy};
use crate::measures::MeasureConfig;
use crate::spatial::{hist_eq_v, DEFAULT_BINS};

/// Evenly spaced α values `min, min + step, …, ≤ max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaGrid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Default for AlphaGrid {
    fn default() -> Self {
        AlphaGrid {
            min: 0.80,
            max: 1.00,
            step: 0.01,
        }
    }
}

impl AlphaGrid {
    pub fn new(min: f64, max: f64, step: f64) -> Self {
        AlphaGrid { min, max, step }
    }

    pub fn single(alpha: f64) -> Self {
        AlphaGrid::new(alpha, alpha, 0.01)
    }

    pub fn points(&self) -> Result<Vec<Alpha>> {
        let AlphaGrid { min, max, step } = *self;
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "step must be positive, got {step}"
            )));
        }
        if min.is_nan() || max.is_nan() || min > max {
            return Err(Error::InvalidGrid(format!("min {min} exceeds max {max}")));
        }
        Alpha::new(min)?;
        Alpha::new(max)?;
        let count = ((max - min) / step + 1e-9).floor() as usize + 1;
        (0..count)
            // snap to 12 decimals so 0.8 + 20·0.01 lands on 1.0 exactly
            .map(|i| Alpha::new(((min + i as f64 * step) * 1e12).round() / 1e12))
            .collect()
    }
}

/// One measured curve over an α grid and its maximizer.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    pub best_alpha: f64,
    pub best_value: f64,
}

impl SweepResult {
    /// Pick the maximum of `values`; among equal maxima the larger α wins.
    pub fn from_curve(alphas: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidGrid("empty alpha grid".into()));
        }
        if alphas.len() != values.len() {
            return Err(Error::InvalidGrid(format!(
                "{} alphas but {} values",
                alphas.len(),
                values.len()
            )));
        }
        let (mut best_alpha, mut best_value) = (alphas[0], values[0]);
        for (&a, &v) in alphas.iter().zip(&values).skip(1) {
            if v > best_value || (v == best_value && a > best_alpha) {
                best_alpha = a;
                best_value = v;
            }
        }
        Ok(SweepResult {
            alphas,
            values,
            best_alpha,
            best_value,
        })
    }
}

/// How the comparison chooses its exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaChoice {
    /// Maximize CEME (quaternion path) and per-channel EME (channel path) over the grid.
    Sweep,
    Fixed {
        qdft: f64,
        dft: [f64; 3],
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub grid: AlphaGrid,
    pub measure: MeasureConfig,
    pub preserve_dc: bool,
    pub scalar_policy: ScalarPolicy,
    pub alphas: AlphaChoice,
    pub hist_eq: bool,
    pub bins: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            grid: AlphaGrid::default(),
            measure: MeasureConfig::default(),
            preserve_dc: false,
            scalar_policy: ScalarPolicy::Zero,
            alphas: AlphaChoice::Sweep,
            hist_eq: true,
            bins: DEFAULT_BINS,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.measure.validate()?;
        if self.bins < 2 {
            return Err(Error::InvalidBins(self.bins));
        }
        match self.alphas {
            AlphaChoice::Sweep => {
                self.grid.points()?;
            }
            AlphaChoice::Fixed { qdft, dft } => {
                Alpha::new(qdft)?;
                for a in dft {
                    Alpha::new(a)?;
                }
            }
        }
        Ok(())
    }
}

fn sweep_qdft_with(
    enhancer: &QdftEnhancer,
    points: &[Alpha],
    cfg: &PipelineConfig,
) -> Result<SweepResult> {
    let values = points
        .par_iter()
        .map(|&alpha| {
            let params = AlphaParams {
                alpha,
                preserve_dc: cfg.preserve_dc,
            };
            let out = enhancer.apply(&params);
            cfg.measure.ceme(&out.rgb, Some(&out.scalar))
        })
        .collect::<Result<Vec<f64>>>()?;
    SweepResult::from_curve(points.iter().map(|a| a.get()).collect(), values)
}

/// CEME of the quaternion-path result at every grid point.
pub fn sweep_qdft(img: &RgbImage, cfg: &PipelineConfig) -> Result<SweepResult> {
    let points = cfg.grid.points()?;
    cfg.measure.grid(img.dims())?;
    let enhancer = QdftEnhancer::new(img, cfg.scalar_policy);
    sweep_qdft_with(&enhancer, &points, cfg)
}

fn sweep_channels_with(
    enhancer: &ChannelEnhancer,
    points: &[Alpha],
    cfg: &PipelineConfig,
) -> Result<[SweepResult; 3]> {
    let curves = (0..3)
        .map(|c| {
            let values = points
                .par_iter()
                .map(|&a| {
                    cfg.measure
                        .eme(&enhancer.enhanced_channel(c, a, cfg.preserve_dc))
                })
                .collect::<Result<Vec<f64>>>()?;
            SweepResult::from_curve(points.iter().map(|a| a.get()).collect(), values)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(curves.try_into().expect("three channels"))
}

/// Per-channel EME of the channel-path result at every grid point.
pub fn sweep_dft_channelwise(img: &RgbImage, cfg: &PipelineConfig) -> Result<[SweepResult; 3]> {
    let points = cfg.grid.points()?;
    cfg.measure.grid(img.dims())?;
    sweep_channels_with(&ChannelEnhancer::new(img), &points, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Original,
    QdftAlpha,
    QdftAlphaHe,
    DftAlpha,
    DftAlphaHe,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Original,
        Method::QdftAlpha,
        Method::QdftAlphaHe,
        Method::DftAlpha,
        Method::DftAlphaHe,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Method::Original => "Original image",
            Method::QdftAlpha => "QDFT alpha-rooting",
            Method::QdftAlphaHe => "QDFT alpha-rooting + HE",
            Method::DftAlpha => "DFT alpha-rooting",
            Method::DftAlphaHe => "DFT alpha-rooting + HE",
        }
    }
}

/// Exponents used by a comparison row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RowAlphas {
    None,
    Single(f64),
    PerChannel([f64; 3]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub method: Method,
    pub ceme: f64,
    pub alphas: RowAlphas,
    /// Per-channel EME (R, G, B), reported for the original and the channel path.
    pub eme: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    /// Present when αs were swept.
    pub qdft_sweep: Option<SweepResult>,
    pub dft_sweeps: Option<[SweepResult; 3]>,
}

impl ComparisonReport {
    pub fn row(&self, method: Method) -> &ComparisonRow {
        self.rows
            .iter()
            .find(|r| r.method == method)
            .expect("every method has a row")
    }
}

/// Original, quaternion path, quaternion path + HE, channel path, channel
/// path + HE. Rooting always precedes equalization; with `hist_eq` off the
/// "+ HE" rows repeat their rooted counterparts.
pub fn run_comparison(img: &RgbImage, cfg: &PipelineConfig) -> Result<ComparisonReport> {
    cfg.validate()?;
    let m = &cfg.measure;
    m.grid(img.dims())?;

    let qdft = QdftEnhancer::new(img, cfg.scalar_policy);
    let channels = ChannelEnhancer::new(img);

    let (q_alpha, d_alphas, qdft_sweep, dft_sweeps) = match cfg.alphas {
        AlphaChoice::Sweep => {
            let points = cfg.grid.points()?;
            let qs = sweep_qdft_with(&qdft, &points, cfg)?;
            let ds = sweep_channels_with(&channels, &points, cfg)?;
            let d = [ds[0].best_alpha, ds[1].best_alpha, ds[2].best_alpha];
            (qs.best_alpha, d, Some(qs), Some(ds))
        }
        AlphaChoice::Fixed { qdft, dft } => (qdft, dft, None, None),
    };

    let equalize = |rgb: &RgbImage| -> Result<RgbImage> {
        if cfg.hist_eq {
            hist_eq_v(rgb, cfg.bins)
        } else {
            Ok(rgb.clone())
        }
    };

    let q_out = qdft.apply(&AlphaParams {
        alpha: Alpha::new(q_alpha)?,
        preserve_dc: cfg.preserve_dc,
    });
    let q_he = equalize(&q_out.rgb)?;

    let d_params = ChannelAlphaParams::new(d_alphas[0], d_alphas[1], d_alphas[2])?
        .with_preserve_dc(cfg.preserve_dc);
    let d_out = channels.apply(&d_params);
    let d_he = equalize(&d_out)?;

    let rows = vec![
        ComparisonRow {
            method: Method::Original,
            ceme: m.ceme(img, None)?,
            alphas: RowAlphas::None,
            eme: Some(m.eme_rgb(img)?),
        },
        ComparisonRow {
            method: Method::QdftAlpha,
            ceme: m.ceme(&q_out.rgb, Some(&q_out.scalar))?,
            alphas: RowAlphas::Single(q_alpha),
            eme: None,
        },
        ComparisonRow {
            method: Method::QdftAlphaHe,
            // equalization only touches R, G, B; the scalar residual rides along
            ceme: m.ceme(&q_he, Some(&q_out.scalar))?,
            alphas: RowAlphas::Single(q_alpha),
            eme: None,
        },
        ComparisonRow {
            method: Method::DftAlpha,
            ceme: m.ceme(&d_out, None)?,
            alphas: RowAlphas::PerChannel(d_alphas),
            eme: Some(m.eme_rgb(&d_out)?),
        },
        ComparisonRow {
            method: Method::DftAlphaHe,
            ceme: m.ceme(&d_he, None)?,
            alphas: RowAlphas::PerChannel(d_alphas),
            eme: None,
        },
    ];
    Ok(ComparisonReport {
        rows,
        qdft_sweep,
        dft_sweeps,
    })
}
