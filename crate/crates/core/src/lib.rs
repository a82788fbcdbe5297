//! Color image enhancement by alpha-rooting the two-sided 2-D quaternion DFT.
//!
//! A color image becomes a grid of pure quaternions `iR + jG + kB` and is
//! transformed as a whole, so the three channels are processed as one entity
//! rather than independently. The crate provides:
//!
//! - quaternion arithmetic ([`Quaternion`]),
//! - direct and FFT-based two-sided QDFTs ([`qdft`]),
//! - alpha-rooting on quaternion and per-channel complex spectra ([`alpha`]),
//! - EME / CEME block contrast measures ([`measures`]),
//! - HSV histogram equalization ([`spatial`]),
//! - α sweeps and the five-way method comparison ([`pipeline`], [`report`]).

pub mod alpha;
pub mod error;
pub mod fft;
pub mod grid;
pub mod image;
pub mod measures;
pub mod pipeline;
pub mod qdft;
pub mod quaternion;
pub mod report;
pub mod spatial;

pub use crate::alpha::{
    alpha_root_spectrum, enhance_dft_channelwise, enhance_qdft, Alpha, AlphaParams,
    ChannelAlphaParams, ChannelEnhancer, QdftEnhanced, QdftEnhancer,
};
pub use crate::error::{Error, Result};
pub use crate::grid::{Grid, Plane};
pub use crate::image::{
    load_image, quaternion_to_rgb, rgb_to_quaternion, save_image, ImageFormat, QuaternionImage,
    RgbImage, ScalarPolicy,
};
pub use crate::measures::{
    ceme, ceme_color, eme, BlockGrid, MeasureConfig, MeasureKind, MeasureReport,
};
pub use crate::pipeline::{
    run_comparison, sweep_dft_channelwise, sweep_qdft, AlphaChoice, AlphaGrid, ComparisonReport,
    ComparisonRow, Method, PipelineConfig, RowAlphas, SweepResult,
};
pub use crate::qdft::{
    iqdft_two_sided, iqdft_two_sided_naive, qdft_left_sided_naive, qdft_right_sided_naive,
    qdft_two_sided_fast, qdft_two_sided_naive, QSpectrum,
};
pub use crate::quaternion::{Axis, Quaternion};
pub use crate::spatial::{hist_eq_rgb_naive, hist_eq_v, hsv_to_rgb, rgb_to_hsv, HsvImage};
