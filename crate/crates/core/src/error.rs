use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),

    #[error("histogram needs at least 2 bins, got {0}")]
    InvalidBins(usize),

    #[error("image dimensions must be at least 1x1, got {height}x{width}")]
    EmptyImage { height: usize, width: usize },

    #[error("{height}x{width} image is smaller than one {block_h}x{block_w} block")]
    BlockTooLarge {
        height: usize,
        width: usize,
        block_h: usize,
        block_w: usize,
    },

    #[error("block size must be at least 1x1, got {0}x{1}")]
    InvalidBlockSize(usize, usize),

    #[error("at least one plane is required")]
    NoPlanes,

    #[error("plane size mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("invalid alpha grid: {0}")]
    InvalidGrid(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to decode {path}: {source}")]
    Decode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("failed to encode {path}: {source}")]
    Encode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("{path}: unsupported pixel format {format} (need 8-bit gray or RGB)")]
    UnsupportedPixelFormat { path: PathBuf, format: String },

    #[error("{path}: unsupported image format")]
    UnsupportedFormat { path: PathBuf },

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures caused by the filesystem or a codec rather than by
    /// a numeric precondition.
    pub fn is_io(&self) -> bool {
        matches!(
            self,
            Error::Read { .. }
                | Error::Write { .. }
                | Error::Decode { .. }
                | Error::Encode { .. }
                | Error::UnsupportedPixelFormat { .. }
                | Error::UnsupportedFormat { .. }
                | Error::Csv(_)
        )
    }
}
