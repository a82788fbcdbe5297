//! Row-column 2-D complex FFT on row-major buffers.

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

/// Planned unnormalized 2-D DFT of a fixed `height × width` size.
///
/// Forward computes `Σ x(n,m)·exp(−2πi(np/N + ms/M))`; inverse uses the
/// positive exponent and no `1/NM` factor.
pub struct Fft2d {
    height: usize,
    width: usize,
    rows: Arc<dyn Fft<f64>>,
    cols: Arc<dyn Fft<f64>>,
}

impl Fft2d {
    pub fn new(height: usize, width: usize, direction: FftDirection) -> Self {
        let mut planner = FftPlanner::new();
        Fft2d {
            height,
            width,
            rows: planner.plan_fft(width, direction),
            cols: planner.plan_fft(height, direction),
        }
    }

    pub fn process(&self, buf: &mut [Complex64]) {
        let (h, w) = (self.height, self.width);
        assert_eq!(buf.len(), h * w, "buffer does not match planned size");
        if w > 1 {
            self.rows.process(buf);
        }
        if h > 1 {
            let mut t = transpose(buf, h, w);
            self.cols.process(&mut t);
            let back = transpose(&t, w, h);
            buf.copy_from_slice(&back);
        }
    }
}

fn transpose(src: &[Complex64], h: usize, w: usize) -> Vec<Complex64> {
    let mut dst = vec![Complex64::default(); h * w];
    for n in 0..h {
        for m in 0..w {
            dst[m * h + n] = src[n * w + m];
        }
    }
    dst
}
