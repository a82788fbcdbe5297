//! Two-sided 2-D quaternion DFT.
//!
//! The forward transform sandwiches each pixel between a `j`-axis kernel on
//! the left (rows) and a `k`-axis kernel on the right (columns):
//!
//! ```text
//! F(p,s) = Σ_n W_j^{np} [ Σ_m f(n,m) · W_k^{ms} ]
//! W_j^t  = cos(2πt/N) − j·sin(2πt/N)
//! W_k^t  = cos(2πt/M) − k·sin(2πt/M)
//! ```
//!
//! The inverse flips the kernel signs and carries the whole `1/NM` factor.
//!
//! [`qdft_two_sided_fast`] evaluates this with ordinary complex FFTs. Each
//! real component plane `x_u` (for `u ∈ {1, i, j, k}`) has a complex DFT
//! `X_u`; from `X_u(p, s)` and `X_u(p, −s)` we recover the four real sums
//!
//! ```text
//! CC = Σ x cosθ cosφ    SS = Σ x sinθ sinφ
//! SC = Σ x sinθ cosφ    CS = Σ x cosθ sinφ
//! ```
//!
//! and then `W_j · u · W_k = CC·u − SC·(j u) − CS·(u k) + SS·(j u k)`.
//! Two real planes share one complex FFT, so a transform costs two 2-D FFTs.

use std::f64::consts::PI;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftDirection;

use crate::fft::Fft2d;
use crate::grid::Grid;
use crate::image::QuaternionImage;
use crate::quaternion::{Axis, Quaternion};

/// Two-sided QDFT coefficients `F(p, s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QSpectrum {
    pub coeffs: Grid<Quaternion>,
}

impl QSpectrum {
    pub fn new(coeffs: Grid<Quaternion>) -> Self {
        QSpectrum { coeffs }
    }

    pub fn height(&self) -> usize {
        self.coeffs.height()
    }

    pub fn width(&self) -> usize {
        self.coeffs.width()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.coeffs.dims()
    }

    pub fn dc(&self) -> Quaternion {
        self.coeffs[(0, 0)]
    }
}

/// Kernel placement for the one-sided transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    /// Sign of the sine terms in the kernels.
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        }
    }
}

/// Frobenius norm `sqrt(Σ |q|²)`.
pub fn frobenius(grid: &Grid<Quaternion>) -> f64 {
    grid.iter().map(|q| q.norm()).sum::<f64>().sqrt()
}

/// `‖a − b‖_F / ‖b‖_F`, or the absolute difference norm when `b` is zero.
pub fn relative_error(a: &Grid<Quaternion>, b: &Grid<Quaternion>) -> f64 {
    assert_eq!(a.dims(), b.dims());
    let diff = a
        .iter()
        .zip(b.iter())
        .map(|(&x, &y)| (x - y).norm())
        .sum::<f64>()
        .sqrt();
    let reference = frobenius(b);
    if reference == 0.0 {
        diff
    } else {
        diff / reference
    }
}

// ---------------------------------------------------------------------------
// Direct evaluation
// ---------------------------------------------------------------------------

/// `exp_unit(axis, ±2πt/len)` for `t = 0..len`.
fn kernel_table(axis: Axis, len: usize, dir: Direction) -> Vec<Quaternion> {
    (0..len)
        .map(|t| {
            let theta = 2.0 * PI * t as f64 / len as f64;
            match dir {
                Direction::Forward => Quaternion::exp_unit(axis, theta),
                Direction::Inverse => Quaternion::exp_unit(axis, -theta),
            }
        })
        .collect()
}

fn two_sided_naive(src: &Grid<Quaternion>, dir: Direction) -> Grid<Quaternion> {
    let (h, w) = src.dims();
    let left = kernel_table(Axis::J, h, dir);
    let right = kernel_table(Axis::K, w, dir);
    let norm = match dir {
        Direction::Forward => 1.0,
        Direction::Inverse => 1.0 / (h * w) as f64,
    };
    let data: Vec<Quaternion> = (0..h)
        .into_par_iter()
        .flat_map_iter(|p| {
            let (left, right) = (&left, &right);
            (0..w).map(move |s| {
                let mut acc = Quaternion::ZERO;
                for n in 0..h {
                    let l = left[(n * p) % h];
                    for m in 0..w {
                        acc += l * src[(n, m)] * right[(m * s) % w];
                    }
                }
                acc.scale(norm)
            })
        })
        .collect();
    Grid::from_vec(h, w, data).expect("same dims as input")
}

/// Direct `O(N²M²)` evaluation of the forward two-sided transform.
pub fn qdft_two_sided_naive(f: &QuaternionImage) -> QSpectrum {
    QSpectrum::new(two_sided_naive(&f.pixels, Direction::Forward))
}

/// Direct `O(N²M²)` evaluation of the inverse two-sided transform.
pub fn iqdft_two_sided_naive(spectrum: &QSpectrum, value_scale: f64) -> QuaternionImage {
    QuaternionImage::new(
        two_sided_naive(&spectrum.coeffs, Direction::Inverse),
        value_scale,
    )
}

/// Forward transform with both kernels on one side of the pixel, using the
/// same imaginary unit `axis` for rows and columns.
pub fn qdft_one_sided_naive(f: &QuaternionImage, axis: Axis, side: Side) -> QSpectrum {
    let (h, w) = f.dims();
    let rows = kernel_table(axis, h, Direction::Forward);
    let cols = kernel_table(axis, w, Direction::Forward);
    let coeffs = Grid::from_fn(h, w, |p, s| {
        let mut acc = Quaternion::ZERO;
        for n in 0..h {
            for m in 0..w {
                let kernel = rows[(n * p) % h] * cols[(m * s) % w];
                let px = f.pixels[(n, m)];
                acc += match side {
                    Side::Left => kernel * px,
                    Side::Right => px * kernel,
                };
            }
        }
        acc
    })
    .expect("same dims as input");
    QSpectrum::new(coeffs)
}

/// Left-sided variant of [`qdft_one_sided_naive`].
pub fn qdft_left_sided_naive(f: &QuaternionImage, axis: Axis) -> QSpectrum {
    qdft_one_sided_naive(f, axis, Side::Left)
}

/// Right-sided variant of [`qdft_one_sided_naive`].
pub fn qdft_right_sided_naive(f: &QuaternionImage, axis: Axis) -> QSpectrum {
    qdft_one_sided_naive(f, axis, Side::Right)
}

// ---------------------------------------------------------------------------
// FFT-based evaluation
// ---------------------------------------------------------------------------

/// Basis units and their kernel products `(u, j·u, u·k, j·u·k)`.
fn basis_products() -> [[Quaternion; 4]; 4] {
    let (j, k) = (Quaternion::J, Quaternion::K);
    [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K]
        .map(|u| [u, j * u, u * k, j * u * k])
}

/// Two-sided transform planned for a fixed size and direction.
pub struct QdftPlan {
    height: usize,
    width: usize,
    fft: Fft2d,
    dir: Direction,
}

impl QdftPlan {
    pub fn forward(height: usize, width: usize) -> Self {
        Self::new(height, width, Direction::Forward)
    }

    pub fn inverse(height: usize, width: usize) -> Self {
        Self::new(height, width, Direction::Inverse)
    }

    fn new(height: usize, width: usize, dir: Direction) -> Self {
        let fft_dir = match dir {
            Direction::Forward => FftDirection::Forward,
            Direction::Inverse => FftDirection::Inverse,
        };
        QdftPlan {
            height,
            width,
            fft: Fft2d::new(height, width, fft_dir),
            dir,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    fn run(&self, src: &Grid<Quaternion>) -> Grid<Quaternion> {
        let (h, w) = (self.height, self.width);
        assert_eq!(src.dims(), (h, w), "plan size does not match input");

        // Pack (a, b) and (c, d) as real/imaginary halves of two complex planes.
        let pack = |re: fn(&Quaternion) -> f64, im: fn(&Quaternion) -> f64| -> Vec<Complex64> {
            src.iter().map(|q| Complex64::new(re(q), im(q))).collect()
        };
        let mut ab = pack(|q| q.a, |q| q.b);
        let mut cd = pack(|q| q.c, |q| q.d);
        rayon::join(|| self.fft.process(&mut ab), || self.fft.process(&mut cd));

        let sigma = self.dir.sign();
        let units = basis_products();
        let norm = match self.dir {
            Direction::Forward => 1.0,
            Direction::Inverse => 1.0 / (h * w) as f64,
        };

        let data = (0..h * w)
            .map(|idx| {
                let (p, s) = (idx / w, idx % w);
                let s_ref = (w - s) % w;
                // Unpack the two real-input DFTs from Z(k) and conj(Z(−k)).
                let split = |z: &[Complex64], pp: usize, ss: usize| {
                    let zk = z[pp * w + ss];
                    let zn = z[((h - pp) % h) * w + (w - ss) % w].conj();
                    let x = (zk + zn) * 0.5;
                    let y = (zk - zn) * Complex64::new(0.0, -0.5);
                    (x, y)
                };
                let (xa1, xb1) = split(&ab, p, s);
                let (xc1, xd1) = split(&cd, p, s);
                let (xa2, xb2) = split(&ab, p, s_ref);
                let (xc2, xd2) = split(&cd, p, s_ref);

                let mut acc = Quaternion::ZERO;
                for (u, (x1, x2)) in [(xa1, xa2), (xb1, xb2), (xc1, xc2), (xd1, xd2)]
                    .into_iter()
                    .enumerate()
                {
                    let cc = 0.5 * (x1.re + x2.re);
                    let ss = 0.5 * (x2.re - x1.re);
                    let sc = sigma * 0.5 * (x1.im + x2.im);
                    let cs = sigma * 0.5 * (x1.im - x2.im);
                    let [unit, ju, uk, juk] = units[u];
                    acc += unit.scale(cc)
                        + ju.scale(sigma * sc)
                        + uk.scale(sigma * cs)
                        + juk.scale(ss);
                }
                acc.scale(norm)
            })
            .collect();
        Grid::from_vec(h, w, data).expect("same dims as input")
    }

    pub fn transform(&self, f: &QuaternionImage) -> QSpectrum {
        assert_eq!(self.dir, Direction::Forward, "not a forward plan");
        QSpectrum::new(self.run(&f.pixels))
    }

    pub fn invert(&self, spectrum: &QSpectrum, value_scale: f64) -> QuaternionImage {
        assert_eq!(self.dir, Direction::Inverse, "not an inverse plan");
        QuaternionImage::new(self.run(&spectrum.coeffs), value_scale)
    }
}

/// Forward two-sided QDFT via four real-plane complex DFTs.
pub fn qdft_two_sided_fast(f: &QuaternionImage) -> QSpectrum {
    let (h, w) = f.dims();
    QdftPlan::forward(h, w).transform(f)
}

/// Inverse two-sided QDFT, including the `1/NM` normalization.
pub fn iqdft_two_sided(spectrum: &QSpectrum, value_scale: f64) -> QuaternionImage {
    let (h, w) = spectrum.dims();
    QdftPlan::inverse(h, w).invert(spectrum, value_scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_image(h: usize, w: usize, seed: u64) -> QuaternionImage {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pixels = Grid::from_fn(h, w, |_, _| {
            Quaternion::new(
                rng.gen_range(-255.0..255.0),
                rng.gen_range(-255.0..255.0),
                rng.gen_range(-255.0..255.0),
                rng.gen_range(-255.0..255.0),
            )
        })
        .unwrap();
        QuaternionImage::new(pixels, 255.0)
    }

    fn image_of(h: usize, w: usize, f: impl FnMut(usize, usize) -> Quaternion) -> QuaternionImage {
        QuaternionImage::new(Grid::from_fn(h, w, f).unwrap(), 255.0)
    }

    #[test]
    fn single_pixel_is_identity() {
        let q = Quaternion::new(1.5, -2.0, 3.0, 0.25);
        let f = image_of(1, 1, |_, _| q);
        assert_eq!(qdft_two_sided_naive(&f).coeffs[(0, 0)], q);
        assert_eq!(qdft_two_sided_fast(&f).coeffs[(0, 0)], q);
        for axis in Axis::ALL {
            assert_eq!(qdft_left_sided_naive(&f, axis).coeffs[(0, 0)], q);
        }
    }

    #[test]
    fn constant_image_concentrates_in_dc() {
        let q = Quaternion::new(0.5, 10.0, -20.0, 30.0);
        let (h, w) = (4, 6);
        let f = image_of(h, w, |_, _| q);
        let tol = 1e-9 * (h * w) as f64 * q.magnitude();
        for spectrum in [qdft_two_sided_naive(&f), qdft_two_sided_fast(&f)] {
            assert!((spectrum.dc() - q.scale((h * w) as f64)).magnitude() <= tol);
            for p in 0..h {
                for s in 0..w {
                    if (p, s) != (0, 0) {
                        assert!(spectrum.coeffs[(p, s)].magnitude() <= tol, "({p},{s})");
                    }
                }
            }
        }
    }

    #[test]
    fn impulse_at_origin_has_flat_spectrum() {
        let f = image_of(2, 2, |n, m| {
            if (n, m) == (0, 0) {
                Quaternion::I
            } else {
                Quaternion::ZERO
            }
        });
        for spectrum in [qdft_two_sided_naive(&f), qdft_two_sided_fast(&f)] {
            for q in spectrum.coeffs.iter() {
                assert!((*q - Quaternion::I).magnitude() < 1e-15);
            }
        }
    }

    #[test]
    fn scalar_image_recombination() {
        // For a real image only the u = 1 terms survive: F = CC + i·SS − j·SC − k·CS.
        let (h, w) = (5, 6);
        let f = image_of(h, w, |n, m| {
            Quaternion::from_scalar(((n * 7 + m * 3) % 11) as f64 - 4.0)
        });
        let fast = qdft_two_sided_fast(&f);
        for p in 0..h {
            for s in 0..w {
                let (mut cc, mut ss, mut sc, mut cs) = (0.0, 0.0, 0.0, 0.0);
                for n in 0..h {
                    for m in 0..w {
                        let x = f.pixels[(n, m)].a;
                        let th = 2.0 * PI * (n * p) as f64 / h as f64;
                        let ph = 2.0 * PI * (m * s) as f64 / w as f64;
                        cc += x * th.cos() * ph.cos();
                        ss += x * th.sin() * ph.sin();
                        sc += x * th.sin() * ph.cos();
                        cs += x * th.cos() * ph.sin();
                    }
                }
                let want = Quaternion::new(cc, ss, -sc, -cs);
                assert!(
                    (fast.coeffs[(p, s)] - want).magnitude() < 1e-10,
                    "({p},{s})"
                );
            }
        }
    }

    #[test]
    fn scalar_image_round_trip_has_no_vector_part() {
        let f = image_of(6, 5, |n, m| {
            Quaternion::from_scalar((n * 31 + m * 17) as f64 % 13.0)
        });
        let back = iqdft_two_sided(&qdft_two_sided_fast(&f), 255.0);
        for q in back.pixels.iter() {
            assert!(q.vector().iter().all(|v| v.abs() < 1e-9 * 13.0));
        }
    }

    #[test]
    fn fast_matches_naive() {
        for (idx, (h, w)) in [
            (1, 1),
            (2, 2),
            (4, 4),
            (8, 8),
            (16, 12),
            (15, 9),
            (1, 7),
            (6, 1),
        ]
        .into_iter()
        .enumerate()
        {
            let f = random_image(h, w, idx as u64);
            let err = relative_error(
                &qdft_two_sided_fast(&f).coeffs,
                &qdft_two_sided_naive(&f).coeffs,
            );
            assert!(err <= 1e-9, "{h}x{w}: {err}");
        }
    }

    #[test]
    fn inverse_fast_matches_naive() {
        for (h, w) in [(3, 4), (9, 15)] {
            let spectrum = QSpectrum::new(random_image(h, w, 99).pixels);
            let a = iqdft_two_sided(&spectrum, 255.0);
            let b = iqdft_two_sided_naive(&spectrum, 255.0);
            assert!(relative_error(&a.pixels, &b.pixels) <= 1e-9);
        }
    }

    #[test]
    fn dc_only_spectrum_inverts_to_constant() {
        let (h, w) = (3, 5);
        let spectrum = QSpectrum::new(
            Grid::from_fn(h, w, |p, s| {
                if (p, s) == (0, 0) {
                    Quaternion::from_scalar((h * w) as f64)
                } else {
                    Quaternion::ZERO
                }
            })
            .unwrap(),
        );
        for img in [
            iqdft_two_sided(&spectrum, 255.0),
            iqdft_two_sided_naive(&spectrum, 255.0),
        ] {
            for q in img.pixels.iter() {
                assert!((*q - Quaternion::ONE).magnitude() < 1e-12);
            }
        }
    }

    #[test]
    fn spectrum_round_trip() {
        let spectrum = QSpectrum::new(random_image(7, 10, 5).pixels);
        let again = qdft_two_sided_fast(&iqdft_two_sided(&spectrum, 255.0));
        assert!(relative_error(&again.coeffs, &spectrum.coeffs) <= 1e-9);
    }

    #[test]
    fn dc_is_pixel_sum() {
        let f = random_image(5, 7, 11);
        let sum = f.pixels.iter().fold(Quaternion::ZERO, |acc, &q| acc + q);
        let naive = qdft_two_sided_naive(&f).dc();
        assert!((naive - sum).magnitude() <= 1e-12 * sum.magnitude().max(1.0));
    }

    #[test]
    fn one_sided_differs_from_two_sided() {
        // Random search for a witness; noncommutativity makes one easy to find.
        let found = (0..20).any(|seed| {
            let f = random_image(3, 3, 1000 + seed);
            let two = qdft_two_sided_naive(&f);
            let left = qdft_left_sided_naive(&f, Axis::J);
            relative_error(&left.coeffs, &two.coeffs) > 1e-6
        });
        assert!(found);
    }

    #[test]
    fn two_by_two_kernels_are_real() {
        // At N = M = 2 every kernel is ±1, so all kernel placements coincide.
        for seed in 0..5 {
            let f = random_image(2, 2, 2000 + seed);
            let two = qdft_two_sided_naive(&f);
            for axis in Axis::ALL {
                let left = qdft_left_sided_naive(&f, axis);
                assert!(relative_error(&left.coeffs, &two.coeffs) < 1e-14);
            }
        }
    }

    #[test]
    fn left_and_right_sided_differ_for_vector_images() {
        let f = random_image(3, 3, 77);
        let left = qdft_left_sided_naive(&f, Axis::I);
        let right = qdft_right_sided_naive(&f, Axis::I);
        assert!(relative_error(&left.coeffs, &right.coeffs) > 1e-6);
    }

    #[test]
    fn real_input_one_sided_vs_two_sided() {
        // For a real image and u = j the one-sided kernel is
        // cos(θ+φ) − j sin(θ+φ); the two-sided sandwich gives
        // cosθcosφ + i sinθsinφ − j sinθcosφ − k cosθsinφ. They coincide
        // only where φ = 0, i.e. in column s = 0.
        let (h, w) = (4, 4);
        let f = image_of(h, w, |n, m| {
            Quaternion::from_scalar((3 * n + 5 * m) as f64 % 7.0 + 1.0)
        });
        let two = qdft_two_sided_naive(&f);
        let left = qdft_left_sided_naive(&f, Axis::J);
        let right = qdft_right_sided_naive(&f, Axis::J);
        let mut differs = false;
        for p in 0..h {
            for s in 0..w {
                let d = (left.coeffs[(p, s)] - two.coeffs[(p, s)]).magnitude();
                if s == 0 {
                    assert!(d < 1e-10, "({p},{s}) {d}");
                } else if d > 1e-6 {
                    differs = true;
                }
                // a real pixel commutes with every kernel
                assert!((left.coeffs[(p, s)] - right.coeffs[(p, s)]).magnitude() < 1e-10);
            }
        }
        assert!(differs);
    }
}
