//! Real quaternions `a + ib + jc + kd` in the classical `{1, i, j, k}` basis.
//!
//! Multiplication follows Hamilton's rules `i² = j² = k² = ijk = −1`, so it is
//! associative but not commutative: `jk = i` while `kj = −i`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    /// Scalar part.
    pub a: f64,
    /// `i` coefficient.
    pub b: f64,
    /// `j` coefficient.
    pub c: f64,
    /// `k` coefficient.
    pub d: f64,
}

/// One of the three imaginary units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    I,
    J,
    K,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::I, Axis::J, Axis::K];

    pub fn unit(self) -> Quaternion {
        match self {
            Axis::I => Quaternion::I,
            Axis::J => Quaternion::J,
            Axis::K => Quaternion::K,
        }
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    #[inline]
    pub const fn from_scalar(a: f64) -> Self {
        Quaternion::new(a, 0.0, 0.0, 0.0)
    }

    /// Pure quaternion `ib + jc + kd`.
    #[inline]
    pub const fn pure(b: f64, c: f64, d: f64) -> Self {
        Quaternion::new(0.0, b, c, d)
    }

    #[inline]
    pub fn scalar(self) -> f64 {
        self.a
    }

    /// Vector part `(b, c, d)`.
    #[inline]
    pub fn vector(self) -> [f64; 3] {
        [self.b, self.c, self.d]
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    #[inline]
    pub fn from_array(v: [f64; 4]) -> Self {
        Quaternion::new(v[0], v[1], v[2], v[3])
    }

    /// Squared magnitude `a² + b² + c² + d²`.
    #[inline]
    pub fn norm(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// `|q| = sqrt(norm(q))`.
    #[inline]
    pub fn magnitude(self) -> f64 {
        let norm = self.norm();
        if norm.is_normal() {
            return norm.sqrt();
        }
        // squares under- or overflowed; rescale by the largest component
        let big = self
            .a
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max(self.d.abs());
        if big == 0.0 || !big.is_finite() {
            return big;
        }
        big * self.scale(1.0 / big).norm().sqrt()
    }

    #[inline]
    pub fn is_pure(self) -> bool {
        self.a == 0.0
    }

    #[inline]
    pub fn conjugate(self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Hamilton product `self · rhs`.
    #[inline]
    pub fn mul_quat(self, rhs: Quaternion) -> Self {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (rhs.a, rhs.b, rhs.c, rhs.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }

    /// Transform kernel `cos θ − u·sin θ` for the imaginary unit `u`.
    ///
    /// This is `exp(−uθ)`; the inverse transforms use `exp_unit(u, −θ)`.
    #[inline]
    pub fn exp_unit(axis: Axis, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        match axis {
            Axis::I => Quaternion::new(c, -s, 0.0, 0.0),
            Axis::J => Quaternion::new(c, 0.0, -s, 0.0),
            Axis::K => Quaternion::new(c, 0.0, 0.0, -s),
        }
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a + rhs.a,
            self.b + rhs.b,
            self.c + rhs.c,
            self.d + rhs.d,
        )
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Quaternion) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a - rhs.a,
            self.b - rhs.b,
            self.c - rhs.c,
            self.d - rhs.d,
        )
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, rhs: Quaternion) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        self.mul_quat(rhs)
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, rhs: Quaternion) {
        *self = self.mul_quat(rhs);
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.a, self.b, self.c, self.d)
    }
}
