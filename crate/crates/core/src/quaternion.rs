//! Real quaternions `w + x i + y j + z k` with the Hamilton product.
//!
//! This is the codomain of every character: a multiplicative functional on a
//! real algebra takes values here.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pairs of spectrum points closer than this collapse to one point.
pub const SPECTRUM_DEDUP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm on H viewed as R^4. Multiplicative: `|pq| = |p||q|`.
    pub fn norm(self) -> f64 {
        // hypot-style scaling keeps tiny and huge inputs finite
        let scale = self
            .w
            .abs()
            .max(self.x.abs())
            .max(self.y.abs())
            .max(self.z.abs());
        if scale == 0.0 || !scale.is_finite() {
            return scale;
        }
        // divide rather than multiply by 1/scale, which overflows for subnormal scale
        let q = Quaternion::new(self.w / scale, self.x / scale, self.y / scale, self.z / scale);
        q.norm_sqr().sqrt() * scale
    }

    /// Length of the vector part `|(x, y, z)|`.
    pub fn vector_norm(self) -> f64 {
        Quaternion::new(0.0, self.x, self.y, self.z).norm()
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroDivision);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// Spectrum of `q` as an element of the real algebra H.
    ///
    /// `(q - s)^2 + t^2` fails to be invertible exactly when `s = w` and
    /// `t = ±|v|`, so the spectrum is the conjugate pair `w ± i|v|`, collapsing
    /// to the single real point `w` when the vector part vanishes.
    pub fn spectrum(self) -> Vec<Complex<f64>> {
        let v = self.vector_norm();
        if v <= SPECTRUM_DEDUP_TOL {
            vec![Complex::new(self.w, 0.0)]
        } else {
            vec![Complex::new(self.w, v), Complex::new(self.w, -v)]
        }
    }

    /// Max modulus over the spectrum; always equals `norm()`.
    pub fn spectral_radius(self) -> f64 {
        self.spectrum()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

/// Hamilton product: `i^2 = j^2 = k^2 = ijk = -1`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a, b) = (self, o);
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+}i {:+}j {:+}k",
            self.w, self.x, self.y, self.z
        )
    }
}
