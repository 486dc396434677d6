//! Bicomplex numbers `z1 + j z2` with `j^2 = -1` and `ij = ji`.
//!
//! Values are stored as a scalar part and a vector part, both complex. The
//! idempotent components `w+` and `w-` (with `w = p+ w+ + p- w-`,
//! `p± = (1 ± ji)/2`) are computed on demand; multiplication, the exponential
//! and the norm all act componentwise on them.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use thiserror::Error;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A bicomplex number `sc + j vec`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Bicomplex {
    pub sc: Complex64,
    pub vec: Complex64,
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
#[error("bicomplex value {0} is a zero divisor (an idempotent component vanishes)")]
pub struct ZeroDivisor(pub Bicomplex);

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    pub const ONE: Bicomplex = Bicomplex::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    /// The second imaginary unit.
    pub const J: Bicomplex = Bicomplex::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    /// `p+ = (1 + ji)/2`.
    pub const P_PLUS: Bicomplex = Bicomplex::new(Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5));
    /// `p- = (1 - ji)/2`.
    pub const P_MINUS: Bicomplex = Bicomplex::new(Complex64::new(0.5, 0.0), Complex64::new(0.0, -0.5));

    pub const fn new(sc: Complex64, vec: Complex64) -> Self {
        Bicomplex { sc, vec }
    }

    /// Embeds a complex number as a scalar (vector part zero).
    pub const fn scalar(c: Complex64) -> Self {
        Bicomplex::new(c, Complex64::new(0.0, 0.0))
    }

    pub fn real(t: f64) -> Self {
        Bicomplex::scalar(Complex64::new(t, 0.0))
    }

    /// Idempotent components `(w+, w-) = (Sc w - i Vec w, Sc w + i Vec w)`.
    pub fn split(self) -> (Complex64, Complex64) {
        let iv = I * self.vec;
        (self.sc - iv, self.sc + iv)
    }

    /// Inverse of [`Bicomplex::split`]: the unique `w` with `w = p+ wp + p- wm`.
    pub fn join(wp: Complex64, wm: Complex64) -> Self {
        let sc = (wp + wm) * 0.5;
        let vec = I * (wp - wm) * 0.5;
        Bicomplex::new(sc, vec)
    }

    pub fn plus(self) -> Complex64 {
        self.split().0
    }

    pub fn minus(self) -> Complex64 {
        self.split().1
    }

    /// Bicomplex conjugate `Sc w - j Vec w`.
    pub fn conj(self) -> Self {
        Bicomplex::new(self.sc, -self.vec)
    }

    /// Complex conjugation applied to both parts (the `*` of the complex unit `i`).
    pub fn conj_i(self) -> Self {
        Bicomplex::new(self.sc.conj(), self.vec.conj())
    }

    /// `sqrt((|w+|^2 + |w-|^2) / 2)`.
    pub fn norm(self) -> f64 {
        let (p, m) = self.split();
        ((p.norm_sqr() + m.norm_sqr()) * 0.5).sqrt()
    }

    /// `e^w = p+ e^{w+} + p- e^{w-}`.
    pub fn exp(self) -> Self {
        let (p, m) = self.split();
        Bicomplex::join(p.exp(), m.exp())
    }

    /// Multiplicative inverse, defined exactly when both idempotent
    /// components are nonzero.
    pub fn checked_inverse(self) -> Result<Self, ZeroDivisor> {
        let (p, m) = self.split();
        if p == Complex64::new(0.0, 0.0) || m == Complex64::new(0.0, 0.0) {
            return Err(ZeroDivisor(self));
        }
        Ok(Bicomplex::join(p.inv(), m.inv()))
    }

    pub fn approx_eq(self, other: Bicomplex, tol: f64) -> bool {
        (self - other).abs_max() <= tol
    }

    /// Largest absolute value among the four real coordinates.
    pub fn abs_max(self) -> f64 {
        self.sc.re.abs().max(self.sc.im.abs()).max(self.vec.re.abs()).max(self.vec.im.abs())
    }

    pub fn is_finite(self) -> bool {
        self.sc.is_finite() && self.vec.is_finite()
    }

    pub fn powu(self, k: u32) -> Self {
        let (p, m) = self.split();
        Bicomplex::join(p.powu(k), m.powu(k))
    }
}

/// Bicomplexification `x + iy -> x + jy`.
pub fn bicomplexify(z: Complex64) -> Bicomplex {
    Bicomplex::new(Complex64::new(z.re, 0.0), Complex64::new(z.im, 0.0))
}

impl From<Complex64> for Bicomplex {
    fn from(c: Complex64) -> Self {
        Bicomplex::scalar(c)
    }
}

impl From<f64> for Bicomplex {
    fn from(t: f64) -> Self {
        Bicomplex::real(t)
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + j({})", self.sc, self.vec)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.sc + rhs.sc, self.vec + rhs.vec)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.sc - rhs.sc, self.vec - rhs.vec)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex::new(-self.sc, -self.vec)
    }
}

// (z1 + j z2)(w1 + j w2) = (z1 w1 - z2 w2) + j (z1 w2 + z2 w1)
impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.sc * rhs.sc - self.vec * rhs.vec, self.sc * rhs.vec + self.vec * rhs.sc)
    }
}

impl Mul<Complex64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Complex64) -> Bicomplex {
        Bicomplex::new(self.sc * rhs, self.vec * rhs)
    }
}

impl Mul<Bicomplex> for Complex64 {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        rhs * self
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: f64) -> Bicomplex {
        Bicomplex::new(self.sc * rhs, self.vec * rhs)
    }
}

impl Mul<Bicomplex> for f64 {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        rhs * self
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, rhs: Bicomplex) {
        *self = *self + rhs;
    }
}

impl SubAssign for Bicomplex {
    fn sub_assign(&mut self, rhs: Bicomplex) {
        *self = *self - rhs;
    }
}

impl MulAssign for Bicomplex {
    fn mul_assign(&mut self, rhs: Bicomplex) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for Bicomplex {
    fn sum<It: Iterator<Item = Bicomplex>>(iter: It) -> Bicomplex {
        iter.fold(Bicomplex::ZERO, |a, b| a + b)
    }
}
