//! Pointwise fields used as coefficients, right-hand sides and integrands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::{AreaQuad, Region};
use crate::bicomplex::Bicomplex;
use crate::poly::FloatPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Smoothness {
    Smooth,
    #[default]
    Unknown,
}

/// Shareable evaluator `z ↦ V`.
pub struct ScalarField<V = Complex64> {
    eval: Arc<dyn Fn(Complex64) -> V + Send + Sync>,
    smoothness: Smoothness,
    zero: bool,
}

pub type BcScalarField = ScalarField<Bicomplex>;

impl<V> Clone for ScalarField<V> {
    fn clone(&self) -> Self {
        ScalarField { eval: Arc::clone(&self.eval), smoothness: self.smoothness, zero: self.zero }
    }
}

impl<V> fmt::Debug for ScalarField<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("smoothness", &self.smoothness)
            .field("zero", &self.zero)
            .finish_non_exhaustive()
    }
}

impl<V: 'static> ScalarField<V> {
    pub fn from_fn(f: impl Fn(Complex64) -> V + Send + Sync + 'static) -> Self {
        ScalarField { eval: Arc::new(f), smoothness: Smoothness::Unknown, zero: false }
    }

    pub fn smooth(f: impl Fn(Complex64) -> V + Send + Sync + 'static) -> Self {
        Self::from_fn(f).with_smoothness(Smoothness::Smooth)
    }

    pub fn with_smoothness(mut self, s: Smoothness) -> Self {
        self.smoothness = s;
        self
    }

    #[inline]
    pub fn eval(&self, z: Complex64) -> V {
        (self.eval)(z)
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    /// True only when the field was built as the zero field.
    pub fn is_identically_zero(&self) -> bool {
        self.zero
    }
}

/// Values a field may take: complex numbers or bicomplex numbers.
pub trait FieldValue:
    Copy
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + Mul<Complex64, Output = Self>
{
    const ZERO: Self;
    const ONE: Self;
    /// The unit multiplying `∂y` in `∂̄ = ½(∂x + unit·∂y)`: `i` or `j`.
    const DBAR_UNIT: Self;

    fn nan() -> Self;
    fn exp(self) -> Self;
    /// The conjugation appearing in `B·C w`: complex or bicomplex conjugation.
    fn conjugate(self) -> Self;
    fn magnitude(self) -> f64;
    fn is_finite(self) -> bool;
    /// The area operator matching this value type.
    fn area_transform(quad: &AreaQuad, region: &Region, f: &ScalarField<Self>, z: Complex64) -> Self;
}

impl FieldValue for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    const ONE: Self = Complex64::new(1.0, 0.0);
    const DBAR_UNIT: Self = Complex64::new(0.0, 1.0);

    fn nan() -> Self {
        Complex64::new(f64::NAN, f64::NAN)
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn conjugate(self) -> Self {
        self.conj()
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }
    fn area_transform(quad: &AreaQuad, region: &Region, f: &ScalarField<Self>, z: Complex64) -> Self {
        quad.apply(region, f, z)
    }
}

impl FieldValue for Bicomplex {
    const ZERO: Self = Bicomplex::ZERO;
    const ONE: Self = Bicomplex::ONE;
    const DBAR_UNIT: Self = Bicomplex::J;

    fn nan() -> Self {
        let n = Complex64::new(f64::NAN, f64::NAN);
        Bicomplex::new(n, n)
    }
    fn exp(self) -> Self {
        Bicomplex::exp(self)
    }
    fn conjugate(self) -> Self {
        self.conj()
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite(self) -> bool {
        Bicomplex::is_finite(self)
    }
    fn area_transform(quad: &AreaQuad, region: &Region, f: &ScalarField<Self>, z: Complex64) -> Self {
        quad.apply_bicomplex(region, f, z)
    }
}

impl<V: FieldValue> ScalarField<V> {
    pub fn zero() -> Self {
        ScalarField { eval: Arc::new(|_| V::ZERO), smoothness: Smoothness::Smooth, zero: true }
    }

    pub fn constant(c: V) -> Self {
        if c == V::ZERO {
            return Self::zero();
        }
        Self::smooth(move |_| c)
    }
}

impl ScalarField<Complex64> {
    /// Polynomial in either frame, evaluated in floating point.
    pub fn from_poly(p: FloatPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        Self::smooth(move |z| p.eval(z))
    }

    /// `z ↦ conj(f(z))`.
    pub fn conj_values(&self) -> Self {
        let f = self.clone();
        ScalarField { eval: Arc::new(move |z| f.eval(z).conj()), smoothness: self.smoothness, zero: self.zero }
    }

    /// Lifts to a scalar-valued bicomplex field.
    pub fn to_bicomplex(&self) -> BcScalarField {
        let f = self.clone();
        ScalarField {
            eval: Arc::new(move |z| Bicomplex::scalar(f.eval(z))),
            smoothness: self.smoothness,
            zero: self.zero,
        }
    }
}

impl ScalarField<Bicomplex> {
    /// `p+·plus(z) + p−·minus(z)`.
    pub fn from_components(plus: ScalarField, minus: ScalarField) -> Self {
        let zero = plus.zero && minus.zero;
        let smoothness = if plus.smoothness == Smoothness::Smooth && minus.smoothness == Smoothness::Smooth {
            Smoothness::Smooth
        } else {
            Smoothness::Unknown
        };
        ScalarField { eval: Arc::new(move |z| Bicomplex::join(plus.eval(z), minus.eval(z))), smoothness, zero }
    }

    /// `sc(z) + j·vec(z)`.
    pub fn from_parts(sc: ScalarField, vec: ScalarField) -> Self {
        let zero = sc.zero && vec.zero;
        let smoothness = if sc.smoothness == Smoothness::Smooth && vec.smoothness == Smoothness::Smooth {
            Smoothness::Smooth
        } else {
            Smoothness::Unknown
        };
        ScalarField { eval: Arc::new(move |z| Bicomplex::new(sc.eval(z), vec.eval(z))), smoothness, zero }
    }

    /// `z ↦ (f(z)+)*`, the data of the conjugated plus stream.
    pub fn plus_conj(&self) -> ScalarField {
        let f = self.clone();
        ScalarField { eval: Arc::new(move |z| f.eval(z).plus().conj()), smoothness: self.smoothness, zero: self.zero }
    }

    /// `z ↦ f(z)+`.
    pub fn plus(&self) -> ScalarField {
        let f = self.clone();
        ScalarField { eval: Arc::new(move |z| f.eval(z).plus()), smoothness: self.smoothness, zero: self.zero }
    }

    /// `z ↦ f(z)−`.
    pub fn minus(&self) -> ScalarField {
        let f = self.clone();
        ScalarField { eval: Arc::new(move |z| f.eval(z).minus()), smoothness: self.smoothness, zero: self.zero }
    }

    pub fn scalar_part(&self) -> ScalarField {
        let f = self.clone();
        ScalarField { eval: Arc::new(move |z| f.eval(z).sc), smoothness: self.smoothness, zero: self.zero }
    }
}
