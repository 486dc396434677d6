use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{BivarPoly, Frame, GaussRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
    Circumference,
    Degenerate,
    EmptyLocus,
}

impl ConicClass {
    /// Classes on which the bianalytic Dirichlet problem is well posed.
    pub fn is_admissible(self) -> bool {
        matches!(self, ConicClass::Ellipse | ConicClass::Parabola | ConicClass::Hyperbola)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConicClass::Ellipse => "ellipse",
            ConicClass::Parabola => "parabola",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::Circumference => "circumference",
            ConicClass::Degenerate => "degenerate",
            ConicClass::EmptyLocus => "empty-locus",
        }
    }
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Q(x, y) = a x² + b xy + c y² + d x + e y + f` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
    pub e: BigRational,
    pub f: BigRational,
    class: ConicClass,
}

impl Conic {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational, e: BigRational, f: BigRational) -> Self {
        let class = classify(&a, &b, &c, &d, &e, &f);
        Conic { a, b, c, d, e, f, class }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Self {
        let q = |n: i64| BigRational::from_integer(n.into());
        Conic::new(q(a), q(b), q(c), q(d), q(e), q(f))
    }

    pub fn unit_circle() -> Self {
        Conic::from_ints(1, 0, 1, 0, 0, -1)
    }

    pub fn class(&self) -> ConicClass {
        self.class
    }

    /// `b² - 4ac`.
    pub fn discriminant(&self) -> BigRational {
        &self.b * &self.b - BigRational::from_integer(4.into()) * &self.a * &self.c
    }

    /// Determinant of the symmetric 3×3 matrix of `Q`.
    pub fn matrix_determinant(&self) -> BigRational {
        determinant(&self.a, &self.b, &self.c, &self.d, &self.e, &self.f)
    }

    /// `Q` as a polynomial in the `(x, y)` frame.
    pub fn poly_xy(&self) -> BivarPoly<GaussRat> {
        BivarPoly::from_terms(
            [
                ((2, 0), &self.a),
                ((1, 1), &self.b),
                ((0, 2), &self.c),
                ((1, 0), &self.d),
                ((0, 1), &self.e),
                ((0, 0), &self.f),
            ]
            .into_iter()
            .map(|(k, v)| (k, GaussRat::real(v.clone()))),
            Frame::XY,
        )
    }

    pub fn coeffs_f64(&self) -> [f64; 6] {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f].map(|v| v.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs_f64();
        a * x * x + b * x * y + c * y * y + d * x + e * y + f
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x^2 + {}xy + {}y^2 + {}x + {}y + {} = 0", self.a, self.b, self.c, self.d, self.e, self.f)
    }
}

fn determinant(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
    e: &BigRational,
    f: &BigRational,
) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let (bh, dh, eh) = (b / &two, d / &two, e / &two);
    a * (c * f - &eh * &eh) - &bh * (&bh * f - &eh * &dh) + &dh * (&bh * &eh - c * &dh)
}

fn classify(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
    e: &BigRational,
    f: &BigRational,
) -> ConicClass {
    let det = determinant(a, b, c, d, e, f);
    if det.is_zero() {
        return ConicClass::Degenerate;
    }
    let four = BigRational::from_integer(4.into());
    let delta = b * b - &four * a * c;
    if delta.is_positive() {
        return ConicClass::Hyperbola;
    }
    if delta.is_zero() {
        return ConicClass::Parabola;
    }
    // delta < 0: a real ellipse iff (a + c) det < 0
    if !((a + c) * &det).is_negative() {
        return ConicClass::EmptyLocus;
    }
    if a == c && b.is_zero() && (d * d + e * e - four * a * f).is_positive() {
        ConicClass::Circumference
    } else {
        ConicClass::Ellipse
    }
}
