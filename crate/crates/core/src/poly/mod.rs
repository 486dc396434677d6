//! Sparse bivariate polynomials in `(z, z̄)` or `(x, y)`, Wirtinger
//! derivatives, conics and membership in the ideal generated by a conic.

mod conic;
mod field;
mod ideal;
pub mod linalg;

pub use conic::{Conic, ConicClass};
pub use field::{parse_rational, Field, GaussRat, ParseRationalError};
pub(crate) use ideal::graded_monomials;
pub use ideal::{ideal_member_solve, NotInIdeal};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Which pair of variables the exponents refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    /// Exponent pair `(deg_z, deg_zbar)`.
    ZZbar,
    /// Exponent pair `(deg_x, deg_y)`.
    XY,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wirtinger {
    Dz,
    Dzbar,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation requires the {expected:?} frame, polynomial is in {found:?}")]
    WrongFrame { expected: Frame, found: Frame },
}

/// Sparse polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct BivarPoly<C: Field = GaussRat> {
    terms: BTreeMap<(u32, u32), C>,
    frame: Frame,
}

pub type FloatPoly = BivarPoly<Complex64>;

impl<C: Field> BivarPoly<C> {
    pub fn zero(frame: Frame) -> Self {
        BivarPoly { terms: BTreeMap::new(), frame }
    }

    pub fn constant(c: C, frame: Frame) -> Self {
        Self::monomial(0, 0, c, frame)
    }

    pub fn one(frame: Frame) -> Self {
        Self::constant(C::one(), frame)
    }

    pub fn monomial(i: u32, j: u32, c: C, frame: Frame) -> Self {
        let mut p = Self::zero(frame);
        p.add_term(i, j, c);
        p
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(terms: I, frame: Frame) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), C)>,
    {
        let mut p = Self::zero(frame);
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, C::one(), Frame::ZZbar)
    }

    pub fn zbar() -> Self {
        Self::monomial(0, 1, C::one(), Frame::ZZbar)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, C::one(), Frame::XY)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, C::one(), Frame::XY)
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (i, j);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// Degree in the first variable (`z` or `x`); `None` for the zero polynomial.
    pub fn deg_first(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// Degree in the second variable (`z̄` or `y`).
    pub fn deg_second(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn deg_z(&self) -> Option<u32> {
        debug_assert_eq!(self.frame, Frame::ZZbar);
        self.deg_first()
    }

    pub fn deg_zbar(&self) -> Option<u32> {
        debug_assert_eq!(self.frame, Frame::ZZbar);
        self.deg_second()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())), self.frame)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.frame);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> BivarPoly<D> {
        BivarPoly::from_terms(self.terms.iter().map(|(k, v)| (*k, f(v))), self.frame)
    }

    pub fn to_float(&self) -> FloatPoly {
        self.map_coeffs(|c| c.to_c64())
    }

    /// Substitutes `x = (z + z̄)/2`, `y = (z - z̄)/(2i)`; identity on `ZZbar` input.
    pub fn to_zzbar(&self) -> Self {
        match self.frame {
            Frame::ZZbar => self.clone(),
            Frame::XY => {
                let half = C::from_ratio(1, 2);
                let x_sub = (&Self::z() + &Self::zbar()).scale(&half);
                // 1/(2i) = -i/2
                let y_sub = (&Self::z() - &Self::zbar()).scale(&(-(C::imag_unit() * half)));
                self.substitute(&x_sub, &y_sub, Frame::ZZbar)
            }
        }
    }

    /// Substitutes `z = x + iy`, `z̄ = x - iy`; identity on `XY` input.
    pub fn to_xy(&self) -> Self {
        match self.frame {
            Frame::XY => self.clone(),
            Frame::ZZbar => {
                let iy = Self::y().scale(&C::imag_unit());
                let z_sub = &Self::x() + &iy;
                let zbar_sub = &Self::x() - &iy;
                self.substitute(&z_sub, &zbar_sub, Frame::XY)
            }
        }
    }

    fn substitute(&self, first: &Self, second: &Self, frame: Frame) -> Self {
        let max_i = self.deg_first().unwrap_or(0);
        let max_j = self.deg_second().unwrap_or(0);
        let mut pow_first = vec![Self::one(frame)];
        for i in 0..max_i as usize {
            let next = &pow_first[i] * first;
            pow_first.push(next);
        }
        let mut pow_second = vec![Self::one(frame)];
        for j in 0..max_j as usize {
            let next = &pow_second[j] * second;
            pow_second.push(next);
        }
        let mut out = Self::zero(frame);
        for (&(i, j), c) in &self.terms {
            let term = (&pow_first[i as usize] * &pow_second[j as usize]).scale(c);
            out = &out + &term;
        }
        out
    }

    /// Formal partial derivative in `z` or `z̄` (the two treated as independent).
    pub fn wirtinger(&self, which: Wirtinger) -> Result<Self, PolyError> {
        if self.frame != Frame::ZZbar {
            return Err(PolyError::WrongFrame { expected: Frame::ZZbar, found: self.frame });
        }
        let terms = self.terms.iter().filter_map(|(&(i, j), c)| match which {
            Wirtinger::Dz if i > 0 => Some(((i - 1, j), c.clone() * C::from_ratio(i as i64, 1))),
            Wirtinger::Dzbar if j > 0 => Some(((i, j - 1), c.clone() * C::from_ratio(j as i64, 1))),
            _ => None,
        });
        Ok(Self::from_terms(terms, Frame::ZZbar))
    }

    /// `n`-fold Wirtinger derivative.
    pub fn wirtinger_n(&self, which: Wirtinger, n: u32) -> Result<Self, PolyError> {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.wirtinger(which)?;
        }
        Ok(p)
    }

    /// The polynomial of the pointwise complex conjugate function.
    ///
    /// In the `(z, z̄)` frame `conj(c z^i z̄^j) = c̄ z^j z̄^i`; in `(x, y)` only the
    /// coefficients are conjugated.
    pub fn conj_fn(&self) -> Self {
        match self.frame {
            Frame::ZZbar => Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.conj())), Frame::ZZbar),
            Frame::XY => self.map_coeffs(|c| c.conj()),
        }
    }

    /// Evaluates at the point `z = x + iy` regardless of frame.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (a, b) = match self.frame {
            Frame::ZZbar => (z, z.conj()),
            Frame::XY => (Complex64::new(z.re, 0.0), Complex64::new(z.im, 0.0)),
        };
        self.eval_pair(a, b)
    }

    /// Evaluates with both variables given independently.
    pub fn eval_pair(&self, a: Complex64, b: Complex64) -> Complex64 {
        self.terms.iter().map(|(&(i, j), c)| c.to_c64() * a.powu(i) * b.powu(j)).sum()
    }

    /// Holomorphic coefficients `h_k` with `p = Σ z̄^k h_k(z)`.
    pub fn zbar_coefficients(&self) -> Result<Vec<Self>, PolyError> {
        if self.frame != Frame::ZZbar {
            return Err(PolyError::WrongFrame { expected: Frame::ZZbar, found: self.frame });
        }
        let n = self.deg_second().map_or(0, |d| d as usize + 1);
        let mut out = vec![Self::zero(Frame::ZZbar); n];
        for (&(i, j), c) in &self.terms {
            out[j as usize].add_term(i, 0, c.clone());
        }
        Ok(out)
    }
}

impl BivarPoly<GaussRat> {
    /// Exact evaluation at a Gaussian-rational point (`(z, z̄)` or `(x, y)` values).
    pub fn eval_exact(&self, a: &GaussRat, b: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t = t * a.clone();
            }
            for _ in 0..j {
                t = t * b.clone();
            }
            acc = acc + t;
        }
        acc
    }
}

impl<C: Field> Add for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn add(self, rhs: &BivarPoly<C>) -> BivarPoly<C> {
        assert_eq!(self.frame, rhs.frame, "adding polynomials in different frames");
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<C: Field> Sub for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn sub(self, rhs: &BivarPoly<C>) -> BivarPoly<C> {
        assert_eq!(self.frame, rhs.frame, "subtracting polynomials in different frames");
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl<C: Field> Mul for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn mul(self, rhs: &BivarPoly<C>) -> BivarPoly<C> {
        assert_eq!(self.frame, rhs.frame, "multiplying polynomials in different frames");
        let mut out = BivarPoly::zero(self.frame);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Field> Neg for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn neg(self) -> BivarPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Field + fmt::Display> fmt::Display for BivarPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let (v1, v2) = match self.frame {
            Frame::ZZbar => ("z", "zb"),
            Frame::XY => ("x", "y"),
        };
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (var, e) in [(v1, i), (v2, j)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{var}")?,
                    _ => write!(f, "*{var}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = BivarPoly<GaussRat>;

    fn g(n: i64, d: i64) -> GaussRat {
        GaussRat::from_ratio(n, d)
    }

    #[test]
    fn x_in_z_frame() {
        let x = P::x().to_zzbar();
        let expected = P::from_terms([((1, 0), g(1, 2)), ((0, 1), g(1, 2))], Frame::ZZbar);
        assert_eq!(x, expected);
    }

    #[test]
    fn modulus_squared() {
        let p = &P::x().pow(2) + &P::y().pow(2);
        assert_eq!(p.to_zzbar(), P::monomial(1, 1, GaussRat::one(), Frame::ZZbar));
    }

    #[test]
    fn x_squared_expands() {
        let p = P::x().pow(2).to_zzbar();
        let expected = P::from_terms([((2, 0), g(1, 4)), ((1, 1), g(1, 2)), ((0, 2), g(1, 4))], Frame::ZZbar);
        assert_eq!(p, expected);
    }

    #[test]
    fn wirtinger_examples() {
        let zb2 = P::zbar().pow(2);
        assert_eq!(zb2.wirtinger(Wirtinger::Dzbar).unwrap(), P::zbar().scale(&g(2, 1)));
        assert!(P::z().pow(7).wirtinger(Wirtinger::Dzbar).unwrap().is_zero());
        // (1 - z z̄) z^k is bianalytic
        let w = &(&P::one(Frame::ZZbar) - &(&P::z() * &P::zbar())) * &P::z().pow(3);
        assert!(w.wirtinger_n(Wirtinger::Dzbar, 2).unwrap().is_zero());
        let on_circle = Complex64::from_polar(1.0, 0.7);
        assert!(w.eval(on_circle).norm() < 1e-15);
    }

    #[test]
    fn wirtinger_rejects_xy() {
        assert!(P::x().wirtinger(Wirtinger::Dz).is_err());
    }

    #[test]
    fn conj_fn_conjugates_values() {
        let p =
            P::from_terms([((2, 1), GaussRat::from_ints(1, 2)), ((0, 0), GaussRat::from_ints(0, -3))], Frame::ZZbar);
        let z = Complex64::new(0.3, -0.8);
        assert!((p.conj_fn().eval(z) - p.eval(z).conj()).norm() < 1e-14);
    }

    #[test]
    fn zbar_coefficients_reassemble() {
        let p = P::from_terms([((2, 1), g(3, 1)), ((0, 0), g(1, 1)), ((1, 2), g(-1, 5))], Frame::ZZbar);
        let hs = p.zbar_coefficients().unwrap();
        assert_eq!(hs.len(), 3);
        let mut back = P::zero(Frame::ZZbar);
        for (k, h) in hs.iter().enumerate() {
            assert_eq!(h.deg_second().unwrap_or(0), 0);
            back = &back + &(h * &P::zbar().pow(k as u32));
        }
        assert_eq!(back, p);
    }

    fn small_poly(frame: Frame) -> impl Strategy<Value = P> {
        prop::collection::vec(((0u32..4, 0u32..4), -5i64..=5, -5i64..=5), 0..6).prop_map(move |ts| {
            P::from_terms(ts.into_iter().map(|(k, re, im)| (k, GaussRat::from_ints(re, im))), frame)
        })
    }

    fn gauss_point() -> impl Strategy<Value = (GaussRat, GaussRat)> {
        (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| {
            let z = GaussRat::new(
                num_rational::BigRational::new(a.into(), d.into()),
                num_rational::BigRational::new(b.into(), d.into()),
            );
            (z.clone(), z.conj())
        })
    }

    proptest! {
        #[test]
        fn frame_round_trip(p in small_poly(Frame::XY)) {
            prop_assert_eq!(p.to_zzbar().to_xy(), p);
        }

        #[test]
        fn frame_round_trip_zzbar(p in small_poly(Frame::ZZbar)) {
            prop_assert_eq!(p.to_xy().to_zzbar(), p);
        }

        #[test]
        fn evaluation_is_multiplicative(
            p in small_poly(Frame::ZZbar),
            q in small_poly(Frame::ZZbar),
            (a, b) in gauss_point(),
        ) {
            let lhs = (&p * &q).eval_exact(&a, &b);
            let rhs = p.eval_exact(&a, &b) * q.eval_exact(&a, &b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn wirtinger_derivatives_commute(p in small_poly(Frame::ZZbar)) {
            let a = p.wirtinger(Wirtinger::Dz).unwrap().wirtinger(Wirtinger::Dzbar).unwrap();
            let b = p.wirtinger(Wirtinger::Dzbar).unwrap().wirtinger(Wirtinger::Dz).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn polyanalytic_degree_criterion(p in small_poly(Frame::ZZbar)) {
            let n = p.deg_zbar().map_or(1, |d| d + 1);
            prop_assert!(p.wirtinger_n(Wirtinger::Dzbar, n).unwrap().is_zero());
        }

        #[test]
        fn xy_eval_agrees_with_zzbar_eval(p in small_poly(Frame::XY), re in -1.0f64..1.0, im in -1.0f64..1.0) {
            let z = Complex64::new(re, im);
            let lhs = p.eval(z);
            let rhs = p.to_zzbar().eval(z);
            prop_assert!((lhs - rhs).norm() <= 1e-11 * (1.0 + lhs.norm()));
        }
    }
}
