//! Finite Fourier series on the unit circle.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::bicomplex::Bicomplex;

/// `θ ↦ Σ c_m e^{imθ}` over a finite set of modes.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TrigPoly {
    modes: BTreeMap<i32, Complex64>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn constant(c: Complex64) -> Self {
        TrigPoly::monomial(0, c)
    }

    /// `c·ζ^m` on the circle.
    pub fn monomial(m: i32, c: Complex64) -> Self {
        let mut p = TrigPoly::zero();
        p.add_mode(m, c);
        p
    }

    pub fn from_modes(modes: impl IntoIterator<Item = (i32, Complex64)>) -> Self {
        let mut p = TrigPoly::zero();
        for (m, c) in modes {
            p.add_mode(m, c);
        }
        p
    }

    pub fn add_mode(&mut self, m: i32, c: Complex64) {
        let e = self.modes.entry(m).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if *e == Complex64::new(0.0, 0.0) {
            self.modes.remove(&m);
        }
    }

    pub fn coeff(&self, m: i32) -> Complex64 {
        self.modes.get(&m).copied().unwrap_or_default()
    }

    pub fn modes(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        self.modes.iter().map(|(&m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    /// Largest `|m|` with a nonzero coefficient.
    pub fn bandwidth(&self) -> u32 {
        self.modes.keys().map(|m| m.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn eval_theta(&self, theta: f64) -> Complex64 {
        self.modes.iter().map(|(&m, &c)| c * Complex64::from_polar(1.0, m as f64 * theta)).sum()
    }

    /// Evaluates at a point of the unit circle using `ζ^{-1} = ζ̄`.
    pub fn eval_on_circle(&self, zeta: Complex64) -> Complex64 {
        let inv = zeta.conj();
        self.modes
            .iter()
            .map(|(&m, &c)| if m >= 0 { c * zeta.powu(m as u32) } else { c * inv.powu(m.unsigned_abs()) })
            .sum()
    }

    /// The boundary function `ζ ↦ conj(g(ζ))`: modes negated, coefficients conjugated.
    pub fn conj_on_circle(&self) -> Self {
        TrigPoly::from_modes(self.modes.iter().map(|(&m, &c)| (-m, c.conj())))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TrigPoly::from_modes(self.modes.iter().map(|(&m, &c)| (m, c * s)))
    }

    /// Discrete Fourier projection of equispaced samples `f(2πk/N)` onto
    /// modes `|m| <= max_mode`. Coefficients below `drop_below` are discarded.
    pub fn project(samples: &[Complex64], max_mode: u32, drop_below: f64) -> Self {
        let n = samples.len();
        assert!(n > 0);
        let mut spectrum = samples.to_vec();
        FftPlanner::new().plan_fft_forward(n).process(&mut spectrum);
        let mut p = TrigPoly::zero();
        let mm = max_mode as i64;
        for m in -mm..=mm {
            let c = spectrum[m.rem_euclid(n as i64) as usize] / n as f64;
            if c.norm() > drop_below {
                p.add_mode(m as i32, c);
            }
        }
        p
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut p = self.clone();
        for (m, c) in rhs.modes() {
            p.add_mode(m, c);
        }
        p
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let mut p = TrigPoly::zero();
        for (m, a) in self.modes() {
            for (k, b) in rhs.modes() {
                p.add_mode(m + k, a * b);
            }
        }
        p
    }
}

/// Bicomplex boundary data `sc + j·vec`, each part a finite Fourier series.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BcTrigPoly {
    pub sc: TrigPoly,
    pub vec: TrigPoly,
}

impl BcTrigPoly {
    pub fn new(sc: TrigPoly, vec: TrigPoly) -> Self {
        BcTrigPoly { sc, vec }
    }

    pub fn scalar(sc: TrigPoly) -> Self {
        BcTrigPoly { sc, vec: TrigPoly::zero() }
    }

    /// `p+·plus + p−·minus`.
    pub fn from_components(plus: &TrigPoly, minus: &TrigPoly) -> Self {
        let half = Complex64::new(0.5, 0.0);
        let i_half = Complex64::new(0.0, 0.5);
        BcTrigPoly { sc: (plus + minus).scale(half), vec: (plus - minus).scale(i_half) }
    }

    /// Idempotent components `(g+, g−)`.
    pub fn split(&self) -> (TrigPoly, TrigPoly) {
        let i = Complex64::new(0.0, 1.0);
        let iv = self.vec.scale(i);
        (&self.sc - &iv, &self.sc + &iv)
    }

    pub fn eval_on_circle(&self, zeta: Complex64) -> Bicomplex {
        Bicomplex::new(self.sc.eval_on_circle(zeta), self.vec.eval_on_circle(zeta))
    }

    pub fn bandwidth(&self) -> u32 {
        self.sc.bandwidth().max(self.vec.bandwidth())
    }

    pub fn is_zero(&self) -> bool {
        self.sc.is_zero() && self.vec.is_zero()
    }
}
