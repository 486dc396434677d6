//! Trapezoidal integrals over the unit circle.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{BcTrigPoly, QuadError, TrigPoly};
use crate::bicomplex::Bicomplex;

/// Equispaced nodes `e^{2πik/N}` with `N` a power of two, at least 64.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryNodes {
    points: Vec<Complex64>,
}

pub const MIN_BOUNDARY_NODES: usize = 64;

impl BoundaryNodes {
    pub fn new(n: usize) -> Result<Self, QuadError> {
        if n < MIN_BOUNDARY_NODES || !n.is_power_of_two() {
            return Err(QuadError::InvalidNodeCount(n));
        }
        let points = (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect();
        Ok(BoundaryNodes { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn theta(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.points.len() as f64
    }

    pub fn sample(&self, g: &TrigPoly) -> Vec<Complex64> {
        self.points.iter().map(|&p| g.eval_on_circle(p)).collect()
    }
}

/// Kernels of the boundary integrals in the representation and solvability formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKernel {
    /// `conj(ζ−z)^p / (ζ−z)`.
    Cauchy { power: u32 },
    /// `conj(ζ−z)^p / (1 − z̄ζ)`.
    Reflected { power: u32 },
}

impl BoundaryKernel {
    pub fn eval(self, zeta: Complex64, z: Complex64) -> Complex64 {
        let d = zeta - z;
        match self {
            BoundaryKernel::Cauchy { power } => d.conj().powu(power) / d,
            BoundaryKernel::Reflected { power } => d.conj().powu(power) / (1.0 - z.conj() * zeta),
        }
    }
}

/// `(1/2πi)∮ γ(ζ) K(ζ, z) dζ` from values of `γ` at the nodes.
pub fn cauchy_samples(values: &[Complex64], kernel: BoundaryKernel, z: Complex64, nodes: &BoundaryNodes) -> Complex64 {
    assert_eq!(values.len(), nodes.len());
    // dζ = iζ dθ, so the integral is the mean of γ·K·ζ.
    let s: Complex64 = values.iter().zip(nodes.points()).map(|(&g, &p)| g * kernel.eval(p, z) * p).sum();
    s / nodes.len() as f64
}

/// `(1/2πi)∮ γ(ζ) K(ζ, z) dζ` for trigonometric boundary data.
pub fn cauchy_boundary(gamma: &TrigPoly, kernel: BoundaryKernel, z: Complex64, nodes: &BoundaryNodes) -> Complex64 {
    if gamma.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    cauchy_samples(&nodes.sample(gamma), kernel, z, nodes)
}

/// `P_r(θ) = (1 − r²)/(1 − 2r cos θ + r²)`.
pub fn poisson_kernel(r: f64, theta: f64) -> f64 {
    (1.0 - r * r) / (1.0 - 2.0 * r * theta.cos() + r * r)
}

/// `(1/2π)∫ g(e^{it}) P_r(θ − t) dt`.
pub fn poisson(g: &TrigPoly, r: f64, theta: f64, nodes: &BoundaryNodes) -> Complex64 {
    if g.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let n = nodes.len();
    let s: Complex64 = nodes
        .points()
        .iter()
        .enumerate()
        .map(|(k, &p)| g.eval_on_circle(p) * poisson_kernel(r, theta - nodes.theta(k)))
        .sum();
    s / n as f64
}

/// Componentwise Poisson integral of bicomplex data.
pub fn poisson_bicomplex(g: &BcTrigPoly, r: f64, theta: f64, nodes: &BoundaryNodes) -> Bicomplex {
    let (gp, gm) = g.split();
    Bicomplex::join(poisson(&gp, r, theta, nodes), poisson(&gm, r, theta, nodes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cauchy_integral_of_powers() {
        let nodes = BoundaryNodes::new(64).unwrap();
        let z = c(0.4, -0.3);
        for m in 0..8 {
            let g = TrigPoly::monomial(m, c(1.0, 0.0));
            let v = cauchy_boundary(&g, BoundaryKernel::Cauchy { power: 0 }, z, &nodes);
            assert!((v - z.powu(m as u32)).norm() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn reflected_kernel_residue() {
        // The kernel is not band-limited; aliasing decays like |z|^N.
        let nodes = BoundaryNodes::new(256).unwrap();
        let g = TrigPoly::monomial(-1, c(1.0, 0.0));
        for z in [c(0.0, 0.0), c(0.5, 0.5), c(-0.85, 0.0)] {
            let v = cauchy_boundary(&g, BoundaryKernel::Reflected { power: 0 }, z, &nodes);
            assert!((v - 1.0).norm() < 1e-12, "z={z}: {v}");
        }
    }

    #[test]
    fn zero_data() {
        let nodes = BoundaryNodes::new(64).unwrap();
        let v = cauchy_boundary(&TrigPoly::zero(), BoundaryKernel::Cauchy { power: 1 }, c(0.1, 0.0), &nodes);
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn node_count_validation() {
        assert!(BoundaryNodes::new(32).is_err());
        assert!(BoundaryNodes::new(100).is_err());
        assert!(BoundaryNodes::new(128).is_ok());
    }

    #[test]
    fn poisson_constant_and_cosine() {
        let nodes = BoundaryNodes::new(128).unwrap();
        let k = TrigPoly::constant(c(2.5, -1.0));
        assert!((poisson(&k, 0.7, 1.1, &nodes) - c(2.5, -1.0)).norm() < 1e-13);
        let cos = TrigPoly::from_modes([(1, c(0.5, 0.0)), (-1, c(0.5, 0.0))]);
        for (r, th) in [(0.0, 0.0), (0.5, 0.3), (0.75, 2.0)] {
            let v = poisson(&cos, r, th, &nodes);
            assert!((v - c(r * th.cos(), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn poisson_bicomplex_is_componentwise() {
        let nodes = BoundaryNodes::new(128).unwrap();
        let g1 = TrigPoly::monomial(2, c(1.0, 0.0));
        let g2 = TrigPoly::monomial(-1, c(0.0, 1.0));
        let g = BcTrigPoly::from_components(&g1, &g2);
        let (r, th) = (0.6, 0.9);
        let v = poisson_bicomplex(&g, r, th, &nodes);
        let want = Bicomplex::join(poisson(&g1, r, th, &nodes), poisson(&g2, r, th, &nodes));
        assert!(v.approx_eq(want, 1e-14));
        assert!((v.plus() - Complex64::from_polar(r * r, 2.0 * th)).norm() < 1e-12);
    }
}
