//! The area operator `T[f](z) = −(1/π)∬ f(ζ)/(ζ−z) dA(ζ)` and regular area integrals.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use super::gauss::GaussLegendre;
use super::region::Region;
use super::{QuadError, ScalarField};
use crate::bicomplex::Bicomplex;

fn gauss_rule(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
    Arc::clone(map.entry(n).or_insert_with(|| Arc::new(GaussLegendre::new(n))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AreaRule {
    /// Polar coordinates centred at the evaluation point. The Jacobian cancels
    /// the kernel singularity, so the result is smooth in `z`.
    #[default]
    Polar,
    /// Midpoint rule on a grid aligned with `z`, skipping the cell centred at `z`.
    Cartesian,
}

/// Quadrature settings for area integrals.
#[derive(Clone, Debug)]
pub struct AreaQuad {
    n_grid: usize,
    rule: AreaRule,
    angular: Arc<GaussLegendre>,
    radial: Arc<GaussLegendre>,
}

pub const MIN_GRID: usize = 16;

impl AreaQuad {
    pub fn new(n_grid: usize, rule: AreaRule) -> Result<Self, QuadError> {
        if n_grid < MIN_GRID {
            return Err(QuadError::GridTooSmall(n_grid));
        }
        Ok(AreaQuad { n_grid, rule, angular: gauss_rule(n_grid / 2), radial: gauss_rule((n_grid / 16).max(8)) })
    }

    pub fn polar(n_grid: usize) -> Result<Self, QuadError> {
        Self::new(n_grid, AreaRule::Polar)
    }

    pub fn n_grid(&self) -> usize {
        self.n_grid
    }

    pub fn rule(&self) -> AreaRule {
        self.rule
    }

    /// Nodes and weights with `T[f](z) ≈ Σ w_k f(ζ_k)`.
    ///
    /// Empty when `z` lies outside the closed region.
    pub fn t_nodes(&self, region: &Region, z: Complex64) -> Vec<(Complex64, Complex64)> {
        if !region.is_bounded() || !region.contains(z) {
            return Vec::new();
        }
        match self.rule {
            AreaRule::Polar => self.polar_nodes(region, z),
            AreaRule::Cartesian => self.cartesian_nodes(region, z),
        }
    }

    // The circle of directions is split at the tangent of the nearest level
    // set, so each half sees a smooth exit distance even next to the boundary.
    fn polar_nodes(&self, region: &Region, z: Complex64) -> Vec<(Complex64, Complex64)> {
        let phi = region.outward_direction(z).arg();
        let mut out = Vec::with_capacity(2 * self.angular.len() * self.radial.len());
        for start in [phi - PI / 2.0, phi + PI / 2.0] {
            for (s, ws) in self.angular.iter() {
                let theta = start + PI * s;
                let u = Complex64::from_polar(1.0, theta);
                let r = region.ray_exit(z, u);
                if r <= 0.0 {
                    continue;
                }
                // −(1/π)·π·ws·e^{−iθ}·r·wr
                let base = -u.conj() * (ws * r);
                for (t, wr) in self.radial.iter() {
                    out.push((z + u * (r * t), base * wr));
                }
            }
        }
        out
    }

    fn cartesian_nodes(&self, region: &Region, z: Complex64) -> Vec<(Complex64, Complex64)> {
        const SUB: usize = 8;
        let (x0, x1, y0, y1) = region.bounding_box();
        let h = (x1 - x0).max(y1 - y0) / self.n_grid as f64;
        let lo_i = ((x0 - z.re) / h).floor() as i64 - 1;
        let hi_i = ((x1 - z.re) / h).ceil() as i64 + 1;
        let lo_j = ((y0 - z.im) / h).floor() as i64 - 1;
        let hi_j = ((y1 - z.im) / h).ceil() as i64 + 1;
        let scale = -1.0 / PI;
        let mut out = Vec::new();
        for i in lo_i..=hi_i {
            for j in lo_j..=hi_j {
                if i == 0 && j == 0 {
                    continue;
                }
                let c = z + Complex64::new(i as f64 * h, j as f64 * h);
                let d = region.signed_distance(c);
                if d < -0.75 * h {
                    out.push((c, scale * h * h / (c - z)));
                } else if d < 0.75 * h {
                    let hs = h / SUB as f64;
                    for a in 0..SUB {
                        for b in 0..SUB {
                            let p =
                                c + Complex64::new((a as f64 + 0.5) * hs - h / 2.0, (b as f64 + 0.5) * hs - h / 2.0);
                            if region.signed_distance(p) < 0.0 {
                                out.push((p, scale * hs * hs / (p - z)));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `T[f](z)`; NaN outside the closed region.
    pub fn apply(&self, region: &Region, f: &ScalarField, z: Complex64) -> Complex64 {
        if f.is_identically_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let nodes = self.t_nodes(region, z);
        if nodes.is_empty() {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        nodes.iter().map(|&(p, w)| w * f.eval(p)).sum()
    }

    /// `p+·(T[(f+)*])* + p−·T[f−]` from one pass over the nodes.
    pub fn apply_bicomplex(&self, region: &Region, f: &ScalarField<Bicomplex>, z: Complex64) -> Bicomplex {
        if f.is_identically_zero() {
            return Bicomplex::ZERO;
        }
        let nodes = self.t_nodes(region, z);
        if nodes.is_empty() {
            let nan = Complex64::new(f64::NAN, f64::NAN);
            return Bicomplex::new(nan, nan);
        }
        let (mut tp, mut tm) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &(p, w) in &nodes {
            let (fp, fm) = f.eval(p).split();
            tp += w * fp.conj();
            tm += w * fm;
        }
        Bicomplex::join(tp.conj(), tm)
    }

    /// Nodes and weights for `∬_D g dA` over the unit disk (polar about the origin).
    pub fn disk_area_nodes(&self) -> Vec<(Complex64, f64)> {
        let n_theta = self.n_grid;
        let radial = gauss_rule((self.n_grid / 8).max(16));
        let dtheta = 2.0 * PI / n_theta as f64;
        let mut out = Vec::with_capacity(n_theta * radial.len());
        for k in 0..n_theta {
            let u = Complex64::from_polar(1.0, (k as f64 + 0.5) * dtheta);
            for (r, w) in radial.iter() {
                out.push((u * r, dtheta * r * w));
            }
        }
        out
    }

    /// `∬_D g dA` over the unit disk for smooth `g`.
    pub fn disk_area_integral(&self, g: impl Fn(Complex64) -> Complex64) -> Complex64 {
        self.disk_area_nodes().into_iter().map(|(p, w)| g(p) * w).sum()
    }
}

fn default_quad(n_grid: usize) -> AreaQuad {
    AreaQuad::polar(n_grid).unwrap_or_else(|e| panic!("{e}"))
}

/// `T_D[f](z)` on the unit disk with the default polar rule.
///
/// # Panics
/// If `n_grid < 16`.
pub fn t_disk(f: &ScalarField, z: Complex64, n_grid: usize) -> Complex64 {
    default_quad(n_grid).apply(&Region::UnitDisk, f, z)
}

/// `T_D[f](z)` on a bounded region.
///
/// # Panics
/// If `n_grid < 16`.
pub fn t_domain(f: &ScalarField, region: &Region, z: Complex64, n_grid: usize) -> Complex64 {
    default_quad(n_grid).apply(region, f, z)
}

/// Bicomplex area operator on the unit disk.
///
/// # Panics
/// If `n_grid < 16`.
pub fn t_bicomplex(f: &ScalarField<Bicomplex>, z: Complex64, n_grid: usize) -> Bicomplex {
    default_quad(n_grid).apply_bicomplex(&Region::UnitDisk, f, z)
}
