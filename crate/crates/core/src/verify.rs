//! Finite-difference verification: Wirtinger derivatives, iterated Vekua-type
//! residuals and boundary mismatch.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::bicomplex::Bicomplex;
use crate::integral::{BcTrigPoly, FieldValue, Region, ScalarField, TrigPoly};
use crate::representations::SolutionField;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("finite-difference stencil around {z} leaves the domain")]
    DomainEdge { z: Complex64 },
    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),
}

/// Fourth-order central difference weights for offsets −2, −1, 1, 2.
const WEIGHTS: [(i32, f64); 4] = [(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)];

/// Default step for an operator of the given order; larger orders trade
/// truncation error for less cancellation.
pub fn default_step(order: u32) -> f64 {
    1e-3 * f64::from(1u32 << order.clamp(1, 8).saturating_sub(1))
}

/// `∂̄f(z) = ½(∂x + u∂y)f` with `u = i` (complex) or `u = j` (bicomplex).
pub fn fd_dbar<V: FieldValue>(
    f: impl Fn(Complex64) -> V,
    region: &Region,
    z: Complex64,
    h: f64,
) -> Result<V, VerifyError> {
    iterated_at(&f, region, None, None, 1, z, h)
}

/// `fd_dbar` of a solution field.
pub fn fd_dbar_field<V: FieldValue>(field: &SolutionField<V>, z: Complex64, h: f64) -> Result<V, VerifyError> {
    fd_dbar(|p| field.eval(p), field.region(), z, h)
}

/// `(∂̄ − A − B·C)^n w` at `z`, evaluated level by level on the lattice `z + h(a + ib)`.
pub fn iterated_at<V: FieldValue>(
    w: &dyn Fn(Complex64) -> V,
    region: &Region,
    a: Option<&ScalarField<V>>,
    b: Option<&ScalarField<V>>,
    n: u32,
    z: Complex64,
    h: f64,
) -> Result<V, VerifyError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(VerifyError::InvalidStep(h));
    }
    let radius = 2 * n as i32;
    let side = (2 * radius + 1) as usize;
    let idx = |a: i32, b: i32| ((a + radius) as usize) * side + (b + radius) as usize;
    let point = |a: i32, b: i32| z + Complex64::new(a as f64 * h, b as f64 * h);

    for a in -radius..=radius {
        for b in -radius..=radius {
            if !region.contains(point(a, b)) {
                return Err(VerifyError::DomainEdge { z });
            }
        }
    }
    let mut vals = vec![V::ZERO; side * side];
    for a in -radius..=radius {
        for b in -radius..=radius {
            vals[idx(a, b)] = w(point(a, b));
        }
    }
    let a = a.filter(|f| !f.is_identically_zero());
    let b = b.filter(|f| !f.is_identically_zero());
    let scale = 1.0 / (12.0 * h);
    for level in 1..=n as i32 {
        let r = radius - 2 * level;
        let mut next = vec![V::ZERO; side * side];
        for p in -r..=r {
            for q in -r..=r {
                let mut dx = V::ZERO;
                let mut dy = V::ZERO;
                for (o, c) in WEIGHTS {
                    dx = dx + vals[idx(p + o, q)] * c;
                    dy = dy + vals[idx(p, q + o)] * c;
                }
                let mut v = (dx + V::DBAR_UNIT * dy) * (0.5 * scale);
                let cur = vals[idx(p, q)];
                if let Some(a) = a {
                    v = v - a.eval(point(p, q)) * cur;
                }
                if let Some(b) = b {
                    v = v - b.eval(point(p, q)) * cur.conjugate();
                }
                next[idx(p, q)] = v;
            }
        }
        vals = next;
    }
    Ok(vals[idx(0, 0)])
}

/// Points at which residuals are measured.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid {
    pub points: Vec<Complex64>,
    pub description: String,
}

impl SampleGrid {
    pub fn new(points: Vec<Complex64>, description: impl Into<String>) -> Self {
        SampleGrid { points, description: description.into() }
    }

    /// `n_radii × n_angles` polar points with radii in `(0, max_radius]`, plus the origin.
    pub fn polar(max_radius: f64, n_radii: usize, n_angles: usize) -> Self {
        let mut points = vec![Complex64::new(0.0, 0.0)];
        for i in 1..=n_radii {
            let r = max_radius * i as f64 / n_radii as f64;
            for k in 0..n_angles {
                // Offset angles avoid the axes, where symmetric data hides sign errors.
                let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.3) / n_angles as f64;
                points.push(Complex64::from_polar(r, th));
            }
        }
        SampleGrid::new(points, format!("polar r<={max_radius} {n_radii}x{n_angles}+origin"))
    }

    /// Uniform `n × n` grid over the bounding box of `region`, keeping only points
    /// whose stencil lattice for order `order` and step `h` stays inside.
    pub fn interior(region: &Region, n: usize, order: u32, h: f64) -> Self {
        let (x0, x1, y0, y1) = region.bounding_box();
        let reach = 2.0 * order as f64 * h * std::f64::consts::SQRT_2;
        let mut points = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let x = x0 + (x1 - x0) * (i as f64 + 0.5) / n as f64;
                let y = y0 + (y1 - y0) * (j as f64 + 0.5) / n as f64;
                let p = Complex64::new(x, y);
                if region.signed_distance(p) < -reach * 1.5 {
                    points.push(p);
                }
            }
        }
        SampleGrid::new(points, format!("{n}x{n} interior, clamped by {reach:.3e}"))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub grid: String,
    pub n_points: usize,
    pub stencil_h: f64,
    /// Largest residuals first, at most five.
    pub worst: Vec<(Complex64, f64)>,
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max residual {:.3e} over {} points ({}), h = {:.1e}",
            self.max_abs, self.n_points, self.grid, self.stencil_h
        )
    }
}

/// Maximum of `|(∂̄ − A − B·C)^n w|` over the grid.
pub fn iterated_residual<V: FieldValue>(
    field: &SolutionField<V>,
    a: Option<&ScalarField<V>>,
    b: Option<&ScalarField<V>>,
    n: u32,
    grid: &SampleGrid,
    h: f64,
) -> Result<ResidualReport, VerifyError> {
    let eval = |p: Complex64| field.eval(p);
    let mut values: Vec<(Complex64, f64)> = grid
        .points
        .par_iter()
        .map(|&z| iterated_at(&eval, field.region(), a, b, n, z, h).map(|v| (z, v.magnitude())))
        .collect::<Result<_, _>>()?;
    values.sort_by(|x, y| y.1.total_cmp(&x.1));
    let max_abs = values.first().map_or(0.0, |v| v.1);
    values.truncate(5);
    Ok(ResidualReport { max_abs, grid: grid.description.clone(), n_points: grid.len(), stencil_h: h, worst: values })
}

/// Radial steps used to extrapolate interior-only fields to the boundary.
const EXTRAPOLATION_STEPS: [f64; 6] = [0.03, 0.06, 0.09, 0.12, 0.15, 0.18];

/// Value at the boundary point `b`, extrapolated along the segment from `center`.
fn extrapolate<V: FieldValue>(field: &SolutionField<V>, center: Complex64, b: Complex64) -> V {
    // Lagrange weights at s = 1 for nodes s_m = 1 − d_m.
    let d = EXTRAPOLATION_STEPS;
    let mut acc = V::ZERO;
    for (m, &dm) in d.iter().enumerate() {
        let mut w = 1.0;
        for (k, &dk) in d.iter().enumerate() {
            if k != m {
                w *= dk / (dk - dm);
            }
        }
        acc = acc + field.eval(center + (b - center) * (1.0 - dm)) * w;
    }
    acc
}

fn region_center(region: &Region) -> Complex64 {
    match region {
        Region::UnitDisk => Complex64::new(0.0, 0.0),
        Region::Ellipse(e) => e.center(),
        Region::Plane => Complex64::new(0.0, 0.0),
    }
}

/// `sup |w(b) − g(b)|` over the given boundary samples.
pub fn boundary_mismatch<V: FieldValue>(field: &SolutionField<V>, samples: &[(Complex64, V)]) -> f64 {
    let center = region_center(field.region());
    samples
        .iter()
        .map(|&(b, g)| {
            let v = if field.is_interior_only() { extrapolate(field, center, b) } else { field.eval(b) };
            (v - g).magnitude()
        })
        .fold(0.0, f64::max)
}

/// `n` equispaced samples of trigonometric data on the unit circle.
pub fn circle_samples(g: &TrigPoly, n: usize) -> Vec<(Complex64, Complex64)> {
    unit_circle(n).map(|p| (p, g.eval_on_circle(p))).collect()
}

pub fn bc_circle_samples(g: &BcTrigPoly, n: usize) -> Vec<(Complex64, Bicomplex)> {
    unit_circle(n).map(|p| (p, g.eval_on_circle(p))).collect()
}

fn unit_circle(n: usize) -> impl Iterator<Item = Complex64> {
    (0..n).map(move |k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
}

/// Boundary mismatch against trigonometric data sampled at `n_samples` points.
pub fn boundary_mismatch_trig(field: &SolutionField, g: &TrigPoly, n_samples: usize) -> f64 {
    boundary_mismatch(field, &circle_samples(g, n_samples))
}
