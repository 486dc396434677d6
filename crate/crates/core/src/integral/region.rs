//! Bounded integration regions: the unit disk and ellipse interiors.

use num_complex::Complex64;

use super::QuadError;
use crate::poly::{Conic, ConicClass};

/// Interior of an ellipse `{Q < 0}`, with `Q` normalised so that its
/// quadratic part is positive definite.
#[derive(Clone, Debug, PartialEq)]
pub struct Ellipse {
    q: [f64; 6],
    center: Complex64,
    half_extent: (f64, f64),
}

impl Ellipse {
    /// Accepts ellipses and circles; everything else is unbounded or empty.
    pub fn from_conic(conic: &Conic) -> Result<Self, QuadError> {
        match conic.class() {
            ConicClass::Ellipse | ConicClass::Circumference => {}
            other => return Err(QuadError::UnsupportedDomain(other)),
        }
        let mut q = conic.coeffs_f64();
        if q[0] < 0.0 {
            q.iter_mut().for_each(|v| *v = -*v);
        }
        let [a, b, c, d, e, _] = q;
        let det = a * c - b * b / 4.0;
        // Stationary point of Q: [2a b; b 2c] v = -[d; e]
        let cx = (-d * 2.0 * c + e * b) / (4.0 * det);
        let cy = (-e * 2.0 * a + d * b) / (4.0 * det);
        let center = Complex64::new(cx, cy);
        let q0 = eval(&q, center);
        let half_extent = ((-q0 * c / det).sqrt(), (-q0 * a / det).sqrt());
        Ok(Ellipse { q, center, half_extent })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    /// Half-widths of the axis-aligned bounding box.
    pub fn half_extent(&self) -> (f64, f64) {
        self.half_extent
    }

    pub fn level(&self, z: Complex64) -> f64 {
        eval(&self.q, z)
    }

    pub fn gradient(&self, z: Complex64) -> Complex64 {
        let [a, b, c, d, e, _] = self.q;
        Complex64::new(2.0 * a * z.re + b * z.im + d, b * z.re + 2.0 * c * z.im + e)
    }

    fn quad_form(&self, u: Complex64) -> f64 {
        let [a, b, c, ..] = self.q;
        a * u.re * u.re + b * u.re * u.im + c * u.im * u.im
    }

    /// Distance along the unit direction `u` from the interior point `z` to the boundary.
    pub fn ray_exit(&self, z: Complex64, u: Complex64) -> f64 {
        let q0 = self.level(z).min(0.0);
        let g = self.gradient(z);
        let g = g.re * u.re + g.im * u.im;
        let m = self.quad_form(u);
        let disc = (g * g - 4.0 * m * q0).max(0.0).sqrt();
        if g >= 0.0 {
            if g + disc == 0.0 {
                0.0
            } else {
                -2.0 * q0 / (g + disc)
            }
        } else {
            (-g + disc) / (2.0 * m)
        }
    }

    /// Signed distance estimate `Q/|∇Q|`; negative inside.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        let g = self.gradient(z).norm();
        if g == 0.0 {
            return self.level(z).signum() * f64::INFINITY;
        }
        self.level(z) / g
    }
}

fn eval(q: &[f64; 6], z: Complex64) -> f64 {
    let (x, y) = (z.re, z.im);
    q[0] * x * x + q[1] * x * y + q[2] * y * y + q[3] * x + q[4] * y + q[5]
}

#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    UnitDisk,
    Ellipse(Ellipse),
    /// The whole plane; hosts solutions on unbounded conic regions. Area
    /// operators are undefined here.
    Plane,
}

/// Points within this distance outside the boundary still count as closed-domain points.
pub const BOUNDARY_SLACK: f64 = 1e-9;

impl Region {
    pub fn from_conic(conic: &Conic) -> Result<Self, QuadError> {
        Ellipse::from_conic(conic).map(Region::Ellipse)
    }

    pub fn signed_distance(&self, z: Complex64) -> f64 {
        match self {
            Region::UnitDisk => z.norm() - 1.0,
            Region::Ellipse(e) => e.signed_distance(z),
            Region::Plane => f64::NEG_INFINITY,
        }
    }

    /// Closed-domain membership with a small slack for rounded boundary points.
    pub fn contains(&self, z: Complex64) -> bool {
        self.signed_distance(z) <= BOUNDARY_SLACK
    }

    pub fn ray_exit(&self, z: Complex64, u: Complex64) -> f64 {
        match self {
            Region::UnitDisk => {
                let c = z.re * u.re + z.im * u.im;
                let s = (1.0 - z.norm_sqr()).max(0.0);
                let disc = (c * c + s).sqrt();
                // Stable root selection, as in the ellipse case.
                if c <= 0.0 {
                    disc - c
                } else if c + disc == 0.0 {
                    0.0
                } else {
                    s / (c + disc)
                }
            }
            Region::Ellipse(e) => e.ray_exit(z, u),
            Region::Plane => f64::INFINITY,
        }
    }

    /// Direction of the outward normal of the nearest level set, or `1` at the center.
    pub fn outward_direction(&self, z: Complex64) -> Complex64 {
        let g = match self {
            Region::UnitDisk | Region::Plane => z,
            Region::Ellipse(e) => e.gradient(z),
        };
        let n = g.norm();
        if n < 1e-300 {
            Complex64::new(1.0, 0.0)
        } else {
            g / n
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, Region::Plane)
    }

    /// `(x_min, x_max, y_min, y_max)`; the plane reports the nominal window `[-1, 1]²`.
    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match self {
            Region::UnitDisk | Region::Plane => (-1.0, 1.0, -1.0, 1.0),
            Region::Ellipse(e) => {
                let (hx, hy) = e.half_extent;
                let c = e.center;
                (c.re - hx, c.re + hx, c.im - hy, c.im + hy)
            }
        }
    }
}
