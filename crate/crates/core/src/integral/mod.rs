//! Area and boundary integral operators on the unit disk and ellipses.

mod area;
mod boundary;
mod field;
mod gauss;
mod region;
mod trig;

pub use area::{t_bicomplex, t_disk, t_domain, AreaQuad, AreaRule, MIN_GRID};
pub use boundary::{
    cauchy_boundary, cauchy_samples, poisson, poisson_bicomplex, poisson_kernel, BoundaryKernel, BoundaryNodes,
    MIN_BOUNDARY_NODES,
};
pub use field::{BcScalarField, FieldValue, ScalarField, Smoothness};
pub use gauss::GaussLegendre;
pub use region::{Ellipse, Region, BOUNDARY_SLACK};
pub use trig::{BcTrigPoly, TrigPoly};

use thiserror::Error;

use crate::poly::ConicClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("area quadrature needs n_grid >= 16, got {0}")]
    GridTooSmall(usize),
    #[error("boundary node count must be a power of two >= 64, got {0}")]
    InvalidNodeCount(usize),
    #[error("area integrals need a bounded domain; {0} interiors are unbounded or empty")]
    UnsupportedDomain(ConicClass),
}
