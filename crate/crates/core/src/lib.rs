//! Dirichlet problems for polyanalytic, higher-order iterated Vekua and
//! bicomplex equations on the unit disk and on conics.

pub mod bicomplex;
pub mod conic;
pub mod disk;
pub mod integral;
pub mod poly;
pub mod representations;
pub mod verify;

pub use bicomplex::{bicomplexify, Bicomplex};
pub use conic::{BianalyticSolution, ConicError};
pub use disk::{BcDiskProblem, DiskError, DiskProblem, QuadParams, SolvabilityReport, Verdict};
pub use integral::{BcScalarField, BcTrigPoly, FieldValue, Region, ScalarField, TrigPoly};
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use poly::{BivarPoly, Conic, ConicClass, FloatPoly, Frame, GaussRat};
pub use representations::{BcSolutionField, Provenance, SolutionField};
pub use verify::ResidualReport;
