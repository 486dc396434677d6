//! Dirichlet problems on conics: exact bianalytic solutions, Vekua–Bitsadze
//! solutions `e^{T[A]}·b`, and their bicomplex counterparts.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{Matrix2, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

use crate::bicomplex::Bicomplex;
use crate::integral::{AreaQuad, BcScalarField, QuadError, Region, ScalarField};
use crate::poly::linalg::solve;
use crate::poly::{graded_monomials, BivarPoly, Conic, ConicClass, Field, Frame, GaussRat};
use crate::representations::{bc_join_solutions, ExpFactor, Provenance, SolutionField};

/// How far beyond `deg P` the ansatz degree may grow.
pub const DEGREE_ESCALATION: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConicError {
    #[error(
        "circumference boundaries are excluded: {kernel} is a nonzero bianalytic function vanishing on the circle"
    )]
    CircumferenceNotAllowed { kernel: BivarPoly<GaussRat> },
    #[error("degenerate conic (zero matrix determinant)")]
    DegenerateConic,
    #[error("conic has no real points")]
    EmptyLocus,
    #[error("no bianalytic solution with z-degree at most {cap}")]
    DegreeCapExceeded { cap: u32 },
    #[error("bianalytic solution is not unique ({kernel_dim}-dimensional kernel)")]
    NonUnique { kernel_dim: usize },
    #[error("unsupported domain: {0} interiors are unbounded or empty")]
    UnsupportedDomain(ConicClass),
}

impl From<QuadError> for ConicError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::UnsupportedDomain(c) => ConicError::UnsupportedDomain(c),
            other => unreachable!("conic solvers construct valid quadratures: {other}"),
        }
    }
}

/// `w = h0(z) + z̄·h1(z)` with `w − P = Q·R` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct BianalyticSolution {
    pub h0: BivarPoly<GaussRat>,
    pub h1: BivarPoly<GaussRat>,
    pub cofactor: BivarPoly<GaussRat>,
    pub conic: Conic,
    pub target: BivarPoly<GaussRat>,
    /// Ansatz degree at which the solution was found.
    pub degree: u32,
    /// Dimension of the homogeneous solution space of the final system; zero certifies uniqueness.
    pub kernel_dim: usize,
}

impl BianalyticSolution {
    /// `h0 + z̄·h1` in the `(z, z̄)` frame.
    pub fn w(&self) -> BivarPoly<GaussRat> {
        &self.h0 + &(&BivarPoly::zbar() * &self.h1)
    }

    /// `h0 + z̄h1 − P − Q·R`, identically zero for a valid solution.
    pub fn reexpansion_residual(&self) -> BivarPoly<GaussRat> {
        let q = self.conic.poly_xy().to_zzbar();
        &(&self.w() - &self.target.to_zzbar()) - &(&q * &self.cofactor)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.h0.eval(z) + z.conj() * self.h1.eval(z)
    }

    /// The solution as a field on the region enclosed by the conic.
    pub fn to_field(&self) -> SolutionField {
        let w = self.w().to_float();
        SolutionField::new(move |z| w.eval(z), Provenance::Constructed, 2).with_region(conic_region(&self.conic))
    }
}

/// Ellipse interiors are bounded; parabola and hyperbola solutions live on the plane.
pub fn conic_region(q: &Conic) -> Region {
    Region::from_conic(q).unwrap_or(Region::Plane)
}

fn check_class(q: &Conic) -> Result<(), ConicError> {
    match q.class() {
        ConicClass::Degenerate => Err(ConicError::DegenerateConic),
        ConicClass::EmptyLocus => Err(ConicError::EmptyLocus),
        _ => Ok(()),
    }
}

struct System {
    /// Solution vector restricted to `(h0, h1, R)`, if consistent.
    parts: Option<(BivarPoly<GaussRat>, BivarPoly<GaussRat>, BivarPoly<GaussRat>)>,
    /// `h0 + z̄h1` parts of the homogeneous solutions.
    kernel: Vec<BivarPoly<GaussRat>>,
}

/// Solves `h0 + z̄h1 − Q·R = P` with `deg_z h0, h1 ≤ n` and `deg R ≤ max(deg P, n+1) − 2`.
fn assemble_and_solve(q: &Conic, p: &BivarPoly<GaussRat>, n: u32) -> System {
    let p = p.to_zzbar();
    let qz = q.poly_xy().to_zzbar();
    let deg_p = p.total_degree().unwrap_or(0);
    let d_r = deg_p.max(n + 1) as i64 - 2;
    let r_monomials = if d_r >= 0 { graded_monomials(d_r as u32) } else { Vec::new() };
    let h_cols = (n + 1) as usize;
    let cols = 2 * h_cols + r_monomials.len();

    let mut rows: BTreeMap<(u32, u32), Vec<GaussRat>> = BTreeMap::new();
    let mut put = |key: (u32, u32), col: usize, v: GaussRat| {
        let row = rows.entry(key).or_insert_with(|| vec![GaussRat::zero(); cols]);
        row[col] = row[col].clone() + v;
    };
    for i in 0..=n {
        put((i, 0), i as usize, GaussRat::one());
        put((i, 1), h_cols + i as usize, GaussRat::one());
    }
    for (c, &(a, b)) in r_monomials.iter().enumerate() {
        for (&(qi, qj), qc) in qz.terms() {
            put((a + qi, b + qj), 2 * h_cols + c, -qc.clone());
        }
    }
    for (&k, _) in p.terms() {
        rows.entry(k).or_insert_with(|| vec![GaussRat::zero(); cols]);
    }
    let (matrix, rhs): (Vec<_>, Vec<_>) = rows.into_iter().map(|(k, row)| (row, p.coeff(k.0, k.1))).unzip();
    let sol = solve(matrix, rhs, cols);

    let split = |u: &[GaussRat]| {
        let h0 = BivarPoly::from_terms((0..=n).map(|i| ((i, 0), u[i as usize].clone())), Frame::ZZbar);
        let h1 = BivarPoly::from_terms((0..=n).map(|i| ((i, 0), u[h_cols + i as usize].clone())), Frame::ZZbar);
        let r = BivarPoly::from_terms(
            r_monomials.iter().enumerate().map(|(c, &m)| (m, u[2 * h_cols + c].clone())),
            Frame::ZZbar,
        );
        (h0, h1, r)
    };
    let kernel = sol
        .kernel
        .iter()
        .map(|v| {
            let (h0, h1, _) = split(v);
            &h0 + &(&BivarPoly::zbar() * &h1)
        })
        .collect();
    System { parts: sol.particular.as_deref().map(split), kernel }
}

/// The unique bianalytic polynomial equal to `P` on the conic `Q = 0`.
///
/// The ansatz degree grows from `deg P` to `deg P + 4`.
pub fn solve_bianalytic_conic(q: &Conic, p: &BivarPoly<GaussRat>) -> Result<BianalyticSolution, ConicError> {
    check_class(q)?;
    let deg_p = p.total_degree().unwrap_or(0);
    if q.class() == ConicClass::Circumference {
        let sys = assemble_and_solve(q, p, deg_p.max(1));
        let kernel = sys.kernel.into_iter().next().expect("circles carry a bianalytic multiple of Q");
        return Err(ConicError::CircumferenceNotAllowed { kernel });
    }
    let cap = deg_p + DEGREE_ESCALATION;
    for n in deg_p..=cap {
        let sys = assemble_and_solve(q, p, n);
        if let Some((h0, h1, cofactor)) = sys.parts {
            if !sys.kernel.is_empty() {
                return Err(ConicError::NonUnique { kernel_dim: sys.kernel.len() });
            }
            return Ok(BianalyticSolution {
                h0,
                h1,
                cofactor,
                conic: q.clone(),
                target: p.clone(),
                degree: n,
                kernel_dim: 0,
            });
        }
    }
    Err(ConicError::DegreeCapExceeded { cap })
}

/// `w = e^{T[A]}·b` with `b` the bianalytic solution for `P`.
#[derive(Clone, Debug)]
pub struct ConicVekuaSolution {
    pub field: SolutionField,
    pub bianalytic: BianalyticSolution,
}

/// Solves `(∂̄ − A)² w = 0` in the region enclosed by `q` with `w = e^{T[A]}P` on the conic.
///
/// A zero coefficient is accepted on every admissible conic; otherwise the
/// region must be a bounded ellipse interior.
pub fn solve_vekua_bitsadze_conic(
    q: &Conic,
    p: &BivarPoly<GaussRat>,
    a: &ScalarField,
    quad: &AreaQuad,
) -> Result<ConicVekuaSolution, ConicError> {
    check_class(q)?;
    let region = if a.is_identically_zero() { None } else { Some(Region::from_conic(q)?) };
    let bianalytic = solve_bianalytic_conic(q, p)?;
    let field = match region {
        None => bianalytic.to_field(),
        Some(region) => {
            let w = bianalytic.w().to_float();
            let e = ExpFactor::new(a.clone(), region.clone(), quad.clone());
            SolutionField::new(move |z| e.exp(z) * w.eval(z), Provenance::ExpTimesPoly, 2)
                .with_region(region)
                .with_coefficient(Some(a.clone()))
        }
    };
    Ok(ConicVekuaSolution { field, bianalytic })
}

/// Polynomial in `(x, y)` with bicomplex coefficients `sc + j·vec`.
#[derive(Clone, Debug, PartialEq)]
pub struct BcBivarPoly {
    pub sc: BivarPoly<GaussRat>,
    pub vec: BivarPoly<GaussRat>,
}

impl BcBivarPoly {
    pub fn new(sc: BivarPoly<GaussRat>, vec: BivarPoly<GaussRat>) -> Self {
        BcBivarPoly { sc: sc.to_xy(), vec: vec.to_xy() }
    }

    pub fn scalar(sc: BivarPoly<GaussRat>) -> Self {
        Self::new(sc, BivarPoly::zero(Frame::XY))
    }

    /// `p+·plus + p−·minus`.
    pub fn from_components(plus: &BivarPoly<GaussRat>, minus: &BivarPoly<GaussRat>) -> Self {
        let half = GaussRat::from_ratio(1, 2);
        let i_half = GaussRat::imag_unit() * half.clone();
        let (plus, minus) = (plus.to_xy(), minus.to_xy());
        BcBivarPoly { sc: (&plus + &minus).scale(&half), vec: (&plus - &minus).scale(&i_half) }
    }

    /// Idempotent components `(P+, P−)`.
    pub fn split(&self) -> (BivarPoly<GaussRat>, BivarPoly<GaussRat>) {
        let iv = self.vec.scale(&GaussRat::imag_unit());
        (&self.sc - &iv, &self.sc + &iv)
    }

    pub fn eval(&self, z: Complex64) -> Bicomplex {
        Bicomplex::new(self.sc.eval(z), self.vec.eval(z))
    }
}

/// Exact solutions of the two complex problems behind a bicomplex bianalytic problem.
#[derive(Clone, Debug, PartialEq)]
pub struct BcBianalyticSolution {
    /// Solution for `(P+)*`; enters conjugated.
    pub plus: BianalyticSolution,
    pub minus: BianalyticSolution,
}

impl BcBianalyticSolution {
    pub fn eval(&self, z: Complex64) -> Bicomplex {
        Bicomplex::join(self.plus.eval(z).conj(), self.minus.eval(z))
    }

    pub fn to_field(&self) -> SolutionField<Bicomplex> {
        bc_join_solutions(&self.plus.to_field(), &self.minus.to_field())
    }
}

pub fn bc_solve_bianalytic_conic(q: &Conic, p: &BcBivarPoly) -> Result<BcBianalyticSolution, ConicError> {
    let (pp, pm) = p.split();
    let plus = solve_bianalytic_conic(q, &pp.conj_fn())?;
    let minus = solve_bianalytic_conic(q, &pm)?;
    Ok(BcBianalyticSolution { plus, minus })
}

/// Both constructions of the bicomplex Vekua–Bitsadze solution.
#[derive(Clone, Debug)]
pub struct BcConicVekuaSolution {
    /// Join of two complex solutions with coefficients `((A+)*, A−)`.
    pub split_path: SolutionField<Bicomplex>,
    /// `e^{T^B[A]}·b` with `b` the bicomplex bianalytic solution.
    pub exp_path: SolutionField<Bicomplex>,
    pub bianalytic: BcBianalyticSolution,
}

impl BcConicVekuaSolution {
    /// `sup |split_path − exp_path|` over the given points.
    pub fn path_difference(&self, points: &[Complex64]) -> f64 {
        points.iter().map(|&z| (self.split_path.eval(z) - self.exp_path.eval(z)).norm()).fold(0.0, f64::max)
    }
}

pub fn bc_solve_vekua_bitsadze_conic(
    q: &Conic,
    p: &BcBivarPoly,
    a: &BcScalarField,
    quad: &AreaQuad,
) -> Result<BcConicVekuaSolution, ConicError> {
    check_class(q)?;
    let (pp, pm) = p.split();
    let plus = solve_vekua_bitsadze_conic(q, &pp.conj_fn(), &a.plus_conj(), quad)?;
    let minus = solve_vekua_bitsadze_conic(q, &pm, &a.minus(), quad)?;
    let split_path = bc_join_solutions(&plus.field, &minus.field);
    let bianalytic = BcBianalyticSolution { plus: plus.bianalytic, minus: minus.bianalytic };
    let exp_path = if a.is_identically_zero() {
        bianalytic.to_field()
    } else {
        let region = Region::from_conic(q)?;
        let e = ExpFactor::new(a.clone(), region.clone(), quad.clone());
        let b = bianalytic.clone();
        SolutionField::new(move |z| e.exp(z) * b.eval(z), Provenance::ExpTimesPoly, 2)
            .with_region(region)
            .with_coefficient(Some(a.clone()))
    };
    Ok(BcConicVekuaSolution { split_path, exp_path, bianalytic })
}

/// Real points on the conic: ellipses by angle, parabolas along the axis
/// normal, hyperbolas by a hyperbolic parameter on both branches.
pub fn conic_boundary_points(q: &Conic, n: usize) -> Vec<Complex64> {
    let [a, b, c, d, e, f] = q.coeffs_f64();
    let m = Matrix2::new(a, b / 2.0, b / 2.0, c);
    let eig = SymmetricEigen::new(m);
    let (l1, l2) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    let v1 = Complex64::new(eig.eigenvectors[(0, 0)], eig.eigenvectors[(1, 0)]);
    let v2 = Complex64::new(eig.eigenvectors[(0, 1)], eig.eigenvectors[(1, 1)]);
    let grad = Complex64::new(d, e);
    let dot = |u: Complex64, v: Complex64| u.re * v.re + u.im * v.im;
    match q.class() {
        ConicClass::Parabola => {
            // Axis direction u spans the kernel of M; p is perpendicular to it.
            let (u, p, lam) = if l1.abs() < l2.abs() { (v1, v2, l2) } else { (v2, v1, l1) };
            (0..n)
                .map(|k| {
                    let s = -2.0 + 4.0 * k as f64 / (n.max(2) - 1) as f64;
                    let tau = -(lam * s * s + dot(grad, p) * s + f) / dot(grad, u);
                    p * s + u * tau
                })
                .collect()
        }
        ConicClass::Ellipse | ConicClass::Circumference | ConicClass::Hyperbola => {
            let det = a * c - b * b / 4.0;
            let center = Complex64::new((-2.0 * c * d + b * e) / (4.0 * det), (-2.0 * a * e + b * d) / (4.0 * det));
            let kappa = -q.eval_f64(center.re, center.im);
            if q.class() == ConicClass::Hyperbola {
                // λ1 s² + λ2 t² = κ with λ1 λ2 < 0.
                let (vp, lp, vn, ln) = if l1 > 0.0 { (v1, l1, v2, l2) } else { (v2, l2, v1, l1) };
                let half = n / 2;
                (0..n)
                    .map(|k| {
                        let branch = if k < half { 1.0 } else { -1.0 };
                        let idx = if k < half { k } else { k - half };
                        let t = -1.5 + 3.0 * idx as f64 / (half.max(2) - 1) as f64;
                        if kappa > 0.0 {
                            center
                                + vp * (branch * (kappa / lp).sqrt() * t.cosh())
                                + vn * ((kappa / -ln).sqrt() * t.sinh())
                        } else {
                            center
                                + vp * ((-kappa / lp).sqrt() * t.sinh())
                                + vn * (branch * (kappa / ln).sqrt() * t.cosh())
                        }
                    })
                    .collect()
            } else {
                let (s1, s2) = if l1 > 0.0 {
                    ((kappa / l1).sqrt(), (kappa / l2).sqrt())
                } else {
                    ((-kappa / -l1).sqrt(), (-kappa / -l2).sqrt())
                };
                (0..n)
                    .map(|k| {
                        let t = 2.0 * PI * k as f64 / n as f64;
                        center + v1 * (s1 * t.cos()) + v2 * (s2 * t.sin())
                    })
                    .collect()
            }
        }
        ConicClass::Degenerate | ConicClass::EmptyLocus => Vec::new(),
    }
}

/// `sup |w − P|` over `n` points of the conic.
pub fn conic_boundary_mismatch(sol: &BianalyticSolution, n: usize) -> f64 {
    let p = sol.target.to_float();
    conic_boundary_points(&sol.conic, n).into_iter().map(|z| (sol.eval(z) - p.eval(z)).norm()).fold(0.0, f64::max)
}
