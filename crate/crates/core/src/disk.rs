//! Dirichlet problems of order `n` on the unit disk: solvability conditions,
//! integral-formula solutions, ill-posedness witnesses and the bicomplex
//! reductions to pairs of complex problems.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::bicomplex::{bicomplexify, Bicomplex};
use crate::integral::{
    cauchy_samples, poisson_bicomplex, AreaQuad, BcScalarField, BcTrigPoly, BoundaryKernel, BoundaryNodes, QuadError,
    Region, ScalarField, TrigPoly,
};
use crate::representations::{bc_join_solutions, ExpFactor, Provenance, SolutionField};
use crate::verify::{default_step, iterated_at, iterated_residual, ResidualReport, SampleGrid, VerifyError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiskError {
    #[error("order must be at least {min}, got {found}")]
    InvalidOrder { min: u32, found: u32 },
    #[error("expected {expected} boundary data functions, got {found}")]
    GammaCount { expected: usize, found: usize },
    #[error("a coefficient A together with a nonzero right-hand side f has no representation formula")]
    MixedProblem,
    #[error("sample point {0} is not inside the open unit disk")]
    SampleOutsideDisk(Complex64),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// Quadrature settings for disk problems.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadParams {
    pub boundary_nodes: usize,
    pub area_grid: usize,
    pub tol: f64,
}

impl Default for QuadParams {
    fn default() -> Self {
        QuadParams { boundary_nodes: 1024, area_grid: 256, tol: 1e-6 }
    }
}

impl QuadParams {
    pub fn nodes(&self) -> Result<BoundaryNodes, QuadError> {
        BoundaryNodes::new(self.boundary_nodes)
    }

    pub fn area(&self) -> Result<AreaQuad, QuadError> {
        AreaQuad::polar(self.area_grid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Poly,
    Hoiv,
    BcPoly,
    BcHoiv,
}

/// `∂̄^n w = f` (or `(∂̄ − A)^n w = 0`) with `(∂̄ − A)^k w = γ_k` on the unit circle.
#[derive(Clone, Debug)]
pub struct DiskProblem {
    n: u32,
    a: Option<ScalarField>,
    f: ScalarField,
    gammas: Vec<TrigPoly>,
}

impl DiskProblem {
    /// Polyanalytic problem with right-hand side `f`.
    pub fn poly(gammas: Vec<TrigPoly>, f: ScalarField) -> Result<Self, DiskError> {
        Self::new(gammas, None, f)
    }

    /// Homogeneous higher-order iterated Vekua problem with coefficient `A`.
    pub fn hoiv(gammas: Vec<TrigPoly>, a: ScalarField) -> Result<Self, DiskError> {
        Self::new(gammas, Some(a), ScalarField::zero())
    }

    pub fn new(gammas: Vec<TrigPoly>, a: Option<ScalarField>, f: ScalarField) -> Result<Self, DiskError> {
        let n = gammas.len() as u32;
        if n == 0 {
            return Err(DiskError::InvalidOrder { min: 1, found: 0 });
        }
        let a = a.filter(|a| !a.is_identically_zero());
        if a.is_some() && !f.is_identically_zero() {
            return Err(DiskError::MixedProblem);
        }
        Ok(DiskProblem { n, a, f, gammas })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn gammas(&self) -> &[TrigPoly] {
        &self.gammas
    }

    pub fn coefficient(&self) -> Option<&ScalarField> {
        self.a.as_ref()
    }

    pub fn rhs(&self) -> &ScalarField {
        &self.f
    }

    pub fn variant(&self) -> Variant {
        if self.a.is_some() {
            Variant::Hoiv
        } else {
            Variant::Poly
        }
    }
}

/// Bicomplex problem with the bicomplex operator `∂̄ = ½(∂x + j∂y)`.
#[derive(Clone, Debug)]
pub struct BcDiskProblem {
    n: u32,
    a: Option<BcScalarField>,
    f: BcScalarField,
    gammas: Vec<BcTrigPoly>,
}

impl BcDiskProblem {
    pub fn new(gammas: Vec<BcTrigPoly>, a: Option<BcScalarField>, f: BcScalarField) -> Result<Self, DiskError> {
        let n = gammas.len() as u32;
        if n == 0 {
            return Err(DiskError::InvalidOrder { min: 1, found: 0 });
        }
        let a = a.filter(|a| !a.is_identically_zero());
        if a.is_some() && !f.is_identically_zero() {
            return Err(DiskError::MixedProblem);
        }
        Ok(BcDiskProblem { n, a, f, gammas })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn gammas(&self) -> &[BcTrigPoly] {
        &self.gammas
    }

    pub fn variant(&self) -> Variant {
        if self.a.is_some() {
            Variant::BcHoiv
        } else {
            Variant::BcPoly
        }
    }

    /// The two complex problems solved by `(w+)*` and `w−`.
    ///
    /// The plus component satisfies a `∂/∂z` equation; conjugating it turns its
    /// data into `((γ_k+)*, (A+)*, (f+)*)`.
    pub fn split(&self) -> (DiskProblem, DiskProblem) {
        let (mut gp, mut gm) = (Vec::new(), Vec::new());
        for g in &self.gammas {
            let (p, m) = g.split();
            gp.push(p.conj_on_circle());
            gm.push(m);
        }
        let plus =
            DiskProblem { n: self.n, a: self.a.as_ref().map(|a| a.plus_conj()), f: self.f.plus_conj(), gammas: gp };
        let minus = DiskProblem { n: self.n, a: self.a.as_ref().map(|a| a.minus()), f: self.f.minus(), gammas: gm };
        (plus, minus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Solvable,
    NotSolvable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Solvable => "solvable",
            Verdict::NotSolvable => "not-solvable",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolvabilityReport {
    /// `maxima[k] = max_z |cond_k(z)|`.
    pub maxima: Vec<f64>,
    /// `values[k][i] = cond_k(sample_points[i])`.
    pub values: Vec<Vec<Complex64>>,
    pub sample_points: Vec<Complex64>,
    pub tol: f64,
    pub verdict: Verdict,
}

impl SolvabilityReport {
    pub fn max(&self) -> f64 {
        self.maxima.iter().copied().fold(0.0, f64::max)
    }
}

/// Radii `{0.3, 0.6, 0.9}` times seven angles, plus the origin (22 points).
pub fn standard_samples() -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    for (i, r) in [0.3, 0.6, 0.9].into_iter().enumerate() {
        for k in 0..7 {
            // Each ring is rotated so no two rings share a ray.
            let th = 2.0 * PI * (k as f64 + 0.25 * (i as f64 + 1.0)) / 7.0;
            pts.push(Complex64::from_polar(r, th));
        }
    }
    pts
}

fn parity_sign(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Boundary samples and quadratures shared by the checker and the solver.
struct Prepared {
    n: u32,
    nodes: BoundaryNodes,
    /// `γ_λ(ζ_j)·e^{−T[A](ζ_j)}`.
    weighted: Vec<Vec<Complex64>>,
    f: ScalarField,
    quad: AreaQuad,
    exp: Option<Arc<ExpFactor>>,
}

impl Prepared {
    fn new(p: &DiskProblem, params: &QuadParams) -> Result<Self, DiskError> {
        let nodes = params.nodes()?;
        let quad = params.area()?;
        let exp = p.a.clone().map(|a| ExpFactor::new(a, Region::UnitDisk, quad.clone()));
        let weights: Vec<Complex64> = match &exp {
            Some(e) => nodes.points().par_iter().map(|&z| e.exp_neg(z)).collect(),
            None => vec![Complex64::new(1.0, 0.0); nodes.len()],
        };
        let weighted =
            p.gammas.iter().map(|g| nodes.sample(g).into_iter().zip(&weights).map(|(v, w)| v * w).collect()).collect();
        Ok(Prepared { n: p.n, nodes, weighted, f: p.f.clone(), quad, exp })
    }

    /// `Σ_λ (−1)^λ/λ! (1/2πi)∮ γ_λ e^{−T[A]} conj(ζ−z)^λ/(ζ−z) dζ`.
    fn boundary_part(&self, z: Complex64) -> Complex64 {
        self.weighted
            .iter()
            .enumerate()
            .map(|(l, vals)| {
                let l = l as u32;
                let sign = parity_sign(l);
                cauchy_samples(vals, BoundaryKernel::Cauchy { power: l }, z, &self.nodes) * (sign / factorial(l))
            })
            .sum()
    }

    /// `(−1)^{n+1}/(n−1)! · T[f·conj(ζ−z)^{n−1}](z)`.
    fn area_part(&self, z: Complex64) -> Complex64 {
        if self.f.is_identically_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let p = self.n - 1;
        let s: Complex64 = self
            .quad
            .t_nodes(&Region::UnitDisk, z)
            .into_iter()
            .map(|(q, w)| w * self.f.eval(q) * (q - z).conj().powu(p))
            .sum();
        let sign = -parity_sign(self.n);
        s * (sign / factorial(p))
    }

    fn solution(&self, z: Complex64) -> Complex64 {
        let phi = self.boundary_part(z) + self.area_part(z);
        match &self.exp {
            Some(e) => e.exp(z) * phi,
            None => phi,
        }
    }

    /// `cond_k(z)`; the problem is solvable iff all of these vanish on the disk.
    fn condition(&self, k: u32, z: Complex64) -> Complex64 {
        let zb = z.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        for l in k..self.n {
            let p = l - k;
            let sign = parity_sign(p);
            let v = cauchy_samples(&self.weighted[l as usize], BoundaryKernel::Reflected { power: p }, z, &self.nodes);
            acc += v * (sign / factorial(p));
        }
        acc *= zb;
        if !self.f.is_identically_zero() {
            let p = self.n - 1 - k;
            let area = self.quad.disk_area_integral(|q| self.f.eval(q) * (q - z).conj().powu(p) / (1.0 - zb * q));
            let sign = parity_sign(self.n - k);
            acc += area * zb * (sign / (PI * factorial(p)));
        }
        acc
    }

    fn report(&self, samples: &[Complex64], tol: f64) -> SolvabilityReport {
        let values: Vec<Vec<Complex64>> =
            (0..self.n).map(|k| samples.par_iter().map(|&z| self.condition(k, z)).collect()).collect();
        let maxima: Vec<f64> = values.iter().map(|v| v.iter().map(|c| c.norm()).fold(0.0, f64::max)).collect();
        let ok = maxima.iter().all(|&m| m <= tol);
        SolvabilityReport {
            maxima,
            values,
            sample_points: samples.to_vec(),
            tol,
            verdict: if ok { Verdict::Solvable } else { Verdict::NotSolvable },
        }
    }
}

fn check_samples(samples: &[Complex64]) -> Result<(), DiskError> {
    match samples.iter().find(|z| z.norm() >= 1.0 || z.is_nan()) {
        Some(&z) => Err(DiskError::SampleOutsideDisk(z)),
        None => Ok(()),
    }
}

/// Evaluates every solvability condition at the sample points.
///
/// Works for both the polyanalytic and the iterated Vekua variants; the latter
/// weights the boundary data by `e^{−T[A]}`.
pub fn check_solvability(
    p: &DiskProblem,
    samples: &[Complex64],
    params: &QuadParams,
) -> Result<SolvabilityReport, DiskError> {
    check_samples(samples)?;
    Ok(Prepared::new(p, params)?.report(samples, params.tol))
}

pub fn check_poly_solvability(
    p: &DiskProblem,
    samples: &[Complex64],
    params: &QuadParams,
) -> Result<SolvabilityReport, DiskError> {
    check_solvability(p, samples, params)
}

pub fn check_hoiv_solvability(
    p: &DiskProblem,
    samples: &[Complex64],
    params: &QuadParams,
) -> Result<SolvabilityReport, DiskError> {
    check_solvability(p, samples, params)
}

/// The integral-formula solution; does not re-check solvability.
pub fn solve_disk(p: &DiskProblem, params: &QuadParams) -> Result<SolutionField, DiskError> {
    let prepared = Arc::new(Prepared::new(p, params)?);
    let n = p.n;
    Ok(SolutionField::new(move |z| prepared.solution(z), Provenance::IntegralFormula, n)
        .with_coefficient(p.a.clone())
        .with_interior_only(true))
}

pub fn solve_poly_disk(p: &DiskProblem, params: &QuadParams) -> Result<SolutionField, DiskError> {
    solve_disk(p, params)
}

pub fn solve_hoiv_disk(p: &DiskProblem, params: &QuadParams) -> Result<SolutionField, DiskError> {
    solve_disk(p, params)
}

/// `e^{T[A]}·(1 − zz̄)^{n−1}·z^k`: vanishes on the circle and solves the homogeneous equation.
pub fn witness_family(n: u32, k: u32, a: Option<ScalarField>, area_grid: usize) -> Result<SolutionField, DiskError> {
    if n < 2 {
        return Err(DiskError::InvalidOrder { min: 2, found: n });
    }
    let base = move |z: Complex64| (1.0 - z * z.conj()).powu(n - 1) * z.powu(k);
    let a = a.filter(|a| !a.is_identically_zero());
    Ok(match a {
        None => SolutionField::new(base, Provenance::Witness, n),
        Some(a) => {
            let e = ExpFactor::new(a.clone(), Region::UnitDisk, AreaQuad::polar(area_grid)?);
            SolutionField::new(move |z| e.exp(z) * base(z), Provenance::Witness, n).with_coefficient(Some(a))
        }
    })
}

/// Numerical rank of a set of sampled functions.
#[derive(Clone, Debug, PartialEq)]
pub struct GramCertificate {
    pub rank: usize,
    /// Singular values of the sample matrix, descending.
    pub singular_values: Vec<f64>,
    pub rel_tol: f64,
}

/// Rank of the Gram matrix `M^H M` of sample columns, via the singular values of `M`.
pub fn gram_rank(columns: &[Vec<Complex64>], rel_tol: f64) -> GramCertificate {
    let cols = columns.len();
    let rows = columns.first().map_or(0, Vec::len);
    if cols == 0 || rows == 0 {
        return GramCertificate { rank: 0, singular_values: Vec::new(), rel_tol };
    }
    let m = DMatrix::from_fn(rows, cols, |i, j| columns[j][i]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let top = sv[0];
    let rank = sv.iter().filter(|&&s| s > rel_tol * top).count();
    GramCertificate { rank, singular_values: sv, rel_tol }
}

/// Sample points for Gram certificates: a polar grid strictly inside the disk.
pub fn gram_samples() -> Vec<Complex64> {
    SampleGrid::polar(0.9, 6, 12).points
}

/// Witnesses `k = 0..count` of order `n` and their Gram rank.
pub fn witness_gram(
    n: u32,
    count: u32,
    a: Option<ScalarField>,
    area_grid: usize,
) -> Result<(Vec<SolutionField>, GramCertificate), DiskError> {
    let fields = (0..count).map(|k| witness_family(n, k, a.clone(), area_grid)).collect::<Result<Vec<_>, _>>()?;
    let pts = gram_samples();
    let columns: Vec<Vec<Complex64>> = fields.iter().map(|f| pts.par_iter().map(|&z| f.eval(z)).collect()).collect();
    Ok((fields, gram_rank(&columns, 1e-10)))
}

/// Reports for the plus (conjugated) and minus streams.
#[derive(Clone, Debug, PartialEq)]
pub struct BcSolvabilityReport {
    pub plus: SolvabilityReport,
    pub minus: SolvabilityReport,
    pub verdict: Verdict,
}

pub fn bc_check_solvability(
    p: &BcDiskProblem,
    samples: &[Complex64],
    params: &QuadParams,
) -> Result<BcSolvabilityReport, DiskError> {
    let (pp, pm) = p.split();
    let plus = check_solvability(&pp, samples, params)?;
    let minus = check_solvability(&pm, samples, params)?;
    let verdict = if plus.verdict == Verdict::Solvable && minus.verdict == Verdict::Solvable {
        Verdict::Solvable
    } else {
        Verdict::NotSolvable
    };
    Ok(BcSolvabilityReport { plus, minus, verdict })
}

/// `p+·(w_plus)* + p−·w_minus` from the two complex solutions.
pub fn bc_solve_disk(p: &BcDiskProblem, params: &QuadParams) -> Result<SolutionField<Bicomplex>, DiskError> {
    let (pp, pm) = p.split();
    let wp = solve_disk(&pp, params)?;
    let wm = solve_disk(&pm, params)?;
    Ok(bc_join_solutions(&wp, &wm))
}

/// `p+·((1−zz̄)^{n−1}z^j)* + p−·(1−zz̄)^{n−1}z^{j+1}`.
pub fn bc_witness(n: u32, j: u32) -> Result<SolutionField<Bicomplex>, DiskError> {
    let f1 = witness_family(n, j, None, 16)?;
    let f2 = witness_family(n, j + 1, None, 16)?;
    Ok(bc_join_solutions(&f1, &f2))
}

/// Componentwise Poisson integral of bicomplex boundary data.
pub fn bc_poisson_solve(g: &BcTrigPoly, nodes: BoundaryNodes) -> SolutionField<Bicomplex> {
    let g = g.clone();
    SolutionField::new(
        move |z| {
            let r = z.norm();
            if r >= 1.0 - 1e-12 {
                return g.eval_on_circle(z / r);
            }
            poisson_bicomplex(&g, r, z.arg(), &nodes)
        },
        Provenance::IntegralFormula,
        1,
    )
    .with_interior_only(true)
}

/// The bicomplex family `Σ_{k=1}^{n−1} (ẑ*)^{n−1} ẑ^j (1 − (ẑẑ*)^{n−k})` as printed
/// in the literature. Shipped for inspection only; see [`check_example_family`].
pub fn bc_example_family(n: u32, j: u32) -> SolutionField<Bicomplex> {
    SolutionField::new(
        move |z| {
            let zh = bicomplexify(z);
            let zs = zh.conj();
            let r = zh * zs;
            (1..n).map(|k| zs.powu(n - 1) * zh.powu(j) * (Bicomplex::ONE - r.powu(n - k))).sum()
        },
        Provenance::Constructed,
        n,
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleFamilyReport {
    pub n: u32,
    pub j: u32,
    pub residual: ResidualReport,
    pub boundary_max: f64,
}

/// Measures the `n`-fold bicomplex `∂̄` residual and boundary values of the printed family.
pub fn check_example_family(n: u32, j: u32) -> Result<ExampleFamilyReport, DiskError> {
    let w = bc_example_family(n, j);
    let h = default_step(n);
    let grid = SampleGrid::interior(&Region::UnitDisk, 8, n, h);
    let residual = iterated_residual(&w, None, None, n, &grid, h)?;
    let boundary_max =
        (0..256).map(|k| w.eval(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 256.0)).norm()).fold(0.0, f64::max);
    Ok(ExampleFamilyReport { n, j, residual, boundary_max })
}

/// Boundary traces `γ_k = (∂̄ − A)^k w` of a manufactured solution, `k < n`.
///
/// Traces with `k ≥ 1` are computed by nested finite differences at points
/// just inside the circle and extrapolated radially to `|z| = 1`, then
/// projected onto Fourier modes `|m| ≤ max_mode`.
pub fn manufacture_traces(
    w: &SolutionField,
    a: Option<&ScalarField>,
    n: u32,
    n_samples: usize,
    max_mode: u32,
) -> Result<Vec<TrigPoly>, DiskError> {
    let circle: Vec<Complex64> =
        (0..n_samples).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n_samples as f64)).collect();
    let eval = |p: Complex64| w.eval(p);
    (0..n)
        .map(|k| {
            let samples: Vec<Complex64> = if k == 0 && !w.is_interior_only() {
                circle.iter().map(|&b| w.eval(b)).collect()
            } else {
                let h = default_step(k.max(1));
                let reach = 2.0 * k as f64 * h * std::f64::consts::SQRT_2;
                let d0 = (1.5 * reach).max(0.03);
                let offsets: Vec<f64> = (0..6).map(|m| d0 + 0.03 * m as f64).collect();
                circle
                    .par_iter()
                    .map(|&b| {
                        let vals = offsets
                            .iter()
                            .map(|&d| iterated_at(&eval, w.region(), a, None, k, b * (1.0 - d), h))
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok(lagrange_at_zero(&offsets, &vals))
                    })
                    .collect::<Result<_, VerifyError>>()?
            };
            Ok(TrigPoly::project(&samples, max_mode, 1e-13))
        })
        .collect()
}

fn lagrange_at_zero(x: &[f64], y: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, &xm) in x.iter().enumerate() {
        let mut w = 1.0;
        for (k, &xk) in x.iter().enumerate() {
            if k != m {
                w *= xk / (xk - xm);
            }
        }
        acc += y[m] * w;
    }
    acc
}
