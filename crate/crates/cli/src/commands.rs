use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use vekua_core::conic::{
    bc_solve_bianalytic_conic, bc_solve_vekua_bitsadze_conic, conic_boundary_mismatch, conic_region,
    solve_bianalytic_conic, solve_vekua_bitsadze_conic, BcBivarPoly,
};
use vekua_core::disk::{
    bc_check_solvability, bc_poisson_solve, bc_solve_disk, check_solvability, solve_disk, standard_samples,
    witness_gram, BcSolvabilityReport,
};
use vekua_core::integral::{AreaQuad, BoundaryNodes};
use vekua_core::representations::{hoiv_from_holo, Provenance};
use vekua_core::verify::{
    bc_circle_samples, boundary_mismatch, boundary_mismatch_trig, default_step, iterated_residual, SampleGrid,
};
use vekua_core::{
    BcDiskProblem, BianalyticSolution, Complex64, DiskProblem, FieldValue, QuadParams, Region, ResidualReport,
    ScalarField, SolutionField, SolvabilityReport, Verdict,
};

use crate::error::Failure;
use crate::output::{finite, out_path, write_atomic, write_field, write_json, CsvValue};
use crate::problem::{Builtin, Coeff, ConicPayload, FieldSpec, Problem, VerifyPayload, WitnessPayload};
use crate::render::{pgm, read_channel, Channel};

const AREA_GRID: usize = 256;
const DEFAULT_VERIFY_TOL: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct Settings {
    pub out: PathBuf,
    pub grid: usize,
    pub nodes: usize,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    NotSolvable,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Solve,
    Check,
    Verify,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Solve => "solve",
            Mode::Check => "check",
            Mode::Verify => "verify",
        }
    }
}

/// Accumulates report.json content and written artifacts.
struct Run<'a> {
    settings: &'a Settings,
    report: serde_json::Map<String, Value>,
    artifacts: Vec<String>,
}

impl<'a> Run<'a> {
    fn new(settings: &'a Settings, mode: Mode, kind: &str) -> Result<Self, Failure> {
        if settings.grid == 0 {
            return Err(Failure::new("usage", "--grid must be positive"));
        }
        if let Some(t) = settings.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(Failure::new("usage", format!("--tol must be positive, got {t}")));
            }
        }
        let mut report = serde_json::Map::new();
        report.insert("command".into(), json!(mode.name()));
        report.insert("kind".into(), json!(kind));
        report.insert(
            "settings".into(),
            json!({ "grid": settings.grid, "nodes": settings.nodes, "tol": settings.tol, "seed": settings.seed }),
        );
        Ok(Run { settings, report, artifacts: Vec::new() })
    }

    fn set(&mut self, key: &str, v: Value) {
        self.report.insert(key.into(), v);
    }

    fn params(&self) -> QuadParams {
        let d = QuadParams::default();
        QuadParams {
            boundary_nodes: self.settings.nodes,
            area_grid: AREA_GRID,
            tol: self.settings.tol.unwrap_or(d.tol),
        }
    }

    fn verify_tol(&self) -> f64 {
        self.settings.tol.unwrap_or(DEFAULT_VERIFY_TOL)
    }

    fn field<V: CsvValue>(&mut self, name: &str, f: &SolutionField<V>) -> Result<(), Failure> {
        write_field(&out_path(&self.settings.out, name), f, self.settings.grid)?;
        self.artifacts.push(name.to_string());
        Ok(())
    }

    fn finish(mut self, outcome: Outcome) -> Result<Outcome, Failure> {
        self.artifacts.push("report.json".into());
        let artifacts = std::mem::take(&mut self.artifacts);
        self.set("artifacts", json!(artifacts));
        write_json(&out_path(&self.settings.out, "report.json"), &Value::Object(self.report))?;
        Ok(outcome)
    }
}

fn load(path: &Path) -> Result<Problem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(&path.display().to_string(), e))?;
    Problem::parse(&text)
}

pub fn solve(path: &Path, s: &Settings) -> Result<Outcome, Failure> {
    dispatch(load(path)?, s, Mode::Solve)
}

pub fn check(path: &Path, s: &Settings) -> Result<Outcome, Failure> {
    dispatch(load(path)?, s, Mode::Check)
}

pub fn verify(path: &Path, s: &Settings) -> Result<Outcome, Failure> {
    dispatch(load(path)?, s, Mode::Verify)
}

pub fn witness(
    path: Option<&Path>,
    order: Option<u32>,
    count: Option<u32>,
    coeff: Option<Builtin>,
    s: &Settings,
) -> Result<Outcome, Failure> {
    let base = match path.map(load).transpose()? {
        Some(Problem::Witness(w)) => Some(w),
        Some(other) => return Err(Failure::schema(format!("expected a witness problem, got {}", other.kind()))),
        None => None,
    };
    let w = WitnessPayload {
        order: order.or(base.as_ref().map(|b| b.order)).ok_or_else(|| Failure::new("usage", "--order is required"))?,
        count: count.or(base.as_ref().map(|b| b.count)).unwrap_or(3),
        coeff: coeff.map(Coeff::builtin).or(base.and_then(|b| b.coeff)),
    };
    run_witness(&w, s, Mode::Solve)
}

pub fn render(csv: &Path, out: &Path, channel: Channel) -> Result<Outcome, Failure> {
    let text = fs::read_to_string(csv).map_err(|e| Failure::io(&csv.display().to_string(), e))?;
    let (values, width) = read_channel(&text, channel)?;
    write_atomic(out, &pgm(&values, width))?;
    Ok(Outcome::Success)
}

fn dispatch(p: Problem, s: &Settings, mode: Mode) -> Result<Outcome, Failure> {
    match p {
        Problem::DiskPoly(d) => {
            let (g, f) = d.data()?;
            run_disk(DiskProblem::poly(g, f)?, s, mode, "disk-poly")
        }
        Problem::DiskHoiv(d) => {
            let (g, a) = d.data()?;
            run_disk(DiskProblem::hoiv(g, a)?, s, mode, "disk-hoiv")
        }
        Problem::DiskBicomplex(d) => {
            let (g, a, f) = d.data()?;
            run_bc_disk(BcDiskProblem::new(g, a, f)?, s, mode)
        }
        Problem::ConicBianalytic(c) => run_conic(&c, s, mode, false),
        Problem::ConicVekua(c) => run_conic(&c, s, mode, true),
        Problem::Poisson(pp) => run_poisson(&pp.data(), s, mode),
        Problem::Witness(w) => run_witness(&w, s, mode),
        Problem::Verify(v) => run_verify(&v, s, mode),
    }
}

fn pair(z: Complex64) -> Value {
    json!([finite(z.re), finite(z.im)])
}

fn conditions_json(r: &SolvabilityReport) -> Value {
    json!({
        "maxima": r.maxima.iter().map(|&m| finite(m)).collect::<Vec<_>>(),
        "max": finite(r.max()),
        "tol": r.tol,
        "verdict": r.verdict.to_string(),
        "sample_points": r.sample_points.iter().map(|&z| pair(z)).collect::<Vec<_>>(),
        "values": r.values.iter().map(|row| row.iter().map(|&v| pair(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn residual_json(r: &ResidualReport, tol: f64) -> Value {
    json!({
        "max_abs": finite(r.max_abs),
        "n_points": r.n_points,
        "grid": r.grid,
        "stencil_h": r.stencil_h,
        "tol": tol,
        "pass": r.max_abs <= tol,
    })
}

fn disk_residual_grid() -> SampleGrid {
    SampleGrid::polar(0.7, 3, 6)
}

fn outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Solvable => Outcome::Success,
        Verdict::NotSolvable => Outcome::NotSolvable,
    }
}

fn run_disk(p: DiskProblem, s: &Settings, mode: Mode, kind: &str) -> Result<Outcome, Failure> {
    let mut run = Run::new(s, mode, kind)?;
    let params = run.params();
    let report = check_solvability(&p, &standard_samples(), &params)?;
    run.set("order", json!(p.order()));
    run.set("verdict", json!(report.verdict.to_string()));
    run.set("conditions", conditions_json(&report));
    if report.verdict == Verdict::NotSolvable || mode == Mode::Check {
        return run.finish(outcome(report.verdict));
    }
    let sol = solve_disk(&p, &params)?;
    run.set("provenance", json!(sol.provenance().name()));
    let mismatch = boundary_mismatch_trig(&sol, &p.gammas()[0], 64);
    run.set("boundary_mismatch", json!(finite(mismatch)));
    match mode {
        Mode::Solve => run.field("solution.csv", &sol)?,
        _ if p.rhs().is_identically_zero() => {
            let tol = run.verify_tol();
            let r = iterated_residual(
                &sol,
                p.coefficient(),
                None,
                p.order(),
                &disk_residual_grid(),
                default_step(p.order()),
            )?;
            run.set("residual", residual_json(&r, tol));
            if r.max_abs > tol {
                return run.finish(Outcome::NotSolvable);
            }
        }
        _ => run.set("residual", Value::Null),
    }
    run.finish(Outcome::Success)
}

fn run_bc_disk(p: BcDiskProblem, s: &Settings, mode: Mode) -> Result<Outcome, Failure> {
    let mut run = Run::new(s, mode, "disk-bicomplex")?;
    let params = run.params();
    let BcSolvabilityReport { plus, minus, verdict } = bc_check_solvability(&p, &standard_samples(), &params)?;
    run.set("order", json!(p.order()));
    run.set("verdict", json!(verdict.to_string()));
    run.set("conditions", json!({ "plus": conditions_json(&plus), "minus": conditions_json(&minus) }));
    if verdict == Verdict::NotSolvable || mode == Mode::Check {
        return run.finish(outcome(verdict));
    }
    let sol = bc_solve_disk(&p, &params)?;
    let mismatch = boundary_mismatch(&sol, &bc_circle_samples(&p.gammas()[0], 64));
    run.set("boundary_mismatch", json!(finite(mismatch)));
    match mode {
        Mode::Solve => run.field("solution.csv", &sol)?,
        _ => {
            let tol = run.verify_tol();
            let (pp, _) = p.split();
            if pp.rhs().is_identically_zero() && pp.coefficient().is_none() {
                let r = iterated_residual(&sol, None, None, p.order(), &disk_residual_grid(), default_step(p.order()))?;
                run.set("residual", residual_json(&r, tol));
                if r.max_abs > tol {
                    return run.finish(Outcome::NotSolvable);
                }
            } else {
                run.set("residual", Value::Null);
            }
        }
    }
    run.finish(Outcome::Success)
}

fn bianalytic_json(b: &BianalyticSolution, mismatch_points: usize) -> Value {
    json!({
        "h0": b.h0.to_string(),
        "h1": b.h1.to_string(),
        "cofactor_xy": b.cofactor.to_xy().to_string(),
        "degree": b.degree,
        "kernel_dim": b.kernel_dim,
        "reexpansion_exact": b.reexpansion_residual().is_zero(),
        "boundary_mismatch": finite(conic_boundary_mismatch(b, mismatch_points)),
    })
}

fn interior_points(region: &Region, n: usize) -> Vec<Complex64> {
    crate::output::grid_points(region, n).into_iter().filter(|&z| region.contains(z)).collect()
}

fn run_conic(c: &ConicPayload, s: &Settings, mode: Mode, vekua: bool) -> Result<Outcome, Failure> {
    let mut run = Run::new(s, mode, if vekua { "conic-vekua" } else { "conic-bianalytic" })?;
    let q = c.conic()?;
    run.set("conic", json!({ "equation": q.to_string(), "class": q.class().name() }));
    let target = c.target.exact()?;
    let quad = AreaQuad::polar(AREA_GRID)?;
    if c.is_bicomplex() {
        let vec = match &c.target_vec {
            Some(v) => v.exact()?,
            None => vekua_core::BivarPoly::zero(target.frame()),
        };
        let p = BcBivarPoly::new(target, vec);
        let (field, bianalytic) = if vekua {
            let sol = bc_solve_vekua_bitsadze_conic(&q, &p, &c.bc_coefficient()?, &quad)?;
            let pts = interior_points(sol.split_path.region(), 32);
            run.set("path_difference", json!(finite(sol.path_difference(&pts))));
            (sol.split_path, sol.bianalytic)
        } else {
            let sol = bc_solve_bianalytic_conic(&q, &p)?;
            (sol.to_field(), sol)
        };
        run.set("plus", bianalytic_json(&bianalytic.plus, 128));
        run.set("minus", bianalytic_json(&bianalytic.minus, 128));
        run.set("verdict", json!("solved"));
        if mode == Mode::Solve {
            run.field("solution.csv", &field)?;
        }
        return run.finish(Outcome::Success);
    }
    let (field, bianalytic) = if vekua {
        let sol = solve_vekua_bitsadze_conic(&q, &target, &c.coefficient()?, &quad)?;
        (sol.field, sol.bianalytic)
    } else {
        let b = solve_bianalytic_conic(&q, &target)?;
        (b.to_field(), b)
    };
    run.set("bianalytic", bianalytic_json(&bianalytic, 128));
    run.set("region", json!(if conic_region(&q).is_bounded() { "ellipse-interior" } else { "plane" }));
    run.set("verdict", json!("solved"));
    if mode == Mode::Solve {
        run.field("solution.csv", &field)?;
    }
    run.finish(Outcome::Success)
}

fn run_poisson(g: &vekua_core::BcTrigPoly, s: &Settings, mode: Mode) -> Result<Outcome, Failure> {
    let mut run = Run::new(s, mode, "poisson")?;
    let nodes = BoundaryNodes::new(s.nodes)?;
    let sol = bc_poisson_solve(g, nodes);
    run.set("bandwidth", json!(g.bandwidth()));
    run.set("trivial", json!(g.is_zero()));
    run.set("verdict", json!("solvable"));
    if mode != Mode::Check {
        run.set("boundary_mismatch", json!(finite(boundary_mismatch(&sol, &bc_circle_samples(g, 128)))));
    }
    if mode == Mode::Solve {
        run.field("solution.csv", &sol)?;
    }
    run.finish(Outcome::Success)
}

fn coefficient(c: &Option<Coeff>) -> Result<Option<ScalarField>, Failure> {
    Ok(match c {
        Some(c) => Some(c.field()?).filter(|f| !f.is_identically_zero()),
        None => None,
    })
}

fn run_witness(w: &WitnessPayload, s: &Settings, mode: Mode) -> Result<Outcome, Failure> {
    let mut run = Run::new(s, mode, "witness")?;
    let a = coefficient(&w.coeff)?;
    let (fields, cert) = witness_gram(w.order, w.count, a.clone(), AREA_GRID)?;
    let circle: Vec<Complex64> =
        (0..256).map(|k| Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 256.0)).collect();
    let mut entries = Vec::new();
    let tol = run.verify_tol();
    let mut all_pass = true;
    for (k, f) in fields.iter().enumerate() {
        let sup = circle.iter().map(|&z| f.eval(z).magnitude()).fold(0.0, f64::max);
        let mut entry = json!({ "k": k, "boundary_sup": finite(sup) });
        if mode != Mode::Check {
            let r =
                iterated_residual(f, a.as_ref(), None, w.order, &SampleGrid::polar(0.7, 2, 4), default_step(w.order))?;
            all_pass &= r.max_abs <= tol;
            entry["residual"] = residual_json(&r, tol);
        }
        if mode == Mode::Solve {
            let name = format!("witness_{k}.csv");
            run.field(&name, f)?;
            entry["csv"] = json!(name);
        }
        entries.push(entry);
    }
    run.set("order", json!(w.order));
    run.set("count", json!(w.count));
    run.set("coefficient", json!(w.coeff.as_ref().map_or("zero", Coeff::label)));
    run.set("witnesses", json!(entries));
    run.set(
        "gram",
        json!({
            "rank": cert.rank,
            "singular_values": cert.singular_values.iter().map(|&x| finite(x)).collect::<Vec<_>>(),
            "rel_tol": cert.rel_tol,
            "independent": cert.rank == w.count as usize,
        }),
    );
    let pass = all_pass && cert.rank == w.count as usize;
    run.set("verdict", json!(if pass { "independent-witnesses" } else { "fail" }));
    run.finish(if pass { Outcome::Success } else { Outcome::NotSolvable })
}

fn run_verify(v: &VerifyPayload, s: &Settings, mode: Mode) -> Result<Outcome, Failure> {
    let mut run = Run::new(s, mode, "verify")?;
    let a = coefficient(&v.a)?;
    let b = coefficient(&v.b)?;
    let quad = AreaQuad::polar(AREA_GRID)?;
    let field = match &v.field {
        FieldSpec::Poly(p) => {
            let p = p.exact()?.to_float();
            SolutionField::new(move |z| p.eval(z), Provenance::Constructed, v.order)
        }
        FieldSpec::Witness { k } => vekua_core::disk::witness_family(v.order, *k, a.clone(), AREA_GRID)?,
        FieldSpec::HoivHolo(hs) => {
            let h = hs.iter().map(|p| p.exact().map(|e| e.to_float())).collect::<Result<Vec<_>, _>>()?;
            hoiv_from_holo(a.clone(), &h, Region::UnitDisk, quad)?
        }
    };
    let tol = run.verify_tol();
    let r = iterated_residual(&field, a.as_ref(), b.as_ref(), v.order, &disk_residual_grid(), default_step(v.order))?;
    run.set("order", json!(v.order));
    run.set("residual", residual_json(&r, tol));
    let pass = r.max_abs <= tol;
    run.set("verdict", json!(if pass { "pass" } else { "fail" }));
    if mode == Mode::Solve {
        run.field("solution.csv", &field)?;
    }
    run.finish(if pass { Outcome::Success } else { Outcome::NotSolvable })
}
