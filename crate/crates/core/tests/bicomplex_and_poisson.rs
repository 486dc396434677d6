//! Randomised bicomplex algebra identities, Poisson recovery and the
//! similarity principle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vekua_core::disk::bc_poisson_solve;
use vekua_core::integral::{AreaQuad, BoundaryNodes, TrigPoly};
use vekua_core::representations::hoiv_from_holo;
use vekua_core::verify::{bc_circle_samples, boundary_mismatch, iterated_residual, SampleGrid};
use vekua_core::{BcTrigPoly, Bicomplex, Complex64, FloatPoly, Frame, Region, ScalarField};

fn random_bc(rng: &mut ChaCha8Rng, scale: f64) -> Bicomplex {
    let mut c = || Complex64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale));
    Bicomplex::new(c(), c())
}

fn rel(a: Bicomplex, b: Bicomplex) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

#[test]
fn algebra_identities_hold_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let (u, v) = (random_bc(&mut rng, 3.0), random_bc(&mut rng, 3.0));
        let (up, um) = u.split();
        let (vp, vm) = v.split();
        let (pp, pm) = (u * v).split();
        assert!((pp - up * vp).norm() <= 1e-12 * (up * vp).norm().max(1.0));
        assert!((pm - um * vm).norm() <= 1e-12 * (um * vm).norm().max(1.0));

        let n2 = 2.0 * u.norm().powi(2);
        assert!((n2 - (up.norm_sqr() + um.norm_sqr())).abs() <= 1e-12 * n2.max(1.0));

        let (a, b) = (random_bc(&mut rng, 1.0), random_bc(&mut rng, 1.0));
        assert!(rel((a + b).exp(), a.exp() * b.exp()) <= 1e-12);
    }
}

#[test]
fn poisson_recovers_bandwidth_eight_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut plus = TrigPoly::zero();
    let mut minus = TrigPoly::zero();
    for m in -8..=8 {
        plus = &plus + &TrigPoly::monomial(m, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        minus = &minus + &TrigPoly::monomial(m, Complex64::new(rng.random_range(-1.0..1.0), 0.0));
    }
    let g = BcTrigPoly::from_components(&plus, &minus);
    let w = bc_poisson_solve(&g, BoundaryNodes::new(512).unwrap());
    let mismatch = boundary_mismatch(&w, &bc_circle_samples(&g, 128));
    assert!(mismatch <= 1e-3, "{mismatch}");
}

#[test]
fn poisson_zero_data_is_trivial() {
    let w = bc_poisson_solve(&BcTrigPoly::scalar(TrigPoly::zero()), BoundaryNodes::new(512).unwrap());
    for k in 0..40 {
        let z = Complex64::from_polar(0.024 * k as f64, 0.7 * k as f64);
        assert_eq!(w.eval(z), Bicomplex::ZERO);
    }
}

#[test]
fn similarity_principle() {
    let a = ScalarField::smooth(|z| z);
    let h = [FloatPoly::monomial(2, 0, Complex64::new(1.0, 0.0), Frame::ZZbar)];
    let w = hoiv_from_holo(Some(a.clone()), &h, Region::UnitDisk, AreaQuad::polar(256).unwrap()).unwrap();
    let grid = SampleGrid::polar(0.7, 4, 8);
    let r = iterated_residual(&w, Some(&a), None, 1, &grid, 1e-3).unwrap();
    assert!(r.max_abs <= 1e-3, "{r}");
}
