//! Fixtures shared by the benchmarks.

use vekua_core::{Complex64, DiskProblem, ScalarField, TrigPoly};

/// Traces of `w = z̄z² + z³` on the unit circle.
pub fn manufactured_order_two() -> DiskProblem {
    let one = Complex64::new(1.0, 0.0);
    let g0 = &TrigPoly::monomial(1, one) + &TrigPoly::monomial(3, one);
    let g1 = TrigPoly::monomial(2, one);
    DiskProblem::poly(vec![g0, g1], ScalarField::zero()).expect("order two data")
}

/// A spiral of interior points.
pub fn spiral(n: usize, max_r: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let t = (k as f64 + 0.5) / n as f64;
            Complex64::from_polar(max_r * t.sqrt(), 2.4 * k as f64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        assert_eq!(manufactured_order_two().order(), 2);
        assert!(spiral(10, 0.9).iter().all(|z| z.norm() < 0.9));
    }
}
