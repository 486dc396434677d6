//! Solution fields and constructors for the representation formulas of
//! polyanalytic, higher-order iterated Vekua and bicomplex solutions.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use thiserror::Error;

use crate::bicomplex::{bicomplexify, Bicomplex};
use crate::integral::{AreaQuad, FieldValue, Region, ScalarField};
use crate::poly::FloatPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    IntegralFormula,
    ExpTimesPoly,
    Witness,
    Constructed,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::IntegralFormula => "integral-formula",
            Provenance::ExpTimesPoly => "exp-times-poly",
            Provenance::Witness => "witness",
            Provenance::Constructed => "constructed",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("at least one component function is required")]
    EmptyList,
    #[error("component {index} depends on z̄ and is not holomorphic")]
    NotHolomorphic { index: usize },
}

type Evaluator<V> = Arc<dyn Fn(Complex64) -> V + Send + Sync>;

/// A function on a closed region together with how it was built.
pub struct SolutionField<V: FieldValue = Complex64> {
    eval: Evaluator<V>,
    provenance: Provenance,
    order: u32,
    region: Region,
    coefficient: Option<ScalarField<V>>,
    interior_only: bool,
}

pub type BcSolutionField = SolutionField<Bicomplex>;

impl<V: FieldValue> Clone for SolutionField<V> {
    fn clone(&self) -> Self {
        SolutionField {
            eval: Arc::clone(&self.eval),
            provenance: self.provenance,
            order: self.order,
            region: self.region.clone(),
            coefficient: self.coefficient.clone(),
            interior_only: self.interior_only,
        }
    }
}

impl<V: FieldValue> fmt::Debug for SolutionField<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolutionField")
            .field("provenance", &self.provenance)
            .field("order", &self.order)
            .field("region", &self.region)
            .field("has_coefficient", &self.coefficient.is_some())
            .field("interior_only", &self.interior_only)
            .finish_non_exhaustive()
    }
}

impl<V: FieldValue> SolutionField<V> {
    /// A field on the closed unit disk.
    pub fn new(f: impl Fn(Complex64) -> V + Send + Sync + 'static, provenance: Provenance, order: u32) -> Self {
        SolutionField {
            eval: Arc::new(f),
            provenance,
            order,
            region: Region::UnitDisk,
            coefficient: None,
            interior_only: false,
        }
    }

    pub fn zero(order: u32) -> Self {
        Self::new(|_| V::ZERO, Provenance::Constructed, order)
    }

    pub fn with_region(mut self, region: Region) -> Self {
        self.region = region;
        self
    }

    pub fn with_coefficient(mut self, a: Option<ScalarField<V>>) -> Self {
        self.coefficient = a;
        self
    }

    /// Marks fields whose formula is only accurate strictly inside the region.
    pub fn with_interior_only(mut self, flag: bool) -> Self {
        self.interior_only = flag;
        self
    }

    /// Value at `z`; NaN outside the closed region.
    pub fn eval(&self, z: Complex64) -> V {
        if self.region.contains(z) {
            (self.eval)(z)
        } else {
            V::nan()
        }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn coefficient(&self) -> Option<&ScalarField<V>> {
        self.coefficient.as_ref()
    }

    pub fn is_interior_only(&self) -> bool {
        self.interior_only
    }

    /// The bare evaluator, without the region check.
    pub fn to_scalar_field(&self) -> ScalarField<V> {
        let f = Arc::clone(&self.eval);
        ScalarField::from_fn(move |z| f(z))
    }
}

impl SolutionField<Bicomplex> {
    /// `z ↦ (w(z)+)*`.
    pub fn plus_conj(&self) -> SolutionField {
        let f = Arc::clone(&self.eval);
        SolutionField {
            eval: Arc::new(move |z| f(z).plus().conj()),
            provenance: self.provenance,
            order: self.order,
            region: self.region.clone(),
            coefficient: self.coefficient.as_ref().map(|a| a.plus_conj()),
            interior_only: self.interior_only,
        }
    }

    /// `z ↦ w(z)−`.
    pub fn minus(&self) -> SolutionField {
        let f = Arc::clone(&self.eval);
        SolutionField {
            eval: Arc::new(move |z| f(z).minus()),
            provenance: self.provenance,
            order: self.order,
            region: self.region.clone(),
            coefficient: self.coefficient.as_ref().map(|a| a.minus()),
            interior_only: self.interior_only,
        }
    }
}

const CACHE_LIMIT: usize = 1 << 20;

/// `z ↦ e^{T[A](z)}` with memoised values of `T[A]`.
pub struct ExpFactor<V: FieldValue = Complex64> {
    a: ScalarField<V>,
    region: Region,
    quad: AreaQuad,
    cache: Mutex<HashMap<(u64, u64), V>>,
}

impl<V: FieldValue> fmt::Debug for ExpFactor<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExpFactor")
            .field("region", &self.region)
            .field("n_grid", &self.quad.n_grid())
            .finish_non_exhaustive()
    }
}

impl<V: FieldValue> ExpFactor<V> {
    pub fn new(a: ScalarField<V>, region: Region, quad: AreaQuad) -> Arc<Self> {
        Arc::new(ExpFactor { a, region, quad, cache: Mutex::new(HashMap::new()) })
    }

    pub fn coefficient(&self) -> &ScalarField<V> {
        &self.a
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn quad(&self) -> &AreaQuad {
        &self.quad
    }

    /// `T[A](z)`.
    pub fn t(&self, z: Complex64) -> V {
        if self.a.is_identically_zero() {
            return V::ZERO;
        }
        let key = (z.re.to_bits(), z.im.to_bits());
        if let Some(v) = self.lock().get(&key) {
            return *v;
        }
        let v = V::area_transform(&self.quad, &self.region, &self.a, z);
        let mut cache = self.lock();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, v);
        v
    }

    /// `e^{T[A](z)}`.
    pub fn exp(&self, z: Complex64) -> V {
        self.t(z).exp()
    }

    /// `e^{−T[A](z)}`.
    pub fn exp_neg(&self, z: Complex64) -> V {
        (-self.t(z)).exp()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, HashMap<(u64, u64), V>> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }
}

/// `w = Σ (z+z̄)^k φ_k(z)` from solutions of one first-order Vekua equation.
pub fn hoiv_from_vekua<V: FieldValue>(phis: &[SolutionField<V>]) -> Result<SolutionField<V>, RepError> {
    let first = phis.first().ok_or(RepError::EmptyList)?;
    let evals: Vec<Evaluator<V>> = phis.iter().map(|p| Arc::clone(&p.eval)).collect();
    let interior_only = phis.iter().any(|p| p.interior_only);
    Ok(SolutionField::new(
        move |z| {
            let s = z + z.conj();
            let mut acc = V::ZERO;
            let mut pow = Complex64::new(1.0, 0.0);
            for f in &evals {
                acc = acc + f(z) * pow;
                pow *= s;
            }
            acc
        },
        Provenance::Constructed,
        phis.len() as u32,
    )
    .with_region(first.region.clone())
    .with_coefficient(first.coefficient.clone())
    .with_interior_only(interior_only))
}

fn check_holomorphic(h: &[FloatPoly]) -> Result<Vec<FloatPoly>, RepError> {
    if h.is_empty() {
        return Err(RepError::EmptyList);
    }
    h.iter()
        .enumerate()
        .map(|(index, p)| {
            let p = p.to_zzbar();
            match p.deg_zbar() {
                Some(d) if d > 0 => Err(RepError::NotHolomorphic { index }),
                _ => Ok(p),
            }
        })
        .collect()
}

/// `w = e^{T[A]}·Σ z̄^k h_k(z)` for holomorphic polynomials `h_k`.
pub fn hoiv_from_holo(
    a: Option<ScalarField>,
    h: &[FloatPoly],
    region: Region,
    quad: AreaQuad,
) -> Result<SolutionField, RepError> {
    let h = check_holomorphic(h)?;
    let hs: Vec<Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>> = h
        .into_iter()
        .map(|p| Box::new(move |z| p.eval(z)) as Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>)
        .collect();
    Ok(hoiv_from_holo_fn(a, hs, region, quad))
}

/// Float pipeline: `h_k` are arbitrary holomorphic evaluators supplied by the caller.
pub fn hoiv_from_holo_fn(
    a: Option<ScalarField>,
    h: Vec<Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>>,
    region: Region,
    quad: AreaQuad,
) -> SolutionField {
    let order = h.len() as u32;
    let poly = move |z: Complex64| {
        let zb = z.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for hk in &h {
            acc += pow * hk(z);
            pow *= zb;
        }
        acc
    };
    with_exp_factor(a, poly, order, region, quad)
}

fn with_exp_factor<V: FieldValue>(
    a: Option<ScalarField<V>>,
    poly: impl Fn(Complex64) -> V + Send + Sync + 'static,
    order: u32,
    region: Region,
    quad: AreaQuad,
) -> SolutionField<V> {
    let a = a.filter(|a| !a.is_identically_zero());
    match a {
        None => SolutionField::new(poly, Provenance::ExpTimesPoly, order).with_region(region),
        Some(a) => {
            let factor = ExpFactor::new(a.clone(), region.clone(), quad);
            SolutionField::new(move |z| factor.exp(z) * poly(z), Provenance::ExpTimesPoly, order)
                .with_region(region)
                .with_coefficient(Some(a))
        }
    }
}

/// Polynomial `Σ c_m ẑ^m` in the bicomplexified variable, with bicomplex coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BcHoloPoly {
    pub coeffs: Vec<Bicomplex>,
}

impl BcHoloPoly {
    pub fn new(coeffs: Vec<Bicomplex>) -> Self {
        BcHoloPoly { coeffs }
    }

    pub fn constant(c: Bicomplex) -> Self {
        BcHoloPoly { coeffs: vec![c] }
    }

    /// `c·ẑ^m`.
    pub fn monomial(m: usize, c: Bicomplex) -> Self {
        let mut coeffs = vec![Bicomplex::ZERO; m + 1];
        coeffs[m] = c;
        BcHoloPoly { coeffs }
    }

    pub fn eval(&self, z: Complex64) -> Bicomplex {
        let zh = bicomplexify(z);
        self.coeffs.iter().rev().fold(Bicomplex::ZERO, |acc, &c| acc * zh + c)
    }
}

/// `w = e^{T^B[A]}·Σ (ẑ*)^k h_k(ẑ)`.
pub fn bc_hoiv_from_holo(
    a: Option<ScalarField<Bicomplex>>,
    h: &[BcHoloPoly],
    region: Region,
    quad: AreaQuad,
) -> Result<SolutionField<Bicomplex>, RepError> {
    if h.is_empty() {
        return Err(RepError::EmptyList);
    }
    let h = h.to_vec();
    let order = h.len() as u32;
    let poly = move |z: Complex64| {
        let zs = bicomplexify(z).conj();
        let mut acc = Bicomplex::ZERO;
        let mut pow = Bicomplex::ONE;
        for hk in &h {
            acc += pow * hk.eval(z);
            pow *= zs;
        }
        acc
    };
    Ok(with_exp_factor(a, poly, order, region, quad))
}

/// `w = p+·(f)* + p−·g`.
pub fn bc_join_solutions(f: &SolutionField, g: &SolutionField) -> SolutionField<Bicomplex> {
    let (fe, ge) = (Arc::clone(&f.eval), Arc::clone(&g.eval));
    let coefficient = match (&f.coefficient, &g.coefficient) {
        (None, None) => None,
        (fa, ga) => {
            let fa = fa.clone().unwrap_or_else(ScalarField::zero);
            let ga = ga.clone().unwrap_or_else(ScalarField::zero);
            Some(ScalarField::<Bicomplex>::from_components(fa.conj_values(), ga))
        }
    };
    SolutionField::new(move |z| Bicomplex::join(fe(z).conj(), ge(z)), Provenance::Constructed, f.order.max(g.order))
        .with_region(f.region.clone())
        .with_coefficient(coefficient)
        .with_interior_only(f.interior_only || g.interior_only)
}
