//! Problem files: `{schema_version, kind, payload}` with a kind-specific payload.

use serde::Deserialize;
use serde_json::Value;
use vekua_core::poly::parse_rational;
use vekua_core::{
    BcScalarField, BcTrigPoly, BigRational, BivarPoly, Complex64, Conic, Frame, GaussRat, ScalarField, TrigPoly,
};

use crate::error::Failure;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    DiskPoly,
    DiskHoiv,
    DiskBicomplex,
    ConicBianalytic,
    ConicVekua,
    Poisson,
    Witness,
    Verify,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    schema_version: u32,
    kind: Kind,
    payload: Value,
}

/// Real number given either as a JSON number or as an exact rational string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Float(f64),
    Exact(String),
}

impl Num {
    fn rational(&self) -> Result<BigRational, Failure> {
        match self {
            Num::Float(x) => {
                BigRational::from_float(*x).ok_or_else(|| Failure::schema(format!("non-finite number {x}")))
            }
            Num::Exact(s) => parse_rational(s).map_err(|e| Failure::schema(e.to_string())),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub i: u32,
    pub j: u32,
    pub re: Num,
    #[serde(default = "zero_num")]
    pub im: Num,
}

fn zero_num() -> Num {
    Num::Float(0.0)
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameName {
    #[default]
    Zzbar,
    Xy,
}

/// Polynomial in `(z, z̄)` or `(x, y)`: term `{i, j, re, im}` is `c·z^i z̄^j` or `c·x^i y^j`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Poly {
    #[serde(default)]
    pub frame: FrameName,
    pub terms: Vec<Term>,
}

impl Poly {
    pub fn exact(&self) -> Result<BivarPoly<GaussRat>, Failure> {
        let frame = match self.frame {
            FrameName::Zzbar => Frame::ZZbar,
            FrameName::Xy => Frame::XY,
        };
        let mut p = BivarPoly::zero(frame);
        for t in &self.terms {
            p.add_term(t.i, t.j, GaussRat::new(t.re.rational()?, t.im.rational()?));
        }
        Ok(p)
    }

    pub fn field(&self) -> Result<ScalarField, Failure> {
        Ok(ScalarField::from_poly(self.exact()?.to_float()))
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    Zero,
    Z,
    ZOver2,
    #[serde(rename = "custom-poly")]
    CustomPoly,
}

/// Coefficient field `A`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coeff {
    pub builtin: Builtin,
    #[serde(default)]
    pub poly: Option<Poly>,
}

impl Coeff {
    pub fn builtin(b: Builtin) -> Self {
        Coeff { builtin: b, poly: None }
    }

    pub fn field(&self) -> Result<ScalarField, Failure> {
        match (self.builtin, &self.poly) {
            (Builtin::CustomPoly, Some(p)) => p.field(),
            (Builtin::CustomPoly, None) => Err(Failure::schema("custom-poly coefficient needs `poly`")),
            (_, Some(_)) => Err(Failure::schema("`poly` is only allowed with custom-poly")),
            (Builtin::Zero, None) => Ok(ScalarField::zero()),
            (Builtin::Z, None) => Ok(ScalarField::smooth(|z| z)),
            (Builtin::ZOver2, None) => Ok(ScalarField::smooth(|z| 0.5 * z)),
        }
    }

    pub fn label(&self) -> &'static str {
        match self.builtin {
            Builtin::Zero => "zero",
            Builtin::Z => "z",
            Builtin::ZOver2 => "z_over_2",
            Builtin::CustomPoly => "custom-poly",
        }
    }
}

fn bc_coeff(sc: &Coeff, vec: Option<&Coeff>) -> Result<BcScalarField, Failure> {
    let vec = match vec {
        Some(v) => v.field()?,
        None => ScalarField::zero(),
    };
    Ok(BcScalarField::from_parts(sc.field()?, vec))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mode {
    pub m: i32,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

fn trig(modes: &[Mode]) -> TrigPoly {
    modes.iter().fold(TrigPoly::zero(), |acc, md| &acc + &TrigPoly::monomial(md.m, Complex64::new(md.re, md.im)))
}

/// Fourier mode with bicomplex coefficient `sc + j·vec`, each given as `[re, im]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcMode {
    pub m: i32,
    pub sc: [f64; 2],
    #[serde(default)]
    pub vec: [f64; 2],
}

fn bc_trig(modes: &[BcMode]) -> BcTrigPoly {
    let (mut sc, mut vec) = (TrigPoly::zero(), TrigPoly::zero());
    for md in modes {
        sc = &sc + &TrigPoly::monomial(md.m, Complex64::new(md.sc[0], md.sc[1]));
        vec = &vec + &TrigPoly::monomial(md.m, Complex64::new(md.vec[0], md.vec[1]));
    }
    BcTrigPoly::new(sc, vec)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskPoly {
    pub order: u32,
    pub gammas: Vec<Vec<Mode>>,
    #[serde(default)]
    pub f: Option<Poly>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskHoiv {
    pub order: u32,
    pub gammas: Vec<Vec<Mode>>,
    pub a: Coeff,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskBicomplex {
    pub order: u32,
    pub gammas: Vec<Vec<BcMode>>,
    #[serde(default)]
    pub a: Option<Coeff>,
    #[serde(default)]
    pub a_vec: Option<Coeff>,
    #[serde(default)]
    pub f: Option<Poly>,
    #[serde(default)]
    pub f_vec: Option<Poly>,
}

/// Conic `a x² + b xy + c y² + d x + e y + f` and target `P` (plus `j·target_vec` if bicomplex).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConicPayload {
    pub conic: [Num; 6],
    pub target: Poly,
    #[serde(default)]
    pub target_vec: Option<Poly>,
    #[serde(default)]
    pub a: Option<Coeff>,
    #[serde(default)]
    pub a_vec: Option<Coeff>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonPayload {
    pub modes: Vec<BcMode>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessPayload {
    pub order: u32,
    pub count: u32,
    #[serde(default)]
    pub coeff: Option<Coeff>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    /// Explicit polynomial.
    Poly(Poly),
    /// `e^{T[A]}(1 − zz̄)^{n−1} z^k`.
    Witness { k: u32 },
    /// `e^{T[A]} Σ z̄^k h_k(z)` with holomorphic `h_k`.
    HoivHolo(Vec<Poly>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyPayload {
    pub order: u32,
    pub field: FieldSpec,
    #[serde(default)]
    pub a: Option<Coeff>,
    #[serde(default)]
    pub b: Option<Coeff>,
}

#[derive(Debug)]
pub enum Problem {
    DiskPoly(DiskPoly),
    DiskHoiv(DiskHoiv),
    DiskBicomplex(DiskBicomplex),
    ConicBianalytic(ConicPayload),
    ConicVekua(ConicPayload),
    Poisson(PoissonPayload),
    Witness(WitnessPayload),
    Verify(VerifyPayload),
}

fn payload<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::schema(format!("payload: {e}")))
}

impl Problem {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let env: Envelope = serde_json::from_str(text).map_err(|e| Failure::schema(e.to_string()))?;
        if env.schema_version != SCHEMA_VERSION {
            return Err(Failure::schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                env.schema_version
            )));
        }
        let p = env.payload;
        Ok(match env.kind {
            Kind::DiskPoly => Problem::DiskPoly(payload(p)?),
            Kind::DiskHoiv => Problem::DiskHoiv(payload(p)?),
            Kind::DiskBicomplex => Problem::DiskBicomplex(payload(p)?),
            Kind::ConicBianalytic => {
                let c: ConicPayload = payload(p)?;
                if c.a.is_some() || c.a_vec.is_some() {
                    return Err(Failure::schema("conic-bianalytic takes no coefficient; use conic-vekua"));
                }
                Problem::ConicBianalytic(c)
            }
            Kind::ConicVekua => Problem::ConicVekua(payload(p)?),
            Kind::Poisson => Problem::Poisson(payload(p)?),
            Kind::Witness => Problem::Witness(payload(p)?),
            Kind::Verify => Problem::Verify(payload(p)?),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Problem::DiskPoly(_) => "disk-poly",
            Problem::DiskHoiv(_) => "disk-hoiv",
            Problem::DiskBicomplex(_) => "disk-bicomplex",
            Problem::ConicBianalytic(_) => "conic-bianalytic",
            Problem::ConicVekua(_) => "conic-vekua",
            Problem::Poisson(_) => "poisson",
            Problem::Witness(_) => "witness",
            Problem::Verify(_) => "verify",
        }
    }
}

fn check_order(order: u32, found: usize) -> Result<(), Failure> {
    if order as usize != found {
        return Err(Failure::schema(format!("order {order} needs {order} boundary functions, got {found}")));
    }
    Ok(())
}

impl DiskPoly {
    pub fn data(&self) -> Result<(Vec<TrigPoly>, ScalarField), Failure> {
        check_order(self.order, self.gammas.len())?;
        let f = match &self.f {
            Some(p) => p.field()?,
            None => ScalarField::zero(),
        };
        Ok((self.gammas.iter().map(|g| trig(g)).collect(), f))
    }
}

impl DiskHoiv {
    pub fn data(&self) -> Result<(Vec<TrigPoly>, ScalarField), Failure> {
        check_order(self.order, self.gammas.len())?;
        Ok((self.gammas.iter().map(|g| trig(g)).collect(), self.a.field()?))
    }
}

impl DiskBicomplex {
    pub fn data(&self) -> Result<(Vec<BcTrigPoly>, Option<BcScalarField>, BcScalarField), Failure> {
        check_order(self.order, self.gammas.len())?;
        let a = match &self.a {
            Some(a) => Some(bc_coeff(a, self.a_vec.as_ref())?),
            None if self.a_vec.is_some() => return Err(Failure::schema("`a_vec` requires `a`")),
            None => None,
        };
        let part = |p: &Option<Poly>| match p {
            Some(p) => p.field(),
            None => Ok(ScalarField::zero()),
        };
        let f = BcScalarField::from_parts(part(&self.f)?, part(&self.f_vec)?);
        Ok((self.gammas.iter().map(|g| bc_trig(g)).collect(), a, f))
    }
}

impl ConicPayload {
    pub fn conic(&self) -> Result<Conic, Failure> {
        let c: Vec<BigRational> = self.conic.iter().map(Num::rational).collect::<Result<_, _>>()?;
        Ok(Conic::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone(), c[5].clone()))
    }

    pub fn is_bicomplex(&self) -> bool {
        self.target_vec.is_some() || self.a_vec.is_some()
    }

    pub fn coefficient(&self) -> Result<ScalarField, Failure> {
        self.a.as_ref().map_or(Ok(ScalarField::zero()), Coeff::field)
    }

    pub fn bc_coefficient(&self) -> Result<BcScalarField, Failure> {
        let sc = self.a.clone().unwrap_or(Coeff::builtin(Builtin::Zero));
        bc_coeff(&sc, self.a_vec.as_ref())
    }
}

impl PoissonPayload {
    pub fn data(&self) -> BcTrigPoly {
        bc_trig(&self.modes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wrap(kind: &str, payload: &str) -> String {
        format!(r#"{{"schema_version": 1, "kind": "{kind}", "payload": {payload}}}"#)
    }

    #[test]
    fn parses_disk_poly() {
        let text = wrap("disk-poly", r#"{"order": 1, "gammas": [[{"m": 1, "re": 1.0}]]}"#);
        let Problem::DiskPoly(p) = Problem::parse(&text).unwrap() else { panic!() };
        let (g, f) = p.data().unwrap();
        assert_eq!(g[0].coeff(1), Complex64::new(1.0, 0.0));
        assert!(f.is_identically_zero());
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = wrap("disk-poly", r#"{"order": 1, "gammas": [], "extra": 3}"#);
        assert_eq!(Problem::parse(&text).unwrap_err().code, "schema");
        let text = r#"{"schema_version": 1, "kind": "poisson", "payload": {"modes": []}, "x": 1}"#;
        assert!(Problem::parse(text).is_err());
    }

    #[test]
    fn rejects_wrong_version_and_kind() {
        assert!(
            Problem::parse(&wrap("disk-poly", "{}").replace("\"schema_version\": 1", "\"schema_version\": 9")).is_err()
        );
        assert!(Problem::parse(&wrap("disk-nothing", "{}")).is_err());
    }

    #[test]
    fn exact_numbers() {
        let p = Poly {
            frame: FrameName::Xy,
            terms: vec![Term { i: 2, j: 0, re: Num::Exact("1/3".into()), im: Num::Float(0.5) }],
        };
        let e = p.exact().unwrap();
        assert_eq!(
            e.coeff(2, 0),
            GaussRat::new(BigRational::new(1.into(), 3.into()), BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(e.frame(), Frame::XY);
    }

    #[test]
    fn coefficient_builtins() {
        let z = Complex64::new(0.2, 0.4);
        assert_eq!(Coeff::builtin(Builtin::ZOver2).field().unwrap().eval(z), 0.5 * z);
        assert!(Coeff::builtin(Builtin::CustomPoly).field().is_err());
        let c: Coeff =
            serde_json::from_str(r#"{"builtin": "custom-poly", "poly": {"terms": [{"i": 0, "j": 1, "re": 2}]}}"#)
                .unwrap();
        assert_eq!(c.field().unwrap().eval(z), 2.0 * z.conj());
    }

    #[test]
    fn order_mismatch() {
        let text = wrap("disk-poly", r#"{"order": 2, "gammas": [[]]}"#);
        let Problem::DiskPoly(p) = Problem::parse(&text).unwrap() else { panic!() };
        assert!(p.data().is_err());
    }
}
