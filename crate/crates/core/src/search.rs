//! Searching metric space for a Hermitian metric with a prescribed property.
//!
//! Samples are `H = MM* + I/1024` with small rational `M`, so positivity holds
//! by construction. Candidates are screened in floating point and re-verified
//! exactly before they are returned. Infeasibility is only reported when a
//! closed-form certificate applies; running out of samples is `Exhausted`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::catalog::{
    classify_reduced6, nilpotent6_params, nilpotent6_skt_scalar, reduced6_params, reduced6_skt_scalar,
    jt_skt_scalar, LieAlgebraLabel, Nilpotent6Params, Params, Reduced6Params,
};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::linalg::{self, Matrix};
use crate::metric::{gamma_scalar, gauduchon_form, is_positive_hermitian, metric_to_json, top_coefficient, MetricCoefficients};
use crate::scalar::{cx, format_q, norm_sqr, parse_q, q, qi, rational_sqrt, Cf, Cx, Scalar, Q};
use crate::structure::StructureEquations;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    GammaNegative(usize),
    GammaPositive(usize),
    GauduchonZero(usize),
    Skt,
    Balanced,
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetKind::GammaNegative(k) => write!(f, "gamma{k}<0"),
            TargetKind::GammaPositive(k) => write!(f, "gamma{k}>0"),
            TargetKind::GauduchonZero(k) => write!(f, "gamma{k}=0"),
            TargetKind::Skt => f.write_str("skt"),
            TargetKind::Balanced => f.write_str("balanced"),
        }
    }
}

impl FromStr for TargetKind {
    type Err = Error;

    /// Accepts `gammaK<0`, `gammaK>0`, `gammaK=0`, `gauduchonK`, `skt`, `balanced`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || Error::BadParams(format!("unknown target `{s}`"));
        match s.as_str() {
            "skt" => return Ok(TargetKind::Skt),
            "balanced" => return Ok(TargetKind::Balanced),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("gauduchon") {
            return rest.parse().map(TargetKind::GauduchonZero).map_err(|_| bad());
        }
        let rest = s.strip_prefix("gamma").ok_or_else(bad)?;
        let split = rest.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
        let k: usize = rest[..split].parse().map_err(|_| bad())?;
        match &rest[split..] {
            "<0" => Ok(TargetKind::GammaNegative(k)),
            ">0" => Ok(TargetKind::GammaPositive(k)),
            "=0" | "==0" => Ok(TargetKind::GauduchonZero(k)),
            _ => Err(bad()),
        }
    }
}

/// The family a structure was built from, when known. Only used to look up
/// closed-form certificates.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyContext {
    Nilpotent6(Nilpotent6Params),
    Reduced6(Reduced6Params),
    Jt(Q),
    NonNilpotent6,
    Family8(Cx),
}

impl FamilyContext {
    /// Context for a catalog family, if the family carries certificates.
    pub fn from_catalog(name: &str, p: &Params) -> Result<Option<Self>> {
        let get = |k: &str| p.get(k).map_or(Ok(Q::zero()), |v| parse_q(v));
        Ok(match name {
            "nilpotent6" => Some(FamilyContext::Nilpotent6(nilpotent6_params(p)?)),
            "reduced6" => Some(FamilyContext::Reduced6(reduced6_params(p)?)),
            "jt" => Some(FamilyContext::Jt(p.get("t").map_or(Ok(Q::one()), |v| parse_q(v))?)),
            "nonnilpotent6" => Some(FamilyContext::NonNilpotent6),
            "family8" => Some(FamilyContext::Family8(cx(get("p")?, get("q")?))),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub kind: TargetKind,
    pub family: Option<FamilyContext>,
}

impl Target {
    pub fn new(kind: TargetKind) -> Self {
        Target { kind, family: None }
    }

    pub fn with_family(kind: TargetKind, family: FamilyContext) -> Self {
        Target { kind, family: Some(family) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    pub detail: String,
}

impl Certificate {
    fn new(name: &str, detail: String) -> Self {
        Certificate { name: name.to_string(), detail }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Witness,
    InfeasibleCertified,
    Exhausted,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Witness => "witness",
            SearchStatus::InfeasibleCertified => "infeasible_certified",
            SearchStatus::Exhausted => "exhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub target: TargetKind,
    pub witness: Option<MetricCoefficients>,
    pub certificate: Option<Certificate>,
    pub samples_used: usize,
    pub budget: usize,
    pub seed: u64,
}

impl SearchOutcome {
    pub fn to_json(&self, replay: Option<&str>) -> serde_json::Value {
        json!({
            "status": self.status.to_string(),
            "target": self.target.to_string(),
            "witness": self.witness.as_ref().map(metric_to_json),
            "certificate": self.certificate.as_ref().map(|c| json!({"name": c.name, "detail": c.detail})),
            "samples_used": self.samples_used,
            "budget": self.budget,
            "seed": self.seed,
            "replay": replay,
        })
    }
}

/// Certificate that `kind` is unattainable on `family`, if one is known.
pub fn certificate(se: &StructureEquations, kind: TargetKind, family: &FamilyContext) -> Option<Certificate> {
    let n = se.n();
    // On unimodular structures the k-th and (n-k-1)-th scalars coincide.
    let first = |k: usize| k == 1 || (k + 2 == n && se.is_unimodular());
    match family {
        FamilyContext::Nilpotent6(p) => skt_scalar_certificate(kind, nilpotent6_skt_scalar(p), first),
        FamilyContext::Reduced6(p) => skt_scalar_certificate(kind, reduced6_skt_scalar(p), first),
        FamilyContext::Jt(t) => {
            if kind == TargetKind::Balanced {
                if let Ok(b) = balanced_feasibility_jt(t) {
                    return Some(Certificate::new("jt_balanced_determinant", b.certificate));
                }
            }
            skt_scalar_certificate(kind, jt_skt_scalar(t), first)
        }
        FamilyContext::NonNilpotent6 => match kind {
            TargetKind::GammaNegative(k) | TargetKind::GauduchonZero(k) if first(k) => Some(Certificate::new(
                "nonnilpotent_gamma_positive",
                "ddbar(Omega) = 2 x33 w11~22~ + 2 x22 w11~33~, so gamma1 > 0 for every metric".into(),
            )),
            TargetKind::Skt => Some(Certificate::new(
                "nonnilpotent_gamma_positive",
                "ddbar(Omega) has coefficient 2 x33 != 0 on w11~22~".into(),
            )),
            _ => None,
        },
        FamilyContext::Family8(a) => {
            let p = &a.re;
            match kind {
                TargetKind::Skt => Some(Certificate::new(
                    "family8_never_skt",
                    "ddbar(Omega) contains -2 x44 w22~33~, and x44 != 0".into(),
                )),
                TargetKind::GauduchonZero(k) if k + 1 < n && !p.is_positive() => Some(Certificate::new(
                    "family8_gauduchon_sign",
                    format!(
                        "p = {} <= 0: E = -2p(det H24 + det H34) + 2 det H14 > 0 for every positive H",
                        format_q(p)
                    ),
                )),
                TargetKind::Balanced if !a.im.is_zero() => Some(Certificate::new(
                    "family8_balanced_imaginary",
                    format!("q = {} != 0, while balanced requires A real", format_q(&a.im)),
                )),
                TargetKind::Balanced if !p.is_positive() => Some(Certificate::new(
                    "family8_balanced_sign",
                    format!("p = {} <= 0: p det H234 <= 0 < det H124 + det H134", format_q(p)),
                )),
                _ => None,
            }
        }
    }
}

/// Certificates from `∂∂̄Ω = x_{33̄}·K·ω^{11̄22̄}`, where `γ₁ = K h₃₃²/(12 det H)`.
fn skt_scalar_certificate(kind: TargetKind, k_value: Q, first: impl Fn(usize) -> bool) -> Option<Certificate> {
    let kv = format_q(&k_value);
    match kind {
        TargetKind::GammaNegative(k) if first(k) && !k_value.is_negative() => Some(Certificate::new(
            "skt_scalar_sign",
            format!("K = {kv} >= 0 and gamma1 = K h33^2 / (12 det H) for every metric"),
        )),
        TargetKind::GammaPositive(k) if first(k) && !k_value.is_positive() => Some(Certificate::new(
            "skt_scalar_sign",
            format!("K = {kv} <= 0 and gamma1 = K h33^2 / (12 det H) for every metric"),
        )),
        TargetKind::GauduchonZero(k) if first(k) && !k_value.is_zero() => Some(Certificate::new(
            "skt_scalar_sign",
            format!("K = {kv} != 0 and gamma1 = K h33^2 / (12 det H) for every metric"),
        )),
        TargetKind::Skt if !k_value.is_zero() => Some(Certificate::new(
            "skt_scalar_sign",
            format!("K = {kv} != 0 and ddbar(Omega) = x33 K w11~22~"),
        )),
        _ => None,
    }
}

/// Outcome of the closed-form test `2x > ρ + |B|²` on the reduced family.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduced6Feasibility {
    pub feasible: bool,
    /// `ρ + |B|² - 2x`, negative exactly when feasible.
    pub skt_scalar: Q,
    pub label: LieAlgebraLabel,
    pub case: &'static str,
    /// Any positive metric works when feasible; this is the standard one.
    pub recipe: Option<MetricCoefficients>,
}

pub fn reduced6_feasibility(p: &Reduced6Params) -> Reduced6Feasibility {
    let feasible = qi(2) * p.x.clone() > qi(p.rho as i64) + norm_sqr(&p.b);
    let (label, case) = classify_reduced6(p);
    Reduced6Feasibility {
        feasible,
        skt_scalar: reduced6_skt_scalar(p),
        label,
        case,
        recipe: feasible.then(|| MetricCoefficients::standard(3)),
    }
}

/// The determinant obstruction to balanced metrics on the `t`-deformation.
#[derive(Debug, Clone, PartialEq)]
pub struct JtBalanced {
    pub feasible: bool,
    /// Coefficients of `μ²`, `λμ`, `λ²` in `|x_{12̄}|² - λμ`.
    pub quadratic: [Q; 3],
    /// Discriminant of the quadratic; negative means definite.
    pub discriminant: Q,
    pub certificate: String,
}

pub fn balanced_feasibility_jt(t: &Q) -> Result<JtBalanced> {
    if !t.is_positive() || t > &Q::one() {
        return Err(Error::BadT(format_q(t)));
    }
    let quadratic = [Q::one(), (qi(2) - t.clone()) / t.clone(), Q::one() / (t.clone() * t.clone())];
    let discriminant = quadratic[1].clone() * quadratic[1].clone() - qi(4) * quadratic[0].clone() * quadratic[2].clone();
    assert!(quadratic.iter().all(Signed::is_positive), "coefficients are positive on (0, 1]");
    let certificate = format!(
        "balanced forces x12 = i(mu + lambda/t); then |x12|^2 - lambda mu = mu^2 + {} lambda mu + {} lambda^2 > 0 \
         for lambda, mu > 0, so H is not positive",
        format_q(&quadratic[1]),
        format_q(&quadratic[2])
    );
    Ok(JtBalanced { feasible: false, quadratic, discriminant, certificate })
}

/// The metric with `x_{11̄} = iλ`, `x_{22̄} = iμ`, `x_{33̄} = iν` and
/// `x_{12̄} = x_{21̄} = i(μ + λ/t)` that the balanced equation forces on the
/// `t`-deformation.
pub fn jt_balanced_candidate(t: &Q, lambda: &Q, mu: &Q, nu: &Q) -> MetricCoefficients {
    let off = cx(Q::zero(), mu.clone() + lambda.clone() / t.clone());
    let d = |v: &Q| cx(Q::zero(), v.clone());
    MetricCoefficients::from_matrix_unchecked(vec![
        vec![d(lambda), off.clone(), Cx::zero()],
        vec![off, d(mu), Cx::zero()],
        vec![Cx::zero(), Cx::zero(), d(nu)],
    ])
}

/// Real coordinates of a Hermitian `n×n` matrix: `h_jj`, then `Re h_jk`,
/// `Im h_jk` for `j < k`. Returns the basis matrices in that order.
pub fn hermitian_basis(n: usize) -> Vec<Matrix<Cx>> {
    let zero = || vec![vec![Cx::zero(); n]; n];
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        let mut m = zero();
        m[j][j] = Cx::one();
        out.push(m);
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut re = zero();
            re[j][k] = Cx::one();
            re[k][j] = Cx::one();
            out.push(re);
            let mut im = zero();
            im[j][k] = cx(Q::zero(), Q::one());
            im[k][j] = cx(Q::zero(), -Q::one());
            out.push(im);
        }
    }
    out
}

fn combine(basis: &[Matrix<Cx>], coords: &[Q]) -> Matrix<Cx> {
    let n = basis.first().map_or(0, Vec::len);
    let mut out = vec![vec![Cx::zero(); n]; n];
    for (b, c) in basis.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        for j in 0..n {
            for k in 0..n {
                if !b[j][k].is_zero() {
                    out[j][k] = out[j][k].clone() + b[j][k].clone() * cx(c.clone(), Q::zero());
                }
            }
        }
    }
    out
}

fn metric_from_h<S: Scalar>(h: &Matrix<S>) -> MetricCoefficients<S> {
    let i = S::imag_unit();
    MetricCoefficients::from_matrix_unchecked(h.iter().map(|r| r.iter().map(|v| i.clone() * v.clone()).collect()).collect())
}

fn real_rows(forms: &[Form]) -> Matrix<Cx> {
    // One row per (monomial, real or imaginary part), one column per form.
    let mut monos: Vec<_> = forms.iter().flat_map(|f| f.terms().map(|(m, _)| *m)).collect();
    monos.sort();
    monos.dedup();
    let mut rows = Vec::with_capacity(2 * monos.len());
    for m in monos {
        let coeffs: Vec<Cx> = forms.iter().map(|f| f.coefficient(m)).collect();
        rows.push(coeffs.iter().map(|c| cx(c.re.clone(), Q::zero())).collect());
        rows.push(coeffs.iter().map(|c| cx(c.im.clone(), Q::zero())).collect());
    }
    rows
}

/// Real coordinate vectors of the Hermitian `H` with `∂∂̄Ω = 0` for `X = iH`.
pub fn skt_subspace(se: &StructureEquations) -> Matrix<Cx> {
    let n = se.n();
    let cols: Vec<Form> =
        hermitian_basis(n).iter().map(|b| se.ddbar(&metric_from_h(b).fundamental_form())).collect();
    linalg::null_space(&real_rows(&cols), n * n)
}

/// `det(Z)·Ω(Z⁻¹)^{n-1}`, which is linear in `Z`.
fn scaled_cofactor_power(z: &Matrix<Cx>) -> Result<Form> {
    let n = z.len();
    let x = linalg::inverse(z)?;
    let det = linalg::determinant(z);
    Ok(MetricCoefficients::from_matrix_unchecked(x).fundamental_form().power(n - 1).scale(&det))
}

/// Real coordinate vectors of the Hermitian `G` such that `X = i G⁻¹` is
/// balanced. Balanced is invariant under scaling and `Ω^{n-1}` is
/// proportional to a linear function of `X⁻¹ = -iG`, so the condition is
/// linear in `G`.
pub fn balanced_subspace(se: &StructureEquations) -> Result<Matrix<Cx>> {
    let n = se.n();
    let id: Matrix<Cx> = linalg::identity(n);
    let base = scaled_cofactor_power(&id)?;
    // d F(E_jk) for the unit matrices, using linearity around the identity.
    let mut unit_images = vec![vec![Form::zero(2 * n, 2 * n - 1); n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut z = id.clone();
            z[j][k] = z[j][k].clone() + Cx::one();
            unit_images[j][k] = se.d(&scaled_cofactor_power(&z)?.sub(&base));
        }
    }
    let minus_i = cx(Q::zero(), -Q::one());
    let cols: Vec<Form> = hermitian_basis(n)
        .iter()
        .map(|b| {
            let mut acc = Form::zero(2 * n, 2 * n - 1);
            for j in 0..n {
                for k in 0..n {
                    if !b[j][k].is_zero() {
                        acc = acc.add(&unit_images[j][k].scale(&(minus_i.clone() * b[j][k].clone())));
                    }
                }
            }
            acc
        })
        .collect();
    Ok(linalg::null_space(&real_rows(&cols), n * n))
}

/// `Re(i^{1-n}·top(∂∂̄Ω^k∧Ω^{n-k-1}))`; same sign as the `k`-th scalar.
fn numerator<S: Scalar>(x: &MetricCoefficients<S>, k: usize, se: &StructureEquations<S>) -> Result<S::Real> {
    let n = se.n();
    let top = top_coefficient(&gauduchon_form(&x.fundamental_form(), k, se)?);
    let rot = (0..(4 - (n - 1) % 4) % 4).fold(S::one(), |acc, _| acc * S::imag_unit());
    Ok((rot * top).re())
}

fn sample_hermitian(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Cx> {
    let m: Matrix<Cx> = (0..n)
        .map(|_| (0..n).map(|_| cx(q(rng.gen_range(-4..=4), 4), q(rng.gen_range(-4..=4), 4))).collect())
        .collect();
    let mut h = linalg::mat_mul(&m, &linalg::conj_transpose(&m));
    for (j, row) in h.iter_mut().enumerate() {
        row[j] = row[j].clone() + cx(q(1, 1024), Q::zero());
    }
    h
}

fn to_float_matrix(m: &Matrix<Cx>) -> Matrix<Cf> {
    m.iter().map(|r| r.iter().map(crate::scalar::to_float).collect()).collect()
}

/// Coefficients `c_0..c_{n-1}` of the polynomial through `(s, ys[s])`, `s = 0..`.
fn interpolate<S: Scalar>(ys: &[S]) -> Result<Vec<S>> {
    let m = ys.len();
    let vander: Matrix<S> = (0..m)
        .map(|s| (0..m).map(|p| (0..p).fold(S::one(), |acc, _| acc * S::from_i64(s as i64))).collect())
        .collect();
    linalg::solve(&vander, ys)
}

/// Rational roots of a polynomial of actual degree 1 or 2.
fn rational_roots(c: &[Q]) -> Vec<Q> {
    let deg = match c.iter().rposition(|v| !v.is_zero()) {
        Some(d) => d,
        None => return Vec::new(),
    };
    match deg {
        1 => vec![-c[0].clone() / c[1].clone()],
        2 => {
            let disc = c[1].clone() * c[1].clone() - qi(4) * c[2].clone() * c[0].clone();
            match rational_sqrt(&disc) {
                Some(r) => {
                    let two_a = qi(2) * c[2].clone();
                    vec![(-c[1].clone() - r.clone()) / two_a.clone(), (-c[1].clone() + r) / two_a]
                }
                None => Vec::new(),
            }
        }
        _ => Vec::new(),
    }
}

/// Real roots of a floating polynomial of (numerical) degree 1 or 2.
fn float_roots(c: &[f64]) -> Vec<f64> {
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let deg = c.iter().rposition(|v| v.abs() > 1e-9 * scale).unwrap_or(0);
    match deg {
        1 => vec![-c[0] / c[1]],
        2 => {
            let disc = c[1] * c[1] - 4.0 * c[2] * c[0];
            if disc < 0.0 {
                Vec::new()
            } else {
                let r = disc.sqrt();
                vec![(-c[1] - r) / (2.0 * c[2]), (-c[1] + r) / (2.0 * c[2])]
            }
        }
        _ => Vec::new(),
    }
}

fn shifted(h: &Matrix<Cx>, d: &Matrix<Cx>, s: &Q) -> Matrix<Cx> {
    let sc = cx(s.clone(), Q::zero());
    h.iter().zip(d).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.clone() + y.clone() * sc.clone()).collect()).collect()
}

fn shifted_f(h: &Matrix<Cf>, d: &Matrix<Cf>, s: f64) -> Matrix<Cf> {
    h.iter().zip(d).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y * s).collect()).collect()
}

struct Searcher<'a> {
    se: &'a StructureEquations,
    se_f: StructureEquations<Cf>,
    kind: TargetKind,
}

impl<'a> Searcher<'a> {
    fn verify(&self, x: &MetricCoefficients) -> Result<bool> {
        if !crate::metric::is_positive_metric(x) {
            return Ok(false);
        }
        let se = self.se;
        let omega = x.fundamental_form();
        Ok(match self.kind {
            TargetKind::GammaNegative(k) => gamma_scalar(x, k, se)?.is_negative(),
            TargetKind::GammaPositive(k) => gamma_scalar(x, k, se)?.is_positive(),
            TargetKind::GauduchonZero(k) => gauduchon_form(&omega, k, se)?.is_zero(),
            TargetKind::Skt => se.ddbar(&omega).is_zero(),
            TargetKind::Balanced => se.d(&omega.power(se.n() - 1)).is_zero(),
        })
    }

    fn gamma_sample(&self, h: &Matrix<Cx>, k: usize, want: i32) -> Result<Option<MetricCoefficients>> {
        let hf = to_float_matrix(h);
        let g = numerator(&metric_from_h(&hf), k, &self.se_f)?;
        let scale = 1e-9 * hf.iter().flatten().fold(1.0f64, |m, v| m.max(v.norm())).powi(self.se.n() as i32);
        if (want < 0 && g > scale) || (want > 0 && g < -scale) {
            return Ok(None);
        }
        let x = metric_from_h(h);
        Ok(self.verify(&x)?.then_some(x))
    }

    /// Exact zero along `h + s·d`, screened in floating point first.
    fn line_zero(&self, h: &Matrix<Cx>, d: &Matrix<Cx>, k: usize, lo: f64, hi: f64) -> Result<Option<MetricCoefficients>> {
        let n = self.se.n();
        let hf = to_float_matrix(h);
        let df = to_float_matrix(d);
        let ys: Vec<Cf> = (0..n)
            .map(|s| numerator(&metric_from_h(&shifted_f(&hf, &df, s as f64)), k, &self.se_f).map(|v| Cf::new(v, 0.0)))
            .collect::<Result<_>>()?;
        let coeffs: Vec<f64> = match interpolate(&ys) {
            Ok(c) => c.iter().map(|v| v.re).collect(),
            Err(_) => return Ok(None),
        };
        let promising = float_roots(&coeffs)
            .into_iter()
            .any(|s| s > lo && s < hi && is_positive_hermitian(&shifted_f(&hf, &df, s)));
        if !promising {
            return Ok(None);
        }
        let ys: Vec<Cx> = (0..n)
            .map(|s| numerator(&metric_from_h(&shifted(h, d, &qi(s as i64))), k, self.se).map(|v| cx(v, Q::zero())))
            .collect::<Result<_>>()?;
        let coeffs: Vec<Q> = interpolate(&ys)?.into_iter().map(|c| c.re).collect();
        for s in rational_roots(&coeffs) {
            let x = metric_from_h(&shifted(h, d, &s));
            if self.verify(&x)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    fn zero_sample(&self, h: &Matrix<Cx>, k: usize, directions: &[Matrix<Cx>]) -> Result<Option<MetricCoefficients>> {
        let x = metric_from_h(h);
        let xf = metric_from_h(&to_float_matrix(h));
        if numerator(&xf, k, &self.se_f)?.abs() < 1e-9 && self.verify(&x)? {
            return Ok(Some(x));
        }
        for d in directions {
            if let Some(w) = self.line_zero(h, d, k, f64::NEG_INFINITY, f64::INFINITY)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

/// Coordinates of the point of `span(basis)` closest to `target` (Euclidean on coordinates).
fn project(basis: &Matrix<Cx>, target: &[Cx]) -> Result<Vec<Q>> {
    let gram: Matrix<Cx> = basis
        .iter()
        .map(|u| basis.iter().map(|v| u.iter().zip(v).fold(Cx::zero(), |a, (x, y)| a + x.clone() * y.clone())).collect())
        .collect();
    let rhs: Vec<Cx> = basis.iter().map(|u| u.iter().zip(target).fold(Cx::zero(), |a, (x, y)| a + x.clone() * y.clone())).collect();
    let c = linalg::solve(&gram, &rhs)?;
    let dim = target.len();
    Ok((0..dim).map(|i| basis.iter().zip(&c).fold(Q::zero(), |a, (u, ci)| a + (u[i].clone() * ci.clone()).re)).collect())
}

fn hermitian_coords(h: &Matrix<Cx>) -> Vec<Cx> {
    let n = h.len();
    let mut out: Vec<Cx> = (0..n).map(|j| cx(h[j][j].re.clone(), Q::zero())).collect();
    for j in 0..n {
        for k in j + 1..n {
            out.push(cx(h[j][k].re.clone(), Q::zero()));
            out.push(cx(h[j][k].im.clone(), Q::zero()));
        }
    }
    out
}

/// Samples from a linear subspace of Hermitian matrices, looking for a positive one.
fn subspace_search(
    basis: &Matrix<Cx>,
    n: usize,
    budget: usize,
    rng: &mut ChaCha8Rng,
    accept: impl Fn(&Matrix<Cx>) -> Result<Option<MetricCoefficients>>,
) -> Result<(Option<MetricCoefficients>, usize)> {
    let herm = hermitian_basis(n);
    let identity: Matrix<Cx> = linalg::identity(n);
    for i in 0..budget {
        let coords = match i {
            0 => project(basis, &hermitian_coords(&identity))?,
            _ if i % 2 == 1 => project(basis, &hermitian_coords(&sample_hermitian(rng, n)))?,
            _ => {
                let w: Vec<Q> = basis.iter().map(|_| qi(rng.gen_range(-4..=4))).collect();
                (0..n * n).map(|c| basis.iter().zip(&w).fold(Q::zero(), |a, (u, wi)| a + u[c].re.clone() * wi.clone())).collect()
            }
        };
        let g = combine(&herm, &coords);
        if !is_positive_hermitian(&g) {
            continue;
        }
        if let Some(x) = accept(&g)? {
            return Ok((Some(x), i + 1));
        }
    }
    Ok((None, budget))
}

/// A linear system whose solutions all have a vanishing diagonal entry
/// contains no positive definite matrix.
fn degenerate_subspace(basis: &Matrix<Cx>, n: usize, system: &str, var: &str) -> Option<Certificate> {
    if basis.is_empty() {
        return Some(Certificate::new("linear_system_trivial", format!("{system} has only the zero solution")));
    }
    (0..n).find(|&j| basis.iter().all(|v| v[j].is_zero())).map(|j| {
        Certificate::new(
            "linear_system_degenerate",
            format!("{system} forces {var}{} = 0 for every solution", j + 1),
        )
    })
}

/// Searches for a metric meeting `target`. Deterministic in `(se, target, budget, seed)`.
pub fn find_metric(se: &StructureEquations, target: &Target, budget: usize, seed: u64) -> Result<SearchOutcome> {
    let n = se.n();
    if budget == 0 {
        return Err(Error::BadParams("budget must be positive".into()));
    }
    match target.kind {
        TargetKind::GammaNegative(k) | TargetKind::GammaPositive(k) | TargetKind::GauduchonZero(k)
            if k == 0 || k + 1 > n =>
        {
            return Err(Error::BadK { k, max: n.saturating_sub(1) })
        }
        _ => {}
    }
    let outcome = |status, witness, certificate, samples_used| SearchOutcome {
        status,
        target: target.kind,
        witness,
        certificate,
        samples_used,
        budget,
        seed,
    };
    if let Some(cert) = target.family.as_ref().and_then(|f| certificate(se, target.kind, f)) {
        return Ok(outcome(SearchStatus::InfeasibleCertified, None, Some(cert), 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Searcher { se, se_f: se.to_float(), kind: target.kind };
    let (found, used) = match target.kind {
        TargetKind::Skt => {
            let basis = skt_subspace(se);
            if let Some(cert) = degenerate_subspace(&basis, n, "ddbar(Omega) = 0", "h") {
                return Ok(outcome(SearchStatus::InfeasibleCertified, None, Some(cert), 0));
            }
            subspace_search(&basis, n, budget, &mut rng, |h| {
                let x = metric_from_h(h);
                Ok(s.verify(&x)?.then_some(x))
            })?
        }
        TargetKind::Balanced => {
            let basis = balanced_subspace(se)?;
            if let Some(cert) = degenerate_subspace(&basis, n, "d(Omega^(n-1)) = 0", "(H^-1)") {
                return Ok(outcome(SearchStatus::InfeasibleCertified, None, Some(cert), 0));
            }
            subspace_search(&basis, n, budget, &mut rng, |g| {
                let x = metric_from_h(&linalg::inverse(g)?);
                Ok(s.verify(&x)?.then_some(x))
            })?
        }
        TargetKind::GammaNegative(k) | TargetKind::GammaPositive(k) => {
            let want = if matches!(target.kind, TargetKind::GammaNegative(_)) { -1 } else { 1 };
            let mut found = (None, budget);
            for i in 0..budget {
                let h = sample_hermitian(&mut rng, n);
                if let Some(x) = s.gamma_sample(&h, k, want)? {
                    found = (Some(x), i + 1);
                    break;
                }
            }
            found
        }
        TargetKind::GauduchonZero(k) => {
            let directions = hermitian_basis(n);
            let mut found = (None, budget);
            let mut first_signed: [Option<Matrix<Cx>>; 2] = [None, None];
            for i in 0..budget {
                let h = sample_hermitian(&mut rng, n);
                if let Some(x) = s.zero_sample(&h, k, &directions)? {
                    found = (Some(x), i + 1);
                    break;
                }
                // Segment between the first samples of opposite sign; positive throughout.
                let v = numerator(&metric_from_h(&to_float_matrix(&h)), k, &s.se_f)?;
                let slot = usize::from(v > 0.0);
                if first_signed[slot].is_none() {
                    first_signed[slot] = Some(h.clone());
                    if let [Some(a), Some(b)] = &first_signed {
                        let d: Matrix<Cx> = b.iter().zip(a).map(|(r, t)| r.iter().zip(t).map(|(x, y)| x.clone() - y.clone()).collect()).collect();
                        if let Some(x) = s.line_zero(a, &d, k, 0.0, 1.0)? {
                            found = (Some(x), i + 1);
                            break;
                        }
                    }
                }
            }
            found
        }
    };
    Ok(match found {
        Some(x) => outcome(SearchStatus::Witness, Some(x), None, used),
        None => outcome(SearchStatus::Exhausted, None, None, used),
    })
}
