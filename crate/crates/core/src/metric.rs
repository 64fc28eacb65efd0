//! Invariant Hermitian metrics `Ω = Σ x_{jk̄} ω^j∧ω̄^k` on a fixed complex
//! coframe, and the metric classes they fall into.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dsl::form_terms_json;
use crate::error::{Error, Result};
use crate::form::{Form, Monomial};
use crate::linalg::{self, ldl_hermitian, Matrix};
use crate::scalar::{cx, factorial, format_q, i_pow, parse_q, to_float, Cf, Cx, Scalar, Q};
use crate::structure::StructureEquations;

/// The skew-Hermitian coefficient matrix `X` of a fundamental form:
/// `conj(x_{kj̄}) = -x_{jk̄}`, so that `H = -iX` is Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricCoefficients<S: Scalar = Cx> {
    x: Matrix<S>,
}

impl MetricCoefficients<Cx> {
    pub fn new(x: Matrix<Cx>) -> Result<Self> {
        let n = x.len();
        for (j, row) in x.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for k in 0..n {
                if x[k][j].conj() != -row[k].clone() {
                    return Err(Error::NotSkewHermitian(j + 1, k + 1));
                }
            }
        }
        Ok(MetricCoefficients { x })
    }

    /// `X = diag(iλ_1, …, iλ_n)`.
    pub fn diagonal(lambdas: &[Q]) -> Self {
        let n = lambdas.len();
        let x = (0..n)
            .map(|j| (0..n).map(|k| if j == k { cx(Q::zero(), lambdas[j].clone()) } else { Cx::zero() }).collect())
            .collect();
        MetricCoefficients { x }
    }

    /// The standard metric `X = i·Id`.
    pub fn standard(n: usize) -> Self {
        Self::diagonal(&vec![Q::one(); n])
    }

    /// `X = iH` for Hermitian `H`.
    pub fn from_hermitian(h: &Matrix<Cx>) -> Result<Self> {
        let i = Cx::imag_unit();
        Self::new(h.iter().map(|row| row.iter().map(|v| i.clone() * v.clone()).collect()).collect())
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let c = cx(c.clone(), Q::zero());
        MetricCoefficients { x: self.x.iter().map(|r| r.iter().map(|v| v.clone() * c.clone()).collect()).collect() }
    }

    pub fn to_float(&self) -> MetricCoefficients<Cf> {
        MetricCoefficients { x: self.x.iter().map(|r| r.iter().map(to_float).collect()).collect() }
    }
}

impl<S: Scalar> MetricCoefficients<S> {
    /// Wraps a matrix without checking; the caller guarantees skew-Hermitian.
    pub fn from_matrix_unchecked(x: Matrix<S>) -> Self {
        MetricCoefficients { x }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Entry `x_{jk̄}`, 1-based.
    pub fn entry(&self, j: usize, k: usize) -> &S {
        &self.x[j - 1][k - 1]
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.x
    }

    /// `H = -iX`.
    pub fn hermitian(&self) -> Matrix<S> {
        let mi = -S::imag_unit();
        self.x.iter().map(|r| r.iter().map(|v| mi.clone() * v.clone()).collect()).collect()
    }

    /// `Ω` on `2n` generator slots.
    pub fn fundamental_form(&self) -> Form<S> {
        let n = self.n();
        let mut f = Form::zero(2 * n, 2);
        for j in 0..n {
            for k in 0..n {
                if self.x[j][k].negligible() {
                    continue;
                }
                let (sign, m) = Monomial::from_slots(&[2 * j, 2 * k + 1]).expect("distinct slots");
                let c = self.x[j][k].clone();
                f.add_term(m, if sign < 0 { -c } else { c });
            }
        }
        f
    }
}

/// `Ω = Σ x_{jk̄} ω^j∧ω̄^k`, checked against the dimension of `se`.
pub fn fundamental_form(x: &MetricCoefficients, se: &StructureEquations) -> Result<Form> {
    if x.n() != se.n() {
        return Err(Error::DimensionMismatch { expected: se.n(), found: x.n() });
    }
    Ok(x.fundamental_form())
}

/// `H` is positive definite iff every pivot of `H = LDL*` is a positive real.
pub fn is_positive_hermitian<S: Scalar>(h: &Matrix<S>) -> bool {
    match ldl_hermitian(h) {
        Some((_, d)) => d.iter().all(|p| p.is_real() && p.re() > S::Real::zero()),
        None => false,
    }
}

pub fn is_positive_metric<S: Scalar>(x: &MetricCoefficients<S>) -> bool {
    is_positive_hermitian(&x.hermitian())
}

/// The top monomial `ω^1∧ω̄^1∧…∧ω^n∧ω̄^n`.
pub fn sigma(n: usize) -> Monomial {
    Monomial((1u32 << (2 * n)) - 1)
}

/// Coefficient of an `(n,n)`-form on [`sigma`].
pub fn top_coefficient<S: Scalar>(f: &Form<S>) -> S {
    f.coefficient(sigma(f.gens() / 2))
}

/// `n!·iⁿ·det(-iX)`, the closed form of the top coefficient of `Ωⁿ`.
pub fn volume_coefficient(x: &MetricCoefficients) -> Cx {
    let n = x.n();
    cx(factorial(n as u64), Q::zero()) * i_pow(n) * linalg::determinant(&x.hermitian())
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k + 1 > n {
        return Err(Error::BadK { k, max: n.saturating_sub(1) });
    }
    Ok(())
}

/// `∂∂̄(Ω^k) ∧ Ω^{n-k-1}`.
pub fn gauduchon_form<S: Scalar>(omega: &Form<S>, k: usize, se: &StructureEquations<S>) -> Result<Form<S>> {
    let n = se.n();
    check_k(k, n)?;
    Ok(se.ddbar(&omega.power(k)).wedge(&omega.power(n - k - 1)))
}

/// `(i/2)·top(∂∂̄Ω^k∧Ω^{n-k-1}) / top(Ωⁿ)` without the reality assertion.
pub fn gamma_ratio<S: Scalar>(omega: &Form<S>, k: usize, se: &StructureEquations<S>) -> Result<S> {
    let top = top_coefficient(&gauduchon_form(omega, k, se)?);
    let vol = top_coefficient(&omega.power(se.n()));
    if vol.negligible() {
        return Err(Error::NotPositive);
    }
    let half_i = S::imag_unit() / S::from_i64(2);
    Ok(half_i * top / vol)
}

/// The constant `r` with `(i/2)∂∂̄Ω^k∧Ω^{n-k-1} = r·Ωⁿ`. Its sign is the
/// sign of the `k`-th Gauduchon constant of the invariant metric.
pub fn gamma_scalar(x: &MetricCoefficients, k: usize, se: &StructureEquations) -> Result<Q> {
    if x.n() != se.n() {
        return Err(Error::DimensionMismatch { expected: se.n(), found: x.n() });
    }
    check_k(k, se.n())?;
    if !is_positive_metric(x) {
        return Err(Error::NotPositive);
    }
    let r = gamma_ratio(&x.fundamental_form(), k, se)?;
    assert!(r.im.is_zero(), "gamma scalar must be real, got {r}");
    Ok(r.re)
}

/// Floating version of [`gamma_scalar`] for screening; returns the real part.
pub fn gamma_scalar_float(x: &MetricCoefficients<Cf>, k: usize, se: &StructureEquations<Cf>) -> Result<f64> {
    Ok(gamma_ratio(&x.fundamental_form(), k, se)?.re)
}

/// The 1-form `θ` with `d(Ω^{n-1}) = θ∧Ω^{n-1}`.
pub fn lee_form<S: Scalar>(omega: &Form<S>, se: &StructureEquations<S>) -> Result<Form<S>> {
    let n = se.n();
    let gens = se.gens();
    let top = omega.power(n - 1);
    let rhs = se.d(&top);
    let full = sigma(n).0;
    // Rows: monomials missing one slot. Columns: θ's coefficient on each slot.
    let rows: Vec<Monomial> = (0..gens).map(|s| Monomial(full & !(1 << s))).collect();
    let columns: Vec<Form<S>> = (0..gens).map(|s| Form::generator(gens, s).wedge(&top)).collect();
    let a: Matrix<S> = rows.iter().map(|m| columns.iter().map(|c| c.coefficient(*m)).collect()).collect();
    let b: Vec<S> = rows.iter().map(|m| rhs.coefficient(*m)).collect();
    let t = linalg::solve(&a, &b)?;
    let mut theta = Form::zero(gens, 1);
    for (s, c) in t.into_iter().enumerate() {
        if !c.negligible() {
            theta.add_term(Monomial(1 << s), c);
        }
    }
    Ok(theta)
}

/// Which metric classes an invariant Hermitian metric belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub n: usize,
    /// `gamma[k-1]` is the `k`-th Gauduchon scalar, `k = 1..n-1`.
    pub gamma: Vec<Q>,
    pub kahler: bool,
    pub skt: bool,
    pub astheno: bool,
    pub balanced: bool,
    /// `kth_gauduchon[k-1]` for `k = 1..n-1`.
    pub kth_gauduchon: Vec<bool>,
    pub lee_form: Form,
}

impl ClassReport {
    pub fn gamma_k(&self, k: usize) -> &Q {
        &self.gamma[k - 1]
    }

    pub fn kth_gauduchon_k(&self, k: usize) -> bool {
        self.kth_gauduchon[k - 1]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let gamma: serde_json::Map<String, serde_json::Value> =
            self.gamma.iter().enumerate().map(|(i, g)| ((i + 1).to_string(), json!(format_q(g)))).collect();
        json!({
            "n": self.n,
            "gamma": gamma,
            "kahler": self.kahler,
            "skt": self.skt,
            "astheno": self.astheno,
            "balanced": self.balanced,
            "kth_gauduchon": self.kth_gauduchon,
            "lee_form": form_terms_json(&self.lee_form),
        })
    }
}

pub fn classify_metric(x: &MetricCoefficients, se: &StructureEquations) -> Result<ClassReport> {
    let n = se.n();
    if x.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.n() });
    }
    if !is_positive_metric(x) {
        return Err(Error::NotPositive);
    }
    let omega = x.fundamental_form();
    let powers: Vec<Form> = (0..=n).map(|k| omega.power(k)).collect();
    let vol = top_coefficient(&powers[n]);
    let half_i = Cx::imag_unit() / Cx::from_i64(2);
    let mut gamma = Vec::new();
    let mut kth = Vec::new();
    for k in 1..n {
        let g = se.ddbar(&powers[k]).wedge(&powers[n - k - 1]);
        let r = half_i.clone() * top_coefficient(&g) / vol.clone();
        assert!(r.im.is_zero(), "gamma scalar must be real, got {r}");
        kth.push(g.is_zero());
        gamma.push(r.re);
    }
    let kahler = se.d(&omega).is_zero();
    let skt = se.ddbar(&omega).is_zero();
    let astheno = n < 2 || se.ddbar(&powers[n - 2]).is_zero();
    let balanced = se.d(&powers[n - 1]).is_zero();
    let lee = lee_form(&omega, se)?;
    Ok(ClassReport { n, gamma, kahler, skt, astheno, balanced, kth_gauduchon: kth, lee_form: lee })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxJson {
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricJson {
    pub n: usize,
    #[serde(rename = "X")]
    pub x: Vec<Vec<CxJson>>,
}

pub fn cx_to_json(z: &Cx) -> CxJson {
    CxJson { re: format_q(&z.re), im: format_q(&z.im) }
}

pub fn cx_from_json(z: &CxJson) -> Result<Cx> {
    Ok(cx(parse_q(&z.re)?, parse_q(&z.im)?))
}

pub fn metric_to_json(x: &MetricCoefficients) -> MetricJson {
    MetricJson { n: x.n(), x: x.matrix().iter().map(|r| r.iter().map(cx_to_json).collect()).collect() }
}

pub fn metric_from_json(js: &MetricJson) -> Result<MetricCoefficients> {
    if js.x.len() != js.n {
        return Err(Error::DimensionMismatch { expected: js.n, found: js.x.len() });
    }
    let m = js.x.iter().map(|r| r.iter().map(cx_from_json).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    MetricCoefficients::new(m)
}

pub fn load_metric(text: &str) -> Result<MetricCoefficients> {
    let js: MetricJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    metric_from_json(&js)
}
