//! Products of Sasakian manifolds (formula level) and circle bundles over
//! quasi-Sasakian Lie algebras (constructive).

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{Form, Monomial};
use crate::linalg::{self, Matrix};
use crate::metric::{gamma_scalar, MetricCoefficients};
use crate::scalar::{binomial_nonneg, cx_real, factorial, format_q, parse_q, q_to_f64, rational_sqrt, sign, Cx, Q};
use crate::structure::{complex_frame_from_real, real_two_form, ComplexFrame, RealLieAlgebra};

/// `C(n,s) = C(n-3,s) + 2a·C(n-3,s-1) + (a²+b²)·C(n-3,s-2)`.
pub fn coefficient_c(n: usize, s: usize, a: &Q, b: &Q) -> Result<Q> {
    if n < 4 || s >= n {
        return Err(Error::BadRange(format!("need n >= 4 and 0 <= s <= n-1, got n = {n}, s = {s}")));
    }
    let m = n as i64 - 3;
    let s = s as i64;
    let two = Q::from_integer(2.into());
    Ok(binomial_nonneg(m, s)
        + two * a.clone() * binomial_nonneg(m, s - 1)
        + (a.clone() * a.clone() + b.clone() * b.clone()) * binomial_nonneg(m, s - 2))
}

/// The values `C(n,0..n-1)`.
pub fn coefficient_table(n: usize, a: &Q, b: &Q) -> Result<Vec<Q>> {
    (0..n).map(|s| coefficient_c(n, s, a, b)).collect()
}

/// Two Sasakian factors of dimensions `2n₁+1`, `2n₂+1`, the complex structure
/// parameters `a, b` and the metric `Φ₁ + Φ₂ + t η₁∧η₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductParams {
    pub n1: usize,
    pub n2: usize,
    pub a: Q,
    pub b: Q,
    pub t: Q,
}

impl ProductParams {
    pub fn new(n1: usize, n2: usize, a: Q, b: Q, t: Q) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::BadDimensions(format!("factor dimensions must be positive, got {n1}, {n2}")));
        }
        if b.is_zero() {
            return Err(Error::BadParams("b must be nonzero".into()));
        }
        if !(t.clone() / b.clone()).is_positive() {
            return Err(Error::BadParams("t/b must be positive".into()));
        }
        Ok(ProductParams { n1, n2, a, b, t })
    }

    /// Complex dimension `n₁ + n₂ + 1`.
    pub fn n(&self) -> usize {
        self.n1 + self.n2 + 1
    }
}

/// `n₁(n₁-1) + 2a·n₁n₂ + (a²+b²)·n₂(n₂-1)`.
pub fn product_quadratic(n1: usize, n2: usize, a: &Q, b: &Q) -> Q {
    let (n1, n2) = (Q::from_integer(n1.into()), Q::from_integer(n2.into()));
    let one = Q::one();
    n1.clone() * (n1.clone() - one.clone())
        + Q::from_integer(2.into()) * a.clone() * n1 * n2.clone()
        + (a.clone() * a.clone() + b.clone() * b.clone()) * n2.clone() * (n2 - one)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductReport {
    pub n: usize,
    /// The quadratic condition; `None` when `n = 3`.
    pub quadratic: Option<Q>,
    /// `C(n, n₂)`; `None` when `n = 3`.
    pub c_n_n2: Option<Q>,
    /// `r` with `(i/2)∂∂̄Ω∧Ω^{n-2} = r·Ωⁿ`.
    pub gamma: Q,
    pub first_gauduchon: bool,
    pub astheno: bool,
    /// Only meaningful when `n = 3`, where SKT and astheno coincide.
    pub skt: Option<bool>,
}

pub fn product_report(p: &ProductParams) -> Result<ProductReport> {
    let n = p.n();
    let nq = Q::from_integer(n.into());
    let two = Q::from_integer(2.into());
    if n == 3 {
        let gamma = p.a.clone() * p.t.clone() / (Q::from_integer(3.into()) * p.b.clone());
        let zero = p.a.is_zero();
        return Ok(ProductReport {
            n,
            quadratic: None,
            c_n_n2: None,
            gamma,
            first_gauduchon: zero,
            astheno: zero,
            skt: Some(zero),
        });
    }
    let quad = product_quadratic(p.n1, p.n2, &p.a, &p.b);
    let c = coefficient_c(n, p.n2, &p.a, &p.b)?;
    let denom = product_quadratic(p.n1, p.n2, &Q::one(), &Q::zero());
    let gamma = (nq.clone() - two) * p.t.clone() / (nq * p.b.clone()) * quad.clone() / denom;
    let zero = quad.is_zero();
    Ok(ProductReport { n, quadratic: Some(quad), c_n_n2: Some(c), gamma, first_gauduchon: zero, astheno: zero, skt: None })
}

/// `C(n,n₂) = Q·m!/(n₁!·n₂!)` with `m = n₁+n₂-2`.
pub fn c_from_quadratic(n1: usize, n2: usize, quad: &Q) -> Q {
    let m = (n1 + n2 - 2) as u64;
    quad.clone() * factorial(m) / (factorial(n1 as u64) * factorial(n2 as u64))
}

/// The set of `(a, b)` with `b ≠ 0` solving the quadratic condition.
#[derive(Debug, Clone, PartialEq)]
pub enum Admissible {
    /// `b² = -(c0 + c1·a + c2·a²)/c2` is positive for `a` strictly between
    /// `center ± sqrt(half_width_sq)`.
    Interval { c0: Q, c1: Q, c2: Q, center: Q, half_width_sq: Q, endpoints: Option<(Q, Q)> },
    /// The condition does not involve `b`; it holds exactly on `a = value`.
    Line { value: Q },
}

impl Admissible {
    /// `b²` for a given `a`, when the condition determines it.
    pub fn b_squared(&self, a: &Q) -> Option<Q> {
        match self {
            Admissible::Interval { c0, c1, c2, .. } => {
                let v = -(c0.clone() + c1.clone() * a.clone() + c2.clone() * a.clone() * a.clone()) / c2.clone();
                v.is_positive().then_some(v)
            }
            Admissible::Line { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Admissible::Line { value } => format!("a = {}, b any nonzero", format_q(value)),
            Admissible::Interval { c0, c1, c2, center, half_width_sq, endpoints } => {
                let range = match endpoints {
                    Some((lo, hi)) => format!("a in ({}, {})", format_q(lo), format_q(hi)),
                    None => format!(
                        "a in ({c} - sqrt({w}), {c} + sqrt({w})) ~ ({:.6}, {:.6})",
                        q_to_f64(center) - q_to_f64(half_width_sq).sqrt(),
                        q_to_f64(center) + q_to_f64(half_width_sq).sqrt(),
                        c = format_q(center),
                        w = format_q(half_width_sq)
                    ),
                };
                format!(
                    "b^2 = -({} + {}*a + {}*a^2)/{}, positive for {}",
                    format_q(c0),
                    format_q(c1),
                    format_q(c2),
                    format_q(c2),
                    range
                )
            }
        }
    }
}

pub fn solve_admissible(n1: usize, n2: usize) -> Result<Admissible> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::BadDimensions(format!("factor dimensions must be positive, got {n1}, {n2}")));
    }
    if n1 + n2 + 1 <= 3 {
        return Err(Error::BadDimensions(
            "n = 3: the condition reduces to a = 0; use the product report".into(),
        ));
    }
    let (q1, q2) = (Q::from_integer(n1.into()), Q::from_integer(n2.into()));
    let one = Q::one();
    let c0 = q1.clone() * (q1.clone() - one.clone());
    let c1 = Q::from_integer(2.into()) * q1.clone() * q2.clone();
    let c2 = q2.clone() * (q2 - one);
    if c2.is_zero() {
        return Ok(Admissible::Line { value: -c0 / c1 });
    }
    let center = -c1.clone() / (Q::from_integer(2.into()) * c2.clone());
    // discriminant/4 = n₁n₂(n₁+n₂-1)
    let quarter_disc = c1.clone() * c1.clone() / Q::from_integer(4.into()) - c0.clone() * c2.clone();
    let half_width_sq = quarter_disc / (c2.clone() * c2.clone());
    let endpoints = rational_sqrt(&half_width_sq).map(|w| (center.clone() - w.clone(), center.clone() + w));
    Ok(Admissible::Interval { c0, c1, c2, center, half_width_sq, endpoints })
}

/// Left-invariant almost contact metric data on an odd-dimensional Lie
/// algebra, together with a curvature 2-form `F` for the circle bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactData {
    pub algebra: RealLieAlgebra,
    pub eta: Vec<Q>,
    pub xi: Vec<Q>,
    /// `φ e_b = Σ_a phi[a][b] e_a`.
    pub phi: Matrix<Q>,
    pub g: Matrix<Q>,
    /// `Φ(X,Y) = g(φX, Y)`.
    pub fundamental: Form,
    pub curvature: Form,
}

/// Antisymmetric coefficient matrix of a real 2-form on `m` generators.
fn two_form_matrix(f: &Form, m: usize) -> Matrix<Q> {
    let mut out = vec![vec![Q::zero(); m]; m];
    for (mono, c) in f.terms() {
        let s: Vec<usize> = mono.slots().collect();
        out[s[0]][s[1]] = c.re.clone();
        out[s[1]][s[0]] = -c.re.clone();
    }
    out
}

fn matrix_two_form(a: &Matrix<Q>) -> Form {
    let m = a.len();
    let mut f = Form::zero(m, 2);
    for i in 0..m {
        for j in i + 1..m {
            if !a[i][j].is_zero() {
                f.add_term(Monomial((1 << i) | (1 << j)), cx_real(a[i][j].clone()));
            }
        }
    }
    f
}

fn one_form(coeffs: &[Q]) -> Form {
    let m = coeffs.len();
    let mut f = Form::zero(m, 1);
    for (a, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            f.add_term(Monomial(1 << a), cx_real(c.clone()));
        }
    }
    f
}

fn qmul(a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..m).map(|j| row.iter().zip(b).fold(Q::zero(), |acc, (x, r)| acc + x.clone() * r[j].clone())).collect())
        .collect()
}

impl ContactData {
    pub fn new(algebra: RealLieAlgebra, eta: Vec<Q>, xi: Vec<Q>, phi: Matrix<Q>, g: Matrix<Q>, curvature: Form) -> Result<Self> {
        let m = algebra.dim();
        let bad = |s: &str| Err(Error::NotQuasiSasakian(s.to_string()));
        if m % 2 == 0 {
            return Err(Error::BadDimensions(format!("contact algebra must be odd-dimensional, got {m}")));
        }
        if eta.len() != m || xi.len() != m || phi.len() != m || g.len() != m || curvature.gens() != m {
            return Err(Error::DimensionMismatch { expected: m, found: eta.len() });
        }
        if phi.iter().chain(g.iter()).any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: 0 });
        }
        let eta_xi = eta.iter().zip(&xi).fold(Q::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        if !eta_xi.is_one() {
            return bad("eta(xi) != 1");
        }
        let phi2 = qmul(&phi, &phi);
        for a in 0..m {
            for b in 0..m {
                let want = xi[a].clone() * eta[b].clone() - if a == b { Q::one() } else { Q::zero() };
                if phi2[a][b] != want {
                    return bad("phi^2 != -Id + xi (x) eta");
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                if g[a][b] != g[b][a] {
                    return bad("g is not symmetric");
                }
            }
        }
        let pt_g_p = qmul(&qmul(&linalg::transpose(&phi), &g), &phi);
        for a in 0..m {
            for b in 0..m {
                if pt_g_p[a][b] != g[a][b].clone() - eta[a].clone() * eta[b].clone() {
                    return bad("g(phi X, phi Y) != g(X,Y) - eta(X)eta(Y)");
                }
            }
        }
        // Φ(e_a, e_b) = g(φ e_a, e_b)
        let phi_mat: Matrix<Q> = (0..m)
            .map(|a| (0..m).map(|b| (0..m).fold(Q::zero(), |acc, c| acc + phi[c][a].clone() * g[c][b].clone())).collect())
            .collect();
        let fundamental = matrix_two_form(&phi_mat);
        if !algebra.d(&fundamental).is_zero() {
            return bad("d Phi != 0");
        }
        if !curvature.is_zero() {
            if curvature.degree() != 2 || !curvature.is_real() {
                return bad("F must be a real 2-form");
            }
            if !algebra.d(&curvature).is_zero() {
                return bad("F is not closed");
            }
        }
        let fm = two_form_matrix(&curvature, m);
        for b in 0..m {
            if (0..m).fold(Q::zero(), |acc, a| acc + xi[a].clone() * fm[a][b].clone()) != Q::zero() {
                return bad("F(xi, .) != 0");
            }
        }
        // F(φX, Y) + F(X, φY) = 0
        let fphi = qmul(&linalg::transpose(&phi), &fm);
        let phif = qmul(&fm, &phi);
        for a in 0..m {
            for b in 0..m {
                if fphi[a][b].clone() + phif[a][b].clone() != Q::zero() {
                    return bad("F is not phi-invariant");
                }
            }
        }
        Ok(ContactData { algebra, eta, xi, phi, g, fundamental, curvature })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn eta_form(&self) -> Form {
        one_form(&self.eta)
    }

    /// `(dη∧dη + F∧F)∧Φ^{n-3}` for `dim = 2n-1`.
    pub fn criterion_form(&self) -> Result<Form> {
        let n = (self.dim() + 1) / 2;
        if n < 3 {
            return Err(Error::BadDimensions(format!("need dim >= 5, got {}", self.dim())));
        }
        let deta = self.algebra.d(&self.eta_form());
        let base = deta.wedge(&deta).add(&self.curvature.wedge(&self.curvature));
        Ok(base.wedge(&self.fundamental.power(n - 3)))
    }
}

fn embed(f: &Form, gens: usize) -> Form {
    let mut out = Form::zero(gens, f.degree());
    for (m, c) in f.terms() {
        out.add_term(*m, c.clone());
    }
    out
}

/// The circle bundle as a Lie algebra with its complex structure and metric.
#[derive(Debug, Clone)]
pub struct BundleExtension {
    /// `e^1..e^{2n-1}` from the base and `θ = e^{2n}` with `dθ = F`.
    pub algebra: RealLieAlgebra,
    pub frame: ComplexFrame,
    pub metric: MetricCoefficients,
    /// `Ω(X,Y) = h(JX, Y)` on the real coframe.
    pub omega_real: Form,
    pub criterion: Form,
    /// Coefficient of `criterion∧η∧θ` on `e^{1..2n}`.
    pub criterion_top: Q,
    /// Coefficient of `Ωⁿ` on `e^{1..2n}`.
    pub volume_top: Q,
}

impl BundleExtension {
    /// Sign of the criterion measured against the orientation of `Ωⁿ`.
    pub fn oriented_sign(&self) -> i32 {
        sign(&self.criterion_top) * sign(&self.volume_top)
    }

    pub fn gamma(&self) -> Result<Q> {
        gamma_scalar(&self.metric, 1, &self.frame.se)
    }
}

pub fn bundle_extend(c: &ContactData) -> Result<BundleExtension> {
    let m = c.dim();
    let dim = m + 1;
    let n = dim / 2;
    let mut d_of: Vec<Form> = (0..m).map(|a| embed(c.algebra.d_of(a), dim)).collect();
    d_of.push(embed(&c.curvature, dim));
    // J e_b = φ e_b - η(e_b) T, J T = ξ
    let mut j = vec![vec![Q::zero(); dim]; dim];
    for b in 0..m {
        for a in 0..m {
            j[a][b] = c.phi[a][b].clone();
        }
        j[m][b] = -c.eta[b].clone();
    }
    for a in 0..m {
        j[a][m] = c.xi[a].clone();
    }
    let algebra = RealLieAlgebra::new(dim, d_of, Some(j.clone()))?;
    let frame = complex_frame_from_real(&algebra)?;
    let mut h = vec![vec![Q::zero(); dim]; dim];
    for a in 0..m {
        for b in 0..m {
            h[a][b] = c.g[a][b].clone();
        }
    }
    h[m][m] = Q::one();
    let omega_mat: Matrix<Q> = (0..dim)
        .map(|a| (0..dim).map(|b| (0..dim).fold(Q::zero(), |acc, k| acc + j[k][a].clone() * h[k][b].clone())).collect())
        .collect();
    let omega_real = matrix_two_form(&omega_mat);
    let omega = frame.transport(&omega_real);
    let mut x = vec![vec![Cx::zero(); n]; n];
    for (mono, coeff) in omega.terms() {
        let s: Vec<usize> = mono.slots().collect();
        let (lo, hi) = (s[0], s[1]);
        match (lo % 2, hi % 2) {
            // ω^j∧ω̄^k stored canonically
            (0, 1) => x[lo / 2][hi / 2] = coeff.clone(),
            // ω̄^k∧ω^j = -ω^j∧ω̄^k
            (1, 0) => x[hi / 2][lo / 2] = -coeff.clone(),
            _ => return Err(Error::BadParams("metric is not J-invariant".into())),
        }
    }
    let metric = MetricCoefficients::new(x)?;
    let criterion = c.criterion_form()?;
    let full = Monomial((1u32 << m) - 1);
    let criterion_top = criterion.wedge(&c.eta_form()).coefficient(full).re;
    let volume_top = omega_real.power(n).coefficient(Monomial((1u32 << dim) - 1)).re;
    Ok(BundleExtension { algebra, frame, metric, omega_real, criterion, criterion_top, volume_top })
}

fn phi_from_pairs(m: usize, images: &[(usize, i64, usize)]) -> Matrix<Q> {
    // (b, sign, a): φ e_b = sign·e_a, 1-based
    let mut phi = vec![vec![Q::zero(); m]; m];
    for &(b, s, a) in images {
        phi[a - 1][b - 1] = Q::from_integer(s.into());
    }
    phi
}

fn unit(m: usize, a: usize) -> Vec<Q> {
    (0..m).map(|i| if i + 1 == a { Q::one() } else { Q::zero() }).collect()
}

/// The 5-dimensional solvable algebra `de² = e^{13}`, `de³ = -e^{12}`,
/// `de⁵ = e^{14} + e^{23}` with `φe₁ = e₄`, `φe₂ = -e₃`, `η = e⁵`, `g` the
/// identity, and curvature `F = 2e^{14} - 2e^{23}`.
pub fn solvable5() -> ContactData {
    let one = Q::one();
    let alg = RealLieAlgebra::from_pairs(
        5,
        &[
            vec![],
            vec![(one.clone(), 1, 3)],
            vec![(-one.clone(), 1, 2)],
            vec![],
            vec![(one.clone(), 1, 4), (one.clone(), 2, 3)],
        ],
        None,
    )
    .expect("valid algebra");
    let phi = phi_from_pairs(5, &[(1, 1, 4), (4, -1, 1), (2, -1, 3), (3, 1, 2)]);
    let two = Q::from_integer(2.into());
    let f = real_two_form(5, &[(two.clone(), 1, 4), (-two, 2, 3)]).expect("valid form");
    ContactData::new(alg, unit(5, 5), unit(5, 5), phi, linalg_identity(5), f).expect("valid contact data")
}

fn linalg_identity(m: usize) -> Matrix<Q> {
    (0..m).map(|i| (0..m).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

/// The Sasakian Heisenberg algebra `de⁵ = e^{12} + e^{34}`, `φe₁ = e₂`,
/// `φe₃ = e₄`, `η = e⁵`, so that `dη = Φ`, with the given curvature.
pub fn heisenberg5(curvature: Form) -> Result<ContactData> {
    let one = Q::one();
    let alg = RealLieAlgebra::from_pairs(5, &[vec![], vec![], vec![], vec![], vec![(one.clone(), 1, 2), (one, 3, 4)]], None)?;
    let phi = phi_from_pairs(5, &[(1, 1, 2), (2, -1, 1), (3, 1, 4), (4, -1, 3)]);
    ContactData::new(alg, unit(5, 5), unit(5, 5), phi, linalg_identity(5), curvature)
}

/// Like [`heisenberg5`] with `F = 0` but `de⁵ = e^{13} - e^{24}`, which is not
/// `φ`-invariant: the contact structure is not normal.
pub fn non_normal5() -> Result<ContactData> {
    let one = Q::one();
    let alg = RealLieAlgebra::from_pairs(5, &[vec![], vec![], vec![], vec![], vec![(one.clone(), 1, 3), (-one, 2, 4)]], None)?;
    let phi = phi_from_pairs(5, &[(1, 1, 2), (2, -1, 1), (3, 1, 4), (4, -1, 3)]);
    ContactData::new(alg, unit(5, 5), unit(5, 5), phi, linalg_identity(5), Form::zero(5, 2))
}

/// Formats a real form over `e^1..e^m` as `2*e1^e4 - 2*e2^e3`.
pub fn format_real_form(f: &Form) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in f.terms().enumerate() {
        let mono = m.slots().map(|s| format!("e{}", s + 1)).collect::<Vec<_>>().join("^");
        let v = c.re.clone();
        let neg = v.is_negative();
        let mag = v.abs();
        let sep = match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        out.push_str(sep);
        if mag.is_one() && m.degree() > 0 {
            out.push_str(&mono);
        } else if m.degree() == 0 {
            out.push_str(&format_q(&mag));
        } else {
            out.push_str(&format!("{}*{}", format_q(&mag), mono));
        }
    }
    out
}

/// JSON form of [`ContactData`]: structure constants and 2-forms as
/// `[coefficient, b, c]` triples with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactJson {
    pub dim: usize,
    pub structure: Vec<Vec<(String, usize, usize)>>,
    pub eta: Vec<String>,
    pub xi: Vec<String>,
    pub phi: Vec<Vec<String>>,
    #[serde(default)]
    pub g: Option<Vec<Vec<String>>>,
    #[serde(rename = "F", default)]
    pub curvature: Vec<(String, usize, usize)>,
    #[serde(rename = "Phi", default)]
    pub fundamental: Option<Vec<(String, usize, usize)>>,
}

fn parse_vec(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_q(s)).collect()
}

fn parse_triples(dim: usize, v: &[(String, usize, usize)]) -> Result<Vec<(Q, usize, usize)>> {
    v.iter()
        .map(|(c, b, d)| {
            if *b == 0 || *d == 0 || *b > dim || *d > dim {
                return Err(Error::BadRange(format!("index ({b}, {d}) outside 1..={dim}")));
            }
            Ok((parse_q(c)?, *b, *d))
        })
        .collect()
}

pub fn contact_from_json(js: &ContactJson) -> Result<ContactData> {
    let m = js.dim;
    let terms = js.structure.iter().map(|t| parse_triples(m, t)).collect::<Result<Vec<_>>>()?;
    let alg = RealLieAlgebra::from_pairs(m, &terms, None)?;
    let phi = js.phi.iter().map(|r| parse_vec(r)).collect::<Result<Vec<_>>>()?;
    let g = match &js.g {
        Some(g) => g.iter().map(|r| parse_vec(r)).collect::<Result<Vec<_>>>()?,
        None => linalg_identity(m),
    };
    let f = real_two_form(m, &parse_triples(m, &js.curvature)?)?;
    let cd = ContactData::new(alg, parse_vec(&js.eta)?, parse_vec(&js.xi)?, phi, g, f)?;
    if let Some(given) = &js.fundamental {
        if real_two_form(m, &parse_triples(m, given)?)? != cd.fundamental {
            return Err(Error::NotQuasiSasakian("given Phi differs from g(phi ., .)".into()));
        }
    }
    Ok(cd)
}

pub fn load_contact(text: &str) -> Result<ContactData> {
    let js: ContactJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    contact_from_json(&js)
}

pub fn contact_to_json(c: &ContactData) -> ContactJson {
    let triples = |f: &Form| -> Vec<(String, usize, usize)> {
        f.terms()
            .map(|(m, v)| {
                let s: Vec<usize> = m.slots().collect();
                (format_q(&v.re), s[0] + 1, s[1] + 1)
            })
            .collect()
    };
    let row = |r: &[Q]| r.iter().map(format_q).collect::<Vec<_>>();
    ContactJson {
        dim: c.dim(),
        structure: (0..c.dim()).map(|a| triples(c.algebra.d_of(a))).collect(),
        eta: row(&c.eta),
        xi: row(&c.xi),
        phi: c.phi.iter().map(|r| row(r)).collect(),
        g: Some(c.g.iter().map(|r| row(r)).collect()),
        curvature: triples(&c.curvature),
        fundamental: Some(triples(&c.fundamental)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn coefficient_values() {
        let (a, b) = (qi(1), qi(1));
        assert_eq!(coefficient_c(6, 2, &a, &b).unwrap(), qi(11));
        assert_eq!(coefficient_c(7, 0, &q(2, 3), &b).unwrap(), qi(1));
        assert_eq!(coefficient_c(7, 1, &q(2, 3), &b).unwrap(), qi(4) + q(4, 3));
        assert_eq!(coefficient_c(7, 6, &qi(2), &qi(3)).unwrap(), qi(13));
        assert!(coefficient_c(3, 0, &a, &b).is_err());
        assert!(coefficient_c(5, 5, &a, &b).is_err());
    }

    #[test]
    fn product_examples() {
        let r = product_report(&ProductParams::new(2, 1, q(-1, 2), qi(5), qi(1)).unwrap()).unwrap();
        assert_eq!(r.quadratic, Some(qi(0)));
        assert!(r.first_gauduchon && r.astheno);
        let r = product_report(&ProductParams::new(1, 1, qi(-1), qi(1), qi(1)).unwrap()).unwrap();
        assert_eq!(r.gamma, q(-1, 3));
        assert_eq!(r.skt, Some(false));
        // b² = 3 is not rational; check the quadratic directly.
        assert_eq!(product_quadratic(2, 2, &qi(-2), &qi(0)) + qi(3) * qi(2), qi(0));
        assert!(ProductParams::new(1, 1, qi(0), qi(1), qi(-1)).is_err());
    }

    #[test]
    fn admissible_sets() {
        assert_eq!(solve_admissible(2, 1).unwrap(), Admissible::Line { value: q(-1, 2) });
        assert!(solve_admissible(1, 1).is_err());
        match solve_admissible(2, 2).unwrap() {
            Admissible::Interval { center, half_width_sq, endpoints, .. } => {
                assert_eq!(center, qi(-2));
                assert_eq!(half_width_sq, qi(3));
                assert_eq!(endpoints, None);
            }
            other => panic!("{other:?}"),
        }
        let adm = solve_admissible(2, 2).unwrap();
        assert_eq!(adm.b_squared(&qi(-2)), Some(qi(3)));
        assert_eq!(adm.b_squared(&qi(0)), None);
    }

    #[test]
    fn solvable_bundle() {
        let ext = bundle_extend(&solvable5()).unwrap();
        assert_eq!(format_real_form(&ext.criterion), "-6*e1^e2^e3^e4");
        assert_eq!(ext.criterion_top, qi(-6));
        assert!(ext.gamma().unwrap().is_negative());
    }

    #[test]
    fn sasakian_trivial_bundle() {
        let c = heisenberg5(Form::zero(5, 2)).unwrap();
        assert_eq!(c.algebra.d(&c.eta_form()), c.fundamental);
        let ext = bundle_extend(&c).unwrap();
        assert!(!ext.criterion.is_zero());
        assert!(!ext.gamma().unwrap().is_zero());
    }

    #[test]
    fn non_normal_fails_integrability() {
        let c = non_normal5().unwrap();
        assert!(matches!(bundle_extend(&c), Err(Error::NotIntegrable { .. })));
    }

    #[test]
    fn contact_json_round_trip() {
        let c = solvable5();
        let s = serde_json::to_string(&contact_to_json(&c)).unwrap();
        assert_eq!(load_contact(&s).unwrap(), c);
    }
}
