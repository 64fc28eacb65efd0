//! Named families of complex structure equations, the isomorphism-class table
//! for the reduced 6-dimensional nilpotent family, and closed-form scalars
//! that the engine is checked against.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::dsl::print_structure_equations;
use crate::error::{Error, Result};
use crate::form::{Form, Generator, Monomial};
use crate::linalg::{determinant, Matrix};
use crate::metric::MetricCoefficients;
use crate::scalar::{cx, cx_real, norm_sqr, parse_cx, parse_q, qi, Cx, Scalar, Q};
use crate::structure::{complex_frame_with_basis, ComplexFrame, RealLieAlgebra, StructureEquations};

/// `dω² = ε ω^{11̄}`,
/// `dω³ = ρ ω^{12} + (1-ε)A ω^{11̄} + B ω^{12̄} + C ω^{21̄} + (1-ε)D ω^{22̄}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Nilpotent6Params {
    pub epsilon: u8,
    pub rho: u8,
    pub a: Cx,
    pub b: Cx,
    pub c: Cx,
    pub d: Cx,
}

/// `dω³ = ρ ω^{12} + ω^{11̄} + B ω^{12̄} + (x+iy) ω^{22̄}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduced6Params {
    pub rho: u8,
    pub b: Cx,
    pub x: Q,
    pub y: Q,
}

impl Reduced6Params {
    pub fn new(rho: u8, b: Cx, x: Q, y: Q) -> Self {
        Reduced6Params { rho, b, x, y }
    }

    pub fn as_nilpotent(&self) -> Nilpotent6Params {
        Nilpotent6Params {
            epsilon: 0,
            rho: self.rho,
            a: Cx::one(),
            b: self.b.clone(),
            c: Cx::zero(),
            d: cx(self.x.clone(), self.y.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LieAlgebraLabel {
    H2,
    H3,
    H4,
    H5,
    H6,
    H8,
}

impl LieAlgebraLabel {
    /// Real structure equations in the usual `(0,0,0,0,12,34)` notation.
    pub fn structure(self) -> &'static str {
        match self {
            LieAlgebraLabel::H2 => "(0,0,0,0,12,34)",
            LieAlgebraLabel::H3 => "(0,0,0,0,0,12+34)",
            LieAlgebraLabel::H4 => "(0,0,0,0,12,14+23)",
            LieAlgebraLabel::H5 => "(0,0,0,0,13+42,14+23)",
            LieAlgebraLabel::H6 => "(0,0,0,0,12,13)",
            LieAlgebraLabel::H8 => "(0,0,0,0,0,12)",
        }
    }
}

impl fmt::Display for LieAlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieAlgebraLabel::H2 => "h2",
            LieAlgebraLabel::H3 => "h3",
            LieAlgebraLabel::H4 => "h4",
            LieAlgebraLabel::H5 => "h5",
            LieAlgebraLabel::H6 => "h6",
            LieAlgebraLabel::H8 => "h8",
        };
        f.write_str(s)
    }
}

fn holo(j: usize) -> Generator {
    Generator::holo(j)
}

fn anti(j: usize) -> Generator {
    Generator::anti(j)
}

/// Builds `dω^j` from `(coefficient, first, second)` triples.
fn two_form(n: usize, terms: &[(Cx, Generator, Generator)]) -> Form {
    let mut f = Form::zero(2 * n, 2);
    for (c, a, b) in terms {
        if let Some((sign, m)) = Monomial::from_generators(&[*a, *b]) {
            f.add_term(m, if sign < 0 { -c.clone() } else { c.clone() });
        }
    }
    f
}

fn check_bit(name: &str, v: u8) -> Result<()> {
    if v > 1 {
        return Err(Error::BadParams(format!("{name} must be 0 or 1, got {v}")));
    }
    Ok(())
}

pub fn nilpotent6(p: &Nilpotent6Params) -> Result<StructureEquations> {
    check_bit("epsilon", p.epsilon)?;
    check_bit("rho", p.rho)?;
    let eps = Cx::from_i64(p.epsilon as i64);
    let one_minus = Cx::one() - eps.clone();
    let d2 = two_form(3, &[(eps, holo(1), anti(1))]);
    let d3 = two_form(
        3,
        &[
            (Cx::from_i64(p.rho as i64), holo(1), holo(2)),
            (one_minus.clone() * p.a.clone(), holo(1), anti(1)),
            (p.b.clone(), holo(1), anti(2)),
            (p.c.clone(), holo(2), anti(1)),
            (one_minus * p.d.clone(), holo(2), anti(2)),
        ],
    );
    StructureEquations::new(3, vec![Form::zero(6, 2), d2, d3])
}

/// `dω² = ω^{13} + ω^{13̄}`, `dω³ = iε ω^{11̄} ± i(ω^{12̄} - ω^{21̄})`.
pub fn nonnilpotent6(epsilon: u8, sign: i8) -> Result<StructureEquations> {
    check_bit("epsilon", epsilon)?;
    if sign != 1 && sign != -1 {
        return Err(Error::BadParams(format!("sign must be +1 or -1, got {sign}")));
    }
    let i = Cx::imag_unit();
    let s = i.clone() * Cx::from_i64(sign as i64);
    let d2 = two_form(3, &[(Cx::one(), holo(1), holo(3)), (Cx::one(), holo(1), anti(3))]);
    let d3 = two_form(
        3,
        &[
            (i * Cx::from_i64(epsilon as i64), holo(1), anti(1)),
            (s.clone(), holo(1), anti(2)),
            (-s, holo(2), anti(1)),
        ],
    );
    StructureEquations::new(3, vec![Form::zero(6, 2), d2, d3])
}

pub fn reduced6(p: &Reduced6Params) -> Result<StructureEquations> {
    nilpotent6(&p.as_nilpotent())
}

/// `dω³ = ω^{12} + ω^{11̄} + ω^{12̄} + (1/t) ω^{22̄}`.
pub fn jt(t: &Q) -> Result<StructureEquations> {
    if t.is_zero() {
        return Err(Error::BadParams("t must be nonzero".into()));
    }
    reduced6(&Reduced6Params::new(1, Cx::one(), t.recip(), Q::zero()))
}

/// `dω⁴ = A ω^{11̄} - ω^{22̄} - ω^{33̄}`.
pub fn family8(a: &Cx) -> Result<StructureEquations> {
    let z = Form::zero(8, 2);
    let d4 = two_form(
        4,
        &[(a.clone(), holo(1), anti(1)), (-Cx::one(), holo(2), anti(2)), (-Cx::one(), holo(3), anti(3))],
    );
    StructureEquations::new(4, vec![z.clone(), z.clone(), z, d4])
}

/// The bi-invariant structure `dω³ = ω^{12}` of the Iwasawa manifold.
pub fn iwasawa() -> StructureEquations {
    nilpotent6(&Nilpotent6Params {
        epsilon: 0,
        rho: 1,
        a: Cx::zero(),
        b: Cx::zero(),
        c: Cx::zero(),
        d: Cx::zero(),
    })
    .expect("iwasawa equations are valid")
}

/// The real algebra `de⁵ = e^{12}`, `de⁶ = e^{14} + e^{23}` with the coframe
/// `ω¹ = e¹ + ie⁴`, `ω² = e² + it(e³ - e⁴)`, `ω³ = 2(e⁵ - ie⁶)`.
pub fn jt_real(t: &Q) -> Result<(RealLieAlgebra, Matrix<Cx>)> {
    if t.is_zero() {
        return Err(Error::BadParams("t must be nonzero".into()));
    }
    let one = Q::one();
    let alg = RealLieAlgebra::from_pairs(
        6,
        &[
            vec![],
            vec![],
            vec![],
            vec![],
            vec![(one.clone(), 1, 2)],
            vec![(one.clone(), 1, 4), (one, 2, 3)],
        ],
        None,
    )?;
    let z = Cx::zero();
    let it = cx(Q::zero(), t.clone());
    let coframe = vec![
        vec![Cx::one(), z.clone(), z.clone(), Cx::imag_unit(), z.clone(), z.clone()],
        vec![z.clone(), Cx::one(), it.clone(), -it, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), z, Cx::from_i64(2), cxi_(0, -2)],
    ];
    Ok((alg, coframe))
}

fn cxi_(re: i64, im: i64) -> Cx {
    cx(qi(re), qi(im))
}

/// Structure equations of [`jt_real`] read off in its own coframe.
pub fn jt_from_real(t: &Q) -> Result<ComplexFrame> {
    let (alg, coframe) = jt_real(t)?;
    complex_frame_with_basis(&alg, coframe)
}

/// Classifies the real algebra underlying the reduced family.
/// Returns the label and the case name (`a1`..`a5`, `b1`..`b3`).
pub fn classify_reduced6(p: &Reduced6Params) -> (LieAlgebraLabel, &'static str) {
    let rho = qi(p.rho as i64);
    let b2 = norm_sqr(&p.b);
    if b2 == rho {
        if !p.y.is_zero() {
            (LieAlgebraLabel::H2, "a1")
        } else if p.rho == 0 {
            if p.x.is_zero() {
                (LieAlgebraLabel::H8, "a5")
            } else {
                (LieAlgebraLabel::H3, "a2")
            }
        } else if p.x.is_zero() {
            (LieAlgebraLabel::H6, "a4")
        } else {
            (LieAlgebraLabel::H4, "a3")
        }
    } else {
        let lhs = qi(4) * p.y.clone() * p.y.clone();
        let gap = rho - b2;
        let rhs = gap.clone() * (qi(4) * p.x.clone() + gap);
        if lhs > rhs {
            (LieAlgebraLabel::H2, "b1")
        } else if lhs == rhs {
            (LieAlgebraLabel::H4, "b2")
        } else {
            (LieAlgebraLabel::H5, "b3")
        }
    }
}

/// `ρ + |B|² + |C|² - 2(1-ε)Re(A D̄)`: `∂∂̄Ω = x_{33̄}·K·ω^{11̄22̄}` for every metric.
pub fn nilpotent6_skt_scalar(p: &Nilpotent6Params) -> Q {
    let ad = p.a.clone() * p.d.conj();
    qi(p.rho as i64) + norm_sqr(&p.b) + norm_sqr(&p.c) - qi(2) * qi(1 - p.epsilon as i64) * ad.re
}

/// `ρ + |B|² - 2x`; negative exactly when some metric has negative first Gauduchon scalar.
pub fn reduced6_skt_scalar(p: &Reduced6Params) -> Q {
    nilpotent6_skt_scalar(&p.as_nilpotent())
}

/// `2 - 2/t`.
pub fn jt_skt_scalar(t: &Q) -> Q {
    qi(2) - qi(2) / t.clone()
}

/// The closed form of `∂∂̄Ω` on the nilpotent family.
pub fn nilpotent6_expected_ddbar(p: &Nilpotent6Params, x: &MetricCoefficients) -> Form {
    let k = cx_real(nilpotent6_skt_scalar(p));
    Form::monomial(6, Monomial(0b1111), x.entry(3, 3).clone() * k)
}

/// `2x_{33̄} ω^{11̄22̄} + 2x_{22̄} ω^{11̄33̄}` on the non-nilpotent family.
pub fn nonnilpotent6_expected_ddbar(x: &MetricCoefficients) -> Form {
    let two = Cx::from_i64(2);
    Form::monomial(6, Monomial(0b1111), two.clone() * x.entry(3, 3).clone())
        .add(&Form::monomial(6, Monomial(0b11_0011), two * x.entry(2, 2).clone()))
}

/// Determinant of the principal submatrix of `X` on 1-based `indices`.
pub fn principal_minor(x: &MetricCoefficients, indices: &[usize]) -> Cx {
    let m: Matrix<Cx> = indices
        .iter()
        .map(|&j| indices.iter().map(|&k| x.entry(j, k).clone()).collect())
        .collect();
    determinant(&m)
}

/// `(A+Ā)(x_{22̄}x_{44̄} + x_{33̄}x_{44̄} + |x_{24̄}|² + |x_{34̄}|²) - 2(x_{11̄}x_{44̄} + |x_{14̄}|²)`.
/// Vanishes exactly when the metric is first Gauduchon on the 8-dimensional family.
pub fn family8_gauduchon_scalar(a: &Cx, x: &MetricCoefficients) -> Q {
    let e = |j, k| x.entry(j, k).clone();
    let two_p = cx_real(qi(2) * a.re.clone());
    let inner = e(2, 2) * e(4, 4) + e(3, 3) * e(4, 4) + cx_real(norm_sqr(&e(2, 4))) + cx_real(norm_sqr(&e(3, 4)));
    let outer = e(1, 1) * e(4, 4) + cx_real(norm_sqr(&e(1, 4)));
    let v = two_p * inner - Cx::from_i64(2) * outer;
    assert!(v.im.is_zero(), "the scalar is real for skew-Hermitian X");
    v.re
}

/// `A·det X_{234} - det X_{124} - det X_{134}`; the metric is balanced iff this vanishes.
pub fn family8_balanced_residual(a: &Cx, x: &MetricCoefficients) -> Cx {
    a.clone() * principal_minor(x, &[2, 3, 4]) - principal_minor(x, &[1, 2, 4]) - principal_minor(x, &[1, 3, 4])
}

/// `q = 0` and `p·det X_{234} = det X_{124} + det X_{134}`.
pub fn family8_balanced_condition(a: &Cx, x: &MetricCoefficients) -> bool {
    a.im.is_zero()
        && cx_real(a.re.clone()) * principal_minor(x, &[2, 3, 4])
            == principal_minor(x, &[1, 2, 4]) + principal_minor(x, &[1, 3, 4])
}

/// Parameters in `key=value` form, as accepted by `catalog emit`.
pub type Params = BTreeMap<String, String>;

pub fn parse_params<S: AsRef<str>>(args: &[S]) -> Result<Params> {
    args.iter()
        .map(|a| {
            let a = a.as_ref();
            a.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::BadParams(format!("expected key=value, got `{a}`")))
        })
        .collect()
}

fn get_q(p: &Params, key: &str, default: Q) -> Result<Q> {
    p.get(key).map_or(Ok(default), |v| parse_q(v))
}

fn get_cx(p: &Params, key: &str, default: Cx) -> Result<Cx> {
    p.get(key).map_or(Ok(default), |v| parse_cx(v))
}

fn get_bit(p: &Params, key: &str, default: u8) -> Result<u8> {
    match p.get(key).map(String::as_str) {
        None => Ok(default),
        Some("0") => Ok(0),
        Some("1") => Ok(1),
        Some(v) => Err(Error::BadParams(format!("{key} must be 0 or 1, got `{v}`"))),
    }
}

fn check_keys(p: &Params, allowed: &[&str]) -> Result<()> {
    match p.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::BadParams(format!("unknown parameter `{k}`; expected one of {allowed:?}"))),
        None => Ok(()),
    }
}

pub fn nilpotent6_params(p: &Params) -> Result<Nilpotent6Params> {
    check_keys(p, &["epsilon", "rho", "A", "B", "C", "D"])?;
    Ok(Nilpotent6Params {
        epsilon: get_bit(p, "epsilon", 0)?,
        rho: get_bit(p, "rho", 0)?,
        a: get_cx(p, "A", Cx::zero())?,
        b: get_cx(p, "B", Cx::zero())?,
        c: get_cx(p, "C", Cx::zero())?,
        d: get_cx(p, "D", Cx::zero())?,
    })
}

pub fn reduced6_params(p: &Params) -> Result<Reduced6Params> {
    check_keys(p, &["rho", "B", "x", "y"])?;
    Ok(Reduced6Params {
        rho: get_bit(p, "rho", 0)?,
        b: get_cx(p, "B", Cx::zero())?,
        x: get_q(p, "x", Q::zero())?,
        y: get_q(p, "y", Q::zero())?,
    })
}

pub struct FamilyInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo {
        name: "nilpotent6",
        params: "epsilon=0|1 rho=0|1 A=<cx> B=<cx> C=<cx> D=<cx>",
        summary: "6-dim nilpotent J: dw2 = eps w1^~w1, dw3 = rho w1^w2 + (1-eps)A w1^~w1 + B w1^~w2 + C w2^~w1 + (1-eps)D w2^~w2",
    },
    FamilyInfo {
        name: "nonnilpotent6",
        params: "epsilon=0|1 sign=+|-",
        summary: "6-dim non-nilpotent J: dw2 = w1^w3 + w1^~w3, dw3 = i eps w1^~w1 +/- i(w1^~w2 - w2^~w1)",
    },
    FamilyInfo {
        name: "reduced6",
        params: "rho=0|1 B=<cx> x=<q> y=<q>",
        summary: "reduced nilpotent family: dw3 = rho w1^w2 + w1^~w1 + B w1^~w2 + (x+iy) w2^~w2",
    },
    FamilyInfo {
        name: "jt",
        params: "t=<q, nonzero>",
        summary: "deformation on h4: dw3 = w1^w2 + w1^~w1 + w1^~w2 + (1/t) w2^~w2",
    },
    FamilyInfo {
        name: "family8",
        params: "p=<q> q=<q>",
        summary: "8-dim family: dw4 = (p+iq) w1^~w1 - w2^~w2 - w3^~w3",
    },
    FamilyInfo { name: "iwasawa", params: "", summary: "Iwasawa manifold: dw3 = w1^w2" },
    FamilyInfo { name: "abelian", params: "n=<int>", summary: "complex torus of dimension n" },
    FamilyInfo {
        name: "solvable5",
        params: "",
        summary: "circle bundle over the 5-dim solvable group with F = 2e14 - 2e23",
    },
];

pub fn catalog_build(name: &str, p: &Params) -> Result<StructureEquations> {
    match name {
        "nilpotent6" => nilpotent6(&nilpotent6_params(p)?),
        "nonnilpotent6" => {
            check_keys(p, &["epsilon", "sign"])?;
            let sign = match p.get("sign").map(String::as_str) {
                None | Some("+") | Some("1") | Some("+1") => 1,
                Some("-") | Some("-1") => -1,
                Some(v) => return Err(Error::BadParams(format!("sign must be + or -, got `{v}`"))),
            };
            nonnilpotent6(get_bit(p, "epsilon", 0)?, sign)
        }
        "reduced6" => reduced6(&reduced6_params(p)?),
        "jt" => {
            check_keys(p, &["t"])?;
            jt(&get_q(p, "t", Q::one())?)
        }
        "family8" => {
            check_keys(p, &["p", "q"])?;
            family8(&cx(get_q(p, "p", Q::zero())?, get_q(p, "q", Q::zero())?))
        }
        "iwasawa" => {
            check_keys(p, &[])?;
            Ok(iwasawa())
        }
        "abelian" => {
            check_keys(p, &["n"])?;
            let n = p.get("n").map_or(Ok(3), |v| v.parse::<usize>().map_err(|_| Error::BadNumber(v.clone())))?;
            if !(1..=15).contains(&n) {
                return Err(Error::BadParams(format!("n must be in 1..=15, got {n}")));
            }
            Ok(StructureEquations::abelian(n))
        }
        "solvable5" => {
            check_keys(p, &[])?;
            Ok(crate::sasakian::bundle_extend(&crate::sasakian::solvable5())?.frame.se)
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

pub fn catalog_emit(name: &str, p: &Params) -> Result<String> {
    Ok(print_structure_equations(&catalog_build(name, p)?))
}

pub fn catalog_list() -> String {
    FAMILIES
        .iter()
        .map(|f| format!("{:<14} {:<48} {}\n", f.name, if f.params.is_empty() { "-" } else { f.params }, f.summary))
        .collect()
}

/// A fixed representative set of catalog structures, used for exhaustive checks.
pub fn catalog_samples() -> Vec<(String, StructureEquations)> {
    let q = |n: i64, d: i64| Q::new(n.into(), d.into());
    let mut out = vec![("iwasawa".to_string(), iwasawa())];
    let nil = [
        Nilpotent6Params { epsilon: 0, rho: 1, a: Cx::one(), b: Cx::one(), c: Cx::zero(), d: Cx::one() },
        Nilpotent6Params { epsilon: 1, rho: 1, a: Cx::zero(), b: cxi_(1, 1), c: cxi_(0, 2), d: Cx::zero() },
        Nilpotent6Params { epsilon: 0, rho: 0, a: cxi_(2, -1), b: cxi_(0, 1), c: cxi_(1, 0), d: cxi_(3, 1) },
    ];
    for (i, p) in nil.iter().enumerate() {
        out.push((format!("nilpotent6#{i}"), nilpotent6(p).expect("valid")));
    }
    for eps in 0..=1 {
        for sign in [1, -1] {
            out.push((format!("nonnilpotent6 eps={eps} sign={sign}"), nonnilpotent6(eps, sign).expect("valid")));
        }
    }
    let red = [
        Reduced6Params::new(1, Cx::one(), qi(2), qi(1)),
        Reduced6Params::new(0, Cx::zero(), qi(1), Q::zero()),
        Reduced6Params::new(1, Cx::zero(), qi(2), q(3, 2)),
        Reduced6Params::new(1, Cx::zero(), qi(2), Q::zero()),
    ];
    for p in &red {
        let (label, case) = classify_reduced6(p);
        out.push((format!("reduced6 {case} ({label})"), reduced6(p).expect("valid")));
    }
    for t in [q(1, 2), Q::one()] {
        out.push((format!("jt t={t}"), jt(&t).expect("valid")));
    }
    for a in [cxi_(1, 0), cxi_(-1, 0), cxi_(0, 1), cxi_(0, 0), cx(q(1, 3), Q::zero())] {
        out.push((format!("family8 A={a}"), family8(&a).expect("valid")));
    }
    out.push(("abelian3".to_string(), StructureEquations::abelian(3)));
    out.push(("abelian4".to_string(), StructureEquations::abelian(4)));
    out.push((
        "solvable5".to_string(),
        crate::sasakian::bundle_extend(&crate::sasakian::solvable5()).expect("valid").frame.se,
    ));
    out
}

/// Named closed-form scalars for a family at the given metric (when needed).
pub fn closed_form_scalars(name: &str, p: &Params, x: Option<&MetricCoefficients>) -> Result<Vec<(String, Q)>> {
    match name {
        "nilpotent6" => Ok(vec![("K".into(), nilpotent6_skt_scalar(&nilpotent6_params(p)?))]),
        "reduced6" => {
            let rp = reduced6_params(p)?;
            let k = reduced6_skt_scalar(&rp);
            Ok(vec![("K".into(), k.clone()), ("gamma_negative_feasible".into(), if k.is_negative() { Q::one() } else { Q::zero() })])
        }
        "jt" => Ok(vec![("K".into(), jt_skt_scalar(&get_q(p, "t", Q::one())?))]),
        "family8" => {
            let a = cx(get_q(p, "p", Q::zero())?, get_q(p, "q", Q::zero())?);
            let x = x.ok_or_else(|| Error::BadParams("family8 needs a metric".into()))?;
            if x.n() != 4 {
                return Err(Error::DimensionMismatch { expected: 4, found: x.n() });
            }
            let bal = family8_balanced_condition(&a, x);
            Ok(vec![
                ("E".into(), family8_gauduchon_scalar(&a, x)),
                ("balanced_condition".into(), if bal { Q::one() } else { Q::zero() }),
            ])
        }
        other => Err(Error::BadParams(format!("no closed forms for `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{classify_metric, gamma_scalar};
    use crate::scalar::q;

    #[test]
    fn classifier_cases() {
        let c = |rho, b: Cx, x, y| classify_reduced6(&Reduced6Params::new(rho, b, x, y));
        assert_eq!(c(1, Cx::one(), qi(1), qi(2)), (LieAlgebraLabel::H2, "a1"));
        assert_eq!(c(0, Cx::zero(), qi(1), qi(0)), (LieAlgebraLabel::H3, "a2"));
        assert_eq!(c(1, Cx::one(), qi(1), qi(0)), (LieAlgebraLabel::H4, "a3"));
        assert_eq!(c(1, cxi_(0, 1), qi(0), qi(0)), (LieAlgebraLabel::H6, "a4"));
        assert_eq!(c(0, Cx::zero(), qi(0), qi(0)), (LieAlgebraLabel::H8, "a5"));
        assert_eq!(c(0, Cx::one(), qi(0), qi(1)), (LieAlgebraLabel::H2, "b1"));
        assert_eq!(c(1, Cx::zero(), qi(2), q(3, 2)), (LieAlgebraLabel::H4, "b2"));
        assert_eq!(c(1, Cx::zero(), qi(2), qi(0)), (LieAlgebraLabel::H5, "b3"));
    }

    #[test]
    fn jt_at_one_is_skt() {
        assert!(jt_skt_scalar(&qi(1)).is_zero());
        let se = jt(&qi(1)).unwrap();
        let rep = classify_metric(&MetricCoefficients::standard(3), &se).unwrap();
        assert!(rep.skt);
        let p = Nilpotent6Params { epsilon: 0, rho: 1, a: Cx::one(), b: Cx::one(), c: Cx::zero(), d: Cx::one() };
        assert!(nilpotent6_skt_scalar(&p).is_zero());
    }

    #[test]
    fn real_presentation_matches_complex_equations() {
        for t in [q(1, 4), q(1, 2), qi(1), qi(-3)] {
            assert_eq!(jt_from_real(&t).unwrap().se, jt(&t).unwrap(), "t = {t}");
        }
    }

    #[test]
    fn family8_reference_values() {
        let se = family8(&Cx::zero()).unwrap();
        assert_eq!(se.d_holo(4).len(), 2);
        // p = 1, X = diag(2i, i, i, i): λ1 = p(λ2 + λ3).
        let x = MetricCoefficients::diagonal(&[qi(2), qi(1), qi(1), qi(1)]);
        assert!(family8_gauduchon_scalar(&Cx::one(), &x).is_zero());
        let se = family8(&Cx::one()).unwrap();
        assert!(gamma_scalar(&x, 1, &se).unwrap().is_zero());
    }

    #[test]
    fn params_and_emit() {
        let p = parse_params(&["t=1/2"]).unwrap();
        let text = catalog_emit("jt", &p).unwrap();
        assert!(text.contains("2*w2^~w2"), "{text}");
        assert!(matches!(catalog_build("nope", &Params::new()), Err(Error::UnknownFamily(_))));
        assert!(matches!(catalog_build("jt", &parse_params(&["t=0"]).unwrap()), Err(Error::BadParams(_))));
        assert!(matches!(catalog_build("jt", &parse_params(&["s=1"]).unwrap()), Err(Error::BadParams(_))));
        let iw = catalog_build("nilpotent6", &parse_params(&["rho=1"]).unwrap()).unwrap();
        assert_eq!(iw, iwasawa());
    }

    #[test]
    fn samples_are_valid() {
        assert!(catalog_samples().len() > 15);
    }
}
