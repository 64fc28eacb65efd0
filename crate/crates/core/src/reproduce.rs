//! The `verify-paper` suite: every published claim that is checkable on
//! invariant data, run with a fixed seed and reported record by record.

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::catalog::{
    catalog_samples, classify_reduced6, family8, family8_balanced_condition, family8_balanced_residual,
    family8_gauduchon_scalar, jt, jt_from_real, jt_skt_scalar, nilpotent6, nilpotent6_expected_ddbar,
    nilpotent6_skt_scalar, nonnilpotent6, nonnilpotent6_expected_ddbar, reduced6, LieAlgebraLabel, Nilpotent6Params,
    Reduced6Params,
};
use crate::dsl::{parse_structure_equations, print_structure_equations};
use crate::error::{Error, Result};
use crate::form::{Form, Monomial};
use crate::lefschetz::{lefschetz_commutation_check, top_contraction, Lefschetz};
use crate::linalg::Matrix;
use crate::metric::{classify_metric, gamma_scalar, is_positive_metric, top_coefficient, volume_coefficient, MetricCoefficients};
use crate::random;
use crate::sasakian::{
    bundle_extend, coefficient_c, c_from_quadratic, heisenberg5, non_normal5, product_quadratic, product_report,
    solvable5, ProductParams,
};
use crate::scalar::{cx, cx_real, format_q, q, qi, sign, Cx, Q};
use crate::search::{balanced_feasibility_jt, certificate, find_metric, jt_balanced_candidate, FamilyContext, SearchStatus, Target, TargetKind};
use crate::structure::{real_two_form, StructureEquations};

/// One checked claim.
#[derive(Debug, Clone)]
pub struct ClaimRecord {
    pub id: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub samples: usize,
    pub elapsed: Duration,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct ReproductionReport {
    pub records: Vec<ClaimRecord>,
}

impl ReproductionReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&ClaimRecord> {
        self.records.iter().find(|r| !r.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "verdict": if self.passed() { "pass" } else { "fail" },
            "first_failure": self.first_failure().map(|r| r.id),
            "records": self.records.iter().map(|r| json!({
                "id": r.id,
                "claim": r.claim,
                "status": if r.passed { "pass" } else { "fail" },
                "samples": r.samples,
                "elapsed_ms": r.elapsed.as_millis() as u64,
                "detail": r.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{:<4} {:<26} {:>6} samples {:>8.1} ms  {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.id,
                r.samples,
                r.elapsed.as_secs_f64() * 1e3,
                r.claim
            ));
            if !r.passed {
                out.push_str(&format!("     {}\n", r.detail));
            }
        }
        match self.first_failure() {
            None => out.push_str("verdict: pass\n"),
            Some(r) => out.push_str(&format!("verdict: fail (first failing claim: {})\n", r.id)),
        }
        out
    }
}

pub type StructureBuilder = fn(&Q) -> Result<StructureEquations>;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub only: Option<String>,
    /// Random draws per randomized claim.
    pub draws: usize,
    /// Builder for the `t`-deformation, replaceable for mutation tests.
    pub jt: StructureBuilder,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: crate::search::DEFAULT_SEED, only: None, draws: 200, jt }
    }
}

type Check = fn(&mut ChaCha8Rng, &VerifyOptions) -> Result<(bool, usize, String)>;

pub const CLAIMS: &[(&str, &str)] = &[
    ("nilpotent-ddbar", "nilpotent family: ddbar(Omega) = x33 K w11~22~ and sign(gamma1) = sign(K)"),
    ("nonnilpotent-ddbar", "non-nilpotent family: ddbar(Omega) = 2x33 w11~22~ + 2x22 w11~33~, gamma1 > 0"),
    ("reduced-classification", "reduced family: case table, gamma1 < 0 witnesses on h2..h5, certificates on h6, h8"),
    ("jt-deformation", "t-deformation: SKT iff t = 1, gamma1 < 0 iff t < 1, never balanced on (0,1]"),
    ("family8-classes", "8-dim family: never SKT, 1-Gauduchon = 2-Gauduchon = astheno = {E = 0}, balanced test"),
    ("gauduchon-duality", "unimodular structures: gamma_k = gamma_(n-k-1)"),
    ("sasakian-products", "products of Sasakian factors: Q = 0 iff C(n,n2) = 0, signs, dim-6 scalar a t/(3b)"),
    ("circle-bundle", "circle bundles: solvable example has criterion -6 e1234 and gamma1 < 0"),
    ("lefschetz-commutation", "commutation formula for L*^r L^s holds exactly"),
    ("top-contraction", "L*^n(2i ddbar Omega ^ Omega^(n-2)) = 4^n (n!/3!)(n-3)! L*^3(2i ddbar Omega ^ Omega), with the stated constant"),
    ("top-contraction-derived", "the same identity with the constant 4^(n-3)(n!/3!)(n-3)!"),
    ("balanced-gauduchon-kahler", "unimodular: balanced and 1-Gauduchon imply Kahler"),
    ("infrastructure", "d^2 = 0, wedge axioms, volume identity, parser round trip"),
];

fn check_for(id: &str) -> Check {
    match id {
        "nilpotent-ddbar" => nilpotent_ddbar,
        "nonnilpotent-ddbar" => nonnilpotent_ddbar,
        "reduced-classification" => reduced_classification,
        "jt-deformation" => jt_deformation,
        "family8-classes" => family8_classes,
        "gauduchon-duality" => gauduchon_duality,
        "sasakian-products" => sasakian_products,
        "circle-bundle" => circle_bundle,
        "lefschetz-commutation" => lefschetz_commutation,
        "top-contraction" => |r, o| top_contraction_check(r, o, true),
        "top-contraction-derived" => |r, o| top_contraction_check(r, o, false),
        "balanced-gauduchon-kahler" => balanced_gauduchon_kahler,
        "infrastructure" => infrastructure,
        _ => unreachable!("every claim id has a check"),
    }
}

/// Runs every claim (or only `opts.only`). Each claim gets its own RNG
/// stream derived from the seed, so filtering does not change results.
pub fn run_verify_paper(opts: &VerifyOptions) -> Result<ReproductionReport> {
    if let Some(only) = &opts.only {
        if !CLAIMS.iter().any(|(id, _)| id == only) {
            let ids: Vec<&str> = CLAIMS.iter().map(|(id, _)| *id).collect();
            return Err(Error::BadParams(format!("unknown claim `{only}`; expected one of {ids:?}")));
        }
    }
    let mut report = ReproductionReport::default();
    for (i, (id, claim)) in CLAIMS.iter().enumerate() {
        if opts.only.as_deref().is_some_and(|o| o != *id) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
        let start = Instant::now();
        let (passed, samples, detail) = match check_for(id)(&mut rng, opts) {
            Ok(v) => v,
            Err(e) => (false, 0, format!("error: {e}")),
        };
        report.records.push(ClaimRecord { id, claim, passed, samples, elapsed: start.elapsed(), detail });
    }
    Ok(report)
}

fn fail(msg: String) -> Result<(bool, usize, String)> {
    Ok((false, 0, msg))
}

fn random_nilpotent(rng: &mut ChaCha8Rng) -> Nilpotent6Params {
    Nilpotent6Params {
        epsilon: rng.gen_range(0..=1),
        rho: rng.gen_range(0..=1),
        a: random::complex(rng, 2, 3),
        b: random::complex(rng, 2, 3),
        c: random::complex(rng, 2, 3),
        d: random::complex(rng, 2, 3),
    }
}

fn nilpotent_ddbar(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    for i in 0..opts.draws {
        let p = random_nilpotent(rng);
        let se = nilpotent6(&p)?;
        let x = random::positive_metric(rng, 3);
        let dd = se.ddbar(&x.fundamental_form());
        if dd != nilpotent6_expected_ddbar(&p, &x) {
            return fail(format!("draw {i}: ddbar mismatch for {p:?}"));
        }
        let k = nilpotent6_skt_scalar(&p);
        if sign(&gamma_scalar(&x, 1, &se)?) != sign(&k) {
            return fail(format!("draw {i}: gamma1 sign differs from K = {}", format_q(&k)));
        }
    }
    Ok((true, opts.draws, String::new()))
}

fn nonnilpotent_ddbar(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    for i in 0..opts.draws {
        let eps = rng.gen_range(0..=1);
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        let se = nonnilpotent6(eps, s)?;
        let x = random::positive_metric(rng, 3);
        if se.ddbar(&x.fundamental_form()) != nonnilpotent6_expected_ddbar(&x) {
            return fail(format!("draw {i}: ddbar mismatch (epsilon {eps}, sign {s})"));
        }
        if !gamma_scalar(&x, 1, &se)?.is_positive() {
            return fail(format!("draw {i}: gamma1 is not positive"));
        }
    }
    Ok((true, opts.draws, String::new()))
}

/// Parameter points for each case of the reduced-family table, with the
/// expected label and whether a metric with negative first scalar exists.
pub fn reduced_case_points() -> Vec<(&'static str, Reduced6Params, LieAlgebraLabel, bool)> {
    let r = |rho: u8, b: i64, x: Q, y: Q| Reduced6Params::new(rho, cx(qi(b), Q::zero()), x, y);
    vec![
        ("a1", r(1, 1, qi(2), qi(1)), LieAlgebraLabel::H2, true),
        ("a2", r(0, 0, qi(1), Q::zero()), LieAlgebraLabel::H3, true),
        ("a3", r(1, 1, qi(2), Q::zero()), LieAlgebraLabel::H4, true),
        ("a4", r(1, 1, Q::zero(), Q::zero()), LieAlgebraLabel::H6, false),
        ("a5", r(0, 0, Q::zero(), Q::zero()), LieAlgebraLabel::H8, false),
        ("b1", r(0, 1, qi(1), Q::zero()), LieAlgebraLabel::H2, true),
        ("b2", r(1, 0, qi(2), q(3, 2)), LieAlgebraLabel::H4, true),
        ("b3", r(1, 0, qi(1), Q::zero()), LieAlgebraLabel::H5, true),
    ]
}

fn reduced_classification(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    let mut samples = 0;
    for (case, p, label, feasible) in reduced_case_points() {
        let (got_label, got_case) = classify_reduced6(&p);
        if (got_label, got_case) != (label, case) {
            return fail(format!("case {case}: classifier says {got_label} ({got_case})"));
        }
        let se = reduced6(&p)?;
        let target = Target::with_family(TargetKind::GammaNegative(1), FamilyContext::Reduced6(p.clone()));
        let out = find_metric(&se, &target, 100, opts.seed)?;
        samples += out.samples_used;
        let expected = if feasible { SearchStatus::Witness } else { SearchStatus::InfeasibleCertified };
        if out.status != expected {
            return fail(format!("case {case} ({label}): search returned {}", out.status));
        }
        if let Some(x) = &out.witness {
            if !gamma_scalar(x, 1, &se)?.is_negative() {
                return fail(format!("case {case}: witness does not re-verify"));
            }
        } else {
            // The certificate is metric-independent: no random metric may contradict it.
            for _ in 0..20 {
                let x = random::positive_metric(rng, 3);
                samples += 1;
                if gamma_scalar(&x, 1, &se)?.is_negative() {
                    return fail(format!("case {case}: random metric contradicts the certificate"));
                }
            }
        }
    }
    Ok((true, samples, String::new()))
}

fn jt_deformation(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    let mut samples = 0;
    for t in [q(1, 4), q(1, 2), q(3, 4), Q::one()] {
        let se = (opts.jt)(&t)?;
        if jt_from_real(&t)?.se != se {
            return fail(format!("t = {t}: structure equations differ from the real presentation"));
        }
        let at_one = t.is_one();
        if jt_skt_scalar(&t).is_zero() != at_one {
            return fail(format!("t = {t}: closed-form SKT scalar"));
        }
        for draw in 0..=10 {
            let x = if draw == 0 { MetricCoefficients::standard(3) } else { random::positive_metric(rng, 3) };
            samples += 1;
            let rep = classify_metric(&x, &se)?;
            if rep.skt != at_one {
                return fail(format!("t = {t}: SKT flag is {} on a sampled metric", rep.skt));
            }
            if rep.gamma_k(1).is_negative() != (t < Q::one()) {
                return fail(format!("t = {t}: gamma1 = {}", format_q(rep.gamma_k(1))));
            }
            if rep.balanced {
                return fail(format!("t = {t}: a sampled metric is balanced"));
            }
        }
        let b = balanced_feasibility_jt(&t)?;
        if b.feasible || !b.quadratic.iter().all(Signed::is_positive) {
            return fail(format!("t = {t}: balanced certificate"));
        }
        let cand = jt_balanced_candidate(&t, &qi(1), &q(1, 2), &qi(1));
        if !se.d(&cand.fundamental_form().power(2)).is_zero() || is_positive_metric(&cand) {
            return fail(format!("t = {t}: the constrained metric is not balanced-but-indefinite"));
        }
    }
    Ok((true, samples, String::new()))
}

/// Sets `h11` so that `f(h11) = 0`, given `f` affine in `h11`.
fn solve_h11(h: &Matrix<Cx>, f: impl Fn(&MetricCoefficients) -> Cx) -> Option<MetricCoefficients> {
    let with = |v: Q| {
        let mut m = h.clone();
        m[0][0] = cx_real(v);
        MetricCoefficients::from_hermitian(&m).expect("Hermitian")
    };
    let f0 = f(&with(Q::zero()));
    let f1 = f(&with(Q::one()));
    let slope = f1 - f0.clone();
    if slope.re.is_zero() && slope.im.is_zero() {
        return None;
    }
    let root = -f0 / slope;
    if !root.im.is_zero() {
        return None;
    }
    let x = with(root.re);
    is_positive_metric(&x).then_some(x)
}

fn family8_classes(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    let draws = opts.draws * 5 / 2;
    let (mut on_gauduchon, mut on_balanced) = (0, 0);
    for i in 0..draws {
        let mode = i % 4;
        let p = match mode {
            1 | 2 => random::rational(rng, 2, 4).abs() + q(1, 4),
            3 => -(random::rational(rng, 2, 4).abs() + q(1, 4)),
            _ => random::rational(rng, 2, 4),
        };
        let qv = if mode == 2 || rng.gen_bool(0.5) { Q::zero() } else { random::rational(rng, 2, 4) };
        let a = cx(p.clone(), qv.clone());
        let se = family8(&a)?;
        let mut x = random::positive_metric(rng, 4);
        for _ in 0..20 {
            let h = x.hermitian();
            let solved = match mode {
                1 => solve_h11(&h, |m| cx_real(family8_gauduchon_scalar(&a, m))),
                2 => solve_h11(&h, |m| family8_balanced_residual(&a, m)),
                _ => break,
            };
            match solved {
                Some(s) => {
                    x = s;
                    break;
                }
                None => x = random::positive_metric(rng, 4),
            }
        }
        let e = family8_gauduchon_scalar(&a, &x);
        let bal = family8_balanced_condition(&a, &x);
        on_gauduchon += usize::from(e.is_zero());
        on_balanced += usize::from(bal);
        // Only the flags this claim needs; the full report also builds Ω⁴ and the Lee form.
        let om = x.fundamental_form();
        let om2 = om.wedge(&om);
        let (dd1, dd2) = (se.ddbar(&om), se.ddbar(&om2));
        if dd1.is_zero() {
            return fail(format!("draw {i}: SKT metric found"));
        }
        let first = top_coefficient(&dd1.wedge(&om2)).is_zero();
        let second = top_coefficient(&dd2.wedge(&om)).is_zero();
        let flags = [first, second, dd2.is_zero(), e.is_zero()];
        if flags.iter().any(|f| *f != flags[0]) {
            return fail(format!("draw {i}: 1-Gauduchon, 2-Gauduchon, astheno, E=0 disagree: {flags:?}"));
        }
        let balanced = se.d(&om2.wedge(&om)).is_zero();
        if balanced != bal {
            return fail(format!("draw {i}: balanced {balanced} but closed form says {bal}"));
        }
        if p.is_negative() {
            if !e.is_positive() || bal {
                return fail(format!("draw {i}: p < 0 but E = {} or balanced", format_q(&e)));
            }
            for kind in [TargetKind::Balanced, TargetKind::GauduchonZero(1)] {
                if certificate(&se, kind, &FamilyContext::Family8(a.clone())).is_none() {
                    return fail(format!("draw {i}: no certificate for {kind} with p < 0"));
                }
            }
        }
    }
    if on_gauduchon == 0 || on_balanced == 0 {
        return fail(format!("loci not exercised: {on_gauduchon} Gauduchon, {on_balanced} balanced"));
    }
    Ok((true, draws, format!("{on_gauduchon} draws on E = 0, {on_balanced} balanced")))
}

fn gauduchon_duality(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    let mut samples = 0;
    let mut structures = 0;
    for (name, se) in catalog_samples() {
        let n = se.n();
        if !(3..=4).contains(&n) || !se.is_unimodular() {
            continue;
        }
        structures += 1;
        for _ in 0..opts.draws {
            let x = random::positive_metric(rng, n);
            samples += 1;
            // Both scalars share the denominator top(Ωⁿ), so comparing numerators suffices.
            let om = x.fundamental_form();
            let mut powers = vec![se.one(), om.clone()];
            for k in 2..n - 1 {
                powers.push(powers[k - 1].wedge(&om));
            }
            let numerator = |k: usize| top_coefficient(&se.ddbar(&powers[k]).wedge(&powers[n - k - 1]));
            for k in 1..n - 1 {
                if 2 * k + 1 > n {
                    break;
                }
                let (a, b) = (numerator(k), numerator(n - k - 1));
                if a != b {
                    let (ga, gb) = (gamma_scalar(&x, k, &se)?, gamma_scalar(&x, n - k - 1, &se)?);
                    return fail(format!("{name}: gamma{k} = {} but gamma{} = {}", format_q(&ga), n - k - 1, format_q(&gb)));
                }
            }
        }
    }
    Ok((true, samples, format!("{structures} unimodular structures")))
}

fn sasakian_products(rng: &mut ChaCha8Rng, _opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    let a_values: Vec<Q> = (-10..10).map(|k| q(k, 4)).collect();
    let b_values: Vec<Q> = (-10..=10).filter(|k| *k != 0).map(|k| q(k, 3)).collect();
    let mut points = Vec::new();
    for n1 in 1..=5usize {
        for n2 in 1..=5usize {
            for a in &a_values {
                for b in &b_values {
                    points.push((n1, n2, a.clone(), b.clone()));
                }
            }
            // Exact zeros: n2 = 1 gives a line in a; otherwise pick a with rational b.
            if n2 == 1 && n1 >= 2 {
                points.push((n1, n2, q(1 - n1 as i64, 2), qi(1)));
            }
            for num in -400..=0 {
                let a = q(num, 40);
                let (c0, c1, c2) = ((n1 * (n1 - 1)) as i64, (2 * n1 * n2) as i64, (n2 * (n2 - 1)) as i64);
                if c2 == 0 {
                    break;
                }
                let b2 = -(qi(c0) + qi(c1) * a.clone() + qi(c2) * a.clone() * a.clone()) / qi(c2);
                if let Some(b) = crate::scalar::rational_sqrt(&b2).filter(|b| !b.is_zero()) {
                    points.push((n1, n2, a, b));
                }
            }
        }
    }
    let (mut zeros, mut samples) = (0, 0);
    for (n1, n2, a, b) in points {
        let t = b.clone() * q(rng.gen_range(1..=4), 2);
        let rep = product_report(&ProductParams::new(n1, n2, a.clone(), b.clone(), t.clone())?)?;
        samples += 1;
        if rep.n == 3 {
            if rep.gamma != a.clone() * t / (qi(3) * b) || sign(&rep.gamma) != sign(&a) {
                return fail(format!("n1 = n2 = 1, a = {a}: gamma = {}", format_q(&rep.gamma)));
            }
            continue;
        }
        let quad = rep.quadratic.clone().expect("n > 3");
        let c = coefficient_c(rep.n, n2, &a, &b)?;
        if quad != product_quadratic(n1, n2, &a, &b) || c != c_from_quadratic(n1, n2, &quad) {
            return fail(format!("({n1}, {n2}, {a}, {b}): C(n, n2) = {} does not match Q = {}", format_q(&c), format_q(&quad)));
        }
        if quad.is_zero() != c.is_zero() || rep.first_gauduchon != quad.is_zero() || sign(&rep.gamma) != sign(&quad) {
            return fail(format!("({n1}, {n2}, {a}, {b}): signs disagree"));
        }
        zeros += usize::from(quad.is_zero());
    }
    if zeros == 0 {
        return fail("no exact zeros on the grid".into());
    }
    Ok((true, samples, format!("{zeros} exact zeros")))
}

fn circle_bundle(_rng: &mut ChaCha8Rng, _opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    let ext = bundle_extend(&solvable5())?;
    let expected = Form::monomial(5, Monomial(0b1111), cx_real(qi(-6)));
    if ext.criterion != expected {
        return fail(format!("criterion is {:?}", ext.criterion));
    }
    let gamma = ext.gamma()?;
    if !gamma.is_negative() || ext.oriented_sign() != sign(&gamma) {
        return fail(format!("gamma1 = {}", format_q(&gamma)));
    }
    let one = Q::one();
    let deta = real_two_form(5, &[(one.clone(), 1, 2), (one.clone(), 3, 4)])?;
    for (label, f) in [("F = 0", Form::zero(5, 2)), ("F = d eta", deta.clone()), ("F = -d eta", deta.neg())] {
        let ext = bundle_extend(&heisenberg5(f)?)?;
        let gamma = ext.gamma()?;
        if ext.criterion.is_zero() || gamma.is_zero() || ext.oriented_sign() != sign(&gamma) {
            return fail(format!("Sasakian base, {label}: criterion {:?}, gamma1 {}", ext.criterion, format_q(&gamma)));
        }
    }
    if !matches!(bundle_extend(&non_normal5()?), Err(Error::NotIntegrable { .. })) {
        return fail("non-normal contact data produced an integrable extension".into());
    }
    Ok((true, 5, String::new()))
}

fn lefschetz_commutation(rng: &mut ChaCha8Rng, _opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    let mut samples = 0;
    for n in 1..=4usize {
        let lf = Lefschetz::new(&random::positive_metric(rng, n))?;
        for deg in 0..=4usize.min(2 * n) {
            for p in 0..=deg {
                let qd = deg - p;
                if p > n || qd > n {
                    continue;
                }
                let f = random::pure_form(rng, n, p, qd, 2);
                for s in 0..=3 {
                    for r in 0..=s {
                        samples += 1;
                        if !lefschetz_commutation_check(r, s, &f, &lf, n).is_zero() {
                            return fail(format!("n = {n}, bidegree ({p},{qd}), r = {r}, s = {s}: nonzero residual"));
                        }
                    }
                }
            }
        }
    }
    Ok((true, samples, String::new()))
}

fn top_contraction_check(rng: &mut ChaCha8Rng, _opts: &VerifyOptions, stated: bool) -> Result<(bool, usize, String)> {
    let mut samples = 0;
    let mut nonzero = 0;
    for (name, se) in catalog_samples() {
        if se.n() != 4 {
            continue;
        }
        for draw in 0..3 {
            let x = if draw == 0 { MetricCoefficients::standard(4) } else { random::positive_metric(rng, 4) };
            let t = top_contraction(&x, &se)?;
            samples += 1;
            let constant = if stated { &t.stated_constant } else { &t.derived_constant };
            nonzero += usize::from(!t.cubic.re.is_zero() || !t.cubic.im.is_zero());
            if t.full != cx_real(constant.clone()) * t.cubic.clone() {
                let ratio = t.ratio().map_or("undefined".to_string(), |r| crate::scalar::format_cx(&r));
                return fail(format!(
                    "{name}: L*^n side / L*^3 side = {ratio}, constant {} (4^(n-3)(n!/3!)(n-3)! = {})",
                    format_q(constant),
                    format_q(&t.derived_constant)
                ));
            }
        }
    }
    if nonzero == 0 {
        return fail("every sampled right-hand side vanished".into());
    }
    Ok((true, samples, format!("{nonzero} samples with a nonzero right-hand side")))
}

fn balanced_gauduchon_kahler(rng: &mut ChaCha8Rng, _opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    let (mut samples, mut premise) = (0, 0);
    for (name, se) in catalog_samples() {
        if !se.is_unimodular() {
            continue;
        }
        let n = se.n();
        let mut metrics = vec![MetricCoefficients::standard(n)];
        metrics.extend((0..5).map(|_| random::positive_metric(rng, n)));
        let found = find_metric(&se, &Target::new(TargetKind::Balanced), 10, 1)?;
        metrics.extend(found.witness);
        for x in metrics {
            samples += 1;
            let rep = classify_metric(&x, &se)?;
            if rep.balanced && rep.kth_gauduchon_k(1) {
                premise += 1;
                if !rep.kahler {
                    return fail(format!("{name}: balanced and 1-Gauduchon but not Kahler"));
                }
            }
        }
    }
    Ok((true, samples, format!("premise held on {premise} samples")))
}

fn infrastructure(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Result<(bool, usize, String)> {
    let samples_list = catalog_samples();
    let draws = opts.draws * 5;
    // d² = 0 on every basis monomial of degree 1 and 2.
    for (name, se) in &samples_list {
        let gens = se.gens();
        for a in 0..gens {
            for b in a..gens {
                let slots: Vec<usize> = if a == b { vec![a] } else { vec![a, b] };
                let (_, m) = Monomial::from_slots(&slots).expect("distinct");
                if !se.d(&se.d(&Form::monomial(gens, m, Cx::one()))).is_zero() {
                    return fail(format!("{name}: d^2 != 0 on {m:?}"));
                }
            }
        }
        if print_structure_equations(&parse_structure_equations(&print_structure_equations(se))?)
            != print_structure_equations(se)
            || parse_structure_equations(&print_structure_equations(se))? != *se
        {
            return fail(format!("{name}: parser round trip"));
        }
    }
    for i in 0..draws {
        let (name, se) = &samples_list[i % samples_list.len()];
        let gens = se.gens();
        let deg = rng.gen_range(0..=gens.min(4));
        let f = random::form(rng, gens, deg, 3);
        if !se.d(&se.d(&f)).is_zero() {
            return fail(format!("{name}: d^2 != 0 on a random form"));
        }
        let (dg, dh) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let g = random::form(rng, gens, dg, 2);
        let h = random::form(rng, gens, dh, 2);
        let s = if f.degree() * g.degree() % 2 == 0 { Cx::one() } else { -Cx::one() };
        if f.wedge(&g) != g.wedge(&f).scale(&s) || f.wedge(&g).wedge(&h) != f.wedge(&g.wedge(&h)) {
            return fail("wedge axioms fail on a random triple".into());
        }
        if se.partial_bar(&f.conjugate()) != se.partial(&f).conjugate() {
            return fail(format!("{name}: conjugation does not intertwine d-parts"));
        }
        let n = 1 + i % 4;
        let x = random::positive_metric(rng, n);
        if top_coefficient(&x.fundamental_form().power(n)) != volume_coefficient(&x) {
            return fail(format!("volume identity fails for n = {n}"));
        }
        let p = random_nilpotent(rng);
        let se = nilpotent6(&p)?;
        if parse_structure_equations(&print_structure_equations(&se))? != se {
            return fail(format!("parser round trip fails for {p:?}"));
        }
    }
    Ok((true, draws + samples_list.len(), String::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_claim_is_rejected() {
        let opts = VerifyOptions { only: Some("nope".into()), ..VerifyOptions::default() };
        assert!(run_verify_paper(&opts).is_err());
    }

    #[test]
    fn single_claim_report() {
        let opts = VerifyOptions { only: Some("circle-bundle".into()), draws: 5, ..VerifyOptions::default() };
        let rep = run_verify_paper(&opts).unwrap();
        assert_eq!(rep.records.len(), 1);
        assert!(rep.passed(), "{}", rep.to_text());
    }

    fn flipped_jt(t: &Q) -> Result<StructureEquations> {
        // B = -1 instead of 1.
        let text = format!("n: 3\ndw3: w1^w2 + w1^~w1 - w1^~w2 + ({})*w2^~w2", format_q(&(Q::one() / t.clone())));
        parse_structure_equations(&text)
    }

    #[test]
    fn corrupted_deformation_is_caught() {
        let opts = VerifyOptions { only: Some("jt-deformation".into()), draws: 5, jt: flipped_jt, ..VerifyOptions::default() };
        let rep = run_verify_paper(&opts).unwrap();
        assert_eq!(rep.first_failure().map(|r| r.id), Some("jt-deformation"));
    }
}
