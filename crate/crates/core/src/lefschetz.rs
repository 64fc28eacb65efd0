//! The Lefschetz operator `L = Ω∧·` and its adjoint.
//!
//! `L*` is computed in a coframe `ζ` adapted to the metric: writing
//! `-iX = L D L*` (unit lower triangular `L`, positive diagonal `D`) and
//! `ζ^j = Σ_a L_{aj} ω^a` gives `Ω = i Σ d_j ζ^j∧ζ̄^j`, so
//! `L* = 4 Σ_j (-i/d_j) ι_{ζ̄^j} ι_{ζ^j}` stays rational. The factor 4 is the
//! normalization under which the commutation formula below holds as stated.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::Form;
use crate::linalg::{self, ldl_hermitian, transpose};
use crate::metric::{is_positive_metric, MetricCoefficients};
use crate::scalar::{binomial, cx_real, factorial, Cx, Q};
use crate::structure::StructureEquations;

pub struct Lefschetz {
    omega: Form,
    /// Images of `ω^a`, `ω̄^a` in the `ζ` coframe.
    to_zeta: Vec<Form>,
    /// Images of `ζ^j`, `ζ̄^j` in the `ω` coframe.
    from_zeta: Vec<Form>,
    /// `-4i/d_j`.
    weights: Vec<Cx>,
}

fn linear_images(m: &[Vec<Cx>], gens: usize) -> Vec<Form> {
    // Slot 2a holds Σ_j m[a][j] ·slot 2j; slot 2a+1 the conjugate.
    let n = m.len();
    let mut out = Vec::with_capacity(2 * n);
    for row in m {
        let mut holo = Form::zero(gens, 1);
        let mut anti = Form::zero(gens, 1);
        for (j, c) in row.iter().enumerate() {
            holo = holo.add(&Form::generator(gens, 2 * j).scale(c));
            anti = anti.add(&Form::generator(gens, 2 * j + 1).scale(&c.conj()));
        }
        out.push(holo);
        out.push(anti);
    }
    out
}

impl Lefschetz {
    pub fn new(x: &MetricCoefficients) -> Result<Self> {
        if !is_positive_metric(x) {
            return Err(Error::NotPositive);
        }
        let n = x.n();
        let gens = 2 * n;
        let (l, d) = ldl_hermitian(&x.hermitian()).ok_or(Error::NotPositive)?;
        // ζ = Lᵀ ω, so ω = (Lᵀ)⁻¹ ζ.
        let lt = transpose(&l);
        let to = linalg::inverse(&lt)?;
        let minus_4i = Cx::new(Q::zero(), Q::from_integer((-4).into()));
        Ok(Lefschetz {
            omega: x.fundamental_form(),
            to_zeta: linear_images(&to, gens),
            from_zeta: linear_images(&lt, gens),
            weights: d.iter().map(|dj| minus_4i.clone() / dj.clone()).collect(),
        })
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn l(&self, f: &Form) -> Form {
        self.omega.wedge(f)
    }

    pub fn l_star(&self, f: &Form) -> Form {
        if f.degree() < 2 || f.is_zero() {
            return Form::zero(f.gens(), f.degree().saturating_sub(2));
        }
        let z = f.substitute(&self.to_zeta);
        let mut acc = Form::zero(f.gens(), f.degree() - 2);
        for (j, w) in self.weights.iter().enumerate() {
            let c = z.interior(2 * j).interior(2 * j + 1);
            acc = acc.add(&c.scale(w));
        }
        acc.substitute(&self.from_zeta)
    }

    pub fn l_pow(&self, s: usize, f: &Form) -> Form {
        (0..s).fold(f.clone(), |acc, _| self.l(&acc))
    }

    pub fn l_star_pow(&self, r: usize, f: &Form) -> Form {
        (0..r).fold(f.clone(), |acc, _| self.l_star(&acc))
    }
}

/// `L*^r L^s f` minus `L^s L*^r f + Σ_i 4^i (i!)² C(s,i) C(r,i) C(n-p-s+r,i) L^{s-i} L*^{r-i} f`
/// for `f` of degree `p`. Zero whenever the operators are consistent.
pub fn lefschetz_commutation_check(r: usize, s: usize, f: &Form, lf: &Lefschetz, n: usize) -> Form {
    let p = f.degree() as i64;
    let lhs = lf.l_star_pow(r, &lf.l_pow(s, f));
    let mut rhs = lf.l_pow(s, &lf.l_star_pow(r, f));
    for i in 1..=r.min(s) {
        let ii = i as i64;
        let c: Q = Q::from_integer(4.into()).pow(i as i32)
            * factorial(i as u64)
            * factorial(i as u64)
            * binomial(s as i64, ii)
            * binomial(r as i64, ii)
            * binomial(n as i64 - p - s as i64 + r as i64, ii);
        if c.is_zero() {
            continue;
        }
        let term = lf.l_pow(s - i, &lf.l_star_pow(r - i, f));
        rhs = rhs.add(&term.scale(&cx_real(c)));
    }
    if lhs.is_zero() && rhs.is_zero() {
        return lhs;
    }
    lhs.sub(&rhs)
}

/// Both sides of the identity relating `L*ⁿ(2i∂∂̄Ω∧Ω^{n-2})` to `L*³(2i∂∂̄Ω∧Ω)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TopContraction {
    /// `L*ⁿ(2i∂∂̄Ω∧Ω^{n-2})`, a constant.
    pub full: Cx,
    /// `L*³(2i∂∂̄Ω∧Ω)`, a constant.
    pub cubic: Cx,
    /// `4^{n-3}·(n!/3!)·(n-3)!`, the constant forced by the commutation formula.
    pub derived_constant: Q,
    /// `4ⁿ·(n!/3!)·(n-3)!`, the commonly stated constant.
    pub stated_constant: Q,
}

impl TopContraction {
    /// `full / cubic` when the cubic side is nonzero.
    pub fn ratio(&self) -> Option<Cx> {
        (!self.cubic.is_zero()).then(|| self.full.clone() / self.cubic.clone())
    }
}

fn constant_part(f: &Form) -> Cx {
    f.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Cx::zero)
}

pub fn top_contraction(x: &MetricCoefficients, se: &StructureEquations) -> Result<TopContraction> {
    let n = se.n();
    if n < 3 {
        return Err(Error::BadDimensions(format!("need n >= 3, got {n}")));
    }
    let lf = Lefschetz::new(x)?;
    let two_i = Cx::new(Q::zero(), Q::from_integer(2.into()));
    let dd = se.ddbar(lf.omega()).scale(&two_i);
    let psi = dd.wedge(lf.omega());
    let full_arg = dd.wedge(&lf.omega().power(n - 2));
    let full = constant_part(&lf.l_star_pow(n, &full_arg));
    let cubic = constant_part(&lf.l_star_pow(3, &psi));
    let base = factorial(n as u64) / factorial(3) * factorial(n as u64 - 3);
    let four = Q::from_integer(4.into());
    Ok(TopContraction {
        full,
        cubic,
        derived_constant: four.pow(n as i32 - 3) * base.clone(),
        stated_constant: four.pow(n as i32) * base,
    })
}

/// `L*(1)` is zero; convenience for callers that want the unit form.
pub fn unit(gens: usize) -> Form {
    Form::constant(gens, Cx::one())
}
