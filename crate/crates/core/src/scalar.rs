//! Coefficient fields.
//!
//! All geometric predicates run over [`Cx`], complex numbers with
//! arbitrary-precision rational parts, where zero tests are exact. A floating
//! mirror [`Cf`] exists so the metric search can screen candidates cheaply
//! before re-verifying them exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational number.
pub type Q = BigRational;
/// Exact complex number with rational real and imaginary parts.
pub type Cx = Complex<Q>;
/// Floating complex number, used only for screening.
pub type Cf = Complex<f64>;

/// Tolerance for treating a floating coefficient as zero.
pub const FLOAT_EPS: f64 = 1e-10;

/// A coefficient field for forms: either exact ([`Cx`]) or floating ([`Cf`]).
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    type Real: Clone + fmt::Debug + PartialOrd + Zero + One + Add<Output = Self::Real>;

    fn conj(&self) -> Self;
    /// Exact zero for rationals, tolerance test for floats.
    fn negligible(&self) -> bool;
    fn imag_unit() -> Self;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn from_i64(v: i64) -> Self;
    fn real_from_i64(v: i64) -> Self::Real;
    fn real_negligible(r: &Self::Real) -> bool;
    /// Whether the scalar is a real number (exactly, or within tolerance).
    fn is_real(&self) -> bool {
        Self::real_negligible(&self.im())
    }
}

impl Scalar for Cx {
    type Real = Q;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn negligible(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn imag_unit() -> Self {
        Complex::new(Q::zero(), Q::one())
    }
    fn from_parts(re: Q, im: Q) -> Self {
        Complex::new(re, im)
    }
    fn re(&self) -> Q {
        self.re.clone()
    }
    fn im(&self) -> Q {
        self.im.clone()
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(Q::from_integer(BigInt::from(v)), Q::zero())
    }
    fn real_from_i64(v: i64) -> Q {
        Q::from_integer(BigInt::from(v))
    }
    fn real_negligible(r: &Q) -> bool {
        r.is_zero()
    }
}

impl Scalar for Cf {
    type Real = f64;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn negligible(&self) -> bool {
        self.norm_sqr() < FLOAT_EPS * FLOAT_EPS
    }
    fn imag_unit() -> Self {
        Complex::new(0.0, 1.0)
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex::new(re, im)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }
    fn real_from_i64(v: i64) -> f64 {
        v as f64
    }
    fn real_negligible(r: &f64) -> bool {
        r.abs() < FLOAT_EPS
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn cx(re: Q, im: Q) -> Cx {
    Complex::new(re, im)
}

pub fn cxi(re: i64, im: i64) -> Cx {
    Complex::new(qi(re), qi(im))
}

pub fn cx_real(re: Q) -> Cx {
    Complex::new(re, Q::zero())
}

/// `|z|^2`, exact.
pub fn norm_sqr(z: &Cx) -> Q {
    &z.re * &z.re + &z.im * &z.im
}

pub fn to_float(z: &Cx) -> Cf {
    Complex::new(q_to_f64(&z.re), q_to_f64(&z.im))
}

pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(v: &Q) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::BadNumber(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

/// Formats a complex number in the structure-equation literal syntax:
/// `a`, `bi`, or `a+bi`.
pub fn format_cx(z: &Cx) -> String {
    let re = &z.re;
    let im = &z.im;
    if im.is_zero() {
        return format_q(re);
    }
    let im_part = if im.abs().is_one() {
        if im.is_negative() { "-i".to_string() } else { "i".to_string() }
    } else {
        format!("{}i", format_q(im))
    };
    if re.is_zero() {
        im_part
    } else if im.is_negative() {
        format!("{}{}", format_q(re), im_part)
    } else {
        format!("{}+{}", format_q(re), im_part)
    }
}

/// Parses the output of [`format_cx`]: `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_cx(s: &str) -> Result<Cx, Error> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::BadNumber(s.to_string());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(cx_real(parse_q(&t)?));
    };
    let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
    let (re, im) = match split {
        Some(i) => (parse_q(&body[..i])?, &body[i..]),
        None => (Q::zero(), body),
    };
    let im = match im {
        "" | "+" => Q::one(),
        "-" => -Q::one(),
        other => parse_q(other.strip_prefix('+').unwrap_or(other)).map_err(|_| bad())?,
    };
    Ok(cx(re, im))
}

/// Generalized binomial coefficient `m(m-1)...(m-k+1)/k!`, valid for negative `m`.
pub fn binomial(m: i64, k: i64) -> Q {
    if k < 0 {
        return Q::zero();
    }
    let mut acc = Q::one();
    for j in 0..k {
        acc = acc * qi(m - j) / qi(j + 1);
    }
    acc
}

/// Ordinary binomial with the convention `C(m, k) = 0` outside `0 <= k <= m`.
pub fn binomial_nonneg(m: i64, k: i64) -> Q {
    if k < 0 || m < 0 || k > m {
        Q::zero()
    } else {
        binomial(m, k)
    }
}

pub fn factorial(n: u64) -> Q {
    (1..=n).fold(Q::one(), |acc, v| acc * qi(v as i64))
}

/// `i^k` as an exact complex number.
pub fn i_pow(k: usize) -> Cx {
    match k % 4 {
        0 => cxi(1, 0),
        1 => cxi(0, 1),
        2 => cxi(-1, 0),
        _ => cxi(0, -1),
    }
}

/// Exact rational square root when it exists.
pub fn rational_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    if &(&n * &n) == v.numer() && &(&d * &d) == v.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}
