//! Structure equations of Lie algebras: complex `(1,0)`-coframes with `dω^j`
//! given as exact 2-forms, real coframes with optional almost-complex
//! structure, and the passage from the latter to the former.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::{Form, Generator, Monomial};
use crate::linalg::{self, Matrix};
use crate::scalar::{cx_real, to_float, Cf, Cx, Scalar, Q};

/// A complex coframe `ω^1..ω^n` of a Lie algebra with `dω^j` prescribed.
///
/// Forms live on `2n` generator slots. Construction verifies `d² = 0` on
/// every generator and that no `dω^j` has a `(0,2)`-component, so `d = ∂ + ∂̄`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureEquations<S: Scalar = Cx> {
    n: usize,
    d_gen: Vec<Form<S>>,
}

impl StructureEquations<Cx> {
    /// `holo[j-1]` is `dω^j`, a 2-form over `2n` slots (zero allowed).
    pub fn new(n: usize, holo: Vec<Form<Cx>>) -> Result<Self> {
        if holo.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: holo.len() });
        }
        let mut d_gen = Vec::with_capacity(2 * n);
        for (j, f) in holo.iter().enumerate() {
            if f.gens() != 2 * n {
                return Err(Error::DimensionMismatch { expected: 2 * n, found: f.gens() });
            }
            if !f.is_zero() && f.degree() != 2 {
                return Err(Error::MixedDegree(2, f.degree()));
            }
            let f = if f.is_zero() { Form::zero(2 * n, 2) } else { f.clone() };
            let bad = f.component(0, 2);
            if !bad.is_zero() {
                return Err(Error::NotIntegrable {
                    generator: Generator::holo(j + 1).to_string(),
                    component: bad.to_string(),
                });
            }
            d_gen.push(f.clone());
            d_gen.push(f.conjugate());
        }
        let se = StructureEquations { n, d_gen };
        for slot in 0..2 * n {
            let dd = se.d_gen[slot].derivation(&se.d_gen);
            if !dd.is_zero() {
                return Err(Error::JacobiViolation {
                    generator: Generator::from_slot(slot).to_string(),
                    residual: dd.to_string(),
                });
            }
        }
        Ok(se)
    }

    /// The abelian algebra of complex dimension `n`.
    pub fn abelian(n: usize) -> Self {
        Self::new(n, vec![Form::zero(2 * n, 2); n]).expect("abelian algebra is valid")
    }

    /// Floating mirror for screening.
    pub fn to_float(&self) -> StructureEquations<Cf> {
        StructureEquations { n: self.n, d_gen: self.d_gen.iter().map(|f| f.map_coefficients(to_float)).collect() }
    }

    /// `true` iff `d` kills every monomial of degree `2n-1`.
    pub fn is_unimodular(&self) -> bool {
        let full = (1u32 << (2 * self.n)) - 1;
        (0..2 * self.n).all(|s| {
            let m = Monomial(full & !(1 << s));
            self.d(&Form::monomial(2 * self.n, m, Cx::one())).is_zero()
        })
    }
}

impl<S: Scalar> StructureEquations<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generator slots, `2n`.
    pub fn gens(&self) -> usize {
        2 * self.n
    }

    /// `dω^j` for `j` in `1..=n`.
    pub fn d_holo(&self, j: usize) -> &Form<S> {
        &self.d_gen[2 * (j - 1)]
    }

    pub fn d_slot(&self, slot: usize) -> &Form<S> {
        &self.d_gen[slot]
    }

    pub fn one(&self) -> Form<S> {
        Form::constant(self.gens(), S::one())
    }

    pub fn generator(&self, g: Generator) -> Form<S> {
        Form::generator(self.gens(), g.slot())
    }

    /// Exterior derivative. Panics on a dimension mismatch; see [`exterior_d`].
    pub fn d(&self, f: &Form<S>) -> Form<S> {
        assert_eq!(f.gens(), self.gens(), "form and structure equations differ in dimension");
        f.derivation(&self.d_gen)
    }

    /// `(∂f, ∂̄f)`: the parts of `df` raising holomorphic resp. antiholomorphic degree.
    pub fn d_split(&self, f: &Form<S>) -> (Form<S>, Form<S>) {
        let mut del = Form::zero(self.gens(), f.degree() + 1);
        let mut delbar = Form::zero(self.gens(), f.degree() + 1);
        for (m, c) in f.terms() {
            let (p, _) = m.bidegree();
            let piece = Form::monomial(self.gens(), *m, c.clone()).derivation(&self.d_gen);
            for (mm, cc) in piece.terms() {
                if mm.bidegree().0 == p + 1 {
                    del.add_term(*mm, cc.clone());
                } else {
                    delbar.add_term(*mm, cc.clone());
                }
            }
        }
        (del, delbar)
    }

    pub fn partial(&self, f: &Form<S>) -> Form<S> {
        self.d_split(f).0
    }

    pub fn partial_bar(&self, f: &Form<S>) -> Form<S> {
        self.d_split(f).1
    }

    /// `∂∂̄f`.
    pub fn ddbar(&self, f: &Form<S>) -> Form<S> {
        self.partial(&self.partial_bar(f))
    }
}

/// Exterior derivative with a dimension check.
pub fn exterior_d(f: &Form<Cx>, se: &StructureEquations) -> Result<Form<Cx>> {
    if f.gens() != se.gens() {
        return Err(Error::DimensionMismatch { expected: se.gens(), found: f.gens() });
    }
    Ok(se.d(f))
}

/// Real Lie algebra given by `de^a` over a real coframe `e^1..e^m`, with an
/// optional almost-complex structure `J` (as a matrix on vectors:
/// `J e_b = Σ_a J[a][b] e_a`).
#[derive(Debug, Clone, PartialEq)]
pub struct RealLieAlgebra {
    dim: usize,
    d_of: Vec<Form<Cx>>,
    j: Option<Matrix<Q>>,
}

impl RealLieAlgebra {
    pub fn new(dim: usize, d_of: Vec<Form<Cx>>, j: Option<Matrix<Q>>) -> Result<Self> {
        if d_of.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: d_of.len() });
        }
        let d_of: Vec<Form<Cx>> = d_of
            .into_iter()
            .map(|f| {
                if f.gens() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: f.gens() });
                }
                if !f.is_real() {
                    return Err(Error::BadParams("real structure equations need real coefficients".into()));
                }
                if f.is_zero() {
                    Ok(Form::zero(dim, 2))
                } else if f.degree() != 2 {
                    Err(Error::MixedDegree(2, f.degree()))
                } else {
                    Ok(f)
                }
            })
            .collect::<Result<_>>()?;
        for (a, f) in d_of.iter().enumerate() {
            let dd = f.derivation(&d_of);
            if !dd.is_zero() {
                return Err(Error::JacobiViolation { generator: format!("e{}", a + 1), residual: dd.to_string() });
            }
        }
        if let Some(j) = &j {
            check_complex_structure(j, dim)?;
        }
        Ok(RealLieAlgebra { dim, d_of, j })
    }

    /// Builds from 1-based index pairs: `terms[a]` lists `(coefficient, b, c)` for `de^{a+1} = Σ coeff e^{bc}`.
    pub fn from_pairs(dim: usize, terms: &[Vec<(Q, usize, usize)>], j: Option<Matrix<Q>>) -> Result<Self> {
        let d_of = terms
            .iter()
            .map(|t| real_two_form(dim, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, d_of, j)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn d_of(&self, a: usize) -> &Form<Cx> {
        &self.d_of[a]
    }

    pub fn complex_structure(&self) -> Option<&Matrix<Q>> {
        self.j.as_ref()
    }

    pub fn with_complex_structure(&self, j: Matrix<Q>) -> Result<Self> {
        check_complex_structure(&j, self.dim)?;
        Ok(RealLieAlgebra { j: Some(j), ..self.clone() })
    }

    pub fn d(&self, f: &Form<Cx>) -> Form<Cx> {
        f.derivation(&self.d_of)
    }

    pub fn is_unimodular(&self) -> bool {
        let full = (1u32 << self.dim) - 1;
        (0..self.dim).all(|s| self.d(&Form::monomial(self.dim, Monomial(full & !(1 << s)), Cx::one())).is_zero())
    }
}

/// Real 2-form from 1-based `(coefficient, b, c)` triples meaning `coeff·e^b∧e^c`.
pub fn real_two_form(dim: usize, terms: &[(Q, usize, usize)]) -> Result<Form<Cx>> {
    if terms.is_empty() {
        return Ok(Form::zero(dim, 2));
    }
    Form::from_slot_terms(dim, terms.iter().map(|(c, b, d)| (vec![b - 1, d - 1], cx_real(c.clone()))))
}

fn check_complex_structure(j: &Matrix<Q>, dim: usize) -> Result<()> {
    if j.len() != dim || j.iter().any(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: j.len() });
    }
    let jc = to_cx_matrix(j);
    let sq = linalg::mat_mul(&jc, &jc);
    let minus_id: Matrix<Cx> = linalg::identity::<Cx>(dim)
        .into_iter()
        .map(|r| r.into_iter().map(|v| -v).collect())
        .collect();
    if sq != minus_id {
        return Err(Error::NotAlmostComplex);
    }
    Ok(())
}

pub fn to_cx_matrix(m: &Matrix<Q>) -> Matrix<Cx> {
    m.iter().map(|r| r.iter().map(|v| cx_real(v.clone())).collect()).collect()
}

/// A complex coframe of a real algebra together with the transport of real forms.
#[derive(Debug, Clone)]
pub struct ComplexFrame {
    pub se: StructureEquations,
    /// Row `j` holds the coefficients of `ω^{j+1}` in `e^1..e^m`.
    pub coframe: Matrix<Cx>,
    /// Image of each `e^a` as a 1-form in the `ω, ω̄` generators.
    pub real_images: Vec<Form<Cx>>,
}

impl ComplexFrame {
    /// Rewrites a form over the real coframe in the complex coframe.
    pub fn transport(&self, f: &Form<Cx>) -> Form<Cx> {
        f.substitute(&self.real_images)
    }
}

/// Converts `(real coframe, J)` into `(1,0)` structure equations.
///
/// The `(1,0)`-forms are the `+i` eigenspace of `J` acting on 1-forms by
/// `α ↦ α∘J`. The basis is read off deterministically: the projector
/// `(Id - iJ^T)/2` is applied to `e^1, e^2, ...` in order and the first `n`
/// independent images are kept.
pub fn complex_frame_from_real(alg: &RealLieAlgebra) -> Result<ComplexFrame> {
    let j = alg.complex_structure().ok_or_else(|| Error::BadParams("no complex structure J".into()))?;
    check_complex_structure(j, alg.dim)?;
    let m = alg.dim;
    let half = cx_real(Q::new(1.into(), 2.into()));
    let i = Cx::imag_unit();
    // projector acting on coefficient column vectors
    let proj: Matrix<Cx> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    let id = if r == c { Cx::one() } else { Cx::zero() };
                    (id - i.clone() * cx_real(j[c][r].clone())) * half.clone()
                })
                .collect()
        })
        .collect();
    let keep = linalg::independent_columns(&proj);
    let coframe: Matrix<Cx> = keep
        .iter()
        .take(m / 2)
        .map(|&c| proj.iter().map(|row| row[c].clone()).collect())
        .collect();
    complex_frame_with_basis(alg, coframe)
}

/// Builds structure equations from an explicitly given `(1,0)` coframe.
/// Row `j` of `coframe` holds the coefficients of `ω^{j+1}` over `e^1..e^m`.
pub fn complex_frame_with_basis(alg: &RealLieAlgebra, coframe: Matrix<Cx>) -> Result<ComplexFrame> {
    let m = alg.dim;
    if m % 2 != 0 || coframe.len() != m / 2 {
        return Err(Error::DimensionMismatch { expected: m / 2, found: coframe.len() });
    }
    let n = m / 2;
    // columns: ω^1..ω^n, ω̄^1..ω̄^n
    let v: Matrix<Cx> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| if b < n { coframe[b][a].clone() } else { coframe[b - n][a].conj() })
                .collect()
        })
        .collect();
    let v_inv = linalg::inverse(&v).map_err(|_| Error::BadParams("coframe is not a basis".into()))?;
    let slot_of = |b: usize| if b < n { Generator::holo(b + 1).slot() } else { Generator::anti(b - n + 1).slot() };
    let real_images: Vec<Form<Cx>> = (0..m)
        .map(|a| {
            let mut f = Form::zero(m, 1);
            for (b, row) in v_inv.iter().enumerate() {
                f.add_term(Monomial(1 << slot_of(b)), row[a].clone());
            }
            f
        })
        .collect();
    let holo: Vec<Form<Cx>> = coframe
        .iter()
        .map(|row| {
            let mut acc = Form::zero(m, 2);
            for (a, c) in row.iter().enumerate() {
                acc = acc.add(&alg.d_of[a].scale(c));
            }
            acc.substitute(&real_images)
        })
        .collect();
    let se = StructureEquations::new(n, holo)?;
    Ok(ComplexFrame { se, coframe, real_images })
}

/// The almost-complex structure whose `(1,0)`-forms are the rows of `coframe`.
pub fn complex_structure_from_coframe(coframe: &Matrix<Cx>) -> Result<Matrix<Q>> {
    let n = coframe.len();
    let m = 2 * n;
    let v: Matrix<Cx> = (0..m)
        .map(|a| (0..m).map(|b| if b < n { coframe[b][a].clone() } else { coframe[b - n][a].conj() }).collect())
        .collect();
    let v_inv = linalg::inverse(&v)?;
    let i = Cx::imag_unit();
    let dv: Matrix<Cx> = v
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(b, x)| if b < n { x.clone() * i.clone() } else { -(x.clone() * i.clone()) })
                .collect()
        })
        .collect();
    let jt = linalg::mat_mul(&dv, &v_inv);
    let mut j = vec![vec![Q::zero(); m]; m];
    for a in 0..m {
        for b in 0..m {
            let e = &jt[b][a];
            if !e.im.is_zero() {
                return Err(Error::BadParams("coframe does not define a real J".into()));
            }
            j[a][b] = e.re.clone();
        }
    }
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cxi, qi};

    fn w(n: usize, j: usize) -> Form<Cx> {
        Form::generator(2 * n, Generator::holo(j).slot())
    }
    fn wb(n: usize, j: usize) -> Form<Cx> {
        Form::generator(2 * n, Generator::anti(j).slot())
    }

    #[test]
    fn non_integrable_rejected() {
        let r = StructureEquations::new(2, vec![Form::zero(4, 2), wb(2, 1).wedge(&wb(2, 2))]);
        assert!(matches!(r, Err(Error::NotIntegrable { .. })));
    }

    #[test]
    fn jacobi_violation_rejected() {
        // dω1 = ω^{2 3̄}, dω2 = ω^{1 1̄}: d(dω1) = ω^{1 1̄ 3̄} ≠ 0
        let r = StructureEquations::new(
            3,
            vec![w(3, 2).wedge(&wb(3, 3)), w(3, 1).wedge(&wb(3, 1)), Form::zero(6, 2)],
        );
        assert!(matches!(r, Err(Error::JacobiViolation { .. })));
    }

    #[test]
    fn leibniz_on_product() {
        let se = StructureEquations::new(
            3,
            vec![Form::zero(6, 2), Form::zero(6, 2), w(3, 1).wedge(&wb(3, 1)).add(&w(3, 2).wedge(&wb(3, 2)))],
        )
        .unwrap();
        let a = w(3, 3);
        let b = wb(3, 3);
        let lhs = se.d(&a.wedge(&b));
        let rhs = se.d(&a).wedge(&b).sub(&a.wedge(&se.d(&b)));
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn real_affine_algebra_not_unimodular() {
        // de^2 = e^{12}: trace of ad(e_1) is nonzero
        let alg = RealLieAlgebra::from_pairs(2, &[vec![], vec![(qi(1), 1, 2)]], None).unwrap();
        assert!(!alg.is_unimodular());
        let j = vec![vec![qi(0), qi(-1)], vec![qi(1), qi(0)]];
        let frame = complex_frame_from_real(&alg.with_complex_structure(j).unwrap()).unwrap();
        assert!(!frame.se.is_unimodular());
    }

    #[test]
    fn abelian_plane() {
        let alg = RealLieAlgebra::from_pairs(2, &[vec![], vec![]], Some(vec![vec![qi(0), qi(-1)], vec![qi(1), qi(0)]]))
            .unwrap();
        let frame = complex_frame_from_real(&alg).unwrap();
        assert_eq!(frame.se.n(), 1);
        assert!(frame.se.d_holo(1).is_zero());
        // J e_1 = e_2, so ω = (e^1 + i e^2)/2
        assert_eq!(frame.coframe[0], vec![cx_real(Q::new(1.into(), 2.into())), cx(0, 1, 2)]);
    }

    fn cx(re: i64, im: i64, den: i64) -> Cx {
        crate::scalar::cx(Q::new(re.into(), den.into()), Q::new(im.into(), den.into()))
    }

    #[test]
    fn bad_complex_structure() {
        let alg = RealLieAlgebra::from_pairs(2, &[vec![], vec![]], None).unwrap();
        let r = alg.with_complex_structure(vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]]);
        assert_eq!(r.unwrap_err(), Error::NotAlmostComplex);
        let _ = cxi(0, 0);
    }
}
