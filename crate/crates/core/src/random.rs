//! Seeded random rationals, metrics and forms for sampling and checks.

use num_traits::Zero;
use rand::Rng;

use crate::form::{Form, Monomial};
use crate::linalg::{conj_transpose, mat_mul, Matrix};
use crate::metric::MetricCoefficients;
use crate::scalar::{cx, q, Cx, Q};

/// `k/den` with `|k| <= bound·den`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64, den: i64) -> Q {
    q(rng.gen_range(-bound * den..=bound * den), den)
}

pub fn complex<R: Rng>(rng: &mut R, bound: i64, den: i64) -> Cx {
    cx(rational(rng, bound, den), rational(rng, bound, den))
}

/// `MM* + I/1024` with entries of `M` in `{k/4 : |k| <= 4}` (real and imaginary parts).
pub fn positive_hermitian<R: Rng>(rng: &mut R, n: usize) -> Matrix<Cx> {
    let m: Matrix<Cx> = (0..n).map(|_| (0..n).map(|_| complex(rng, 1, 4)).collect()).collect();
    let mut h = mat_mul(&m, &conj_transpose(&m));
    for (j, row) in h.iter_mut().enumerate() {
        row[j] = row[j].clone() + cx(q(1, 1024), Q::zero());
    }
    h
}

pub fn positive_metric<R: Rng>(rng: &mut R, n: usize) -> MetricCoefficients {
    MetricCoefficients::from_hermitian(&positive_hermitian(rng, n)).expect("Hermitian by construction")
}

/// A sum of up to `terms` random monomials of degree `degree` on `gens` slots.
pub fn form<R: Rng>(rng: &mut R, gens: usize, degree: usize, terms: usize) -> Form {
    let mut f = Form::zero(gens, degree);
    if degree > gens {
        return f;
    }
    for _ in 0..terms {
        let mut slots: Vec<usize> = (0..gens).collect();
        for i in 0..degree {
            let j = rng.gen_range(i..gens);
            slots.swap(i, j);
        }
        let (sign, m) = Monomial::from_slots(&slots[..degree]).expect("distinct slots");
        let c = complex(rng, 2, 2);
        f = f.add(&Form::monomial(gens, m, if sign < 0 { -c } else { c }));
    }
    f
}

/// A random form of pure bidegree `(p, q)` on `n` complex dimensions.
pub fn pure_form<R: Rng>(rng: &mut R, n: usize, p: usize, qd: usize, terms: usize) -> Form {
    let mut f = Form::zero(2 * n, p + qd);
    if p > n || qd > n {
        return f;
    }
    let pick = |rng: &mut R, k: usize, parity: usize| -> Vec<usize> {
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.gen_range(i..n);
            idx.swap(i, j);
        }
        idx[..k].iter().map(|j| 2 * j + parity).collect()
    };
    for _ in 0..terms {
        let mut slots = pick(rng, p, 0);
        slots.extend(pick(rng, qd, 1));
        let (sign, m) = Monomial::from_slots(&slots).expect("distinct slots");
        let c = complex(rng, 2, 2);
        f = f.add(&Form::monomial(2 * n, m, if sign < 0 { -c } else { c }));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::is_positive_metric;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampled_metrics_are_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            for _ in 0..20 {
                assert!(is_positive_metric(&positive_metric(&mut rng, n)));
            }
        }
    }

    #[test]
    fn pure_forms_have_the_requested_bidegree() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = pure_form(&mut rng, 3, 2, 1, 5);
        assert!(f.terms().all(|(m, _)| m.bidegree() == (2, 1)));
    }
}
