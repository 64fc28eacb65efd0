use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lie_hermitian::catalog::{nilpotent6, Nilpotent6Params};
use lie_hermitian::form::{Form, Monomial};
use lie_hermitian::lefschetz::{lefschetz_commutation_check, Lefschetz};
use lie_hermitian::metric::{classify_metric, gamma_ratio, gamma_scalar, top_coefficient, volume_coefficient};
use lie_hermitian::random;
use lie_hermitian::sasakian::{bundle_extend, heisenberg5};
use lie_hermitian::scalar::{q, sign};
use lie_hermitian::search::{certificate, find_metric, FamilyContext, SearchStatus, Target, TargetKind};
use lie_hermitian::structure::{real_two_form, StructureEquations};

fn nilpotent(rng: &mut ChaCha8Rng) -> StructureEquations {
    nilpotent6(&Nilpotent6Params {
        epsilon: rng.gen_range(0..=1),
        rho: rng.gen_range(0..=1),
        a: random::complex(rng, 2, 3),
        b: random::complex(rng, 2, 3),
        c: random::complex(rng, 2, 3),
        d: random::complex(rng, 2, 3),
    })
    .unwrap()
}

fn nilpotent8(rng: &mut ChaCha8Rng) -> StructureEquations {
    let mut d4 = Form::zero(8, 2);
    for a in 0..6 {
        for b in a + 1..6 {
            if a % 2 == 1 && b % 2 == 1 {
                continue;
            }
            if rng.gen_bool(0.4) {
                d4.add_term(Monomial((1 << a) | (1 << b)), random::complex(rng, 1, 2));
            }
        }
    }
    StructureEquations::new(4, vec![Form::zero(8, 2), Form::zero(8, 2), Form::zero(8, 2), d4]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma_is_exactly_real(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let se = nilpotent(&mut rng);
        let x = random::positive_metric(&mut rng, 3);
        let r = gamma_ratio(&x.fundamental_form(), 1, &se).unwrap();
        prop_assert!(r.im.is_zero());
    }

    #[test]
    fn volume_identity(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random::positive_metric(&mut rng, n);
        let vol = volume_coefficient(&x);
        prop_assert_eq!(top_coefficient(&x.fundamental_form().power(n)), vol);
    }

    #[test]
    fn gamma_scales_inversely(seed in any::<u64>(), num in 1i64..9, den in 1i64..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let se = nilpotent(&mut rng);
        let x = random::positive_metric(&mut rng, 3);
        let c = q(num, den);
        let g = gamma_scalar(&x, 1, &se).unwrap();
        let gc = gamma_scalar(&x.scaled(&c), 1, &se).unwrap();
        prop_assert_eq!(gc, g / c);
    }

    #[test]
    fn class_implications(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let se = nilpotent(&mut rng);
        let x = random::positive_metric(&mut rng, 3);
        let rep = classify_metric(&x, &se).unwrap();
        if rep.kahler {
            prop_assert!(rep.skt && rep.balanced && rep.astheno);
        }
        if rep.skt {
            prop_assert!(rep.kth_gauduchon_k(1));
        }
        for k in 1..3 {
            prop_assert_eq!(rep.kth_gauduchon_k(k), rep.gamma_k(k).is_zero());
        }
        prop_assert_eq!(rep.balanced, rep.lee_form.is_zero());
    }

    #[test]
    fn balanced_and_first_gauduchon_force_kahler(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let se = nilpotent(&mut rng);
        let out = find_metric(&se, &Target::new(TargetKind::Balanced), 30, seed).unwrap();
        if let Some(x) = out.witness {
            let rep = classify_metric(&x, &se).unwrap();
            prop_assert!(rep.balanced);
            if rep.kth_gauduchon_k(1) {
                prop_assert!(rep.kahler);
            }
        }
    }

    #[test]
    fn unimodular_duality(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let se = nilpotent8(&mut rng);
        prop_assert!(se.is_unimodular());
        let x = random::positive_metric(&mut rng, 4);
        prop_assert_eq!(gamma_scalar(&x, 1, &se).unwrap(), gamma_scalar(&x, 2, &se).unwrap());
    }

    #[test]
    fn commutation_residual_vanishes(seed in any::<u64>(), n in 1usize..=3, r in 0usize..=3, s in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lf = Lefschetz::new(&random::positive_metric(&mut rng, n)).unwrap();
        let p = rng.gen_range(0..=n);
        let qd = rng.gen_range(0..=n);
        let f = random::pure_form(&mut rng, n, p, qd, 2);
        prop_assert!(lefschetz_commutation_check(r, s, &f, &lf, n).is_zero());
    }

    #[test]
    fn bundle_criterion_sign_matches_gamma(a in -4i64..=4, b in -4i64..=4, c in -4i64..=4, d in -4i64..=4) {
        // Closed J-invariant curvature on the Heisenberg base.
        let f = real_two_form(5, &[
            (q(a, 2), 1, 2), (q(b, 2), 3, 4),
            (q(c, 2), 1, 3), (q(c, 2), 2, 4),
            (q(d, 2), 1, 4), (-q(d, 2), 2, 3),
        ]).unwrap();
        let ext = bundle_extend(&heisenberg5(f).unwrap()).unwrap();
        let g = ext.gamma().unwrap();
        prop_assert_eq!(ext.oriented_sign(), sign(&g));
        prop_assert_eq!(ext.criterion.is_zero(), g.is_zero());
    }

    #[test]
    fn search_is_deterministic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let se = nilpotent(&mut rng);
        let t = Target::new(TargetKind::GammaNegative(1));
        let a = find_metric(&se, &t, 20, seed).unwrap();
        let b = find_metric(&se, &t, 20, seed).unwrap();
        prop_assert_eq!(&a, &b);
        if let Some(x) = &a.witness {
            prop_assert!(gamma_scalar(x, 1, &se).unwrap().is_negative());
        }
    }

    #[test]
    fn certificates_are_respected(p in -4i64..=4, qv in -2i64..=2, seed in any::<u64>()) {
        let a = lie_hermitian::scalar::cx(q(p, 2), q(qv, 2));
        let se = lie_hermitian::catalog::family8(&a).unwrap();
        let ctx = FamilyContext::Family8(a);
        for kind in [TargetKind::Skt, TargetKind::Balanced, TargetKind::GauduchonZero(1)] {
            let out = find_metric(&se, &Target::with_family(kind, ctx.clone()), 15, seed).unwrap();
            let cert = certificate(&se, kind, &ctx);
            prop_assert_eq!(cert.is_some(), out.status == SearchStatus::InfeasibleCertified);
            if cert.is_some() {
                prop_assert!(out.witness.is_none());
            }
        }
    }
}

#[test]
fn sign_of_gamma_follows_the_nilpotent_scalar() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let p = Nilpotent6Params {
            epsilon: rng.gen_range(0..=1),
            rho: rng.gen_range(0..=1),
            a: random::complex(&mut rng, 1, 2),
            b: random::complex(&mut rng, 1, 2),
            c: random::complex(&mut rng, 1, 2),
            d: random::complex(&mut rng, 1, 2),
        };
        let se = nilpotent6(&p).unwrap();
        let x = random::positive_metric(&mut rng, 3);
        let k = lie_hermitian::catalog::nilpotent6_skt_scalar(&p);
        assert_eq!(sign(&gamma_scalar(&x, 1, &se).unwrap()), sign(&k));
    }
}

#[test]
fn standard_metric_on_abelian_is_kahler() {
    let se = StructureEquations::abelian(3);
    let rep = classify_metric(&lie_hermitian::metric::MetricCoefficients::standard(3), &se).unwrap();
    assert!(rep.kahler && rep.skt && rep.balanced && rep.astheno);
    assert!(rep.gamma.iter().all(Zero::is_zero));
}
