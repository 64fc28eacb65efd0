//! The 8-dimensional family dω⁴ = A ω^{11̄} - ω^{22̄} - ω^{33̄}: the closed
//! form for the Gauduchon locus against the engine.

use lie_hermitian::catalog::{family8, family8_balanced_condition, family8_gauduchon_scalar};
use lie_hermitian::metric::classify_metric;
use lie_hermitian::random::positive_metric;
use lie_hermitian::scalar::{cx, format_q, q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for p in [-1, 0, 1, 3] {
        let a = cx(q(p, 1), q(0, 1));
        let se = family8(&a)?;
        let x = positive_metric(&mut rng, 4);
        let rep = classify_metric(&x, &se)?;
        println!(
            "p = {p:>2}: E = {:>10}  gamma1 = {:>12}  skt {}  balanced {} (closed form {})",
            format_q(&family8_gauduchon_scalar(&a, &x)),
            format_q(rep.gamma_k(1)),
            rep.skt,
            rep.balanced,
            family8_balanced_condition(&a, &x)
        );
    }
    Ok(())
}
