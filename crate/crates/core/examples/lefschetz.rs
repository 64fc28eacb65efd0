//! L and its adjoint on a random metric: the commutation residual and the
//! top contraction constant.

use lie_hermitian::catalog::family8;
use lie_hermitian::lefschetz::{lefschetz_commutation_check, top_contraction, Lefschetz};
use lie_hermitian::random::{positive_metric, pure_form};
use lie_hermitian::scalar::{cxi, format_cx, format_q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let x = positive_metric(&mut rng, 3);
    let lf = Lefschetz::new(&x)?;
    let f = pure_form(&mut rng, 3, 1, 1, 3);
    for (r, s) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        println!("r = {r}, s = {s}: residual zero = {}", lefschetz_commutation_check(r, s, &f, &lf, 3).is_zero());
    }

    let se = family8(&cxi(1, 0))?;
    let t = top_contraction(&positive_metric(&mut rng, 4), &se)?;
    println!("L*^4 side / L*^3 side = {}", t.ratio().map_or("-".into(), |r| format_cx(&r)));
    println!("4^(n-3)(n!/3!)(n-3)!  = {}", format_q(&t.derived_constant));
    println!("4^n(n!/3!)(n-3)!      = {}", format_q(&t.stated_constant));
    Ok(())
}
