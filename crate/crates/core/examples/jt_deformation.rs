//! The t-deformation: SKT only at t = 1, negative first scalar for t < 1,
//! and no balanced metric anywhere on (0, 1].

use lie_hermitian::catalog::{jt, jt_skt_scalar};
use lie_hermitian::metric::{gamma_scalar, MetricCoefficients};
use lie_hermitian::scalar::{format_q, q};
use lie_hermitian::search::balanced_feasibility_jt;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = MetricCoefficients::standard(3);
    for t in [q(1, 4), q(1, 2), q(3, 4), q(1, 1)] {
        let se = jt(&t)?;
        let b = balanced_feasibility_jt(&t)?;
        println!(
            "t = {:<4} skt scalar {:>5}  gamma1(standard) {:>6}  balanced feasible: {}",
            format_q(&t),
            format_q(&jt_skt_scalar(&t)),
            format_q(&gamma_scalar(&x, 1, &se)?),
            b.feasible
        );
        println!("         {}", b.certificate);
    }
    Ok(())
}
