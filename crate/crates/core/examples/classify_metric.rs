//! Metric classes and Gauduchon scalars of a diagonal metric.

use lie_hermitian::dsl::parse_structure_equations;
use lie_hermitian::metric::{classify_metric, MetricCoefficients};
use lie_hermitian::scalar::{format_q, q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let se = parse_structure_equations("n: 3\ndw3: w1^w2 + w1^~w1 + w1^~w2 + 2*w2^~w2")?;
    let x = MetricCoefficients::diagonal(&[q(1, 1), q(2, 1), q(1, 2)]);
    let rep = classify_metric(&x, &se)?;
    for k in 1..rep.n {
        println!("gamma{k} = {}", format_q(rep.gamma_k(k)));
    }
    println!("kahler {} skt {} astheno {} balanced {}", rep.kahler, rep.skt, rep.astheno, rep.balanced);
    println!("{}", serde_json::to_string(&rep.to_json())?);
    Ok(())
}
