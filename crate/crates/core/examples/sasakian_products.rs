//! Products of two Sasakian factors: the quadratic condition, the C(n, s)
//! coefficients and the admissible (a, b).

use lie_hermitian::sasakian::{coefficient_table, product_report, solve_admissible, ProductParams};
use lie_hermitian::scalar::{format_q, q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = (q(-1, 1), q(1, 1));
    for (n1, n2) in [(1, 1), (1, 2), (2, 2), (3, 1)] {
        let rep = product_report(&ProductParams::new(n1, n2, a.clone(), b.clone(), q(1, 1))?)?;
        let c: Vec<String> = if rep.n > 3 {
            coefficient_table(rep.n, &a, &b)?.iter().map(format_q).collect()
        } else {
            vec![]
        };
        println!(
            "({n1},{n2}) n = {}  gamma = {:>6}  first Gauduchon {}  C = [{}]",
            rep.n,
            format_q(&rep.gamma),
            rep.first_gauduchon,
            c.join(", ")
        );
        if rep.n > 3 {
            println!("        admissible: {}", solve_admissible(n1, n2)?.describe());
        }
    }
    Ok(())
}
