//! Forms on the Iwasawa structure: d, ∂, ∂̄ and the wedge product.

use lie_hermitian::dsl::{format_rhs, parse_structure_equations};
use lie_hermitian::form::{Form, Generator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let se = parse_structure_equations("n: 3\ndw3: w1^w2")?;
    let w3 = se.generator(Generator::holo(3));
    let w3bar = se.generator(Generator::anti(3));
    let f: Form = w3.wedge(&w3bar);

    println!("f        = {}", format_rhs(&f));
    println!("d f      = {}", format_rhs(&se.d(&f)));
    println!("del f    = {}", format_rhs(&se.partial(&f)));
    println!("delbar f = {}", format_rhs(&se.partial_bar(&f)));
    println!("d d f    = {}", format_rhs(&se.d(&se.d(&f))));
    println!("unimodular: {}", se.is_unimodular());
    Ok(())
}
