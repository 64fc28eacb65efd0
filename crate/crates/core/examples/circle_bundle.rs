//! Circle bundle over the 5-dimensional solvable example and over the
//! Heisenberg algebra with trivial curvature.

use lie_hermitian::dsl::print_structure_equations;
use lie_hermitian::form::Form;
use lie_hermitian::sasakian::{bundle_extend, format_real_form, heisenberg5, solvable5};
use lie_hermitian::scalar::format_q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, c) in [("solvable5", solvable5()), ("heisenberg5, F = 0", heisenberg5(Form::zero(5, 2))?)] {
        let ext = bundle_extend(&c)?;
        println!("== {name}");
        print!("{}", print_structure_equations(&ext.frame.se));
        println!("criterion      {}", format_real_form(&ext.criterion));
        println!("oriented sign  {}", ext.oriented_sign());
        println!("gamma1         {}", format_q(&ext.gamma()?));
    }
    Ok(())
}
