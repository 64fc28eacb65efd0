//! Run a few claims of the reproduction suite with a small draw count.

use lie_hermitian::reproduce::{run_verify_paper, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for id in ["nilpotent-ddbar", "circle-bundle", "top-contraction", "top-contraction-derived"] {
        let opts = VerifyOptions { only: Some(id.into()), draws: 20, ..VerifyOptions::default() };
        print!("{}", run_verify_paper(&opts)?.to_text());
    }
    Ok(())
}
