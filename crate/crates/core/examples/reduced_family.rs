//! Walk the isomorphism table of the reduced nilpotent family and ask the
//! search for a metric with negative first Gauduchon scalar on each case.

use lie_hermitian::catalog::{classify_reduced6, reduced6};
use lie_hermitian::reproduce::reduced_case_points;
use lie_hermitian::scalar::format_q;
use lie_hermitian::search::{find_metric, reduced6_feasibility, FamilyContext, Target, TargetKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (case, p, _, _) in reduced_case_points() {
        let (label, got) = classify_reduced6(&p);
        let feas = reduced6_feasibility(&p);
        let se = reduced6(&p)?;
        let target = Target::with_family(TargetKind::GammaNegative(1), FamilyContext::Reduced6(p.clone()));
        let out = find_metric(&se, &target, 200, 1)?;
        println!(
            "{case} -> {got} {label:<3} K = {:>4}  search: {}",
            format_q(&feas.skt_scalar),
            out.status
        );
    }
    Ok(())
}
