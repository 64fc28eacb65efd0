//! Witness search with and without family context.

use lie_hermitian::catalog::{iwasawa, jt};
use lie_hermitian::scalar::q;
use lie_hermitian::search::{find_metric, FamilyContext, Target, TargetKind, DEFAULT_SEED};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let runs = [
        ("iwasawa", iwasawa(), Target::new(TargetKind::Balanced)),
        ("iwasawa", iwasawa(), Target::new(TargetKind::Skt)),
        ("jt(1)", jt(&q(1, 1))?, Target::new(TargetKind::Skt)),
        ("jt(1/2)", jt(&q(1, 2))?, Target::new(TargetKind::GammaNegative(1))),
        ("jt(1/2)", jt(&q(1, 2))?, Target::with_family(TargetKind::Balanced, FamilyContext::Jt(q(1, 2)))),
    ];
    for (name, se, target) in runs {
        let out = find_metric(&se, &target, 500, DEFAULT_SEED)?;
        let why = out.certificate.as_ref().map_or(String::new(), |c| format!(" [{}]", c.name));
        println!("{name:<8} {:<10} {} after {} samples{why}", target.kind.to_string(), out.status, out.samples_used);
    }
    Ok(())
}
