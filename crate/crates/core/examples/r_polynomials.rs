//! R and R-tilde polynomials for every pair of a parabolic quotient.

use wkl::coxeter::{CoxeterSystem, Model};
use wkl::klcore::{KlContext, PolyKind};

fn main() -> wkl::Result<()> {
    let sys = CoxeterSystem::new(Model::parse("B2")?, &[1, 2])?;
    let j = sys.parse_subset("s1")?;
    let ctx = KlContext::new(&sys, j);
    for kind in [PolyKind::R, PolyKind::RTilde] {
        println!("{kind}:");
        print!("{}", ctx.table(kind)?.to_text(&sys));
    }
    let report = ctx.verify_r_identities();
    println!("identities checked: {}, failures: {}", report.checked, report.failures);
    Ok(())
}
