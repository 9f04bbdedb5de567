//! Run every self-check suite over every parabolic subset of a few systems.

use wkl::coxeter::{CoxeterSystem, GenSubset, Model};
use wkl::klcore::KlContext;
use wkl::verify::{verify, Suite, VerifyOptions};

fn main() -> wkl::Result<()> {
    let catalog: [(&str, &[i64]); 4] = [("A2", &[1, 1]), ("B2", &[1, 2]), ("I2(5)", &[1, 1]), ("I2(6)", &[1, 3])];
    let mut all_ok = true;
    for (name, weights) in catalog {
        let sys = CoxeterSystem::new(Model::parse(name)?, weights)?;
        let opts = VerifyOptions::for_system(&sys);
        for j in GenSubset::all(sys.rank()) {
            let ctx = KlContext::new(&sys, j);
            let report = verify(&ctx, &Suite::ALL, &opts);
            all_ok &= report.passed();
            let status = if report.passed() { "PASS" } else { "FAIL" };
            println!("{status} {} J={}", sys.name(), sys.format_subset(j));
            if let Some(f) = report.first_failure() {
                println!("  {f}");
            }
        }
    }
    std::process::exit(if all_ok { 0 } else { 1 });
}
