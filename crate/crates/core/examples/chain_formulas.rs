//! KL polynomials as sums over Bruhat chains, checked against the recursion.

use wkl::chains::ChainEngine;
use wkl::coxeter::{CoxeterSystem, Model};
use wkl::klcore::KlContext;

fn main() -> wkl::Result<()> {
    let sys = CoxeterSystem::equal_weights(Model::parse("A3")?)?;
    let ctx = KlContext::new(&sys, sys.parse_subset("")?);
    let eng = ChainEngine::new(&ctx);
    let x = sys.parse_element("s2")?;
    let y = sys.parse_element("s2.s1.s3.s2")?;

    for phi in eng.enum_chains(x, y, usize::MAX)? {
        println!("{:<40} {}", phi.format(&sys).join(" < "), eng.script_r(&phi)?);
    }
    let by_chains = eng.p_via_chains(x, y)?;
    let by_multichains = eng.p_via_multichains(x, y)?;
    let recursive = ctx.p_poly(x, y)?;
    println!("P by chains      {by_chains}");
    println!("P by multichains {by_multichains}");
    println!("P recursive      {recursive}");
    assert_eq!(by_chains, recursive);
    assert_eq!(by_multichains, recursive);
    Ok(())
}
