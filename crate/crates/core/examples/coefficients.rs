//! Individual coefficients of P and Q from the closed coefficient formulas.

use wkl::chains::ChainEngine;
use wkl::coxeter::{CoxeterSystem, Model};
use wkl::klcore::KlContext;
use wkl::laurent::HalfExp;

fn main() -> wkl::Result<()> {
    let sys = CoxeterSystem::new(Model::parse("B3")?, &[2, 1, 1])?;
    let ctx = KlContext::new(&sys, sys.parse_subset("s3")?);
    let eng = ChainEngine::new(&ctx);
    let y = *ctx.dj().last().unwrap();
    for &x in ctx.dj().iter().take(6) {
        let p = ctx.p_poly(x, y)?;
        let q = ctx.q_poly(x, y)?;
        let top = ctx.weight_gap(x, y);
        let mut pc = Vec::new();
        let mut qc = Vec::new();
        for g in 0..top.max(1) {
            let gamma = HalfExp(g);
            let c = eng.coeff_p(x, y, gamma)?;
            assert_eq!(c, p.coeff(gamma));
            pc.push(c.to_string());
            let c = eng.coeff_q(x, y, gamma)?;
            assert_eq!(c, q.coeff(gamma));
            qc.push(c.to_string());
        }
        println!("{:<16} P coeffs [{}]  Q coeffs [{}]", sys.format_element(x), pc.join(" "), qc.join(" "));
    }
    Ok(())
}
