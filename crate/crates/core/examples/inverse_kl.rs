//! Inverse KL polynomials Q and their inversion identity with P.

use wkl::coxeter::{CoxeterSystem, Model};
use wkl::klcore::KlContext;
use wkl::laurent::LaurentPoly;

fn main() -> wkl::Result<()> {
    let sys = CoxeterSystem::new(Model::parse("B2")?, &[1, 2])?;
    let ctx = KlContext::new(&sys, sys.parse_subset("s1")?);
    let dj = ctx.dj();
    for &x in dj {
        for &z in dj {
            if !ctx.leq(x, z) {
                continue;
            }
            println!("Q_{{{},{}}} = {}", sys.format_element(x), sys.format_element(z), ctx.q_poly(x, z)?);
            // sum_y sign(x,y) Q_{x,y} P_{y,z} = delta_{x,z}
            let mut total = LaurentPoly::zero();
            for &y in ctx.interval(x, z).iter() {
                total += (ctx.q_poly(x, y)? * ctx.p_poly(y, z)?).signed(ctx.sign(x, y));
            }
            assert_eq!(total.is_one(), x == z);
        }
    }
    Ok(())
}
