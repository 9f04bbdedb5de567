//! Weighted parabolic KL polynomials and the KL basis element C_y.
//!
//!     cargo run --example kl_polynomials -- I2(6) 1,3 s1

use wkl::coxeter::{CoxeterSystem, Model};
use wkl::klcore::KlContext;

fn main() -> wkl::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let model = Model::parse(args.first().map_or("I2(6)", String::as_str))?;
    let weights: Vec<i64> = match args.get(1) {
        Some(w) => w.split(',').map(|t| t.trim().parse().expect("integer weight")).collect(),
        None => vec![1, 3],
    };
    let sys = CoxeterSystem::new(model, &weights)?;
    let j = sys.parse_subset(args.get(2).map_or("", String::as_str))?;
    let ctx = KlContext::new(&sys, j);

    let y = *ctx.dj().last().expect("D_J is nonempty");
    println!("P_{{x,{}}}:", sys.format_element(y));
    for &x in ctx.dj() {
        if ctx.leq(x, y) {
            println!("  {:<20} {}", sys.format_element(x), ctx.p_poly(x, y)?);
        }
    }
    println!("C_{} = {}", sys.format_element(y), ctx.c_basis(y)?.to_json(&sys, "m"));
    Ok(())
}
