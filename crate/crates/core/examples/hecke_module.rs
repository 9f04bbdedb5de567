//! The Hecke algebra action on a parabolic module and the bar involution on
//! its standard basis.

use wkl::coxeter::{CoxeterSystem, Model};
use wkl::heckemod::ParabolicModule;

fn main() -> wkl::Result<()> {
    let sys = CoxeterSystem::new(Model::parse("B2")?, &[1, 2])?;
    let j = sys.parse_subset("s2")?;
    let m = ParabolicModule::new(&sys, j);
    for &y in m.dj() {
        println!("bar(m_{}) = {}", sys.format_element(y), m.bar_gamma(y)?.to_json(&sys, "m"));
    }
    let y = sys.parse_element("s2.s1")?;
    for s in sys.generators() {
        println!("T_{s} m_{} = {}", sys.format_element(y), m.act_ts_basis(s, y)?.to_json(&sys, "m"));
    }
    Ok(())
}
