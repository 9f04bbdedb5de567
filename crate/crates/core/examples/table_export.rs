//! Export a full polynomial table as CSV and JSON.

use wkl::coxeter::{CoxeterSystem, Model};
use wkl::klcore::{KlContext, PolyKind};

fn main() -> wkl::Result<()> {
    let sys = CoxeterSystem::equal_weights(Model::parse("A2")?)?;
    let ctx = KlContext::new(&sys, sys.parse_subset("s1")?);
    let table = ctx.table(PolyKind::R)?;
    print!("{}", table.to_csv(&sys));
    println!("{}", serde_json::to_string_pretty(&table.to_json(&sys)).unwrap());
    Ok(())
}
