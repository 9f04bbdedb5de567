//! Enumerate a weighted Coxeter group and the minimal coset representatives
//! of a parabolic subgroup, with descent classes.
//!
//!     cargo run --example coxeter_groups -- B3 1,1,2 s1

use wkl::coxeter::{CoxeterSystem, Model};

fn main() -> wkl::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let model = Model::parse(args.first().map_or("B3", String::as_str))?;
    let weights: Vec<i64> = match args.get(1) {
        Some(w) => w.split(',').map(|t| t.trim().parse().expect("integer weight")).collect(),
        None => vec![1; model.rank()],
    };
    let sys = CoxeterSystem::new(model, &weights)?;
    let j = sys.parse_subset(args.get(2).map_or("s1", String::as_str))?;

    println!("{}: order {}, weights {:?}", sys.name(), sys.order(), sys.weights());
    println!("longest element {}", sys.format_element(sys.longest_element()));

    let dj = sys.min_coset_reps(j);
    println!("|D_J| = {} for J = {}", dj.len(), sys.format_subset(j));
    for y in dj {
        let classes: Vec<String> =
            sys.generators().map(|s| format!("{s}:{:?}", sys.classify(j, y, s).unwrap())).collect();
        println!("  {:<16} L={:<3} {}", sys.format_element(y), sys.weight_of(y), classes.join(" "));
    }
    Ok(())
}
