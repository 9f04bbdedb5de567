//! Laurent polynomials in the half-integral variable and the bar involution.

use wkl::laurent::{HalfExp, LaurentPoly};

fn main() {
    let v = LaurentPoly::mono(HalfExp(1), 1);
    let q = LaurentPoly::q_pow(1);
    let p = (q.clone() - LaurentPoly::one()) * (v.clone() + LaurentPoly::one());
    println!("p       = {p}");
    println!("bar(p)  = {}", p.bar());
    println!("deg p   = {:?}", p.deg().map(|d| d.to_string()));
    println!("p q^-2  = {}", p.shift_q(-2));
    println!("trunc_upper(p, 1)  = {}", p.trunc_upper(HalfExp(2)));
    println!("trunc_lower(p, 1)  = {}", p.trunc_lower(HalfExp(2)));
    println!("[q^{{1/2}}] p = {}", p.coeff(HalfExp(1)));
    assert_eq!(p.bar().bar(), p);
}
