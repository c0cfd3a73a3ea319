//! `I₁`, `₁F₂(1; k+1, k+2; t)` and the exponential remainder `H_k`, with
//! their truncation bounds.

use lah::special_functions::{bessel_i1, h_k_closed_form, hypergeom_1f2};

pub fn main() {
    for z in [0.5, 1.0, 2.0, 10.0] {
        let v = bessel_i1(z, 1e-15).unwrap();
        println!("I1({z}) = {:.16}  ({} terms, tail <= {:.1e})", v.value, v.terms_used, v.tail_bound);
    }
    for k in 0..=3 {
        let f = hypergeom_1f2(k, 1.0, 1e-15).unwrap();
        println!("1F2(1; {}, {}; 1) = {:.16}", k + 1, k + 2, f.value);
    }
    for k in 0..=3 {
        println!("H_{k}(2) = {:.16e}", h_k_closed_form(k, 2.0).unwrap());
    }
}
