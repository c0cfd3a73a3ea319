//! Lah columns from the exponential generating function `(x/(1-x))^k / k!`.

use lah::exact_core::factorial;
use lah::factorial_basis::{alternating_generating_series, lah_generating_series, rational_from_uint};

pub fn main() {
    let k = 3;
    let order = 10;
    let plain = lah_generating_series(k, order).unwrap();
    let alt = alternating_generating_series(k, order).unwrap();
    println!("n  n![x^n] plain  n![x^n] alternating");
    for n in k..=order {
        let nf = rational_from_uint(factorial(n));
        println!("{n:<2} {:<14} {}", plain.coeff(n) * &nf, alt.coeff(n) * &nf);
    }
}
