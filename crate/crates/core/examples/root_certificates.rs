//! Sturm-sequence certificates that the Lah polynomials have real, distinct,
//! non-positive roots.

use lah::exact_core::lah_polynomial;
use lah::factorial_basis::ExactPolynomial;
use lah::sequence_props::{certify_polynomial, root_certificate};

pub fn main() {
    for m in 1..=8 {
        let p = lah_polynomial(m).unwrap();
        let c = root_certificate(m).unwrap();
        println!(
            "m = {m}: coeffs {:?}  zero {} negative {} real-distinct-nonpositive {}",
            p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            c.root_count_zero,
            c.root_count_negative,
            c.real_distinct_nonpositive()
        );
    }
    let no_real_roots = ExactPolynomial::from_integers([1, 0, 1]);
    println!("x^2 + 1: {:?}", certify_polynomial(2, &no_real_roots).unwrap());
}
