//! Rising factorials written in the falling-factorial basis.

use lah::factorial_basis::{from_falling_basis, rising_factorial, rising_in_falling_coefficients};

pub fn main() {
    for n in 1..=5 {
        let coeffs = rising_in_falling_coefficients(n).unwrap();
        let terms: Vec<String> = coeffs.iter().enumerate().skip(1).map(|(k, c)| format!("{c}<x>_{k}")).collect();
        println!("(x)_{n} = {}", terms.join(" + "));
        assert_eq!(from_falling_basis(&coeffs), rising_factorial(n));
    }
    println!("(x)_4 expanded: {}", rising_factorial(4));
}
