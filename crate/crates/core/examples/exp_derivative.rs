//! Derivatives of `e^{1/x}` and `e^{-1/x}` by symbolic differentiation,
//! compared with the Lah-number formula.

use lah::factorial_basis::{exp_reciprocal_derivative, ExpSign};

pub fn main() {
    for sign in [ExpSign::Plus, ExpSign::Minus] {
        for n in 1..=4 {
            let d = exp_reciprocal_derivative(n, sign);
            let terms: Vec<String> = d.coeffs.iter().map(|(j, c)| format!("{c} x^-{j}")).collect();
            println!(
                "d^{n}/dx^{n} e^({}1/x) = e^({}1/x) [{}]   at x = 2: {:.12}",
                if sign == ExpSign::Plus { "" } else { "-" },
                if sign == ExpSign::Plus { "" } else { "-" },
                terms.join(" + "),
                d.eval(2.0)
            );
            assert!(d.matches_lah_formula().unwrap());
        }
    }
}
