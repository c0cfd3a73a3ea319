//! The symbolic derivatives of `e^{±1/x}` against Richardson-extrapolated
//! central differences.

use lah::factorial_basis::{exp_reciprocal_derivative, ExpSign};

fn central(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

fn richardson(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let a = central(f, x, h);
    let b = central(f, x, h / 2.0);
    let c = central(f, x, h / 4.0);
    let ab = (4.0 * b - a) / 3.0;
    let bc = (4.0 * c - b) / 3.0;
    (16.0 * bc - ab) / 15.0
}

#[test]
fn derivative_matches_finite_differences() {
    let x = 2.0;
    for sign in [ExpSign::Plus, ExpSign::Minus] {
        for n in 1..=4 {
            let lower = exp_reciprocal_derivative(n - 1, sign);
            let exact = exp_reciprocal_derivative(n, sign).eval(x);
            let numeric = richardson(&|t| lower.eval(t), x, 0.05);
            let rel = (numeric - exact).abs() / exact.abs();
            assert!(rel < 1e-6, "n = {n}, {sign:?}: {numeric} vs {exact} (rel {rel:e})");
        }
    }
}

#[test]
fn zeroth_derivative_is_the_function() {
    for x in [0.5, 1.0, 3.0] {
        assert!((exp_reciprocal_derivative(0, ExpSign::Plus).eval(x) - (1.0 / x).exp()).abs() < 1e-15);
        assert!((exp_reciprocal_derivative(0, ExpSign::Minus).eval(x) - (-1.0 / x).exp()).abs() < 1e-15);
    }
}
