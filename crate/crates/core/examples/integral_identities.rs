//! A few integral identities checked by quadrature with a certified tail.

use lah::integral_verify::{
    verify_derivative_representation, verify_exp_representation, verify_gamma_integral, verify_hk_representation,
    verify_lah_sum_representation, verify_recovery_chain, verify_total_sum_integral, IdentityReport,
};

fn show(r: IdentityReport) {
    println!(
        "{} {:<26} {:?}: lhs {:.15e}  rhs {:.15e} +- {:.1e}",
        if r.passed { "PASS" } else { "FAIL" },
        r.identity_id,
        r.parameters,
        r.lhs,
        r.rhs.value,
        r.rhs.error_estimate
    );
}

pub fn main() {
    let tol = 1e-8;
    show(verify_exp_representation(2.0, tol).unwrap());
    show(verify_hk_representation(1, 2.0, tol).unwrap());
    show(verify_derivative_representation(3, 1.0, tol).unwrap());
    show(verify_lah_sum_representation(4, 0.5, tol).unwrap());
    show(verify_total_sum_integral(5, tol).unwrap());
    show(verify_gamma_integral(6, tol).unwrap());
    show(verify_recovery_chain(3, 3, 1.0, tol).unwrap());
}
