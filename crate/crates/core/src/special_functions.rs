//! Power-series evaluation of `I₁`, `₁F₂(1; k+1, k+2; t)` and the
//! exponential remainder `H_k`.
//!
//! Both series have positive terms with a ratio `term_{n+1}/term_n` that is
//! non-increasing in `n` for non-negative arguments. Once that ratio `r`
//! drops below 1/2, everything after the next term is bounded by
//! `next / (1 - r)`, which is the reported `tail_bound`. Partial sums are
//! accumulated with compensated summation.

use thiserror::Error;

use crate::summation::NeumaierSum;

pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Ratio below which the geometric tail bound is trusted.
const RATIO_GATE: f64 = 0.5;

/// A truncated series sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: usize,
    /// Bound on the absolute truncation error.
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("argument must be finite and non-negative (got {0})")]
    Argument(f64),
    #[error("tolerance must be positive (got {0})")]
    Tolerance(f64),
    #[error("H_k is undefined at z = 0")]
    ZeroArgument,
    #[error("tolerance unreachable within {max_terms} terms (partial sum {partial:?})")]
    ToleranceUnreachable { max_terms: usize, partial: SeriesValue },
}

/// Stopping rule for a series sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// Stop once `tail_bound <= tol`.
    Absolute(f64),
    /// Stop once `tail_bound <= tol * partial_sum`.
    Relative(f64),
}

impl Tolerance {
    fn value(self) -> f64 {
        match self {
            Tolerance::Absolute(t) | Tolerance::Relative(t) => t,
        }
    }

    fn met(self, tail: f64, partial: f64) -> bool {
        match self {
            Tolerance::Absolute(t) => tail <= t,
            Tolerance::Relative(t) => tail <= t * partial.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub tolerance: Tolerance,
    pub max_terms: usize,
}

impl SeriesOptions {
    pub fn absolute(tol: f64) -> Self {
        Self { tolerance: Tolerance::Absolute(tol), max_terms: DEFAULT_MAX_TERMS }
    }

    pub fn relative(tol: f64) -> Self {
        Self { tolerance: Tolerance::Relative(tol), max_terms: DEFAULT_MAX_TERMS }
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }
}

/// Sums `first + first*ratio(0) + first*ratio(0)*ratio(1) + ...` where
/// `ratio(n) = term_{n+1} / term_n` is non-negative and non-increasing.
fn sum_ratio_series(
    first: f64,
    ratio: impl Fn(usize) -> f64,
    opts: &SeriesOptions,
) -> Result<SeriesValue, SeriesError> {
    if !(opts.tolerance.value() > 0.0) {
        return Err(SeriesError::Tolerance(opts.tolerance.value()));
    }
    if first == 0.0 {
        return Ok(SeriesValue { value: 0.0, terms_used: 1, tail_bound: 0.0 });
    }
    let mut acc = NeumaierSum::new();
    let mut term = first;
    let mut tail = f64::INFINITY;
    for n in 0..opts.max_terms {
        acc += term;
        let next = term * ratio(n);
        let r = ratio(n + 1);
        tail = if r < RATIO_GATE { next / (1.0 - r) } else { f64::INFINITY };
        if opts.tolerance.met(tail, acc.value()) {
            return Ok(SeriesValue { value: acc.value(), terms_used: n + 1, tail_bound: tail });
        }
        term = next;
    }
    Err(SeriesError::ToleranceUnreachable {
        max_terms: opts.max_terms,
        partial: SeriesValue { value: acc.value(), terms_used: opts.max_terms, tail_bound: tail },
    })
}

fn check_argument(x: f64) -> Result<(), SeriesError> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(SeriesError::Argument(x))
    }
}

/// `I₁(z) = Σ_{k≥0} (z/2)^{2k+1} / (k! (k+1)!)` for `z >= 0`, to absolute
/// tolerance `tol`.
pub fn bessel_i1(z: f64, tol: f64) -> Result<SeriesValue, SeriesError> {
    bessel_i1_with(z, &SeriesOptions::absolute(tol))
}

pub fn bessel_i1_with(z: f64, opts: &SeriesOptions) -> Result<SeriesValue, SeriesError> {
    check_argument(z)?;
    let q = 0.25 * z * z;
    // term_{k+1}/term_k = (z/2)^2 / ((k+1)(k+2))
    sum_ratio_series(0.5 * z, |k| q / ((k as f64 + 1.0) * (k as f64 + 2.0)), opts)
}

/// `₁F₂(1; k+1, k+2; t) = Σ_{n≥0} t^n / ((k+1)_n (k+2)_n)` for `t >= 0`.
///
/// The Pochhammer ratio `(k+1+n)(k+2+n)` between consecutive terms is
/// formed as an exact integer before conversion.
pub fn hypergeom_1f2(k: usize, t: f64, tol: f64) -> Result<SeriesValue, SeriesError> {
    hypergeom_1f2_with(k, t, &SeriesOptions::absolute(tol))
}

pub fn hypergeom_1f2_with(k: usize, t: f64, opts: &SeriesOptions) -> Result<SeriesValue, SeriesError> {
    check_argument(t)?;
    let k = k as u128;
    sum_ratio_series(
        1.0,
        |n| {
            let n = n as u128;
            t / ((k + 1 + n) * (k + 2 + n)) as f64
        },
        opts,
    )
}

/// `H_k(z) = e^{1/z} - Σ_{m=0}^{k} z^{-m} / m!`.
///
/// For `z > 0` the remainder is summed directly as the positive tail
/// `Σ_{m>k} z^{-m}/m!`, which keeps full relative accuracy when `H_k` is
/// tiny. For `z < 0` it is formed by subtraction.
pub fn h_k_closed_form(k: usize, z: f64) -> Result<f64, SeriesError> {
    if z == 0.0 {
        return Err(SeriesError::ZeroArgument);
    }
    if !z.is_finite() {
        return Err(SeriesError::Argument(z));
    }
    let w = 1.0 / z;
    if z > 0.0 {
        let mut first = 1.0;
        for m in 1..=k + 1 {
            first *= w / m as f64;
        }
        // term_{j+1}/term_j = w / (k + 2 + j)
        let s = sum_ratio_series(first, |j| w / (k + 2 + j) as f64, &SeriesOptions::relative(1e-17))?;
        Ok(s.value)
    } else {
        let mut partial = NeumaierSum::new();
        let mut term = 1.0;
        for m in 0..=k {
            if m > 0 {
                term *= w / m as f64;
            }
            partial += term;
        }
        Ok(w.exp() - partial.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    // I₁(2) = Σ 1/(k!(k+1)!), reference from an independent high-precision
    // evaluation.
    const I1_OF_2: f64 = 1.590_636_854_637_329;

    #[test]
    fn bessel_at_zero() {
        let v = bessel_i1(0.0, 1e-14).unwrap();
        assert_eq!(v.value, 0.0);
        assert_eq!(v.tail_bound, 0.0);
        assert!(v.terms_used >= 1);
    }

    #[test]
    fn bessel_at_two_is_self_consistent() {
        let v = bessel_i1(2.0, 1e-15).unwrap();
        assert!(v.tail_bound < 1e-14);
        // re-sum with 10 extra terms
        let mut extra = NeumaierSum::new();
        let mut term = 1.0;
        for k in 0..(v.terms_used + 10) {
            if k > 0 {
                term /= (k * (k + 1)) as f64;
            }
            extra += term;
        }
        assert!((v.value - extra.value()).abs() < 1e-13);
        assert!((v.value - I1_OF_2).abs() < 1e-14);
    }

    #[test]
    fn bessel_at_one_exceeds_first_term() {
        let v = bessel_i1(1.0, 1e-15).unwrap();
        assert!(v.value > 0.5);
        assert!((v.value - 0.565_159_103_992_485).abs() < 1e-14);
    }

    #[test]
    fn bessel_rejects_bad_input() {
        assert_eq!(bessel_i1(-1.0, 1e-10), Err(SeriesError::Argument(-1.0)));
        assert!(matches!(bessel_i1(f64::NAN, 1e-10), Err(SeriesError::Argument(_))));
        assert_eq!(bessel_i1(1.0, 0.0), Err(SeriesError::Tolerance(0.0)));
    }

    #[test]
    fn bessel_tolerance_unreachable_carries_partial() {
        let err = bessel_i1_with(10.0, &SeriesOptions::absolute(1e-12).with_max_terms(3)).unwrap_err();
        match err {
            SeriesError::ToleranceUnreachable { max_terms, partial } => {
                assert_eq!(max_terms, 3);
                // 5 + 125/2 + 3125/12
                assert!((partial.value - (5.0 + 62.5 + 3125.0 / 12.0)).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hypergeom_examples() {
        for k in 0..5 {
            assert_eq!(hypergeom_1f2(k, 0.0, 1e-15).unwrap().value, 1.0);
        }
        // ₁F₂(1;1,2;1) = Σ 1/(n!(n+1)!) = I₁(2)
        let f0 = hypergeom_1f2(0, 1.0, 1e-16).unwrap();
        assert!((f0.value - I1_OF_2).abs() < 1e-14);
        let f1 = hypergeom_1f2(1, 1.0, 1e-16).unwrap();
        assert!(f1.value > 0.0 && f1.value < f0.value);
    }

    #[test]
    fn bessel_matches_hypergeometric_reindexing() {
        for z in [0.5, 1.0, 2.0, 4.0] {
            let i1 = bessel_i1(z, 1e-16).unwrap().value;
            let f = hypergeom_1f2(0, z * z / 4.0, 1e-16).unwrap().value;
            assert!((i1 - 0.5 * z * f).abs() <= 1e-12 * i1.max(1.0), "z = {z}");
        }
    }

    #[test]
    fn partial_sums_increase() {
        let mut last = 0.0;
        for terms in 1..20 {
            let v = match bessel_i1_with(3.0, &SeriesOptions::absolute(1e-300).with_max_terms(terms)) {
                Ok(v) => v.value,
                Err(SeriesError::ToleranceUnreachable { partial, .. }) => partial.value,
                Err(e) => panic!("{e}"),
            };
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn h_k_examples() {
        assert!((h_k_closed_form(0, 1.0).unwrap() - (E - 1.0)).abs() < 1e-15);
        assert!((h_k_closed_form(1, 1.0).unwrap() - (E - 2.0)).abs() < 1e-15);
        let expected = 0.5f64.exp() - 1.0 - 0.5 - 0.125;
        assert!((h_k_closed_form(2, 2.0).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.023_721).abs() < 1e-6);
        assert_eq!(h_k_closed_form(0, 0.0), Err(SeriesError::ZeroArgument));
        let neg = h_k_closed_form(1, -2.0).unwrap();
        assert!((neg - ((-0.5f64).exp() - 1.0 + 0.5)).abs() < 1e-15);
    }

    #[test]
    fn h_k_shrinks_with_k() {
        let mut last = f64::INFINITY;
        for k in 0..=10 {
            let h = h_k_closed_form(k, 2.0).unwrap();
            assert!(h > 0.0 && h < last, "k = {k}");
            last = h;
        }
    }
}
