//! Exact polynomial and truncated power-series algebra over the rationals.
//!
//! Houses the rising and falling factorial bases, the exponential generating
//! series of a Lah column, and a symbolic recurrence for the derivatives of
//! `e^{±1/x}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact_core::{factorial, lah, LahError};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("series order {order} is below the leading power {k}")]
    OrderBelowLeadingPower { k: usize, order: usize },
    #[error("series division by a divisor with zero constant term")]
    SingularDivisor,
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error(transparent)]
    Lah(#[from] LahError),
}

pub fn rational(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rational_from_uint(v: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Dense univariate polynomial with exact rational coefficients.
///
/// Trailing zeros are stripped after every operation, so derived
/// `PartialEq` is structural equality. The zero polynomial has no
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<Rational>,
}

impl ExactPolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(rational).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`
    pub fn linear_root(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rational(i as i64)).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// Euclidean division over the rationals: `self = q * divisor + r` with
    /// `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), BasisError> {
        let dd = divisor.degree().ok_or(BasisError::DivisionByZero)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * d;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Multiplies by the positive rational that makes every coefficient an
    /// integer with gcd 1. The sign of each coefficient is preserved.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        Self::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Result<Self, BasisError> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(match a.leading().cloned() {
            Some(l) => a.scale(&(Rational::one() / l)),
            None => a,
        })
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPolynomial::new(out)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `(x)_n = x(x+1)...(x+n-1)`, with `(x)_0 = 1`.
pub fn rising_factorial(n: usize) -> ExactPolynomial {
    (0..n).fold(ExactPolynomial::one(), |acc, i| &acc * &ExactPolynomial::linear_root(rational(-(i as i64))))
}

/// `<x>_n = x(x-1)...(x-n+1)`, with `<x>_0 = 1`.
pub fn falling_factorial(n: usize) -> ExactPolynomial {
    (0..n).fold(ExactPolynomial::one(), |acc, i| &acc * &ExactPolynomial::linear_root(rational(i as i64)))
}

/// Writes `p` in the falling-factorial basis: returns `c` with
/// `p = Σ_k c[k] <x>_k`, `k = 0..=deg p`.
///
/// Since `p = c_0 + x(c_1 + (x-1)(c_2 + ...))`, `c_i` is the remainder of the
/// `i`-th synthetic division by `x - i`.
pub fn to_falling_basis(p: &ExactPolynomial) -> Vec<Rational> {
    let mut q = p.coeffs().to_vec();
    let mut out = Vec::with_capacity(q.len());
    for i in 0..q.len() {
        let node = rational(i as i64);
        let mut carry = Rational::zero();
        for c in q.iter_mut().rev() {
            let v = &*c + &carry * &node;
            *c = std::mem::replace(&mut carry, v);
        }
        out.push(carry);
        q.pop();
    }
    out
}

/// Inverse of [`to_falling_basis`].
pub fn from_falling_basis(coeffs: &[Rational]) -> ExactPolynomial {
    coeffs.iter().enumerate().fold(ExactPolynomial::zero(), |acc, (k, c)| &acc + &falling_factorial(k).scale(c))
}

/// Coefficients `[c_0, ..., c_n]` with `(x)_n = Σ_k c_k <x>_k`, so that
/// `c_k = L(n,k)` and `c_0 = 0`.
pub fn rising_in_falling_coefficients(n: usize) -> Result<Vec<Rational>, BasisError> {
    if n == 0 {
        return Err(LahError::Domain { n, k: 1 }.into());
    }
    Ok(to_falling_basis(&rising_factorial(n)))
}

/// Formal power series truncated after `x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn new(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![Rational::one()])
    }

    /// `x^power`, or zero when `power > order`.
    pub fn monomial(order: usize, power: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = Rational::one();
        }
        s
    }

    pub fn from_polynomial(order: usize, p: &ExactPolynomial) -> Self {
        Self::new(order, p.coeffs().iter().take(order + 1).cloned().collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, BasisError> {
        if self.order != rhs.order {
            return Err(BasisError::OrderMismatch(self.order, rhs.order));
        }
        let mut out = vec![Rational::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(self.order + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self::new(self.order, out))
    }

    /// `self / divisor` by the recursion
    /// `q_n = (a_n - Σ_{j=1}^{n} d_j q_{n-j}) / d_0`.
    pub fn try_div(&self, divisor: &Self) -> Result<Self, BasisError> {
        if self.order != divisor.order {
            return Err(BasisError::OrderMismatch(self.order, divisor.order));
        }
        let d0 = &divisor.coeffs[0];
        if d0.is_zero() {
            return Err(BasisError::SingularDivisor);
        }
        let mut q: Vec<Rational> = Vec::with_capacity(self.order + 1);
        for n in 0..=self.order {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                acc -= &divisor.coeffs[j] * &q[n - j];
            }
            q.push(acc / d0);
        }
        Ok(Self::new(self.order, q))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.order), |acc, _| acc.try_mul(self).expect("orders agree"))
    }
}

/// Truncation of `(1/k!) (x/(1-x))^k`. The coefficient of `x^n` is
/// `L(n,k)/n!`.
pub fn lah_generating_series(k: usize, order: usize) -> Result<TruncatedSeries, BasisError> {
    column_series(k, order, 1)
}

/// Truncation of `(-1)^k (1/k!) (x/(1+x))^k`. The coefficient of `x^n` is
/// `(-1)^n L(n,k)/n!`.
pub fn alternating_generating_series(k: usize, order: usize) -> Result<TruncatedSeries, BasisError> {
    column_series(k, order, -1)
}

fn column_series(k: usize, order: usize, sign: i64) -> Result<TruncatedSeries, BasisError> {
    if k == 0 {
        return Err(LahError::Domain { n: order, k }.into());
    }
    if order < k {
        return Err(BasisError::OrderBelowLeadingPower { k, order });
    }
    // 1/(1 - sign x), then its k-th power times x^k.
    let denominator = TruncatedSeries::new(order, vec![Rational::one(), rational(-sign)]);
    let geometric = TruncatedSeries::one(order).try_div(&denominator)?;
    let body = geometric.pow(k);
    let mut coeffs = vec![Rational::zero(); k];
    coeffs.extend(body.coeffs.iter().take(order + 1 - k).cloned());
    let mut scale = Rational::one() / rational_from_uint(factorial(k));
    if sign < 0 && k % 2 == 1 {
        scale = -scale;
    }
    Ok(TruncatedSeries::new(order, coeffs).scale(&scale))
}

/// Which exponential: `e^{+1/x}` or `e^{-1/x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExpSign {
    Plus,
    Minus,
}

impl ExpSign {
    pub fn value(self) -> i64 {
        match self {
            ExpSign::Plus => 1,
            ExpSign::Minus => -1,
        }
    }
}

/// `d^n/dx^n e^{s/x} = e^{s/x} Σ_j coeffs[j] x^{-j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentExpDerivative {
    pub n: usize,
    pub sign: ExpSign,
    pub coeffs: BTreeMap<usize, Rational>,
}

impl LaurentExpDerivative {
    /// `e^{s/x} Σ c_j x^{-j}` at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let s = self.sign.value() as f64;
        let poly: f64 = self.coeffs.iter().map(|(j, c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(-(*j as i32))).sum();
        (s / x).exp() * poly
    }

    /// The coefficient map predicted by the closed formula
    /// `(-1)^n Σ_{k=1}^{n} s^k L(n,k) x^{-(n+k)}`.
    pub fn from_lah_formula(n: usize, sign: ExpSign) -> Result<Self, BasisError> {
        let mut coeffs = BTreeMap::new();
        if n == 0 {
            coeffs.insert(0, Rational::one());
        }
        for k in 1..=n {
            let mut c = rational_from_uint(lah(n, k)?);
            let negative = (n % 2 == 1) ^ (sign == ExpSign::Minus && k % 2 == 1);
            if negative {
                c = -c;
            }
            coeffs.insert(n + k, c);
        }
        Ok(Self { n, sign, coeffs })
    }

    pub fn matches_lah_formula(&self) -> Result<bool, BasisError> {
        Ok(*self == Self::from_lah_formula(self.n, self.sign)?)
    }
}

/// Differentiates `e^{s/x}` symbolically `n` times.
///
/// Each step maps `c x^{-j}` to `-s c x^{-j-2} - j c x^{-j-1}`; Lah numbers
/// are never consulted, so the result is an independent check of the closed
/// formula.
pub fn exp_reciprocal_derivative(n: usize, sign: ExpSign) -> LaurentExpDerivative {
    let s = rational(sign.value());
    let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::from([(0, Rational::one())]);
    for _ in 0..n {
        let mut next: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, c) in &coeffs {
            *next.entry(j + 2).or_insert_with(Rational::zero) -= &s * c;
            if *j > 0 {
                *next.entry(j + 1).or_insert_with(Rational::zero) -= c * rational(*j as i64);
            }
        }
        next.retain(|_, c| !c.is_zero());
        coeffs = next;
    }
    LaurentExpDerivative { n, sign, coeffs }
}

/// `Σ_{k=1}^{n} L(n,k) x^k` as an exact polynomial.
pub fn lah_sum_polynomial(n: usize) -> Result<ExactPolynomial, BasisError> {
    let mut coeffs = vec![Rational::zero()];
    for k in 1..=n {
        coeffs.push(rational_from_uint(lah(n, k)?));
    }
    Ok(ExactPolynomial::new(coeffs))
}

/// The `x -> 0+` limit of the `m`-th derivative of `Σ_k L(n,k) x^k`,
/// divided by `m!`. Computed by `m` symbolic differentiations followed by
/// evaluation at zero; equals `L(n,m)` for `1 <= m <= n`.
pub fn lah_sum_derivative_limit(n: usize, m: usize) -> Result<Rational, BasisError> {
    let mut p = lah_sum_polynomial(n)?;
    for _ in 0..m {
        p = p.derivative();
    }
    Ok(p.eval(&Rational::zero()) / rational_from_uint(factorial(m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &ExactPolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn factorial_polynomials() {
        assert_eq!(ints(&rising_factorial(0)), [1]);
        assert_eq!(ints(&rising_factorial(2)), [0, 1, 1]);
        assert_eq!(ints(&rising_factorial(3)), [0, 2, 3, 1]);
        assert_eq!(ints(&falling_factorial(0)), [1]);
        assert_eq!(ints(&falling_factorial(2)), [0, -1, 1]);
        assert_eq!(ints(&falling_factorial(3)), [0, 2, -3, 1]);
        assert_eq!(rising_factorial(3).to_string(), "x^3 + 3x^2 + 2x");
        assert_eq!(falling_factorial(3).to_string(), "x^3 - 3x^2 + 2x");
    }

    #[test]
    fn rising_is_falling_reflected() {
        // (x)_n = (-1)^n <-x>_n
        let minus_x = ExactPolynomial::from_integers([0, -1]);
        for n in 0..10 {
            let mut reflected = falling_factorial(n).compose(&minus_x);
            if n % 2 == 1 {
                reflected = -&reflected;
            }
            assert_eq!(reflected, rising_factorial(n));
        }
    }

    #[test]
    fn basis_coefficients() {
        let c = |n| -> Vec<i64> {
            rising_in_falling_coefficients(n).unwrap().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
        };
        assert_eq!(c(1), [0, 1]);
        assert_eq!(c(2), [0, 2, 1]);
        assert_eq!(c(3), [0, 6, 6, 1]);
        assert!(rising_in_falling_coefficients(0).is_err());
    }

    #[test]
    fn division_with_remainder() {
        let a = ExactPolynomial::from_integers([-1, 0, 0, 1]); // x^3 - 1
        let b = ExactPolynomial::from_integers([-1, 1]); // x - 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, ExactPolynomial::from_integers([1, 1, 1]));
        assert!(r.is_zero());
        let (q, r) =
            ExactPolynomial::from_integers([1, 0, 1]).div_rem(&ExactPolynomial::from_integers([0, 2])).unwrap();
        assert_eq!(q, ExactPolynomial::new(vec![rational(0), Rational::new(1.into(), 2.into())]));
        assert_eq!(r, ExactPolynomial::from_integers([1]));
        assert_eq!(a.div_rem(&ExactPolynomial::zero()), Err(BasisError::DivisionByZero));
    }

    #[test]
    fn gcd_and_primitive_part() {
        let a = &ExactPolynomial::from_integers([1, 1]) * &ExactPolynomial::from_integers([2, 1]);
        let b = &ExactPolynomial::from_integers([1, 1]) * &ExactPolynomial::from_integers([3, 1]);
        assert_eq!(a.gcd(&b).unwrap(), ExactPolynomial::from_integers([1, 1]));
        let p = ExactPolynomial::new(vec![Rational::new(1.into(), 2.into()), Rational::new((-3).into(), 4.into())]);
        assert_eq!(p.primitive_part(), ExactPolynomial::from_integers([2, -3]));
        let q = ExactPolynomial::from_integers([-4, -6]);
        assert_eq!(q.primitive_part(), ExactPolynomial::from_integers([-2, -3]));
    }

    #[test]
    fn generating_series_examples() {
        let s = lah_generating_series(1, 3).unwrap();
        assert_eq!(s.coeffs(), &[rational(0), rational(1), rational(1), rational(1)]);
        let s = lah_generating_series(2, 3).unwrap();
        assert_eq!(s.coeff(3), rational(1));
        assert_eq!(s.coeff(1), rational(0));
        let s = lah_generating_series(3, 3).unwrap();
        assert_eq!(s.coeff(3), Rational::new(1.into(), 6.into()));
        assert_eq!(lah_generating_series(4, 3), Err(BasisError::OrderBelowLeadingPower { k: 4, order: 3 }));
    }

    #[test]
    fn alternating_series_examples() {
        let s = alternating_generating_series(1, 2).unwrap();
        assert_eq!(s.coeffs(), &[rational(0), rational(-1), rational(1)]);
        let s = alternating_generating_series(2, 2).unwrap();
        assert_eq!(s.coeff(2), Rational::new(1.into(), 2.into()));
        let s = alternating_generating_series(1, 3).unwrap();
        assert_eq!(s.coeff(3), rational(-1));
        assert!(alternating_generating_series(3, 2).is_err());
    }

    #[test]
    fn series_division_inverts_multiplication() {
        let a = TruncatedSeries::new(6, vec![rational(2), rational(-1), rational(3)]);
        let b = TruncatedSeries::new(6, vec![rational(1), rational(4), rational(0), rational(5)]);
        let prod = a.try_mul(&b).unwrap();
        assert_eq!(prod.try_div(&b).unwrap(), a);
        assert_eq!(a.try_div(&TruncatedSeries::monomial(6, 1)), Err(BasisError::SingularDivisor));
        assert_eq!(a.try_mul(&TruncatedSeries::one(5)), Err(BasisError::OrderMismatch(6, 5)));
    }

    #[test]
    fn derivative_examples() {
        let d = exp_reciprocal_derivative(1, ExpSign::Plus);
        assert_eq!(d.coeffs, BTreeMap::from([(2, rational(-1))]));
        let d = exp_reciprocal_derivative(2, ExpSign::Plus);
        assert_eq!(d.coeffs, BTreeMap::from([(3, rational(2)), (4, rational(1))]));
        let d = exp_reciprocal_derivative(3, ExpSign::Minus);
        assert_eq!(d.coeffs, BTreeMap::from([(4, rational(6)), (5, rational(-6)), (6, rational(1))]));
        assert!(d.matches_lah_formula().unwrap());
    }

    #[test]
    fn derivative_exponent_range() {
        for n in 1..=12 {
            for sign in [ExpSign::Plus, ExpSign::Minus] {
                let d = exp_reciprocal_derivative(n, sign);
                let keys: Vec<usize> = d.coeffs.keys().copied().collect();
                assert_eq!(keys, ((n + 1)..=(2 * n)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn derivative_limit_recovers_column() {
        for n in 1..=10 {
            for m in 1..=n {
                assert_eq!(lah_sum_derivative_limit(n, m).unwrap(), rational_from_uint(lah(n, m).unwrap()));
            }
            assert!(lah_sum_derivative_limit(n, n + 1).unwrap().is_zero());
        }
    }
}
