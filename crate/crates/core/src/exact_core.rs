//! Exact Lah numbers and their relatives.
//!
//! Everything here is computed with arbitrary-precision integers; no value
//! ever passes through floating point. The triangle starts at `n = k = 1`:
//! zero arguments are rejected instead of adopting the `L(0,0) = 1`
//! convention.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

/// Default upper bound on `n` for [`lah_enumeration_oracle`].
pub const DEFAULT_ORACLE_BOUND: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LahError {
    #[error("Lah numbers are defined for n >= 1 and k >= 1 (got n = {n}, k = {k})")]
    Domain { n: usize, k: usize },
    #[error("enumeration oracle range exceeded: n = {n} > bound {bound}")]
    OracleRange { n: usize, bound: usize },
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigUint {
    falling_product(n, n)
}

/// `n (n-1) ... (n-len+1)`, i.e. `n! / (n-len)!`.
fn falling_product(n: usize, len: usize) -> BigUint {
    debug_assert!(len <= n);
    let mut acc = BigUint::one();
    for i in (n - len + 1)..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient by the multiplicative recurrence
/// `C(n, i+1) = C(n, i) (n-i) / (i+1)`, exact at every step.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `L(n, k) = C(n-1, k-1) n! / k!`; zero above the diagonal.
pub fn lah(n: usize, k: usize) -> Result<BigUint, LahError> {
    if n == 0 || k == 0 {
        return Err(LahError::Domain { n, k });
    }
    if k > n {
        return Ok(BigUint::zero());
    }
    // n!/k! = (k+1)(k+2)...n
    Ok(binomial(n - 1, k - 1) * falling_product(n, n - k))
}

/// `[L(n,1), ..., L(n,n)]`.
pub fn lah_row(n: usize) -> Result<Vec<BigUint>, LahError> {
    if n == 0 {
        return Err(LahError::Domain { n, k: 1 });
    }
    (1..=n).map(|k| lah(n, k)).collect()
}

/// Row sum `Σ_k L(n,k)`, the number of partitions of an `n`-set into
/// ordered lists.
pub fn lah_total(n: usize) -> Result<BigUint, LahError> {
    Ok(lah_row(n)?.into_iter().sum())
}

/// Counts partitions of `{1..n}` into exactly `k` nonempty ordered lists by
/// exhaustive construction.
///
/// Elements are placed one at a time. Each new element either opens a new
/// list or is inserted into one of the gaps of an existing list; a list of
/// length `l` has `l + 1` gaps. Every configuration is materialized, so the
/// cost is the full row sum and `n` is capped by `bound`.
pub fn lah_enumeration_oracle_bounded(n: usize, k: usize, bound: usize) -> Result<BigUint, LahError> {
    if n > bound {
        return Err(LahError::OracleRange { n, bound });
    }
    if n == 0 || k == 0 {
        return Err(LahError::Domain { n, k });
    }
    let mut lists: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut count: u64 = 0;
    place(1, n, k, &mut lists, &mut count);
    Ok(BigUint::from(count))
}

/// [`lah_enumeration_oracle_bounded`] with [`DEFAULT_ORACLE_BOUND`].
pub fn lah_enumeration_oracle(n: usize, k: usize) -> Result<BigUint, LahError> {
    lah_enumeration_oracle_bounded(n, k, DEFAULT_ORACLE_BOUND)
}

fn place(next: usize, n: usize, k: usize, lists: &mut Vec<Vec<usize>>, count: &mut u64) {
    if lists.len() > k {
        return;
    }
    if next > n {
        if lists.len() == k && lists.iter().all(|l| !l.is_empty()) {
            *count += 1;
        }
        return;
    }
    // open a new list
    lists.push(vec![next]);
    place(next + 1, n, k, lists, count);
    lists.pop();
    // insert into an existing list at every gap
    for li in 0..lists.len() {
        for pos in 0..=lists[li].len() {
            lists[li].insert(pos, next);
            place(next + 1, n, k, lists, count);
            lists[li].remove(pos);
        }
    }
}

/// Immutable triangle of `L(n,k)` for `1 <= k <= n <= n_max`.
///
/// Built by the row recurrence `L(n+1,k) = (n+k) L(n,k) + L(n,k-1)`, which
/// is a different route from the closed form used by [`lah`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LahTable {
    n_max: usize,
    rows: Vec<Vec<BigUint>>,
}

impl LahTable {
    pub fn new(n_max: usize) -> Result<Self, LahError> {
        if n_max == 0 {
            return Err(LahError::Domain { n: 0, k: 1 });
        }
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max);
        rows.push(vec![BigUint::one()]);
        for n in 1..n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            for k in 1..=n + 1 {
                let mut v = BigUint::zero();
                if k <= n {
                    v += &prev[k - 1] * (n + k);
                }
                if k >= 2 {
                    v += &prev[k - 2];
                }
                row.push(v);
            }
            rows.push(row);
        }
        Ok(Self { n_max, rows })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `L(n,k)`, or `None` outside the stored triangle.
    pub fn get(&self, n: usize, k: usize) -> Option<&BigUint> {
        if n == 0 || k == 0 || n > self.n_max || k > n {
            return None;
        }
        Some(&self.rows[n - 1][k - 1])
    }

    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        if n == 0 || n > self.n_max {
            return None;
        }
        Some(&self.rows[n - 1])
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[BigUint])> {
        self.rows.iter().enumerate().map(|(i, r)| (i + 1, r.as_slice()))
    }

    pub fn total(&self, n: usize) -> Option<BigUint> {
        self.row(n).map(|r| r.iter().sum())
    }
}

/// An associated Lah number `L_k(m,n)` together with its indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedLahValue {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub value: BigInt,
}

impl AssociatedLahValue {
    pub fn compute(m: usize, n: usize, k: usize) -> Result<Self, LahError> {
        Ok(Self { m, n, k, value: associated_lah(m, n, k)? })
    }
}

/// `L_k(m,n) = (m!/n!) Σ_{r=1}^{n} (-1)^{n-r} C(n,r) C(m+rk-1, m)`,
/// and `0` for `n > m`. `L_1(m,n) = L(m,n)`.
pub fn associated_lah(m: usize, n: usize, k: usize) -> Result<BigInt, LahError> {
    if m == 0 || n == 0 || k == 0 {
        return Err(LahError::Domain { n: m, k: n });
    }
    if n > m {
        return Ok(BigInt::zero());
    }
    let mut sum = BigInt::zero();
    for r in 1..=n {
        let term = BigInt::from(binomial(n, r) * binomial(m + r * k - 1, m));
        if (n - r).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum * BigInt::from(falling_product(m, m - n)))
}

/// Dense integer polynomial, `coeffs[i]` multiplying `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LahPolynomial {
    coeffs: Vec<BigInt>,
}

impl LahPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `p(x) / x`; `None` when the constant term is nonzero.
    pub fn divide_by_x(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        if self.coeffs.len() == 1 {
            return Some(self.clone());
        }
        Some(Self::from_coeffs(self.coeffs[1..].to_vec()))
    }

    /// Exact evaluation at an integer point (Horner).
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

/// `P_{m,1}(x) = Σ_{n=1}^{m} L(m,n) x^n`.
pub fn lah_polynomial(m: usize) -> Result<LahPolynomial, LahError> {
    let mut coeffs = vec![BigInt::zero()];
    coeffs.extend(lah_row(m)?.into_iter().map(BigInt::from));
    Ok(LahPolynomial::from_coeffs(coeffs))
}

/// `𝓛_n(x) = Σ_{k=0}^{n} L(n+1,k+1) x^k`.
///
/// Satisfies `𝓛_n(x) = P_{n+1,1}(x) / x`. The published form of that
/// identity writes the second sum with a subscripted `L_k`; it only holds
/// with the plain Lah number, which is what is used here.
pub fn total_lah_polynomial(n: usize) -> Result<LahPolynomial, LahError> {
    let row = lah_row(n + 1)?;
    Ok(LahPolynomial::from_coeffs(row.into_iter().map(BigInt::from).collect()))
}

/// `((m+k)!/k!) C(m+k-1, k-1)`, which must equal `L(m+k, k)`.
pub fn recovered_closed_form(m: usize, k: usize) -> Result<BigUint, LahError> {
    if k == 0 {
        return Err(LahError::Domain { n: m + k, k });
    }
    Ok(falling_product(m + k, m) * binomial(m + k - 1, k - 1))
}
