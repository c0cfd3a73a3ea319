//! Forward differences, absolute convexity of integer sequences, and exact
//! real-root certificates for the Lah polynomials.
//!
//! Convexity is checked on a finite window only: a clean result is
//! desk-scale evidence for a statement about an infinite sequence, not a
//! proof of it.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact_core::{binomial, factorial, lah_polynomial, lah_total, LahError};
use crate::factorial_basis::{BasisError, ExactPolynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("Δ^{k} at n = {n} needs indices {n}..={last}, sequence covers {origin}..={end}", last = n + k)]
    IndexOutOfRange { k: usize, n: usize, origin: usize, end: usize },
    #[error("empty sequence")]
    Empty,
    #[error(transparent)]
    Lah(#[from] LahError),
    #[error(transparent)]
    Basis(#[from] BasisError),
}

/// A finite integer sequence `μ_origin, μ_origin+1, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedSequence {
    origin: usize,
    values: Vec<BigInt>,
}

impl IndexedSequence {
    pub fn new(origin: usize, values: Vec<BigInt>) -> Self {
        Self { origin, values }
    }

    pub fn from_i64(origin: usize, values: &[i64]) -> Self {
        Self::new(origin, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest index held, `None` when empty.
    pub fn last_index(&self) -> Option<usize> {
        (self.origin + self.values.len()).checked_sub(1).filter(|_| !self.values.is_empty())
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(self.origin).and_then(|i| self.values.get(i))
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// `𝓛_1, ..., 𝓛_{n_max}` indexed from 1.
pub fn total_lah_sequence(n_max: usize) -> Result<IndexedSequence, LahError> {
    let values = (1..=n_max).map(|n| lah_total(n).map(BigInt::from)).collect::<Result<Vec<_>, _>>()?;
    Ok(IndexedSequence::new(1, values))
}

/// `Δ^k μ_n = Σ_{m=0}^{k} (−1)^m C(k,m) μ_{n+k−m}`.
pub fn finite_difference(seq: &IndexedSequence, k: usize, n: usize) -> Result<BigInt, SequenceError> {
    let out_of_range = || SequenceError::IndexOutOfRange {
        k,
        n,
        origin: seq.origin,
        end: (seq.origin + seq.values.len()).saturating_sub(1),
    };
    if n < seq.origin || seq.get(n + k).is_none() {
        return Err(out_of_range());
    }
    let mut acc = BigInt::zero();
    for m in 0..=k {
        let term = BigInt::from(binomial(k, m)) * seq.get(n + k - m).ok_or_else(out_of_range)?;
        if m % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Table of `Δ^k μ_n` built by repeated differencing,
/// `Δ^{k+1} μ_n = Δ^k μ_{n+1} − Δ^k μ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceTable {
    origin: usize,
    /// `rows[k][i] = Δ^k μ_{origin+i}`
    rows: Vec<Vec<BigInt>>,
}

impl DifferenceTable {
    pub fn new(seq: &IndexedSequence) -> Result<Self, SequenceError> {
        if seq.is_empty() {
            return Err(SequenceError::Empty);
        }
        let mut rows = vec![seq.values.clone()];
        while rows.last().is_some_and(|r| r.len() > 1) {
            let prev = rows.last().expect("nonempty");
            let next = prev.windows(2).map(|w| &w[1] - &w[0]).collect();
            rows.push(next);
        }
        Ok(Self { origin: seq.origin, rows })
    }

    pub fn max_order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `Δ^k μ_n`, if `n..=n+k` lies inside the base sequence.
    pub fn get(&self, k: usize, n: usize) -> Option<&BigInt> {
        let i = n.checked_sub(self.origin)?;
        self.rows.get(k)?.get(i)
    }

    pub fn base(&self) -> &[BigInt] {
        &self.rows[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexityViolation {
    pub n: usize,
    /// Half the difference order: the offending value is `Δ^{2k} μ_n`.
    pub k: usize,
    #[serde(serialize_with = "decimal_string")]
    pub value: BigInt,
}

fn decimal_string<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Every `(n, k)` with `n + 2k <= max_total` (and inside the sequence) for
/// which `Δ^{2k} μ_n < 0`. `k = 0` covers non-negativity of the entries.
pub fn absolute_convexity_check(seq: &IndexedSequence, max_total: usize) -> Vec<ConvexityViolation> {
    let Ok(table) = DifferenceTable::new(seq) else {
        return Vec::new();
    };
    let last = seq.last_index().expect("nonempty").min(max_total);
    let mut out = Vec::new();
    for n in seq.origin..=last {
        let mut k = 0;
        while n + 2 * k <= last {
            let v = table.get(2 * k, n).expect("inside window");
            if v.is_negative() {
                out.push(ConvexityViolation { n, k, value: v.clone() });
            }
            k += 1;
        }
    }
    out
}

/// `Δ² μ_n >= 0` for every `n` in `window` whose second difference is
/// defined by the sequence.
pub fn convexity_check(seq: &IndexedSequence, window: RangeInclusive<usize>) -> bool {
    window.filter_map(|n| finite_difference(seq, 2, n).ok()).all(|d| !d.is_negative())
}

/// Exact root summary of an integer polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootCertificate {
    pub m: usize,
    pub degree: usize,
    /// Distinct real roots in `(−∞, 0)`.
    pub root_count_negative: usize,
    /// Distinct real roots in `(0, ∞)`.
    pub root_count_positive: usize,
    /// Multiplicity of the root at zero.
    pub root_count_zero: usize,
    /// `gcd(P, P')` is constant.
    pub distinct: bool,
    /// Every complex root is real.
    pub all_real: bool,
}

impl RootCertificate {
    /// Real, distinct, and non-positive.
    pub fn real_distinct_nonpositive(&self) -> bool {
        self.all_real && self.distinct && self.root_count_positive == 0
    }
}

/// Sturm chain `p, p', −rem(p, p'), ...`, each member scaled by a positive
/// rational to primitive integer form.
pub fn sturm_chain(p: &ExactPolynomial) -> Result<Vec<ExactPolynomial>, BasisError> {
    let mut chain = vec![p.primitive_part()];
    if p.degree().unwrap_or(0) == 0 {
        return Ok(chain);
    }
    chain.push(p.derivative().primitive_part());
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
        if r.is_zero() {
            break;
        }
        chain.push((-&r).primitive_part());
    }
    Ok(chain)
}

fn sign_changes<I: IntoIterator<Item = i8>>(signs: I) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.into_iter().filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_at_neg_infinity(p: &ExactPolynomial) -> i8 {
    match (p.leading(), p.degree()) {
        (Some(l), Some(d)) => sign_of(l) * if d % 2 == 0 { 1 } else { -1 },
        _ => 0,
    }
}

fn sign_at_pos_infinity(p: &ExactPolynomial) -> i8 {
    p.leading().map_or(0, sign_of)
}

/// Counts distinct real roots of `p` (with `p(0) != 0`) below and above
/// zero from sign variations of its Sturm chain at `−∞`, `0`, `+∞`.
fn count_real_roots(p: &ExactPolynomial) -> Result<(usize, usize), BasisError> {
    let chain = sturm_chain(p)?;
    let at_neg = sign_changes(chain.iter().map(sign_at_neg_infinity));
    let at_zero = sign_changes(chain.iter().map(|q| sign_of(&q.coeff(0))));
    let at_pos = sign_changes(chain.iter().map(sign_at_pos_infinity));
    Ok((at_neg - at_zero, at_zero - at_pos))
}

/// Exact root certificate for an arbitrary nonzero polynomial.
pub fn certify_polynomial(m: usize, p: &ExactPolynomial) -> Result<RootCertificate, SequenceError> {
    let degree = p.degree().ok_or(SequenceError::Empty)?;
    let zero_mult = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let distinct = p.gcd(&p.derivative())?.degree() == Some(0);
    // Roots of p are the roots of its squarefree part, each simple.
    let (squarefree, _) = p.div_rem(&p.gcd(&p.derivative())?)?;
    let sf_zero = squarefree.coeffs().iter().take_while(|c| c.is_zero()).count();
    let shifted = ExactPolynomial::new(squarefree.coeffs()[sf_zero..].to_vec());
    let (sf_neg, sf_pos) = count_real_roots(&shifted)?;
    let all_real = sf_zero + sf_neg + sf_pos == squarefree.degree().unwrap_or(0);
    let (root_count_negative, root_count_positive) = if zero_mult == 0 && distinct {
        (sf_neg, sf_pos)
    } else {
        let body = ExactPolynomial::new(p.coeffs()[zero_mult..].to_vec());
        count_real_roots(&body)?
    };
    Ok(RootCertificate {
        m,
        degree,
        root_count_negative,
        root_count_positive,
        root_count_zero: zero_mult,
        distinct,
        all_real,
    })
}

/// Certificate for `P_{m,1}(x) = Σ_{n=1}^{m} L(m,n) x^n`.
pub fn root_certificate(m: usize) -> Result<RootCertificate, SequenceError> {
    let p = lah_polynomial(m)?;
    let exact = ExactPolynomial::new(p.coeffs().iter().cloned().map(Rational::from_integer).collect());
    certify_polynomial(m, &exact)
}

/// `n!` for `n` in `range`, as an indexed sequence.
pub fn factorial_sequence(range: RangeInclusive<usize>) -> IndexedSequence {
    let origin = *range.start();
    IndexedSequence::new(origin, range.map(|n| BigInt::from(factorial(n))).collect())
}
