//! Self-validating quadrature over `[0, ∞)` and the integral identity checks
//! built on it.
//!
//! The interval is cut at a truncation point `T` chosen from an analytic
//! bound on `∫_T^∞ |f|`, and `[0, T]` is integrated by adaptive
//! Gauss-Kronrod (7/15) bisection. The reported error estimate is the sum of
//! three parts: the Kronrod/Gauss disagreement over all panels, a rounding
//! allowance proportional to `∫|f|`, and the tail bound at `T`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_core::{factorial, lah, lah_total, recovered_closed_form, LahError};
use crate::factorial_basis::{exp_reciprocal_derivative, lah_sum_polynomial, BasisError, ExpSign};
use crate::special_functions::{bessel_i1_with, h_k_closed_form, hypergeom_1f2_with, SeriesError, SeriesOptions};
use crate::summation::NeumaierSum;

/// Kronrod abscissae on [-1, 1] (non-negative half) and weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Multiple of `ε ∫|f|` charged for rounding in the error estimate.
const ROUNDING_FACTOR: f64 = 50.0 * f64::EPSILON;

/// Fraction of an identity's tolerance handed to the quadrature.
const QUADRATURE_SHARE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub truncation_point: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Maximum number of panels on `[0, T]` (the refinement budget).
    pub max_panels: usize,
    pub initial_panels: usize,
    /// Largest truncation point tried before giving up.
    pub max_truncation: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { max_panels: 4000, initial_panels: 8, max_truncation: 1e6 }
    }
}

impl QuadratureOptions {
    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("tolerance must be positive (got {0})")]
    Tolerance(f64),
    #[error("no truncation point up to {max} makes the tail bound smaller than {target:e}")]
    Truncation { max: f64, target: f64 },
    #[error("refinement budget of {panels} panels exhausted (best estimate {partial:?})")]
    BudgetExhausted { panels: usize, partial: QuadratureResult },
    #[error("integrand is not finite at t = {0}")]
    NonFinite(f64),
    #[error("tail majorant fails at t = {t}: |f| = {value:e} > {bound:e}")]
    MajorantViolated { t: f64, value: f64, bound: f64 },
}

/// `t^power · e^{sqrt_rate·√t − decay·t}`, an upper bound on `|f(t)|` used
/// to bound the neglected tail.
///
/// After `u = √t` the tail becomes `∫_U^∞ 2u^{2p+1} e^{bu − cu²} du`. The
/// logarithm of that integrand has a decreasing derivative, so once its
/// slope `−a` at `U` is negative the integrand is dominated by
/// `g(U) e^{−a(u−U)}`, giving the closed-form bound `g(U)/a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpPowerMajorant {
    pub power: f64,
    pub sqrt_rate: f64,
    pub decay: f64,
}

impl ExpPowerMajorant {
    pub fn new(power: f64, sqrt_rate: f64, decay: f64) -> Self {
        Self { power, sqrt_rate, decay }
    }

    pub fn value(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return if self.power == 0.0 {
                1.0
            } else if self.power > 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
        }
        (self.power * t.ln() + self.sqrt_rate * t.sqrt() - self.decay * t).exp()
    }

    /// Upper bound on `∫_T^∞ value(t) dt`; infinite when the closed form
    /// does not yet apply at `T`.
    pub fn tail_bound(&self, truncation: f64) -> f64 {
        if truncation <= 0.0 {
            return f64::INFINITY;
        }
        let u = truncation.sqrt();
        let slope = 2.0 * self.decay * u - self.sqrt_rate - (2.0 * self.power + 1.0) / u;
        if slope <= 0.0 {
            return f64::INFINITY;
        }
        let log_g =
            std::f64::consts::LN_2 + (2.0 * self.power + 1.0) * u.ln() + self.sqrt_rate * u - self.decay * u * u;
        log_g.exp() / slope
    }

    /// Samples `f` on `[T, 2T]` and fails if it ever exceeds the majorant.
    pub fn check<F: Fn(f64) -> f64>(&self, f: &F, truncation: f64) -> Result<(), QuadratureError> {
        const SAMPLES: usize = 33;
        for i in 0..SAMPLES {
            let t = truncation * (1.0 + i as f64 / (SAMPLES - 1) as f64);
            let value = f(t).abs();
            let bound = self.value(t);
            if !(value <= bound * (1.0 + 1e-12)) {
                return Err(QuadratureError::MajorantViolated { t, value, bound });
            }
        }
        Ok(())
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel, QuadratureError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> Result<f64, QuadratureError> {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadratureError::NonFinite(t))
        }
    };
    let fc = eval(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Ok(Panel { a, b, value: kronrod * half, error: ((kronrod - gauss) * half).abs(), abs_value: abs_sum * half.abs() })
}

/// Integrates `f` over `[0, ∞)` to absolute tolerance `tol`.
///
/// `tail_bound(T)` must bound `∫_T^∞ |f|`. Half of `tol` goes to the tail
/// and half to the panels on `[0, T]`.
pub fn integrate_semi_infinite<F, B>(f: F, tail_bound: B, tol: f64) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    integrate_semi_infinite_with(f, tail_bound, tol, &QuadratureOptions::default())
}

pub fn integrate_semi_infinite_with<F, B>(
    f: F,
    tail_bound: B,
    tol: f64,
    opts: &QuadratureOptions,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(QuadratureError::Tolerance(tol));
    }
    let half_tol = 0.5 * tol;
    let mut truncation = 1.0;
    let mut tail = tail_bound(truncation);
    while !(tail < half_tol) {
        truncation *= 1.25;
        if truncation > opts.max_truncation {
            return Err(QuadratureError::Truncation { max: opts.max_truncation, target: half_tol });
        }
        tail = tail_bound(truncation);
    }

    let initial = opts.initial_panels.max(1);
    let width = truncation / initial as f64;
    let mut heap = BinaryHeap::with_capacity(opts.max_panels + 1);
    for i in 0..initial {
        let a = i as f64 * width;
        let b = if i + 1 == initial { truncation } else { a + width };
        heap.push(kronrod_panel(&f, a, b)?);
    }
    let mut evaluations = 15 * initial;

    let summarize = |heap: &BinaryHeap<Panel>, evaluations: usize| {
        let mut value = NeumaierSum::new();
        let mut err = NeumaierSum::new();
        let mut abs = NeumaierSum::new();
        for p in heap.iter() {
            value += p.value;
            err += p.error;
            abs += p.abs_value;
        }
        let panel_error = err.value() + ROUNDING_FACTOR * abs.value();
        (
            panel_error,
            QuadratureResult {
                value: value.value(),
                error_estimate: panel_error + tail,
                truncation_point: truncation,
                evaluations,
            },
        )
    };

    loop {
        let (panel_error, result) = summarize(&heap, evaluations);
        if panel_error <= half_tol {
            return Ok(result);
        }
        if heap.len() >= opts.max_panels {
            return Err(QuadratureError::BudgetExhausted { panels: heap.len(), partial: result });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(kronrod_panel(&f, worst.a, mid)?);
        heap.push(kronrod_panel(&f, mid, worst.b)?);
        evaluations += 30;
    }
}

/// `I₁(2√t) · t^{n−1/2} · e^{−c t}`.
///
/// Behaves like `t^n` near the origin, so the value at `t = 0` is the limit
/// `1` for `n = 0` and `0` otherwise.
pub fn bessel_power_integrand(n: usize, decay: f64) -> impl Fn(f64) -> f64 + Sync {
    let opts = SeriesOptions::relative(1e-17);
    move |t: f64| {
        if t == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        let i1 = match bessel_i1_with(2.0 * t.sqrt(), &opts) {
            Ok(v) => v.value,
            Err(_) => return f64::NAN,
        };
        i1 * ((n as f64 - 0.5) * t.ln() - decay * t).exp()
    }
}

/// `I₁(y) ≤ I₀(y) ≤ e^y`, hence `|bessel_power_integrand(n, c)(t)| ≤
/// t^{n−1/2} e^{2√t − ct}`.
pub fn bessel_power_majorant(n: usize, decay: f64) -> ExpPowerMajorant {
    ExpPowerMajorant::new(n as f64 - 0.5, 2.0, decay)
}

/// `₁F₂(1; k+1, k+2; t) · t^k · e^{−z t}`.
pub fn hypergeom_integrand(k: usize, z: f64) -> impl Fn(f64) -> f64 + Sync {
    let opts = SeriesOptions::relative(1e-17);
    move |t: f64| {
        if t == 0.0 {
            return if k == 0 { 1.0 } else { 0.0 };
        }
        let f = match hypergeom_1f2_with(k, t, &opts) {
            Ok(v) => v.value,
            Err(_) => return f64::NAN,
        };
        f * (k as f64 * t.ln() - z * t).exp()
    }
}

/// `₁F₂(1; k+1, k+2; t) ≤ ₁F₂(1; 1, 2; t) = I₁(2√t)/√t ≤ t^{−1/2} e^{2√t}`.
pub fn hypergeom_majorant(k: usize, z: f64) -> ExpPowerMajorant {
    ExpPowerMajorant::new(k as f64 - 0.5, 2.0, z)
}

/// `t^{p} e^{−c t}`.
pub fn gamma_integrand(power: usize, decay: f64) -> impl Fn(f64) -> f64 + Sync {
    move |t: f64| {
        if t == 0.0 {
            return if power == 0 { 1.0 } else { 0.0 };
        }
        (power as f64 * t.ln() - decay * t).exp()
    }
}

pub fn gamma_majorant(power: usize, decay: f64) -> ExpPowerMajorant {
    ExpPowerMajorant::new(power as f64, 0.0, decay)
}

/// A named parameter of an identity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Real(f64),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Real(v) => write!(f, "{v}"),
        }
    }
}

impl Param {
    fn sort_key(&self) -> f64 {
        match *self {
            Param::Int(v) => v as f64,
            Param::Real(v) => v,
        }
    }
}

pub type Params = BTreeMap<String, Param>;

/// Outcome of one closed-form versus quadrature comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub parameters: Params,
    pub lhs: f64,
    /// Full right-hand side, including any constant prefactor and offset;
    /// the error estimate is scaled accordingly.
    pub rhs: QuadratureResult,
    pub abs_error: f64,
    /// `abs_error / |lhs|`, or `abs_error` when `lhs = 0`.
    pub rel_error: f64,
    pub passed: bool,
}

impl IdentityReport {
    /// Relative comparison when `|lhs| >= 1`, absolute otherwise.
    pub fn new(identity_id: &str, parameters: Params, lhs: f64, rhs: QuadratureResult, tol: f64) -> Self {
        let abs_error = (rhs.value - lhs).abs();
        let rel_error = if lhs == 0.0 { abs_error } else { abs_error / lhs.abs() };
        let passed = if lhs.abs() >= 1.0 { rel_error <= tol } else { abs_error <= tol };
        Self { identity_id: identity_id.to_string(), parameters, lhs, rhs, abs_error, rel_error, passed }
    }
}

/// Orders reports by identity id, then by parameter values.
pub fn report_order(a: &IdentityReport, b: &IdentityReport) -> Ordering {
    a.identity_id.cmp(&b.identity_id).then_with(|| compare_params(&a.parameters, &b.parameters))
}

pub fn compare_params(a: &Params, b: &Params) -> Ordering {
    let ka = a.iter().map(|(k, v)| (k, v.sort_key()));
    let kb = b.iter().map(|(k, v)| (k, v.sort_key()));
    for ((na, va), (nb, vb)) in ka.zip(kb) {
        let o = na.cmp(nb).then(va.total_cmp(&vb));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("{identity}: {source}")]
    Quadrature { identity: String, source: QuadratureError },
    #[error("{identity}: argument out of domain: {reason}")]
    Domain { identity: String, reason: String },
    #[error("{identity}: exact mismatch: {detail}")]
    ExactMismatch { identity: String, detail: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Lah(#[from] LahError),
    #[error(transparent)]
    Basis(#[from] BasisError),
}

impl VerifyError {
    pub fn identity(&self) -> Option<&str> {
        match self {
            VerifyError::Quadrature { identity, .. }
            | VerifyError::Domain { identity, .. }
            | VerifyError::ExactMismatch { identity, .. } => Some(identity),
            _ => None,
        }
    }
}

/// `lhs ≟ offset + prefactor · ∫₀^∞ f`.
struct IntegralCheck<'a, F> {
    id: &'a str,
    params: Params,
    lhs: f64,
    offset: f64,
    prefactor: f64,
    integrand: F,
    majorant: ExpPowerMajorant,
}

impl<F: Fn(f64) -> f64> IntegralCheck<'_, F> {
    fn run(self, tol: f64, opts: &QuadratureOptions) -> Result<IdentityReport, VerifyError> {
        let scale = if self.lhs.abs() >= 1.0 { self.lhs.abs() } else { 1.0 };
        let quad_tol = QUADRATURE_SHARE * tol * scale / self.prefactor.abs();
        let label = format!(
            "{}[{}]",
            self.id,
            self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
        );
        let wrap = |source| VerifyError::Quadrature { identity: label.clone(), source };
        let majorant = self.majorant;
        let q =
            integrate_semi_infinite_with(&self.integrand, |t| majorant.tail_bound(t), quad_tol, opts).map_err(wrap)?;
        majorant.check(&self.integrand, q.truncation_point).map_err(wrap)?;
        let rhs = QuadratureResult {
            value: self.offset + self.prefactor * q.value,
            error_estimate: self.prefactor.abs() * q.error_estimate,
            ..q
        };
        Ok(IdentityReport::new(self.id, self.params, self.lhs, rhs, tol))
    }
}

fn positive(identity: &str, name: &str, v: f64) -> Result<(), VerifyError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(VerifyError::Domain { identity: identity.to_string(), reason: format!("{name} = {v} must be > 0") })
    }
}

fn params<const N: usize>(items: [(&str, Param); N]) -> Params {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn to_f64(v: &num_bigint::BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

pub const EXP_REPRESENTATION: &str = "exp_representation";
pub const HK_REPRESENTATION: &str = "hk_representation";
pub const DERIVATIVE_REPRESENTATION: &str = "derivative_representation";
pub const LAH_SUM_REPRESENTATION: &str = "lah_sum_representation";
pub const TOTAL_SUM_INTEGRAL: &str = "total_sum_integral";
pub const GAMMA_INTEGRAL: &str = "gamma_integral";
pub const RECOVERY_CHAIN: &str = "recovery_chain";

/// `e^{1/z} = 1 + ∫₀^∞ I₁(2√t)/√t · e^{−zt} dt`.
pub fn verify_exp_representation(z: f64, tol: f64) -> Result<IdentityReport, VerifyError> {
    verify_exp_representation_with(z, tol, &QuadratureOptions::default())
}

pub fn verify_exp_representation_with(
    z: f64,
    tol: f64,
    opts: &QuadratureOptions,
) -> Result<IdentityReport, VerifyError> {
    positive(EXP_REPRESENTATION, "z", z)?;
    IntegralCheck {
        id: EXP_REPRESENTATION,
        params: params([("z", Param::Real(z))]),
        lhs: (1.0 / z).exp(),
        offset: 1.0,
        prefactor: 1.0,
        integrand: bessel_power_integrand(0, z),
        majorant: bessel_power_majorant(0, z),
    }
    .run(tol, opts)
}

/// `H_k(z) = 1/(k!(k+1)!) ∫₀^∞ ₁F₂(1; k+1, k+2; t) t^k e^{−zt} dt`.
pub fn verify_hk_representation(k: usize, z: f64, tol: f64) -> Result<IdentityReport, VerifyError> {
    verify_hk_representation_with(k, z, tol, &QuadratureOptions::default())
}

pub fn verify_hk_representation_with(
    k: usize,
    z: f64,
    tol: f64,
    opts: &QuadratureOptions,
) -> Result<IdentityReport, VerifyError> {
    positive(HK_REPRESENTATION, "z", z)?;
    let norm = to_f64(&(factorial(k) * factorial(k + 1)));
    IntegralCheck {
        id: HK_REPRESENTATION,
        params: params([("k", Param::Int(k as i64)), ("z", Param::Real(z))]),
        lhs: h_k_closed_form(k, z)?,
        offset: 0.0,
        prefactor: 1.0 / norm,
        integrand: hypergeom_integrand(k, z),
        majorant: hypergeom_majorant(k, z),
    }
    .run(tol, opts)
}

/// `(e^{1/x})^{(n)} = (−1)^n ∫₀^∞ I₁(2√t) t^{n−1/2} e^{−xt} dt`, with the
/// left side taken from the symbolic derivative recurrence.
pub fn verify_derivative_representation(n: usize, x: f64, tol: f64) -> Result<IdentityReport, VerifyError> {
    verify_derivative_representation_with(n, x, tol, &QuadratureOptions::default())
}

pub fn verify_derivative_representation_with(
    n: usize,
    x: f64,
    tol: f64,
    opts: &QuadratureOptions,
) -> Result<IdentityReport, VerifyError> {
    positive(DERIVATIVE_REPRESENTATION, "x", x)?;
    if n == 0 {
        return Err(VerifyError::Domain {
            identity: DERIVATIVE_REPRESENTATION.into(),
            reason: "n must be >= 1".into(),
        });
    }
    let derivative = exp_reciprocal_derivative(n, ExpSign::Plus).eval(x);
    let lhs = if n.is_multiple_of(2) { derivative } else { -derivative };
    IntegralCheck {
        id: DERIVATIVE_REPRESENTATION,
        params: params([("n", Param::Int(n as i64)), ("x", Param::Real(x))]),
        lhs,
        offset: 0.0,
        prefactor: 1.0,
        integrand: bessel_power_integrand(n, x),
        majorant: bessel_power_majorant(n, x),
    }
    .run(tol, opts)
}

/// `Σ_{k=1}^{n} L(n,k) x^k = (e^{−x}/x^n) ∫₀^∞ I₁(2√t) t^{n−1/2} e^{−t/x} dt`.
pub fn verify_lah_sum_representation(n: usize, x: f64, tol: f64) -> Result<IdentityReport, VerifyError> {
    verify_lah_sum_representation_with(n, x, tol, &QuadratureOptions::default())
}

pub fn verify_lah_sum_representation_with(
    n: usize,
    x: f64,
    tol: f64,
    opts: &QuadratureOptions,
) -> Result<IdentityReport, VerifyError> {
    positive(LAH_SUM_REPRESENTATION, "x", x)?;
    let exact_x = BigRational::from_float(x).ok_or_else(|| VerifyError::Domain {
        identity: LAH_SUM_REPRESENTATION.into(),
        reason: format!("x = {x} is not representable"),
    })?;
    if n == 0 {
        return Err(LahError::Domain { n, k: 1 }.into());
    }
    let lhs = lah_sum_polynomial(n)?.eval(&exact_x).to_f64().unwrap_or(f64::NAN);
    IntegralCheck {
        id: LAH_SUM_REPRESENTATION,
        params: params([("n", Param::Int(n as i64)), ("x", Param::Real(x))]),
        lhs,
        offset: 0.0,
        prefactor: (-x - n as f64 * x.ln()).exp(),
        integrand: bessel_power_integrand(n, 1.0 / x),
        majorant: bessel_power_majorant(n, 1.0 / x),
    }
    .run(tol, opts)
}

/// `𝓛_n = ∫₀^∞ I₁(2√t) t^{n−1/2} e^{−(1+t)} dt`.
pub fn verify_total_sum_integral(n: usize, tol: f64) -> Result<IdentityReport, VerifyError> {
    verify_total_sum_integral_with(n, tol, &QuadratureOptions::default())
}

pub fn verify_total_sum_integral_with(
    n: usize,
    tol: f64,
    opts: &QuadratureOptions,
) -> Result<IdentityReport, VerifyError> {
    let lhs = to_f64(&lah_total(n)?);
    IntegralCheck {
        id: TOTAL_SUM_INTEGRAL,
        params: params([("n", Param::Int(n as i64))]),
        lhs,
        offset: 0.0,
        prefactor: (-1.0f64).exp(),
        integrand: bessel_power_integrand(n, 1.0),
        majorant: bessel_power_majorant(n, 1.0),
    }
    .run(tol, opts)
}

/// `(k−1)! = ∫₀^∞ t^{k−1} e^{−t} dt`.
pub fn verify_gamma_integral(k: usize, tol: f64) -> Result<IdentityReport, VerifyError> {
    verify_gamma_integral_with(k, tol, &QuadratureOptions::default())
}

pub fn verify_gamma_integral_with(k: usize, tol: f64, opts: &QuadratureOptions) -> Result<IdentityReport, VerifyError> {
    if k == 0 {
        return Err(VerifyError::Domain { identity: GAMMA_INTEGRAL.into(), reason: "k must be >= 1".into() });
    }
    IntegralCheck {
        id: GAMMA_INTEGRAL,
        params: params([("k", Param::Int(k as i64))]),
        lhs: to_f64(&factorial(k - 1)),
        offset: 0.0,
        prefactor: 1.0,
        integrand: gamma_integrand(k - 1, 1.0),
        majorant: gamma_majorant(k - 1, 1.0),
    }
    .run(tol, opts)
}

/// Two checks bundled:
/// numerically `1/(1+x)^k = (1/(k−1)!) ∫₀^∞ t^{k−1} e^{−(1+x)t} dt`, and
/// exactly `((m+k)!/k!) C(m+k−1, k−1) = L(m+k, k)`.
///
/// An exact mismatch is returned as an error, never as a failed report.
pub fn verify_recovery_chain(m: usize, k: usize, x: f64, tol: f64) -> Result<IdentityReport, VerifyError> {
    verify_recovery_chain_with(m, k, x, tol, &QuadratureOptions::default())
}

pub fn verify_recovery_chain_with(
    m: usize,
    k: usize,
    x: f64,
    tol: f64,
    opts: &QuadratureOptions,
) -> Result<IdentityReport, VerifyError> {
    if k == 0 || !(x >= 0.0) || !x.is_finite() {
        return Err(VerifyError::Domain {
            identity: RECOVERY_CHAIN.into(),
            reason: format!("need k >= 1 and x >= 0 (got k = {k}, x = {x})"),
        });
    }
    let recovered = recovered_closed_form(m, k)?;
    let direct = lah(m + k, k)?;
    if recovered != direct {
        return Err(VerifyError::ExactMismatch {
            identity: RECOVERY_CHAIN.into(),
            detail: format!("recovered form {recovered} != L({}, {k}) = {direct}", m + k),
        });
    }
    IntegralCheck {
        id: RECOVERY_CHAIN,
        params: params([("k", Param::Int(k as i64)), ("m", Param::Int(m as i64)), ("x", Param::Real(x))]),
        lhs: (1.0 + x).powi(-(k as i32)),
        offset: 0.0,
        prefactor: 1.0 / to_f64(&factorial(k - 1)),
        integrand: gamma_integrand(k - 1, 1.0 + x),
        majorant: gamma_majorant(k - 1, 1.0 + x),
    }
    .run(tol, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn exponential_calibration() {
        let maj = gamma_majorant(0, 1.0);
        let q = integrate_semi_infinite(|t| (-t).exp(), |t| maj.tail_bound(t), 1e-12).unwrap();
        assert!((q.value - 1.0).abs() < 1e-12);
        assert!(q.evaluations > 0);
        assert!((q.value - 1.0).abs() <= q.error_estimate);
    }

    #[test]
    fn gamma_calibration_at_four() {
        let maj = gamma_majorant(3, 1.0);
        let q = integrate_semi_infinite(gamma_integrand(3, 1.0), |t| maj.tail_bound(t), 1e-10).unwrap();
        assert!((q.value - 6.0).abs() < 1e-10);
    }

    #[test]
    fn bessel_integrand_at_unit_decay() {
        let maj = bessel_power_majorant(0, 1.0);
        let q = integrate_semi_infinite(bessel_power_integrand(0, 1.0), |t| maj.tail_bound(t), 1e-10).unwrap();
        assert!((q.value - (E - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn integrand_limits_at_origin() {
        for n in 0..5 {
            let f = bessel_power_integrand(n, 1.0);
            let limit = if n == 0 { 1.0 } else { 0.0 };
            assert_eq!(f(0.0), limit);
            assert!((f(1e-12) - limit).abs() < 1e-11);
        }
        let g = hypergeom_integrand(0, 1.0);
        assert_eq!(g(0.0), 1.0);
        assert!((g(1e-12) - 1.0).abs() < 1e-11);
    }

    #[test]
    fn majorant_holds_on_default_integrands() {
        for n in 0..=6 {
            for c in [0.25, 0.5, 1.0, 2.0, 4.0] {
                let f = bessel_power_integrand(n, c);
                let maj = bessel_power_majorant(n, c);
                for t in [0.01, 0.5, 1.0, 10.0, 100.0, 400.0] {
                    assert!(f(t) <= maj.value(t) * (1.0 + 1e-12), "n={n} c={c} t={t}");
                }
                maj.check(&f, 50.0).unwrap();
            }
        }
        for k in 0..=3 {
            let f = hypergeom_integrand(k, 1.0);
            hypergeom_majorant(k, 1.0).check(&f, 10.0).unwrap();
        }
    }

    #[test]
    fn wrong_majorant_is_caught() {
        let f = gamma_integrand(2, 1.0);
        let too_small = gamma_majorant(1, 1.0);
        assert!(matches!(too_small.check(&f, 10.0), Err(QuadratureError::MajorantViolated { .. })));
    }

    #[test]
    fn tail_bound_dominates_numeric_tail() {
        // ∫_T^∞ t^2 e^{-t} = e^{-T}(T^2 + 2T + 2)
        let maj = gamma_majorant(2, 1.0);
        for t in [5.0, 10.0, 30.0] {
            let exact = f64::exp(-t) * (t * t + 2.0 * t + 2.0);
            assert!(maj.tail_bound(t) >= exact);
        }
        assert!(maj.tail_bound(0.5).is_infinite());
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let maj = gamma_majorant(0, 1.0);
        let opts = QuadratureOptions::default().with_max_panels(8);
        let err = integrate_semi_infinite_with(|t| (-t).exp(), |t| maj.tail_bound(t), 1e-15, &opts).unwrap_err();
        match err {
            QuadratureError::BudgetExhausted { panels, partial } => {
                assert_eq!(panels, 8);
                assert!((partial.value - 1.0).abs() < 1e-6);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(integrate_semi_infinite(|t| (-t).exp(), |_| 0.0, 0.0).unwrap_err(), QuadratureError::Tolerance(0.0));
        let err = integrate_semi_infinite(|_| 1.0, |_| f64::INFINITY, 1e-8).unwrap_err();
        assert!(matches!(err, QuadratureError::Truncation { .. }));
        let err = integrate_semi_infinite(|_| f64::NAN, |_| 0.0, 1e-8).unwrap_err();
        assert!(matches!(err, QuadratureError::NonFinite(_)));
        assert!(matches!(verify_exp_representation(0.0, 1e-8), Err(VerifyError::Domain { .. })));
        assert!(matches!(verify_recovery_chain(1, 0, 0.0, 1e-8), Err(VerifyError::Domain { .. })));
        assert!(matches!(verify_recovery_chain(1, 1, -1.0, 1e-8), Err(VerifyError::Domain { .. })));
    }

    #[test]
    fn exp_representation_examples() {
        for (z, lhs) in [(1.0, E), (2.0, 1.648_721_270_700_128_2), (10.0, 0.1f64.exp())] {
            let r = verify_exp_representation(z, 1e-9).unwrap();
            assert!((r.lhs - lhs).abs() < 1e-15);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn hk_representation_examples() {
        let r = verify_hk_representation(0, 1.0, 1e-9).unwrap();
        assert!((r.lhs - (E - 1.0)).abs() < 1e-15 && r.passed);
        let r = verify_hk_representation(1, 1.0, 1e-9).unwrap();
        assert!((r.lhs - (E - 2.0)).abs() < 1e-15 && r.passed);
        let r = verify_hk_representation(2, 2.0, 1e-9).unwrap();
        assert!(r.lhs < 1.0 && r.passed);
        assert!((r.lhs - 0.023_721).abs() < 1e-6);
    }

    #[test]
    fn derivative_representation_examples() {
        let r = verify_derivative_representation(1, 1.0, 1e-9).unwrap();
        assert!((r.lhs - E).abs() < 1e-14 && r.passed);
        let r = verify_derivative_representation(2, 1.0, 1e-9).unwrap();
        assert!((r.lhs - 3.0 * E).abs() < 1e-13 && r.passed);
        let r = verify_derivative_representation(3, 2.0, 1e-9).unwrap();
        let expected = 0.5f64.exp() * (6.0 / 16.0 + 6.0 / 32.0 + 1.0 / 64.0);
        assert!((r.lhs - expected).abs() < 1e-14 && r.passed, "{r:?}");
    }

    #[test]
    fn lah_sum_representation_examples() {
        let r = verify_lah_sum_representation(1, 1.0, 1e-9).unwrap();
        assert_eq!(r.lhs, 1.0);
        assert!(r.passed);
        let r = verify_lah_sum_representation(3, 1.0, 1e-9).unwrap();
        assert_eq!(r.lhs, 13.0);
        assert!(r.passed);
        let r = verify_lah_sum_representation(4, 0.5, 1e-9).unwrap();
        assert_eq!(r.lhs, 22.5625);
        assert!(r.passed);
    }

    #[test]
    fn total_sum_examples() {
        for (n, total) in [(1, 1.0), (4, 73.0), (6, 4051.0)] {
            let r = verify_total_sum_integral(n, 1e-9).unwrap();
            assert_eq!(r.lhs, total);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn recovery_chain_examples() {
        let r = verify_recovery_chain(0, 1, 0.0, 1e-10).unwrap();
        assert_eq!(r.lhs, 1.0);
        assert!(r.passed);
        let r = verify_recovery_chain(1, 3, 1.0, 1e-10).unwrap();
        assert_eq!(r.lhs, 0.125);
        assert!(r.passed);
        let r = verify_recovery_chain(2, 2, 0.0, 1e-10).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn report_pass_rule() {
        let q = QuadratureResult { value: 0.5 + 2e-9, error_estimate: 0.0, truncation_point: 1.0, evaluations: 1 };
        // |lhs| < 1: absolute
        assert!(!IdentityReport::new("t", Params::new(), 0.5, q, 1e-9).passed);
        assert!(IdentityReport::new("t", Params::new(), 0.5, q, 3e-9).passed);
        let q = QuadratureResult { value: 100.0 + 5e-8, ..q };
        // |lhs| >= 1: relative
        assert!(IdentityReport::new("t", Params::new(), 100.0, q, 1e-9).passed);
        let zero = IdentityReport::new("t", Params::new(), 0.0, QuadratureResult { value: 1e-12, ..q }, 1e-9);
        assert_eq!(zero.rel_error, zero.abs_error);
    }
}
