//! Summability kernels, validation of the seven defining clauses, and
//! pointwise inversion of f from f̂ along non-tangential paths in the upper
//! half plane: I_k = (2πy_k)^{−1} ∫ Θ̂((t−x_k)/y_k) f(t) dt → f(x₀).

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
// in std-linked test graphs the inherent float methods shadow this trait
#[allow(unused_imports)]
use num_traits::Float;

use crate::accel::richardson_halving;
use crate::bvnorm;
use crate::fourier::{self, FourierError};
use crate::quad::{self, QuadError, QuadStatus};
use crate::realfn::{c64, cis, ExtInterval, FunctionSpec, OscTerm, Parity, Side, TailBehavior};

#[derive(Clone, Debug, PartialEq)]
pub enum InvertError {
    /// The kernel fails the summability definition.
    KernelInvalid(String),
    Precondition(&'static str),
    Domain(&'static str),
    ApertureViolation { k: usize, ratio: f64 },
    Quad(QuadError),
    Fourier(FourierError),
    NotConverged(QuadStatus),
}

impl fmt::Display for InvertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvertError::KernelInvalid(name) => {
                write!(f, "kernel fails the summability definition: {name}")
            }
            InvertError::Precondition(m) => write!(f, "precondition failed: {m}"),
            InvertError::Domain(m) => write!(f, "domain error: {m}"),
            InvertError::ApertureViolation { k, ratio } => {
                write!(f, "non-tangential aperture violated at step {k}: |x−x₀|/y = {ratio}")
            }
            InvertError::Quad(e) => write!(f, "{e}"),
            InvertError::Fourier(e) => write!(f, "{e}"),
            InvertError::NotConverged(s) => write!(f, "sub-evaluation ended {s}"),
        }
    }
}

impl core::error::Error for InvertError {}

impl From<QuadError> for InvertError {
    fn from(e: QuadError) -> Self {
        InvertError::Quad(e)
    }
}

impl From<FourierError> for InvertError {
    fn from(e: FourierError) -> Self {
        InvertError::Fourier(e)
    }
}

// ---------------------------------------------------------------------------
// kernels
// ---------------------------------------------------------------------------

/// Summability kernel pair (Θ, Θ̂) with the closed-form derivative of Θ̂
/// used by the sΘ̂′ integrability clause.
#[derive(Clone)]
pub struct Kernel {
    pub name: &'static str,
    pub theta: FunctionSpec,
    pub theta_hat: FunctionSpec,
    pub theta_hat_deriv: FunctionSpec,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Kernel({})", self.name)
    }
}

impl Kernel {
    /// Θ(x) = e^{−x²}, Θ̂(s) = √π·e^{−(s/2)²}
    pub fn gauss_weierstrass() -> Self {
        let sqrt_pi = PI.sqrt();
        Kernel {
            name: "gauss",
            theta: FunctionSpec::gauss(),
            theta_hat: FunctionSpec::poly_gauss(0.25, vec![sqrt_pi]),
            theta_hat_deriv: FunctionSpec::poly_gauss(0.25, vec![0.0, -sqrt_pi / 2.0]),
        }
    }

    /// Θ(x) = e^{−|x|}, Θ̂(s) = 2/(1+s²)
    pub fn abel_poisson() -> Self {
        let deriv: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(|s: f64| {
            let d = 1.0 + s * s;
            c64(-4.0 * s / (d * d), 0.0)
        });
        Kernel {
            name: "abel",
            theta: FunctionSpec::exp_abs(),
            theta_hat: FunctionSpec::lorentz(2.0),
            theta_hat_deriv: FunctionSpec::user_callable(
                deriv,
                Vec::new(),
                ExtInterval::full(),
                Parity::Odd,
            )
            .expect("no singular points declared")
            .with_absolute_tail_cert(),
        }
    }

    /// Θ(x) = (1−|x|)·χ_{[−1,1]}, Θ̂(s) = [sin(s/2)/(s/2)]²
    pub fn cesaro_fejer() -> Self {
        let deriv: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(|s: f64| {
            let u = s / 2.0;
            if u.abs() < 1e-5 {
                // d/ds [1 − u²/3 + …] with u = s/2 → −s/6 + O(s³)
                return c64(-s / 6.0, 0.0);
            }
            // d/du (sin u/u)² = 2 sin u (u cos u − sin u)/u³, du/ds = 1/2
            let v = 2.0 * u.sin() * (u * u.cos() - u.sin()) / (u * u * u);
            c64(0.5 * v, 0.0)
        });
        Kernel {
            name: "cesaro",
            theta: FunctionSpec::triangle_hat(),
            theta_hat: FunctionSpec::sinc_squared(0.5),
            theta_hat_deriv: FunctionSpec::user_callable(
                deriv,
                Vec::new(),
                ExtInterval::full(),
                Parity::Odd,
            )
            .expect("no singular points declared"),
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "gauss" | "gauss-weierstrass" => Some(Self::gauss_weierstrass()),
            "abel" | "abel-poisson" => Some(Self::abel_poisson()),
            "cesaro" | "cesaro-fejer" | "fejer" => Some(Self::cesaro_fejer()),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseOutcome {
    Pass,
    Fail,
}

/// Outcomes for the seven defining clauses, in definition order.
#[derive(Clone, Debug)]
pub struct KernelValidation {
    pub theta_l1_ac: ClauseOutcome,
    pub theta0_is_1: ClauseOutcome,
    pub s_theta_l1: ClauseOutcome,
    pub thetahat_l1_bv: ClauseOutcome,
    pub thetahat_integral_2pi: ClauseOutcome,
    pub s_thetahat_prime_l1: ClauseOutcome,
    pub tail_variation_decay: ClauseOutcome,
}

impl KernelValidation {
    pub fn all_pass(&self) -> bool {
        self.as_array().iter().all(|&c| c == ClauseOutcome::Pass)
    }

    pub fn as_array(&self) -> [ClauseOutcome; 7] {
        [
            self.theta_l1_ac,
            self.theta0_is_1,
            self.s_theta_l1,
            self.thetahat_l1_bv,
            self.thetahat_integral_2pi,
            self.s_thetahat_prime_l1,
            self.tail_variation_decay,
        ]
    }

    pub fn clause_names() -> [&'static str; 7] {
        [
            "theta_L1_AC",
            "theta0_is_1",
            "sTheta_L1",
            "thetahat_L1_BV",
            "thetahat_integral_2pi",
            "sThetahatPrime_L1",
            "tail_variation_O_1_over_x",
        ]
    }
}

fn abs_of(f: &FunctionSpec, extra_factor_s: bool) -> FunctionSpec {
    if f.is_nonnegative() && !extra_factor_s {
        // |f| = f: keep the kind's own tail machinery
        return f.clone();
    }
    let fc = f.clone();
    let eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(move |s: f64| {
        let v = fc.eval_or_zero(s).norm();
        c64(if extra_factor_s { s.abs() * v } else { v }, 0.0)
    });
    let mut spec = FunctionSpec::user_callable(eval, Vec::new(), f.support(), Parity::Even)
        .expect("no singular points declared");
    if f.has_absolute_tail_cert() {
        spec = spec.with_absolute_tail_cert();
    }
    spec
}

fn converges_absolutely(f: &FunctionSpec, tol: f64) -> bool {
    match quad::integrate(f, ExtInterval::full(), tol) {
        Ok(r) => r.status == QuadStatus::Converged,
        Err(_) => false,
    }
}

/// Dyadic tail-sum test for ∫|s·Θ̂′(s)| ds: octave sums that keep their size
/// across ≥ 4 consecutive octaves mean divergence.
fn s_deriv_l1_clause(theta_hat_deriv: &FunctionSpec, tol: f64) -> ClauseOutcome {
    let spec = abs_of(theta_hat_deriv, true);
    let head = match quad::integrate(&spec, ExtInterval::new(-1.0, 1.0).unwrap(), tol) {
        Ok(r) if r.status == QuadStatus::Converged => r.value().unwrap().re,
        _ => return ClauseOutcome::Fail,
    };
    let mut total = head;
    let mut prev_oct: Option<f64> = None;
    let mut flat_run = 0;
    let mut shrink_run = 0;
    for j in 0..26 {
        let lo = (2.0_f64).powi(j);
        let hi = 2.0 * lo;
        let mut oct = 0.0;
        for (a, b) in [(lo, hi), (-hi, -lo)] {
            match quad::integrate(&spec, ExtInterval::new(a, b).unwrap(), tol) {
                Ok(r) if r.status == QuadStatus::Converged => oct += r.value().unwrap().re,
                _ => return ClauseOutcome::Fail,
            }
        }
        total += oct;
        if let Some(prev) = prev_oct {
            let ratio = if prev > 0.0 { oct / prev } else { 0.0 };
            if ratio >= 0.9 && oct > 1e-10 {
                flat_run += 1;
                shrink_run = 0;
                if flat_run >= 4 {
                    return ClauseOutcome::Fail;
                }
            } else {
                flat_run = 0;
                if ratio <= 0.8 {
                    shrink_run += 1;
                } else {
                    shrink_run = 0;
                }
                // geometric tail: the remaining mass is oct·r/(1−r)
                if shrink_run >= 3 {
                    let remaining = oct * ratio / (1.0 - ratio).max(0.2);
                    if remaining <= 1e-6 * (1.0 + total) {
                        return ClauseOutcome::Pass;
                    }
                }
            }
        }
        prev_oct = Some(oct);
        if oct <= 1e-9 * (1.0 + total) {
            return ClauseOutcome::Pass;
        }
    }
    // octave sums still carrying weight after the full dyadic sweep
    ClauseOutcome::Fail
}

/// Least-squares slope of log V_{[x,∞)}Θ̂ against log x over x = 2, 4, …,
/// 2¹⁰; O(1/x) decay requires slope ≤ −1 + 0.1.
fn tail_variation_clause(theta_hat: &FunctionSpec) -> ClauseOutcome {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for j in 1..=10 {
        let x = (2.0_f64).powi(j);
        let v = match bvnorm::variation(theta_hat, ExtInterval::new(x, f64::INFINITY).unwrap()) {
            Ok(p) => p.variation,
            Err(_) => return ClauseOutcome::Fail,
        };
        if v > 1e-14 {
            pts.push((x.ln(), v.ln()));
        }
    }
    if pts.len() < 3 {
        // tail variation already below measurement: faster than any power law
        return ClauseOutcome::Pass;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if slope <= -1.0 + 0.1 {
        ClauseOutcome::Pass
    } else {
        ClauseOutcome::Fail
    }
}

/// Check all seven defining clauses numerically.
pub fn validate_kernel(k: &Kernel, tol: f64) -> KernelValidation {
    let pass_if = |b: bool| if b { ClauseOutcome::Pass } else { ClauseOutcome::Fail };

    // Θ ∈ L¹ ∩ AC: absolute integral converges; the built-in descriptors
    // are continuous (no jumps or unbounded points declared)
    let theta_l1 = converges_absolutely(&abs_of(&k.theta, false), tol);
    let theta_continuous = k.theta.singular_points().is_empty();
    let theta_l1_ac = pass_if(theta_l1 && theta_continuous);

    let theta0_is_1 = pass_if(k.theta.eval_or_zero(0.0) == c64(1.0, 0.0));

    let s_theta_l1 = pass_if(converges_absolutely(&abs_of(&k.theta, true), tol));

    let hat_l1 = converges_absolutely(&abs_of(&k.theta_hat, false), tol);
    let hat_bv = bvnorm::variation(&k.theta_hat, ExtInterval::full())
        .map(|p| p.variation.is_finite())
        .unwrap_or(false);
    let thetahat_l1_bv = pass_if(hat_l1 && hat_bv);

    let mass = quad::integrate(&k.theta_hat, ExtInterval::full(), tol)
        .ok()
        .and_then(|r| r.value())
        .map(|v| (v.re - 2.0 * PI).abs())
        .unwrap_or(f64::INFINITY);
    let thetahat_integral_2pi = pass_if(mass <= (10.0 * tol).max(1e-6));

    let s_thetahat_prime_l1 = s_deriv_l1_clause(&k.theta_hat_deriv, tol.max(1e-9));

    let tail_variation_decay = tail_variation_clause(&k.theta_hat);

    KernelValidation {
        theta_l1_ac,
        theta0_is_1,
        s_theta_l1,
        thetahat_l1_bv,
        thetahat_integral_2pi,
        s_thetahat_prime_l1,
        tail_variation_decay,
    }
}

// ---------------------------------------------------------------------------
// non-tangential paths
// ---------------------------------------------------------------------------

/// Approach sequence z_k = x_k + i·y_k with |x_k − x₀| ≤ C·y_k, y_k ↓ 0.
#[derive(Clone, Debug)]
pub struct NonTangentialPath {
    pub x0: f64,
    pub aperture: f64,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

impl NonTangentialPath {
    /// Default path: y_k = 2^{−k} for k = 1..=14 with the aperture
    /// saturated, x_k = x₀ + C·y_k (the worst slope the theorem admits).
    pub fn saturated(x0: f64, aperture: f64) -> Self {
        let ys: Vec<f64> = (1..=14).map(|k| (2.0_f64).powi(-k)).collect();
        let xs: Vec<f64> = ys.iter().map(|&y| x0 + aperture * y).collect();
        NonTangentialPath { x0, aperture, xs, ys }
    }

    /// Custom schedules, validated against the aperture bound.
    pub fn custom(x0: f64, aperture: f64, xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, InvertError> {
        if xs.len() != ys.len() || ys.is_empty() {
            return Err(InvertError::Domain("x and y schedules must align and be non-empty"));
        }
        if ys.windows(2).any(|w| w[1] >= w[0]) || ys.iter().any(|&y| !(y > 0.0)) {
            return Err(InvertError::Domain("y schedule must be positive and decreasing"));
        }
        for (k, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
            let ratio = (x - x0).abs() / y;
            if ratio > aperture + 1e-12 {
                return Err(InvertError::ApertureViolation { k, ratio });
            }
        }
        Ok(NonTangentialPath { x0, aperture, xs, ys })
    }
}

// ---------------------------------------------------------------------------
// inversion
// ---------------------------------------------------------------------------

/// What the inversion works from: f itself, or a closed form for f̂.
#[derive(Clone, Debug)]
pub enum InvertSource {
    TimeDomain(FunctionSpec),
    ClosedFormFhat(FunctionSpec),
}

#[derive(Clone, Debug)]
pub struct InversionOutcome {
    pub limit: Complex64,
    /// (y_k, I_k) along the path.
    pub trace: Vec<(f64, Complex64)>,
    pub status: QuadStatus,
    /// The Richardson step assumes first-order convergence in y.
    pub first_order_assumed: bool,
}

fn tails_bounded(f: &FunctionSpec) -> bool {
    [256.0_f64, 512.0, 1024.0]
        .iter()
        .all(|&u| f.eval_or_zero(u).norm().max(f.eval_or_zero(-u).norm()) < 1e3)
}

/// f(t) multiplied by a positive decaying window, with f's tail terms
/// damped by the same window.
fn windowed_spec(
    f: &FunctionSpec,
    weight: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    extra_breaks: &[f64],
    weight_absolute: bool,
) -> FunctionSpec {
    let fc = f.clone();
    let w = weight.clone();
    let eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> =
        Arc::new(move |t: f64| fc.eval_or_zero(t) * w(t));
    let mut spec = FunctionSpec::user_callable(eval, Vec::new(), f.support(), Parity::None)
        .expect("no singular points declared")
        .with_singular_points_merged(f.singular_points().to_vec())
        .with_algebraic_singularities_merged(f.algebraic_singularities());
    let marks: Vec<crate::realfn::SingularPoint> = extra_breaks
        .iter()
        .map(|&b| crate::realfn::SingularPoint {
            at: b,
            kind: crate::realfn::SingularKind::Jump(0.0),
        })
        .collect();
    spec = spec.with_singular_points_merged(marks);

    if weight_absolute && (f.has_absolute_tail_cert() || tails_bounded(f)) && f.is_real_valued() {
        return spec.with_absolute_tail_cert();
    }
    let mut handled = false;
    for side in [Side::Right, Side::Left] {
        let (from, behavior) = f.tail(side);
        if let TailBehavior::Terms(terms) = behavior {
            let sgn = match side {
                Side::Right => 1.0,
                Side::Left => -1.0,
            };
            let damped: Vec<OscTerm> = terms
                .into_iter()
                .map(|t| {
                    let amp = t.amp.clone();
                    let w = weight.clone();
                    OscTerm {
                        coeff: t.coeff,
                        amp: Arc::new(move |u: f64| amp(u) * w(sgn * u).abs()),
                        phase: t.phase,
                        lin: t.lin,
                    }
                })
                .collect();
            spec = spec.with_tail_override(side, from, TailBehavior::Terms(damped));
            handled = true;
        }
    }
    if !handled && weight_absolute && f.has_absolute_tail_cert() {
        spec = spec.with_absolute_tail_cert();
    }
    spec
}

/// One smoothed mean I = (2πy)^{−1} ∫ Θ̂((t−x)/y)·f(t) dt.
pub fn smoothed_mean(
    f: &FunctionSpec,
    kernel: &Kernel,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<Complex64, InvertError> {
    if !(y > 0.0) {
        return Err(InvertError::Domain("y must be positive"));
    }
    let hat = kernel.theta_hat.clone();
    let scale = 1.0 / (2.0 * PI * y);
    let weight: Arc<dyn Fn(f64) -> f64 + Send + Sync> =
        Arc::new(move |t: f64| hat.eval_or_zero((t - x) / y).re * scale);
    let breaks: Vec<f64> = [-64.0, -16.0, -4.0, -1.0, 1.0, 4.0, 16.0, 64.0]
        .iter()
        .map(|&m| x + m * y)
        .collect();
    let spec = windowed_spec(f, weight, &breaks, true);
    let r = quad::integrate(&spec, ExtInterval::full(), tol)?;
    r.value().ok_or(InvertError::NotConverged(r.status))
}

/// (2πy)^{−1} ∫ Θ̂((t−x)/y) dt, which equals 1 for a valid kernel.
pub fn kernel_mass(kernel: &Kernel, x: f64, y: f64, tol: f64) -> Result<f64, InvertError> {
    if !(y > 0.0) {
        return Err(InvertError::Domain("y must be positive"));
    }
    let hat = kernel.theta_hat.clone();
    let scale = 1.0 / (2.0 * PI * y);
    let eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> =
        Arc::new(move |t: f64| c64(hat.eval_or_zero((t - x) / y).re * scale, 0.0));
    let marks: Vec<crate::realfn::SingularPoint> = [-64.0, -16.0, -4.0, -1.0, 1.0, 4.0, 16.0, 64.0]
        .iter()
        .map(|&m| crate::realfn::SingularPoint {
            at: x + m * y,
            kind: crate::realfn::SingularKind::Jump(0.0),
        })
        .collect();
    let spec = FunctionSpec::user_callable(eval, Vec::new(), ExtInterval::full(), Parity::None)
        .map_err(|_| InvertError::Domain("weight failed to register"))?
        .with_singular_points_merged(marks)
        .with_absolute_tail_cert();
    let r = quad::integrate(&spec, ExtInterval::full(), tol)?;
    r.value().map(|v| v.re).ok_or(InvertError::NotConverged(r.status))
}

/// Pointwise inversion along a non-tangential path.  The kernel must pass
/// validation; the path provides the (x_k, y_k) schedule.
pub fn invert_at(
    source: &InvertSource,
    kernel: &Kernel,
    path: &NonTangentialPath,
    tol: f64,
) -> Result<InversionOutcome, InvertError> {
    let validation = validate_kernel(kernel, 1e-6);
    if !validation.all_pass() {
        return Err(InvertError::KernelInvalid(String::from(kernel.name)));
    }

    let mut trace = Vec::with_capacity(path.ys.len());
    let step_tol = (tol * 0.05).max(1e-11);
    for (&x, &y) in path.xs.iter().zip(&path.ys) {
        let ik = match source {
            InvertSource::TimeDomain(f) => smoothed_mean(f, kernel, x, y, step_tol)?,
            InvertSource::ClosedFormFhat(fhat) => {
                // the identity route: (2π)^{−1} ∫ Θ(ys)·e^{isx}·f̂(s) ds
                let theta = kernel.theta.clone();
                let fh = fhat.clone();
                let eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(move |s: f64| {
                    theta.eval_or_zero(y * s).re * fh.eval_or_zero(s) * cis(s * x) / (2.0 * PI)
                });
                let mut spec = FunctionSpec::user_callable(
                    eval,
                    Vec::new(),
                    ExtInterval::full(),
                    Parity::None,
                )
                .map_err(|_| InvertError::Domain("integrand failed to register"))?
                .with_singular_points_merged(fhat.singular_points().to_vec());
                let th_sup = kernel.theta.support();
                if th_sup.lo().is_finite() && th_sup.hi().is_finite() {
                    spec = spec.with_support(
                        ExtInterval::new(th_sup.lo() / y, th_sup.hi() / y)
                            .map_err(|_| InvertError::Domain("bad kernel support"))?,
                    );
                } else {
                    spec = spec.with_absolute_tail_cert();
                }
                let r = quad::integrate(&spec, ExtInterval::full(), step_tol)?;
                r.value().ok_or(InvertError::NotConverged(r.status))?
            }
        };
        trace.push((y, ik));
    }

    // Richardson on the y-halving trace
    let values: Vec<Complex64> = trace.iter().map(|&(_, v)| v).collect();
    let refined = richardson_halving(&values);
    let (limit, status) = match refined.len() {
        0 => (values[0], QuadStatus::Inconclusive),
        1 => (refined[0], QuadStatus::Inconclusive),
        n => {
            let last = refined[n - 1];
            let prev = refined[n - 2];
            let drift = (last - prev).norm();
            let status = if drift <= tol.max(1e-10) * 4.0 {
                QuadStatus::Converged
            } else {
                QuadStatus::Inconclusive
            };
            (last, status)
        }
    };

    Ok(InversionOutcome { limit, trace, status, first_order_assumed: true })
}

// ---------------------------------------------------------------------------
// uniqueness probe
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub max_fhat_on_grid: f64,
    /// Max |recovered f| over the sampled points, when the probe ran.
    pub max_recovered: Option<f64>,
    pub skipped: bool,
}

/// If f̂ vanishes on the grid (within tol), inversion must recover ~0;
/// anything large flags an engine inconsistency.
pub fn uniqueness_probe(
    f: &FunctionSpec,
    s_grid: &[f64],
    tol: f64,
) -> Result<UniquenessReport, InvertError> {
    let mut max_fhat = 0.0_f64;
    for &s in s_grid {
        match fourier::transform_point(f, s, tol.max(1e-9)) {
            Ok(r) => {
                if let Some(v) = r.value() {
                    max_fhat = max_fhat.max(v.norm());
                }
            }
            Err(FourierError::ExistenceRefuted(_)) => {
                max_fhat = f64::INFINITY;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if max_fhat >= tol {
        return Ok(UniquenessReport {
            max_fhat_on_grid: max_fhat,
            max_recovered: None,
            skipped: true,
        });
    }
    let kernel = Kernel::gauss_weierstrass();
    let mut max_rec = 0.0_f64;
    for &x0 in &[-0.9, 0.3, 1.7] {
        let path = NonTangentialPath::saturated(x0, 0.0);
        let out = invert_at(&InvertSource::TimeDomain(f.clone()), &kernel, &path, 1e-6)?;
        max_rec = max_rec.max(out.limit.norm());
    }
    Ok(UniquenessReport {
        max_fhat_on_grid: max_fhat,
        max_recovered: Some(max_rec),
        skipped: false,
    })
}

// ---------------------------------------------------------------------------
// stationary-phase asymptotics for the one-sided chirp
// ---------------------------------------------------------------------------

/// Leading-order stationary-phase value of ∫_0^∞ x^α e^{i(x^ν − sx)} dx for
/// large s > 0: with x₀ = ν^{−1/(ν−1)} and φ(x) = x^ν − x it reads
/// √(2π/(ν(ν−1)))·e^{iπ/4}·x₀^{α−(ν−2)/2}·e^{iφ(x₀)·s^{ν/(ν−1)}}·s^{(2α+2−ν)/(2(ν−1))}.
pub fn stationary_phase_asymptotic(alpha: f64, nu: f64, s: f64) -> Result<Complex64, InvertError> {
    if !(nu > 1.0) {
        return Err(InvertError::Domain("ν must exceed 1"));
    }
    if !(s > 0.0) {
        return Err(InvertError::Domain("s must be positive"));
    }
    let x0 = nu.powf(-1.0 / (nu - 1.0));
    let phi_x0 = x0.powf(nu) - x0;
    let amp = (2.0 * PI / (nu * (nu - 1.0))).sqrt() * x0.powf(alpha - (nu - 2.0) / 2.0);
    let growth = s.powf((2.0 * alpha + 2.0 - nu) / (2.0 * (nu - 1.0)));
    let phase = PI / 4.0 + phi_x0 * s.powf(nu / (nu - 1.0));
    Ok(amp * growth * cis(phase))
}

// ---------------------------------------------------------------------------
// the non-reversible chirp fixture
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct NonReversibleReport {
    pub forward_statuses: Vec<(f64, QuadStatus)>,
    /// Oscillation power of the transform's tail, ν/(ν−1).
    pub phase_exponent: f64,
    /// Amplitude growth of the transform's tail, (2α+2−ν)/(2(ν−1)).
    pub growth_exponent: f64,
    /// True when the inverse-transform integral is classified divergent.
    pub inverse_diverges: bool,
}

/// For ν > 2 and ν/2 ≤ α < ν−1 the forward transform of the one-sided
/// chirp converges at every s while the inverse integral of the grown
/// transform fails the γ > δ+1 test at every point.
pub fn nonreversible_fixture(
    alpha: f64,
    nu: f64,
    tol: f64,
) -> Result<NonReversibleReport, InvertError> {
    if !(nu > 2.0) || !(nu / 2.0 <= alpha && alpha < nu - 1.0) {
        return Err(InvertError::Precondition("need ν > 2 and ν/2 ≤ α < ν−1"));
    }
    let f = FunctionSpec::chirp_one_sided(alpha, nu);
    let mut forward = Vec::new();
    for &s in &[1.0, 5.0] {
        let r = fourier::transform_point(&f, s, tol)?;
        forward.push((s, r.status));
    }
    let phase_exponent = nu / (nu - 1.0);
    let growth_exponent = (2.0 * alpha + 2.0 - nu) / (2.0 * (nu - 1.0));
    let inverse_diverges = !(phase_exponent > growth_exponent + 1.0);
    Ok(NonReversibleReport {
        forward_statuses: forward,
        phase_exponent,
        growth_exponent,
        inverse_diverges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_kernel_passes_all_clauses() {
        let v = validate_kernel(&Kernel::gauss_weierstrass(), 1e-8);
        assert!(v.all_pass(), "{v:?}");
    }

    #[test]
    fn abel_kernel_passes_all_clauses() {
        let v = validate_kernel(&Kernel::abel_poisson(), 1e-8);
        assert!(v.all_pass(), "{v:?}");
    }

    #[test]
    fn cesaro_kernel_fails_s_deriv_clause() {
        let v = validate_kernel(&Kernel::cesaro_fejer(), 1e-8);
        assert!(!v.all_pass());
        assert_eq!(v.s_thetahat_prime_l1, ClauseOutcome::Fail, "{v:?}");
        // the O(1/x) tail-variation clause holds for the Fejér kernel; the
        // failure is specifically the sΘ̂′ integrability
        assert_eq!(v.tail_variation_decay, ClauseOutcome::Pass, "{v:?}");
    }

    #[test]
    fn kernel_mass_identity() {
        let k = Kernel::gauss_weierstrass();
        for y in [1.0, 0.25, 1.0 / 16.0] {
            let m = kernel_mass(&k, 0.7, y, 1e-10).unwrap();
            assert!((m - 1.0).abs() < 1e-8, "y={y}: {m}");
        }
    }

    #[test]
    fn tangential_path_rejected() {
        // x_k − x₀ = √y_k gives |x−x₀|/y = y^{−1/2} → ∞
        let ys: Vec<f64> = (1..=10).map(|k| (2.0_f64).powi(-k)).collect();
        let xs: Vec<f64> = ys.iter().map(|&y| 1.0 + y.sqrt()).collect();
        let r = NonTangentialPath::custom(1.0, 1.0, xs, ys);
        assert!(matches!(r, Err(InvertError::ApertureViolation { .. })));
    }

    #[test]
    fn invert_gaussian_at_origin() {
        // e^{−x²} at 0 recovers 1
        let f = FunctionSpec::gauss();
        let path = NonTangentialPath::saturated(0.0, 0.0);
        let out =
            invert_at(&InvertSource::TimeDomain(f), &Kernel::gauss_weierstrass(), &path, 1e-6)
                .unwrap();
        assert!((out.limit - c64(1.0, 0.0)).norm() < 1e-4, "got {:?}", out.limit);
    }

    #[test]
    fn invert_rational_odd_at_one() {
        // x/(x²+1) at x₀=1 recovers 1/2
        let f = FunctionSpec::rational_odd();
        let path = NonTangentialPath::saturated(1.0, 1.0);
        let out =
            invert_at(&InvertSource::TimeDomain(f), &Kernel::gauss_weierstrass(), &path, 1e-5)
                .unwrap();
        assert!((out.limit - c64(0.5, 0.0)).norm() < 1e-3, "got {:?}", out.limit);
    }

    #[test]
    fn cesaro_kernel_refused_for_inversion() {
        let f = FunctionSpec::gauss();
        let path = NonTangentialPath::saturated(0.0, 0.0);
        let r = invert_at(&InvertSource::TimeDomain(f), &Kernel::cesaro_fejer(), &path, 1e-6);
        assert!(matches!(r, Err(InvertError::KernelInvalid(_))));
    }

    #[test]
    fn stationary_phase_reduces_to_fresnel_at_nu_2() {
        // at ν=2, α=0 the formula is exactly √π·e^{i(π−s²)/4}
        let s = 4.0;
        let v = stationary_phase_asymptotic(0.0, 2.0, s).unwrap();
        let expect = PI.sqrt() * cis((PI - s * s) / 4.0);
        assert!((v - expect).norm() < 1e-12, "{v:?} vs {expect:?}");
    }

    #[test]
    fn stationary_phase_domain_errors() {
        assert!(stationary_phase_asymptotic(0.0, 1.0, 3.0).is_err());
        assert!(stationary_phase_asymptotic(0.0, 2.0, -1.0).is_err());
    }

    #[test]
    fn nonreversible_precondition() {
        assert!(matches!(
            nonreversible_fixture(0.0, 3.0, 1e-6),
            Err(InvertError::Precondition(_))
        ));
    }

    #[test]
    fn uniqueness_zero_function() {
        let f = FunctionSpec::zero();
        let rep = uniqueness_probe(&f, &[-1.0, 0.0, 1.0, 2.0], 1e-6).unwrap();
        assert!(!rep.skipped);
        assert!(rep.max_recovered.unwrap() < 1e-6);
    }

    #[test]
    fn uniqueness_skips_nonnull_input() {
        let f = FunctionSpec::gauss();
        let rep = uniqueness_probe(&f, &[0.0, 0.5], 1e-6).unwrap();
        assert!(rep.skipped);
    }
}
