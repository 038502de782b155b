//! Adaptive improper-quadrature engine for conditionally convergent
//! integrals: Gauss–Kronrod panels with bisection, endpoint-singularity
//! substitutions, absolutely-decaying tails through a reciprocal map,
//! oscillatory tails by between-zeros lobe sums with nonlinear acceleration,
//! and explicit divergence / principal-value detection.
//!
//! Two-sided improper integrals are evaluated as two fully independent
//! one-sided tails, so a symmetric-truncation principal value can never be
//! mistaken for convergence.

use alloc::boxed::Box;
use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
// in std-linked test graphs the inherent float methods shadow this trait
#[allow(unused_imports)]
use num_traits::Float;

use crate::accel::{accelerate, AccelResult};
use crate::realfn::{
    c64, cis, ExtInterval, FunctionSpec, OscTerm, Parity, PhasePart, Side, TailBehavior,
};

/// Default absolute tolerance on corpus scale.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Default evaluation budget per call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Documented safety factor: for the built-in corpus the true error of a
/// `Converged` result is bounded by `SAFETY_FACTOR · abs_error_estimate`.
pub const SAFETY_FACTOR: f64 = 10.0;

const MAX_LOBES: usize = 2048;
const LOBE_BATCH: usize = 8;
const ACCEL_WINDOW: usize = 48;
const MAX_DOUBLINGS: usize = 48;
/// Divergence is only declared after this many successive doublings of the
/// truncation point show no Cauchy progress.
const MIN_DOUBLINGS_FOR_DIVERGENCE: usize = 8;
const MAX_DEPTH: u16 = 58;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadStatus {
    Converged,
    Diverged,
    PrincipalValueOnly,
    Inconclusive,
}

impl QuadStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuadStatus::Converged => "converged",
            QuadStatus::Diverged => "diverged",
            QuadStatus::PrincipalValueOnly => "pv_only",
            QuadStatus::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for QuadStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyTag {
    DirectPanels,
    EndpointSubstitution,
    EndpointReduction,
    AbsoluteTail,
    BvTail,
    ZeroPartition,
    StationaryPhase,
    DoublingTail,
    PartsTransform,
    ModelPhase,
    ExistenceRefused,
}

impl StrategyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            StrategyTag::DirectPanels => "direct_panels",
            StrategyTag::EndpointSubstitution => "endpoint_substitution",
            StrategyTag::EndpointReduction => "endpoint_reduction",
            StrategyTag::AbsoluteTail => "absolute_tail",
            StrategyTag::BvTail => "bv_tail",
            StrategyTag::ZeroPartition => "zero_partition",
            StrategyTag::StationaryPhase => "stationary_phase",
            StrategyTag::DoublingTail => "doubling_tail",
            StrategyTag::PartsTransform => "parts_transform",
            StrategyTag::ModelPhase => "model_phase",
            StrategyTag::ExistenceRefused => "existence_refused",
        }
    }
}

impl fmt::Display for StrategyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one improper-integral evaluation.
#[derive(Clone, Debug)]
pub struct QuadResult {
    value: Complex64,
    value_available: bool,
    pub abs_error_estimate: f64,
    pub status: QuadStatus,
    pub evaluations: u64,
    pub strategy_trace: Vec<StrategyTag>,
}

impl QuadResult {
    pub(crate) fn converged(value: Complex64, err: f64, evals: u64, trace: Vec<StrategyTag>) -> Self {
        QuadResult {
            value,
            value_available: true,
            abs_error_estimate: err,
            status: QuadStatus::Converged,
            evaluations: evals,
            strategy_trace: trace,
        }
    }

    pub(crate) fn failed(status: QuadStatus, evals: u64, trace: Vec<StrategyTag>) -> Self {
        QuadResult {
            value: c64(0.0, 0.0),
            value_available: false,
            abs_error_estimate: f64::INFINITY,
            status,
            evaluations: evals,
            strategy_trace: trace,
        }
    }

    pub(crate) fn inconclusive(best: Complex64, err: f64, evals: u64, trace: Vec<StrategyTag>) -> Self {
        QuadResult {
            value: best,
            value_available: false,
            abs_error_estimate: err,
            status: QuadStatus::Inconclusive,
            evaluations: evals,
            strategy_trace: trace,
        }
    }

    /// The integral value when the evaluation converged; `None` for
    /// Diverged / PrincipalValueOnly / Inconclusive results.
    pub fn value(&self) -> Option<Complex64> {
        self.value_available.then_some(self.value)
    }

    /// Best available numeric value regardless of status (diagnostics only).
    pub fn value_unchecked(&self) -> Complex64 {
        self.value
    }

    pub fn is_converged(&self) -> bool {
        self.status == QuadStatus::Converged
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuadError {
    /// Malformed interval or parameters outside the operation's domain.
    Domain(&'static str),
    /// The phase handed to `oscillatory_tail` is not monotone beyond `from`.
    NonMonotonePhase,
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::Domain(msg) => write!(f, "domain error: {msg}"),
            QuadError::NonMonotonePhase => {
                f.write_str("phase is not monotone beyond the start point")
            }
        }
    }
}

impl core::error::Error for QuadError {}

// ---------------------------------------------------------------------------
// evaluation context
// ---------------------------------------------------------------------------

struct Ctx {
    used: u64,
    budget: u64,
    trace: Vec<StrategyTag>,
}

impl Ctx {
    fn new(budget: u64) -> Self {
        Ctx { used: 0, budget, trace: Vec::new() }
    }

    fn charge(&mut self, n: u64) -> bool {
        self.used += n;
        self.used <= self.budget
    }

    fn tag(&mut self, t: StrategyTag) {
        if !self.trace.contains(&t) {
            self.trace.push(t);
        }
    }
}

// ---------------------------------------------------------------------------
// Gauss–Kronrod 15-point base rule
// ---------------------------------------------------------------------------

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

type RegionFn<'a> = Box<dyn Fn(f64) -> Complex64 + 'a>;

/// One GK15 panel: returns (integral, error estimate).
fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_g = c64(0.0, 0.0);
    let mut res_k = WGK[7] * f_center;
    let mut res_abs = WGK[7] * f_center.norm();

    let mut fv = [c64(0.0, 0.0); 14];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        let sum = f1 + f2;
        res_k += WGK[j] * sum;
        res_abs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            res_g += WG[j / 2] * sum;
        }
    }
    res_g += WG[3] * f_center;

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[2 * j] - mean).norm() + (fv[2 * j + 1] - mean).norm());
    }

    let err_raw = ((res_k - res_g) * half).norm();
    res_asc *= half.abs();
    res_abs *= half.abs();

    let mut err = err_raw;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    (res_k * half, err)
}

// ---------------------------------------------------------------------------
// adaptive worklist over possibly transformed regions
// ---------------------------------------------------------------------------

struct Panel {
    err: f64,
    region: usize,
    a: f64,
    b: f64,
    val: Complex64,
    depth: u16,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(core::cmp::Ordering::Equal)
    }
}

struct AdaptOutcome {
    value: Complex64,
    err: f64,
    converged: bool,
}

fn unrefinable(p: &Panel) -> bool {
    p.depth >= MAX_DEPTH || (p.b - p.a) < 1e-15 * (1.0 + p.a.abs().max(p.b.abs()))
}

/// Worst-first adaptive bisection across a set of seeded regions.
fn adaptive_multi(
    ctx: &mut Ctx,
    regions: &[RegionFn<'_>],
    seeds: &[(usize, f64, f64)],
    tol_abs: f64,
) -> AdaptOutcome {
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut stuck_err = 0.0;
    let mut total = c64(0.0, 0.0);
    let mut live_err = 0.0_f64; // incrementally maintained Σ of panel errors

    for &(r, a, b) in seeds {
        if !(a < b) {
            continue;
        }
        if !ctx.charge(15) {
            return AdaptOutcome { value: total, err: f64::INFINITY, converged: false };
        }
        let (v, e) = gk15(&regions[r], a, b);
        total += v;
        live_err += e;
        heap.push(Panel { err: e, region: r, a, b, val: v, depth: 0 });
    }

    let mut iters: u64 = 0;
    while live_err + stuck_err > tol_abs {
        // periodically re-sum to shed floating-point drift from the
        // incremental updates
        iters += 1;
        if iters % 8192 == 0 {
            live_err = heap.iter().map(|p| p.err).sum();
        }
        let Some(worst) = heap.pop() else { break };
        if worst.err == 0.0 {
            // max priority is zero: everything left is frozen
            heap.push(worst);
            break;
        }
        if unrefinable(&worst) {
            stuck_err += worst.err;
            live_err -= worst.err;
            let mut frozen = worst;
            frozen.err = 0.0;
            heap.push(frozen);
            continue;
        }
        if !ctx.charge(30) {
            heap.push(worst);
            return AdaptOutcome { value: total, err: f64::INFINITY, converged: false };
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(&regions[worst.region], worst.a, mid);
        let (v2, e2) = gk15(&regions[worst.region], mid, worst.b);
        total += v1 + v2 - worst.val;
        live_err += e1 + e2 - worst.err;
        heap.push(Panel {
            err: e1,
            region: worst.region,
            a: worst.a,
            b: mid,
            val: v1,
            depth: worst.depth + 1,
        });
        heap.push(Panel {
            err: e2,
            region: worst.region,
            a: mid,
            b: worst.b,
            val: v2,
            depth: worst.depth + 1,
        });
    }

    let err: f64 = heap.iter().map(|p| p.err).sum::<f64>() + stuck_err;
    AdaptOutcome { value: total, err, converged: err <= tol_abs * 1.5 }
}

/// Adaptive integration of a single closure over [a, b].
fn adaptive_one(
    ctx: &mut Ctx,
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol_abs: f64,
) -> AdaptOutcome {
    let regions: [RegionFn<'_>; 1] = [Box::new(f)];
    adaptive_multi(ctx, &regions, &[(0, a, b)], tol_abs)
}

// ---------------------------------------------------------------------------
// tails
// ---------------------------------------------------------------------------

enum TailOutcome {
    Converged(Complex64, f64),
    Diverged,
    Inconclusive(Complex64, f64),
}

fn tail_parts(t: TailOutcome) -> (Complex64, f64) {
    match t {
        TailOutcome::Converged(v, e) | TailOutcome::Inconclusive(v, e) => (v, e),
        TailOutcome::Diverged => (c64(0.0, 0.0), f64::INFINITY),
    }
}

/// Certified absolutely integrable tail: map [from, ∞) → (0, 1] by
/// u = from − 1 + 1/v and integrate adaptively.
fn absolute_tail(
    ctx: &mut Ctx,
    f: &dyn Fn(f64) -> Complex64,
    from: f64,
    tol_abs: f64,
) -> TailOutcome {
    ctx.tag(StrategyTag::AbsoluteTail);
    let base = from - 1.0;
    let g = |v: f64| {
        if v <= 0.0 {
            return c64(0.0, 0.0);
        }
        let u = base + 1.0 / v;
        f(u) / (v * v)
    };
    let out = adaptive_one(ctx, &g, 0.0, 1.0, tol_abs);
    if out.converged {
        TailOutcome::Converged(out.value, out.err)
    } else {
        TailOutcome::Inconclusive(out.value, out.err)
    }
}

fn median_of(xs: &[f64]) -> f64 {
    let mut v: Vec<f64> = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    v[v.len() / 2]
}

/// (recent, earlier) medians over disjoint windows an index-doubling apart;
/// `None` until the sequence is long enough to judge.
fn segment_trend(mags: &[f64]) -> Option<(f64, f64)> {
    let n = mags.len();
    if n < 6 {
        return None;
    }
    let recent = median_of(&mags[n - 3..]);
    let half = n / 2;
    let earlier = median_of(&mags[half.saturating_sub(3)..half]);
    Some((recent, earlier))
}

/// Doubling truncations with acceleration; declares divergence when segment
/// contributions stop shrinking across ≥ 8 successive doublings.
fn doubling_tail(
    ctx: &mut Ctx,
    f: &dyn Fn(f64) -> Complex64,
    from: f64,
    tol_abs: f64,
) -> TailOutcome {
    ctx.tag(StrategyTag::DoublingTail);
    let mut t = from.max(1e-3);
    let mut sums: Vec<Complex64> = Vec::new();
    let mut mags: Vec<f64> = Vec::new();
    let mut acc = c64(0.0, 0.0);
    let mut acc_err = 0.0;
    let mut best: Option<(Complex64, f64)> = None;

    for j in 0..MAX_DOUBLINGS {
        let next = t * 2.0;
        let seg = adaptive_one(ctx, f, t, next, tol_abs * 0.25);
        if seg.err.is_infinite() {
            return TailOutcome::Inconclusive(acc, f64::INFINITY);
        }
        acc += seg.value;
        acc_err += seg.err;
        sums.push(acc);
        mags.push(seg.value.norm());
        t = next;

        let n = mags.len();
        // plain truncation convergence: two successive negligible segments
        if n >= 2 && mags[n - 1] + mags[n - 2] <= tol_abs * 0.5 {
            return TailOutcome::Converged(acc, (acc_err + mags[n - 1]).max(1e-18));
        }
        if let Some((recent, earlier)) = segment_trend(&mags) {
            let a = accelerate(&sums);
            let decaying = recent <= 0.98 * earlier || recent < 1e-16;
            if decaying && a.err_est + acc_err <= tol_abs {
                return TailOutcome::Converged(a.value, (a.err_est + acc_err).max(1e-18));
            }
            if best.as_ref().map_or(true, |(_, e)| a.err_est < *e) {
                best = Some((a.value, a.err_est + acc_err));
            }
            if j + 1 >= MIN_DOUBLINGS_FOR_DIVERGENCE
                && recent >= 0.98 * earlier
                && recent > 1e-14
            {
                return TailOutcome::Diverged;
            }
        }
    }
    let (v, e) = best.unwrap_or((acc, f64::INFINITY));
    TailOutcome::Inconclusive(v, e)
}

/// Total oscillation phase of one tail term: ψ(u) = c·u^p + lin·u.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ModPhase {
    pub part: PhasePart,
    pub lin: f64,
}

impl ModPhase {
    fn eval(&self, u: f64) -> f64 {
        self.part.eval(u) + self.lin * u
    }
    fn slope(&self, u: f64) -> f64 {
        self.part.deriv(u) + self.lin
    }
    fn curvature(&self, u: f64) -> f64 {
        self.part.second(u)
    }
    /// Identically constant phase (no oscillation at all).
    fn is_static(&self) -> bool {
        if self.part.coeff == 0.0 {
            self.lin == 0.0
        } else if self.part.exponent == 1.0 {
            self.part.coeff + self.lin == 0.0
        } else {
            false
        }
    }
    /// Stationary point of ψ in (0, ∞), if any.
    fn stationary_point(&self) -> Option<f64> {
        if self.part.coeff == 0.0 || self.part.exponent == 1.0 {
            return None;
        }
        let ratio = -self.lin / (self.part.coeff * self.part.exponent);
        if !(ratio > 0.0) {
            return None;
        }
        Some(ratio.powf(1.0 / (self.part.exponent - 1.0)))
    }
}

/// Solve ψ(x) = target on the monotone stretch beyond `start`, walking in the
/// direction of increasing x.
fn solve_crossing(phase: &ModPhase, target: f64, start: f64) -> f64 {
    let probe = start + 1e-9 * (1.0 + start.abs());
    let sgn = {
        let d = phase.eval(probe) - phase.eval(start);
        if d == 0.0 {
            phase.slope(probe).signum()
        } else {
            d.signum()
        }
    };
    let slope0 = phase.slope(start).abs().max(1e-12);
    let mut step = (PI / slope0).min(1e6).max(1e-12);
    let g = |x: f64| (phase.eval(x) - target) * sgn;
    let mut a = start;
    let mut b = start + step;
    let mut expansions = 0;
    while g(b) < 0.0 {
        a = b;
        step *= 2.0;
        b = a + step;
        expansions += 1;
        if expansions > 200 {
            return b;
        }
    }
    let mut fa = g(a);
    for _ in 0..80 {
        let mid = 0.5 * (a + b);
        let fm = g(mid);
        if fm == 0.0 || (b - a) < 1e-14 * (1.0 + mid.abs()) {
            return mid;
        }
        if (fa > 0.0) == (fm > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// True when lobe magnitudes genuinely shrink across an index doubling;
/// guards the extrapolation against Abel-summing a divergent series.
fn lobe_mags_decay(mags: &[f64]) -> bool {
    let n = mags.len();
    if n < 12 {
        return true; // too early to judge; the drift test still applies
    }
    let recent = median_of(&mags[n - 4..]);
    let half = n / 2;
    let earlier = median_of(&mags[half - 4..half]);
    recent <= 0.985 * earlier || recent <= 1e-14 * (1.0 + earlier)
}

fn lobe_divergence(mags: &[f64]) -> bool {
    let n = mags.len();
    if n < 16 {
        return false;
    }
    let recent = median_of(&mags[n - 4..]);
    let half = n / 2;
    let earlier = median_of(&mags[half - 4..half]);
    if n < 64 {
        return recent > 1.5 * earlier && recent > 1e-12;
    }
    recent >= 0.985 * earlier && recent > 1e-13
}

/// Between-zeros lobe summation with acceleration over [start, ∞).  The true
/// closure is integrated on each lobe, so an approximate phase model only
/// affects lobe placement, never the value.
fn lobe_tail(
    ctx: &mut Ctx,
    f: &dyn Fn(f64) -> Complex64,
    phase: &ModPhase,
    start: f64,
    tol_abs: f64,
) -> TailOutcome {
    let psi0 = phase.eval(start);
    let dir = {
        let s = phase.slope(start + 1e-9 * (1.0 + start.abs()));
        if s == 0.0 {
            1.0
        } else {
            s.signum()
        }
    };
    let mut k = if dir > 0.0 {
        (psi0 / PI).floor() + 1.0
    } else {
        (psi0 / PI).ceil() - 1.0
    };

    let mut sums: Vec<Complex64> = Vec::new();
    let mut mags: Vec<f64> = Vec::new();
    let mut acc = c64(0.0, 0.0);
    let mut panel_err = 0.0;
    let mut prev_est: Option<Complex64> = None;
    let mut stable_hits = 0;

    let lobe_tol = tol_abs / 64.0;
    let mut x = start;

    for lobe_idx in 0..MAX_LOBES {
        let target = k * PI;
        let next = solve_crossing(phase, target, x);
        let seg = adaptive_one(ctx, f, x, next, lobe_tol);
        if seg.err.is_infinite() {
            return TailOutcome::Inconclusive(acc, f64::INFINITY);
        }
        acc += seg.value;
        panel_err += seg.err;
        sums.push(acc);
        mags.push(seg.value.norm());
        x = next;
        k += dir;

        if (lobe_idx + 1) % LOBE_BATCH == 0 && sums.len() >= 6 {
            let lo = sums.len().saturating_sub(ACCEL_WINDOW);
            let a: AccelResult = accelerate(&sums[lo..]);
            if let Some(prev) = prev_est {
                let drift = (a.value - prev).norm();
                let est = drift + 0.5 * a.err_est;
                if est <= tol_abs * 0.5 && lobe_mags_decay(&mags) {
                    return TailOutcome::Converged(a.value, (est + panel_err).max(1e-18));
                }
                if drift <= tol_abs {
                    stable_hits += 1;
                } else {
                    stable_hits = 0;
                }
                if stable_hits >= 3 && lobe_mags_decay(&mags) {
                    return TailOutcome::Converged(a.value, (est + panel_err).max(1e-18));
                }
            }
            prev_est = Some(a.value);

            if lobe_divergence(&mags) {
                return TailOutcome::Diverged;
            }
        }
    }

    if !lobe_mags_decay(&mags) || lobe_divergence(&mags) {
        TailOutcome::Diverged
    } else {
        match prev_est {
            Some(v) => TailOutcome::Inconclusive(v, tol_abs * 16.0),
            None => TailOutcome::Inconclusive(acc, f64::INFINITY),
        }
    }
}

/// Finite oscillatory stretch [a, b] with monotone phase: panels seeded at
/// the π-crossings, summed directly.
fn finite_oscillatory(
    ctx: &mut Ctx,
    f: &dyn Fn(f64) -> Complex64,
    phase: &ModPhase,
    a: f64,
    b: f64,
    tol_abs: f64,
) -> AdaptOutcome {
    let psi_a = phase.eval(a);
    let psi_b = phase.eval(b);
    let span = (psi_b - psi_a).abs();
    let n_lobes = (span / PI).ceil() as usize;
    if n_lobes <= 1 || n_lobes > 40_000 {
        return adaptive_one(ctx, f, a, b, tol_abs);
    }
    let dir = (psi_b - psi_a).signum();
    let mut seeds = Vec::with_capacity(n_lobes + 1);
    let mut x = a;
    let mut k = if dir > 0.0 {
        (psi_a / PI).floor() + 1.0
    } else {
        (psi_a / PI).ceil() - 1.0
    };
    loop {
        let target = k * PI;
        if (dir > 0.0 && target >= psi_b) || (dir < 0.0 && target <= psi_b) {
            break;
        }
        let next = solve_crossing(phase, target, x).min(b);
        if next > x {
            seeds.push((0usize, x, next));
            x = next;
        }
        k += dir;
        if seeds.len() > n_lobes + 4 {
            break;
        }
    }
    if x < b {
        seeds.push((0usize, x, b));
    }
    let regions: [RegionFn<'_>; 1] = [Box::new(f)];
    adaptive_multi(ctx, &regions, &seeds, tol_abs)
}

/// One oscillatory tail term over [from, ∞): stationary-point region handled
/// by direct panels, the rest by lobe summation.
fn oscillatory_term_tail(
    ctx: &mut Ctx,
    f: &dyn Fn(f64) -> Complex64,
    phase: &ModPhase,
    from: f64,
    tol_abs: f64,
) -> TailOutcome {
    if phase.is_static() {
        return doubling_tail(ctx, f, from, tol_abs);
    }
    ctx.tag(StrategyTag::ZeroPartition);

    let mut acc = c64(0.0, 0.0);
    let mut err = 0.0;
    let mut lobe_start = from;

    if let Some(u_star) = phase.stationary_point() {
        let curvature = phase.curvature(u_star).abs();
        if u_star > from && curvature > 0.0 {
            ctx.tag(StrategyTag::StationaryPhase);
            // half-width h with |ψ''|·h² ≤ π around the stationary point
            let h = (PI / curvature).sqrt();
            let lo = (u_star - h).max(from);
            let hi = u_star + h;
            if lo > from {
                let pre = finite_oscillatory(ctx, f, phase, from, lo, tol_abs * 0.3);
                if pre.err.is_infinite() {
                    return TailOutcome::Inconclusive(acc, f64::INFINITY);
                }
                acc += pre.value;
                err += pre.err;
            }
            let mid = adaptive_one(ctx, f, lo, hi, tol_abs * 0.2);
            if mid.err.is_infinite() {
                return TailOutcome::Inconclusive(acc, f64::INFINITY);
            }
            acc += mid.value;
            err += mid.err;
            lobe_start = hi;
        }
    }

    match lobe_tail(ctx, f, phase, lobe_start, tol_abs * 0.5) {
        TailOutcome::Converged(v, e) => TailOutcome::Converged(acc + v, err + e),
        TailOutcome::Diverged => TailOutcome::Diverged,
        TailOutcome::Inconclusive(v, e) => TailOutcome::Inconclusive(acc + v, err + e),
    }
}

// ---------------------------------------------------------------------------
// engine problem assembly
// ---------------------------------------------------------------------------

/// How one side's infinite tail is treated.
pub(crate) enum TailPlan<'a> {
    None,
    Absolute,
    /// Exact oscillatory decomposition Σ cⱼ·Aⱼ(u)·e^{i(φⱼ(u) + lin·u)}
    /// beyond `from` (u is the outward coordinate).
    Terms { from: f64, terms: &'a [OscTerm], lin: f64 },
    /// True closure integrated on lobes of a model phase beyond `from`.
    ModelPhase { from: f64, phase: ModPhase },
    Unknown,
}

pub(crate) struct Problem<'a> {
    pub eval: &'a dyn Fn(f64) -> Complex64,
    pub breakpoints: Vec<f64>,
    pub alg_sing: Vec<(f64, f64)>,
    pub lo: f64,
    pub hi: f64,
    pub right: TailPlan<'a>,
    pub left: TailPlan<'a>,
    pub odd_symmetric: bool,
    pub tol: f64,
    pub budget: u64,
}

fn run_tail(
    ctx: &mut Ctx,
    eval_outward: &dyn Fn(f64) -> Complex64,
    plan: &TailPlan<'_>,
    start: f64,
    tol_abs: f64,
) -> TailOutcome {
    match plan {
        TailPlan::None => TailOutcome::Converged(c64(0.0, 0.0), 0.0),
        TailPlan::Absolute => absolute_tail(ctx, eval_outward, start, tol_abs),
        TailPlan::Unknown => doubling_tail(ctx, eval_outward, start, tol_abs),
        TailPlan::ModelPhase { phase, .. } => {
            ctx.tag(StrategyTag::ModelPhase);
            lobe_tail(ctx, eval_outward, phase, start, tol_abs)
        }
        TailPlan::Terms { terms, lin, .. } => {
            if terms.is_empty() {
                return TailOutcome::Converged(c64(0.0, 0.0), 0.0);
            }
            let per_term = tol_abs / terms.len() as f64;
            let mut acc = c64(0.0, 0.0);
            let mut err = 0.0;
            let mut inconclusive = false;
            for t in terms.iter() {
                let phase = ModPhase { part: t.phase, lin: t.lin + lin };
                // tag BV-style tails (no intrinsic phase, oscillation only
                // from the modulation) distinctly from zero partitions of
                // the function's own phase
                if t.phase.coeff == 0.0 && *lin != 0.0 {
                    ctx.tag(StrategyTag::BvTail);
                }
                let coeff = t.coeff;
                let amp = t.amp.clone();
                let term_eval = move |u: f64| coeff * amp(u) * cis(phase.eval(u));
                match oscillatory_term_tail(ctx, &term_eval, &phase, start.max(1e-12), per_term) {
                    TailOutcome::Converged(v, e) => {
                        acc += v;
                        err += e;
                    }
                    TailOutcome::Diverged => return TailOutcome::Diverged,
                    TailOutcome::Inconclusive(v, e) => {
                        acc += v;
                        err += e;
                        inconclusive = true;
                    }
                }
            }
            if inconclusive {
                TailOutcome::Inconclusive(acc, err)
            } else {
                TailOutcome::Converged(acc, err)
            }
        }
    }
}

/// Region with an algebraic endpoint singularity (x−p)^α, α ∈ (−1, 0):
/// substitute x = p ± tᵐ so the transformed integrand is bounded.
fn push_subst_region<'a>(
    regions: &mut Vec<RegionFn<'a>>,
    seeds: &mut Vec<(usize, f64, f64)>,
    f: &'a dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    alpha: f64,
    sing_at_left: bool,
) {
    let m = ((2.0 / (1.0 + alpha)).ceil() as i32).clamp(2, 12);
    let mf = m as f64;
    let width = b - a;
    let t_hi = width.powf(1.0 / mf);
    let idx = regions.len();
    if sing_at_left {
        regions.push(Box::new(move |t: f64| {
            let x = a + t.powi(m);
            if x <= a || x > b {
                return c64(0.0, 0.0);
            }
            f(x) * (mf * t.powi(m - 1))
        }));
    } else {
        regions.push(Box::new(move |t: f64| {
            let x = b - t.powi(m);
            if x < a || x >= b {
                return c64(0.0, 0.0);
            }
            f(x) * (mf * t.powi(m - 1))
        }));
    }
    seeds.push((idx, 0.0, t_hi));
}

pub(crate) fn run_problem(p: Problem<'_>) -> QuadResult {
    let mut ctx = Ctx::new(p.budget);
    let tol = p.tol;

    let left_infinite = p.lo == f64::NEG_INFINITY;
    let right_infinite = p.hi == f64::INFINITY;

    // tail start points must clear every breakpoint and the decomposition
    // validity floor
    let bp_reach = p
        .breakpoints
        .iter()
        .fold(0.0_f64, |m, &b| m.max(b.abs()))
        .max(1.0)
        + 0.0;
    let right_from = match &p.right {
        TailPlan::Terms { from, .. } | TailPlan::ModelPhase { from, .. } => from.max(bp_reach),
        _ => bp_reach,
    };
    let left_from = match &p.left {
        TailPlan::Terms { from, .. } | TailPlan::ModelPhase { from, .. } => from.max(bp_reach),
        _ => bp_reach,
    };

    let right_start = if right_infinite { right_from.max(p.lo) } else { 0.0 };
    let left_start = if left_infinite { left_from.max(-p.hi) } else { 0.0 };

    let fin_lo = if left_infinite { -left_start } else { p.lo };
    let fin_hi = if right_infinite { right_start } else { p.hi };

    // --- finite part -------------------------------------------------------
    let mut finite_val = c64(0.0, 0.0);
    let mut finite_err = 0.0;
    let mut finite_ok = true;

    if fin_lo < fin_hi {
        ctx.tag(StrategyTag::DirectPanels);
        let mut cuts = vec![fin_lo];
        for &b in &p.breakpoints {
            if b > fin_lo && b < fin_hi {
                cuts.push(b);
            }
        }
        cuts.push(fin_hi);
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        // very wide panels hide algebraically decaying mass from the point
        // rule: ladder them geometrically inward from both ends
        let mut extra = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a > 128.0 {
                let mut step = 64.0;
                while a + step < b - step {
                    extra.push(a + step);
                    extra.push(b - step);
                    step *= 4.0;
                }
            }
        }
        cuts.extend(extra);
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();

        let mut regions: Vec<RegionFn<'_>> = Vec::new();
        let mut seeds: Vec<(usize, f64, f64)> = Vec::new();

        let find_sing = |x: f64| -> Option<f64> {
            p.alg_sing
                .iter()
                .find(|(pt, _)| (pt - x).abs() <= 1e-12 * (1.0 + x.abs()))
                .map(|&(_, a)| a)
        };

        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            match (find_sing(a), find_sing(b)) {
                (Some(alpha), None) => {
                    ctx.tag(StrategyTag::EndpointSubstitution);
                    push_subst_region(&mut regions, &mut seeds, p.eval, a, b, alpha, true);
                }
                (None, Some(alpha)) => {
                    ctx.tag(StrategyTag::EndpointSubstitution);
                    push_subst_region(&mut regions, &mut seeds, p.eval, a, b, alpha, false);
                }
                (Some(al), Some(ar)) => {
                    ctx.tag(StrategyTag::EndpointSubstitution);
                    let mid = 0.5 * (a + b);
                    push_subst_region(&mut regions, &mut seeds, p.eval, a, mid, al, true);
                    push_subst_region(&mut regions, &mut seeds, p.eval, mid, b, ar, false);
                }
                (None, None) => {
                    let idx = regions.len();
                    regions.push(Box::new(p.eval));
                    seeds.push((idx, a, b));
                }
            }
        }

        let out = adaptive_multi(&mut ctx, &regions, &seeds, tol * 0.4);
        finite_val = out.value;
        finite_err = out.err;
        finite_ok = out.converged || out.err <= tol;
        if out.err.is_infinite() {
            return QuadResult::inconclusive(finite_val, f64::INFINITY, ctx.used, ctx.trace);
        }
    }

    // --- tails -------------------------------------------------------------
    let tail_tol = if left_infinite && right_infinite { tol * 0.25 } else { tol * 0.5 };

    let eval = p.eval;
    let left_eval = move |u: f64| eval(-u);

    let right_out = if right_infinite {
        run_tail(&mut ctx, &eval, &p.right, right_start, tail_tol)
    } else {
        TailOutcome::Converged(c64(0.0, 0.0), 0.0)
    };
    let left_out = if left_infinite {
        run_tail(&mut ctx, &left_eval, &p.left, left_start, tail_tol)
    } else {
        TailOutcome::Converged(c64(0.0, 0.0), 0.0)
    };

    let evals = ctx.used;
    let trace = ctx.trace;

    match (right_out, left_out) {
        (TailOutcome::Diverged, TailOutcome::Diverged) => {
            if p.odd_symmetric {
                QuadResult::failed(QuadStatus::PrincipalValueOnly, evals, trace)
            } else {
                QuadResult::failed(QuadStatus::Diverged, evals, trace)
            }
        }
        (TailOutcome::Diverged, _) | (_, TailOutcome::Diverged) => {
            QuadResult::failed(QuadStatus::Diverged, evals, trace)
        }
        (TailOutcome::Converged(rv, re), TailOutcome::Converged(lv, le)) => {
            let value = finite_val + rv + lv;
            let err = finite_err + re + le;
            if finite_ok && err.is_finite() {
                QuadResult::converged(value, err, evals, trace)
            } else {
                QuadResult::inconclusive(value, err, evals, trace)
            }
        }
        (r, l) => {
            let (rv, re) = tail_parts(r);
            let (lv, le) = tail_parts(l);
            QuadResult::inconclusive(finite_val + rv + lv, finite_err + re + le, evals, trace)
        }
    }
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

/// Build the engine problem for ∫ f(x)·e^{−i·s·x} dx over `interval` and run
/// it.  `s = 0` gives the plain integral of f.
pub(crate) fn integrate_modulated(
    f: &FunctionSpec,
    s: f64,
    interval: ExtInterval,
    tol: f64,
    budget: u64,
) -> Result<QuadResult, QuadError> {
    if !(tol > 0.0) {
        return Err(QuadError::Domain("tolerance must be positive"));
    }
    let Some(clipped) = interval.intersect(&f.support()) else {
        return Ok(QuadResult::converged(c64(0.0, 0.0), 0.0, 0, Vec::new()));
    };
    if clipped.is_degenerate() {
        return Ok(QuadResult::converged(c64(0.0, 0.0), 0.0, 0, Vec::new()));
    }
    let (lo, hi) = (clipped.lo(), clipped.hi());

    let eval = move |x: f64| {
        let v = f.eval_or_zero(x);
        if s == 0.0 {
            v
        } else {
            v * cis(-s * x)
        }
    };

    let breakpoints = f.breakpoints(lo, hi);
    let alg_sing = f.algebraic_singularities();

    // the modulation adds −s·u on the right tail (x = u) and +s·u on the
    // left tail (x = −u)
    let right_info = (hi == f64::INFINITY).then(|| f.tail(Side::Right));
    let left_info = (lo == f64::NEG_INFINITY).then(|| f.tail(Side::Left));

    // an absolutely decaying tail under modulation is summed on the lobes
    // of e^{∓isu}: the reciprocal map cannot resolve the oscillation near
    // its image of infinity unless the decay crushes it first
    let right = match &right_info {
        None => TailPlan::None,
        Some((_, TailBehavior::Zero)) => TailPlan::None,
        Some((from, TailBehavior::AbsoluteDecay)) => {
            if s == 0.0 {
                TailPlan::Absolute
            } else {
                TailPlan::ModelPhase {
                    from: *from,
                    phase: ModPhase { part: PhasePart::none(), lin: -s },
                }
            }
        }
        Some((from, TailBehavior::Terms(ts))) => TailPlan::Terms { from: *from, terms: ts, lin: -s },
        Some((from, TailBehavior::ModelOnly(part))) => TailPlan::ModelPhase {
            from: *from,
            phase: ModPhase { part: *part, lin: -s },
        },
        Some((_, TailBehavior::Unknown)) => TailPlan::Unknown,
    };
    let left = match &left_info {
        None => TailPlan::None,
        Some((_, TailBehavior::Zero)) => TailPlan::None,
        Some((from, TailBehavior::AbsoluteDecay)) => {
            if s == 0.0 {
                TailPlan::Absolute
            } else {
                TailPlan::ModelPhase {
                    from: *from,
                    phase: ModPhase { part: PhasePart::none(), lin: s },
                }
            }
        }
        Some((from, TailBehavior::Terms(ts))) => TailPlan::Terms { from: *from, terms: ts, lin: s },
        Some((from, TailBehavior::ModelOnly(part))) => TailPlan::ModelPhase {
            from: *from,
            phase: ModPhase { part: *part, lin: s },
        },
        Some((_, TailBehavior::Unknown)) => TailPlan::Unknown,
    };

    let odd_symmetric = s == 0.0 && f.parity() == Parity::Odd && lo == -hi;

    Ok(run_problem(Problem {
        eval: &eval,
        breakpoints,
        alg_sing,
        lo,
        hi,
        right,
        left,
        odd_symmetric,
        tol,
        budget,
    }))
}

/// ∫_I f with full improper handling: interior singular points split the
/// interval, infinite endpoints are handled by the per-side tail strategy.
pub fn integrate(f: &FunctionSpec, interval: ExtInterval, tol: f64) -> Result<QuadResult, QuadError> {
    integrate_modulated(f, 0.0, interval, tol, DEFAULT_BUDGET)
}

pub fn integrate_with_budget(
    f: &FunctionSpec,
    interval: ExtInterval,
    tol: f64,
    budget: u64,
) -> Result<QuadResult, QuadError> {
    integrate_modulated(f, 0.0, interval, tol, budget)
}

/// ∫_from^∞ A(x)·e^{i(φ(x) − s·x)} dx by between-zeros partial sums with
/// extrapolation.  Power-law phases are monotone; a stationary point of the
/// combined oscillation is integrated by direct panels.
pub fn oscillatory_tail(
    amp: impl Fn(f64) -> f64,
    phase: PhasePart,
    s: f64,
    from: f64,
    tol: f64,
) -> Result<QuadResult, QuadError> {
    if !(tol > 0.0) || !(from > 0.0) || !from.is_finite() {
        return Err(QuadError::Domain("need tol > 0 and finite from > 0"));
    }
    if !phase.coeff.is_finite() || !phase.exponent.is_finite() {
        return Err(QuadError::NonMonotonePhase);
    }
    let mut ctx = Ctx::new(DEFAULT_BUDGET);
    let modp = ModPhase { part: phase, lin: -s };
    let f = |u: f64| c64(amp(u), 0.0) * cis(modp.eval(u));
    let out = oscillatory_term_tail(&mut ctx, &f, &modp, from, tol);
    Ok(match out {
        TailOutcome::Converged(v, e) => QuadResult::converged(v, e, ctx.used, ctx.trace),
        TailOutcome::Diverged => QuadResult::failed(QuadStatus::Diverged, ctx.used, ctx.trace),
        TailOutcome::Inconclusive(v, e) => QuadResult::inconclusive(v, e, ctx.used, ctx.trace),
    })
}

/// ∫_0^1 e^{i·x^{−γ}}·x^δ dx via the integration-by-parts reduction: each
/// step trades a boundary term against a tamer integrand, and the boundary
/// limit at 0 exists exactly when γ+δ+1 > 0.
pub fn endpoint_singularity(gamma: f64, delta: f64, tol: f64) -> Result<QuadResult, QuadError> {
    if !(gamma > 0.0) || !delta.is_finite() || !(tol > 0.0) {
        return Err(QuadError::Domain("need γ > 0, finite δ, tol > 0"));
    }
    let mut ctx = Ctx::new(DEFAULT_BUDGET);
    ctx.tag(StrategyTag::EndpointReduction);

    // boundary-limit analysis: lim_{x→0⁺} e^{i·x^{−γ}}·x^{γ+δ+1} exists only
    // for a positive exponent
    if gamma + delta + 1.0 <= 0.0 {
        return Ok(QuadResult::failed(QuadStatus::Diverged, 0, ctx.trace));
    }

    // pick the reduction depth k and the cutoff ε jointly: at most ~4000
    // oscillations on [ε, 1] and below-tolerance mass on [0, ε]
    let n_max = 4000.0_f64;
    let eps = (PI * n_max).powf(-1.0 / gamma);
    let log_inv_eps = (1.0 / eps).ln();
    let needed = ((20.0 / tol).ln() / log_inv_eps - delta - 1.0) / gamma;
    let k = needed.ceil().max(0.0).min(60.0) as usize;
    let delta_k = delta + k as f64 * gamma;

    // innermost integral on [ε, 1], panels seeded at the oscillation
    // boundaries x_j = (jπ)^{−1/γ}
    let f = |x: f64| {
        if x <= 0.0 {
            return c64(0.0, 0.0);
        }
        cis(x.powf(-gamma)) * x.powf(delta_k)
    };
    let mut pts = vec![1.0_f64];
    let mut j = 1.0;
    loop {
        let x = (j * PI).powf(-1.0 / gamma);
        if x <= eps || j > 2.0 * n_max {
            break;
        }
        pts.push(x);
        j += 1.0;
    }
    pts.push(eps);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let regions: [RegionFn<'_>; 1] = [Box::new(&f)];
    let seeds: Vec<(usize, f64, f64)> = pts.windows(2).map(|w| (0usize, w[0], w[1])).collect();
    let inner = adaptive_multi(&mut ctx, &regions, &seeds, tol * 0.2);
    if inner.err.is_infinite() {
        return Ok(QuadResult::inconclusive(inner.value, f64::INFINITY, ctx.used, ctx.trace));
    }
    let head_bound = eps.powf(delta_k + 1.0) / (delta_k + 1.0);
    let mut value = inner.value;
    let mut err = inner.err + head_bound;

    // unfold the reduction chain:
    // J(δⱼ) = (i/γ)e^{i} − i(γ+δⱼ+1)/γ · J(δⱼ+γ)
    let boundary = c64(0.0, 1.0 / gamma) * cis(1.0);
    for jj in (0..k).rev() {
        let dj = delta + jj as f64 * gamma;
        let coeff = c64(0.0, -(gamma + dj + 1.0) / gamma);
        err = err * coeff.norm() + 1e-16;
        value = boundary + coeff * value;
    }

    Ok(QuadResult::converged(value, err, ctx.used, ctx.trace))
}

// ---------------------------------------------------------------------------
// Fubini check
// ---------------------------------------------------------------------------

/// Structured bivariate factor g(x, y) for the two-order iterated-integral
/// check; each form keeps both integration orders tractable.
#[derive(Clone)]
pub enum BivariateKind {
    /// g(x, y) = w(y)
    YOnly(FunctionSpec),
    /// g(x, y) = w(y)·e^{−i·x·y}
    ModulatedY(FunctionSpec),
    /// g(x, y) = sin(x·y)·w(y)
    SineXY(FunctionSpec),
}

impl BivariateKind {
    pub fn weight(&self) -> &FunctionSpec {
        match self {
            BivariateKind::YOnly(w) | BivariateKind::ModulatedY(w) | BivariateKind::SineXY(w) => w,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FubiniReport {
    pub i1: Complex64,
    pub i2: Complex64,
    pub agree: bool,
    pub status_xy: QuadStatus,
    pub status_yx: QuadStatus,
}

/// ∫_ℝ f(x)·h(x) dx with h(x) = ∫_c^d w(y)·e^{−ixy} dy, for f with linear
/// tail terms and compactly supported w.  Integrating h by parts twice
/// peels off the boundary waves e^{−ixc}, e^{−ixd} with 1/x and 1/x²
/// weights — these join f's tail terms exactly — and leaves an O(1/x³)
/// remainder handled by doubling truncations.  The split is an identity:
/// the same boundary closure is subtracted from the true inner integral.
pub(crate) fn modulated_outer_exact(
    f: &FunctionSpec,
    w: &FunctionSpec,
    b_set: ExtInterval,
    inner_tol: f64,
    tol: f64,
) -> Option<(Complex64, QuadStatus)> {
    use alloc::sync::Arc;

    let wclip = b_set.intersect(&w.support())?;
    let (c_edge, d_edge) = (wclip.lo(), wclip.hi());
    if !c_edge.is_finite() || !d_edge.is_finite() || !(c_edge < d_edge) {
        return None;
    }
    let (f_from_r, f_right) = f.linear_tail_terms(Side::Right)?;
    let (f_from_l, f_left) = f.linear_tail_terms(Side::Left)?;

    let h_fd = 1e-5 * (1.0 + (d_edge - c_edge).abs());
    let w_c = w.eval_or_zero(c_edge);
    let w_d = w.eval_or_zero(d_edge);
    let wp_c = (w.eval_or_zero(c_edge + h_fd) - w_c) / h_fd;
    let wp_d = (w_d - w.eval_or_zero(d_edge - h_fd)) / h_fd;

    let x0 = 4.0_f64.max(f_from_r).max(f_from_l);

    let hexp = move |x: f64| -> Complex64 {
        let ix = c64(0.0, x);
        (w_c * cis(-x * c_edge) - w_d * cis(-x * d_edge)) / ix
            + (wp_c * cis(-x * c_edge) - wp_d * cis(-x * d_edge)) / (ix * ix)
    };
    let h_inner = {
        let w = w.clone();
        move |x: f64| -> Complex64 {
            integrate_modulated(&w, x, b_set, inner_tol, DEFAULT_BUDGET)
                .map(|r| r.value_unchecked())
                .unwrap_or(c64(0.0, 0.0))
        }
    };

    let mut total = c64(0.0, 0.0);
    let mut worst = QuadStatus::Converged;
    let mut absorb = |r: QuadResult| {
        if r.status != QuadStatus::Converged && worst == QuadStatus::Converged {
            worst = r.status;
        }
        total += r.value_unchecked();
    };

    // finite part [−x0, x0]
    {
        let fc = f.clone();
        let hi2 = h_inner.clone();
        let eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(move |x: f64| {
            let fv = fc.eval_or_zero(x);
            if fv.norm() == 0.0 {
                return c64(0.0, 0.0);
            }
            fv * hi2(x)
        });
        let spec = FunctionSpec::user_callable(
            eval,
            Vec::new(),
            ExtInterval::new(-x0, x0).ok()?,
            Parity::None,
        )
        .ok()?
        .with_singular_points_merged(f.singular_points().to_vec())
        .with_algebraic_singularities_merged(f.algebraic_singularities());
        absorb(integrate_modulated(&spec, 0.0, ExtInterval::new(-x0, x0).ok()?, tol * 0.4, DEFAULT_BUDGET).ok()?);
    }

    // tail term sets: f-term × boundary wave, per side
    for side in [Side::Right, Side::Left] {
        let (f_terms, mod_sign, interval) = match side {
            Side::Right => (&f_right, -1.0, ExtInterval::new(x0, f64::INFINITY).ok()?),
            Side::Left => (&f_left, 1.0, ExtInterval::new(f64::NEG_INFINITY, -x0).ok()?),
        };
        // 1/(ix) and 1/(ix)² at x = ±u
        let inv_ix = match side {
            Side::Right => c64(0.0, -1.0), // 1/(iu) = −i/u
            Side::Left => c64(0.0, 1.0),   // 1/(−iu) = +i/u
        };
        let inv_ix2 = c64(-1.0, 0.0); // 1/(ix)² = −1/x² either side
        let mut terms: Vec<OscTerm> = Vec::new();
        for tf in f_terms {
            let m_f = (if tf.phase.coeff != 0.0 { tf.phase.coeff } else { 0.0 }) + tf.lin;
            for (edge, wav, wav_p, pref) in
                [(c_edge, w_c, wp_c, 1.0), (d_edge, w_d, wp_d, -1.0)]
            {
                let amp1 = tf.amp.clone();
                terms.push(OscTerm {
                    coeff: tf.coeff * wav * pref * inv_ix,
                    amp: Arc::new(move |u: f64| amp1(u) / u),
                    phase: PhasePart::none(),
                    lin: m_f + mod_sign * edge,
                });
                let amp2 = tf.amp.clone();
                terms.push(OscTerm {
                    coeff: tf.coeff * wav_p * pref * inv_ix2,
                    amp: Arc::new(move |u: f64| amp2(u) / (u * u)),
                    phase: PhasePart::none(),
                    lin: m_f + mod_sign * edge,
                });
            }
        }
        let fc = f.clone();
        let eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> =
            Arc::new(move |x: f64| fc.eval_or_zero(x) * hexp(x));
        let spec = FunctionSpec::user_callable(eval, Vec::new(), interval, Parity::None)
            .ok()?
            .with_tail_override(side, x0, TailBehavior::Terms(terms));
        absorb(integrate_modulated(&spec, 0.0, interval, tol * 0.15, DEFAULT_BUDGET * 2).ok()?);

        // remainder f·(h − h_explicit), O(1/x³), by doubling truncations
        let fc = f.clone();
        let hi2 = h_inner.clone();
        let eval_rem: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(move |x: f64| {
            let fv = fc.eval_or_zero(x);
            if fv.norm() == 0.0 {
                return c64(0.0, 0.0);
            }
            fv * (hi2(x) - hexp(x))
        });
        let spec_rem = FunctionSpec::user_callable(eval_rem, Vec::new(), interval, Parity::None).ok()?;
        absorb(integrate_modulated(&spec_rem, 0.0, interval, tol * 0.15, DEFAULT_BUDGET * 2).ok()?);
    }

    Some((total, worst))
}

fn sine_integral_of(
    w: &FunctionSpec,
    freq: f64,
    set: ExtInterval,
    tol: f64,
) -> Complex64 {
    // ∫ w(y)·sin(freq·y) dy = (ŵ(−freq) − ŵ(freq)) / 2i over the set
    let plus = integrate_modulated(w, -freq, set, tol, DEFAULT_BUDGET);
    let minus = integrate_modulated(w, freq, set, tol, DEFAULT_BUDGET);
    match (plus, minus) {
        (Ok(p), Ok(m)) => (p.value_unchecked() - m.value_unchecked()) / c64(0.0, 2.0),
        _ => c64(0.0, 0.0),
    }
}

/// Compares I₁ = ∫_A f(x)∫_B g(x,y) dy dx against the reversed order I₂.
/// `agree` requires |I₁ − I₂| ≤ 10·tol with both orders converged.
pub fn fubini_check(
    f: &FunctionSpec,
    g: &BivariateKind,
    a_set: ExtInterval,
    b_set: ExtInterval,
    tol: f64,
) -> Result<FubiniReport, QuadError> {
    if !(tol > 0.0) {
        return Err(QuadError::Domain("tolerance must be positive"));
    }
    let inner_tol = tol * 0.01;

    // --- I₁: inner over y, outer over x -------------------------------
    let const_inner = match g {
        BivariateKind::YOnly(w) => {
            Some(integrate_modulated(w, 0.0, b_set, inner_tol, DEFAULT_BUDGET)?.value_unchecked())
        }
        _ => None,
    };

    let inner_y = |x: f64| -> Complex64 {
        match g {
            BivariateKind::YOnly(_) => const_inner.unwrap_or(c64(0.0, 0.0)),
            BivariateKind::ModulatedY(w) => integrate_modulated(w, x, b_set, inner_tol, DEFAULT_BUDGET)
                .map(|r| r.value_unchecked())
                .unwrap_or(c64(0.0, 0.0)),
            BivariateKind::SineXY(w) => sine_integral_of(w, x, b_set, inner_tol),
        }
    };

    let (i1, status_i1) = {
        let Some(clip) = a_set.intersect(&f.support()) else {
            return Err(QuadError::Domain("empty outer domain"));
        };
        let (lo, hi) = (clip.lo(), clip.hi());

        // the boundary-wave split handles the hard case: modulated compact
        // weight against an f with a tail over the whole line
        let exact = match g {
            BivariateKind::ModulatedY(w)
                if lo == f64::NEG_INFINITY && hi == f64::INFINITY =>
            {
                modulated_outer_exact(f, w, b_set, inner_tol, tol)
            }
            _ => None,
        };
        if let Some(done) = exact {
            done
        } else {
            let outer = |x: f64| -> Complex64 {
                let fv = f.eval_or_zero(x);
                if fv.norm() == 0.0 {
                    return c64(0.0, 0.0);
                }
                fv * inner_y(x)
            };
            let breakpoints = f.breakpoints(lo, hi);
            let alg_sing = f.algebraic_singularities();
            // fallback: lobes of the dominant boundary frequency
            let w_sup = g.weight().support();
            let (right, left): (TailPlan<'_>, TailPlan<'_>) = match g {
                BivariateKind::ModulatedY(_)
                    if w_sup.lo().is_finite() && w_sup.hi().is_finite() =>
                {
                    let freq = w_sup.lo().abs().max(w_sup.hi().abs()).max(0.5);
                    (
                        TailPlan::ModelPhase {
                            from: 1.0,
                            phase: ModPhase { part: PhasePart::linear(-freq), lin: 0.0 },
                        },
                        TailPlan::ModelPhase {
                            from: 1.0,
                            phase: ModPhase { part: PhasePart::linear(freq), lin: 0.0 },
                        },
                    )
                }
                _ => (TailPlan::Unknown, TailPlan::Unknown),
            };
            let res = run_problem(Problem {
                eval: &outer,
                breakpoints,
                alg_sing,
                lo,
                hi,
                right: if hi == f64::INFINITY { right } else { TailPlan::None },
                left: if lo == f64::NEG_INFINITY { left } else { TailPlan::None },
                odd_symmetric: false,
                tol,
                budget: DEFAULT_BUDGET * 4,
            });
            (res.value_unchecked(), res.status)
        }
    };

    // --- I₂: inner over x, outer over y -------------------------------
    let (i2, status_i2) = {
        let inner_x = |y: f64| -> Complex64 {
            let wv = g.weight().eval_or_zero(y);
            if wv.norm() == 0.0 {
                return c64(0.0, 0.0);
            }
            let inner = match g {
                BivariateKind::YOnly(_) => {
                    integrate_modulated(f, 0.0, a_set, inner_tol, DEFAULT_BUDGET)
                        .map(|r| r.value_unchecked())
                        .unwrap_or(c64(0.0, 0.0))
                }
                BivariateKind::ModulatedY(_) => {
                    integrate_modulated(f, y, a_set, inner_tol, DEFAULT_BUDGET)
                        .map(|r| r.value_unchecked())
                        .unwrap_or(c64(0.0, 0.0))
                }
                BivariateKind::SineXY(_) => sine_integral_of(f, y, a_set, inner_tol),
            };
            wv * inner
        };
        let w = g.weight();
        let Some(clip) = b_set.intersect(&w.support()) else {
            return Err(QuadError::Domain("empty outer domain"));
        };
        let (lo, hi) = (clip.lo(), clip.hi());
        let breakpoints = w.breakpoints(lo, hi);
        let plan = |inf: bool| {
            if !inf {
                TailPlan::None
            } else if w.has_absolute_tail_cert() {
                TailPlan::Absolute
            } else {
                TailPlan::Unknown
            }
        };
        let res = run_problem(Problem {
            eval: &inner_x,
            breakpoints,
            alg_sing: Vec::new(),
            lo,
            hi,
            right: plan(hi == f64::INFINITY),
            left: plan(lo == f64::NEG_INFINITY),
            odd_symmetric: false,
            tol,
            budget: DEFAULT_BUDGET * 4,
        });
        (res.value_unchecked(), res.status)
    };

    let both_ok = status_i1 == QuadStatus::Converged && status_i2 == QuadStatus::Converged;
    Ok(FubiniReport {
        i1,
        i2,
        agree: both_ok && (i1 - i2).norm() <= 10.0 * tol,
        status_xy: status_i1,
        status_yx: status_i2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realfn::FunctionSpec;

    fn full() -> ExtInterval {
        ExtInterval::full()
    }

    #[test]
    fn zero_integrand() {
        let f = FunctionSpec::zero();
        let r = integrate(&f, ExtInterval::new(0.0, 1.0).unwrap(), 1e-10).unwrap();
        assert!(r.is_converged());
        assert_eq!(r.value().unwrap(), c64(0.0, 0.0));
    }

    #[test]
    fn gaussian_over_r() {
        let f = FunctionSpec::gauss();
        let r = integrate(&f, full(), 1e-10).unwrap();
        assert!(r.is_converged());
        let sqrt_pi = PI.sqrt();
        assert!((r.value().unwrap().re - sqrt_pi).abs() < 1e-9);
    }

    #[test]
    fn exp_abs_over_r() {
        let f = FunctionSpec::exp_abs();
        let r = integrate(&f, full(), 1e-10).unwrap();
        assert!((r.value().unwrap().re - 2.0).abs() < 1e-9);
    }

    #[test]
    fn power_singularity_on_unit_interval() {
        // ∫_0^1 x^{−1/2} dx = 2 through the endpoint substitution
        let f = FunctionSpec::power_signed(-0.5);
        let r = integrate(&f, ExtInterval::new(0.0, 1.0).unwrap(), 1e-10).unwrap();
        assert!(r.is_converged());
        assert!((r.value().unwrap().re - 2.0).abs() < 1e-9, "got {:?}", r.value());
        assert!(r.strategy_trace.contains(&StrategyTag::EndpointSubstitution));
    }

    #[test]
    fn modulated_rational_odd_matches_residue_value() {
        // ∫ x/(x²+1)·e^{−ix} dx = −iπ/e
        let f = FunctionSpec::rational_odd();
        let r = integrate_modulated(&f, 1.0, full(), 1e-9, DEFAULT_BUDGET).unwrap();
        assert!(r.is_converged(), "status {:?}", r.status);
        let expect = c64(0.0, -PI / core::f64::consts::E);
        let got = r.value().unwrap();
        assert!((got - expect).norm() < 1e-7, "got {got:?}, expect {expect:?}");
    }

    #[test]
    fn principal_value_is_rejected() {
        // x/(x²+1) over ℝ: both tails diverge logarithmically; odd symmetry
        // means the PV exists but the integral does not
        let f = FunctionSpec::rational_odd();
        let r = integrate(&f, full(), 1e-8).unwrap();
        assert_eq!(r.status, QuadStatus::PrincipalValueOnly);
        assert!(r.value().is_none());
    }

    #[test]
    fn odd_powers_signed_pv() {
        let f = FunctionSpec::power_signed(-0.5);
        let r = integrate(&f, full(), 1e-8).unwrap();
        assert!(matches!(
            r.status,
            QuadStatus::PrincipalValueOnly | QuadStatus::Diverged
        ));
    }

    #[test]
    fn oscillatory_tail_lemma_classifier_examples() {
        // γ=2, δ=1.5 fails γ > δ+1 → diverges
        let r = oscillatory_tail(
            |u| u.powf(1.5),
            PhasePart { coeff: 1.0, exponent: 2.0 },
            0.0,
            1.0,
            1e-8,
        )
        .unwrap();
        assert_eq!(r.status, QuadStatus::Diverged);
        // γ=3, δ=1 satisfies 3 > 2 → converges
        let r = oscillatory_tail(|u| u, PhasePart { coeff: 1.0, exponent: 3.0 }, 0.0, 1.0, 1e-8)
            .unwrap();
        assert_eq!(r.status, QuadStatus::Converged);
    }

    #[test]
    fn endpoint_singularity_criterion() {
        // γ=1, δ=−2 → 1 − 2 + 1 = 0 ≤ 0 diverges
        let r = endpoint_singularity(1.0, -2.0, 1e-8).unwrap();
        assert_eq!(r.status, QuadStatus::Diverged);
        // γ=0.5, δ=−1.2 → 0.3 > 0 converges
        let r = endpoint_singularity(0.5, -1.2, 1e-8).unwrap();
        assert_eq!(r.status, QuadStatus::Converged);
    }

    #[test]
    fn additivity_over_subintervals() {
        let f = FunctionSpec::rational_odd();
        let whole = integrate(&f, ExtInterval::new(-2.0, 3.0).unwrap(), 1e-10).unwrap();
        let a = integrate(&f, ExtInterval::new(-2.0, 0.5).unwrap(), 1e-10).unwrap();
        let b = integrate(&f, ExtInterval::new(0.5, 3.0).unwrap(), 1e-10).unwrap();
        let lhs = whole.value().unwrap();
        let rhs = a.value().unwrap() + b.value().unwrap();
        assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn linearity() {
        let f = FunctionSpec::gauss();
        let g = FunctionSpec::exp_abs();
        let combo = FunctionSpec::linear_combination(c64(2.0, 0.0), &f, c64(-0.5, 0.0), &g);
        let i = ExtInterval::new(-3.0, 3.0).unwrap();
        let lhs = integrate(&combo, i, 1e-10).unwrap().value().unwrap();
        let rhs = 2.0 * integrate(&f, i, 1e-10).unwrap().value().unwrap()
            - 0.5 * integrate(&g, i, 1e-10).unwrap().value().unwrap();
        assert!((lhs - rhs).norm() < 1e-8);
    }

    #[test]
    fn dominated_stability_gaussian_windows() {
        // ∫ f·gₙ → ∫ f with gₙ = e^{−x²/n²} on [0, 10]
        let f = FunctionSpec::rational_odd();
        let i = ExtInterval::new(0.0, 10.0).unwrap();
        let base = integrate(&f, i, 1e-11).unwrap().value().unwrap();
        let mut prev_gap = f64::INFINITY;
        for n in [1.0_f64, 4.0, 16.0, 64.0] {
            let g = FunctionSpec::poly_gauss(1.0 / (n * n), vec![1.0]);
            let fg = FunctionSpec::product(&f, &g);
            let v = integrate(&fg, i, 1e-11).unwrap().value().unwrap();
            let gap = (v - base).norm();
            assert!(gap < prev_gap, "not monotone at n={n}");
            prev_gap = gap;
        }
        // at n: 1 − e^{−x²/n²} ≈ x²/n², so the n=64 window still differs at
        // the 1e−2 level on [0, 10]; the approach, not the limit, is tested
        assert!(prev_gap < 2e-2, "gap {prev_gap}");
    }

    #[test]
    fn fubini_separable_gaussian() {
        let f = FunctionSpec::indicator(0.0, 1.0).unwrap();
        let g = BivariateKind::YOnly(FunctionSpec::gauss());
        let rep =
            fubini_check(&f, &g, ExtInterval::new(0.0, 1.0).unwrap(), ExtInterval::full(), 1e-8)
                .unwrap();
        assert!(rep.agree, "i1={:?} i2={:?}", rep.i1, rep.i2);
        let sqrt_pi = PI.sqrt();
        assert!((rep.i1.re - sqrt_pi).abs() < 1e-7);
    }
}
