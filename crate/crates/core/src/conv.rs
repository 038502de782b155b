//! Convolution f∗g(x) = ∫ f(x−t)g(t) dt as an improper integral: compact-
//! support and decay routes, a term-product route for purely oscillatory
//! pairs (including divergence detection), the Alexiewicz norm bound
//! ‖f∗g‖ ≤ ‖f‖·‖g‖₁, and the transform/inverse-transform identities.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::bvnorm;
use crate::fourier::{self, FourierError};
use crate::quad::{self, QuadError, QuadResult, QuadStatus};
use crate::realfn::{
    c64, ExtInterval, FunctionSpec, OscTerm, Parity, PhasePart, Side, SingularPoint, TailBehavior,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvRoute {
    /// f ∈ HK, g of bounded variation with decay: tails carried by g.
    HKtimesBV,
    /// g compactly supported: a single finite integral.
    CompactBV,
    /// Term-product analysis of two oscillatory tails.
    Direct,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConvError {
    /// None of the route hypotheses could be certified for this pair.
    RouteHypothesisFailed,
    Quad(QuadError),
    Fourier(FourierError),
    NotConverged(QuadStatus),
    Domain(&'static str),
}

impl fmt::Display for ConvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvError::RouteHypothesisFailed => f.write_str("no convolution route hypothesis holds"),
            ConvError::Quad(e) => write!(f, "{e}"),
            ConvError::Fourier(e) => write!(f, "{e}"),
            ConvError::NotConverged(s) => write!(f, "sub-evaluation ended {s}"),
            ConvError::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

impl core::error::Error for ConvError {}

impl From<QuadError> for ConvError {
    fn from(e: QuadError) -> Self {
        ConvError::Quad(e)
    }
}

impl From<FourierError> for ConvError {
    fn from(e: FourierError) -> Self {
        ConvError::Fourier(e)
    }
}

/// One convolution evaluation: the quadrature outcome, the route that ran,
/// and the a-priori pointwise bound ‖f‖·[inf|g| + Vg] when available.
#[derive(Clone, Debug)]
pub struct ConvResult {
    pub quad: QuadResult,
    pub route: ConvRoute,
    pub apriori_bound: Option<f64>,
}

fn is_compact(f: &FunctionSpec) -> bool {
    f.support().lo().is_finite() && f.support().hi().is_finite()
}

fn linear_tail_terms(f: &FunctionSpec, side: Side) -> Option<(f64, Vec<OscTerm>)> {
    f.linear_tail_terms(side)
}

fn term_slope(t: &OscTerm) -> f64 {
    (if t.phase.coeff != 0.0 { t.phase.coeff } else { 0.0 }) + t.lin
}

/// The integrand t ↦ f(x−t)·g(t) with merged metadata.
fn conv_integrand(f: &FunctionSpec, g: &FunctionSpec, x: f64) -> FunctionSpec {
    let (fc, gc) = (f.clone(), g.clone());
    let eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> =
        Arc::new(move |t: f64| fc.eval_or_zero(x - t) * gc.eval_or_zero(t));

    // support of t ↦ f(x−t) is [x − hi, x − lo]
    let fs = f.support();
    let reflected = ExtInterval::new(
        if fs.hi().is_finite() { x - fs.hi() } else { f64::NEG_INFINITY },
        if fs.lo().is_finite() { x - fs.lo() } else { f64::INFINITY },
    )
    .unwrap_or_else(|_| ExtInterval::full());
    let support = reflected
        .intersect(&g.support())
        .unwrap_or_else(|| ExtInterval::new(0.0, 0.0).unwrap());

    let mapped: Vec<SingularPoint> = f
        .singular_points()
        .iter()
        .map(|sp| SingularPoint { at: x - sp.at, kind: sp.kind })
        .collect();
    let alg: Vec<(f64, f64)> =
        f.algebraic_singularities().into_iter().map(|(p, a)| (x - p, a)).collect();

    FunctionSpec::user_callable(eval, Vec::new(), support, Parity::None)
        .expect("no declared singularities to probe")
        .with_singular_points_merged(g.singular_points().to_vec())
        .with_singular_points_merged(mapped)
        .with_algebraic_singularities_merged(alg)
        .with_algebraic_singularities_merged(g.algebraic_singularities())
}

/// Convolution at a point with automatic route selection.
pub fn convolve(f: &FunctionSpec, g: &FunctionSpec, x: f64, tol: f64) -> Result<ConvResult, ConvError> {
    if !(tol > 0.0) {
        return Err(ConvError::Domain("tolerance must be positive"));
    }
    if is_compact(g) {
        return compact_route(f, g, x, tol);
    }
    if is_compact(f) {
        // f∗g = g∗f wherever either exists
        return compact_route(g, f, x, tol);
    }
    if g.has_absolute_tail_cert() && tails_bounded(f) {
        return decay_route(f, g, x, tol);
    }
    if f.has_absolute_tail_cert() && tails_bounded(g) {
        return decay_route(g, f, x, tol);
    }
    direct_route(f, g, x, tol)
}

fn tails_bounded(f: &FunctionSpec) -> bool {
    [256.0_f64, 512.0, 1024.0].iter().all(|&u| {
        f.eval_or_zero(u).norm().max(f.eval_or_zero(-u).norm()) < 1e3
    })
}

fn compact_route(f: &FunctionSpec, g: &FunctionSpec, x: f64, tol: f64) -> Result<ConvResult, ConvError> {
    let spec = conv_integrand(f, g, x);
    let r = quad::integrate(&spec, spec.support(), tol)?;
    Ok(ConvResult { quad: r, route: ConvRoute::CompactBV, apriori_bound: None })
}

fn decay_route(f: &FunctionSpec, g: &FunctionSpec, x: f64, tol: f64) -> Result<ConvResult, ConvError> {
    let spec = conv_integrand(f, g, x).with_absolute_tail_cert();
    let r = quad::integrate(&spec, ExtInterval::full(), tol)?;
    // pointwise a-priori bound ‖f‖·[inf|g| + Vg]; either factor may fail to
    // exist for this pair, in which case no bound is attached
    let bound = (|| {
        let gi = bvnorm::variation(g, ExtInterval::full()).ok()?;
        let norm_f = bvnorm::alexiewicz_norm(f, ExtInterval::full(), tol.max(1e-8)).ok()?;
        Some(norm_f * (gi.inf_abs + gi.variation))
    })();
    Ok(ConvResult { quad: r, route: ConvRoute::HKtimesBV, apriori_bound: bound })
}

/// Oscillatory pair route: the tail of f(x−t)g(t) is the product of the two
/// linear-phase decompositions, term by term.  A zero-slope product term
/// with a non-integrable envelope is a genuine divergence.
fn direct_route(f: &FunctionSpec, g: &FunctionSpec, x: f64, tol: f64) -> Result<ConvResult, ConvError> {
    let (f_from_l, f_left) =
        linear_tail_terms(f, Side::Left).ok_or(ConvError::RouteHypothesisFailed)?;
    let (f_from_r, f_right) =
        linear_tail_terms(f, Side::Right).ok_or(ConvError::RouteHypothesisFailed)?;
    let (g_from_l, g_left) =
        linear_tail_terms(g, Side::Left).ok_or(ConvError::RouteHypothesisFailed)?;
    let (g_from_r, g_right) =
        linear_tail_terms(g, Side::Right).ok_or(ConvError::RouteHypothesisFailed)?;

    // t → +∞: f(x−t) follows f's left tail at u − x, g its right tail
    let mut right_terms = Vec::new();
    for tf in &f_left {
        for tg in &g_right {
            let m_f = term_slope(tf);
            let m_g = term_slope(tg);
            let rot = crate::realfn::cis(-m_f * x);
            let (af, ag) = (tf.amp.clone(), tg.amp.clone());
            right_terms.push(OscTerm {
                coeff: tf.coeff * tg.coeff * rot,
                amp: Arc::new(move |u: f64| af(u - x) * ag(u)),
                phase: PhasePart::none(),
                lin: m_f + m_g,
            });
        }
    }
    // t → −∞: f(x+u) follows f's right tail at u + x, g its left tail
    let mut left_terms = Vec::new();
    for tf in &f_right {
        for tg in &g_left {
            let m_f = term_slope(tf);
            let m_g = term_slope(tg);
            let rot = crate::realfn::cis(m_f * x);
            let (af, ag) = (tf.amp.clone(), tg.amp.clone());
            left_terms.push(OscTerm {
                coeff: tf.coeff * tg.coeff * rot,
                amp: Arc::new(move |u: f64| af(u + x) * ag(u)),
                phase: PhasePart::none(),
                lin: m_f + m_g,
            });
        }
    }

    let from_r = g_from_r.max(f_from_l + x.abs() + 1.0);
    let from_l = g_from_l.max(f_from_r + x.abs() + 1.0);
    let spec = conv_integrand(f, g, x)
        .with_tail_override(Side::Right, from_r, TailBehavior::Terms(right_terms))
        .with_tail_override(Side::Left, from_l, TailBehavior::Terms(left_terms));
    let r = quad::integrate(&spec, ExtInterval::full(), tol)?;
    Ok(ConvResult { quad: r, route: ConvRoute::Direct, apriori_bound: None })
}

// ---------------------------------------------------------------------------
// norm bound and identity checks
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct NormBoundReport {
    /// ‖f‖·‖g‖₁
    pub alexiewicz_bound: f64,
    /// max−min of the running integral of f∗g over the truncated window.
    pub empirical_norm: Option<f64>,
}

/// ‖f∗g‖ ≤ ‖f‖·‖g‖₁: computes the bound and, on request, an empirical
/// Alexiewicz norm of f∗g sampled over [−window, window].
pub fn conv_norm_bound(
    f: &FunctionSpec,
    g: &FunctionSpec,
    tol: f64,
    empirical_window: Option<(f64, usize)>,
) -> Result<NormBoundReport, ConvError> {
    let norm_f = bvnorm::alexiewicz_norm(f, ExtInterval::full(), tol)
        .map_err(|_| ConvError::Domain("f must be integrable over the line"))?;
    let gc = g.clone();
    let abs_g: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> =
        Arc::new(move |t: f64| c64(gc.eval_or_zero(t).norm(), 0.0));
    let mut abs_spec = FunctionSpec::user_callable(abs_g, Vec::new(), g.support(), Parity::None)
        .map_err(|_| ConvError::Domain("|g| failed to register"))?;
    if g.has_absolute_tail_cert() || is_compact(g) {
        abs_spec = abs_spec.with_absolute_tail_cert();
    }
    let l1 = quad::integrate(&abs_spec, ExtInterval::full(), tol)?;
    let l1_val = l1.value().ok_or(ConvError::NotConverged(l1.status))?.re;
    let bound = norm_f * l1_val;

    let empirical = match empirical_window {
        None => None,
        Some((window, n_nodes)) => {
            let inner_tol = (tol * 10.0).max(1e-9);
            let mut running = c64(0.0, 0.0);
            let mut lo_val = 0.0_f64;
            let mut hi_val = 0.0_f64;
            let mut t = -window;
            let step = 2.0 * window / n_nodes as f64;
            for _ in 0..n_nodes {
                // midpoint panel of the running integral of f∗g
                let mut panel = c64(0.0, 0.0);
                let nodes = 4;
                for k in 0..nodes {
                    let xx = t + step * (k as f64 + 0.5) / nodes as f64;
                    let v = convolve(f, g, xx, inner_tol)?;
                    let val = v.quad.value().ok_or(ConvError::NotConverged(v.quad.status))?;
                    panel += val * (step / nodes as f64);
                }
                running += panel;
                lo_val = lo_val.min(running.re);
                hi_val = hi_val.max(running.re);
                t += step;
            }
            Some(hi_val - lo_val)
        }
    };

    Ok(NormBoundReport { alexiewicz_bound: bound, empirical_norm: empirical })
}

#[derive(Clone, Debug)]
pub struct PointReport {
    pub points: Vec<f64>,
    pub lhs: Vec<Complex64>,
    pub rhs: Vec<Complex64>,
    pub max_deviation: f64,
}

/// f∗g as an evaluable descriptor: each evaluation runs the convolution
/// engine at inner tolerance `tol`.
pub fn conv_spec(f: &FunctionSpec, g: &FunctionSpec, tol: f64) -> Result<FunctionSpec, ConvError> {
    let (fc, gc) = (f.clone(), g.clone());
    let eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(move |x: f64| {
        convolve(&fc, &gc, x, tol)
            .ok()
            .and_then(|r| r.quad.value())
            .unwrap_or(c64(0.0, 0.0))
    });
    // supp(f∗g) ⊂ supp(f) + supp(g)
    let (fs, gs) = (f.support(), g.support());
    let lo = if fs.lo().is_finite() && gs.lo().is_finite() {
        fs.lo() + gs.lo()
    } else {
        f64::NEG_INFINITY
    };
    let hi = if fs.hi().is_finite() && gs.hi().is_finite() {
        fs.hi() + gs.hi()
    } else {
        f64::INFINITY
    };
    let mut spec = FunctionSpec::user_callable(
        eval,
        Vec::new(),
        ExtInterval::new(lo, hi).map_err(|_| ConvError::Domain("bad support"))?,
        Parity::None,
    )
    .map_err(|_| ConvError::Domain("f∗g failed to register"))?;
    if (is_compact(f) && g.has_absolute_tail_cert())
        || (is_compact(g) && f.has_absolute_tail_cert())
        || (f.has_absolute_tail_cert() && g.has_absolute_tail_cert())
    {
        spec = spec.with_absolute_tail_cert();
    } else if !(lo.is_finite() && hi.is_finite()) {
        // slowly decaying smooth convolutions: lobes of the transform
        // modulation make the tails summable
        spec = spec
            .with_tail_override(Side::Right, 1.0, TailBehavior::ModelOnly(PhasePart::none()))
            .with_tail_override(Side::Left, 1.0, TailBehavior::ModelOnly(PhasePart::none()));
    }
    Ok(spec)
}

/// (f∗g)̂(s) = f̂(s)·ĝ(s) on a grid.
pub fn conv_transform_check(
    f: &FunctionSpec,
    g: &FunctionSpec,
    s_grid: &[f64],
    tol: f64,
) -> Result<PointReport, ConvError> {
    let inner = (tol * 0.01).max(1e-11);
    let cv = conv_spec(f, g, inner)?;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut max_dev = 0.0_f64;
    for &s in s_grid {
        let l = fourier::transform_point(&cv, s, tol)?;
        let lv = l.value().ok_or(ConvError::NotConverged(l.status))?;
        let rf = fourier::transform_point(f, s, inner)?;
        let rg = fourier::transform_point(g, s, inner)?;
        let rv = rf.value().ok_or(ConvError::NotConverged(rf.status))?
            * rg.value().ok_or(ConvError::NotConverged(rg.status))?;
        max_dev = max_dev.max((lv - rv).norm());
        lhs.push(lv);
        rhs.push(rv);
    }
    Ok(PointReport { points: s_grid.to_vec(), lhs, rhs, max_deviation: max_dev })
}

/// f∗g = (f̂·ĝ)ˇ on a grid of x values.
pub fn conv_inverse_check(
    f: &FunctionSpec,
    g: &FunctionSpec,
    x_grid: &[f64],
    tol: f64,
) -> Result<PointReport, ConvError> {
    let inner = (tol * 0.01).max(1e-11);
    let (fc, gc) = (f.clone(), g.clone());
    let prod_eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync> = Arc::new(move |s: f64| {
        let a = fourier::transform_point(&fc, s, inner)
            .ok()
            .and_then(|r| r.value())
            .unwrap_or(c64(0.0, 0.0));
        let b = fourier::transform_point(&gc, s, inner)
            .ok()
            .and_then(|r| r.value())
            .unwrap_or(c64(0.0, 0.0));
        a * b
    });
    // ĝ decays absolutely for admissible g while f̂ stays bounded
    let prod_spec =
        FunctionSpec::user_callable(prod_eval, Vec::new(), ExtInterval::full(), Parity::None)
            .map_err(|_| ConvError::Domain("f̂·ĝ failed to register"))?
            .with_absolute_tail_cert();

    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut max_dev = 0.0_f64;
    for &x in x_grid {
        let l = convolve(f, g, x, tol)?;
        let lv = l.quad.value().ok_or(ConvError::NotConverged(l.quad.status))?;
        let r = fourier::inverse_point(&prod_spec, x, tol)?;
        let rv = r.value().ok_or(ConvError::NotConverged(r.status))?;
        max_dev = max_dev.max((lv - rv).norm());
        lhs.push(lv);
        rhs.push(rv);
    }
    Ok(PointReport { points: x_grid.to_vec(), lhs, rhs, max_deviation: max_dev })
}

/// (f∗g)∗h = f∗(g∗h) at one point; the inner convolutions run at
/// tolerance/100 to keep the nested error budget composable.
pub fn associativity_check(
    f: &FunctionSpec,
    g: &FunctionSpec,
    h: &FunctionSpec,
    x: f64,
    tol: f64,
) -> Result<PointReport, ConvError> {
    let inner = (tol * 0.01).max(1e-11);
    let fg = conv_spec(f, g, inner)?;
    let gh = conv_spec(g, h, inner)?;
    let l = convolve(&fg, h, x, tol)?;
    let lv = l.quad.value().ok_or(ConvError::NotConverged(l.quad.status))?;
    let r = convolve(f, &gh, x, tol)?;
    let rv = r.quad.value().ok_or(ConvError::NotConverged(r.quad.status))?;
    Ok(PointReport {
        points: alloc::vec![x],
        lhs: alloc::vec![lv],
        rhs: alloc::vec![rv],
        max_deviation: (lv - rv).norm(),
    })
}
