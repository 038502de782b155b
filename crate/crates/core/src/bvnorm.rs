//! Bounded-variation machinery: total variation with monotone-piece
//! decompositions, the Alexiewicz norm as the oscillation of the indefinite
//! integral, the normalized BV representative, and the product-integral
//! bound |∫fg| ≤ |∫f|·inf|g| + ‖f‖·Vg.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::quad::{self, QuadError, QuadStatus, DEFAULT_BUDGET};
use crate::realfn::{ExtInterval, FunctionSpec, Side, SingularKind, TailBehavior};

#[derive(Clone, Debug, PartialEq)]
pub enum BvError {
    /// Refining partitions kept growing past the documented stopping bound.
    UnboundedVariation,
    /// The underlying integral diverged or could not be resolved.
    Integral(QuadStatus),
    Quad(QuadError),
    Domain(&'static str),
}

impl fmt::Display for BvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BvError::UnboundedVariation => f.write_str("variation grows without bound"),
            BvError::Integral(s) => write!(f, "integral did not converge: {s}"),
            BvError::Quad(e) => write!(f, "{e}"),
            BvError::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

impl core::error::Error for BvError {}

impl From<QuadError> for BvError {
    fn from(e: QuadError) -> Self {
        BvError::Quad(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Total-variation profile of a function over an interval.
#[derive(Clone, Debug)]
pub struct BVProfile {
    pub interval: ExtInterval,
    pub variation: f64,
    pub inf_abs: f64,
    /// Monotone pieces (sub-interval endpoints and direction) when the
    /// decomposition is exact.
    pub monotone_pieces: Vec<(f64, f64, Direction)>,
    /// True when `variation` is exact (critical-point decomposition);
    /// false for the refining-partition lower bound.
    pub exact: bool,
}

const REFINE_MAX_DEPTH: u32 = 20;
const TAIL_CAP: f64 = 1e9;

fn finite_window(i: &ExtInterval) -> (f64, f64, bool) {
    // variation over an unbounded interval is a limit over [−T, T]; the
    // builtin kinds have flattened out long before the cap
    let lo = if i.lo().is_finite() { i.lo() } else { -TAIL_CAP };
    let hi = if i.hi().is_finite() { i.hi() } else { TAIL_CAP };
    (lo, hi, !i.lo().is_finite() || !i.hi().is_finite())
}

fn windowed(g: &FunctionSpec, i: &ExtInterval) -> (f64, f64, bool) {
    // kinds with a decaying dense oscillation get a narrower cap where the
    // critical-point enumeration stays tractable; the tail contribution is
    // below the reporting precision
    let cap = match g.kind() {
        crate::realfn::Kind::SincSquared { a } => (2e4 / a.abs().max(1e-6)).min(TAIL_CAP),
        _ => TAIL_CAP,
    };
    let lo = if i.lo().is_finite() { i.lo() } else { -cap };
    let hi = if i.hi().is_finite() { i.hi() } else { cap };
    (lo, hi, !i.lo().is_finite() || !i.hi().is_finite())
}

fn real_at(g: &FunctionSpec, x: f64) -> f64 {
    g.eval_or_zero(x).re
}

fn imag_at(g: &FunctionSpec, x: f64) -> f64 {
    g.eval_or_zero(x).im
}

fn variation_from_nodes(
    g: &FunctionSpec,
    nodes: &[f64],
    component: fn(&FunctionSpec, f64) -> f64,
) -> (f64, Vec<(f64, f64, Direction)>) {
    let mut total = 0.0;
    let mut pieces = Vec::with_capacity(nodes.len().saturating_sub(1));
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (va, vb) = (component(g, a), component(g, b));
        total += (vb - va).abs();
        pieces.push((
            a,
            b,
            if vb >= va { Direction::Increasing } else { Direction::Decreasing },
        ));
    }
    (total, pieces)
}

/// Refining dyadic partitions up to depth 20, stopping when two successive
/// refinements differ by < 1e−10·(1 + V); a certified lower bound.
fn variation_refining(
    g: &FunctionSpec,
    lo: f64,
    hi: f64,
    component: fn(&FunctionSpec, f64) -> f64,
) -> Result<f64, BvError> {
    let mut prev = 0.0;
    let mut n = 8usize;
    for depth in 0..=REFINE_MAX_DEPTH {
        let mut total = 0.0;
        let mut last = component(g, lo);
        for i in 1..=n {
            let x = lo + (hi - lo) * (i as f64) / (n as f64);
            let v = component(g, x);
            total += (v - last).abs();
            last = v;
        }
        if depth > 2 && (total - prev).abs() < 1e-10 * (1.0 + total) {
            return Ok(total);
        }
        if total > 1e12 {
            return Err(BvError::UnboundedVariation);
        }
        prev = total;
        n *= 2;
    }
    if prev > 1e8 {
        Err(BvError::UnboundedVariation)
    } else {
        Ok(prev)
    }
}

/// Total variation of g over I.  Exact for piecewise-monotone built-ins via
/// critical points; otherwise a refining-partition lower bound.  Complex
/// values contribute the variation of the real and imaginary parts, added.
pub fn variation(g: &FunctionSpec, interval: ExtInterval) -> Result<BVProfile, BvError> {
    let (lo, hi, truncated) = windowed(g, &interval);
    if !(lo < hi) {
        return Ok(BVProfile {
            interval,
            variation: 0.0,
            inf_abs: g.eval_or_zero(lo).norm(),
            monotone_pieces: Vec::new(),
            exact: true,
        });
    }

    // unbounded declared singular points inside the window
    for sp in g.singular_points() {
        if sp.at >= lo && sp.at <= hi && matches!(sp.kind, SingularKind::Unbounded) {
            return Err(BvError::UnboundedVariation);
        }
    }

    // node skeleton: critical points + breakpoints + endpoints, with
    // one-sided samples around discontinuities so jumps are counted
    let criticals = g.interior_critical_points(lo, hi);
    let exact = criticals.is_some();
    let mut nodes = vec![lo];
    if let Some(c) = &criticals {
        nodes.extend_from_slice(c);
    }
    let breaks = g.breakpoints(lo, hi);
    nodes.extend_from_slice(&breaks);
    nodes.push(hi);
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nodes.dedup_by(|a, b| (*a - *b).abs() < 1e-13 * (1.0 + a.abs()));

    let mut refined: Vec<f64> = Vec::with_capacity(nodes.len() * 2);
    for &x in &nodes {
        if g.is_singular_at(x) || breaks.contains(&x) {
            let h = 1e-9 * (1.0 + x.abs());
            if x - h > lo {
                refined.push(x - h);
            }
            if x + h < hi {
                refined.push(x + h);
            }
        }
        refined.push(x);
    }
    refined.retain(|&x| (lo..=hi).contains(&x));
    refined.sort_by(|a, b| a.partial_cmp(b).unwrap());
    refined.dedup();

    let is_real = g.is_real_valued();
    let var;
    let pieces;
    if exact {
        let (vr, p) = variation_from_nodes(g, &refined, real_at);
        let vi = if is_real { 0.0 } else { variation_from_nodes(g, &refined, imag_at).0 };
        var = vr + vi;
        pieces = p;
    } else {
        let vr = variation_refining(g, lo, hi, real_at)?;
        let vi = if is_real { 0.0 } else { variation_refining(g, lo, hi, imag_at)? };
        var = vr + vi;
        pieces = Vec::new();
    }

    let _ = truncated;

    // inf |g| on the same skeleton plus a per-piece sample grid
    let mut inf_abs = f64::INFINITY;
    for w in refined.windows(2) {
        for k in 0..=8 {
            let x = w[0] + (w[1] - w[0]) * (k as f64) / 8.0;
            if g.is_singular_at(x) {
                continue;
            }
            inf_abs = inf_abs.min(g.eval_or_zero(x).norm());
        }
        if is_real && real_at(g, w[0]) * real_at(g, w[1]) < 0.0 {
            inf_abs = 0.0;
        }
    }
    if !inf_abs.is_finite() {
        inf_abs = 0.0;
    }

    Ok(BVProfile { interval, variation: var, inf_abs, monotone_pieces: pieces, exact })
}

/// Variation of the normalized representative g̃ (right-continuous on
/// [a, b), redefined to 0 at b): adds the closing jump |g(b⁻)|.
pub fn normalized_variation(g: &FunctionSpec, interval: ExtInterval) -> Result<f64, BvError> {
    let base = variation(g, interval)?;
    let (_, hi, _) = finite_window(&interval);
    let g_end = if interval.hi().is_finite() {
        g.eval_or_zero(hi - 1e-9 * (1.0 + hi.abs())).norm()
    } else {
        g.eval_or_zero(TAIL_CAP).norm()
    };
    Ok(base.variation + g_end)
}

/// Alexiewicz norm ‖f‖_I = sup over subintervals J ⊂ I of |∫_J f|,
/// computed as the oscillation (diameter) of the indefinite integral,
/// sampled at the sign changes of f where it attains its extrema.
pub fn alexiewicz_norm(f: &FunctionSpec, interval: ExtInterval, tol: f64) -> Result<f64, BvError> {
    if !(tol > 0.0) {
        return Err(BvError::Domain("tolerance must be positive"));
    }
    let (lo, hi) = (interval.lo(), interval.hi());

    let mut f_values: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
    let mut acc = Complex64::new(0.0, 0.0);

    // the scanned finite window must cover the support and breakpoints (a
    // compactly supported f puts all its mass there); beyond it the walks
    // pick up whatever oscillation remains
    let sup = f.support();
    let fin_lo = if lo.is_finite() {
        lo
    } else {
        let mut t = -1.0_f64;
        if sup.lo().is_finite() {
            t = t.min(sup.lo().max(-64.0));
        }
        for b in f.breakpoints(-64.0, 64.0) {
            t = t.min(b - 0.5);
        }
        t
    };
    let fin_hi = if hi.is_finite() {
        hi
    } else {
        let mut t = 1.0_f64;
        if sup.hi().is_finite() {
            t = t.max(sup.hi().min(64.0));
        }
        for b in f.breakpoints(-64.0, 64.0) {
            t = t.max(b + 0.5);
        }
        t
    };

    if !lo.is_finite() {
        // F(fin_lo) anchors the finite window; the outward walk below adds
        // the left-tail extrema of F (its limit there is 0 by definition)
        let left = quad::integrate(f, ExtInterval::new(f64::NEG_INFINITY, fin_lo).unwrap(), tol)?;
        match left.status {
            QuadStatus::Converged => {
                acc = left.value().unwrap();
                f_values.push(acc);
            }
            s => return Err(BvError::Integral(s)),
        }
        walk_tail_extrema(f, fin_lo, acc, Complex64::new(0.0, 0.0), tol, true, &mut f_values)?;
    }

    let mut nodes: Vec<f64> = vec![fin_lo];
    nodes.extend(f.breakpoints(fin_lo, fin_hi));
    // sign-change skeleton on the finite window, bisection-refined: the
    // indefinite integral attains its extrema exactly at these crossings
    let n_scan = 1024;
    let mut prev_sign = 0.0;
    let mut prev_x = fin_lo;
    for i in 0..=n_scan {
        let x = fin_lo + (fin_hi - fin_lo) * (i as f64) / (n_scan as f64);
        if f.is_singular_at(x) {
            continue;
        }
        let v = f.eval_or_zero(x).re;
        let s = if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            0.0
        };
        if s != 0.0 && prev_sign != 0.0 && s != prev_sign {
            let (mut a, mut b) = (prev_x, x);
            let mut fa = f.eval_or_zero(a).re;
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                let fm = f.eval_or_zero(mid).re;
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if fa.signum() == fm.signum() {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            nodes.push(0.5 * (a + b));
        }
        if s != 0.0 {
            prev_sign = s;
            prev_x = x;
        }
    }
    nodes.push(fin_hi);
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nodes.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * (1.0 + a.abs()));

    let node_tol = (tol / (nodes.len().max(1) as f64)).max(1e-14);
    for w in nodes.windows(2) {
        let seg = quad::integrate(f, ExtInterval::new(w[0], w[1]).unwrap(), node_tol)?;
        match seg.status {
            QuadStatus::Converged => {
                acc += seg.value().unwrap();
                f_values.push(acc);
            }
            s => return Err(BvError::Integral(s)),
        }
    }

    if !hi.is_finite() {
        let (_, behavior) = f.tail(Side::Right);
        let support_covered =
            sup.hi().is_finite() && sup.hi() <= fin_hi && matches!(behavior, TailBehavior::Zero);
        if !support_covered {
            let rest = quad::integrate(f, ExtInterval::new(fin_hi, f64::INFINITY).unwrap(), tol)?;
            let limit = match rest.status {
                QuadStatus::Converged => acc + rest.value().unwrap(),
                s => return Err(BvError::Integral(s)),
            };
            walk_tail_extrema(f, fin_hi, acc, limit, tol, false, &mut f_values)?;
            f_values.push(limit);
        }
    }

    // oscillation of F: max−min for real f, hull diameter for complex
    let norm = if f.is_real_valued() {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in &f_values {
            min = min.min(v.re);
            max = max.max(v.re);
        }
        max - min
    } else {
        let mut d = 0.0_f64;
        for i in 0..f_values.len() {
            for j in i + 1..f_values.len() {
                d = d.max((f_values[i] - f_values[j]).norm());
            }
        }
        d
    };
    Ok(norm)
}

/// Walk F outward along one infinite tail in lobe-scale segments, pushing
/// its values so the extrema are captured.  F oscillates toward `limit`
/// inside a shrinking envelope, so the walk stops once one segment's swing
/// can no longer move the running extrema (or is below tolerance).
fn walk_tail_extrema(
    f: &FunctionSpec,
    start: f64,
    f_start: Complex64,
    limit: Complex64,
    tol: f64,
    leftward: bool,
    out: &mut Vec<Complex64>,
) -> Result<(), BvError> {
    // segment width from the observed oscillation near the start; one
    // sign-change gap is one lobe of f
    let mut width = f64::INFINITY;
    let dir = if leftward { -1.0 } else { 1.0 };
    let mut last_zero: Option<f64> = None;
    let mut prev_sign = 0.0;
    for i in 0..512 {
        let x = start + dir * 0.05 * (i as f64);
        let v = f.eval_or_zero(x).re;
        let s = if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            0.0
        };
        if s != 0.0 && prev_sign != 0.0 && s != prev_sign {
            if let Some(z) = last_zero {
                width = width.min((x - z).abs());
            }
            last_zero = Some(x);
        }
        if s != 0.0 {
            prev_sign = s;
        }
    }
    if !width.is_finite() {
        width = 4.0; // no oscillation seen: F is near-monotone out here
    }
    let width = width.max(1e-3);

    // step zero-to-zero: F attains its local extrema exactly at the sign
    // changes of f, so segment ends must sit on them
    let next_zero = |from: f64| -> f64 {
        let fine = width / 16.0;
        let mut prev = f.eval_or_zero(from + dir * 1e-9).re;
        for i in 1..=96 {
            let x = from + dir * fine * i as f64;
            let v = f.eval_or_zero(x).re;
            if prev != 0.0 && v != 0.0 && prev.signum() != v.signum() {
                // bisect the crossing
                let (mut a, mut b) = (from + dir * fine * (i as f64 - 1.0), x);
                let mut fa = f.eval_or_zero(a).re;
                for _ in 0..60 {
                    let mid = 0.5 * (a + b);
                    let fm = f.eval_or_zero(mid).re;
                    if fm == 0.0 {
                        return mid;
                    }
                    if fa.signum() == fm.signum() {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                return 0.5 * (a + b);
            }
            if v != 0.0 {
                prev = v;
            }
        }
        from + dir * width
    };

    let mut t = start;
    let mut acc = f_start;
    let mut swing_max = 0.0_f64;
    let mut swing_min = 0.0_f64;
    for _ in 0..2048 {
        let z = next_zero(t);
        let (a, b) = if leftward { (z, t) } else { (t, z) };
        if !(a < b) {
            break;
        }
        let seg = quad::integrate_with_budget(f, ExtInterval::new(a, b).unwrap(), tol, DEFAULT_BUDGET)?;
        let sv = match seg.status {
            QuadStatus::Converged => seg.value().unwrap(),
            s => return Err(BvError::Integral(s)),
        };
        if leftward {
            acc -= sv;
        } else {
            acc += sv;
        }
        out.push(acc);
        t = z;
        swing_max = swing_max.max(acc.re - limit.re);
        swing_min = swing_min.min(acc.re - limit.re);
        let lobe = sv.norm();
        if lobe <= tol || lobe <= 0.9 * swing_max.max(-swing_min) {
            break;
        }
    }
    Ok(())
}

/// Both sides of Lemma-2-style product control: the plain bound
/// |∫f|·inf|g| + ‖f‖·Vg and the normalized variant ‖f‖·Vg̃.
#[derive(Clone, Copy, Debug)]
pub struct ProductBound {
    pub bound: f64,
    pub normalized_bound: f64,
}

pub fn product_bound(
    f: &FunctionSpec,
    g: &FunctionSpec,
    interval: ExtInterval,
    tol: f64,
) -> Result<ProductBound, BvError> {
    let gi = variation(g, interval)?;
    let int_f = quad::integrate(f, interval, tol)?;
    let abs_int_f = match int_f.status {
        QuadStatus::Converged => int_f.value().unwrap().norm(),
        s => return Err(BvError::Integral(s)),
    };
    let norm_f = alexiewicz_norm(f, interval, tol)?;
    let v_norm = normalized_variation(g, interval)?;
    Ok(ProductBound {
        bound: abs_int_f * gi.inf_abs + norm_f * gi.variation,
        normalized_bound: norm_f * v_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn variation_exp_abs_over_r() {
        let g = FunctionSpec::exp_abs();
        let p = variation(&g, ExtInterval::full()).unwrap();
        assert!(p.exact);
        assert!((p.variation - 2.0).abs() < 1e-9, "got {}", p.variation);
    }

    #[test]
    fn variation_sin_on_period() {
        let g = FunctionSpec::sinusoid(1.0);
        let i = ExtInterval::new(0.0, 2.0 * PI).unwrap();
        let p = variation(&g, i).unwrap();
        assert!(p.exact);
        assert!((p.variation - 4.0).abs() < 1e-12, "got {}", p.variation);
        // cross-check against the refining-partition route
        let v = variation_refining(&g, 0.0, 2.0 * PI, real_at).unwrap();
        assert!((v - 4.0).abs() < 1e-6, "refined {v}");
    }

    #[test]
    fn variation_constant_is_zero() {
        let g = FunctionSpec::indicator(-5.0, 5.0).unwrap().scaled_real(3.0);
        let p = variation(&g, ExtInterval::new(-4.0, 4.0).unwrap()).unwrap();
        assert_eq!(p.variation, 0.0);
        assert!((p.inf_abs - 3.0).abs() < 1e-12);
    }

    #[test]
    fn variation_additive_over_adjacent_intervals() {
        let g = FunctionSpec::rational_odd();
        let v1 = variation(&g, ExtInterval::new(-3.0, 0.5).unwrap()).unwrap().variation;
        let v2 = variation(&g, ExtInterval::new(0.5, 4.0).unwrap()).unwrap().variation;
        let v = variation(&g, ExtInterval::new(-3.0, 4.0).unwrap()).unwrap().variation;
        assert!((v - (v1 + v2)).abs() < 1e-12);
    }

    #[test]
    fn variation_rational_odd_full_line() {
        // 0 → −1/2 → 1/2 → 0: total 2
        let g = FunctionSpec::rational_odd();
        let p = variation(&g, ExtInterval::full()).unwrap();
        assert!((p.variation - 2.0).abs() < 1e-6, "got {}", p.variation);
    }

    #[test]
    fn variation_unbounded_kind_errors() {
        let g = FunctionSpec::power_signed(-0.5);
        let r = variation(&g, ExtInterval::new(-1.0, 1.0).unwrap());
        assert!(matches!(r, Err(BvError::UnboundedVariation)));
    }

    #[test]
    fn alexiewicz_indicator() {
        let f = FunctionSpec::indicator(0.0, 1.0).unwrap();
        let n = alexiewicz_norm(&f, ExtInterval::full(), 1e-9).unwrap();
        assert!((n - 1.0).abs() < 1e-8, "got {n}");
    }

    #[test]
    fn alexiewicz_sin_on_period() {
        // F(x) = 1 − cos x ranges over [0, 2]
        let f = FunctionSpec::sinusoid(1.0);
        let n = alexiewicz_norm(&f, ExtInterval::new(0.0, 2.0 * PI).unwrap(), 1e-9).unwrap();
        assert!((n - 2.0).abs() < 1e-8, "got {n}");
    }

    #[test]
    fn product_bound_sin_exp() {
        // f = sin, g = e^{−x} on [0, 2π]:
        // bound = 0·e^{−2π} + 2·(1 − e^{−2π}); actual |∫fg| = (1−e^{−2π})/2
        let f = FunctionSpec::sinusoid(1.0);
        let g = FunctionSpec::exp_abs().with_support(ExtInterval::new(0.0, 2.0 * PI).unwrap());
        let i = ExtInterval::new(0.0, 2.0 * PI).unwrap();
        let pb = product_bound(&f, &g, i, 1e-9).unwrap();
        let expect = 2.0 * (1.0 - (-2.0 * PI).exp());
        assert!((pb.bound - expect).abs() < 1e-6, "bound {} vs {}", pb.bound, expect);

        let fg = FunctionSpec::product(&f, &g);
        let actual = quad::integrate(&fg, i, 1e-10).unwrap().value().unwrap().norm();
        let closed = (1.0 - (-2.0 * PI).exp()) / 2.0;
        assert!((actual - closed).abs() < 1e-8);
        assert!(actual <= pb.bound + 1e-9);
        assert!(actual <= pb.normalized_bound + 1e-9);
    }

    #[test]
    fn product_bound_constant_g() {
        // g ≡ c: variation term vanishes, bound = c·|∫f|
        let f = FunctionSpec::gauss();
        let g = FunctionSpec::indicator(-8.0, 8.0).unwrap().scaled_real(0.7);
        let i = ExtInterval::new(-6.0, 6.0).unwrap();
        let pb = product_bound(&f, &g, i, 1e-9).unwrap();
        let int_f = quad::integrate(&f, i, 1e-10).unwrap().value().unwrap().norm();
        assert!((pb.bound - 0.7 * int_f).abs() < 1e-7);
    }
}
