//! Nonlinear sequence acceleration for lobe partial sums: Wynn's epsilon
//! algorithm on complex sequences, with an iterated Euler transformation as
//! the fallback when the epsilon table turns numerically unstable.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

/// Relative cancellation level below which an epsilon-table difference is
/// treated as noise rather than signal.
const CANCEL_EPS: f64 = 1e-13;

#[derive(Clone, Copy, Debug)]
pub struct AccelResult {
    pub value: Complex64,
    /// Heuristic error estimate from the last diagonal steps.
    pub err_est: f64,
    /// True when the epsilon table hit pairwise cancellation and the result
    /// came from (or should be compared against) the Euler fallback.
    pub unstable: bool,
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums.
/// Returns the best diagonal estimate and a drift-based error estimate.
/// Even-order table columns estimate the limit; odd ones are auxiliary.
pub fn wynn_epsilon(seq: &[Complex64]) -> AccelResult {
    let n = seq.len();
    if n == 0 {
        return AccelResult { value: Complex64::new(0.0, 0.0), err_est: f64::MAX, unstable: false };
    }
    if n < 3 {
        return AccelResult { value: seq[n - 1], err_est: f64::MAX, unstable: false };
    }

    let scale = seq.iter().map(|z| z.norm()).fold(0.0_f64, f64::max).max(1e-300);

    let mut prev: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n]; // ε_{k−1}
    let mut curr: Vec<Complex64> = seq.to_vec(); // ε_k
    let mut best = *seq.last().unwrap();
    let mut best_err = f64::MAX;
    let mut last_even = best;
    let mut unstable = false;
    let mut k = 0usize;

    'table: while curr.len() >= 2 {
        let mut next = Vec::with_capacity(curr.len() - 1);
        for i in 0..curr.len() - 1 {
            let diff = curr[i + 1] - curr[i];
            if diff.norm() < CANCEL_EPS * scale {
                if k % 2 == 0 {
                    // two limit estimates equal to machine accuracy
                    return AccelResult {
                        value: curr[i + 1],
                        err_est: diff.norm().max(5.0 * f64::EPSILON * scale),
                        unstable,
                    };
                }
                // cancellation in an auxiliary row: truncate the table
                unstable = true;
                break 'table;
            }
            next.push(prev[i + 1] + diff.inv());
        }
        prev = core::mem::take(&mut curr);
        curr = next;
        k += 1;
        if k % 2 == 0 {
            let cand = *curr.last().unwrap();
            let err = (cand - last_even).norm();
            if err <= best_err {
                best_err = err;
                best = cand;
            }
            last_even = cand;
        }
    }

    AccelResult { value: best, err_est: best_err, unstable }
}

/// Iterated Euler transformation of the partial-sum sequence: repeated
/// pairwise averaging, taking the final element of the deepest row.
pub fn euler_transform(seq: &[Complex64]) -> AccelResult {
    if seq.is_empty() {
        return AccelResult { value: Complex64::new(0.0, 0.0), err_est: f64::MAX, unstable: false };
    }
    let mut row: Vec<Complex64> = seq.to_vec();
    let mut last = *row.last().unwrap();
    let mut err = f64::MAX;
    while row.len() >= 2 {
        let mut next = Vec::with_capacity(row.len() - 1);
        for i in 0..row.len() - 1 {
            next.push(0.5 * (row[i] + row[i + 1]));
        }
        let cand = *next.last().unwrap();
        err = (cand - last).norm();
        last = cand;
        row = next;
    }
    AccelResult { value: last, err_est: err, unstable: false }
}

/// Accelerate a partial-sum sequence: epsilon first, Euler fallback when the
/// table shows cancellation-level instability.
pub fn accelerate(seq: &[Complex64]) -> AccelResult {
    let w = wynn_epsilon(seq);
    if !w.unstable {
        return w;
    }
    let e = euler_transform(seq);
    if e.err_est < w.err_est {
        AccelResult { unstable: true, ..e }
    } else {
        w
    }
}

/// One Richardson step for a trace assumed first-order in a parameter that
/// halves between consecutive entries: r_k = 2·t_{k+1} − t_k.
pub fn richardson_halving(trace: &[Complex64]) -> Vec<Complex64> {
    trace
        .windows(2)
        .map(|w| 2.0 * w[1] - w[0])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn wynn_accelerates_alternating_harmonic() {
        // Σ (−1)^{n+1}/n = ln 2
        let mut sums = Vec::new();
        let mut s = 0.0;
        for n in 1..=14 {
            s += if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
            sums.push(c(s));
        }
        let r = wynn_epsilon(&sums);
        assert!((r.value.re - 2.0_f64.ln()).abs() < 1e-10, "got {}", r.value.re);
    }

    #[test]
    fn wynn_handles_complex_geometric() {
        // Σ z^n with z = 0.3 + 0.4i → 1/(1−z) − 1 after the n=1 start
        let z = Complex64::new(0.3, 0.4);
        let mut sums = Vec::new();
        let mut s = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for _ in 0..10 {
            s += term;
            term *= z;
            sums.push(s);
        }
        let r = wynn_epsilon(&sums);
        let exact = (Complex64::new(1.0, 0.0) - z).inv();
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn euler_accelerates_slow_alternating() {
        // Σ (−1)^n/√(n+1)
        let mut sums = Vec::new();
        let mut s = 0.0;
        for n in 0..24 {
            let t = 1.0 / ((n + 1) as f64).sqrt();
            s += if n % 2 == 0 { t } else { -t };
            sums.push(c(s));
        }
        let exact = 0.6048986434216303; // (1 − √2)·ζ(1/2), Dirichlet eta at 1/2
        let r = euler_transform(&sums);
        assert!((r.value.re - exact).abs() < 1e-6, "got {}", r.value.re);
    }

    #[test]
    fn richardson_removes_linear_term() {
        // t_k = L + c·2^{−k}
        let l = 3.25;
        let trace: Vec<Complex64> = (0..6).map(|k| c(l + 0.8 * 0.5_f64.powi(k))).collect();
        let r = richardson_halving(&trace);
        for v in r {
            assert!((v.re - l).abs() < 1e-12);
        }
    }
}
