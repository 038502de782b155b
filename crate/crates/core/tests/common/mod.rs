#![allow(dead_code)] // each test target compiles its own copy and uses a subset

//! Independent oracles for the derived expected values.  Everything here
//! stays off the library's code paths: plain composite Simpson refinement,
//! convergent power series, and a contour rotation for oscillatory tails.

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Composite-Simpson value refined by doubling until stable.
pub fn simpson<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, eps: f64) -> Complex64 {
    let mut n = 64usize;
    let mut prev = simpson_fixed(&f, a, b, n);
    loop {
        n *= 2;
        let cur = simpson_fixed(&f, a, b, n);
        if (cur - prev).norm() < eps || n > 1 << 22 {
            return cur;
        }
        prev = cur;
    }
}

fn simpson_fixed<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, n: usize) -> Complex64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let x = a + h * i as f64;
        acc += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * (h / 3.0)
}

/// ∫_{x0}^∞ e^{iu}·u^{−β} du for x0 > 0 via the rotation u = x0 + iv:
/// i·e^{ix0}·∫_0^∞ e^{−v}(x0+iv)^{−β} dv (the integrand is analytic and the
/// arc at infinity vanishes).
pub fn rotated_tail(beta: f64, x0: f64) -> Complex64 {
    assert!(x0 > 0.0);
    let g = |v: f64| {
        let z = Complex64::new(x0, v);
        (-v).exp() * z.powf(-beta)
    };
    // e^{−v} localizes everything below v ≈ 45
    let integral = simpson(g, 0.0, 45.0, 1e-13);
    Complex64::new(0.0, 1.0) * Complex64::new(x0.cos(), x0.sin()) * integral
}

/// ∫_0^1 e^{iu}·u^{−β} du for β < 1 by the entire series
/// Σ_k i^k / (k!·(k+1−β)).
pub fn head_series(beta: f64) -> Complex64 {
    assert!(beta < 1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut ik = Complex64::new(1.0, 0.0);
    let mut kfact = 1.0_f64;
    for k in 0..40 {
        if k > 0 {
            kfact *= k as f64;
        }
        sum += ik / (kfact * (k as f64 + 1.0 - beta));
        ik *= Complex64::new(0.0, 1.0);
    }
    sum
}

/// ∫_0^∞ e^{iu}·u^{−β} du (0 < β < 1), head series plus rotated tail.
pub fn oscillatory_power_integral(beta: f64) -> Complex64 {
    head_series(beta) + rotated_tail(beta, 1.0)
}

/// Si(x) = ∫_0^x sin t/t dt by its power series (fine for |x| ≲ 15).
pub fn si(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = x; // x^{2k+1}/(2k+1)! starting at k = 0
    for k in 0..32 {
        let n = (2 * k + 1) as f64;
        sum += if k % 2 == 0 { term / n } else { -term / n };
        term *= x * x / ((n + 1.0) * (n + 2.0));
    }
    sum
}

#[allow(dead_code)]
pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1e-300)
}
