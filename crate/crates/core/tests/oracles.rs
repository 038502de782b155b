//! Engine values against the independent oracles: contour-rotated tails,
//! convergent series, and closed forms assembled off the engine's code
//! paths.  Also the divergence fixtures whose whole point is refusing to
//! produce a number.

mod common;

use std::f64::consts::PI;

use oscint_core::conv;
use oscint_core::corpus;
use oscint_core::fourier;
use oscint_core::invert;
use oscint_core::quad::{self, QuadStatus};
use oscint_core::realfn::{ExtInterval, FunctionSpec, PhasePart};

use common::{head_series, oscillatory_power_integral, rotated_tail};

/// ∫_1^∞ e^{ix}·x^{−1/2} dx against the contour-rotation oracle.
#[test]
fn oscillatory_tail_against_rotation_oracle() {
    let oracle = rotated_tail(0.5, 1.0);
    let got = quad::oscillatory_tail(
        |u: f64| u.powf(-0.5),
        PhasePart { coeff: 1.0, exponent: 1.0 },
        0.0,
        1.0,
        1e-9,
    )
    .unwrap();
    assert_eq!(got.status, QuadStatus::Converged);
    let v = got.value().unwrap();
    assert!((v - oracle).norm() < 1e-8, "engine {v:?} vs oracle {oracle:?}");
}

/// The same tail reached through `integrate` on a full function spec.
#[test]
fn integrate_tail_against_rotation_oracle() {
    // sgn(x)|x|^{−1/2}·e^{ix} restricted to [1, ∞): the signed power is
    // positive there, so the modulated integral is the pure tail
    let f = FunctionSpec::power_signed(-0.5)
        .with_support(ExtInterval::new(1.0, f64::INFINITY).unwrap());
    let got = fourier::transform_point(&f, -1.0, 1e-9).unwrap();
    // e^{−i(−1)x} = e^{ix}
    let oracle = rotated_tail(0.5, 1.0);
    assert!((got.value().unwrap() - oracle).norm() < 1e-8);
}

/// Lemma-1(a)-style endpoint value against the substitution oracle
/// u = x^{−γ}: ∫_0^1 e^{ix^{−γ}}x^δ dx = (1/γ)·∫_1^∞ e^{iu}u^{−(δ+γ+1)/γ} du.
#[test]
fn endpoint_singularity_against_substitution_oracle() {
    for (gamma, delta) in [(1.0, -0.5), (0.5, -1.2), (2.0, 0.0)] {
        let beta = (delta + gamma + 1.0) / gamma;
        let oracle = rotated_tail(beta, 1.0) / gamma;
        let got = quad::endpoint_singularity(gamma, delta, 1e-9).unwrap();
        assert_eq!(got.status, QuadStatus::Converged, "γ={gamma} δ={delta}");
        let v = got.value().unwrap();
        assert!(
            (v - oracle).norm() < 1e-7,
            "γ={gamma} δ={delta}: engine {v:?} vs oracle {oracle:?}"
        );
    }
}

/// The head series and the rotated tail assemble Γ(1/2)e^{iπ/4}:
/// a consistency check of the oracles themselves.
#[test]
fn oracle_self_check_fresnel_constant() {
    let full = oscillatory_power_integral(0.5);
    let expect = PI.sqrt() * num_complex::Complex64::new((PI / 4.0).cos(), (PI / 4.0).sin());
    assert!((full - expect).norm() < 1e-10, "{full:?} vs {expect:?}");
    let head = head_series(0.5);
    assert!(head.norm() < 2.5); // sanity: the pieces are finite and split
}

/// Convolution inverse identity: f∗g = (f̂·ĝ)ˇ at sampled x.
#[test]
fn convolution_inverse_identity() {
    let f = FunctionSpec::rational_odd();
    let g = FunctionSpec::gauss();
    let rep = conv::conv_inverse_check(&f, &g, &[1.0], 1e-6).unwrap();
    assert!(rep.max_deviation < 1e-4, "deviation {}", rep.max_deviation);

    let gg = FunctionSpec::gauss();
    let rep = conv::conv_inverse_check(&gg, &gg, &[0.0], 1e-6).unwrap();
    let want = (PI / 2.0).sqrt();
    assert!((rep.lhs[0].re - want).abs() < 1e-5);
    assert!((rep.rhs[0].re - want).abs() < 1e-4);

    let zero = FunctionSpec::zero();
    let rep = conv::conv_inverse_check(&gg, &zero, &[0.7], 1e-7).unwrap();
    assert!(rep.lhs[0].norm() < 1e-9 && rep.rhs[0].norm() < 1e-7);
}

/// Both functions sit in the admissible class yet their convolution exists
/// nowhere: the engine must refuse a number at every probed point.
#[test]
fn nowhere_convergent_convolution_pair() {
    let f = corpus::sin_over_sqrt();
    let g = corpus::sincos_over_sqrt();
    for x in [0.0, 0.7, -1.3] {
        let r = conv::convolve(&f, &g, x, 1e-6).unwrap();
        assert!(
            matches!(r.quad.status, QuadStatus::Diverged | QuadStatus::Inconclusive),
            "x={x}: produced {:?}",
            r.quad.status
        );
        assert!(r.quad.value().is_none());
    }
}

/// A narrow unit-mass bump acts as an approximate identity:
/// (f∗g)∗h ≈ f∗g when h has width 1e−2.
#[test]
fn mollifier_approximates_identity() {
    let f = FunctionSpec::indicator(0.0, 1.0).unwrap();
    let g = FunctionSpec::exp_abs();
    let h = FunctionSpec::gauss_mollifier(1e-2);
    let x = 0.4;
    let fg = conv::convolve(&f, &g, x, 1e-9).unwrap().quad.value().unwrap();
    let fg_spec = conv::conv_spec(&f, &g, 1e-9).unwrap();
    let smeared = conv::convolve(&fg_spec, &h, x, 1e-6).unwrap().quad.value().unwrap();
    assert!((smeared - fg).norm() < 1e-3, "{smeared:?} vs {fg:?}");
}

/// Stationary-phase modulus tracks the quadrature for the second registered
/// chirp family member.
#[test]
fn stationary_phase_second_family_member() {
    let f = FunctionSpec::chirp_one_sided(1.0, 3.0);
    let s = 20.0;
    let got = fourier::transform_point(&f, s, 1e-8).unwrap().value().unwrap();
    let asym = invert::stationary_phase_asymptotic(1.0, 3.0, s).unwrap();
    let rel = (got.norm() - asym.norm()).abs() / got.norm();
    assert!(rel < 0.10, "relative gap {rel}");
}

/// The wider-parameter instance of the non-reversible fixture gives the
/// same dual verdict.
#[test]
fn nonreversible_second_instance() {
    let rep = invert::nonreversible_fixture(2.5, 4.0, 1e-7).unwrap();
    assert!(rep.forward_statuses.iter().all(|&(_, s)| s == QuadStatus::Converged));
    assert!(rep.inverse_diverges);
}

/// Parseval with a vanishing left factor.
#[test]
fn parseval_zero_psi() {
    let psi = FunctionSpec::zero();
    let phi = FunctionSpec::gauss();
    let rep = fourier::parseval(&psi, &phi, 1e-8).unwrap();
    assert!(rep.lhs.norm() < 1e-9 && rep.rhs.norm() < 1e-9);
    assert!(rep.agree);
}

/// The interval-average identity holds for the Frullani entry as well,
/// including across its interior behaviour.
#[test]
fn interval_average_frullani_entry() {
    let f = FunctionSpec::sin_over_abs(1.0);
    let (a, b) = (2.0, 3.0);
    let via_identity = fourier::interval_average(&f, a, b, 1e-8).unwrap();
    // direct: ∫_a^b i·log|(s−1)/(s+1)| ds via the closed form
    let closed = corpus::corpus_lookup("ex1c").unwrap().fhat_closed_form.unwrap();
    let direct = quad::integrate(&closed, ExtInterval::new(a, b).unwrap(), 1e-10)
        .unwrap()
        .value()
        .unwrap();
    assert!(
        (via_identity - direct).norm() < 1e-6,
        "identity {via_identity:?} vs direct {direct:?}"
    );
}

/// Registered lacunary frequencies are refused by the transform classifier
/// exactly at the mass points.
#[test]
fn lacunary_transform_matches_classifier() {
    let seq = oscint_core::realfn::CoeffSeq::finite(vec![0.8, 0.4], vec![1.5, 4.0]).unwrap();
    let f = FunctionSpec::lacunary(seq.clone());
    // away from the masses the engine value matches the weighted-log form
    let s = 2.5;
    let got = fourier::transform_point(&f, s, 1e-8).unwrap().value().unwrap();
    let want = match corpus::lacunary_transform(&seq, s).unwrap() {
        corpus::LacunaryOutcome::Value { value, .. } => value,
        other => panic!("unexpected {other:?}"),
    };
    assert!((got - want).norm() < 1e-6, "engine {got:?} vs series {want:?}");
    // at a mass the classifier refuses
    assert!(matches!(
        fourier::transform_point(&f, 4.0, 1e-8),
        Err(fourier::FourierError::ExistenceRefuted(_))
    ));
}

/// The transform identity also holds where both transforms exist at 0.
#[test]
fn convolution_transform_identity_at_zero() {
    let f = FunctionSpec::exp_abs();
    let g = FunctionSpec::gauss();
    let rep = conv::conv_transform_check(&f, &g, &[0.0], 1e-7).unwrap();
    // both sides are the product of the total masses: 2·√π
    let want = 2.0 * PI.sqrt();
    assert!((rep.lhs[0].re - want).abs() < 1e-5, "{:?}", rep.lhs[0]);
    assert!(rep.max_deviation < 1e-5);
}

/// At s = 0 both sides of the frequency-differentiation identity vanish
/// for an even function (the moment integrand x·f(x) is odd).
#[test]
fn freq_diff_vanishes_at_zero_for_even_f() {
    let f = FunctionSpec::gauss();
    let rep = fourier::freq_diff_check(&f, &[0.0], 1e-8).unwrap();
    assert!(rep.lhs[0].norm() < 1e-7 && rep.rhs[0].norm() < 1e-7);
}

/// The recorded truncation bound dominates the effect of extending the
/// series: evaluating a longer truncation moves values by less than it.
#[test]
fn lacunary_truncation_bound_is_recorded() {
    let a8: Vec<f64> = (1..=8).map(|n| 0.5_f64.powi(n)).collect();
    let b8: Vec<f64> = (1..=8).map(|n| 1.0 + 0.1 * n as f64).collect();
    let tail_a: f64 = (9..=64).map(|n| 0.5_f64.powi(n)).sum();
    let tail_ab: f64 = (9..=64)
        .map(|n| 0.5_f64.powi(n) * (1.0 + 0.1 * n as f64))
        .sum();
    let short = FunctionSpec::lacunary(
        oscint_core::realfn::CoeffSeq::new(a8, b8, tail_a, tail_ab).unwrap(),
    );
    let a16: Vec<f64> = (1..=16).map(|n| 0.5_f64.powi(n)).collect();
    let b16: Vec<f64> = (1..=16).map(|n| 1.0 + 0.1 * n as f64).collect();
    let long = FunctionSpec::lacunary(
        oscint_core::realfn::CoeffSeq::finite(a16, b16).unwrap(),
    );
    for x in [0.5, 1.0, 3.0, -2.0] {
        let bound = short.lacunary_truncation_bound(x).unwrap();
        let gap = (short.eval_or_zero(x) - long.eval_or_zero(x)).norm();
        assert!(gap <= bound, "x={x}: gap {gap} vs bound {bound}");
    }
}
