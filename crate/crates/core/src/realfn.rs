//! Function model: descriptors of real/complex-valued functions on the
//! extended real line, with enough metadata (singularities, oscillation
//! phase, support, parity, decay certificates) for the quadrature engine
//! to pick a strategy without probing blindly.

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

/// Shorthand used throughout the crate.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// e^{iθ} with exactly zero error in the modulus bookkeeping.
pub fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RealFnError {
    /// Evaluation requested at a singular point or outside the support.
    Domain { x: f64, reason: &'static str },
    /// Interval endpoints out of order or NaN.
    BadInterval { lo: f64, hi: f64 },
    /// Constructor rejected the descriptor (bad parameters, failed probe).
    Invalid(String),
}

impl fmt::Display for RealFnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealFnError::Domain { x, reason } => write!(f, "domain error at x={x}: {reason}"),
            RealFnError::BadInterval { lo, hi } => write!(f, "bad interval [{lo}, {hi}]"),
            RealFnError::Invalid(msg) => write!(f, "invalid function spec: {msg}"),
        }
    }
}

impl core::error::Error for RealFnError {}

/// Interval on the extended real line; ±∞ allowed at either endpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtInterval {
    lo: f64,
    hi: f64,
}

impl ExtInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, RealFnError> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(RealFnError::BadInterval { lo, hi });
        }
        Ok(ExtInterval { lo, hi })
    }

    /// The whole real line.
    pub fn full() -> Self {
        ExtInterval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn intersect(&self, other: &ExtInterval) -> Option<ExtInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(ExtInterval { lo, hi })
    }

    pub fn is_symmetric(&self) -> bool {
        self.lo == -self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingularKind {
    /// |f| → ∞ at the point.
    Unbounded,
    /// Finite jump of the given magnitude.
    Jump(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularPoint {
    pub at: f64,
    pub kind: SingularKind,
}

/// Coefficient sequences for the lacunary sine series Σ aₙ sin(bₙx)/|x|,
/// truncated at the stored length, with tail-sum certificates for
/// Σ aₙ and Σ aₙ|bₙ| beyond the truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffSeq {
    a: Vec<f64>,
    b: Vec<f64>,
    tail_a: f64,
    tail_ab: f64,
}

impl CoeffSeq {
    pub fn new(a: Vec<f64>, b: Vec<f64>, tail_a: f64, tail_ab: f64) -> Result<Self, RealFnError> {
        if a.is_empty() || a.len() != b.len() {
            return Err(RealFnError::Invalid(String::from(
                "coefficient sequences must be non-empty and of equal length",
            )));
        }
        if a.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(RealFnError::Invalid(String::from("aₙ must be positive and finite")));
        }
        if b.iter().any(|&x| !x.is_finite()) {
            return Err(RealFnError::Invalid(String::from("bₙ must be finite")));
        }
        if !(tail_a >= 0.0) || !(tail_ab >= 0.0) {
            return Err(RealFnError::Invalid(String::from("tail bounds must be nonnegative")));
        }
        Ok(CoeffSeq { a, b, tail_a, tail_ab })
    }

    /// Truncated sequences with zero tail (exact finite sum).
    pub fn finite(a: Vec<f64>, b: Vec<f64>) -> Result<Self, RealFnError> {
        CoeffSeq::new(a, b, 0.0, 0.0)
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn truncation(&self) -> usize {
        self.a.len()
    }

    /// Certified bound on Σ_{n>N} aₙ.
    pub fn tail_a(&self) -> f64 {
        self.tail_a
    }

    /// Certified bound on Σ_{n>N} aₙ|bₙ|.
    pub fn tail_ab(&self) -> f64 {
        self.tail_ab
    }

    pub fn sum_a(&self) -> f64 {
        self.a.iter().sum::<f64>() + self.tail_a
    }

    pub fn sum_ab(&self) -> f64 {
        self.a.iter().zip(&self.b).map(|(a, b)| a * b.abs()).sum::<f64>() + self.tail_ab
    }
}

/// One linear piece c0 + c1·x on [lo, hi).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearPiece {
    pub lo: f64,
    pub hi: f64,
    pub c0: f64,
    pub c1: f64,
}

impl LinearPiece {
    pub fn eval(&self, x: f64) -> f64 {
        self.c0 + self.c1 * x
    }
}

type EvalFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Smooth phase factorisation f(x) = A(x)·e^{iφ(x)} supplied with first
/// derivatives so the engine can locate oscillation zeros and stationary
/// points.
#[derive(Clone)]
pub struct PhaseDescriptor {
    pub amp: RealFn,
    pub amp_deriv: RealFn,
    pub phase: RealFn,
    pub phase_deriv: RealFn,
    pub phase_second: RealFn,
}

impl fmt::Debug for PhaseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PhaseDescriptor {{ .. }}")
    }
}

#[derive(Clone)]
pub struct UserFn {
    pub eval: EvalFn,
}

impl fmt::Debug for UserFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("UserFn {{ .. }}")
    }
}

/// The built-in function kinds plus user callables.
#[derive(Clone, Debug)]
pub enum Kind {
    /// sgn(x)·|x|^p
    PowerSigned { exponent: f64 },
    /// |x|^α·e^{i|x|^ν}; `one_sided` restricts to [0, ∞) with 0 on x < 0.
    Chirp { alpha: f64, nu: f64, one_sided: bool },
    /// sin(a·x)/|x|, value 0 at the origin.
    SinOverAbs { a: f64 },
    /// x/(x²+1)
    RationalOdd,
    /// (Σ cₖ xᵏ)·e^{−αx²}
    GaussEnvelope { alpha: f64, coeffs: Vec<f64> },
    /// e^{−rate·|x|}
    ExpAbs { rate: f64 },
    /// (1−|x|) on [−1,1], zero elsewhere.
    TriangleHat,
    /// amp/(1+x²)
    Lorentz { amp: f64 },
    /// sin(freq·x), or cos(freq·x) when `cosine`.
    Sinusoid { freq: f64, cosine: bool },
    /// (sin(a·x)/(a·x))²
    SincSquared { a: f64 },
    /// Truncated lacunary series Σ aₙ sin(bₙ x)/|x|.
    LacunarySeries { coeffs: CoeffSeq },
    /// Piecewise linear, zero off the listed pieces.
    PiecewiseElementary { pieces: Vec<LinearPiece> },
    /// Arbitrary user evaluator; metadata is caller-declared.
    UserCallable { f: UserFn },
}

/// Decomposition of a tail into terms c·A(u)·e^{iφ(u)} in the outward
/// coordinate u = |x| (valid for u ≥ `from` returned alongside).  Amplitudes
/// are positive and eventually decreasing; the complex coefficient carries
/// sign and phase constants.
#[derive(Clone)]
pub struct OscTerm {
    pub coeff: Complex64,
    pub amp: RealFn,
    pub phase: PhasePart,
    /// Extra linear phase baked into the term (beyond the power law);
    /// transform modulation is added on top by the engine.
    pub lin: f64,
}

impl OscTerm {
    pub fn new(coeff: Complex64, amp: RealFn, phase: PhasePart) -> Self {
        OscTerm { coeff, amp, phase, lin: 0.0 }
    }
}

impl fmt::Debug for OscTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OscTerm {{ coeff: {:?}, phase: {:?}, .. }}", self.coeff, self.phase)
    }
}

/// Intrinsic oscillation phase of one tail term: φ(u) = c·u^p (c may be 0).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePart {
    pub coeff: f64,
    pub exponent: f64,
}

impl PhasePart {
    pub fn none() -> Self {
        PhasePart { coeff: 0.0, exponent: 1.0 }
    }

    pub fn linear(coeff: f64) -> Self {
        PhasePart { coeff, exponent: 1.0 }
    }

    pub fn eval(&self, u: f64) -> f64 {
        if self.coeff == 0.0 {
            0.0
        } else {
            self.coeff * u.powf(self.exponent)
        }
    }

    pub fn deriv(&self, u: f64) -> f64 {
        if self.coeff == 0.0 {
            0.0
        } else {
            self.coeff * self.exponent * u.powf(self.exponent - 1.0)
        }
    }

    pub fn second(&self, u: f64) -> f64 {
        if self.coeff == 0.0 {
            0.0
        } else {
            self.coeff * self.exponent * (self.exponent - 1.0) * u.powf(self.exponent - 2.0)
        }
    }
}

/// What the engine may assume about one infinite tail.
#[derive(Clone, Debug)]
pub enum TailBehavior {
    /// Support bounded on this side; the function vanishes beyond `from`.
    Zero,
    /// Certified absolutely integrable tail.
    AbsoluteDecay,
    /// Oscillatory decomposition valid beyond `from`.
    Terms(Vec<OscTerm>),
    /// No exact decomposition, but the dominant oscillation follows this
    /// phase model: the engine sums true-closure lobes along its zeros.
    ModelOnly(PhasePart),
    /// Nothing certified; the engine falls back to doubling truncations.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Evaluable function descriptor.  Immutable after construction; evaluation
/// is pure, so concurrent use needs no coordination.
#[derive(Clone, Debug)]
pub struct FunctionSpec {
    kind: Kind,
    /// Evaluation is kind(x + shift): `translate` composes here.
    shift: f64,
    /// Scalar multiplier applied to every value.
    coeff: Complex64,
    support: ExtInterval,
    singular: Vec<SingularPoint>,
    parity: Parity,
    phase: Option<PhaseDescriptor>,
    /// Caller-asserted certificate that |f| has integrable tails.
    abs_tail_cert: bool,
    /// Caller-asserted certificate that f is HK-integrable over ℝ.
    hk_integrable_cert: bool,
    /// Caller-supplied tail decompositions overriding the kind's own.
    tail_override_right: Option<(f64, TailBehavior)>,
    tail_override_left: Option<(f64, TailBehavior)>,
    /// Extra algebraic endpoint singularities beyond the kind's own
    /// (derived integrands map singular points around).
    alg_extra: Vec<(f64, f64)>,
}

impl FunctionSpec {
    fn from_kind(kind: Kind) -> Self {
        let support = kind.natural_support();
        let singular = kind.singular_points();
        let parity = kind.natural_parity();
        let phase = kind.phase_descriptor();
        let abs_tail_cert = kind.has_absolute_tails();
        let hk_integrable_cert = kind.hk_integrable_over_r();
        FunctionSpec {
            kind,
            shift: 0.0,
            coeff: c64(1.0, 0.0),
            support,
            singular,
            parity,
            phase,
            abs_tail_cert,
            hk_integrable_cert,
            tail_override_right: None,
            tail_override_left: None,
            alg_extra: Vec::new(),
        }
    }

    pub fn power_signed(exponent: f64) -> Self {
        Self::from_kind(Kind::PowerSigned { exponent })
    }

    /// Even chirp |x|^α e^{i|x|^ν} on the whole line.
    pub fn chirp(alpha: f64, nu: f64) -> Self {
        Self::from_kind(Kind::Chirp { alpha, nu, one_sided: false })
    }

    /// x^α e^{i x^ν} on [0, ∞), zero on x < 0.
    pub fn chirp_one_sided(alpha: f64, nu: f64) -> Self {
        Self::from_kind(Kind::Chirp { alpha, nu, one_sided: true })
    }

    pub fn sin_over_abs(a: f64) -> Self {
        Self::from_kind(Kind::SinOverAbs { a })
    }

    pub fn rational_odd() -> Self {
        Self::from_kind(Kind::RationalOdd)
    }

    /// e^{−x²}
    pub fn gauss() -> Self {
        Self::from_kind(Kind::GaussEnvelope { alpha: 1.0, coeffs: vec![1.0] })
    }

    /// (Σ cₖxᵏ)·e^{−αx²}
    pub fn poly_gauss(alpha: f64, coeffs: Vec<f64>) -> Self {
        Self::from_kind(Kind::GaussEnvelope { alpha, coeffs })
    }

    /// Unit-mass Gaussian bump of the given width: e^{−(x/w)²}/(w√π).
    pub fn gauss_mollifier(width: f64) -> Self {
        let alpha = 1.0 / (width * width);
        let scale = 1.0 / (width * PI.sqrt());
        Self::from_kind(Kind::GaussEnvelope { alpha, coeffs: vec![scale] })
    }

    pub fn exp_abs() -> Self {
        Self::from_kind(Kind::ExpAbs { rate: 1.0 })
    }

    pub fn exp_abs_rate(rate: f64) -> Self {
        Self::from_kind(Kind::ExpAbs { rate })
    }

    pub fn triangle_hat() -> Self {
        Self::from_kind(Kind::TriangleHat)
    }

    pub fn lorentz(amp: f64) -> Self {
        Self::from_kind(Kind::Lorentz { amp })
    }

    pub fn sinusoid(freq: f64) -> Self {
        Self::from_kind(Kind::Sinusoid { freq, cosine: false })
    }

    pub fn cosine(freq: f64) -> Self {
        Self::from_kind(Kind::Sinusoid { freq, cosine: true })
    }

    pub fn sinc_squared(a: f64) -> Self {
        Self::from_kind(Kind::SincSquared { a })
    }

    pub fn lacunary(coeffs: CoeffSeq) -> Self {
        Self::from_kind(Kind::LacunarySeries { coeffs })
    }

    pub fn piecewise(mut pieces: Vec<LinearPiece>) -> Result<Self, RealFnError> {
        if pieces.is_empty() {
            return Err(RealFnError::Invalid(String::from("no pieces")));
        }
        pieces.sort_by(|p, q| p.lo.partial_cmp(&q.lo).unwrap_or(core::cmp::Ordering::Equal));
        for p in &pieces {
            if !(p.lo < p.hi) || !p.lo.is_finite() || !p.hi.is_finite() {
                return Err(RealFnError::Invalid(String::from("pieces must be finite with lo < hi")));
            }
        }
        for w in pieces.windows(2) {
            if w[0].hi > w[1].lo + 1e-12 {
                return Err(RealFnError::Invalid(String::from("pieces overlap")));
            }
        }
        Ok(Self::from_kind(Kind::PiecewiseElementary { pieces }))
    }

    /// χ_{[lo,hi]}
    pub fn indicator(lo: f64, hi: f64) -> Result<Self, RealFnError> {
        Self::piecewise(vec![LinearPiece { lo, hi, c0: 1.0, c1: 0.0 }])
    }

    pub fn zero() -> Self {
        Self::from_kind(Kind::PiecewiseElementary {
            pieces: vec![LinearPiece { lo: 0.0, hi: 1.0, c0: 0.0, c1: 0.0 }],
        })
    }

    /// Register a user evaluator with caller-declared metadata.  Declared
    /// unbounded singular points are probed (|f(p ± 1e−8)| must exceed 10³,
    /// jumps must show up at the declared size).
    pub fn user_callable(
        eval: EvalFn,
        singular: Vec<SingularPoint>,
        support: ExtInterval,
        parity: Parity,
    ) -> Result<Self, RealFnError> {
        for sp in &singular {
            match sp.kind {
                SingularKind::Unbounded => {
                    let lo = (eval)(sp.at - 1e-8).norm();
                    let hi = (eval)(sp.at + 1e-8).norm();
                    if lo.max(hi) <= 1e3 {
                        return Err(RealFnError::Invalid(String::from(
                            "declared unbounded singular point failed the soundness probe",
                        )));
                    }
                }
                SingularKind::Jump(size) => {
                    let lo = (eval)(sp.at - 1e-8);
                    let hi = (eval)(sp.at + 1e-8);
                    let observed = (hi - lo).norm();
                    if (observed - size.abs()).abs() > 0.05 * (1.0 + size.abs()) {
                        return Err(RealFnError::Invalid(String::from(
                            "declared jump does not match the observed jump",
                        )));
                    }
                }
            }
        }
        let mut spec = Self::from_kind(Kind::UserCallable { f: UserFn { eval } });
        spec.support = support;
        spec.singular = singular;
        spec.parity = parity;
        spec.abs_tail_cert = false;
        spec.hk_integrable_cert = false;
        Ok(spec)
    }

    /// α·f + β·g as a derived callable (metadata merged, certificates and-ed).
    pub fn linear_combination(
        alpha: Complex64,
        f: &FunctionSpec,
        beta: Complex64,
        g: &FunctionSpec,
    ) -> Self {
        let (fa, fb) = (f.clone(), g.clone());
        let eval: EvalFn = Arc::new(move |x| alpha * fa.eval_or_zero(x) + beta * fb.eval_or_zero(x));
        let mut singular = f.singular.clone();
        singular.extend_from_slice(&g.singular);
        let lo = f.support.lo.min(g.support.lo);
        let hi = f.support.hi.max(g.support.hi);
        let mut spec = Self::from_kind(Kind::UserCallable { f: UserFn { eval } });
        spec.support = ExtInterval { lo, hi };
        spec.singular = singular;
        spec.parity = Parity::None;
        spec.abs_tail_cert = f.abs_tail_cert && g.abs_tail_cert;
        spec.hk_integrable_cert = f.hk_integrable_cert && g.hk_integrable_cert;
        spec
    }

    /// Pointwise product f·g as a derived callable.
    pub fn product(f: &FunctionSpec, g: &FunctionSpec) -> Self {
        let (fa, fb) = (f.clone(), g.clone());
        let eval: EvalFn = Arc::new(move |x| fa.eval_or_zero(x) * fb.eval_or_zero(x));
        let mut singular = f.singular.clone();
        singular.extend_from_slice(&g.singular);
        let support = f
            .support
            .intersect(&g.support)
            .unwrap_or(ExtInterval { lo: 0.0, hi: 0.0 });
        let mut spec = Self::from_kind(Kind::UserCallable { f: UserFn { eval } });
        spec.support = support;
        spec.singular = singular;
        spec.parity = match (f.parity, g.parity) {
            (Parity::Even, Parity::Even) | (Parity::Odd, Parity::Odd) => Parity::Even,
            (Parity::Even, Parity::Odd) | (Parity::Odd, Parity::Even) => Parity::Odd,
            _ => Parity::None,
        };
        spec.abs_tail_cert = f.abs_tail_cert || g.abs_tail_cert;
        spec.hk_integrable_cert = false;
        spec
    }

    /// x ↦ x·f(x)
    pub fn times_x(f: &FunctionSpec) -> Self {
        if let Kind::GaussEnvelope { alpha, coeffs } = &f.kind {
            if f.shift == 0.0 {
                let mut c = Vec::with_capacity(coeffs.len() + 1);
                c.push(0.0);
                c.extend_from_slice(coeffs);
                let mut spec = Self::poly_gauss(*alpha, c);
                spec.coeff = f.coeff;
                return spec;
            }
        }
        let fa = f.clone();
        let eval: EvalFn = Arc::new(move |x| fa.eval_or_zero(x) * x);
        let mut spec = Self::from_kind(Kind::UserCallable { f: UserFn { eval } });
        spec.support = f.support;
        spec.singular = f.singular.clone();
        spec.parity = match f.parity {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::None => Parity::None,
        };
        spec.abs_tail_cert = false;
        spec
    }

    // --- builders -----------------------------------------------------

    pub fn with_support(mut self, support: ExtInterval) -> Self {
        self.support = support;
        self
    }

    pub fn scaled(mut self, c: Complex64) -> Self {
        self.coeff *= c;
        self
    }

    pub fn scaled_real(self, c: f64) -> Self {
        self.scaled(c64(c, 0.0))
    }

    /// Assert that |f| has integrable tails (used for derived callables
    /// whose built-in certificate machinery cannot see the decay).
    pub fn with_absolute_tail_cert(mut self) -> Self {
        self.abs_tail_cert = true;
        self
    }

    pub fn with_hk_integrable_cert(mut self) -> Self {
        self.hk_integrable_cert = true;
        self
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    /// Attach a smooth phase factorisation f = A·e^{iφ}.  The descriptor is
    /// probe-checked on a sample grid: |f(x)| must equal |A(x)|.
    pub fn with_phase(mut self, phase: PhaseDescriptor) -> Result<Self, RealFnError> {
        for i in 1..=16 {
            let x = -4.0 + 8.0 * (i as f64) / 17.0;
            if !self.support.contains(x) || self.is_singular_at(x) {
                continue;
            }
            let fx = self.eval_or_zero(x).norm();
            let ax = (phase.amp)(x).abs();
            if (fx - ax).abs() > 1e-9 * (1.0 + fx.max(ax)) {
                return Err(RealFnError::Invalid(String::from("|f| ≠ |A| at a probe point")));
            }
        }
        self.phase = Some(phase);
        Ok(self)
    }

    // --- accessors ----------------------------------------------------

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn support(&self) -> ExtInterval {
        self.support
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coeff
    }

    pub fn singular_points(&self) -> &[SingularPoint] {
        &self.singular
    }

    pub fn phase_descriptor(&self) -> Option<&PhaseDescriptor> {
        self.phase.as_ref()
    }

    pub fn has_absolute_tail_cert(&self) -> bool {
        self.abs_tail_cert
    }

    pub fn hk_integrable_over_r(&self) -> bool {
        self.hk_integrable_cert
    }

    pub fn is_singular_at(&self, x: f64) -> bool {
        self.singular.iter().any(|sp| sp.at == x)
    }

    /// True when every value has exactly zero imaginary part.
    pub fn is_real_valued(&self) -> bool {
        self.coeff.im == 0.0 && self.kind.is_real_valued()
    }

    /// True when f takes only nonnegative real values (so |f| = f).
    pub fn is_nonnegative(&self) -> bool {
        self.coeff == c64(1.0, 0.0) && self.kind.is_nonnegative()
    }

    // --- evaluation ---------------------------------------------------

    /// Evaluate f at x.  Errors at singular points and outside the support.
    pub fn evaluate(&self, x: f64) -> Result<Complex64, RealFnError> {
        if !self.support.contains(x) {
            return Err(RealFnError::Domain { x, reason: "outside support" });
        }
        if self.is_singular_at(x) {
            return Err(RealFnError::Domain { x, reason: "singular point" });
        }
        Ok(self.eval_or_zero(x))
    }

    /// Engine-facing evaluation: zero outside the support, no singularity
    /// check (the engine never samples declared singular points).
    pub fn eval_or_zero(&self, x: f64) -> Complex64 {
        if !self.support.contains(x) {
            return c64(0.0, 0.0);
        }
        self.coeff * self.kind.eval(x + self.shift)
    }

    /// g(t) = f(t + y); singular points and support move by −y.
    pub fn translate(&self, y: f64) -> FunctionSpec {
        let mut out = self.clone();
        out.shift += y;
        out.support = ExtInterval {
            lo: self.support.lo - y,
            hi: self.support.hi - y,
        };
        out.singular = self
            .singular
            .iter()
            .map(|sp| SingularPoint { at: sp.at - y, kind: sp.kind })
            .collect();
        if y != 0.0 {
            out.parity = Parity::None;
            out.phase = None;
        }
        out
    }

    /// d/dx where the kind is closed under differentiation.
    pub fn derivative(&self) -> Option<FunctionSpec> {
        if self.shift != 0.0 {
            return None;
        }
        let extra_scale = match &self.kind {
            // sin(ωx)' = ω·cos(ωx): the kind swap drops the ω factor
            Kind::Sinusoid { freq, cosine: false } => *freq,
            _ => 1.0,
        };
        let kind = self.kind.derivative()?;
        let mut spec = Self::from_kind(kind);
        spec.coeff = self.coeff * extra_scale;
        Some(spec)
    }

    // --- metadata for the engine ---------------------------------------

    /// Breakpoints that must become panel boundaries within `interval`:
    /// singular points, kinks, piece edges, the origin for |x|-kinds.
    pub fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out: Vec<f64> = self.singular.iter().map(|s| s.at).collect();
        out.extend(self.alg_extra.iter().map(|&(p, _)| p));
        for b in self.kind.structural_breaks() {
            out.push(b - self.shift);
        }
        if self.support.lo.is_finite() {
            out.push(self.support.lo);
        }
        if self.support.hi.is_finite() {
            out.push(self.support.hi);
        }
        out.retain(|&x| x > lo && x < hi && x.is_finite());
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * (1.0 + a.abs()));
        out
    }

    /// Algebraic singularity exponents (x−p)^α with α ∈ (−1, 0): the engine
    /// removes these with a power substitution.
    pub fn algebraic_singularities(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = self
            .kind
            .algebraic_singularities()
            .into_iter()
            .map(|(p, a)| (p - self.shift, a))
            .collect();
        out.extend_from_slice(&self.alg_extra);
        out
    }

    /// Local power-law exponent at the origin, when the kind has one.
    pub fn local_exponent_at_zero(&self) -> Option<f64> {
        self.kind.local_exponent_at_zero()
    }

    /// For the truncated lacunary series: the recorded bound Σ_{n>N} aₙ/|x|
    /// on the evaluation error at x due to the truncation.
    pub fn lacunary_truncation_bound(&self, x: f64) -> Option<f64> {
        match &self.kind {
            Kind::LacunarySeries { coeffs } => {
                (x != 0.0).then(|| coeffs.tail_a() / x.abs())
            }
            _ => None,
        }
    }

    /// Tail description on the given side.  Returns the abscissa beyond
    /// which it is valid (in |x|) and the behaviour.
    pub fn tail(&self, side: Side) -> (f64, TailBehavior) {
        let over = match side {
            Side::Right => &self.tail_override_right,
            Side::Left => &self.tail_override_left,
        };
        if let Some((from, b)) = over {
            return (*from, b.clone());
        }
        // Bounded support on a side means the tail vanishes.
        match side {
            Side::Right if self.support.hi.is_finite() => {
                return (self.support.hi.max(1.0), TailBehavior::Zero)
            }
            Side::Left if self.support.lo.is_finite() => {
                return ((-self.support.lo).max(1.0), TailBehavior::Zero)
            }
            _ => {}
        }
        if self.abs_tail_cert {
            return (1.0, TailBehavior::AbsoluteDecay);
        }
        // Shifted phases are no longer power laws; fall back unless the
        // kind is phase-free.
        if self.shift != 0.0 && self.kind.phase_descriptor().is_some() {
            return (1.0, TailBehavior::Unknown);
        }
        let shift = self.shift;
        let coeff = self.coeff;
        match self.kind.tail_terms(side, shift, coeff) {
            Some(terms) => {
                let from = self.kind.tail_from().max(1.0) + self.shift.abs();
                (from, TailBehavior::Terms(terms))
            }
            None => (1.0, TailBehavior::Unknown),
        }
    }

    /// Tail terms when every term's intrinsic phase is linear (or absent),
    /// so products and modulations stay within the term algebra.
    pub fn linear_tail_terms(&self, side: Side) -> Option<(f64, Vec<OscTerm>)> {
        match self.tail(side) {
            (from, TailBehavior::Terms(ts)) => {
                if ts.iter().all(|t| t.phase.coeff == 0.0 || t.phase.exponent == 1.0) {
                    Some((from, ts))
                } else {
                    None
                }
            }
            (from, TailBehavior::Zero) => Some((from, Vec::new())),
            _ => None,
        }
    }

    /// Override the tail treatment on one side (caller-certified exact
    /// decomposition or model; used by derived integrands).
    pub fn with_tail_override(mut self, side: Side, from: f64, behavior: TailBehavior) -> Self {
        match side {
            Side::Right => self.tail_override_right = Some((from, behavior)),
            Side::Left => self.tail_override_left = Some((from, behavior)),
        }
        self
    }

    /// Merge additional singular points into the descriptor (derived
    /// integrands map the factors' singularities into their own frame).
    pub fn with_singular_points_merged(mut self, pts: Vec<SingularPoint>) -> Self {
        self.singular.extend(pts);
        self.singular
            .sort_by(|a, b| a.at.partial_cmp(&b.at).unwrap_or(core::cmp::Ordering::Equal));
        self.singular.dedup_by(|a, b| a.at == b.at);
        self
    }

    /// Merge additional algebraic endpoint singularities (location, α).
    pub fn with_algebraic_singularities_merged(mut self, list: Vec<(f64, f64)>) -> Self {
        self.alg_extra.extend(list);
        self
    }

    /// Monotone decomposition over [lo, hi] for real built-ins, as a sorted
    /// list of critical abscissae strictly inside (lo, hi).
    pub fn interior_critical_points(&self, lo: f64, hi: f64) -> Option<Vec<f64>> {
        let pts = self.kind.critical_points(lo + self.shift, hi + self.shift)?;
        let mut out: Vec<f64> = pts.into_iter().map(|p| p - self.shift).collect();
        out.retain(|&x| x > lo && x < hi);
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup();
        Some(out)
    }
}

impl Kind {
    fn eval(&self, x: f64) -> Complex64 {
        match self {
            Kind::PowerSigned { exponent } => {
                if x == 0.0 {
                    c64(0.0, 0.0)
                } else {
                    c64(x.signum() * x.abs().powf(*exponent), 0.0)
                }
            }
            Kind::Chirp { alpha, nu, one_sided } => {
                if *one_sided && x < 0.0 {
                    return c64(0.0, 0.0);
                }
                let u = x.abs();
                if u == 0.0 {
                    return if *alpha == 0.0 {
                        c64(1.0, 0.0)
                    } else if *alpha > 0.0 {
                        c64(0.0, 0.0)
                    } else {
                        c64(f64::INFINITY, 0.0)
                    };
                }
                let amp = u.powf(*alpha);
                amp * cis(u.powf(*nu))
            }
            Kind::SinOverAbs { a } => {
                if x == 0.0 {
                    c64(0.0, 0.0)
                } else {
                    c64((a * x).sin() / x.abs(), 0.0)
                }
            }
            Kind::RationalOdd => c64(x / (x * x + 1.0), 0.0),
            Kind::GaussEnvelope { alpha, coeffs } => {
                let mut p = 0.0;
                for &c in coeffs.iter().rev() {
                    p = p * x + c;
                }
                c64(p * (-alpha * x * x).exp(), 0.0)
            }
            Kind::ExpAbs { rate } => c64((-rate * x.abs()).exp(), 0.0),
            Kind::TriangleHat => {
                let v = 1.0 - x.abs();
                c64(if v > 0.0 { v } else { 0.0 }, 0.0)
            }
            Kind::Lorentz { amp } => c64(amp / (1.0 + x * x), 0.0),
            Kind::Sinusoid { freq, cosine } => {
                let t = freq * x;
                c64(if *cosine { t.cos() } else { t.sin() }, 0.0)
            }
            Kind::SincSquared { a } => {
                let t = a * x;
                if t.abs() < 1e-4 {
                    // series for sin(t)/t near 0, squared
                    let s = 1.0 - t * t / 6.0 + t * t * t * t / 120.0;
                    c64(s * s, 0.0)
                } else {
                    let s = t.sin() / t;
                    c64(s * s, 0.0)
                }
            }
            Kind::LacunarySeries { coeffs } => {
                if x == 0.0 {
                    return c64(0.0, 0.0);
                }
                let mut acc = 0.0;
                for (a, b) in coeffs.a.iter().zip(&coeffs.b) {
                    acc += a * (b * x).sin();
                }
                c64(acc / x.abs(), 0.0)
            }
            Kind::PiecewiseElementary { pieces } => {
                for p in pieces {
                    if x >= p.lo && x < p.hi {
                        return c64(p.eval(x), 0.0);
                    }
                }
                // closed right end of the final piece
                if let Some(last) = pieces.last() {
                    if x == last.hi {
                        return c64(last.eval(x), 0.0);
                    }
                }
                c64(0.0, 0.0)
            }
            Kind::UserCallable { f } => (f.eval)(x),
        }
    }

    fn is_real_valued(&self) -> bool {
        !matches!(self, Kind::Chirp { .. } | Kind::UserCallable { .. })
    }

    fn natural_support(&self) -> ExtInterval {
        match self {
            Kind::Chirp { one_sided: true, .. } => ExtInterval { lo: 0.0, hi: f64::INFINITY },
            Kind::TriangleHat => ExtInterval { lo: -1.0, hi: 1.0 },
            Kind::PiecewiseElementary { pieces } => ExtInterval {
                lo: pieces.first().map(|p| p.lo).unwrap_or(0.0),
                hi: pieces.last().map(|p| p.hi).unwrap_or(0.0),
            },
            _ => ExtInterval::full(),
        }
    }

    fn natural_parity(&self) -> Parity {
        match self {
            Kind::PowerSigned { .. } | Kind::RationalOdd | Kind::SinOverAbs { .. } => Parity::Odd,
            Kind::LacunarySeries { .. } => Parity::Odd,
            Kind::Chirp { one_sided, .. } => {
                if *one_sided {
                    Parity::None
                } else {
                    Parity::Even
                }
            }
            Kind::ExpAbs { .. } | Kind::TriangleHat | Kind::Lorentz { .. } | Kind::SincSquared { .. } => {
                Parity::Even
            }
            Kind::Sinusoid { cosine, .. } => {
                if *cosine {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            }
            Kind::GaussEnvelope { coeffs, .. } => {
                let even = coeffs.iter().enumerate().all(|(k, c)| *c == 0.0 || k % 2 == 0);
                let odd = coeffs.iter().enumerate().all(|(k, c)| *c == 0.0 || k % 2 == 1);
                if even {
                    Parity::Even
                } else if odd {
                    Parity::Odd
                } else {
                    Parity::None
                }
            }
            Kind::PiecewiseElementary { .. } | Kind::UserCallable { .. } => Parity::None,
        }
    }

    fn singular_points(&self) -> Vec<SingularPoint> {
        match self {
            Kind::PowerSigned { exponent } => {
                if *exponent < 0.0 {
                    vec![SingularPoint { at: 0.0, kind: SingularKind::Unbounded }]
                } else if *exponent == 0.0 {
                    vec![SingularPoint { at: 0.0, kind: SingularKind::Jump(2.0) }]
                } else {
                    Vec::new()
                }
            }
            Kind::Chirp { alpha, .. } => {
                if *alpha < 0.0 {
                    vec![SingularPoint { at: 0.0, kind: SingularKind::Unbounded }]
                } else {
                    Vec::new()
                }
            }
            Kind::SinOverAbs { a } => {
                vec![SingularPoint { at: 0.0, kind: SingularKind::Jump(2.0 * a.abs()) }]
            }
            Kind::LacunarySeries { coeffs } => {
                let jump: f64 = 2.0 * coeffs.a.iter().zip(&coeffs.b).map(|(a, b)| a * b).sum::<f64>();
                vec![SingularPoint { at: 0.0, kind: SingularKind::Jump(jump.abs()) }]
            }
            _ => Vec::new(),
        }
    }

    fn phase_descriptor(&self) -> Option<PhaseDescriptor> {
        match self {
            Kind::Chirp { alpha, nu, .. } => {
                let (a, n) = (*alpha, *nu);
                Some(PhaseDescriptor {
                    amp: Arc::new(move |x: f64| x.abs().powf(a)),
                    amp_deriv: Arc::new(move |x: f64| {
                        a * x.signum() * x.abs().powf(a - 1.0)
                    }),
                    phase: Arc::new(move |x: f64| x.abs().powf(n)),
                    phase_deriv: Arc::new(move |x: f64| n * x.signum() * x.abs().powf(n - 1.0)),
                    phase_second: Arc::new(move |x: f64| n * (n - 1.0) * x.abs().powf(n - 2.0)),
                })
            }
            _ => None,
        }
    }

    fn has_absolute_tails(&self) -> bool {
        match self {
            Kind::GaussEnvelope { alpha, .. } => *alpha > 0.0,
            Kind::ExpAbs { rate } => *rate > 0.0,
            Kind::TriangleHat | Kind::PiecewiseElementary { .. } => true,
            Kind::Lorentz { .. } => true,
            // sinc² is absolutely integrable, but its infinitely fast
            // oscillation under the reciprocal tail map resists panels;
            // the exact cosine decomposition below serves instead
            Kind::SincSquared { .. } => false,
            Kind::PowerSigned { exponent } => *exponent < -1.0,
            _ => false,
        }
    }

    /// True when the kind takes only nonnegative real values.
    fn is_nonnegative(&self) -> bool {
        matches!(
            self,
            Kind::ExpAbs { .. } | Kind::TriangleHat | Kind::SincSquared { .. }
        ) || matches!(self, Kind::Lorentz { amp } if *amp >= 0.0)
    }

    fn hk_integrable_over_r(&self) -> bool {
        match self {
            Kind::SinOverAbs { .. } => true,
            Kind::LacunarySeries { .. } => true,
            k => k.has_absolute_tails(),
        }
    }

    fn tail_from(&self) -> f64 {
        1.0
    }

    /// Oscillatory tail decomposition in the outward coordinate u = |x|.
    fn tail_terms(&self, side: Side, shift: f64, coeff: Complex64) -> Option<Vec<OscTerm>> {
        let sgn = match side {
            Side::Right => 1.0,
            Side::Left => -1.0,
        };
        let terms = match self {
            Kind::PowerSigned { exponent } => {
                let p = *exponent;
                vec![OscTerm {
                    coeff: coeff * sgn,
                    amp: Arc::new(move |u: f64| u.powf(p)),
                    phase: PhasePart::none(),
                    lin: 0.0,
                }]
            }
            Kind::Chirp { alpha, nu, one_sided } => {
                if *one_sided && side == Side::Left {
                    return Some(Vec::new());
                }
                let (a, n) = (*alpha, *nu);
                vec![OscTerm::new(
                    coeff,
                    Arc::new(move |u: f64| u.powf(a)),
                    PhasePart { coeff: 1.0, exponent: n },
                )]
            }
            Kind::SinOverAbs { a } => {
                // sin(a·x)/|x| = (e^{iax} − e^{−iax})/(2i|x|); on the left
                // tail x = −u flips the sign of the sine.
                let half_i = c64(0.0, -0.5); // 1/(2i)
                vec![
                    OscTerm::new(
                        coeff * half_i * sgn,
                        Arc::new(|u: f64| 1.0 / u),
                        PhasePart::linear(*a),
                    ),
                    OscTerm::new(
                        coeff * -half_i * sgn,
                        Arc::new(|u: f64| 1.0 / u),
                        PhasePart::linear(-*a),
                    ),
                ]
            }
            Kind::RationalOdd => {
                let sh = shift;
                vec![OscTerm::new(
                    coeff * sgn,
                    Arc::new(move |u: f64| {
                        let x = u + sgn * sh;
                        x / (x * x + 1.0)
                    }),
                    PhasePart::none(),
                )]
            }
            Kind::LacunarySeries { coeffs } => {
                let half_i = c64(0.0, -0.5);
                let mut v = Vec::with_capacity(2 * coeffs.a.len());
                for (an, bn) in coeffs.a.iter().zip(&coeffs.b) {
                    if *an == 0.0 {
                        continue;
                    }
                    let an = *an;
                    v.push(OscTerm::new(
                        coeff * half_i * sgn * an,
                        Arc::new(move |u: f64| 1.0 / u),
                        PhasePart::linear(*bn),
                    ));
                    v.push(OscTerm::new(
                        coeff * -half_i * sgn * an,
                        Arc::new(move |u: f64| 1.0 / u),
                        PhasePart::linear(-*bn),
                    ));
                }
                v
            }
            Kind::Sinusoid { freq, cosine } => {
                let w = *freq;
                if *cosine {
                    let half = c64(0.5, 0.0);
                    vec![
                        OscTerm::new(coeff * half, Arc::new(|_| 1.0), PhasePart::linear(w * sgn)),
                        OscTerm::new(coeff * half, Arc::new(|_| 1.0), PhasePart::linear(-w * sgn)),
                    ]
                } else {
                    let half_i = c64(0.0, -0.5);
                    vec![
                        OscTerm::new(coeff * half_i, Arc::new(|_| 1.0), PhasePart::linear(w * sgn)),
                        OscTerm::new(
                            coeff * -half_i,
                            Arc::new(|_| 1.0),
                            PhasePart::linear(-w * sgn),
                        ),
                    ]
                }
            }
            Kind::SincSquared { a } => {
                // (sin(au)/(au))² = (1 − cos(2au)) / (2a²u²), both sides even
                let aa = *a;
                let c0 = coeff * (1.0 / (2.0 * aa * aa));
                let quarter = coeff * (-1.0 / (4.0 * aa * aa));
                vec![
                    OscTerm::new(c0, Arc::new(|u: f64| 1.0 / (u * u)), PhasePart::none()),
                    OscTerm::new(
                        quarter,
                        Arc::new(|u: f64| 1.0 / (u * u)),
                        PhasePart::linear(2.0 * aa),
                    ),
                    OscTerm::new(
                        quarter,
                        Arc::new(|u: f64| 1.0 / (u * u)),
                        PhasePart::linear(-2.0 * aa),
                    ),
                ]
            }
            _ => return None,
        };
        Some(terms)
    }

    /// Abscissae where the definition changes (kinks, piece edges).
    fn structural_breaks(&self) -> Vec<f64> {
        match self {
            Kind::PowerSigned { .. }
            | Kind::SinOverAbs { .. }
            | Kind::ExpAbs { .. }
            | Kind::LacunarySeries { .. }
            | Kind::Chirp { .. } => vec![0.0],
            Kind::TriangleHat => vec![-1.0, 0.0, 1.0],
            Kind::PiecewiseElementary { pieces } => {
                let mut v: Vec<f64> = pieces.iter().flat_map(|p| [p.lo, p.hi]).collect();
                v.dedup();
                v
            }
            _ => Vec::new(),
        }
    }

    fn algebraic_singularities(&self) -> Vec<(f64, f64)> {
        match self {
            Kind::PowerSigned { exponent } if *exponent < 0.0 && *exponent > -1.0 => {
                vec![(0.0, *exponent)]
            }
            Kind::Chirp { alpha, .. } if *alpha < 0.0 && *alpha > -1.0 => vec![(0.0, *alpha)],
            _ => Vec::new(),
        }
    }

    fn local_exponent_at_zero(&self) -> Option<f64> {
        match self {
            Kind::PowerSigned { exponent } => Some(*exponent),
            Kind::Chirp { alpha, .. } => Some(*alpha),
            _ => None,
        }
    }

    fn derivative(&self) -> Option<Kind> {
        match self {
            Kind::GaussEnvelope { alpha, coeffs } => {
                // (p(x)e^{−αx²})' = (p'(x) − 2αx·p(x))e^{−αx²}
                let mut out = vec![0.0; coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    if k >= 1 {
                        out[k - 1] += (k as f64) * c;
                    }
                    out[k + 1] -= 2.0 * alpha * c;
                }
                Some(Kind::GaussEnvelope { alpha: *alpha, coeffs: out })
            }
            Kind::Sinusoid { freq, cosine } => {
                // only the sin → freq·cos case is needed; keep it exact
                if *cosine {
                    None
                } else {
                    Some(Kind::Sinusoid { freq: *freq, cosine: true })
                    // caller must scale by freq
                }
            }
            _ => None,
        }
    }

    /// Interior critical points of the (real) kind on [lo, hi], where the
    /// monotone decomposition changes direction.
    fn critical_points(&self, lo: f64, hi: f64) -> Option<Vec<f64>> {
        match self {
            Kind::PowerSigned { .. } => Some(vec![0.0]),
            Kind::RationalOdd => Some(vec![-1.0, 1.0]),
            Kind::ExpAbs { .. } | Kind::TriangleHat | Kind::Lorentz { .. } => Some(vec![0.0]),
            Kind::Sinusoid { freq, cosine } => {
                if *freq == 0.0 {
                    return Some(Vec::new());
                }
                // extrema of sin at (k+1/2)π/ω, of cos at kπ/ω
                let w = freq.abs();
                let offset = if *cosine { 0.0 } else { 0.5 };
                let k_lo = ((lo * w) / PI - offset).ceil() as i64;
                let k_hi = ((hi * w) / PI - offset).floor() as i64;
                if k_hi - k_lo > 1_000_000 {
                    return None;
                }
                Some(
                    (k_lo..=k_hi)
                        .map(|k| (k as f64 + offset) * PI / w)
                        .collect(),
                )
            }
            Kind::GaussEnvelope { .. } => {
                let d = self.derivative()?;
                // gaussians are flat beyond a few widths; scan a bounded box
                let (a, b) = (lo.max(-30.0), hi.min(30.0));
                if !(a < b) {
                    return Some(Vec::new());
                }
                Some(scan_sign_changes(|x| d.eval(x).re, a, b, 2048))
            }
            Kind::SincSquared { a } => {
                let aa = a.abs();
                if aa == 0.0 {
                    return Some(Vec::new());
                }
                // extrema: zeros at kπ/a and humps where tan(t) = t
                let (ta, tb) = (lo * aa, hi * aa);
                if (tb - ta) / PI > 100_000.0 {
                    return None;
                }
                let mut pts = Vec::new();
                let k_lo = (ta / PI).ceil() as i64;
                let k_hi = (tb / PI).floor() as i64;
                for k in k_lo..=k_hi {
                    if k != 0 {
                        pts.push((k as f64) * PI / aa);
                    }
                }
                pts.push(0.0);
                // hump maxima near (k+1/2)π solve tan t = t
                let m_lo = (ta / PI - 0.5).ceil().max(1.0) as i64;
                let m_hi = (tb / PI - 0.5).floor() as i64;
                for m in m_lo..=m_hi {
                    let guess = ((m as f64) + 0.5) * PI;
                    let root = newton_tan_eq_t(guess);
                    pts.push(root / aa);
                    pts.push(-root / aa);
                }
                pts.retain(|&x| x > lo && x < hi);
                Some(pts)
            }
            Kind::PiecewiseElementary { pieces } => {
                Some(pieces.iter().flat_map(|p| [p.lo, p.hi]).collect())
            }
            Kind::SinOverAbs { .. } | Kind::LacunarySeries { .. } => {
                // piecewise smooth with dense extrema; handled numerically
                None
            }
            Kind::Chirp { .. } | Kind::UserCallable { .. } => None,
        }
    }
}

/// Solve tan(t) = t near an initial guess in ((k)π, (k+1/2)π).
fn newton_tan_eq_t(guess: f64) -> f64 {
    // the root sits a bit below (k+1/2)π; bisect on g(t) = sin t − t·cos t
    let g = |t: f64| t.sin() - t * t.cos();
    let mut lo = guess - PI / 2.0 + 1e-9;
    let mut hi = guess - 1e-9;
    if g(lo) == 0.0 {
        return lo;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == (g(lo) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn scan_sign_changes(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev_x = lo;
    let mut prev = f(lo);
    for i in 1..=n {
        let x = lo + (hi - lo) * (i as f64) / (n as f64);
        let v = f(x);
        if prev == 0.0 {
            out.push(prev_x);
        } else if prev.signum() != v.signum() && v != 0.0 {
            // bisect to refine
            let (mut a, mut b) = (prev_x, x);
            let mut fa = prev;
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if fa.signum() == fm.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        prev_x = x;
        prev = v;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn evaluate_chirp_at_origin() {
        let f = FunctionSpec::chirp(0.0, 2.0);
        let v = f.evaluate(0.0).unwrap();
        assert_eq!(v, c64(1.0, 0.0));
    }

    #[test]
    fn evaluate_sin_over_abs() {
        let f = FunctionSpec::sin_over_abs(1.0);
        let v = f.evaluate(PI / 2.0).unwrap();
        assert!(close(v.re, 2.0 / PI, 1e-15));
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn evaluate_rational_odd() {
        let f = FunctionSpec::rational_odd();
        assert_eq!(f.evaluate(1.0).unwrap(), c64(0.5, 0.0));
    }

    #[test]
    fn evaluate_errors_at_singular_point() {
        let f = FunctionSpec::power_signed(-0.5);
        assert!(matches!(f.evaluate(0.0), Err(RealFnError::Domain { .. })));
        let g = FunctionSpec::sin_over_abs(2.0);
        assert!(matches!(g.evaluate(0.0), Err(RealFnError::Domain { .. })));
    }

    #[test]
    fn evaluate_errors_outside_support() {
        let f = FunctionSpec::chirp_one_sided(1.0, 3.0);
        assert!(matches!(f.evaluate(-1.0), Err(RealFnError::Domain { .. })));
    }

    #[test]
    fn translate_identity_and_inverse() {
        let f = FunctionSpec::rational_odd();
        let g = f.translate(0.0);
        let h = f.translate(0.7).translate(-0.7);
        for i in 0..64 {
            let x = -8.0 + 16.0 * (i as f64) / 63.0;
            let fv = f.eval_or_zero(x);
            assert!((fv - g.eval_or_zero(x)).norm() < 1e-15);
            assert!((fv - h.eval_or_zero(x)).norm() < 1e-15);
        }
    }

    #[test]
    fn translate_exp_abs_example() {
        // g = translate(e^{−|x|}, 1): g(−1) = e^{−|0|} = 1
        let g = FunctionSpec::exp_abs().translate(1.0);
        assert!(close(g.eval_or_zero(-1.0).re, 1.0, 1e-15));
    }

    #[test]
    fn translate_group_action() {
        let f = FunctionSpec::gauss();
        let (a, b) = (0.35, -1.2);
        let lhs = f.translate(a + b);
        let rhs = f.translate(a).translate(b);
        for i in 0..64 {
            let x = -6.0 + 12.0 * (i as f64) / 63.0;
            assert!((lhs.eval_or_zero(x) - rhs.eval_or_zero(x)).norm() < 1e-15);
        }
    }

    #[test]
    fn translate_moves_singular_points() {
        let f = FunctionSpec::power_signed(-0.5).translate(2.0);
        assert_eq!(f.singular_points()[0].at, -2.0);
        // g(t) = f(t+2), smooth at 0, singular at −2
        assert!(f.evaluate(0.0).is_ok());
        assert!(f.evaluate(-2.0).is_err());
    }

    #[test]
    fn parity_grid_check() {
        // 64-point symmetric grid parity check for the declared builtins
        let cases = [
            FunctionSpec::power_signed(-0.5),
            FunctionSpec::rational_odd(),
            FunctionSpec::sin_over_abs(1.5),
            FunctionSpec::exp_abs(),
            FunctionSpec::gauss(),
            FunctionSpec::triangle_hat(),
            FunctionSpec::lorentz(2.0),
            FunctionSpec::sinusoid(2.0),
            FunctionSpec::cosine(0.7),
            FunctionSpec::sinc_squared(0.5),
            FunctionSpec::chirp(0.0, 2.0),
        ];
        for f in &cases {
            for i in 1..=32 {
                let x = 5.0 * (i as f64) / 32.0;
                if f.is_singular_at(x) || f.is_singular_at(-x) {
                    continue;
                }
                let (v, w) = (f.eval_or_zero(x), f.eval_or_zero(-x));
                match f.parity() {
                    Parity::Even => assert!((v - w).norm() < 1e-14, "even parity fails"),
                    Parity::Odd => assert!((v + w).norm() < 1e-14, "odd parity fails"),
                    Parity::None => {}
                }
            }
        }
    }

    #[test]
    fn singular_metadata_is_sound() {
        // unbounded kinds blow past 10³ near the singular point
        for f in [FunctionSpec::power_signed(-0.5), FunctionSpec::chirp(-0.5, 2.0)] {
            for sp in f.singular_points() {
                if sp.kind == SingularKind::Unbounded {
                    let v = f.eval_or_zero(sp.at + 1e-8).norm();
                    let w = f.eval_or_zero(sp.at - 1e-8).norm();
                    assert!(v.max(w) > 1e3);
                }
            }
        }
        // jumps match the declared size
        let g = FunctionSpec::sin_over_abs(1.0);
        let jump = match g.singular_points()[0].kind {
            SingularKind::Jump(j) => j,
            _ => panic!("expected a jump"),
        };
        let observed = (g.eval_or_zero(1e-9) - g.eval_or_zero(-1e-9)).norm();
        assert!(close(observed, jump, 1e-6));
    }

    #[test]
    fn user_callable_probe_rejects_phony_singularity() {
        let eval: super::EvalFn = Arc::new(|x| c64(x, 0.0));
        let res = FunctionSpec::user_callable(
            eval,
            vec![SingularPoint { at: 0.0, kind: SingularKind::Unbounded }],
            ExtInterval::full(),
            Parity::Odd,
        );
        assert!(res.is_err());
    }

    #[test]
    fn user_callable_accepts_true_singularity() {
        let eval: super::EvalFn = Arc::new(|x: f64| c64(x.abs().powf(-0.75), 0.0));
        let res = FunctionSpec::user_callable(
            eval,
            vec![SingularPoint { at: 0.0, kind: SingularKind::Unbounded }],
            ExtInterval::full(),
            Parity::Even,
        );
        assert!(res.is_ok());
    }

    #[test]
    fn phase_descriptor_modulus_matches() {
        let f = FunctionSpec::chirp(0.5, 2.0);
        let ph = f.phase_descriptor().expect("chirp carries a phase");
        for i in 1..=16 {
            let x = 0.3 * i as f64;
            assert!(close(f.eval_or_zero(x).norm(), (ph.amp)(x).abs(), 1e-12));
        }
    }

    #[test]
    fn lacunary_evaluation_and_jump() {
        let seq = CoeffSeq::finite(vec![1.0, 0.5], vec![1.0, 2.0]).unwrap();
        let f = FunctionSpec::lacunary(seq);
        let x = 0.8_f64;
        let expect = (x.sin() + 0.5 * (2.0 * x).sin()) / x;
        assert!(close(f.eval_or_zero(x).re, expect, 1e-15));
        // jump at the origin is 2·Σaₙbₙ = 2·(1 + 1) = 4
        match f.singular_points()[0].kind {
            SingularKind::Jump(j) => assert!(close(j, 4.0, 1e-12)),
            _ => panic!("expected jump"),
        }
    }

    #[test]
    fn piecewise_indicator() {
        let f = FunctionSpec::indicator(0.0, 1.0).unwrap();
        assert_eq!(f.eval_or_zero(0.5).re, 1.0);
        assert_eq!(f.eval_or_zero(1.5).re, 0.0);
        assert_eq!(f.eval_or_zero(-0.1).re, 0.0);
    }

    #[test]
    fn times_x_gauss_stays_exact() {
        let f = FunctionSpec::gauss();
        let xf = FunctionSpec::times_x(&f);
        assert_eq!(xf.parity(), Parity::Odd);
        let x = 1.3;
        assert!(close(xf.eval_or_zero(x).re, x * (-x * x).exp(), 1e-15));
    }

    #[test]
    fn gauss_derivative() {
        let f = FunctionSpec::gauss();
        let d = f.derivative().unwrap();
        let x = 0.7;
        assert!(close(d.eval_or_zero(x).re, -2.0 * x * (-x * x).exp(), 1e-14));
    }

    #[test]
    fn interval_validation() {
        assert!(ExtInterval::new(1.0, 0.0).is_err());
        assert!(ExtInterval::new(f64::NEG_INFINITY, f64::INFINITY).is_ok());
        assert!(ExtInterval::new(f64::NAN, 0.0).is_err());
    }
}
