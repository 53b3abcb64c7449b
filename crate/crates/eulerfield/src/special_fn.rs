//! Probabilists' Hermite polynomials, Gaussian density/CDF, Gaussian
//! Minkowski functionals of half-lines and χ² sublevel sets, and adaptive
//! Gaussian-weighted quadrature.
//!
//! Everything here is pure and stateless. The Hermite family follows the
//! probabilists' normalization `H_0 = 1`, `H_1 = x`,
//! `H_{n+1}(x) = x H_n(x) - n H_{n-1}(x)`, extended to `n = -1` by the Mills
//! ratio `H_{-1}(x) = (1 - Φ(x)) / φ(x)`.

use thiserror::Error;

/// `sqrt(2π)`.
pub const SQRT_2PI: f64 = 2.506_628_274_631_000_2;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Error)]
pub enum SpecialFnError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge within the subdivision budget (last estimate {estimate})")]
    Accuracy { estimate: f64 },
    #[error("invalid function definition: {0}")]
    InvalidFunction(String),
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
}

/// Standard Gaussian density `φ(x) = (2π)^{-1/2} e^{-x²/2}`.
#[inline]
pub fn gaussian_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

/// Standard Gaussian CDF, evaluated through the complementary error function
/// on the smaller tail so that both tails stay monotone and accurate.
#[inline]
pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / SQRT_2)
}

/// Mills ratio `(1 - Φ(x)) / φ(x)`.
///
/// Direct evaluation is fine for |x| ≤ 26 (all factors stay in range); the
/// far positive tail switches to the asymptotic series. The far negative
/// tail grows like `√(2π) e^{x²/2}` and overflows to `inf` near x ≈ -38.
fn mills_ratio(x: f64) -> f64 {
    if x > 26.0 {
        // 1/x - 1/x³ + 3/x⁵ - 15/x⁷ + ...
        let inv2 = 1.0 / (x * x);
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..9 {
            term *= -((2 * k - 1) as f64) * inv2;
            sum += term;
        }
        sum / x
    } else if x < -26.0 {
        SQRT_2PI * (0.5 * x * x).exp() - mills_ratio(-x)
    } else {
        0.5 * statrs::function::erf::erfc(x / SQRT_2) * SQRT_2PI * (0.5 * x * x).exp()
    }
}

/// Degree-`n` probabilists' Hermite polynomial at `x`.
///
/// `n = -1` returns the Mills ratio `(1 - Φ(x))/φ(x)`; `n < -1` is a domain
/// error. The forward recurrence is stable for the desk-scale degrees used
/// here (n ≤ 12).
pub fn hermite(n: i32, x: f64) -> Result<f64, SpecialFnError> {
    if n < -1 {
        return Err(SpecialFnError::Domain(format!(
            "hermite degree must be >= -1, got {n}"
        )));
    }
    if n == -1 {
        return Ok(mills_ratio(x));
    }
    let mut prev = 1.0; // H_0
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = x; // H_1
    for k in 1..n {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn hermite_nonneg(n: u32, x: f64) -> f64 {
    hermite(n as i32, x).expect("nonnegative degree")
}

/// Gaussian Minkowski functional of the half-line `(-∞, u]`.
///
/// `j = 0` is the Gaussian measure `Φ(u)`; for `j ≥ 1` the tube expansion of
/// `Φ(u + ρ)` gives `(-1)^{j-1} H_{j-1}(u) φ(u)`.
pub fn mink_halfline(j: u32, u: f64) -> f64 {
    if j == 0 {
        gaussian_cdf(u)
    } else {
        let sign = if (j - 1) % 2 == 0 { 1.0 } else { -1.0 };
        sign * hermite_nonneg(j - 1, u) * gaussian_pdf(u)
    }
}

/// `Γ(half/2)` for positive integer `half`, computed exactly from
/// `Γ(1/2) = √π`, `Γ(1) = 1` and the recurrence `Γ(x+1) = xΓ(x)`.
pub fn gamma_half_integer(half: u32) -> f64 {
    assert!(half >= 1, "gamma argument must be a positive half-integer");
    let mut x;
    let mut g;
    if half % 2 == 0 {
        x = 1.0;
        g = 1.0;
    } else {
        x = 0.5;
        g = std::f64::consts::PI.sqrt();
    }
    while x + 0.6 < half as f64 / 2.0 {
        g *= x;
        x += 1.0;
    }
    g
}

/// `∫_R M_j(D_u) du` for the sublevel sets `D_u` of the χ² map with `k`
/// degrees of freedom.
///
/// Writing `p_k` for the χ-distribution density, `M_j(D_u) = p_k^{(j-1)}(√u)`
/// and substituting `u = t²` gives `2 ∫_0^∞ p_k^{(j-1)}(t) t dt`. For `j = 1`
/// this is twice the χ mean; for `j = 2` integration by parts leaves
/// `-2 ∫ p_k = -2`; for `j ≥ 3` the boundary terms cancel.
pub fn chi2_mink_integrals(k: u32, j: u32) -> Result<f64, SpecialFnError> {
    if j < 1 || k < j {
        return Err(SpecialFnError::Domain(format!(
            "chi2 minkowski integral requires k >= j >= 1, got k={k}, j={j}"
        )));
    }
    Ok(match j {
        1 => 2.0 * SQRT_2 * gamma_half_integer(k + 1) / gamma_half_integer(k),
        2 => -2.0,
        _ => 0.0,
    })
}

/// Monotonicity tag for [`PiecewiseC2Function`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    None,
}

/// A scalar function with an explicit derivative and a list of points where
/// it fails to be C².
///
/// Construction numerically checks continuity across the breakpoints (gap at
/// ±1e-9 below 1e-8) and that the supplied derivative matches a central
/// finite difference away from them.
pub struct PiecewiseC2Function {
    label: String,
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    deriv: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    breakpoints: Vec<f64>,
    monotonicity: Monotonicity,
}

impl PiecewiseC2Function {
    pub fn new(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
        breakpoints: Vec<f64>,
        monotonicity: Monotonicity,
    ) -> Result<Self, SpecialFnError> {
        let f = Self {
            label: label.into(),
            eval: Box::new(eval),
            deriv: Box::new(deriv),
            breakpoints,
            monotonicity,
        };
        f.check_continuity()?;
        f.check_derivative()?;
        Ok(f)
    }

    /// Smooth function: no breakpoints.
    pub fn smooth(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
        monotonicity: Monotonicity,
    ) -> Result<Self, SpecialFnError> {
        Self::new(label, eval, deriv, Vec::new(), monotonicity)
    }

    /// The identity map `x`.
    pub fn identity() -> Self {
        Self::smooth("identity", |x| x, |_| 1.0, Monotonicity::Increasing)
            .expect("identity is smooth")
    }

    /// The cutoff `min(x, a)`, C² everywhere except at `a`.
    pub fn cutoff_min(a: f64) -> Self {
        Self::new(
            format!("min(x, {a})"),
            move |x| x.min(a),
            move |x| if x < a { 1.0 } else { 0.0 },
            vec![a],
            Monotonicity::None,
        )
        .expect("cutoff is continuous")
    }

    fn check_continuity(&self) -> Result<(), SpecialFnError> {
        let delta = 1e-9;
        for &b in &self.breakpoints {
            let gap = ((self.eval)(b + delta) - (self.eval)(b - delta)).abs();
            if !(gap <= 1e-8) {
                return Err(SpecialFnError::InvalidFunction(format!(
                    "{}: jump of {gap:.3e} across breakpoint {b}",
                    self.label
                )));
            }
        }
        Ok(())
    }

    fn check_derivative(&self) -> Result<(), SpecialFnError> {
        let h = 1e-5;
        let mut x = -4.0;
        while x <= 4.0 {
            let near_break = self.breakpoints.iter().any(|&b| (x - b).abs() < 0.05);
            if !near_break {
                let fd = ((self.eval)(x + h) - (self.eval)(x - h)) / (2.0 * h);
                let err = (fd - (self.deriv)(x)).abs();
                if !(err <= 1e-5) {
                    return Err(SpecialFnError::InvalidFunction(format!(
                        "{}: derivative disagrees with finite difference at x={x} (err {err:.3e})",
                        self.label
                    )));
                }
            }
            x += 0.5;
        }
        Ok(())
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (self.deriv)(x)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl std::fmt::Debug for PiecewiseC2Function {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PiecewiseC2Function")
            .field("label", &self.label)
            .field("breakpoints", &self.breakpoints)
            .field("monotonicity", &self.monotonicity)
            .finish()
    }
}

/// Window, tolerance and splitting control for the Gaussian-weighted
/// quadrature. The default window [-10, 10] truncates a weight below
/// 1e-22, negligible against the default 1e-10 tolerance for polynomially
/// bounded integrands.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct QuadratureConfig {
    pub lower: f64,
    pub upper: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Extra non-smooth points of the integrand; always split before
    /// adapting so kinks never sit inside a panel.
    pub breakpoints: Vec<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            lower: -10.0,
            upper: 10.0,
            abs_tol: 1e-10,
            max_subdivisions: 1 << 14,
            breakpoints: Vec::new(),
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), SpecialFnError> {
        if !(self.lower < self.upper) {
            return Err(SpecialFnError::InvalidConfig(
                "lower bound must be below upper bound".into(),
            ));
        }
        if !(self.abs_tol > 0.0) {
            return Err(SpecialFnError::InvalidConfig("abs_tol must be positive".into()));
        }
        let mut prev = f64::NEG_INFINITY;
        for &b in &self.breakpoints {
            if b < self.lower || b > self.upper {
                return Err(SpecialFnError::InvalidConfig(format!(
                    "breakpoint {b} outside [{}, {}]",
                    self.lower, self.upper
                )));
            }
            if b < prev {
                return Err(SpecialFnError::InvalidConfig("breakpoints must be sorted".into()));
            }
            prev = b;
        }
        Ok(())
    }
}

fn simpson_panel(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

struct Adapt<'a> {
    f: &'a dyn Fn(f64) -> f64,
    budget: usize,
    converged: bool,
}

impl<'a> Adapt<'a> {
    fn run(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = simpson_panel(fa, flm, fm, m - a);
        let right = simpson_panel(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || m <= a || b <= m {
            return left + right + delta / 15.0;
        }
        if self.budget == 0 {
            self.converged = false;
            return left + right + delta / 15.0;
        }
        self.budget -= 1;
        self.run(a, m, fa, flm, fm, left, 0.5 * tol)
            + self.run(m, b, fm, frm, fb, right, 0.5 * tol)
    }
}

/// Adaptive-Simpson quadrature of `f` over `[cfg.lower, cfg.upper]`, split at
/// every breakpoint first.
fn integrate(
    f: &dyn Fn(f64) -> f64,
    cfg: &QuadratureConfig,
    extra_breaks: &[f64],
) -> Result<f64, SpecialFnError> {
    cfg.validate()?;
    let mut cuts: Vec<f64> = vec![cfg.lower, cfg.upper];
    cuts.extend(
        cfg.breakpoints
            .iter()
            .chain(extra_breaks.iter())
            .copied()
            .filter(|&b| b > cfg.lower && b < cfg.upper),
    );
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();

    let total_len = cfg.upper - cfg.lower;
    let mut adapt = Adapt {
        f,
        budget: cfg.max_subdivisions,
        converged: true,
    };
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let tol = cfg.abs_tol * (b - a) / total_len;
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (f(a), f(m), f(b));
        let whole = simpson_panel(fa, fm, fb, b - a);
        total += adapt.run(a, b, fa, fm, fb, whole, tol);
    }
    if adapt.converged {
        Ok(total)
    } else {
        Err(SpecialFnError::Accuracy { estimate: total })
    }
}

fn hermite_weight(n: i32, x: f64) -> f64 {
    if n == -1 {
        // H_{-1}(x) φ(x) = 1 - Φ(x), free of the Mills-ratio blowup.
        0.5 * statrs::function::erf::erfc(x / SQRT_2)
    } else {
        hermite_nonneg(n as u32, x) * gaussian_pdf(x)
    }
}

/// Gaussian-weighted inner product `⟨H_n, G⟩ = ∫ H_n(x) G(x) φ(x) dx`.
pub fn inner_product_hermite(
    g: &PiecewiseC2Function,
    n: i32,
    cfg: &QuadratureConfig,
) -> Result<f64, SpecialFnError> {
    if n < -1 {
        return Err(SpecialFnError::Domain(format!(
            "hermite degree must be >= -1, got {n}"
        )));
    }
    let f = |x: f64| hermite_weight(n, x) * g.value(x);
    integrate(&f, cfg, g.breakpoints())
}

/// `⟨H_{j-1}, (sign G')^j G'⟩`, the integral pairing used for real-valued
/// field expectations. For odd `j` the signed power is `|G'|`, for even `j`
/// it is `G'` itself, with `sign(0) = 0` at derivative zeros.
pub fn inner_product_hermite_signed_derivative(
    g: &PiecewiseC2Function,
    j: u32,
    cfg: &QuadratureConfig,
) -> Result<f64, SpecialFnError> {
    if j < 1 {
        return Err(SpecialFnError::Domain("j must be >= 1".into()));
    }
    let odd = j % 2 == 1;
    let f = move |x: f64| {
        let d = g.derivative(x);
        let signed = if odd { d.abs() } else { d };
        hermite_weight(j as i32 - 1, x) * signed
    };
    integrate(&f, cfg, g.breakpoints())
}
