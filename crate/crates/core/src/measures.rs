//! Symmetric log-convex probability measures on the real line.
//!
//! A [`Measure`] exposes its density `f`, distribution function `F`, quantile
//! `F⁻¹` and the quantile-coordinate density `J(t) = f(F⁻¹(t))` together with
//! its first two derivatives. Everything downstream works through `J`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use statrs::function::gamma::{gamma, gamma_lr, gamma_ur};

use crate::numeric;
use crate::Error;

/// Step used by finite-difference derivatives of `J`.
pub const FD_STEP: f64 = 1e-5;

/// Catalog tag accepted by [`Measure::new`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    /// `dm_α = α / (2 (1+|x|)^{1+α}) dx`, one parameter `α > 0`.
    GeneralizedCauchy,
    /// `e^{-|x|}/2 dx`, no parameters.
    TwoSidedExponential,
    /// `e^{-|x|^α}/Z dx`, one parameter `α ∈ (0,1)`.
    SubExponential,
}

type DensityFn = dyn Fn(f64) -> f64 + Send + Sync;

#[derive(Clone)]
enum Repr {
    Cauchy { alpha: f64 },
    Exponential,
    SubExp { alpha: f64, norm: f64 },
    Custom { name: String, density: Arc<DensityFn> },
}

/// An immutable symmetric probability measure on ℝ.
#[derive(Clone)]
pub struct Measure {
    repr: Repr,
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Measure({})", self.spec())
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl Measure {
    /// Builds a catalog measure from its tag and parameter list.
    pub fn new(kind: MeasureKind, params: &[f64]) -> Result<Self, Error> {
        match kind {
            MeasureKind::GeneralizedCauchy => match params {
                [a] => Self::cauchy(*a),
                _ => Err(Error::InvalidParameter("cauchy takes exactly one parameter".into())),
            },
            MeasureKind::TwoSidedExponential => {
                if params.is_empty() {
                    Ok(Self::exponential())
                } else {
                    Err(Error::InvalidParameter("exp takes no parameters".into()))
                }
            }
            MeasureKind::SubExponential => match params {
                [a] => Self::sub_exponential(*a),
                _ => Err(Error::InvalidParameter("subexp takes exactly one parameter".into())),
            },
        }
    }

    pub fn cauchy(alpha: f64) -> Result<Self, Error> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("cauchy alpha must be > 0, got {alpha}")));
        }
        Ok(Self { repr: Repr::Cauchy { alpha } })
    }

    pub fn exponential() -> Self {
        Self { repr: Repr::Exponential }
    }

    pub fn sub_exponential(alpha: f64) -> Result<Self, Error> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "subexp alpha must lie in (0,1), got {alpha}"
            )));
        }
        let norm = 2.0 * gamma(1.0 + 1.0 / alpha);
        Ok(Self { repr: Repr::SubExp { alpha, norm } })
    }

    /// A user density. It must be even, positive and integrate to one; log-convexity
    /// is the caller's responsibility and is not checked.
    pub fn custom<F>(name: impl Into<String>, density: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { repr: Repr::Custom { name: name.into(), density: Arc::new(density) } }
    }

    /// Short textual form, e.g. `cauchy:1`, `exp`, `subexp:0.5`.
    pub fn spec(&self) -> String {
        match &self.repr {
            Repr::Cauchy { alpha } => format!("cauchy:{alpha}"),
            Repr::Exponential => "exp".to_string(),
            Repr::SubExp { alpha, .. } => format!("subexp:{alpha}"),
            Repr::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    pub fn kind(&self) -> Option<MeasureKind> {
        match self.repr {
            Repr::Cauchy { .. } => Some(MeasureKind::GeneralizedCauchy),
            Repr::Exponential => Some(MeasureKind::TwoSidedExponential),
            Repr::SubExp { .. } => Some(MeasureKind::SubExponential),
            Repr::Custom { .. } => None,
        }
    }

    /// Shape parameter of the Cauchy or sub-exponential families.
    pub fn alpha(&self) -> Option<f64> {
        match self.repr {
            Repr::Cauchy { alpha } | Repr::SubExp { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        let ax = x.abs();
        match &self.repr {
            Repr::Cauchy { alpha } => alpha / (2.0 * (1.0 + ax).powf(1.0 + alpha)),
            Repr::Exponential => 0.5 * (-ax).exp(),
            Repr::SubExp { alpha, norm } => (-ax.powf(*alpha)).exp() / norm,
            Repr::Custom { density, .. } => density(x),
        }
    }

    /// Mass of `(-∞, -|x|]`, always in `[0, 1/2]`.
    fn lower_tail(&self, ax: f64) -> f64 {
        match &self.repr {
            Repr::Cauchy { alpha } => 0.5 * (1.0 + ax).powf(-alpha),
            Repr::Exponential => 0.5 * (-ax).exp(),
            Repr::SubExp { alpha, .. } => {
                if ax == 0.0 {
                    0.5
                } else if ax.is_infinite() {
                    0.0
                } else {
                    0.5 * gamma_ur(1.0 / alpha, ax.powf(*alpha))
                }
            }
            Repr::Custom { density, .. } => {
                if ax.is_infinite() {
                    return 0.0;
                }
                let inner = numeric::integrate(|s| density(s), 0.0, ax, 1e-14);
                (0.5 - inner).max(0.0)
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x.is_infinite() {
            return if x > 0.0 { 1.0 } else { 0.0 };
        }
        if x <= 0.0 {
            self.lower_tail(-x)
        } else {
            1.0 - self.lower_tail(x)
        }
    }

    /// `μ((a, b))`, computed from the nearer tail to avoid cancellation.
    pub fn mass(&self, a: f64, b: f64) -> f64 {
        if a >= b {
            0.0
        } else if a >= 0.0 {
            self.cdf(-a) - self.cdf(-b)
        } else {
            self.cdf(b) - self.cdf(a)
        }
    }

    /// `F⁻¹(t)`; returns `-∞` at 0 and `+∞` at 1.
    pub fn quantile(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return f64::NEG_INFINITY;
        }
        if t >= 1.0 {
            return f64::INFINITY;
        }
        if t == 0.5 {
            return 0.0;
        }
        let lo = t.min(1.0 - t);
        // Solve for the left-half point and reflect.
        let x = match &self.repr {
            Repr::Cauchy { alpha } => 1.0 - (2.0 * lo).powf(-1.0 / alpha),
            Repr::Exponential => (2.0 * lo).ln(),
            _ => self.numeric_left_quantile(lo),
        };
        if t <= 0.5 {
            x
        } else {
            -x
        }
    }

    /// Inverts `F` on `(-∞, 0]` for `t ∈ (0, 1/2)` inside a bisection bracket,
    /// taking Newton steps when they stay inside the bracket.
    fn numeric_left_quantile(&self, t: f64) -> f64 {
        let mut lo = -1.0;
        while self.cdf(lo) > t {
            lo *= 2.0;
            if lo < -1e300 {
                return f64::NEG_INFINITY;
            }
        }
        let mut hi = 0.0;
        let mut x = 0.5 * (lo + hi);
        for _ in 0..300 {
            let fx = self.cdf(x) - t;
            if fx.abs() <= 1e-13 * t {
                return x;
            }
            if fx > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            if hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(lo.abs()) {
                return 0.5 * (lo + hi);
            }
            let d = self.density(x);
            let newton = if d > 0.0 { x - fx / d } else { f64::NAN };
            x = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        }
        x
    }

    /// `J(t) = f(F⁻¹(t))`, with `J(0) = J(1) = 0`.
    pub fn j(&self, t: f64) -> f64 {
        if t <= 0.0 || t >= 1.0 {
            return 0.0;
        }
        let s = t.min(1.0 - t);
        match &self.repr {
            Repr::Cauchy { alpha } => alpha * 2f64.powf(1.0 / alpha) * s.powf(1.0 + 1.0 / alpha),
            Repr::Exponential => s,
            _ => self.density(self.quantile(s)),
        }
    }

    /// `J'(t)`. On `(1/2, 1)` this is `-J'(1-t)`; at `t = 1/2` the left limit is returned.
    pub fn j_prime(&self, t: f64) -> f64 {
        if t > 0.5 {
            return -self.j_prime(1.0 - t);
        }
        let t = t.max(0.0);
        match &self.repr {
            Repr::Cauchy { alpha } => (alpha + 1.0) * 2f64.powf(1.0 / alpha) * t.powf(1.0 / alpha),
            Repr::Exponential => 1.0,
            Repr::SubExp { alpha, .. } => {
                if t == 0.0 {
                    return 0.0;
                }
                let ax = -self.quantile(t);
                alpha * ax.powf(alpha - 1.0)
            }
            Repr::Custom { .. } => self.fd_prime(t),
        }
    }

    /// `J''(t)`, symmetric about 1/2; at `t = 1/2` the left limit is returned.
    pub fn j_second(&self, t: f64) -> f64 {
        let t = if t > 0.5 { 1.0 - t } else { t };
        match &self.repr {
            Repr::Cauchy { alpha } => {
                (alpha + 1.0) / alpha * 2f64.powf(1.0 / alpha) * t.powf(1.0 / alpha - 1.0)
            }
            Repr::Exponential => 0.0,
            Repr::SubExp { alpha, .. } => {
                let x = self.quantile(t);
                let ax = -x;
                alpha * (1.0 - alpha) * ax.powf(alpha - 2.0) / self.density(x)
            }
            Repr::Custom { .. } => self.fd_second(t),
        }
    }

    /// `J'(1/2⁻)`.
    pub fn j_prime_half(&self) -> f64 {
        match self.repr {
            Repr::Custom { .. } => (self.j(0.5) - self.j(0.5 - FD_STEP)) / FD_STEP,
            _ => self.j_prime(0.5),
        }
    }

    /// `J''(1/2⁻)`.
    pub fn j_second_half(&self) -> f64 {
        match self.repr {
            Repr::Custom { .. } => {
                let h = FD_STEP;
                (self.j(0.5) - 2.0 * self.j(0.5 - h) + self.j(0.5 - 2.0 * h)) / (h * h)
            }
            _ => self.j_second(0.5),
        }
    }

    fn fd_prime(&self, t: f64) -> f64 {
        let h = FD_STEP;
        if t + h > 0.5 {
            (self.j(t) - self.j(t - h)) / h
        } else if t - h < 0.0 {
            (self.j(t + h) - self.j(t)) / h
        } else {
            (self.j(t + h) - self.j(t - h)) / (2.0 * h)
        }
    }

    fn fd_second(&self, t: f64) -> f64 {
        let h = FD_STEP;
        let c = if t + h > 0.5 {
            t - h
        } else if t - h < 0.0 {
            t + h
        } else {
            t
        };
        (self.j(c + h) - 2.0 * self.j(c) + self.j(c - h)) / (h * h)
    }

    /// `∫_0^y x dμ(x)` for `y ≥ 0` (possibly infinite).
    fn half_moment(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        match &self.repr {
            Repr::Cauchy { alpha } => {
                let a = *alpha;
                if y.is_infinite() {
                    return if a > 1.0 { 0.5 / (a - 1.0) } else { f64::INFINITY };
                }
                let l = y.ln_1p();
                let grow = if (a - 1.0).abs() < 1e-12 {
                    l
                } else {
                    ((1.0 - a) * l).exp_m1() / (1.0 - a)
                };
                let decay = -(-a * l).exp_m1() / a;
                0.5 * a * (grow - decay)
            }
            Repr::Exponential => {
                if y.is_infinite() {
                    0.5
                } else {
                    0.5 * (1.0 - (1.0 + y) * (-y).exp())
                }
            }
            Repr::SubExp { alpha, norm } => {
                let a2 = 2.0 / alpha;
                let full = gamma(a2) / (alpha * norm);
                if y.is_infinite() {
                    full
                } else {
                    full * gamma_lr(a2, y.powf(*alpha))
                }
            }
            Repr::Custom { density, .. } => {
                numeric::integrate(|s| s * density(s), 0.0, y, 1e-14)
            }
        }
    }

    /// First moment `∫_a^b x dμ(x)` over `a ≤ b`; infinite ends are allowed when the
    /// corresponding moment is finite.
    pub fn first_moment(&self, a: f64, b: f64) -> f64 {
        if a >= b {
            return 0.0;
        }
        // Odd integrand: the contributions of each side of the origin carry a sign.
        let signed = |x: f64| if x >= 0.0 { self.half_moment(x) } else { self.half_moment(-x) };
        match (a >= 0.0, b >= 0.0) {
            (true, true) => self.half_moment(b) - self.half_moment(a),
            (false, false) => -(signed(a) - signed(b)),
            (false, true) => self.half_moment(b) - signed(a),
            (true, false) => unreachable!(),
        }
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self.repr, Repr::Exponential)
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let param = |a: Option<&str>| -> Result<f64, Error> {
            let a = a.ok_or_else(|| Error::InvalidParameter(format!("`{name}` needs `:<alpha>`")))?;
            a.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad alpha `{a}`")))
        };
        match name.to_ascii_lowercase().as_str() {
            "cauchy" => Measure::cauchy(param(arg)?),
            "exp" | "exponential" => match arg {
                None => Ok(Measure::exponential()),
                Some(_) => Err(Error::InvalidParameter("exp takes no parameter".into())),
            },
            "subexp" => Measure::sub_exponential(param(arg)?),
            other => Err(Error::InvalidParameter(format!(
                "unknown measure `{other}` (expected cauchy:<a>, exp, subexp:<a>)"
            ))),
        }
    }
}

/// Perimeter of an interval `(a, b)` of two-sided-exponential measure `p`, as a
/// function of its left end `a`.
///
/// Admissible `a` ranges over `[-∞, F⁻¹(1-p)]`; `b` is then fixed by `F(b) = F(a) + p`.
pub fn exp_interval_perimeter(p: f64, a: f64) -> Result<f64, Error> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0,1), got {p}")));
    }
    let m = Measure::exponential();
    if a.is_nan() || a == f64::INFINITY || m.cdf(a) > 1.0 - p + 1e-15 {
        return Err(Error::Domain(format!("left end {a} leaves no room for mass {p}")));
    }
    let fa = m.cdf(a).min(1.0 - p);
    if p >= 0.5 {
        return Ok(1.0 - p);
    }
    Ok(if fa <= 0.5 - p {
        2.0 * fa + p
    } else if fa <= 0.5 {
        1.0 - p
    } else {
        2.0 - 2.0 * fa - p
    })
}
