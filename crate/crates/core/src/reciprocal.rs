//! Prox of the convex reciprocal `h(x) = α/x` on `x > 0` (`+∞` elsewhere).
//!
//! `Prox_h(y)` is the unique positive root of `x³ - y x² - α = 0`, whose
//! discriminant `Δ = α(α/4 + (y/3)³)` changes sign at the fold
//! `y₀ = -3∛(α/4)`.

use crate::cubic::{cardano_terms, newton_polish_within};
use crate::error::{ensure_finite, Error, Result};
use crate::oracle::{bisect, Bracket};

const FOLD_RTOL: f64 = 1e-12;
const ASYMPTOTIC_ABOVE: f64 = 1e8;
const RESIDUAL_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReciprocalFn {
    alpha: f64,
    breakpoint: f64,
}

/// Which expression produced the prox.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReciprocalBranch {
    /// `y > y₀`, `Δ > 0`.
    Cardano,
    /// `y = y₀`: the limit `∛α/∛4`.
    Fold,
    /// `y < y₀`, `Δ < 0`.
    Trig,
    /// `|y| > 10⁸`: fixed-point iteration on the stationarity equation.
    Asymptotic,
}

impl ReciprocalBranch {
    pub fn name(self) -> &'static str {
        match self {
            ReciprocalBranch::Cardano => "cardano",
            ReciprocalBranch::Fold => "fold",
            ReciprocalBranch::Trig => "trig",
            ReciprocalBranch::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReciprocalProx {
    pub x: f64,
    pub branch: ReciprocalBranch,
    pub delta: f64,
    /// Residual of `x³ - y x² - α` at the returned point.
    pub residual: f64,
    /// The closed form failed its check and bisection supplied `x`.
    pub fallback: bool,
}

impl ReciprocalFn {
    pub fn new(alpha: f64) -> Result<Self> {
        ensure_finite(alpha, "alpha")?;
        if alpha <= 0.0 {
            return Err(Error::Domain(format!("alpha > 0 (got alpha = {alpha})")));
        }
        Ok(Self { alpha, breakpoint: -3.0 * (alpha / 4.0).cbrt() })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `y₀ = -3∛(α/4)`.
    pub fn breakpoint(&self) -> f64 {
        self.breakpoint
    }

    /// `α/x` for `x > 0`, `+∞` otherwise.
    pub fn value(&self, x: f64) -> f64 {
        if x > 0.0 {
            self.alpha / x
        } else {
            f64::INFINITY
        }
    }

    /// `h*(y) = -2√(-αy)` for `y ≤ 0`, `+∞` for `y > 0`.
    pub fn conjugate(&self, y: f64) -> f64 {
        if y <= 0.0 {
            -2.0 * (-self.alpha * y).sqrt()
        } else {
            f64::INFINITY
        }
    }

    /// `Δ = α(α/4 + (y/3)³)`.
    pub fn discriminant(&self, y: f64) -> f64 {
        let t = y / 3.0;
        self.alpha * (self.alpha / 4.0 + t * t * t)
    }

    /// `x³ - y x² - α`.
    pub fn stationarity(&self, y: f64, x: f64) -> f64 {
        x * x * (x - y) - self.alpha
    }

    pub fn prox(&self, y: f64) -> Result<f64> {
        Ok(self.prox_detailed(y)?.x)
    }

    pub fn prox_detailed(&self, y: f64) -> Result<ReciprocalProx> {
        ensure_finite(y, "y")?;
        let alpha = self.alpha;
        let t = y / 3.0;
        let delta = self.discriminant(y);
        let (x, branch) = if y.abs() > ASYMPTOTIC_ABOVE {
            let mut x;
            if y > 0.0 {
                // x = y + α/x²
                x = y;
                for _ in 0..2 {
                    x = y + alpha / (x * x);
                }
            } else {
                // x = √(α/(x - y))
                x = (alpha / -y).sqrt();
                for _ in 0..2 {
                    x = (alpha / (x - y)).sqrt();
                }
            }
            (x, ReciprocalBranch::Asymptotic)
        } else if (y - self.breakpoint).abs() <= FOLD_RTOL * self.breakpoint.abs().max(1.0) {
            (alpha.cbrt() / 4f64.cbrt(), ReciprocalBranch::Fold)
        } else if y > self.breakpoint {
            let p = -y * y / 3.0;
            let q = -alpha - 2.0 * t * t * t;
            let (um, up) = cardano_terms(p, q, delta);
            (t + um + up, ReciprocalBranch::Cardano)
        } else {
            let t3 = t * t * t;
            let theta = ((t3 + alpha / 2.0) / -t3).clamp(-1.0, 1.0).acos();
            (t * (1.0 - 2.0 * (theta / 3.0).cos()), ReciprocalBranch::Trig)
        };

        let g = |x: f64| self.stationarity(y, x);
        let dg = |x: f64| x * (3.0 * x - 2.0 * y);
        let mut x = if x > 0.0 { newton_polish_within(x, g, dg, 0.0, f64::INFINITY) } else { x };
        let tol = RESIDUAL_RTOL * (y.abs().powi(3)).max(alpha).max(1.0);
        let mut fallback = false;
        if !(x > 0.0 && x.is_finite() && g(x).abs() <= tol) {
            let lo = y.max(0.0);
            let hi = y.abs() + alpha + 1.0;
            let br = Bracket::new(lo, hi, g(lo), g(hi))?;
            x = bisect(&br, g, 0.0)?;
            fallback = true;
        }
        Ok(ReciprocalProx { x, branch, delta, residual: g(x), fallback })
    }
}
