//! Prox of `γ·h` for the closed perspective `h(y, η) = ‖y‖²/(2η)` on `η > 0`.

use crate::cubic::{cardano_terms, newton_polish_within};
use crate::error::{ensure_finite, Error, Result};
use crate::oracle::{bisect, Bracket};
use crate::point::LabeledPoint;

const RESIDUAL_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerspectiveBranch {
    /// `‖y‖² + 2γη ≤ 0`: the prox is the origin.
    Zero,
    Positive,
}

impl PerspectiveBranch {
    pub fn name(self) -> &'static str {
        match self {
            PerspectiveBranch::Zero => "zero",
            PerspectiveBranch::Positive => "positive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerspectiveProxResult {
    pub point: LabeledPoint,
    pub lambda: f64,
    pub branch: PerspectiveBranch,
    /// `(p/3)³ + (‖y‖/γ)²`, zero on the zero branch.
    pub delta: f64,
    /// Whether the trigonometric form produced `lambda`.
    pub trig: bool,
    /// `1 - γλ/‖y‖`, the factor applied to `y`.
    pub shrink: f64,
    pub residual: f64,
    pub fallback: bool,
}

/// `λ³ + pλ - 2‖y‖/γ` with `p = 2(η + γ)/γ`.
pub fn lambda_cubic(gamma: f64, ny: f64, eta: f64, lambda: f64) -> f64 {
    let p = 2.0 * (eta + gamma) / gamma;
    (lambda * lambda + p) * lambda - 2.0 * ny / gamma
}

pub fn lambda_residual_scale(gamma: f64, ny: f64, eta: f64, lambda: f64) -> f64 {
    let m = lambda.abs().max(1.0);
    m * m * m + (2.0 * (eta + gamma) / gamma).abs() * m + 2.0 * ny / gamma
}

pub fn prox_perspective(gamma: f64, point: &LabeledPoint) -> Result<PerspectiveProxResult> {
    ensure_finite(gamma, "gamma")?;
    if gamma <= 0.0 {
        return Err(Error::Domain(format!("gamma must be positive, got {gamma}")));
    }
    if point.vec.is_empty() {
        return Err(Error::Domain("vector part must have dimension n >= 1".into()));
    }
    ensure_finite(point.scalar, "eta")?;
    if point.vec.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("y"));
    }

    let ny = point.vec_norm();
    let eta = point.scalar;
    let n = point.dim();
    if ny * ny + 2.0 * gamma * eta <= 0.0 {
        return Ok(PerspectiveProxResult {
            point: LabeledPoint { vec: vec![0.0; n], scalar: 0.0 },
            lambda: 0.0,
            branch: PerspectiveBranch::Zero,
            delta: 0.0,
            trig: false,
            shrink: 0.0,
            residual: 0.0,
            fallback: false,
        });
    }

    let p = 2.0 * (eta + gamma) / gamma;
    let q = -2.0 * ny / gamma;
    let p3 = p / 3.0;
    let delta = p3 * p3 * p3 + (ny / gamma) * (ny / gamma);
    if ny == 0.0 {
        return Ok(PerspectiveProxResult {
            point: LabeledPoint { vec: vec![0.0; n], scalar: eta },
            lambda: 0.0,
            branch: PerspectiveBranch::Positive,
            delta,
            trig: false,
            shrink: 1.0,
            residual: 0.0,
            fallback: false,
        });
    }

    let (raw, trig) = if delta >= 0.0 {
        let (um, up) = cardano_terms(p, q, delta);
        (um + up, false)
    } else {
        let m = (-p3).sqrt();
        let arg = ((ny / gamma) / (m * m * m)).clamp(-1.0, 1.0);
        (2.0 * m * (arg.acos() / 3.0).cos(), true)
    };

    let g = |l: f64| lambda_cubic(gamma, ny, eta, l);
    let dg = |l: f64| 3.0 * l * l + p;
    let mut lambda = if raw > 0.0 { newton_polish_within(raw, g, dg, 0.0, f64::INFINITY) } else { raw };
    let mut fallback = false;
    if !(lambda >= 0.0 && g(lambda).abs() <= RESIDUAL_RTOL * lambda_residual_scale(gamma, ny, eta, lambda)) {
        let hi = (2.0 * ny / gamma).cbrt() + (-p).max(0.0).sqrt() + 1.0;
        let br = Bracket::new(0.0, hi, g(0.0), g(hi))?;
        lambda = bisect(&br, g, 0.0)?;
        fallback = true;
    }

    let shrink = 1.0 - gamma * lambda / ny;
    let vec = point.vec.iter().map(|v| shrink * v).collect();
    Ok(PerspectiveProxResult {
        point: LabeledPoint { vec, scalar: eta + gamma * lambda * lambda / 2.0 },
        lambda,
        branch: PerspectiveBranch::Positive,
        delta,
        trig,
        shrink,
        residual: g(lambda),
        fallback,
    })
}

/// `γ·h(u, μ)` for the closed perspective, `+∞` off its domain.
pub fn perspective_value(gamma: f64, point: &LabeledPoint) -> f64 {
    let nu = point.vec_norm();
    if point.scalar > 0.0 {
        gamma * nu * nu / (2.0 * point.scalar)
    } else if point.scalar == 0.0 && nu == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}
