//! Euclidean projection onto the epigraph of `α‖·‖²` in `ℝⁿ × ℝ`.
//!
//! An exterior point `(y, η)` moves to `(y/(1 + 2αx), η + x)`, where `x` is the
//! unique positive root of
//! `4α²x³ + 4α(αη + 1)x² + (4αη + 1)x + η - α‖y‖²`.

use crate::cubic::{cardano_terms, newton_polish_within};
use crate::error::{ensure_finite, Error, Result};
use crate::oracle::{bisect, Bracket};
use crate::point::LabeledPoint;

const RESIDUAL_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpiBranch {
    Interior,
    Cardano,
    Trig,
}

impl EpiBranch {
    pub fn name(self) -> &'static str {
        match self {
            EpiBranch::Interior => "interior",
            EpiBranch::Cardano => "cardano",
            EpiBranch::Trig => "trig",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpiProjection {
    pub point: LabeledPoint,
    /// The positive root `x`; zero for interior points.
    pub shift: f64,
    pub branch: EpiBranch,
    pub delta: f64,
    /// Residual of the stationarity cubic at `shift`.
    pub residual: f64,
    /// Bisection replaced the closed form.
    pub fallback: bool,
}

/// Depressed-cubic data of the exterior problem at `(ν, η)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpiCubicData {
    pub p: f64,
    pub q: f64,
    /// `(p/3)³ + (q/2)²` straight from `p` and `q`.
    pub delta_direct: f64,
    /// The same quantity in factored form, free of cancellation.
    pub delta_product: f64,
    pub shift: f64,
}

pub fn cubic_data(alpha: f64, nu: f64, eta: f64) -> EpiCubicData {
    let s = 2.0 * alpha * eta - 1.0;
    let a2 = alpha * alpha;
    let p = -s * s / (12.0 * a2);
    let q = (s * s * s - 27.0 * a2 * nu * nu) / (108.0 * a2 * alpha);
    let p3 = p / 3.0;
    let q2 = q / 2.0;
    EpiCubicData {
        p,
        q,
        delta_direct: p3 * p3 * p3 + q2 * q2,
        delta_product: (27.0 * a2 * nu * nu - 2.0 * s * s * s) * nu * nu / (1728.0 * a2 * a2),
        shift: -(alpha * eta + 1.0) / (3.0 * alpha),
    }
}

/// `f(x) = 4α²x³ + 4α(αη + 1)x² + (4αη + 1)x + η - αν²`.
pub fn stationarity(alpha: f64, nu: f64, eta: f64, x: f64) -> f64 {
    let a = 4.0 * alpha * alpha;
    let b = 4.0 * alpha * (alpha * eta + 1.0);
    let c = 4.0 * alpha * eta + 1.0;
    let d = eta - alpha * nu * nu;
    ((a * x + b) * x + c) * x + d
}

fn stationarity_slope(alpha: f64, eta: f64, x: f64) -> f64 {
    let a = 4.0 * alpha * alpha;
    let b = 4.0 * alpha * (alpha * eta + 1.0);
    let c = 4.0 * alpha * eta + 1.0;
    (3.0 * a * x + 2.0 * b) * x + c
}

fn residual_scale(alpha: f64, nu: f64, eta: f64, x: f64) -> f64 {
    let m = x.abs().max(1.0);
    4.0 * alpha * alpha * m * m * m
        + (4.0 * alpha * (alpha * eta + 1.0)).abs() * m * m
        + (4.0 * alpha * eta + 1.0).abs() * m
        + (eta - alpha * nu * nu).abs()
}

/// Projection of `point` onto `{(v, s) : α‖v‖² ≤ s}`.
pub fn project_epigraph(alpha: f64, point: &LabeledPoint) -> Result<EpiProjection> {
    ensure_finite(alpha, "alpha")?;
    if alpha <= 0.0 {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    if point.vec.is_empty() {
        return Err(Error::Domain("vector part must have dimension n >= 1".into()));
    }
    ensure_finite(point.scalar, "eta")?;
    if point.vec.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("y"));
    }

    let nu = point.vec_norm();
    let eta = point.scalar;
    if alpha * nu * nu <= eta {
        return Ok(EpiProjection {
            point: point.clone(),
            shift: 0.0,
            branch: EpiBranch::Interior,
            delta: 0.0,
            residual: 0.0,
            fallback: false,
        });
    }

    let data = cubic_data(alpha, nu, eta);
    let delta = data.delta_product;
    let f = |x: f64| stationarity(alpha, nu, eta, x);

    let (raw, branch) = if nu == 0.0 {
        // (x + η)(1 + 2αx)² = 0
        (-eta, EpiBranch::Cardano)
    } else if delta >= 0.0 {
        let (um, up) = cardano_terms(data.p, data.q, delta);
        (data.shift + um + up, EpiBranch::Cardano)
    } else {
        let m = (-data.p / 3.0).sqrt();
        let arg = ((-data.q / 2.0) / (m * m * m)).clamp(-1.0, 1.0);
        let amp = (2.0 * alpha * eta - 1.0).abs() / (3.0 * alpha);
        (data.shift + amp * (arg.acos() / 3.0).cos(), EpiBranch::Trig)
    };

    let mut x = if raw > 0.0 && nu > 0.0 {
        newton_polish_within(raw, f, |x| stationarity_slope(alpha, eta, x), 0.0, f64::INFINITY)
    } else {
        raw
    };
    let mut fallback = false;
    let ok = |x: f64| x > 0.0 && x.is_finite() && f(x).abs() <= RESIDUAL_RTOL * residual_scale(alpha, nu, eta, x);
    if !ok(x) {
        // φ(x) = αν²/(1 + 2αx)² - x - η is positive at 0 and nonpositive at αν² - η.
        let phi = |x: f64| {
            let w = 1.0 + 2.0 * alpha * x;
            alpha * nu * nu / (w * w) - x - eta
        };
        let hi = alpha * nu * nu - eta;
        let br = Bracket::new(0.0, hi, phi(0.0), phi(hi))?;
        x = bisect(&br, phi, 0.0)?;
        fallback = true;
    }

    let w = 1.0 + 2.0 * alpha * x;
    let vec = point.vec.iter().map(|v| v / w).collect();
    Ok(EpiProjection {
        point: LabeledPoint { vec, scalar: eta + x },
        shift: x,
        branch,
        delta,
        residual: f(x),
        fallback,
    })
}

/// Cosine of the angle between `point - proj` and the outward normal
/// `(2α·proj.vec, -1)` at a boundary point; 1 means optimal.
pub fn normal_alignment(alpha: f64, point: &LabeledPoint, proj: &LabeledPoint) -> f64 {
    let mut dot = 0.0;
    let mut n_d = 0.0;
    let mut n_n = 0.0;
    for (p, q) in point.vec.iter().zip(&proj.vec) {
        let d = p - q;
        let n = 2.0 * alpha * q;
        dot += d * n;
        n_d += d * d;
        n_n += n * n;
    }
    let ds = point.scalar - proj.scalar;
    dot -= ds;
    n_d += ds * ds;
    n_n += 1.0;
    if n_d == 0.0 {
        return 1.0;
    }
    dot / (n_d.sqrt() * n_n.sqrt())
}
