//! Projection onto the rectangular hyperbolic paraboloid
//! `S = {(x, y, s) : ⟨x, y⟩ = αs}` of `ℝⁿ × ℝⁿ × ℝ`, under the norm
//! `‖(x, y, s)‖² = ‖x‖² + ‖y‖² + β²s²`.
//!
//! Only the two symmetric inputs `(z, -z, γ)` and `(z, z, γ)` are handled, on
//! the parameter regions where the answer reduces to one root in `(-1, 1)` of
//! a cubic.

use std::f64::consts::PI;

use crate::cubic::{cardano_terms, newton_polish_within, Cubic};
use crate::error::{ensure_finite, Error, Result};
use crate::oracle::{bisect, saddle_scalar_equation, Bracket};
use crate::point::{dot, norm};

const RESIDUAL_RTOL: f64 = 1e-9;
const WINDOW_GAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaddleKind {
    /// Input `(z, -z, γ)`.
    AntiDiag,
    /// Input `(z, z, γ)`.
    Diag,
}

impl SaddleKind {
    pub fn name(self) -> &'static str {
        match self {
            SaddleKind::AntiDiag => "antidiag",
            SaddleKind::Diag => "diag",
        }
    }

    /// `-1` for the anti-diagonal, `+1` for the diagonal.
    pub fn sign(self) -> f64 {
        match self {
            SaddleKind::AntiDiag => -1.0,
            SaddleKind::Diag => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaddleBranch {
    Cardano,
    Trig,
}

impl SaddleBranch {
    pub fn name(self) -> &'static str {
        match self {
            SaddleBranch::Cardano => "cardano",
            SaddleBranch::Trig => "trig",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleSet {
    alpha: f64,
    beta: f64,
}

/// Depressed-cubic data for one input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleCubicData {
    pub p: f64,
    pub q: f64,
    pub delta_direct: f64,
    pub delta_product: f64,
    /// Inflection point `x₀`.
    pub shift: f64,
    /// `α + β²γ` (anti-diagonal) or `α - β²γ` (diagonal).
    pub spread: f64,
    /// Sign of `α·spread`, selecting the trigonometric root.
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SaddleProjection {
    pub kind: SaddleKind,
    /// The root in `(-1, 1)`.
    pub x: f64,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    pub scalar: f64,
    pub branch: SaddleBranch,
    pub delta: f64,
    pub p: f64,
    /// Residual of the stationarity cubic at `x`.
    pub residual: f64,
    pub fallback: bool,
}

impl SaddleProjection {
    /// `⟨first, second⟩ - α·scalar`.
    pub fn membership_gap(&self, alpha: f64) -> f64 {
        dot(&self.first, &self.second) - alpha * self.scalar
    }
}

impl SaddleSet {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        ensure_finite(alpha, "alpha")?;
        ensure_finite(beta, "beta")?;
        if alpha == 0.0 {
            return Err(Error::Domain("alpha must be nonzero".into()));
        }
        if beta <= 0.0 {
            return Err(Error::Domain(format!("beta must be positive, got {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `α(γ - α/β²) + ζ²/4 < 0` or `α(γ + α/β²) - ζ²/4 > 0`, both as a
    /// quantity that must be negative.
    pub fn precondition_margin(&self, kind: SaddleKind, zeta: f64, gamma: f64) -> f64 {
        let (a, b2) = (self.alpha, self.beta * self.beta);
        match kind {
            SaddleKind::AntiDiag => a * (gamma - a / b2) + zeta * zeta / 4.0,
            SaddleKind::Diag => zeta * zeta / 4.0 - a * (gamma + a / b2),
        }
    }

    pub fn precondition_holds(&self, kind: SaddleKind, zeta: f64, gamma: f64) -> bool {
        zeta > 0.0 && self.precondition_margin(kind, zeta, gamma) < 0.0
    }

    /// The stationarity cubic in `x`.
    pub fn cubic(&self, kind: SaddleKind, zeta: f64, gamma: f64) -> Result<Cubic> {
        let (a, b2) = (self.alpha, self.beta * self.beta);
        let abg = a * b2 * gamma;
        let bz = b2 * zeta * zeta;
        match kind {
            SaddleKind::AntiDiag => Cubic::new(a * a, abg - 2.0 * a * a, a * a - 2.0 * abg, abg + bz),
            SaddleKind::Diag => Cubic::new(a * a, abg + 2.0 * a * a, a * a + 2.0 * abg, abg - bz),
        }
    }

    pub fn cubic_data(&self, kind: SaddleKind, zeta: f64, gamma: f64) -> SaddleCubicData {
        let a = self.alpha;
        let b2 = self.beta * self.beta;
        let bz = b2 * zeta * zeta / (a * a);
        let (spread, shift, q, delta_product) = match kind {
            SaddleKind::AntiDiag => {
                let s = a + b2 * gamma;
                let c = s * s * s / (27.0 * a * a * a);
                (s, (2.0 * a - b2 * gamma) / (3.0 * a), 2.0 * c + bz, bz * (bz / 4.0 + c))
            }
            SaddleKind::Diag => {
                let s = b2 * gamma - a;
                let c = s * s * s / (27.0 * a * a * a);
                (-s, -(2.0 * a + b2 * gamma) / (3.0 * a), 2.0 * c - bz, bz * (bz / 4.0 - c))
            }
        };
        let p = -spread * spread / (3.0 * a * a);
        let p3 = p / 3.0;
        let q2 = q / 2.0;
        let phase = sign_or_zero(a * spread);
        SaddleCubicData { p, q, delta_direct: p3 * p3 * p3 + q2 * q2, delta_product, shift, spread, phase }
    }

    /// Residual of the scalar optimality equation at `x`.
    pub fn scalar_residual(&self, kind: SaddleKind, zeta: f64, gamma: f64, x: f64) -> f64 {
        saddle_scalar_equation(self.alpha, self.beta, zeta, gamma, kind == SaddleKind::Diag)(x)
    }

    pub fn project_antidiag(&self, z: &[f64], gamma: f64) -> Result<SaddleProjection> {
        self.project(SaddleKind::AntiDiag, z, gamma)
    }

    pub fn project_diag(&self, z: &[f64], gamma: f64) -> Result<SaddleProjection> {
        self.project(SaddleKind::Diag, z, gamma)
    }

    /// Projection of `(z, ∓z, γ)` onto `S`.
    pub fn project(&self, kind: SaddleKind, z: &[f64], gamma: f64) -> Result<SaddleProjection> {
        ensure_finite(gamma, "gamma")?;
        if z.is_empty() {
            return Err(Error::Domain("z must have dimension n >= 1".into()));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("z"));
        }
        let zeta = norm(z);
        if zeta == 0.0 {
            return Err(Error::Precondition("z must be nonzero".into()));
        }
        if !self.precondition_holds(kind, zeta, gamma) {
            let text = match kind {
                SaddleKind::AntiDiag => "alpha*(gamma - alpha/beta^2) < -|z|^2/4",
                SaddleKind::Diag => "alpha*(gamma + alpha/beta^2) > |z|^2/4",
            };
            return Err(Error::Precondition(format!(
                "{text} fails for alpha = {}, beta = {}, |z| = {zeta}, gamma = {gamma}",
                self.alpha, self.beta
            )));
        }

        let data = self.cubic_data(kind, zeta, gamma);
        if data.p > 0.0 {
            return Err(Error::InternalConsistency(format!("p = {} > 0", data.p)));
        }
        let delta = data.delta_product;
        let (raw, branch) = if delta >= 0.0 || data.phase == 0.0 {
            let (um, up) = cardano_terms(data.p, data.q, delta.max(0.0));
            (data.shift + um + up, SaddleBranch::Cardano)
        } else {
            let m = (-data.p / 3.0).sqrt();
            let arg = ((-data.q / 2.0) / (m * m * m)).clamp(-1.0, 1.0);
            let turn = match kind {
                SaddleKind::AntiDiag => (3.0 + data.phase) * PI,
                SaddleKind::Diag => (2.0 + 2.0 * data.phase) * PI,
            };
            let amp = data.phase * 2.0 * data.spread / (3.0 * self.alpha);
            (data.shift + amp * ((turn + arg.acos()) / 3.0).cos(), SaddleBranch::Trig)
        };

        let f = self.cubic(kind, zeta, gamma)?;
        let lo = -1.0;
        let hi = 1.0;
        let mut x = if raw > lo && raw < hi {
            newton_polish_within(raw, |x| f.eval(x), |x| f.derivative(x), lo, hi)
        } else {
            raw
        };
        let mut fallback = false;
        let accept = |x: f64| x > lo && x < hi && f.eval(x).abs() <= RESIDUAL_RTOL * f.residual_scale(x);
        if !accept(x) {
            let g = saddle_scalar_equation(self.alpha, self.beta, zeta, gamma, kind == SaddleKind::Diag);
            let br = Bracket::from_fn(lo + WINDOW_GAP, hi - WINDOW_GAP, &g)?;
            x = bisect(&br, &g, 0.0)?;
            fallback = true;
        }

        // Refine w = 1 + σx, the distance to the pole, on the scalar equation.
        let sigma = kind.sign();
        let (a2, b2) = (self.alpha * self.alpha, self.beta * self.beta);
        let z2 = 2.0 * zeta * zeta;
        let g = |w: f64| z2 / (w * w) - sigma * (2.0 * a2 * sigma * (w - 1.0) / b2 + 2.0 * self.alpha * gamma);
        let dg = |w: f64| -2.0 * z2 / (w * w * w) - 2.0 * a2 / b2;
        let w = newton_polish_within(1.0 + sigma * x, g, dg, 0.0, 2.0);
        let x = sigma * (w - 1.0);
        let first: Vec<f64> = z.iter().map(|v| v / w).collect();
        let second = first.iter().map(|v| sigma * v).collect();
        let scalar = gamma + self.alpha * x / (self.beta * self.beta);
        Ok(SaddleProjection { kind, x, first, second, scalar, branch, delta, p: data.p, residual: f.eval(x), fallback })
    }

    /// Weighted distance between two triples.
    pub fn distance(&self, a: (&[f64], &[f64], f64), b: (&[f64], &[f64], f64)) -> f64 {
        let d1: f64 = a.0.iter().zip(b.0).map(|(u, v)| (u - v) * (u - v)).sum();
        let d2: f64 = a.1.iter().zip(b.1).map(|(u, v)| (u - v) * (u - v)).sum();
        let ds = self.beta * (a.2 - b.2);
        (d1 + d2 + ds * ds).sqrt()
    }
}

fn sign_or_zero(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn diag_fixed_point() {
        let s = SaddleSet::new(1.0, 1.0).unwrap();
        let r = s.project_diag(&[1.0], 1.0).unwrap();
        assert_abs_diff_eq!(r.x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.first[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.second[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.scalar, 1.0, epsilon = 1e-12);
        assert_eq!(r.branch, SaddleBranch::Cardano);
        assert!(!r.fallback);
    }

    #[test]
    fn diag_gamma_zero() {
        let s = SaddleSet::new(1.0, 1.0).unwrap();
        let r = s.project_diag(&[1.0], 0.0).unwrap();
        assert_abs_diff_eq!(r.x, 0.465_571_231_876_768, epsilon = 1e-12);
        assert_abs_diff_eq!(r.first[0], 0.682_327_803_828_019_3, epsilon = 1e-10);
        assert!(r.membership_gap(1.0).abs() < 1e-14);
    }

    #[test]
    fn antidiag_example() {
        let s = SaddleSet::new(1.0, 1.0).unwrap();
        let r = s.project_antidiag(&[1.0], -2.0).unwrap();
        assert!(r.x > 0.0 && r.x < 1.0);
        assert!(s.scalar_residual(SaddleKind::AntiDiag, 1.0, -2.0, r.x).abs() < 1e-12);
        assert!(r.membership_gap(1.0).abs() < 1e-12);
        assert_eq!(r.second[0], -r.first[0]);
        assert!(!r.fallback);
    }

    #[test]
    fn precondition_rejected() {
        let s = SaddleSet::new(1.0, 1.0).unwrap();
        assert!(matches!(s.project_diag(&[1.0], -1.0), Err(Error::Precondition(_))));
        assert!(matches!(s.project_antidiag(&[1.0], 1.0), Err(Error::Precondition(_))));
        assert!(matches!(s.project_diag(&[0.0, 0.0], 5.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn bad_set() {
        assert!(matches!(SaddleSet::new(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(SaddleSet::new(1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn delta_forms_agree() {
        let s = SaddleSet::new(-0.7, 1.3).unwrap();
        for kind in [SaddleKind::AntiDiag, SaddleKind::Diag] {
            for (zeta, gamma) in [(0.5, 2.0), (1.5, -3.0), (0.1, 0.2)] {
                let d = s.cubic_data(kind, zeta, gamma);
                let scale = (d.p / 3.0).abs().powi(3).max((d.q / 2.0).powi(2));
                assert!((d.delta_direct - d.delta_product).abs() <= 1e-10 * scale.max(1e-300));
                let f = s.cubic(kind, zeta, gamma).unwrap().depress();
                assert_abs_diff_eq!(f.p(), d.p, epsilon = 1e-12 * d.p.abs().max(1.0));
                assert_abs_diff_eq!(f.q(), d.q, epsilon = 1e-12 * d.q.abs().max(1.0));
            }
        }
    }

    #[test]
    fn trig_branch_taken_for_small_z() {
        // α + β²γ far from zero with small ζ makes Δ negative.
        let s = SaddleSet::new(1.0, 1.0).unwrap();
        let r = s.project_antidiag(&[0.1], -3.0).unwrap();
        assert_eq!(r.branch, SaddleBranch::Trig);
        assert!(!r.fallback);
        let r = s.project_diag(&[0.1], 3.0).unwrap();
        assert_eq!(r.branch, SaddleBranch::Trig);
        assert!(!r.fallback);
    }
}
