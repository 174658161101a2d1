//! Convex quartics `h(x) = αx⁴ + βx³ + γx² + δx + ε`: convexity test,
//! Fenchel conjugate and proximal mapping.
//!
//! Both the conjugate and the prox reduce to a cubic stationarity equation
//! with `p ≥ 0`, so the Cardano branch always applies and the real root is
//! unique.

use crate::cubic::{Cubic, RealRootSet};
use crate::error::{ensure_finite, Error, Result};

/// `true` iff `α > 0` and `8αγ ≥ 3β²`.
pub fn is_convex(alpha: f64, beta: f64, gamma: f64, delta: f64, epsilon: f64) -> bool {
    [alpha, beta, gamma, delta, epsilon].iter().all(|v| v.is_finite())
        && alpha > 0.0
        && 8.0 * alpha * gamma >= 3.0 * beta * beta
}

/// A quartic certified convex at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexQuartic {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    epsilon: f64,
}

/// `h*(y)` together with the point where the supremum is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugateValue {
    pub argmax: f64,
    pub value: f64,
}

impl ConvexQuartic {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, epsilon: f64) -> Result<Self> {
        ensure_finite(alpha, "alpha")?;
        ensure_finite(beta, "beta")?;
        ensure_finite(gamma, "gamma")?;
        ensure_finite(delta, "delta")?;
        ensure_finite(epsilon, "epsilon")?;
        if alpha <= 0.0 {
            return Err(Error::Precondition(format!("alpha > 0 (got alpha = {alpha})")));
        }
        let lhs = 8.0 * alpha * gamma;
        let rhs = 3.0 * beta * beta;
        if lhs < rhs {
            return Err(Error::Precondition(format!("8*alpha*gamma >= 3*beta^2 (got {lhs} < {rhs})")));
        }
        Ok(Self { alpha, beta, gamma, delta, epsilon })
    }

    /// `h(x) = αx⁴`.
    pub fn pure(alpha: f64) -> Result<Self> {
        Self::new(alpha, 0.0, 0.0, 0.0, 0.0)
    }

    pub fn coefficients(&self) -> [f64; 5] {
        [self.alpha, self.beta, self.gamma, self.delta, self.epsilon]
    }

    pub fn value(&self, x: f64) -> f64 {
        (((self.alpha * x + self.beta) * x + self.gamma) * x + self.delta) * x + self.epsilon
    }

    pub fn derivative(&self, x: f64) -> f64 {
        ((4.0 * self.alpha * x + 3.0 * self.beta) * x + 2.0 * self.gamma) * x + self.delta
    }

    /// The cubic `h′(x) - y`.
    pub fn conjugate_cubic(&self, y: f64) -> Result<Cubic> {
        Cubic::new(4.0 * self.alpha, 3.0 * self.beta, 2.0 * self.gamma, self.delta - y)
    }

    /// The cubic `h′(x) + x - y`.
    pub fn prox_cubic(&self, y: f64) -> Result<Cubic> {
        Cubic::new(4.0 * self.alpha, 3.0 * self.beta, 2.0 * self.gamma + 1.0, self.delta - y)
    }

    /// `h*(y) = y x_y - h(x_y)` where `h′(x_y) = y`.
    pub fn conjugate(&self, y: f64) -> Result<ConjugateValue> {
        ensure_finite(y, "y")?;
        let argmax = unique_root(self.conjugate_cubic(y)?.solve())?;
        Ok(ConjugateValue { argmax, value: y * argmax - self.value(argmax) })
    }

    /// The unique solution of `h′(x) + x = y`.
    pub fn prox(&self, y: f64) -> Result<f64> {
        ensure_finite(y, "y")?;
        unique_root(self.prox_cubic(y)?.solve())
    }
}

// p ≥ 0 makes the real root unique; a cluster of numerically split roots is
// tolerated, well-separated ones are not.
fn unique_root(roots: RealRootSet) -> Result<f64> {
    match roots {
        RealRootSet::OneSimple { root, .. } | RealRootSet::OneTriple(root) => Ok(root),
        other => {
            let r = other.distinct();
            let (lo, hi) = (r[0], r[r.len() - 1]);
            if hi - lo <= 1e-6 * lo.abs().max(hi.abs()).max(1.0) {
                Ok(r[r.len() / 2])
            } else {
                Err(Error::InternalConsistency(format!(
                    "stationarity cubic of a convex quartic returned several real roots: {r:?}"
                )))
            }
        }
    }
}

/// Prox of `x⁴ + x³ + x² + x + 1` in closed form:
/// `-1/4 + ½∛(t + √(t² + (3/4)³)) + ½∛(t - √(t² + (3/4)³))`, `t = y - 3/8`.
pub fn prox_geometric(y: f64) -> f64 {
    let t = y - 0.375;
    let s = (t * t + 0.421_875).sqrt();
    // ∛A·∛B = ∛(-27/64) = -3/4
    let big = if t >= 0.0 { (t + s).cbrt() } else { (t - s).cbrt() };
    let small = -0.75 / big;
    -0.25 + 0.5 * (big + small)
}

/// Prox of `αx⁴` in closed form:
/// `½∛(y/α + √((1 + 27αy²)/(27α³))) + ½∛(y/α - √((1 + 27αy²)/(27α³)))`.
pub fn prox_pure_quartic(alpha: f64, y: f64) -> Result<f64> {
    ensure_finite(alpha, "alpha")?;
    ensure_finite(y, "y")?;
    if alpha <= 0.0 {
        return Err(Error::Domain(format!("alpha > 0 (got alpha = {alpha})")));
    }
    let t = y / alpha;
    let s = ((1.0 + 27.0 * alpha * y * y) / (27.0 * alpha * alpha * alpha)).sqrt();
    // ∛A·∛B = ∛(-1/(27α³)) = -1/(3α)
    let big = if t >= 0.0 { (t + s).cbrt() } else { (t - s).cbrt() };
    let small = -1.0 / (3.0 * alpha * big);
    Ok(0.5 * (big + small))
}

/// `(αx⁴)*(y) = 3|y|^{4/3} / (4(4α)^{1/3})`.
pub fn conjugate_pure_quartic(alpha: f64, y: f64) -> Result<f64> {
    ensure_finite(alpha, "alpha")?;
    ensure_finite(y, "y")?;
    if alpha <= 0.0 {
        return Err(Error::Domain(format!("alpha > 0 (got alpha = {alpha})")));
    }
    Ok(3.0 * y.abs().powf(4.0 / 3.0) / (4.0 * (4.0 * alpha).cbrt()))
}
