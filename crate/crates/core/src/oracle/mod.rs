//! Brute-force verification backends.
//!
//! Nothing here uses a closed-form root formula: roots come from sign-change
//! bisection on the monotone pieces of a cubic, minimizers from grid search
//! followed by golden-section refinement. The closed-form operators are
//! checked against these in tests and by the CLI's `--check` mode.

pub mod suites;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cubic::Cubic;
use crate::error::{Error, Result};
use crate::point::LabeledPoint;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const SEED_ENV: &str = "CUBIPROX_SEED";

const MAX_BISECTIONS: usize = 200;
const MAX_GOLDEN: usize = 400;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Seed for randomized suites: `CUBIPROX_SEED` (decimal or `0x` hex) when set.
pub fn suite_seed() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| parse_seed(&s)).unwrap_or(DEFAULT_SEED)
}

pub fn parse_seed(s: &str) -> Option<u64> {
    let s = s.trim();
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => s.parse().ok(),
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An interval whose endpoint values do not share a strict sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let ok = lo < hi && f_lo * f_hi <= 0.0 && [lo, hi, f_lo, f_hi].iter().all(|v| v.is_finite());
        if ok {
            Ok(Self { lo, hi, f_lo, f_hi })
        } else {
            Err(Error::InvalidBracket { lo, hi, f_lo, f_hi })
        }
    }

    pub fn from_fn(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(lo, hi, f(lo), f(hi))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Bisection until the bracket is narrower than `tol`, `f` vanishes, or the
/// midpoint stops moving. At most 200 halvings.
pub fn bisect(br: &Bracket, f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
    let Bracket { mut lo, mut hi, f_lo, f_hi } = *br;
    if f_lo * f_hi > 0.0 || lo >= hi {
        return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    let lo_negative = f_lo < 0.0;
    for _ in 0..MAX_BISECTIONS {
        let mid = lo + 0.5 * (hi - lo);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + 0.5 * (hi - lo))
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
pub fn golden_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..MAX_GOLDEN {
        if b - a <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    // The endpoints of [lo, hi] are candidates too.
    [(x, fx), (c, fc), (d, fd), (lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .filter(|(_, v)| !v.is_nan())
        .fold((x, fx), |best, cand| if cand.1 < best.1 { cand } else { best })
}

/// Grid search over `n + 1` points of `[lo, hi]`, then golden refinement on
/// the two cells around the best grid point.
pub fn grid_golden_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize, tol: f64) -> (f64, f64) {
    let n = n.max(2);
    let h = (hi - lo) / n as f64;
    let (best_i, _) = (0..=n)
        .map(|i| (i, f(lo + h * i as f64)))
        .filter(|(_, v)| !v.is_nan())
        .fold((0, f64::INFINITY), |best, cand| if cand.1 < best.1 { cand } else { best });
    let a = lo + h * best_i.saturating_sub(1) as f64;
    let b = (lo + h * (best_i + 1) as f64).min(hi);
    golden_min(f, a, b, tol)
}

/// `1 + max(|b|, |c|, |d|)/|a|`: every real root lies strictly inside.
pub fn cauchy_bound(f: &Cubic) -> f64 {
    let [a, b, c, d] = f.coefficients();
    1.0 + b.abs().max(c.abs()).max(d.abs()) / a.abs()
}

/// One bracket per distinct real root of `f`.
///
/// The real line is cut at the critical points into at most three monotone
/// pieces, closed off by the Cauchy bound. A piece brackets a root when its
/// endpoint values change sign, or when its right endpoint is a root itself
/// (a double root sitting on a critical point).
pub fn isolate_roots(f: &Cubic) -> Vec<Bracket> {
    let bound = cauchy_bound(f);
    let mut cuts = vec![-bound];
    if let Some((lo, hi)) = f.critical_points() {
        cuts.push(lo);
        cuts.push(hi);
    }
    cuts.push(bound);

    let values: Vec<f64> = cuts.iter().map(|&x| f.eval(x)).collect();
    let signs: Vec<i8> = cuts.iter().zip(&values).map(|(&x, &v)| sign_with_noise(f, x, v)).collect();

    let mut out = Vec::new();
    for i in 0..cuts.len() - 1 {
        let (s0, s1) = (signs[i], signs[i + 1]);
        if (s0 * s1 < 0 || s1 == 0) && cuts[i] < cuts[i + 1] {
            let f_lo = if s0 == 0 { 0.0 } else { values[i] };
            let f_hi = if s1 == 0 { 0.0 } else { values[i + 1] };
            out.push(Bracket { lo: cuts[i], hi: cuts[i + 1], f_lo, f_hi });
        }
    }
    out
}

// Sign of f(x), zero when |f(x)| is within evaluation round-off.
fn sign_with_noise(f: &Cubic, x: f64, v: f64) -> i8 {
    let [a, b, c, d] = f.coefficients();
    let t = x.abs();
    let noise = 4.0 * f64::EPSILON * (((a.abs() * t + b.abs()) * t + c.abs()) * t + d.abs());
    if v.abs() <= noise {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Real roots of `f` by bisection on [`isolate_roots`] brackets, ascending.
pub fn roots_by_bisection(f: &Cubic, tol: f64) -> Vec<f64> {
    isolate_roots(f).iter().filter_map(|br| bisect(br, |x| f.eval(x), tol).ok()).collect()
}

/// `argmin_x φ(x) + ½(x - y)²` over `[lo, hi]` by grid + golden section.
pub fn prox_1d(phi: impl Fn(f64) -> f64, y: f64, lo: f64, hi: f64) -> f64 {
    grid_golden_min(|x| phi(x) + 0.5 * (x - y) * (x - y), lo, hi, 2000, 1e-13 * (1.0 + hi.abs().max(lo.abs()))).0
}

/// `argmin_{x > 0} α/x + ½(x - y)²`: best point of a log-spaced grid on
/// `[1e-6, |y| + α + 10]`, refined by golden section between its neighbours.
pub fn reciprocal_prox(alpha: f64, y: f64) -> f64 {
    let obj = |x: f64| alpha / x + 0.5 * (x - y) * (x - y);
    let (lo, hi) = (1e-6_f64, y.abs() + alpha + 10.0);
    let n = 4000;
    let ratio = (hi / lo).ln() / n as f64;
    let grid = |i: usize| lo * (ratio * i as f64).exp();
    let best = (0..=n).min_by(|&i, &j| obj(grid(i)).total_cmp(&obj(grid(j)))).unwrap_or(0);
    let a = grid(best.saturating_sub(1));
    let b = grid((best + 1).min(n));
    golden_min(obj, a, b, 1e-14 * b).0
}

/// Nearest point of `epi(α‖·‖²)` to an exterior point, by minimizing the
/// distance to the boundary point `(t·u, αt²)` along the ray `u = vec/‖vec‖`.
pub fn epigraph_radial(alpha: f64, point: &LabeledPoint) -> LabeledPoint {
    let nu = point.vec_norm();
    let eta = point.scalar;
    let dist2 = |t: f64| {
        let dv = t - nu;
        let ds = alpha * t * t - eta;
        dv * dv + ds * ds
    };
    let (t, _) = grid_golden_min(dist2, 0.0, nu.max(f64::MIN_POSITIVE), 2000, 1e-14 * (1.0 + nu));
    let vec = if nu > 0.0 { point.vec.iter().map(|v| v * t / nu).collect() } else { vec![0.0; point.dim()] };
    LabeledPoint { vec, scalar: alpha * t * t }
}

/// Minimizer of `γ‖u‖²/(2μ) + ½‖u - y‖² + ½(μ - η)²` over the closure of
/// `μ > 0`, with `u` restricted to the line through `y`. Nested golden
/// section: the inner problem is strictly convex in the coordinate along
/// `y`, the outer one in `μ`.
pub fn perspective_prox(gamma: f64, point: &LabeledPoint) -> LabeledPoint {
    let ny = point.vec_norm();
    let eta = point.scalar;
    let objective =
        |t: f64, mu: f64| gamma * t * t / (2.0 * mu) + 0.5 * (t - ny) * (t - ny) + 0.5 * (mu - eta) * (mu - eta);
    let t_span = ny + 1.0;
    let inner = |mu: f64| golden_min(|t| objective(t, mu), -t_span, t_span, 1e-13 * t_span);
    let mu_hi = 2.0 * (eta.abs() + ny + ny * ny / gamma) + 1.0;
    let (mu, f_mu) = grid_golden_min(|mu| inner(mu).1, 1e-14, mu_hi, 400, 1e-13 * mu_hi);
    let origin = 0.5 * ny * ny + 0.5 * eta * eta;
    if origin <= f_mu {
        return LabeledPoint { vec: vec![0.0; point.dim()], scalar: 0.0 };
    }
    let t = inner(mu).0;
    let vec = if ny > 0.0 { point.vec.iter().map(|v| v * t / ny).collect() } else { vec![0.0; point.dim()] };
    LabeledPoint { vec, scalar: mu }
}

/// Weighted squared distance from `(z, σz, γ)` to the point
/// `(s·ẑ, t·ẑ, st/α)` of `{⟨x, y⟩ = αγ}`, in the plane spanned by `ẑ`.
pub fn saddle_plane_dist2(alpha: f64, beta: f64, zeta: f64, sigma: f64, gamma: f64, s: f64, t: f64) -> f64 {
    let g = s * t / alpha - gamma;
    (s - zeta).powi(2) + (t - sigma * zeta).powi(2) + beta * beta * g * g
}

/// Smallest weighted distance over a `(2k+1)²` grid of radius `radius`
/// around `(s0, t0)` in the plane of [`saddle_plane_dist2`].
#[allow(clippy::too_many_arguments)]
pub fn saddle_local_grid_min(
    alpha: f64,
    beta: f64,
    zeta: f64,
    sigma: f64,
    gamma: f64,
    center: (f64, f64),
    radius: f64,
    k: usize,
) -> f64 {
    let h = radius / k as f64;
    let k = k as i64;
    let mut best = f64::INFINITY;
    for i in -k..=k {
        for j in -k..=k {
            let s = center.0 + h * i as f64;
            let t = center.1 + h * j as f64;
            best = best.min(saddle_plane_dist2(alpha, beta, zeta, sigma, gamma, s, t));
        }
    }
    best.sqrt()
}

/// Scalar equation whose unique root in `(-1, 1)` determines the saddle
/// projection: `2ζ²/(1 - x)² + 2α²x/β² + 2αγ` (anti-diagonal) or
/// `2ζ²/(1 + x)² - 2α²x/β² - 2αγ` (diagonal).
pub fn saddle_scalar_equation(alpha: f64, beta: f64, zeta: f64, gamma: f64, diagonal: bool) -> impl Fn(f64) -> f64 {
    let b2 = beta * beta;
    move |x: f64| {
        if diagonal {
            2.0 * zeta * zeta / ((1.0 + x) * (1.0 + x)) - 2.0 * alpha * alpha * x / b2 - 2.0 * alpha * gamma
        } else {
            2.0 * zeta * zeta / ((1.0 - x) * (1.0 - x)) + 2.0 * alpha * alpha * x / b2 + 2.0 * alpha * gamma
        }
    }
}

/// Root of [`saddle_scalar_equation`] in `(-1, 1)` by bisection.
pub fn saddle_root_by_bisection(alpha: f64, beta: f64, zeta: f64, gamma: f64, diagonal: bool) -> Result<f64> {
    let g = saddle_scalar_equation(alpha, beta, zeta, gamma, diagonal);
    let br = Bracket::from_fn(-1.0 + 1e-12, 1.0 - 1e-12, &g)?;
    bisect(&br, g, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bisect_examples() {
        let f = |t: f64| 2.0 * t * t * t + t - 2.0;
        let r = bisect(&Bracket::from_fn(0.0, 1.0, f).unwrap(), f, 1e-12).unwrap();
        assert_abs_diff_eq!(r, 0.835_122_348_481_941_7, epsilon = 1e-10);

        let g = |l: f64| l * l * l + 2.0 * l - 4.0;
        let r = bisect(&Bracket::from_fn(1.0, 2.0, g).unwrap(), g, 1e-12).unwrap();
        assert_abs_diff_eq!(r, 1.179_509_024_602_78, epsilon = 1e-10);

        let h = |x: f64| x * x * x - 2.0 * x * x - 1.0;
        let r = bisect(&Bracket::from_fn(2.0, 3.0, h).unwrap(), h, 1e-12).unwrap();
        assert_abs_diff_eq!(r, 2.205_569_430_400_59, epsilon = 1e-10);
    }

    #[test]
    fn invalid_bracket() {
        assert!(matches!(Bracket::from_fn(0.0, 1.0, |x| x + 1.0), Err(Error::InvalidBracket { .. })));
        assert!(Bracket::new(1.0, 0.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn golden_examples() {
        let (x, v) = golden_min(|x| (x - 1.0) * (x - 1.0), 0.0, 3.0, 1e-12);
        assert_abs_diff_eq!(x, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
        let (x, v) = golden_min(|x| x.powi(4) + 0.5 * x * x, -1.0, 1.0, 1e-12);
        assert_abs_diff_eq!(x, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn golden_agrees_with_bisect_on_reciprocal_prox() {
        // argmin 1/x + ½(x - 2)² solves x³ - 2x² - 1 = 0
        let (x, _) = golden_min(|x| 1.0 / x + 0.5 * (x - 2.0) * (x - 2.0), 1e-6, 10.0, 1e-12);
        let h = |x: f64| x * x * x - 2.0 * x * x - 1.0;
        let r = bisect(&Bracket::from_fn(2.0, 3.0, h).unwrap(), h, 1e-13).unwrap();
        assert_abs_diff_eq!(x, r, epsilon = 1e-6);
    }

    #[test]
    fn isolate_examples() {
        let f = Cubic::new(1.0, -6.0, 11.0, -6.0).unwrap();
        let br = isolate_roots(&f);
        assert_eq!(br.len(), 3);
        for (b, r) in br.iter().zip([1.0, 2.0, 3.0]) {
            assert!(b.contains(r));
        }

        let f = Cubic::new(1.0, 0.0, 1.0, 0.0).unwrap();
        let br = isolate_roots(&f);
        assert_eq!(br.len(), 1);
        assert!(br[0].contains(0.0));

        // (x - 1)²(x + 2): the double root sits on the critical point x₊ = 1.
        let f = Cubic::new(1.0, 0.0, -3.0, 2.0).unwrap();
        let br = isolate_roots(&f);
        assert_eq!(br.len(), 2);
        assert!(br[0].contains(-2.0));
        assert_eq!(br[1].hi, 1.0);
        assert_eq!(br[1].f_hi, 0.0);
        let roots = roots_by_bisection(&f, 1e-13);
        assert_abs_diff_eq!(roots[0], -2.0, epsilon = 1e-12);
        assert_eq!(roots[1], 1.0);
    }

    #[test]
    fn seed_parsing() {
        assert_eq!(parse_seed("0x5EED"), Some(0x5EED));
        assert_eq!(parse_seed("42"), Some(42));
        assert_eq!(parse_seed("nope"), None);
    }
}
