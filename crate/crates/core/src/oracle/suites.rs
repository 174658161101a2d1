//! Seeded randomized cross-checks of each closed-form operator against its
//! brute-force counterpart.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    epigraph_radial, golden_min, isolate_roots, perspective_prox, reciprocal_prox, saddle_local_grid_min, seeded_rng,
};
use crate::cubic::Cubic;
use crate::epigraph::project_epigraph;
use crate::error::{Error, Result};
use crate::perspective::prox_perspective;
use crate::point::{norm, LabeledPoint};
use crate::quartic::ConvexQuartic;
use crate::reciprocal::ReciprocalFn;
use crate::saddle::{SaddleKind, SaddleSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Cubic,
    Quartic,
    Reciprocal,
    Epigraph,
    Saddle,
    Perspective,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Cubic, Suite::Quartic, Suite::Reciprocal, Suite::Epigraph, Suite::Saddle, Suite::Perspective];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cubic => "cubic",
            Suite::Quartic => "quartic",
            Suite::Reciprocal => "reciprocal",
            Suite::Epigraph => "epigraph",
            Suite::Saddle => "saddle",
            Suite::Perspective => "perspective",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Default pass threshold on the suite's error metric.
    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Cubic => 1e-9,
            Suite::Quartic | Suite::Reciprocal | Suite::Epigraph => 1e-6,
            Suite::Saddle | Suite::Perspective => 1e-5,
        }
    }

    pub fn default_instances(self) -> usize {
        match self {
            Suite::Cubic => 100_000,
            Suite::Saddle => 10_000,
            _ => 1_000,
        }
    }

    /// What the error metric measures.
    pub fn metric(self) -> &'static str {
        match self {
            Suite::Cubic => "max scaled residual; census mismatch counts as failure",
            Suite::Quartic => "|prox - golden-section argmin|",
            Suite::Reciprocal => "|prox - log-grid golden-section argmin|",
            Suite::Epigraph => "distance to point minus distance to radial oracle",
            Suite::Saddle => "distance to point minus best local-grid distance; root outside (-1,1) fails",
            Suite::Perspective => "distance between prox and nested golden-section oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub tol: f64,
    pub instances: usize,
    pub failures: usize,
    /// Instances where the closed form fell back to bisection.
    pub fallbacks: usize,
    pub max_error: f64,
    pub worst: String,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Outcome {
    error: f64,
    pass: bool,
    fallback: bool,
    label: String,
}

pub fn run_suite(suite: Suite, seed: u64, instances: usize, tol: f64) -> Result<SuiteReport> {
    let mut rng = seeded_rng(seed);
    let mut report =
        SuiteReport { suite, seed, tol, instances, failures: 0, fallbacks: 0, max_error: 0.0, worst: String::new() };
    for _ in 0..instances {
        let o = match suite {
            Suite::Cubic => cubic_instance(&mut rng, tol)?,
            Suite::Quartic => quartic_instance(&mut rng, tol)?,
            Suite::Reciprocal => reciprocal_instance(&mut rng, tol)?,
            Suite::Epigraph => epigraph_instance(&mut rng, tol)?,
            Suite::Saddle => saddle_instance(&mut rng, tol)?,
            Suite::Perspective => perspective_instance(&mut rng, tol)?,
        };
        if !o.pass {
            report.failures += 1;
        }
        if o.fallback {
            report.fallbacks += 1;
        }
        if o.error > report.max_error || report.worst.is_empty() {
            report.max_error = report.max_error.max(o.error);
            report.worst = o.label;
        }
    }
    Ok(report)
}

/// Uniform in `[-10, 10]` with `|a| ≥ 0.1`.
pub fn random_cubic(rng: &mut ChaCha8Rng) -> Result<Cubic> {
    let mag = rng.random_range(0.1..10.0);
    let a = if rng.random_bool(0.5) { mag } else { -mag };
    Cubic::new(a, rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0))
}

/// `α ∈ [0.1, 5]`, `β ∈ [-3, 3]`, `γ` at least the convexity bound.
pub fn random_convex_quartic(rng: &mut ChaCha8Rng) -> Result<ConvexQuartic> {
    let alpha = rng.random_range(0.1..5.0);
    let beta = rng.random_range(-3.0..3.0);
    let gamma = 3.0 * beta * beta / (8.0 * alpha) + rng.random_range(0.0..3.0);
    ConvexQuartic::new(alpha, beta, gamma, rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0))
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, half_width: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-half_width..half_width)).collect()
}

fn cubic_instance(rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let f = random_cubic(rng)?;
    let roots = f.solve();
    let worst = roots.distinct().iter().map(|&r| f.eval(r).abs() / f.residual_scale(r)).fold(0.0, f64::max);
    let t = f.classify();
    let decisive = t.delta.abs() > f.delta_tolerance();
    let census_ok = !decisive || isolate_roots(&f).len() == t.branch.distinct_real_roots();
    Ok(Outcome {
        error: worst,
        pass: worst <= tol && census_ok,
        fallback: false,
        label: format!("{:?} -> {:?}", f.coefficients(), roots),
    })
}

fn quartic_instance(rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let h = random_convex_quartic(rng)?;
    let y = rng.random_range(-100.0..100.0);
    let x = h.prox(y)?;
    let span = y.abs() + 10.0;
    let obj = |t: f64| h.value(t) + 0.5 * (t - y) * (t - y);
    let (g, _) = super::grid_golden_min(obj, -span, span, 4000, 1e-13 * span);
    let err = (x - g).abs();
    Ok(Outcome { error: err, pass: err <= tol, fallback: false, label: format!("{:?}, y = {y}", h.coefficients()) })
}

fn reciprocal_instance(rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let alpha = rng.random_range(0.1..10.0);
    let y = rng.random_range(-50.0..50.0);
    let r = ReciprocalFn::new(alpha)?.prox_detailed(y)?;
    let err = (r.x - reciprocal_prox(alpha, y)).abs();
    Ok(Outcome {
        error: err,
        pass: err <= tol && r.x > 0.0,
        fallback: r.fallback,
        label: format!("alpha = {alpha}, y = {y}"),
    })
}

fn epigraph_instance(rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let alpha = [0.5, 1.0, 3.0][rng.random_range(0..3)];
    let n = [1, 2, 5][rng.random_range(0..3)];
    let vec = random_vec(rng, n, 3.0);
    let eta = alpha * norm(&vec).powi(2) - rng.random_range(0.01..10.0);
    let p = LabeledPoint::new(vec, eta)?;
    let r = project_epigraph(alpha, &p)?;
    let g = epigraph_radial(alpha, &p);
    let err = (p.distance(&r.point) - p.distance(&g)).max(0.0);
    Ok(Outcome { error: err, pass: err <= tol, fallback: r.fallback, label: format!("alpha = {alpha}, {p:?}") })
}

/// A `γ` strictly inside the region where `kind` applies.
pub fn random_saddle_gamma(rng: &mut ChaCha8Rng, set: &SaddleSet, kind: SaddleKind, zeta: f64) -> f64 {
    let (a, b2) = (set.alpha(), set.beta() * set.beta());
    let gap = rng.random_range(0.01..3.0) * a.signum();
    match kind {
        SaddleKind::AntiDiag => a / b2 - zeta * zeta / (4.0 * a) - gap,
        SaddleKind::Diag => zeta * zeta / (4.0 * a) - a / b2 + gap,
    }
}

fn saddle_instance(rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let mag = rng.random_range(0.2..3.0);
    let alpha = if rng.random_bool(0.5) { mag } else { -mag };
    let set = SaddleSet::new(alpha, rng.random_range(0.2..3.0))?;
    let kind = if rng.random_bool(0.5) { SaddleKind::AntiDiag } else { SaddleKind::Diag };
    let n = rng.random_range(1..4);
    let z = random_vec(rng, n, 2.0);
    let zeta = norm(&z);
    let gamma = random_saddle_gamma(rng, &set, kind, zeta);
    if !set.precondition_holds(kind, zeta, gamma) {
        return Err(Error::InternalConsistency("sampled saddle instance misses its region".into()));
    }
    let r = set.project(kind, &z, gamma)?;
    let sigma = kind.sign();
    let zs: Vec<f64> = z.iter().map(|v| sigma * v).collect();
    let d = set.distance((&z, &zs, gamma), (&r.first, &r.second, r.scalar));
    let s0 = zeta / (1.0 + sigma * r.x);
    let g = saddle_local_grid_min(alpha, set.beta(), zeta, sigma, gamma, (s0, sigma * s0), 0.5 * (1.0 + s0), 10);
    let err = (d - g).max(0.0);
    let in_window = r.x > -1.0 && r.x < 1.0;
    Ok(Outcome {
        error: err,
        pass: err <= tol && in_window,
        fallback: r.fallback,
        label: format!("{} alpha = {alpha}, beta = {}, z = {z:?}, gamma = {gamma}", kind.name(), set.beta()),
    })
}

fn perspective_instance(rng: &mut ChaCha8Rng, tol: f64) -> Result<Outcome> {
    let gamma = rng.random_range(0.1..5.0);
    let n = rng.random_range(1..4);
    let p = LabeledPoint::new(random_vec(rng, n, 3.0), rng.random_range(-5.0..5.0))?;
    let r = prox_perspective(gamma, &p)?;
    let g = perspective_prox(gamma, &p);
    let err = r.point.distance(&g);
    Ok(Outcome { error: err, pass: err <= tol, fallback: r.fallback, label: format!("gamma = {gamma}, {p:?}") })
}

/// Golden-section maximizer of `yx - h(x)` on `[-span, span]`.
pub fn quartic_conjugate_oracle(h: &ConvexQuartic, y: f64, span: f64) -> (f64, f64) {
    let (x, v) = golden_min(|x| h.value(x) - y * x, -span, span, 1e-12);
    (x, -v)
}
