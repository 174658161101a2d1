//! Real roots of real cubics in closed form.
//!
//! A general cubic `a x³ + b x² + c x + d` is reduced to the depressed form
//! `z³ + p z + q` by the shift `x = z + x₀`, `x₀ = -b/(3a)`. The sign of
//! `Δ = (p/3)³ + (q/2)²` then settles the real-root structure:
//!
//! * `p = 0` or `Δ > 0`: one real root, `∛(-q/2 + √Δ) + ∛(-q/2 - √Δ)`;
//! * `p < 0` and `Δ = 0`: a simple root `3q/p` and a double root `-3q/(2p)`;
//! * `Δ < 0`: three simple roots `2√(-p/3) cos((θ + 2kπ)/3)`,
//!   `θ = arccos((-q/2)/(-p/3)^{3/2})`.
//!
//! Closed-form roots are polished with at most three Newton steps, each
//! accepted only when it lowers the residual.

use std::f64::consts::PI;

use crate::error::{ensure_finite, Error, Result};

/// Relative tolerance for deciding `Δ = 0`.
pub const CLASSIFY_RTOL: f64 = 1e-12;

const POLISH_STEPS: usize = 3;
const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

/// A conjugate pair `re ± i·im` with `im > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub re: f64,
    pub im: f64,
}

impl ComplexPair {
    /// `|re + i im|²`, the product of the pair.
    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

/// The real roots of a real cubic, classified by multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealRootSet {
    /// One simple real root; the other two form a conjugate pair.
    OneSimple { root: f64, pair: ComplexPair },
    /// A single real root of multiplicity three.
    OneTriple(f64),
    /// Two distinct real roots, one of them double.
    SimpleAndDouble { simple: f64, double: f64 },
    /// Three simple real roots in ascending order.
    ThreeSimple([f64; 3]),
}

impl RealRootSet {
    pub fn branch(&self) -> Branch {
        match self {
            RealRootSet::OneSimple { .. } | RealRootSet::OneTriple(_) => Branch::SingleReal,
            RealRootSet::SimpleAndDouble { .. } => Branch::DoubleRoot,
            RealRootSet::ThreeSimple(_) => Branch::ThreeReal,
        }
    }

    /// Distinct real roots with their multiplicities, ascending.
    pub fn with_multiplicity(&self) -> Vec<(f64, u8)> {
        match *self {
            RealRootSet::OneSimple { root, .. } => vec![(root, 1)],
            RealRootSet::OneTriple(root) => vec![(root, 3)],
            RealRootSet::SimpleAndDouble { simple, double } => {
                if simple < double {
                    vec![(simple, 1), (double, 2)]
                } else {
                    vec![(double, 2), (simple, 1)]
                }
            }
            RealRootSet::ThreeSimple(r) => r.iter().map(|&x| (x, 1)).collect(),
        }
    }

    /// Distinct real roots, ascending.
    pub fn distinct(&self) -> Vec<f64> {
        self.with_multiplicity().into_iter().map(|(x, _)| x).collect()
    }

    /// Real roots repeated according to multiplicity.
    pub fn counted(&self) -> Vec<f64> {
        self.with_multiplicity().into_iter().flat_map(|(x, m)| std::iter::repeat_n(x, m as usize)).collect()
    }

    pub fn distinct_count(&self) -> usize {
        match self {
            RealRootSet::OneSimple { .. } | RealRootSet::OneTriple(_) => 1,
            RealRootSet::SimpleAndDouble { .. } => 2,
            RealRootSet::ThreeSimple(_) => 3,
        }
    }

    pub fn complex_pair(&self) -> Option<ComplexPair> {
        match self {
            RealRootSet::OneSimple { pair, .. } => Some(*pair),
            _ => None,
        }
    }

    fn shifted(self, dx: f64) -> Self {
        match self {
            RealRootSet::OneSimple { root, pair } => {
                RealRootSet::OneSimple { root: root + dx, pair: ComplexPair { re: pair.re + dx, im: pair.im } }
            }
            RealRootSet::OneTriple(r) => RealRootSet::OneTriple(r + dx),
            RealRootSet::SimpleAndDouble { simple, double } => {
                RealRootSet::SimpleAndDouble { simple: simple + dx, double: double + dx }
            }
            RealRootSet::ThreeSimple(r) => RealRootSet::ThreeSimple([r[0] + dx, r[1] + dx, r[2] + dx]),
        }
    }
}

/// Which of the three mutually exclusive real-root configurations applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    SingleReal,
    DoubleRoot,
    ThreeReal,
}

impl Branch {
    pub fn distinct_real_roots(self) -> usize {
        match self {
            Branch::SingleReal => 1,
            Branch::DoubleRoot => 2,
            Branch::ThreeReal => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::SingleReal => "single-real",
            Branch::DoubleRoot => "double-root",
            Branch::ThreeReal => "three-real",
        }
    }
}

/// Classification of a depressed cubic, with the quantities the root
/// formulas need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trichotomy {
    pub branch: Branch,
    pub delta: f64,
    pub p: f64,
    pub q: f64,
    /// `arccos((-q/2)/(-p/3)^{3/2})`, present only for [`Branch::ThreeReal`].
    pub theta: Option<f64>,
}

/// The depressed cubic `z³ + p z + q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepressedCubic {
    p: f64,
    q: f64,
}

impl DepressedCubic {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        ensure_finite(p, "p")?;
        ensure_finite(q, "q")?;
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `Δ = (p/3)³ + (q/2)²`.
    pub fn discriminant(&self) -> f64 {
        discriminant(self.p, self.q)
    }

    pub fn eval(&self, z: f64) -> f64 {
        (z * z + self.p) * z + self.q
    }

    pub fn derivative(&self, z: f64) -> f64 {
        3.0 * z * z + self.p
    }

    /// `|z|³ + |p||z| + |q|`, the magnitude against which residuals are judged.
    pub fn residual_scale(&self, z: f64) -> f64 {
        let m = z.abs().max(1.0);
        m * m * m + self.p.abs() * m + self.q.abs()
    }

    pub fn classify(&self) -> Trichotomy {
        classify_pq(self.p, self.q)
    }

    /// All real roots with multiplicities; the complex pair when there is one.
    pub fn solve(&self) -> RealRootSet {
        let t = self.classify();
        polish_roots(closed_form(&t), |z| self.eval(z), |z| self.derivative(z), |z| 6.0 * z)
    }
}

/// The cubic `a x³ + b x² + c x + d` with `a ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

/// A maximal interval on which a cubic is strictly monotone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotoneInterval {
    pub lo: f64,
    pub hi: f64,
    pub increasing: bool,
}

impl Cubic {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        ensure_finite(a, "a")?;
        ensure_finite(b, "b")?;
        ensure_finite(c, "c")?;
        ensure_finite(d, "d")?;
        if a == 0.0 {
            return Err(Error::DegenerateLeading);
        }
        Ok(Self { a, b, c, d })
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The unique inflection point `x₀ = -b/(3a)`.
    pub fn inflection(&self) -> f64 {
        -self.b / (3.0 * self.a)
    }

    /// The depressed cubic whose roots are those of `self` shifted by `-x₀`.
    pub fn depress(&self) -> DepressedCubic {
        let (p, q) = self.depressed_pq();
        DepressedCubic { p, q }
    }

    // p = (3ac - b²)/(3a²), q = (27a²d + 2b³ - 9abc)/(27a³), evaluated on the
    // monic coefficients.
    fn depressed_pq(&self) -> (f64, f64) {
        let (b, c, d) = (self.b / self.a, self.c / self.a, self.d / self.a);
        let p = c - b * b / 3.0;
        let q = d + b * (2.0 * b * b - 9.0 * c) / 27.0;
        (p, q)
    }

    // Rounding-noise magnitudes of p and q for these coefficients.
    fn depressed_noise(&self) -> (f64, f64) {
        let (b, c, d) = (self.b / self.a, self.c / self.a, self.d / self.a);
        let eps = 8.0 * f64::EPSILON;
        let p_noise = eps * (c.abs() + b * b / 3.0);
        let q_noise = eps * (d.abs() + b.abs() * (2.0 * b * b + 9.0 * c.abs()) / 27.0);
        (p_noise, q_noise)
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.a * x + self.b) * x + self.c) * x + self.d
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (3.0 * self.a * x + 2.0 * self.b) * x + self.c
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        6.0 * self.a * x + 2.0 * self.b
    }

    /// `|a|M³ + |b|M² + |c|M + |d|` with `M = max(1, |x|)`.
    pub fn residual_scale(&self, x: f64) -> f64 {
        let m = x.abs().max(1.0);
        ((self.a.abs() * m + self.b.abs()) * m + self.c.abs()) * m + self.d.abs()
    }

    /// The two roots `x₋ < x₊` of `f′` when `b² > 3ac`.
    pub fn critical_points(&self) -> Option<(f64, f64)> {
        let disc = self.b * self.b - 3.0 * self.a * self.c;
        if disc <= 0.0 {
            return None;
        }
        let s = disc.sqrt();
        // Stable quadratic formula for 3a x² + 2b x + c.
        let t = -(self.b + s.copysign(self.b));
        let r1 = t / (3.0 * self.a);
        let r2 = self.c / t;
        Some(if r1 < r2 { (r1, r2) } else { (r2, r1) })
    }

    /// One interval when `b² ≤ 3ac`, otherwise three split at `x₋ < x₊`.
    pub fn monotone_intervals(&self) -> Vec<MonotoneInterval> {
        let up = self.a > 0.0;
        match self.critical_points() {
            None => vec![MonotoneInterval { lo: f64::NEG_INFINITY, hi: f64::INFINITY, increasing: up }],
            Some((lo, hi)) => vec![
                MonotoneInterval { lo: f64::NEG_INFINITY, hi: lo, increasing: up },
                MonotoneInterval { lo, hi, increasing: !up },
                MonotoneInterval { lo: hi, hi: f64::INFINITY, increasing: up },
            ],
        }
    }

    /// Δ below this in magnitude counts as zero: the relative tolerance or
    /// the rounding noise carried over from the coefficients, whichever is larger.
    pub fn delta_tolerance(&self) -> f64 {
        let (p, q) = self.depressed_pq();
        let (p_noise, q_noise) = self.depressed_noise();
        let noise = p * p / 9.0 * p_noise + q.abs() / 2.0 * q_noise;
        delta_tolerance(p, q).max(noise)
    }

    pub fn classify(&self) -> Trichotomy {
        let (p, q) = self.depressed_pq();
        classify_pq_within(p, q, self.delta_tolerance())
    }

    /// All real roots with multiplicities; the complex pair when there is one.
    pub fn solve(&self) -> RealRootSet {
        // Roots are unchanged by negating every coefficient.
        let f = if self.a < 0.0 { Cubic { a: -self.a, b: -self.b, c: -self.c, d: -self.d } } else { *self };
        let x0 = f.inflection();
        let (p, q) = f.depressed_pq();
        let (p_noise, q_noise) = f.depressed_noise();
        if p.abs() <= p_noise && q.abs() <= q_noise {
            return RealRootSet::OneTriple(x0);
        }
        let raw = closed_form(&f.classify()).shifted(x0);
        polish_roots(raw, |x| f.eval(x), |x| f.derivative(x), |x| f.second_derivative(x))
    }
}

pub(crate) fn discriminant(p: f64, q: f64) -> f64 {
    let p3 = p / 3.0;
    let q2 = q / 2.0;
    p3 * p3 * p3 + q2 * q2
}

/// Tolerance below which `|Δ|` counts as zero.
pub fn delta_tolerance(p: f64, q: f64) -> f64 {
    let p3 = (p / 3.0).abs();
    let q2 = q / 2.0;
    CLASSIFY_RTOL * (p3 * p3 * p3).max(q2 * q2)
}

pub(crate) fn classify_pq(p: f64, q: f64) -> Trichotomy {
    classify_pq_within(p, q, delta_tolerance(p, q))
}

fn classify_pq_within(p: f64, q: f64, tol: f64) -> Trichotomy {
    let delta = discriminant(p, q);
    let branch = if p < 0.0 && delta.abs() <= tol {
        Branch::DoubleRoot
    } else if delta < 0.0 {
        Branch::ThreeReal
    } else {
        Branch::SingleReal
    };
    let theta = (branch == Branch::ThreeReal).then(|| trig_angle(p, q));
    Trichotomy { branch, delta, p, q, theta }
}

/// The real Cardano terms `(u₋, u₊) = (∛(-q/2 - √Δ), ∛(-q/2 + √Δ))` for `Δ ≥ 0`.
///
/// The larger-magnitude term is evaluated directly and the other one from
/// `u₋u₊ = -p/3`, so the pair never suffers cancellation.
pub(crate) fn cardano_terms(p: f64, q: f64, delta: f64) -> (f64, f64) {
    let half = -q / 2.0;
    let root = delta.max(0.0).sqrt();
    let big = if half >= 0.0 { (half + root).cbrt() } else { (half - root).cbrt() };
    if big == 0.0 {
        return (0.0, 0.0);
    }
    let small = -p / (3.0 * big);
    if half >= 0.0 {
        (small, big)
    } else {
        (big, small)
    }
}

/// `θ = arccos((-q/2)/(-p/3)^{3/2})` for `p < 0`, argument clamped to `[-1, 1]`.
pub(crate) fn trig_angle(p: f64, q: f64) -> f64 {
    let m = (-p / 3.0).sqrt();
    ((-q / 2.0) / (m * m * m)).clamp(-1.0, 1.0).acos()
}

/// `z_k = 2√(-p/3) cos((θ + 2kπ)/3)` for `p < 0`.
pub(crate) fn trig_root_with_angle(p: f64, theta: f64, k: u8) -> f64 {
    2.0 * (-p / 3.0).sqrt() * ((theta + 2.0 * f64::from(k) * PI) / 3.0).cos()
}

fn closed_form(t: &Trichotomy) -> RealRootSet {
    let (p, q) = (t.p, t.q);
    match t.branch {
        Branch::SingleReal => {
            if p == 0.0 && q == 0.0 {
                return RealRootSet::OneTriple(0.0);
            }
            let (um, up) = cardano_terms(p, q, t.delta);
            let root = um + up;
            let pair = ComplexPair { re: -0.5 * root, im: HALF_SQRT3 * (um - up).abs() };
            RealRootSet::OneSimple { root, pair }
        }
        Branch::DoubleRoot => RealRootSet::SimpleAndDouble { simple: 3.0 * q / p, double: -3.0 * q / (2.0 * p) },
        Branch::ThreeReal => {
            let theta = t.theta.unwrap_or_else(|| trig_angle(p, q));
            // z₁ < z₂ < z₀
            RealRootSet::ThreeSimple([
                trig_root_with_angle(p, theta, 1),
                trig_root_with_angle(p, theta, 2),
                trig_root_with_angle(p, theta, 0),
            ])
        }
    }
}

/// Up to [`POLISH_STEPS`] Newton steps on `f`, each kept only if it lowers `|f|`.
pub(crate) fn newton_polish(x: f64, f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) -> f64 {
    newton_polish_within(x, f, df, f64::NEG_INFINITY, f64::INFINITY)
}

/// As [`newton_polish`], rejecting iterates outside `(lo, hi)`.
pub(crate) fn newton_polish_within(
    mut x: f64,
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
) -> f64 {
    let mut fx = f(x);
    for _ in 0..POLISH_STEPS {
        if fx == 0.0 {
            break;
        }
        let slope = df(x);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = x - fx / slope;
        if !next.is_finite() || next <= lo || next >= hi {
            break;
        }
        let f_next = f(next);
        if f_next.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = f_next;
    }
    x
}

fn polish_roots(
    raw: RealRootSet,
    f: impl Fn(f64) -> f64 + Copy,
    df: impl Fn(f64) -> f64 + Copy,
    d2f: impl Fn(f64) -> f64 + Copy,
) -> RealRootSet {
    match raw {
        RealRootSet::OneTriple(_) => raw,
        RealRootSet::OneSimple { root, pair } => RealRootSet::OneSimple { root: newton_polish(root, f, df), pair },
        RealRootSet::SimpleAndDouble { simple, double } => {
            // The double root is a critical point: polish it on f′.
            RealRootSet::SimpleAndDouble {
                simple: newton_polish(simple, f, df),
                double: newton_polish(double, df, d2f),
            }
        }
        RealRootSet::ThreeSimple(r) => {
            let polished = [newton_polish(r[0], f, df), newton_polish(r[1], f, df), newton_polish(r[2], f, df)];
            if polished[0] < polished[1] && polished[1] < polished[2] {
                RealRootSet::ThreeSimple(polished)
            } else {
                raw
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn depressed(p: f64, q: f64) -> RealRootSet {
        DepressedCubic::new(p, q).unwrap().solve()
    }

    fn general(a: f64, b: f64, c: f64, d: f64) -> RealRootSet {
        Cubic::new(a, b, c, d).unwrap().solve()
    }

    #[test]
    fn pure_cube_is_triple() {
        assert_eq!(depressed(0.0, 0.0), RealRootSet::OneTriple(0.0));
    }

    #[test]
    fn double_root_rational_forms() {
        match depressed(-3.0, 2.0) {
            RealRootSet::SimpleAndDouble { simple, double } => {
                assert_abs_diff_eq!(simple, -2.0, epsilon = 1e-14);
                assert_abs_diff_eq!(double, 1.0, epsilon = 1e-14);
            }
            other => panic!("expected simple+double, got {other:?}"),
        }
    }

    #[test]
    fn three_simple_symmetric() {
        let g = DepressedCubic::new(-1.0, 0.0).unwrap();
        assert_abs_diff_eq!(g.discriminant(), -1.0 / 27.0, epsilon = 1e-16);
        match g.solve() {
            RealRootSet::ThreeSimple(r) => {
                assert_abs_diff_eq!(r[0], -1.0, epsilon = 1e-14);
                assert_abs_diff_eq!(r[1], 0.0, epsilon = 1e-14);
                assert_abs_diff_eq!(r[2], 1.0, epsilon = 1e-14);
            }
            other => panic!("expected three roots, got {other:?}"),
        }
    }

    #[test]
    fn one_simple_with_pair() {
        match depressed(1.0, -2.0) {
            RealRootSet::OneSimple { root, pair } => {
                assert_abs_diff_eq!(root, 1.0, epsilon = 1e-14);
                assert_abs_diff_eq!(pair.re, -0.5, epsilon = 1e-14);
                assert_abs_diff_eq!(pair.im, 7f64.sqrt() / 2.0, epsilon = 1e-14);
            }
            other => panic!("expected one root, got {other:?}"),
        }
    }

    #[test]
    fn zero_p_cube_root() {
        match depressed(0.0, -8.0) {
            RealRootSet::OneSimple { root, pair } => {
                assert_abs_diff_eq!(root, 2.0, epsilon = 1e-15);
                assert_abs_diff_eq!(pair.re, -1.0, epsilon = 1e-15);
                assert_abs_diff_eq!(pair.im, 3f64.sqrt(), epsilon = 1e-15);
            }
            other => panic!("expected one root, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(DepressedCubic::new(f64::NAN, 0.0), Err(Error::NonFinite("p")));
        assert_eq!(Cubic::new(1.0, f64::INFINITY, 0.0, 0.0), Err(Error::NonFinite("b")));
    }

    #[test]
    fn general_examples() {
        match general(1.0, -6.0, 11.0, -6.0) {
            RealRootSet::ThreeSimple(r) => {
                for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
                    assert_abs_diff_eq!(*x, e, epsilon = 1e-13);
                }
            }
            other => panic!("{other:?}"),
        }
        match general(2.0, 0.0, -2.0, 0.0) {
            RealRootSet::ThreeSimple(r) => {
                for (x, e) in r.iter().zip([-1.0, 0.0, 1.0]) {
                    assert_abs_diff_eq!(*x, e, epsilon = 1e-14);
                }
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(general(1.0, -3.0, 3.0, -1.0), RealRootSet::OneTriple(1.0));
    }

    #[test]
    fn negative_leading_coefficient() {
        assert_eq!(general(-1.0, 6.0, -11.0, 6.0), general(1.0, -6.0, 11.0, -6.0));
    }

    #[test]
    fn zero_leading_rejected() {
        assert_eq!(Cubic::new(0.0, 1.0, 2.0, 3.0), Err(Error::DegenerateLeading));
    }

    #[test]
    fn classify_examples() {
        let t = DepressedCubic::new(-3.0, 2.0).unwrap().classify();
        assert_eq!(t.branch, Branch::DoubleRoot);
        assert_eq!(t.delta, 0.0);
        assert!(t.theta.is_none());

        let t = DepressedCubic::new(-1.0, 0.0).unwrap().classify();
        assert_eq!(t.branch, Branch::ThreeReal);
        assert_abs_diff_eq!(t.delta, -1.0 / 27.0, epsilon = 1e-16);
        assert_abs_diff_eq!(t.theta.unwrap(), PI / 2.0, epsilon = 1e-15);

        let t = DepressedCubic::new(1.0, 1.0).unwrap().classify();
        assert_eq!(t.branch, Branch::SingleReal);
        assert_abs_diff_eq!(t.delta, 1.0 / 27.0 + 0.25, epsilon = 1e-15);
    }

    #[test]
    fn horner_eval() {
        assert_eq!(Cubic::new(1.0, -6.0, 11.0, -6.0).unwrap().eval(2.0), 0.0);
        assert_eq!(DepressedCubic::new(0.0, 0.0).unwrap().eval(5.0), 125.0);
        assert_eq!(Cubic::new(1.0, 0.0, 0.0, 0.0).unwrap().eval(-2.0), -8.0);
    }

    #[test]
    fn monotone_interval_examples() {
        let iv = Cubic::new(1.0, 0.0, -3.0, 0.0).unwrap().monotone_intervals();
        assert_eq!(iv.len(), 3);
        assert_abs_diff_eq!(iv[0].hi, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(iv[2].lo, 1.0, epsilon = 1e-15);
        assert!(iv[0].increasing && !iv[1].increasing && iv[2].increasing);

        assert_eq!(Cubic::new(1.0, 0.0, 1.0, 0.0).unwrap().monotone_intervals().len(), 1);

        let iv = Cubic::new(1.0, -6.0, 11.0, -6.0).unwrap().monotone_intervals();
        let h = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(iv[1].lo, 2.0 - h, epsilon = 1e-14);
        assert_abs_diff_eq!(iv[1].hi, 2.0 + h, epsilon = 1e-14);

        let iv = Cubic::new(-1.0, 0.0, 3.0, 0.0).unwrap().monotone_intervals();
        assert!(!iv[0].increasing && iv[1].increasing && !iv[2].increasing);
    }

    #[test]
    fn cardano_terms_product() {
        let (p, q) = (-0.5, 3.0);
        let (um, up) = cardano_terms(p, q, discriminant(p, q));
        assert_abs_diff_eq!(um * up, -p / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(um.powi(3) + up.powi(3), -q, epsilon = 1e-13);
        assert!(um < up);
    }

    #[test]
    fn large_delta_no_cancellation() {
        // z³ + 1e-8 z - 1e9: the direct u₋ would cancel to zero.
        let g = DepressedCubic::new(1e-8, -1e9).unwrap();
        let r = match g.solve() {
            RealRootSet::OneSimple { root, .. } => root,
            other => panic!("{other:?}"),
        };
        assert!(g.eval(r).abs() <= 1e-12 * g.residual_scale(r));
    }

    #[test]
    fn small_scale_double_root_is_detected() {
        // (z - ε)²(z + 2ε) at ε = 1e-3
        let e = 1e-3;
        let g = DepressedCubic::new(-3.0 * e * e, 2.0 * e * e * e).unwrap();
        match g.solve() {
            RealRootSet::SimpleAndDouble { simple, double } => {
                assert_abs_diff_eq!(simple, -2.0 * e, epsilon = 1e-15);
                assert_abs_diff_eq!(double, e, epsilon = 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }
}
