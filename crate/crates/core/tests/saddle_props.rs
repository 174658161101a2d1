use std::f64::consts::PI;

use cubiprox::oracle::saddle_root_by_bisection;
use cubiprox::{SaddleBranch, SaddleKind, SaddleSet};
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct Instance {
    set: SaddleSet,
    kind: SaddleKind,
    z: Vec<f64>,
    gamma: f64,
}

impl Instance {
    fn zeta(&self) -> f64 {
        self.z.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

fn kind() -> impl Strategy<Value = SaddleKind> {
    prop_oneof![Just(SaddleKind::AntiDiag), Just(SaddleKind::Diag)]
}

fn instance_with(z_half: f64) -> impl Strategy<Value = Instance> {
    (0.2..3.0f64, any::<bool>(), 0.2..3.0f64, kind(), prop::collection::vec(-z_half..z_half, 1..4), 0.01..3.0f64)
        .prop_filter_map("z = 0", |(mag, neg, beta, kind, z, gap)| {
            let alpha = if neg { -mag } else { mag };
            let zeta = z.iter().map(|v| v * v).sum::<f64>().sqrt();
            if zeta == 0.0 {
                return None;
            }
            let b2 = beta * beta;
            let gap = gap * alpha.signum();
            let gamma = match kind {
                SaddleKind::AntiDiag => alpha / b2 - zeta * zeta / (4.0 * alpha) - gap,
                SaddleKind::Diag => zeta * zeta / (4.0 * alpha) - alpha / b2 + gap,
            };
            Some(Instance { set: SaddleSet::new(alpha, beta).unwrap(), kind, z, gamma })
        })
}

fn instance() -> impl Strategy<Value = Instance> {
    instance_with(2.0)
}

/// The three trigonometric roots `x₀ + 2m·cos((θ + 2πk)/3)`, `k = 0, 1, 2`,
/// of the stationarity cubic, from its coefficients alone.
fn trig_roots(c: [f64; 4]) -> Option<[f64; 3]> {
    let [a, b, c, d] = c;
    let (b, c, d) = (b / a, c / a, d / a);
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    if (p / 3.0).powi(3) + (q / 2.0).powi(2) >= 0.0 {
        return None;
    }
    let m = (-p / 3.0).sqrt();
    let theta = ((-q / 2.0) / (m * m * m)).clamp(-1.0, 1.0).acos();
    let x0 = -b / 3.0;
    Some([0, 1, 2].map(|k| x0 + 2.0 * m * ((theta + 2.0 * PI * k as f64) / 3.0).cos()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn output_lies_on_the_set(inst in instance()) {
        let zeta = inst.zeta();
        prop_assert!(inst.set.precondition_holds(inst.kind, zeta, inst.gamma));
        let r = inst.set.project(inst.kind, &inst.z, inst.gamma).unwrap();
        let a = inst.set.alpha();
        let scale = zeta.powi(2).max((a * inst.gamma).abs()).max(1.0);
        prop_assert!(r.membership_gap(a).abs() <= 1e-8 * scale, "gap {}", r.membership_gap(a));
    }

    #[test]
    fn root_lies_in_the_open_window(inst in instance()) {
        let r = inst.set.project(inst.kind, &inst.z, inst.gamma).unwrap();
        prop_assert!(r.x > -1.0 && r.x < 1.0, "x = {}", r.x);
        prop_assert!(!r.fallback);
    }

    #[test]
    fn root_solves_the_scalar_equation(inst in instance()) {
        let (a, b2, zeta) = (inst.set.alpha(), inst.set.beta().powi(2), inst.zeta());
        let r = inst.set.project(inst.kind, &inst.z, inst.gamma).unwrap();
        let w = 1.0 + inst.kind.sign() * r.x;
        let scale = (2.0 * zeta * zeta / (w * w))
            .max(2.0 * a * a * r.x.abs() / b2)
            .max(2.0 * (a * inst.gamma).abs())
            .max(1.0);
        let g = inst.set.scalar_residual(inst.kind, zeta, inst.gamma, r.x);
        prop_assert!(g.abs() <= 1e-8 * scale, "residual {g}");
        let x = saddle_root_by_bisection(a, inst.set.beta(), zeta, inst.gamma, inst.kind == SaddleKind::Diag).unwrap();
        prop_assert!((r.x - x).abs() <= 1e-9, "{} vs bisection {x}", r.x);
    }

    #[test]
    fn merged_phase_selects_the_per_case_root(inst in instance_with(0.6)) {
        let zeta = inst.zeta();
        let coeffs = inst.set.cubic(inst.kind, zeta, inst.gamma).unwrap().coefficients();
        let Some(roots) = trig_roots(coeffs) else { return Ok(()) };
        let (a, b2) = (inst.set.alpha(), inst.set.beta().powi(2));
        let spread = match inst.kind {
            SaddleKind::AntiDiag => a + b2 * inst.gamma,
            SaddleKind::Diag => a - b2 * inst.gamma,
        };
        let positive = a * spread > 0.0;
        let k = match (inst.kind, positive) {
            (SaddleKind::AntiDiag, true) => 2,
            (SaddleKind::AntiDiag, false) => 1,
            (SaddleKind::Diag, true) => 2,
            (SaddleKind::Diag, false) => 0,
        };
        let r = inst.set.project(inst.kind, &inst.z, inst.gamma).unwrap();
        prop_assert_eq!(r.branch, SaddleBranch::Trig);
        prop_assert!((r.x - roots[k]).abs() <= 1e-10, "x = {} vs root {k} of {roots:?}", r.x);
    }

    #[test]
    fn direction_of_z_is_preserved(inst in instance()) {
        let r = inst.set.project(inst.kind, &inst.z, inst.gamma).unwrap();
        let sigma = inst.kind.sign();
        for (i, (&f, &z)) in r.first.iter().zip(&inst.z).enumerate() {
            prop_assert!(f * z >= 0.0);
            prop_assert_eq!(r.second[i], sigma * f);
            for (&g, &y) in r.first.iter().zip(&inst.z) {
                prop_assert!((f * y - g * z).abs() <= 1e-12 * (f * y).abs().max((g * z).abs()).max(1e-300));
            }
        }
        prop_assert!(r.first.iter().zip(&inst.z).any(|(f, z)| f * z > 0.0));
    }

    #[test]
    fn depressed_cubic_never_has_positive_p(inst in instance()) {
        let data = inst.set.cubic_data(inst.kind, inst.zeta(), inst.gamma);
        prop_assert!(data.p <= 0.0);
        let scale = (data.p / 3.0).abs().powi(3).max((data.q / 2.0).powi(2));
        prop_assert!((data.delta_direct - data.delta_product).abs() <= 1e-9 * scale.max(1e-300));
    }
}

#[test]
fn fixed_point_on_the_set() {
    let set = SaddleSet::new(1.0, 1.0).unwrap();
    let r = set.project_diag(&[1.0], 1.0).unwrap();
    assert!(r.x.abs() <= 1e-12);
    assert!((r.first[0] - 1.0).abs() <= 1e-12 && (r.second[0] - 1.0).abs() <= 1e-12 && (r.scalar - 1.0).abs() <= 1e-12);
}

#[test]
fn diagonal_example_matches_bisection() {
    let set = SaddleSet::new(1.0, 1.0).unwrap();
    let r = set.project_diag(&[1.0], 0.0).unwrap();
    let x = saddle_root_by_bisection(1.0, 1.0, 1.0, 0.0, true).unwrap();
    assert!((r.x - x).abs() <= 1e-8);
    assert!((r.x - 0.46557).abs() <= 1e-5);
    assert!((r.first[0] - 1.0 / (1.0 + x)).abs() <= 1e-8);
    assert!((r.first[0] - 0.68234).abs() <= 1e-4);
}

#[test]
fn boundary_inputs_are_rejected() {
    let set = SaddleSet::new(1.0, 1.0).unwrap();
    assert!(matches!(set.project_diag(&[1.0], -1.0), Err(cubiprox::Error::Precondition(_))));
    assert!(matches!(set.project_diag(&[0.0], 5.0), Err(cubiprox::Error::Precondition(_))));
}
