use crate::error::{Error, Result};

/// A point `(vec, scalar)` of `ℝⁿ × ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub vec: Vec<f64>,
    pub scalar: f64,
}

impl LabeledPoint {
    pub fn new(vec: Vec<f64>, scalar: f64) -> Result<Self> {
        if vec.is_empty() {
            return Err(Error::Domain("vector part must have dimension n >= 1".into()));
        }
        if !scalar.is_finite() || vec.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("point"));
        }
        Ok(Self { vec, scalar })
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn vec_norm(&self) -> f64 {
        norm(&self.vec)
    }

    /// Euclidean distance in `ℝⁿ⁺¹`.
    pub fn distance(&self, other: &LabeledPoint) -> f64 {
        let dv: f64 = self.vec.iter().zip(&other.vec).map(|(a, b)| (a - b) * (a - b)).sum();
        let ds = self.scalar - other.scalar;
        (dv + ds * ds).sqrt()
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn scaled(v: &[f64], s: f64) -> Vec<f64> {
    v.iter().map(|x| x * s).collect()
}
