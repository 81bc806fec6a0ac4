//! SVM kernel functions.

use serde::{Deserialize, Serialize};

use crate::dataset::FEATURE_COUNT;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Linear,
    Rbf,
    Sigmoid,
    Polynomial,
}

impl KernelKind {
    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Linear => "linear",
            KernelKind::Rbf => "rbf",
            KernelKind::Sigmoid => "sigmoid",
            KernelKind::Polynomial => "poly",
        }
    }

    pub fn parse(s: &str) -> Result<KernelKind> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(KernelKind::Linear),
            "rbf" => Ok(KernelKind::Rbf),
            "sigmoid" => Ok(KernelKind::Sigmoid),
            "poly" | "polynomial" => Ok(KernelKind::Polynomial),
            other => Err(Error::InvalidSpec(format!("unknown kernel '{other}'"))),
        }
    }
}

/// Kernel family plus its parameters.
///
/// * linear: `a · b`
/// * rbf: `exp(−γ‖a−b‖²)`
/// * sigmoid: `tanh(γ(a · b) + r)`
/// * polynomial: `(γ(a · b) + r)^d`
///
/// `c` is the SVM box constraint, kept alongside the kernel parameters
/// because every kernel is tuned jointly with it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub c: f64,
    pub gamma: f64,
    /// Offset term for sigmoid and polynomial kernels.
    pub r: f64,
    /// Polynomial degree.
    pub degree: u32,
}

impl Default for KernelSpec {
    fn default() -> KernelSpec {
        KernelSpec {
            kind: KernelKind::Rbf,
            c: 1.0,
            gamma: 1.0 / FEATURE_COUNT as f64,
            r: 0.0,
            degree: 3,
        }
    }
}

impl KernelSpec {
    pub fn with_kind(kind: KernelKind) -> KernelSpec {
        KernelSpec {
            kind,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) {
            return Err(Error::InvalidSpec("kernel box constraint c must be positive".into()));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::InvalidSpec("kernel gamma must be positive".into()));
        }
        if self.kind == KernelKind::Polynomial && self.degree == 0 {
            return Err(Error::InvalidSpec("polynomial degree must be positive".into()));
        }
        if !self.r.is_finite() {
            return Err(Error::InvalidSpec("kernel offset r must be finite".into()));
        }
        Ok(())
    }
}

/// Evaluates the kernel on two equal-length vectors.
pub fn kernel_eval(spec: &KernelSpec, a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(eval_unchecked(spec, a, b))
}

#[inline]
pub(crate) fn eval_unchecked(spec: &KernelSpec, a: &[f64], b: &[f64]) -> f64 {
    match spec.kind {
        KernelKind::Linear => dot(a, b),
        KernelKind::Rbf => {
            let mut dist = 0.0;
            for (x, y) in a.iter().zip(b) {
                let d = x - y;
                dist += d * d;
            }
            (-spec.gamma * dist).exp()
        }
        KernelKind::Sigmoid => (spec.gamma * dot(a, b) + spec.r).tanh(),
        KernelKind::Polynomial => (spec.gamma * dot(a, b) + spec.r).powi(spec.degree as i32),
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rbf_of_identical_vectors_is_one() {
        let spec = KernelSpec::with_kind(KernelKind::Rbf);
        let a = vec![1.0, -1.0, 0.0];
        assert_eq!(kernel_eval(&spec, &a, &a).unwrap(), 1.0);
    }

    #[test]
    fn linear_unit_vectors() {
        let spec = KernelSpec {
            kind: KernelKind::Linear,
            ..Default::default()
        };
        let mut a = vec![0.0; 30];
        a[0] = 1.0;
        assert_eq!(kernel_eval(&spec, &a, &a).unwrap(), 1.0);
    }

    #[test]
    fn polynomial_direct_arithmetic() {
        // γ=1, r=1, d=2, a·b=2 → (2+1)² = 9
        let spec = KernelSpec {
            kind: KernelKind::Polynomial,
            c: 1.0,
            gamma: 1.0,
            r: 1.0,
            degree: 2,
        };
        let a = vec![1.0, 1.0];
        let b = vec![1.0, 1.0];
        assert_eq!(kernel_eval(&spec, &a, &b).unwrap(), 9.0);
    }

    #[test]
    fn sigmoid_matches_tanh() {
        let spec = KernelSpec {
            kind: KernelKind::Sigmoid,
            c: 1.0,
            gamma: 0.5,
            r: 0.25,
            degree: 3,
        };
        let a = vec![1.0, -1.0];
        let b = vec![1.0, 1.0];
        let expected = (0.5 * 0.0 + 0.25f64).tanh();
        assert!((kernel_eval(&spec, &a, &b).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let spec = KernelSpec::default();
        assert!(kernel_eval(&spec, &[1.0], &[1.0, 2.0]).is_err());
    }
}
