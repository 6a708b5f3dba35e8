//! Composite Gauss–Legendre quadrature with panel doubling.
//!
//! Every integral in this crate is either over the Brillouin zone `[0, 2pi)`
//! (smooth integrands) or over an angle after the `y = cos(beta) sin(theta)`
//! substitution, so a fixed-order rule on uniformly refined panels converges
//! quickly. Refinement stops when two successive panel counts agree to the
//! absolute tolerance.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::C64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSpec {
    /// Absolute tolerance on the difference between successive refinements.
    pub tol: f64,
    /// Gauss–Legendre nodes per panel.
    pub order: usize,
    pub initial_panels: usize,
    pub max_panels: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            order: 20,
            initial_panels: 4,
            max_panels: 4096,
        }
    }
}

impl QuadSpec {
    pub fn with_tolerance(tol: f64) -> Result<Self> {
        let spec = Self {
            tol,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidQuadrature(format!(
                "tolerance must be positive and finite, got {}",
                self.tol
            )));
        }
        if self.order < 2 || self.order > 200 {
            return Err(Error::InvalidQuadrature(format!(
                "order must lie in [2, 200], got {}",
                self.order
            )));
        }
        if self.initial_panels == 0 || self.initial_panels > self.max_panels {
            return Err(Error::InvalidQuadrature(format!(
                "need 0 < initial_panels ({}) <= max_panels ({})",
                self.initial_panels, self.max_panels
            )));
        }
        Ok(())
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Values that can be accumulated by the quadrature driver.
pub trait QuadValue: Clone {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, weight: f64, value: &Self);
    fn max_abs_diff(&self, other: &Self) -> f64;
}

impl QuadValue for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn add_scaled(&mut self, weight: f64, value: &Self) {
        *self += weight * value;
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}

impl QuadValue for C64 {
    fn zero_like(&self) -> Self {
        C64::new(0.0, 0.0)
    }
    fn add_scaled(&mut self, weight: f64, value: &Self) {
        *self += value * weight;
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

impl<T: QuadValue + Copy, const N: usize> QuadValue for [T; N] {
    fn zero_like(&self) -> Self {
        self.map(|v| v.zero_like())
    }
    fn add_scaled(&mut self, weight: f64, value: &Self) {
        for (a, b) in self.iter_mut().zip(value) {
            a.add_scaled(weight, b);
        }
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

impl<T: QuadValue> QuadValue for Vec<T> {
    fn zero_like(&self) -> Self {
        self.iter().map(QuadValue::zero_like).collect()
    }
    fn add_scaled(&mut self, weight: f64, value: &Self) {
        for (a, b) in self.iter_mut().zip(value) {
            a.add_scaled(weight, b);
        }
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

fn composite<T, F>(f: &F, a: f64, b: f64, panels: usize, rule: &GaussLegendre) -> T
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let h = (b - a) / panels as f64;
    let half = 0.5 * h;
    let mut acc: Option<T> = None;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let v = f(mid + half * x);
            match acc.as_mut() {
                Some(s) => s.add_scaled(w * half, &v),
                None => {
                    let mut s = v.zero_like();
                    s.add_scaled(w * half, &v);
                    acc = Some(s);
                }
            }
        }
    }
    acc.expect("at least one panel")
}

/// Integrates `f` over `[a, b]`, doubling the panel count until two
/// successive estimates agree to `spec.tol`.
pub fn integrate<T, F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<T>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    spec.validate()?;
    let rule = GaussLegendre::new(spec.order);
    let mut panels = spec.initial_panels;
    let mut previous = composite(&f, a, b, panels, &rule);
    let mut achieved = f64::INFINITY;
    loop {
        let next_panels = panels * 2;
        if next_panels > spec.max_panels {
            return Err(Error::QuadratureNotConverged {
                achieved,
                tolerance: spec.tol,
                panels,
            });
        }
        let current = composite(&f, a, b, next_panels, &rule);
        achieved = current.max_abs_diff(&previous);
        if achieved < spec.tol {
            return Ok(current);
        }
        if !achieved.is_finite() {
            return Err(Error::QuadratureNotConverged {
                achieved,
                tolerance: spec.tol,
                panels: next_panels,
            });
        }
        previous = current;
        panels = next_panels;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(5);
        // degree 9 is the highest exact degree for 5 nodes
        let s: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, w)| w * x.powi(8))
            .sum();
        assert!((s - 2.0 / 9.0).abs() < 1e-14);
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        let rule = GaussLegendre::new(20);
        for w in rule.nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
        for i in 0..20 {
            assert!((rule.nodes[i] + rule.nodes[19 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn periodic_integrand() {
        // ∫_0^{2π} e^{cos k} dk = 2π I0(1)
        let v: f64 =
            integrate(|k: f64| k.cos().exp(), 0.0, 2.0 * PI, &QuadSpec::default()).unwrap();
        let i0_1 = 1.266_065_877_752_008_4;
        assert!((v - 2.0 * PI * i0_1).abs() < 1e-12);
    }

    #[test]
    fn vector_valued_integrand() {
        let v: [f64; 2] = integrate(|x: f64| [x, x * x], 0.0, 1.0, &QuadSpec::default()).unwrap();
        assert!((v[0] - 0.5).abs() < 1e-15);
        assert!((v[1] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn nonconvergence_reports_estimate() {
        let spec = QuadSpec {
            tol: 1e-14,
            order: 2,
            initial_panels: 1,
            max_panels: 4,
        };
        let err = integrate(|x: f64| (50.0 * x).sin(), 0.0, 1.0, &spec).unwrap_err();
        match err {
            Error::QuadratureNotConverged {
                achieved, panels, ..
            } => {
                assert!(achieved > 1e-14);
                assert_eq!(panels, 4);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_spec() {
        assert!(QuadSpec::with_tolerance(-1.0).is_err());
        assert!(QuadSpec::with_tolerance(f64::NAN).is_err());
        assert!(QuadSpec::with_tolerance(1e-10).is_ok());
    }
}
