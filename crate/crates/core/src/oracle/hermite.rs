//! Scaled Hermite functions `u_k(t) = h_k(√(2π|τ|)·t)` and residuals of
//! their derivative and three-term recurrences.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `h_0..=h_{k_max}` at `x`, by `h_{k+2} = −2x h_{k+1} − 2(k+1) h_k`.
pub fn hermite_functions<T: Real>(k_max: usize, x: T) -> Vec<T> {
    let mut h = Vec::with_capacity(k_max + 1);
    let g = (-x * x * T::c(0.5)).exp();
    h.push(g);
    if k_max >= 1 {
        h.push(-T::c(2.0) * x * g);
    }
    for k in 0..k_max.saturating_sub(1) {
        let next = -T::c(2.0) * x * h[k + 1] - T::c(2.0) * T::from_count(k + 1) * h[k];
        h.push(next);
    }
    h
}

/// `u_0..=u_{k_max}` at `t`.
pub fn scaled_hermite<T: Real>(tau: T, k_max: usize, t: T) -> Vec<T> {
    let c = (T::c(2.0) * T::PI() * tau.abs()).sqrt();
    hermite_functions(k_max, c * t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermiteResiduals<T> {
    /// `max_t |2π|τ| t u_k + √(2π|τ|) u_{k+1} − u_k'|` per `k`, with `u_k'` by
    /// central differences.
    pub derivative: Vec<T>,
    /// `max_t |u_{k+2} + 2√(2π|τ|) t u_{k+1} + 2(k+1) u_k|` per `k`.
    pub three_term: Vec<T>,
    /// `max_t |u_k|` per `k`, for relative comparisons.
    pub scale: Vec<T>,
}

impl<T: Real> HermiteResiduals<T> {
    pub fn max_derivative(&self) -> T {
        self.derivative.iter().copied().fold(T::zero(), T::max)
    }

    pub fn max_three_term(&self) -> T {
        self.three_term.iter().copied().fold(T::zero(), T::max)
    }

    /// Derivative residuals divided by the size of `u_{k+1}` times `√(2π|τ|)`.
    pub fn max_relative_derivative(&self, tau: T) -> T {
        let c = (T::c(2.0) * T::PI() * tau.abs()).sqrt();
        self.derivative
            .iter()
            .zip(self.scale.iter().skip(1))
            .map(|(&r, &s)| r / (c * s).max(T::min_positive_value()))
            .fold(T::zero(), T::max)
    }
}

/// Evaluates both recurrences for `k = 0..=k_max` on `grid`, using
/// derivative step `step`.
pub fn hermite_samples<T: Real>(tau: T, k_max: usize, grid: &[T], step: T) -> Result<HermiteResiduals<T>> {
    if k_max < 2 {
        return Err(Error::Parameter("k_max must be at least 2".into()));
    }
    if tau == T::zero() || !tau.is_finite() {
        return Err(Error::Parameter("τ must be finite and nonzero".into()));
    }
    if !(step > T::zero()) {
        return Err(Error::Parameter("difference step must be positive".into()));
    }
    let c2 = T::c(2.0) * T::PI() * tau.abs();
    let c = c2.sqrt();
    let mut derivative = vec![T::zero(); k_max + 1];
    let mut three_term = vec![T::zero(); k_max + 1];
    let mut scale = vec![T::zero(); k_max + 3];
    for &t in grid {
        let u = scaled_hermite(tau, k_max + 2, t);
        let up = scaled_hermite(tau, k_max, t + step);
        let um = scaled_hermite(tau, k_max, t - step);
        for (s, v) in scale.iter_mut().zip(&u) {
            *s = s.max(v.abs());
        }
        for k in 0..=k_max {
            let du = (up[k] - um[k]) / (step + step);
            let r4 = (c2 * t * u[k] + c * u[k + 1] - du).abs();
            let r5 = (u[k + 2] + T::c(2.0) * c * t * u[k + 1] + T::c(2.0) * T::from_count(k + 1) * u[k]).abs();
            derivative[k] = derivative[k].max(r4);
            three_term[k] = three_term[k].max(r5);
        }
    }
    Ok(HermiteResiduals { derivative, three_term, scale })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, l: f64) -> Vec<f64> {
        (0..n).map(|i| -l + 2.0 * l * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn closed_forms() {
        let x = 0.7_f64;
        let h = hermite_functions(3, x);
        let g = (-x * x / 2.0).exp();
        assert!((h[0] - g).abs() < 1e-15);
        assert!((h[1] + 2.0 * x * g).abs() < 1e-15);
        // e^{t²/2} d²/dt² e^{−t²} = (4t² − 2) e^{−t²/2}
        assert!((h[2] - (4.0 * x * x - 2.0) * g).abs() < 1e-14);
        assert!((h[3] - (-8.0 * x * x * x + 12.0 * x) * g).abs() < 1e-14);
    }

    #[test]
    fn recurrences_hold() {
        let r = hermite_samples(1.0, 6, &grid(401, 3.0), 1e-4).unwrap();
        assert!(r.three_term[0] <= 1e-8);
        assert!(r.max_three_term() <= 1e-8);
        assert!(r.max_relative_derivative(1.0) <= 1e-6, "{}", r.max_relative_derivative(1.0));
    }

    #[test]
    fn sign_of_tau_is_irrelevant() {
        let g = grid(101, 2.0);
        let a = hermite_samples(1.5, 4, &g, 1e-4).unwrap();
        let b = hermite_samples(-1.5, 4, &g, 1e-4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn argument_checks() {
        assert!(hermite_samples(1.0, 1, &[0.0], 1e-4).is_err());
        assert!(hermite_samples(0.0, 3, &[0.0], 1e-4).is_err());
    }
}
