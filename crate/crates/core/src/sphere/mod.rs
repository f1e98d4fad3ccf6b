//! Uniform measure on the unit sphere: caps, cap bounds, sampling, and the
//! set of directions nearly orthogonal to a family of covering centers.

mod band;
pub mod sampling;
pub mod special;

pub use band::{
    measure_mc, near_orthogonal_exact_union_bound, near_orthogonal_lower_bound, LowerBound,
    MeasureEstimate, NearOrthogonalSet,
};
pub use sampling::{sample_sphere, SeedStream};

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::linalg;
use crate::logscale::LogValue;

/// `C(center, height) = {u in S^{n-1} : <u, center> >= height}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cap {
    center: Vec<f64>,
    height: f64,
}

impl Cap {
    pub fn new(center: Vec<f64>, height: f64) -> Result<Self> {
        if ((linalg::norm(&center)) - 1.0).abs() > 1e-9 {
            return Err(Error::invalid("cap center must be a unit vector"));
        }
        if !(height > 0.0 && height < 1.0) {
            return Err(Error::invalid(format!("cap height must lie in (0, 1), got {height}")));
        }
        Ok(Self { center, height })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn contains(&self, u: &[f64]) -> bool {
        linalg::dot(&self.center, u) >= self.height
    }

    pub fn measure(&self) -> Result<f64> {
        exact_cap_measure(self.center.len(), self.height)
    }
}

fn check_dim_at_least(n: usize, min: usize) -> Result<()> {
    if n >= min {
        Ok(())
    } else {
        Err(Error::invalid(format!("dimension must be at least {min}, got {n}")))
    }
}

/// Normalized measure of a cap of height `h` on `S^{n-1}`:
/// `1/2 * I_{1-h^2}((n-1)/2, 1/2)`.
pub fn exact_cap_measure(n: usize, h: f64) -> Result<f64> {
    check_dim_at_least(n, 2)?;
    if !(0.0..1.0).contains(&h) {
        return Err(Error::invalid(format!("cap height must lie in [0, 1), got {h}")));
    }
    let x = (1.0 - h) * (1.0 + h);
    Ok(0.5 * special::regularized_incomplete_beta(0.5 * (n as f64 - 1.0), 0.5, x)?)
}

/// `exp(-n eps^2 / 2)`, an upper bound for the measure of a cap of height `eps`.
pub fn exp_cap_bound(n: usize, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    Ok((-0.5 * n as f64 * epsilon * epsilon).exp())
}

/// `(2(1-h))^{(n-1)/2} / (h sqrt(n-1))`, an upper bound for the measure of a
/// cap of height `h` that is sharp for small caps.
pub fn sharp_cap_bound(n: usize, h: f64) -> Result<LogValue> {
    check_dim_at_least(n, 3)?;
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::invalid(format!("cap height must lie in (0, 1), got {h}")));
    }
    let m = n as f64 - 1.0;
    Ok(LogValue::from_ln(
        0.5 * m * (2.0 * (1.0 - h)).ln() - h.ln() - 0.5 * m.ln(),
    ))
}

/// Radial function at `theta` of `(R^n minus the open double cone
/// {|<x, theta>| > eps |x|}) + B`: the distance `t` along the axis at which
/// the cone's complement is exactly one unit away.
pub fn cone_complement_radial(epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    Ok(1.0 / ((1.0 - epsilon) * (1.0 + epsilon)).sqrt())
}

/// `ln kappa_n` with `kappa_n = pi^{n/2} / Gamma(n/2 + 1)`.
pub fn ln_unit_ball_volume(n: usize) -> f64 {
    let half = 0.5 * n as f64;
    half * std::f64::consts::PI.ln() - ln_gamma(half + 1.0)
}

pub fn unit_ball_volume(n: usize) -> f64 {
    ln_unit_ball_volume(n).exp()
}

/// Surface area of `S^{n-1}`, `n * kappa_n`.
pub fn sphere_area(n: usize) -> f64 {
    ((n as f64).ln() + ln_unit_ball_volume(n)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hemisphere_and_closed_forms() {
        for n in 2..10 {
            assert!((exact_cap_measure(n, 0.0).unwrap() - 0.5).abs() < 1e-15);
        }
        assert!((exact_cap_measure(3, 0.5).unwrap() - 0.25).abs() < 1e-14);
        assert!((exact_cap_measure(2, 0.5).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        assert!(exact_cap_measure(3, 1.0).is_err());
        assert!(exact_cap_measure(3, -0.1).is_err());
        assert!(exact_cap_measure(1, 0.5).is_err());
    }

    #[test]
    fn bound_examples() {
        assert!((exp_cap_bound(3, 0.5).unwrap() - 0.6872893).abs() < 1e-7);
        assert!((exp_cap_bound(100, 0.5).unwrap() - 3.7267e-6).abs() < 1e-9);
        assert!((exp_cap_bound(50, 1e-9).unwrap() - 1.0).abs() < 1e-12);
        assert!(exp_cap_bound(3, 0.0).is_err());

        let s = sharp_cap_bound(3, 0.5).unwrap();
        assert!((s.value() - 2f64.sqrt()).abs() < 1e-14);
        let tiny = sharp_cap_bound(101, 0.9).unwrap();
        let expected = 50.0 * 0.2f64.log10() - 9f64.log10();
        assert!((tiny.log10() - expected).abs() < 1e-12);
        assert!((tiny.value() / 1.25e-36 - 1.0).abs() < 1e-2);
        assert!(sharp_cap_bound(10, 1.0 - 1e-12).unwrap().value() < 1e-50);
        assert!(sharp_cap_bound(2, 0.5).is_err());
    }

    #[test]
    fn cone_radial_values() {
        assert!((cone_complement_radial(0.6).unwrap() - 1.25).abs() < 1e-15);
        assert!((cone_complement_radial(3f64.sqrt() / 2.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((cone_complement_radial(1e-9).unwrap() - 1.0).abs() < 1e-15);
        assert!(cone_complement_radial(1.0).is_err());
    }

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(2) - std::f64::consts::PI).abs() < 1e-13);
        assert!((unit_ball_volume(3) - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-13);
        assert!((unit_ball_volume(20) - 0.0258069).abs() < 1e-7);
        assert!((sphere_area(3) - 4.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn cap_type() {
        let cap = Cap::new(vec![0.0, 0.0, 1.0], 0.5).unwrap();
        assert!(cap.contains(&[0.0, 0.0, 1.0]));
        assert!(!cap.contains(&[1.0, 0.0, 0.0]));
        assert!((cap.measure().unwrap() - 0.25).abs() < 1e-14);
        assert!(Cap::new(vec![0.0, 2.0], 0.5).is_err());
    }
}
