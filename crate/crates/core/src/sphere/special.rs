//! Regularized incomplete beta function.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const MAX_ITER: usize = 20_000;
const CF_TOL: f64 = 1e-15;
const TINY: f64 = 1e-300;

pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// `I_x(a, b)` for `a, b > 0` and `0 <= x <= 1`.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::invalid(format!("incomplete beta needs a, b > 0 (a={a}, b={b})")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("incomplete beta needs x in [0, 1], got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    // The continued fraction converges fast below the mean; use the
    // reflection I_x(a, b) = 1 - I_{1-x}(b, a) above it.
    if x > (a + 1.0) / (a + b + 2.0) {
        Ok(1.0 - continued_fraction(b, a, 1.0 - x)?)
    } else {
        continued_fraction(a, b, x)
    }
}

/// Modified Lentz evaluation of the standard continued fraction for `I_x(a, b)`.
fn continued_fraction(a: f64, b: f64, x: f64) -> Result<f64> {
    let ln_front = a * x.ln() + b * (1.0 - x).ln() - ln_beta(a, b);
    let front = ln_front.exp() / a;

    let guard = |v: f64| if v.abs() < TINY { TINY } else { v };
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 / guard(1.0 - qab * x / qap);
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let even = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / guard(1.0 + even * d);
        c = guard(1.0 + even / c);
        h *= d * c;
        let odd = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / guard(1.0 + odd * d);
        c = guard(1.0 + odd / c);
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < CF_TOL {
            return Ok(front * h);
        }
    }
    Err(Error::NoConvergence { a, b, x })
}
