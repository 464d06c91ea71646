use std::f64::consts::PI;

use super::SignedLog;
use crate::error::{domain, Result};

/// `sin(pi * x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

/// `ln |gamma(x)|` where `gamma(x) = Gamma(x) / Gamma(1 - x)`, together with
/// its sign.
///
/// Evaluated through the reflection form `Gamma(x)^2 sin(pi x) / pi`, so the
/// positive integers (where `Gamma(1 - x)` has a pole) give an exact zero.
/// The nonpositive integers are poles of `Gamma(x)` and are rejected.
pub fn ln_gamma_ratio(x: f64) -> Result<SignedLog> {
    if !x.is_finite() {
        return Err(domain("gamma_ratio", x, "non-finite argument"));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(domain("gamma_ratio", x, "pole of Gamma(x)"));
    }
    let s = sin_pi(x);
    if s == 0.0 {
        return Ok(SignedLog::ZERO);
    }
    let (lg, _) = libm::lgamma_r(x);
    Ok(SignedLog {
        ln_abs: 2.0 * lg + s.abs().ln() - PI.ln(),
        sign: s.signum(),
    })
}

/// `Gamma(x) / Gamma(1 - x)`. Note `gamma_ratio(1) == 0`.
pub fn gamma_ratio(x: f64) -> Result<f64> {
    ln_gamma_ratio(x).map(SignedLog::value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_exact_zeros_and_values() {
        for k in -5..=5 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert!((sin_pi(0.3) - (0.3 * PI).sin()).abs() < 1e-15);
        assert!((sin_pi(-2.7) - (-2.7 * PI).sin()).abs() < 1e-14);
    }

    #[test]
    fn half_and_one() {
        assert!((gamma_ratio(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(gamma_ratio(1.0).unwrap(), 0.0);
        assert_eq!(gamma_ratio(3.0).unwrap(), 0.0);
    }

    #[test]
    fn poles_rejected() {
        assert!(gamma_ratio(0.0).is_err());
        assert!(gamma_ratio(-2.0).is_err());
        assert!(gamma_ratio(f64::NAN).is_err());
    }

    #[test]
    fn sign_follows_sin() {
        // Gamma(1.5)/Gamma(-0.5) = (sqrt(pi)/2) / (-2 sqrt(pi)) = -1/4
        assert!((gamma_ratio(1.5).unwrap() + 0.25).abs() < 1e-15);
        assert!(gamma_ratio(-0.5).unwrap() < 0.0);
    }
}
