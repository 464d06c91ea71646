//! Zamolodchikov's Upsilon function and the gamma ratio used by its
//! continuation.
//!
//! For `0 < z < Q`, with `Q = beta + 1/beta`,
//!
//! ```text
//! ln Upsilon_beta(z) = int_0^inf [ a^2 e^{-t} - sinh^2(a t / 2) / (sinh(beta t / 2) sinh(t / (2 beta))) ] dt / t,
//!     a = Q/2 - z.
//! ```
//!
//! The integrand is finite at `t = 0` (it tends to `-a^2`) and decays like
//! `exp(-min(z, Q - z) t)`. Outside the strip the value is reached through
//! `Upsilon(z + beta) = gamma(beta z) beta^{1 - 2 beta z} Upsilon(z)`.

mod gamma;
pub mod quadrature;

pub use gamma::{gamma_ratio, ln_gamma_ratio, sin_pi};
pub use quadrature::{Integral, QuadratureSpec};

use crate::error::{domain, Error, Result};

/// A real number stored as `sign * exp(ln_abs)`; `sign == 0` encodes an
/// exact zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        ln_abs: f64::NEG_INFINITY,
        sign: 0.0,
    };
    pub const ONE: SignedLog = SignedLog {
        ln_abs: 0.0,
        sign: 1.0,
    };

    pub fn from_ln(ln_abs: f64) -> Self {
        Self { ln_abs, sign: 1.0 }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0.0
    }

    pub fn value(self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    pub fn mul(self, other: SignedLog) -> SignedLog {
        if self.is_zero() || other.is_zero() {
            return SignedLog::ZERO;
        }
        SignedLog {
            ln_abs: self.ln_abs + other.ln_abs,
            sign: self.sign * other.sign,
        }
    }

    /// `self / other`; `None` when `other` is zero.
    pub fn div(self, other: SignedLog) -> Option<SignedLog> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(SignedLog::ZERO);
        }
        Some(SignedLog {
            ln_abs: self.ln_abs - other.ln_abs,
            sign: self.sign * other.sign,
        })
    }
}

/// Coupling `beta` and the derived charge `Q = beta + 1/beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpsilonParams {
    beta: f64,
    charge: f64,
}

impl UpsilonParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(domain("UpsilonParams", beta, "beta must be positive"));
        }
        Ok(Self {
            beta,
            charge: beta + 1.0 / beta,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `Q = beta + 1/beta`.
    pub fn charge(&self) -> f64 {
        self.charge
    }

    /// The parameters for `1/beta`, which define the same function.
    pub fn dual(&self) -> Self {
        Self::new(1.0 / self.beta).expect("1/beta is positive")
    }
}

const SMALL_T: f64 = 1e-4;
/// Envelope level below which the integrand tail is dropped.
const TAIL_LEVEL: f64 = 1e-18;

/// The Upsilon integrand for `a = Q/2 - z`.
fn integrand(t: f64, a: f64, beta: f64) -> f64 {
    let a2 = a * a;
    if t < SMALL_T {
        let b2 = beta * beta;
        let c1 = a2 * (0.5 + (b2 + 1.0 / b2) / 24.0 - a2 / 12.0);
        let c2 = -a2 / 6.0;
        let c3 = -a2
            * (16.0 * a2 * a2 * b2 * b2 - 20.0 * a2 * b2 * b2 * b2 - 20.0 * a2 * b2
                + 7.0 * b2.powi(4)
                - 230.0 * b2 * b2
                + 7.0)
            / (5760.0 * b2 * b2);
        return -a2 + t * (c1 + t * (c2 + t * c3));
    }
    let abs_a = a.abs();
    let charge = beta + 1.0 / beta;
    // sinh^2(|a| t/2) / (sinh(beta t/2) sinh(t/(2 beta))) without overflow
    let num = (-abs_a * t).exp_m1();
    let den = (-beta * t).exp_m1() * (-t / beta).exp_m1();
    let ratio = ((abs_a - 0.5 * charge) * t).exp() * num * num / den;
    (a2 * (-t).exp() - ratio) / t
}

/// Rounds arguments that sit within a few ulps of an integer, so that the
/// zeros and poles of `gamma` reached by continuation are hit exactly.
fn snap_integer(x: f64) -> f64 {
    let n = x.round();
    if (x - n).abs() <= 1e-13 * x.abs().max(1.0) {
        n
    } else {
        x
    }
}

fn auto_t_max(z: f64, charge: f64) -> f64 {
    let rate = z.min(charge - z).min(1.0);
    -TAIL_LEVEL.ln() / rate
}

/// `ln Upsilon_beta(z)` for `z` in the open strip `(0, Q)`, by adaptive
/// quadrature of the defining integral.
pub fn ln_upsilon_strip(z: f64, p: &UpsilonParams, quad: &QuadratureSpec) -> Result<f64> {
    quad.validate()?;
    let charge = p.charge();
    if !(z > 0.0 && z < charge) {
        return Err(domain(
            "ln_upsilon_strip",
            z,
            format!("outside the strip (0, {charge})"),
        ));
    }
    let a = 0.5 * charge - z;
    if a == 0.0 {
        return Ok(0.0);
    }
    let beta = p.beta();
    let t_max = quad.t_max.unwrap_or_else(|| auto_t_max(z, charge));
    let tail = integrand(t_max, a, beta).abs();
    if tail > quad.abs_tol {
        return Err(Error::Truncation {
            t_max,
            magnitude: tail,
        });
    }
    let breaks: Vec<f64> = if t_max > 1.0 {
        vec![0.0, 1.0, t_max]
    } else {
        vec![0.0, t_max]
    };
    let r = quadrature::integrate(
        |t| integrand(t, a, beta),
        &breaks,
        quad.rel_tol,
        quad.abs_tol,
        quad.max_subdivisions,
    )?;
    Ok(r.value)
}

/// `ln |Upsilon_beta(z)|` and its sign for any real `z`.
///
/// Arguments outside the strip are shifted by multiples of `beta` into it.
/// Zeros of Upsilon (`z = -m beta - n/beta` and `z = Q + m beta + n/beta`)
/// come back as [`SignedLog::ZERO`].
pub fn ln_abs_upsilon(z: f64, p: &UpsilonParams, quad: &QuadratureSpec) -> Result<SignedLog> {
    if !z.is_finite() {
        return Err(domain("upsilon", z, "non-finite argument"));
    }
    let beta = p.beta();
    let charge = p.charge();
    let ln_beta = beta.ln();
    // accumulated factor F with Upsilon(z) = F * Upsilon(z_strip)
    let mut factor = SignedLog::ONE;
    let mut w = z;
    while w >= charge {
        // Upsilon(w) = gamma(beta (w - beta)) beta^{1 - 2 beta (w - beta)} Upsilon(w - beta)
        let v = w - beta;
        let g = ln_gamma_ratio(snap_integer(beta * v))?;
        if g.is_zero() {
            return Ok(SignedLog::ZERO);
        }
        factor = factor
            .mul(g)
            .mul(SignedLog::from_ln((1.0 - 2.0 * beta * v) * ln_beta));
        w = v;
    }
    while w <= 0.0 {
        // Upsilon(w) = Upsilon(w + beta) / (gamma(beta w) beta^{1 - 2 beta w})
        let g = match ln_gamma_ratio(snap_integer(beta * w)) {
            Ok(g) => g,
            // pole of gamma(beta w): Upsilon vanishes at w
            Err(Error::Domain { .. }) => return Ok(SignedLog::ZERO),
            Err(e) => return Err(e),
        };
        let shift = g.mul(SignedLog::from_ln((1.0 - 2.0 * beta * w) * ln_beta));
        factor = factor.div(shift).ok_or_else(|| {
            domain("upsilon", z, "continuation divides by a zero of gamma")
        })?;
        w += beta;
    }
    let inner = SignedLog::from_ln(ln_upsilon_strip(w, p, quad)?);
    Ok(factor.mul(inner))
}

/// `Upsilon_beta(z)` for real `z`.
pub fn upsilon(z: f64, p: &UpsilonParams, quad: &QuadratureSpec) -> Result<f64> {
    ln_abs_upsilon(z, p, quad).map(SignedLog::value)
}
