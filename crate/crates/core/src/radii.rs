//! Moment laws for conformal radii of fuzzy Potts interfaces and of the
//! boundary conformal loop ensembles they are assembled from.
//!
//! Every law is a ratio of `sin(c theta)` and `cos(c theta)` terms with
//! `theta = (pi/kappa) sqrt((4 - kappa)^2 - 8 kappa lambda)`. For large
//! `lambda` the radicand is negative and `theta` is imaginary; since
//! `sin(c theta)/theta` and `cos(c theta)` are entire functions of
//! `theta^2`, all formulas are evaluated through [`ThetaParams`] and continue
//! into `sinh`/`cosh` without a branch.

use std::f64::consts::PI;

use crate::constants::c_from_kappa;
use crate::error::{domain, Error, Result};

/// A moment `E[X^lambda]` that is either finite or `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentValue {
    Finite(f64),
    /// `lambda` is at or below the finiteness threshold of the law.
    Infinite,
}

impl MomentValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, MomentValue::Finite(_))
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            MomentValue::Finite(v) => Some(v),
            MomentValue::Infinite => None,
        }
    }
}

/// Which kind of loop of a BCLE surrounds the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopEvent {
    /// Clockwise (true) loop.
    TrueLoop,
    /// Counterclockwise (false) loop.
    FalseLoop,
}

/// `theta(kappa, lambda)`, stored through `theta^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaParams {
    pub kappa: f64,
    pub lambda: f64,
    theta_sq: f64,
}

impl ThetaParams {
    pub fn new(kappa: f64, lambda: f64) -> Self {
        let k = PI / kappa;
        let radicand = (4.0 - kappa) * (4.0 - kappa) - 8.0 * kappa * lambda;
        Self {
            kappa,
            lambda,
            theta_sq: k * k * radicand,
        }
    }

    pub fn theta_squared(&self) -> f64 {
        self.theta_sq
    }

    /// `theta` when it is real, `None` in the continued regime.
    pub fn real_theta(&self) -> Option<f64> {
        (self.theta_sq >= 0.0).then(|| self.theta_sq.sqrt())
    }

    /// `sin(c theta) / theta`.
    pub fn sin_over(&self, c: f64) -> f64 {
        let u = self.theta_sq;
        if u > 0.0 {
            let s = u.sqrt();
            (c * s).sin() / s
        } else if u < 0.0 {
            let s = (-u).sqrt();
            (c * s).sinh() / s
        } else {
            c
        }
    }

    /// `sin(c theta) / sin(d theta)`.
    pub fn sin_ratio(&self, c: f64, d: f64) -> f64 {
        self.sin_over(c) / self.sin_over(d)
    }

    /// `cos(c theta)`.
    pub fn cos(&self, c: f64) -> f64 {
        let u = self.theta_sq;
        if u >= 0.0 {
            (c * u.sqrt()).cos()
        } else {
            (c * (-u).sqrt()).cosh()
        }
    }
}

fn check_kappa_open(op: &'static str, kappa: f64, lo: f64, hi: f64) -> Result<()> {
    if !(kappa.is_finite() && kappa > lo && kappa < hi) {
        return Err(domain(op, kappa, format!("kappa must lie in ({lo}, {hi})")));
    }
    Ok(())
}

fn check_potts_kappa(op: &'static str, kappa: f64) -> Result<()> {
    check_kappa_open(op, kappa, 8.0 / 3.0, 4.0)
}

fn check_rho(op: &'static str, kappa: f64, rho: f64) -> Result<()> {
    if !(rho.is_finite() && rho > -2.0 && rho < kappa - 4.0) {
        return Err(domain(
            op,
            rho,
            format!("rho must lie in (-2, kappa - 4) = (-2, {})", kappa - 4.0),
        ));
    }
    Ok(())
}

fn check_lambda(op: &'static str, lambda: f64) -> Result<()> {
    if lambda.is_nan() {
        return Err(domain(op, lambda, "lambda is NaN"));
    }
    Ok(())
}

/// The `rho` for which a BCLE_kappa(rho) exploration produces the
/// blue-to-red interface at `r = 1/q`.
pub fn potts_rho(kappa: f64) -> f64 {
    1.5 * kappa - 6.0
}

/// Finiteness threshold of `E[R_{R->B}^lambda]`: `2/kappa + 3 kappa/32 - 1`.
pub fn r_to_b_threshold(kappa: f64) -> f64 {
    2.0 / kappa + 3.0 * kappa / 32.0 - 1.0
}

/// Finiteness threshold of the nonsimple CLE_{16/kappa} moment:
/// `kappa/8 + 3/(2 kappa) - 1`.
pub fn cle_nonsimple_threshold(kappa: f64) -> f64 {
    kappa / 8.0 + 1.5 / kappa - 1.0
}

/// `E[R_{R->B}^lambda] = cos(pi (4 - kappa)/kappa) / cos(theta)`.
pub fn moment_r_to_b(kappa: f64, lambda: f64) -> Result<MomentValue> {
    check_potts_kappa("moment_r_to_b", kappa)?;
    check_lambda("moment_r_to_b", lambda)?;
    if lambda <= r_to_b_threshold(kappa) {
        return Ok(MomentValue::Infinite);
    }
    let th = ThetaParams::new(kappa, lambda);
    Ok(MomentValue::Finite(
        (PI * (4.0 - kappa) / kappa).cos() / th.cos(1.0),
    ))
}

/// `V(lambda)/theta` at `lambda = -x`, the denominator of the blue-to-red
/// law; its zero in `x` is `-lambda0`.
fn b_to_r_denominator(kappa: f64, th: &ThetaParams) -> f64 {
    let c = 2.0 * (PI * (4.0 - kappa) / 2.0).cos();
    th.sin_over(kappa - 1.0) + c * th.sin_over(1.0 - kappa / 2.0)
}

fn b_to_r_numerator(kappa: f64, th: &ThetaParams) -> f64 {
    let c = 2.0 * (PI * (4.0 - kappa) / 2.0).cos();
    th.sin_over(kappa - 2.0) + c * th.sin_over(2.0 - kappa / 2.0)
}

const BISECTION_STEPS: usize = 60;
const NEWTON_POLISH_STEPS: usize = 3;
const LAMBDA0_RESIDUAL_TOL: f64 = 1e-10;

/// The residual of the defining equation of `lambda0`,
/// `sin(a s)/sin(b s) + 2 cos(pi (4 - kappa)/2)` with
/// `s = sqrt((4 - kappa)^2 + 8 kappa x)`, `a = pi (kappa - 1)/kappa`,
/// `b = pi (2 - kappa)/(2 kappa)`.
pub fn lambda0_residual(kappa: f64, x: f64) -> f64 {
    let s = ((4.0 - kappa) * (4.0 - kappa) + 8.0 * kappa * x).sqrt();
    let a = PI * (kappa - 1.0) / kappa;
    let b = PI * (2.0 - kappa) / (2.0 * kappa);
    (a * s).sin() / (b * s).sin() + 2.0 * (PI * (4.0 - kappa) / 2.0).cos()
}

/// The finiteness threshold `lambda0 < 0` of `E[R_{B->R}^lambda]`.
///
/// `-lambda0` is the root in `(0, 1 - kappa/8 - 3/(2 kappa))` of
/// [`lambda0_residual`], found by bisection on the (pole-free) numerator
/// form of the equation and polished with Newton steps.
pub fn lambda0(kappa: f64) -> Result<f64> {
    check_potts_kappa("lambda0", kappa)?;
    let f = |x: f64| b_to_r_denominator(kappa, &ThetaParams::new(kappa, -x));
    let mut lo = 0.0;
    let mut hi = -cle_nonsimple_threshold(kappa);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo.signum() == f_hi.signum() || f_lo == 0.0 || f_hi == 0.0 {
        return Err(Error::NoBracket {
            what: "lambda0",
            lo,
            hi,
        });
    }
    let lo_sign = f_lo.signum();
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    // d/dx of sin(c theta) is c cos(c theta) dtheta/dx, dtheta/dx = 4 pi / s
    let c = 2.0 * (PI * (4.0 - kappa) / 2.0).cos();
    for _ in 0..NEWTON_POLISH_STEPS {
        let th = ThetaParams::new(kappa, -x);
        let theta = th.real_theta().expect("theta is real for lambda < 0");
        let s = theta * kappa / PI;
        let value = (PI * (kappa - 1.0) / kappa * s).sin()
            + c * (PI * (2.0 - kappa) / (2.0 * kappa) * s).sin();
        let slope = ((kappa - 1.0) * th.cos(kappa - 1.0)
            + c * (1.0 - kappa / 2.0) * th.cos(1.0 - kappa / 2.0))
            * 4.0
            * PI
            / s;
        if slope == 0.0 {
            break;
        }
        let next = x - value / slope;
        if !(next > lo - 1e-12 && next < hi + 1e-12) {
            break;
        }
        x = next;
    }
    let residual = lambda0_residual(kappa, x);
    if residual.abs() > LAMBDA0_RESIDUAL_TOL {
        return Err(Error::NoBracket {
            what: "lambda0 (residual too large)",
            lo,
            hi,
        });
    }
    Ok(-x)
}

/// `E[R_{B->R}^lambda]`:
/// `(1 / (2 cos(pi (4-kappa)/kappa))) * U / V` with
/// `U = sin((kappa-2) theta) + 2 cos(pi (4-kappa)/2) sin((2 - kappa/2) theta)` and
/// `V = sin((kappa-1) theta) + 2 cos(pi (4-kappa)/2) sin((1 - kappa/2) theta)`.
pub fn moment_b_to_r(kappa: f64, lambda: f64) -> Result<MomentValue> {
    check_potts_kappa("moment_b_to_r", kappa)?;
    check_lambda("moment_b_to_r", lambda)?;
    if lambda <= lambda0(kappa)? {
        return Ok(MomentValue::Infinite);
    }
    let th = ThetaParams::new(kappa, lambda);
    let prefactor = 1.0 / (2.0 * (PI * (4.0 - kappa) / kappa).cos());
    Ok(MomentValue::Finite(
        prefactor * b_to_r_numerator(kappa, &th) / b_to_r_denominator(kappa, &th),
    ))
}

/// Conformal-radius moments of the loop of a simple BCLE_kappa(rho)
/// surrounding the origin, restricted to the loop being true or false.
pub fn bcle_simple_moment(
    kappa: f64,
    rho: f64,
    lambda: f64,
    event: LoopEvent,
) -> Result<MomentValue> {
    check_kappa_open("bcle_simple_moment", kappa, 2.0, 4.0)?;
    check_rho("bcle_simple_moment", kappa, rho)?;
    check_lambda("bcle_simple_moment", lambda)?;
    if lambda <= kappa / 8.0 - 1.0 {
        return Ok(MomentValue::Infinite);
    }
    let th = ThetaParams::new(kappa, lambda);
    let common = (PI * (4.0 - kappa) / 4.0).sin()
        / ((PI * (4.0 - kappa) / kappa).sin() * (PI / 4.0 * (kappa - 2.0 * rho - 4.0)).sin());
    let v = match event {
        LoopEvent::TrueLoop => {
            common
                * (2.0 * PI / kappa * (kappa - rho - 4.0)).sin()
                * th.sin_ratio((kappa - 2.0 * rho - 4.0) / 4.0, kappa / 4.0)
        }
        LoopEvent::FalseLoop => {
            common
                * (2.0 * PI / kappa * (rho + 2.0)).sin()
                * th.sin_ratio((2.0 * rho + 8.0 - kappa) / 4.0, kappa / 4.0)
        }
    };
    Ok(MomentValue::Finite(v))
}

/// Conformal-radius moments of the loop of the nonsimple
/// BCLE_{kappa'}(rho'_B) surrounding the origin, where `kappa' = 16/kappa`
/// and `rho'_B = kappa' - 4 + kappa' rho / 4`. `theta` is still built from
/// `kappa`.
pub fn bcle_nonsimple_moment(
    kappa: f64,
    rho: f64,
    lambda: f64,
    event: LoopEvent,
) -> Result<MomentValue> {
    check_kappa_open("bcle_nonsimple_moment", kappa, 2.0, 4.0)?;
    check_rho("bcle_nonsimple_moment", kappa, rho)?;
    check_lambda("bcle_nonsimple_moment", lambda)?;
    let kappa_prime = 16.0 / kappa;
    if lambda <= kappa_prime / 8.0 - 1.0 {
        return Ok(MomentValue::Infinite);
    }
    let th = ThetaParams::new(kappa, lambda);
    let common = (PI * (4.0 - kappa) / kappa).sin()
        / ((PI * (4.0 - kappa) / 4.0).sin() * (2.0 * PI / kappa * (rho + 2.0)).sin());
    let v = match event {
        LoopEvent::TrueLoop => {
            common
                * (-PI / 2.0 * rho).sin()
                * th.sin_ratio((kappa - 2.0 * rho - 4.0) / 4.0, 1.0)
        }
        LoopEvent::FalseLoop => {
            common
                * (PI / 4.0 * (kappa - 2.0 * rho - 4.0)).sin()
                * th.sin_ratio((2.0 * rho + 4.0) / 4.0, 1.0)
        }
    };
    Ok(MomentValue::Finite(v))
}

/// Moment of the conformal radius of the CLE_{16/kappa} loop surrounding the
/// origin: `cos(pi (4-kappa)/4) / cos(kappa theta / 4)`.
pub fn cle_nonsimple_moment(kappa: f64, lambda: f64) -> Result<MomentValue> {
    check_potts_kappa("cle_nonsimple_moment", kappa)?;
    check_lambda("cle_nonsimple_moment", lambda)?;
    if lambda <= cle_nonsimple_threshold(kappa) {
        return Ok(MomentValue::Infinite);
    }
    let th = ThetaParams::new(kappa, lambda);
    Ok(MomentValue::Finite(
        (PI * (4.0 - kappa) / 4.0).cos() / th.cos(kappa / 4.0),
    ))
}

/// The two coefficients of the renewal relation `E = f + g E` for the
/// blue-to-red exploration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointTerms {
    pub f: f64,
    pub g: f64,
    /// `E[CR(0, D_1')^lambda]` after the first nonsimple step.
    pub first_step: f64,
}

/// `f(lambda)` and `g(lambda)`, or `None` when one of the ingredients is
/// infinite.
pub fn fixed_point_terms(kappa: f64, rho: f64, lambda: f64) -> Result<Option<FixedPointTerms>> {
    check_potts_kappa("fixed_point_moment", kappa)?;
    check_rho("fixed_point_moment", kappa, rho)?;
    let parts = [
        bcle_nonsimple_moment(kappa, rho, lambda, LoopEvent::TrueLoop)?,
        bcle_nonsimple_moment(kappa, rho, lambda, LoopEvent::FalseLoop)?,
        cle_nonsimple_moment(kappa, lambda)?,
        bcle_simple_moment(kappa, rho, lambda, LoopEvent::TrueLoop)?,
        bcle_simple_moment(kappa, rho, lambda, LoopEvent::FalseLoop)?,
    ];
    let Some([ns_true, ns_false, cle, s_true, s_false]) = parts
        .iter()
        .map(MomentValue::value)
        .collect::<Option<Vec<_>>>()
        .map(|v| <[f64; 5]>::try_from(v).expect("five parts"))
    else {
        return Ok(None);
    };
    let first_step = ns_true * cle + ns_false;
    Ok(Some(FixedPointTerms {
        f: s_true * first_step,
        g: s_false * first_step,
        first_step,
    }))
}

/// `E[CR(0, D(L_{B->R}))^lambda]` assembled from the BCLE and CLE laws
/// through the renewal relation: `f / (1 - g)` when `g < 1`.
pub fn fixed_point_moment(kappa: f64, rho: f64, lambda: f64) -> Result<MomentValue> {
    check_lambda("fixed_point_moment", lambda)?;
    Ok(match fixed_point_terms(kappa, rho, lambda)? {
        Some(t) if t.g < 1.0 => MomentValue::Finite(t.f / (1.0 - t.g)),
        _ => MomentValue::Infinite,
    })
}

/// `sup { lambda : g(lambda) = 1 }` for the exploration with parameter `rho`;
/// equals [`lambda0`] at `rho = 3 kappa/2 - 6`.
pub fn general_rho_threshold(kappa: f64, rho: f64) -> Result<f64> {
    check_potts_kappa("general_rho_threshold", kappa)?;
    check_rho("general_rho_threshold", kappa, rho)?;
    // g is decreasing, infinite at the CLE threshold and below 1 at zero
    let above = |lambda: f64| -> Result<bool> {
        Ok(match fixed_point_terms(kappa, rho, lambda)? {
            Some(t) => t.g >= 1.0,
            None => true,
        })
    };
    let mut lo = cle_nonsimple_threshold(kappa);
    let mut hi = 0.0;
    if above(hi)? {
        return Err(Error::NoBracket {
            what: "general_rho_threshold",
            lo,
            hi,
        });
    }
    while hi - lo > 1e-15 * lo.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// The closed form of the blue-to-red moment for a general `rho`.
pub fn general_rho_moment(kappa: f64, rho: f64, lambda: f64) -> Result<MomentValue> {
    check_lambda("general_rho_moment", lambda)?;
    if lambda <= general_rho_threshold(kappa, rho)? {
        return Ok(MomentValue::Infinite);
    }
    let th = ThetaParams::new(kappa, lambda);
    let a = (PI / 4.0 * (kappa - 2.0 * rho - 4.0)).sin();
    let b = (PI / 4.0 * (kappa + 2.0 * rho - 4.0)).sin();
    let prefactor =
        (2.0 * PI / kappa * (kappa - rho - 4.0)).sin() / (2.0 * PI / kappa * (rho + 2.0)).sin();
    let num = a * th.sin_over((kappa + 2.0 * rho + 4.0) / 4.0)
        - b * th.sin_over((kappa - 2.0 * rho - 4.0) / 4.0);
    let den = a * th.sin_over((kappa + 2.0 * rho + 8.0) / 4.0)
        - b * th.sin_over((kappa - 2.0 * rho - 8.0) / 4.0);
    Ok(MomentValue::Finite(prefactor * num / den))
}

/// `d theta / d lambda` at `lambda = 0`: `-4 pi / (4 - kappa)`.
fn theta_slope_at_zero(kappa: f64) -> f64 {
    -4.0 * PI / (4.0 - kappa)
}

/// `E[log R_{R->B}] = h(0) tan(4 pi / kappa)`.
pub fn log_moment_r_to_b(kappa: f64) -> Result<f64> {
    check_potts_kappa("log_moment_r_to_b", kappa)?;
    Ok(theta_slope_at_zero(kappa) * (4.0 * PI / kappa).tan())
}

/// `E[log R_{B->R}] = h(0) (2 sin^2 y - kappa sin^2 x) / (-2 cos y sin y)`
/// with `x = kappa pi / 2`, `y = 4 pi / kappa`.
pub fn log_moment_b_to_r(kappa: f64) -> Result<f64> {
    check_potts_kappa("log_moment_b_to_r", kappa)?;
    let x = kappa * PI / 2.0;
    let y = 4.0 * PI / kappa;
    let (sx, sy) = (x.sin(), y.sin());
    Ok(theta_slope_at_zero(kappa) * (2.0 * sy * sy - kappa * sx * sx) / (-2.0 * y.cos() * sy))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CKappaMethod {
    /// `sqrt((E[log R_{R->B}] + E[log R_{B->R}]) / E[log R_{R->B}])`.
    FromLogs,
    /// `sqrt(kappa/2) sin(kappa pi/2) / sin(4 pi/kappa)`.
    ClosedForm,
}

/// The ratio between the fuzzy Potts interface measure and the CLE loop
/// measure.
pub fn c_kappa(kappa: f64, method: CKappaMethod) -> Result<f64> {
    check_potts_kappa("c_kappa", kappa)?;
    match method {
        CKappaMethod::FromLogs => {
            let rb = log_moment_r_to_b(kappa)?;
            let br = log_moment_b_to_r(kappa)?;
            Ok(((rb + br) / rb).sqrt())
        }
        CKappaMethod::ClosedForm => c_from_kappa(kappa),
    }
}

/// `C(kappa)^2 = kappa sin^2(kappa pi/2) / (2 sin^2(4 pi/kappa))`.
pub fn c_kappa_squared(kappa: f64) -> Result<f64> {
    check_potts_kappa("c_kappa_squared", kappa)?;
    let sx = (kappa * PI / 2.0).sin();
    let sy = (4.0 * PI / kappa).sin();
    Ok(kappa * sx * sx / (2.0 * sy * sy))
}
