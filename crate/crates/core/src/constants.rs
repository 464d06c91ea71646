//! Closed-form constants: the `q <-> kappa` map, `C(q)`, the imaginary DOZZ
//! structure constant and the three-point connectivity constant `R(q)`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::specfun::{ln_abs_upsilon, sin_pi, QuadratureSpec, SignedLog, UpsilonParams};

/// Slack allowed on the closed parameter intervals, so that endpoints
/// produced by floating-point arithmetic (e.g. `kappa_from_q(1.0)`) are
/// accepted.
const ENDPOINT_SLACK: f64 = 1e-12;

const KAPPA_MIN: f64 = 8.0 / 3.0;
const KAPPA_MAX: f64 = 4.0;

/// Half-width of the window around `kappa = 4` where `C` is taken from its
/// analytic limit.
const KAPPA_FOUR_WINDOW: f64 = 1e-6;

fn check_q(op: &'static str, q: f64) -> Result<()> {
    if !(q.is_finite() && (1.0 - ENDPOINT_SLACK..=4.0 + ENDPOINT_SLACK).contains(&q)) {
        return Err(domain(op, q, "q must lie in [1, 4]"));
    }
    Ok(())
}

fn check_kappa(op: &'static str, kappa: f64) -> Result<()> {
    if !(kappa.is_finite()
        && (KAPPA_MIN - ENDPOINT_SLACK..=KAPPA_MAX + ENDPOINT_SLACK).contains(&kappa))
    {
        return Err(domain(op, kappa, "kappa must lie in [8/3, 4]"));
    }
    Ok(())
}

/// `kappa = 4 arccos(-sqrt(q)/2) / pi`.
pub fn kappa_from_q(q: f64) -> Result<f64> {
    check_q("kappa_from_q", q)?;
    let q = q.clamp(1.0, 4.0);
    Ok(4.0 * (-q.sqrt() / 2.0).acos() / PI)
}

/// `q = 4 cos^2(pi kappa / 4)`, the inverse of [`kappa_from_q`].
pub fn q_from_kappa(kappa: f64) -> Result<f64> {
    check_kappa("q_from_kappa", kappa)?;
    let c = (PI * kappa / 4.0).cos();
    Ok(4.0 * c * c)
}

/// `sqrt(kappa/2) sin(kappa pi/2) / sin(4 pi/kappa)` for `kappa` in `[8/3, 4]`.
///
/// Both sines vanish at `kappa = 4`; there the ratio tends to `kappa/2`
/// (to second order in `kappa - 4`), which is used inside a small window.
pub fn c_from_kappa(kappa: f64) -> Result<f64> {
    check_kappa("c_from_kappa", kappa)?;
    let ratio = if (kappa - 4.0).abs() < KAPPA_FOUR_WINDOW {
        kappa / 2.0
    } else {
        sin_pi(kappa / 2.0) / sin_pi(4.0 / kappa)
    };
    Ok((kappa / 2.0).sqrt() * ratio)
}

/// `C(q)`, the geometric prefactor relating the Potts and CLE constants.
pub fn c_of_q(q: f64) -> Result<f64> {
    c_from_kappa(kappa_from_q(q)?)
}

/// The charge `1/(4 beta) - beta/2` at which the connectivity constant is
/// evaluated.
pub fn alpha0(beta: f64) -> f64 {
    1.0 / (4.0 * beta) - beta / 2.0
}

/// The parameter bundle shared by the lattice and continuum sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub q: f64,
    pub kappa: f64,
    /// `2 / sqrt(kappa)`.
    pub beta: f64,
    /// Red probability `1/q`.
    pub r: f64,
}

impl ModelParams {
    pub fn from_q(q: f64) -> Result<Self> {
        let kappa = kappa_from_q(q)?;
        Ok(Self {
            q,
            kappa,
            beta: 2.0 / kappa.sqrt(),
            r: 1.0 / q,
        })
    }

    pub fn from_kappa(kappa: f64) -> Result<Self> {
        let q = q_from_kappa(kappa)?;
        Ok(Self {
            q,
            kappa,
            beta: 2.0 / kappa.sqrt(),
            r: 1.0 / q,
        })
    }

    pub fn alpha0(&self) -> f64 {
        alpha0(self.beta)
    }
}

/// Three real charges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DozzArgs {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

impl DozzArgs {
    pub fn new(alpha1: f64, alpha2: f64, alpha3: f64) -> Self {
        Self {
            alpha1,
            alpha2,
            alpha3,
        }
    }

    pub fn diagonal(alpha: f64) -> Self {
        Self::new(alpha, alpha, alpha)
    }

    fn as_array(&self) -> [f64; 3] {
        [self.alpha1, self.alpha2, self.alpha3]
    }
}

/// The imaginary DOZZ structure constant at a fixed `beta`, with its
/// normalization computed once.
///
/// Setting the third charge to zero makes every charge-dependent Upsilon
/// factor cancel, leaving `C(alpha, alpha, 0) = A Upsilon(beta)^{3/2} /
/// Upsilon(2 beta - 1/beta)^{1/2}`; the normalization is the reciprocal.
#[derive(Debug, Clone)]
pub struct ImDozz {
    params: UpsilonParams,
    quad: QuadratureSpec,
    ln_norm: f64,
}

impl ImDozz {
    pub fn new(beta: f64) -> Result<Self> {
        Self::with_quadrature(beta, QuadratureSpec::default())
    }

    pub fn with_quadrature(beta: f64, quad: QuadratureSpec) -> Result<Self> {
        let params = UpsilonParams::new(beta)?;
        let y_beta = ln_abs_upsilon(beta, &params, &quad)?;
        let y_shift = ln_abs_upsilon(2.0 * beta - 1.0 / beta, &params, &quad)?;
        if y_beta.sign <= 0.0 || y_shift.sign < 0.0 {
            return Err(domain(
                "dozz_normalization",
                beta,
                "Upsilon(beta) and Upsilon(2 beta - 1/beta) must be positive",
            ));
        }
        let ln_norm = 0.5 * y_shift.ln_abs - 1.5 * y_beta.ln_abs;
        Ok(Self {
            params,
            quad,
            ln_norm,
        })
    }

    pub fn beta(&self) -> f64 {
        self.params.beta()
    }

    /// The normalization `A`.
    pub fn normalization(&self) -> f64 {
        self.ln_norm.exp()
    }

    fn ln_upsilon(&self, z: f64) -> Result<SignedLog> {
        ln_abs_upsilon(z, &self.params, &self.quad)
    }

    pub fn eval(&self, args: &DozzArgs) -> Result<f64> {
        let beta = self.beta();
        let shift = 2.0 * beta - 1.0 / beta;
        let alphas = args.as_array();
        let total: f64 = alphas.iter().sum();
        let mut acc = SignedLog::from_ln(self.ln_norm).mul(self.ln_upsilon(shift + total)?);
        for &a in &alphas {
            acc = acc.mul(self.ln_upsilon(total - 2.0 * a + beta)?);
            let under_root = self
                .ln_upsilon(2.0 * a + beta)?
                .mul(self.ln_upsilon(2.0 * a + shift)?);
            if under_root.sign <= 0.0 {
                return Err(domain(
                    "im_dozz",
                    a,
                    "non-positive Upsilon product under the square root",
                ));
            }
            acc = SignedLog {
                ln_abs: acc.ln_abs - 0.5 * under_root.ln_abs,
                sign: acc.sign,
            };
        }
        if !acc.ln_abs.is_finite() && !acc.is_zero() {
            return Err(Error::Domain {
                op: "im_dozz",
                value: total,
                reason: "non-finite result".into(),
            });
        }
        Ok(acc.value())
    }
}

/// The normalization `A = Upsilon(2 beta - 1/beta)^{1/2} / Upsilon(beta)^{3/2}`.
pub fn dozz_normalization(beta: f64) -> Result<f64> {
    Ok(ImDozz::new(beta)?.normalization())
}

/// The normalized imaginary DOZZ structure constant.
pub fn im_dozz(args: &DozzArgs, beta: f64) -> Result<f64> {
    ImDozz::new(beta)?.eval(args)
}

/// The imaginary DOZZ constant at the diagonal charge `alpha0(beta)` with
/// `beta = 2/sqrt(kappa(q))`.
pub fn im_dozz_at_q(q: f64) -> Result<f64> {
    let m = ModelParams::from_q(q)?;
    im_dozz(&DozzArgs::diagonal(m.alpha0()), m.beta)
}

/// `R(q) = C(q) * ImDOZZ(alpha0, alpha0, alpha0)`.
pub fn r_constant(q: f64) -> Result<f64> {
    Ok(c_of_q(q)? * im_dozz_at_q(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn kappa_examples() {
        assert!(close(kappa_from_q(2.0).unwrap(), 3.0, 1e-14));
        assert!(close(kappa_from_q(1.0).unwrap(), 8.0 / 3.0, 1e-14));
        assert!(close(kappa_from_q(3.0).unwrap(), 10.0 / 3.0, 1e-14));
        assert!(close(kappa_from_q(4.0).unwrap(), 4.0, 1e-14));
        assert!(kappa_from_q(0.5).is_err());
        assert!(kappa_from_q(4.5).is_err());
        assert!(kappa_from_q(f64::NAN).is_err());
    }

    #[test]
    fn q_examples() {
        assert!(close(q_from_kappa(3.0).unwrap(), 2.0, 1e-14));
        assert!(close(q_from_kappa(4.0).unwrap(), 4.0, 1e-14));
        assert!(close(q_from_kappa(8.0 / 3.0).unwrap(), 1.0, 1e-14));
        assert!(q_from_kappa(2.5).is_err());
        assert!(q_from_kappa(4.1).is_err());
    }

    #[test]
    fn round_trip_grid() {
        for i in 0..100 {
            let q = 1.0 + 3.0 * i as f64 / 99.0;
            let back = q_from_kappa(kappa_from_q(q).unwrap()).unwrap();
            assert!((back - q).abs() < 1e-12, "q = {q}: {back}");
        }
    }

    #[test]
    fn c_examples() {
        let c3 = ((5.0 + 5f64.sqrt()) / 2.0).sqrt();
        assert!((c_of_q(3.0).unwrap() / c3 - 1.0).abs() < 1e-10);
        assert!(close(c_of_q(1.0).unwrap(), 1.0, 1e-12));
        assert!(close(c_of_q(4.0).unwrap(), 2.0 * 2f64.sqrt(), 1e-12));
        assert!(close(c_of_q(2.0).unwrap(), 2f64.sqrt(), 1e-12));
    }

    #[test]
    fn c_is_continuous_at_kappa_four() {
        let kappa = 4.0 - 0.9e-6;
        let guarded = c_from_kappa(kappa).unwrap();
        let direct = (kappa / 2.0).sqrt() * sin_pi(kappa / 2.0) / sin_pi(4.0 / kappa);
        assert!((guarded - direct).abs() < 1e-9, "{guarded} {direct}");
    }

    #[test]
    fn alpha0_examples() {
        assert_eq!(alpha0(1.0), -0.25);
        assert!(close(alpha0(2.0 / 3f64.sqrt()), -0.360_843_918_243_516, 1e-12));
        assert!(close(alpha0(1.5f64.sqrt()), -0.408_248_290_463_863, 1e-12));
    }

    #[test]
    fn model_params_are_consistent() {
        let m = ModelParams::from_q(2.0).unwrap();
        assert!(close(m.kappa, 3.0, 1e-14));
        assert!(close(m.beta, 2.0 / 3f64.sqrt(), 1e-14));
        assert_eq!(m.r, 0.5);
        let k = ModelParams::from_kappa(10.0 / 3.0).unwrap();
        assert!(close(k.q, 3.0, 1e-12));
        for q in [1.01, 2.0, 3.99] {
            let m = ModelParams::from_q(q).unwrap();
            assert!(m.beta > 1.0 && m.beta <= 1.5f64.sqrt() + 1e-12);
            assert!(m.r > 0.25 && m.r < 1.0);
        }
    }

    #[test]
    fn normalization_forces_unit_diagonal() {
        assert!(close(
            im_dozz(&DozzArgs::new(0.1, 0.1, 0.0), 1.1).unwrap(),
            1.0,
            1e-9
        ));
        assert!(close(
            im_dozz(&DozzArgs::new(-0.3, -0.3, 0.0), 1.2).unwrap(),
            1.0,
            1e-9
        ));
    }

    #[test]
    fn table_points() {
        assert!(close(im_dozz_at_q(2.0).unwrap(), 0.973497, 5e-7));
        assert!(close(im_dozz_at_q(1.0).unwrap(), 1.0, 5e-7));
        assert!(close(im_dozz_at_q(4.0).unwrap(), 0.840896, 5e-7));
        assert!(close(r_constant(1.0).unwrap(), 1.0, 1e-9));
        assert!(close(r_constant(2.0).unwrap() / 2f64.sqrt(), 0.973497, 1e-4));
        assert!(close(r_constant(3.0).unwrap() / 3f64.sqrt(), 1.01788, 1e-4));
    }

    #[test]
    fn permutation_symmetry() {
        let d = ImDozz::new(1.15).unwrap();
        let (a, b, c) = (-0.31, 0.05, -0.12);
        let base = d.eval(&DozzArgs::new(a, b, c)).unwrap();
        for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            let v = d.eval(&DozzArgs::new(x, y, z)).unwrap();
            assert!((v / base - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn normalization_value_is_consistent() {
        let beta = 1.1;
        let d = ImDozz::new(beta).unwrap();
        assert!((dozz_normalization(beta).unwrap() - d.normalization()).abs() < 1e-15);
        assert!(d.normalization() > 0.0);
    }
}
