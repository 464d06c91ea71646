//! Every deterministic identity of the library, on fixed quasi-random grids.

use anyhow::Result;
use potts_core::constants::{c_of_q, im_dozz, kappa_from_q, q_from_kappa, DozzArgs, ModelParams};
use potts_core::radii::{
    bcle_nonsimple_moment, bcle_simple_moment, c_kappa, cle_nonsimple_moment, fixed_point_moment,
    fixed_point_terms, general_rho_moment, lambda0, log_moment_b_to_r, log_moment_r_to_b,
    moment_b_to_r, moment_r_to_b, potts_rho, r_to_b_threshold, CKappaMethod, LoopEvent,
    MomentValue,
};
use potts_core::specfun::{gamma_ratio, ln_upsilon_strip, upsilon, QuadratureSpec, UpsilonParams};
use potts_core::tables::{compute_ratio, compute_table1_row, table1, table2, within_three_sigma};

use crate::report::{col, Cell, Report};

pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub residual: f64,
    pub points: usize,
    /// First violation, if any.
    pub failure: Option<String>,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            residual: 0.0,
            points: 0,
            failure: None,
        }
    }

    /// Records one residual; `what` describes the point if it fails.
    fn record(&mut self, residual: f64, what: impl FnOnce() -> String) {
        self.points += 1;
        if residual.is_nan() || residual > self.residual {
            self.residual = residual;
        }
        if (residual.is_nan() || residual > self.tolerance) && self.failure.is_none() {
            self.failure = Some(format!("{} (residual {residual:.3e})", what()));
        }
    }

    /// Records a pass/fail condition with no numeric residual.
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.points += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Additive-recurrence low-discrepancy points in `[0, 1)^d`.
fn quasi_random<const D: usize>(n: usize) -> Vec<[f64; D]> {
    // root of x^(D+1) = x + 1
    let mut g: f64 = 2.0;
    for _ in 0..50 {
        g = (1.0 + g).powf(1.0 / (D as f64 + 1.0));
    }
    let alpha: [f64; D] = std::array::from_fn(|j| g.powi(-(j as i32 + 1)));
    (1..=n)
        .map(|i| std::array::from_fn(|j| (0.5 + alpha[j] * i as f64).fract()))
        .collect()
}

fn kappa_grid(n: usize) -> Vec<f64> {
    let (lo, hi) = (8.0 / 3.0, 4.0);
    (1..=n).map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn finite(m: MomentValue) -> f64 {
    m.value().unwrap_or(f64::NAN)
}

const BETA_MAX: f64 = 1.224_744_871_391_589;

fn upsilon_checks(out: &mut Vec<Check>) -> Result<()> {
    let quad = QuadratureSpec::default();
    let tol = 10.0 * quad.rel_tol;
    let mut refl = Check::new("upsilon_reflection", tol);
    let mut dual = Check::new("upsilon_duality", tol);
    let mut shift = Check::new("upsilon_shift", tol);
    let mut refine = Check::new("quadrature_refinement", 1e-10);
    for [u, v, w] in quasi_random::<3>(200) {
        let beta = 1.0 + 1e-4 + u * (BETA_MAX - 1.0 - 1e-4);
        let p = UpsilonParams::new(beta)?;
        let q = p.charge();
        let z = (0.01 + 0.98 * v) * q;
        let a = upsilon(z, &p, &quad)?;
        refl.record(rel(upsilon(q - z, &p, &quad)?, a), || format!("beta {beta} z {z}"));
        dual.record(rel(upsilon(z, &p.dual(), &quad)?, a), || format!("beta {beta} z {z}"));

        let zb = (0.02 + 0.96 * w) / beta;
        let lhs = upsilon(zb + beta, &p, &quad)? / upsilon(zb, &p, &quad)?;
        let rhs = gamma_ratio(beta * zb)? * beta.powf(1.0 - 2.0 * beta * zb);
        shift.record(rel(lhs, rhs), || format!("beta shift, beta {beta} z {zb}"));
        let zi = (0.02 + 0.96 * w) * beta;
        let lhs = upsilon(zi + 1.0 / beta, &p, &quad)? / upsilon(zi, &p, &quad)?;
        let rhs = gamma_ratio(zi / beta)? * beta.powf(2.0 * zi / beta - 1.0);
        shift.record(rel(lhs, rhs), || format!("1/beta shift, beta {beta} z {zi}"));

        let coarse = QuadratureSpec::default().with_rel_tol(1e-10);
        let fine = QuadratureSpec::default().with_rel_tol(5e-11);
        let d = (ln_upsilon_strip(z, &p, &coarse)? - ln_upsilon_strip(z, &p, &fine)?).exp_m1().abs();
        refine.record(d, || format!("beta {beta} z {z}"));
    }
    let mut mid = Check::new("upsilon_midpoint", quad.abs_tol);
    for beta in [1.0, 1.05, 1.1, 1.15, 1.2, BETA_MAX] {
        let p = UpsilonParams::new(beta)?;
        mid.record(ln_upsilon_strip(p.charge() / 2.0, &p, &quad)?.abs(), || format!("beta {beta}"));
    }
    out.extend([refl, dual, shift, mid, refine]);
    Ok(())
}

fn constants_checks(out: &mut Vec<Check>) -> Result<()> {
    let mut trip = Check::new("kappa_round_trip", 1e-12);
    for i in 0..100 {
        let q = 1.0 + 3.0 * i as f64 / 99.0;
        trip.record((q_from_kappa(kappa_from_q(q)?)? - q).abs(), || format!("q {q}"));
    }

    let mut perm = Check::new("dozz_permutation_symmetry", 1e-10);
    for [u, a, b, c] in quasi_random::<4>(20) {
        let beta = ModelParams::from_q(1.0 + 2.99 * u)?.beta;
        let al = [-0.4 * a, -0.4 * b, -0.4 * c];
        let base = im_dozz(&DozzArgs::new(al[0], al[1], al[2]), beta)?;
        for [i, j, k] in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let v = im_dozz(&DozzArgs::new(al[i], al[j], al[k]), beta)?;
            perm.record(rel(v, base), || format!("beta {beta} charges {al:?}"));
        }
    }

    let mut norm = Check::new("dozz_normalization", 1e-9);
    for [u, v] in quasi_random::<2>(50) {
        let beta = ModelParams::from_q(1.0 + 2.99 * u)?.beta;
        // beyond 1/beta - beta/2 the square roots in the formula are not real
        let hi = 0.45f64.min(1.0 / beta - beta / 2.0);
        let alpha = -0.45 + v * (hi + 0.45);
        let x = im_dozz(&DozzArgs::new(alpha, alpha, 0.0), beta)?;
        norm.record((x - 1.0).abs(), || format!("beta {beta} alpha {alpha}"));
    }
    for i in 0..50 {
        let alpha = -0.45 + 0.9 * (i as f64 + 0.5) / 50.0;
        let x = im_dozz(&DozzArgs::new(alpha, alpha, 0.0), 1.0)?;
        norm.record((x - 1.0).abs(), || format!("beta 1 alpha {alpha}"));
    }

    let mut t1 = Check::new("table1_golden", 5e-7);
    for row in table1() {
        let got = compute_table1_row(row.q)?;
        for (name, g, want) in [("kappa", got.kappa, row.kappa), ("C", got.c, row.c), ("ImDOZZ", got.imdozz, row.imdozz)] {
            t1.record((g - want).abs(), || format!("q {} {name}: {g:.9} vs {want}", row.q));
        }
    }

    let mut t2 = Check::new("table2_golden", 1e-4);
    for row in table2() {
        let got = compute_ratio(row.q)?;
        t2.record((got - row.exact).abs(), || format!("q {}: {got} vs {}", row.q, row.exact));
        t2.require(within_three_sigma(&row, got), || format!("q {}: {got} outside 3 sigma of {}", row.q, row.r_num));
    }

    let mut c3 = Check::new("c_q3_closed_form", 1e-10);
    let want = ((5.0 + 5f64.sqrt()) / 2.0).sqrt();
    c3.record(rel(c_of_q(3.0)?, want), || "C(3)".into());

    out.extend([trip, perm, norm, t1, t2, c3]);
    Ok(())
}

fn radii_checks(out: &mut Vec<Check>) -> Result<()> {
    let mut zeroth = Check::new("zeroth_moments", 1e-12);
    let mut part = Check::new("partition_identities", 1e-10);
    let mut flips = Check::new("threshold_flips", 0.0);
    let mut g1 = Check::new("g_at_lambda0", 1e-8);
    let mut mono = Check::new("monotonicity", 0.0);
    for kappa in kappa_grid(20) {
        for m in [moment_r_to_b(kappa, 0.0)?, moment_b_to_r(kappa, 0.0)?, cle_nonsimple_moment(kappa, 0.0)?] {
            zeroth.record((finite(m) - 1.0).abs(), || format!("kappa {kappa}"));
        }
        for i in 1..=10 {
            let rho = -2.0 + (kappa - 2.0) * i as f64 / 11.0;
            for m in [fixed_point_moment(kappa, rho, 0.0)?, general_rho_moment(kappa, rho, 0.0)?] {
                zeroth.record((finite(m) - 1.0).abs(), || format!("kappa {kappa} rho {rho}"));
            }
            for law in [bcle_simple_moment, bcle_nonsimple_moment] {
                let t = finite(law(kappa, rho, 0.0, LoopEvent::TrueLoop)?);
                let f = finite(law(kappa, rho, 0.0, LoopEvent::FalseLoop)?);
                zeroth.record((t + f - 1.0).abs(), || format!("kappa {kappa} rho {rho}"));
                part.record((t + f - 1.0).abs(), || format!("kappa {kappa} rho {rho}"));
            }
        }
        let thr = r_to_b_threshold(kappa);
        flips.require(
            moment_r_to_b(kappa, thr + 1e-6)?.is_finite() && !moment_r_to_b(kappa, thr - 1e-6)?.is_finite(),
            || format!("R->B at kappa {kappa}"),
        );
        let l0 = lambda0(kappa)?;
        flips.require(
            moment_b_to_r(kappa, l0 + 1e-6)?.is_finite() && !moment_b_to_r(kappa, l0 - 1e-6)?.is_finite(),
            || format!("B->R at kappa {kappa}"),
        );
        match fixed_point_terms(kappa, potts_rho(kappa), l0)? {
            Some(t) => g1.record((t.g - 1.0).abs(), || format!("kappa {kappa}")),
            None => g1.require(false, || format!("no fixed point terms at kappa {kappa}")),
        }
        let lambdas: Vec<f64> = (0..40).map(|i| l0 + 0.01 + 0.1 * i as f64).collect();
        for w in lambdas.windows(2) {
            let (a, b) = (finite(moment_b_to_r(kappa, w[0])?), finite(moment_b_to_r(kappa, w[1])?));
            let (c, d) = (finite(moment_r_to_b(kappa, w[0].max(thr + 0.01))?), finite(moment_r_to_b(kappa, w[1].max(thr + 0.02))?));
            mono.require(a > b && c > d, || format!("kappa {kappa} lambda {}", w[0]));
        }
    }

    let mut chain = Check::new("fixed_point_equivalence", 1e-9);
    for kappa in [2.8, 3.0, 10.0 / 3.0, 3.9] {
        let rho = potts_rho(kappa);
        for lambda in [0.1, 0.5, 1.0, 2.0] {
            let fp = finite(fixed_point_moment(kappa, rho, lambda)?);
            let gr = finite(general_rho_moment(kappa, rho, lambda)?);
            let br = finite(moment_b_to_r(kappa, lambda)?);
            chain.record(rel(gr, fp).max(rel(br, fp)), || format!("kappa {kappa} lambda {lambda}"));
        }
        for i in 1..=5 {
            let rho = -2.0 + (kappa - 2.0) * i as f64 / 6.0;
            for lambda in [0.1, 0.5, 1.0, 2.0] {
                let fp = finite(fixed_point_moment(kappa, rho, lambda)?);
                let gr = finite(general_rho_moment(kappa, rho, lambda)?);
                chain.record(rel(gr, fp), || format!("kappa {kappa} rho {rho} lambda {lambda}"));
            }
        }
    }

    let mut deriv = Check::new("log_moment_derivatives", 1e-4);
    let h = 1e-6;
    for kappa in [2.8, 3.0, 10.0 / 3.0, 3.5, 3.9] {
        let fd_rb = (finite(moment_r_to_b(kappa, h)?) - finite(moment_r_to_b(kappa, -h)?)) / (2.0 * h);
        let fd_br = (finite(moment_b_to_r(kappa, h)?) - finite(moment_b_to_r(kappa, -h)?)) / (2.0 * h);
        deriv.record(rel(log_moment_r_to_b(kappa)?, fd_rb), || format!("R->B kappa {kappa}"));
        deriv.record(rel(log_moment_b_to_r(kappa)?, fd_br), || format!("B->R kappa {kappa}"));
    }

    let mut ck = Check::new("c_kappa_identity", 1e-9);
    for kappa in kappa_grid(50) {
        let a = c_kappa(kappa, CKappaMethod::FromLogs)?;
        let b = c_kappa(kappa, CKappaMethod::ClosedForm)?;
        let c = c_of_q(q_from_kappa(kappa)?)?;
        ck.record(rel(a, b).max(rel(a, c)), || format!("kappa {kappa}"));
    }

    let mut cont = Check::new("continuation_across_theta_zero", 1e-8);
    for kappa in [2.8, 3.0, 3.5, 3.9] {
        let star = (4.0 - kappa) * (4.0 - kappa) / (8.0 * kappa);
        let rho = -1.5f64.max(-2.0 + 0.5 * (kappa - 2.0));
        let (lo, hi) = (star - 1e-12, star + 1e-12);
        let pairs = [
            (moment_r_to_b(kappa, lo)?, moment_r_to_b(kappa, hi)?),
            (moment_b_to_r(kappa, lo)?, moment_b_to_r(kappa, hi)?),
            (cle_nonsimple_moment(kappa, lo)?, cle_nonsimple_moment(kappa, hi)?),
            (fixed_point_moment(kappa, rho, lo)?, fixed_point_moment(kappa, rho, hi)?),
            (general_rho_moment(kappa, rho, lo)?, general_rho_moment(kappa, rho, hi)?),
        ];
        for (a, b) in pairs {
            cont.record((finite(a) - finite(b)).abs(), || format!("kappa {kappa}"));
        }
    }
    out.extend([zeroth, part, flips, g1, mono, chain, deriv, ck, cont]);
    Ok(())
}

pub fn run_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    upsilon_checks(&mut checks)?;
    constants_checks(&mut checks)?;
    radii_checks(&mut checks)?;
    Ok(checks)
}

pub fn report(checks: &[Check]) -> Report {
    let mut r = Report::new(
        "verify",
        vec![col("check"), col("passed"), col("residual"), col("tolerance"), col("points"), col("failure")],
    );
    for c in checks {
        r.row(vec![
            c.name.into(),
            c.passed().into(),
            c.residual.into(),
            c.tolerance.into(),
            Cell::Int(c.points as u64),
            c.failure.clone().map_or(Cell::Empty, Cell::Str),
        ]);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    r.residual("failed_checks", failed);
    r
}
