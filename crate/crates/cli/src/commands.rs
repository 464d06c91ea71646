use anyhow::{bail, Result};
use potts_core::constants::{
    alpha0, c_of_q, dozz_normalization, im_dozz, r_constant, DozzArgs as Charges,
    ModelParams,
};
use potts_core::radii::{
    bcle_nonsimple_moment, bcle_simple_moment, c_kappa, cle_nonsimple_moment,
    cle_nonsimple_threshold, fixed_point_moment, general_rho_moment, lambda0, lambda0_residual,
    log_moment_b_to_r, log_moment_r_to_b, moment_b_to_r, moment_r_to_b, potts_rho,
    r_to_b_threshold, CKappaMethod, LoopEvent, MomentValue,
};
use potts_core::tables::{compute_ratio, compute_table1_row, table1, table2, within_three_sigma};
use potts_mc::{connectivity_ratio, p_critical, triangle_points, Boundary, LatticeSim, SamplerKind};

use crate::args::{BoundaryArg, DozzArgs, ModelArg, MomentsArgs, SamplerArg, SimulateArgs};
use crate::report::{col, col6, col_diff, Cell, Report};

/// Inconsistent or missing command-line parameters.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn model(arg: &ModelArg) -> Result<ModelParams> {
    Ok(match (arg.q, arg.kappa) {
        (Some(q), None) => ModelParams::from_q(q)?,
        (None, Some(k)) => ModelParams::from_kappa(k)?,
        _ => bail!(ConfigError("give exactly one of --q or --kappa".into())),
    })
}

fn with_model(r: Report, m: &ModelParams) -> Report {
    r.config("q", m.q).config("kappa", m.kappa).config("beta", m.beta)
}

fn moment_cell(m: MomentValue) -> Cell {
    match m {
        MomentValue::Finite(v) => Cell::Num(v),
        MomentValue::Infinite => Cell::Inf,
    }
}

pub fn table1_report() -> Result<Report> {
    let mut r = Report::new(
        "table1",
        vec![
            col6("q"),
            col6("kappa"),
            col6("kappa_ref"),
            col_diff("kappa_diff"),
            col6("c"),
            col6("c_ref"),
            col_diff("c_diff"),
            col6("imdozz"),
            col6("imdozz_ref"),
            col_diff("imdozz_diff"),
        ],
    );
    let mut worst = 0.0f64;
    for row in table1() {
        let got = compute_table1_row(row.q)?;
        let diffs = [got.kappa - row.kappa, got.c - row.c, got.imdozz - row.imdozz];
        worst = diffs.iter().fold(worst, |w, d| w.max(d.abs()));
        r.row(vec![
            row.q.into(),
            got.kappa.into(),
            row.kappa.into(),
            diffs[0].into(),
            got.c.into(),
            row.c.into(),
            diffs[1].into(),
            got.imdozz.into(),
            row.imdozz.into(),
            diffs[2].into(),
        ]);
    }
    r.residual("max_abs_diff", worst);
    Ok(r)
}

pub fn table2_report() -> Result<Report> {
    let mut r = Report::new(
        "table2",
        vec![
            col6("q"),
            col6("exact"),
            col6("exact_ref"),
            col_diff("exact_diff"),
            col6("r_num"),
            col6("r_num_sigma"),
            col("within_3_sigma"),
        ],
    );
    let mut worst = 0.0f64;
    let mut outside = Vec::new();
    for row in table2() {
        let got = compute_ratio(row.q)?;
        worst = worst.max((got - row.exact).abs());
        let inside = within_three_sigma(&row, got);
        if !inside {
            outside.push(row.q);
        }
        r.row(vec![
            row.q.into(),
            got.into(),
            row.exact.into(),
            (got - row.exact).into(),
            row.r_num.into(),
            row.r_num_sigma.into(),
            inside.into(),
        ]);
    }
    r.residual("max_abs_diff", worst);
    r.residual("rows_outside_3_sigma", outside.len());
    Ok(r)
}

pub fn dozz(args: &DozzArgs) -> Result<Report> {
    let m = model(&args.model)?;
    let charges = match args.alphas.as_deref() {
        Some(&[a1, a2, a3]) => Charges::new(a1, a2, a3),
        Some(a) => bail!(ConfigError(format!("--alphas takes exactly three charges, got {}", a.len()))),
        None => Charges::diagonal(alpha0(m.beta)),
    };
    let (a1, a2, a3) = (charges.alpha1, charges.alpha2, charges.alpha3);
    let value = im_dozz(&charges, m.beta)?;
    let mut r = with_model(Report::new("dozz", vec![col("alpha1"), col("alpha2"), col("alpha3"), col("normalization"), col("imdozz")]), &m);
    r.row(vec![a1.into(), a2.into(), a3.into(), dozz_normalization(m.beta)?.into(), value.into()]);
    Ok(r)
}

pub fn constant(arg: &ModelArg) -> Result<Report> {
    let m = model(arg)?;
    let c = c_of_q(m.q)?;
    let rq = r_constant(m.q)?;
    let mut r = with_model(
        Report::new("constant", vec![col("q"), col("kappa"), col("alpha0"), col("c"), col("imdozz"), col("r"), col("r_over_sqrt_q")]),
        &m,
    );
    r.row(vec![
        m.q.into(),
        m.kappa.into(),
        m.alpha0().into(),
        c.into(),
        (rq / c).into(),
        rq.into(),
        (rq / m.q.sqrt()).into(),
    ]);
    Ok(r)
}

pub fn moments(args: &MomentsArgs) -> Result<Report> {
    let m = model(&args.model)?;
    let (k, l) = (m.kappa, args.lambda);
    let mut r = with_model(Report::new("moments", vec![col("law"), col("rho"), col("moment")]), &m).config("lambda", l);
    let potts = potts_rho(k);
    r.row(vec!["r_to_b".into(), Cell::Empty, moment_cell(moment_r_to_b(k, l)?)]);
    r.row(vec!["b_to_r".into(), Cell::Empty, moment_cell(moment_b_to_r(k, l)?)]);
    r.row(vec!["cle_nonsimple".into(), Cell::Empty, moment_cell(cle_nonsimple_moment(k, l)?)]);
    r.row(vec!["fixed_point".into(), potts.into(), moment_cell(fixed_point_moment(k, potts, l)?)]);
    if let Some(rho) = args.rho {
        r.config.insert("rho".into(), rho.into());
        for (name, event) in [("true", LoopEvent::TrueLoop), ("false", LoopEvent::FalseLoop)] {
            r.row(vec![format!("bcle_simple_{name}").into(), rho.into(), moment_cell(bcle_simple_moment(k, rho, l, event)?)]);
            r.row(vec![format!("bcle_nonsimple_{name}").into(), rho.into(), moment_cell(bcle_nonsimple_moment(k, rho, l, event)?)]);
        }
        r.row(vec!["fixed_point".into(), rho.into(), moment_cell(fixed_point_moment(k, rho, l)?)]);
        r.row(vec!["general_rho".into(), rho.into(), moment_cell(general_rho_moment(k, rho, l)?)]);
    }
    Ok(r)
}

pub fn lambda0_report(arg: &ModelArg) -> Result<Report> {
    let m = model(arg)?;
    let l0 = lambda0(m.kappa)?;
    let mut r = with_model(
        Report::new("lambda0", vec![col("lambda0"), col("residual"), col("r_to_b_threshold"), col("cle_nonsimple_threshold")]),
        &m,
    );
    let res = lambda0_residual(m.kappa, -l0);
    r.row(vec![l0.into(), res.into(), r_to_b_threshold(m.kappa).into(), cle_nonsimple_threshold(m.kappa).into()]);
    r.residual("equation_residual", res.abs());
    Ok(r)
}

pub fn logs(arg: &ModelArg) -> Result<Report> {
    let m = model(arg)?;
    let mut r = with_model(Report::new("logs", vec![col("log_r_to_b"), col("log_b_to_r")]), &m);
    r.row(vec![log_moment_r_to_b(m.kappa)?.into(), log_moment_b_to_r(m.kappa)?.into()]);
    Ok(r)
}

pub fn ckappa(arg: &ModelArg) -> Result<Report> {
    let m = model(arg)?;
    let a = c_kappa(m.kappa, CKappaMethod::FromLogs)?;
    let b = c_kappa(m.kappa, CKappaMethod::ClosedForm)?;
    let c = c_of_q(m.q)?;
    let mut r = with_model(Report::new("ckappa", vec![col("from_logs"), col("closed_form"), col("c_of_q"), col("rel_diff")]), &m);
    let rel = (a / b - 1.0).abs().max((a / c - 1.0).abs());
    r.row(vec![a.into(), b.into(), c.into(), rel.into()]);
    r.residual("max_rel_diff", rel);
    Ok(r)
}

pub fn simulate(args: &SimulateArgs) -> Result<Report> {
    let sim = LatticeSim {
        l: args.l,
        boundary: match args.boundary {
            BoundaryArg::Periodic => Boundary::Periodic,
            BoundaryArg::Free => Boundary::Free,
        },
        q: args.q,
        p: args.p.unwrap_or_else(|| p_critical(args.q)),
        r: args.r.unwrap_or(1.0 / args.q),
        sweeps: args.sweeps,
        thermalization: args.thermalization,
        seed: args.seed,
        batch_count: args.batches,
        sampler: match args.sampler {
            SamplerArg::Cm => SamplerKind::ChayesMachta,
            SamplerArg::Sw => SamplerKind::SwendsenWang,
        },
        chains: args.chains,
    };
    let points = triangle_points(args.l, args.side);
    let res = connectivity_ratio(&sim, points)?;
    if let Some(path) = &args.dump_batches {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        potts_mc::write_batches_csv(file, &res.batches)?;
    }
    // the exact constant only exists inside the critical window
    let exact = if (1.0..=4.0).contains(&args.q) { Some(r_constant(args.q)? / args.q.sqrt()) } else { None };

    let pts: Vec<String> = points.iter().map(|(x, y)| format!("({x};{y})")).collect();
    let mut r = Report::new("simulate", vec![col("quantity"), col("mean"), col("stderr")])
        .config("q", sim.q)
        .config("L", sim.l)
        .config("side", args.side)
        .config("points", pts.join(" "))
        .config("p", sim.p)
        .config("r", sim.r)
        .config("sweeps", sim.sweeps)
        .config("thermalization", sim.thermalization)
        .config("batches", sim.batch_count)
        .config("seed", sim.seed)
        .config("boundary", format!("{:?}", sim.boundary).to_lowercase())
        .config("sampler", sim.sampler.name())
        .config("chains", sim.chains);
    let rows = [
        ("p3", res.p3),
        ("p2_12", res.p2[0]),
        ("p2_23", res.p2[1]),
        ("p2_13", res.p2[2]),
        ("ratio", res.ratio),
        ("ratio_over_sqrt_q", res.normalized),
    ];
    for (name, e) in rows {
        r.row(vec![name.into(), e.mean.into(), e.stderr.into()]);
    }
    if let Some(x) = exact {
        r.row(vec!["exact_ratio_over_sqrt_q".into(), x.into(), 0.0.into()]);
        r.residual("diff_from_exact", res.normalized.mean - x);
        r.residual("sigmas_from_exact", res.normalized.sigmas_from(x));
    }
    r.residual("tau_int", res.tau_int);
    r.residual("batch_len", res.batch_len);
    r.notes = res.warnings;
    Ok(r)
}
