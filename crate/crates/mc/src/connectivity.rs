//! Three-point red-cluster connectivity of the fuzzy Potts model.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::coloring::color_and_label;
use crate::error::{McError, Result};
use crate::estimate::{integrated_autocorrelation, ratio_estimate, Estimate};
use crate::lattice::{Boundary, Lattice};
use crate::sampler::{p_critical, Chain, SamplerKind};

/// Batches shorter than this many autocorrelation times trigger a warning.
pub const MIN_BATCH_TAUS: f64 = 10.0;

pub type Point = (usize, usize);

/// Parameters of a simulation: `chains` independent chains, each run for
/// `thermalization + sweeps` sweeps and split into `batch_count` batches.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSim {
    pub l: usize,
    pub boundary: Boundary,
    pub q: f64,
    pub p: f64,
    pub r: f64,
    pub sweeps: usize,
    pub thermalization: usize,
    pub seed: u64,
    pub batch_count: usize,
    pub sampler: SamplerKind,
    pub chains: usize,
}

impl LatticeSim {
    /// Critical couplings `p = p_c(q)`, `r = 1/q`, periodic boundary,
    /// Chayes–Machta, one chain.
    pub fn critical(l: usize, q: f64) -> Self {
        Self {
            l,
            boundary: Boundary::Periodic,
            q,
            p: p_critical(q),
            r: 1.0 / q,
            sweeps: 200_000,
            thermalization: 2_000,
            seed: 0,
            batch_count: 20,
            sampler: SamplerKind::ChayesMachta,
            chains: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(McError::InvalidConfig(msg));
        if self.l < 8 {
            return bad(format!("L must be at least 8, got {}", self.l));
        }
        if !(self.q >= 1.0 && self.q.is_finite()) {
            return bad(format!("q must be >= 1, got {}", self.q));
        }
        // p = 1 and r = 1 are admitted for the degenerate all-connected check
        if !(self.p > 0.0 && self.p <= 1.0) {
            return bad(format!("p must lie in (0, 1], got {}", self.p));
        }
        if !(self.r > 0.0 && self.r <= 1.0) {
            return bad(format!("r must lie in (0, 1], got {}", self.r));
        }
        if self.batch_count < 10 {
            return bad(format!("batch_count must be at least 10, got {}", self.batch_count));
        }
        if self.sweeps == 0 || self.sweeps % self.batch_count != 0 {
            return bad(format!(
                "sweeps ({}) must be a positive multiple of batch_count ({})",
                self.sweeps, self.batch_count
            ));
        }
        if self.chains == 0 {
            return bad("chains must be at least 1".into());
        }
        if self.sampler == SamplerKind::SwendsenWang && self.q.fract() != 0.0 {
            return Err(McError::NonIntegerQ {
                sampler: "swendsen-wang",
                q: self.q,
            });
        }
        Ok(())
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::square(self.l, self.boundary)
    }

    pub fn batch_len(&self) -> usize {
        self.sweeps / self.batch_count
    }
}

/// The most nearly equilateral lattice triangle of side `side`, centred in
/// the box: `(x0, y0)`, `(x0 + side, y0)`, `(x0 + side/2, y0 + round(side sqrt(3)/2))`.
pub fn triangle_points(l: usize, side: usize) -> [Point; 3] {
    let height = (side as f64 * 3f64.sqrt() / 2.0).round() as usize;
    let x0 = (l / 2).saturating_sub(side / 2);
    let y0 = (l / 2).saturating_sub(height / 2);
    [(x0, y0), (x0 + side, y0), (x0 + side / 2, y0 + height)]
}

/// Shifts every point by `(dx, dy)` modulo `l`.
pub fn translate(points: [Point; 3], dx: usize, dy: usize, l: usize) -> [Point; 3] {
    points.map(|(x, y)| ((x + dx) % l, (y + dy) % l))
}

/// Checks that the points are inside the lattice with pairwise distances in
/// `[4, L/4]`.
pub fn check_points(lattice: &Lattice, points: &[Point; 3]) -> Result<()> {
    let l = lattice.width().min(lattice.height());
    for &(x, y) in points {
        if x >= lattice.width() || y >= lattice.height() {
            return Err(McError::InvalidConfig(format!("point ({x}, {y}) outside the lattice")));
        }
    }
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        let d = lattice.distance(points[i], points[j]);
        if d < 4.0 || d > l as f64 / 4.0 {
            return Err(McError::InvalidConfig(format!(
                "distance {d:.3} between points {} and {} outside [4, L/4 = {}]",
                i + 1,
                j + 1,
                l as f64 / 4.0
            )));
        }
    }
    Ok(())
}

/// Batch means of the four indicators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchRecord {
    pub index: usize,
    pub p3: f64,
    pub p2_12: f64,
    pub p2_23: f64,
    pub p2_13: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectivityResult {
    pub p3: Estimate,
    /// `P2` for the pairs (1,2), (2,3), (1,3).
    pub p2: [Estimate; 3],
    /// `P3 / sqrt(P2_12 P2_23 P2_13)`, jackknife error over batches.
    pub ratio: Estimate,
    /// `ratio / sqrt(q)`: the same constant for connection in a common spin
    /// cluster of any colour (for integer `q` each `Pn` picks up a factor `q`
    /// from summing over the distinguished spin). This is the quantity the
    /// published simulations report.
    pub normalized: Estimate,
    /// Largest integrated autocorrelation time among the four indicators.
    pub tau_int: f64,
    pub batch_len: usize,
    pub warnings: Vec<String>,
    pub batches: Vec<BatchRecord>,
}

struct ChainOutput {
    batches: Vec<[f64; 4]>,
    tau_int: f64,
}

fn run_chain(sim: &LatticeSim, lattice: Lattice, points: &[Point; 3], stream: u64) -> Result<ChainOutput> {
    let mut chain = Chain::new(lattice, sim.q, sim.p, sim.sampler, sim.seed, stream)?;
    for _ in 0..sim.thermalization {
        chain.sweep();
    }
    let v = points.map(|(x, y)| lattice.vertex(x, y));
    let batch_len = sim.batch_len();
    let mut series: [Vec<f64>; 4] = std::array::from_fn(|_| Vec::with_capacity(sim.sweeps));
    let mut batches = Vec::with_capacity(sim.batch_count);
    let mut sums = [0u64; 4];
    for i in 0..sim.sweeps {
        chain.sweep();
        let (bonds, rng) = chain.bonds_and_rng();
        let colored = color_and_label(&lattice, bonds, sim.r, rng);
        let c12 = colored.red_connected(v[0], v[1]);
        let c23 = colored.red_connected(v[1], v[2]);
        let c13 = colored.red_connected(v[0], v[2]);
        let hits = [c12 && c23, c12, c23, c13];
        for (k, &h) in hits.iter().enumerate() {
            sums[k] += h as u64;
            series[k].push(h as u8 as f64);
        }
        if (i + 1) % batch_len == 0 {
            batches.push(sums.map(|s| s as f64 / batch_len as f64));
            sums = [0; 4];
        }
    }
    let tau_int = series
        .iter()
        .map(|s| integrated_autocorrelation(s))
        .fold(0.5, f64::max);
    Ok(ChainOutput { batches, tau_int })
}

/// Estimates `P3`, the three `P2`'s and their ratio.
///
/// Chains run in parallel, chain `i` on RNG stream `i`, and are merged in
/// chain order, so the result does not depend on the number of workers.
pub fn connectivity_ratio(sim: &LatticeSim, points: [Point; 3]) -> Result<ConnectivityResult> {
    sim.validate()?;
    let lattice = sim.lattice()?;
    check_points(&lattice, &points)?;
    let outputs: Vec<ChainOutput> = (0..sim.chains as u64)
        .into_par_iter()
        .map(|stream| run_chain(sim, lattice, &points, stream))
        .collect::<Result<_>>()?;

    let rows: Vec<[f64; 4]> = outputs.iter().flat_map(|o| o.batches.iter().copied()).collect();
    let column = |k: usize| rows.iter().map(|r| r[k]).collect::<Vec<f64>>();
    let (p3, p12, p23, p13) = (column(0), column(1), column(2), column(3));
    for (name, col) in [("P2(1,2)", &p12), ("P2(2,3)", &p23), ("P2(1,3)", &p13)] {
        if let Some(b) = col.iter().position(|&m| m == 0.0) {
            return Err(McError::InsufficientStatistics(format!(
                "{name} has a zero batch mean (batch {b}); increase sweeps or reduce the point separation"
            )));
        }
    }
    let tau_int = outputs.iter().map(|o| o.tau_int).fold(0.5, f64::max);
    let batch_len = sim.batch_len();
    let mut warnings = Vec::new();
    if (batch_len as f64) < MIN_BATCH_TAUS * tau_int {
        warnings.push(format!(
            "batch length {batch_len} is below {MIN_BATCH_TAUS} integrated autocorrelation times (tau_int = {tau_int:.2}); error bars may be underestimated"
        ));
    }
    let batches = rows
        .iter()
        .enumerate()
        .map(|(index, r)| BatchRecord {
            index,
            p3: r[0],
            p2_12: r[1],
            p2_23: r[2],
            p2_13: r[3],
        })
        .collect();
    let ratio = ratio_estimate(&p3, [&p12, &p23, &p13]);
    let sq = sim.q.sqrt();
    let normalized = Estimate {
        mean: ratio.mean / sq,
        stderr: ratio.stderr / sq,
        ..ratio
    };
    Ok(ConnectivityResult {
        p3: Estimate::from_batches(&p3),
        p2: [
            Estimate::from_batches(&p12),
            Estimate::from_batches(&p23),
            Estimate::from_batches(&p13),
        ],
        ratio,
        normalized,
        tau_int,
        batch_len,
        warnings,
        batches,
    })
}

/// Writes the per-batch indicator means as CSV.
pub fn write_batches_csv<W: Write>(mut w: W, batches: &[BatchRecord]) -> io::Result<()> {
    writeln!(w, "batch_index,p3,p2_12,p2_23,p2_13")?;
    for b in batches {
        writeln!(w, "{},{},{},{},{}", b.index, b.p3, b.p2_12, b.p2_23, b.p2_13)?;
    }
    Ok(())
}
