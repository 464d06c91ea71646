//! Cluster samplers for the FK random-cluster measure
//! `P(w) ∝ (p/(1-p))^{o(w)} q^{k(w)}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{McError, Result};
use crate::lattice::{BondConfig, Lattice};
use crate::union_find::UnionFind;

/// Critical bond probability `sqrt(q) / (1 + sqrt(q))`.
pub fn p_critical(q: f64) -> f64 {
    let s = q.sqrt();
    s / (1.0 + s)
}

/// FK cluster label of every vertex; returns the number of clusters.
pub fn fk_labels(lattice: &Lattice, bonds: &BondConfig, labels: &mut Vec<u32>) -> usize {
    let mut uf = UnionFind::new(lattice.num_vertices());
    lattice.for_each_edge(|e, u, v| {
        if bonds.is_open(e) {
            uf.union(u, v);
        }
    });
    uf.labels(labels)
}

/// One single-replica Chayes–Machta update, valid for real `q >= 1`.
///
/// Each FK cluster is activated with probability `1/q`; every edge with both
/// endpoints active is then resampled as Bernoulli(`p`). Edges touching an
/// inactive vertex are left alone. At `q = 1` this is i.i.d. resampling.
pub fn chayes_machta_sweep<R: Rng + ?Sized>(
    lattice: &Lattice,
    bonds: &mut BondConfig,
    q: f64,
    p: f64,
    rng: &mut R,
) {
    let mut labels = Vec::new();
    let count = fk_labels(lattice, bonds, &mut labels);
    let inv_q = 1.0 / q;
    let active: Vec<bool> = (0..count).map(|_| rng.gen::<f64>() < inv_q).collect();
    lattice.for_each_edge(|e, u, v| {
        if active[labels[u] as usize] && active[labels[v] as usize] {
            bonds.set(e, rng.gen::<f64>() < p);
        }
    });
}

fn integer_q(q: f64) -> Result<u32> {
    if q >= 1.0 && q.fract() == 0.0 && q <= u32::MAX as f64 {
        Ok(q as u32)
    } else {
        Err(McError::NonIntegerQ {
            sampler: "swendsen-wang",
            q,
        })
    }
}

/// One Swendsen–Wang update for integer `q`: a uniform spin per FK cluster,
/// then every monochromatic edge is opened with probability `p` and every
/// other edge closed.
pub fn swendsen_wang_sweep<R: Rng + ?Sized>(
    lattice: &Lattice,
    bonds: &mut BondConfig,
    q: f64,
    p: f64,
    rng: &mut R,
) -> Result<()> {
    let states = integer_q(q)?;
    let mut labels = Vec::new();
    let count = fk_labels(lattice, bonds, &mut labels);
    let spin: Vec<u32> = (0..count).map(|_| rng.gen_range(0..states)).collect();
    lattice.for_each_edge(|e, u, v| {
        let same = spin[labels[u] as usize] == spin[labels[v] as usize];
        bonds.set(e, same && rng.gen::<f64>() < p);
    });
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplerKind {
    ChayesMachta,
    SwendsenWang,
}

impl SamplerKind {
    pub fn name(&self) -> &'static str {
        match self {
            SamplerKind::ChayesMachta => "cm",
            SamplerKind::SwendsenWang => "sw",
        }
    }
}

/// One Markov chain: lattice, couplings, current bonds and its own RNG.
///
/// The RNG is ChaCha8 seeded from `seed` with stream `stream`, so chains
/// sharing a seed but not a stream are independent.
#[derive(Debug, Clone)]
pub struct Chain {
    lattice: Lattice,
    q: f64,
    p: f64,
    sampler: SamplerKind,
    bonds: BondConfig,
    rng: ChaCha8Rng,
}

impl Chain {
    /// Starts from the all-closed configuration.
    pub fn new(
        lattice: Lattice,
        q: f64,
        p: f64,
        sampler: SamplerKind,
        seed: u64,
        stream: u64,
    ) -> Result<Self> {
        if !(q >= 1.0 && q.is_finite()) {
            return Err(McError::InvalidConfig(format!("q must be >= 1, got {q}")));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(McError::InvalidConfig(format!("p must lie in (0, 1], got {p}")));
        }
        if sampler == SamplerKind::SwendsenWang {
            integer_q(q)?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Ok(Self {
            lattice,
            q,
            p,
            sampler,
            bonds: BondConfig::for_lattice(&lattice),
            rng,
        })
    }

    pub fn sweep(&mut self) {
        match self.sampler {
            SamplerKind::ChayesMachta => {
                chayes_machta_sweep(&self.lattice, &mut self.bonds, self.q, self.p, &mut self.rng)
            }
            SamplerKind::SwendsenWang => {
                swendsen_wang_sweep(&self.lattice, &mut self.bonds, self.q, self.p, &mut self.rng)
                    .expect("q validated at construction")
            }
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn bonds(&self) -> &BondConfig {
        &self.bonds
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Current bonds together with the chain's RNG, for observables that
    /// need fresh randomness.
    pub fn bonds_and_rng(&mut self) -> (&BondConfig, &mut ChaCha8Rng) {
        (&self.bonds, &mut self.rng)
    }
}
