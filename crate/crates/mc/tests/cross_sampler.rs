//! Chayes–Machta and Swendsen–Wang target the same measure at integer q.

mod common;

use common::{batch_mean, within_sigmas};
use potts_mc::{fk_labels, p_critical, Boundary, Chain, Lattice, SamplerKind};

fn observe(l: usize, q: f64, sampler: SamplerKind, sweeps: usize, seed: u64, f: impl Fn(&Chain) -> f64) -> (f64, f64) {
    let lat = Lattice::square(l, Boundary::Periodic).unwrap();
    let mut chain = Chain::new(lat, q, p_critical(q), sampler, seed, 0).unwrap();
    for _ in 0..1_000 {
        chain.sweep();
    }
    let samples: Vec<f64> = (0..sweeps)
        .map(|_| {
            chain.sweep();
            f(&chain)
        })
        .collect();
    batch_mean(&samples, 20)
}

#[test]
fn ising_edge_density_agrees() {
    let density = |c: &Chain| c.bonds().count_open() as f64 / c.lattice().num_edges() as f64;
    let cm = observe(16, 2.0, SamplerKind::ChayesMachta, 60_000, 1, density);
    let sw = observe(16, 2.0, SamplerKind::SwendsenWang, 60_000, 2, density);
    assert!(within_sigmas(cm, sw, 3.0), "{cm:?} vs {sw:?}");
    // at self-duality the infinite-volume density is 1/2
    assert!((cm.0 - 0.5).abs() < 0.02, "{cm:?}");
}

#[test]
fn three_state_cluster_count_agrees() {
    let clusters = |c: &Chain| {
        let mut labels = Vec::new();
        fk_labels(c.lattice(), c.bonds(), &mut labels) as f64
    };
    let cm = observe(32, 3.0, SamplerKind::ChayesMachta, 20_000, 3, clusters);
    let sw = observe(32, 3.0, SamplerKind::SwendsenWang, 20_000, 4, clusters);
    assert!(within_sigmas(cm, sw, 3.0), "{cm:?} vs {sw:?}");
}

#[test]
fn non_integer_q_density_is_self_dual() {
    let density = |c: &Chain| c.bonds().count_open() as f64 / c.lattice().num_edges() as f64;
    let d = |q| observe(16, q, SamplerKind::ChayesMachta, 10_000, 5, density).0;
    // self-dual on the torus up to finite-size corrections
    for q in [1.5, 2.5, 3.5] {
        assert!((d(q) - 0.5).abs() < 0.03, "q = {q}");
    }
}
