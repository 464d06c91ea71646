//! Fuzzy Potts coloring: each FK cluster is red with probability `r`, and
//! red spin clusters are the connected components of the red vertices under
//! nearest-neighbour adjacency.

use rand::Rng;

use crate::lattice::{BondConfig, Lattice};
use crate::sampler::fk_labels;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

const NOT_RED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct ColoredConfig {
    /// FK cluster label of every vertex.
    pub fk_label: Vec<u32>,
    /// Color of every FK cluster, indexed by label.
    pub cluster_color: Vec<Color>,
    red_component: Vec<u32>,
}

impl ColoredConfig {
    pub fn color(&self, v: usize) -> Color {
        self.cluster_color[self.fk_label[v] as usize]
    }

    /// Red spin cluster id of `v`, or `None` for a blue vertex.
    pub fn red_component(&self, v: usize) -> Option<u32> {
        let c = self.red_component[v];
        (c != NOT_RED).then_some(c)
    }

    /// Whether `a` and `b` are in the same red spin cluster.
    pub fn red_connected(&self, a: usize, b: usize) -> bool {
        matches!((self.red_component(a), self.red_component(b)), (Some(x), Some(y)) if x == y)
    }
}

/// Labels FK clusters, colors them and computes the red spin clusters.
///
/// Cluster colors are drawn in label order, one uniform per cluster.
pub fn color_and_label<R: Rng + ?Sized>(
    lattice: &Lattice,
    bonds: &BondConfig,
    r: f64,
    rng: &mut R,
) -> ColoredConfig {
    let mut fk_label = Vec::new();
    let count = fk_labels(lattice, bonds, &mut fk_label);
    let cluster_color: Vec<Color> = (0..count)
        .map(|_| if rng.gen::<f64>() < r { Color::Red } else { Color::Blue })
        .collect();
    let is_red = |v: usize| cluster_color[fk_label[v] as usize] == Color::Red;

    let n = lattice.num_vertices();
    let mut uf = UnionFind::new(n);
    lattice.for_each_edge(|_, u, v| {
        if is_red(u) && is_red(v) {
            uf.union(u, v);
        }
    });
    let mut red_component = vec![NOT_RED; n];
    let mut root_id = vec![NOT_RED; n];
    let mut next = 0u32;
    for v in 0..n {
        if !is_red(v) {
            continue;
        }
        let root = uf.find(v);
        if root_id[root] == NOT_RED {
            root_id[root] = next;
            next += 1;
        }
        red_component[v] = root_id[root];
    }
    ColoredConfig {
        fk_label,
        cluster_color,
        red_component,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Boundary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_red_gives_one_component_on_torus() {
        let l = Lattice::square(8, Boundary::Periodic).unwrap();
        let b = BondConfig::for_lattice(&l);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let c = color_and_label(&l, &b, 1.0, &mut rng);
        assert!((0..l.num_vertices()).all(|v| c.red_component(v) == Some(0)));
    }

    #[test]
    fn spanning_cluster_is_all_or_nothing() {
        let l = Lattice::square(6, Boundary::Free).unwrap();
        let mut b = BondConfig::for_lattice(&l);
        for (e, _, _) in l.edges() {
            b.set(e, true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let c = color_and_label(&l, &b, 0.5, &mut rng);
            let first = c.red_component(0);
            assert!((0..l.num_vertices()).all(|v| c.red_component(v) == first));
        }
    }

    #[test]
    fn same_cluster_same_color() {
        let l = Lattice::square(10, Boundary::Periodic).unwrap();
        let mut b = BondConfig::for_lattice(&l);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (e, _, _) in l.edges() {
            b.set(e, rng.gen_bool(0.5));
        }
        let c = color_and_label(&l, &b, 0.4, &mut rng);
        for (e, u, v) in l.edges() {
            if b.is_open(e) {
                assert_eq!(c.color(u), c.color(v));
            }
            if c.color(u) == Color::Red && c.color(v) == Color::Red {
                assert!(c.red_connected(u, v));
            }
        }
    }
}
