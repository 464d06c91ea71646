//! Cluster Monte Carlo for the critical FK and fuzzy Potts models on the
//! square lattice.

pub mod coloring;
pub mod connectivity;
pub mod error;
pub mod estimate;
pub mod lattice;
pub mod sampler;
pub mod union_find;

pub use coloring::{color_and_label, Color, ColoredConfig};
pub use connectivity::{
    check_points, connectivity_ratio, translate, triangle_points, write_batches_csv, BatchRecord,
    ConnectivityResult, LatticeSim, Point,
};
pub use error::{McError, Result};
pub use estimate::{integrated_autocorrelation, ratio_estimate, Estimate};
pub use lattice::{BondConfig, Boundary, Lattice};
pub use sampler::{chayes_machta_sweep, fk_labels, p_critical, swendsen_wang_sweep, Chain, SamplerKind};
pub use union_find::UnionFind;
