//! Square lattices and bond configurations.
//!
//! Vertices are numbered row-major, `v = y * width + x`. Each vertex owns two
//! edge slots: `2v` joins it to its right neighbour `(x + 1, y)` and `2v + 1`
//! to the neighbour above `(x, y + 1)`, wrapping around on the torus. With a
//! free boundary the wrapping slots exist but are never present, so edge
//! indices do not depend on the boundary condition.

use crate::error::{McError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Periodic,
    Free,
}

/// A `width x height` piece of the square lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    width: usize,
    height: usize,
    boundary: Boundary,
}

impl Lattice {
    /// Sides of length 2 give the torus double edges; that multigraph is
    /// still a valid FK graph and is what the micro-lattice checks use.
    pub fn new(width: usize, height: usize, boundary: Boundary) -> Result<Self> {
        if width < 2 || height < 2 {
            return Err(McError::InvalidConfig(format!(
                "lattice sides must be at least 2, got {width}x{height}"
            )));
        }
        if width.checked_mul(height).map_or(true, |n| n > (u32::MAX / 2) as usize) {
            return Err(McError::InvalidConfig("lattice too large".into()));
        }
        Ok(Self {
            width,
            height,
            boundary,
        })
    }

    pub fn square(l: usize, boundary: Boundary) -> Result<Self> {
        Self::new(l, l, boundary)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn num_vertices(&self) -> usize {
        self.width * self.height
    }

    /// Number of edge slots, `2 * width * height`.
    pub fn num_edge_slots(&self) -> usize {
        2 * self.num_vertices()
    }

    pub fn vertex(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < self.width && y < self.height);
        y * self.width + x
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v % self.width, v / self.width)
    }

    /// Endpoints of edge slot `e`, or `None` if the slot is a wrapping edge
    /// of a free-boundary lattice.
    #[inline]
    pub fn edge(&self, e: usize) -> Option<(usize, usize)> {
        let v = e >> 1;
        let (x, y) = self.coords(v);
        if e & 1 == 0 {
            if x + 1 == self.width && self.boundary == Boundary::Free {
                return None;
            }
            Some((v, self.vertex((x + 1) % self.width, y)))
        } else {
            if y + 1 == self.height && self.boundary == Boundary::Free {
                return None;
            }
            Some((v, self.vertex(x, (y + 1) % self.height)))
        }
    }

    /// Calls `f(slot, u, v)` for every present edge, in slot order.
    #[inline]
    pub fn for_each_edge<F: FnMut(usize, usize, usize)>(&self, mut f: F) {
        let (w, h) = (self.width, self.height);
        let periodic = self.boundary == Boundary::Periodic;
        for y in 0..h {
            let row = y * w;
            let up = if y + 1 < h { row + w } else { 0 };
            for x in 0..w {
                let v = row + x;
                if x + 1 < w {
                    f(2 * v, v, v + 1);
                } else if periodic {
                    f(2 * v, v, row);
                }
                if y + 1 < h || periodic {
                    f(2 * v + 1, v, up + x);
                }
            }
        }
    }

    /// All present edges as `(slot, u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.num_edge_slots()).filter_map(move |e| self.edge(e).map(|(u, v)| (e, u, v)))
    }

    pub fn num_edges(&self) -> usize {
        match self.boundary {
            Boundary::Periodic => self.num_edge_slots(),
            Boundary::Free => 2 * self.num_vertices() - self.width - self.height,
        }
    }

    /// Euclidean distance, using the minimum image on the torus.
    pub fn distance(&self, a: (usize, usize), b: (usize, usize)) -> f64 {
        let axis = |p: usize, q: usize, n: usize| {
            let d = p.abs_diff(q);
            match self.boundary {
                Boundary::Periodic => d.min(n - d),
                Boundary::Free => d,
            }
        };
        let dx = axis(a.0, b.0, self.width) as f64;
        let dy = axis(a.1, b.1, self.height) as f64;
        dx.hypot(dy)
    }
}

/// Open/closed state of every edge slot, stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BondConfig {
    words: Vec<u64>,
    len: usize,
}

impl BondConfig {
    pub fn closed(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn for_lattice(lattice: &Lattice) -> Self {
        Self::closed(lattice.num_edge_slots())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_open(&self, e: usize) -> bool {
        (self.words[e >> 6] >> (e & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, e: usize, open: bool) {
        let mask = 1u64 << (e & 63);
        if open {
            self.words[e >> 6] |= mask;
        } else {
            self.words[e >> 6] &= !mask;
        }
    }

    pub fn count_open(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The configuration as an integer (bit `e` = slot `e`); only for
    /// lattices with at most 64 edge slots.
    pub fn as_index(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words.first().copied().unwrap_or(0))
    }

    pub fn from_index(index: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut c = Self::closed(len);
        if len > 0 {
            c.words[0] = if len == 64 { index } else { index & ((1u64 << len) - 1) };
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_edges_wrap() {
        let l = Lattice::square(4, Boundary::Periodic).unwrap();
        assert_eq!(l.num_edges(), 32);
        assert_eq!(l.edge(2 * l.vertex(3, 1)), Some((7, 4)));
        assert_eq!(l.edge(2 * l.vertex(2, 3) + 1), Some((14, 2)));
        assert_eq!(l.edges().count(), 32);
    }

    #[test]
    fn edge_visitor_matches_slot_lookup() {
        for (w, h) in [(2, 2), (3, 2), (5, 4)] {
            for b in [Boundary::Periodic, Boundary::Free] {
                let l = Lattice::new(w, h, b).unwrap();
                let mut seen = Vec::new();
                l.for_each_edge(|e, u, v| seen.push((e, u, v)));
                assert_eq!(seen, l.edges().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn free_boundary_masks_wrap_slots() {
        let l = Lattice::square(4, Boundary::Free).unwrap();
        assert_eq!(l.edge(2 * l.vertex(3, 1)), None);
        assert_eq!(l.edge(2 * l.vertex(1, 3) + 1), None);
        assert_eq!(l.edges().count(), l.num_edges());
        assert_eq!(l.num_edges(), 24);
    }

    #[test]
    fn two_by_two_torus_is_a_multigraph() {
        let l = Lattice::square(2, Boundary::Periodic).unwrap();
        let edges: Vec<_> = l.edges().collect();
        assert_eq!(edges.len(), 8);
        assert_eq!(edges[0], (0, 0, 1));
        assert_eq!(edges[2], (2, 1, 0));
    }

    #[test]
    fn bitset_roundtrip() {
        let mut b = BondConfig::closed(130);
        b.set(0, true);
        b.set(129, true);
        b.set(64, true);
        b.set(64, false);
        assert!(b.is_open(129) && !b.is_open(64));
        assert_eq!(b.count_open(), 2);
        let c = BondConfig::from_index(0b1011, 8);
        assert_eq!(c.as_index(), Some(0b1011));
        assert_eq!(c.count_open(), 3);
    }

    #[test]
    fn torus_distance_uses_minimum_image() {
        let l = Lattice::square(10, Boundary::Periodic).unwrap();
        assert_eq!(l.distance((1, 0), (9, 0)), 2.0);
        let f = Lattice::square(10, Boundary::Free).unwrap();
        assert_eq!(f.distance((1, 0), (9, 0)), 8.0);
    }

    #[test]
    fn too_small_rejected() {
        assert!(Lattice::square(1, Boundary::Periodic).is_err());
    }
}
