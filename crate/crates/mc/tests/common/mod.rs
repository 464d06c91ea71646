//! Reference implementations that share nothing with the library beyond the
//! documented edge numbering.
#![allow(dead_code)]

use std::collections::VecDeque;

/// Endpoints of slot `e` on a `w x h` lattice: slot `2v` goes right, `2v + 1`
/// goes up. `None` for the wrap slots of a free lattice.
pub fn slot_endpoints(w: usize, h: usize, periodic: bool, e: usize) -> Option<(usize, usize)> {
    let v = e / 2;
    let (x, y) = (v % w, v / w);
    let (nx, ny) = if e % 2 == 0 { (x + 1, y) } else { (x, y + 1) };
    if !periodic && (nx == w || ny == h) {
        return None;
    }
    Some((v, (ny % h) * w + nx % w))
}

pub fn edge_list(w: usize, h: usize, periodic: bool) -> Vec<(usize, usize, usize)> {
    (0..2 * w * h)
        .filter_map(|e| slot_endpoints(w, h, periodic, e).map(|(u, v)| (e, u, v)))
        .collect()
}

/// Connected components by breadth-first search over the edges kept by
/// `keep`; returns a component id per vertex (`usize::MAX` for vertices
/// excluded by `include`) and the component count.
pub fn bfs_components(
    n: usize,
    edges: &[(usize, usize, usize)],
    include: impl Fn(usize) -> bool,
    keep: impl Fn(usize, usize, usize) -> bool,
) -> (Vec<usize>, usize) {
    let mut adj = vec![Vec::new(); n];
    for &(e, u, v) in edges {
        if include(u) && include(v) && keep(e, u, v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if comp[s] != usize::MAX || !include(s) {
            continue;
        }
        comp[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = count;
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Whether two labelings induce the same partition (`None` = unlabeled).
pub fn same_partition(a: &[Option<usize>], b: &[Option<usize>]) -> bool {
    use std::collections::HashMap;
    if a.len() != b.len() {
        return false;
    }
    let mut ab = HashMap::new();
    let mut ba = HashMap::new();
    for (x, y) in a.iter().zip(b) {
        match (x, y) {
            (None, None) => {}
            (Some(x), Some(y)) => {
                if *ab.entry(*x).or_insert(*y) != *y || *ba.entry(*y).or_insert(*x) != *x {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Mean and batch-means standard error.
pub fn batch_mean(samples: &[f64], batches: usize) -> (f64, f64) {
    let len = samples.len() / batches;
    let means: Vec<f64> = samples
        .chunks_exact(len)
        .map(|c| c.iter().sum::<f64>() / len as f64)
        .collect();
    let n = means.len() as f64;
    let m = means.iter().sum::<f64>() / n;
    let var = means.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

pub fn within_sigmas(a: (f64, f64), b: (f64, f64), k: f64) -> bool {
    (a.0 - b.0).abs() <= k * (a.1 * a.1 + b.1 * b.1).sqrt()
}
