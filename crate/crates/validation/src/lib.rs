//! Reference computations for the acceptance suite. Nothing here calls into
//! the crates under test: the oracles are written from the defining formulas
//! with plain, slow, obviously-correct methods.

use std::collections::VecDeque;

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// `ln Upsilon_beta(z)` from the defining integral with plain hyperbolic
/// sines, by Romberg extrapolation on dyadic segments.
pub fn ln_upsilon_oracle(z: f64, beta: f64) -> f64 {
    let q = beta + 1.0 / beta;
    let a = q / 2.0 - z;
    let integrand = |t: f64| {
        if t == 0.0 {
            return -a * a;
        }
        let s = (a * t / 2.0).sinh();
        let ratio = (s / (beta * t / 2.0).sinh()) * (s / (t / (2.0 * beta)).sinh());
        (a * a * (-t).exp() - ratio) / t
    };
    let t_end = 45.0 / z.min(q - z).min(1.0);
    let mut edges = vec![0.0, 0.5, 1.0];
    while *edges.last().unwrap() < t_end {
        let next = edges.last().unwrap() * 2.0;
        edges.push(next.min(t_end));
    }
    edges.windows(2).map(|w| romberg(integrand, w[0], w[1])).sum()
}

fn romberg<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let mut prev: Vec<f64> = vec![0.5 * (b - a) * (f(a) + f(b))];
    let mut h = b - a;
    for k in 1..18 {
        h *= 0.5;
        let n = 1usize << (k - 1);
        let mid: f64 = (0..n).map(|i| f(a + (2 * i + 1) as f64 * h)).sum();
        let mut row = vec![0.5 * prev[0] + h * mid];
        for j in 1..=k {
            let factor = 4f64.powi(j as i32);
            row.push((factor * row[j - 1] - prev[j - 1]) / (factor - 1.0));
        }
        let done = k > 6 && (row[k] - prev[k - 1]).abs() < 1e-15 * row[k].abs().max(1e-3);
        prev = row;
        if done {
            break;
        }
    }
    *prev.last().unwrap()
}

/// Number of connected components of `n` vertices joined by `edges`.
pub fn component_count(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut adj = vec![Vec::new(); n];
    for (u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    count
}

/// Exact FK(p, q) probabilities of every bond configuration of the
/// `w x h` torus, indexed by the bitmask over edge slots (slot `2v` joins
/// `v` to its right neighbour, `2v + 1` to the one above).
pub fn exact_fk_distribution(w: usize, h: usize, q: f64, p: f64) -> Vec<f64> {
    let m = 2 * w * h;
    assert!(m <= 24, "enumeration is exponential in the edge count");
    let ends: Vec<(usize, usize)> = (0..m)
        .map(|e| {
            let v = e / 2;
            let (x, y) = (v % w, v / w);
            let u = if e % 2 == 0 { y * w + (x + 1) % w } else { ((y + 1) % h) * w + x };
            (v, u)
        })
        .collect();
    let odds = p / (1.0 - p);
    let mut weights: Vec<f64> = (0..1u64 << m)
        .map(|mask| {
            let open = ends.iter().enumerate().filter(|(e, _)| mask >> e & 1 == 1).map(|(_, &uv)| uv);
            let k = component_count(w * h, open);
            odds.powi(mask.count_ones() as i32) * q.powi(k as i32)
        })
        .collect();
    let z: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|x| *x /= z);
    weights
}

/// Pearson chi-square goodness of fit; cells with expected count below 5 are
/// pooled into one. Returns `(statistic, degrees of freedom, p-value)`.
pub fn chi_square(counts: &[u64], probs: &[f64]) -> (f64, usize, f64) {
    assert_eq!(counts.len(), probs.len());
    let n: u64 = counts.iter().sum();
    let (mut stat, mut cells) = (0.0, 0usize);
    let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
    for (&c, &pr) in counts.iter().zip(probs) {
        let e = pr * n as f64;
        if e < 5.0 {
            pooled_obs += c as f64;
            pooled_exp += e;
        } else {
            stat += (c as f64 - e).powi(2) / e;
            cells += 1;
        }
    }
    if pooled_exp > 0.0 {
        stat += (pooled_obs - pooled_exp).powi(2) / pooled_exp;
        cells += 1;
    }
    let dof = cells.saturating_sub(1).max(1);
    let p = 1.0 - ChiSquared::new(dof as f64).unwrap().cdf(stat);
    (stat, dof, p)
}
