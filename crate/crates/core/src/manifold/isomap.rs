//! Isomap: kNN graph, all-pairs shortest paths, classical MDS, and the
//! landmark (Nystrom) out-of-sample extension.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eigen::symmetric_eig_desc;
use crate::error::{Error, Result};

/// Fitted Isomap embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsomapSpace {
    pub train_points: Array2<f64>,
    pub train_latent: Array2<f64>,
    /// Top-K eigenvalues of the double-centered squared-distance matrix.
    pub eigenvalues: Array1<f64>,
    /// Corresponding eigenvectors (N x K), sign-fixed.
    pub eigenvectors: Array2<f64>,
    /// Graph geodesic distances between training points.
    pub geodesics: Array2<f64>,
    /// Column means of the squared geodesic matrix (for the landmark formula).
    pub col_mean_sq: Array1<f64>,
    pub n_neighbors: usize,
    /// Symmetrized kNN edges (i < j, Euclidean length).
    pub edges: Vec<(usize, usize, f64)>,
}

fn euclidean(a: ArrayView1<'_, f64>, b: ArrayView1<'_, f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn knn_edges(points: ArrayView2<'_, f64>, n_neighbors: usize) -> Vec<(usize, usize, f64)> {
    let n = points.nrows();
    let mut edge_set: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 0..n {
        let mut dists: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (euclidean(points.row(i), points.row(j)), j))
            .collect();
        dists.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
        for &(d, j) in dists.iter().take(n_neighbors) {
            let key = (i.min(j), i.max(j));
            if seen.insert(key) {
                edge_set.push((key.0, key.1, d));
            }
        }
    }
    edge_set.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    edge_set
}

fn components(n: usize, adjacency: &[Vec<(usize, f64)>]) -> Vec<usize> {
    let mut component = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut stack = vec![start];
        let mut size = 0usize;
        component[start] = id;
        while let Some(v) = stack.pop() {
            size += 1;
            for &(w, _) in &adjacency[v] {
                if component[w] == usize::MAX {
                    component[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

fn dijkstra(source: usize, adjacency: &[Vec<(usize, f64)>]) -> Vec<f64> {
    let n = adjacency.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap: BinaryHeap<Reverse<(ordered::F64, usize)>> = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Reverse((ordered::F64(0.0), source)));
    while let Some(Reverse((ordered::F64(d), v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(w, len) in &adjacency[v] {
            let nd = d + len;
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Reverse((ordered::F64(nd), w)));
            }
        }
    }
    dist
}

/// Minimal totally-ordered f64 wrapper for the heap (distances are finite).
mod ordered {
    #[derive(PartialEq, PartialOrd)]
    pub struct F64(pub f64);
    impl Eq for F64 {}
    #[allow(clippy::derive_ord_xor_partial_ord)]
    impl Ord for F64 {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.partial_cmp(other).expect("finite distance")
        }
    }
}

pub fn fit_isomap(
    covariates: ArrayView2<'_, f64>,
    k: usize,
    n_neighbors: usize,
) -> Result<IsomapSpace> {
    let n = covariates.nrows();
    if n < 2 {
        return Err(Error::invalid("need at least 2 points"));
    }
    if n_neighbors == 0 || n_neighbors >= n {
        return Err(Error::invalid(format!(
            "n_neighbors must be in 1..{n}, got {n_neighbors}"
        )));
    }
    if k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "latent dimension must be in 1..{n}, got {k}"
        )));
    }

    let edges = knn_edges(covariates, n_neighbors);
    let mut adjacency = vec![Vec::new(); n];
    for &(i, j, d) in &edges {
        adjacency[i].push((j, d));
        adjacency[j].push((i, d));
    }

    let sizes = components(n, &adjacency);
    if sizes.len() > 1 {
        let mut sorted = sizes;
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        return Err(Error::DisconnectedGraph { sizes: sorted });
    }

    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| dijkstra(s, &adjacency))
        .collect();
    let mut geodesics = Array2::zeros((n, n));
    for (i, row) in rows.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            geodesics[[i, j]] = d;
        }
    }

    // classical MDS on the squared geodesic distances
    let sq = geodesics.mapv(|d| d * d);
    let col_mean_sq = sq.mean_axis(Axis(0)).expect("non-empty");
    let grand_mean = col_mean_sq.mean().expect("non-empty");
    let mut b = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            b[[i, j]] = -0.5 * (sq[[i, j]] - col_mean_sq[i] - col_mean_sq[j] + grand_mean);
        }
    }
    let (values, vectors) = symmetric_eig_desc(&b);
    let tol = values[0].max(0.0) * 1e-12;
    let positive = values.iter().filter(|&&v| v > tol).count();
    if positive < k {
        return Err(Error::RankDeficient {
            requested: k,
            achievable: positive,
        });
    }

    let eigenvalues = values.slice(ndarray::s![..k]).to_owned();
    let eigenvectors = vectors.slice(ndarray::s![.., ..k]).to_owned();
    let mut train_latent = eigenvectors.clone();
    for j in 0..k {
        let scale = eigenvalues[j].sqrt();
        train_latent.column_mut(j).mapv_inplace(|v| v * scale);
    }

    Ok(IsomapSpace {
        train_points: covariates.to_owned(),
        train_latent,
        eigenvalues,
        eigenvectors,
        geodesics,
        col_mean_sq,
        n_neighbors,
        edges,
    })
}

impl IsomapSpace {
    /// Landmark out-of-sample extension: route each new point through its
    /// nearest training neighbors, then apply the Nystrom embedding formula.
    pub fn project(&self, points: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        let n = self.train_points.nrows();
        let d = self.train_points.ncols();
        if points.ncols() != d {
            return Err(Error::invalid(format!(
                "points have {} columns, fitted space expects {d}",
                points.ncols()
            )));
        }
        let k = self.eigenvalues.len();
        let mut out = Array2::zeros((points.nrows(), k));
        for (p, row) in points.axis_iter(Axis(0)).enumerate() {
            let mut dists: Vec<(f64, usize)> = (0..n)
                .map(|j| (euclidean(row, self.train_points.row(j)), j))
                .collect();
            dists.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));

            let mut delta = vec![f64::INFINITY; n];
            for &(d_nb, nb) in dists.iter().take(self.n_neighbors) {
                for i in 0..n {
                    let candidate = d_nb + self.geodesics[[nb, i]];
                    if candidate < delta[i] {
                        delta[i] = candidate;
                    }
                }
            }

            for c in 0..k {
                let mut acc = 0.0;
                for i in 0..n {
                    acc += self.eigenvectors[[i, c]] * (delta[i] * delta[i] - self.col_mean_sq[i]);
                }
                out[[p, c]] = -acc / (2.0 * self.eigenvalues[c].sqrt());
            }
        }
        Ok(out)
    }
}
