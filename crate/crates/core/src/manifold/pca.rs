use ndarray::{Array1, Array2, ArrayView2, Axis};
use serde::{Deserialize, Serialize};

use super::eigen::symmetric_eig_desc;
use crate::error::{Error, Result};

/// Fitted PCA projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaSpace {
    pub mean: Array1<f64>,
    /// D x K matrix whose columns are the orthonormal principal directions.
    pub loadings: Array2<f64>,
    /// Non-increasing variances captured by each direction.
    pub explained_variance: Array1<f64>,
    pub train_latent: Array2<f64>,
}

pub fn fit_pca(covariates: ArrayView2<'_, f64>, k: usize) -> Result<PcaSpace> {
    let n = covariates.nrows();
    let d = covariates.ncols();
    let k_max = (n - 1).min(d);
    if k == 0 || k > k_max {
        return Err(Error::invalid(format!(
            "latent dimension must be in 1..={k_max} for {n} x {d} data, got {k}"
        )));
    }

    let mean = covariates
        .mean_axis(Axis(0))
        .expect("non-empty data");
    let centered = &covariates - &mean.view().insert_axis(Axis(0));
    let cov = centered.t().dot(&centered) / (n as f64 - 1.0);
    let (values, vectors) = symmetric_eig_desc(&cov);

    let scale = values[0].max(0.0);
    let tol = scale * 1e-12;
    let achievable = values.iter().filter(|&&v| v > tol).count();
    if achievable < k {
        return Err(Error::RankDeficient {
            requested: k,
            achievable,
        });
    }

    let loadings = vectors.slice(ndarray::s![.., ..k]).to_owned();
    let explained_variance = values.slice(ndarray::s![..k]).to_owned();
    let train_latent = centered.dot(&loadings);
    Ok(PcaSpace {
        mean,
        loadings,
        explained_variance,
        train_latent,
    })
}

impl PcaSpace {
    pub fn project(&self, points: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        if points.ncols() != self.mean.len() {
            return Err(Error::invalid(format!(
                "points have {} columns, fitted space expects {}",
                points.ncols(),
                self.mean.len()
            )));
        }
        let centered = &points - &self.mean.view().insert_axis(Axis(0));
        Ok(centered.dot(&self.loadings))
    }
}
