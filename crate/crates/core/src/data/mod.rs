//! Dataset model, synthetic generators, CSV persistence, and splitting.

mod csv_io;
mod generators;
mod split;

pub use csv_io::{load_csv, save_csv};
pub use generators::{
    assign_semisynthetic, generate_swissroll, generate_ustrip, semisynthetic_mu, sigmoid,
    swissroll_mu0, swissroll_mu1, swissroll_propensity, ustrip_y0, ustrip_y1,
};
pub use split::{split, split_indices, SplitSpec};

use crate::error::{Error, Result};
use ndarray::{Array1, Array2};

/// Observational dataset: covariates, binary treatment, outcome, and (for
/// synthetic data) the ground-truth potential outcomes and the generator's
/// intrinsic manifold coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub covariates: Array2<f64>,
    pub treatment: Vec<u8>,
    pub outcome: Array1<f64>,
    pub potential_y0: Option<Array1<f64>>,
    pub potential_y1: Option<Array1<f64>>,
    pub true_ite: Option<Array1<f64>>,
    pub intrinsic_coord: Option<Array1<f64>>,
}

impl Dataset {
    /// Validates the structural invariants and returns the dataset.
    pub fn new(
        covariates: Array2<f64>,
        treatment: Vec<u8>,
        outcome: Array1<f64>,
        potential_y0: Option<Array1<f64>>,
        potential_y1: Option<Array1<f64>>,
        true_ite: Option<Array1<f64>>,
        intrinsic_coord: Option<Array1<f64>>,
    ) -> Result<Self> {
        let n = covariates.nrows();
        let d = covariates.ncols();
        if n < 2 {
            return Err(Error::invalid(format!("need at least 2 units, got {n}")));
        }
        if d < 1 {
            return Err(Error::invalid("need at least 1 covariate column"));
        }
        let check_len = |name: &str, len: usize| -> Result<()> {
            if len != n {
                Err(Error::invalid(format!(
                    "{name} has length {len}, expected {n}"
                )))
            } else {
                Ok(())
            }
        };
        check_len("treatment", treatment.len())?;
        check_len("outcome", outcome.len())?;
        if let Some(v) = &potential_y0 {
            check_len("potential_y0", v.len())?;
        }
        if let Some(v) = &potential_y1 {
            check_len("potential_y1", v.len())?;
        }
        if let Some(v) = &true_ite {
            check_len("true_ite", v.len())?;
        }
        if let Some(v) = &intrinsic_coord {
            check_len("intrinsic_coord", v.len())?;
        }
        for (i, &t) in treatment.iter().enumerate() {
            if t > 1 {
                return Err(Error::invalid(format!(
                    "treatment must be 0 or 1, got {t} at row {i}"
                )));
            }
        }
        if let (Some(y0), Some(y1)) = (&potential_y0, &potential_y1) {
            for i in 0..n {
                let expected = if treatment[i] == 1 { y1[i] } else { y0[i] };
                if outcome[i] != expected {
                    return Err(Error::invalid(format!(
                        "outcome[{i}] = {} does not equal potential outcome under t={} ({expected})",
                        outcome[i], treatment[i]
                    )));
                }
            }
            if let Some(ite) = &true_ite {
                for i in 0..n {
                    if ite[i] != y1[i] - y0[i] {
                        return Err(Error::invalid(format!(
                            "true_ite[{i}] = {} does not equal y1 - y0 = {}",
                            ite[i],
                            y1[i] - y0[i]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            covariates,
            treatment,
            outcome,
            potential_y0,
            potential_y1,
            true_ite,
            intrinsic_coord,
        })
    }

    pub fn n_units(&self) -> usize {
        self.covariates.nrows()
    }

    pub fn n_covariates(&self) -> usize {
        self.covariates.ncols()
    }

    pub fn treated_indices(&self) -> Vec<usize> {
        (0..self.n_units()).filter(|&i| self.treatment[i] == 1).collect()
    }

    pub fn control_indices(&self) -> Vec<usize> {
        (0..self.n_units()).filter(|&i| self.treatment[i] == 0).collect()
    }

    /// Mean of the ground-truth individual effects, when available.
    pub fn true_ate(&self) -> Option<f64> {
        self.true_ite
            .as_ref()
            .map(|ite| ite.sum() / ite.len() as f64)
    }

    /// Row subset in the given index order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let take1 = |v: &Array1<f64>| Array1::from_iter(indices.iter().map(|&i| v[i]));
        let covariates = Array2::from_shape_fn((indices.len(), self.n_covariates()), |(r, c)| {
            self.covariates[[indices[r], c]]
        });
        Dataset {
            covariates,
            treatment: indices.iter().map(|&i| self.treatment[i]).collect(),
            outcome: take1(&self.outcome),
            potential_y0: self.potential_y0.as_ref().map(&take1),
            potential_y1: self.potential_y1.as_ref().map(&take1),
            true_ite: self.true_ite.as_ref().map(&take1),
            intrinsic_coord: self.intrinsic_coord.as_ref().map(&take1),
        }
    }
}
