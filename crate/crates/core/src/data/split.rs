use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};
use crate::rng::SeedStream;

/// Deterministic train/test split specification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(train_fraction: f64, seed: u64) -> Result<Self> {
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::invalid(format!(
                "train_fraction must be in (0,1), got {train_fraction}"
            )));
        }
        Ok(Self {
            train_fraction,
            seed,
        })
    }
}

/// Index sets for a split of `n` units: shuffled by the seed, then each side
/// sorted ascending. Train size is `round(train_fraction * n)` clamped so
/// both sides are non-empty.
pub fn split_indices(n: usize, spec: &SplitSpec) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..n).collect();
    SeedStream::new(spec.seed).shuffle(&mut order);
    let n_train = ((spec.train_fraction * n as f64).round() as usize).clamp(1, n - 1);
    let mut train: Vec<usize> = order[..n_train].to_vec();
    let mut test: Vec<usize> = order[n_train..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

/// Splits the dataset into train and test subsets. Errors if either side
/// lacks a treated or a control unit (the split is not redrawn).
pub fn split(dataset: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset)> {
    let (train_idx, test_idx) = split_indices(dataset.n_units(), spec);
    let train = dataset.subset(&train_idx);
    let test = dataset.subset(&test_idx);
    for (name, side) in [("train", &train), ("test", &test)] {
        let treated = side.treatment.iter().filter(|&&t| t == 1).count();
        if treated == 0 || treated == side.n_units() {
            return Err(Error::DegenerateSplit(format!(
                "{name} split has {treated} treated of {} units (seed {})",
                side.n_units(),
                spec.seed
            )));
        }
    }
    Ok((train, test))
}
