//! Geometry-aware treatment-effect matching.
//!
//! The pipeline: project covariates to a low-dimensional latent space
//! ([`manifold`]), equip it with a kernel-based Riemannian metric
//! ([`metric`]), compute geodesic distances between treated and control
//! units ([`geodesic`]), match along the manifold and estimate effects
//! ([`causal`]), and orchestrate seed sweeps and model selection
//! ([`experiment`]). [`data`] holds the dataset model and the synthetic
//! benchmarks.

pub mod causal;
pub mod data;
pub mod error;
pub mod experiment;
pub mod geodesic;
pub mod manifold;
pub mod metric;
pub mod rng;

pub use error::{Error, Result};
