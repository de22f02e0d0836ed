//! Synthetic benchmark generators.
//!
//! Each unit draws from its own substream (see [`crate::rng`]), so a unit's
//! values do not change when `n` or `ambient_dim` change. Per-unit draw order:
//! the intrinsic coordinate(s) first, then covariate noise in column order,
//! then the treatment uniform, then the Y(0) noise, then the Y(1) noise.

use std::f64::consts::PI;

use ndarray::{Array1, Array2};

use super::Dataset;
use crate::error::{Error, Result};
use crate::rng::SeedStream;

pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Untreated response surface of the swissroll benchmark.
pub fn swissroll_mu0(x: f64) -> f64 {
    -0.5 * x + 1.5 * PI
}

/// Treated response surface of the swissroll benchmark.
pub fn swissroll_mu1(x: f64) -> f64 {
    -1.5 * x + 4.5 * PI
}

/// Treatment probability along the roll, centered at the mid-roll angle 3*pi.
pub fn swissroll_propensity(r: f64) -> f64 {
    sigmoid(r - 3.0 * PI)
}

/// Untreated response of the U-strip benchmark.
pub fn ustrip_y0(z1: f64) -> f64 {
    z1
}

/// Treated response of the U-strip benchmark.
pub fn ustrip_y1(z1: f64) -> f64 {
    2.0 * z1
}

/// Shared response surface of the semi-synthetic assignment (treated and
/// untreated alike).
pub fn semisynthetic_mu(x: f64) -> f64 {
    0.4 * (x + 0.5).sin() + 0.5
}

/// Swissroll benchmark: covariates on a 3-D swissroll embedded in
/// `ambient_dim` dimensions, linear response surfaces in the roll angle.
///
/// Per unit: `R ~ U[1.5pi, 4.5pi]`, `(x0, x1) = (R cos R, R sin R)`,
/// `x2 ~ U[0, 8]`, `x3.. ~ N(0, sigma_x^2)`, `T ~ Bernoulli(sigmoid(R - 3pi))`,
/// `Y(t) = mu_t(R - 1.5pi) + sigma_y * N(0, 1)`.
pub fn generate_swissroll(
    n: usize,
    ambient_dim: usize,
    sigma_x: f64,
    sigma_y: f64,
    seed: u64,
) -> Result<Dataset> {
    if ambient_dim < 3 {
        return Err(Error::invalid(format!(
            "swissroll needs ambient_dim >= 3, got {ambient_dim}"
        )));
    }
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    if sigma_x < 0.0 || sigma_y < 0.0 {
        return Err(Error::invalid("noise scales must be non-negative"));
    }

    let mut covariates = Array2::zeros((n, ambient_dim));
    let mut treatment = vec![0u8; n];
    let mut y0 = Array1::zeros(n);
    let mut y1 = Array1::zeros(n);
    let mut intrinsic = Array1::zeros(n);

    for i in 0..n {
        let mut rng = SeedStream::substream(seed, i as u64);
        let r = rng.uniform(1.5 * PI, 4.5 * PI);
        covariates[[i, 0]] = r * r.cos();
        covariates[[i, 1]] = r * r.sin();
        covariates[[i, 2]] = rng.uniform(0.0, 8.0);
        for d in 3..ambient_dim {
            covariates[[i, d]] = rng.normal(0.0, sigma_x);
        }
        treatment[i] = u8::from(rng.bernoulli(swissroll_propensity(r)));
        let x = r - 1.5 * PI;
        y0[i] = swissroll_mu0(x) + sigma_y * rng.standard_normal();
        y1[i] = swissroll_mu1(x) + sigma_y * rng.standard_normal();
        intrinsic[i] = r;
    }

    finish_synthetic(covariates, treatment, y0, y1, intrinsic)
}

/// U-shaped strip benchmark: a half-annulus in the first two ambient
/// dimensions, extra dimensions pure Gaussian noise.
///
/// Per unit: `Z1 ~ U[0, 2pi]` (arc parameter), `Z2 ~ U[0, 1]` (strip width),
/// embedding `f(Z) = ((1 + 0.3 Z2) cos(Z1/2), (1 + 0.3 Z2) sin(Z1/2))`,
/// every covariate column gets `sigma_x * N(0, 1)` noise,
/// `T ~ Bernoulli(sigmoid(k (Z1 - z0)))`, `Y(0) = Z1 + sigma_y N`,
/// `Y(1) = 2 Z1 + sigma_y N`.
pub fn generate_ustrip(
    n: usize,
    ambient_dim: usize,
    sigma_x: f64,
    sigma_y: f64,
    sigmoid_k: f64,
    sigmoid_z0: f64,
    seed: u64,
) -> Result<Dataset> {
    if ambient_dim < 2 {
        return Err(Error::invalid(format!(
            "ustrip needs ambient_dim >= 2, got {ambient_dim}"
        )));
    }
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    if sigma_x < 0.0 || sigma_y < 0.0 {
        return Err(Error::invalid("noise scales must be non-negative"));
    }

    let mut covariates = Array2::zeros((n, ambient_dim));
    let mut treatment = vec![0u8; n];
    let mut y0 = Array1::zeros(n);
    let mut y1 = Array1::zeros(n);
    let mut intrinsic = Array1::zeros(n);

    for i in 0..n {
        let mut rng = SeedStream::substream(seed, i as u64);
        let z1 = rng.uniform(0.0, 2.0 * PI);
        let z2 = rng.uniform(0.0, 1.0);
        let radius = 1.0 + 0.3 * z2;
        covariates[[i, 0]] = radius * (z1 / 2.0).cos();
        covariates[[i, 1]] = radius * (z1 / 2.0).sin();
        for d in 0..ambient_dim {
            covariates[[i, d]] += rng.normal(0.0, sigma_x);
        }
        treatment[i] = u8::from(rng.bernoulli(sigmoid(sigmoid_k * (z1 - sigmoid_z0))));
        y0[i] = ustrip_y0(z1) + sigma_y * rng.standard_normal();
        y1[i] = ustrip_y1(z1) + sigma_y * rng.standard_normal();
        intrinsic[i] = z1;
    }

    finish_synthetic(covariates, treatment, y0, y1, intrinsic)
}

/// Attaches synthetic treatment and outcomes to user-supplied covariates,
/// using the sinusoidal response surface with identical treated and
/// untreated means (the true effect is zero in expectation).
///
/// Per unit: `T ~ Bernoulli(sigmoid(z))`, `Y(t) = mu(z) + sigma_y N(0, 1)`
/// where `z = latent_coord[i]`.
pub fn assign_semisynthetic(
    covariates: Array2<f64>,
    latent_coord: &Array1<f64>,
    sigma_y: f64,
    seed: u64,
) -> Result<Dataset> {
    let n = covariates.nrows();
    if latent_coord.len() != n {
        return Err(Error::invalid(format!(
            "latent_coord has length {}, expected {n}",
            latent_coord.len()
        )));
    }
    if sigma_y < 0.0 {
        return Err(Error::invalid("sigma_y must be non-negative"));
    }

    let mut treatment = vec![0u8; n];
    let mut y0 = Array1::zeros(n);
    let mut y1 = Array1::zeros(n);

    for i in 0..n {
        let mut rng = SeedStream::substream(seed, i as u64);
        let z = latent_coord[i];
        treatment[i] = u8::from(rng.bernoulli(sigmoid(z)));
        y0[i] = semisynthetic_mu(z) + sigma_y * rng.standard_normal();
        y1[i] = semisynthetic_mu(z) + sigma_y * rng.standard_normal();
    }

    finish_synthetic(covariates, treatment, y0, y1, latent_coord.clone())
}

fn finish_synthetic(
    covariates: Array2<f64>,
    treatment: Vec<u8>,
    y0: Array1<f64>,
    y1: Array1<f64>,
    intrinsic: Array1<f64>,
) -> Result<Dataset> {
    let n = covariates.nrows();
    let outcome = Array1::from_shape_fn(n, |i| if treatment[i] == 1 { y1[i] } else { y0[i] });
    let ite = &y1 - &y0;
    Dataset::new(
        covariates,
        treatment,
        outcome,
        Some(y0),
        Some(y1),
        Some(ite),
        Some(intrinsic),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swissroll_embedding_at_two_pi() {
        // (x0, x1) = (2pi cos 2pi, 2pi sin 2pi)
        let r = 2.0 * PI;
        let x0 = r * r.cos();
        let x1 = r * r.sin();
        assert!((x0 - 6.283185307179586).abs() < 1e-12);
        assert!((x1 - r * r.sin()).abs() < 1e-12);
        assert!(x1.abs() < 1e-14);
    }

    #[test]
    fn swissroll_response_at_inner_edge() {
        assert!((swissroll_mu0(0.0) - 1.5 * PI).abs() < 1e-12);
        assert!((swissroll_mu1(0.0) - 4.5 * PI).abs() < 1e-12);
        let ite = swissroll_mu1(0.0) - swissroll_mu0(0.0);
        assert!((ite - 3.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn swissroll_three_dims_without_noise_columns() {
        let ds = generate_swissroll(200, 3, 0.0, 0.1, 42).unwrap();
        assert_eq!(ds.n_covariates(), 3);
        for i in 0..ds.n_units() {
            let u = ds.covariates[[i, 2]];
            assert!((0.0..8.0).contains(&u), "column 2 must be U[0,8], got {u}");
        }
    }

    #[test]
    fn swissroll_is_deterministic() {
        let a = generate_swissroll(50, 5, 0.05, 0.1, 9).unwrap();
        let b = generate_swissroll(50, 5, 0.05, 0.1, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn swissroll_units_stable_across_ambient_dim() {
        let a = generate_swissroll(50, 3, 0.05, 0.1, 9).unwrap();
        let b = generate_swissroll(50, 25, 0.05, 0.1, 9).unwrap();
        for i in 0..50 {
            assert_eq!(a.intrinsic_coord.as_ref().unwrap()[i], b.intrinsic_coord.as_ref().unwrap()[i]);
            assert_eq!(a.treatment[i], b.treatment[i]);
            assert_eq!(a.outcome[i], b.outcome[i]);
        }
    }

    #[test]
    fn swissroll_lies_on_the_manifold_without_noise() {
        let ds = generate_swissroll(500, 3, 0.0, 0.1, 3).unwrap();
        let r = ds.intrinsic_coord.as_ref().unwrap();
        for i in 0..ds.n_units() {
            let x0 = ds.covariates[[i, 0]];
            let x1 = ds.covariates[[i, 1]];
            let radius = (x0 * x0 + x1 * x1).sqrt();
            assert!((radius - r[i]).abs() < 1e-9);
            // angle consistent with the roll parameter modulo 2pi
            let angle = x1.atan2(x0);
            let wrapped = {
                let mut a = r[i] % (2.0 * PI);
                if a > PI {
                    a -= 2.0 * PI;
                }
                a
            };
            let mut diff = (angle - wrapped).abs();
            if diff > PI {
                diff = 2.0 * PI - diff;
            }
            assert!(diff < 1e-9, "angle mismatch {diff}");
        }
    }

    #[test]
    fn swissroll_consistency_invariant() {
        let ds = generate_swissroll(300, 5, 0.05, 0.2, 17).unwrap();
        let y0 = ds.potential_y0.as_ref().unwrap();
        let y1 = ds.potential_y1.as_ref().unwrap();
        for i in 0..ds.n_units() {
            let expected = if ds.treatment[i] == 1 { y1[i] } else { y0[i] };
            assert_eq!(ds.outcome[i], expected);
        }
    }

    #[test]
    fn swissroll_treated_fraction_matches_quadrature() {
        // Simpson's rule for the mean of sigmoid(r - 3pi) over U[1.5pi, 4.5pi].
        let (lo, hi) = (1.5 * PI, 4.5 * PI);
        let m = 2000;
        let h = (hi - lo) / m as f64;
        let mut integral = swissroll_propensity(lo) + swissroll_propensity(hi);
        for j in 1..m {
            let w = if j % 2 == 1 { 4.0 } else { 2.0 };
            integral += w * swissroll_propensity(lo + j as f64 * h);
        }
        let analytic_mean = integral * h / 3.0 / (hi - lo);

        let n = 100_000;
        let ds = generate_swissroll(n, 3, 0.0, 0.0, 123).unwrap();
        let frac = ds.treatment.iter().map(|&t| t as f64).sum::<f64>() / n as f64;
        assert!(
            (frac - analytic_mean).abs() < 0.01,
            "frac {frac} vs analytic {analytic_mean}"
        );
    }

    #[test]
    fn ustrip_sigmoid_midpoint() {
        assert_eq!(sigmoid(2.0 * ((PI) - PI)), 0.5);
    }

    #[test]
    fn ustrip_noiseless_outcomes() {
        let ds = generate_ustrip(300, 2, 0.05, 0.0, 1.0, PI, 5).unwrap();
        let z1 = ds.intrinsic_coord.as_ref().unwrap();
        let y0 = ds.potential_y0.as_ref().unwrap();
        let y1 = ds.potential_y1.as_ref().unwrap();
        for i in 0..ds.n_units() {
            assert_eq!(y0[i], z1[i]);
            assert_eq!(y1[i], 2.0 * z1[i]);
            assert_eq!(ds.true_ite.as_ref().unwrap()[i], 2.0 * z1[i] - z1[i]);
        }
    }

    #[test]
    fn ustrip_mean_ite_is_pi() {
        // Monte-Carlo oracle for E[ITE] = E[Z1], Z1 ~ U[0, 2pi], drawn from an
        // independent stream.
        let mut oracle_rng = SeedStream::new(0xfeed);
        let draws = 1_000_000;
        let oracle: f64 = (0..draws)
            .map(|_| oracle_rng.uniform(0.0, 2.0 * PI))
            .sum::<f64>()
            / draws as f64;
        assert!((oracle - PI).abs() < 1e-2, "oracle {oracle}");

        let ds = generate_ustrip(200_000, 2, 0.0, 0.0, 1.0, PI, 77).unwrap();
        let mean_ite = ds.true_ate().unwrap();
        assert!((mean_ite - oracle).abs() < 1e-2, "mean ite {mean_ite}");
    }

    #[test]
    fn semisynthetic_response_value() {
        assert_eq!(sigmoid(0.0), 0.5);
        let v = semisynthetic_mu(0.0);
        assert!((v - (0.4 * 0.5f64.sin() + 0.5)).abs() < 1e-15);
        assert!((v - 0.6917702154416812).abs() < 1e-12);
    }

    #[test]
    fn semisynthetic_zero_ite_without_noise() {
        let covariates = Array2::from_shape_fn((20, 4), |(i, j)| (i * 4 + j) as f64 * 0.1);
        let latent = Array1::from_iter((0..20).map(|i| i as f64 * 0.3));
        let ds = assign_semisynthetic(covariates, &latent, 0.0, 11).unwrap();
        for &ite in ds.true_ite.as_ref().unwrap() {
            assert_eq!(ite, 0.0);
        }
        let y0 = ds.potential_y0.as_ref().unwrap();
        assert_eq!(y0[0], semisynthetic_mu(0.0));
    }

    #[test]
    fn semisynthetic_rejects_mismatched_lengths() {
        let covariates = Array2::zeros((10, 2));
        let latent = Array1::zeros(9);
        assert!(assign_semisynthetic(covariates, &latent, 0.1, 1).is_err());
    }

    #[test]
    fn generators_reject_bad_dims() {
        assert!(generate_swissroll(100, 2, 0.0, 0.1, 1).is_err());
        assert!(generate_swissroll(1, 3, 0.0, 0.1, 1).is_err());
        assert!(generate_ustrip(100, 1, 0.0, 0.1, 1.0, PI, 1).is_err());
    }
}
