//! CSV persistence for datasets.
//!
//! Schema: header row with columns `x0..x{D-1}` (required), `t` (required,
//! integer 0/1), `y` (required), and optional `y0`, `y1`, `ite`, `r`.
//! Floats are written in scientific notation with 17 significant digits,
//! which round-trips every finite f64 exactly.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use ndarray::{Array1, Array2};

use super::Dataset;
use crate::error::{Error, Result};

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the dataset to `path` using the documented schema.
pub fn save_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    let d = dataset.n_covariates();

    let mut header: Vec<String> = (0..d).map(|j| format!("x{j}")).collect();
    header.push("t".into());
    header.push("y".into());
    if dataset.potential_y0.is_some() {
        header.push("y0".into());
    }
    if dataset.potential_y1.is_some() {
        header.push("y1".into());
    }
    if dataset.true_ite.is_some() {
        header.push("ite".into());
    }
    if dataset.intrinsic_coord.is_some() {
        header.push("r".into());
    }
    writeln!(w, "{}", header.join(","))?;

    for i in 0..dataset.n_units() {
        let mut row: Vec<String> = (0..d).map(|j| fmt_f64(dataset.covariates[[i, j]])).collect();
        row.push(dataset.treatment[i].to_string());
        row.push(fmt_f64(dataset.outcome[i]));
        if let Some(v) = &dataset.potential_y0 {
            row.push(fmt_f64(v[i]));
        }
        if let Some(v) = &dataset.potential_y1 {
            row.push(fmt_f64(v[i]));
        }
        if let Some(v) = &dataset.true_ite {
            row.push(fmt_f64(v[i]));
        }
        if let Some(v) = &dataset.intrinsic_coord {
            row.push(fmt_f64(v[i]));
        }
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}

/// Loads a dataset from `path`, validating the schema and the
/// potential-outcome consistency invariant.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| Error::schema(path.display().to_string(), e.to_string()))?;

    let headers = reader
        .headers()
        .map_err(|e| Error::schema("header", e.to_string()))?
        .clone();
    let mut col_of: HashMap<String, usize> = HashMap::new();
    for (idx, name) in headers.iter().enumerate() {
        if col_of.insert(name.to_string(), idx).is_some() {
            return Err(Error::schema(format!("column `{name}`"), "duplicated"));
        }
    }

    // x-columns must be x0..x{D-1} with no gaps
    let mut x_indices: Vec<(usize, usize)> = Vec::new();
    for (name, &idx) in &col_of {
        if let Some(num) = name.strip_prefix('x') {
            if let Ok(j) = num.parse::<usize>() {
                x_indices.push((j, idx));
                continue;
            }
        }
        if !matches!(name.as_str(), "t" | "y" | "y0" | "y1" | "ite" | "r") {
            return Err(Error::schema(
                format!("column `{name}`"),
                "unknown column name",
            ));
        }
    }
    x_indices.sort_unstable();
    let d = x_indices.len();
    if d == 0 {
        return Err(Error::schema("header", "no covariate columns x0.."));
    }
    for (expect, &(j, _)) in x_indices.iter().enumerate() {
        if j != expect {
            return Err(Error::schema(
                format!("column `x{expect}`"),
                "missing from the contiguous x0.. range",
            ));
        }
    }
    let t_col = *col_of
        .get("t")
        .ok_or_else(|| Error::schema("column `t`", "missing required column"))?;
    let y_col = *col_of
        .get("y")
        .ok_or_else(|| Error::schema("column `y`", "missing required column"))?;
    let opt_col = |name: &str| col_of.get(name).copied();
    let (y0_col, y1_col, ite_col, r_col) =
        (opt_col("y0"), opt_col("y1"), opt_col("ite"), opt_col("r"));

    let parse_float = |field: &str, row: usize, col: &str| -> Result<f64> {
        field.trim().parse::<f64>().map_err(|_| {
            Error::schema(
                format!("row {row}, column `{col}`"),
                format!("cannot parse `{field}` as a number"),
            )
        })
    };

    let mut covariates: Vec<f64> = Vec::new();
    let mut treatment: Vec<u8> = Vec::new();
    let mut outcome: Vec<f64> = Vec::new();
    let mut y0: Vec<f64> = Vec::new();
    let mut y1: Vec<f64> = Vec::new();
    let mut ite: Vec<f64> = Vec::new();
    let mut r: Vec<f64> = Vec::new();

    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::schema(format!("row {row_idx}"), e.to_string()))?;
        for &(j, idx) in &x_indices {
            covariates.push(parse_float(&record[idx], row_idx, &format!("x{j}"))?);
        }
        let t_field = record[t_col].trim();
        match t_field {
            "0" => treatment.push(0),
            "1" => treatment.push(1),
            other => {
                return Err(Error::schema(
                    format!("row {row_idx}, column `t`"),
                    format!("treatment must be 0 or 1, got `{other}`"),
                ))
            }
        }
        outcome.push(parse_float(&record[y_col], row_idx, "y")?);
        if let Some(c) = y0_col {
            y0.push(parse_float(&record[c], row_idx, "y0")?);
        }
        if let Some(c) = y1_col {
            y1.push(parse_float(&record[c], row_idx, "y1")?);
        }
        if let Some(c) = ite_col {
            ite.push(parse_float(&record[c], row_idx, "ite")?);
        }
        if let Some(c) = r_col {
            r.push(parse_float(&record[c], row_idx, "r")?);
        }
    }

    let n = treatment.len();
    let covariates = Array2::from_shape_vec((n, d), covariates)
        .map_err(|e| Error::schema("body", e.to_string()))?;
    Dataset::new(
        covariates,
        treatment,
        Array1::from_vec(outcome),
        y0_col.map(|_| Array1::from_vec(y0)),
        y1_col.map(|_| Array1::from_vec(y1)),
        ite_col.map(|_| Array1::from_vec(ite)),
        r_col.map(|_| Array1::from_vec(r)),
    )
}
