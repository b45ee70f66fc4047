//! Log-linear least-squares recovery of Cobb-Douglas parameters.
//!
//! `ln Y = ln A + sum_i e_i ln x_i` is solved with a Householder QR
//! factorization of the design matrix `[1, ln x_1, ..., ln x_p]` (no normal
//! equations are formed), then back substitution on `R b = Q^T ln Y`. The
//! design is declared rank deficient when some `|R_jj|` falls below `1e-10`
//! times the largest `|R_jj|`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::production::FactorBundle;

pub const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub bundle: FactorBundle,
    pub output: f64,
}

impl Sample {
    pub fn new(bundle: FactorBundle, output: f64) -> Self {
        Self { bundle, output }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub tfp_estimate: f64,
    pub elasticity_estimates: Vec<(String, f64)>,
    pub residual_sum_squares: f64,
    pub sample_count: usize,
}

impl FitResult {
    pub fn elasticity(&self, factor: &str) -> Option<f64> {
        self.elasticity_estimates
            .iter()
            .find(|(n, _)| n == factor)
            .map(|(_, e)| *e)
    }
}

/// Log-space design matrix and response; rows follow sample order.
fn log_design(samples: &[Sample], factor_names: &[&str]) -> Result<(DMatrix<f64>, DVector<f64>)> {
    let cols = factor_names.len() + 1;
    let mut design = DMatrix::<f64>::zeros(samples.len(), cols);
    let mut response = DVector::<f64>::zeros(samples.len());
    for (row, sample) in samples.iter().enumerate() {
        if !(sample.output.is_finite() && sample.output > 0.0) {
            return Err(Error::Domain {
                name: "Y",
                value: sample.output,
                domain: "(0, inf)",
            });
        }
        response[row] = sample.output.ln();
        design[(row, 0)] = 1.0;
        for (j, name) in factor_names.iter().enumerate() {
            let x = sample
                .bundle
                .get(name)
                .ok_or_else(|| Error::MissingFactor(name.to_string()))?;
            if x <= 0.0 {
                return Err(Error::InvalidQuantity {
                    factor: name.to_string(),
                    value: x,
                });
            }
            design[(row, j + 1)] = x.ln();
        }
    }
    Ok((design, response))
}

/// Sum of squared log residuals of `(ln A, e_1, ..., e_p)` on the samples.
pub fn log_residual_sum_squares(
    samples: &[Sample],
    factor_names: &[&str],
    coefficients: &[f64],
) -> Result<f64> {
    let (design, response) = log_design(samples, factor_names)?;
    let beta = DVector::from_column_slice(coefficients);
    Ok((design * beta - response).norm_squared())
}

pub fn fit_cobb_douglas(samples: &[Sample], factor_names: &[&str]) -> Result<FitResult> {
    let cols = factor_names.len() + 1;
    if samples.len() < cols {
        return Err(Error::TooFewSamples {
            needed: cols,
            got: samples.len(),
        });
    }
    for (i, name) in factor_names.iter().enumerate() {
        if factor_names[..i].contains(name) {
            return Err(Error::DuplicateFactor(name.to_string()));
        }
    }
    let (design, response) = log_design(samples, factor_names)?;

    let qr = design.clone().qr();
    let r = qr.r();
    let scale = (0..cols).map(|j| r[(j, j)].abs()).fold(0.0, f64::max);
    let threshold = RANK_TOLERANCE * scale;
    for j in 0..cols {
        let d = r[(j, j)].abs();
        if d.is_nan() || d <= threshold {
            return Err(Error::RankDeficient {
                column: j,
                diagonal: d,
                threshold,
            });
        }
    }
    let rhs = qr.q().transpose() * &response;
    let coefficients = r
        .solve_upper_triangular(&rhs)
        .expect("diagonal checked non-zero above");
    let residual_sum_squares = (&design * &coefficients - &response).norm_squared();

    Ok(FitResult {
        tfp_estimate: coefficients[0].exp(),
        elasticity_estimates: factor_names
            .iter()
            .enumerate()
            .map(|(j, n)| (n.to_string(), coefficients[j + 1]))
            .collect(),
        residual_sum_squares,
        sample_count: samples.len(),
    })
}
