//! Diagnostic suite behind the `check` command.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::Config;
use super::format::{format_number, format_optional};
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::limits::{classify_limit, Direction, Observable};
use crate::models::{power_index_model3, ModelIIIParams, ModelIIParams, ModelIParams, ModelParams};
use crate::production::{CobbDouglas, FactorBundle, LimitClassification};
use crate::transition::TransitionParams;

pub const EULER_TOLERANCE: f64 = 1e-10;
pub const HOMOGENEITY_TOLERANCE: f64 = 1e-12;
pub const GRADIENT_TOLERANCE: f64 = 1e-6;
pub const FD_RELATIVE_STEP: f64 = 1e-6;
pub const INDEX_TOLERANCE: f64 = 1e-12;

const FACTOR_NAMES: [&str; 5] = ["K", "K_AGI", "L_h", "L_AGI", "M"];

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub passed: bool,
    pub name: String,
    pub value: String,
}

impl Diagnostic {
    fn new(passed: bool, name: impl Into<String>, value: impl Into<String>) -> Self {
        Self {
            passed,
            name: name.into(),
            value: value.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} {}", self.name, self.value)
    }
}

/// Seeded technologies with 1..=5 factors, quantities in `[0.1, 10]`,
/// exponents in `[0.05, 1]` and TFP in `[0.5, 2]`.
pub fn random_instances(seed: u64, n: usize) -> Vec<(CobbDouglas, FactorBundle)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let k = rng.random_range(1..=FACTOR_NAMES.len());
            let names = &FACTOR_NAMES[..k];
            let exps: Vec<(&str, f64)> = names
                .iter()
                .map(|&n| (n, rng.random_range(0.05..=1.0)))
                .collect();
            let qs: Vec<(&str, f64)> = names
                .iter()
                .map(|&n| (n, rng.random_range(0.1..=10.0)))
                .collect();
            let tfp = rng.random_range(0.5..=2.0);
            (
                CobbDouglas::new(tfp, exps).expect("sampled exponents are finite"),
                FactorBundle::new(qs).expect("sampled quantities are positive"),
            )
        })
        .collect()
}

/// Worst `|euler_residual| / |Y|` over the instances.
pub fn max_euler_error(instances: &[(CobbDouglas, FactorBundle)], exec: Execution) -> Result<f64> {
    let errs = exec::map_slice(exec, instances, |(tech, bundle)| {
        let y = tech.output(bundle)?;
        Ok(tech.euler_residual(bundle)?.abs() / y.abs())
    });
    max_of(errs)
}

/// Worst relative error of `output(t x) = t^h output(x)`.
pub fn max_homogeneity_error(
    instances: &[(CobbDouglas, FactorBundle)],
    scales: &[f64],
    exec: Execution,
) -> Result<f64> {
    let errs = exec::map_slice(exec, instances, |(tech, bundle)| {
        let y = tech.output(bundle)?;
        let h = tech.homogeneity_degree();
        let mut worst: f64 = 0.0;
        for &t in scales {
            let scaled = tech.output(&bundle.scaled(t)?)?;
            let expected = t.powf(h) * y;
            worst = worst.max((scaled - expected).abs() / expected.abs());
        }
        Ok(worst)
    });
    max_of(errs)
}

/// Worst relative gap between analytic marginal products and central
/// differences with step `FD_RELATIVE_STEP * x_f`.
pub fn max_gradient_error(
    instances: &[(CobbDouglas, FactorBundle)],
    exec: Execution,
) -> Result<f64> {
    let errs = exec::map_slice(exec, instances, |(tech, bundle)| {
        let mut worst: f64 = 0.0;
        for (name, x) in bundle.iter() {
            let h = FD_RELATIVE_STEP * x;
            let up = tech.output(&bundle.with_quantity(name, x + h)?)?;
            let down = tech.output(&bundle.with_quantity(name, x - h)?)?;
            let numeric = (up - down) / (2.0 * h);
            let analytic = tech.marginal_product(bundle, name)?;
            worst = worst.max((analytic - numeric).abs() / analytic.abs());
        }
        Ok(worst)
    });
    max_of(errs)
}

fn max_of(values: Vec<Result<f64>>) -> Result<f64> {
    values
        .into_iter()
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
}

/// Seeded Model III records with positive quantities and labor elasticities.
pub fn random_model3(seed: u64, n: usize) -> Vec<ModelIIIParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| ModelIIIParams {
            a: rng.random_range(0.5..=2.0),
            k: rng.random_range(0.1..=10.0),
            k_agi: rng.random_range(0.1..=10.0),
            l_h: rng.random_range(0.1..=10.0),
            l_agi: rng.random_range(0.1..=10.0),
            alpha: rng.random_range(0.05..=1.0),
            gamma: rng.random_range(0.05..=1.0),
            beta1: rng.random_range(0.05..=1.0),
            beta2: rng.random_range(0.05..=1.0),
        })
        .collect()
}

fn random_transitions(seed: u64, n: usize, w_inf_min: f64) -> Vec<TransitionParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            TransitionParams::new(
                rng.random_range(0.1..=10.0),
                rng.random_range(w_inf_min..=10.0),
                rng.random_range(0.1..=20.0),
            )
            .expect("sampled transition parameters are valid")
        })
        .collect()
}

fn limit_diagnostic(
    name: &str,
    params: ModelParams,
    target: &str,
    direction: Direction,
    observable: Observable,
    expected: &str,
    note: Option<&str>,
) -> Diagnostic {
    match classify_limit(&params, target, direction, &observable) {
        Ok(c) => {
            let mut value = c.label().to_string();
            if let Some(note) = note {
                value.push(';');
                value.push_str(note);
            }
            Diagnostic::new(c.label() == expected, name, value)
        }
        Err(e) => Diagnostic::new(
            false,
            name,
            format!("error:{}", e.to_string().replace(' ', "_")),
        ),
    }
}

pub fn run_diagnostics(config: &Config, exec: Execution) -> Result<Vec<Diagnostic>> {
    let mut out = Vec::new();

    let instances = random_instances(1, 1000);
    let euler = max_euler_error(&instances, exec)?;
    out.push(Diagnostic::new(
        euler <= EULER_TOLERANCE,
        "euler_residual_max_rel",
        format_number(euler)?,
    ));
    let homog = max_homogeneity_error(&instances, &[0.5, 1.3, 2.0], exec)?;
    out.push(Diagnostic::new(
        homog <= HOMOGENEITY_TOLERANCE,
        "homogeneity_max_rel",
        format_number(homog)?,
    ));
    let grad = max_gradient_error(&instances, exec)?;
    out.push(Diagnostic::new(
        grad <= GRADIENT_TOLERANCE,
        "gradient_fd_max_rel",
        format_number(grad)?,
    ));

    let m3 = random_model3(2, 500);
    let gaps = exec::map_slice(exec, &m3, |p| {
        power_index_model3(p).map(|v| (v - p.beta1 / (p.beta1 + p.beta2)).abs())
    });
    let gap = max_of(gaps)?;
    out.push(Diagnostic::new(
        gap <= INDEX_TOLERANCE,
        "model3_power_identity_max_abs",
        format_number(gap)?,
    ));

    let mut start_gap: f64 = 0.0;
    for tp in random_transitions(3, 100, 0.0) {
        start_gap = start_gap.max((tp.human_power(0.0)? - 1.0).abs());
    }
    out.push(Diagnostic::new(
        start_gap <= INDEX_TOLERANCE,
        "power_at_zero_max_abs",
        format_number(start_gap)?,
    ));
    let mut end_gap: f64 = 0.0;
    for tp in random_transitions(4, 100, 1e-3) {
        end_gap = end_gap.max(tp.human_power(1.0)?.abs());
    }
    out.push(Diagnostic::new(
        end_gap <= INDEX_TOLERANCE,
        "power_at_one_max_abs",
        format_number(end_gap)?,
    ));

    let tp = config.transition.params;
    let p0 = tp.human_power(0.0)?;
    out.push(Diagnostic::new(
        (p0 - 1.0).abs() <= INDEX_TOLERANCE,
        "config_power_at_zero",
        format_number(p0)?,
    ));
    let p1 = tp.human_power(1.0).ok();
    let p1_ok = match p1 {
        Some(v) => tp.w_inf() > 0.0 && v.abs() <= INDEX_TOLERANCE,
        None => tp.w_inf() == 0.0,
    };
    out.push(Diagnostic::new(
        p1_ok,
        "config_power_at_one",
        format_optional(p1)?,
    ));

    // Full-automation index with and without the labor weights.
    for lambda in [1.0, 2.0, 5.0] {
        let t = TransitionParams::new(1.0, 1.0, lambda)?;
        let weighted = t.human_power(1.0)?;
        let unweighted = t.unweighted_terminal_power();
        out.push(Diagnostic::new(
            weighted.abs() <= INDEX_TOLERANCE,
            format!("terminal_power_lambda_{lambda}"),
            format!(
                "weighted={};unweighted={}",
                format_number(weighted)?,
                format_number(unweighted)?
            ),
        ));
    }

    let model_one = ModelParams::I(ModelIParams {
        a: 1.0,
        k: 1.0,
        k_agi: 1.0,
        l: 1.0,
        alpha: 0.5,
        beta: 0.5,
    });
    let model_two = ModelParams::II(ModelIIParams {
        a: 1.0,
        k: 1.0,
        l1: 1.0,
        l2: 1.0,
        alpha: 0.3,
        beta1: 0.4,
        beta2: 0.3,
    });
    out.push(limit_diagnostic(
        "limit_model_i_wage_as_labor_to_zero",
        model_one,
        "L",
        Direction::ToZeroPlus,
        Observable::wage("L"),
        LimitClassification::Diverges.label(),
        Some("claimed=ZERO"),
    ));
    out.push(limit_diagnostic(
        "limit_model_ii_human_wage_as_beta1_to_zero",
        model_two,
        "beta1",
        Direction::ToZeroPlus,
        Observable::wage("L1"),
        LimitClassification::Zero.label(),
        None,
    ));
    out.push(limit_diagnostic(
        "limit_model_i_output_as_agi_capital_to_infinity",
        model_one,
        "K_AGI",
        Direction::ToInfinity,
        Observable::Output,
        LimitClassification::Diverges.label(),
        None,
    ));

    if let Some(model) = &config.model {
        let y = model.output()?;
        out.push(Diagnostic::new(
            true,
            "config_model_output",
            format_number(y)?,
        ));
        let tech = model.technology()?;
        let bundle = model.bundle()?;
        match tech.euler_residual(&bundle) {
            Ok(r) => {
                let rel = if y == 0.0 { r.abs() } else { r.abs() / y.abs() };
                out.push(Diagnostic::new(
                    rel <= EULER_TOLERANCE,
                    "config_model_euler_rel",
                    format_number(rel)?,
                ));
            }
            Err(_) => out.push(Diagnostic::new(true, "config_model_euler_rel", "nan")),
        }
    }
    Ok(out)
}
