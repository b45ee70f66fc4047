//! Exact limit classification of model outputs and wages.
//!
//! The classifier reads the sign of the exponent that the moving symbol
//! carries in the closed-form expression, then confirms the verdict by
//! evaluating the model along `1e-3, 1e-6, 1e-9` (or `1e3, 1e6, 1e9`). A
//! verdict the probe contradicts is an error, not a silent answer.

use crate::error::{Error, Result};
use crate::models::{ModelId, ModelParams, COMBINED_CAPITAL};
use crate::production::LimitClassification;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ToZeroPlus,
    ToInfinity,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Self::ToZeroPlus => "-> 0+",
            Self::ToInfinity => "-> inf",
        }
    }

    pub fn probe_points(self) -> [f64; 3] {
        match self {
            Self::ToZeroPlus => [1e-3, 1e-6, 1e-9],
            Self::ToInfinity => [1e3, 1e6, 1e9],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Observable {
    Output,
    Wage(String),
}

impl Observable {
    pub fn wage(factor: &str) -> Self {
        Self::Wage(factor.to_string())
    }

    fn label(&self) -> String {
        match self {
            Self::Output => "Y".to_string(),
            Self::Wage(f) => format!("w({f})"),
        }
    }

    fn evaluate(&self, params: &ModelParams) -> Result<f64> {
        let value = match self {
            Self::Output => params.output(),
            Self::Wage(f) => params.wage(f),
        };
        match value {
            Err(Error::NonFiniteOutput { .. } | Error::NonFiniteDerivative { .. }) => {
                Ok(f64::INFINITY)
            }
            other => other,
        }
    }
}

/// How the production factor tied to a moving quantity behaves.
enum BaseMotion {
    Zero,
    Infinity,
    /// Tends to a positive constant (Model I capital when one summand vanishes).
    Settles,
}

pub fn classify_limit(
    params: &ModelParams,
    target: &str,
    direction: Direction,
    observable: &Observable,
) -> Result<LimitClassification> {
    params.validate()?;
    let id = params.id();
    if let Observable::Wage(f) = observable {
        if !id.labor_factors().contains(&f.as_str()) {
            return Err(Error::UnknownObservable(f.clone()));
        }
    }
    if params.get(target).is_none() {
        return Err(Error::UnknownTarget {
            model: id.name(),
            target: target.to_string(),
        });
    }
    for &q in id.quantity_symbols() {
        let v = params.get(q).unwrap_or(0.0);
        if q != target && v <= 0.0 {
            return Err(Error::InvalidParameter {
                name: q.to_string(),
                value: v,
                reason: "non-target quantities must be strictly positive",
            });
        }
    }

    let symbolic = symbolic_limit(params, target, direction, observable)?;
    let probe = direction
        .probe_points()
        .iter()
        .map(|&v| observable.evaluate(&params.with(target, v)?))
        .collect::<Result<Vec<f64>>>()?;
    if !probe_agrees(&symbolic, &probe) {
        return Err(Error::LimitMismatch {
            observable: observable.label(),
            target: target.to_string(),
            direction: direction.label(),
            symbolic: symbolic.to_string(),
            probe,
        });
    }
    Ok(symbolic)
}

fn symbolic_limit(
    params: &ModelParams,
    target: &str,
    direction: Direction,
    observable: &Observable,
) -> Result<LimitClassification> {
    let id = params.id();
    let tech = params.technology()?;
    let wage_factor = match observable {
        Observable::Output => None,
        Observable::Wage(f) => Some(f.as_str()),
    };
    // A wage whose elasticity prefactor is zero is identically zero, unless
    // that very elasticity is what moves.
    if let Some(f) = wage_factor {
        let own_exponent = exponent_symbol(id, f);
        if tech.elasticity(f) == Some(0.0) && own_exponent != Some(target) {
            return Ok(LimitClassification::Finite(0.0));
        }
    }
    let power_of = |factor: &str| -> f64 {
        let e = tech.elasticity(factor).unwrap_or(0.0);
        if wage_factor == Some(factor) {
            e - 1.0
        } else {
            e
        }
    };
    // Value of the expression once the target sits at its limit, for the
    // cases where that value is finite and attainable.
    let settled = |value: f64| -> Result<LimitClassification> {
        Ok(LimitClassification::Finite(
            observable.evaluate(&params.with(target, value)?)?,
        ))
    };

    if target == "A" {
        return Ok(match direction {
            Direction::ToZeroPlus => LimitClassification::Zero,
            Direction::ToInfinity => LimitClassification::Diverges,
        });
    }

    if let Some(factor) = id.exponent_factor(target) {
        let base = params.bundle()?.get(factor).unwrap_or(0.0);
        let carries_prefactor = wage_factor == Some(factor);
        return match direction {
            Direction::ToZeroPlus if carries_prefactor => Ok(LimitClassification::Zero),
            Direction::ToZeroPlus => settled(0.0),
            Direction::ToInfinity => Ok(if base > 1.0 {
                LimitClassification::Diverges
            } else if base < 1.0 {
                LimitClassification::Zero
            } else if carries_prefactor {
                LimitClassification::Diverges
            } else {
                // base^e == 1 for every e; evaluate anywhere
                LimitClassification::Finite(observable.evaluate(params)?)
            }),
        };
    }

    let (factor, motion) = match (id, target, direction) {
        (ModelId::I, "K" | "K_AGI", Direction::ToInfinity) => {
            (COMBINED_CAPITAL, BaseMotion::Infinity)
        }
        (ModelId::I, "K" | "K_AGI", Direction::ToZeroPlus) => {
            (COMBINED_CAPITAL, BaseMotion::Settles)
        }
        (_, q, Direction::ToZeroPlus) => (q, BaseMotion::Zero),
        (_, q, Direction::ToInfinity) => (q, BaseMotion::Infinity),
    };
    let p = power_of(factor);
    Ok(match motion {
        BaseMotion::Settles => return settled(0.0),
        BaseMotion::Zero if p < 0.0 => LimitClassification::Diverges,
        BaseMotion::Zero if p > 0.0 => LimitClassification::Zero,
        BaseMotion::Infinity if p > 0.0 => LimitClassification::Diverges,
        BaseMotion::Infinity if p < 0.0 => LimitClassification::Zero,
        // power zero: the moving quantity drops out of the expression
        _ => LimitClassification::Finite(observable.evaluate(params)?),
    })
}

fn exponent_symbol(id: ModelId, factor: &str) -> Option<&'static str> {
    id.symbols()
        .iter()
        .copied()
        .find(|s| id.exponent_factor(s) == Some(factor))
}

fn probe_agrees(symbolic: &LimitClassification, probe: &[f64]) -> bool {
    let mags: Vec<f64> = probe.iter().map(|v| v.abs()).collect();
    let first = mags[0];
    let last = mags[mags.len() - 1];
    match symbolic {
        LimitClassification::Zero => mags.windows(2).all(|w| w[1] <= w[0]) && last < first,
        LimitClassification::Diverges => {
            mags.windows(2).all(|w| w[1] >= w[0]) && (last > first || last.is_infinite())
        }
        LimitClassification::Finite(c) => {
            let tol = 1e-6 * c.abs() + f64::MIN_POSITIVE;
            probe[probe.len() - 1].is_finite() && (probe[probe.len() - 1] - c).abs() <= tol
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{ModelIIIParams, ModelIIParams, ModelIParams};

    fn model_one(beta: f64) -> ModelParams {
        ModelParams::I(ModelIParams {
            a: 1.0,
            k: 2.0,
            k_agi: 3.0,
            l: 4.0,
            alpha: 0.5,
            beta,
        })
    }

    fn model_two() -> ModelParams {
        ModelParams::II(ModelIIParams {
            a: 1.5,
            k: 2.0,
            l1: 3.0,
            l2: 0.5,
            alpha: 0.3,
            beta1: 0.4,
            beta2: 0.3,
        })
    }

    fn model_three() -> ModelParams {
        ModelParams::III(ModelIIIParams {
            a: 1.0,
            k: 2.0,
            k_agi: 3.0,
            l_h: 0.7,
            l_agi: 2.0,
            alpha: 0.2,
            gamma: 0.3,
            beta1: 0.4,
            beta2: 0.2,
        })
    }

    #[test]
    fn model_one_wage_diverges_as_labor_vanishes() {
        let c = classify_limit(
            &model_one(0.5),
            "L",
            Direction::ToZeroPlus,
            &Observable::wage("L"),
        )
        .unwrap();
        assert_eq!(c, LimitClassification::Diverges);
    }

    #[test]
    fn model_two_human_wage_vanishes_with_its_elasticity() {
        let c = classify_limit(
            &model_two(),
            "beta1",
            Direction::ToZeroPlus,
            &Observable::wage("L1"),
        )
        .unwrap();
        assert_eq!(c, LimitClassification::Zero);
    }

    #[test]
    fn model_one_output_diverges_with_agi_capital() {
        let c = classify_limit(
            &model_one(0.5),
            "K_AGI",
            Direction::ToInfinity,
            &Observable::Output,
        )
        .unwrap();
        assert_eq!(c, LimitClassification::Diverges);
    }

    #[test]
    fn model_one_capital_summand_vanishing_settles() {
        let p = model_one(0.5);
        let c = classify_limit(&p, "K_AGI", Direction::ToZeroPlus, &Observable::Output).unwrap();
        let expected = p.with("K_AGI", 0.0).unwrap().output().unwrap();
        assert_eq!(c, LimitClassification::Finite(expected));
    }

    #[test]
    fn unit_elasticity_wage_does_not_depend_on_labor() {
        let p = model_one(1.0);
        let c = classify_limit(&p, "L", Direction::ToZeroPlus, &Observable::wage("L")).unwrap();
        assert_eq!(c.label(), "FINITE");
    }

    #[test]
    fn every_supported_combination_matches_its_probe() {
        for params in [model_one(0.5), model_one(1.4), model_two(), model_three()] {
            let id = params.id();
            let mut observables = vec![Observable::Output];
            observables.extend(id.labor_factors().iter().map(|f| Observable::wage(f)));
            for &target in id.symbols() {
                for direction in [Direction::ToZeroPlus, Direction::ToInfinity] {
                    for obs in &observables {
                        let r = classify_limit(&params, target, direction, obs);
                        assert!(r.is_ok(), "{id} {target} {direction:?} {obs:?}: {r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_foreign_targets_and_observables() {
        let p = model_two();
        assert!(matches!(
            classify_limit(&p, "gamma", Direction::ToZeroPlus, &Observable::Output),
            Err(Error::UnknownTarget { .. })
        ));
        assert!(matches!(
            classify_limit(&p, "L1", Direction::ToZeroPlus, &Observable::wage("K")),
            Err(Error::UnknownObservable(_))
        ));
    }

    #[test]
    fn requires_positive_non_target_quantities() {
        let p = model_two().with("L2", 0.0).unwrap();
        assert!(classify_limit(&p, "L1", Direction::ToZeroPlus, &Observable::Output).is_err());
    }
}
