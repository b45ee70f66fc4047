//! Time-stepped displacement scenario on top of Model III.
//!
//! An exogenous adoption share `s(t)` moves labor from humans to AGI
//! (`L_AGI = s`, `L_h = 1 - s`) and transfers output elasticity along with it
//! (`beta1_t = beta1_0 (1 - s)`, `beta2_t = beta2_0 + beta1_0 s`), so total
//! returns to scale stay fixed. AGI capital grows geometrically at rate `g` per
//! step. The adoption curves and the growth rule are modelling choices of this
//! crate, not derived quantities; all of them live in [`ScenarioConfig`].
//!
//! When a labor factor's quantity is exactly zero (`s = 0` or `s = 1`) it is
//! left out of the production product, and its wage is its elasticity times
//! the output of the remaining factors. That keeps a zero-elasticity factor at
//! a wage of exactly zero and never evaluates `0` to a negative power.

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::models::ModelIIIParams;
use crate::production::{CobbDouglas, FactorBundle};
use crate::transition::TransitionParams;

pub const DEFAULT_GROWTH: f64 = 0.05;
pub const DEFAULT_COLLAPSE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AdoptionPath {
    Linear,
    /// Logistic in `t`, affinely rescaled so `s(0) = 0` and `s(horizon) = 1`.
    Logistic {
        steepness: f64,
        midpoint: f64,
    },
    /// `(1 - e^{-rt}) / (1 - e^{-r horizon})`.
    ExpSaturating {
        rate: f64,
    },
}

impl AdoptionPath {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Linear => "linear",
            Self::Logistic { .. } => "logistic",
            Self::ExpSaturating { .. } => "exp_saturating",
        }
    }

    fn validate(&self, horizon: u32) -> Result<()> {
        match *self {
            Self::Linear => Ok(()),
            Self::Logistic {
                steepness,
                midpoint,
            } => {
                if !(steepness.is_finite() && steepness > 0.0) {
                    return Err(Error::InvalidScenario(format!(
                        "logistic steepness must be positive, got {steepness}"
                    )));
                }
                if !(0.0..=horizon as f64).contains(&midpoint) {
                    return Err(Error::InvalidScenario(format!(
                        "logistic midpoint {midpoint} outside [0, {horizon}]"
                    )));
                }
                let (lo, hi) = (
                    sigmoid(-steepness * midpoint),
                    sigmoid(steepness * (horizon as f64 - midpoint)),
                );
                if (hi - lo).is_nan() || hi - lo <= 0.0 {
                    return Err(Error::InvalidScenario(
                        "logistic path is flat over the horizon".into(),
                    ));
                }
                Ok(())
            }
            Self::ExpSaturating { rate } => {
                if rate.is_finite() && rate > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidScenario(format!(
                        "saturation rate must be positive, got {rate}"
                    )))
                }
            }
        }
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Share of labor performed by AGI at step `t`.
pub fn adoption_share(path: &AdoptionPath, t: u32, horizon: u32) -> Result<f64> {
    if horizon == 0 || t > horizon {
        return Err(Error::Domain {
            name: "t",
            value: t as f64,
            domain: "[0, horizon] with horizon >= 1",
        });
    }
    if t == horizon {
        return Ok(1.0);
    }
    let (t, h) = (t as f64, horizon as f64);
    let s = match *path {
        AdoptionPath::Linear => t / h,
        AdoptionPath::Logistic {
            steepness,
            midpoint,
        } => {
            let lo = sigmoid(-steepness * midpoint);
            let hi = sigmoid(steepness * (h - midpoint));
            (sigmoid(steepness * (t - midpoint)) - lo) / (hi - lo)
        }
        AdoptionPath::ExpSaturating { rate } => (-rate * t).exp_m1() / (-rate * h).exp_m1(),
    };
    Ok(s.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub horizon: u32,
    pub initial: ModelIIIParams,
    pub adoption: AdoptionPath,
    pub agi_capital_growth: f64,
    pub transition: TransitionParams,
    pub collapse_threshold: f64,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        if self.horizon == 0 || self.horizon > i32::MAX as u32 {
            return bad(format!(
                "horizon must be in [1, {}], got {}",
                i32::MAX,
                self.horizon
            ));
        }
        let p = &self.initial;
        crate::models::ModelParams::III(*p).validate()?;
        for (name, v) in [
            ("K", p.k),
            ("K_AGI", p.k_agi),
            ("L_h", p.l_h),
            ("L_AGI", p.l_agi),
        ] {
            if v <= 0.0 {
                return bad(format!("initial {name} must be positive, got {v}"));
            }
        }
        if p.beta1 <= 0.0 {
            return bad(format!("initial beta1 must be positive, got {}", p.beta1));
        }
        if p.beta2 < 0.0 {
            return bad(format!(
                "initial beta2 must be non-negative, got {}",
                p.beta2
            ));
        }
        if !(self.agi_capital_growth.is_finite() && self.agi_capital_growth >= 0.0) {
            return bad(format!(
                "growth must be finite and non-negative, got {}",
                self.agi_capital_growth
            ));
        }
        if !(self.collapse_threshold > 0.0 && self.collapse_threshold <= 1.0) {
            return bad(format!(
                "collapse_threshold must be in (0, 1], got {}",
                self.collapse_threshold
            ));
        }
        self.adoption.validate(self.horizon)
    }

    /// State of the economy at step `t` with adoption share `s`.
    pub fn record(&self, t: u32, s: f64) -> Result<TimeSeriesRecord> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Domain {
                name: "s",
                value: s,
                domain: "[0, 1]",
            });
        }
        let p = &self.initial;
        let beta1 = p.beta1 * (1.0 - s);
        let beta2 = p.beta2 + p.beta1 * s;
        let l_agi = s;
        let l_h = 1.0 - s;
        let k_agi = p.k_agi * (1.0 + self.agi_capital_growth).powi(t as i32);
        if !k_agi.is_finite() {
            return Err(Error::SimulationFailure {
                step: t,
                what: "K_AGI",
            });
        }
        let failed = |what: &'static str| {
            move |e: Error| match e {
                Error::NonFiniteOutput { .. } | Error::NonFiniteDerivative { .. } => {
                    Error::SimulationFailure { step: t, what }
                }
                other => other,
            }
        };

        let factors = [
            ("K", p.k, p.alpha),
            ("K_AGI", k_agi, p.gamma),
            ("L_h", l_h, beta1),
            ("L_AGI", l_agi, beta2),
        ];
        let present = factors.iter().filter(|(_, x, _)| *x > 0.0);
        let tech = CobbDouglas::new(p.a, present.clone().map(|(n, _, e)| (*n, *e)))?;
        let bundle = FactorBundle::new(present.map(|(n, x, _)| (*n, *x)))?;
        let y = tech.output(&bundle).map_err(failed("Y"))?;
        let wage = |name: &str, quantity: f64, elasticity: f64| {
            if quantity > 0.0 {
                tech.marginal_product(&bundle, name)
            } else {
                Ok(elasticity * y)
            }
        };
        let w_h = wage("L_h", l_h, beta1).map_err(failed("w_h"))?;
        let w_agi = wage("L_AGI", l_agi, beta2).map_err(failed("w_AGI"))?;

        let record = TimeSeriesRecord {
            t,
            s,
            beta1,
            beta2,
            k: p.k,
            k_agi,
            l_h,
            l_agi,
            y,
            w_h,
            w_agi,
            p_h_elastic: beta1 / (beta1 + beta2),
            p_h_transition: self.transition.human_power(s).ok(),
            wage_bill: w_h * l_h,
        };
        record.check_finite()?;
        Ok(record)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSeriesRecord {
    pub t: u32,
    pub s: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub k: f64,
    pub k_agi: f64,
    pub l_h: f64,
    pub l_agi: f64,
    pub y: f64,
    pub w_h: f64,
    pub w_agi: f64,
    /// `beta1_t / (beta1_t + beta2_t)`: the income-share index under
    /// competitive Model III wages.
    pub p_h_elastic: f64,
    /// Index of the exogenous-wage transition model at `L_AGI = s`; `None`
    /// where it is undefined.
    pub p_h_transition: Option<f64>,
    /// `w_h * L_h`, a proxy for wage-financed demand.
    pub wage_bill: f64,
}

impl TimeSeriesRecord {
    fn check_finite(&self) -> Result<()> {
        let fields = [
            ("K_AGI", self.k_agi),
            ("Y", self.y),
            ("w_h", self.w_h),
            ("w_AGI", self.w_agi),
            ("p_h_elastic", self.p_h_elastic),
            ("wage_bill", self.wage_bill),
        ];
        match fields.iter().find(|(_, v)| !v.is_finite()) {
            Some((what, _)) => Err(Error::SimulationFailure { step: self.t, what }),
            None => Ok(()),
        }
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Vec<TimeSeriesRecord>> {
    run_scenario_with(cfg, Execution::default())
}

/// Every step is a closed-form function of `t`, so steps are evaluated
/// independently; the series is returned in step order.
pub fn run_scenario_with(cfg: &ScenarioConfig, exec: Execution) -> Result<Vec<TimeSeriesRecord>> {
    cfg.validate()?;
    let steps = cfg.horizon as usize + 1;
    exec::map_indexed(exec, steps, |i| {
        let t = i as u32;
        let s = adoption_share(&cfg.adoption, t, cfg.horizon)?;
        cfg.record(t, s)
    })
    .into_iter()
    .collect()
}

/// First step whose human wage falls strictly below `theta * w_h(0)`.
pub fn detect_collapse(series: &[TimeSeriesRecord], theta: f64) -> Result<Option<u32>> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::Domain {
            name: "theta",
            value: theta,
            domain: "(0, 1]",
        });
    }
    let first = series
        .first()
        .ok_or_else(|| Error::InvalidScenario("empty series".into()))?;
    if first.w_h == 0.0 {
        return Err(Error::UndefinedBaseline);
    }
    let floor = theta * first.w_h;
    Ok(series.iter().find(|r| r.w_h < floor).map(|r| r.t))
}
