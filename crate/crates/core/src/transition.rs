//! Exogenous-wage transition from human to AGI labor.
//!
//! With labor normalized so that `L_h = 1 - L_AGI`, human wages decay as
//! `w0 * exp(-lambda * L_AGI)` while AGI wages saturate at
//! `w_inf * (1 - exp(-lambda * L_AGI))`. The human economic power index is the
//! human share of total labor income,
//!
//! ```text
//! P_h = w_h (1 - L) / (w_h (1 - L) + w_AGI L)
//! ```
//!
//! evaluated with both labor weights kept, so `P_h(1) = 0` whenever `w_inf > 0`.

use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Denominators below this are treated as "no labor income at all".
pub const INCOME_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionParams {
    w0: f64,
    w_inf: f64,
    lambda: f64,
}

impl TransitionParams {
    pub fn new(w0: f64, w_inf: f64, lambda: f64) -> Result<Self> {
        let check = |name: &str, value: f64, ok: bool, reason: &'static str| {
            if value.is_finite() && ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name: name.to_string(),
                    value,
                    reason,
                })
            }
        };
        check("w0", w0, w0 > 0.0, "initial human wage must be positive")?;
        check(
            "w_inf",
            w_inf,
            w_inf >= 0.0,
            "AGI wage asymptote must be non-negative",
        )?;
        check(
            "lambda",
            lambda,
            lambda > 0.0,
            "decay constant must be positive",
        )?;
        Ok(Self { w0, w_inf, lambda })
    }

    pub fn w0(&self) -> f64 {
        self.w0
    }

    pub fn w_inf(&self) -> f64 {
        self.w_inf
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn human_wage(&self, l_agi: f64) -> Result<f64> {
        check_share(l_agi)?;
        Ok(self.w0 * (-self.lambda * l_agi).exp())
    }

    pub fn agi_wage(&self, l_agi: f64) -> Result<f64> {
        check_share(l_agi)?;
        Ok(-self.w_inf * (-self.lambda * l_agi).exp_m1())
    }

    pub fn human_power(&self, l_agi: f64) -> Result<f64> {
        let human = self.human_wage(l_agi)? * (1.0 - l_agi);
        let agi = self.agi_wage(l_agi)? * l_agi;
        let total = human + agi;
        if total < INCOME_FLOOR {
            return Err(Error::UndefinedIndex("total labor income is zero"));
        }
        Ok(human / total)
    }

    /// Terminal index with the labor weights dropped:
    /// `e^-lambda / (e^-lambda + (1 - e^-lambda))`. Reported next to
    /// [`Self::human_power`]`(1.0)` as a diagnostic only.
    pub fn unweighted_terminal_power(&self) -> f64 {
        let h = (-self.lambda).exp();
        let a = -(-self.lambda).exp_m1();
        h / (h + a)
    }

    pub fn power_curve(&self, n_points: usize) -> Result<Vec<PowerCurvePoint>> {
        self.power_curve_with(n_points, Execution::default())
    }

    /// Uniform grid `l_agi = i / (n - 1)`; points are independent so they may be
    /// evaluated in parallel, the result is identical either way.
    pub fn power_curve_with(
        &self,
        n_points: usize,
        exec: Execution,
    ) -> Result<Vec<PowerCurvePoint>> {
        if n_points < 2 {
            return Err(Error::Domain {
                name: "n_points",
                value: n_points as f64,
                domain: "[2, inf)",
            });
        }
        let last = (n_points - 1) as f64;
        exec::map_indexed(exec, n_points, |i| {
            let l_agi = i as f64 / last;
            Ok(PowerCurvePoint {
                l_agi,
                w_h: self.human_wage(l_agi)?,
                w_agi: self.agi_wage(l_agi)?,
                p_h: self.human_power(l_agi).ok(),
            })
        })
        .into_iter()
        .collect()
    }
}

/// One grid point of a power curve. `p_h` is `None` where the index is
/// undefined (no labor income).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerCurvePoint {
    pub l_agi: f64,
    pub w_h: f64,
    pub w_agi: f64,
    pub p_h: Option<f64>,
}

impl PowerCurvePoint {
    pub fn l_h(&self) -> f64 {
        1.0 - self.l_agi
    }
}

fn check_share(l_agi: f64) -> Result<()> {
    if (0.0..=1.0).contains(&l_agi) {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "l_agi",
            value: l_agi,
            domain: "[0, 1]",
        })
    }
}
