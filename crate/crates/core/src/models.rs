//! The three AGI production models as presets over [`CobbDouglas`].
//!
//! * Model I treats AGI as capital: `Y = A (K + K_AGI)^alpha L^beta`.
//! * Model II adds AGI labor next to human labor: `Y = A K^alpha L1^beta1 L2^beta2`.
//! * Model III separates AGI labor from AGI capital:
//!   `Y = A K^alpha K_AGI^gamma L_h^beta1 L_AGI^beta2`.
//!
//! Parameters are addressed by their conventional symbol names (`A`, `K`,
//! `K_AGI`, `L`, `L1`, `L2`, `L_h`, `L_AGI`, `alpha`, `beta`, `beta1`, `beta2`,
//! `gamma`); the config reader and the limit classifier both go through
//! [`ModelParams::get`] and [`ModelParams::set`].

use std::fmt;

use crate::error::{Error, Result};
use crate::production::{CobbDouglas, FactorBundle};

/// Name of Model I's combined-capital factor `K + K_AGI`.
pub const COMBINED_CAPITAL: &str = "K_new";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelId {
    I,
    II,
    III,
}

impl ModelId {
    pub fn name(self) -> &'static str {
        match self {
            Self::I => "MODEL_I",
            Self::II => "MODEL_II",
            Self::III => "MODEL_III",
        }
    }

    /// Every parameter symbol the model accepts, in canonical order.
    pub fn symbols(self) -> &'static [&'static str] {
        match self {
            Self::I => &["A", "K", "K_AGI", "L", "alpha", "beta"],
            Self::II => &["A", "K", "L1", "L2", "alpha", "beta1", "beta2"],
            Self::III => &[
                "A", "K", "K_AGI", "L_h", "L_AGI", "alpha", "gamma", "beta1", "beta2",
            ],
        }
    }

    pub fn labor_factors(self) -> &'static [&'static str] {
        match self {
            Self::I => &["L"],
            Self::II => &["L1", "L2"],
            Self::III => &["L_h", "L_AGI"],
        }
    }

    /// Symbols that are factor quantities (the rest are `A` and exponents).
    pub fn quantity_symbols(self) -> &'static [&'static str] {
        match self {
            Self::I => &["K", "K_AGI", "L"],
            Self::II => &["K", "L1", "L2"],
            Self::III => &["K", "K_AGI", "L_h", "L_AGI"],
        }
    }

    /// Production factor carrying the given exponent symbol.
    pub fn exponent_factor(self, symbol: &str) -> Option<&'static str> {
        let table: &[(&str, &str)] = match self {
            Self::I => &[("alpha", COMBINED_CAPITAL), ("beta", "L")],
            Self::II => &[("alpha", "K"), ("beta1", "L1"), ("beta2", "L2")],
            Self::III => &[
                ("alpha", "K"),
                ("gamma", "K_AGI"),
                ("beta1", "L_h"),
                ("beta2", "L_AGI"),
            ],
        };
        table.iter().find(|(s, _)| *s == symbol).map(|(_, f)| *f)
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// AGI as capital. `K_new = K + K_AGI` is derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelIParams {
    pub a: f64,
    pub k: f64,
    pub k_agi: f64,
    pub l: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl ModelIParams {
    pub fn combined_capital(&self) -> f64 {
        self.k + self.k_agi
    }
}

/// Human labor `L1` and AGI labor `L2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelIIParams {
    pub a: f64,
    pub k: f64,
    pub l1: f64,
    pub l2: f64,
    pub alpha: f64,
    pub beta1: f64,
    pub beta2: f64,
}

/// Traditional capital, AGI capital, human labor and AGI labor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelIIIParams {
    pub a: f64,
    pub k: f64,
    pub k_agi: f64,
    pub l_h: f64,
    pub l_agi: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub beta1: f64,
    pub beta2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    I(ModelIParams),
    II(ModelIIParams),
    III(ModelIIIParams),
}

impl From<ModelIParams> for ModelParams {
    fn from(p: ModelIParams) -> Self {
        Self::I(p)
    }
}

impl From<ModelIIParams> for ModelParams {
    fn from(p: ModelIIParams) -> Self {
        Self::II(p)
    }
}

impl From<ModelIIIParams> for ModelParams {
    fn from(p: ModelIIIParams) -> Self {
        Self::III(p)
    }
}

impl ModelParams {
    pub fn id(&self) -> ModelId {
        match self {
            Self::I(_) => ModelId::I,
            Self::II(_) => ModelId::II,
            Self::III(_) => ModelId::III,
        }
    }

    /// All-zero record (with `A = 1`) to be filled through [`Self::set`].
    pub fn empty(id: ModelId) -> Self {
        match id {
            ModelId::I => Self::I(ModelIParams {
                a: 1.0,
                k: 0.0,
                k_agi: 0.0,
                l: 0.0,
                alpha: 0.0,
                beta: 0.0,
            }),
            ModelId::II => Self::II(ModelIIParams {
                a: 1.0,
                k: 0.0,
                l1: 0.0,
                l2: 0.0,
                alpha: 0.0,
                beta1: 0.0,
                beta2: 0.0,
            }),
            ModelId::III => Self::III(ModelIIIParams {
                a: 1.0,
                k: 0.0,
                k_agi: 0.0,
                l_h: 0.0,
                l_agi: 0.0,
                alpha: 0.0,
                gamma: 0.0,
                beta1: 0.0,
                beta2: 0.0,
            }),
        }
    }

    fn slot_mut(&mut self, symbol: &str) -> Option<&mut f64> {
        match self {
            Self::I(p) => match symbol {
                "A" => Some(&mut p.a),
                "K" => Some(&mut p.k),
                "K_AGI" => Some(&mut p.k_agi),
                "L" => Some(&mut p.l),
                "alpha" => Some(&mut p.alpha),
                "beta" => Some(&mut p.beta),
                _ => None,
            },
            Self::II(p) => match symbol {
                "A" => Some(&mut p.a),
                "K" => Some(&mut p.k),
                "L1" => Some(&mut p.l1),
                "L2" => Some(&mut p.l2),
                "alpha" => Some(&mut p.alpha),
                "beta1" => Some(&mut p.beta1),
                "beta2" => Some(&mut p.beta2),
                _ => None,
            },
            Self::III(p) => match symbol {
                "A" => Some(&mut p.a),
                "K" => Some(&mut p.k),
                "K_AGI" => Some(&mut p.k_agi),
                "L_h" => Some(&mut p.l_h),
                "L_AGI" => Some(&mut p.l_agi),
                "alpha" => Some(&mut p.alpha),
                "gamma" => Some(&mut p.gamma),
                "beta1" => Some(&mut p.beta1),
                "beta2" => Some(&mut p.beta2),
                _ => None,
            },
        }
    }

    pub fn get(&self, symbol: &str) -> Option<f64> {
        let mut copy = *self;
        copy.slot_mut(symbol).map(|v| *v)
    }

    /// Overwrite one parameter by symbol name. No validation happens here.
    pub fn set(&mut self, symbol: &str, value: f64) -> Result<()> {
        let id = self.id();
        match self.slot_mut(symbol) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::UnknownTarget {
                model: id.name(),
                target: symbol.to_string(),
            }),
        }
    }

    pub fn with(&self, symbol: &str, value: f64) -> Result<Self> {
        let mut copy = *self;
        copy.set(symbol, value)?;
        Ok(copy)
    }

    pub fn validate(&self) -> Result<()> {
        let id = self.id();
        for &symbol in id.symbols() {
            let value = self.get(symbol).unwrap_or(f64::NAN);
            let reason = if !value.is_finite() {
                Some("must be finite")
            } else if symbol == "A" && value <= 0.0 {
                Some("total factor productivity must be positive")
            } else if id.quantity_symbols().contains(&symbol) && value < 0.0 {
                Some("factor quantity must be non-negative")
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Error::InvalidParameter {
                    name: symbol.to_string(),
                    value,
                    reason,
                });
            }
        }
        Ok(())
    }

    pub fn technology(&self) -> Result<CobbDouglas> {
        match self {
            Self::I(p) => CobbDouglas::new(p.a, [(COMBINED_CAPITAL, p.alpha), ("L", p.beta)]),
            Self::II(p) => {
                CobbDouglas::new(p.a, [("K", p.alpha), ("L1", p.beta1), ("L2", p.beta2)])
            }
            Self::III(p) => CobbDouglas::new(
                p.a,
                [
                    ("K", p.alpha),
                    ("K_AGI", p.gamma),
                    ("L_h", p.beta1),
                    ("L_AGI", p.beta2),
                ],
            ),
        }
    }

    pub fn bundle(&self) -> Result<FactorBundle> {
        match self {
            Self::I(p) => FactorBundle::new([(COMBINED_CAPITAL, p.combined_capital()), ("L", p.l)]),
            Self::II(p) => FactorBundle::new([("K", p.k), ("L1", p.l1), ("L2", p.l2)]),
            Self::III(p) => FactorBundle::new([
                ("K", p.k),
                ("K_AGI", p.k_agi),
                ("L_h", p.l_h),
                ("L_AGI", p.l_agi),
            ]),
        }
    }

    pub fn output(&self) -> Result<f64> {
        self.validate()?;
        self.technology()?.output(&self.bundle()?)
    }

    /// Competitive wage (marginal product) of one labor factor.
    pub fn wage(&self, labor: &str) -> Result<f64> {
        if !self.id().labor_factors().contains(&labor) {
            return Err(Error::UnknownObservable(labor.to_string()));
        }
        self.validate()?;
        self.technology()?.marginal_product(&self.bundle()?, labor)
    }

    /// Wages of every labor factor, in the model's canonical order.
    pub fn wages(&self) -> Result<Vec<(&'static str, f64)>> {
        self.id()
            .labor_factors()
            .iter()
            .map(|&f| self.wage(f).map(|w| (f, w)))
            .collect()
    }
}

/// Human share of labor income under Model III competitive wages,
/// `w_h L_h / (w_h L_h + w_AGI L_AGI)`, built from the wages themselves.
/// Under Cobb-Douglas this collapses to `beta1 / (beta1 + beta2)`.
pub fn power_index_model3(p: &ModelIIIParams) -> Result<f64> {
    if !(p.l_h > 0.0 && p.l_agi > 0.0) {
        return Err(Error::UndefinedIndex(
            "both labor quantities must be positive",
        ));
    }
    if p.beta1 < 0.0 || p.beta2 < 0.0 {
        return Err(Error::UndefinedIndex(
            "labor elasticities must be non-negative",
        ));
    }
    if p.beta1 + p.beta2 == 0.0 {
        return Err(Error::UndefinedIndex("labor elasticities sum to zero"));
    }
    let params = ModelParams::III(*p);
    let human = params.wage("L_h")? * p.l_h;
    let agi = params.wage("L_AGI")? * p.l_agi;
    Ok(human / (human + agi))
}
