//! N-factor Cobb-Douglas technology.
//!
//! `Y = A * prod(x_i ^ e_i)` with the power-rule marginal products. Factors are
//! addressed by name so the same engine serves every model in [`crate::models`].
//! A factor with elasticity zero never affects output (`0^0 = 1`); a zero
//! quantity with a positive elasticity gives zero output rather than an error.

use crate::error::{Error, Result};

/// Named, non-negative factor quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorBundle {
    entries: Vec<(String, f64)>,
}

impl FactorBundle {
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut out: Vec<(String, f64)> = Vec::new();
        for (name, quantity) in entries {
            let name = name.into();
            if !quantity.is_finite() || quantity < 0.0 {
                return Err(Error::InvalidQuantity {
                    factor: name,
                    value: quantity,
                });
            }
            if out.iter().any(|(n, _)| *n == name) {
                return Err(Error::DuplicateFactor(name));
            }
            out.push((name, quantity));
        }
        Ok(Self { entries: out })
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, q)| *q)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(n, q)| (n.as_str(), *q))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every quantity multiplied by `t`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.entries.iter().map(|(n, q)| (n.clone(), q * t)))
    }

    /// Copy with one quantity replaced (or appended if absent).
    pub fn with_quantity(&self, name: &str, quantity: f64) -> Result<Self> {
        let mut entries = self.entries.clone();
        match entries.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = quantity,
            None => entries.push((name.to_string(), quantity)),
        }
        Self::new(entries)
    }
}

/// Total factor productivity plus one elasticity per named factor.
#[derive(Debug, Clone, PartialEq)]
pub struct CobbDouglas {
    tfp: f64,
    elasticities: Vec<(String, f64)>,
}

impl CobbDouglas {
    pub fn new<I, S>(tfp: f64, elasticities: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        if !(tfp.is_finite() && tfp > 0.0) {
            return Err(Error::InvalidParameter {
                name: "A".into(),
                value: tfp,
                reason: "total factor productivity must be positive and finite",
            });
        }
        let mut out: Vec<(String, f64)> = Vec::new();
        for (name, exponent) in elasticities {
            let name = name.into();
            if !exponent.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: exponent,
                    reason: "elasticity must be finite",
                });
            }
            if out.iter().any(|(n, _)| *n == name) {
                return Err(Error::DuplicateFactor(name));
            }
            out.push((name, exponent));
        }
        Ok(Self {
            tfp,
            elasticities: out,
        })
    }

    pub fn tfp(&self) -> f64 {
        self.tfp
    }

    pub fn elasticity(&self, factor: &str) -> Option<f64> {
        self.elasticities
            .iter()
            .find(|(n, _)| n == factor)
            .map(|(_, e)| *e)
    }

    pub fn elasticities(&self) -> impl Iterator<Item = (&str, f64)> {
        self.elasticities.iter().map(|(n, e)| (n.as_str(), *e))
    }

    /// Sum of elasticities; 1 means constant returns to scale.
    pub fn homogeneity_degree(&self) -> f64 {
        self.elasticities.iter().map(|(_, e)| e).sum()
    }

    fn quantities<'a>(&'a self, bundle: &'a FactorBundle) -> Result<Vec<(&'a str, f64, f64)>> {
        self.elasticities
            .iter()
            .map(|(name, e)| {
                bundle
                    .get(name)
                    .map(|x| (name.as_str(), x, *e))
                    .ok_or_else(|| Error::MissingFactor(name.clone()))
            })
            .collect()
    }

    pub fn output(&self, bundle: &FactorBundle) -> Result<f64> {
        let terms = self.quantities(bundle)?;
        if let Some((name, _, _)) = terms.iter().find(|(_, x, e)| *x == 0.0 && *e < 0.0) {
            return Err(Error::NonFiniteOutput {
                factor: name.to_string(),
            });
        }
        let y = terms
            .iter()
            .fold(self.tfp, |acc, (_, x, e)| acc * x.powf(*e));
        if !y.is_finite() {
            let factor = terms.last().map(|t| t.0).unwrap_or("A").to_string();
            return Err(Error::NonFiniteOutput { factor });
        }
        Ok(y)
    }

    /// `dY/dx_f = e_f * A * x_f^(e_f - 1) * prod_{i != f} x_i^e_i`, evaluated in
    /// that closed form rather than as `e_f * Y / x_f`.
    pub fn marginal_product(&self, bundle: &FactorBundle, factor: &str) -> Result<f64> {
        let e_f = self
            .elasticity(factor)
            .ok_or_else(|| Error::UnknownFactor(factor.to_string()))?;
        let terms = self.quantities(bundle)?;
        let x_f = bundle
            .get(factor)
            .ok_or_else(|| Error::MissingFactor(factor.to_string()))?;
        if x_f == 0.0 {
            return Err(Error::NonFiniteDerivative {
                factor: factor.to_string(),
            });
        }
        let mut value = e_f * self.tfp * x_f.powf(e_f - 1.0);
        for (name, x, e) in terms {
            if name == factor {
                continue;
            }
            if x == 0.0 && e < 0.0 {
                return Err(Error::NonFiniteOutput {
                    factor: name.to_string(),
                });
            }
            value *= x.powf(e);
        }
        if !value.is_finite() {
            return Err(Error::NonFiniteDerivative {
                factor: factor.to_string(),
            });
        }
        Ok(value)
    }

    /// `sum_f x_f * MP_f - h * Y`; zero for any Cobb-Douglas technology.
    pub fn euler_residual(&self, bundle: &FactorBundle) -> Result<f64> {
        let y = self.output(bundle)?;
        let mut total = 0.0;
        for (name, _) in self.elasticities() {
            let x = bundle
                .get(name)
                .ok_or_else(|| Error::MissingFactor(name.to_string()))?;
            total += x * self.marginal_product(bundle, name)?;
        }
        Ok(total - self.homogeneity_degree() * y)
    }
}

/// Outcome of a limit: the expression vanishes, settles at a finite value, or
/// grows without bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitClassification {
    Zero,
    Finite(f64),
    Diverges,
}

impl LimitClassification {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Zero => "ZERO",
            Self::Finite(_) => "FINITE",
            Self::Diverges => "DIVERGES",
        }
    }
}

impl std::fmt::Display for LimitClassification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "FINITE({v})"),
            other => f.write_str(other.label()),
        }
    }
}
