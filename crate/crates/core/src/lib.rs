//! Cobb-Douglas production models of AGI labor substitution.
//!
//! * [`production`]: N-factor Cobb-Douglas output, marginal products, Euler identity.
//! * [`models`]: the three AGI model presets and their competitive wages.
//! * [`limits`]: exact limit classification with numeric confirmation.
//! * [`transition`]: exponential wage transition and the human power index curve.
//! * [`scenario`]: time-stepped adoption scenarios over Model III.
//! * [`calibration`]: log-linear least-squares parameter recovery.
//! * [`cli`]: config parsing, number formatting, CSV/SVG artifacts and commands.

pub mod calibration;
pub mod cli;
pub mod error;
pub mod exec;
pub mod limits;
pub mod models;
pub mod production;
pub mod scenario;
pub mod transition;

pub use error::{Error, Result};
pub use exec::Execution;
pub use production::{CobbDouglas, FactorBundle, LimitClassification};
