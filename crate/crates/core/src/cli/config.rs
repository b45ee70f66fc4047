//! INI-style configuration.
//!
//! ```text
//! # comment
//! [model]
//! model = III
//! A = 1
//! K = 16
//! ...
//! [transition]
//! lambda = 2
//! [scenario]
//! horizon = 50
//! adoption = logistic
//! k = 0.3
//! t0 = 25
//! [fit]
//! factors = K, L
//! input = samples.csv
//! ```
//!
//! Every section is optional at parse time; commands ask for what they need.
//! Unknown sections and keys are rejected, and every error names its
//! `[section].key` location.

use std::fmt;
use std::path::PathBuf;

use crate::models::{ModelIIIParams, ModelId, ModelParams};
use crate::scenario::{AdoptionPath, ScenarioConfig, DEFAULT_COLLAPSE_THRESHOLD, DEFAULT_GROWTH};
use crate::transition::TransitionParams;

pub const DEFAULT_POINTS: usize = 101;
pub const DEFAULT_W0: f64 = 1.0;
pub const DEFAULT_W_INF: f64 = 1.0;
pub const DEFAULT_LAMBDA: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub section: Option<String>,
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    fn at(section: &str, key: &str, message: impl Into<String>) -> Self {
        Self {
            line: None,
            section: Some(section.to_string()),
            key: Some(key.to_string()),
            message: message.into(),
        }
    }

    fn section(section: &str, message: impl Into<String>) -> Self {
        Self {
            line: None,
            section: Some(section.to_string()),
            key: None,
            message: message.into(),
        }
    }

    fn line(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            section: None,
            key: None,
            message: message.into(),
        }
    }

    fn on_line(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }

    fn with_section(mut self, section: &str) -> Self {
        self.section = Some(section.to_string());
        self
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        match (&self.section, &self.key) {
            (Some(s), Some(k)) => write!(f, "[{s}].{k}: ")?,
            (Some(s), None) => write!(f, "[{s}]: ")?,
            _ => {}
        }
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionSettings {
    pub params: TransitionParams,
    pub n_points: usize,
}

impl Default for TransitionSettings {
    fn default() -> Self {
        Self {
            params: TransitionParams::new(DEFAULT_W0, DEFAULT_W_INF, DEFAULT_LAMBDA)
                .expect("defaults are valid"),
            n_points: DEFAULT_POINTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioSettings {
    pub horizon: u32,
    pub adoption: AdoptionPath,
    pub growth: f64,
    pub collapse_threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitSpec {
    pub factors: Vec<String>,
    /// As written; relative paths are resolved against the config file's directory.
    pub input: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Config {
    pub model: Option<ModelParams>,
    pub transition: TransitionSettings,
    pub scenario: Option<ScenarioSettings>,
    pub fit: Option<FitSpec>,
}

impl Config {
    pub fn require_model(&self) -> Result<&ModelParams, ConfigError> {
        self.model
            .as_ref()
            .ok_or_else(|| ConfigError::section("model", "section is required for this command"))
    }

    pub fn require_fit(&self) -> Result<&FitSpec, ConfigError> {
        self.fit
            .as_ref()
            .ok_or_else(|| ConfigError::section("fit", "section is required for this command"))
    }

    /// `[scenario]` joined with a Model III `[model]` and `[transition]`.
    pub fn scenario_config(&self) -> Result<ScenarioConfig, ConfigError> {
        let settings = self.scenario.ok_or_else(|| {
            ConfigError::section("scenario", "section is required for this command")
        })?;
        let initial: ModelIIIParams = match self.require_model()? {
            ModelParams::III(p) => *p,
            other => {
                return Err(ConfigError::at(
                    "model",
                    "model",
                    format!("scenarios run on MODEL_III, got {}", other.id()),
                ))
            }
        };
        let cfg = ScenarioConfig {
            horizon: settings.horizon,
            initial,
            adoption: settings.adoption,
            agi_capital_growth: settings.growth,
            transition: self.transition.params,
            collapse_threshold: settings.collapse_threshold,
        };
        cfg.validate()
            .map_err(|e| ConfigError::section("scenario", e.to_string()))?;
        Ok(cfg)
    }

    /// Canonical text form; `parse_config(&c.to_ini()) == Ok(c)`.
    pub fn to_ini(&self) -> String {
        let mut out = String::new();
        if let Some(model) = &self.model {
            let id = model.id();
            out.push_str("[model]\n");
            out.push_str(&format!("model = {}\n", roman(id)));
            for &symbol in id.symbols() {
                out.push_str(&format!(
                    "{symbol} = {}\n",
                    model.get(symbol).unwrap_or(0.0)
                ));
            }
            out.push('\n');
        }
        let t = &self.transition;
        out.push_str("[transition]\n");
        out.push_str(&format!("w0 = {}\n", t.params.w0()));
        out.push_str(&format!("w_inf = {}\n", t.params.w_inf()));
        out.push_str(&format!("lambda = {}\n", t.params.lambda()));
        out.push_str(&format!("n_points = {}\n", t.n_points));
        if let Some(s) = &self.scenario {
            out.push_str("\n[scenario]\n");
            out.push_str(&format!("horizon = {}\n", s.horizon));
            out.push_str(&format!("adoption = {}\n", s.adoption.name()));
            match s.adoption {
                AdoptionPath::Linear => {}
                AdoptionPath::Logistic {
                    steepness,
                    midpoint,
                } => {
                    out.push_str(&format!("k = {steepness}\n"));
                    out.push_str(&format!("t0 = {midpoint}\n"));
                }
                AdoptionPath::ExpSaturating { rate } => out.push_str(&format!("r = {rate}\n")),
            }
            out.push_str(&format!("growth = {}\n", s.growth));
            out.push_str(&format!("collapse_threshold = {}\n", s.collapse_threshold));
        }
        if let Some(f) = &self.fit {
            out.push_str("\n[fit]\n");
            out.push_str(&format!("factors = {}\n", f.factors.join(", ")));
            out.push_str(&format!("input = {}\n", f.input.display()));
        }
        out
    }
}

fn roman(id: ModelId) -> &'static str {
    match id {
        ModelId::I => "I",
        ModelId::II => "II",
        ModelId::III => "III",
    }
}

const SECTIONS: [&str; 4] = ["model", "transition", "scenario", "fit"];

/// Raw `key = value` pairs of one section, with their line numbers.
#[derive(Default)]
struct RawSection {
    entries: Vec<(String, String, usize)>,
    consumed: Vec<String>,
}

impl RawSection {
    fn take(&mut self, key: &str) -> Option<(String, usize)> {
        let hit = self
            .entries
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, line)| (v.clone(), *line));
        if hit.is_some() {
            self.consumed.push(key.to_string());
        }
        hit
    }

    fn leftover(&self) -> Option<&(String, String, usize)> {
        self.entries
            .iter()
            .find(|(k, _, _)| !self.consumed.contains(k))
    }
}

fn split_sections(text: &str) -> Result<Vec<(String, RawSection)>, ConfigError> {
    let mut sections: Vec<(String, RawSection)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::line(line_no, "unterminated section header"))?
                .trim();
            if !SECTIONS.contains(&name) {
                return Err(ConfigError::line(
                    line_no,
                    format!("unknown section [{name}]"),
                ));
            }
            if sections.iter().any(|(n, _)| n == name) {
                return Err(ConfigError::line(
                    line_no,
                    format!("duplicate section [{name}]"),
                ));
            }
            sections.push((name.to_string(), RawSection::default()));
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::line(line_no, format!("expected `key = value`, got `{line}`"))
        })?;
        let (key, value) = (key.trim(), value.trim());
        let (name, section) = sections.last_mut().ok_or_else(|| {
            ConfigError::line(line_no, format!("key `{key}` outside any section"))
        })?;
        if key.is_empty() {
            return Err(ConfigError::line(line_no, "empty key").with_section(name));
        }
        if section.entries.iter().any(|(k, _, _)| k == key) {
            return Err(ConfigError::at(name, key, "duplicate key").on_line(line_no));
        }
        section
            .entries
            .push((key.to_string(), value.to_string(), line_no));
    }
    Ok(sections)
}

fn number(section: &str, key: &str, raw: &str, line: usize) -> Result<f64, ConfigError> {
    raw.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| {
            ConfigError::at(section, key, format!("`{raw}` is not a finite number")).on_line(line)
        })
}

fn integer<T: std::str::FromStr>(
    section: &str,
    key: &str,
    raw: &str,
    line: usize,
) -> Result<T, ConfigError> {
    raw.parse::<T>().map_err(|_| {
        ConfigError::at(
            section,
            key,
            format!("`{raw}` is not a non-negative integer"),
        )
        .on_line(line)
    })
}

fn optional_number(
    raw: &mut RawSection,
    section: &str,
    key: &str,
    default: f64,
) -> Result<f64, ConfigError> {
    match raw.take(key) {
        Some((v, line)) => number(section, key, &v, line),
        None => Ok(default),
    }
}

fn required_number(raw: &mut RawSection, section: &str, key: &str) -> Result<f64, ConfigError> {
    let (v, line) = raw
        .take(key)
        .ok_or_else(|| ConfigError::at(section, key, "missing required key"))?;
    number(section, key, &v, line)
}

fn reject_leftover(raw: &RawSection, section: &str, why: &str) -> Result<(), ConfigError> {
    match raw.leftover() {
        Some((key, _, line)) => Err(ConfigError::at(section, key, why).on_line(*line)),
        None => Ok(()),
    }
}

fn parse_model(mut raw: RawSection) -> Result<ModelParams, ConfigError> {
    let (id_text, line) = raw
        .take("model")
        .ok_or_else(|| ConfigError::at("model", "model", "missing required key (I, II or III)"))?;
    let id = match id_text.to_ascii_uppercase().as_str() {
        "I" | "1" | "MODEL_I" => ModelId::I,
        "II" | "2" | "MODEL_II" => ModelId::II,
        "III" | "3" | "MODEL_III" => ModelId::III,
        _ => {
            return Err(ConfigError::at(
                "model",
                "model",
                format!("unknown model `{id_text}`, expected I, II or III"),
            )
            .on_line(line))
        }
    };
    let mut params = ModelParams::empty(id);
    for &symbol in id.symbols() {
        let value = required_number(&mut raw, "model", symbol)?;
        params
            .set(symbol, value)
            .expect("symbol comes from the model's own table");
    }
    reject_leftover(&raw, "model", &format!("unknown key for {id}"))?;
    params.validate().map_err(|e| match e {
        crate::Error::InvalidParameter { ref name, .. } => {
            ConfigError::at("model", name, e.to_string())
        }
        other => ConfigError::section("model", other.to_string()),
    })?;
    Ok(params)
}

fn parse_transition(mut raw: RawSection) -> Result<TransitionSettings, ConfigError> {
    let w0 = optional_number(&mut raw, "transition", "w0", DEFAULT_W0)?;
    let w_inf = optional_number(&mut raw, "transition", "w_inf", DEFAULT_W_INF)?;
    let lambda = optional_number(&mut raw, "transition", "lambda", DEFAULT_LAMBDA)?;
    let n_points = match raw.take("n_points") {
        Some((v, line)) => integer::<usize>("transition", "n_points", &v, line)?,
        None => DEFAULT_POINTS,
    };
    reject_leftover(&raw, "transition", "unknown key")?;
    if n_points < 2 {
        return Err(ConfigError::at(
            "transition",
            "n_points",
            "must be at least 2",
        ));
    }
    let params = TransitionParams::new(w0, w_inf, lambda).map_err(|e| match e {
        crate::Error::InvalidParameter { ref name, .. } => {
            ConfigError::at("transition", name, e.to_string())
        }
        other => ConfigError::section("transition", other.to_string()),
    })?;
    Ok(TransitionSettings { params, n_points })
}

fn parse_scenario(mut raw: RawSection) -> Result<ScenarioSettings, ConfigError> {
    let (h, line) = raw
        .take("horizon")
        .ok_or_else(|| ConfigError::at("scenario", "horizon", "missing required key"))?;
    let horizon: u32 = integer("scenario", "horizon", &h, line)?;
    if horizon == 0 {
        return Err(ConfigError::at("scenario", "horizon", "must be at least 1").on_line(line));
    }
    let kind = raw
        .take("adoption")
        .map(|(v, line)| (v.to_ascii_lowercase(), line));
    let adoption = match kind.as_ref().map(|(v, l)| (v.as_str(), *l)) {
        None | Some(("linear", _)) => AdoptionPath::Linear,
        Some(("logistic", _)) => AdoptionPath::Logistic {
            steepness: required_number(&mut raw, "scenario", "k")?,
            midpoint: required_number(&mut raw, "scenario", "t0")?,
        },
        Some(("exp_saturating", _)) => AdoptionPath::ExpSaturating {
            rate: required_number(&mut raw, "scenario", "r")?,
        },
        Some((other, line)) => {
            return Err(ConfigError::at(
                "scenario",
                "adoption",
                format!("unknown adoption `{other}`, expected linear, logistic or exp_saturating"),
            )
            .on_line(line))
        }
    };
    let growth = optional_number(&mut raw, "scenario", "growth", DEFAULT_GROWTH)?;
    let collapse_threshold = optional_number(
        &mut raw,
        "scenario",
        "collapse_threshold",
        DEFAULT_COLLAPSE_THRESHOLD,
    )?;
    reject_leftover(
        &raw,
        "scenario",
        &format!(
            "unknown key (or not used by adoption = {})",
            adoption.name()
        ),
    )?;
    if growth < 0.0 {
        return Err(ConfigError::at(
            "scenario",
            "growth",
            "must be non-negative",
        ));
    }
    if !(collapse_threshold > 0.0 && collapse_threshold <= 1.0) {
        return Err(ConfigError::at(
            "scenario",
            "collapse_threshold",
            "must be in (0, 1]",
        ));
    }
    Ok(ScenarioSettings {
        horizon,
        adoption,
        growth,
        collapse_threshold,
    })
}

fn parse_fit(mut raw: RawSection) -> Result<FitSpec, ConfigError> {
    let (factors, line) = raw
        .take("factors")
        .ok_or_else(|| ConfigError::at("fit", "factors", "missing required key"))?;
    let factors: Vec<String> = factors.split(',').map(|f| f.trim().to_string()).collect();
    if factors.iter().any(|f| f.is_empty()) {
        return Err(ConfigError::at("fit", "factors", "empty factor name").on_line(line));
    }
    for (i, f) in factors.iter().enumerate() {
        if factors[..i].contains(f) || f == "Y" {
            return Err(ConfigError::at(
                "fit",
                "factors",
                format!("invalid or repeated factor `{f}`"),
            )
            .on_line(line));
        }
    }
    let (input, line) = raw
        .take("input")
        .ok_or_else(|| ConfigError::at("fit", "input", "missing required key"))?;
    if input.is_empty() {
        return Err(ConfigError::at("fit", "input", "empty path").on_line(line));
    }
    reject_leftover(&raw, "fit", "unknown key")?;
    Ok(FitSpec {
        factors,
        input: PathBuf::from(input),
    })
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut config = Config::default();
    for (name, raw) in split_sections(text)? {
        match name.as_str() {
            "model" => config.model = Some(parse_model(raw)?),
            "transition" => config.transition = parse_transition(raw)?,
            "scenario" => config.scenario = Some(parse_scenario(raw)?),
            "fit" => config.fit = Some(parse_fit(raw)?),
            _ => unreachable!("section names checked while splitting"),
        }
    }
    Ok(config)
}
