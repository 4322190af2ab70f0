//! Flat `key = value` configuration with one section per scenario.
//!
//! ```text
//! scenario = sphere-revival
//!
//! [sphere-revival]
//! gamma_r = 10
//! samples = 601
//! ```
//!
//! Top-level keys are `scenario` and `output`. Parameters go in the section
//! named after the selected scenario; sections for other scenarios are
//! ignored, so one file may hold several set-ups. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use crate::scenario::{ParamKind, Scenario};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Integer(u64),
    Bool(bool),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(x) => write!(f, "{x:?}"),
            Value::Integer(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

/// One validation problem, with the line and key it refers to when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    fn new(line: Option<usize>, key: Option<&str>, message: impl Into<String>) -> Self {
        Self {
            line,
            key: key.map(str::to_owned),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: ")?,
            None => write!(f, "override: ")?,
        }
        if let Some(key) = &self.key {
            write!(f, "`{key}`: ")?;
        }
        write!(f, "{}", self.message)
    }
}

/// Validated scenario configuration with every parameter filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub output: Option<PathBuf>,
    params: BTreeMap<String, Value>,
}

impl ScenarioConfig {
    pub fn params(&self) -> &BTreeMap<String, Value> {
        &self.params
    }

    pub fn number(&self, key: &str) -> f64 {
        match self.params.get(key) {
            Some(Value::Number(x)) => *x,
            Some(Value::Integer(n)) => *n as f64,
            other => panic!("parameter `{key}` is not numeric: {other:?}"),
        }
    }

    pub fn integer(&self, key: &str) -> usize {
        match self.params.get(key) {
            Some(Value::Integer(n)) => *n as usize,
            other => panic!("parameter `{key}` is not an integer: {other:?}"),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        match self.params.get(key) {
            Some(Value::Bool(b)) => *b,
            other => panic!("parameter `{key}` is not a boolean: {other:?}"),
        }
    }
}

struct Entry {
    line: Option<usize>,
    value: String,
}

struct RawConfig {
    top: BTreeMap<String, Entry>,
    sections: BTreeMap<String, (usize, BTreeMap<String, Entry>)>,
}

fn split_lines(text: &str, errors: &mut Vec<ConfigError>) -> RawConfig {
    let mut raw = RawConfig {
        top: BTreeMap::new(),
        sections: BTreeMap::new(),
    };
    let mut current: Option<String> = None;
    for (index, line) in text.lines().enumerate() {
        let number = index + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            match rest.strip_suffix(']').map(str::trim) {
                Some(name) if !name.is_empty() => {
                    if raw.sections.contains_key(name) {
                        errors.push(ConfigError::new(
                            Some(number),
                            None,
                            format!("section [{name}] repeated"),
                        ));
                    }
                    raw.sections
                        .entry(name.to_owned())
                        .or_insert((number, BTreeMap::new()));
                    current = Some(name.to_owned());
                }
                _ => errors.push(ConfigError::new(
                    Some(number),
                    None,
                    "malformed section header",
                )),
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            errors.push(ConfigError::new(
                Some(number),
                None,
                "expected `key = value`",
            ));
            continue;
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            errors.push(ConfigError::new(Some(number), None, "empty key"));
            continue;
        }
        let target = match &current {
            None => &mut raw.top,
            Some(name) => &mut raw.sections.get_mut(name).expect("section registered").1,
        };
        if target.contains_key(key) {
            errors.push(ConfigError::new(Some(number), Some(key), "key repeated"));
            continue;
        }
        target.insert(
            key.to_owned(),
            Entry {
                line: Some(number),
                value: value.to_owned(),
            },
        );
    }
    raw
}

fn parse_value(kind: ParamKind, text: &str) -> Result<Value, String> {
    match kind {
        ParamKind::Number => text
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Value::Number)
            .ok_or_else(|| format!("expected a finite number, got `{text}`")),
        ParamKind::Integer => text
            .parse::<u64>()
            .map(Value::Integer)
            .map_err(|_| format!("expected a non-negative integer, got `{text}`")),
        ParamKind::Bool => match text {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            _ => Err(format!("expected `true` or `false`, got `{text}`")),
        },
    }
}

/// Parses and validates a configuration, applying `overrides` (`key=value`,
/// addressing top-level keys or parameters of the selected scenario) on
/// top. All problems are reported together.
pub fn parse_config_with(
    text: &str,
    overrides: &[String],
) -> Result<ScenarioConfig, Vec<ConfigError>> {
    let mut errors = Vec::new();
    let mut raw = split_lines(text, &mut errors);

    let mut pending = Vec::new();
    for item in overrides {
        match item.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => {
                pending.push((k.trim().to_owned(), v.trim().to_owned()))
            }
            _ => errors.push(ConfigError::new(
                None,
                None,
                format!("override `{item}` is not `key=value`"),
            )),
        }
    }
    for (key, value) in pending
        .iter()
        .filter(|(k, _)| k == "scenario" || k == "output")
    {
        raw.top.insert(
            key.clone(),
            Entry {
                line: None,
                value: value.clone(),
            },
        );
    }

    for (key, entry) in &raw.top {
        if key != "scenario" && key != "output" {
            errors.push(ConfigError::new(
                entry.line,
                Some(key),
                "unknown top-level key (parameters belong in the scenario section)",
            ));
        }
    }
    for (name, (line, _)) in &raw.sections {
        if Scenario::from_name(name).is_none() {
            errors.push(ConfigError::new(
                Some(*line),
                None,
                format!("unknown section [{name}]"),
            ));
        }
    }

    let scenario = match raw.top.get("scenario") {
        None => {
            errors.push(ConfigError::new(
                None,
                Some("scenario"),
                "missing; expected one of the listed scenarios",
            ));
            None
        }
        Some(entry) => match Scenario::from_name(&entry.value) {
            Some(s) => Some(s),
            None => {
                let known: Vec<&str> = Scenario::ALL.iter().map(|s| s.name()).collect();
                errors.push(ConfigError::new(
                    entry.line,
                    Some("scenario"),
                    format!(
                        "unknown scenario `{}` (known: {})",
                        entry.value,
                        known.join(", ")
                    ),
                ));
                None
            }
        },
    };
    let output = raw.top.get("output").map(|e| PathBuf::from(&e.value));

    let Some(scenario) = scenario else {
        return Err(errors);
    };

    let mut section = raw
        .sections
        .remove(scenario.name())
        .map(|(_, entries)| entries)
        .unwrap_or_default();
    for (key, value) in pending
        .into_iter()
        .filter(|(k, _)| k != "scenario" && k != "output")
    {
        section.insert(key, Entry { line: None, value });
    }

    let specs = scenario.parameters();
    let mut params = BTreeMap::new();
    for (key, entry) in &section {
        if !specs.iter().any(|p| p.key == key) {
            errors.push(ConfigError::new(
                entry.line,
                Some(key),
                format!("not a parameter of `{}`", scenario.name()),
            ));
        }
    }
    for spec in &specs {
        let value = match section.get(spec.key) {
            Some(entry) => match parse_value(spec.kind, &entry.value) {
                Ok(v) => match spec.check(&v) {
                    Ok(()) => Some(v),
                    Err(msg) => {
                        errors.push(ConfigError::new(entry.line, Some(spec.key), msg));
                        None
                    }
                },
                Err(msg) => {
                    errors.push(ConfigError::new(entry.line, Some(spec.key), msg));
                    None
                }
            },
            None => match &spec.default {
                Some(v) => Some(v.clone()),
                None => {
                    errors.push(ConfigError::new(
                        None,
                        Some(spec.key),
                        "required parameter missing",
                    ));
                    None
                }
            },
        };
        if let Some(v) = value {
            params.insert(spec.key.to_owned(), v);
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let config = ScenarioConfig {
        scenario,
        output,
        params,
    };
    let cross = scenario.cross_check(&config);
    if !cross.is_empty() {
        return Err(cross
            .into_iter()
            .map(|(key, msg)| {
                let line = section.get(key).and_then(|e| e.line);
                ConfigError::new(line, Some(key), msg)
            })
            .collect());
    }
    Ok(config)
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig, Vec<ConfigError>> {
    parse_config_with(text, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = parse_config("scenario = jcp-vacuum\n").unwrap();
        assert_eq!(cfg.scenario, Scenario::JcpVacuum);
        assert_eq!(cfg.number("detuning"), 0.0);
        assert!(cfg.integer("samples") > 1);
    }

    #[test]
    fn sphere_left_panel() {
        let cfg =
            parse_config("scenario = sphere-revival\n[sphere-revival]\ngamma_r = 10\n").unwrap();
        assert_eq!(cfg.number("gamma_r"), 10.0);
    }

    #[test]
    fn negative_tolerance_names_the_key() {
        let errs =
            parse_config("scenario = parabola-eta\n[parabola-eta]\nk = 1\nrel_tol = -1e-9\n")
                .unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].key.as_deref(), Some("rel_tol"));
        assert_eq!(errs[0].line, Some(4));
    }

    #[test]
    fn collects_every_error() {
        let text = "scenario = free-decay\nbogus = 1\n[free-decay]\nt_end = abc\nsamples = -3\nwhat = 2\n[nope]\n";
        let errs = parse_config(text).unwrap_err();
        let keys: Vec<_> = errs.iter().map(|e| e.key.clone()).collect();
        assert!(keys.contains(&Some("bogus".into())));
        assert!(keys.contains(&Some("t_end".into())));
        assert!(keys.contains(&Some("samples".into())));
        assert!(keys.contains(&Some("what".into())));
        assert!(errs.iter().any(|e| e.message.contains("[nope]")));
    }

    #[test]
    fn unknown_scenario() {
        let errs = parse_config("scenario = warp-drive\n").unwrap_err();
        assert!(errs[0].message.contains("warp-drive"));
        let errs = parse_config("# nothing\n").unwrap_err();
        assert_eq!(errs[0].key.as_deref(), Some("scenario"));
    }

    #[test]
    fn missing_required_parameter() {
        let errs = parse_config("scenario = parabola-eta\n").unwrap_err();
        assert!(errs
            .iter()
            .any(|e| e.key.as_deref() == Some("k") && e.message.contains("required")));
    }

    #[test]
    fn overrides_apply_last() {
        let text = "scenario = jcp-vacuum\n[jcp-vacuum]\ndetuning = 1\n";
        let cfg = parse_config_with(text, &["detuning=2.5".into(), "output=x.csv".into()]).unwrap();
        assert_eq!(cfg.number("detuning"), 2.5);
        assert_eq!(cfg.output, Some(PathBuf::from("x.csv")));
        let cfg = parse_config_with(text, &["scenario=jcp-inversion".into()]).unwrap();
        assert_eq!(cfg.scenario, Scenario::JcpInversion);
        let errs = parse_config_with(text, &["nonsense".into(), "detuning=x".into()]).unwrap_err();
        assert_eq!(errs.len(), 2);
        assert!(errs.iter().all(|e| e.line.is_none()));
    }

    #[test]
    fn other_sections_are_ignored() {
        let text = "scenario = jcp-vacuum\n[parabola-eta]\nk = 3\n[jcp-vacuum]\nsamples = 11\n";
        assert_eq!(parse_config(text).unwrap().integer("samples"), 11);
    }

    #[test]
    fn repeated_keys_rejected() {
        let errs = parse_config("scenario = jcp-vacuum\n[jcp-vacuum]\nsamples = 3\nsamples = 4\n")
            .unwrap_err();
        assert_eq!(errs[0].line, Some(4));
    }
}
