//! Flat INI-style configuration: `[section]` headers and `key = value`
//! lines, `#` or `;` comments. Every experiment parameter has a key; any key
//! omitted from the file keeps its built-in default.

use crate::CliError;
use rattle::{Boundary, ParamSchedule};
use std::collections::BTreeMap;

/// One parsed value plus the line it came from (for error messages).
#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
}

/// Parsed configuration file.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    sections: BTreeMap<String, BTreeMap<String, Entry>>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut sections: BTreeMap<String, BTreeMap<String, Entry>> = BTreeMap::new();
        let mut current = String::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| {
                    CliError::Config(format!("line {line_no}: unterminated section header `{line}`"))
                })?;
                current = name.trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "line {line_no}: expected `key = value`, got `{line}`"
                )));
            };
            let key = key.trim();
            if key.is_empty() {
                return Err(CliError::Config(format!("line {line_no}: empty key")));
            }
            sections
                .entry(current.clone())
                .or_default()
                .insert(key.to_string(), Entry { value: value.trim().to_string(), line: line_no });
        }
        Ok(Self { sections })
    }

    fn entry(&self, section: &str, key: &str) -> Option<&Entry> {
        self.sections.get(section)?.get(key)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.entry(section, key).map(|e| e.value.as_str())
    }

    fn typed<T>(
        &self,
        section: &str,
        key: &str,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> Result<Option<T>, CliError> {
        match self.entry(section, key) {
            None => Ok(None),
            Some(e) => parse(&e.value).map(Some).map_err(|msg| {
                CliError::Config(format!("line {}: [{section}] {key}: {msg}", e.line))
            }),
        }
    }

    pub fn f64(&self, section: &str, key: &str) -> Result<Option<f64>, CliError> {
        self.typed(section, key, |v| v.parse::<f64>().map_err(|e| e.to_string()))
    }

    pub fn u64(&self, section: &str, key: &str) -> Result<Option<u64>, CliError> {
        self.typed(section, key, |v| v.parse::<u64>().map_err(|e| e.to_string()))
    }

    pub fn usize(&self, section: &str, key: &str) -> Result<Option<usize>, CliError> {
        self.typed(section, key, |v| v.parse::<usize>().map_err(|e| e.to_string()))
    }

    pub fn bool(&self, section: &str, key: &str) -> Result<Option<bool>, CliError> {
        self.typed(section, key, |v| match v {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            other => Err(format!("expected a boolean, got `{other}`")),
        })
    }

    pub fn string(&self, section: &str, key: &str) -> Option<String> {
        self.get(section, key).map(str::to_string)
    }

    pub fn schedule(&self, section: &str, key: &str) -> Result<Option<ParamSchedule>, CliError> {
        self.typed(section, key, parse_schedule)
    }

    pub fn boundary(&self, section: &str, key: &str) -> Result<Option<Boundary>, CliError> {
        self.typed(section, key, parse_boundary)
    }

    /// Comma-separated list of reals.
    pub fn f64_list(&self, section: &str, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        self.typed(section, key, |v| {
            v.split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()
        })
    }
}

/// Schedule expressions: a bare number, or
/// `const(v) | inverse_linear(c0, c1) | power_law(c, p) | linear(v0, slope)`,
/// optionally wrapped as `clamp(<schedule>, min)`.
pub fn parse_schedule(text: &str) -> Result<ParamSchedule, String> {
    let text = text.trim();
    if let Ok(v) = text.parse::<f64>() {
        return Ok(ParamSchedule::constant(v));
    }
    let (name, args) = split_call(text)?;
    let parts = split_top_level(args);
    let nums = |want: usize| -> Result<Vec<f64>, String> {
        if parts.len() != want {
            return Err(format!("`{name}` takes {want} argument(s), got {}", parts.len()));
        }
        parts.iter().map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string())).collect()
    };
    match name {
        "const" => Ok(ParamSchedule::constant(nums(1)?[0])),
        "inverse_linear" => {
            let a = nums(2)?;
            Ok(ParamSchedule::inverse_linear(a[0], a[1]))
        }
        "power_law" => {
            let a = nums(2)?;
            Ok(ParamSchedule::power_law(a[0], a[1]))
        }
        "linear" => {
            let a = nums(2)?;
            Ok(ParamSchedule::linear(a[0], a[1]))
        }
        "clamp" => {
            if parts.len() != 2 {
                return Err("`clamp` takes (<schedule>, min)".into());
            }
            let inner = parse_schedule(&parts[0])?;
            let min = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
            Ok(inner.with_clamp_min(min))
        }
        other => Err(format!("unknown schedule `{other}`")),
    }
}

/// Boundary expressions: `inf`, `-inf`, a number, or
/// `scaled(<schedule>, scale)` for moving boundaries like `beta(t) * A`.
pub fn parse_boundary(text: &str) -> Result<Boundary, String> {
    let text = text.trim();
    match text {
        "inf" | "+inf" | "-inf" | "none" => return Ok(Boundary::Unbounded),
        _ => {}
    }
    if let Ok(v) = text.parse::<f64>() {
        return Ok(Boundary::Constant(v));
    }
    let (name, args) = split_call(text)?;
    if name != "scaled" {
        return Err(format!("unknown boundary `{name}` (use inf, a number, or scaled(...))"));
    }
    let parts = split_top_level(args);
    if parts.len() != 2 {
        return Err("`scaled` takes (<schedule>, scale)".into());
    }
    let schedule = parse_schedule(&parts[0])?;
    let scale = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok(Boundary::Scaled { schedule, scale })
}

fn split_call(text: &str) -> Result<(&str, &str), String> {
    let open = text.find('(').ok_or_else(|| format!("cannot parse `{text}`"))?;
    if !text.ends_with(')') {
        return Err(format!("missing closing parenthesis in `{text}`"));
    }
    Ok((text[..open].trim(), &text[open + 1..text.len() - 1]))
}

fn split_top_level(args: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in args.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(args[start..i].to_string());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(args[start..].to_string());
    parts
}
