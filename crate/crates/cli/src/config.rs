//! Run configuration: parsed flags in a serializable form, numeric parsers
//! that accept scientific notation, and the y-expression mini-language.

use serde::{Deserialize, Serialize};
use sslab_core::verify::YRule;
use std::path::PathBuf;

/// Parses a positive integer count, accepting scientific notation
/// (`1e6`, `3.16e5`) as long as the value is integral.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !(v.is_finite() && v >= 0.0 && v <= 2f64.powi(53)) {
        return Err(format!("'{s}' is out of integer range"));
    }
    if v.fract() != 0.0 {
        return Err(format!("'{s}' is not an integer"));
    }
    Ok(v as u64)
}

/// Parses a real flag value (plain or scientific notation).
pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

/// Truncation-level expression: a literal, `sqrt(N)`, or `N^theta`,
/// evaluated once N is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum YSpec {
    Literal(f64),
    SqrtN,
    PowN(f64),
}

impl YSpec {
    pub fn parse(s: &str) -> Result<YSpec, String> {
        let trimmed = s.trim();
        let lower = trimmed.to_ascii_lowercase();
        if lower == "sqrt(n)" {
            return Ok(YSpec::SqrtN);
        }
        if let Some(rest) = lower.strip_prefix("n^") {
            let theta: f64 = rest
                .parse()
                .map_err(|_| format!("'{s}': exponent '{rest}' is not a number"))?;
            return Ok(YSpec::PowN(theta));
        }
        let v = parse_real(trimmed)?;
        Ok(YSpec::Literal(v))
    }

    pub fn eval(&self, n: u64) -> f64 {
        self.rule().eval(n)
    }

    pub fn rule(&self) -> YRule {
        match *self {
            YSpec::Literal(v) => YRule::Const(v),
            YSpec::SqrtN => YRule::SqrtN,
            YSpec::PowN(theta) => YRule::PowN(theta),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Constants,
    Table,
    Moments,
    Verify,
    Scan,
}

/// Everything one invocation computes, in a form that round-trips through
/// JSON. All computations are deterministic; there is no seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub n_values: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_spec: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kinds: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub prime_limit: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub threads: usize,
}

impl RunConfig {
    /// Rejects invalid combinations before any computation starts.
    pub fn validate(&self) -> Result<(), String> {
        if self.prime_limit < 3 {
            return Err("prime limit must be at least 3".into());
        }
        if self.threads < 1 {
            return Err("threads must be at least 1".into());
        }
        if let Some(spec) = &self.y_spec {
            YSpec::parse(spec)?;
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d < 1.0) {
                return Err(format!("delta must satisfy 0 < delta < 1; got {d}"));
            }
        }
        if let Some(t) = self.threshold {
            if !(t > 0.0) {
                return Err("threshold must be positive".into());
            }
        }
        match self.command {
            CommandKind::Constants => Ok(()),
            CommandKind::Table => {
                if self.n_values.len() != 1 {
                    return Err("table requires exactly one --N".into());
                }
                if self.y_spec.is_none() {
                    return Err("table requires --y".into());
                }
                Ok(())
            }
            CommandKind::Moments => {
                if self.kinds.is_empty() {
                    return Err("moments requires at least one --kind".into());
                }
                for k in &self.kinds {
                    sslab_core::MomentKind::parse(k).map_err(|e| e.to_string())?;
                }
                Ok(())
            }
            CommandKind::Verify => {
                let th = self.theorem.as_deref().ok_or("verify requires --theorem")?;
                sslab_core::TheoremId::parse(th).map_err(|e| e.to_string())?;
                if self.n_values.is_empty() {
                    return Err("verify requires at least one --N".into());
                }
                if self.y_spec.is_none() {
                    return Err("verify requires --y".into());
                }
                Ok(())
            }
            CommandKind::Scan => {
                let th = self.theorem.as_deref().ok_or("scan requires --theorem")?;
                sslab_core::TheoremId::parse(th).map_err(|e| e.to_string())?;
                if self.n_values.len() < 4 {
                    return Err("scan requires at least 4 --N grid points".into());
                }
                if self.y_spec.is_none() {
                    return Err("scan requires --y-rule".into());
                }
                Ok(())
            }
        }
    }
}

/// Worker cap: `--threads` flag wins, then `SSLAB_THREADS`, then 1.
pub fn resolve_threads(flag: Option<usize>, env: Option<&str>) -> usize {
    if let Some(t) = flag {
        return t.max(1);
    }
    if let Some(t) = env.and_then(|s| s.parse::<usize>().ok()) {
        return t.max(1);
    }
    1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("10000").unwrap(), 10_000);
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_count("3.16e2").unwrap(), 316);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("abc").is_err());
    }

    #[test]
    fn y_expressions() {
        assert_eq!(YSpec::parse("50").unwrap(), YSpec::Literal(50.0));
        assert_eq!(YSpec::parse("1e4").unwrap(), YSpec::Literal(1e4));
        assert_eq!(YSpec::parse("sqrt(N)").unwrap(), YSpec::SqrtN);
        assert_eq!(YSpec::parse("N^0.25").unwrap(), YSpec::PowN(0.25));
        assert_eq!(YSpec::parse("sqrt(N)").unwrap().eval(10_000), 100.0);
        assert_eq!(YSpec::parse("N^0.5").unwrap().eval(10_000), 100.0);
        assert!(YSpec::parse("N^x").is_err());
        assert!(YSpec::parse("cbrt(N)").is_err());
    }

    fn sample_config() -> RunConfig {
        RunConfig {
            command: CommandKind::Verify,
            n_values: vec![1_000_000],
            y_spec: Some("sqrt(N)".into()),
            x: None,
            m: None,
            d: None,
            a: None,
            b: None,
            k: None,
            kinds: vec![],
            theorem: Some("1".into()),
            delta: Some(0.9),
            prime_limit: 10_000_000,
            threshold: None,
            output: Some(PathBuf::from("out.json")),
            format: OutputFormat::Json,
            threads: 2,
        }
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = sample_config();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn invalid_combinations_rejected() {
        let mut cfg = sample_config();
        assert!(cfg.validate().is_ok());
        cfg.delta = Some(1.5);
        assert!(cfg.validate().is_err());
        let mut cfg = sample_config();
        cfg.theorem = Some("thm9".into());
        assert!(cfg.validate().is_err());
        let mut cfg = sample_config();
        cfg.n_values.clear();
        assert!(cfg.validate().is_err());
        let mut cfg = sample_config();
        cfg.command = CommandKind::Scan;
        assert!(cfg.validate().is_err(), "scan needs >= 4 N values");
        let mut cfg = sample_config();
        cfg.y_spec = Some("bogus(N)".into());
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn thread_resolution_order() {
        assert_eq!(resolve_threads(Some(4), Some("8")), 4);
        assert_eq!(resolve_threads(None, Some("8")), 8);
        assert_eq!(resolve_threads(None, Some("junk")), 1);
        assert_eq!(resolve_threads(None, None), 1);
        assert_eq!(resolve_threads(Some(0), None), 1);
    }
}
