//! Flat `key = value` settings files. `#` starts a comment, blank lines are
//! skipped, unknown keys are rejected, later entries override earlier ones.
//! Command-line flags take precedence over everything here.

use sfcscan::analysis::AutocorrMode;
use sfcscan::sfc::ScanKind;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

/// Settings a file may supply. Every field is optional; subcommands fall
/// back to their built-in defaults for anything left unset.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub window_side: Option<f64>,
    pub grid_order: Option<u32>,
    pub plane_z: Option<f64>,
    pub moment_x: Option<f64>,
    pub moment_y: Option<f64>,
    pub moment_z: Option<f64>,
    pub mode: Option<AutocorrMode>,
    pub k_max: Option<usize>,
    pub scan_a: Option<ScanKind>,
    pub scan_b: Option<ScanKind>,
    pub kind: Option<ScanKind>,
    pub gamma: Option<f64>,
    pub linewidth: Option<f64>,
    pub sweep_min: Option<f64>,
    pub sweep_max: Option<f64>,
    pub sweep_step: Option<f64>,
    pub strip_field: Option<f64>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("line {lineno}: expected `key = value`, got {raw:?}"));
            };
            let key = key.trim();
            let value = value.trim();
            match key {
                "window_side" => cfg.window_side = Some(parse(key, value, lineno)?),
                "grid_order" => cfg.grid_order = Some(parse(key, value, lineno)?),
                "plane_z" => cfg.plane_z = Some(parse(key, value, lineno)?),
                "moment_x" => cfg.moment_x = Some(parse(key, value, lineno)?),
                "moment_y" => cfg.moment_y = Some(parse(key, value, lineno)?),
                "moment_z" => cfg.moment_z = Some(parse(key, value, lineno)?),
                "mode" => cfg.mode = Some(parse(key, value, lineno)?),
                "k_max" => cfg.k_max = Some(parse(key, value, lineno)?),
                "scan_a" => cfg.scan_a = Some(parse(key, value, lineno)?),
                "scan_b" => cfg.scan_b = Some(parse(key, value, lineno)?),
                "kind" => cfg.kind = Some(parse(key, value, lineno)?),
                "gamma" => cfg.gamma = Some(parse(key, value, lineno)?),
                "linewidth" => cfg.linewidth = Some(parse(key, value, lineno)?),
                "sweep_min" => cfg.sweep_min = Some(parse(key, value, lineno)?),
                "sweep_max" => cfg.sweep_max = Some(parse(key, value, lineno)?),
                "sweep_step" => cfg.sweep_step = Some(parse(key, value, lineno)?),
                "strip_field" => cfg.strip_field = Some(parse(key, value, lineno)?),
                "seed" => cfg.seed = Some(parse(key, value, lineno)?),
                unknown => return Err(format!("line {lineno}: unknown key {unknown:?}")),
            }
        }
        Ok(cfg)
    }
}

fn parse<T>(key: &str, value: &str, lineno: usize) -> Result<T, String>
where
    T: FromStr,
    T::Err: Display,
{
    value
        .parse()
        .map_err(|e| format!("line {lineno}: invalid {key}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_values_comments_and_overrides() {
        let cfg = RunConfig::parse(
            "# settings\n\
             window_side = 2.5\n\
             grid_order=6   # inline comment\n\
             kind = serpentine\n\
             mode = raw\n\
             seed = 7\n\
             seed = 9\n",
        )
        .unwrap();
        assert_eq!(cfg.window_side, Some(2.5));
        assert_eq!(cfg.grid_order, Some(6));
        assert_eq!(cfg.kind, Some(ScanKind::Serpentine));
        assert_eq!(cfg.mode, Some(AutocorrMode::Raw));
        assert_eq!(cfg.seed, Some(9));
        assert_eq!(cfg.gamma, None);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(RunConfig::parse("granularity = 3\n").is_err());
        assert!(RunConfig::parse("just words\n").is_err());
        assert!(RunConfig::parse("gamma = fast\n").is_err());
        assert!(RunConfig::parse("seed = -1\n").is_err());
    }

    #[test]
    fn empty_input_is_all_defaults() {
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
        assert_eq!(
            RunConfig::parse("\n# only a comment\n\n").unwrap(),
            RunConfig::default()
        );
    }
}
