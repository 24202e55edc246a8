//! Optional `key = value` configuration file; `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

const KEYS: [&str; 9] = [
    "tol",
    "format",
    "seed",
    "n",
    "grid_points",
    "p_max",
    "resolution",
    "threads",
    "ks_threshold",
];

#[derive(Debug, Clone, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
            let k = k.trim().replace('-', "_");
            if !KEYS.contains(&k.as_str()) {
                return Err(format!(
                    "config line {}: unknown key '{k}' (known: {})",
                    i + 1,
                    KEYS.join(", ")
                ));
            }
            let v = v.trim().trim_matches('"').to_string();
            values.insert(k, v);
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("config key '{key}': cannot parse '{v}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = Config::parse("# defaults\ntol = 1e-10\nformat=json # inline\n\ngrid-points = 12\n").unwrap();
        assert_eq!(c.get::<f64>("tol").unwrap(), Some(1e-10));
        assert_eq!(c.get::<String>("format").unwrap().as_deref(), Some("json"));
        assert_eq!(c.get::<usize>("grid_points").unwrap(), Some(12));
        assert_eq!(c.get::<u64>("seed").unwrap(), None);
        assert!(Config::parse("bogus = 1").is_err());
        assert!(Config::parse("tol 1").is_err());
        assert!(Config::parse("tol = x").unwrap().get::<f64>("tol").is_err());
    }
}
