use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Named parameter values, kept sorted by name so that printing is stable.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params(BTreeMap<String, f64>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(&str, f64)]) -> Self {
        let mut p = Self::new();
        for &(k, v) in pairs {
            p.0.insert(k.to_string(), v);
        }
        p
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Values in the order given by `names`; errors on missing or extra keys.
    pub(crate) fn ordered(&self, names: &[&str]) -> Result<Vec<f64>> {
        for k in self.0.keys() {
            if !names.contains(&k.as_str()) {
                return Err(Error::Param(format!(
                    "unknown parameter `{k}` (expected {})",
                    names.join(", ")
                )));
            }
        }
        names
            .iter()
            .map(|&n| {
                let v = self
                    .get(n)
                    .ok_or_else(|| Error::Param(format!("missing parameter `{n}`")))?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Param(format!("parameter `{n}` is not finite")))
                }
            })
            .collect()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Parses `k=v[,k=v]`.
impl FromStr for Params {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Params::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Param(format!("expected k=v, got `{item}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Param(format!("bad number in `{item}`")))?;
            p.set(k.trim(), v);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p: Params = "B=1, A=5".parse().unwrap();
        assert_eq!(p.to_string(), "A=5,B=1");
        assert_eq!(p.to_string().parse::<Params>().unwrap(), p);
    }

    #[test]
    fn rejects_garbage() {
        assert!("A".parse::<Params>().is_err());
        assert!("A=x".parse::<Params>().is_err());
    }

    #[test]
    fn ordered_checks_names() {
        let p = Params::from_pairs(&[("A", 1.0), ("C", 2.0)]);
        assert!(p.ordered(&["A", "B"]).is_err());
        let p = Params::from_pairs(&[("A", 1.0)]);
        assert!(p.ordered(&["A", "B"]).is_err());
        assert_eq!(p.ordered(&["A"]).unwrap(), vec![1.0]);
    }
}
