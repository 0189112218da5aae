//! Resource caps for Gröbner computations.
//!
//! Defaults can be overridden process-wide with the `GERMLAB_BUDGET`
//! environment variable, either a bare integer (S-pair budget) or a
//! comma-separated list such as `pairs=20000,degree=30,terms=50000`.

use std::sync::OnceLock;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of S-pairs processed by a single completion.
    pub max_pairs: usize,
    /// Maximum total degree of any polynomial produced during completion.
    pub max_degree: u32,
    /// Maximum number of terms of any intermediate polynomial.
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 100_000,
            max_degree: 40,
            max_terms: 200_000,
        }
    }
}

static CURRENT: OnceLock<Budget> = OnceLock::new();

impl Budget {
    /// The process-wide budget: defaults, overridden by `GERMLAB_BUDGET`.
    pub fn current() -> Budget {
        *CURRENT.get_or_init(|| match std::env::var("GERMLAB_BUDGET") {
            Ok(spec) => Budget::parse(&spec).unwrap_or_default(),
            Err(_) => Budget::default(),
        })
    }

    pub fn parse(spec: &str) -> Result<Budget> {
        let mut b = Budget::default();
        let spec = spec.trim();
        if let Ok(pairs) = spec.parse::<usize>() {
            b.max_pairs = pairs;
            return Ok(b);
        }
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| invalid(format!("budget entry `{item}` is not key=value")))?;
            let bad = |_| invalid(format!("budget value `{value}` is not an integer"));
            match key.trim() {
                "pairs" => b.max_pairs = value.trim().parse().map_err(bad)?,
                "degree" => b.max_degree = value.trim().parse().map_err(bad)?,
                "terms" => b.max_terms = value.trim().parse().map_err(bad)?,
                other => return Err(invalid(format!("unknown budget key `{other}`"))),
            }
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_and_keyed_forms() {
        assert_eq!(Budget::parse("500").unwrap().max_pairs, 500);
        let b = Budget::parse("pairs=7, degree=12,terms=99").unwrap();
        assert_eq!((b.max_pairs, b.max_degree, b.max_terms), (7, 12, 99));
        assert!(Budget::parse("speed=3").is_err());
        assert!(Budget::parse("degree=x").is_err());
    }
}
