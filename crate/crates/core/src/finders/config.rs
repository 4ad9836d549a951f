//! Named constants standing in for the proofs' "sufficiently large" factors.
//!
//! Each guarantee reads `e >= constant * base(n, params)`. Where the
//! transcribed inequalities close with an explicit factor that factor is the
//! default; elsewhere the blanket value 2^30 is used.

use serde::{Deserialize, Serialize};

pub const FALLBACK_CONSTANT: f64 = (1u64 << 30) as f64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FinderConfig {
    /// `Sf3(1,k)`: `e >= c k^2 n`.
    pub sf3_star: f64,
    /// `Sf_r(r-1,k)`: `e >= c k n^(r-1)` (pigeonhole on codegrees).
    pub sf_codegree: f64,
    /// `Sf4(1,k)`: `e >= c k^2 n^2`.
    pub sf4_star: f64,
    /// `Sf4(2,k)`: `e >= c k^2 n^2`.
    pub sf4_pair: f64,
    /// Disjoint `Sf3(1,k)` under bounded codegrees: `e >= c max(k^2 n, k^{9/2})`.
    pub disjoint_sf3: f64,
    /// `St3(h,k)`: `e >= c max(k n^2, h^2 k^2 n)`.
    pub st3: f64,
    /// Disjoint well-behaved `St3(h,k)`: `s = e / (c n^2)`.
    pub disjoint_st3: f64,
    /// `St4(sqrt k, k, 1)`: `e >= c n max(k^2 n, k^{9/2})`.
    pub st4_middle: f64,
    /// `St4(d,d,k)`: `e >= c k n^3`.
    pub st4_dense: f64,
    /// `t` disjoint `St4(d,d,k)`: `e >= c k n^3`.
    pub disjoint_st4: f64,
    /// Node budget of the final level-restricted link descent; 0 disables it.
    pub descent_budget: u64,
}

impl Default for FinderConfig {
    fn default() -> Self {
        FinderConfig {
            sf3_star: 4.0,
            sf_codegree: 1.0,
            sf4_star: 72.0,
            sf4_pair: 1.0,
            disjoint_sf3: 216.0,
            st3: 12.0,
            disjoint_st3: FALLBACK_CONSTANT,
            st4_middle: FALLBACK_CONSTANT,
            st4_dense: FALLBACK_CONSTANT,
            disjoint_st4: FALLBACK_CONSTANT,
            descent_budget: 200_000,
        }
    }
}

impl FinderConfig {
    /// Applies `name=value` overrides.
    pub fn set(&mut self, name: &str, value: &str) -> Result<(), String> {
        let mut v = serde_json::to_value(&*self).map_err(|e| e.to_string())?;
        let slot = v
            .get_mut(name)
            .ok_or_else(|| format!("unknown finder constant `{name}`"))?;
        *slot = if name == "descent_budget" {
            serde_json::Value::from(value.parse::<u64>().map_err(|e| format!("{name}: {e}"))?)
        } else {
            serde_json::Value::from(value.parse::<f64>().map_err(|e| format!("{name}: {e}"))?)
        };
        *self = serde_json::from_value(v).map_err(|e| e.to_string())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let mut c = FinderConfig::default();
        c.set("st3", "3.5").unwrap();
        c.set("descent_budget", "0").unwrap();
        assert_eq!(c.st3, 3.5);
        assert_eq!(c.descent_budget, 0);
        assert!(c.set("nope", "1").is_err());
        assert!(c.set("st3", "x").is_err());
        let parsed: FinderConfig = serde_json::from_str(r#"{"sf3_star": 8}"#).unwrap();
        assert_eq!(parsed.sf3_star, 8.0);
        assert_eq!(parsed.st3, 12.0);
    }
}
