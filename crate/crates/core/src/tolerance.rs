use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable read by [`Tolerances::from_env`].
pub const PRECISION_ENV: &str = "BOLTZMANN_PRECISION";

/// Numerical thresholds used by floating-point computations.
///
/// Exact scalar types ignore these and decide every comparison exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Residual bound for the circle and wall constraints of a state.
    pub constraint: f64,
    /// Distance under which an orbit counts as closed.
    pub close: f64,
    /// Zero test for parameter classification and degeneracy checks.
    pub class: f64,
    /// Minimum distance for proper-divisor returns in a closure test.
    pub divisor: f64,
    /// Bracket width at which bisection stops.
    pub bisection: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            constraint: 1e-10,
            close: 1e-9,
            class: 1e-12,
            divisor: 1e-4,
            bisection: 1e-12,
        }
    }
}

impl Tolerances {
    /// Parses `key=value` pairs separated by commas, e.g.
    /// `constraint=1e-9,close=1e-8`. Unlisted keys keep their defaults.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut tol = Tolerances::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("expected key=value, got `{item}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad tolerance value `{value}`")))?;
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidInput(format!("tolerance `{key}` must be positive")));
            }
            let slot = match key.trim() {
                "constraint" => &mut tol.constraint,
                "close" => &mut tol.close,
                "class" => &mut tol.class,
                "divisor" => &mut tol.divisor,
                "bisection" => &mut tol.bisection,
                other => return Err(Error::InvalidInput(format!("unknown tolerance `{other}`"))),
            };
            *slot = value;
        }
        Ok(tol)
    }

    /// Defaults overridden by [`PRECISION_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRECISION_ENV) {
            Ok(spec) => Self::parse(&spec),
            Err(_) => Ok(Self::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides_only_named_keys() {
        let t = Tolerances::parse("close=1e-7, divisor=0.01").unwrap();
        assert_eq!(t.close, 1e-7);
        assert_eq!(t.divisor, 0.01);
        assert_eq!(t.constraint, 1e-10);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Tolerances::parse("close").is_err());
        assert!(Tolerances::parse("close=-1").is_err());
        assert!(Tolerances::parse("speed=1").is_err());
    }
}
