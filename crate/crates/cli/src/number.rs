use std::str::FromStr;

use boltzmann::{QuadExt, Scalar};

/// A numeric flag. Integers and `p/q` literals are exact; anything written
/// with a decimal point or exponent is floating.
#[derive(Debug, Clone, PartialEq)]
pub struct Number {
    pub text: String,
    pub exact: Option<QuadExt>,
    pub value: f64,
}

impl FromStr for Number {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let text = s.trim().to_string();
        if let Ok(q) = QuadExt::from_str(&text) {
            return Ok(Number {
                value: q.to_f64(),
                exact: Some(q),
                text,
            });
        }
        let value: f64 = text.parse().map_err(|_| format!("`{text}` is neither p/q nor a decimal number"))?;
        if !value.is_finite() {
            return Err(format!("`{text}` is not finite"));
        }
        Ok(Number { text, exact: None, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pair(pub [f64; 2]);

impl FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `lo,hi`, got `{s}`"))?;
        let a: Number = a.parse()?;
        let b: Number = b.parse()?;
        Ok(Pair([a.value, b.value]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let n: Number = "-5/24".parse().unwrap();
        assert_eq!(n.exact, Some(QuadExt::from_ratio_i64(-5, 24)));
        let n: Number = "7".parse().unwrap();
        assert!(n.exact.is_some());
        let n: Number = "-0.25".parse().unwrap();
        assert_eq!((n.exact, n.value), (None, -0.25));
        let n: Number = "1e-3".parse().unwrap();
        assert!(n.exact.is_none());
        assert!("abc".parse::<Number>().is_err());
        assert!("1/0".parse::<Number>().is_err());
        assert_eq!("-1/2,0".parse::<Pair>().unwrap(), Pair([-0.5, 0.0]));
    }
}
