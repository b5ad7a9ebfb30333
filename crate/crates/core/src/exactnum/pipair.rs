use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use super::Rational;

/// Exact value `rat + pi2 * π²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiPair {
    #[serde(rename = "rat")]
    pub rational_part: Rational,
    #[serde(rename = "pi2")]
    pub pi_squared_coeff: Rational,
}

impl PiPair {
    pub fn new(rational_part: Rational, pi_squared_coeff: Rational) -> Self {
        PiPair { rational_part, pi_squared_coeff }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PiPair::new(&self.rational_part * c, &self.pi_squared_coeff * c)
    }

    pub fn to_f64(&self) -> f64 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        self.rational_part.to_f64() + self.pi_squared_coeff.to_f64() * pi2
    }
}

impl Add for PiPair {
    type Output = PiPair;
    fn add(self, rhs: PiPair) -> PiPair {
        PiPair::new(
            self.rational_part + rhs.rational_part,
            self.pi_squared_coeff + rhs.pi_squared_coeff,
        )
    }
}

impl Mul<&Rational> for PiPair {
    type Output = PiPair;
    fn mul(self, rhs: &Rational) -> PiPair {
        self.scale(rhs)
    }
}

impl fmt::Display for PiPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})π²", self.rational_part, self.pi_squared_coeff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let p = PiPair::new(Rational::new(2, 3), Rational::new(1, 18));
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v, serde_json::json!({"rat": "2/3", "pi2": "1/18"}));
    }

    #[test]
    fn componentwise_ops() {
        let a = PiPair::new(Rational::from(1), Rational::new(1, 6));
        let b = PiPair::new(Rational::new(-1, 2), Rational::new(1, 3));
        let s = a.clone() + b;
        assert_eq!(s, PiPair::new(Rational::new(1, 2), Rational::new(1, 2)));
        assert_eq!(a * &Rational::from(6), PiPair::new(Rational::from(6), Rational::from(1)));
    }
}
