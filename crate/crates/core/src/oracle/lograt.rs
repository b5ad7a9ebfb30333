use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::classical::{legendre_p, legendre_q, ClassicalFunction, Kind};
use crate::exactnum::Rational;
use crate::poly::Poly;

use super::EndRat;

/// `Σ_p c_p(x) Λ(x)^p` with `Λ(x) = ½ ln((1+x)/(1−x))`.
///
/// Slot 0 is the plain part and slot 1 the log part. Products of two
/// log-bearing functions populate slot 2; trailing zero slots are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LogRat {
    slots: Vec<EndRat>,
}

impl LogRat {
    pub fn from_slots(mut slots: Vec<EndRat>) -> Self {
        while slots.last().is_some_and(EndRat::is_zero) {
            slots.pop();
        }
        LogRat { slots }
    }

    pub fn new(plain: EndRat, logpart: EndRat) -> Self {
        LogRat::from_slots(vec![plain, logpart])
    }

    pub fn zero() -> Self {
        LogRat::default()
    }

    pub fn from_poly(p: Poly) -> Self {
        LogRat::from_slots(vec![EndRat::from(p)])
    }

    /// `Λ` itself.
    pub fn lambda() -> Self {
        LogRat::new(EndRat::zero(), EndRat::constant(Rational::one()))
    }

    pub fn from_function(f: ClassicalFunction) -> Self {
        match f.kind {
            Kind::P => LogRat::from_poly(legendre_p(f.index)),
            Kind::Q => {
                let q = legendre_q(f.index);
                LogRat::new(EndRat::from(-&q.poly_part), EndRat::from(q.log_coeff))
            }
        }
    }

    /// Coefficient of `Λ^p`.
    pub fn slot(&self, p: usize) -> EndRat {
        self.slots.get(p).cloned().unwrap_or_else(EndRat::zero)
    }

    pub fn slots(&self) -> &[EndRat] {
        &self.slots
    }

    pub fn plain(&self) -> EndRat {
        self.slot(0)
    }

    pub fn logpart(&self) -> EndRat {
        self.slot(1)
    }

    /// Highest power of `Λ` present; `None` for zero.
    pub fn log_degree(&self) -> Option<usize> {
        self.slots.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> LogRat {
        LogRat::from_slots(self.slots.iter().map(|s| s.scale(c)).collect())
    }

    pub fn mul_endrat(&self, e: &EndRat) -> LogRat {
        LogRat::from_slots(self.slots.iter().map(|s| s * e).collect())
    }

    /// `Λ' = 1/(1−x²)` moves each slot's contribution one power down.
    pub fn derivative(&self) -> LogRat {
        let mut out: Vec<EndRat> = self.slots.iter().map(EndRat::derivative).collect();
        let lp = EndRat::lambda_prime();
        for p in 1..self.slots.len() {
            let term = (&self.slots[p] * &lp).scale(&Rational::from(p));
            out[p - 1] = &out[p - 1] + &term;
        }
        LogRat::from_slots(out)
    }

    pub fn nth_derivative(&self, m: usize) -> LogRat {
        (0..m).fold(self.clone(), |f, _| f.derivative())
    }
}

impl Add<&LogRat> for &LogRat {
    type Output = LogRat;
    fn add(self, rhs: &LogRat) -> LogRat {
        let n = self.slots.len().max(rhs.slots.len());
        LogRat::from_slots((0..n).map(|p| &self.slot(p) + &rhs.slot(p)).collect())
    }
}

impl Sub<&LogRat> for &LogRat {
    type Output = LogRat;
    fn sub(self, rhs: &LogRat) -> LogRat {
        self + &(-rhs)
    }
}

impl Neg for &LogRat {
    type Output = LogRat;
    fn neg(self) -> LogRat {
        LogRat { slots: self.slots.iter().map(|s| -s).collect() }
    }
}

impl Mul<&LogRat> for &LogRat {
    type Output = LogRat;
    fn mul(self, rhs: &LogRat) -> LogRat {
        if self.is_zero() || rhs.is_zero() {
            return LogRat::zero();
        }
        let mut out = vec![EndRat::zero(); self.slots.len() + rhs.slots.len() - 1];
        for (p, a) in self.slots.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in rhs.slots.iter().enumerate() {
                if !b.is_zero() {
                    out[p + q] = &out[p + q] + &(a * b);
                }
            }
        }
        LogRat::from_slots(out)
    }
}

fn slot_name(p: usize) -> String {
    match p {
        0 => "plain".to_string(),
        1 => "log".to_string(),
        p => format!("log{p}"),
    }
}

impl Serialize for LogRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = BTreeMap::new();
        map.insert(slot_name(0), self.plain());
        map.insert(slot_name(1), self.logpart());
        for p in 2..self.slots.len() {
            map.insert(slot_name(p), self.slots[p].clone());
        }
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LogRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, EndRat>::deserialize(d)?;
        let mut slots = Vec::new();
        for (name, e) in map {
            let p = match name.as_str() {
                "plain" => 0,
                "log" => 1,
                other => other
                    .strip_prefix("log")
                    .and_then(|n| n.parse().ok())
                    .filter(|&p: &usize| p >= 2)
                    .ok_or_else(|| serde::de::Error::custom(format!("unknown slot {other:?}")))?,
            };
            if slots.len() <= p {
                slots.resize(p + 1, EndRat::zero());
            }
            slots[p] = e;
        }
        Ok(LogRat::from_slots(slots))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_lambda() {
        let d = LogRat::lambda().derivative();
        assert_eq!(d.plain(), EndRat::lambda_prime());
        assert!(d.logpart().is_zero());
    }

    #[test]
    fn derivative_of_q1() {
        // Q1 = xΛ − 1  ⇒  Q1' = Λ + x/(1−x²)
        let d = LogRat::from_function(ClassicalFunction::q(1)).derivative();
        assert_eq!(d.logpart(), EndRat::constant(Rational::one()));
        assert_eq!(d.plain(), EndRat::new(Poly::x(), 1, 1));
    }

    #[test]
    fn polynomial_derivative() {
        let d = LogRat::from_poly(Poly::from_ints(&[0, 0, 1])).derivative();
        assert_eq!(d, LogRat::from_poly(Poly::from_ints(&[0, 2])));
    }

    #[test]
    fn product_rule_with_squares() {
        let l = LogRat::lambda();
        let sq = &l * &l;
        assert_eq!(sq.log_degree(), Some(2));
        // (Λ²)' = 2Λ/(1−x²)
        let d = sq.derivative();
        assert_eq!(d.log_degree(), Some(1));
        assert_eq!(d.logpart(), EndRat::new(Poly::from_ints(&[2]), 1, 1));
    }

    #[test]
    fn json_mirrors_fields() {
        let q0 = LogRat::from_function(ClassicalFunction::q(0));
        let v = serde_json::to_value(&q0).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "plain": {"numerator": [], "pow_one_minus": 0, "pow_one_plus": 0},
                "log": {"numerator": ["1"], "pow_one_minus": 0, "pow_one_plus": 0}
            })
        );
        let back: LogRat = serde_json::from_value(v).unwrap();
        assert_eq!(back, q0);
        let sq = &q0 * &q0;
        let back: LogRat = serde_json::from_str(&serde_json::to_string(&sq).unwrap()).unwrap();
        assert_eq!(back, sq);
    }
}
