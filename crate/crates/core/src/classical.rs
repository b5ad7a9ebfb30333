//! Legendre polynomials `P_k`, Legendre functions of the second kind `Q_k`,
//! and the integer-index inner products between them on `L²(-1, 1)`.
//!
//! `Q_k` is held as the pair `(P_k, R_k)` with
//! `Q_k(x) = P_k(x)·Λ(x) − R_k(x)` and `Λ(x) = ½ ln((1+x)/(1−x))`.
//! Both `P_k` and `R_k` obey the three-term recurrence
//! `(k+1) y_{k+1} = (2k+1) x y_k − k y_{k−1}`; `R_0 = 0`, `R_1 = 1`.

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{harmonic, harmonic2, PiPair, Rational};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    P,
    Q,
}

/// `P_index` or `Q_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassicalFunction {
    pub kind: Kind,
    pub index: usize,
}

impl ClassicalFunction {
    pub fn p(index: usize) -> Self {
        ClassicalFunction { kind: Kind::P, index }
    }

    pub fn q(index: usize) -> Self {
        ClassicalFunction { kind: Kind::Q, index }
    }
}

impl fmt::Display for ClassicalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::P => 'P',
            Kind::Q => 'Q',
        };
        write!(f, "{k}{}", self.index)
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "P" | "p" => Ok(Kind::P),
            "Q" | "q" => Ok(Kind::Q),
            other => Err(Error::Parse(format!("unknown function kind {other:?}"))),
        }
    }
}

impl FromStr for ClassicalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() < 2 || !s.is_char_boundary(1) {
            return Err(Error::Parse(format!("bad function label {s:?}")));
        }
        let kind: Kind = s[..1].parse()?;
        let index = s[1..]
            .parse()
            .map_err(|_| Error::Parse(format!("bad function index in {s:?}")))?;
        Ok(ClassicalFunction { kind, index })
    }
}

impl Serialize for ClassicalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassicalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `Q_k = log_coeff · Λ − poly_part`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QRepresentation {
    #[serde(rename = "log")]
    pub log_coeff: Poly,
    #[serde(rename = "poly")]
    pub poly_part: Poly,
}

thread_local! {
    static P_TABLE: RefCell<Vec<Poly>> = RefCell::new(vec![Poly::one(), Poly::x()]);
    static R_TABLE: RefCell<Vec<Poly>> = RefCell::new(vec![Poly::zero(), Poly::one()]);
}

fn recurrence(table: &'static std::thread::LocalKey<RefCell<Vec<Poly>>>, k: usize) -> Poly {
    table.with(|t| {
        let mut t = t.borrow_mut();
        while t.len() <= k {
            let m = t.len() - 1;
            let a = t[m].shift().scale(&Rational::from(2 * m + 1));
            let b = t[m - 1].scale(&Rational::from(m));
            let next = (&a - &b).scale(&Rational::new(1, m + 1));
            t.push(next);
        }
        t[k].clone()
    })
}

/// Legendre polynomial `P_k`, normalized by `P_k(1) = 1`.
pub fn legendre_p(k: usize) -> Poly {
    recurrence(&P_TABLE, k)
}

pub fn legendre_q(k: usize) -> QRepresentation {
    QRepresentation {
        log_coeff: legendre_p(k),
        poly_part: recurrence(&R_TABLE, k),
    }
}

/// `⟨P_j, Q_k⟩` on `(-1, 1)` for integer indices `j ≠ k`.
pub fn inner_pq(j: usize, k: usize) -> Result<Rational> {
    if j == k {
        return Err(Error::EqualIndices(j));
    }
    if (j + k) % 2 == 0 {
        return Ok(Rational::zero());
    }
    let diff = k as i64 - j as i64;
    Ok(Rational::new(-2, diff * (j + k + 1) as i64))
}

/// `⟨Q_j, Q_k⟩` on `(-1, 1)` for integer indices `j ≠ k`. The digamma
/// difference `ψ(j+1) − ψ(k+1)` reduces to `H_j − H_k`.
pub fn inner_qq(j: usize, k: usize) -> Result<Rational> {
    if j == k {
        return Err(Error::EqualIndices(j));
    }
    if (j + k) % 2 == 1 {
        return Ok(Rational::zero());
    }
    let diff = k as i64 - j as i64;
    let gap = harmonic(j) - harmonic(k);
    Ok(gap * Rational::new(2, diff * (j + k + 1) as i64))
}

/// `∫_{-1}^{1} Q_k(x)² dx = (π²/3 + 4 H_k^(2)) / (2(2k+1))`.
pub fn q_norm_squared(k: usize) -> PiPair {
    let denom = Rational::new(1, 2 * (2 * k + 1));
    PiPair::new(
        Rational::from(4) * harmonic2(k) * &denom,
        Rational::new(1, 3) * denom,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn p_examples() {
        assert_eq!(legendre_p(0), Poly::one());
        assert_eq!(legendre_p(2), Poly::new(vec![r(-1, 2), r(0, 1), r(3, 2)]));
        assert_eq!(legendre_p(5).eval_at_one(), Rational::one());
        // P_5 = (63x^5 - 70x^3 + 15x)/8
        assert_eq!(
            legendre_p(5),
            Poly::new(vec![r(0, 1), r(15, 8), r(0, 1), r(-70, 8), r(0, 1), r(63, 8)])
        );
    }

    #[test]
    fn q_examples() {
        let q0 = legendre_q(0);
        assert_eq!(q0.log_coeff, Poly::one());
        assert!(q0.poly_part.is_zero());
        let q2 = legendre_q(2);
        assert_eq!(q2.log_coeff, legendre_p(2));
        assert_eq!(q2.poly_part, Poly::new(vec![r(0, 1), r(3, 2)]));
        let q3 = legendre_q(3);
        assert_eq!(q3.poly_part, Poly::new(vec![r(-2, 3), r(0, 1), r(5, 2)]));
        assert_eq!(q3.log_coeff, Poly::new(vec![r(0, 1), r(-3, 2), r(0, 1), r(5, 2)]));
    }

    #[test]
    fn q_json() {
        let v = serde_json::to_value(legendre_q(2)).unwrap();
        assert_eq!(v, serde_json::json!({"log": ["-1/2", "0", "3/2"], "poly": ["0", "3/2"]}));
    }

    #[test]
    fn endpoint_values_and_parity() {
        for k in 0..=64 {
            let p = legendre_p(k);
            assert_eq!(p.eval_at_one(), Rational::one());
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(p.eval_at_minus_one(), Rational::from(sign));
            assert_eq!(p.parity(), Some(k % 2));
            let q = legendre_q(k);
            if k >= 1 {
                assert_eq!(q.poly_part.degree(), Some(k - 1));
                assert_eq!(q.poly_part.parity(), Some((k + 1) % 2));
            }
        }
    }

    #[test]
    fn orthogonality_by_monomial_integration() {
        for j in 0..=20 {
            for k in 0..=20 {
                let ip = (legendre_p(j) * legendre_p(k)).integrate_symmetric();
                if j == k {
                    assert_eq!(ip, Rational::new(2, 2 * k + 1));
                } else {
                    assert!(ip.is_zero(), "<P{j},P{k}> = {ip}");
                }
            }
        }
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner_pq(0, 1).unwrap(), Rational::from(-1));
        assert_eq!(inner_pq(1, 2).unwrap(), r(-1, 2));
        assert!(inner_pq(0, 2).unwrap().is_zero());
        assert!(matches!(inner_pq(3, 3), Err(Error::EqualIndices(3))));

        assert_eq!(inner_qq(1, 3).unwrap(), r(-1, 6));
        assert!(inner_qq(0, 1).unwrap().is_zero());
        assert_eq!(inner_qq(0, 2).unwrap(), r(-1, 2));
        assert!(inner_qq(4, 4).is_err());
    }

    #[test]
    fn inner_products_symmetric() {
        // <Q_j,Q_k> is symmetric; <P_j,Q_k> flips sign under j <-> k
        for j in 0..15 {
            for k in 0..15 {
                if j != k {
                    assert_eq!(inner_qq(j, k).unwrap(), inner_qq(k, j).unwrap());
                    assert_eq!(inner_pq(j, k).unwrap(), -inner_pq(k, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn q_norms() {
        assert_eq!(q_norm_squared(0), PiPair::new(Rational::zero(), r(1, 6)));
        assert_eq!(q_norm_squared(1), PiPair::new(r(2, 3), r(1, 18)));
        assert_eq!(q_norm_squared(2), PiPair::new(r(1, 2), r(1, 30)));
    }

    #[test]
    fn label_round_trip() {
        let f: ClassicalFunction = "Q17".parse().unwrap();
        assert_eq!(f, ClassicalFunction::q(17));
        assert_eq!(f.to_string(), "Q17");
        assert!("X1".parse::<ClassicalFunction>().is_err());
        assert!("P".parse::<ClassicalFunction>().is_err());
    }
}
