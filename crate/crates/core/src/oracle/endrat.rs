use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;
use crate::poly::Poly;

use super::Endpoint;

/// Rational function `numerator(x) / ((1−x)^a (1+x)^b)`, singular at most
/// at `±1`. Common `(1∓x)` factors are always cancelled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawEndRat")]
pub struct EndRat {
    numerator: Poly,
    pow_one_minus: u32,
    pow_one_plus: u32,
}

#[derive(Deserialize)]
struct RawEndRat {
    numerator: Poly,
    pow_one_minus: u32,
    pow_one_plus: u32,
}

impl From<RawEndRat> for EndRat {
    fn from(r: RawEndRat) -> Self {
        EndRat::new(r.numerator, r.pow_one_minus, r.pow_one_plus)
    }
}

impl From<Poly> for EndRat {
    fn from(p: Poly) -> Self {
        EndRat::new(p, 0, 0)
    }
}

impl EndRat {
    pub fn new(numerator: Poly, pow_one_minus: u32, pow_one_plus: u32) -> Self {
        let mut e = EndRat { numerator, pow_one_minus, pow_one_plus };
        e.canonicalize();
        e
    }

    pub fn zero() -> Self {
        EndRat::from(Poly::zero())
    }

    pub fn constant(c: Rational) -> Self {
        EndRat::from(Poly::constant(c))
    }

    /// `1 / (1 − x²)`, the derivative of `Λ`.
    pub fn lambda_prime() -> Self {
        EndRat::new(Poly::one(), 1, 1)
    }

    /// `(1 − x²)^k`.
    pub fn one_minus_x2_pow(k: u32) -> Self {
        let base = Poly::from_ints(&[1, 0, -1]);
        let p = (0..k).fold(Poly::one(), |acc, _| &acc * &base);
        EndRat::from(p)
    }

    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.pow_one_minus = 0;
            self.pow_one_plus = 0;
            return;
        }
        let one = Rational::one();
        while self.pow_one_minus > 0 {
            let (q, rem) = self.numerator.div_linear(&one);
            if !rem.is_zero() {
                break;
            }
            // N = (x − 1) q = −(1 − x) q
            self.numerator = -q;
            self.pow_one_minus -= 1;
        }
        let minus_one = -Rational::one();
        while self.pow_one_plus > 0 {
            let (q, rem) = self.numerator.div_linear(&minus_one);
            if !rem.is_zero() {
                break;
            }
            self.numerator = q;
            self.pow_one_plus -= 1;
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn pow_one_minus(&self) -> u32 {
        self.pow_one_minus
    }

    pub fn pow_one_plus(&self) -> u32 {
        self.pow_one_plus
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.pow_one_minus == 0 && self.pow_one_plus == 0
    }

    pub fn scale(&self, c: &Rational) -> EndRat {
        EndRat {
            numerator: self.numerator.scale(c),
            pow_one_minus: if c.is_zero() { 0 } else { self.pow_one_minus },
            pow_one_plus: if c.is_zero() { 0 } else { self.pow_one_plus },
        }
    }

    fn lift(&self, a: u32, b: u32) -> Poly {
        let mut n = self.numerator.clone();
        for _ in self.pow_one_minus..a {
            n = n.times_one_minus_x();
        }
        for _ in self.pow_one_plus..b {
            n = n.times_one_plus_x();
        }
        n
    }

    pub fn derivative(&self) -> EndRat {
        if self.is_zero() {
            return EndRat::zero();
        }
        let (a, b) = (self.pow_one_minus, self.pow_one_plus);
        // d/dx N(1−x)^{−a}(1+x)^{−b}
        //   = [N'(1−x)(1+x) + aN(1+x) − bN(1−x)] / ((1−x)^{a+1}(1+x)^{b+1})
        let n = &self.numerator;
        let mut num = n.derivative().times_one_minus_x().times_one_plus_x();
        if a > 0 {
            num = &num + &n.times_one_plus_x().scale(&Rational::from(a));
        }
        if b > 0 {
            num = &num - &n.times_one_minus_x().scale(&Rational::from(b));
        }
        EndRat::new(num, a + 1, b + 1)
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let one = Rational::one();
        let d = (&one - x).pow(self.pow_one_minus) * (&one + x).pow(self.pow_one_plus);
        if d.is_zero() {
            return None;
        }
        Some(self.numerator.eval(x) / d)
    }

    /// Order of vanishing in the distance `t = |x ∓ 1|` to the endpoint:
    /// negative for a pole, `None` for the zero function.
    pub fn order_at(&self, at: Endpoint) -> Option<i64> {
        let (pole, root) = match at {
            Endpoint::PlusOne => (self.pow_one_minus, Rational::one()),
            Endpoint::MinusOne => (self.pow_one_plus, -Rational::one()),
        };
        if self.is_zero() {
            return None;
        }
        if pole > 0 {
            return Some(-(pole as i64));
        }
        self.numerator.root_multiplicity(&root).map(|m| m as i64)
    }

    /// Coefficient `c` in `self ≈ c · t^order` near the endpoint, valid
    /// when the order is `≤ 0`.
    pub fn leading_coefficient_at(&self, at: Endpoint) -> Rational {
        let two = Rational::from(2);
        match at {
            Endpoint::PlusOne => self.numerator.eval_at_one() / two.pow(self.pow_one_plus),
            Endpoint::MinusOne => {
                self.numerator.eval_at_minus_one() / two.pow(self.pow_one_minus)
            }
        }
    }

    /// Value at the endpoint when the function is regular there.
    pub fn value_at(&self, at: Endpoint) -> Option<Rational> {
        match self.order_at(at) {
            None => Some(Rational::zero()),
            Some(o) if o < 0 => None,
            Some(0) => Some(self.leading_coefficient_at(at)),
            Some(_) => Some(Rational::zero()),
        }
    }
}

impl Add<&EndRat> for &EndRat {
    type Output = EndRat;
    fn add(self, rhs: &EndRat) -> EndRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let a = self.pow_one_minus.max(rhs.pow_one_minus);
        let b = self.pow_one_plus.max(rhs.pow_one_plus);
        EndRat::new(&self.lift(a, b) + &rhs.lift(a, b), a, b)
    }
}

impl Sub<&EndRat> for &EndRat {
    type Output = EndRat;
    fn sub(self, rhs: &EndRat) -> EndRat {
        self + &(-rhs)
    }
}

impl Neg for &EndRat {
    type Output = EndRat;
    fn neg(self) -> EndRat {
        EndRat {
            numerator: -&self.numerator,
            pow_one_minus: self.pow_one_minus,
            pow_one_plus: self.pow_one_plus,
        }
    }
}

impl Mul<&EndRat> for &EndRat {
    type Output = EndRat;
    fn mul(self, rhs: &EndRat) -> EndRat {
        EndRat::new(
            &self.numerator * &rhs.numerator,
            self.pow_one_minus + rhs.pow_one_minus,
            self.pow_one_plus + rhs.pow_one_plus,
        )
    }
}
