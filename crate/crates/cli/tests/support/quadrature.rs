//! Fixed-point double-exponential quadrature for `∫_{-1}^{1} Q_k(x)² dx`.
//!
//! With `x = tanh u` the log term becomes `Λ(x) = u` exactly and
//! `dx = sech² u du`; `u = sinh s` then gives an integrand in `s` that
//! decays like `exp(−2 sinh |s|)`, so the plain trapezoid rule converges
//! geometrically in `1/h`. Nearest singularities sit at `Im s = π/2`, so the
//! discretization error is about `exp(−π²/h)`.

use gkn_core::classical::{legendre_p, legendre_q};
use gkn_core::{Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub const BITS: u32 = 320;

fn one() -> BigInt {
    BigInt::one() << BITS
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> BITS
}

fn div(a: &BigInt, b: &BigInt) -> BigInt {
    (a << BITS) / b
}

pub fn from_rational(r: &Rational) -> BigInt {
    (r.numer() << BITS) / r.denom()
}

/// `e^x` by halving `x` below 1/16, Taylor, then squaring back.
fn exp(x: &BigInt) -> BigInt {
    let mut halvings = 0;
    let mut y = x.clone();
    let limit = one() >> 4;
    while y.abs() > limit {
        y >>= 1;
        halvings += 1;
    }
    let mut sum = one();
    let mut term = one();
    for i in 1u32.. {
        term = mul(&term, &y) / i;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    for _ in 0..halvings {
        sum = mul(&sum, &sum);
    }
    sum
}

/// `atan(1/m)` in fixed point.
fn atan_inv(m: u32) -> BigInt {
    let m2 = BigInt::from(m) * m;
    let mut power = one() / m;
    let mut sum = BigInt::zero();
    for i in 0u32.. {
        let term = &power / (2 * i + 1);
        if term.is_zero() {
            break;
        }
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
    }
    sum
}

/// Machin: `π = 16 atan(1/5) − 4 atan(1/239)`.
pub fn pi() -> BigInt {
    atan_inv(5) * 16 - atan_inv(239) * 4
}

fn horner(p: &Poly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.coeffs().iter().rev() {
        acc = mul(&acc, x) + from_rational(c);
    }
    acc
}

/// `∫ Q_k²` with step `1/steps_per_unit` over `|s| ≤ s_max`.
pub fn q_norm_squared(k: usize, steps_per_unit: u32, s_max: u32) -> BigInt {
    let p = legendre_p(k);
    let r = legendre_q(k).poly_part;
    let eh = exp(&(one() / steps_per_unit));
    let eh_inv = div(&one(), &eh);
    // Q_k² is even in x, so sum s ≥ 0 and double the tail
    let mut total = BigInt::zero();
    let mut es = one();
    let mut es_inv = one();
    for i in 0..=(steps_per_unit * s_max) {
        let sinh = (&es - &es_inv) >> 1;
        let cosh = (&es + &es_inv) >> 1;
        let eu = exp(&sinh);
        let eu_inv = div(&one(), &eu);
        let denom = &eu + &eu_inv;
        let t = div(&(&eu - &eu_inv), &denom);
        let sech2 = div(&(one() << 2), &mul(&denom, &denom));
        let q = mul(&horner(&p, &t), &sinh) - horner(&r, &t);
        let g = mul(&mul(&mul(&q, &q), &sech2), &cosh);
        total += if i == 0 { g } else { g << 1 };
        es = mul(&es, &eh);
        es_inv = mul(&es_inv, &eh_inv);
    }
    total / steps_per_unit
}

/// `rational + pi2 · π²` in fixed point.
pub fn pi_pair_value(rational: &Rational, pi2: &Rational) -> BigInt {
    let pi = pi();
    from_rational(rational) + mul(&from_rational(pi2), &mul(&pi, &pi))
}

/// `|a − b| ≤ rel · |b|` with `rel = 10^(−digits)`.
pub fn close(a: &BigInt, b: &BigInt, digits: u32) -> bool {
    (a - b).abs() * BigInt::from(10u32).pow(digits) <= b.abs()
}

/// `|a − b| / |b|`, exact until the final conversion.
pub fn relative_error(a: &BigInt, b: &BigInt) -> f64 {
    let scaled: BigInt = (a - b).abs() * BigInt::from(10u32).pow(60) / b.abs();
    let digits = scaled.to_string();
    let lead: f64 = digits[..digits.len().min(15)].parse().unwrap_or(0.0);
    lead * 10f64.powi(digits.len() as i32 - digits.len().min(15) as i32 - 60)
}

pub fn to_f64(x: &BigInt) -> f64 {
    let shift = BITS - 60;
    let top: BigInt = x >> shift;
    let v: i64 = top.try_into().unwrap_or(i64::MAX);
    v as f64 / (1u64 << 60) as f64
}
