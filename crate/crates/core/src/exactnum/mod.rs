//! Exact scalars and the combinatorial sequences the bracket formulas need:
//! harmonic numbers, powered Legendre eigenvalues, Legendre–Stirling numbers
//! and the Laguerre left-definite coefficients.

mod pipair;
mod rational;

use std::cell::RefCell;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::Error;

pub use pipair::PiPair;
pub use rational::{denominator_lcm, Rational};

thread_local! {
    static HARMONIC: RefCell<Vec<Rational>> = RefCell::new(vec![Rational::zero()]);
    static HARMONIC2: RefCell<Vec<Rational>> = RefCell::new(vec![Rational::zero()]);
    static STIRLING: RefCell<Vec<Vec<BigInt>>> = RefCell::new(vec![vec![BigInt::one()]]);
}

fn extend_memo(
    table: &'static std::thread::LocalKey<RefCell<Vec<Rational>>>,
    k: usize,
    term: impl Fn(usize) -> Rational,
) -> Rational {
    table.with(|t| {
        let mut t = t.borrow_mut();
        while t.len() <= k {
            let i = t.len();
            let next = &t[i - 1] + term(i);
            t.push(next);
        }
        t[k].clone()
    })
}

/// `H_k = 1 + 1/2 + ... + 1/k`, with `H_0 = 0`.
pub fn harmonic(k: usize) -> Rational {
    extend_memo(&HARMONIC, k, |i| Rational::new(1, i))
}

/// Second-order harmonic number `1 + 1/4 + ... + 1/k²`.
pub fn harmonic2(k: usize) -> Rational {
    extend_memo(&HARMONIC2, k, |i| Rational::new(1, i * i))
}

/// Eigenvalue of `P_k` (and `Q_k`) under the n-th power of the Legendre
/// expression: `(k(k+1))^n`.
pub fn eigenvalue(k: usize, n: u32) -> BigInt {
    let lambda = BigInt::from(k) * BigInt::from(k + 1);
    num_traits::pow(lambda, n as usize)
}

/// Legendre–Stirling number of the second kind, the coefficient of
/// `((1-x²)^k f^(k))^(k)` in the Lagrangian form of the n-th power.
pub fn legendre_stirling(n: usize, k: usize) -> Result<BigInt, Error> {
    if k > n {
        return Err(Error::StirlingDomain { n, k });
    }
    Ok(STIRLING.with(|t| {
        let mut t = t.borrow_mut();
        while t.len() <= n {
            let m = t.len();
            let prev = &t[m - 1];
            let row: Vec<BigInt> = (0..=m)
                .map(|j| {
                    let down = if j >= 1 { prev[j - 1].clone() } else { BigInt::zero() };
                    let stay = if j < m {
                        BigInt::from(j * (j + 1)) * &prev[j]
                    } else {
                        BigInt::zero()
                    };
                    down + stay
                })
                .collect();
            t.push(row);
        }
        t[n][k].clone()
    }))
}

/// Coefficient `b_j(n, k)` of the Laguerre left-definite inner product:
/// `sum_{i=0..j} (-1)^(i+j) / j! * C(j, i) * (k + i)^n`.
pub fn laguerre_ld_coefficient(j: usize, n: u32, k: &Rational) -> Rational {
    let j_fact: BigInt = (1..=j).map(BigInt::from).product();
    let sum: Rational = (0..=j)
        .map(|i| {
            let term = (k + Rational::from(i)).pow(n) * Rational::from(binomial(BigInt::from(j), BigInt::from(i)));
            if (i + j) % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    sum / Rational::from(j_fact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn direct_harmonic(k: usize, power: usize) -> Rational {
        (1..=k).map(|i| Rational::new(1, i.pow(power as u32))).sum()
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), Rational::zero());
        assert_eq!(harmonic(3), Rational::new(11, 6));
        assert_eq!(harmonic(6), direct_harmonic(6, 1));
        assert_eq!(harmonic(6), Rational::new(49, 20));
    }

    #[test]
    fn harmonic2_values() {
        assert_eq!(harmonic2(0), Rational::zero());
        assert_eq!(harmonic2(2), Rational::new(5, 4));
        assert_eq!(harmonic2(4), direct_harmonic(4, 2));
        assert_eq!(harmonic2(4), Rational::new(205, 144));
    }

    #[test]
    fn eigenvalue_powers() {
        assert_eq!(eigenvalue(1, 3), BigInt::from(8));
        assert_eq!(eigenvalue(3, 3), BigInt::from(1728));
        assert_eq!(eigenvalue(5, 5), BigInt::from(24_300_000));
        assert_eq!(eigenvalue(0, 4), BigInt::zero());
    }

    #[test]
    fn stirling_table() {
        assert_eq!(legendre_stirling(0, 0).unwrap(), BigInt::one());
        assert_eq!(legendre_stirling(1, 1).unwrap(), BigInt::one());
        assert_eq!(legendre_stirling(2, 1).unwrap(), BigInt::from(2));
        assert_eq!(legendre_stirling(2, 2).unwrap(), BigInt::one());
        assert_eq!(legendre_stirling(3, 2).unwrap(), BigInt::from(8));
        assert_eq!(legendre_stirling(4, 0).unwrap(), BigInt::zero());
        assert!(matches!(
            legendre_stirling(2, 3),
            Err(Error::StirlingDomain { n: 2, k: 3 })
        ));
    }

    #[test]
    fn stirling_structure() {
        for n in 1..=30usize {
            assert_eq!(legendre_stirling(n, n).unwrap(), BigInt::one());
            assert_eq!(
                legendre_stirling(n, 1).unwrap(),
                eigenvalue(1, 1).pow(n as u32 - 1)
            );
        }
    }

    #[test]
    fn laguerre_coefficients() {
        assert_eq!(laguerre_ld_coefficient(0, 3, &Rational::from(2)), Rational::from(8));
        assert_eq!(laguerre_ld_coefficient(1, 2, &Rational::from(1)), Rational::from(3));
        assert_eq!(laguerre_ld_coefficient(2, 2, &Rational::zero()), Rational::one());
    }

    // b_j(n, k) is the j-th forward difference of x^n at k divided by j!.
    fn forward_difference(j: usize, n: u32, k: &Rational) -> Rational {
        let mut vals: Vec<Rational> = (0..=j).map(|i| (k + Rational::from(i)).pow(n)).collect();
        for _ in 0..j {
            vals = vals.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        let fact: Rational = (1..=j).map(Rational::from).product();
        &vals[0] / fact
    }

    proptest! {
        #[test]
        fn harmonic_steps(k in 0usize..300) {
            prop_assert_eq!(harmonic(k + 1) - harmonic(k), Rational::new(1, k + 1));
            prop_assert_eq!(harmonic2(k + 1) - harmonic2(k), Rational::new(1, (k + 1) * (k + 1)));
        }

        #[test]
        fn laguerre_matches_forward_differences(j in 0usize..8, n in 0u32..9, p in -20i64..20, q in 1i64..7) {
            let k = Rational::new(p, q);
            prop_assert_eq!(laguerre_ld_coefficient(j, n, &k), forward_difference(j, n, &k));
        }

        #[test]
        fn canonical_form_survives_random_ops(ops in prop::collection::vec((0u8..4, -50i64..50, 1i64..50), 1000..1200)) {
            let mut acc = Rational::new(1, 3);
            for (op, p, q) in ops {
                let r = Rational::new(p, q);
                acc = match op {
                    0 => acc + r,
                    1 => acc - r,
                    2 => if r.is_zero() { acc } else { acc * r },
                    _ => if r.is_zero() { acc } else { acc / r },
                };
                prop_assert!(acc.denom() > &BigInt::zero());
                prop_assert_eq!(num_integer::Integer::gcd(acc.numer(), acc.denom()), BigInt::one());
            }
        }
    }
}
