//! Independent symbolic route to the boundary brackets.
//!
//! Functions of the form `Σ c_p(x) Λ(x)^p` are differentiated exactly, the
//! n-th Legendre power is applied through its Lagrangian form, and the
//! explicit sesquilinear form is evaluated at `x → ±1` by reading off orders
//! of vanishing. Nothing here consults the closed-form bracket formulas.
//!
//! Sign convention: `[f, g]_n(x)` is the double sum
//! `Σ_{k=1..n} Σ_{j=1..k} (−1)^{k+j} { (a_k g^(k))^(k−j) f^(j−1) − (a_k f^(k))^(k−j) g^(j−1) }`
//! with `ℓⁿ[f] = Σ_k (−1)^k (a_k f^(k))^(k)` and `a_k = {n k}₂ (1−x²)^k`.
//! This is the boundary term of `∫ ℓⁿ[f] g − f ℓⁿ[g]`, which makes
//! `[P_0, Q_1]_1 |_{-1}^{1} = +2`.

mod endrat;
mod lograt;
mod pretty;

use std::fmt;

use serde::Serialize;

use crate::classical::ClassicalFunction;
use crate::error::{Error, Result};
use crate::exactnum::{legendre_stirling, Rational};

pub use endrat::EndRat;
pub use lograt::LogRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Endpoint {
    #[serde(rename = "+1")]
    PlusOne,
    #[serde(rename = "-1")]
    MinusOne,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::PlusOne => "+1",
            Endpoint::MinusOne => "-1",
        })
    }
}

/// A limit that does not exist, described by its dominant singular term
/// `coefficient · t^order · ln(t)^log_power` with `t = |x ∓ 1|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("divergent limit at x = {endpoint}: leading term ({coefficient})·t^{order}·ln(t)^{log_power}")]
pub struct Divergence {
    pub endpoint: Endpoint,
    pub order: i64,
    pub log_power: usize,
    pub coefficient: Rational,
}

/// `lim_{x → ±1} f(x)`.
///
/// Near `x = 1`, `Λ = −½ ln t + O(1)` with `t = 1 − x` (and `+½ ln t` at
/// `−1`). A term `c_p Λ^p`, `p ≥ 1`, tends to zero iff `c_p` vanishes at
/// the endpoint and diverges otherwise; distinct `(order, p)` scales can't
/// cancel, so the limit exists iff every log slot vanishes there and the
/// plain part is regular.
pub fn endpoint_limit(f: &LogRat, at: Endpoint) -> std::result::Result<Rational, Divergence> {
    let half = match at {
        Endpoint::PlusOne => Rational::new(-1, 2),
        Endpoint::MinusOne => Rational::new(1, 2),
    };
    let mut worst: Option<Divergence> = None;
    for (p, c) in f.slots().iter().enumerate() {
        let Some(order) = c.order_at(at) else { continue };
        let singular = if p == 0 { order < 0 } else { order <= 0 };
        if !singular {
            continue;
        }
        let dominates = worst
            .as_ref()
            .is_none_or(|w| order < w.order || (order == w.order && p > w.log_power));
        if dominates {
            worst = Some(Divergence {
                endpoint: at,
                order,
                log_power: p,
                coefficient: c.leading_coefficient_at(at) * half.pow(p as u32),
            });
        }
    }
    match worst {
        Some(d) => Err(d),
        None => Ok(f.plain().value_at(at).expect("plain part is regular")),
    }
}

/// `a_k = {n k}₂ (1 − x²)^k` for `k = 1..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianForm {
    pub power: u32,
    pub coefficients: Vec<(usize, EndRat)>,
}

impl LagrangianForm {
    pub fn new(power: u32) -> Self {
        let n = power as usize;
        let coefficients = (1..=n)
            .map(|k| {
                let ls = legendre_stirling(n, k).expect("k ≤ n");
                (k, EndRat::one_minus_x2_pow(k as u32).scale(&Rational::from(ls)))
            })
            .collect();
        LagrangianForm { power, coefficients }
    }

    /// `Σ_k (−1)^k (a_k f^(k))^(k)`.
    pub fn apply(&self, f: &LogRat) -> LogRat {
        let mut acc = LogRat::zero();
        let mut deriv = f.clone();
        for (k, a) in &self.coefficients {
            deriv = deriv.derivative();
            debug_assert!(*k >= 1);
            let term = deriv.mul_endrat(a).nth_derivative(*k);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

pub fn differentiate(f: &LogRat) -> LogRat {
    f.derivative()
}

/// One application of `ℓ[y] = −((1 − x²) y')'`.
pub fn apply_ell(f: &LogRat) -> LogRat {
    -&f.derivative().mul_endrat(&EndRat::one_minus_x2_pow(1)).derivative()
}

/// `ℓⁿ[f]` by n-fold iteration.
pub fn apply_ell_n(f: &LogRat, n: u32) -> LogRat {
    (0..n).fold(f.clone(), |acc, _| apply_ell(&acc))
}

/// `ℓⁿ[f]` through the Legendre–Stirling Lagrangian form.
pub fn apply_ell_n_lagrangian(f: &LogRat, n: u32) -> LogRat {
    LagrangianForm::new(n).apply(f)
}

/// The pointwise sesquilinear form `[f, g]_n(x)` for real functions.
pub fn sesquilinear_at(f: &LogRat, g: &LogRat, n: u32) -> LogRat {
    let form = LagrangianForm::new(n);
    let nn = n as usize;
    let fd: Vec<LogRat> = successive_derivatives(f, nn);
    let gd: Vec<LogRat> = successive_derivatives(g, nn);
    let mut acc = LogRat::zero();
    for (k, a) in &form.coefficients {
        let k = *k;
        let ag = successive_derivatives(&gd[k].mul_endrat(a), k - 1);
        let af = successive_derivatives(&fd[k].mul_endrat(a), k - 1);
        for j in 1..=k {
            let term = &(&ag[k - j] * &fd[j - 1]) - &(&af[k - j] * &gd[j - 1]);
            acc = if (k + j) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
    }
    acc
}

fn successive_derivatives(f: &LogRat, m: usize) -> Vec<LogRat> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(f.clone());
    for i in 0..m {
        let d = out[i].derivative();
        out.push(d);
    }
    out
}

/// `[f, g]_n |_{-1}^{1}` from the explicit form and its endpoint limits.
///
/// For two classical functions the `Λ²` slot is the form applied to the two
/// log coefficients, which carries a factor `(1 − x²)`; a `Λ²` coefficient
/// that survives at an endpoint, or any higher power, is reported as
/// [`Error::LogSquaredResidue`].
pub fn bracket_via_oracle(f: ClassicalFunction, g: ClassicalFunction, n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    let form = sesquilinear_at(&LogRat::from_function(f), &LogRat::from_function(g), n);
    if form.log_degree().is_some_and(|d| d > 2) {
        return Err(Error::LogSquaredResidue(format!("[{f},{g}]_{n} has a Λ^3 term")));
    }
    for at in [Endpoint::PlusOne, Endpoint::MinusOne] {
        if form.slot(2).order_at(at).is_some_and(|o| o < 1) {
            return Err(Error::LogSquaredResidue(format!(
                "[{f},{g}]_{n}: Λ² coefficient does not vanish at x = {at}"
            )));
        }
    }
    let right = endpoint_limit(&form, Endpoint::PlusOne)?;
    let left = endpoint_limit(&form, Endpoint::MinusOne)?;
    Ok(right - left)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FnCondition {
    pub j: usize,
    pub left: std::result::Result<Rational, Divergence>,
    pub right: std::result::Result<Rational, Divergence>,
}

impl FnCondition {
    pub fn left_limit_exists(&self) -> bool {
        self.left.is_ok()
    }

    pub fn right_limit_exists(&self) -> bool {
        self.right.is_ok()
    }

    pub fn difference_zero(&self) -> bool {
        matches!((&self.left, &self.right), (Ok(l), Ok(r)) if l == r)
    }

    pub fn holds(&self) -> bool {
        self.difference_zero()
    }
}

/// For `j = 1..n`, the endpoint limits of `(a_j f^(j))^(j−1)`.
pub fn fn_condition_check(f: &LogRat, n: u32) -> Vec<FnCondition> {
    let form = LagrangianForm::new(n);
    let fd = successive_derivatives(f, n as usize);
    form.coefficients
        .iter()
        .map(|(j, a)| {
            let expr = fd[*j].mul_endrat(a).nth_derivative(j - 1);
            FnCondition {
                j: *j,
                left: endpoint_limit(&expr, Endpoint::MinusOne),
                right: endpoint_limit(&expr, Endpoint::PlusOne),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::ClassicalFunction as F;
    use crate::poly::Poly;

    #[test]
    fn limits() {
        let w = EndRat::one_minus_x2_pow(1);
        let wl = LogRat::lambda().mul_endrat(&w);
        assert_eq!(endpoint_limit(&wl, Endpoint::PlusOne), Ok(Rational::zero()));

        // (1−x²)Q1' = (1−x²)Λ + x
        let q1p = LogRat::from_function(F::q(1)).derivative().mul_endrat(&w);
        assert_eq!(endpoint_limit(&q1p, Endpoint::PlusOne), Ok(Rational::one()));
        assert_eq!(endpoint_limit(&q1p, Endpoint::MinusOne), Ok(Rational::from(-1)));

        let err = endpoint_limit(&LogRat::lambda(), Endpoint::PlusOne).unwrap_err();
        assert_eq!((err.order, err.log_power), (0, 1));
        assert_eq!(err.coefficient, Rational::new(-1, 2));
        let err = endpoint_limit(&LogRat::lambda(), Endpoint::MinusOne).unwrap_err();
        assert_eq!(err.coefficient, Rational::new(1, 2));
    }

    #[test]
    fn dominant_singularity_is_reported() {
        // Λ + 3/(1−x)²  at +1: the double pole dominates the log
        let f = LogRat::new(EndRat::new(Poly::from_ints(&[3]), 2, 0), EndRat::constant(Rational::one()));
        let err = endpoint_limit(&f, Endpoint::PlusOne).unwrap_err();
        assert_eq!((err.order, err.log_power), (-2, 0));
        assert_eq!(err.coefficient, Rational::from(3));
        // regular at −1 except for the log
        let err = endpoint_limit(&f, Endpoint::MinusOne).unwrap_err();
        assert_eq!((err.order, err.log_power), (0, 1));
    }

    #[test]
    fn closure_sanity() {
        for a in 1..4 {
            for b in 1..4 {
                let c = EndRat::new(
                    (0..a).fold(Poly::one(), |p, _| p.times_one_minus_x()),
                    0,
                    0,
                );
                let c = EndRat::from((0..b).fold(c.numerator().clone(), |p, _| p.times_one_plus_x()));
                for p in 0..2 {
                    let mut slots = vec![EndRat::zero(); p + 1];
                    slots[p] = c.clone();
                    let f = LogRat::from_slots(slots);
                    assert_eq!(endpoint_limit(&f, Endpoint::PlusOne), Ok(Rational::zero()));
                    assert_eq!(endpoint_limit(&f, Endpoint::MinusOne), Ok(Rational::zero()));
                }
            }
        }
    }

    #[test]
    fn eigen_equation_small() {
        for k in 0..=6 {
            for f in [F::p(k), F::q(k)] {
                let lf = LogRat::from_function(f);
                let lam = Rational::from(k * (k + 1));
                assert_eq!(apply_ell(&lf), lf.scale(&lam), "{f}");
            }
        }
    }

    #[test]
    fn lagrangian_matches_iteration_for_q3() {
        let q3 = LogRat::from_function(F::q(3));
        assert_eq!(apply_ell_n(&q3, 2), apply_ell_n_lagrangian(&q3, 2));
    }

    #[test]
    fn sign_convention() {
        assert_eq!(bracket_via_oracle(F::p(0), F::q(1), 1).unwrap(), Rational::from(2));
        let form = sesquilinear_at(
            &LogRat::from_function(F::p(0)),
            &LogRat::from_function(F::q(1)),
            1,
        );
        assert_eq!(endpoint_limit(&form, Endpoint::PlusOne), Ok(Rational::one()));
        assert_eq!(endpoint_limit(&form, Endpoint::MinusOne), Ok(Rational::from(-1)));
    }

    #[test]
    fn printed_brackets() {
        assert_eq!(bracket_via_oracle(F::p(0), F::q(1), 3).unwrap(), Rational::from(8));
        assert_eq!(bracket_via_oracle(F::p(0), F::q(3), 3).unwrap(), Rational::from(288));
        assert_eq!(bracket_via_oracle(F::q(1), F::q(3), 3).unwrap(), Rational::new(860, 3));
    }

    #[test]
    fn pp_forms_vanish_at_endpoints() {
        for n in 1..=3 {
            let f = sesquilinear_at(
                &LogRat::from_function(F::p(2)),
                &LogRat::from_function(F::p(5)),
                n,
            );
            assert!(f.slot(1).is_zero());
            assert_eq!(endpoint_limit(&f, Endpoint::PlusOne), Ok(Rational::zero()));
            assert_eq!(endpoint_limit(&f, Endpoint::MinusOne), Ok(Rational::zero()));
        }
    }

    #[test]
    fn log_squared_slot_is_pp_form() {
        for n in 1..=3 {
            let qq = sesquilinear_at(
                &LogRat::from_function(F::q(0)),
                &LogRat::from_function(F::q(2)),
                n,
            );
            let pp = sesquilinear_at(
                &LogRat::from_function(F::p(0)),
                &LogRat::from_function(F::p(2)),
                n,
            );
            assert_eq!(qq.slot(2), pp.plain());
            // P/Q pairs never produce Λ²
            let pq = sesquilinear_at(
                &LogRat::from_function(F::p(1)),
                &LogRat::from_function(F::q(4)),
                n,
            );
            assert!(pq.log_degree() <= Some(1));
        }
    }

    #[test]
    fn fn_conditions() {
        let q0 = LogRat::from_function(F::q(0));
        let c = fn_condition_check(&q0, 1);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].left, Ok(Rational::one()));
        assert_eq!(c[0].right, Ok(Rational::one()));
        assert!(c[0].holds());

        for k in 0..=5 {
            let p = LogRat::from_function(F::p(k));
            for n in 1..=4 {
                assert!(fn_condition_check(&p, n).iter().all(FnCondition::holds));
            }
        }
    }
}
