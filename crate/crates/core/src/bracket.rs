//! Closed-form boundary brackets `[f, g]_n |_{-1}^{1}` for `f, g ∈ {P_j, Q_k}`.
//!
//! Both functions are eigenfunctions of the Legendre expression, so Green's
//! formula collapses every bracket to
//! `(λ_j^n − λ_k^n) · ⟨f_j, g_k⟩` with `λ_i = i(i+1)`.
//! The power `n` only enters through that eigenvalue gap.

use serde::Serialize;

use crate::classical::{inner_pq, inner_qq, ClassicalFunction, Kind};
use crate::error::{Error, Result};
use crate::exactnum::{eigenvalue, harmonic, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketValue {
    pub value: Rational,
    pub left: ClassicalFunction,
    pub right: ClassicalFunction,
    pub power: u32,
}

impl BracketValue {
    pub fn compute(left: ClassicalFunction, right: ClassicalFunction, power: u32) -> Self {
        BracketValue { value: bracket(left, right, power), left, right, power }
    }

    pub fn swapped(&self) -> Self {
        BracketValue {
            value: -&self.value,
            left: self.right,
            right: self.left,
            power: self.power,
        }
    }
}

/// `λ_j^n − λ_k^n`.
pub fn eigen_gap(j: usize, k: usize, n: u32) -> Rational {
    Rational::from(eigenvalue(j, n) - eigenvalue(k, n))
}

pub fn bracket(f: ClassicalFunction, g: ClassicalFunction, n: u32) -> Rational {
    debug_assert!(n >= 1);
    let (j, k) = (f.index, g.index);
    match (f.kind, g.kind) {
        (Kind::P, Kind::P) => Rational::zero(),
        (Kind::P, Kind::Q) => {
            if (j + k) % 2 == 0 {
                return Rational::zero();
            }
            let denom = (k as i64 - j as i64) * (j + k + 1) as i64;
            eigen_gap(j, k, n) * Rational::new(-2, denom)
        }
        (Kind::Q, Kind::P) => -bracket(g, f, n),
        (Kind::Q, Kind::Q) => {
            if j == k || (j + k) % 2 == 1 {
                return Rational::zero();
            }
            let denom = (k as i64 - j as i64) * (j + k + 1) as i64;
            Rational::from(2) * (harmonic(j) - harmonic(k))
                * eigen_gap(j, k, n)
                / Rational::from(denom)
        }
    }
}

/// The two factors `(λ_j^n − λ_k^n, ⟨f, g⟩)` whose product is the bracket.
///
/// Pairs with equal index and a vanishing gap return `(0, 0)` except for
/// `(Q_k, Q_k)`, whose inner product is a norm rather than a closed-form
/// entry and is rejected.
pub fn bracket_decomposed(
    f: ClassicalFunction,
    g: ClassicalFunction,
    n: u32,
) -> Result<(Rational, Rational)> {
    let (j, k) = (f.index, g.index);
    let gap = eigen_gap(j, k, n);
    let inner = match (f.kind, g.kind) {
        (Kind::P, Kind::P) => Rational::zero(),
        (Kind::Q, Kind::Q) if j == k => return Err(Error::EqualIndices(j)),
        (Kind::Q, Kind::Q) => inner_qq(j, k)?,
        (Kind::P, Kind::Q) | (Kind::Q, Kind::P) if j == k => Rational::zero(),
        (Kind::P, Kind::Q) => inner_pq(j, k)?,
        (Kind::Q, Kind::P) => inner_pq(k, j)?,
    };
    Ok((gap, inner))
}
