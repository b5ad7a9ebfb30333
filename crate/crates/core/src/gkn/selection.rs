use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classical::ClassicalFunction;
use crate::error::{Error, Result};

/// Chosen `P`-indices and `Q`-indices for a candidate set of GKN conditions
/// of the `power`-th Legendre power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSelection")]
pub struct IndexSelection {
    p_indices: Vec<usize>,
    q_indices: Vec<usize>,
    power: u32,
}

#[derive(Deserialize)]
struct RawSelection {
    p_indices: Vec<usize>,
    q_indices: Vec<usize>,
    power: u32,
}

impl TryFrom<RawSelection> for IndexSelection {
    type Error = Error;
    fn try_from(r: RawSelection) -> Result<Self> {
        IndexSelection::new(r.p_indices, r.q_indices, r.power)
    }
}

fn strictly_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl IndexSelection {
    pub fn new(p_indices: Vec<usize>, q_indices: Vec<usize>, power: u32) -> Result<Self> {
        if power == 0 {
            return Err(Error::ZeroPower);
        }
        if !strictly_increasing(&p_indices) || !strictly_increasing(&q_indices) {
            return Err(Error::InvalidSelection(format!(
                "indices must be strictly increasing: P{p_indices:?} Q{q_indices:?}"
            )));
        }
        Ok(IndexSelection { p_indices, q_indices, power })
    }

    /// `P_0..P_{n-1}` with `Q_0..Q_{n-1}` for even `n` and `Q_1..Q_n` for odd `n`.
    pub fn canonical(n: u32) -> Result<Self> {
        let n_us = n as usize;
        let q_start = if n % 2 == 0 { 0 } else { 1 };
        IndexSelection::new(
            (0..n_us).collect(),
            (q_start..q_start + n_us).collect(),
            n,
        )
    }

    pub fn p_indices(&self) -> &[usize] {
        &self.p_indices
    }

    pub fn q_indices(&self) -> &[usize] {
        &self.q_indices
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn len(&self) -> usize {
        self.p_indices.len() + self.q_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Labels in matrix order: the `P` block first, then the `Q` block.
    pub fn labels(&self) -> Vec<ClassicalFunction> {
        self.p_functions().chain(self.q_functions()).collect()
    }

    pub fn p_functions(&self) -> impl Iterator<Item = ClassicalFunction> + '_ {
        self.p_indices.iter().map(|&i| ClassicalFunction::p(i))
    }

    pub fn q_functions(&self) -> impl Iterator<Item = ClassicalFunction> + '_ {
        self.q_indices.iter().map(|&i| ClassicalFunction::q(i))
    }

    /// `(even, odd)` counts over the union of both index lists, counted with
    /// multiplicity.
    pub fn parity_census(&self) -> (usize, usize) {
        let evens = self
            .p_indices
            .iter()
            .chain(&self.q_indices)
            .filter(|&&i| i % 2 == 0)
            .count();
        (evens, self.len() - evens)
    }

    pub fn is_parity_balanced(&self) -> bool {
        let (e, o) = self.parity_census();
        e == o
    }

    /// Canonical ledger key, e.g. `n=3;P=0,1,2;Q=1,2,3`.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for IndexSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};P={};Q={}", self.power, join(&self.p_indices), join(&self.q_indices))
    }
}

/// Parses a comma separated index list such as `0,1,2`. Empty input gives an
/// empty list.
pub fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index {t:?}")))
        })
        .collect()
}

impl FromStr for IndexSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad selection key {s:?}"));
        let mut parts = s.trim().split(';');
        let n = parts
            .next()
            .and_then(|p| p.strip_prefix("n="))
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let p = parts.next().and_then(|p| p.strip_prefix("P=")).ok_or_else(bad)?;
        let q = parts.next().and_then(|p| p.strip_prefix("Q=")).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        IndexSelection::new(parse_index_list(p)?, parse_index_list(q)?, n)
    }
}
