//! Exhaustive enumeration of index selections and batch rank evaluation.
//!
//! Evaluation fans out over rayon when the `parallel` feature is on and
//! falls back to a plain loop otherwise. Output order always follows the
//! input order, so results do not depend on the worker count.

use serde::Serialize;

use crate::error::Result;
use crate::exactnum::Rational;
use crate::gkn::{b_block, build_matrix, IndexSelection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    /// `None` uses the global rayon pool.
    #[default]
    Parallel,
    Workers(usize),
}

/// Applies `f` to every item, preserving order.
pub fn par_map<T, U, F>(items: &[T], mode: ExecMode, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match mode {
            ExecMode::Sequential => items.iter().map(f).collect(),
            ExecMode::Parallel => items.par_iter().map(f).collect(),
            ExecMode::Workers(1) => items.iter().map(f).collect(),
            ExecMode::Workers(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
                Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
                Err(_) => items.par_iter().map(f).collect(),
            },
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = mode;
        items.iter().map(f).collect()
    }
}

/// Bounds for an exhaustive sweep. Pools are index counts: a pool of 8
/// means indices `0..=7`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepBounds {
    pub power: u32,
    pub p_pool: usize,
    pub q_pool: usize,
    /// Keep only selections with as many even as odd indices.
    pub parity_balanced_only: bool,
}

impl SweepBounds {
    pub fn new(power: u32, pool: usize) -> Self {
        SweepBounds { power, p_pool: pool, q_pool: pool, parity_balanced_only: true }
    }
}

/// All strictly increasing `k`-subsets of `0..pool` in lexicographic order.
pub fn combinations(pool: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > pool {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + pool - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Selections with `n` P-indices and `n` Q-indices inside the bounds, in
/// lexicographic order of `(P, Q)`.
pub fn enumerate_selections(bounds: &SweepBounds) -> Result<Vec<IndexSelection>> {
    let n = bounds.power as usize;
    let qs = combinations(bounds.q_pool, n);
    let mut out = Vec::new();
    for p in combinations(bounds.p_pool, n) {
        let p_even = p.iter().filter(|&&i| i % 2 == 0).count();
        for q in &qs {
            if bounds.parity_balanced_only {
                let even = p_even + q.iter().filter(|&&i| i % 2 == 0).count();
                if 2 * even != 2 * n {
                    continue;
                }
            }
            out.push(IndexSelection::new(p.clone(), q.clone(), bounds.power)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectionOutcome {
    pub selection: IndexSelection,
    pub rank: usize,
    pub full_rank: bool,
    pub det_b: Rational,
}

impl SelectionOutcome {
    /// A parity-balanced selection that still fails the rank test.
    pub fn is_conjecture_counterexample(&self) -> bool {
        self.selection.is_parity_balanced() && !self.full_rank
    }
}

/// Rank of `M` and determinant of `B` (zero unless `B` is square).
pub fn evaluate(sel: &IndexSelection) -> SelectionOutcome {
    let rank = build_matrix(sel).rank();
    let b = b_block(sel);
    let det_b = b.det().unwrap_or_else(|_| Rational::zero());
    SelectionOutcome {
        selection: sel.clone(),
        rank,
        full_rank: rank == sel.len(),
        det_b,
    }
}

pub fn evaluate_all(selections: &[IndexSelection], mode: ExecMode) -> Vec<SelectionOutcome> {
    par_map(selections, mode, evaluate)
}
