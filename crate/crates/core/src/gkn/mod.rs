//! Boundary-form matrices `M_n` of candidate GKN function sets, their
//! `B` and `C` blocks, and exact rank decisions.
//!
//! For a selection `P_{j_1..j_r}`, `Q_{k_1..k_s}` the matrix is
//! `M[i][l] = [w_i, w_l]_n |_{-1}^{1}` with the `P` labels first. The
//! `P`-vs-`P` block vanishes identically, so
//! `M = [[0, B], [−Bᵀ, C]]` and `det M = (det B)²` when `r = s`.

mod linalg;
mod selection;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bracket::bracket;
use crate::classical::ClassicalFunction;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

pub use linalg::{det_exact, magnitude_range, max_entry_bits, pivot_columns, rank_exact};
pub use selection::{parse_index_list, IndexSelection};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketMatrix {
    pub power: u32,
    pub row_labels: Vec<ClassicalFunction>,
    pub col_labels: Vec<ClassicalFunction>,
    pub entries: Vec<Vec<Rational>>,
}

impl BracketMatrix {
    fn evaluate(rows: Vec<ClassicalFunction>, cols: Vec<ClassicalFunction>, power: u32) -> Self {
        let entries = rows
            .iter()
            .map(|&f| cols.iter().map(|&g| bracket(f, g, power)).collect())
            .collect();
        BracketMatrix { power, row_labels: rows, col_labels: cols, entries }
    }

    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.nrows() == self.ncols()
            && (0..self.nrows()).all(|i| {
                (0..=i).all(|j| self.entries[i][j] == -&self.entries[j][i])
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows() == self.ncols()
            && (0..self.nrows()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn rank(&self) -> usize {
        rank_exact(&self.entries)
    }

    pub fn det(&self) -> Result<Rational> {
        det_exact(&self.entries)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(Rational::to_string).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// Column-aligned text with row and column labels.
    pub fn to_pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(Rational::to_string).collect())
            .collect();
        let label_w = self.row_labels.iter().map(|l| l.to_string().len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.ncols())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain(std::iter::once(self.col_labels[j].to_string().len()))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let mut out = String::new();
        let _ = write!(out, "{:label_w$}", "");
        for (j, l) in self.col_labels.iter().enumerate() {
            let _ = write!(out, "  {:>w$}", l.to_string(), w = widths[j]);
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            let _ = write!(out, "{:<label_w$}", self.row_labels[i].to_string());
            for (j, c) in row.iter().enumerate() {
                let _ = write!(out, "  {:>w$}", c, w = widths[j]);
            }
            out.push('\n');
        }
        out
    }
}

/// Full matrix `M` for a selection, `P` labels first.
pub fn build_matrix(sel: &IndexSelection) -> BracketMatrix {
    let labels = sel.labels();
    BracketMatrix::evaluate(labels.clone(), labels, sel.power())
}

/// Upper-right block: rows `P_j`, columns `Q_k`.
pub fn b_block(sel: &IndexSelection) -> BracketMatrix {
    BracketMatrix::evaluate(sel.p_functions().collect(), sel.q_functions().collect(), sel.power())
}

/// Lower-right block: rows and columns `Q_k`.
pub fn c_block(sel: &IndexSelection) -> BracketMatrix {
    let q: Vec<_> = sel.q_functions().collect();
    BracketMatrix::evaluate(q.clone(), q, sel.power())
}

/// Rank-certified independence modulo the minimal domain: `true` when `M`
/// has full rank. A `false` result does not certify dependence, since full
/// rank is only a sufficient condition.
pub fn is_li_mod_dmin(sel: &IndexSelection) -> Result<bool> {
    let max = 2 * sel.power() as usize;
    if sel.len() > max {
        return Err(Error::InvalidSelection(format!(
            "{} functions exceed 2n = {max} for deficiency indices (n, n)",
            sel.len()
        )));
    }
    Ok(build_matrix(sel).rank() == sel.len())
}

pub fn parity_census(sel: &IndexSelection) -> (usize, usize) {
    sel.parity_census()
}

/// Whether all pairwise brackets among `functions` vanish.
pub fn glazman_symmetry_check(functions: &[ClassicalFunction], n: u32) -> bool {
    functions.iter().enumerate().all(|(i, &f)| {
        functions[i + 1..].iter().all(|&g| bracket(f, g, n).is_zero())
    })
}
