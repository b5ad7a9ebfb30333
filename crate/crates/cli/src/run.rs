//! Sweep driver: enumerate, skip what the ledger already holds, evaluate in
//! parallel chunks and append each chunk in enumeration order.

use std::path::PathBuf;

use gkn_core::sweep::{enumerate_selections, evaluate_all, ExecMode, SweepBounds};
use serde::Serialize;

use crate::ledger::{Ledger, SweepRecord};
use crate::{CliError, CliResult, Format};

/// Selections evaluated between two ledger writes.
const CHUNK: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub power: u32,
    /// Index count for P; indices run over `0..pool`.
    pub pool: usize,
    /// Index count for Q; defaults to `pool`.
    pub q_pool: Option<usize>,
    pub parity_filter: bool,
    /// 0 uses every core, 1 runs sequentially.
    pub workers: usize,
    pub format: Format,
    pub ledger: PathBuf,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.power == 0 {
            return Err(CliError::Usage("n must be at least 1".into()));
        }
        Ok(())
    }

    pub fn bounds(&self) -> SweepBounds {
        SweepBounds {
            power: self.power,
            p_pool: self.pool,
            q_pool: self.q_pool.unwrap_or(self.pool),
            parity_balanced_only: self.parity_filter,
        }
    }

    pub fn exec_mode(&self) -> ExecMode {
        match self.workers {
            0 => ExecMode::Parallel,
            1 => ExecMode::Sequential,
            w => ExecMode::Workers(w),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub n: u32,
    pub p_pool: usize,
    pub q_pool: usize,
    pub parity_filter: bool,
    pub selections: usize,
    pub skipped: usize,
    pub appended: usize,
    pub full_rank: usize,
    pub rank_deficient: usize,
    /// Keys of parity-balanced selections that failed the rank test.
    pub counterexamples: Vec<String>,
    pub ledger: String,
}

impl SweepSummary {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => crate::to_json(self),
            Format::Csv => format!(
                "n,p_pool,q_pool,parity_filter,selections,skipped,appended,full_rank,rank_deficient,counterexamples\n{},{},{},{},{},{},{},{},{},{}\n",
                self.n,
                self.p_pool,
                self.q_pool,
                self.parity_filter,
                self.selections,
                self.skipped,
                self.appended,
                self.full_rank,
                self.rank_deficient,
                self.counterexamples.len()
            ),
            Format::Pretty => {
                let mut s = format!(
                    "n = {}, P pool {}, Q pool {}, parity filter {}\n\
                     {} selections: {} already in ledger, {} appended\n\
                     appended: {} full rank, {} rank-deficient\n\
                     ledger: {}\n",
                    self.n,
                    self.p_pool,
                    self.q_pool,
                    if self.parity_filter { "on" } else { "off" },
                    self.selections,
                    self.skipped,
                    self.appended,
                    self.full_rank,
                    self.rank_deficient,
                    self.ledger,
                );
                for k in &self.counterexamples {
                    s.push_str(&format!("{} {k}\n", crate::ledger::COUNTEREXAMPLE_FLAG));
                }
                s
            }
        }
    }
}

/// Runs the sweep with one timestamp for the whole run.
pub fn run_sweep(cfg: &RunConfig, timestamp: &str) -> CliResult<SweepSummary> {
    cfg.validate()?;
    let bounds = cfg.bounds();
    let selections = enumerate_selections(&bounds)?;
    let ledger = Ledger::new(&cfg.ledger);
    let known = ledger.keys()?;
    let todo: Vec<_> = selections.iter().filter(|s| !known.contains(&s.key())).cloned().collect();

    let mut summary = SweepSummary {
        n: cfg.power,
        p_pool: bounds.p_pool,
        q_pool: bounds.q_pool,
        parity_filter: cfg.parity_filter,
        selections: selections.len(),
        skipped: selections.len() - todo.len(),
        ledger: cfg.ledger.display().to_string(),
        ..Default::default()
    };
    let mode = cfg.exec_mode();
    for chunk in todo.chunks(CHUNK) {
        let records: Vec<SweepRecord> = evaluate_all(chunk, mode)
            .into_iter()
            .map(|o| SweepRecord::from_outcome(o, timestamp))
            .collect();
        for r in &records {
            if r.full_rank {
                summary.full_rank += 1;
            } else {
                summary.rank_deficient += 1;
            }
            if r.is_counterexample() {
                eprintln!("{} {}", crate::ledger::COUNTEREXAMPLE_FLAG, r.key());
                summary.counterexamples.push(r.key());
            }
        }
        ledger.append(&records)?;
        summary.appended += records.len();
    }
    Ok(summary)
}

pub fn now_rfc3339() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}
