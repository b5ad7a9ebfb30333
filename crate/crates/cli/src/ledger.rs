//! Append-only JSON-lines sweep ledger.
//!
//! One record per selection, keyed by the selection's canonical string
//! (which includes the power). Records are only ever appended, so a ledger
//! cut short by a crash is still valid and a rerun resumes where it stopped.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use gkn_core::sweep::SelectionOutcome;
use gkn_core::{BracketMatrix, IndexSelection, Rational};
use serde::{Deserialize, Serialize};

pub const COUNTEREXAMPLE_FLAG: &str = "CONJECTURE-COUNTEREXAMPLE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    #[serde(with = "selection_key")]
    pub selection: IndexSelection,
    pub n: u32,
    pub rank: usize,
    pub full_rank: bool,
    #[serde(rename = "det_B")]
    pub det_b: Rational,
    pub timestamp: String,
    pub engine_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    /// Full `M` for flagged records.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<BracketMatrix>,
}

mod selection_key {
    use gkn_core::IndexSelection;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(sel: &IndexSelection, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(sel)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IndexSelection, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl SweepRecord {
    pub fn from_outcome(out: SelectionOutcome, timestamp: &str) -> Self {
        let counter = out.is_conjecture_counterexample();
        SweepRecord {
            n: out.selection.power(),
            matrix: counter.then(|| gkn_core::gkn::build_matrix(&out.selection)),
            selection: out.selection,
            rank: out.rank,
            full_rank: out.full_rank,
            det_b: out.det_b,
            timestamp: timestamp.to_string(),
            engine_version: gkn_core::ENGINE_VERSION.to_string(),
            flag: counter.then(|| COUNTEREXAMPLE_FLAG.to_string()),
        }
    }

    pub fn key(&self) -> String {
        self.selection.key()
    }

    pub fn is_counterexample(&self) -> bool {
        self.flag.as_deref() == Some(COUNTEREXAMPLE_FLAG)
    }
}

#[derive(Clone, Debug)]
pub struct Ledger {
    path: PathBuf,
}

impl Ledger {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Ledger { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Parsed records. A missing file is an empty ledger; a torn final line
    /// left by an interrupted write is skipped.
    pub fn read_all(&self) -> io::Result<Vec<SweepRecord>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let mut out = Vec::new();
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str(&line) {
                Ok(r) => out.push(r),
                Err(e) => eprintln!("warning: skipping unreadable ledger line: {e}"),
            }
        }
        Ok(out)
    }

    pub fn keys(&self) -> io::Result<HashSet<String>> {
        Ok(self.read_all()?.iter().map(SweepRecord::key).collect())
    }

    /// Appends records in the given order, one line each, and syncs.
    pub fn append(&self, records: &[SweepRecord]) -> io::Result<()> {
        if records.is_empty() {
            return Ok(());
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut file = OpenOptions::new().create(true).read(true).append(true).open(&self.path)?;
        if needs_newline(&mut file)? {
            file.write_all(b"\n")?;
        }
        let mut buf = Vec::new();
        for r in records {
            serde_json::to_writer(&mut buf, r)?;
            buf.push(b'\n');
        }
        file.write_all(&buf)?;
        file.sync_data()
    }
}

fn needs_newline(file: &mut File) -> io::Result<bool> {
    let len = file.metadata()?.len();
    if len == 0 {
        return Ok(false);
    }
    file.seek(SeekFrom::Start(len - 1))?;
    let mut last = [0u8; 1];
    file.read_exact(&mut last)?;
    Ok(last[0] != b'\n')
}

#[cfg(test)]
mod tests {
    use super::*;
    use gkn_core::sweep::evaluate;

    fn record(sel: &str) -> SweepRecord {
        SweepRecord::from_outcome(evaluate(&sel.parse().unwrap()), "2020-01-01T00:00:00Z")
    }

    #[test]
    fn json_shape() {
        let r = record("n=3;P=0,1,2;Q=1,2,3");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["selection"], "n=3;P=0,1,2;Q=1,2,3");
        assert_eq!(v["det_B"], "-2695680");
        assert_eq!(v["full_rank"], true);
        assert!(v.get("flag").is_none());
        let back: SweepRecord = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn unbalanced_deficient_record_is_not_flagged() {
        let r = record("n=2;P=0,2;Q=0,2");
        assert!(!r.full_rank);
        assert!(!r.is_counterexample());
        assert!(r.matrix.is_none());
    }

    #[test]
    fn torn_tail_is_repaired_on_append() {
        let dir = tempfile::tempdir().unwrap();
        let ledger = Ledger::new(dir.path().join("l.jsonl"));
        assert!(ledger.read_all().unwrap().is_empty());
        ledger.append(&[record("n=1;P=0;Q=1")]).unwrap();
        let mut f = OpenOptions::new().append(true).open(ledger.path()).unwrap();
        f.write_all(b"{\"selection\":\"n=1;P=").unwrap();
        drop(f);
        ledger.append(&[record("n=1;P=1;Q=0")]).unwrap();
        let keys = ledger.keys().unwrap();
        assert_eq!(keys.len(), 2);
        assert!(keys.contains("n=1;P=1;Q=0"));
    }
}
