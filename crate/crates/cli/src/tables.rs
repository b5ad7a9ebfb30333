//! Reference matrices reproduced by `verify --suite paper-tables`, with the
//! selections that generate them.

use gkn_core::{IndexSelection, Rational};

pub struct ReferenceTable {
    pub name: &'static str,
    pub block: Block,
    pub p: &'static [usize],
    pub q: &'static [usize],
    pub power: u32,
    pub rows: &'static [&'static [&'static str]],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
pub enum Block {
    M,
    B,
    C,
}

impl ReferenceTable {
    pub fn selection(&self) -> IndexSelection {
        IndexSelection::new(self.p.to_vec(), self.q.to_vec(), self.power)
            .expect("reference selections are valid")
    }

    pub fn entries(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.parse().expect("reference entry")).collect())
            .collect()
    }
}

pub const M3: ReferenceTable = ReferenceTable {
    name: "M3",
    block: Block::M,
    p: &[0, 1, 2],
    q: &[1, 2, 3],
    power: 3,
    rows: &[
        &["0", "0", "0", "8", "0", "288"],
        &["0", "0", "0", "0", "104", "0"],
        &["0", "0", "0", "104", "0", "504"],
        &["-8", "0", "-104", "0", "0", "860/3"],
        &["0", "-104", "0", "0", "0", "0"],
        &["-288", "0", "-504", "-860/3", "0", "0"],
    ],
};

pub const B4: ReferenceTable = ReferenceTable {
    name: "B4",
    block: Block::B,
    p: &[0, 1, 2, 3],
    q: &[0, 1, 2, 3],
    power: 4,
    rows: &[
        &["0", "16", "0", "3456"],
        &["16", "0", "640", "0"],
        &["0", "640", "0", "6480"],
        &["3456", "0", "6480", "0"],
    ],
};

pub const B5: ReferenceTable = ReferenceTable {
    name: "B5",
    block: Block::B,
    p: &[0, 1, 2, 3, 4],
    q: &[1, 2, 3, 4, 5],
    power: 5,
    rows: &[
        &["32", "0", "41472", "0", "1620000"],
        &["0", "3872", "0", "355552", "0"],
        &["3872", "0", "80352", "0", "2024352"],
        &["0", "80352", "0", "737792", "0"],
        &["355552", "0", "737792", "0", "4220000"],
    ],
};

pub const B4_LARGE: ReferenceTable = ReferenceTable {
    name: "B4-large",
    block: Block::B,
    p: &[17, 42, 49, 125],
    q: &[24, 82, 97, 178],
    power: 4,
    rows: &[
        &["821988432", "660210828928", "0", "65319097828480"],
        &["0", "0", "2118187203328", "0"],
        &["38811250000", "968624405632", "0", "70078111267456"],
        &["8123415750000", "13280257143232", "0", "120291674577856"],
    ],
};

pub const ALL: [&ReferenceTable; 4] = [&M3, &B4, &B5, &B4_LARGE];
