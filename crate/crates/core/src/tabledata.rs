//! Expected table cells, stored as expressions in q.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::formula::{eval, Rational};
use crate::gf::Parity;

#[derive(Debug, Clone, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableSpec {
    pub title: String,
    pub parity: String,
    pub object: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl TableSpec {
    pub fn parity(&self) -> Parity {
        if self.parity == "odd" {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn row(&self, label: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Cells of one row evaluated at q, kept as exact rationals.
    pub fn eval_row(&self, label: &str, q: u64) -> Result<Vec<Rational>> {
        let row = self.row(label).ok_or_else(|| Error::Parse(format!("no row {label} in {}", self.title)))?;
        row.cells.iter().map(|c| eval(c, q)).collect()
    }
}

const SOURCE: &str = include_str!("../data/tables.toml");

pub fn tables() -> &'static BTreeMap<String, TableSpec> {
    static CELL: OnceLock<BTreeMap<String, TableSpec>> = OnceLock::new();
    CELL.get_or_init(|| toml::from_str(SOURCE).expect("embedded table data parses"))
}

pub fn table(id: &str) -> &'static TableSpec {
    &tables()[id]
}
