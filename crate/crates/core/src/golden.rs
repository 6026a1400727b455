//! The n = 2 tables of G⁻ and G⁺ coefficients for partitions up to 10,
//! transcribed as printed, including their row and column orders.

use serde_json::Value;

use crate::laurent::Poly;
use crate::partitions::Partition;
use crate::{Error, Result};

const RAW: &str = include_str!("../data/golden_n2.json");

/// Coefficients of |row) in G⁻_{column}, for the columns 2α.
#[derive(Clone, Debug)]
pub struct MinusTable {
    pub size: usize,
    pub columns: Vec<Partition>,
    pub labels: Vec<Partition>,
    pub matrix: Vec<Vec<Poly>>,
}

/// Coefficients of |row) in G⁺_{column}; square, columns ordered as rows.
/// `None` marks entries that are not displayed.
#[derive(Clone, Debug)]
pub struct PlusTable {
    pub size: usize,
    pub labels: Vec<Partition>,
    pub matrix: Vec<Vec<Option<Poly>>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct GoldenData {
    pub n: usize,
    pub minus: Vec<MinusTable>,
    pub plus: Vec<PlusTable>,
}

fn bad(what: &str) -> Error {
    Error::Invalid(format!("golden data: {}", what))
}

fn partitions(v: &Value) -> Result<Vec<Partition>> {
    v.as_array()
        .ok_or_else(|| bad("label list"))?
        .iter()
        .map(|s| s.as_str().ok_or_else(|| bad("label"))?.parse())
        .collect()
}

fn poly(v: &Value) -> Result<Option<Poly>> {
    match v {
        Value::Null => Ok(None),
        Value::String(s) => s.parse().map(Some),
        _ => Err(bad("entry")),
    }
}

fn rows(v: &Value) -> Result<Vec<Vec<Option<Poly>>>> {
    v.as_array()
        .ok_or_else(|| bad("matrix"))?
        .iter()
        .map(|row| row.as_array().ok_or_else(|| bad("row"))?.iter().map(poly).collect())
        .collect()
}

fn size(t: &Value) -> Result<usize> {
    t["size"].as_u64().map(|x| x as usize).ok_or_else(|| bad("size"))
}

pub fn parse(text: &str) -> Result<GoldenData> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let n = v["n"].as_u64().ok_or_else(|| bad("n"))? as usize;
    let mut minus = Vec::new();
    for t in v["minus"].as_array().ok_or_else(|| bad("minus"))? {
        let matrix = rows(&t["matrix"])?
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.ok_or_else(|| bad("missing G⁻ entry"))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        minus.push(MinusTable { size: size(t)?, columns: partitions(&t["columns"])?, labels: partitions(&t["labels"])?, matrix });
    }
    let mut plus = Vec::new();
    for t in v["plus"].as_array().ok_or_else(|| bad("plus"))? {
        plus.push(PlusTable {
            size: size(t)?,
            labels: partitions(&t["labels"])?,
            matrix: rows(&t["matrix"])?,
            note: t["note"].as_str().map(str::to_string),
        });
    }
    Ok(GoldenData { n, minus, plus })
}

/// The embedded tables.
pub fn load() -> GoldenData {
    parse(RAW).expect("embedded golden data is well formed")
}
