//! Prefix export: CSV and JSON with columns (index, value_text,
//! value_approx, reps, irreducible). `value_text` and `reps` round-trip
//! bit-exactly; the approximation column is display-only, accurate to
//! 10⁻¹² and never used in logic.

use serde::{Deserialize, Serialize};

use crate::engine::Prefix;
use crate::exact::Value;
use crate::families::LikenSpec;
use crate::rep::ExponentVec;

pub const APPROX_DECIMALS: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportRow {
    pub index: usize,
    pub value_text: String,
    pub value_approx: String,
    pub reps: Vec<String>,
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixExport {
    pub spec: LikenSpec,
    pub generators: Vec<Value>,
    pub rows: Vec<ExportRow>,
}

impl PrefixExport {
    pub fn from_prefix(prefix: &Prefix) -> PrefixExport {
        let irr: std::collections::BTreeSet<usize> =
            prefix.irreducible_indices().iter().copied().collect();
        let rows = prefix
            .elements()
            .iter()
            .map(|e| ExportRow {
                index: e.index,
                value_text: e.value.to_string(),
                value_approx: e.value.to_decimal_string(APPROX_DECIMALS),
                reps: e.reps.iter().map(ToString::to_string).collect(),
                irreducible: irr.contains(&e.index),
            })
            .collect();
        PrefixExport {
            spec: prefix.spec().clone(),
            generators: prefix.generators().to_vec(),
            rows,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("export serializes")
    }

    pub fn from_json(s: &str) -> Result<PrefixExport, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,value_text,value_approx,reps,irreducible\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.index,
                r.value_text,
                r.value_approx,
                r.reps.join(";"),
                r.irreducible
            ));
        }
        out
    }

    pub fn rows_from_csv(s: &str) -> Result<Vec<ExportRow>, String> {
        let mut rows = Vec::new();
        for (i, line) in s.lines().enumerate() {
            if i == 0 || line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(format!("line {}: expected 5 fields, got {}", i + 1, fields.len()));
            }
            rows.push(ExportRow {
                index: fields[0].parse().map_err(|e| format!("line {}: {e}", i + 1))?,
                value_text: fields[1].to_string(),
                value_approx: fields[2].to_string(),
                reps: fields[3].split(';').map(str::to_string).collect(),
                irreducible: fields[4].parse().map_err(|e| format!("line {}: {e}", i + 1))?,
            });
        }
        Ok(rows)
    }

    /// Field-exact comparison against an in-memory prefix: indices,
    /// parsed values, parsed representation sets, irreducibility flags.
    pub fn matches_prefix(&self, prefix: &Prefix) -> bool {
        if self.rows.len() != prefix.len() {
            return false;
        }
        let irr: std::collections::BTreeSet<usize> =
            prefix.irreducible_indices().iter().copied().collect();
        self.rows.iter().zip(prefix.elements()).all(|(row, e)| {
            let value: Result<Value, _> = row.value_text.parse();
            let reps: Result<Vec<ExponentVec>, _> =
                row.reps.iter().map(|s| s.parse()).collect();
            row.index == e.index
                && value.as_ref() == Ok(&e.value)
                && reps.as_ref().map(Vec::as_slice) == Ok(e.reps.as_slice())
                && row.irreducible == irr.contains(&e.index)
        })
    }
}
