//! Omega tables on disk.

use std::path::Path;

use lrc_core::ns::OmegaTable;
use lrc_core::rat::parse_rat;
use serde::Deserialize;

use crate::error::{AppError, AppResult};

/// The shipped degree-one and degree-two table for ℙ².
pub const P2_TABLE: &str = include_str!("../../../data/omega_p2.json");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffRow {
    exp2: i32,
    c: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    degree: u32,
    #[serde(default)]
    chi: Option<i64>,
    coeffs: Vec<CoeffRow>,
    #[serde(default)]
    #[allow(dead_code)]
    provenance: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum File {
    Wrapped {
        #[allow(dead_code)]
        #[serde(default)]
        provenance: Option<String>,
        entries: Vec<Entry>,
    },
    List(Vec<Entry>),
    Single(Entry),
}

pub fn parse_omega(text: &str) -> AppResult<OmegaTable> {
    let file: File = serde_json::from_str(text).map_err(|e| AppError::format("Omega table", e))?;
    let entries = match file {
        File::Wrapped { entries, .. } | File::List(entries) => entries,
        File::Single(e) => vec![e],
    };
    let mut rows = Vec::new();
    for e in entries {
        let mut coeffs = Vec::new();
        for r in e.coeffs {
            coeffs.push((r.exp2, parse_rat(&r.c).map_err(|err| AppError::format("Omega table", err))?));
        }
        rows.push((e.degree, e.chi, coeffs));
    }
    Ok(OmegaTable::from_rows(&rows)?)
}

pub fn load_omega(path: Option<&Path>) -> AppResult<OmegaTable> {
    match path {
        None => parse_omega(P2_TABLE),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| AppError::Io { path: p.to_path_buf(), source })?;
            parse_omega(&text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lrc_core::ns::p2_low_degree_table;

    #[test]
    fn shipped_table_matches_classical_moduli() {
        assert_eq!(parse_omega(P2_TABLE).unwrap(), p2_low_degree_table());
    }

    #[test]
    fn rejects_asymmetric_rows() {
        let bad = r#"{"degree":1,"coeffs":[{"exp2":-2,"c":"1"},{"exp2":2,"c":"2"}]}"#;
        assert!(parse_omega(bad).is_err());
        let unknown = r#"{"degree":1,"coeffs":[],"colour":"red"}"#;
        assert!(parse_omega(unknown).is_err());
    }
}
