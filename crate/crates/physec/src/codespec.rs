//! Naming codes on the command line and in JSON descriptors.
//!
//! A code spec is one of `table1`, `rm:U,M` (RM(U,M) as the base code),
//! `rm-dual:U,M` (its dual as the base code), `rm-family[:M]` (every RM code
//! up to degree M in the chosen roles) or a path to a JSON descriptor.

use std::path::Path;

use serde::{Deserialize, Serialize};

use physec_core::{sweep, BitMatrix, LinearCode, RmRole, WiretapCode};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::formats::read_text;

/// `{"label": ..., "n": ..., "generator": ["0111", ...]}`, with an optional
/// `parity_check` list of rows spanning the dual code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub label: String,
    pub n: usize,
    pub generator: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_check: Option<Vec<String>>,
}

impl CodeDescriptor {
    pub fn of(w: &WiretapCode) -> Self {
        Self {
            label: w.label().into(),
            n: w.n(),
            generator: w.base_code().generator().to_bitstrings(),
            parity_check: Some(w.parity_check().to_bitstrings()),
        }
    }

    pub fn build(&self) -> Result<WiretapCode> {
        let g = BitMatrix::from_bitstrings(&self.generator, self.n)?;
        let base = LinearCode::new(g, self.label.clone())?;
        Ok(match &self.parity_check {
            Some(rows) => WiretapCode::build_with_parity(&base, &BitMatrix::from_bitstrings(rows, self.n)?)?,
            None => WiretapCode::build(&base)?,
        })
    }
}

fn pair(s: &str) -> Option<(usize, usize)> {
    let (u, m) = s.split_once(',')?;
    Some((u.trim().parse().ok()?, m.trim().parse().ok()?))
}

/// Resolves one spec; families expand to several codes.
pub fn resolve(spec: &str, roles: &[RmRole]) -> Result<Vec<WiretapCode>> {
    let bad = || Error::CodeSpec(spec.into());
    if spec == "table1" {
        return Ok(vec![fixtures::table_one()]);
    }
    if let Some(rest) = spec.strip_prefix("rm-family") {
        let degree = match rest.strip_prefix(':') {
            Some(m) => m.parse().map_err(|_| bad())?,
            None if rest.is_empty() => 5,
            None => return Err(bad()),
        };
        return Ok(sweep::rm_family(degree, roles)?);
    }
    for (prefix, role) in [("rm-dual:", RmRole::Dual), ("rm:", RmRole::Code)] {
        if let Some(rest) = spec.strip_prefix(prefix) {
            let (u, m) = pair(rest).ok_or_else(bad)?;
            return Ok(vec![WiretapCode::from_reed_muller(u, m, role)?]);
        }
    }
    let path = Path::new(spec);
    if path.extension().is_some_and(|e| e == "json") {
        let text = read_text(path)?;
        let d: CodeDescriptor = serde_json::from_str(&text).map_err(|e| Error::json(path, e))?;
        return Ok(vec![d.build()?]);
    }
    Err(bad())
}

/// Resolves a spec that must name exactly one code.
pub fn resolve_one(spec: &str) -> Result<WiretapCode> {
    let mut v = resolve(spec, &[RmRole::Code])?;
    if v.len() != 1 {
        return Err(Error::CodeSpec(spec.into()));
    }
    Ok(v.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(resolve_one("table1").unwrap().label(), "table1");
        let w = resolve_one("rm-dual:1,2").unwrap();
        assert_eq!((w.label(), w.n(), w.k()), ("RM(1,2)-dual", 4, 3));
        assert_eq!(resolve_one("rm:1,3").unwrap().k(), 4);
        assert_eq!(resolve("rm-family", &[RmRole::Code, RmRole::Dual]).unwrap().len(), 20);
        assert_eq!(resolve("rm-family:3", &[RmRole::Dual]).unwrap().len(), 3);
        assert!(resolve_one("rm-family:3").is_err());
        assert!(matches!(resolve_one("hamming"), Err(Error::CodeSpec(_))));
        assert!(resolve_one("rm:2,2").is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let w = fixtures::table_one();
        let d = CodeDescriptor::of(&w);
        assert_eq!(d.generator, ["0111", "1110"]);
        assert_eq!(
            d.parity_check.as_deref(),
            Some(&["1101".to_string(), "1011".to_string()][..])
        );
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("code.json");
        std::fs::write(&path, serde_json::to_string(&d).unwrap()).unwrap();
        let back = resolve_one(path.to_str().unwrap()).unwrap();
        assert_eq!(back.parity_check(), w.parity_check());
        assert!(back.syndrome_is_message());
    }
}
