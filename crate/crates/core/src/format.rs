//! The JSON lattice document:
//!
//! ```json
//! {"name": "mo:2", "elements": ["0", "a", ...], "covers": [["0", "a"], ...],
//!  "ortho": {"0": "1", ...}}
//! ```
//!
//! `ortho` is optional. Keys are written in the order above, ortho entries in
//! element order.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{AnyLattice, FiniteLattice, LatticeError, OrthoLattice};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed lattice document at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("cover ({0}, {1}) references an undeclared element")]
    DanglingCover(String, String),
    #[error("ortho mentions undeclared element `{0}`")]
    UnknownOrthoLabel(String),
    #[error("ortho has no entry for `{0}`")]
    OrthoNotTotal(String),
    #[error("ortho is not involutive: {0} -> {1} -> {2}")]
    NotInvolutive(String, String, String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ortho: Option<IndexMap<String, String>>,
}

impl LatticeDocument {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let doc: LatticeDocument = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self, FormatError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Label-level checks: unique labels, covers and ortho entries naming
    /// declared elements, ortho total and involutive.
    pub fn validate(&self) -> Result<(), FormatError> {
        let mut seen = HashSet::new();
        for e in &self.elements {
            if !seen.insert(e.as_str()) {
                return Err(FormatError::DuplicateLabel(e.clone()));
            }
        }
        for (lo, hi) in &self.covers {
            if !seen.contains(lo.as_str()) || !seen.contains(hi.as_str()) {
                return Err(FormatError::DanglingCover(lo.clone(), hi.clone()));
            }
        }
        if let Some(ortho) = &self.ortho {
            for (k, v) in ortho {
                for l in [k, v] {
                    if !seen.contains(l.as_str()) {
                        return Err(FormatError::UnknownOrthoLabel(l.clone()));
                    }
                }
            }
            for e in &self.elements {
                let Some(o) = ortho.get(e) else {
                    return Err(FormatError::OrthoNotTotal(e.clone()));
                };
                let Some(back) = ortho.get(o) else {
                    return Err(FormatError::OrthoNotTotal(o.clone()));
                };
                if back != e {
                    return Err(FormatError::NotInvolutive(e.clone(), o.clone(), back.clone()));
                }
            }
        }
        Ok(())
    }

    /// Builds the lattice (and orthocomplement, if present).
    pub fn to_lattice(&self) -> Result<AnyLattice, FormatError> {
        self.validate()?;
        let covers: Vec<(&str, &str)> = self.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        let base = FiniteLattice::from_covers(self.name.clone(), &elements, &covers)?;
        Ok(match &self.ortho {
            None => base.into(),
            Some(o) => OrthoLattice::from_labels(base, o.iter().map(|(a, b)| (a.as_str(), b.as_str())))?.into(),
        })
    }

    pub fn from_lattice(l: &AnyLattice) -> Self {
        let lat = l.lattice();
        LatticeDocument {
            name: lat.name().to_owned(),
            elements: lat.labels().to_vec(),
            covers: lat
                .covers()
                .iter()
                .map(|&(a, b)| (lat.label(a).to_owned(), lat.label(b).to_owned()))
                .collect(),
            ortho: l.ortho().map(|o| {
                lat.elements()
                    .map(|a| (lat.label(a).to_owned(), lat.label(o.ortho(a)).to_owned()))
                    .collect()
            }),
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

/// Reads, validates and builds in one step.
pub fn parse_lattice_file(path: impl AsRef<Path>) -> Result<LatticeDocument, FormatError> {
    LatticeDocument::read(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MO2: &str = r#"{
  "name": "mo2",
  "elements": ["0", "a", "a'", "b", "b'", "1"],
  "covers": [["0","a"],["0","a'"],["0","b"],["0","b'"],["a","1"],["a'","1"],["b","1"],["b'","1"]],
  "ortho": {"0":"1","1":"0","a":"a'","a'":"a","b":"b'","b'":"b"}
}"#;

    #[test]
    fn parses_mo2() {
        let doc = LatticeDocument::parse(MO2).unwrap();
        let l = doc.to_lattice().unwrap();
        assert_eq!(l.lattice().size(), 6);
        assert!(l.ortho().is_some());
    }

    #[test]
    fn duplicate_label() {
        let err = LatticeDocument::parse(r#"{"name":"d","elements":["0","x","x"],"covers":[]}"#).unwrap_err();
        assert!(matches!(err, FormatError::DuplicateLabel(ref l) if l == "x"), "{err}");
        assert!(err.to_string().contains("`x`"));
    }

    #[test]
    fn non_involutive_ortho() {
        let text = r#"{"name":"n","elements":["0","a","b","c","1"],"covers":[],
            "ortho":{"0":"1","1":"0","a":"b","b":"c","c":"a"}}"#;
        let err = LatticeDocument::parse(text).unwrap_err();
        assert!(matches!(err, FormatError::NotInvolutive(..)), "{err}");
    }

    #[test]
    fn syntax_error_has_position() {
        let err = LatticeDocument::parse("{\n  \"name\": \"x\",\n  \"elements\": [,]\n}").unwrap_err();
        match err {
            FormatError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
        let err = LatticeDocument::parse(r#"{"name":"x","elements":[],"covers":[],"extra":1}"#).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { .. }));
    }

    #[test]
    fn dangling_cover() {
        let err = LatticeDocument::parse(r#"{"name":"d","elements":["0"],"covers":[["0","1"]]}"#).unwrap_err();
        assert!(matches!(err, FormatError::DanglingCover(..)));
    }

    #[test]
    fn key_order_is_stable() {
        let doc = LatticeDocument::parse(MO2).unwrap();
        let json = doc.to_json();
        let name = json.find("\"name\"").unwrap();
        let elements = json.find("\"elements\"").unwrap();
        let covers = json.find("\"covers\"").unwrap();
        let ortho = json.find("\"ortho\"").unwrap();
        assert!(name < elements && elements < covers && covers < ortho);
        assert_eq!(LatticeDocument::parse(&json).unwrap(), doc);
    }
}
