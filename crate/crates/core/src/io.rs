//! The scheme file format: a single JSON document.
//!
//! ```json
//! {
//!   "ambient_dim": 2,
//!   "field": {"kind": "Q"},
//!   "points": [{"id": "p1", "mult": 2, "coords": ["0", "1/2", "1"]}],
//!   "lines": [{"name": "L1", "points": ["p1"], "coeffs": ["1", "0", "0"]}]
//! }
//! ```

use std::collections::HashMap;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scheme::{FatPointScheme, FieldSpec, NamedLine, PointId, SchemeError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed scheme JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate point id `{0}`")]
    DuplicatePoint(String),
    #[error("line `{line}` lists unknown point id `{id}`")]
    UnknownPoint { line: String, id: String },
    #[error("`{0}` is not an integer or a fraction a/b")]
    BadNumber(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum FieldFile {
    Q {},
    Fp { p: u64 },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    id: String,
    mult: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineFile {
    name: String,
    points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<FieldFile>,
    points: Vec<PointFile>,
    lines: Vec<LineFile>,
}

fn parse_number(s: &str) -> Result<BigRational, FormatError> {
    let bad = || FormatError::BadNumber(s.to_string());
    let t = s.trim();
    if let Some((_, d)) = t.split_once('/') {
        if d.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|_| bad())?
            .is_zero()
        {
            return Err(bad());
        }
    }
    BigRational::from_str(t).map_err(|_| bad())
}

fn parse_numbers(v: &Option<Vec<String>>) -> Result<Option<Vec<BigRational>>, FormatError> {
    v.as_ref()
        .map(|xs| xs.iter().map(|x| parse_number(x)).collect())
        .transpose()
}

/// Parses a scheme document. Structural invariants are checked separately by
/// [`FatPointScheme::validate`].
pub fn scheme_from_json(text: &str) -> Result<FatPointScheme, FormatError> {
    let file: SchemeFile = serde_json::from_str(text)?;
    let field = match file.field {
        None => None,
        Some(FieldFile::Q {}) => Some(FieldSpec::Rationals),
        Some(FieldFile::Fp { p }) => Some(FieldSpec::prime(p)?),
    };
    let mut scheme = FatPointScheme::new(file.ambient_dim, field)?;
    let mut ids = HashMap::new();
    for p in &file.points {
        let id = match parse_numbers(&p.coords)? {
            Some(c) => scheme.add_point_with_coords(p.id.clone(), p.mult, c),
            None => scheme.add_point(p.id.clone(), p.mult),
        };
        if ids.insert(p.id.as_str(), id).is_some() {
            return Err(FormatError::DuplicatePoint(p.id.clone()));
        }
    }
    for l in &file.lines {
        let incidence = l
            .points
            .iter()
            .map(|name| {
                ids.get(name.as_str())
                    .copied()
                    .ok_or_else(|| FormatError::UnknownPoint {
                        line: l.name.clone(),
                        id: name.clone(),
                    })
            })
            .collect::<Result<Vec<PointId>, _>>()?;
        let mut line = NamedLine::new(l.name.clone(), incidence);
        if let Some(c) = parse_numbers(&l.coeffs)? {
            line = line.with_coefficients(c);
        }
        scheme.add_line(line);
    }
    Ok(scheme)
}

/// Serializes a scheme; output is byte-for-byte deterministic.
pub fn scheme_to_json(scheme: &FatPointScheme) -> String {
    let strings = |v: &Option<Vec<BigRational>>| {
        v.as_ref()
            .map(|xs| xs.iter().map(|x| x.to_string()).collect())
    };
    let file = SchemeFile {
        ambient_dim: scheme.ambient_dim(),
        field: scheme.field().map(|f| match f {
            FieldSpec::Rationals => FieldFile::Q {},
            FieldSpec::PrimeField(p) => FieldFile::Fp { p: p as u64 },
        }),
        points: scheme
            .points()
            .iter()
            .map(|p| PointFile {
                id: p.label.clone(),
                mult: p.mult,
                coords: strings(&p.coords),
            })
            .collect(),
        lines: scheme
            .lines()
            .iter()
            .map(|l| LineFile {
                name: l.name.clone(),
                points: l
                    .incidence
                    .iter()
                    .map(|id| scheme.points()[id.0].label.clone())
                    .collect(),
                coeffs: strings(&l.coefficients),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("scheme serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "ambient_dim": 2,
        "field": {"kind": "Q"},
        "points": [
            {"id": "a", "mult": 2, "coords": ["0", "0", "1"]},
            {"id": "b", "mult": 1, "coords": ["1/2", "0", "1"]},
            {"id": "c", "mult": 1, "coords": ["0", "-3", "1"]}
        ],
        "lines": [
            {"name": "L", "points": ["a", "b"], "coeffs": ["0", "1", "0"]},
            {"name": "M", "points": ["a", "c"]}
        ]
    }"#;

    #[test]
    fn round_trip() {
        let s = scheme_from_json(SAMPLE).unwrap();
        assert!(s.validate().is_empty(), "{:?}", s.validate());
        assert_eq!(s.degree(), 5);
        let text = scheme_to_json(&s);
        let again = scheme_from_json(&text).unwrap();
        assert_eq!(again, s);
        assert_eq!(scheme_to_json(&again), text);
    }

    #[test]
    fn prime_field() {
        let s = scheme_from_json(
            r#"{"ambient_dim":2,"field":{"kind":"Fp","p":7},"points":[],"lines":[]}"#,
        )
        .unwrap();
        assert_eq!(s.field(), Some(FieldSpec::PrimeField(7)));
        assert!(scheme_from_json(
            r#"{"ambient_dim":2,"field":{"kind":"Fp","p":8},"points":[],"lines":[]}"#
        )
        .is_err());
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(scheme_from_json(r#"{"ambient_dim":2,"points":[],"lines":[],"extra":1}"#).is_err());
        assert!(scheme_from_json(
            r#"{"ambient_dim":2,"points":[{"id":"a","mult":1,"w":0}],"lines":[]}"#
        )
        .is_err());
        assert!(scheme_from_json(
            r#"{"ambient_dim":2,"field":{"kind":"Q","p":3},"points":[],"lines":[]}"#
        )
        .is_err());
    }

    #[test]
    fn rejects_bad_references_and_numbers() {
        let dup =
            r#"{"ambient_dim":2,"points":[{"id":"a","mult":1},{"id":"a","mult":1}],"lines":[]}"#;
        assert!(matches!(
            scheme_from_json(dup),
            Err(FormatError::DuplicatePoint(_))
        ));
        let unknown = r#"{"ambient_dim":2,"points":[{"id":"a","mult":1}],"lines":[{"name":"L","points":["z"]}]}"#;
        assert!(matches!(
            scheme_from_json(unknown),
            Err(FormatError::UnknownPoint { .. })
        ));
        for bad in ["1/0", "x", "1.5", ""] {
            let doc = format!(
                r#"{{"ambient_dim":2,"field":{{"kind":"Q"}},"points":[{{"id":"a","mult":1,"coords":["{bad}","0","1"]}}],"lines":[]}}"#
            );
            assert!(
                matches!(scheme_from_json(&doc), Err(FormatError::BadNumber(_))),
                "{bad}"
            );
        }
        assert!(matches!(
            scheme_from_json(r#"{"ambient_dim":1,"points":[],"lines":[]}"#),
            Err(FormatError::Scheme(SchemeError::AmbientDimension(1)))
        ));
    }
}
