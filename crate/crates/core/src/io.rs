//! The textual net file format: JSON with fields `n`, `window`, `dims`,
//! `generators`, `arrows`, and optional `labels` and `frame`. Rationals are
//! integers or `"p/q"` strings; unknown fields are rejected; emission is
//! canonical (window sorted, arrows sorted by source then type), so equal
//! presentations serialize to identical bytes.

use std::collections::{BTreeMap, BTreeSet};

use num::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::SimpleSummand;
use crate::gen::GenSpec;
use crate::linalg::{parse_rational, rational_to_string, RMatrix, Rational};
use crate::net::{ArrowRef, NetPresentation};
use crate::quiver::{ArrowType, MultidegreeFrame, Vertex};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed net file: {0}")]
    Malformed(String),
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Malformed(msg.into())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetFile {
    n: usize,
    window: Vec<Vec<i64>>,
    dims: Vec<usize>,
    generators: Vec<Vec<i64>>,
    arrows: Vec<ArrowEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame: Option<FrameFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameFile {
    base: Vec<i64>,
    generators: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowEntry {
    from: Vec<i64>,
    #[serde(rename = "type")]
    arrow_type: usize,
    matrix: Vec<Vec<RatRepr>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Int(i64),
    Str(String),
}

impl RatRepr {
    fn of(r: &Rational) -> RatRepr {
        if r.denom().is_one() {
            if let Ok(i) = i64::try_from(r.numer().clone()) {
                return RatRepr::Int(i);
            }
        }
        RatRepr::Str(rational_to_string(r))
    }

    fn parse(&self) -> Result<Rational, IoError> {
        match self {
            RatRepr::Int(i) => Ok(crate::linalg::rat(*i)),
            RatRepr::Str(s) => parse_rational(s).map_err(bad),
        }
    }
}

fn matrix_to_entries(m: &RMatrix) -> Vec<Vec<RatRepr>> {
    (0..m.rows())
        .map(|r| m.row_slice(r).iter().map(RatRepr::of).collect())
        .collect()
}

fn entries_to_matrix(rows: &[Vec<RatRepr>]) -> Result<RMatrix, IoError> {
    if rows.is_empty() {
        return Ok(RMatrix::zero(0, 0));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(bad("ragged matrix rows"));
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        parsed.push(
            row.iter()
                .map(|x| x.parse())
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if cols == 0 {
        return Ok(RMatrix::zero(rows.len(), 0));
    }
    Ok(RMatrix::from_rows(parsed))
}

fn vertex_from(raw: &[i64]) -> Result<Vertex, IoError> {
    Vertex::from_twists(raw.to_vec()).map_err(|e| bad(e.to_string()))
}

/// Parse a net file.
pub fn parse_net(text: &str) -> Result<NetPresentation, IoError> {
    let file: NetFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    if file.window.len() != file.dims.len() {
        return Err(bad("window and dims arrays differ in length"));
    }
    if let Some(labels) = &file.labels {
        if labels.len() != file.window.len() {
            return Err(bad("labels array does not parallel the window"));
        }
    }
    let mut dims = BTreeMap::new();
    let mut labels: Option<BTreeMap<Vertex, Vec<i64>>> =
        file.labels.as_ref().map(|_| BTreeMap::new());
    for (i, raw) in file.window.iter().enumerate() {
        let v = vertex_from(raw)?;
        if dims.insert(v.clone(), file.dims[i]).is_some() {
            return Err(bad(format!("duplicate window vertex {v}")));
        }
        if let (Some(map), Some(ls)) = (labels.as_mut(), file.labels.as_ref()) {
            map.insert(v, ls[i].clone());
        }
    }
    let mut generators = BTreeSet::new();
    for raw in &file.generators {
        generators.insert(vertex_from(raw)?);
    }
    let mut arrows = BTreeMap::new();
    for entry in &file.arrows {
        if entry.arrow_type > file.n {
            return Err(bad(format!(
                "arrow type {} out of range for n = {}",
                entry.arrow_type, file.n
            )));
        }
        let from = vertex_from(&entry.from)?;
        let aref = ArrowRef::new(from, ArrowType(entry.arrow_type));
        let matrix = entries_to_matrix(&entry.matrix)?;
        if arrows.insert(aref.clone(), matrix).is_some() {
            return Err(bad(format!(
                "duplicate arrow at {} of type {}",
                aref.source, entry.arrow_type
            )));
        }
    }
    let frame = match file.frame {
        Some(f) => Some(MultidegreeFrame::new(f.base, f.generators).map_err(|e| bad(e.to_string()))?),
        None => None,
    };
    Ok(NetPresentation::new(
        file.n, dims, arrows, generators, labels, frame,
    ))
}

fn net_to_file(p: &NetPresentation) -> NetFile {
    let window: Vec<Vec<i64>> = p.window().map(|v| v.twists().to_vec()).collect();
    let dims: Vec<usize> = p.window().map(|v| p.dim_at(v).unwrap()).collect();
    let labels = p.labels().and_then(|map| {
        p.window()
            .map(|v| map.get(v).cloned())
            .collect::<Option<Vec<_>>>()
    });
    NetFile {
        n: p.n(),
        window,
        dims,
        generators: p.generators().iter().map(|v| v.twists().to_vec()).collect(),
        arrows: p
            .arrows()
            .iter()
            .map(|(aref, m)| ArrowEntry {
                from: aref.source.twists().to_vec(),
                arrow_type: aref.arrow_type.0,
                matrix: matrix_to_entries(m),
            })
            .collect(),
        labels,
        frame: p.frame().map(|f| FrameFile {
            base: f.base().to_vec(),
            generators: f.generators().to_vec(),
        }),
    }
}

/// Canonical serialization of a presentation.
pub fn write_net(p: &NetPresentation, pretty: bool) -> String {
    let file = net_to_file(p);
    let mut s = if pretty {
        serde_json::to_string_pretty(&file).expect("net files serialize")
    } else {
        serde_json::to_string(&file).expect("net files serialize")
    };
    s.push('\n');
    s
}

/// Net file plus a `summands` array of generator vertex/vector pairs, the
/// wire form of a successful decomposition.
pub fn write_decomposition(
    p: &NetPresentation,
    summands: &[SimpleSummand],
    pretty: bool,
) -> String {
    #[derive(Serialize)]
    struct SummandOut {
        generator_vertex: Vec<i64>,
        generator_vector: Vec<RatRepr>,
    }
    let mut value = serde_json::to_value(net_to_file(p)).expect("net files serialize");
    let out: Vec<SummandOut> = summands
        .iter()
        .map(|s| SummandOut {
            generator_vertex: s.generator_vertex.twists().to_vec(),
            generator_vector: s.generator_vector.iter().map(RatRepr::of).collect(),
        })
        .collect();
    value
        .as_object_mut()
        .expect("net file is an object")
        .insert(
            "summands".into(),
            serde_json::to_value(out).expect("summands serialize"),
        );
    let mut s = if pretty {
        serde_json::to_string_pretty(&value).expect("values serialize")
    } else {
        serde_json::to_string(&value).expect("values serialize")
    };
    s.push('\n');
    s
}

/// Parse a generator spec file.
pub fn parse_gen_spec(text: &str) -> Result<GenSpec, IoError> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}
