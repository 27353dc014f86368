//! JSON interchange format for complexes, raw posets, and power face
//! tables.
//!
//! A complex is written as `{"rank": k, "faces": [{"id", "rank"}, ...],
//! "covers": [[low, high], ...]}` with faces sorted by (rank, id) and
//! covers sorted pairwise; re-reading a complex is poset-identical. Raw
//! posets use the same shape, which keeps quotients that fail the axioms
//! printable.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, IncidenceComplex};
use crate::poset::{FaceId, Rank, RankedPoset};
use crate::power::{PowerComplex, PowerFace};

#[derive(Debug)]
pub enum JsonError {
    Serde(serde_json::Error),
    DuplicateId { id: u32 },
    IdOutOfRange { id: u32, count: usize },
    Complex(ComplexError),
}

impl fmt::Display for JsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JsonError::Serde(e) => write!(f, "{e}"),
            JsonError::DuplicateId { id } => write!(f, "face id {id} appears twice"),
            JsonError::IdOutOfRange { id, count } => {
                write!(f, "face id {id} breaks the dense range 0..{count}")
            }
            JsonError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for JsonError {}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Serde(e)
    }
}

impl From<ComplexError> for JsonError {
    fn from(e: ComplexError) -> Self {
        JsonError::Complex(e)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonFace {
    pub id: u32,
    pub rank: Rank,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonComplex {
    pub rank: Rank,
    pub faces: Vec<JsonFace>,
    pub covers: Vec<(u32, u32)>,
}

pub fn poset_to_json(p: &RankedPoset) -> JsonComplex {
    let mut faces: Vec<JsonFace> = (0..p.face_count() as u32)
        .map(|id| JsonFace {
            id,
            rank: p.face_rank(FaceId(id)),
        })
        .collect();
    faces.sort_by_key(|f| (f.rank, f.id));
    let mut covers: Vec<(u32, u32)> = p.covers().iter().map(|&(a, b)| (a.0, b.0)).collect();
    covers.sort_unstable();
    covers.dedup();
    JsonComplex {
        rank: p.rank(),
        faces,
        covers,
    }
}

pub fn complex_to_json(c: &IncidenceComplex) -> JsonComplex {
    poset_to_json(&c.to_poset())
}

/// Rebuilds the raw poset; ids must be exactly `0..faces.len()`.
pub fn poset_from_json(j: &JsonComplex) -> Result<RankedPoset, JsonError> {
    let count = j.faces.len();
    let mut ranks: Vec<Option<Rank>> = vec![None; count];
    for face in &j.faces {
        let slot = ranks
            .get_mut(face.id as usize)
            .ok_or(JsonError::IdOutOfRange {
                id: face.id,
                count,
            })?;
        if slot.is_some() {
            return Err(JsonError::DuplicateId { id: face.id });
        }
        *slot = Some(face.rank);
    }
    let face_ranks: Vec<Rank> = ranks
        .into_iter()
        .map(|r| r.expect("dense and duplicate-free ids fill every slot"))
        .collect();
    let covers: Vec<(FaceId, FaceId)> = j
        .covers
        .iter()
        .map(|&(a, b)| (FaceId(a), FaceId(b)))
        .collect();
    Ok(RankedPoset::from_parts(j.rank, face_ranks, covers))
}

pub fn complex_from_json(j: &JsonComplex) -> Result<IncidenceComplex, JsonError> {
    let p = poset_from_json(j)?;
    Ok(IncidenceComplex::from_poset(&p)?)
}

pub fn to_json_string(j: &JsonComplex) -> String {
    serde_json::to_string_pretty(j).expect("serialization of plain data cannot fail")
}

pub fn parse_json(s: &str) -> Result<JsonComplex, JsonError> {
    Ok(serde_json::from_str(s)?)
}

/// A power face's base in the source complex, or the adjoined least face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonBase {
    Face(u32),
    Marker(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonPowerFace {
    pub id: u32,
    pub base: JsonBase,
    /// Fixed tuple values keyed by the source vertex id owning the
    /// coordinate, ascending.
    pub fixed: BTreeMap<u32, u16>,
}

/// Envelope for `power --with-faces`: the complex plus the face table that
/// explains each id as `(base, fixed values)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonPower {
    pub n: u16,
    /// Source vertex id at each coordinate.
    pub vertex_order: Vec<u32>,
    pub complex: JsonComplex,
    pub power_faces: Vec<JsonPowerFace>,
}

pub fn power_to_json(p: &PowerComplex) -> JsonPower {
    let power_faces = p
        .power_faces()
        .iter()
        .enumerate()
        .map(|(id, face)| match face {
            PowerFace::Bottom => JsonPowerFace {
                id: id as u32,
                base: JsonBase::Marker("BOTTOM".into()),
                fixed: BTreeMap::new(),
            },
            PowerFace::Face { base, fixed } => JsonPowerFace {
                id: id as u32,
                base: JsonBase::Face(base.0),
                fixed: p
                    .complement_coords(*base)
                    .iter()
                    .zip(fixed.iter())
                    .map(|(&c, &v)| (p.vertex_order()[c as usize].0, v))
                    .collect(),
            },
        })
        .collect();
    JsonPower {
        n: p.n(),
        vertex_order: p.vertex_order().iter().map(|v| v.0).collect(),
        complex: complex_to_json(p.complex()),
        power_faces,
    }
}
