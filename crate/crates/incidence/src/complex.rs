//! Validated incidence complexes.
//!
//! [`IncidenceComplex`] wraps a ranked poset that passed all axiom checks and
//! carries the derived structure used everywhere else: faces by rank, cover
//! lists, the full `<=` closure, homogeneous cover counts, and per-face
//! vertex sets.

use std::fmt;

use crate::flags::{enumerate_flags, Flag, FlagGraph};
use crate::poset::{FaceId, PosetError, Rank, RankedPoset};
use crate::util::FxHashSet;
use crate::validate::{validate_full, ValidationReport};

#[derive(Debug)]
pub enum ComplexError {
    /// Input was not even a well-formed ranked poset.
    Malformed(PosetError),
    /// Structurally sound but violating the axioms; the report says where.
    NotAComplex(ValidationReport),
    /// Section endpoints that are not an incident pair.
    NotIncident { low: FaceId, high: FaceId },
    NotAVertex(FaceId),
    NoSuchFace(FaceId),
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::Malformed(e) => write!(f, "malformed poset: {e}"),
            ComplexError::NotAComplex(report) => {
                write!(f, "not an incidence complex: ")?;
                let mut first = true;
                for v in &report.violations {
                    if !first {
                        write!(f, "; ")?;
                    }
                    write!(f, "{:?}: {}", v.axiom, v.detail)?;
                    first = false;
                }
                Ok(())
            }
            ComplexError::NotIncident { low, high } => {
                write!(f, "faces {low} and {high} are not an incident pair")
            }
            ComplexError::NotAVertex(v) => write!(f, "face {v} is not a vertex"),
            ComplexError::NoSuchFace(v) => write!(f, "face {v} does not exist"),
        }
    }
}

impl std::error::Error for ComplexError {}

impl From<PosetError> for ComplexError {
    fn from(e: PosetError) -> Self {
        ComplexError::Malformed(e)
    }
}

#[derive(Clone, Debug)]
pub struct IncidenceComplex {
    rank: Rank,
    face_ranks: Vec<Rank>,
    by_rank: Vec<Vec<FaceId>>,
    up: Vec<Vec<FaceId>>,
    down: Vec<Vec<FaceId>>,
    /// Sorted list of faces `>= f`, per face; see [`crate::poset`].
    up_sets: Vec<Vec<FaceId>>,
    c: Vec<u32>,
    vertex_sets: Vec<Vec<FaceId>>,
    vertex_describable: bool,
}

impl IncidenceComplex {
    /// Validates the poset and takes ownership of its structure. Fails with
    /// the full report when any axiom is violated.
    pub fn from_poset(p: &RankedPoset) -> Result<Self, ComplexError> {
        let (report, d) = validate_full(p)?;
        if !report.is_complex {
            return Err(ComplexError::NotAComplex(report));
        }
        let vertices = &d.by_rank[1.min(d.by_rank.len() - 1)];
        let n = p.face_count();
        let mut vertex_sets: Vec<Vec<FaceId>> = vec![Vec::new(); n];
        if p.rank() >= 0 {
            // The up-set of a vertex lists exactly the faces containing it,
            // and walking vertices in ascending order keeps each face's
            // vertex list sorted.
            for &v in vertices.iter() {
                for &f in &d.up_sets[v.index()] {
                    vertex_sets[f.index()].push(v);
                }
            }
        }
        let distinct: FxHashSet<&Vec<FaceId>> = vertex_sets.iter().collect();
        let vertex_describable = distinct.len() == n;
        Ok(IncidenceComplex {
            rank: p.rank(),
            face_ranks: p.face_ranks().to_vec(),
            by_rank: d.by_rank,
            up: d.up,
            down: d.down,
            up_sets: d.up_sets,
            c: report.c.expect("valid complex carries its c-vector"),
            vertex_sets,
            vertex_describable,
        })
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn face_count(&self) -> usize {
        self.face_ranks.len()
    }

    pub fn face_rank(&self, f: FaceId) -> Rank {
        self.face_ranks[f.index()]
    }

    pub fn contains(&self, f: FaceId) -> bool {
        f.index() < self.face_count()
    }

    /// Faces of one rank, ascending by id.
    pub fn faces_of_rank(&self, r: Rank) -> &[FaceId] {
        if r < -1 || r > self.rank {
            return &[];
        }
        &self.by_rank[(r + 1) as usize]
    }

    pub fn vertices(&self) -> &[FaceId] {
        self.faces_of_rank(0)
    }

    pub fn least_face(&self) -> FaceId {
        self.by_rank[0][0]
    }

    pub fn greatest_face(&self) -> FaceId {
        self.by_rank.last().unwrap()[0]
    }

    #[inline]
    pub fn leq(&self, a: FaceId, b: FaceId) -> bool {
        self.up_sets[a.index()].binary_search(&b).is_ok()
    }

    pub fn upper_covers(&self, f: FaceId) -> &[FaceId] {
        &self.up[f.index()]
    }

    pub fn lower_covers(&self, f: FaceId) -> &[FaceId] {
        &self.down[f.index()]
    }

    /// Homogeneous cover counts `c_0..c_{k-1}`; all 2 exactly when the
    /// complex is an abstract polytope.
    pub fn c_vector(&self) -> &[u32] {
        &self.c
    }

    pub fn is_polytope(&self) -> bool {
        self.c.iter().all(|&x| x == 2)
    }

    /// Face counts per rank `-1..=k`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_rank.iter().map(|faces| faces.len()).collect()
    }

    /// Vertices below a face, ascending. The least face has the empty set.
    pub fn vertex_set(&self, f: FaceId) -> &[FaceId] {
        &self.vertex_sets[f.index()]
    }

    /// Whether faces are in bijection with their vertex sets.
    pub fn is_vertex_describable(&self) -> bool {
        self.vertex_describable
    }

    pub fn flags(&self) -> Vec<Flag> {
        enumerate_flags(&self.by_rank, &self.up)
    }

    pub fn flag_graph(&self) -> FlagGraph {
        FlagGraph::build(self.rank, self.flags())
    }

    /// The section `G/F`: all faces between `F` and `G`, reranked so the
    /// section's least face has rank -1. Always a valid complex.
    pub fn section(&self, low: FaceId, high: FaceId) -> Result<IncidenceComplex, ComplexError> {
        let (sub, _) = self.section_with_faces(low, high)?;
        Ok(sub)
    }

    /// Section plus the list mapping new ids to faces of `self`.
    pub fn section_with_faces(
        &self,
        low: FaceId,
        high: FaceId,
    ) -> Result<(IncidenceComplex, Vec<FaceId>), ComplexError> {
        if !self.contains(low) {
            return Err(ComplexError::NoSuchFace(low));
        }
        if !self.contains(high) {
            return Err(ComplexError::NoSuchFace(high));
        }
        if !self.leq(low, high) {
            return Err(ComplexError::NotIncident { low, high });
        }
        let mut members: Vec<FaceId> = self.up_sets[low.index()]
            .iter()
            .copied()
            .filter(|&f| self.leq(f, high))
            .collect();
        members.sort_unstable_by_key(|&f| (self.face_rank(f), f));
        let mut new_id = vec![u32::MAX; self.face_count()];
        for (i, &f) in members.iter().enumerate() {
            new_id[f.index()] = i as u32;
        }
        let shift = self.face_rank(low) + 1;
        let rank = self.face_rank(high) - shift;
        let mut p = RankedPoset::new(rank);
        for &f in &members {
            p.add_face(self.face_rank(f) - shift);
        }
        for &f in &members {
            for &g in self.upper_covers(f) {
                if new_id[g.index()] != u32::MAX {
                    p.add_cover(FaceId(new_id[f.index()]), FaceId(new_id[g.index()]));
                }
            }
        }
        let sub = IncidenceComplex::from_poset(&p)?;
        Ok((sub, members))
    }

    /// Section above a vertex: `greatest / v`.
    pub fn vertex_figure(&self, v: FaceId) -> Result<IncidenceComplex, ComplexError> {
        if !self.contains(v) {
            return Err(ComplexError::NoSuchFace(v));
        }
        if self.face_rank(v) != 0 {
            return Err(ComplexError::NotAVertex(v));
        }
        self.section(v, self.greatest_face())
    }

    /// The underlying poset (face ranks plus cover pairs, sorted).
    pub fn to_poset(&self) -> RankedPoset {
        let mut covers = Vec::new();
        for f in 0..self.face_count() {
            for &g in &self.up[f] {
                covers.push((FaceId(f as u32), g));
            }
        }
        covers.sort_unstable();
        RankedPoset::from_parts(self.rank, self.face_ranks.clone(), covers)
    }
}
