//! Ranked posets given by faces and cover relations.
//!
//! A [`RankedPoset`] is raw input: faces with ranks in `-1..=k` plus a list of
//! cover pairs. Structural problems (dangling ids, non-upward covers, empty
//! rank levels) are reported as [`PosetError`] and are distinct from axiom
//! violations, which [`crate::validate`] reports on structurally sound input.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense face identifier; ids always run `0..face_count`.
#[derive(
    Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FaceId(pub u32);

impl FaceId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Face rank. Proper faces have ranks `0..k`; the least face has rank `-1`
/// and the greatest face rank `k`.
pub type Rank = i32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedPoset {
    rank: Rank,
    face_ranks: Vec<Rank>,
    covers: Vec<(FaceId, FaceId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetError {
    NoFaces,
    RankBelowMinusOne { declared: Rank },
    FaceRankOutOfRange { face: FaceId, rank: Rank, max: Rank },
    CoverFaceOutOfRange { low: u32, high: u32 },
    CoverNotUpward { low: FaceId, high: FaceId },
    EmptyRank { rank: Rank },
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::NoFaces => write!(f, "poset has no faces"),
            PosetError::RankBelowMinusOne { declared } => {
                write!(f, "declared rank {declared} is below -1")
            }
            PosetError::FaceRankOutOfRange { face, rank, max } => {
                write!(f, "face {face} has rank {rank} outside -1..={max}")
            }
            PosetError::CoverFaceOutOfRange { low, high } => {
                write!(f, "cover ({low}, {high}) names a face that does not exist")
            }
            PosetError::CoverNotUpward { low, high } => {
                write!(f, "cover ({low}, {high}) does not go up one level")
            }
            PosetError::EmptyRank { rank } => write!(f, "no face has rank {rank}"),
        }
    }
}

impl std::error::Error for PosetError {}

impl RankedPoset {
    /// Empty poset intended to have faces of ranks `-1..=rank`.
    pub fn new(rank: Rank) -> Self {
        RankedPoset {
            rank,
            face_ranks: Vec::new(),
            covers: Vec::new(),
        }
    }

    pub fn from_parts(rank: Rank, face_ranks: Vec<Rank>, covers: Vec<(FaceId, FaceId)>) -> Self {
        RankedPoset {
            rank,
            face_ranks,
            covers,
        }
    }

    pub fn add_face(&mut self, rank: Rank) -> FaceId {
        let id = FaceId(self.face_ranks.len() as u32);
        self.face_ranks.push(rank);
        id
    }

    pub fn add_cover(&mut self, low: FaceId, high: FaceId) {
        self.covers.push((low, high));
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

    pub fn face_ranks(&self) -> &[Rank] {
        &self.face_ranks
    }

    pub fn covers(&self) -> &[(FaceId, FaceId)] {
        &self.covers
    }
}

/// Adjacency and reachability data computed from a structurally sound poset.
#[derive(Clone, Debug)]
pub(crate) struct Derived {
    /// Face ids per level; level `l` holds rank `l - 1`.
    pub by_rank: Vec<Vec<FaceId>>,
    pub up: Vec<Vec<FaceId>>,
    pub down: Vec<Vec<FaceId>>,
    /// `up_sets[f]` lists every face `>= f`, ascending by id, under the
    /// reflexive-transitive closure of the cover relation. Kept as sorted
    /// lists rather than a bit matrix: posets this crate meets are sparse,
    /// and a dense matrix costs quadratic memory in the face count.
    pub up_sets: Vec<Vec<FaceId>>,
}

impl Derived {
    /// `a <= b` in the face order.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up_sets[a].binary_search(&FaceId(b as u32)).is_ok()
    }
}

/// Runs the structural checks and builds adjacency plus the `leq` closure.
pub(crate) fn build_derived(p: &RankedPoset) -> Result<Derived, PosetError> {
    let n = p.face_count();
    if n == 0 {
        return Err(PosetError::NoFaces);
    }
    if p.rank < -1 {
        return Err(PosetError::RankBelowMinusOne { declared: p.rank });
    }
    for (i, &r) in p.face_ranks.iter().enumerate() {
        if r < -1 || r > p.rank {
            return Err(PosetError::FaceRankOutOfRange {
                face: FaceId(i as u32),
                rank: r,
                max: p.rank,
            });
        }
    }

    let levels = (p.rank + 2) as usize;
    let mut by_rank: Vec<Vec<FaceId>> = vec![Vec::new(); levels];
    for (i, &r) in p.face_ranks.iter().enumerate() {
        by_rank[(r + 1) as usize].push(FaceId(i as u32));
    }
    for (level, faces) in by_rank.iter().enumerate() {
        if faces.is_empty() {
            return Err(PosetError::EmptyRank {
                rank: level as Rank - 1,
            });
        }
    }

    let mut up: Vec<Vec<FaceId>> = vec![Vec::new(); n];
    let mut down: Vec<Vec<FaceId>> = vec![Vec::new(); n];
    for &(lo, hi) in &p.covers {
        if lo.index() >= n || hi.index() >= n {
            return Err(PosetError::CoverFaceOutOfRange {
                low: lo.0,
                high: hi.0,
            });
        }
        if p.face_rank(hi) != p.face_rank(lo) + 1 {
            return Err(PosetError::CoverNotUpward { low: lo, high: hi });
        }
        up[lo.index()].push(hi);
        down[hi.index()].push(lo);
    }
    for list in up.iter_mut().chain(down.iter_mut()) {
        list.sort_unstable();
        list.dedup();
    }

    // Upward reachability closure, filled from the top level down so that
    // every upper cover's set is final before it is merged.
    let mut up_sets: Vec<Vec<FaceId>> = vec![Vec::new(); n];
    for level_faces in by_rank.iter().rev() {
        for &f in level_faces {
            let mut acc = vec![f];
            for g in &up[f.index()] {
                acc.extend_from_slice(&up_sets[g.index()]);
            }
            acc.sort_unstable();
            acc.dedup();
            up_sets[f.index()] = acc;
        }
    }

    Ok(Derived {
        by_rank,
        up,
        down,
        up_sets,
    })
}
