//! Surface invariants of rank-3 polytopal complexes (maps).
//!
//! A rank-3 polytope is a map on a closed surface. Its Euler characteristic
//! is `V - E + F`; the surface is orientable exactly when the flag adjacency
//! graph is bipartite, giving genus `(2 - chi) / 2`, and non-orientable
//! otherwise with crosscap number `2 - chi`.

use std::fmt;

use crate::complex::IncidenceComplex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    NotRank3 { rank: i32 },
    NotPolytopal { c: Vec<u32> },
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::NotRank3 { rank } => {
                write!(f, "surface invariants need rank 3, got rank {rank}")
            }
            SurfaceError::NotPolytopal { c } => {
                write!(f, "surface invariants need all homogeneity parameters 2, got {c:?}")
            }
        }
    }
}

impl std::error::Error for SurfaceError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInfo {
    /// Counts of vertices, edges and 2-faces.
    pub f_vector: [u64; 3],
    pub euler: i64,
    pub orientable: bool,
    /// Present when orientable: `(2 - euler) / 2`.
    pub genus: Option<u64>,
    /// Present when non-orientable: `2 - euler`.
    pub crosscap: Option<u64>,
}

pub fn surface_info(c: &IncidenceComplex) -> Result<SurfaceInfo, SurfaceError> {
    if c.rank() != 3 {
        return Err(SurfaceError::NotRank3 { rank: c.rank() });
    }
    if !c.is_polytope() {
        return Err(SurfaceError::NotPolytopal {
            c: c.c_vector().to_vec(),
        });
    }
    let v = c.faces_of_rank(0).len() as i64;
    let e = c.faces_of_rank(1).len() as i64;
    let f = c.faces_of_rank(2).len() as i64;
    let euler = v - e + f;
    let orientable = c.flag_graph().is_bipartite();
    let (genus, crosscap) = if orientable {
        debug_assert_eq!((2 - euler) % 2, 0, "orientable surfaces have even characteristic");
        (Some(((2 - euler) / 2) as u64), None)
    } else {
        (None, Some((2 - euler) as u64))
    };
    Ok(SurfaceInfo {
        f_vector: [v as u64, e as u64, f as u64],
        euler,
        orientable,
        genus,
        crosscap,
    })
}
