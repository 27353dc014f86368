//! Generators for standard families of complexes.
//!
//! Face ids are deterministic: within each family, faces are numbered bottom
//! first, then rank by rank in the documented order, greatest face last.

use std::fmt;

use crate::complex::{ComplexError, IncidenceComplex};
use crate::poset::{FaceId, RankedPoset};
use crate::power::{power_complex, PowerError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogKey {
    /// Simplex with `v` vertices, rank `v - 1`.
    Simplex { v: u32 },
    /// Polygon with `q` vertices; `q = 2` is the digon.
    Polygon { q: u32 },
    /// Rank-1 complex with `v >= 2` vertices below a single edge.
    Rank1 { v: u32 },
    /// Real `v`-cube as sign vectors over `{-, +, free}`.
    Cube { v: u32 },
    /// Complex `v`-cube: the power `n^simplex(v)`.
    ComplexCube { v: u32, n: u16 },
    /// Torus map of squares, `s x s` wrap; vertex-describable iff `s >= 3`.
    Torus44 { s: u32 },
    /// Torus map of triangles on a `b x b` wrap of the triangular lattice.
    Torus36 { b: u32 },
}

#[derive(Debug)]
pub enum CatalogError {
    UnknownFamily(String),
    WrongParamCount {
        family: &'static str,
        expected: usize,
        got: usize,
    },
    ParamOutOfRange {
        family: &'static str,
        detail: String,
    },
    Power(PowerError),
    Build(ComplexError),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownFamily(name) => write!(f, "unknown family {name:?}"),
            CatalogError::WrongParamCount {
                family,
                expected,
                got,
            } => write!(f, "{family} takes {expected} parameter(s), got {got}"),
            CatalogError::ParamOutOfRange { family, detail } => {
                write!(f, "{family}: {detail}")
            }
            CatalogError::Power(e) => write!(f, "power construction failed: {e}"),
            CatalogError::Build(e) => write!(f, "construction failed: {e}"),
        }
    }
}

impl std::error::Error for CatalogError {}

impl From<PowerError> for CatalogError {
    fn from(e: PowerError) -> Self {
        CatalogError::Power(e)
    }
}

impl From<ComplexError> for CatalogError {
    fn from(e: ComplexError) -> Self {
        CatalogError::Build(e)
    }
}

impl CatalogKey {
    /// Parses a CLI-style `(name, params)` pair.
    pub fn from_name_params(name: &str, params: &[i64]) -> Result<CatalogKey, CatalogError> {
        let one = |family: &'static str| -> Result<i64, CatalogError> {
            if params.len() != 1 {
                Err(CatalogError::WrongParamCount {
                    family,
                    expected: 1,
                    got: params.len(),
                })
            } else {
                Ok(params[0])
            }
        };
        let positive = |family: &'static str, x: i64, min: i64| -> Result<u32, CatalogError> {
            if x < min || x > u32::MAX as i64 {
                Err(CatalogError::ParamOutOfRange {
                    family,
                    detail: format!("parameter {x} outside {min}.."),
                })
            } else {
                Ok(x as u32)
            }
        };
        match name {
            "simplex" => Ok(CatalogKey::Simplex {
                v: positive("simplex", one("simplex")?, 1)?,
            }),
            "polygon" => Ok(CatalogKey::Polygon {
                q: positive("polygon", one("polygon")?, 2)?,
            }),
            "rank1" => Ok(CatalogKey::Rank1 {
                v: positive("rank1", one("rank1")?, 2)?,
            }),
            "cube" => Ok(CatalogKey::Cube {
                v: positive("cube", one("cube")?, 1)?,
            }),
            "complex_cube" => {
                if params.len() != 2 {
                    return Err(CatalogError::WrongParamCount {
                        family: "complex_cube",
                        expected: 2,
                        got: params.len(),
                    });
                }
                let v = positive("complex_cube", params[0], 1)?;
                let n = positive("complex_cube", params[1], 2)?;
                if n > u16::MAX as u32 {
                    return Err(CatalogError::ParamOutOfRange {
                        family: "complex_cube",
                        detail: format!("n = {n} too large"),
                    });
                }
                Ok(CatalogKey::ComplexCube { v, n: n as u16 })
            }
            "torus44" => Ok(CatalogKey::Torus44 {
                s: positive("torus44", one("torus44")?, 2)?,
            }),
            "torus36" => Ok(CatalogKey::Torus36 {
                b: positive("torus36", one("torus36")?, 2)?,
            }),
            other => Err(CatalogError::UnknownFamily(other.to_string())),
        }
    }
}

pub fn generate(key: &CatalogKey) -> Result<IncidenceComplex, CatalogError> {
    match *key {
        CatalogKey::Simplex { v } => simplex(v),
        CatalogKey::Polygon { q } => polygon(q),
        CatalogKey::Rank1 { v } => rank1(v),
        CatalogKey::Cube { v } => cube(v),
        CatalogKey::ComplexCube { v, n } => {
            let base = simplex(v)?;
            Ok(power_complex(&base, n)?.into_complex())
        }
        CatalogKey::Torus44 { s } => torus44(s),
        CatalogKey::Torus36 { b } => torus36(b),
    }
}

fn check(family: &'static str, ok: bool, detail: &str) -> Result<(), CatalogError> {
    if ok {
        Ok(())
    } else {
        Err(CatalogError::ParamOutOfRange {
            family,
            detail: detail.to_string(),
        })
    }
}

/// Faces are the subsets of `{0..v}`; id order is by (size, bitmask).
fn simplex(v: u32) -> Result<IncidenceComplex, CatalogError> {
    check("simplex", (1..=20).contains(&v), "v must be in 1..=20")?;
    let v = v as usize;
    let mut subsets: Vec<u32> = (0..1u32 << v).collect();
    subsets.sort_unstable_by_key(|s| (s.count_ones(), *s));
    let mut id_of = vec![0u32; 1 << v];
    let mut p = RankedPoset::new(v as i32 - 1);
    for (i, &s) in subsets.iter().enumerate() {
        id_of[s as usize] = i as u32;
        p.add_face(s.count_ones() as i32 - 1);
    }
    for &s in &subsets {
        for el in 0..v {
            if s >> el & 1 == 0 {
                let t = s | 1 << el;
                p.add_cover(FaceId(id_of[s as usize]), FaceId(id_of[t as usize]));
            }
        }
    }
    Ok(IncidenceComplex::from_poset(&p)?)
}

/// Bottom 0, vertices `1..=q` in cyclic order, edge `q + 1 + i` joining
/// vertices `i` and `i + 1 (mod q)`, top last.
fn polygon(q: u32) -> Result<IncidenceComplex, CatalogError> {
    check("polygon", q >= 2, "q must be at least 2")?;
    let q = q as usize;
    let mut p = RankedPoset::new(2);
    let b = p.add_face(-1);
    let vs: Vec<FaceId> = (0..q).map(|_| p.add_face(0)).collect();
    let es: Vec<FaceId> = (0..q).map(|_| p.add_face(1)).collect();
    let t = p.add_face(2);
    for i in 0..q {
        p.add_cover(b, vs[i]);
        p.add_cover(es[i], t);
        p.add_cover(vs[i], es[i]);
        p.add_cover(vs[(i + 1) % q], es[i]);
    }
    Ok(IncidenceComplex::from_poset(&p)?)
}

/// Bottom, `v` vertices, one edge on top of all of them; `c_0 = v`.
fn rank1(v: u32) -> Result<IncidenceComplex, CatalogError> {
    check("rank1", v >= 2, "v must be at least 2")?;
    let mut p = RankedPoset::new(1);
    let b = p.add_face(-1);
    let top = std::iter::repeat_with(|| p.add_face(0))
        .take(v as usize)
        .collect::<Vec<_>>();
    let e = p.add_face(1);
    for vf in top {
        p.add_cover(b, vf);
        p.add_cover(vf, e);
    }
    Ok(IncidenceComplex::from_poset(&p)?)
}

/// Sign-vector cube: faces are words over `{-, +, free}`, rank = number of
/// free coordinates; covers free one fixed coordinate. This route is
/// independent of the power construction on purpose.
fn cube(v: u32) -> Result<IncidenceComplex, CatalogError> {
    check("cube", (1..=12).contains(&v), "v must be in 1..=12")?;
    let v = v as usize;
    // Encode a word base 3: digit 0 is '-', 1 is '+', 2 is 'free'.
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..v {
        let mut next = Vec::with_capacity(words.len() * 3);
        for w in &words {
            for d in 0..3u8 {
                let mut w2 = w.clone();
                w2.push(d);
                next.push(w2);
            }
        }
        words = next;
    }
    let free_count = |w: &[u8]| w.iter().filter(|&&d| d == 2).count();
    words.sort_by_key(|w| (free_count(w), w.clone()));
    let mut id_of: std::collections::HashMap<Vec<u8>, u32> = std::collections::HashMap::new();
    let mut p = RankedPoset::new(v as i32);
    let bottom = p.add_face(-1);
    for w in &words {
        let id = p.add_face(free_count(w) as i32);
        id_of.insert(w.clone(), id.0);
        if free_count(w) == 0 {
            p.add_cover(bottom, id);
        }
    }
    for w in &words {
        for pos in 0..v {
            if w[pos] != 2 {
                let mut freed = w.clone();
                freed[pos] = 2;
                p.add_cover(FaceId(id_of[w]), FaceId(id_of[&freed]));
            }
        }
    }
    Ok(IncidenceComplex::from_poset(&p)?)
}

/// `{4,4}` torus: vertices on an `s x s` grid with wraparound, horizontal
/// and vertical edges, square 2-faces, and improper faces adjoined.
fn torus44(s: u32) -> Result<IncidenceComplex, CatalogError> {
    check("torus44", (2..=64).contains(&s), "s must be in 2..=64")?;
    let s = s as usize;
    let idx = |x: usize, y: usize| (x % s) * s + y % s;
    let mut p = RankedPoset::new(3);
    let b = p.add_face(-1);
    let vs: Vec<FaceId> = (0..s * s).map(|_| p.add_face(0)).collect();
    // Horizontal edge (x, y)-(x+1, y) first, then vertical (x, y)-(x, y+1).
    let he: Vec<FaceId> = (0..s * s).map(|_| p.add_face(1)).collect();
    let ve: Vec<FaceId> = (0..s * s).map(|_| p.add_face(1)).collect();
    let sq: Vec<FaceId> = (0..s * s).map(|_| p.add_face(2)).collect();
    let t = p.add_face(3);
    for x in 0..s {
        for y in 0..s {
            let i = idx(x, y);
            p.add_cover(b, vs[i]);
            p.add_cover(sq[i], t);
            p.add_cover(vs[i], he[i]);
            p.add_cover(vs[idx(x + 1, y)], he[i]);
            p.add_cover(vs[i], ve[i]);
            p.add_cover(vs[idx(x, y + 1)], ve[i]);
            // Square with lower-left corner (x, y).
            p.add_cover(he[i], sq[i]);
            p.add_cover(he[idx(x, y + 1)], sq[i]);
            p.add_cover(ve[i], sq[i]);
            p.add_cover(ve[idx(x + 1, y)], sq[i]);
        }
    }
    Ok(IncidenceComplex::from_poset(&p)?)
}

/// `{3,6}` torus: triangular lattice on a `b x b` wrap; edges run in three
/// directions and each lattice square splits into an up and a down triangle.
fn torus36(b: u32) -> Result<IncidenceComplex, CatalogError> {
    check("torus36", (2..=64).contains(&b), "b must be in 2..=64")?;
    let b = b as usize;
    let idx = |x: usize, y: usize| (x % b) * b + y % b;
    let mut p = RankedPoset::new(3);
    let bo = p.add_face(-1);
    let vs: Vec<FaceId> = (0..b * b).map(|_| p.add_face(0)).collect();
    // Direction 1: (x,y)-(x+1,y); direction 2: (x,y)-(x,y+1);
    // direction 3: (x,y)-(x+1,y+1).
    let e1: Vec<FaceId> = (0..b * b).map(|_| p.add_face(1)).collect();
    let e2: Vec<FaceId> = (0..b * b).map(|_| p.add_face(1)).collect();
    let e3: Vec<FaceId> = (0..b * b).map(|_| p.add_face(1)).collect();
    let up: Vec<FaceId> = (0..b * b).map(|_| p.add_face(2)).collect();
    let dn: Vec<FaceId> = (0..b * b).map(|_| p.add_face(2)).collect();
    let t = p.add_face(3);
    for x in 0..b {
        for y in 0..b {
            let i = idx(x, y);
            p.add_cover(bo, vs[i]);
            p.add_cover(up[i], t);
            p.add_cover(dn[i], t);
            p.add_cover(vs[i], e1[i]);
            p.add_cover(vs[idx(x + 1, y)], e1[i]);
            p.add_cover(vs[i], e2[i]);
            p.add_cover(vs[idx(x, y + 1)], e2[i]);
            p.add_cover(vs[i], e3[i]);
            p.add_cover(vs[idx(x + 1, y + 1)], e3[i]);
            // Up triangle (x,y), (x+1,y), (x+1,y+1).
            p.add_cover(e1[i], up[i]);
            p.add_cover(e2[idx(x + 1, y)], up[i]);
            p.add_cover(e3[i], up[i]);
            // Down triangle (x,y), (x,y+1), (x+1,y+1).
            p.add_cover(e2[i], dn[i]);
            p.add_cover(e1[idx(x, y + 1)], dn[i]);
            p.add_cover(e3[i], dn[i]);
        }
    }
    Ok(IncidenceComplex::from_poset(&p)?)
}
