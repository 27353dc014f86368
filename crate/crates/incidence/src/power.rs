//! Power complexes `n^K`.
//!
//! For a finite vertex-describable complex `K` with `v` vertices, the power
//! complex has one face per pair of a face `F` of `K` and an assignment of
//! values `1..=n` to the coordinates outside the vertex set of `F`, plus an
//! adjoined least face. Its vertices are all `n^v` tuples, and `(F, e) <=
//! (F', e')` iff `F <= F'` and the assignments agree outside `V(F')`. With
//! `n = 2` and `K` the simplex on `v` vertices this is the real `v`-cube.
//!
//! [`brute_force_power_oracle`] rebuilds the same object along a completely
//! different route (subsets of the tuple set ordered by inclusion) and is
//! used to cross-check the constructive enumeration.

use std::fmt;
use std::sync::Arc;

use crate::bitset::BitMatrix;
use crate::complex::{ComplexError, IncidenceComplex};
use crate::poset::{FaceId, Rank, RankedPoset};
use crate::util::{FxHashMap, FxHashSet};

pub const DEFAULT_FACE_CAP: usize = 1_000_000;
pub const DEFAULT_ORACLE_CAP: usize = 4096;

/// Face of a power complex: the adjoined least face, or a base face of the
/// source with fixed values on the coordinates outside its vertex set.
/// `fixed` is aligned with the ascending list of those coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PowerFace {
    Bottom,
    Face { base: FaceId, fixed: Box<[u16]> },
}

#[derive(Debug)]
pub enum PowerError {
    BadExponent { n: u16 },
    NotVertexDescribable,
    FaceCapExceeded { needed: u128, cap: usize },
    BadVertexOrder,
    BadSkeletonRank { j: Rank, rank: Rank },
    Build(ComplexError),
}

impl fmt::Display for PowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerError::BadExponent { n } => write!(f, "exponent n = {n} must be at least 2"),
            PowerError::NotVertexDescribable => {
                write!(f, "source complex is not vertex-describable")
            }
            PowerError::FaceCapExceeded { needed, cap } => {
                write!(f, "power complex needs {needed} faces, cap is {cap}")
            }
            PowerError::BadVertexOrder => {
                write!(f, "vertex order is not a permutation of the source vertices")
            }
            PowerError::BadSkeletonRank { j, rank } => {
                write!(f, "skeleton rank {j} outside 0..={} for rank {rank}", rank - 1)
            }
            PowerError::Build(e) => write!(f, "power complex failed validation: {e}"),
        }
    }
}

impl std::error::Error for PowerError {}

impl From<ComplexError> for PowerError {
    fn from(e: ComplexError) -> Self {
        PowerError::Build(e)
    }
}

/// A power complex together with its face dictionary and the coordinate
/// convention (which source vertex owns which coordinate).
#[derive(Clone, Debug)]
pub struct PowerComplex {
    complex: Arc<IncidenceComplex>,
    source: Arc<IncidenceComplex>,
    n: u16,
    /// Coordinate `j` belongs to source vertex `vertex_order[j]`.
    vertex_order: Vec<FaceId>,
    coord_of: FxHashMap<FaceId, u32>,
    /// Per source face: ascending coordinates outside its vertex set.
    complement: Vec<Vec<u32>>,
    faces: Vec<PowerFace>,
    index: FxHashMap<PowerFace, FaceId>,
}

pub fn power_complex(source: &IncidenceComplex, n: u16) -> Result<PowerComplex, PowerError> {
    let order: Vec<FaceId> = source.vertices().to_vec();
    power_complex_with_order(source, n, &order, DEFAULT_FACE_CAP)
}

pub fn power_complex_capped(
    source: &IncidenceComplex,
    n: u16,
    cap: usize,
) -> Result<PowerComplex, PowerError> {
    let order: Vec<FaceId> = source.vertices().to_vec();
    power_complex_with_order(source, n, &order, cap)
}

/// Full-control variant: the coordinate `j` of every tuple refers to source
/// vertex `vertex_order[j]`. Induced coverings use this to line fibers up.
pub fn power_complex_with_order(
    source: &IncidenceComplex,
    n: u16,
    vertex_order: &[FaceId],
    cap: usize,
) -> Result<PowerComplex, PowerError> {
    if n < 2 {
        return Err(PowerError::BadExponent { n });
    }
    if !source.is_vertex_describable() {
        return Err(PowerError::NotVertexDescribable);
    }
    let v = source.vertices().len();
    {
        let mut sorted = vertex_order.to_vec();
        sorted.sort_unstable();
        if sorted != source.vertices() {
            return Err(PowerError::BadVertexOrder);
        }
    }
    let mut coord_of: FxHashMap<FaceId, u32> = FxHashMap::default();
    for (j, &vert) in vertex_order.iter().enumerate() {
        coord_of.insert(vert, j as u32);
    }

    // Coordinates outside each face's vertex set, ascending.
    let mut complement: Vec<Vec<u32>> = Vec::with_capacity(source.face_count());
    for f in 0..source.face_count() as u32 {
        let mut inside = vec![false; v];
        for vert in source.vertex_set(FaceId(f)) {
            inside[coord_of[vert] as usize] = true;
        }
        complement.push(
            (0..v as u32)
                .filter(|&j| !inside[j as usize])
                .collect(),
        );
    }

    // Count before materializing anything.
    let mut needed: u128 = 1; // adjoined least face
    for comp in &complement {
        let block = (n as u128).checked_pow(comp.len() as u32);
        needed = block
            .and_then(|b| needed.checked_add(b))
            .unwrap_or(u128::MAX);
        if needed > cap as u128 {
            return Err(PowerError::FaceCapExceeded { needed, cap });
        }
    }

    let mut faces: Vec<PowerFace> = Vec::with_capacity(needed as usize);
    let mut index: FxHashMap<PowerFace, FaceId> = FxHashMap::default();
    let mut poset = RankedPoset::new(source.rank() + 1);
    faces.push(PowerFace::Bottom);
    index.insert(PowerFace::Bottom, FaceId(0));
    poset.add_face(-1);

    // Source faces rank by rank, each expanded in lexicographic tuple order.
    for r in -1..=source.rank() {
        for &base in source.faces_of_rank(r) {
            let comp = &complement[base.index()];
            let mut fixed: Vec<u16> = vec![1; comp.len()];
            loop {
                let face = PowerFace::Face {
                    base,
                    fixed: fixed.clone().into_boxed_slice(),
                };
                let id = FaceId(faces.len() as u32);
                index.insert(face.clone(), id);
                faces.push(face);
                poset.add_face(r + 1);
                // Odometer, last coordinate fastest; stop once it wraps.
                let mut pos = comp.len();
                let mut wrapped = true;
                while pos > 0 {
                    pos -= 1;
                    if fixed[pos] < n {
                        fixed[pos] += 1;
                        wrapped = false;
                        break;
                    }
                    fixed[pos] = 1;
                }
                if wrapped {
                    break;
                }
            }
        }
    }

    // Covers: the adjoined least face sits under every power vertex, and
    // each (F, e) is covered by (F', e restricted) for F' covering F.
    for (id, face) in faces.iter().enumerate() {
        let PowerFace::Face { base, fixed } = face else {
            continue;
        };
        if *base == source.least_face() {
            poset.add_cover(FaceId(0), FaceId(id as u32));
        }
        let comp = &complement[base.index()];
        for &upper in source.upper_covers(*base) {
            let upper_comp = &complement[upper.index()];
            let mut restricted: Vec<u16> = Vec::with_capacity(upper_comp.len());
            let mut walk = 0usize;
            for (&coord, &val) in comp.iter().zip(fixed.iter()) {
                if walk < upper_comp.len() && upper_comp[walk] == coord {
                    restricted.push(val);
                    walk += 1;
                }
            }
            debug_assert_eq!(walk, upper_comp.len());
            let target = index[&PowerFace::Face {
                base: upper,
                fixed: restricted.into_boxed_slice(),
            }];
            poset.add_cover(FaceId(id as u32), target);
        }
    }

    let complex = IncidenceComplex::from_poset(&poset)?;
    Ok(PowerComplex {
        complex: Arc::new(complex),
        source: Arc::new(source.clone()),
        n,
        vertex_order: vertex_order.to_vec(),
        coord_of,
        complement,
        faces,
        index,
    })
}

impl PowerComplex {
    pub fn complex(&self) -> &IncidenceComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> Arc<IncidenceComplex> {
        Arc::clone(&self.complex)
    }

    pub fn source(&self) -> &IncidenceComplex {
        &self.source
    }

    pub fn source_arc(&self) -> Arc<IncidenceComplex> {
        Arc::clone(&self.source)
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn vertex_order(&self) -> &[FaceId] {
        &self.vertex_order
    }

    pub fn coordinate_of(&self, vertex: FaceId) -> u32 {
        self.coord_of[&vertex]
    }

    /// Ascending coordinates not fixed by faces over this base.
    pub fn complement_coords(&self, base: FaceId) -> &[u32] {
        &self.complement[base.index()]
    }

    pub fn power_face(&self, id: FaceId) -> &PowerFace {
        &self.faces[id.index()]
    }

    pub fn power_faces(&self) -> &[PowerFace] {
        &self.faces
    }

    pub fn face_id(&self, face: &PowerFace) -> Option<FaceId> {
        self.index.get(face).copied()
    }

    /// Id of the vertex with the given value tuple (length `v`, values
    /// `1..=n`, coordinate `j` for vertex `vertex_order[j]`).
    pub fn vertex_with_tuple(&self, tuple: &[u16]) -> Option<FaceId> {
        self.face_id(&PowerFace::Face {
            base: self.source.least_face(),
            fixed: tuple.to_vec().into_boxed_slice(),
        })
    }

    /// Fixed value at `coord` for a face, if that coordinate is outside the
    /// base's vertex set.
    pub fn fixed_value(&self, id: FaceId, coord: u32) -> Option<u16> {
        match &self.faces[id.index()] {
            PowerFace::Bottom => None,
            PowerFace::Face { base, fixed } => self.complement[base.index()]
                .binary_search(&coord)
                .ok()
                .map(|pos| fixed[pos]),
        }
    }

    pub fn into_complex(self) -> IncidenceComplex {
        Arc::try_unwrap(self.complex).unwrap_or_else(|arc| (*arc).clone())
    }
}

/// `skeleton(K, j)`: faces of rank at most `j` with the greatest face kept
/// and reranked to `j + 1`.
pub fn skeleton(c: &IncidenceComplex, j: Rank) -> Result<IncidenceComplex, PowerError> {
    if j < 0 || j >= c.rank() {
        return Err(PowerError::BadSkeletonRank { j, rank: c.rank() });
    }
    let mut keep: Vec<FaceId> = Vec::new();
    for r in -1..=j {
        keep.extend_from_slice(c.faces_of_rank(r));
    }
    let mut new_id = vec![u32::MAX; c.face_count()];
    for (i, &f) in keep.iter().enumerate() {
        new_id[f.index()] = i as u32;
    }
    let mut p = RankedPoset::new(j + 1);
    for &f in &keep {
        p.add_face(c.face_rank(f));
    }
    let top = p.add_face(j + 1);
    for &f in &keep {
        for &g in c.upper_covers(f) {
            if new_id[g.index()] != u32::MAX {
                p.add_cover(FaceId(new_id[f.index()]), FaceId(new_id[g.index()]));
            }
        }
        if c.face_rank(f) == j {
            p.add_cover(FaceId(new_id[f.index()]), top);
        }
    }
    Ok(IncidenceComplex::from_poset(&p)?)
}

/// Independent reconstruction of `n^K` straight from the definition: every
/// face is the set of value tuples extending some `(F, e)`, ordered by
/// inclusion with an empty set adjoined, and ranked by chain length. Slow,
/// and deliberately so; it shares no enumeration logic with
/// [`power_complex`].
pub fn brute_force_power_oracle(
    source: &IncidenceComplex,
    n: u16,
    tuple_cap: usize,
) -> Result<IncidenceComplex, PowerError> {
    if n < 2 {
        return Err(PowerError::BadExponent { n });
    }
    if !source.is_vertex_describable() {
        return Err(PowerError::NotVertexDescribable);
    }
    let verts = source.vertices();
    let v = verts.len();
    let total = (n as u128).checked_pow(v as u32).unwrap_or(u128::MAX);
    if total > tuple_cap as u128 {
        return Err(PowerError::FaceCapExceeded {
            needed: total,
            cap: tuple_cap,
        });
    }

    // All tuples in lexicographic order, coordinate j for the j-th vertex.
    let mut tuples: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..v {
        let mut next = Vec::with_capacity(tuples.len() * n as usize);
        for t in &tuples {
            for val in 1..=n {
                let mut t2 = t.clone();
                t2.push(val);
                next.push(t2);
            }
        }
        tuples = next;
    }

    // For each source face F, tuples grouped by their values outside V(F);
    // each group is one face of the power complex.
    let mut subsets: FxHashSet<Vec<u32>> = FxHashSet::default();
    for f in 0..source.face_count() as u32 {
        let in_face: Vec<bool> = verts
            .iter()
            .map(|vert| source.leq(*vert, FaceId(f)))
            .collect();
        let mut groups: FxHashMap<Vec<u16>, Vec<u32>> = FxHashMap::default();
        for (i, t) in tuples.iter().enumerate() {
            let key: Vec<u16> = t
                .iter()
                .enumerate()
                .filter(|(j, _)| !in_face[*j])
                .map(|(_, &val)| val)
                .collect();
            groups.entry(key).or_default().push(i as u32);
        }
        subsets.extend(groups.into_values());
    }
    let mut subsets: Vec<Vec<u32>> = subsets.into_iter().collect();
    subsets.push(Vec::new()); // adjoined least face
    subsets.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let m = subsets.len();
    let mut leq = BitMatrix::new(m);
    for (i, a) in subsets.iter().enumerate() {
        'next: for (j, b) in subsets.iter().enumerate() {
            if a.len() > b.len() {
                continue;
            }
            // subset test on ascending lists
            let mut walk = 0usize;
            for x in a {
                while walk < b.len() && b[walk] < *x {
                    walk += 1;
                }
                if walk == b.len() || b[walk] != *x {
                    continue 'next;
                }
            }
            leq.set(i, j);
        }
    }

    // Rank by longest chain from the empty set (which sits at index 0).
    let mut height = vec![-1i32; m];
    for i in 1..m {
        // subsets are sorted by size, so all predecessors come earlier
        let mut h = 0i32;
        for j in 0..i {
            if j != i && leq.get(j, i) && height[j] + 1 > h {
                h = height[j] + 1;
            }
        }
        height[i] = h;
    }
    let rank = *height.iter().max().unwrap();

    let mut p = RankedPoset::new(rank);
    for &h in &height {
        p.add_face(h);
    }
    for i in 0..m {
        for j in 0..m {
            if i == j || !leq.get(i, j) {
                continue;
            }
            let mut covered = true;
            for z in 0..m {
                if z != i && z != j && leq.get(i, z) && leq.get(z, j) {
                    covered = false;
                    break;
                }
            }
            if covered {
                p.add_cover(FaceId(i as u32), FaceId(j as u32));
            }
        }
    }
    Ok(IncidenceComplex::from_poset(&p)?)
}
