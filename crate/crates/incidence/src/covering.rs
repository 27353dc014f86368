//! Maps between complexes: classification, quotients, and the two induced
//! constructions on power complexes.
//!
//! A homomorphism preserves incidence one way. A rap-map in addition
//! preserves ranks and sends adjacent flags to adjacent flags; a weak
//! rap-map lets adjacent flags collapse to the same flag. Coverings are
//! surjective rap-maps, weak coverings surjective weak rap-maps. Every
//! rank-preserving homomorphism between complexes of the same rank is
//! automatically a weak rap-map, so classification only has to look for
//! flag collapses and surjectivity on top of the cheap checks.

use std::fmt;
use std::sync::Arc;

use crate::complex::IncidenceComplex;
use crate::perm::PermGroup;
use crate::poset::{FaceId, PosetError, Rank, RankedPoset};
use crate::power::{
    power_complex_with_order, PowerComplex, PowerError, PowerFace, DEFAULT_FACE_CAP,
};
use crate::symmetry::is_automorphism;
use crate::util::FxHashSet;
use crate::validate::{validate, ValidationReport};

#[derive(Debug)]
pub enum CoveringError {
    LengthMismatch { expected: usize, got: usize },
    ImageOutOfRange { face: FaceId, image: FaceId },
    ComposeMismatch,
    NotACovering { kind: MapKind },
    NotEquifibered { fibers: Vec<u32> },
    ValueMapInvalid { detail: String },
    WrongBase { expected: u16, got: u16 },
    WrongBlockSize { expected: u32, got: u32 },
    Power(PowerError),
}

impl fmt::Display for CoveringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoveringError::LengthMismatch { expected, got } => {
                write!(f, "map needs one image per source face ({expected}), got {got}")
            }
            CoveringError::ImageOutOfRange { face, image } => {
                write!(f, "face {face} maps to {image}, outside the target")
            }
            CoveringError::ComposeMismatch => {
                write!(f, "composition needs the first target to be the second source")
            }
            CoveringError::NotACovering { kind } => {
                write!(f, "map is not a covering (it classifies as {})", kind.name())
            }
            CoveringError::NotEquifibered { fibers } => {
                write!(f, "vertex fibers have unequal sizes {fibers:?}")
            }
            CoveringError::ValueMapInvalid { detail } => write!(f, "bad value map: {detail}"),
            CoveringError::WrongBase { expected, got } => {
                write!(f, "value map is on base {got}, construction needs {expected}")
            }
            CoveringError::WrongBlockSize { expected, got } => {
                write!(f, "value map takes blocks of {got}, fibers have size {expected}")
            }
            CoveringError::Power(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CoveringError {}

impl From<PowerError> for CoveringError {
    fn from(e: PowerError) -> Self {
        CoveringError::Power(e)
    }
}

/// Total map between two complexes, one image per source face id.
#[derive(Clone)]
pub struct ComplexMap {
    source: Arc<IncidenceComplex>,
    target: Arc<IncidenceComplex>,
    map: Vec<FaceId>,
}

impl ComplexMap {
    pub fn new(
        source: Arc<IncidenceComplex>,
        target: Arc<IncidenceComplex>,
        map: Vec<FaceId>,
    ) -> Result<Self, CoveringError> {
        if map.len() != source.face_count() {
            return Err(CoveringError::LengthMismatch {
                expected: source.face_count(),
                got: map.len(),
            });
        }
        for (i, &img) in map.iter().enumerate() {
            if !target.contains(img) {
                return Err(CoveringError::ImageOutOfRange {
                    face: FaceId(i as u32),
                    image: img,
                });
            }
        }
        Ok(ComplexMap {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &IncidenceComplex {
        &self.source
    }

    pub fn source_arc(&self) -> Arc<IncidenceComplex> {
        Arc::clone(&self.source)
    }

    pub fn target(&self) -> &IncidenceComplex {
        &self.target
    }

    pub fn target_arc(&self) -> Arc<IncidenceComplex> {
        Arc::clone(&self.target)
    }

    pub fn apply(&self, f: FaceId) -> FaceId {
        self.map[f.index()]
    }

    pub fn images(&self) -> &[FaceId] {
        &self.map
    }

    /// `self` then `other`; the intermediate complexes must agree.
    pub fn compose(&self, other: &ComplexMap) -> Result<ComplexMap, CoveringError> {
        if self.target.face_count() != other.source.face_count() {
            return Err(CoveringError::ComposeMismatch);
        }
        let map = self.map.iter().map(|&f| other.apply(f)).collect();
        ComplexMap::new(self.source_arc(), other.target_arc(), map)
    }
}

/// Evidence for one failed classification property. Flag indices refer to
/// the order of `source.flags()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapWitness {
    CoverBroken { low: FaceId, high: FaceId },
    RankChanged { face: FaceId },
    Missed { face: FaceId },
    FlagCollapse { flag_a: u32, flag_b: u32, label: Rank },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Covering,
    Rap,
    WeakCovering,
    WeakRap,
    Homomorphism,
    NotAHomomorphism,
}

impl MapKind {
    pub fn name(&self) -> &'static str {
        match self {
            MapKind::Covering => "covering",
            MapKind::Rap => "rap-map",
            MapKind::WeakCovering => "weak covering",
            MapKind::WeakRap => "weak rap-map",
            MapKind::Homomorphism => "homomorphism",
            MapKind::NotAHomomorphism => "not a homomorphism",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct MapClass {
    pub homomorphism: bool,
    pub rank_preserving: bool,
    pub same_rank: bool,
    pub surjective: bool,
    /// No pair of adjacent flags collapses to a single image flag. Only
    /// meaningful (and only computed) when the map is a weak rap-map.
    pub strictly_adjacent: bool,
    pub witnesses: Vec<MapWitness>,
}

impl MapClass {
    pub fn is_weak_rap(&self) -> bool {
        self.homomorphism && self.rank_preserving && self.same_rank
    }

    pub fn is_rap(&self) -> bool {
        self.is_weak_rap() && self.strictly_adjacent
    }

    pub fn is_covering(&self) -> bool {
        self.is_rap() && self.surjective
    }

    pub fn is_weak_covering(&self) -> bool {
        self.is_weak_rap() && self.surjective
    }

    pub fn kind(&self) -> MapKind {
        if self.is_covering() {
            MapKind::Covering
        } else if self.is_rap() {
            MapKind::Rap
        } else if self.is_weak_covering() {
            MapKind::WeakCovering
        } else if self.is_weak_rap() {
            MapKind::WeakRap
        } else if self.homomorphism {
            MapKind::Homomorphism
        } else {
            MapKind::NotAHomomorphism
        }
    }
}

const MAX_MAP_WITNESSES: usize = 3;

pub fn classify(map: &ComplexMap) -> MapClass {
    let src = map.source();
    let tgt = map.target();

    let mut witnesses = Vec::new();
    let mut homomorphism = true;
    'cover: for f in 0..src.face_count() as u32 {
        let fa = FaceId(f);
        for &up in src.upper_covers(fa) {
            if !tgt.leq(map.apply(fa), map.apply(up)) {
                homomorphism = false;
                witnesses.push(MapWitness::CoverBroken { low: fa, high: up });
                if witnesses.len() >= MAX_MAP_WITNESSES {
                    break 'cover;
                }
            }
        }
    }

    let mut rank_preserving = true;
    let mut rank_witnesses = 0;
    for f in 0..src.face_count() as u32 {
        let fa = FaceId(f);
        if src.face_rank(fa) != tgt.face_rank(map.apply(fa)) {
            rank_preserving = false;
            if rank_witnesses < MAX_MAP_WITNESSES {
                witnesses.push(MapWitness::RankChanged { face: fa });
                rank_witnesses += 1;
            }
        }
    }

    let same_rank = src.rank() == tgt.rank();

    let mut hit = vec![false; tgt.face_count()];
    for &img in map.images() {
        hit[img.index()] = true;
    }
    let mut surjective = true;
    let mut missed_witnesses = 0;
    for (i, h) in hit.iter().enumerate() {
        if !h {
            surjective = false;
            if missed_witnesses < MAX_MAP_WITNESSES {
                witnesses.push(MapWitness::Missed {
                    face: FaceId(i as u32),
                });
                missed_witnesses += 1;
            }
        }
    }

    // Adjacent source flags share every face away from the changed level, so
    // their images can only differ there; the map is strictly adjacency
    // preserving exactly when no such pair has equal images at that level.
    let mut strictly_adjacent = homomorphism && rank_preserving && same_rank;
    if strictly_adjacent {
        let graph = src.flag_graph();
        let mut collapse_witnesses = 0;
        for &(a, b, label) in graph.edges() {
            let fa = graph.flags()[a as usize].face_at_rank(label);
            let fb = graph.flags()[b as usize].face_at_rank(label);
            if map.apply(fa) == map.apply(fb) {
                strictly_adjacent = false;
                if collapse_witnesses < MAX_MAP_WITNESSES {
                    witnesses.push(MapWitness::FlagCollapse {
                        flag_a: a,
                        flag_b: b,
                        label,
                    });
                    collapse_witnesses += 1;
                } else {
                    break;
                }
            }
        }
    }

    MapClass {
        homomorphism,
        rank_preserving,
        same_rank,
        surjective,
        strictly_adjacent,
        witnesses,
    }
}

/// Fiber size over target vertices when constant: `Some(l)` for an `l : 1`
/// vertex restriction, `None` when the sizes vary. The map must classify as
/// a covering.
pub fn is_equifibered(map: &ComplexMap) -> Result<Option<u32>, CoveringError> {
    let class = classify(map);
    if !class.is_covering() {
        return Err(CoveringError::NotACovering { kind: class.kind() });
    }
    let fibers = vertex_fiber_sizes(map);
    let l = fibers[0];
    if fibers.iter().all(|&x| x == l) {
        Ok(Some(l))
    } else {
        Ok(None)
    }
}

/// Preimage counts over target vertices, in target vertex order.
pub fn vertex_fiber_sizes(map: &ComplexMap) -> Vec<u32> {
    let tgt = map.target();
    let mut count = vec![0u32; tgt.face_count()];
    for &v in map.source().vertices() {
        count[map.apply(v).index()] += 1;
    }
    tgt.vertices().iter().map(|w| count[w.index()]).collect()
}

#[derive(Debug)]
pub enum QuotientError {
    DegreeMismatch { expected: usize, got: usize },
    NotAnAutomorphism { generator: usize },
    Malformed(PosetError),
}

impl fmt::Display for QuotientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientError::DegreeMismatch { expected, got } => {
                write!(f, "group acts on {got} points, complex has {expected} faces")
            }
            QuotientError::NotAnAutomorphism { generator } => {
                write!(f, "generator {generator} is not an automorphism of the complex")
            }
            QuotientError::Malformed(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for QuotientError {}

/// Orbit poset of a complex under a group of automorphisms. The result is
/// not always a complex, so the raw poset and its validation report are
/// returned alongside the complex when the axioms do hold.
pub struct QuotientOutcome {
    pub poset: RankedPoset,
    pub report: ValidationReport,
    pub complex: Option<Arc<IncidenceComplex>>,
    /// Face-to-orbit projection, present exactly when the quotient is a
    /// complex.
    pub projection: Option<ComplexMap>,
    /// Orbit face id in the quotient -> sorted member faces of the original.
    pub orbits: Vec<Vec<FaceId>>,
}

pub fn quotient(
    k: &Arc<IncidenceComplex>,
    sigma: &PermGroup,
) -> Result<QuotientOutcome, QuotientError> {
    if sigma.degree() != k.face_count() {
        return Err(QuotientError::DegreeMismatch {
            expected: k.face_count(),
            got: sigma.degree(),
        });
    }
    for (i, g) in sigma.generators().iter().enumerate() {
        if !is_automorphism(k, g) {
            return Err(QuotientError::NotAnAutomorphism { generator: i });
        }
    }

    let n = k.face_count();
    let mut orbit_of = vec![u32::MAX; n];
    let mut orbits: Vec<Vec<FaceId>> = Vec::new();
    for start in 0..n as u32 {
        if orbit_of[start as usize] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        let mut members = vec![start];
        orbit_of[start as usize] = id;
        let mut cursor = 0;
        while cursor < members.len() {
            let f = members[cursor];
            cursor += 1;
            for g in sigma.generators() {
                let img = g.apply(f);
                if orbit_of[img as usize] == u32::MAX {
                    orbit_of[img as usize] = id;
                    members.push(img);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members.iter().map(|&f| FaceId(f)).collect());
    }

    // Deterministic orbit ids: by (rank, smallest member).
    let mut order: Vec<u32> = (0..orbits.len() as u32).collect();
    order.sort_by_key(|&o| (k.face_rank(orbits[o as usize][0]), orbits[o as usize][0]));
    let mut new_id = vec![0u32; orbits.len()];
    for (pos, &o) in order.iter().enumerate() {
        new_id[o as usize] = pos as u32;
    }
    let orbits: Vec<Vec<FaceId>> = order.iter().map(|&o| orbits[o as usize].clone()).collect();
    for x in orbit_of.iter_mut() {
        *x = new_id[*x as usize];
    }

    // Orbits of faces in a common orbit share a rank, so the orbit relation
    // between consecutive ranks is generated by the covers of the original,
    // and relations skipping ranks always factor through intermediate
    // orbits. The covers below therefore generate exactly the orbit order.
    let mut p = RankedPoset::new(k.rank());
    for orbit in &orbits {
        p.add_face(k.face_rank(orbit[0]));
    }
    let mut seen: FxHashSet<(u32, u32)> = FxHashSet::default();
    for f in 0..n as u32 {
        for &up in k.upper_covers(FaceId(f)) {
            let pair = (orbit_of[f as usize], orbit_of[up.index()]);
            if seen.insert(pair) {
                p.add_cover(FaceId(pair.0), FaceId(pair.1));
            }
        }
    }

    let report = validate(&p).map_err(QuotientError::Malformed)?;
    let (complex, projection) = if report.is_complex {
        let q = Arc::new(
            IncidenceComplex::from_poset(&p).expect("validation just succeeded"),
        );
        let map = ComplexMap::new(
            Arc::clone(k),
            Arc::clone(&q),
            orbit_of.iter().map(|&o| FaceId(o)).collect(),
        )
        .expect("orbit map is total");
        (Some(q), Some(map))
    } else {
        (None, None)
    };

    Ok(QuotientOutcome {
        poset: p,
        report,
        complex,
        projection,
        orbits,
    })
}

/// Value relabeling `f: {1..n} -> {1..m}`, stored 1-based.
#[derive(Debug, Clone)]
pub struct ValueMap {
    images: Vec<u16>,
    n: u16,
    m: u16,
}

impl ValueMap {
    pub fn new(n: u16, m: u16, images: Vec<u16>) -> Result<Self, CoveringError> {
        if n < 2 || m < 2 {
            return Err(CoveringError::ValueMapInvalid {
                detail: format!("bases must be at least 2, got {n} -> {m}"),
            });
        }
        if images.len() != n as usize {
            return Err(CoveringError::ValueMapInvalid {
                detail: format!("need {n} images, got {}", images.len()),
            });
        }
        let mut hit = vec![false; m as usize];
        for &x in &images {
            if x < 1 || x > m {
                return Err(CoveringError::ValueMapInvalid {
                    detail: format!("image {x} outside 1..={m}"),
                });
            }
            hit[(x - 1) as usize] = true;
        }
        if !hit.iter().all(|&h| h) {
            return Err(CoveringError::ValueMapInvalid {
                detail: "not surjective".into(),
            });
        }
        Ok(ValueMap { images, n, m })
    }

    pub fn identity(n: u16) -> Self {
        ValueMap::new(n, n, (1..=n).collect()).expect("identity is surjective")
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn m(&self) -> u16 {
        self.m
    }

    pub fn apply(&self, x: u16) -> u16 {
        self.images[(x - 1) as usize]
    }

    pub fn is_bijective(&self) -> bool {
        self.n == self.m
    }
}

/// Block relabeling `g: {1..n}^l -> {1..m}`; images are listed in
/// lexicographic order of the blocks.
#[derive(Debug, Clone)]
pub struct BlockValueMap {
    images: Vec<u16>,
    n: u16,
    l: u32,
    m: u16,
}

impl BlockValueMap {
    pub fn new(n: u16, l: u32, m: u16, images: Vec<u16>) -> Result<Self, CoveringError> {
        if n < 2 || m < 2 || l < 1 {
            return Err(CoveringError::ValueMapInvalid {
                detail: format!("need n, m >= 2 and l >= 1, got n = {n}, m = {m}, l = {l}"),
            });
        }
        let expected = (n as u64)
            .checked_pow(l)
            .filter(|&x| x <= 1 << 24)
            .ok_or_else(|| CoveringError::ValueMapInvalid {
                detail: format!("{n}^{l} blocks is too many"),
            })?;
        if images.len() as u64 != expected {
            return Err(CoveringError::ValueMapInvalid {
                detail: format!("need {expected} images, got {}", images.len()),
            });
        }
        let mut hit = vec![false; m as usize];
        for &x in &images {
            if x < 1 || x > m {
                return Err(CoveringError::ValueMapInvalid {
                    detail: format!("image {x} outside 1..={m}"),
                });
            }
            hit[(x - 1) as usize] = true;
        }
        if !hit.iter().all(|&h| h) {
            return Err(CoveringError::ValueMapInvalid {
                detail: "not surjective".into(),
            });
        }
        Ok(BlockValueMap { images, n, l, m })
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> u16 {
        self.m
    }

    pub fn apply(&self, block: &[u16]) -> u16 {
        debug_assert_eq!(block.len(), self.l as usize);
        let mut idx = 0usize;
        for &x in block {
            idx = idx * self.n as usize + (x - 1) as usize;
        }
        self.images[idx]
    }

    pub fn is_bijective(&self) -> bool {
        self.images.len() == self.m as usize
    }
}

/// Result of either induced construction: both powers plus the face map
/// between them, ready for classification.
pub struct InducedCovering {
    pub source_power: PowerComplex,
    pub target_power: PowerComplex,
    pub map: ComplexMap,
}

/// Induces `n^K -> m^L` from a covering `gamma: K -> L` and a surjective
/// value map `f: {1..n} -> {1..m}`. Coordinates of the source power are
/// arranged so the first `v(L)` of them form a transversal of the vertex
/// fibers; the image of a face keeps its values on that transversal,
/// relabeled through `f`. The result is a weak covering in general and a
/// covering exactly when `f` is bijective.
pub fn induced_covering_f(
    gamma: &ComplexMap,
    n: u16,
    f: &ValueMap,
) -> Result<InducedCovering, CoveringError> {
    if f.n() != n {
        return Err(CoveringError::WrongBase {
            expected: n,
            got: f.n(),
        });
    }
    let class = classify(gamma);
    if !class.is_covering() {
        return Err(CoveringError::NotACovering { kind: class.kind() });
    }

    // Transversal first: coordinate j of the source power is the smallest
    // preimage of the target vertex at coordinate j.
    let tgt_vertices = gamma.target().vertices();
    let mut transversal: Vec<FaceId> = Vec::with_capacity(tgt_vertices.len());
    for &w in tgt_vertices {
        let rep = gamma
            .source()
            .vertices()
            .iter()
            .copied()
            .filter(|&u| gamma.apply(u) == w)
            .min()
            .expect("coverings are surjective on vertices");
        transversal.push(rep);
    }
    let mut k_order = transversal.clone();
    let in_transversal: FxHashSet<FaceId> = transversal.iter().copied().collect();
    k_order.extend(
        gamma
            .source()
            .vertices()
            .iter()
            .copied()
            .filter(|u| !in_transversal.contains(u)),
    );

    let source_power = power_complex_with_order(gamma.source(), n, &k_order, DEFAULT_FACE_CAP)?;
    let target_power =
        power_complex_with_order(gamma.target(), f.m(), tgt_vertices, DEFAULT_FACE_CAP)?;

    let map = induced_map(&source_power, &target_power, gamma, |j, values| {
        // Coordinate j of the target reads the transversal coordinate j.
        let pos = values
            .position(j)
            .expect("transversal vertex lies outside the source face");
        f.apply(values.value(pos))
    });
    Ok(InducedCovering {
        source_power,
        target_power,
        map,
    })
}

/// Induces `n^K -> m^L` from an equifibered covering `gamma` (vertex fibers
/// of constant size `l`) and a surjective block map `g: {1..n}^l -> {1..m}`.
/// Source coordinates are grouped into fiber blocks; each target coordinate
/// reads its whole block through `g`. The result is a weak covering, and a
/// covering exactly when `g` is bijective (then `m = n^l` and the map is
/// one-to-one on vertices).
pub fn induced_covering_g(
    gamma: &ComplexMap,
    n: u16,
    g: &BlockValueMap,
) -> Result<InducedCovering, CoveringError> {
    if g.n() != n {
        return Err(CoveringError::WrongBase {
            expected: n,
            got: g.n(),
        });
    }
    let l = is_equifibered(gamma)?.ok_or_else(|| CoveringError::NotEquifibered {
        fibers: vertex_fiber_sizes(gamma),
    })?;
    if g.l() != l {
        return Err(CoveringError::WrongBlockSize {
            expected: l,
            got: g.l(),
        });
    }

    // Fiber blocks in target vertex order: coordinates j*l..j*l+l of the
    // source power are the sorted preimages of target coordinate j.
    let tgt_vertices = gamma.target().vertices();
    let mut k_order: Vec<FaceId> = Vec::with_capacity(gamma.source().vertices().len());
    for &w in tgt_vertices {
        let start = k_order.len();
        k_order.extend(
            gamma
                .source()
                .vertices()
                .iter()
                .copied()
                .filter(|&u| gamma.apply(u) == w),
        );
        debug_assert_eq!(k_order.len() - start, l as usize);
    }

    let source_power = power_complex_with_order(gamma.source(), n, &k_order, DEFAULT_FACE_CAP)?;
    let target_power =
        power_complex_with_order(gamma.target(), g.m(), tgt_vertices, DEFAULT_FACE_CAP)?;

    let mut block = vec![0u16; l as usize];
    let map = induced_map(&source_power, &target_power, gamma, move |j, values| {
        for (slot, coord) in (j * l..j * l + l).enumerate() {
            let pos = values
                .position(coord)
                .expect("whole fiber lies outside the source face");
            block[slot] = values.value(pos);
        }
        g.apply(&block)
    });
    Ok(InducedCovering {
        source_power,
        target_power,
        map,
    })
}

/// Fixed values of one source power face, with coordinate lookup.
struct FaceValues<'a> {
    coords: &'a [u32],
    fixed: &'a [u16],
}

impl FaceValues<'_> {
    fn position(&self, coord: u32) -> Option<usize> {
        self.coords.binary_search(&coord).ok()
    }

    fn value(&self, pos: usize) -> u16 {
        self.fixed[pos]
    }
}

/// Shared frame of both constructions: map `(F, values) -> (gamma F,
/// values')` where each target coordinate outside the image face computes
/// its value from the source values via `target_value`.
fn induced_map(
    source_power: &PowerComplex,
    target_power: &PowerComplex,
    gamma: &ComplexMap,
    mut target_value: impl FnMut(u32, &FaceValues) -> u16,
) -> ComplexMap {
    let mut images: Vec<FaceId> = Vec::with_capacity(source_power.complex().face_count());
    for (id, face) in source_power.power_faces().iter().enumerate() {
        let img = match face {
            PowerFace::Bottom => FaceId(0),
            PowerFace::Face { base, fixed } => {
                let new_base = gamma.apply(*base);
                let values = FaceValues {
                    coords: source_power.complement_coords(*base),
                    fixed,
                };
                let new_fixed: Vec<u16> = target_power
                    .complement_coords(new_base)
                    .iter()
                    .map(|&j| target_value(j, &values))
                    .collect();
                target_power
                    .face_id(&PowerFace::Face {
                        base: new_base,
                        fixed: new_fixed.into_boxed_slice(),
                    })
                    .expect("image face exists in the target power")
            }
        };
        images.push(img);
        debug_assert_eq!(id + 1, images.len());
    }
    ComplexMap::new(
        source_power.complex_arc(),
        target_power.complex_arc(),
        images,
    )
    .expect("induced map is total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, CatalogKey};
    use crate::iso::is_isomorphic;
    use crate::perm::Perm;
    use crate::validate::Axiom;

    fn cat(name: &str, params: &[i64]) -> Arc<IncidenceComplex> {
        Arc::new(generate(&CatalogKey::from_name_params(name, params).unwrap()).unwrap())
    }

    /// Hexagon onto triangle, wrapping twice: vertex i and i + 3 land on
    /// vertex i mod 3, edges follow.
    fn hexagon_to_triangle() -> ComplexMap {
        let hexagon = cat("polygon", &[6]);
        let triangle = cat("polygon", &[3]);
        // Catalog layout: bottom 0, vertices 1..=q, edge q+1+i joins
        // vertices i and i+1 mod q, top last.
        let mut map = vec![FaceId(0); 14];
        for i in 0..6u32 {
            map[(1 + i) as usize] = FaceId(1 + i % 3);
            map[(7 + i) as usize] = FaceId(4 + i % 3);
        }
        map[13] = FaceId(7);
        ComplexMap::new(hexagon, triangle, map).unwrap()
    }

    #[test]
    fn hexagon_wraps_triangle() {
        let gamma = hexagon_to_triangle();
        let class = classify(&gamma);
        assert!(class.homomorphism && class.rank_preserving && class.surjective);
        assert!(class.strictly_adjacent, "{:?}", class.witnesses);
        assert_eq!(class.kind(), MapKind::Covering);
        assert_eq!(is_equifibered(&gamma).unwrap(), Some(2));
        assert_eq!(vertex_fiber_sizes(&gamma), vec![2, 2, 2]);
    }

    #[test]
    fn collapsing_map_is_weak_only() {
        // Both vertices of one segment onto a single vertex of another:
        // incidence survives but the 0-adjacent flag pair collapses.
        let a = cat("rank1", &[2]);
        let b = cat("rank1", &[2]);
        let map = vec![FaceId(0), FaceId(1), FaceId(1), FaceId(3)];
        let gamma = ComplexMap::new(a, b, map).unwrap();
        let class = classify(&gamma);
        assert!(class.homomorphism && class.rank_preserving);
        assert!(!class.strictly_adjacent);
        assert!(!class.surjective);
        assert_eq!(class.kind(), MapKind::WeakRap);
        assert!(class
            .witnesses
            .iter()
            .any(|w| matches!(w, MapWitness::FlagCollapse { label: 0, .. })));
        assert!(class
            .witnesses
            .iter()
            .any(|w| matches!(w, MapWitness::Missed { .. })));
    }

    #[test]
    fn broken_incidence_detected() {
        let a = cat("polygon", &[3]);
        let b = cat("polygon", &[3]);
        // The reflection fixing vertex 3 swaps vertices 1, 2 and edges 5, 6.
        let mut map: Vec<FaceId> = (0..8).map(FaceId).collect();
        map.swap(1, 2);
        map.swap(5, 6);
        let gamma = ComplexMap::new(Arc::clone(&a), Arc::clone(&b), map).unwrap();
        assert_eq!(classify(&gamma).kind(), MapKind::Covering);

        let mut bad: Vec<FaceId> = (0..8).map(FaceId).collect();
        bad[1] = FaceId(3); // vertex 3 is not on edge 4, breaking that cover
        let gamma = ComplexMap::new(a, b, bad).unwrap();
        let class = classify(&gamma);
        assert!(!class.homomorphism);
        assert_eq!(class.kind(), MapKind::NotAHomomorphism);
        assert!(class
            .witnesses
            .iter()
            .any(|w| matches!(w, MapWitness::CoverBroken { .. })));
    }

    #[test]
    fn quotient_by_central_involution_is_triangle() {
        let hexagon = cat("polygon", &[6]);
        let central = Perm::parse_cycles(14, "(1 4)(2 5)(3 6)(7 10)(8 11)(9 12)").unwrap();
        let sigma = PermGroup::from_generators(14, vec![central]).unwrap();
        let out = quotient(&hexagon, &sigma).unwrap();
        assert!(out.report.is_complex);
        let q = out.complex.as_ref().unwrap();
        let triangle = cat("polygon", &[3]);
        assert!(is_isomorphic(q, &triangle).is_some());
        let proj = out.projection.as_ref().unwrap();
        assert_eq!(classify(proj).kind(), MapKind::Covering);
        assert_eq!(is_equifibered(proj).unwrap(), Some(2));
        // Orbits pair up antipodal proper faces.
        assert_eq!(out.orbits.len(), 8);
        assert!(out.orbits.iter().all(|o| o.len() <= 2));
    }

    #[test]
    fn quotient_by_full_rotation_is_not_a_complex() {
        let hexagon = cat("polygon", &[6]);
        let rot = Perm::parse_cycles(14, "(1 2 3 4 5 6)(7 8 9 10 11 12)").unwrap();
        let sigma = PermGroup::from_generators(14, vec![rot]).unwrap();
        let out = quotient(&hexagon, &sigma).unwrap();
        assert!(!out.report.is_complex);
        assert!(out.complex.is_none());
        assert!(out
            .report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::I4));
    }

    #[test]
    fn quotient_rejects_non_automorphisms() {
        let hexagon = cat("polygon", &[6]);
        let not_auto = Perm::parse_cycles(14, "(1 7)").unwrap();
        let sigma = PermGroup::from_generators(14, vec![not_auto]).unwrap();
        assert!(matches!(
            quotient(&hexagon, &sigma),
            Err(QuotientError::NotAnAutomorphism { generator: 0 })
        ));
    }

    #[test]
    fn induced_f_forgets_vertices_outside_the_transversal() {
        // When the underlying covering identifies vertices, the induced map
        // reads only the transversal coordinates. A tuple change at any
        // other coordinate moves a power vertex without moving its image,
        // collapsing a 0-adjacent flag pair; so even with a bijective value
        // map the result is a weak covering here, not a covering.
        let gamma = hexagon_to_triangle();
        let f = ValueMap::identity(2);
        let ind = induced_covering_f(&gamma, 2, &f).unwrap();
        assert_eq!(ind.source_power.complex().f_vector(), vec![1, 64, 192, 96, 1]);
        assert_eq!(ind.target_power.complex().f_vector(), vec![1, 8, 12, 6, 1]);
        let class = classify(&ind.map);
        assert_eq!(class.kind(), MapKind::WeakCovering);
        assert!(class
            .witnesses
            .iter()
            .all(|w| matches!(w, MapWitness::FlagCollapse { label: 0, .. })));
    }

    #[test]
    fn induced_f_on_vertex_bijective_covering_is_covering() {
        // With a vertex-bijective underlying map and a bijective value map
        // nothing is forgotten, and the induced map is a genuine covering;
        // for the identity it is the identity.
        let triangle = cat("polygon", &[3]);
        let id_map: Vec<FaceId> = (0..8).map(FaceId).collect();
        let gamma = ComplexMap::new(Arc::clone(&triangle), triangle, id_map).unwrap();
        let f = ValueMap::identity(2);
        let ind = induced_covering_f(&gamma, 2, &f).unwrap();
        let class = classify(&ind.map);
        assert_eq!(class.kind(), MapKind::Covering, "{:?}", class.witnesses);
        let n = ind.source_power.complex().face_count();
        assert_eq!(ind.map.images(), (0..n as u32).map(FaceId).collect::<Vec<_>>());

        // A non-bijective value map on the same underlying identity still
        // only reaches a weak covering.
        let f = ValueMap::new(3, 2, vec![1, 1, 2]).unwrap();
        let triangle = cat("polygon", &[3]);
        let id_map: Vec<FaceId> = (0..8).map(FaceId).collect();
        let gamma = ComplexMap::new(Arc::clone(&triangle), triangle, id_map).unwrap();
        let ind = induced_covering_f(&gamma, 3, &f).unwrap();
        assert_eq!(classify(&ind.map).kind(), MapKind::WeakCovering);
    }

    #[test]
    fn induced_f_with_proper_surjection_is_weak() {
        let gamma = hexagon_to_triangle();
        let f = ValueMap::new(3, 2, vec![1, 2, 2]).unwrap();
        let ind = induced_covering_f(&gamma, 3, &f).unwrap();
        let class = classify(&ind.map);
        assert!(class.is_weak_covering());
        assert!(!class.strictly_adjacent);
        assert_eq!(class.kind(), MapKind::WeakCovering);
    }

    #[test]
    fn induced_g_balances_the_fibers() {
        let gamma = hexagon_to_triangle();
        // Bijective g: {1,2}^2 -> {1..4} gives a covering 2^K -> 4^L that
        // is one-to-one on vertices.
        let g = BlockValueMap::new(2, 2, 4, vec![1, 2, 3, 4]).unwrap();
        let ind = induced_covering_g(&gamma, 2, &g).unwrap();
        let class = classify(&ind.map);
        assert_eq!(class.kind(), MapKind::Covering, "{:?}", class.witnesses);
        let src_vertices = ind.source_power.complex().vertices().len();
        let tgt_vertices = ind.target_power.complex().vertices().len();
        assert_eq!(src_vertices, 64);
        assert_eq!(tgt_vertices, 64);
        let mut seen = FxHashSet::default();
        for &v in ind.source_power.complex().vertices() {
            assert!(seen.insert(ind.map.apply(v)), "vertex images repeat");
        }

        // Merely surjective g only yields a weak covering.
        let g = BlockValueMap::new(2, 2, 3, vec![1, 2, 3, 3]).unwrap();
        let ind = induced_covering_g(&gamma, 2, &g).unwrap();
        assert_eq!(classify(&ind.map).kind(), MapKind::WeakCovering);
    }

    #[test]
    fn octagon_covering_with_uneven_fibers() {
        // Doubled triangle: three vertices, two parallel edges per side.
        let mut p = RankedPoset::new(2);
        let b = p.add_face(-1);
        let x = p.add_face(0);
        let y = p.add_face(0);
        let z = p.add_face(0);
        let ends = [[x, y], [x, y], [y, z], [y, z], [z, x], [z, x]];
        let edges: Vec<FaceId> = (0..6).map(|_| p.add_face(1)).collect();
        let t = p.add_face(2);
        for v in [x, y, z] {
            p.add_cover(b, v);
        }
        for (e, pair) in edges.iter().zip(ends.iter()) {
            p.add_cover(pair[0], *e);
            p.add_cover(pair[1], *e);
            p.add_cover(*e, t);
        }
        let doubled = Arc::new(IncidenceComplex::from_poset(&p).unwrap());
        assert_eq!(doubled.c_vector(), &[2, 4]);

        let octagon = cat("polygon", &[8]);
        // Closed walk x y z x y z x y covering all six edges.
        let vertex_images = [x, y, z, x, y, z, x, y];
        let edge_images = [
            edges[0], edges[2], edges[4], edges[1], edges[3], edges[5], edges[0], edges[1],
        ];
        let mut map = vec![FaceId(0); 18];
        for i in 0..8usize {
            map[1 + i] = vertex_images[i];
            map[9 + i] = edge_images[i];
        }
        map[17] = t;
        let gamma = ComplexMap::new(octagon, doubled, map).unwrap();
        let class = classify(&gamma);
        assert_eq!(class.kind(), MapKind::Covering, "{:?}", class.witnesses);
        assert_eq!(is_equifibered(&gamma).unwrap(), None);
        assert_eq!(vertex_fiber_sizes(&gamma), vec![3, 3, 2]);
    }

    #[test]
    fn square_quotient_by_half_turn_is_digon() {
        let square = cat("polygon", &[4]);
        let half_turn = Perm::parse_cycles(10, "(1 3)(2 4)(5 7)(6 8)").unwrap();
        let sigma = PermGroup::from_generators(10, vec![half_turn]).unwrap();
        let out = quotient(&square, &sigma).unwrap();
        assert!(out.report.is_complex);
        let q = out.complex.as_ref().unwrap();
        assert_eq!(q.f_vector(), vec![1, 2, 2, 1]);
        assert!(q.is_polytope());
        // The digon is a complex but forgets which vertices describe which
        // edge, which matters further down the pipeline.
        assert!(!q.is_vertex_describable());
    }

    #[test]
    fn trivial_quotient_returns_the_complex() {
        let square = cat("polygon", &[4]);
        let sigma = PermGroup::trivial(10);
        let out = quotient(&square, &sigma).unwrap();
        let q = out.complex.as_ref().unwrap();
        assert!(is_isomorphic(q, &square).is_some());
        assert_eq!(out.orbits.len(), 10);
    }

    #[test]
    fn composing_coverings_gives_a_covering() {
        let gamma = hexagon_to_triangle();
        let triangle = gamma.target_arc();
        let mut refl: Vec<FaceId> = (0..8).map(FaceId).collect();
        refl.swap(1, 2);
        refl.swap(5, 6);
        let second = ComplexMap::new(Arc::clone(&triangle), triangle, refl).unwrap();
        let composed = gamma.compose(&second).unwrap();
        assert_eq!(classify(&composed).kind(), MapKind::Covering);
        assert_eq!(is_equifibered(&composed).unwrap(), Some(2));
    }

    /// Image of every face is independent of how its tuple is extended to a
    /// full vector over all coordinates: the construction only ever reads
    /// coordinates outside the face's vertex set, and extending inside it
    /// cannot change the image. Checked by brute force over all extensions.
    #[test]
    fn induced_images_are_representative_independent() {
        let gamma = hexagon_to_triangle();
        let f = ValueMap::new(2, 2, vec![2, 1]).unwrap();
        let ind = induced_covering_f(&gamma, 2, &f).unwrap();
        let v = ind.source_power.vertex_order().len();
        for (id, face) in ind.source_power.power_faces().iter().enumerate() {
            let PowerFace::Face { base, fixed } = face else {
                continue;
            };
            let comp = ind.source_power.complement_coords(*base);
            let free: Vec<u32> = (0..v as u32).filter(|c| !comp.contains(c)).collect();
            // Every full tuple extending the face's fixed values.
            for choice in 0..(1u32 << free.len()) {
                let mut full = vec![0u16; v];
                for (pos, &coord) in comp.iter().enumerate() {
                    full[coord as usize] = fixed[pos];
                }
                for (bit, &coord) in free.iter().enumerate() {
                    full[coord as usize] = 1 + (choice >> bit & 1) as u16;
                }
                let new_base = gamma.apply(*base);
                let new_fixed: Vec<u16> = ind
                    .target_power
                    .complement_coords(new_base)
                    .iter()
                    .map(|&j| f.apply(full[j as usize]))
                    .collect();
                let direct = ind
                    .target_power
                    .face_id(&PowerFace::Face {
                        base: new_base,
                        fixed: new_fixed.into_boxed_slice(),
                    })
                    .unwrap();
                assert_eq!(direct, ind.map.apply(FaceId(id as u32)));
            }
        }
    }

    #[test]
    fn value_map_validation() {
        assert!(ValueMap::new(3, 2, vec![1, 1, 1]).is_err()); // misses 2
        assert!(ValueMap::new(3, 2, vec![1, 2, 3]).is_err()); // out of range
        assert!(ValueMap::new(2, 2, vec![1]).is_err()); // wrong length
        assert!(BlockValueMap::new(2, 2, 4, vec![1, 2, 3]).is_err());
        assert!(BlockValueMap::new(2, 2, 4, vec![1, 2, 3, 3]).is_err());
        let g = BlockValueMap::new(2, 2, 4, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(g.apply(&[1, 1]), 1);
        assert_eq!(g.apply(&[1, 2]), 2);
        assert_eq!(g.apply(&[2, 1]), 3);
        assert_eq!(g.apply(&[2, 2]), 4);
        assert!(g.is_bijective());
    }
}
