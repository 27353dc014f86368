//! Automorphism groups and the group-theoretic structure of regular
//! complexes.
//!
//! For a regular complex with base flag `F_{-1} < F_0 < ... < F_k`, the
//! distinguished subgroups are `R_i`: the pointwise stabilizer of every base
//! flag face except the rank-`i` one. They satisfy, and
//! [`check_group_properties`] verifies by enumeration:
//!
//! * `R_i R_j = R_j R_i` whenever `|i - j| >= 2`,
//! * the `R_i` together generate the whole group,
//! * the intersection property `<R_i : i in I> ∩ <R_i : i in J> =
//!   <R_i : i in I ∩ J>` (with the flag stabilizer for the empty set),
//! * `c_i` equals the index of the flag stabilizer in `R_i`.
//!
//! [`reconstruct_from_group`] inverts the construction: faces of rank `i`
//! are the right cosets of the subgroup generated by all `R_j`, `j != i`,
//! ordered by non-empty intersection.

use std::fmt;

use crate::complex::IncidenceComplex;
use crate::flags::Flag;
use crate::iso::{for_each_isomorphism, SearchCapExceeded};
use crate::perm::{Perm, PermError, PermGroup};
use crate::poset::{FaceId, Rank, RankedPoset};
use crate::power::{power_complex, PowerComplex, PowerError, PowerFace};
use crate::util::{FxHashMap, FxHashSet};

/// Node budget for automorphism searches; generous for desk-size complexes.
pub const DEFAULT_NODE_CAP: u64 = 200_000_000;
/// Cap on explicit element enumeration inside the subgroup checks.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

#[derive(Debug)]
pub enum SymmetryError {
    SearchCapExceeded(SearchCapExceeded),
    ElementCapExceeded(PermError),
    NotRegular,
    NotAFlag,
    PropertiesDoNotHold(Box<GroupPropertyReport>),
    ImproperStabilizersDiffer,
    Power(PowerError),
    Build(crate::complex::ComplexError),
}

impl fmt::Display for SymmetryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryError::SearchCapExceeded(e) => write!(f, "{e}"),
            SymmetryError::ElementCapExceeded(e) => write!(f, "{e}"),
            SymmetryError::NotRegular => {
                write!(f, "complex is not regular (flag-transitive)")
            }
            SymmetryError::NotAFlag => write!(f, "base chain is not a flag of the complex"),
            SymmetryError::PropertiesDoNotHold(_) => {
                write!(f, "distinguished subgroups violate the required properties")
            }
            SymmetryError::ImproperStabilizersDiffer => {
                write!(f, "stabilizers at the improper ranks differ from the flag stabilizer")
            }
            SymmetryError::Power(e) => write!(f, "{e}"),
            SymmetryError::Build(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SymmetryError {}

impl From<SearchCapExceeded> for SymmetryError {
    fn from(e: SearchCapExceeded) -> Self {
        SymmetryError::SearchCapExceeded(e)
    }
}

impl From<PowerError> for SymmetryError {
    fn from(e: PowerError) -> Self {
        SymmetryError::Power(e)
    }
}

/// Whether a face permutation preserves rank and the cover relation in both
/// directions.
pub fn is_automorphism(c: &IncidenceComplex, g: &Perm) -> bool {
    if g.degree() != c.face_count() {
        return false;
    }
    for f in 0..c.face_count() as u32 {
        let fa = FaceId(f);
        let img = FaceId(g.apply(f));
        if c.face_rank(fa) != c.face_rank(img) {
            return false;
        }
        for &up in c.upper_covers(fa) {
            if c.upper_covers(img)
                .binary_search(&FaceId(g.apply(up.0)))
                .is_err()
            {
                return false;
            }
        }
    }
    // Rank-preserving bijections that preserve covers forward preserve them
    // backward too: cover counts match.
    true
}

/// Full automorphism group, acting on face ids.
pub fn automorphism_group(c: &IncidenceComplex) -> Result<PermGroup, SymmetryError> {
    automorphism_group_capped(c, DEFAULT_NODE_CAP)
}

pub fn automorphism_group_capped(
    c: &IncidenceComplex,
    node_cap: u64,
) -> Result<PermGroup, SymmetryError> {
    let mut group = PermGroup::trivial(c.face_count());
    let mut count = 0u128;
    for_each_isomorphism(
        c,
        c,
        &mut |map| {
            count += 1;
            let p = Perm::from_images(map.to_vec()).expect("bijection by construction");
            if !group.contains(&p) {
                group.extend(p);
            }
            true
        },
        node_cap,
    )?;
    debug_assert_eq!(group.order(), count);
    Ok(group)
}

/// Number of orbits of the group on the flags of the complex.
pub fn flag_orbit_count(c: &IncidenceComplex, group: &PermGroup) -> usize {
    let flags = c.flags();
    let mut index: FxHashMap<&[FaceId], u32> = FxHashMap::default();
    for (i, flag) in flags.iter().enumerate() {
        index.insert(flag.faces(), i as u32);
    }
    let mut seen = vec![false; flags.len()];
    let mut orbits = 0usize;
    let mut image = Vec::new();
    for start in 0..flags.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut queue = vec![start as u32];
        while let Some(f) = queue.pop() {
            for g in group.generators() {
                image.clear();
                image.extend(
                    flags[f as usize]
                        .faces()
                        .iter()
                        .map(|x| FaceId(g.apply(x.0))),
                );
                let to = index[image.as_slice()];
                if !seen[to as usize] {
                    seen[to as usize] = true;
                    queue.push(to);
                }
            }
        }
    }
    orbits
}

/// A complex is regular when its automorphism group is flag-transitive.
pub fn is_regular(c: &IncidenceComplex) -> Result<bool, SymmetryError> {
    let group = automorphism_group(c)?;
    Ok(flag_orbit_count(c, &group) == 1)
}

/// The power complex `n^K` together with its canonical symmetry subgroup:
/// value permutations acting independently on each coordinate, plus lifts of
/// the source automorphisms.
pub struct WreathAction {
    pub power: PowerComplex,
    pub group: PermGroup,
    pub source_group: PermGroup,
}

pub fn wreath_subgroup(source: &IncidenceComplex, n: u16) -> Result<WreathAction, SymmetryError> {
    let power = power_complex(source, n)?;
    let source_group = automorphism_group(source)?;
    let degree = power.complex().face_count();
    let v = power.vertex_order().len();
    let mut gens: Vec<Perm> = Vec::new();

    // Per coordinate: the transposition (1 2) and, for n > 2, the n-cycle.
    for coord in 0..v as u32 {
        let swap = |val: u16| if val == 1 { 2 } else if val == 2 { 1 } else { val };
        gens.push(value_action(&power, coord, swap));
        if n > 2 {
            let cycle = |val: u16| val % n + 1;
            gens.push(value_action(&power, coord, cycle));
        }
    }

    // Lift each source automorphism: permute bases and coordinates together.
    for phi in source_group.generators() {
        gens.push(lift_source_automorphism(&power, phi));
    }

    let group = PermGroup::from_generators(degree, gens).expect("consistent degrees");
    Ok(WreathAction {
        power,
        group,
        source_group,
    })
}

/// Action on power faces that rewrites the fixed value at one coordinate.
fn value_action(power: &PowerComplex, coord: u32, f: impl Fn(u16) -> u16) -> Perm {
    let n_faces = power.complex().face_count();
    let mut img = Vec::with_capacity(n_faces);
    for id in 0..n_faces as u32 {
        match power.power_face(FaceId(id)) {
            PowerFace::Bottom => img.push(id),
            PowerFace::Face { base, fixed } => {
                match power.complement_coords(*base).binary_search(&coord) {
                    Err(_) => img.push(id), // coordinate absorbed by the base
                    Ok(pos) => {
                        let mut new_fixed = fixed.to_vec();
                        new_fixed[pos] = f(new_fixed[pos]);
                        let target = power
                            .face_id(&PowerFace::Face {
                                base: *base,
                                fixed: new_fixed.into_boxed_slice(),
                            })
                            .expect("value rewrite stays inside the power complex");
                        img.push(target.0);
                    }
                }
            }
        }
    }
    Perm::from_images(img).expect("bijective by inverse rewrite")
}

/// Image of every power face under a source automorphism `phi`: the base
/// moves with `phi` and the fixed values follow their coordinates.
fn lift_source_automorphism(power: &PowerComplex, phi: &Perm) -> Perm {
    let n_faces = power.complex().face_count();
    let mut coord_image = vec![0u32; power.vertex_order().len()];
    for (j, vert) in power.vertex_order().iter().enumerate() {
        coord_image[j] = power.coordinate_of(FaceId(phi.apply(vert.0)));
    }
    let mut img = Vec::with_capacity(n_faces);
    for id in 0..n_faces as u32 {
        match power.power_face(FaceId(id)) {
            PowerFace::Bottom => img.push(id),
            PowerFace::Face { base, fixed } => {
                let new_base = FaceId(phi.apply(base.0));
                let mut pairs: Vec<(u32, u16)> = power
                    .complement_coords(*base)
                    .iter()
                    .zip(fixed.iter())
                    .map(|(&c, &val)| (coord_image[c as usize], val))
                    .collect();
                pairs.sort_unstable_by_key(|&(c, _)| c);
                debug_assert!(pairs
                    .iter()
                    .map(|&(c, _)| c)
                    .eq(power.complement_coords(new_base).iter().copied()));
                let new_fixed: Vec<u16> = pairs.into_iter().map(|(_, val)| val).collect();
                let target = power
                    .face_id(&PowerFace::Face {
                        base: new_base,
                        fixed: new_fixed.into_boxed_slice(),
                    })
                    .expect("lift stays inside the power complex");
                img.push(target.0);
            }
        }
    }
    Perm::from_images(img).expect("lift of a bijection is a bijection")
}

/// Distinguished subgroup system of a regular complex at a base flag.
pub struct DistinguishedSystem {
    rank: Rank,
    base_flag: Flag,
    group: PermGroup,
    flag_stab: PermGroup,
    /// `r[l]` is `R_{l-1}`, the stabilizer of all base faces except the
    /// rank-`(l-1)` one.
    r: Vec<PermGroup>,
}

pub fn distinguished_system(
    c: &IncidenceComplex,
    base_flag: &Flag,
) -> Result<DistinguishedSystem, SymmetryError> {
    let levels = (c.rank() + 2) as usize;
    if base_flag.faces().len() != levels
        || base_flag
            .faces()
            .iter()
            .enumerate()
            .any(|(l, f)| !c.contains(*f) || c.face_rank(*f) != l as Rank - 1)
    {
        return Err(SymmetryError::NotAFlag);
    }
    let group = automorphism_group(c)?;
    if flag_orbit_count(c, &group) != 1 {
        return Err(SymmetryError::NotRegular);
    }
    let points: Vec<u32> = base_flag.faces().iter().map(|f| f.0).collect();
    let flag_stab = group.pointwise_stabilizer(&points);
    let mut r = Vec::with_capacity(levels);
    for skip in 0..levels {
        let rest: Vec<u32> = points
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != skip)
            .map(|(_, &p)| p)
            .collect();
        r.push(group.pointwise_stabilizer(&rest));
    }
    Ok(DistinguishedSystem {
        rank: c.rank(),
        base_flag: base_flag.clone(),
        group,
        flag_stab,
        r,
    })
}

impl DistinguishedSystem {
    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn base_flag(&self) -> &Flag {
        &self.base_flag
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn flag_stabilizer(&self) -> &PermGroup {
        &self.flag_stab
    }

    /// `R_i` for `i` in `-1..=k`.
    pub fn r(&self, i: Rank) -> &PermGroup {
        &self.r[(i + 1) as usize]
    }

    /// `|R_i : flag stabilizer|` for `i` in `0..k`; matches the homogeneity
    /// parameters `c_i` of the complex.
    pub fn subgroup_indices(&self) -> Vec<u128> {
        let stab = self.flag_stab.order();
        (0..self.rank)
            .map(|i| self.r(i).order() / stab)
            .collect()
    }

    /// `<R_i : i in ranks>`, with the flag stabilizer always included so the
    /// empty set yields it.
    pub fn gamma(&self, ranks: &[Rank]) -> PermGroup {
        let mut gens: Vec<Perm> = self.flag_stab.generators().to_vec();
        for &i in ranks {
            gens.extend_from_slice(self.r(i).generators());
        }
        PermGroup::from_generators(self.group.degree(), gens).expect("consistent degrees")
    }
}

#[derive(Debug, Clone)]
pub struct GroupPropertyReport {
    /// Pairs `(i, j)` with `|i - j| >= 2` where `R_i R_j != R_j R_i`.
    pub commutation_failures: Vec<(Rank, Rank)>,
    /// Whether the `R_i` generate the full automorphism group.
    pub generates: bool,
    /// Pairs of rank sets violating the intersection property.
    pub intersection_failures: Vec<(Vec<Rank>, Vec<Rank>)>,
}

impl GroupPropertyReport {
    pub fn all_hold(&self) -> bool {
        self.commutation_failures.is_empty()
            && self.generates
            && self.intersection_failures.is_empty()
    }
}

pub fn check_group_properties(
    d: &DistinguishedSystem,
) -> Result<GroupPropertyReport, SymmetryError> {
    let cap = DEFAULT_ELEMENT_CAP;
    let elements = |g: &PermGroup| -> Result<Vec<Perm>, SymmetryError> {
        g.elements(cap).map_err(SymmetryError::ElementCapExceeded)
    };

    let mut commutation_failures = Vec::new();
    for i in -1..=d.rank {
        for j in (i + 2)..=d.rank {
            let ri = elements(d.r(i))?;
            let rj = elements(d.r(j))?;
            let mut forward: FxHashSet<Perm> = FxHashSet::default();
            let mut backward: FxHashSet<Perm> = FxHashSet::default();
            for a in &ri {
                for b in &rj {
                    forward.insert(a.then(b));
                    backward.insert(b.then(a));
                }
            }
            if forward != backward {
                commutation_failures.push((i, j));
            }
        }
    }

    let all_ranks: Vec<Rank> = (-1..=d.rank).collect();
    let generates = d.gamma(&all_ranks).order() == d.group.order();

    // Intersection property over all pairs of rank subsets, with element
    // sets memoized per subset.
    let levels = (d.rank + 2) as usize;
    let mut subset_elems: Vec<FxHashSet<Perm>> = Vec::with_capacity(1 << levels);
    let mut subset_ranks: Vec<Vec<Rank>> = Vec::with_capacity(1 << levels);
    for mask in 0u32..1 << levels {
        let ranks: Vec<Rank> = (0..levels)
            .filter(|l| mask >> l & 1 != 0)
            .map(|l| l as Rank - 1)
            .collect();
        let set: FxHashSet<Perm> = elements(&d.gamma(&ranks))?.into_iter().collect();
        subset_elems.push(set);
        subset_ranks.push(ranks);
    }
    let mut intersection_failures = Vec::new();
    for a in 0u32..1 << levels {
        for b in a..1 << levels {
            let meet = (a & b) as usize;
            let lhs: FxHashSet<&Perm> = subset_elems[a as usize]
                .intersection(&subset_elems[b as usize])
                .collect();
            let rhs = &subset_elems[meet];
            if lhs.len() != rhs.len() || !rhs.iter().all(|p| lhs.contains(p)) {
                intersection_failures.push((
                    subset_ranks[a as usize].clone(),
                    subset_ranks[b as usize].clone(),
                ));
            }
        }
    }

    Ok(GroupPropertyReport {
        commutation_failures,
        generates,
        intersection_failures,
    })
}

/// Rebuilds a complex from the distinguished system alone: rank-`i` faces
/// are right cosets of the subgroup generated by the other `R_j`, with
/// incidence given by non-empty coset intersection.
pub fn reconstruct_from_group(d: &DistinguishedSystem) -> Result<IncidenceComplex, SymmetryError> {
    let report = check_group_properties(d)?;
    if !report.all_hold() {
        return Err(SymmetryError::PropertiesDoNotHold(Box::new(report)));
    }
    let cap = DEFAULT_ELEMENT_CAP;
    let elements = d
        .group
        .elements(cap)
        .map_err(SymmetryError::ElementCapExceeded)?;
    let index: FxHashMap<&Perm, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i as u32))
        .collect();

    // The improper stabilizers must both equal the flag stabilizer for the
    // reconstruction to have unique improper faces.
    let stab_set: FxHashSet<Perm> = d
        .flag_stab
        .elements(cap)
        .map_err(SymmetryError::ElementCapExceeded)?
        .into_iter()
        .collect();
    for i in [-1, d.rank] {
        let set: FxHashSet<Perm> = d
            .r(i)
            .elements(cap)
            .map_err(SymmetryError::ElementCapExceeded)?
            .into_iter()
            .collect();
        if set != stab_set {
            return Err(SymmetryError::ImproperStabilizersDiffer);
        }
    }

    let levels = (d.rank + 2) as usize;
    // Cosets of H_i = <R_j : j != i> per level, as sorted element-index sets.
    let mut faces: Vec<Vec<u32>> = Vec::new();
    let mut face_ranks: Vec<Rank> = Vec::new();
    for level in 0..levels {
        let ranks: Vec<Rank> = (0..levels)
            .filter(|l| *l != level)
            .map(|l| l as Rank - 1)
            .collect();
        let h = d.gamma(&ranks);
        let h_elems = h
            .elements(cap)
            .map_err(SymmetryError::ElementCapExceeded)?;
        let mut assigned = vec![false; elements.len()];
        for g_idx in 0..elements.len() {
            if assigned[g_idx] {
                continue;
            }
            let g = &elements[g_idx];
            let mut coset: Vec<u32> = h_elems.iter().map(|h| index[&h.then(g)]).collect();
            coset.sort_unstable();
            coset.dedup();
            for &m in &coset {
                assigned[m as usize] = true;
            }
            faces.push(coset);
            face_ranks.push(level as Rank - 1);
        }
    }

    let intersects = |a: &[u32], b: &[u32]| -> bool {
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    };

    let mut p = RankedPoset::new(d.rank);
    for &r in &face_ranks {
        p.add_face(r);
    }
    for (i, fa) in faces.iter().enumerate() {
        for (j, fb) in faces.iter().enumerate() {
            if face_ranks[j] == face_ranks[i] + 1 && intersects(fa, fb) {
                p.add_cover(FaceId(i as u32), FaceId(j as u32));
            }
        }
    }
    IncidenceComplex::from_poset(&p).map_err(SymmetryError::Build)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, CatalogKey};
    use crate::iso::is_isomorphic;

    fn cat(name: &str, params: &[i64]) -> IncidenceComplex {
        generate(&CatalogKey::from_name_params(name, params).unwrap()).unwrap()
    }

    #[test]
    fn polygon_automorphisms_are_dihedral() {
        for q in [3i64, 4, 5, 6] {
            let c = cat("polygon", &[q]);
            let g = automorphism_group(&c).unwrap();
            assert_eq!(g.order(), 2 * q as u128);
            for gen in g.generators() {
                assert!(is_automorphism(&c, gen));
            }
        }
    }

    #[test]
    fn cube_group_order() {
        let c = cat("cube", &[3]);
        let g = automorphism_group(&c).unwrap();
        assert_eq!(g.order(), 48);
        assert!(is_regular(&c).unwrap());
    }

    #[test]
    fn generalized_square_group() {
        // 3^{edge}: the wreath product S_3 wr S_2 of order 72 acts, and is
        // the full automorphism group here.
        let c = cat("complex_cube", &[2, 3]);
        let g = automorphism_group(&c).unwrap();
        assert!(g.order() >= 72);
        let w = wreath_subgroup(&cat("simplex", &[2]), 3).unwrap();
        assert_eq!(w.group.order(), 72);
        for gen in w.group.generators() {
            assert!(is_automorphism(w.power.complex(), gen));
            assert!(g.contains(gen));
        }
    }

    /// Apex with degree 4, base vertices with degree 3: flags split into
    /// several orbits.
    fn square_pyramid() -> IncidenceComplex {
        let mut p = RankedPoset::new(3);
        let bo = p.add_face(-1);
        let apex = p.add_face(0);
        let base: Vec<FaceId> = (0..4).map(|_| p.add_face(0)).collect();
        let slant: Vec<FaceId> = (0..4).map(|_| p.add_face(1)).collect();
        let ring: Vec<FaceId> = (0..4).map(|_| p.add_face(1)).collect();
        let tri: Vec<FaceId> = (0..4).map(|_| p.add_face(2)).collect();
        let sq = p.add_face(2);
        let t = p.add_face(3);
        p.add_cover(bo, apex);
        p.add_cover(sq, t);
        for i in 0..4 {
            p.add_cover(bo, base[i]);
            p.add_cover(apex, slant[i]);
            p.add_cover(base[i], slant[i]);
            p.add_cover(base[i], ring[i]);
            p.add_cover(base[(i + 1) % 4], ring[i]);
            p.add_cover(slant[i], tri[i]);
            p.add_cover(slant[(i + 1) % 4], tri[i]);
            p.add_cover(ring[i], tri[i]);
            p.add_cover(ring[i], sq);
            p.add_cover(tri[i], t);
        }
        IncidenceComplex::from_poset(&p).unwrap()
    }

    #[test]
    fn square_pyramid_is_not_regular() {
        let c = square_pyramid();
        assert!(c.is_polytope());
        assert!(!is_regular(&c).unwrap());
        let g = automorphism_group(&c).unwrap();
        assert_eq!(g.order(), 8);
        assert!(flag_orbit_count(&c, &g) > 1);
    }

    #[test]
    fn wreath_subgroup_orders() {
        // (n!)^v times the source group order.
        let cases: &[(&str, &[i64], u16, u128)] = &[
            ("simplex", &[2], 3, 6 * 6 * 2),
            ("polygon", &[4], 2, 16 * 8),
            ("simplex", &[3], 2, 8 * 6),
        ];
        for &(name, params, n, expect) in cases {
            let w = wreath_subgroup(&cat(name, params), n).unwrap();
            assert_eq!(w.group.order(), expect, "{name} {params:?} {n}");
            let vertices: Vec<u32> =
                w.power.complex().vertices().iter().map(|f| f.0).collect();
            assert!(w.group.is_transitive_on(&vertices));
        }
    }

    #[test]
    fn distinguished_system_of_the_cube() {
        let c = cat("cube", &[3]);
        let flags = c.flags();
        let d = distinguished_system(&c, &flags[0]).unwrap();
        assert_eq!(d.group().order(), 48);
        assert_eq!(d.flag_stabilizer().order(), 1);
        // Generated by involutions: each R_i has order 2 here.
        for i in 0..3 {
            assert_eq!(d.r(i).order(), 2);
        }
        assert_eq!(d.subgroup_indices(), vec![2, 2, 2]);
        let report = check_group_properties(&d).unwrap();
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn distinguished_system_of_generalized_square() {
        let c = cat("complex_cube", &[2, 3]);
        let flags = c.flags();
        let d = distinguished_system(&c, &flags[0]).unwrap();
        assert_eq!(d.group().order(), 72);
        assert_eq!(d.subgroup_indices(), vec![3, 2]);
        assert_eq!(
            d.subgroup_indices(),
            c.c_vector().iter().map(|&x| x as u128).collect::<Vec<_>>()
        );
    }

    #[test]
    fn reconstruction_round_trips() {
        for (name, params) in [("cube", &[3i64][..]), ("complex_cube", &[2, 3]), ("polygon", &[5])] {
            let c = cat(name, params);
            let flags = c.flags();
            let d = distinguished_system(&c, &flags[0]).unwrap();
            let rebuilt = reconstruct_from_group(&d).unwrap();
            assert_eq!(rebuilt.f_vector(), c.f_vector(), "{name} {params:?}");
            assert!(
                is_isomorphic(&rebuilt, &c).is_some(),
                "{name} {params:?} reconstruction"
            );
        }
    }

    #[test]
    fn irregular_complex_and_bad_flag_rejected() {
        let pyr = square_pyramid();
        let flags = pyr.flags();
        assert!(matches!(
            distinguished_system(&pyr, &flags[0]),
            Err(SymmetryError::NotRegular)
        ));

        let c = cat("torus44", &[3]);
        let bad = Flag::new(vec![FaceId(0), FaceId(0), FaceId(1), FaceId(2), FaceId(3)]);
        assert!(matches!(
            distinguished_system(&c, &bad),
            Err(SymmetryError::NotAFlag)
        ));
    }
}
