//! Axiom checks for incidence complexes.
//!
//! The four axioms, checked on structurally sound ranked posets:
//!
//! * I1: unique least face and unique greatest face.
//! * I2: every maximal chain has one face of each rank `-1..=k`.
//! * I3: strong flag connectivity. For every pair of flags, the flags
//!   containing their common faces are connected through adjacent flags.
//! * I4: for every incident pair of an `(i-1)`-face and an `(i+1)`-face, the
//!   number of `i`-faces between them is a constant `c_i >= 2`.

use serde::Serialize;

use crate::flags::{enumerate_flags, FlagGraph};
use crate::poset::{build_derived, Derived, FaceId, PosetError, RankedPoset};
use crate::util::FxHashSet;

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Axiom {
    I1,
    I2,
    I3,
    I4,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Witness faces: the offending faces, or the union of the two flags for
    /// a connectivity failure.
    pub faces: Vec<FaceId>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub is_complex: bool,
    /// Homogeneous cover counts `c_0..c_{k-1}`; present only when all axioms
    /// hold.
    pub c: Option<Vec<u32>>,
    pub violations: Vec<Violation>,
}

/// Per-axiom cap on recorded witnesses; validation keeps going so a report
/// can show several independent problems, but not thousands.
const MAX_WITNESSES: usize = 3;

/// Checks the axioms on a raw poset. Structural problems (dangling ids,
/// skipped ranks, covers that do not go up one level) are errors, not
/// violations.
pub fn validate(p: &RankedPoset) -> Result<ValidationReport, PosetError> {
    validate_full(p).map(|(report, _)| report)
}

pub(crate) fn validate_full(
    p: &RankedPoset,
) -> Result<(ValidationReport, Derived), PosetError> {
    let d = build_derived(p)?;
    let mut violations = Vec::new();

    check_i1(p, &d, &mut violations);
    check_i2(p, &d, &mut violations);
    let c = check_i4(p, &d, &mut violations);
    check_i3(p, &d, &mut violations);

    let is_complex = violations.is_empty();
    let report = ValidationReport {
        is_complex,
        c: if is_complex { Some(c) } else { None },
        violations,
    };
    Ok((report, d))
}

fn push(violations: &mut Vec<Violation>, axiom: Axiom, faces: Vec<FaceId>, detail: String) {
    if violations.iter().filter(|v| v.axiom == axiom).count() < MAX_WITNESSES {
        violations.push(Violation {
            axiom,
            faces,
            detail,
        });
    }
}

fn check_i1(p: &RankedPoset, d: &Derived, violations: &mut Vec<Violation>) {
    let bottoms = &d.by_rank[0];
    let tops = d.by_rank.last().unwrap();
    if bottoms.len() != 1 {
        push(
            violations,
            Axiom::I1,
            bottoms.clone(),
            format!("{} faces of rank -1, expected exactly one", bottoms.len()),
        );
    }
    if tops.len() != 1 {
        push(
            violations,
            Axiom::I1,
            tops.clone(),
            format!("{} faces of rank {}, expected exactly one", tops.len(), p.rank()),
        );
    }
    if bottoms.len() == 1 && tops.len() == 1 {
        let bottom = bottoms[0];
        let top = tops[0];
        for f in 0..p.face_count() {
            if !d.leq(bottom.index(), f) {
                push(
                    violations,
                    Axiom::I1,
                    vec![FaceId(f as u32)],
                    format!("face {f} is not above the least face"),
                );
            }
            if !d.leq(f, top.index()) {
                push(
                    violations,
                    Axiom::I1,
                    vec![FaceId(f as u32)],
                    format!("face {f} is not below the greatest face"),
                );
            }
        }
    }
}

fn check_i2(p: &RankedPoset, d: &Derived, violations: &mut Vec<Violation>) {
    // Covers already move up exactly one rank, so chains are stunted exactly
    // when some face misses an upper or lower cover.
    for f in 0..p.face_count() {
        let r = p.face_rank(FaceId(f as u32));
        if r < p.rank() && d.up[f].is_empty() {
            push(
                violations,
                Axiom::I2,
                vec![FaceId(f as u32)],
                format!("face {f} of rank {r} has no upper cover"),
            );
        }
        if r > -1 && d.down[f].is_empty() {
            push(
                violations,
                Axiom::I2,
                vec![FaceId(f as u32)],
                format!("face {f} of rank {r} has no lower cover"),
            );
        }
    }
}

fn check_i4(p: &RankedPoset, d: &Derived, violations: &mut Vec<Violation>) -> Vec<u32> {
    let k = p.rank();
    let mut between = vec![0u32; p.face_count()];
    let mut stamp = vec![0u32; p.face_count()];
    let mut tick = 0u32;
    let mut highs: Vec<FaceId> = Vec::new();
    let mut c = Vec::new();
    for i in 0..k {
        let lows = &d.by_rank[i as usize]; // rank i - 1
        let mut expected: Option<u32> = None;
        for &a in lows {
            // Two cover steps up from `a` reach exactly the incident
            // `(i+1)`-faces, each as many times as there are `i`-faces
            // between the pair.
            tick += 1;
            highs.clear();
            for m in &d.up[a.index()] {
                for &b in &d.up[m.index()] {
                    if stamp[b.index()] != tick {
                        stamp[b.index()] = tick;
                        between[b.index()] = 0;
                        highs.push(b);
                    }
                    between[b.index()] += 1;
                }
            }
            highs.sort_unstable();
            for &b in &highs {
                let count = between[b.index()];
                match expected {
                    None => {
                        if count < 2 {
                            push(
                                violations,
                                Axiom::I4,
                                vec![a, b],
                                format!(
                                    "found {count} of rank {i} between faces {a} and {b}, \
                                     expected at least 2"
                                ),
                            );
                        }
                        expected = Some(count);
                    }
                    Some(e) if e != count => {
                        push(
                            violations,
                            Axiom::I4,
                            vec![a, b],
                            format!(
                                "{count} faces of rank {i} between faces {a} and {b}, \
                                 expected {e}"
                            ),
                        );
                    }
                    Some(_) => {}
                }
            }
        }
        c.push(expected.unwrap_or(0));
    }
    c
}

fn check_i3(p: &RankedPoset, d: &Derived, violations: &mut Vec<Violation>) {
    let flags = enumerate_flags(&d.by_rank, &d.up);
    let levels = (p.rank() + 2) as usize;
    let complete: Vec<_> = flags
        .into_iter()
        .filter(|f| f.faces().len() == levels)
        .collect();
    if complete.is_empty() {
        return; // I1/I2 violations already explain this
    }
    let graph = FlagGraph::build(p.rank(), complete);
    let nf = graph.flag_count();

    let mut stamp = vec![0u32; nf];
    let mut tick = 0u32;
    let mut queue: Vec<u32> = Vec::new();

    // Flags sharing only the improper faces are connected through them
    // exactly when the whole graph is connected, so a shortfall here
    // already witnesses a violation.
    restricted_bfs(&graph, 0, 0, levels - 1, &mut stamp, &mut tick, &mut queue);
    let mut reported = 0usize;
    if queue.len() != nf {
        let mut inside = vec![false; nf];
        for &f in &queue {
            inside[f as usize] = true;
        }
        let outside = (0..nf as u32)
            .find(|&f| !inside[f as usize])
            .expect("disconnected graph has an unreached flag");
        report_unconnected_pair(violations, &graph, 0, outside);
        reported += 1;
    }

    // Any other pair of flags shares a chain, and a path that keeps the
    // chain never rewrites a level outside the chain's gaps, so it splits
    // into independent per-gap paths. Two flags are therefore connected
    // through their common chain exactly when, for every consecutive pair
    // A < B of it, the two chain segments strictly between A and B can be
    // rewritten into each other. Checking every incident (A, B) pair covers
    // every flag pair. Gaps of two ranks hold single-face segments which
    // are all directly adjacent, so only wider gaps need a walk.
    let mut through: Vec<Vec<u32>> = vec![Vec::new(); p.face_count()];
    for a in 0..nf as u32 {
        for l in 1..levels - 1 {
            through[graph.flags()[a as usize].faces()[l].index()].push(a);
        }
    }
    let mut members: Vec<u32> = Vec::new();
    for a_face in 0..p.face_count() {
        let level_a = (p.face_rank(FaceId(a_face as u32)) + 1) as usize;
        for &bf in &d.up_sets[a_face] {
            let b_face = bf.index();
            let level_b = (p.face_rank(bf) + 1) as usize;
            if level_b - level_a < 3 {
                continue;
            }
            if level_a == 0 && level_b == levels - 1 {
                continue; // the whole-graph pass above
            }
            members.clear();
            if level_a == 0 {
                members.extend_from_slice(&through[b_face]);
            } else if level_b == levels - 1 {
                members.extend_from_slice(&through[a_face]);
            } else {
                // Scan the sparser of the two lists and keep the flags that
                // also pass through the other face.
                let (scan, other, other_level) =
                    if through[a_face].len() <= through[b_face].len() {
                        (&through[a_face], b_face, level_b)
                    } else {
                        (&through[b_face], a_face, level_a)
                    };
                members.extend(scan.iter().copied().filter(|&f| {
                    graph.flags()[f as usize].faces()[other_level].index() == other
                }));
            }
            let Some(&start) = members.first() else {
                continue; // stunted chains are already reported under I2
            };
            // Flags through both faces may differ outside the gap; what has
            // to be reachable is every distinct segment inside it.
            restricted_bfs(&graph, start, level_a, level_b, &mut stamp, &mut tick, &mut queue);
            let segment =
                |f: u32| graph.flags()[f as usize].faces()[level_a + 1..level_b].to_vec();
            let reached: FxHashSet<Vec<FaceId>> = queue.iter().map(|&f| segment(f)).collect();
            if let Some(stray) = members
                .iter()
                .copied()
                .find(|&f| !reached.contains(&segment(f)))
            {
                report_unconnected_pair(violations, &graph, start, stray);
                reported += 1;
                if reported >= MAX_WITNESSES {
                    return;
                }
            }
        }
    }
}

fn report_unconnected_pair(violations: &mut Vec<Violation>, graph: &FlagGraph, a: u32, b: u32) {
    let mut faces: Vec<FaceId> = graph.flags()[a as usize]
        .faces()
        .iter()
        .chain(graph.flags()[b as usize].faces())
        .copied()
        .collect();
    faces.sort_unstable();
    faces.dedup();
    push(
        violations,
        Axiom::I3,
        faces,
        format!(
            "flags {:?} and {:?} are not connected through their common faces",
            graph.flags()[a as usize].faces(),
            graph.flags()[b as usize].faces()
        ),
    );
}

/// BFS from `start` along edges whose level lies strictly between `lo` and
/// `hi`; visited flags end up in `queue`, stamped with the fresh tick.
fn restricted_bfs(
    graph: &FlagGraph,
    start: u32,
    lo: usize,
    hi: usize,
    stamp: &mut [u32],
    tick: &mut u32,
    queue: &mut Vec<u32>,
) {
    *tick += 1;
    let t = *tick;
    queue.clear();
    queue.push(start);
    stamp[start as usize] = t;
    let mut head = 0;
    while head < queue.len() {
        let f = queue[head];
        head += 1;
        for &(g, label) in graph.neighbors(f) {
            let level = (label + 1) as usize;
            if level <= lo || level >= hi {
                continue;
            }
            if stamp[g as usize] != t {
                stamp[g as usize] = t;
                queue.push(g);
            }
        }
    }
}
