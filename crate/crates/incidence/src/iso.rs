//! Poset isomorphism between incidence complexes.
//!
//! Backtracking over a constrained face order with hashed neighborhood
//! signatures for pruning. Candidates are always drawn from the cover lists
//! of an already-mapped neighbor, and every assignment is checked against all
//! mapped neighbors in both directions, so a completed assignment is a
//! genuine isomorphism.

use crate::complex::IncidenceComplex;
use crate::poset::FaceId;
use crate::util::mix;

#[derive(Clone, Debug)]
pub struct Isomorphism {
    /// `map[f]` is the image of source face `f`.
    pub map: Vec<FaceId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchCapExceeded {
    pub nodes: u64,
}

impl std::fmt::Display for SearchCapExceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "isomorphism search exceeded {} nodes", self.nodes)
    }
}

impl std::error::Error for SearchCapExceeded {}

const UNSET: u32 = u32::MAX;

/// Finds one isomorphism, or proves there is none.
pub fn is_isomorphic(a: &IncidenceComplex, b: &IncidenceComplex) -> Option<Isomorphism> {
    let mut found = None;
    let mut visit = |m: &[u32]| {
        found = Some(Isomorphism {
            map: m.iter().map(|&x| FaceId(x)).collect(),
        });
        false // stop at the first hit
    };
    search(a, b, &mut visit, u64::MAX).expect("uncapped search cannot overflow");
    found
}

/// Calls `visit` with every isomorphism from `a` onto `b`; the visitor
/// returns false to stop early. With `a` as both sides this enumerates the
/// automorphism group.
pub fn for_each_isomorphism(
    a: &IncidenceComplex,
    b: &IncidenceComplex,
    visit: &mut dyn FnMut(&[u32]) -> bool,
    node_cap: u64,
) -> Result<(), SearchCapExceeded> {
    search(a, b, visit, node_cap)
}

fn search(
    a: &IncidenceComplex,
    b: &IncidenceComplex,
    visit: &mut dyn FnMut(&[u32]) -> bool,
    node_cap: u64,
) -> Result<(), SearchCapExceeded> {
    if a.rank() != b.rank()
        || a.face_count() != b.face_count()
        || a.f_vector() != b.f_vector()
        || a.c_vector() != b.c_vector()
    {
        return Ok(());
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    // Signature multisets must match rank by rank.
    for r in -1..=a.rank() {
        let mut sa: Vec<u64> = a.faces_of_rank(r).iter().map(|f| sig_a[f.index()]).collect();
        let mut sb: Vec<u64> = b.faces_of_rank(r).iter().map(|f| sig_b[f.index()]).collect();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(());
        }
    }

    let (order, anchors) = search_order(a);
    let mut state = State {
        a,
        b,
        order,
        anchors,
        sig_a,
        sig_b,
        mapped: vec![UNSET; a.face_count()],
        used: vec![UNSET; b.face_count()],
        nodes: 0,
        node_cap,
    };
    state.dfs(0, visit)?;
    Ok(())
}

struct State<'a> {
    a: &'a IncidenceComplex,
    b: &'a IncidenceComplex,
    order: Vec<u32>,
    /// Per order position: an earlier-ordered Hasse neighbor and whether that
    /// anchor lies above the face.
    anchors: Vec<Option<(u32, bool)>>,
    sig_a: Vec<u64>,
    sig_b: Vec<u64>,
    mapped: Vec<u32>,
    used: Vec<u32>,
    nodes: u64,
    node_cap: u64,
}

impl State<'_> {
    fn dfs(
        &mut self,
        pos: usize,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> Result<bool, SearchCapExceeded> {
        if pos == self.order.len() {
            return Ok(!visit(&self.mapped));
        }
        let f = self.order[pos];
        let candidates: Vec<u32> = match self.anchors[pos] {
            None => self
                .b
                .faces_of_rank(self.a.face_rank(FaceId(f)))
                .iter()
                .map(|g| g.0)
                .collect(),
            Some((anchor, anchor_above)) => {
                let m = self.mapped[anchor as usize];
                debug_assert_ne!(m, UNSET);
                let pool = if anchor_above {
                    self.b.lower_covers(FaceId(m))
                } else {
                    self.b.upper_covers(FaceId(m))
                };
                pool.iter().map(|g| g.0).collect()
            }
        };
        for g in candidates {
            self.nodes += 1;
            if self.nodes > self.node_cap {
                return Err(SearchCapExceeded { nodes: self.nodes });
            }
            if self.used[g as usize] != UNSET
                || self.sig_b[g as usize] != self.sig_a[f as usize]
                || !self.compatible(f, g)
            {
                continue;
            }
            self.mapped[f as usize] = g;
            self.used[g as usize] = f;
            let stop = self.dfs(pos + 1, visit)?;
            self.mapped[f as usize] = UNSET;
            self.used[g as usize] = UNSET;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Mapping `f -> g` must agree with every already-mapped cover neighbor,
    /// in both complexes and both directions.
    fn compatible(&self, f: u32, g: u32) -> bool {
        let fa = FaceId(f);
        let gb = FaceId(g);
        for x in self.a.lower_covers(fa) {
            let y = self.mapped[x.index()];
            if y != UNSET && self.b.lower_covers(gb).binary_search(&FaceId(y)).is_err() {
                return false;
            }
        }
        for x in self.a.upper_covers(fa) {
            let y = self.mapped[x.index()];
            if y != UNSET && self.b.upper_covers(gb).binary_search(&FaceId(y)).is_err() {
                return false;
            }
        }
        for y in self.b.lower_covers(gb) {
            let x = self.used[y.index()];
            if x != UNSET && self.a.lower_covers(fa).binary_search(&FaceId(x)).is_err() {
                return false;
            }
        }
        for y in self.b.upper_covers(gb) {
            let x = self.used[y.index()];
            if x != UNSET && self.a.upper_covers(fa).binary_search(&FaceId(x)).is_err() {
                return false;
            }
        }
        true
    }
}

/// Hashed neighborhood signatures, refined a few rounds. Equal faces always
/// get equal signatures; the search re-verifies everything, so collisions
/// only cost time.
fn signatures(c: &IncidenceComplex) -> Vec<u64> {
    let n = c.face_count();
    let mut sig: Vec<u64> = (0..n)
        .map(|f| {
            let id = FaceId(f as u32);
            let mut h = mix(0x1069, (c.face_rank(id) + 1) as u64);
            h = mix(h, c.upper_covers(id).len() as u64);
            h = mix(h, c.lower_covers(id).len() as u64);
            mix(h, c.vertex_set(id).len() as u64)
        })
        .collect();
    let mut scratch: Vec<u64> = Vec::new();
    for _ in 0..3 {
        let mut next = vec![0u64; n];
        for f in 0..n {
            let id = FaceId(f as u32);
            let mut h = mix(sig[f], 0x5eed);
            for covers in [c.upper_covers(id), c.lower_covers(id)] {
                scratch.clear();
                scratch.extend(covers.iter().map(|g| sig[g.index()]));
                scratch.sort_unstable();
                for &s in &scratch {
                    h = mix(h, s);
                }
                h = mix(h, 0x5e9a);
            }
            next[f] = h;
        }
        sig = next;
    }
    sig
}

/// Visits faces from the greatest face outward along Hasse edges, always
/// picking an unvisited face with the most already-visited neighbors.
fn search_order(a: &IncidenceComplex) -> (Vec<u32>, Vec<Option<(u32, bool)>>) {
    let n = a.face_count();
    let mut order = Vec::with_capacity(n);
    let mut anchors = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut score = vec![0u32; n];
    let mut anchor: Vec<Option<(u32, bool)>> = vec![None; n];

    let mut current = a.greatest_face().0;
    loop {
        order.push(current);
        anchors.push(anchor[current as usize]);
        placed[current as usize] = true;
        let id = FaceId(current);
        for &x in a.lower_covers(id) {
            score[x.index()] += 1;
            if anchor[x.index()].is_none() {
                anchor[x.index()] = Some((current, true));
            }
        }
        for &x in a.upper_covers(id) {
            score[x.index()] += 1;
            if anchor[x.index()].is_none() {
                anchor[x.index()] = Some((current, false));
            }
        }
        let mut best: Option<u32> = None;
        for f in 0..n {
            if placed[f] || score[f] == 0 {
                continue;
            }
            if best.map_or(true, |b| score[f] > score[b as usize]) {
                best = Some(f as u32);
            }
        }
        match best {
            Some(f) => current = f,
            None => break,
        }
    }
    debug_assert_eq!(order.len(), n, "Hasse diagram of a complex is connected");
    (order, anchors)
}
