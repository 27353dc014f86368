//! Flags (maximal chains) and the labelled flag adjacency graph.
//!
//! A flag of a rank-`k` complex lists one face per rank `-1..=k`. Two flags
//! are `i`-adjacent when they differ exactly in their rank-`i` face; the flag
//! graph has one edge per adjacent pair, labelled with that rank.

use std::fmt::Write as _;

use crate::poset::{FaceId, Rank};
use crate::util::{mix, FxHashMap};

/// Maximal chain; `faces()[l]` is the face of rank `l - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Flag {
    faces: Vec<FaceId>,
}

impl Flag {
    pub(crate) fn new(faces: Vec<FaceId>) -> Self {
        Flag { faces }
    }

    pub fn faces(&self) -> &[FaceId] {
        &self.faces
    }

    pub fn rank(&self) -> Rank {
        self.faces.len() as Rank - 2
    }

    pub fn face_at_rank(&self, r: Rank) -> FaceId {
        self.faces[(r + 1) as usize]
    }
}

/// Enumerates all full-length chains from the bottom level upwards, in
/// lexicographic order of the chosen face ids. Chains that stop early
/// (missing upper covers) are dropped; validation reports those faces.
pub(crate) fn enumerate_flags(
    by_rank: &[Vec<FaceId>],
    up: &[Vec<FaceId>],
) -> Vec<Flag> {
    let levels = by_rank.len();
    let mut out = Vec::new();
    let mut chain: Vec<FaceId> = Vec::with_capacity(levels);
    // Iterative DFS: stack of (face, depth) candidates.
    for &bottom in by_rank[0].iter() {
        let mut stack: Vec<(FaceId, usize)> = vec![(bottom, 0)];
        while let Some((face, depth)) = stack.pop() {
            chain.truncate(depth);
            chain.push(face);
            if depth + 1 == levels || up[face.index()].is_empty() {
                if depth + 1 == levels {
                    out.push(Flag::new(chain.clone()));
                }
                continue;
            }
            for &next in up[face.index()].iter().rev() {
                stack.push((next, depth + 1));
            }
        }
    }
    out
}

/// Flag graph: flags plus `i`-adjacency, one labelled edge per pair.
#[derive(Clone, Debug)]
pub struct FlagGraph {
    rank: Rank,
    flags: Vec<Flag>,
    /// `(a, b, i)` with `a < b`, flags differing exactly at rank `i`.
    edges: Vec<(u32, u32, Rank)>,
    /// Per flag: `(neighbor, label)`, sorted by label then neighbor.
    adj: Vec<Vec<(u32, Rank)>>,
}

impl FlagGraph {
    pub(crate) fn build(rank: Rank, flags: Vec<Flag>) -> Self {
        let levels = (rank + 2) as usize;
        let mut edges = Vec::new();
        let mut adj: Vec<Vec<(u32, Rank)>> = vec![Vec::new(); flags.len()];
        // Group flags by their chain with level `l` erased; each group is a
        // clique of (l-1)-adjacent flags.
        for level in 1..levels.saturating_sub(1) {
            let label = level as Rank - 1;
            let mut groups: FxHashMap<u64, Vec<u32>> = FxHashMap::default();
            for (idx, flag) in flags.iter().enumerate() {
                let mut h = 0u64;
                for (l, f) in flag.faces().iter().enumerate() {
                    if l != level {
                        h = mix(h, f.0 as u64 + 1);
                    }
                }
                groups.entry(h).or_default().push(idx as u32);
            }
            for group in groups.values() {
                for (i, &a) in group.iter().enumerate() {
                    for &b in &group[i + 1..] {
                        // Hash grouping is a candidate filter; confirm the
                        // chains really agree away from `level`.
                        let fa = flags[a as usize].faces();
                        let fb = flags[b as usize].faces();
                        let agree = fa
                            .iter()
                            .zip(fb)
                            .enumerate()
                            .all(|(l, (x, y))| l == level || x == y);
                        if agree && fa[level] != fb[level] {
                            edges.push((a.min(b), a.max(b), label));
                            adj[a as usize].push((b, label));
                            adj[b as usize].push((a, label));
                        }
                    }
                }
            }
        }
        edges.sort_unstable();
        for list in &mut adj {
            list.sort_unstable_by_key(|&(n, l)| (l, n));
        }
        FlagGraph {
            rank,
            flags,
            edges,
            adj,
        }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn flag_count(&self) -> usize {
        self.flags.len()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn edges(&self) -> &[(u32, u32, Rank)] {
        &self.edges
    }

    pub fn neighbors(&self, flag: u32) -> &[(u32, Rank)] {
        &self.adj[flag as usize]
    }

    pub fn adjacent(&self, flag: u32, label: Rank) -> impl Iterator<Item = u32> + '_ {
        self.adj[flag as usize]
            .iter()
            .filter(move |&&(_, l)| l == label)
            .map(|&(n, _)| n)
    }

    /// Whether the adjacency graph is bipartite; decides orientability for
    /// rank-3 polytopal maps.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![-1i8; self.flags.len()];
        for start in 0..self.flags.len() {
            if color[start] >= 0 {
                continue;
            }
            color[start] = 0;
            let mut queue = vec![start as u32];
            while let Some(f) = queue.pop() {
                for &(g, _) in &self.adj[f as usize] {
                    if color[g as usize] < 0 {
                        color[g as usize] = 1 - color[f as usize];
                        queue.push(g);
                    } else if color[g as usize] == color[f as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// GraphViz rendering with one node per flag and `label=i` per edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph flags {\n");
        for (idx, flag) in self.flags.iter().enumerate() {
            let chain: Vec<String> = flag.faces().iter().map(|f| f.to_string()).collect();
            let _ = writeln!(out, "  f{} [chain=\"{}\"];", idx, chain.join(" "));
        }
        for &(a, b, label) in &self.edges {
            let _ = writeln!(out, "  f{a} -- f{b} [label={label}];");
        }
        out.push_str("}\n");
        out
    }
}
