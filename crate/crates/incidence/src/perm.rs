//! Permutations and permutation groups.
//!
//! Groups carry a deterministic Schreier-Sims stabilizer chain, giving exact
//! order, membership tests, orbits, pointwise stabilizers, and (capped)
//! element enumeration. Products compose left to right: `a.then(b)` applies
//! `a` first, matching the right-action convention used for cosets.

use std::fmt;

use crate::util::FxHashMap;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    img: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    NotABijection { degree: usize },
    DegreeMismatch { expected: usize, got: usize },
    PointOutOfRange { point: u32, degree: usize },
    BadCycleNotation { text: String },
    TooManyElements { order: u128, cap: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotABijection { degree } => {
                write!(f, "image list is not a bijection on 0..{degree}")
            }
            PermError::DegreeMismatch { expected, got } => {
                write!(f, "expected degree {expected}, got {got}")
            }
            PermError::PointOutOfRange { point, degree } => {
                write!(f, "point {point} out of range for degree {degree}")
            }
            PermError::BadCycleNotation { text } => write!(f, "bad cycle notation: {text}"),
            PermError::TooManyElements { order, cap } => {
                write!(f, "group has {order} elements, enumeration cap is {cap}")
            }
        }
    }
}

impl std::error::Error for PermError {}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            img: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(img: Vec<u32>) -> Result<Self, PermError> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            if (x as usize) >= n || seen[x as usize] {
                return Err(PermError::NotABijection { degree: n });
            }
            seen[x as usize] = true;
        }
        Ok(Perm { img })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.img[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            img: self.img.iter().map(|&x| other.img[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u32;
        }
        Perm { img }
    }

    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self, PermError> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for w in 0..cycle.len() {
                let a = cycle[w];
                let b = cycle[(w + 1) % cycle.len()];
                if a as usize >= degree {
                    return Err(PermError::PointOutOfRange {
                        point: a,
                        degree,
                    });
                }
                if moved[a as usize] {
                    return Err(PermError::BadCycleNotation {
                        text: format!("point {a} appears twice"),
                    });
                }
                moved[a as usize] = true;
                img[a as usize] = b;
            }
        }
        Perm::from_images(img)
    }

    /// Parses disjoint cycle notation such as `"(0 3)(1 4)(2 5)"`.
    /// `"()"` and the empty string denote the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, PermError> {
        let bad = |t: &str| PermError::BadCycleNotation {
            text: t.to_string(),
        };
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad(text));
            }
            let close = rest.find(')').ok_or_else(|| bad(text))?;
            let inner = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                cycle.push(tok.parse::<u32>().map_err(|_| bad(text))?);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Perm {
    /// Disjoint cycle notation; fixed points are omitted and the identity
    /// renders as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.img.len()];
        let mut wrote = false;
        for start in 0..self.img.len() {
            if seen[start] || self.img[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.img[x] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn first_moved(p: &Perm) -> Option<u32> {
    p.images()
        .iter()
        .enumerate()
        .find(|&(i, &x)| i as u32 != x)
        .map(|(i, _)| i as u32)
}

/// One level of a stabilizer chain: the orbit of `point` under the level's
/// generators, with a transversal element per orbit point.
#[derive(Clone, Debug)]
struct Level {
    point: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    transversal: FxHashMap<u32, Perm>,
}

impl Level {
    fn new(degree: usize, point: u32) -> Self {
        let mut transversal = FxHashMap::default();
        transversal.insert(point, Perm::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal.clear();
        self.orbit.push(self.point);
        self.transversal.insert(self.point, Perm::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            let t_p = self.transversal[&p].clone();
            for g in &self.gens {
                let q = g.apply(p);
                if !self.transversal.contains_key(&q) {
                    self.transversal.insert(q, t_p.then(g));
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Finite permutation group on `0..degree` with a stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<Self, PermError> {
        Self::with_base(degree, gens, &[])
    }

    /// Builds the chain with the given points forced to the front of the base,
    /// so that generators at level `base.len()` generate the pointwise
    /// stabilizer of `base`. `levels` keeps one entry per forced point even
    /// when its orbit stays trivial.
    pub fn with_base(degree: usize, gens: Vec<Perm>, base: &[u32]) -> Result<Self, PermError> {
        for p in base {
            if *p as usize >= degree {
                return Err(PermError::PointOutOfRange {
                    point: *p,
                    degree,
                });
            }
        }
        let mut group = PermGroup {
            degree,
            gens: Vec::new(),
            levels: base.iter().map(|&p| Level::new(degree, p)).collect(),
        };
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
            group.extend(g);
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Adds `g` to the group; returns false when it was already a member.
    pub fn extend(&mut self, g: Perm) -> bool {
        assert_eq!(g.degree(), self.degree);
        if self.contains(&g) {
            return false;
        }
        self.gens.push(g.clone());
        if self.levels.is_empty() {
            let point = first_moved(&g).expect("a non-member of the trivial group moves a point");
            self.levels.push(Level::new(self.degree, point));
        }
        self.levels[0].gens.push(g);
        self.close(0);
        true
    }

    /// Re-closes the chain from level `from` on: recomputes each orbit, then
    /// sifts the level's Schreier generators; a non-identity residue becomes a
    /// generator of every level from the one below down to where it sticks,
    /// appending a base point when it passes the whole chain. Insertions only
    /// ever target deeper levels and levels are processed in increasing
    /// order, so each level sees its final generating set when its turn
    /// comes and one pass settles the chain.
    fn close(&mut self, from: usize) {
        let mut i = from;
        while i < self.levels.len() {
            self.levels[i].recompute_orbit(self.degree);
            let orbit = self.levels[i].orbit.clone();
            let gens = self.levels[i].gens.clone();
            for &p in &orbit {
                let t_p = self.levels[i].transversal[&p].clone();
                for s in &gens {
                    let q = s.apply(p);
                    let t_q_inv = self.levels[i].transversal[&q].inverse();
                    let schreier = t_p.then(s).then(&t_q_inv);
                    let (residue, stuck) = self.strip(&schreier, i + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if stuck == self.levels.len() {
                        let point =
                            first_moved(&residue).expect("non-identity residue moves a point");
                        self.levels.push(Level::new(self.degree, point));
                    }
                    for level in &mut self.levels[i + 1..=stuck] {
                        level.gens.push(residue.clone());
                    }
                }
            }
            i += 1;
        }
    }

    /// Strips `g` through the chain starting at `from`; returns the residue
    /// and the level where stripping stopped.
    fn strip(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let target = h.apply(level.point);
            match level.transversal.get(&target) {
                None => return (h, i),
                Some(t) => h = h.then(&t.inverse()),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.strip(g, 0);
        residue.is_identity()
    }

    /// Orbit of a point under the group, ascending.
    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut queue = vec![x];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    queue.push(q);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    pub fn is_transitive_on(&self, points: &[u32]) -> bool {
        match points.first() {
            None => true,
            Some(&p) => {
                let orbit = self.orbit(p);
                points.iter().all(|q| orbit.binary_search(q).is_ok())
            }
        }
    }

    /// Pointwise stabilizer of the given points.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let rebuilt = PermGroup::with_base(self.degree, self.gens.clone(), points)
            .expect("generators already validated");
        let stab_gens: Vec<Perm> = rebuilt
            .levels
            .get(points.len())
            .map(|l| l.gens.clone())
            .unwrap_or_default();
        PermGroup::from_generators(self.degree, stab_gens).expect("degree preserved")
    }

    pub fn stabilizer(&self, point: u32) -> PermGroup {
        self.pointwise_stabilizer(&[point])
    }

    /// All elements, deterministic order, failing once the order exceeds `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>, PermError> {
        let order = self.order();
        if order > cap as u128 {
            return Err(PermError::TooManyElements { order, cap });
        }
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut reps: Vec<&u32> = level.transversal.keys().collect();
            reps.sort_unstable();
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for p in reps {
                let t = &level.transversal[p];
                for h in &out {
                    next.push(h.then(t));
                }
            }
            out = next;
        }
        debug_assert_eq!(out.len() as u128, order);
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        let swap = Perm::parse_cycles(n, "(0 1)").unwrap();
        let cycle: Vec<u32> = (1..n as u32).chain([0]).collect();
        let rot = Perm::from_images(cycle).unwrap();
        PermGroup::from_generators(n, vec![swap, rot]).unwrap()
    }

    #[test]
    fn perm_basics() {
        let p = Perm::parse_cycles(5, "(0 1 2)(3 4)").unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(4), 3);
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(Perm::identity(4).to_string(), "()");
        let q = Perm::parse_cycles(3, "(0 1)").unwrap();
        let r = Perm::parse_cycles(3, "(1 2)").unwrap();
        // apply q first: 0 -> 1 -> 2
        assert_eq!(q.then(&r).apply(0), 2);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Perm::parse_cycles(3, "(0 1").is_err());
        assert!(Perm::parse_cycles(3, "(0 0)").is_err());
        assert!(Perm::parse_cycles(3, "(0 7)").is_err());
        assert!(Perm::parse_cycles(4, "").unwrap().is_identity());
        assert!(Perm::parse_cycles(4, "()").unwrap().is_identity());
    }

    #[test]
    fn symmetric_group_order() {
        for n in 2..8 {
            let expect: u128 = (1..=n as u128).product();
            assert_eq!(sym(n).order(), expect, "S_{n}");
        }
    }

    #[test]
    fn dihedral_group() {
        let rot = Perm::parse_cycles(6, "(0 1 2 3 4 5)").unwrap();
        let refl = Perm::parse_cycles(6, "(1 5)(2 4)").unwrap();
        let d6 = PermGroup::from_generators(6, vec![rot.clone(), refl]).unwrap();
        assert_eq!(d6.order(), 12);
        assert_eq!(d6.orbit(0), vec![0, 1, 2, 3, 4, 5]);
        assert!(d6.contains(&rot.then(&rot)));
        assert!(!d6.contains(&Perm::parse_cycles(6, "(0 1)").unwrap()));
        let stab = d6.stabilizer(0);
        assert_eq!(stab.order(), 2);
    }

    #[test]
    fn membership_and_elements() {
        let s4 = sym(4);
        let elems = s4.elements(100).unwrap();
        assert_eq!(elems.len(), 24);
        for e in &elems {
            assert!(s4.contains(e));
        }
        let dedup: std::collections::HashSet<_> = elems.iter().collect();
        assert_eq!(dedup.len(), 24);
        assert!(s4.elements(10).is_err());
    }

    #[test]
    fn pointwise_stabilizer_chain() {
        let s4 = sym(4);
        assert_eq!(s4.stabilizer(0).order(), 6);
        let fix01 = s4.pointwise_stabilizer(&[0, 1]);
        assert_eq!(fix01.order(), 2);
        for g in fix01.generators() {
            assert_eq!(g.apply(0), 0);
            assert_eq!(g.apply(1), 1);
        }
        let fix_all = s4.pointwise_stabilizer(&[0, 1, 2, 3]);
        assert_eq!(fix_all.order(), 1);
    }

    #[test]
    fn extend_reports_growth() {
        let mut g = PermGroup::trivial(4);
        assert_eq!(g.order(), 1);
        assert!(g.extend(Perm::parse_cycles(4, "(0 1)").unwrap()));
        assert!(!g.extend(Perm::parse_cycles(4, "(0 1)").unwrap()));
        assert!(g.extend(Perm::parse_cycles(4, "(2 3)").unwrap()));
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn brute_force_closure_matches_chain_order() {
        // Independent check of the chain: close a generating set by products.
        let gens = vec![
            Perm::parse_cycles(5, "(0 1 2 3 4)").unwrap(),
            Perm::parse_cycles(5, "(0 1)").unwrap(),
        ];
        let mut elems: std::collections::HashSet<Perm> =
            [Perm::identity(5)].into_iter().collect();
        loop {
            let mut fresh = Vec::new();
            for e in &elems {
                for g in &gens {
                    let p = e.then(g);
                    if !elems.contains(&p) {
                        fresh.push(p);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            elems.extend(fresh);
        }
        let group = PermGroup::from_generators(5, gens).unwrap();
        assert_eq!(group.order(), elems.len() as u128);
        assert_eq!(group.elements(1000).unwrap().len(), elems.len());
    }
}
