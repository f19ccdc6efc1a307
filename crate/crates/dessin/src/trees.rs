//! Plane (embedded) bipartite trees: rotation systems, canonical codes,
//! enumeration by passport up to orientation-preserving isomorphism, and
//! mirror images.
//!
//! A plane tree is a tree plus, at every vertex, a cyclic
//! (counter-clockwise) order of its neighbors. Two trees are identified when
//! an orientation-preserving isomorphism maps one rotation system to the
//! other; the mirror image reverses every rotation and is in general a
//! different tree.

use crate::passport::{Color, Passport, PassportError};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Edge-count cap for exhaustive enumeration.
pub const MAX_ENUM_EDGES: u64 = 24;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("unsupported size: {0} edges (enumeration is capped at {MAX_ENUM_EDGES})")]
    UnsupportedSize(u64),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("invalid passport: {0}")]
    Passport(#[from] PassportError),
    #[error("necklace statistics need at most {0} internal vertices (got {1})")]
    NecklaceTooLarge(usize, usize),
}

/// A plane bipartite tree. `rotation[v]` lists the neighbors of `v` in
/// counter-clockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTree {
    colors: Vec<Color>,
    rotation: Vec<Vec<usize>>,
}

/// Canonical code: (color, child count) tokens in depth-first order following
/// the rotation, minimal over all directed-edge rootings. Equal codes mean
/// orientation-preserving isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<(Color, u32)>);

impl fmt::Display for CanonicalCode {
    /// Bracketed token list, e.g. `[w2 b1 w0 b0]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.0.iter().map(|(c, k)| format!("{}{}", c, k)).collect();
        write!(f, "[{}]", toks.join(" "))
    }
}

impl PlaneTree {
    pub fn new(colors: Vec<Color>, rotation: Vec<Vec<usize>>) -> Result<PlaneTree, TreeError> {
        let n = colors.len();
        if n != rotation.len() || n < 2 {
            return Err(TreeError::NotATree("vertex data mismatch".into()));
        }
        let mut edge_ends = 0usize;
        for (v, neigh) in rotation.iter().enumerate() {
            if neigh.is_empty() {
                return Err(TreeError::NotATree(format!("isolated vertex {}", v)));
            }
            let mut seen = neigh.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != neigh.len() {
                return Err(TreeError::NotATree(format!(
                    "repeated neighbor at vertex {}",
                    v
                )));
            }
            for &u in neigh {
                if u >= n || u == v {
                    return Err(TreeError::NotATree(format!("bad neighbor at {}", v)));
                }
                if colors[u] == colors[v] {
                    return Err(TreeError::NotATree(format!(
                        "edge {}-{} joins equal colors",
                        v, u
                    )));
                }
                if !rotation[u].contains(&v) {
                    return Err(TreeError::NotATree(format!(
                        "edge {}-{} not symmetric",
                        v, u
                    )));
                }
            }
            edge_ends += neigh.len();
        }
        if edge_ends != 2 * (n - 1) {
            return Err(TreeError::NotATree(format!(
                "{} edge ends for {} vertices",
                edge_ends, n
            )));
        }
        // Connectivity.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &u in &rotation[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if count != n {
            return Err(TreeError::NotATree("disconnected".into()));
        }
        Ok(PlaneTree { colors, rotation })
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edges(&self) -> u64 {
        (self.colors.len() - 1) as u64
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn passport_of(&self) -> Passport {
        let mut white = vec![];
        let mut black = vec![];
        for v in 0..self.vertex_count() {
            match self.colors[v] {
                Color::White => white.push(self.degree(v) as u32),
                Color::Black => black.push(self.degree(v) as u32),
            }
        }
        Passport::new(white, black).expect("a valid tree always has a valid passport")
    }

    /// Code for the rooting at directed edge `root -> first`.
    fn code_from(&self, root: usize, first: usize) -> Vec<(Color, u32)> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let children = self.children_in_order(root, None, first);
        out.push((self.colors[root], children.len() as u32));
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, children)];
        while let Some((v, mut kids)) = stack.pop() {
            if kids.is_empty() {
                continue;
            }
            let child = kids.remove(0);
            stack.push((v, kids));
            let gkids = self.children_in_order(child, Some(v), 0);
            out.push((self.colors[child], gkids.len() as u32));
            stack.push((child, gkids));
        }
        out
    }

    /// Children of `v` in rotation order: for the root, starting at `first`;
    /// otherwise starting just after the parent.
    fn children_in_order(&self, v: usize, parent: Option<usize>, first: usize) -> Vec<usize> {
        let rot = &self.rotation[v];
        let d = rot.len();
        match parent {
            None => {
                let k = rot
                    .iter()
                    .position(|&u| u == first)
                    .expect("first is a neighbor");
                (0..d).map(|i| rot[(k + i) % d]).collect()
            }
            Some(p) => {
                let k = rot
                    .iter()
                    .position(|&u| u == p)
                    .expect("parent is a neighbor");
                (1..d).map(|i| rot[(k + i) % d]).collect()
            }
        }
    }

    /// Minimal code over all directed-edge rootings.
    pub fn canonical_code(&self) -> CanonicalCode {
        let mut best: Option<Vec<(Color, u32)>> = None;
        for v in 0..self.vertex_count() {
            for &u in &self.rotation[v] {
                let code = self.code_from(v, u);
                if best.as_ref().is_none_or(|b| &code < b) {
                    best = Some(code);
                }
            }
        }
        CanonicalCode(best.expect("trees have at least one edge"))
    }

    /// Reverse every rotation (reflection of the plane).
    pub fn mirror(&self) -> PlaneTree {
        PlaneTree {
            colors: self.colors.clone(),
            rotation: self
                .rotation
                .iter()
                .map(|r| r.iter().rev().cloned().collect())
                .collect(),
        }
    }

    pub fn is_mirror_symmetric(&self) -> bool {
        self.canonical_code() == self.mirror().canonical_code()
    }

    /// Apply a vertex relabeling; `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> PlaneTree {
        let n = self.vertex_count();
        let mut colors = vec![Color::White; n];
        let mut rotation = vec![vec![]; n];
        for v in 0..n {
            colors[perm[v]] = self.colors[v];
            rotation[perm[v]] = self.rotation[v].iter().map(|&u| perm[u]).collect();
        }
        PlaneTree { colors, rotation }
    }

    /// Longest path length (in edges) between two vertices.
    pub fn diameter(&self) -> u32 {
        let far = |start: usize| -> (usize, u32) {
            let n = self.vertex_count();
            let mut dist = vec![u32::MAX; n];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            let mut best = (start, 0);
            while let Some(v) = queue.pop_front() {
                if dist[v] > best.1 {
                    best = (v, dist[v]);
                }
                for &u in &self.rotation[v] {
                    if dist[u] == u32::MAX {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
            best
        };
        let (u, _) = far(0);
        far(u).1
    }

    /// One line per vertex: `id color degree : neighbor cycle`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            let cyc: Vec<String> = self.rotation[v].iter().map(|u| u.to_string()).collect();
            out.push_str(&format!(
                "{} {} {} : {}\n",
                v,
                self.colors[v],
                self.degree(v),
                cyc.join(" ")
            ));
        }
        out
    }
}

/// All plane trees with the given passport, one representative per
/// orientation-preserving isomorphism class, in canonical-code order.
pub fn enumerate_trees(passport: &Passport) -> Result<Vec<PlaneTree>, TreeError> {
    let n_edges = passport.edges();
    if n_edges > MAX_ENUM_EDGES {
        return Err(TreeError::UnsupportedSize(n_edges));
    }
    let mut gen = Generator::new(passport);
    gen.search();
    Ok(gen.classes.into_values().collect())
}

/// Number of plane trees for the black-centered family <k_1..k_n | n, 1^..>:
/// the number of necklaces (cyclic sequences) of the white degree multiset.
/// `None` when the passport is not in the family.
pub fn black_centered_tree_count(passport: &Passport) -> Option<u64> {
    if !is_black_centered(passport) {
        return None;
    }
    Some(necklace_count(passport.white()))
}

/// Is this a passport <k_1..k_n | n, 1^(N-n)> with one internal black vertex
/// adjacent to every white vertex?
pub fn is_black_centered(passport: &Passport) -> bool {
    let n = passport.n_white() as u32;
    if n < 2 {
        return false;
    }
    let black = passport.black();
    black[0] == n && black[1..].iter().all(|&d| d == 1)
}

/// Necklaces of a multiset under rotation, by Burnside's lemma.
pub fn necklace_count(multiset: &[u32]) -> u64 {
    let n = multiset.len() as u64;
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &d in multiset {
        *counts.entry(d).or_insert(0) += 1;
    }
    let mut total = 0u64;
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        // Arrangements fixed by a rotation of order d: every multiplicity
        // must split into d equal blocks.
        if counts.values().all(|&c| c % d == 0) {
            let block = n / d;
            let reduced: Vec<u64> = counts.values().map(|&c| c / d).collect();
            total += euler_phi(d) * multinomial(block, &reduced);
        }
    }
    total / n
}

/// Necklaces of the multiset equal to their own reversal, enumerated
/// explicitly; the multiset must be small.
pub fn necklace_mirror_fixed(multiset: &[u32]) -> Result<u64, TreeError> {
    let n = multiset.len();
    if n > 10 {
        return Err(TreeError::NecklaceTooLarge(10, n));
    }
    let mut sorted = multiset.to_vec();
    sorted.sort_unstable();
    let mut fixed = 0u64;
    let mut seen = std::collections::BTreeSet::new();
    permute_distinct(&sorted, &mut vec![], &mut |perm| {
        let canon = min_rotation(perm);
        if seen.insert(canon.clone()) {
            let mut rev: Vec<u32> = perm.to_vec();
            rev.reverse();
            if min_rotation(&rev) == canon {
                fixed += 1;
            }
        }
    });
    Ok(fixed)
}

fn min_rotation(seq: &[u32]) -> Vec<u32> {
    let n = seq.len();
    let mut best: Option<Vec<u32>> = None;
    for k in 0..n {
        let rot: Vec<u32> = (0..n).map(|i| seq[(k + i) % n]).collect();
        if best.as_ref().is_none_or(|b| &rot < b) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

fn permute_distinct(pool: &[u32], acc: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if pool.is_empty() {
        visit(acc);
        return;
    }
    let mut last: Option<u32> = None;
    for i in 0..pool.len() {
        if last == Some(pool[i]) {
            continue;
        }
        last = Some(pool[i]);
        let mut rest = pool.to_vec();
        rest.remove(i);
        acc.push(pool[i]);
        permute_distinct(&rest, acc, visit);
        acc.pop();
    }
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn multinomial(total: u64, parts: &[u64]) -> u64 {
    debug_assert_eq!(total, parts.iter().sum::<u64>());
    let mut result = 1u64;
    let mut used = 0u64;
    for &p in parts {
        for i in 1..=p {
            used += 1;
            result = result * used / i;
        }
    }
    result
}

// ---------------------------------------------------------------------------
// Enumeration: backtracking over rooted plane trees with a slot frontier,
// deduplicated by canonical code.
// ---------------------------------------------------------------------------

struct Generator {
    colors: Vec<Color>,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    /// Stack of vertices awaiting one more child each (a vertex appears once
    /// per unfilled slot).
    frontier: Vec<usize>,
    white_avail: BTreeMap<u32, u32>,
    black_avail: BTreeMap<u32, u32>,
    classes: BTreeMap<CanonicalCode, PlaneTree>,
}

impl Generator {
    fn new(passport: &Passport) -> Generator {
        let mut white_avail = BTreeMap::new();
        for &d in passport.white() {
            *white_avail.entry(d).or_insert(0) += 1;
        }
        let mut black_avail = BTreeMap::new();
        for &d in passport.black() {
            *black_avail.entry(d).or_insert(0) += 1;
        }
        // Root at a white vertex of maximal degree: every tree with this
        // passport contains one, so every class is reached.
        let root_degree = *white_avail.keys().next_back().unwrap();
        take_one(&mut white_avail, root_degree);
        let frontier = vec![0usize; root_degree as usize];
        Generator {
            colors: vec![Color::White],
            children: vec![vec![]],
            parent: vec![None],
            frontier,
            white_avail,
            black_avail,
            classes: BTreeMap::new(),
        }
    }

    fn search(&mut self) {
        match self.frontier.pop() {
            None => {
                // Frontier empty and nothing was popped: emit if every
                // degree was consumed.
                if self.white_avail.is_empty() && self.black_avail.is_empty() {
                    self.emit();
                }
            }
            Some(p) => {
                let color = self.colors[p].other();
                let degrees: Vec<u32> = match color {
                    Color::White => self.white_avail.keys().cloned().collect(),
                    Color::Black => self.black_avail.keys().cloned().collect(),
                };
                for d in degrees {
                    take_one(self.avail_mut(color), d);
                    let v = self.colors.len();
                    self.colors.push(color);
                    self.children.push(vec![]);
                    self.parent.push(Some(p));
                    self.children[p].push(v);
                    for _ in 1..d {
                        self.frontier.push(v);
                    }
                    self.search();
                    for _ in 1..d {
                        self.frontier.pop();
                    }
                    self.children[p].pop();
                    self.colors.pop();
                    self.children.pop();
                    self.parent.pop();
                    put_back(self.avail_mut(color), d);
                }
                self.frontier.push(p);
            }
        }
    }

    fn avail_mut(&mut self, color: Color) -> &mut BTreeMap<u32, u32> {
        match color {
            Color::White => &mut self.white_avail,
            Color::Black => &mut self.black_avail,
        }
    }

    fn emit(&mut self) {
        let n = self.colors.len();
        let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(n);
        for v in 0..n {
            let mut rot = vec![];
            if let Some(p) = self.parent[v] {
                rot.push(p);
            }
            rot.extend(self.children[v].iter().cloned());
            rotation.push(rot);
        }
        let tree = PlaneTree {
            colors: self.colors.clone(),
            rotation,
        };
        let code = tree.canonical_code();
        self.classes.entry(code).or_insert(tree);
    }
}

fn take_one(map: &mut BTreeMap<u32, u32>, key: u32) {
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() -= 1;
            if *e.get() == 0 {
                e.remove();
            }
        }
        Entry::Vacant(_) => panic!("degree not available"),
    }
}

fn put_back(map: &mut BTreeMap<u32, u32>, key: u32) {
    *map.entry(key).or_insert(0) += 1;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate(text: &str) -> Vec<PlaneTree> {
        enumerate_trees(&Passport::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn paper_tree_counts() {
        assert_eq!(enumerate("6,4,2,1/4,1^9").len(), 6);
        assert_eq!(enumerate("3,3,2,1/4,1^5").len(), 3);
        assert_eq!(enumerate("3,3,3,2,1/5,1^7").len(), 4);
        assert_eq!(enumerate("6,2,1,1/4,1^6").len(), 3);
        assert_eq!(enumerate("8,2,1,1,1,1/6,1^8").len(), 5);
    }

    #[test]
    fn path_and_star() {
        // w-b-w path
        let trees = enumerate("1,1/2");
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].diameter(), 2);
        // star
        let star = enumerate("4/1,1,1,1");
        assert_eq!(star.len(), 1);
        assert!(star[0].is_mirror_symmetric());
        // single edge
        assert_eq!(enumerate("1/1").len(), 1);
    }

    #[test]
    fn necklace_cross_checks() {
        // Distinct degrees: (n-1)! necklaces.
        assert_eq!(necklace_count(&[6, 4, 2, 1]), 6);
        assert_eq!(necklace_count(&[3, 3, 2, 1]), 3);
        assert_eq!(necklace_count(&[3, 3, 3, 2, 1]), 4);
        assert_eq!(necklace_count(&[6, 2, 1, 1]), 3);
        assert_eq!(necklace_count(&[8, 2, 1, 1, 1, 1]), 5);
        assert_eq!(necklace_count(&[84, 80, 11, 1]), 6);
        // All equal: a single necklace.
        assert_eq!(necklace_count(&[2, 2, 2, 2]), 1);
    }

    #[test]
    fn enumeration_matches_necklaces_for_family() {
        for text in [
            "6,4,2,1/4,1^9",
            "3,3,2,1/4,1^5",
            "3,3,3,2,1/5,1^7",
            "6,2,1,1/4,1^6",
            "2,1,1/3,1",
            "5,4,3/3,1^9",
        ] {
            let p = Passport::parse(text).unwrap();
            let count = black_centered_tree_count(&p).unwrap();
            assert_eq!(enumerate_trees(&p).unwrap().len() as u64, count, "{}", text);
        }
    }

    #[test]
    fn passports_round_trip() {
        for text in ["6,4,2,1/4,1^9", "3,3,2,1/4,1^5", "2,2,2/2,2,1,1"] {
            let p = Passport::parse(text).unwrap();
            for t in enumerate_trees(&p).unwrap() {
                assert_eq!(t.passport_of(), p);
            }
        }
    }

    #[test]
    fn codes_are_distinct_and_stable_under_relabeling() {
        let trees = enumerate("6,4,2,1/4,1^9");
        let codes: Vec<CanonicalCode> = trees.iter().map(|t| t.canonical_code()).collect();
        for i in 0..codes.len() {
            for j in i + 1..codes.len() {
                assert_ne!(codes[i], codes[j]);
            }
        }
        // Relabel by a fixed permutation (reverse ids) and re-check the code.
        for t in &trees {
            let n = t.vertex_count();
            let perm: Vec<usize> = (0..n).map(|v| n - 1 - v).collect();
            assert_eq!(t.relabel(&perm).canonical_code(), t.canonical_code());
        }
    }

    #[test]
    fn mirror_is_involution_and_acts_freely_on_distinct_degrees() {
        let trees = enumerate("6,4,2,1/4,1^9");
        let mut fixed = 0;
        for t in &trees {
            assert_eq!(
                t.mirror().mirror().canonical_code(),
                t.canonical_code(),
                "mirror must be an involution"
            );
            if t.is_mirror_symmetric() {
                fixed += 1;
            }
        }
        // Reversing a 4-cycle of distinct values never fixes it.
        assert_eq!(fixed, 0);
        // Mirrors land inside the same enumerated set.
        let codes: std::collections::BTreeSet<_> =
            trees.iter().map(|t| t.canonical_code()).collect();
        for t in &trees {
            assert!(codes.contains(&t.mirror().canonical_code()));
        }
    }

    #[test]
    fn exactly_one_symmetric_tree_in_example_family() {
        // <6,2,1,1 | 4,1^6>: center rotation necklaces of {2,1,1} after
        // fixing 6; only (6,1,2,1) is reversal-fixed.
        let trees = enumerate("6,2,1,1/4,1^6");
        let fixed = trees.iter().filter(|t| t.is_mirror_symmetric()).count();
        assert_eq!(fixed, 1);
        assert_eq!(necklace_mirror_fixed(&[6, 2, 1, 1]).unwrap(), 1);
        assert_eq!(necklace_mirror_fixed(&[6, 4, 2, 1]).unwrap(), 0);
        assert_eq!(necklace_mirror_fixed(&[84, 80, 11, 1]).unwrap(), 0);
    }

    #[test]
    fn family_diameter_is_four() {
        for t in enumerate("6,4,2,1/4,1^9") {
            assert_eq!(t.diameter(), 4);
        }
        for t in enumerate("6,2,1,1/4,1^6") {
            assert_eq!(t.diameter(), 4);
        }
    }

    #[test]
    fn serialization_shape() {
        let trees = enumerate("1,1/2");
        let text = trees[0].to_text();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().all(|l| l.contains(':')));
    }

    #[test]
    fn size_cap() {
        let p = Passport::parse("25/1^25").unwrap();
        assert!(matches!(
            enumerate_trees(&p),
            Err(TreeError::UnsupportedSize(25))
        ));
    }

    #[test]
    fn rejects_invalid_trees() {
        // Same-color edge.
        assert!(PlaneTree::new(
            vec![Color::White, Color::White],
            vec![vec![1], vec![0]],
        )
        .is_err());
        // Disconnected pair of edges.
        assert!(PlaneTree::new(
            vec![Color::White, Color::Black, Color::White, Color::Black],
            vec![vec![1], vec![0], vec![3], vec![2]],
        )
        .is_err());
    }
}
