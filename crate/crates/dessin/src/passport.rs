//! Passports of plane bipartite trees: white/black degree multisets,
//! prime-power splits, and subset-sum decomposability.
//!
//! The text grammar (shared with the CLI) is `w1,w2,.../b1,b2,...` where each
//! term is `d` or `d^count`, e.g. `15,3,2,1/4,1^17`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PassportError {
    #[error("cannot parse passport `{0}`")]
    Grammar(String),
    #[error("degrees must be >= 1")]
    ZeroDegree,
    #[error("not a valid bipartite tree passport: white sum {0} != black sum {1}")]
    SumMismatch(u64, u64),
    #[error("not a valid bipartite tree passport: n + m = {0} but N + 1 = {1}")]
    TreeCondition(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} does not divide the edge count {1}")]
    DoesNotDivide(u32, u64),
    #[error("criterion stated for s=1 only (got s={0})")]
    CriterionNeedsSquarefreePrime(u32),
}

/// Vertex color of the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::White => write!(f, "w"),
            Color::Black => write!(f, "b"),
        }
    }
}

/// The passport of a plane bipartite tree: the multisets of white and black
/// vertex degrees. Stored sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Passport {
    white: Vec<u32>,
    black: Vec<u32>,
}

/// `N = p^s * r` with `gcd(p, r) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplit {
    pub p: u32,
    pub s: u32,
    pub r: u64,
}

/// Evidence that a color class is decomposable: a proper nonempty subset of
/// its degrees whose sum is divisible by p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionWitness {
    pub color: Color,
    /// Witness degrees sorted ascending; smallest cardinality first, then
    /// lexicographically smallest.
    pub degrees: Vec<u32>,
    pub subset_sum: u64,
}

impl Passport {
    pub fn new(mut white: Vec<u32>, mut black: Vec<u32>) -> Result<Passport, PassportError> {
        if white.contains(&0) || black.contains(&0) {
            return Err(PassportError::ZeroDegree);
        }
        if white.is_empty() || black.is_empty() {
            return Err(PassportError::Grammar(String::new()));
        }
        let ws: u64 = white.iter().map(|&d| d as u64).sum();
        let bs: u64 = black.iter().map(|&d| d as u64).sum();
        if ws != bs {
            return Err(PassportError::SumMismatch(ws, bs));
        }
        let nm = (white.len() + black.len()) as u64;
        if nm != ws + 1 {
            return Err(PassportError::TreeCondition(nm, ws + 1));
        }
        white.sort_unstable_by(|a, b| b.cmp(a));
        black.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Passport { white, black })
    }

    /// Parse the `w1,w2,.../b1,b2,...` grammar with `d^count` repetition.
    pub fn parse(text: &str) -> Result<Passport, PassportError> {
        let bad = || PassportError::Grammar(text.to_string());
        let (w, b) = text.trim().split_once('/').ok_or_else(bad)?;
        let side = |s: &str| -> Result<Vec<u32>, PassportError> {
            let mut out = vec![];
            for term in s.split(',') {
                let term = term.trim();
                let (deg_s, count_s) = match term.split_once('^') {
                    None => (term, "1"),
                    Some((d, c)) => (d.trim(), c.trim()),
                };
                let deg: u32 = deg_s.parse().map_err(|_| bad())?;
                let count: u32 = count_s.parse().map_err(|_| bad())?;
                if count == 0 {
                    return Err(bad());
                }
                if deg == 0 {
                    return Err(PassportError::ZeroDegree);
                }
                for _ in 0..count {
                    out.push(deg);
                }
            }
            Ok(out)
        };
        Passport::new(side(w)?, side(b)?)
    }

    pub fn white(&self) -> &[u32] {
        &self.white
    }

    pub fn black(&self) -> &[u32] {
        &self.black
    }

    pub fn side(&self, color: Color) -> &[u32] {
        match color {
            Color::White => &self.white,
            Color::Black => &self.black,
        }
    }

    /// Edge count N.
    pub fn edges(&self) -> u64 {
        self.white.iter().map(|&d| d as u64).sum()
    }

    /// Number of white vertices.
    pub fn n_white(&self) -> usize {
        self.white.len()
    }

    /// Number of black vertices.
    pub fn n_black(&self) -> usize {
        self.black.len()
    }

    /// `N = p^s r`, `gcd(p, r) = 1`; requires p prime dividing N.
    pub fn prime_power_split(&self, p: u32) -> Result<PrimeSplit, PassportError> {
        if !is_prime(p) {
            return Err(PassportError::NotPrime(p));
        }
        let n = self.edges();
        if !n.is_multiple_of(p as u64) {
            return Err(PassportError::DoesNotDivide(p, n));
        }
        let mut s = 0u32;
        let mut r = n;
        while r.is_multiple_of(p as u64) {
            r /= p as u64;
            s += 1;
        }
        Ok(PrimeSplit { p, s, r })
    }

    /// Is some proper nonempty subset of this color's degrees divisible by p?
    /// The witness, when present, has the smallest cardinality and then the
    /// lexicographically smallest sorted degree tuple.
    pub fn is_decomposable(
        &self,
        p: u32,
        color: Color,
    ) -> Result<(bool, Option<DecompositionWitness>), PassportError> {
        if !is_prime(p) {
            return Err(PassportError::NotPrime(p));
        }
        let n = self.edges();
        if !n.is_multiple_of(p as u64) {
            return Err(PassportError::DoesNotDivide(p, n));
        }
        match smallest_zero_subset(self.side(color), p) {
            None => Ok((false, None)),
            Some(degrees) => {
                let subset_sum = degrees.iter().map(|&d| d as u64).sum();
                Ok((
                    true,
                    Some(DecompositionWitness {
                        color,
                        degrees,
                        subset_sum,
                    }),
                ))
            }
        }
    }

    /// Sufficient white-indecomposability criterion for s = 1: the maximal
    /// white degree d satisfies d > p(r-1). Any subset containing d then has
    /// sum strictly between p(r-1) and N = pr, and any subset avoiding d has
    /// sum below p.
    pub fn max_degree_criterion(&self, p: u32) -> Result<bool, PassportError> {
        let split = self.prime_power_split(p)?;
        if split.s != 1 {
            return Err(PassportError::CriterionNeedsSquarefreePrime(split.s));
        }
        let d = *self.white.first().unwrap() as u64;
        Ok(d > p as u64 * (split.r - 1))
    }

    /// Human rendering with angle brackets.
    pub fn pretty(&self) -> String {
        format!("<{} | {}>", run_length(&self.white), run_length(&self.black))
    }
}

impl fmt::Display for Passport {
    /// The parse grammar: `15,3,2,1/4,1^17`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", run_length(&self.white), run_length(&self.black))
    }
}

fn run_length(degrees: &[u32]) -> String {
    let mut parts: Vec<String> = vec![];
    let mut i = 0;
    while i < degrees.len() {
        let d = degrees[i];
        let mut j = i;
        while j < degrees.len() && degrees[j] == d {
            j += 1;
        }
        let count = j - i;
        if count == 1 {
            parts.push(format!("{}", d));
        } else {
            parts.push(format!("{}^{}", d, count));
        }
        i = j;
    }
    parts.join(",")
}

/// Exact subset-sum decision with a witness (any subset, improper allowed).
pub fn subset_sum_realizable(partition: &[u32], y: u64) -> (bool, Option<Vec<u32>>) {
    if y == 0 {
        return (true, Some(vec![]));
    }
    let total: u64 = partition.iter().map(|&d| d as u64).sum();
    if y > total {
        return (false, None);
    }
    let mut items: Vec<u32> = partition.to_vec();
    items.sort_unstable();
    // parent[sum] = (item index, previous sum)
    let mut parent: Vec<Option<(usize, u64)>> = vec![None; (total + 1) as usize];
    let mut reachable = vec![false; (total + 1) as usize];
    reachable[0] = true;
    for (idx, &d) in items.iter().enumerate() {
        for s in (0..=(total - d as u64)).rev() {
            if reachable[s as usize] && !reachable[(s + d as u64) as usize] {
                reachable[(s + d as u64) as usize] = true;
                parent[(s + d as u64) as usize] = Some((idx, s));
            }
        }
        if reachable[y as usize] {
            break;
        }
    }
    if !reachable[y as usize] {
        return (false, None);
    }
    let mut subset = vec![];
    let mut cur = y;
    while cur != 0 {
        let (idx, prev) = parent[cur as usize].expect("reachable sums have parents");
        subset.push(items[idx]);
        cur = prev;
    }
    subset.sort_unstable();
    (true, Some(subset))
}

/// Smallest (by cardinality, then lexicographically on the sorted tuple)
/// proper nonempty subset of `degrees` with sum divisible by p, if any.
/// Dynamic programming over residues with exact-cardinality reachability.
fn smallest_zero_subset(degrees: &[u32], p: u32) -> Option<Vec<u32>> {
    let n = degrees.len();
    if n <= 1 {
        return None;
    }
    let p = p as usize;
    let words = p.div_ceil(64);
    let mut items: Vec<u32> = degrees.to_vec();
    items.sort_unstable();
    let residues: Vec<usize> = items.iter().map(|&d| d as usize % p).collect();

    // feas[i][j]: residues attainable using exactly j items from items[i..].
    let mut feas = vec![vec![vec![0u64; words]; n]; n + 1];
    let set = |bs: &mut [u64], r: usize| bs[r / 64] |= 1u64 << (r % 64);
    let get = |bs: &[u64], r: usize| bs[r / 64] >> (r % 64) & 1 == 1;
    for i in (0..n).rev() {
        for j in 1..n {
            // skip item i
            if i + 1 < n {
                let from_next = feas[i + 1][j].clone();
                feas[i][j] = from_next;
            }
            // take item i
            if j == 1 {
                let r = residues[i];
                set(&mut feas[i][j], r);
            } else if i + 1 < n {
                let src = feas[i + 1][j - 1].clone();
                for r in 0..p {
                    if get(&src, r) {
                        set(&mut feas[i][j], (r + residues[i]) % p);
                    }
                }
            }
        }
    }

    let max_card = n - 1; // proper subset
    let card = (1..=max_card).find(|&c| get(&feas[0][c], 0))?;

    // Greedy reconstruction of the lexicographically smallest tuple.
    let mut subset = Vec::with_capacity(card);
    let mut need = 0usize; // target residue for the remaining picks
    let mut start = 0usize;
    for remaining in (1..=card).rev() {
        let mut chosen = None;
        for i in start..n {
            // After taking item i we need residue (need - residues[i]) from
            // exactly remaining-1 items of items[i+1..].
            let after = (need + p - residues[i]) % p;
            let ok = if remaining == 1 {
                after == 0
            } else if i + 1 < n {
                get(&feas[i + 1][remaining - 1], after)
            } else {
                false
            };
            if ok {
                chosen = Some(i);
                break;
            }
        }
        let i = chosen.expect("feasibility table admits reconstruction");
        subset.push(items[i]);
        need = (need + p - residues[i]) % p;
        start = i + 1;
    }
    debug_assert_eq!(subset.len(), card);
    Some(subset)
}

/// Deterministic primality test for u32 (trial division).
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_paper_passport() {
        let p = Passport::parse("15,3,2,1/4,1^17").unwrap();
        assert_eq!(p.white(), &[15, 3, 2, 1]);
        assert_eq!(p.black().len(), 18);
        assert_eq!(p.black()[0], 4);
        assert_eq!(p.edges(), 21);
        assert_eq!(p.to_string(), "15,3,2,1/4,1^17");
    }

    #[test]
    fn star_and_invalid() {
        let star = Passport::parse("2/1,1").unwrap();
        assert_eq!(star.edges(), 2);
        // n + m = 4 but N + 1 = 5
        assert!(matches!(
            Passport::parse("2,2/3,1"),
            Err(PassportError::TreeCondition(4, 5))
        ));
        assert!(Passport::parse("0,2/1,1").is_err());
        assert!(Passport::parse("3,1/2,2,1").is_err());
        assert!(Passport::parse("junk").is_err());
        assert!(Passport::parse("1,1/2^0").is_err());
    }

    #[test]
    fn prime_power_splits() {
        let p21 = Passport::parse("15,3,2,1/4,1^17").unwrap();
        assert_eq!(
            p21.prime_power_split(7).unwrap(),
            PrimeSplit { p: 7, s: 1, r: 3 }
        );
        let p4 = Passport::parse("3,1/2,1,1").unwrap();
        assert_eq!(
            p4.prime_power_split(2).unwrap(),
            PrimeSplit { p: 2, s: 2, r: 1 }
        );
        let p10 = Passport::parse("6,2,1,1/4,1^6").unwrap();
        assert_eq!(
            p10.prime_power_split(5).unwrap(),
            PrimeSplit { p: 5, s: 1, r: 2 }
        );
        assert!(p10.prime_power_split(3).is_err());
        assert!(p10.prime_power_split(4).is_err());
        assert!(matches!(
            p10.is_decomposable(3, Color::White),
            Err(PassportError::DoesNotDivide(3, 10))
        ));
    }

    #[test]
    fn white_indecomposable_paper_case() {
        let p = Passport::parse("15,3,2,1/4,1^17").unwrap();
        let (dec, wit) = p.is_decomposable(7, Color::White).unwrap();
        assert!(!dec);
        assert!(wit.is_none());
        // Exhaustive cross-check.
        assert_eq!(brute_force_zero_subset(p.white(), 7), None);
    }

    #[test]
    fn singleton_witness() {
        let p = Passport::parse("84,80,11,1/4,1^172").unwrap();
        let (dec, wit) = p.is_decomposable(11, Color::White).unwrap();
        assert!(dec);
        let w = wit.unwrap();
        assert_eq!(w.degrees, vec![11]);
        assert_eq!(w.subset_sum, 11);
    }

    #[test]
    fn single_vertex_side_has_no_proper_subset() {
        // <N | 1,...,1> white side has n = 1.
        let p = Passport::parse("6/1^6").unwrap();
        let (dec, wit) = p.is_decomposable(2, Color::White).unwrap();
        assert!(!dec);
        assert!(wit.is_none());
    }

    #[test]
    fn witness_is_minimal() {
        // degrees {2, 3, 5, 4, 1}: at p = 5 the singleton {5} beats {2,3} and {1,4}.
        let p = Passport::new(vec![2, 3, 5, 4, 1], vec![5, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        let (dec, wit) = p.is_decomposable(5, Color::White).unwrap();
        assert!(dec);
        assert_eq!(wit.unwrap().degrees, vec![5]);
        let (_, bwit) = p.is_decomposable(5, Color::Black).unwrap();
        assert_eq!(bwit.unwrap().degrees, vec![5]);
    }

    #[test]
    fn witness_lexicographic_tie_break() {
        // p = 3, white degrees {5,4,2,1}: pairs with sum 0 mod 3 are
        // {1,2},{1,5},{2,4},{4,5}; the lexicographically smallest is {1,2}.
        let p = Passport::new(vec![5, 4, 2, 1], vec![3, 2, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        let (dec, wit) = p.is_decomposable(3, Color::White).unwrap();
        assert!(dec);
        assert_eq!(wit.unwrap().degrees, vec![1, 2]);
    }

    #[test]
    fn subset_sums() {
        // {1,1,1,2}: every y in (0,5) is realizable (more parts than x/2).
        let (ok, sub) = subset_sum_realizable(&[1, 1, 1, 2], 4);
        assert!(ok);
        assert_eq!(sub.unwrap().iter().map(|&d| d as u64).sum::<u64>(), 4);
        assert_eq!(subset_sum_realizable(&[3, 3], 2), (false, None));
        // Improper subset allowed here.
        let (ok, sub) = subset_sum_realizable(&[5], 5);
        assert!(ok);
        assert_eq!(sub.unwrap(), vec![5]);
    }

    #[test]
    fn max_degree_criterion_cases() {
        let a = Passport::parse("15,3,2,1/4,1^17").unwrap();
        assert!(a.max_degree_criterion(7).unwrap()); // 15 > 7*2
        let b = Passport::parse("6,2,1,1/4,1^6").unwrap();
        assert!(b.max_degree_criterion(5).unwrap()); // 6 > 5*1
        let c = Passport::parse("84,80,11,1/4,1^172").unwrap();
        assert!(!c.max_degree_criterion(11).unwrap()); // 84 < 11*15
        let d = Passport::parse("3,1/2,1,1").unwrap();
        assert!(matches!(
            d.max_degree_criterion(2),
            Err(PassportError::CriterionNeedsSquarefreePrime(2))
        ));
    }

    /// Exponential oracle used only in tests.
    fn brute_force_zero_subset(degrees: &[u32], p: u32) -> Option<Vec<u32>> {
        let n = degrees.len();
        let mut best: Option<Vec<u32>> = None;
        for mask in 1u32..((1u32 << n) - 1) {
            let subset: Vec<u32> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| degrees[i])
                .collect();
            let sum: u64 = subset.iter().map(|&d| d as u64).sum();
            if sum.is_multiple_of(p as u64) {
                let mut s = subset.clone();
                s.sort_unstable();
                match &best {
                    None => best = Some(s),
                    Some(b) => {
                        if (s.len(), &s) < (b.len(), b) {
                            best = Some(s);
                        }
                    }
                }
            }
        }
        best
    }

    #[test]
    fn dp_matches_brute_force() {
        let cases: Vec<(Vec<u32>, u32)> = vec![
            (vec![1, 2, 3, 4, 5], 3),
            (vec![2, 2, 2, 2], 2),
            (vec![7, 5, 3, 2, 1, 1], 3),
            (vec![9, 9, 9, 1], 7),
            (vec![4, 4, 2, 1, 1], 5),
            (vec![6, 5, 4, 3, 2, 1], 7),
            (vec![10, 8, 6, 4, 2], 5),
        ];
        for (degrees, p) in cases {
            let dp = smallest_zero_subset(&degrees, p);
            let bf = brute_force_zero_subset(&degrees, p);
            assert_eq!(dp, bf, "degrees {:?} p {}", degrees, p);
        }
    }
}
