//! Galois-orbit structure reports: counts, parity, degree bounds, eliminant
//! factorizations and Newton polygons combined into one verdict.
//!
//! Orbit sizes are taken from the factorization of the eliminant (the ground
//! truth at this scale); the feasibility enumeration replays the hand
//! argument from counts, parity and the degree bound as a cross-check. Any
//! disagreement is a first-class mismatch verdict, never suppressed.

use crate::padic::{
    degree_lower_bound, is_pure, newton_polygon, predicted_valuation, val_p_int, PadicError,
};
use crate::passport::{Color, Passport, PassportError, PrimeSplit};
use crate::shabat::{build_center_system, eliminant, EliminantReport, ShabatError};
use crate::trees::{
    black_centered_tree_count, enumerate_trees, is_black_centered, necklace_mirror_fixed,
    TreeError, MAX_ENUM_EDGES,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OrbitError {
    #[error("orbit inference unsound: eliminant degree {got:?} != expected {expected}")]
    DegreeMismatch { got: Option<u64>, expected: u64 },
    #[error("enumeration unavailable for this passport")]
    EnumerationUnavailable,
    #[error(transparent)]
    Passport(#[from] PassportError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Shabat(#[from] ShabatError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompVerdict {
    pub decomposable: bool,
    /// Witness degrees (ascending) when decomposable.
    pub witness: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentInfo {
    /// Root valuation as `h/d` (or `+inf` for zero roots).
    pub valuation: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EliminantInfo {
    /// White degree of the target coordinate.
    pub target_degree: u32,
    /// Shared polynomial text format, constant term first.
    pub poly: String,
    pub degree: u64,
    pub expected_degree: Option<u64>,
    /// Degrees of the irreducible factors, descending.
    pub factor_degrees: Vec<u64>,
    pub polygon: Vec<SegmentInfo>,
    /// Pure at the predicted valuation s/(n-1)? Only set when the prediction
    /// applies (white-indecomposable).
    pub pure_at_predicted: Option<bool>,
    /// v_p of the constant term of the primitive eliminant.
    pub constant_term_valuation: i64,
    /// Factors removed by the spurious filter, with reasons.
    pub removed: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Exactly one feasible partition and it matches the factorization.
    Definitive,
    /// Factorization lies among the feasible partitions.
    Consistent,
    /// A cross-check failed; details in `notes`.
    Mismatch,
    /// No eliminant available: counts and decomposability only.
    CountsOnly,
}

/// Everything the pipeline established about one (passport, prime) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub passport: String,
    pub prime: u32,
    pub split: PrimeSplit,
    pub white: DecompVerdict,
    pub black: DecompVerdict,
    /// d > p(r-1) sufficient criterion; only stated for s = 1.
    pub max_degree_criterion: Option<bool>,
    pub tree_count: Option<u64>,
    pub mirror_fixed: Option<u64>,
    /// Parity argument applies only when conjugation acts freely.
    pub parity_applicable: Option<bool>,
    /// s/(n-1) as a string, when white-indecomposable.
    pub predicted_valuation: Option<String>,
    pub degree_lower_bound: Option<u64>,
    pub eliminant: Option<EliminantInfo>,
    /// Partitions of the tree count into admissible orbit sizes, parts
    /// ascending, list in lexicographic order.
    pub feasible_partitions: Option<Vec<Vec<u64>>>,
    /// Orbit sizes from the eliminant factorization, descending.
    pub orbit_sizes: Option<Vec<u64>>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Orbit sizes read off an eliminant: the degrees of its irreducible
/// factors. Refuses when the degree does not match the expected tree count
/// times target multiplicity.
pub fn orbit_sizes_from_eliminant(report: &EliminantReport) -> Result<Vec<u64>, OrbitError> {
    match (report.degree_matches, report.expected_degree) {
        (Some(true), _) => {}
        (_, Some(expected)) => {
            return Err(OrbitError::DegreeMismatch {
                got: report.poly.degree().map(|d| d as u64),
                expected,
            })
        }
        _ => {}
    }
    let mut sizes: Vec<u64> = report
        .factors
        .iter()
        .map(|f| f.degree().unwrap_or(0) as u64)
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sizes)
}

/// All partitions of `count` into parts >= `min_size` (even parts only when
/// required), parts ascending, partitions in lexicographic order.
pub fn feasible_orbit_partitions(count: u64, min_size: u64, require_even: bool) -> Vec<Vec<u64>> {
    let mut out = vec![];
    let mut acc = vec![];
    fn rec(
        remaining: u64,
        min_part: u64,
        require_even: bool,
        acc: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        let mut part = min_part;
        if require_even && part % 2 == 1 {
            part += 1;
        }
        while part <= remaining {
            acc.push(part);
            rec(remaining - part, part, require_even, acc, out);
            acc.pop();
            part += if require_even { 2 } else { 1 };
        }
    }
    rec(count, min_size.max(1), require_even, &mut acc, &mut out);
    out
}

/// Count of mirror-symmetric trees and whether the parity argument applies
/// (it needs conjugation to act freely, i.e. zero fixed trees).
pub fn mirror_parity(passport: &Passport) -> Result<(u64, bool), OrbitError> {
    let fixed = if passport.edges() <= MAX_ENUM_EDGES {
        enumerate_trees(passport)?
            .iter()
            .filter(|t| t.is_mirror_symmetric())
            .count() as u64
    } else if is_black_centered(passport) {
        necklace_mirror_fixed(passport.white())?
    } else {
        return Err(OrbitError::EnumerationUnavailable);
    };
    Ok((fixed, fixed == 0))
}

/// Run the full pipeline: split, decomposability, criterion, counts, system,
/// eliminant, polygon, factorization, feasibility cross-check, verdict.
pub fn analyze(
    passport: &Passport,
    p: u32,
    target_degree: Option<u32>,
) -> Result<OrbitReport, OrbitError> {
    let split = passport.prime_power_split(p)?;
    let mut notes: Vec<String> = vec![];

    let (wdec, wwit) = passport.is_decomposable(p, Color::White)?;
    let (bdec, bwit) = passport.is_decomposable(p, Color::Black)?;
    let white = DecompVerdict {
        decomposable: wdec,
        witness: wwit.map(|w| w.degrees),
    };
    let black = DecompVerdict {
        decomposable: bdec,
        witness: bwit.map(|w| w.degrees),
    };
    if split.r == 1 {
        notes.push(format!(
            "r = 1 (N = {}^{}): both sides are indecomposable for trivial reasons",
            split.p, split.s
        ));
    }
    let max_degree_criterion = if split.s == 1 {
        Some(passport.max_degree_criterion(p)?)
    } else {
        None
    };

    let family = is_black_centered(passport);
    let tree_count = if family {
        black_centered_tree_count(passport)
    } else if passport.edges() <= MAX_ENUM_EDGES {
        Some(enumerate_trees(passport)?.len() as u64)
    } else {
        notes.push("tree count unavailable: outside the black-centered family and above the enumeration cap".into());
        None
    };
    let mirror_fixed = match mirror_parity(passport) {
        Ok((fixed, _)) => Some(fixed),
        Err(OrbitError::EnumerationUnavailable) | Err(OrbitError::Tree(_)) => {
            notes.push("mirror statistics unavailable".into());
            None
        }
        Err(e) => return Err(e),
    };
    let parity_applicable = mirror_fixed.map(|f| f == 0);

    let (predicted, bound) = if wdec {
        notes.push("white-decomposable: valuation prediction and degree bound not applicable".into());
        (None, None)
    } else if passport.n_white() < 2 {
        (None, None)
    } else {
        (
            Some(predicted_valuation(passport, p)?),
            Some(degree_lower_bound(passport, p)?),
        )
    };

    // Eliminant stage (exact path only).
    let mut eliminant_info: Option<EliminantInfo> = None;
    let mut orbit_sizes: Option<Vec<u64>> = None;
    let mut mismatch = false;
    if family && passport.n_white() >= 2 {
        match build_center_system(passport, None) {
            Err(e) => notes.push(format!("system unavailable: {}", e)),
            Ok(sys) => {
                let target = match target_degree {
                    Some(d) => sys.unknown_with_degree(d),
                    None => sys.default_target(),
                };
                match target {
                    None => notes.push(
                        "no eliminant target: requested degree absent or no degree is unique among non-origin whites"
                            .into(),
                    ),
                    Some(t) => match eliminant(&sys, t) {
                        Err(ShabatError::EliminationTooLarge(k)) => {
                            notes.push(format!(
                                "eliminant skipped: {} unknowns exceeds the exact cap",
                                k
                            ));
                        }
                        Err(e) => return Err(e.into()),
                        Ok(rep) => {
                            let polygon = newton_polygon(&rep.poly, p)?;
                            let pure_at_predicted = predicted
                                .as_ref()
                                .map(|v| is_pure(&polygon, v));
                            if pure_at_predicted == Some(false) {
                                mismatch = true;
                                notes.push("polygon is not pure at the predicted valuation".into());
                            }
                            let info = EliminantInfo {
                                target_degree: match rep.target {
                                    crate::shabat::Target::Coordinate(u) => u.degree,
                                    crate::shabat::Target::Form(_) => 0,
                                },
                                poly: rep.poly.to_string(),
                                degree: rep.poly.degree().unwrap_or(0) as u64,
                                expected_degree: rep.expected_degree,
                                factor_degrees: rep
                                    .factors
                                    .iter()
                                    .map(|f| f.degree().unwrap_or(0) as u64)
                                    .rev()
                                    .collect(),
                                polygon: polygon
                                    .segments
                                    .iter()
                                    .map(|s| SegmentInfo {
                                        valuation: s.valuation.to_string(),
                                        count: s.count,
                                    })
                                    .collect(),
                                pure_at_predicted,
                                constant_term_valuation: val_p_int(&rep.poly.coeff(0), p),
                                removed: rep
                                    .removed
                                    .iter()
                                    .map(|r| (r.poly.to_string(), r.reason.clone()))
                                    .collect(),
                            };
                            eliminant_info = Some(info);
                            match orbit_sizes_from_eliminant(&rep) {
                                Ok(sizes) => orbit_sizes = Some(sizes),
                                Err(OrbitError::DegreeMismatch { got, expected }) => {
                                    mismatch = true;
                                    notes.push(format!(
                                        "eliminant degree {:?} != expected {}: orbit inference refused",
                                        got, expected
                                    ));
                                }
                                Err(e) => return Err(e),
                            }
                            // Purity forces the denominator of the slope to
                            // divide every factor degree.
                            if let (Some(true), Some(v)) = (pure_at_predicted, predicted.as_ref())
                            {
                                let denom: u64 = v
                                    .denom()
                                    .to_string()
                                    .parse()
                                    .expect("small denominator");
                                for f in &rep.factors {
                                    let d = f.degree().unwrap_or(0) as u64;
                                    if !d.is_multiple_of(denom) {
                                        mismatch = true;
                                        notes.push(format!(
                                            "factor degree {} not divisible by slope denominator {}",
                                            d, denom
                                        ));
                                    }
                                }
                            }
                        }
                    },
                }
            }
        }
    } else if !family {
        notes.push("eliminants cover the black-centered family only".into());
    }

    let feasible = tree_count.map(|count| {
        feasible_orbit_partitions(
            count,
            bound.unwrap_or(1),
            parity_applicable == Some(true),
        )
    });

    // Cross-checks and verdict.
    let verdict = match (&orbit_sizes, tree_count) {
        (Some(sizes), Some(count)) => {
            let total: u64 = sizes.iter().sum();
            if total != count {
                mismatch = true;
                notes.push(format!(
                    "orbit sizes sum to {} but there are {} trees",
                    total, count
                ));
            }
            let mut sorted = sizes.clone();
            sorted.sort_unstable();
            match &feasible {
                Some(parts) => {
                    if mismatch {
                        Verdict::Mismatch
                    } else if !parts.contains(&sorted) {
                        notes.push("factorization is not among the feasible partitions".into());
                        Verdict::Mismatch
                    } else if parts.len() == 1 {
                        Verdict::Definitive
                    } else {
                        Verdict::Consistent
                    }
                }
                None => {
                    if mismatch {
                        Verdict::Mismatch
                    } else {
                        Verdict::Consistent
                    }
                }
            }
        }
        _ => {
            if mismatch {
                Verdict::Mismatch
            } else {
                Verdict::CountsOnly
            }
        }
    };

    Ok(OrbitReport {
        passport: passport.to_string(),
        prime: p,
        split,
        white,
        black,
        max_degree_criterion,
        tree_count,
        mirror_fixed,
        parity_applicable,
        predicted_valuation: predicted.map(|v| v.to_string()),
        degree_lower_bound: bound,
        eliminant: eliminant_info,
        feasible_partitions: feasible,
        orbit_sizes,
        verdict,
        notes,
    })
}

/// Plain-text rendering of a report.
pub fn render_text(report: &OrbitReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!("passport      {}", report.passport));
    push(
        &mut out,
        format!(
            "prime         {} (N = {}^{} * {})",
            report.prime, report.split.p, report.split.s, report.split.r
        ),
    );
    let decomp = |label: &str, v: &DecompVerdict| -> String {
        match (&v.decomposable, &v.witness) {
            (true, Some(w)) => format!(
                "{} decomposable, witness {{{}}}",
                label,
                w.iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            (true, None) => format!("{} decomposable", label),
            (false, _) => format!("{} indecomposable", label),
        }
    };
    push(&mut out, decomp("white        ", &report.white));
    push(&mut out, decomp("black        ", &report.black));
    if let Some(c) = report.max_degree_criterion {
        push(&mut out, format!("d > p(r-1)    {}", c));
    }
    if let Some(t) = report.tree_count {
        push(&mut out, format!("trees         {}", t));
    }
    if let (Some(f), Some(a)) = (report.mirror_fixed, report.parity_applicable) {
        push(
            &mut out,
            format!("mirror-fixed  {} (parity applicable: {})", f, a),
        );
    }
    if let Some(v) = &report.predicted_valuation {
        push(&mut out, format!("predicted v   {}", v));
    }
    if let Some(b) = report.degree_lower_bound {
        push(&mut out, format!("field degree  >= {}", b));
    }
    if let Some(e) = &report.eliminant {
        push(
            &mut out,
            format!("eliminant     target degree {}: {}", e.target_degree, e.poly),
        );
        let segs: Vec<String> = e
            .polygon
            .iter()
            .map(|s| format!("({} x{})", s.valuation, s.count))
            .collect();
        push(&mut out, format!("polygon       {}", segs.join(" ")));
        if let Some(p) = e.pure_at_predicted {
            push(&mut out, format!("pure          {}", p));
        }
        push(
            &mut out,
            format!(
                "factors       degrees {:?} (v_p(a_0) = {})",
                e.factor_degrees, e.constant_term_valuation
            ),
        );
        for (f, why) in &e.removed {
            push(&mut out, format!("removed       {} ({})", f, why));
        }
    }
    if let Some(parts) = &report.feasible_partitions {
        let rendered: Vec<String> = parts
            .iter()
            .map(|p| {
                format!(
                    "{{{}}}",
                    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        push(&mut out, format!("feasible      {}", rendered.join(" ")));
    }
    if let Some(sizes) = &report.orbit_sizes {
        push(&mut out, format!("orbit sizes   {:?}", sizes));
    }
    push(&mut out, format!("verdict       {:?}", report.verdict));
    for n in &report.notes {
        push(&mut out, format!("note          {}", n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_six() {
        assert_eq!(feasible_orbit_partitions(6, 3, true), vec![vec![6]]);
        assert_eq!(feasible_orbit_partitions(3, 3, false), vec![vec![3]]);
        assert_eq!(
            feasible_orbit_partitions(6, 1, true),
            vec![vec![2, 2, 2], vec![2, 4], vec![6]]
        );
        assert_eq!(
            feasible_orbit_partitions(5, 2, false),
            vec![vec![2, 3], vec![5]]
        );
    }

    #[test]
    fn mirror_parity_cases() {
        let a = Passport::parse("6,4,2,1/4,1^9").unwrap();
        assert_eq!(mirror_parity(&a).unwrap(), (0, true));
        let b = Passport::parse("6,2,1,1/4,1^6").unwrap();
        assert_eq!(mirror_parity(&b).unwrap(), (1, false));
        let star = Passport::parse("6/1^6").unwrap();
        assert_eq!(mirror_parity(&star).unwrap(), (1, false));
    }

    #[test]
    fn headline_example_definitive() {
        let p = Passport::parse("15,3,2,1/4,1^17").unwrap();
        let report = analyze(&p, 7, None).unwrap();
        assert!(!report.white.decomposable);
        assert_eq!(report.degree_lower_bound, Some(3));
        assert_eq!(report.tree_count, Some(6));
        assert_eq!(report.mirror_fixed, Some(0));
        assert_eq!(report.predicted_valuation.as_deref(), Some("1/3"));
        let e = report.eliminant.as_ref().unwrap();
        assert_eq!(e.degree, 6);
        assert_eq!(e.factor_degrees, vec![6]);
        assert_eq!(e.pure_at_predicted, Some(true));
        assert_eq!(e.constant_term_valuation, 2);
        assert_eq!(report.feasible_partitions, Some(vec![vec![6]]));
        assert_eq!(report.orbit_sizes, Some(vec![6]));
        assert_eq!(report.verdict, Verdict::Definitive);
    }

    #[test]
    fn example_p5_one_orbit_of_three() {
        let p = Passport::parse("6,2,1,1/4,1^6").unwrap();
        let report = analyze(&p, 5, None).unwrap();
        assert_eq!(report.tree_count, Some(3));
        assert_eq!(report.mirror_fixed, Some(1));
        assert_eq!(report.parity_applicable, Some(false));
        assert_eq!(report.degree_lower_bound, Some(3));
        let e = report.eliminant.as_ref().unwrap();
        assert_eq!(e.target_degree, 2);
        assert_eq!(e.degree, 3);
        assert_eq!(e.factor_degrees, vec![3]);
        assert_eq!(e.pure_at_predicted, Some(true));
        assert_eq!(report.orbit_sizes, Some(vec![3]));
        assert_eq!(report.verdict, Verdict::Definitive);
    }

    #[test]
    fn decomposable_contrast_two_orbits() {
        let p = Passport::parse("84,80,11,1/4,1^172").unwrap();
        let report = analyze(&p, 11, None).unwrap();
        assert!(report.white.decomposable);
        assert_eq!(report.white.witness, Some(vec![11]));
        assert_eq!(report.predicted_valuation, None);
        assert_eq!(report.degree_lower_bound, None);
        assert_eq!(report.tree_count, Some(6));
        assert_eq!(report.mirror_fixed, Some(0));
        assert_eq!(report.orbit_sizes, Some(vec![4, 2]));
        assert_eq!(
            report.feasible_partitions,
            Some(vec![vec![2, 2, 2], vec![2, 4], vec![6]])
        );
        assert_eq!(report.verdict, Verdict::Consistent);
    }

    #[test]
    fn above_cap_counts_only() {
        // p - 2 = 5 trees for p = 7; five unknowns exceeds the exact cap, so
        // the report downgrades to counts.
        let p = Passport::parse("8,2,1,1,1,1/6,1^8").unwrap();
        let report = analyze(&p, 7, None).unwrap();
        assert_eq!(report.tree_count, Some(5));
        assert!(report.eliminant.is_none());
        assert_eq!(report.verdict, Verdict::CountsOnly);
        assert!(report.notes.iter().any(|n| n.contains("exceeds the exact cap")));
    }

    #[test]
    fn prime_edge_count_is_flagged_trivial() {
        // N = 13 = p: both sides are vacuously indecomposable; the report
        // says so rather than claiming the dichotomy.
        let p = Passport::parse("6,4,2,1/4,1^9").unwrap();
        let report = analyze(&p, 13, None).unwrap();
        assert!(!report.white.decomposable);
        assert!(!report.black.decomposable);
        assert!(report
            .notes
            .iter()
            .any(|n| n.contains("indecomposable for trivial reasons")));
        assert_eq!(report.verdict, Verdict::Definitive);
        assert_eq!(report.orbit_sizes, Some(vec![6]));
    }

    #[test]
    fn json_round_trip() {
        let p = Passport::parse("6,2,1,1/4,1^6").unwrap();
        let report = analyze(&p, 5, None).unwrap();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: OrbitReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        // Determinism: a second run serializes byte-identically.
        let report2 = analyze(&p, 5, None).unwrap();
        assert_eq!(serde_json::to_string(&report2).unwrap(), serde_json::to_string(&report).unwrap());
    }
}
