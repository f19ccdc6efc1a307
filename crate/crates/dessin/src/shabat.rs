//! Shabat polynomial machinery for the black-centered diameter-4 family
//! <k_1..k_n | n, 1^(N-n)>: exact polynomial systems, eliminants via
//! resultant chains, numeric solution sets, and rational normalized models.
//!
//! Normalization: the white vertex of the chosen origin degree sits at 0, the
//! central black vertex at 1. Writing b(z) = prod (z - x_i)^{k_i}, comparing
//! b'(z) with N (z-1)^(n-1) prod (z - x_i)^(k_i - 1) coefficient by
//! coefficient yields n-1 polynomial equations in the unknown white
//! coordinates x_2..x_n; everything else here is derived from that system.

use crate::algebra::poly::UPoly;
use crate::algebra::rat::{self, Rat};
use crate::algebra::roots::{self, CRat};
use crate::algebra::{factor_over_q, resultant, AlgebraError, MPoly};
use crate::passport::{Passport, PassportError};
use crate::trees::{black_centered_tree_count, is_black_centered, TreeError};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

/// Exact elimination is capped at this many unknowns.
pub const MAX_EXACT_UNKNOWNS: usize = 3;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ShabatError {
    #[error("not black-centered diameter-4: {0}")]
    NotBlackCentered(String),
    #[error("origin degree {0} is not a white degree of the passport")]
    OriginNotPresent(u32),
    #[error("elimination too large: {0} unknowns (exact path is capped at {MAX_EXACT_UNKNOWNS})")]
    EliminationTooLarge(usize),
    #[error("degenerate elimination: a resultant vanished identically")]
    DegenerateElimination,
    #[error("inconsistent system: a resultant is a nonzero constant")]
    InconsistentSystem,
    #[error("unknown index {0} out of range")]
    NoSuchUnknown(usize),
    #[error("invalid model: {0}")]
    ModelInvalid(String),
    #[error("numeric solving did not converge: {0}")]
    NonConvergence(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Passport(#[from] PassportError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// One unknown coordinate x_{i+2} of the system, tagged with its white degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unknown {
    pub var: usize,
    pub degree: u32,
}

/// The coefficient-matching system L(z) = N (z-1)^(n-1) for a black-centered
/// passport, where L(z) = sum_i k_i prod_{j != i} (z - x_j) and x_1 = 0.
#[derive(Debug, Clone)]
pub struct CenterSystem {
    passport: Passport,
    origin_degree: u32,
    unknowns: Vec<Unknown>,
    equations: Vec<MPoly>,
}

/// What an eliminant describes: a coordinate or an adjoined expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Coordinate(Unknown),
    Form(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemovedFactor {
    pub poly: UPoly,
    pub reason: String,
}

/// Eliminant of one coordinate (or form) over all solutions of the system.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminantReport {
    pub target: Target,
    /// Primitive integer squarefree polynomial with positive leading
    /// coefficient: the product of the kept irreducible factors.
    pub poly: UPoly,
    /// Kept irreducible factors, deterministic order.
    pub factors: Vec<UPoly>,
    pub removed: Vec<RemovedFactor>,
    /// Tree count x multiplicity of the target degree, when computable.
    pub expected_degree: Option<u64>,
    /// Set when `expected_degree` is known; false flags a mismatch.
    pub degree_matches: Option<bool>,
}

/// One numeric solution of the system (one plane tree).
#[derive(Debug, Clone)]
pub struct NumericModel {
    pub coords: Vec<(Unknown, CRat)>,
    pub precision_bits: u32,
    /// Largest |equation|^2 residual over the system at these coordinates.
    pub max_residual_sq: Rat,
}

/// A Shabat model with explicit rational vertex coordinates.
///
/// `white` and `black` list (coordinate, degree) pairs; `black` carries every
/// known black vertex and always includes the internal ones. b(z) is monic by
/// construction and c = b(1).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalModel {
    pub white: Vec<(Rat, u32)>,
    pub black: Vec<(Rat, u32)>,
    pub c: Rat,
}

/// Exact single-tree model via symmetric functions: b factored through the
/// monic eliminants of each degree class, usable even when the individual
/// coordinates are irrational.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredModel {
    pub b: UPoly,
    pub c: Rat,
    /// Monic factor and its white degree, one per degree class of unknowns.
    pub classes: Vec<(UPoly, u32)>,
}

/// Expressions accepted by [`eliminant_of_form`].
#[derive(Debug, Clone, PartialEq)]
pub enum FormExpr {
    /// constant + sum coeff * x_(unknown index)
    Linear {
        coeffs: Vec<(usize, Rat)>,
        constant: Rat,
    },
    /// x_i - x_j for two unknown indices.
    Difference(usize, usize),
    /// c - shift, where c = b(1) is the critical value.
    CriticalValue { shift: Rat },
}

impl CenterSystem {
    pub fn passport(&self) -> &Passport {
        &self.passport
    }

    pub fn origin_degree(&self) -> u32 {
        self.origin_degree
    }

    pub fn unknowns(&self) -> &[Unknown] {
        &self.unknowns
    }

    pub fn equations(&self) -> &[MPoly] {
        &self.equations
    }

    /// Number of white vertices.
    pub fn n_white(&self) -> usize {
        self.passport.n_white()
    }

    /// Default analysis target: the largest degree that is unique among the
    /// non-origin whites, so each tree contributes exactly one root.
    pub fn default_target(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, u) in self.unknowns.iter().enumerate() {
            let mult = self
                .unknowns
                .iter()
                .filter(|v| v.degree == u.degree)
                .count();
            if mult == 1 && best.is_none_or(|b| u.degree > self.unknowns[b].degree) {
                best = Some(i);
            }
        }
        best
    }

    /// Unknown index for a requested target degree (any representative).
    pub fn unknown_with_degree(&self, degree: u32) -> Option<usize> {
        self.unknowns.iter().position(|u| u.degree == degree)
    }

    /// Multiplicity of a degree among the non-origin whites.
    pub fn degree_multiplicity(&self, degree: u32) -> u64 {
        self.unknowns.iter().filter(|u| u.degree == degree).count() as u64
    }

    /// Plane tree count for the family (necklaces of the white multiset).
    pub fn tree_count(&self) -> u64 {
        black_centered_tree_count(&self.passport).expect("system passports are black-centered")
    }
}

/// Build the coefficient-matching system for a black-centered passport. The
/// origin (the white vertex placed at 0) defaults to the maximal white
/// degree.
pub fn build_center_system(
    passport: &Passport,
    origin: Option<u32>,
) -> Result<CenterSystem, ShabatError> {
    if !is_black_centered(passport) {
        return Err(ShabatError::NotBlackCentered(format!(
            "passport {} needs exactly one internal black vertex of degree n = {}",
            passport,
            passport.n_white()
        )));
    }
    let origin_degree = match origin {
        None => *passport.white().first().unwrap(),
        Some(d) => {
            if !passport.white().contains(&d) {
                return Err(ShabatError::OriginNotPresent(d));
            }
            d
        }
    };
    let mut rest: Vec<u32> = passport.white().to_vec();
    let pos = rest.iter().position(|&d| d == origin_degree).unwrap();
    rest.remove(pos);
    // Unknowns x_2..x_n in descending degree order.
    let unknowns: Vec<Unknown> = rest
        .iter()
        .enumerate()
        .map(|(i, &degree)| Unknown { var: i, degree })
        .collect();

    let n = passport.n_white();
    let n_edges = passport.edges();
    let u = unknowns.len();

    // Polynomials in z are coefficient vectors over MPoly, constant first.
    let one = || vec![MPoly::one()];
    let zmul = |a: &[MPoly], b: &[MPoly]| -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out
    };
    // (z - x_i) for each unknown.
    let lin: Vec<Vec<MPoly>> = (0..u)
        .map(|i| vec![MPoly::var(i).neg(), MPoly::one()])
        .collect();
    let mut product_all = one();
    for l in &lin {
        product_all = zmul(&product_all, l);
    }
    // L(z) = k_1 * prod_all + sum_i k_i * z * prod_{j != i}
    let mut lz = vec![MPoly::zero(); n];
    let add_into = |acc: &mut Vec<MPoly>, term: &[MPoly], scale: i64| {
        for (t, c) in term.iter().enumerate() {
            acc[t] = acc[t].add(&c.mul(&MPoly::int(scale)));
        }
    };
    add_into(&mut lz, &product_all, origin_degree as i64);
    for (i, unk) in unknowns.iter().enumerate() {
        let mut partial = one();
        for (j, l) in lin.iter().enumerate() {
            if j != i {
                partial = zmul(&partial, l);
            }
        }
        // times z
        let mut shifted = vec![MPoly::zero()];
        shifted.extend(partial);
        add_into(&mut lz, &shifted, unk.degree as i64);
    }
    // N (z-1)^(n-1)
    let mut rhs = one();
    let zm1 = vec![MPoly::int(-1), MPoly::one()];
    for _ in 0..n - 1 {
        rhs = zmul(&rhs, &zm1);
    }
    let n_big = MPoly::constant(Rat::from_integer(BigInt::from(n_edges)));
    let rhs: Vec<MPoly> = rhs.iter().map(|c| c.mul(&n_big)).collect();

    let mut equations = vec![];
    for t in 0..n - 1 {
        equations.push(lz[t].sub(&rhs[t]));
    }
    debug_assert!(
        lz[n - 1].sub(&rhs[n - 1]).is_zero(),
        "leading z-coefficients must cancel"
    );
    Ok(CenterSystem {
        passport: passport.clone(),
        origin_degree,
        unknowns,
        equations,
    })
}

/// Eliminate every variable except `keep` from the system of polynomials by
/// iterated resultants; returns the primitive squarefree integer polynomial
/// whose roots contain every value of that variable across solutions.
fn eliminate(polys: &[MPoly], keep: usize) -> Result<UPoly, ShabatError> {
    let mut current: Vec<MPoly> = polys.to_vec();
    loop {
        let mut vars: BTreeSet<usize> = BTreeSet::new();
        for p in &current {
            collect_vars(p, &mut vars);
        }
        vars.remove(&keep);
        let mut costs: Vec<(usize, usize)> = vec![];
        for &v in &vars {
            let dmin = current
                .iter()
                .filter(|p| p.contains_var(v))
                .map(|p| p.degree_in(v))
                .min()
                .unwrap_or(usize::MAX);
            costs.push((dmin, v));
        }
        let Some(&(_, v)) = costs.iter().min() else {
            break;
        };
        // Pivot: lowest degree in v, then lowest total degree, then first.
        let mut with_v: Vec<usize> = (0..current.len())
            .filter(|&i| current[i].contains_var(v))
            .collect();
        with_v.sort_by_key(|&i| (current[i].degree_in(v), current[i].total_degree(), i));
        let pivot = with_v[0];
        let mut next: Vec<MPoly> = vec![];
        for (i, p) in current.iter().enumerate() {
            if i == pivot {
                continue;
            }
            if !p.contains_var(v) {
                next.push(p.clone());
                continue;
            }
            let r = resultant(&current[pivot], p, v)?;
            if r.is_zero() {
                return Err(ShabatError::DegenerateElimination);
            }
            if let Some(c) = r.as_const() {
                if !c.is_zero() {
                    return Err(ShabatError::InconsistentSystem);
                }
            }
            next.push(r);
        }
        if next.is_empty() {
            return Err(ShabatError::DegenerateElimination);
        }
        current = next;
    }
    // Combine the univariate leftovers: common roots only.
    let mut acc: Option<UPoly> = None;
    for p in &current {
        let u = p.to_upoly(keep)?;
        if u.is_zero() {
            return Err(ShabatError::DegenerateElimination);
        }
        acc = Some(match acc {
            None => u,
            Some(a) => a.gcd(&u),
        });
    }
    let combined = acc.ok_or(ShabatError::DegenerateElimination)?;
    if combined.degree() == Some(0) {
        return Err(ShabatError::InconsistentSystem);
    }
    Ok(combined.squarefree_part()?)
}

fn collect_vars(p: &MPoly, out: &mut BTreeSet<usize>) {
    if let MPoly::Poly { var, coeffs } = p {
        out.insert(*var);
        for c in coeffs {
            collect_vars(c, out);
        }
    }
}

// ---------------------------------------------------------------------------
// Numeric solution of the full system.
// ---------------------------------------------------------------------------

struct TupleScan {
    /// Tuples passing residual, distinctness and nonzero checks, deduplicated
    /// modulo permutations of equal-degree unknowns.
    solutions: Vec<NumericModel>,
    /// Tuples passing the residual check but failing distinctness/nonzero.
    degenerate: Vec<Vec<CRat>>,
}

fn solve_tuples(sys: &CenterSystem, precision_bits: u32) -> Result<TupleScan, ShabatError> {
    check_unknown_cap(sys)?;
    let u = sys.unknowns.len();
    let mut per_var_roots: Vec<Vec<CRat>> = Vec::with_capacity(u);
    for unk in &sys.unknowns {
        let uni = eliminate(&sys.equations, unk.var)?;
        per_var_roots.push(roots::complex_roots(&uni, precision_bits)?);
    }
    let residual_sq = rat::pow2_neg(precision_bits);
    let sep_sq = rat::pow2_neg(precision_bits / 2);
    let mut solutions: Vec<NumericModel> = vec![];
    let mut degenerate: Vec<Vec<CRat>> = vec![];
    let mut index = vec![0usize; u];
    'outer: loop {
        let tuple: Vec<CRat> = (0..u)
            .map(|i| per_var_roots[i][index[i]].clone())
            .collect();
        let point: Vec<CRat> = tuple.clone();
        let mut max_res = Rat::zero();
        let mut pass = true;
        for eq in &sys.equations {
            let r = eval_mpoly_crat(eq, &point).norm_sq();
            if r > max_res {
                max_res = r.clone();
            }
            if r >= residual_sq {
                pass = false;
                break;
            }
        }
        if pass {
            let mut nondegenerate = tuple.iter().all(|x| x.norm_sq() > sep_sq);
            if nondegenerate {
                'pairs: for i in 0..u {
                    for j in i + 1..u {
                        if tuple[i].dist_sq(&tuple[j]) <= sep_sq {
                            nondegenerate = false;
                            break 'pairs;
                        }
                    }
                }
            }
            if nondegenerate {
                let canon = canonical_tuple(sys, &tuple);
                let duplicate = solutions.iter().any(|m| {
                    m.coords
                        .iter()
                        .zip(&canon)
                        .all(|((_, a), b)| a.dist_sq(b) < sep_sq)
                });
                if !duplicate {
                    solutions.push(NumericModel {
                        coords: sys.unknowns.iter().cloned().zip(canon).collect(),
                        precision_bits,
                        max_residual_sq: max_res,
                    });
                }
            } else {
                degenerate.push(tuple);
            }
        }
        // advance the product index
        for i in 0..u {
            index[i] += 1;
            if index[i] < per_var_roots[i].len() {
                continue 'outer;
            }
            index[i] = 0;
        }
        break;
    }
    Ok(TupleScan {
        solutions,
        degenerate,
    })
}

/// Sort coordinates within equal-degree groups so permutations of equal
/// degrees collapse to one representative.
fn canonical_tuple(sys: &CenterSystem, tuple: &[CRat]) -> Vec<CRat> {
    let mut out = tuple.to_vec();
    let mut i = 0;
    while i < sys.unknowns.len() {
        let mut j = i;
        while j < sys.unknowns.len() && sys.unknowns[j].degree == sys.unknowns[i].degree {
            j += 1;
        }
        out[i..j].sort_by(|a, b| a.cmp_lex(b));
        i = j;
    }
    out
}

fn eval_mpoly_crat(p: &MPoly, point: &[CRat]) -> CRat {
    match p {
        MPoly::Const(c) => CRat::from_rat(c.clone()),
        MPoly::Poly { var, coeffs } => {
            let x = &point[*var];
            let mut acc = CRat::zero();
            for c in coeffs.iter().rev() {
                acc = acc.mul(x).add(&eval_mpoly_crat(c, point));
            }
            acc
        }
    }
}

fn check_unknown_cap(sys: &CenterSystem) -> Result<(), ShabatError> {
    if sys.unknowns.len() > MAX_EXACT_UNKNOWNS {
        return Err(ShabatError::EliminationTooLarge(sys.unknowns.len()));
    }
    Ok(())
}

/// All numeric solutions of the system, one per plane tree, at the requested
/// precision (residuals below 2^(-precision/2)). Escalates precision once if
/// the family count disagrees, and reports nonconvergence otherwise.
pub fn solve_numeric(
    sys: &CenterSystem,
    precision_bits: u32,
) -> Result<Vec<NumericModel>, ShabatError> {
    let expected = sys.tree_count();
    let mut bits = precision_bits.max(128);
    for _ in 0..3 {
        let scan = solve_tuples(sys, bits)?;
        if scan.solutions.len() as u64 == expected {
            return Ok(scan.solutions);
        }
        bits *= 2;
    }
    Err(ShabatError::NonConvergence(format!(
        "expected {} solutions for {}, precision escalation exhausted",
        expected,
        sys.passport()
    )))
}

// ---------------------------------------------------------------------------
// Eliminants with spurious-factor filtering.
// ---------------------------------------------------------------------------

/// Eliminant of one unknown: iterated resultants, squarefree part, then
/// spurious-factor removal by numeric back-substitution into the full system.
pub fn eliminant(sys: &CenterSystem, target: usize) -> Result<EliminantReport, ShabatError> {
    check_unknown_cap(sys)?;
    let unknown = *sys
        .unknowns
        .get(target)
        .ok_or(ShabatError::NoSuchUnknown(target))?;
    let raw = eliminate(&sys.equations, unknown.var)?;
    let expected = Some(sys.tree_count() * sys.degree_multiplicity(unknown.degree));
    finish_eliminant(
        sys,
        raw,
        Target::Coordinate(unknown),
        expected,
        |model| {
            model
                .coords
                .iter()
                .find(|(u, _)| u.var == unknown.var)
                .map(|(_, x)| x.clone())
                .expect("target coordinate present")
        },
        |tuple| tuple[unknown.var].clone(),
    )
}

/// Eliminant of a linear form, coordinate difference, or the critical value
/// c = b(1): adjoins u - expression and eliminates all coordinates.
pub fn eliminant_of_form(sys: &CenterSystem, expr: &FormExpr) -> Result<EliminantReport, ShabatError> {
    check_unknown_cap(sys)?;
    let u_var = sys.unknowns.len();
    let (expr_poly, label, well_defined) = form_to_mpoly(sys, expr)?;
    let adjoined = MPoly::var(u_var).sub(&expr_poly);
    let mut eqs = sys.equations.to_vec();
    eqs.push(adjoined);
    let raw = eliminate(&eqs, u_var)?;
    let expected = well_defined.then(|| sys.tree_count());
    let expr_for_model = expr.clone();
    let expr_for_tuple = expr.clone();
    let sys2 = sys.clone();
    let sys3 = sys.clone();
    finish_eliminant(
        sys,
        raw,
        Target::Form(label),
        expected,
        move |model| {
            let point: Vec<CRat> = model.coords.iter().map(|(_, x)| x.clone()).collect();
            eval_form_crat(&sys2, &expr_for_model, &point)
        },
        move |tuple| eval_form_crat(&sys3, &expr_for_tuple, tuple),
    )
}

fn form_to_mpoly(
    sys: &CenterSystem,
    expr: &FormExpr,
) -> Result<(MPoly, String, bool), ShabatError> {
    let unique = |idx: usize| -> Result<bool, ShabatError> {
        let unk = sys
            .unknowns
            .get(idx)
            .ok_or(ShabatError::NoSuchUnknown(idx))?;
        Ok(sys.degree_multiplicity(unk.degree) == 1)
    };
    match expr {
        FormExpr::Linear { coeffs, constant } => {
            let mut p = MPoly::constant(constant.clone());
            let mut well = true;
            let mut parts = vec![];
            for (idx, coeff) in coeffs {
                well &= unique(*idx)?;
                p = p.add(&MPoly::var(sys.unknowns[*idx].var).mul(&MPoly::constant(coeff.clone())));
                parts.push(format!("{}*x[deg {}]", coeff, sys.unknowns[*idx].degree));
            }
            let mut label = parts.join(" + ");
            if !constant.is_zero() {
                label = format!("{} + {}", constant, label);
            }
            Ok((p, label, well))
        }
        FormExpr::Difference(i, j) => {
            let well = unique(*i)? && unique(*j)?;
            let p = MPoly::var(sys.unknowns[*i].var).sub(&MPoly::var(sys.unknowns[*j].var));
            let label = format!(
                "x[deg {}] - x[deg {}]",
                sys.unknowns[*i].degree, sys.unknowns[*j].degree
            );
            Ok((p, label, well))
        }
        FormExpr::CriticalValue { shift } => {
            // c = b(1) = prod over unknowns (1 - x_i)^{k_i} (the origin factor
            // is 1). Symmetric in equal degrees, so one value per tree.
            let mut p = MPoly::one();
            for unk in &sys.unknowns {
                let lin = MPoly::one().sub(&MPoly::var(unk.var));
                p = p.mul(&lin.pow(unk.degree as usize));
            }
            p = p.sub(&MPoly::constant(shift.clone()));
            let label = if shift.is_zero() {
                "c".to_string()
            } else {
                format!("c - {}", shift)
            };
            Ok((p, label, true))
        }
    }
}

fn eval_form_crat(sys: &CenterSystem, expr: &FormExpr, point: &[CRat]) -> CRat {
    match expr {
        FormExpr::Linear { coeffs, constant } => {
            let mut acc = CRat::from_rat(constant.clone());
            for (idx, coeff) in coeffs {
                acc = acc.add(&point[sys.unknowns[*idx].var].scale(coeff));
            }
            acc
        }
        FormExpr::Difference(i, j) => {
            point[sys.unknowns[*i].var].sub(&point[sys.unknowns[*j].var])
        }
        FormExpr::CriticalValue { shift } => {
            let mut acc = CRat::from_rat(Rat::one());
            for unk in &sys.unknowns {
                let one_minus = CRat::from_rat(Rat::one()).sub(&point[unk.var]);
                acc = acc.mul(&one_minus.pow(unk.degree as u64));
            }
            acc.sub(&CRat::from_rat(shift.clone()))
        }
    }
}

const FILTER_PRECISION: u32 = 192;

fn finish_eliminant(
    sys: &CenterSystem,
    raw: UPoly,
    target: Target,
    expected_degree: Option<u64>,
    value_of_model: impl Fn(&NumericModel) -> CRat,
    value_of_tuple: impl Fn(&[CRat]) -> CRat,
) -> Result<EliminantReport, ShabatError> {
    let factorization = factor_over_q(&raw)?;
    let candidates: Vec<UPoly> = factorization.factors.iter().map(|(f, _)| f.clone()).collect();
    let scan = solve_tuples(sys, FILTER_PRECISION)?;
    if scan.solutions.len() as u64 != sys.tree_count() {
        return Err(ShabatError::NonConvergence(format!(
            "found {} full solutions, expected {}",
            scan.solutions.len(),
            sys.tree_count()
        )));
    }
    let mut kept_idx: BTreeSet<usize> = BTreeSet::new();
    for model in &scan.solutions {
        let value = value_of_model(model);
        if let Some(best) = nearest_factor(&candidates, &value) {
            kept_idx.insert(best);
        }
    }
    let mut degenerate_idx: BTreeSet<usize> = BTreeSet::new();
    for tuple in &scan.degenerate {
        let value = value_of_tuple(tuple);
        if let Some(best) = nearest_factor(&candidates, &value) {
            degenerate_idx.insert(best);
        }
    }
    let mut factors = vec![];
    let mut removed = vec![];
    let mut poly = UPoly::one();
    for (i, f) in candidates.iter().enumerate() {
        if kept_idx.contains(&i) {
            factors.push(f.clone());
            poly = poly.mul(f);
        } else if degenerate_idx.contains(&i) {
            removed.push(RemovedFactor {
                poly: f.clone(),
                reason: "degenerate configuration (colliding or zero coordinates)".into(),
            });
        } else {
            removed.push(RemovedFactor {
                poly: f.clone(),
                reason: "no full-system solution extends this factor's roots".into(),
            });
        }
    }
    let poly = poly.primitive_part();
    let degree_matches =
        expected_degree.map(|e| poly.degree().map(|d| d as u64) == Some(e));
    Ok(EliminantReport {
        target,
        poly,
        factors,
        removed,
        expected_degree,
        degree_matches,
    })
}

/// Index of the factor on which `value` is (numerically) a root: smallest
/// normalized |factor(value)|, checked to be far below the runner-up.
fn nearest_factor(factors: &[UPoly], value: &CRat) -> Option<usize> {
    let mut scored: Vec<(Rat, usize)> = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let coeffs: Vec<CRat> = f
                .coeffs()
                .iter()
                .map(|c| CRat::from_rat(c.clone()))
                .collect();
            let v = roots::ceval(&coeffs, value).norm_sq();
            let scale = f
                .coeffs()
                .iter()
                .map(|c| c * c)
                .fold(Rat::zero(), |a, b| a + b);
            (v / scale, i)
        })
        .collect();
    scored.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let best = scored.first()?;
    if best.0 < rat::pow2_neg(FILTER_PRECISION / 4) {
        Some(best.1)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Rational and symmetric models.
// ---------------------------------------------------------------------------

impl RationalModel {
    /// The star <N | 1^N>: b = z^N, c = 1, black leaves at the rational roots
    /// of unity.
    pub fn star(n_edges: u32) -> RationalModel {
        let mut black = vec![(Rat::one(), 1)];
        if n_edges.is_multiple_of(2) {
            black.push((-Rat::one(), 1));
        }
        RationalModel {
            white: vec![(Rat::zero(), n_edges)],
            black,
            c: Rat::one(),
        }
    }

    /// b(z) = prod (z - x)^k, monic.
    pub fn b_poly(&self) -> UPoly {
        let mut b = UPoly::one();
        for (x, k) in &self.white {
            b = b.mul(&UPoly::linear_root(x).pow(*k));
        }
        b
    }

    /// Degree of the white vertex at the origin (k_1).
    pub fn origin_degree(&self) -> Result<u32, ShabatError> {
        self.white
            .iter()
            .find(|(x, _)| x.is_zero())
            .map(|(_, k)| *k)
            .ok_or_else(|| ShabatError::ModelInvalid("no white vertex at the origin".into()))
    }

    /// Total edge count.
    pub fn edges(&self) -> u64 {
        self.white.iter().map(|(_, k)| *k as u64).sum()
    }
}

/// Exact verification of the derivative identity
/// b' = N prod (z-x_i)^(k_i-1) prod (z-y_j)^(l_j-1) over the listed vertices.
pub fn residual_check(model: &RationalModel) -> (bool, Option<String>) {
    let b = model.b_poly();
    let lhs = b.derivative();
    let mut rhs = UPoly::constant(Rat::from_integer(BigInt::from(model.edges())));
    for (x, k) in &model.white {
        if *k > 1 {
            rhs = rhs.mul(&UPoly::linear_root(x).pow(k - 1));
        }
    }
    for (y, l) in &model.black {
        if *l > 1 {
            rhs = rhs.mul(&UPoly::linear_root(y).pow(l - 1));
        }
    }
    if lhs == rhs {
        (true, None)
    } else {
        let diff = lhs.sub(&rhs);
        (
            false,
            Some(format!(
                "b' - N*prod differs by {} (degree {:?})",
                diff,
                diff.degree()
            )),
        )
    }
}

/// (b - c) divided exactly by (z - y)^l over the internal (degree >= 2)
/// blacks; the roots of the quotient are the black leaves.
pub fn black_poly(model: &RationalModel) -> Result<UPoly, ShabatError> {
    let mut q = model.b_poly().sub(&UPoly::constant(model.c.clone()));
    for (y, l) in &model.black {
        if *l >= 2 {
            let den = UPoly::linear_root(y).pow(*l);
            q = q.exact_div(&den).map_err(|_| {
                ShabatError::ModelInvalid(format!(
                    "(b - c) is not divisible by (z - {})^{}",
                    y, l
                ))
            })?;
        }
    }
    Ok(q)
}

/// Normalization report for Definition-style checks: monic, white at 0,
/// black at 1, all coordinates p-integral.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationReport {
    pub monic: bool,
    pub white_at_origin: bool,
    pub black_at_one: bool,
    /// Coordinates with negative p-valuation (coordinate, valuation).
    pub violations: Vec<(Rat, i64)>,
}

impl NormalizationReport {
    pub fn pass(&self) -> bool {
        self.monic && self.white_at_origin && self.black_at_one && self.violations.is_empty()
    }
}

pub fn validate_normalized(model: &RationalModel, p: u32) -> NormalizationReport {
    let b = model.b_poly();
    let monic = b.lead().is_some_and(|l| l.is_one());
    let white_at_origin = model.white.iter().any(|(x, _)| x.is_zero());
    let black_at_one = model.black.iter().any(|(y, _)| y.is_one());
    let mut violations = vec![];
    for (coord, _) in model.white.iter().chain(model.black.iter()) {
        if coord.is_zero() {
            continue;
        }
        let v = crate::padic::val_p_int(coord, p);
        if v < 0 {
            violations.push((coord.clone(), v));
        }
    }
    NormalizationReport {
        monic,
        white_at_origin,
        black_at_one,
        violations,
    }
}

/// Rescale coordinates into p-integrality: if some black coordinate has
/// negative valuation, divide everything by a black coordinate of minimal
/// valuation (ties broken by the natural order), which lands at 1.
pub fn normalize_rescale(
    white: &[Rat],
    black: &[Rat],
    p: u32,
) -> Result<(Vec<Rat>, Vec<Rat>), ShabatError> {
    if !white.iter().any(|x| x.is_zero()) {
        return Err(ShabatError::ModelInvalid("no white vertex at 0".into()));
    }
    if !black.iter().any(|y| y.is_one()) {
        return Err(ShabatError::ModelInvalid("no black vertex at 1".into()));
    }
    let min_val = black
        .iter()
        .filter(|y| !y.is_zero())
        .map(|y| crate::padic::val_p_int(y, p))
        .min()
        .ok_or_else(|| ShabatError::ModelInvalid("no black vertices".into()))?;
    if min_val >= 0 {
        return Ok((white.to_vec(), black.to_vec()));
    }
    let pivot = black
        .iter()
        .filter(|y| !y.is_zero() && crate::padic::val_p_int(y, p) == min_val)
        .min()
        .cloned()
        .expect("minimum attained");
    let div = |v: &Rat| v / &pivot;
    Ok((white.iter().map(div).collect(), black.iter().map(div).collect()))
}

/// Exact rational solutions of the system, as full models: rational roots of
/// every per-unknown eliminant are combined and verified against the system
/// exactly. Returns one model per tree whose coordinates are all rational.
pub fn rational_models(sys: &CenterSystem) -> Result<Vec<RationalModel>, ShabatError> {
    check_unknown_cap(sys)?;
    let u = sys.unknowns.len();
    let mut candidates: Vec<Vec<Rat>> = Vec::with_capacity(u);
    for unk in &sys.unknowns {
        let uni = eliminate(&sys.equations, unk.var)?;
        let fac = factor_over_q(&uni)?;
        let mut roots: Vec<Rat> = fac
            .factors
            .iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, _)| -(&f.coeff(0) / &f.coeff(1)))
            .collect();
        roots.sort();
        roots.dedup();
        if roots.is_empty() {
            return Ok(vec![]);
        }
        candidates.push(roots);
    }
    let mut tuples: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut index = vec![0usize; u];
    'outer: loop {
        let tuple: Vec<Rat> = (0..u).map(|i| candidates[i][index[i]].clone()).collect();
        let ok = sys.equations.iter().all(|eq| eq.eval(&tuple).is_zero())
            && tuple.iter().all(|x| !x.is_zero())
            && (0..u).all(|i| (i + 1..u).all(|j| tuple[i] != tuple[j]));
        if ok {
            tuples.insert(canonical_rat_tuple(sys, &tuple));
        }
        for i in 0..u {
            index[i] += 1;
            if index[i] < candidates[i].len() {
                continue 'outer;
            }
            index[i] = 0;
        }
        break;
    }
    let mut models = vec![];
    for tuple in tuples {
        models.push(model_from_rational_coords(sys, &tuple)?);
    }
    Ok(models)
}

fn canonical_rat_tuple(sys: &CenterSystem, tuple: &[Rat]) -> Vec<Rat> {
    let mut out = tuple.to_vec();
    let mut i = 0;
    while i < sys.unknowns.len() {
        let mut j = i;
        while j < sys.unknowns.len() && sys.unknowns[j].degree == sys.unknowns[i].degree {
            j += 1;
        }
        out[i..j].sort();
        i = j;
    }
    out
}

/// Assemble the full rational model from exact coordinates: whites, the
/// center at 1, any rational black leaves, and c = b(1).
fn model_from_rational_coords(
    sys: &CenterSystem,
    coords: &[Rat],
) -> Result<RationalModel, ShabatError> {
    let mut white = vec![(Rat::zero(), sys.origin_degree)];
    for (unk, x) in sys.unknowns.iter().zip(coords) {
        white.push((x.clone(), unk.degree));
    }
    let n = sys.n_white() as u32;
    let mut model = RationalModel {
        white,
        black: vec![(Rat::one(), n)],
        c: Rat::zero(),
    };
    model.c = model.b_poly().eval(&Rat::one());
    // Rational black leaves, when findable.
    let leaves = black_poly(&model)?;
    if let Some(d) = leaves.degree() {
        if (1..=crate::algebra::factor::MAX_FACTOR_DEGREE).contains(&d) {
            let fac = factor_over_q(&leaves)?;
            for (f, m) in &fac.factors {
                if f.degree() == Some(1) {
                    let root = -(&f.coeff(0) / &f.coeff(1));
                    for _ in 0..*m {
                        model.black.push((root.clone(), 1));
                    }
                }
            }
        }
    }
    Ok(model)
}

/// Exact model through symmetric functions for single-tree systems: each
/// degree class contributes the monic form of its eliminant, so
/// b = z^k1 * prod_class U_class(z)^degree.
pub fn centered_model(sys: &CenterSystem) -> Result<CenteredModel, ShabatError> {
    check_unknown_cap(sys)?;
    if sys.tree_count() != 1 {
        return Err(ShabatError::ModelInvalid(format!(
            "symmetric model needs a single tree, {} has {}",
            sys.passport(),
            sys.tree_count()
        )));
    }
    let mut classes: Vec<(UPoly, u32)> = vec![];
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    for (i, unk) in sys.unknowns.iter().enumerate() {
        if !seen.insert(unk.degree) {
            continue;
        }
        let rep = eliminant(sys, i)?;
        if rep.degree_matches == Some(false) {
            return Err(ShabatError::ModelInvalid(format!(
                "class eliminant degree {:?} does not match multiplicity {}",
                rep.poly.degree(),
                sys.degree_multiplicity(unk.degree)
            )));
        }
        classes.push((rep.poly.monic(), unk.degree));
    }
    let mut b = UPoly::var().pow(sys.origin_degree);
    for (u, k) in &classes {
        b = b.mul(&u.pow(*k));
    }
    let c = b.eval(&Rat::one());
    Ok(CenteredModel { b, c, classes })
}

impl CenteredModel {
    /// Exact check of b' = N z^(k1-1) (z-1)^(n-1) prod U_class^(degree-1).
    pub fn derivative_identity(&self, sys: &CenterSystem) -> bool {
        let n_edges = sys.passport().edges();
        let mut rhs = UPoly::constant(Rat::from_integer(BigInt::from(n_edges)));
        rhs = rhs.mul(&UPoly::var().pow(sys.origin_degree() - 1));
        rhs = rhs.mul(&UPoly::linear_root(&Rat::one()).pow(sys.n_white() as u32 - 1));
        for (u, k) in &self.classes {
            if *k > 1 {
                rhs = rhs.mul(&u.pow(*k - 1));
            }
        }
        self.b.derivative() == rhs
    }

    /// Black-leaf polynomial (b - c) / (z - 1)^n, exact.
    pub fn black_poly(&self, sys: &CenterSystem) -> Result<UPoly, ShabatError> {
        let num = self.b.sub(&UPoly::constant(self.c.clone()));
        let den = UPoly::linear_root(&Rat::one()).pow(sys.n_white() as u32);
        num.exact_div(&den)
            .map_err(|_| ShabatError::ModelInvalid("(b - c) not divisible by (z-1)^n".into()))
    }
}
