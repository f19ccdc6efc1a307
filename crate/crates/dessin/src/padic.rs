//! p-adic valuations of rationals, Newton polygons of rational polynomials,
//! purity tests, predicted coordinate valuations, and definition-field degree
//! bounds.
//!
//! Valuations are normalized so that v(p) = 1. Algebraic coordinates are
//! never represented directly: their valuations are read off the Newton
//! polygons of their exact eliminants, whose slopes compute exactly the
//! observable ratio of valuations.

use crate::algebra::poly::UPoly;
use crate::algebra::rat::Rat;
use crate::algebra::AlgebraError;
use crate::passport::{is_prime, Color, Passport, PassportError};
use crate::shabat::{eliminant, CenterSystem, RationalModel, ShabatError};
use num_bigint::BigInt;

use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("theorem hypothesis fails: passport is white-decomposable at {0}")]
    Decomposable(u32),
    #[error("no non-origin white vertices (n = 1)")]
    SingleWhite,
    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("eliminant degree mismatch: the coordinate product cannot be read off")]
    EliminantDegreeMismatch,
    #[error(transparent)]
    Passport(#[from] PassportError),
    #[error(transparent)]
    Shabat(#[from] ShabatError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A p-adic valuation value: exact rational, or +infinity for 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    Finite(Rat),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Exact p-adic valuation of a rational, v(p) = 1, v(0) = +infinity.
pub fn val_p(q: &Rat, p: u32) -> Valuation {
    assert!(is_prime(p), "{} is not prime", p);
    if q.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(Rat::from_integer(BigInt::from(val_p_int(q, p))))
}

/// Integer valuation of a nonzero rational (panics on zero input).
pub fn val_p_int(q: &Rat, p: u32) -> i64 {
    assert!(!q.is_zero(), "v_p(0) is infinite");
    let p = BigInt::from(p);
    let count = |mut n: BigInt| -> i64 {
        let mut v = 0i64;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        v
    };
    count(q.numer().abs()) - count(q.denom().clone())
}

/// One side of a Newton polygon: `count` roots of the given valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub valuation: Valuation,
    pub count: u64,
}

/// Lower convex hull of (i, v_p(a_i)); segment of slope -w and horizontal
/// length m corresponds to m roots of valuation w. Zero roots are split off
/// into a distinguished +infinity segment.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolygon {
    /// (index, valuation) for each nonzero coefficient.
    pub points: Vec<(u64, i64)>,
    /// Lower hull vertices, left to right.
    pub hull: Vec<(u64, i64)>,
    /// Segments sorted by root valuation ascending; the +infinity segment of
    /// zero roots, if present, comes last.
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Sum over finite segments of count x valuation: equals
    /// v(a_k) - v(a_deg) where k is the order of vanishing at 0.
    pub fn total_drop(&self) -> Rat {
        let mut total = Rat::zero();
        for seg in &self.segments {
            if let Valuation::Finite(v) = &seg.valuation {
                total += v * Rat::from_integer(BigInt::from(seg.count));
            }
        }
        total
    }

    pub fn degree(&self) -> u64 {
        self.segments.iter().map(|s| s.count).sum()
    }

    /// Stable text form: `(valuation x count), ...` plus hull vertices.
    pub fn describe(&self) -> String {
        let segs: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("({} x{})", s.valuation, s.count))
            .collect();
        let hull: Vec<String> = self
            .hull
            .iter()
            .map(|(i, v)| format!("({},{})", i, v))
            .collect();
        format!("segments [{}] hull [{}]", segs.join(", "), hull.join(" "))
    }
}

/// Newton polygon of a nonzero rational polynomial at a prime.
pub fn newton_polygon(f: &UPoly, p: u32) -> Result<NewtonPolygon, PadicError> {
    if !is_prime(p) {
        return Err(PadicError::NotPrime(p));
    }
    let deg = f.degree().ok_or(PadicError::ZeroPolynomial)?;
    let zero_order = (0..=deg)
        .find(|&i| !f.coeff(i).is_zero())
        .expect("nonzero polynomial");
    let points: Vec<(u64, i64)> = (zero_order..=deg)
        .filter(|&i| !f.coeff(i).is_zero())
        .map(|i| (i as u64, val_p_int(&f.coeff(i), p)))
        .collect();
    // Lower convex hull, left to right (indices strictly increasing).
    let mut hull: Vec<(u64, i64)> = vec![];
    for &(x, y) in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // Keep (x2,y2) only if it lies strictly below the chord
            // (x1,y1)-(x,y): cross product test.
            let lhs = (y2 - y1) as i128 * (x - x1) as i128;
            let rhs = (y - y1) as i128 * (x2 - x1) as i128;
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    let mut segments: Vec<Segment> = hull
        .windows(2)
        .map(|w| {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            Segment {
                valuation: Valuation::Finite(-Rat::new(
                    BigInt::from(y2 - y1),
                    BigInt::from((x2 - x1) as i64),
                )),
                count: x2 - x1,
            }
        })
        .collect();
    segments.sort_by(|a, b| match (&a.valuation, &b.valuation) {
        (Valuation::Finite(u), Valuation::Finite(v)) => u.cmp(v),
        (Valuation::Finite(_), Valuation::Infinite) => std::cmp::Ordering::Less,
        (Valuation::Infinite, Valuation::Finite(_)) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    if zero_order > 0 {
        segments.push(Segment {
            valuation: Valuation::Infinite,
            count: zero_order as u64,
        });
    }
    Ok(NewtonPolygon {
        points,
        hull,
        segments,
    })
}

/// True iff the polygon is a single finite segment with the given root
/// valuation: all roots share that valuation.
pub fn is_pure(polygon: &NewtonPolygon, valuation: &Rat) -> bool {
    polygon.segments.len() == 1
        && polygon.segments[0].valuation == Valuation::Finite(valuation.clone())
}

/// Predicted valuation of every non-origin white coordinate for a
/// white-indecomposable passport: s/(n-1) in the v(p) = 1 normalization.
pub fn predicted_valuation(passport: &Passport, p: u32) -> Result<Rat, PadicError> {
    let split = passport.prime_power_split(p)?;
    if passport.n_white() < 2 {
        return Err(PadicError::SingleWhite);
    }
    let (dec, _) = passport.is_decomposable(p, Color::White)?;
    if dec {
        return Err(PadicError::Decomposable(p));
    }
    Ok(Rat::new(
        BigInt::from(split.s),
        BigInt::from(passport.n_white() as u64 - 1),
    ))
}

/// Lower bound on the degree of the definition field: the denominator of the
/// predicted valuation s/(n-1) in lowest terms, the minimal ramification
/// index compatible with it.
pub fn degree_lower_bound(passport: &Passport, p: u32) -> Result<u64, PadicError> {
    let v = predicted_valuation(passport, p)?;
    Ok(v.denom()
        .to_string()
        .parse::<u64>()
        .expect("denominator n-1 fits in u64"))
}

/// Partition rational coordinates by congruence: a ~ b iff v_p(a - b) > 0.
/// Classes are listed in order of first appearance.
pub fn congruence_classes(coords: &[Rat], p: u32) -> Vec<Vec<Rat>> {
    let mut classes: Vec<Vec<Rat>> = vec![];
    for c in coords {
        let mut placed = false;
        for class in classes.iter_mut() {
            let rep = &class[0];
            let congruent = match val_p(&(c - rep), p) {
                Valuation::Infinite => true,
                Valuation::Finite(v) => v.is_positive(),
            };
            if congruent {
                class.push(c.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![c.clone()]);
        }
    }
    classes
}

/// Input for the valuation identity check.
pub enum IdentityInput<'a> {
    Model(&'a RationalModel),
    System(&'a CenterSystem),
}

/// Verify the substitution identity at z = x_1 = 0:
/// v(k_1) + sum_{i>=2} v(x_i) = v(N) + sum_j (l_j - 1) v(y_j).
///
/// For a rational model the valuations are computed directly. For a centered
/// system the coordinate products are read off the eliminant constant terms:
/// across all solutions the class eliminants multiply to (N/k_1)^trees, which
/// is checked exactly (no individual roots needed).
pub fn check_valuation_identity(input: IdentityInput<'_>, p: u32) -> Result<bool, PadicError> {
    if !is_prime(p) {
        return Err(PadicError::NotPrime(p));
    }
    match input {
        IdentityInput::Model(model) => {
            let k1 = model
                .origin_degree()
                .map_err(PadicError::Shabat)?;
            let mut lhs = val_p_int(&Rat::from_integer(BigInt::from(k1)), p);
            for (x, _) in &model.white {
                if x.is_zero() {
                    continue;
                }
                lhs += val_p_int(x, p);
            }
            let mut rhs = val_p_int(&Rat::from_integer(BigInt::from(model.edges())), p);
            for (y, l) in &model.black {
                if *l >= 2 {
                    if y.is_zero() {
                        return Ok(false);
                    }
                    rhs += (*l as i64 - 1) * val_p_int(y, p);
                }
            }
            Ok(lhs == rhs)
        }
        IdentityInput::System(sys) => {
            let trees = sys.tree_count();
            let mut product = Rat::one();
            let mut seen = BTreeSet::new();
            for (i, unk) in sys.unknowns().iter().enumerate() {
                if !seen.insert(unk.degree) {
                    continue;
                }
                let rep = eliminant(sys, i)?;
                if rep.degree_matches != Some(true) {
                    return Err(PadicError::EliminantDegreeMismatch);
                }
                let d = rep.poly.degree().unwrap_or(0);
                let sign = if d % 2 == 1 { -Rat::one() } else { Rat::one() };
                product *= sign * rep.poly.coeff(0) / rep.poly.lead().unwrap();
            }
            let n_edges = Rat::from_integer(BigInt::from(sys.passport().edges()));
            let k1 = Rat::from_integer(BigInt::from(sys.origin_degree()));
            let expected = crate::algebra::rat::pow_u(&(n_edges / k1), trees);
            Ok(product == expected)
        }
    }
}
