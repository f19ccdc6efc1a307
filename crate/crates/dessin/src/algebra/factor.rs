//! Complete factorization over the rationals, up to degree 24.
//!
//! Pipeline: primitive part extraction, Yun squarefree decomposition,
//! factorization modulo a good odd prime (distinct-degree plus equal-degree
//! splitting), quadratic Hensel lifting to a Landau-Mignotte coefficient
//! bound, then Zassenhaus subset recombination. The degree cap keeps
//! recombination cheap. All choices are deterministic so output order is
//! stable: factors are sorted by degree, then lexicographically by
//! coefficient sequence.

use super::poly::UPoly;
use super::rat::Rat;
use super::AlgebraError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Largest degree accepted by [`factor_over_q`].
pub const MAX_FACTOR_DEGREE: usize = 24;

/// A complete factorization `unit * prod(factor_i ^ multiplicity_i)`.
///
/// Factors are irreducible primitive integer polynomials with positive
/// leading coefficients, pairwise non-associate, in deterministic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(UPoly, u32)>,
}

impl Factorization {
    /// Multiply everything back out (exact).
    pub fn expand(&self) -> UPoly {
        let mut out = UPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            out = out.mul(&f.pow(*m));
        }
        out
    }

    /// Degrees of the irreducible factors, with multiplicity, sorted descending.
    pub fn factor_degrees(&self) -> Vec<u64> {
        let mut out = vec![];
        for (f, m) in &self.factors {
            for _ in 0..*m {
                out.push(f.degree().unwrap_or(0) as u64);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor a nonzero rational polynomial into irreducibles over Q.
pub fn factor_over_q(f: &UPoly) -> Result<Factorization, AlgebraError> {
    let deg = f.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if deg > MAX_FACTOR_DEGREE {
        return Err(AlgebraError::UnsupportedDegree(deg, MAX_FACTOR_DEGREE));
    }
    let prim = f.primitive_part();
    let mut factors: Vec<(UPoly, u32)> = vec![];
    for (part, mult) in yun_squarefree(&prim) {
        for irr in factor_squarefree(&part.to_int_coeffs().expect("primitive is integral")) {
            factors.push((UPoly::from_bigint_coeffs(&irr), mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    let product: UPoly = factors
        .iter()
        .fold(UPoly::one(), |acc, (g, m)| acc.mul(&g.pow(*m)));
    let unit = f.lead().unwrap() / product.lead().unwrap();
    let result = Factorization { unit, factors };
    debug_assert_eq!(result.expand(), *f, "factorization must reproduce the input");
    Ok(result)
}

/// Yun's algorithm: primitive squarefree parts with multiplicities.
fn yun_squarefree(f: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = vec![];
    if f.degree().is_none_or(|d| d == 0) {
        return out;
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = fp.exact_div(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    loop {
        if b.degree() == Some(0) {
            break;
        }
        let a = b.gcd(&d);
        if a.degree().is_some_and(|deg| deg > 0) {
            out.push((a.primitive_part(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Integer polynomials (dense, constant first, no trailing zeros).
// ---------------------------------------------------------------------------

type ZPoly = Vec<BigInt>;

fn z_trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn z_deg(a: &ZPoly) -> usize {
    a.len().saturating_sub(1)
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division over Z; `None` when the divisor does not divide.
fn z_exact_div(num: &ZPoly, den: &ZPoly) -> Option<ZPoly> {
    if den.is_empty() {
        return None;
    }
    let mut rem = num.clone();
    let dd = z_deg(den);
    let lead = den.last().unwrap();
    if rem.len() < den.len() {
        return if rem.iter().all(Zero::is_zero) {
            Some(vec![])
        } else {
            None
        };
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    loop {
        rem = z_trim(rem);
        if rem.len() <= dd {
            break;
        }
        let (q, r) = rem.last().unwrap().div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        let shift = rem.len() - 1 - dd;
        for i in 0..=dd {
            let delta = &q * &den[i];
            rem[shift + i] -= delta;
        }
        quot[shift] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(z_trim(quot))
    } else {
        None
    }
}

fn z_content(a: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    g
}

/// Primitive with positive leading coefficient.
fn z_primitive(a: &ZPoly) -> ZPoly {
    let a = z_trim(a.clone());
    if a.is_empty() {
        return a;
    }
    let mut g = z_content(&a);
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Ceiling square root of the 2-norm squared.
fn z_norm2_ceil(a: &ZPoly) -> BigInt {
    let sum: BigInt = a.iter().map(|c| c * c).sum();
    let root = sum.sqrt();
    if &root * &root == sum {
        root
    } else {
        root + 1
    }
}

// ---------------------------------------------------------------------------
// Arithmetic modulo m (m = p or p^k), coefficients reduced to [0, m).
// ---------------------------------------------------------------------------

fn m_red(a: &ZPoly, m: &BigInt) -> ZPoly {
    z_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn m_add(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push((a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).mod_floor(m));
    }
    z_trim(out)
}

fn m_sub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push((a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).mod_floor(m));
    }
    z_trim(out)
}

fn m_mul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    m_red(&z_mul(a, b), m)
}

fn m_scale(a: &ZPoly, s: &BigInt, m: &BigInt) -> ZPoly {
    z_trim(a.iter().map(|c| (c * s).mod_floor(m)).collect())
}

/// Modular inverse of `a` mod `m` (must be invertible).
fn m_inv_scalar(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "non-invertible scalar in modular arithmetic");
    e.x.mod_floor(m)
}

/// Division with remainder by a polynomial with invertible leading
/// coefficient.
fn m_div_rem(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let db = z_deg(b);
    let lead_inv = m_inv_scalar(b.last().unwrap(), m);
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (vec![], z_trim(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    loop {
        rem = z_trim(rem);
        if rem.len() <= db {
            break;
        }
        let q = (rem.last().unwrap() * &lead_inv).mod_floor(m);
        let shift = rem.len() - 1 - db;
        for i in 0..=db {
            let v = (&rem[shift + i] - &q * &b[i]).mod_floor(m);
            rem[shift + i] = v;
        }
        quot[shift] = q;
    }
    (z_trim(quot), rem)
}

fn m_monic(a: &ZPoly, m: &BigInt) -> ZPoly {
    if a.is_empty() {
        return vec![];
    }
    let inv = m_inv_scalar(a.last().unwrap(), m);
    m_scale(a, &inv, m)
}

/// Monic gcd over the prime field F_p.
fn p_gcd(a: &ZPoly, b: &ZPoly, p: &BigInt) -> ZPoly {
    let mut f = m_red(a, p);
    let mut g = m_red(b, p);
    while !g.is_empty() {
        let (_, r) = m_div_rem(&f, &g, p);
        f = g;
        g = r;
    }
    if f.is_empty() {
        f
    } else {
        m_monic(&f, p)
    }
}

/// Extended gcd over F_p: returns (gcd, s, t) with s*a + t*b = gcd.
fn p_ext_gcd(a: &ZPoly, b: &ZPoly, p: &BigInt) -> (ZPoly, ZPoly, ZPoly) {
    let mut r0 = m_red(a, p);
    let mut r1 = m_red(b, p);
    let mut s0: ZPoly = vec![BigInt::one()];
    let mut s1: ZPoly = vec![];
    let mut t0: ZPoly = vec![];
    let mut t1: ZPoly = vec![BigInt::one()];
    while !r1.is_empty() {
        let (q, r) = m_div_rem(&r0, &r1, p);
        let ns = m_sub(&s0, &m_mul(&q, &s1, p), p);
        let nt = m_sub(&t0, &m_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = m_inv_scalar(r0.last().unwrap(), p);
    (
        m_scale(&r0, &inv, p),
        m_scale(&s0, &inv, p),
        m_scale(&t0, &inv, p),
    )
}

fn p_pow_mod(base: &ZPoly, mut exp: BigInt, modulus: &ZPoly, p: &BigInt) -> ZPoly {
    let mut result: ZPoly = vec![BigInt::one()];
    let mut b = m_div_rem(base, modulus, p).1;
    while exp.is_positive() {
        if exp.is_odd() {
            result = m_div_rem(&m_mul(&result, &b, p), modulus, p).1;
        }
        exp >>= 1;
        if exp.is_positive() {
            b = m_div_rem(&m_mul(&b, &b, p), modulus, p).1;
        }
    }
    result
}

fn p_derivative(a: &ZPoly, p: &BigInt) -> ZPoly {
    let d: ZPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (c * BigInt::from(i)).mod_floor(p))
        .collect();
    z_trim(d)
}

// ---------------------------------------------------------------------------
// Factorization over F_p of a squarefree monic polynomial.
// ---------------------------------------------------------------------------

/// Distinct-degree decomposition followed by equal-degree splitting.
fn p_factor_squarefree_monic(f: &ZPoly, p: &BigInt) -> Vec<ZPoly> {
    let mut out = vec![];
    let mut v = f.clone();
    let x: ZPoly = vec![BigInt::zero(), BigInt::one()];
    let mut h = x.clone();
    let mut d = 0usize;
    while v.len() > 1 {
        d += 1;
        if 2 * d > z_deg(&v) {
            out.push(v.clone());
            break;
        }
        h = p_pow_mod(&h, p.clone(), &v, p);
        let g = p_gcd(&m_sub(&h, &x, p), &v, p);
        if g.len() > 1 {
            equal_degree_split(&g, d, p, &mut out);
            v = z_exact_div_mod(&v, &g, p);
            h = m_div_rem(&h, &v, p).1;
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn z_exact_div_mod(a: &ZPoly, b: &ZPoly, p: &BigInt) -> ZPoly {
    let (q, r) = m_div_rem(a, b, p);
    debug_assert!(r.is_empty());
    q
}

/// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles,
/// with a deterministic sequence of trial elements.
fn equal_degree_split(f: &ZPoly, d: usize, p: &BigInt, out: &mut Vec<ZPoly>) {
    if z_deg(f) == d {
        out.push(f.clone());
        return;
    }
    let exp = (p.pow(d as u32) - 1u32) / 2u32;
    let mut counter = BigInt::zero();
    loop {
        counter += 1;
        let trial = deterministic_trial(&counter, z_deg(f), p);
        if trial.len() <= 1 {
            continue;
        }
        let b = p_pow_mod(&trial, exp.clone(), f, p);
        let g = p_gcd(&m_sub(&b, &vec![BigInt::one()], p), f, p);
        if g.len() > 1 && z_deg(&g) < z_deg(f) {
            equal_degree_split(&g, d, p, out);
            equal_degree_split(&z_exact_div_mod(f, &g, p), d, p, out);
            return;
        }
    }
}

/// Enumerate trial polynomials of degree < bound from a counter (base-p digits).
fn deterministic_trial(counter: &BigInt, bound: usize, p: &BigInt) -> ZPoly {
    // Offset by x so the first trials are x+1, x+2, ...
    let mut digits = vec![];
    let mut c = counter.clone();
    while c.is_positive() && digits.len() < bound {
        let (q, r) = c.div_rem(p);
        digits.push(r);
        c = q;
    }
    let mut trial = digits;
    if trial.len() < 2 {
        trial.resize(2, BigInt::zero());
        trial[1] = BigInt::one();
    }
    z_trim(trial)
}

// ---------------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------------

/// One quadratic Hensel step: given f = g*h mod m with s*g + t*h = 1 mod m
/// and h monic, produce the same data mod m^2.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = m_sub(f, &m_mul(g, h, &m2), &m2);
    let (q, r) = m_div_rem(&m_mul(s, &e, &m2), h, &m2);
    let g1 = m_add(g, &m_add(&m_mul(t, &e, &m2), &m_mul(&q, g, &m2), &m2), &m2);
    let h1 = m_add(h, &r, &m2);
    let b = m_sub(
        &m_add(&m_mul(s, &g1, &m2), &m_mul(t, &h1, &m2), &m2),
        &vec![BigInt::one()],
        &m2,
    );
    let (c, d) = m_div_rem(&m_mul(s, &b, &m2), &h1, &m2);
    let s1 = m_sub(s, &d, &m2);
    let t1 = m_sub(
        t,
        &m_add(&m_mul(t, &b, &m2), &m_mul(&c, &g1, &m2), &m2),
        &m2,
    );
    (g1, h1, s1, t1)
}

/// Lift the pair (g, h) with f = g*h mod p, h monic, to modulus `target`.
fn lift_pair(f: &ZPoly, g0: &ZPoly, h0: &ZPoly, p: &BigInt, target: &BigInt) -> (ZPoly, ZPoly) {
    let (gcd, s, t) = p_ext_gcd(g0, h0, p);
    debug_assert_eq!(gcd, vec![BigInt::one()], "modular factors must be coprime");
    let mut m = p.clone();
    let mut g = g0.clone();
    let mut h = h0.clone();
    let mut ss = s;
    let mut tt = t;
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &ss, &tt, &m);
        g = g1;
        h = h1;
        ss = s1;
        tt = t1;
        m = &m * &m;
    }
    (m_red(&g, target), m_red(&h, target))
}

/// Lift a full modular factorization f = lc(f) * prod(facs) mod p to mod
/// `target` (a power of p), returning monic factors mod `target`.
fn lift_tree(f: &ZPoly, facs: &[ZPoly], p: &BigInt, target: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![m_monic(&m_red(f, target), target)];
    }
    let mid = facs.len() / 2;
    let lc = f.last().unwrap();
    let mut left: ZPoly = vec![lc.mod_floor(p)];
    for fac in &facs[..mid] {
        left = m_mul(&left, fac, p);
    }
    let mut right: ZPoly = vec![BigInt::one()];
    for fac in &facs[mid..] {
        right = m_mul(&right, fac, p);
    }
    let (g, h) = lift_pair(&m_red(f, target), &left, &right, p, target);
    let mut out = lift_tree(&g, &facs[..mid], p, target);
    out.extend(lift_tree(&h, &facs[mid..], p, target));
    out
}

// ---------------------------------------------------------------------------
// Zassenhaus recombination.
// ---------------------------------------------------------------------------

fn symmetric_red(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    z_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

const SMALL_PRIMES: [u32; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Factor a squarefree primitive integer polynomial into irreducibles.
fn factor_squarefree(g: &ZPoly) -> Vec<ZPoly> {
    let g = z_primitive(g);
    let deg = z_deg(&g);
    if deg == 0 {
        return vec![];
    }
    if deg == 1 {
        return vec![g];
    }
    if g[0].is_zero() {
        // Squarefree, so x divides exactly once.
        let rest = z_exact_div(&g, &vec![BigInt::zero(), BigInt::one()]).unwrap();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree(&rest));
        return out;
    }

    // Pick the admissible prime with the fewest modular factors among the
    // first few candidates.
    let mut best: Option<(BigInt, Vec<ZPoly>)> = None;
    let mut tried = 0;
    for &q in SMALL_PRIMES.iter() {
        let p = BigInt::from(q);
        if (g.last().unwrap() % &p).is_zero() {
            continue;
        }
        let fbar = m_monic(&m_red(&g, &p), &p);
        if z_deg(&fbar) != deg {
            continue;
        }
        let sqfree = p_gcd(&fbar, &p_derivative(&fbar, &p), &p).len() == 1;
        if !sqfree {
            continue;
        }
        let facs = p_factor_squarefree_monic(&fbar, &p);
        let count = facs.len();
        if best.as_ref().is_none_or(|(_, b)| count < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 4 || count == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("some small prime is admissible for a squarefree polynomial");
    if modular.len() == 1 {
        return vec![g];
    }

    // Landau-Mignotte style bound on coefficients of lc(g) * (monic factor).
    let bound: BigInt = z_norm2_ceil(&g) * (BigInt::one() << deg) * g.last().unwrap().abs();
    let mut target = p.clone();
    while target <= &bound * 2 {
        target = &target * &target;
    }
    let lifted = lift_tree(&g, &modular, &p, &target);

    // Try subsets of increasing cardinality; a successful subset is divided
    // out and the search restarts on the quotient.
    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = g.clone();
    let mut found: Vec<ZPoly> = vec![];
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let combos = combinations(remaining.len(), size);
        for combo in combos {
            let lc = current.last().unwrap();
            let mut cand: ZPoly = vec![lc.clone()];
            for &i in &combo {
                cand = m_mul(&cand, &remaining[i], &target);
            }
            let cand = z_primitive(&symmetric_red(&cand, &target));
            if cand.len() <= 1 {
                continue;
            }
            if let Some(quot) = z_exact_div(&current, &cand) {
                found.push(cand);
                current = quot;
                let keep: Vec<ZPoly> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, f)| f.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if z_deg(&current) > 0 {
        found.push(z_primitive(&current));
    }
    found
}

/// All `size`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut combo: Vec<usize> = (0..size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(combo.clone());
        // advance
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] != i + n - size {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        combo[i] += 1;
        for j in i + 1..size {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    fn p(coeffs: &[i64]) -> UPoly {
        UPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn difference_of_squares() {
        let f = factor_over_q(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f.unit, int(1));
        assert_eq!(
            f.factors,
            vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]
        );
    }

    #[test]
    fn negative_discriminant_quadratic_is_irreducible() {
        // 3t^2 - 8t + 6 has discriminant 64 - 72 < 0.
        let f = factor_over_q(&p(&[6, -8, 3])).unwrap();
        assert!(f.is_irreducible());
        assert_eq!(f.factors[0].0, p(&[6, -8, 3]));
    }

    #[test]
    fn t4_plus_1_is_irreducible() {
        let f = factor_over_q(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert!(f.is_irreducible());
        // Independent check: any factorization would include a monic integer
        // quadratic t^2+bt+c with |b| <= 2 and c = +/-1 (constant terms
        // multiply to 1, coefficient bound from the 2-norm), or a rational
        // root. Neither exists.
        let target = p(&[1, 0, 0, 0, 1]);
        for b in -2i64..=2 {
            for c in [-1i64, 1] {
                let q = p(&[c, b, 1]);
                assert!(!target.div_rem(&q).unwrap().1.is_zero(), "b={} c={}", b, c);
            }
        }
        for r in [-1i64, 1] {
            assert!(!target.eval(&int(r)).is_zero());
        }
    }

    #[test]
    fn multiplicities_and_unit() {
        // -2/3 * (t-1)^2 * (2t+3)
        let f = p(&[-1, 1]).pow(2).mul(&p(&[3, 2])).scale(&rat(-2, 3));
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.unit, rat(-2, 3));
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 2), (p(&[3, 2]), 1)]);
    }

    #[test]
    fn recovers_product_of_irreducibles() {
        // (t^2+1)(t^2-t-1)(2t^3+t+5) -- mixed quadratics and a cubic
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, -1, 1]);
        let c = p(&[5, 1, 0, 2]);
        let f = a.mul(&b).mul(&c);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.expand(), f);
        let mut degs = fac.factor_degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 2, 3]);
        assert!(fac.factors.iter().any(|(g, _)| *g == a));
        assert!(fac.factors.iter().any(|(g, _)| *g == b));
        assert!(fac.factors.iter().any(|(g, _)| *g == c));
    }

    #[test]
    fn cyclotomic_like_splitting() {
        // t^6 - 1 = (t-1)(t+1)(t^2+t+1)(t^2-t+1)
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factor_degrees(), vec![2, 2, 1, 1]);
    }

    #[test]
    fn zero_root_and_content() {
        let f = p(&[0, 0, 6, 6]); // 6t^2(t+1)
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.unit, int(6));
        assert_eq!(fac.factors, vec![(p(&[0, 1]), 2), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let f = UPoly::var().pow(25).add(&UPoly::one());
        assert!(matches!(
            factor_over_q(&f),
            Err(AlgebraError::UnsupportedDegree(25, 24))
        ));
        assert!(factor_over_q(&UPoly::zero()).is_err());
    }

    #[test]
    fn big_coefficient_factorization() {
        // (t^2 - 2*10^12)(t^3 + 10^10 t + 7): large coefficients exercise the
        // lifting bound.
        let big: BigInt = BigInt::from(10u64.pow(12)) * 2;
        let a = UPoly::from_coeffs(vec![
            Rat::from_integer(-big),
            int(0),
            int(1),
        ]);
        let b = UPoly::from_coeffs(vec![
            int(7),
            Rat::from_integer(BigInt::from(10u64.pow(10))),
            int(0),
            int(1),
        ]);
        let f = a.mul(&b);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factor_degrees(), vec![3, 2]);
    }
}
