//! Multiprecision complex root finding by simultaneous Aberth-Ehrlich
//! iteration with precision escalation.
//!
//! Complex numbers are pairs of exact rationals; every iterate is rounded to
//! the working number of dyadic bits, so there is no floating-point error
//! floor. Work starts at 128 bits and doubles until the residuals meet the
//! requested bound and the root set is stable across two consecutive
//! precision levels.

use super::poly::UPoly;
use super::rat::{self, Rat};
use super::AlgebraError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A complex number with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn zero() -> Self {
        CRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    pub fn from_rat(re: Rat) -> Self {
        CRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn neg(&self) -> CRat {
        CRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn div(&self, o: &CRat) -> CRat {
        let d = o.norm_sq();
        CRat {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        }
    }

    pub fn scale(&self, s: &Rat) -> CRat {
        CRat {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    pub fn pow(&self, exp: u64) -> CRat {
        let mut result = CRat::from_rat(Rat::one());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// |z|^2, exact.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn dist_sq(&self, o: &CRat) -> Rat {
        self.sub(o).norm_sq()
    }

    /// Round both parts to denominator 2^bits.
    pub fn round(&self, bits: u32) -> CRat {
        CRat {
            re: rat::round_to_bits(&self.re, bits),
            im: rat::round_to_bits(&self.im, bits),
        }
    }

    /// Total order by (re, im), used for deterministic output.
    pub fn cmp_lex(&self, o: &CRat) -> Ordering {
        self.re.cmp(&o.re).then_with(|| self.im.cmp(&o.im))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        if self.im.is_zero() {
            write!(f, "{:.12}", re)
        } else if self.im.is_positive() {
            write!(f, "{:.12}+{:.12}i", re, im)
        } else {
            write!(f, "{:.12}{:.12}i", re, im)
        }
    }
}

/// Evaluate a complex-coefficient polynomial (constant first) by Horner.
pub fn ceval(coeffs: &[CRat], z: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

fn cderivative(coeffs: &[CRat]) -> Vec<CRat> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&Rat::from_integer(BigInt::from(i))))
        .collect()
}

/// All complex roots of a squarefree rational polynomial, one approximation
/// per root, sorted by (re, im). Each satisfies |f(root)| < 2^(-precision/2)
/// under exact evaluation.
pub fn complex_roots(f: &UPoly, precision_bits: u32) -> Result<Vec<CRat>, AlgebraError> {
    let deg = f.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(vec![]);
    }
    if !f.is_squarefree() {
        return Err(AlgebraError::NotSquarefree);
    }
    let coeffs: Vec<CRat> = f.coeffs().iter().map(|c| CRat::from_rat(c.clone())).collect();
    croots(&coeffs, precision_bits)
}

/// Root finder over complex rational coefficients. The input must be
/// squarefree (distinct roots); zero roots are split off exactly.
pub fn croots(coeffs: &[CRat], precision_bits: u32) -> Result<Vec<CRat>, AlgebraError> {
    let mut work: Vec<CRat> = coeffs.to_vec();
    while work.last().is_some_and(CRat::is_zero) {
        work.pop();
    }
    if work.len() <= 1 {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut zeros = vec![];
    while work.first().is_some_and(CRat::is_zero) {
        zeros.push(CRat::zero());
        work.remove(0);
    }
    let deg = work.len() - 1;
    let mut roots = zeros;
    if deg == 1 {
        roots.push(work[0].neg().div(&work[1]));
    } else if deg > 1 {
        roots.extend(aberth_escalating(&work, precision_bits)?);
    }
    roots.sort_by(|a, b| a.cmp_lex(b));
    Ok(roots)
}

fn aberth_escalating(coeffs: &[CRat], precision_bits: u32) -> Result<Vec<CRat>, AlgebraError> {
    let residual_sq_bound = rat::pow2_neg(precision_bits);
    let stability_sq = rat::pow2_neg(precision_bits / 2);
    let mut workbits = 128u32.max(precision_bits);
    let mut previous: Option<Vec<CRat>> = None;
    let cap = 1u32 << 15;
    while workbits <= cap {
        let start = previous
            .clone()
            .unwrap_or_else(|| initial_guesses(coeffs, workbits));
        let roots = aberth_at(coeffs, start, workbits);
        let ok = roots
            .iter()
            .all(|z| ceval(coeffs, z).norm_sq() < residual_sq_bound);
        if ok {
            if let Some(prev) = &previous {
                let matched = prev.iter().all(|p| {
                    roots
                        .iter()
                        .any(|r| r.dist_sq(p) < stability_sq)
                });
                if matched {
                    return Ok(roots);
                }
            }
            previous = Some(roots);
        } else {
            previous = Some(roots);
        }
        workbits *= 2;
    }
    Err(AlgebraError::RootsDidNotConverge)
}

/// Starting points on a circle of radius near the Cauchy root bound, with a
/// fixed angular offset so the configuration is never symmetric about the
/// real axis.
fn initial_guesses(coeffs: &[CRat], bits: u32) -> Vec<CRat> {
    let deg = coeffs.len() - 1;
    let lead = coeffs.last().unwrap().norm_sq();
    let mut max_ratio = Rat::zero();
    for c in &coeffs[..deg] {
        let r = c.norm_sq() / &lead;
        if r > max_ratio {
            max_ratio = r;
        }
    }
    // radius^2 = (1 + max |a_i/a_d|)^2 >= 1 + max |a_i/a_d|^2
    let radius_sq = (Rat::one() + max_ratio) * rat::int(4);
    let mut radius = Rat::one();
    while &radius * &radius < radius_sq {
        radius *= rat::int(2);
    }
    (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.7;
            let c = Rat::from_float(theta.cos()).unwrap();
            let s = Rat::from_float(theta.sin()).unwrap();
            CRat {
                re: &radius * c,
                im: &radius * s,
            }
            .round(bits)
        })
        .collect()
}

fn aberth_at(coeffs: &[CRat], mut z: Vec<CRat>, bits: u32) -> Vec<CRat> {
    let deg = coeffs.len() - 1;
    let deriv = cderivative(coeffs);
    let tiny = rat::pow2_neg(2 * bits.saturating_sub(8));
    let max_iters = 80 + 20 * deg;
    for _ in 0..max_iters {
        let mut max_step = Rat::zero();
        for i in 0..deg {
            let p = ceval(coeffs, &z[i]);
            if p.is_zero() {
                continue;
            }
            let dp = ceval(&deriv, &z[i]);
            let newton = if dp.is_zero() {
                // Stationary point: nudge deterministically.
                CRat::from_rat(rat::pow2_neg(bits / 2))
            } else {
                p.div(&dp)
            };
            let mut sum = CRat::zero();
            let mut collision = false;
            for j in 0..deg {
                if i == j {
                    continue;
                }
                let diff = z[i].sub(&z[j]);
                if diff.is_zero() {
                    collision = true;
                    break;
                }
                sum = sum.add(&CRat::from_rat(Rat::one()).div(&diff));
            }
            let step = if collision {
                // Separate exactly coincident approximations.
                CRat {
                    re: rat::pow2_neg(bits / 4),
                    im: rat::pow2_neg(bits / 4 + 1),
                }
            } else {
                let denom = CRat::from_rat(Rat::one()).sub(&newton.mul(&sum));
                if denom.is_zero() {
                    newton.clone()
                } else {
                    newton.div(&denom)
                }
            };
            z[i] = z[i].sub(&step).round(bits);
            let step_sq = step.norm_sq();
            if step_sq > max_step {
                max_step = step_sq;
            }
        }
        if max_step < tiny {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    fn close(z: &CRat, re: f64, im: f64) -> bool {
        let (zr, zi) = z.to_f64();
        (zr - re).abs() < 1e-9 && (zi - im).abs() < 1e-9
    }

    #[test]
    fn linear_is_exact() {
        let f = UPoly::from_int_coeffs(&[-2, 1]);
        let roots = complex_roots(&f, 128).unwrap();
        assert_eq!(roots, vec![CRat::from_rat(int(2))]);
    }

    #[test]
    fn sqrt_two() {
        let f = UPoly::from_int_coeffs(&[-2, 0, 1]);
        let roots = complex_roots(&f, 128).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(close(&roots[0], -std::f64::consts::SQRT_2, 0.0));
        assert!(close(&roots[1], std::f64::consts::SQRT_2, 0.0));
        for r in &roots {
            assert!(f.eval(&r.re) < rat::pow2_neg(64) * int(4));
        }
    }

    #[test]
    fn complex_conjugate_pair() {
        // 3t^2 - 8t + 6: roots 4/3 +/- i*sqrt(2)/3
        let f = UPoly::from_int_coeffs(&[6, -8, 3]);
        let roots = complex_roots(&f, 128).unwrap();
        assert_eq!(roots.len(), 2);
        let s = 2f64.sqrt() / 3.0;
        assert!(close(&roots[0], 4.0 / 3.0, -s));
        assert!(close(&roots[1], 4.0 / 3.0, s));
    }

    #[test]
    fn rejects_non_squarefree() {
        let f = UPoly::from_int_coeffs(&[-1, 1]).pow(2);
        assert_eq!(
            complex_roots(&f, 128).unwrap_err(),
            AlgebraError::NotSquarefree
        );
    }

    #[test]
    fn zero_root_split_off() {
        // t(t^2+1)
        let f = UPoly::from_int_coeffs(&[0, 1, 0, 1]);
        let roots = complex_roots(&f, 128).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().any(CRat::is_zero));
        assert!(roots.iter().any(|z| close(z, 0.0, 1.0)));
        assert!(roots.iter().any(|z| close(z, 0.0, -1.0)));
    }

    #[test]
    fn vieta_sum_and_product() {
        // roots of t^5 - 3t^3 + t - 11
        let f = UPoly::from_int_coeffs(&[-11, 1, 0, -3, 0, 1]);
        let roots = complex_roots(&f, 160).unwrap();
        let sum = roots.iter().fold(CRat::zero(), |a, r| a.add(r));
        let prod = roots.iter().fold(CRat::from_rat(int(1)), |a, r| a.mul(r));
        // sum = -a4/a5 = 0; product = (-1)^5 a0/a5 = 11
        assert!(sum.norm_sq() < rat(1, 1 << 40));
        assert!(prod.sub(&CRat::from_rat(int(11))).norm_sq() < rat(1, 1 << 40));
    }

    #[test]
    fn large_coefficients_converge() {
        // (t - 10^9)(t + 1/10^9-ish scale): huge spread exercises escalation.
        let big = int(1_000_000_000);
        let f = UPoly::from_coeffs(vec![-big.clone(), int(0), int(1)]);
        let roots = complex_roots(&f, 128).unwrap();
        assert_eq!(roots.len(), 2);
        let r = 1e9f64.sqrt();
        assert!(close(&roots[1], r, 0.0));
    }
}
