//! Exact univariate polynomials over the rationals.
//!
//! Coefficients are stored constant-term first with no trailing zeros; the
//! zero polynomial has an empty coefficient vector. The text format (shared
//! with the CLI) is comma-separated coefficients, constant first, each an
//! integer or `n/d` rational: `"6,-8,3"` is 3t^2 - 8t + 6.

use super::rat::{self, parse_rat, Rat};
use super::AlgebraError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    /// The monomial `t`.
    pub fn var() -> Self {
        UPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UPoly::from_coeffs(coeffs.iter().map(|&c| rat::int(c)).collect())
    }

    pub fn from_bigint_coeffs(coeffs: &[BigInt]) -> Self {
        UPoly::from_coeffs(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// `t - a`.
    pub fn linear_root(a: &Rat) -> Self {
        UPoly::from_coeffs(vec![-a.clone(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        let d: Vec<Rat> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect();
        UPoly::from_coeffs(d)
    }

    pub fn scale(&self, s: &Rat) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> UPoly {
        self.scale(&-Rat::one())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        UPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }

    pub fn pow(&self, exp: u32) -> UPoly {
        let mut result = UPoly::one();
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

    /// Field division with remainder: `self = q * div + r`, deg r < deg div.
    pub fn div_rem(&self, div: &UPoly) -> Result<(UPoly, UPoly), AlgebraError> {
        let dd = div.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead = div.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        while rem.len() > dd {
            let r_lead = rem.last().unwrap().clone();
            if r_lead.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - dd;
            let q = &r_lead / &lead;
            for i in 0..dd {
                let delta = &q * &div.coeffs[i];
                rem[shift + i] -= delta;
            }
            rem.pop();
            quot[shift] = q;
        }
        Ok((UPoly::from_coeffs(quot), UPoly::from_coeffs(rem)))
    }

    /// Division that must be exact.
    pub fn exact_div(&self, div: &UPoly) -> Result<UPoly, AlgebraError> {
        let (q, r) = self.div_rem(div)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// Roots shifted by `-a`: returns f(t + a).
    pub fn shift(&self, a: &Rat) -> UPoly {
        self.compose(&UPoly::from_coeffs(vec![a.clone(), Rat::one()]))
    }

    /// Monic associate (zero polynomial stays zero).
    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Content and primitive part: `self = content * primitive` where the
    /// primitive part has coprime integer coefficients and positive leading
    /// coefficient.
    pub fn content_and_primitive(&self) -> (Rat, UPoly) {
        if self.is_zero() {
            return (Rat::zero(), UPoly::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut num_gcd = BigInt::zero();
        for v in &ints {
            num_gcd = num_gcd.gcd(v);
        }
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let scale = num_gcd * sign;
        let prim: Vec<Rat> = ints
            .iter()
            .map(|v| Rat::from_integer(v / &scale))
            .collect();
        (Rat::new(scale, den_lcm), UPoly::from_coeffs(prim))
    }

    pub fn primitive_part(&self) -> UPoly {
        self.content_and_primitive().1
    }

    /// Integer coefficients, if every denominator is 1.
    pub fn to_int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    /// Monic gcd via the subresultant remainder sequence on primitive parts.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (mut f, mut g) = (self.primitive_part(), other.primitive_part());
        if f.degree() < g.degree() {
            std::mem::swap(&mut f, &mut g);
        }
        if g.degree() == Some(0) {
            return UPoly::one();
        }
        let mut h = Rat::one();
        let mut psi = Rat::one();
        loop {
            let df = f.degree().unwrap();
            let dg = g.degree().unwrap();
            let delta = (df - dg) as u32;
            let rem = pseudo_rem(&f, &g);
            if rem.is_zero() {
                return g.primitive_part().monic();
            }
            let beta = -(&psi * rat::pow_u(&h, delta as u64));
            let next = rem.scale(&beta.recip());
            psi = -g.lead().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                rat::pow_u(&psi, delta as u64) / rat::pow_u(&h, (delta - 1) as u64)
            };
            f = g;
            g = next;
            if g.degree() == Some(0) {
                return UPoly::one();
            }
        }
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            _ => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// f / gcd(f, f'): same roots without multiplicity, returned as a
    /// primitive integer polynomial with positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<UPoly, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(UPoly::one());
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g)?.primitive_part())
    }

    /// Parse the shared text format.
    pub fn parse(text: &str) -> Result<UPoly, AlgebraError> {
        if text.trim().is_empty() {
            return Err(AlgebraError::BadPolynomial(text.to_string()));
        }
        let coeffs = text
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| AlgebraError::BadPolynomial(text.to_string()))?;
        Ok(UPoly::from_coeffs(coeffs))
    }

    /// Human-readable rendering, highest power first.
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = rat::abs(c);
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if i > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{}", i));
                }
            }
        }
        out
    }
}

/// Pseudo-remainder: remainder of lc(g)^(deg f - deg g + 1) * f by g.
fn pseudo_rem(f: &UPoly, g: &UPoly) -> UPoly {
    let df = f.degree().expect("nonzero");
    let dg = g.degree().expect("nonzero");
    debug_assert!(df >= dg);
    let factor = rat::pow_u(g.lead().unwrap(), (df - dg + 1) as u64);
    let (_, r) = f.scale(&factor).div_rem(g).expect("nonzero divisor");
    r
}

impl fmt::Display for UPoly {
    /// The shared text format: comma-separated coefficients, constant first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly[{}]", self.pretty("t"))
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
    fn arithmetic_round_trip() {
        let f = p(&[6, -8, 3]);
        let g = p(&[-1, 1]);
        let h = f.mul(&g).add(&p(&[5]));
        let (q, r) = h.div_rem(&g).unwrap();
        assert_eq!(q, f);
        assert_eq!(r, p(&[5]));
    }

    #[test]
    fn eval_and_derivative() {
        let f = p(&[6, -8, 3]);
        assert_eq!(f.eval(&int(2)), int(2));
        assert_eq!(f.derivative(), p(&[-8, 6]));
    }

    #[test]
    fn text_format_round_trip() {
        let f = UPoly::parse("6,-8,3").unwrap();
        assert_eq!(f, p(&[6, -8, 3]));
        assert_eq!(f.to_string(), "6,-8,3");
        let g = UPoly::parse("1/3,-2/3,1").unwrap();
        assert_eq!(g.to_string(), "1/3,-2/3,1");
        assert!(UPoly::parse("").is_err());
        assert!(UPoly::parse("1,,2").is_err());
    }

    #[test]
    fn gcd_of_common_factor() {
        let common = p(&[-1, 1]);
        let f = common.mul(&p(&[-2, 1]));
        let g = common.mul(&p(&[-3, 1]));
        assert_eq!(f.gcd(&g), common.monic());
        assert_eq!(p(&[-1, 1]).gcd(&p(&[-3, 1])), UPoly::one());
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        // (t-1)^2 (t+2) -> (t-1)(t+2)
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        assert_eq!(f.squarefree_part().unwrap(), p(&[-1, 1]).mul(&p(&[2, 1])));
        // t^2 - 2 is already squarefree
        assert_eq!(p(&[-2, 0, 1]).squarefree_part().unwrap(), p(&[-2, 0, 1]));
        // (3t^2 - 8t + 6)^2 -> 3t^2 - 8t + 6
        let e = p(&[6, -8, 3]);
        assert_eq!(e.pow(2).squarefree_part().unwrap(), e);
        assert!(UPoly::zero().squarefree_part().is_err());
    }

    #[test]
    fn content_extraction() {
        let f = p(&[6, -8, 3]).scale(&rat(-2, 9));
        let (c, prim) = f.content_and_primitive();
        assert_eq!(prim, p(&[6, -8, 3]));
        assert_eq!(c, rat(-2, 9));
        assert_eq!(prim.scale(&c), f);
        assert!(prim.lead().unwrap() > &Rat::zero() || prim.is_zero());
    }

    #[test]
    fn shift_moves_roots() {
        // f = (t-2)(t-3); f(t+1) = (t-1)(t-2)
        let f = p(&[-2, 1]).mul(&p(&[-3, 1]));
        assert_eq!(f.shift(&int(1)), p(&[-1, 1]).mul(&p(&[-2, 1])));
    }

    #[test]
    fn pretty_rendering() {
        assert_eq!(p(&[6, -8, 3]).pretty("t"), "3*t^2 - 8*t + 6");
        assert_eq!(p(&[0, 1]).pretty("z"), "z");
        assert_eq!(UPoly::zero().pretty("t"), "0");
    }
}
