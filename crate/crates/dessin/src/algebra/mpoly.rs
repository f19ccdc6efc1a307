//! Exact multivariate polynomials in recursive representation, and resultants
//! via subresultant polynomial remainder sequences.
//!
//! An `MPoly` is either a constant or a dense polynomial in its smallest
//! variable whose coefficients only involve strictly larger variables. The
//! variable order is fixed per system, so the representation is canonical.

use super::poly::UPoly;
use super::rat::Rat;
use super::AlgebraError;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MPoly {
    Const(Rat),
    /// Polynomial in `var`; `coeffs` is constant-first, has length >= 2
    /// (degree >= 1), a nonzero leading entry, and entries only involving
    /// variables > `var`.
    Poly { var: usize, coeffs: Vec<MPoly> },
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::Const(Rat::zero())
    }

    pub fn one() -> Self {
        MPoly::Const(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        MPoly::Const(c)
    }

    pub fn int(n: i64) -> Self {
        MPoly::Const(super::rat::int(n))
    }

    pub fn var(v: usize) -> Self {
        MPoly::Poly {
            var: v,
            coeffs: vec![MPoly::zero(), MPoly::one()],
        }
    }

    /// Canonical form: trims zero leading coefficients and collapses
    /// degree-0 nodes.
    fn normalize(var: usize, mut coeffs: Vec<MPoly>) -> MPoly {
        while coeffs.last().is_some_and(MPoly::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => MPoly::zero(),
            1 => coeffs.pop().unwrap(),
            _ => MPoly::Poly { var, coeffs },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MPoly::Const(c) if c.is_zero())
    }

    pub fn as_const(&self) -> Option<&Rat> {
        match self {
            MPoly::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Smallest variable present, if any.
    pub fn main_var(&self) -> Option<usize> {
        match self {
            MPoly::Const(_) => None,
            MPoly::Poly { var, .. } => Some(*var),
        }
    }

    pub fn degree_in(&self, v: usize) -> usize {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Poly { var, coeffs } => {
                if *var == v {
                    coeffs.len() - 1
                } else if *var > v {
                    0
                } else {
                    coeffs.iter().map(|c| c.degree_in(v)).max().unwrap_or(0)
                }
            }
        }
    }

    pub fn total_degree(&self) -> usize {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Poly { coeffs, .. } => coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| i + c.total_degree())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.degree_in(v) > 0
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        match (self, other) {
            (MPoly::Const(a), MPoly::Const(b)) => MPoly::Const(a + b),
            (MPoly::Poly { var, coeffs }, MPoly::Const(_)) => {
                let mut out = coeffs.clone();
                out[0] = out[0].add(other);
                MPoly::normalize(*var, out)
            }
            (MPoly::Const(_), MPoly::Poly { .. }) => other.add(self),
            (MPoly::Poly { var: va, coeffs: ca }, MPoly::Poly { var: vb, coeffs: cb }) => {
                if va == vb {
                    let n = ca.len().max(cb.len());
                    let mut out = Vec::with_capacity(n);
                    for i in 0..n {
                        let a = ca.get(i).cloned().unwrap_or_else(MPoly::zero);
                        let b = cb.get(i).cloned().unwrap_or_else(MPoly::zero);
                        out.push(a.add(&b));
                    }
                    MPoly::normalize(*va, out)
                } else if va < vb {
                    let mut out = ca.clone();
                    out[0] = out[0].add(other);
                    MPoly::normalize(*va, out)
                } else {
                    other.add(self)
                }
            }
        }
    }

    pub fn neg(&self) -> MPoly {
        match self {
            MPoly::Const(c) => MPoly::Const(-c.clone()),
            MPoly::Poly { var, coeffs } => MPoly::Poly {
                var: *var,
                coeffs: coeffs.iter().map(MPoly::neg).collect(),
            },
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        match (self, other) {
            (MPoly::Const(a), _) => {
                if a.is_zero() {
                    MPoly::zero()
                } else {
                    other.scale_recursive(a)
                }
            }
            (_, MPoly::Const(_)) => other.mul(self),
            (MPoly::Poly { var: va, coeffs: ca }, MPoly::Poly { var: vb, coeffs: cb }) => {
                if va == vb {
                    let mut out = vec![MPoly::zero(); ca.len() + cb.len() - 1];
                    for (i, a) in ca.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        for (j, b) in cb.iter().enumerate() {
                            out[i + j] = out[i + j].add(&a.mul(b));
                        }
                    }
                    MPoly::normalize(*va, out)
                } else if va < vb {
                    // `other` only involves variables > va, so it acts as a scalar.
                    MPoly::normalize(*va, ca.iter().map(|c| c.mul(other)).collect())
                } else {
                    other.mul(self)
                }
            }
        }
    }

    fn scale_recursive(&self, s: &Rat) -> MPoly {
        match self {
            MPoly::Const(c) => MPoly::Const(c * s),
            MPoly::Poly { var, coeffs } => MPoly::Poly {
                var: *var,
                coeffs: coeffs.iter().map(|c| c.scale_recursive(s)).collect(),
            },
        }
    }

    pub fn pow(&self, exp: usize) -> MPoly {
        let mut result = MPoly::one();
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

    /// Coefficients of powers of `v`, constant first; entries do not involve `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        match self {
            MPoly::Const(_) => vec![self.clone()],
            MPoly::Poly { var, coeffs } => {
                if *var == v {
                    coeffs.clone()
                } else if *var > v {
                    vec![self.clone()]
                } else {
                    // Expand each coefficient and reattach the var^k monomial.
                    let mut out: Vec<MPoly> = vec![];
                    for (k, c) in coeffs.iter().enumerate() {
                        let mono = MPoly::var(*var).pow(k);
                        for (j, d) in c.coeffs_in(v).into_iter().enumerate() {
                            if d.is_zero() {
                                continue;
                            }
                            while out.len() <= j {
                                out.push(MPoly::zero());
                            }
                            out[j] = out[j].add(&d.mul(&mono));
                        }
                    }
                    if out.is_empty() {
                        out.push(MPoly::zero());
                    }
                    out
                }
            }
        }
    }

    /// Rebuild from coefficients of powers of `v`.
    pub fn from_coeffs_in(v: usize, coeffs: &[MPoly]) -> MPoly {
        let mut acc = MPoly::zero();
        let var = MPoly::var(v);
        for c in coeffs.iter().rev() {
            acc = acc.mul(&var).add(c);
        }
        acc
    }

    /// Full evaluation; `point[v]` is the value of variable `v`.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        match self {
            MPoly::Const(c) => c.clone(),
            MPoly::Poly { var, coeffs } => {
                let x = &point[*var];
                let mut acc = Rat::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * x + c.eval(point);
                }
                acc
            }
        }
    }

    /// Substitute a rational for one variable.
    pub fn subst(&self, v: usize, value: &Rat) -> MPoly {
        match self {
            MPoly::Const(_) => self.clone(),
            MPoly::Poly { var, coeffs } => {
                if *var == v {
                    let mut acc = MPoly::zero();
                    let val = MPoly::Const(value.clone());
                    for c in coeffs.iter().rev() {
                        acc = acc.mul(&val).add(c);
                    }
                    acc
                } else {
                    MPoly::normalize(*var, coeffs.iter().map(|c| c.subst(v, value)).collect())
                }
            }
        }
    }

    /// Exact division; the divisor must divide without remainder.
    pub fn exact_div(&self, div: &MPoly) -> Result<MPoly, AlgebraError> {
        if div.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(MPoly::zero());
        }
        if let MPoly::Const(c) = div {
            return Ok(self.scale_recursive(&c.recip()));
        }
        let dv = div.main_var().unwrap();
        match self.main_var() {
            None => Err(AlgebraError::InexactDivision),
            Some(sv) if sv > dv => Err(AlgebraError::InexactDivision),
            Some(sv) if sv < dv => {
                // The divisor is a scalar with respect to sv.
                let coeffs = self.coeffs_in(sv);
                let out = coeffs
                    .iter()
                    .map(|c| c.exact_div(div))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(MPoly::from_coeffs_in(sv, &out))
            }
            Some(sv) => {
                let mut num = self.coeffs_in(sv);
                let den = div.coeffs_in(sv);
                let dd = den.len() - 1;
                let lead = den.last().unwrap();
                let mut quot = vec![MPoly::zero(); num.len().saturating_sub(dd)];
                loop {
                    while num.last().is_some_and(MPoly::is_zero) {
                        num.pop();
                    }
                    if num.len() <= dd {
                        break;
                    }
                    let q = num.last().unwrap().exact_div(lead)?;
                    let shift = num.len() - 1 - dd;
                    for i in 0..=dd {
                        num[shift + i] = num[shift + i].sub(&q.mul(&den[i]));
                    }
                    quot[shift] = q;
                }
                if num.iter().all(MPoly::is_zero) {
                    Ok(MPoly::from_coeffs_in(sv, &quot))
                } else {
                    Err(AlgebraError::InexactDivision)
                }
            }
        }
    }

    /// Convert to a univariate polynomial in `v`; fails if any coefficient
    /// still involves another variable.
    pub fn to_upoly(&self, v: usize) -> Result<UPoly, AlgebraError> {
        let coeffs = self
            .coeffs_in(v)
            .into_iter()
            .map(|c| c.as_const().cloned().ok_or(AlgebraError::NotUnivariate))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UPoly::from_coeffs(coeffs))
    }

    /// Render with variable names `names[v]`.
    pub fn pretty(&self, names: &[String]) -> String {
        match self {
            MPoly::Const(c) => c.to_string(),
            MPoly::Poly { var, coeffs } => {
                let mut parts = vec![];
                for (i, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let base = match i {
                        0 => String::new(),
                        1 => names[*var].clone(),
                        _ => format!("{}^{}", names[*var], i),
                    };
                    let cs = c.pretty(names);
                    let needs_parens = matches!(c, MPoly::Poly { .. });
                    let term = if i == 0 {
                        cs
                    } else if cs == "1" {
                        base
                    } else if cs == "-1" {
                        format!("-{}", base)
                    } else if needs_parens {
                        format!("({})*{}", cs, base)
                    } else {
                        format!("{}*{}", cs, base)
                    };
                    parts.push(term);
                }
                parts.join(" + ").replace("+ -", "- ")
            }
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = match self {
            MPoly::Const(_) => 0,
            MPoly::Poly { .. } => {
                let mut v = 0;
                fn walk(p: &MPoly, max: &mut usize) {
                    if let MPoly::Poly { var, coeffs } = p {
                        *max = (*max).max(*var);
                        coeffs.iter().for_each(|c| walk(c, max));
                    }
                }
                walk(self, &mut v);
                v
            }
        };
        let names: Vec<String> = (0..=max).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.pretty(&names))
    }
}

/// Resultant of `f` and `g` with respect to `var`, eliminating that variable.
///
/// Vanishes exactly on the common-root locus in `var` (up to leading
/// coefficient degeneracies). Uses the subresultant remainder sequence to
/// control coefficient growth.
pub fn resultant(f: &MPoly, g: &MPoly, var: usize) -> Result<MPoly, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let df = f.degree_in(var);
    let dg = g.degree_in(var);
    if df == 0 && dg == 0 {
        return Err(AlgebraError::NoEliminationVariable);
    }
    if df == 0 {
        return Ok(f.pow(dg));
    }
    if dg == 0 {
        return Ok(g.pow(df));
    }
    Ok(resultant_cv(f.coeffs_in(var), g.coeffs_in(var)))
}

// -- polynomials with MPoly coefficients, used only by the resultant --

fn cv_deg(a: &[MPoly]) -> usize {
    a.len().saturating_sub(1)
}

fn cv_trim(mut a: Vec<MPoly>) -> Vec<MPoly> {
    while a.last().is_some_and(MPoly::is_zero) {
        a.pop();
    }
    a
}

fn cv_is_zero(a: &[MPoly]) -> bool {
    a.is_empty()
}

/// Pseudo-remainder of lc(g)^(deg f - deg g + 1) * f by g.
fn cv_pseudo_rem(f: &[MPoly], g: &[MPoly]) -> Vec<MPoly> {
    let dg = cv_deg(g);
    let lead = g.last().unwrap().clone();
    let mut rem: Vec<MPoly> = f.to_vec();
    let mut steps = cv_deg(f) + 1 - dg;
    while !cv_is_zero(&rem) && cv_deg(&rem) >= dg {
        let shift = cv_deg(&rem) - dg;
        let r_lead = rem.last().unwrap().clone();
        // rem <- lead * rem - r_lead * x^shift * g
        for c in rem.iter_mut() {
            *c = c.mul(&lead);
        }
        for i in 0..=dg {
            rem[shift + i] = rem[shift + i].sub(&r_lead.mul(&g[i]));
        }
        debug_assert!(rem.last().unwrap().is_zero());
        rem = cv_trim(rem);
        steps -= 1;
    }
    // Make up any skipped multiplier so the pseudo-remainder is exact.
    for _ in 0..steps {
        for c in rem.iter_mut() {
            *c = c.mul(&lead);
        }
    }
    rem
}

/// Subresultant resultant of two coefficient vectors (degrees >= 1).
fn resultant_cv(f: Vec<MPoly>, g: Vec<MPoly>) -> MPoly {
    let mut a = cv_trim(f);
    let mut b = cv_trim(g);
    let mut negate = false;
    if cv_deg(&a) < cv_deg(&b) {
        if cv_deg(&a) % 2 == 1 && cv_deg(&b) % 2 == 1 {
            negate = !negate;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut gc = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let da = cv_deg(&a);
        let db = cv_deg(&b);
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let delta = da - db;
        let rem = cv_pseudo_rem(&a, &b);
        a = b;
        let divisor = gc.mul(&h.pow(delta));
        b = cv_trim(
            rem.iter()
                .map(|c| c.exact_div(&divisor).expect("subresultant division is exact"))
                .collect(),
        );
        gc = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            gc.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant h update is exact")
        };
        if cv_is_zero(&b) {
            return MPoly::zero();
        }
        if cv_deg(&b) == 0 {
            let da = cv_deg(&a);
            let num = b[0].pow(da);
            let res = if da <= 1 {
                num
            } else {
                num.exact_div(&h.pow(da - 1))
                    .expect("subresultant final division is exact")
            };
            return if negate { res.neg() } else { res };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    // x = var 0, t = var 1
    fn x() -> MPoly {
        MPoly::var(0)
    }
    fn t() -> MPoly {
        MPoly::var(1)
    }

    #[test]
    fn substitution_case() {
        // res_x(x^2 - 2, x - t) = t^2 - 2
        let f = x().mul(&x()).sub(&MPoly::int(2));
        let g = x().sub(&t());
        let r = resultant(&f, &g, 0).unwrap();
        assert_eq!(r, t().mul(&t()).sub(&MPoly::int(2)));
    }

    #[test]
    fn linear_pair() {
        // res_x(x - 1, x - 3) = -2
        let f = x().sub(&MPoly::int(1));
        let g = x().sub(&MPoly::int(3));
        let r = resultant(&f, &g, 0).unwrap();
        assert_eq!(r, MPoly::int(-2));
    }

    #[test]
    fn shared_roots_vanish() {
        let f = x().mul(&x()).add(&t().mul(&x())).sub(&MPoly::int(5));
        assert!(resultant(&f, &f, 0).unwrap().is_zero());
    }

    #[test]
    fn constant_inputs_rejected() {
        let c = MPoly::int(3);
        assert_eq!(
            resultant(&c, &c, 0).unwrap_err(),
            AlgebraError::NoEliminationVariable
        );
    }

    #[test]
    fn specialization_matches_univariate_resultant() {
        // res_x(f, g) evaluated at t = tau equals the resultant of the
        // specialized polynomials whenever the leading coefficients survive.
        let f = x()
            .pow(3)
            .add(&t().mul(&x()))
            .add(&MPoly::int(2))
            .sub(&t().pow(2).mul(&x().pow(2)));
        let g = x().pow(2).mul(&MPoly::int(3)).add(&t().mul(&x())).sub(&MPoly::int(7));
        let r = resultant(&f, &g, 0).unwrap();
        for tau_num in -4i64..=4 {
            let tau = rat(tau_num, 1);
            if tau_num != 0 {
                // lc_x(f) = -t^2 vanishes at 0; skip that specialization.
                let fu = f.subst(1, &tau).to_upoly(0).unwrap();
                let gu = g.subst(1, &tau).to_upoly(0).unwrap();
                let direct = univariate_resultant(&fu, &gu);
                let specialized = r.subst(1, &tau).as_const().cloned().unwrap();
                assert_eq!(specialized, direct, "tau = {}", tau_num);
            }
        }
    }

    /// Independent oracle: resultant over Q via the Euclidean algorithm.
    fn univariate_resultant(a: &UPoly, b: &UPoly) -> Rat {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        if n == 0 {
            return crate::algebra::rat::pow_u(&b.coeff(0), m as u64);
        }
        if m == 0 {
            return crate::algebra::rat::pow_u(&a.coeff(0), n as u64);
        }
        let (_, r) = a.div_rem(b).unwrap();
        if r.is_zero() {
            return int(0);
        }
        let k = r.degree().unwrap();
        let sign = if (m * n) % 2 == 1 { int(-1) } else { int(1) };
        let lead_pow = crate::algebra::rat::pow_u(b.lead().unwrap(), (m - k) as u64);
        sign * lead_pow * univariate_resultant(b, &r)
    }

    #[test]
    fn exact_div_round_trip() {
        let f = x().pow(2).add(&t().mul(&x())).add(&MPoly::int(1));
        let g = t().pow(3).sub(&x()).add(&MPoly::int(4));
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&g).unwrap(), f);
        assert_eq!(prod.exact_div(&f).unwrap(), g);
        assert!(f.exact_div(&g).is_err());
    }

    #[test]
    fn eval_and_coeffs_in() {
        let f = x().mul(&t()).add(&t().pow(2)).sub(&MPoly::int(3));
        assert_eq!(f.eval(&[int(2), int(5)]), int(2) * int(5) + int(25) - int(3));
        let coeffs = f.coeffs_in(1);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[2], MPoly::one());
        assert_eq!(coeffs[1], x());
        // Rebuilding preserves the polynomial.
        assert_eq!(MPoly::from_coeffs_in(1, &coeffs), f);
    }
}
