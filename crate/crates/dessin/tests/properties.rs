//! Property suites over randomized inputs: the algebra kernels against
//! independent oracles, valuation axioms, polygon accounting, and the
//! passport/tree invariants.

use dessin::algebra::poly::UPoly;
use dessin::algebra::rat::{int, pow2_neg, rat, Rat};
use dessin::algebra::roots::{complex_roots, CRat};
use dessin::algebra::{factor_over_q, resultant, MPoly};
use dessin::padic::{newton_polygon, val_p_int};
use dessin::passport::{Color, Passport};
use dessin::trees::enumerate_trees;
use num_traits::Zero;
use proptest::prelude::*;

fn small_poly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1)
        .prop_map(|coeffs| UPoly::from_int_coeffs(&coeffs))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    small_poly(max_deg).prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// res(f, g) = 0 exactly when gcd(f, g) is nonconstant (cross-checked
    /// through the univariate gcd).
    #[test]
    fn resultant_vanishes_iff_common_factor(f in nonzero_poly(6), g in nonzero_poly(6)) {
        prop_assume!(f.degree() > Some(0) || g.degree() > Some(0));
        let fm = upoly_to_mpoly(&f, 0);
        let gm = upoly_to_mpoly(&g, 0);
        let res = resultant(&fm, &gm, 0).unwrap();
        let gcd_nonconstant = f.gcd(&g).degree().is_some_and(|d| d > 0);
        prop_assert_eq!(res.is_zero(), gcd_nonconstant);
    }

    /// Multiplying the factorization back out reproduces the input exactly.
    #[test]
    fn factorization_expands_back(f in nonzero_poly(8)) {
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.expand(), f);
        for (g, _) in &fac.factors {
            prop_assert!(g.lead().unwrap() > &Rat::zero());
            prop_assert!(g.to_int_coeffs().is_some());
        }
    }

    /// Products of random irreducible quadratics/cubics are recovered as a
    /// multiset.
    #[test]
    fn factor_recovers_irreducible_product(
        picks in prop::collection::vec((0usize..IRREDUCIBLES.len(), 1u32..=2), 2..=4)
    ) {
        let mut f = UPoly::one();
        let mut expected: Vec<(UPoly, u32)> = vec![];
        for (idx, mult) in picks {
            let g = UPoly::from_int_coeffs(IRREDUCIBLES[idx]);
            f = f.mul(&g.pow(mult));
            match expected.iter_mut().find(|(h, _)| *h == g) {
                Some((_, m)) => *m += mult,
                None => expected.push((g, mult)),
            }
        }
        prop_assume!(f.degree().unwrap() <= 24);
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.expand(), f);
        let mut got = fac.factors.clone();
        got.sort_by(|(a, _), (b, _)| a.coeffs().cmp(b.coeffs()));
        expected.sort_by(|(a, _), (b, _)| a.coeffs().cmp(b.coeffs()));
        prop_assert_eq!(got, expected);
    }

    /// Vieta sums and products from the numeric roots match the coefficients
    /// within the typed residual bound.
    #[test]
    fn roots_satisfy_vieta(f in nonzero_poly(6)) {
        prop_assume!(f.degree().is_some_and(|d| d >= 1));
        let sf = f.squarefree_part().unwrap();
        prop_assume!(sf.degree().is_some_and(|d| d >= 1));
        let bits = 128u32;
        let roots = complex_roots(&sf, bits).unwrap();
        let d = sf.degree().unwrap();
        prop_assert_eq!(roots.len(), d);
        let sum = roots.iter().fold(CRat::zero(), |a, r| a.add(r));
        let prod = roots.iter().fold(CRat::from_rat(int(1)), |a, r| a.mul(r));
        let lead = sf.lead().unwrap().clone();
        let expect_sum = CRat::from_rat(-(sf.coeff(d - 1) / &lead));
        let sign = if d % 2 == 1 { -int(1) } else { int(1) };
        let expect_prod = CRat::from_rat(sign * sf.coeff(0) / lead);
        // Comparison at the 2^(-bits/2) scale, squared.
        let tol = pow2_neg(bits / 2) * int(d as i64) * int(d as i64);
        prop_assert!(sum.sub(&expect_sum).norm_sq() < tol);
        prop_assert!(prod.sub(&expect_prod).norm_sq() < tol);
    }

    /// squarefree_part(f * g^2) has the same root set as f * g for coprime
    /// squarefree f, g.
    #[test]
    fn squarefree_of_square_product(f in nonzero_poly(4), g in nonzero_poly(4)) {
        let f = f.squarefree_part().unwrap();
        let g = g.squarefree_part().unwrap();
        prop_assume!(f.degree() > Some(0) && g.degree() > Some(0));
        prop_assume!(f.gcd(&g).degree() == Some(0));
        let lhs = f.mul(&g.pow(2)).squarefree_part().unwrap();
        let rhs = f.mul(&g).squarefree_part().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// v(ab) = v(a) + v(b) and v(a+b) >= min(v(a), v(b)).
    #[test]
    fn valuation_axioms(
        an in -400i64..=400, ad in 1i64..=60,
        bn in -400i64..=400, bd in 1i64..=60,
        pidx in 0usize..4
    ) {
        let p = [2u32, 3, 5, 7][pidx];
        prop_assume!(an != 0 && bn != 0);
        let a = rat(an, ad);
        let b = rat(bn, bd);
        let va = val_p_int(&a, p);
        let vb = val_p_int(&b, p);
        prop_assert_eq!(val_p_int(&(&a * &b), p), va + vb);
        let s = &a + &b;
        if !s.is_zero() {
            prop_assert!(val_p_int(&s, p) >= va.min(vb));
        }
    }

    /// Newton polygon accounting: segment counts sum to the degree and the
    /// finite height drop matches the end coefficients.
    #[test]
    fn polygon_accounting(f in nonzero_poly(8), pidx in 0usize..3) {
        let p = [2u32, 3, 5][pidx];
        let d = f.degree().unwrap();
        let np = newton_polygon(&f, p).unwrap();
        prop_assert_eq!(np.degree(), d as u64);
        let low = (0..=d).find(|&i| !f.coeff(i).is_zero()).unwrap();
        let drop = int(val_p_int(&f.coeff(low), p)) - int(val_p_int(&f.coeff(d), p));
        prop_assert_eq!(np.total_drop(), drop);
    }

    /// Decomposability is a property of the degree multiset: shuffling the
    /// input order never changes the verdict or the witness.
    #[test]
    fn decomposability_is_permutation_invariant(seed in 0u64..1000) {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(seed);
        let n = 12u64;
        let nw = rng.random_range(1..=n) as usize;
        let mut white = vec![1u32; nw];
        for _ in 0..(n - nw as u64) {
            let i = rng.random_range(0..nw);
            white[i] += 1;
        }
        let nb = (n + 1) as usize - nw;
        let mut black = vec![1u32; nb];
        for _ in 0..(n - nb as u64) {
            let i = rng.random_range(0..nb);
            black[i] += 1;
        }
        let p1 = Passport::new(white.clone(), black.clone()).unwrap();
        // shuffle
        for i in (1..white.len()).rev() {
            let j = rng.random_range(0..=i);
            white.swap(i, j);
        }
        let p2 = Passport::new(white, black).unwrap();
        for prime in [2u32, 3] {
            let a = p1.is_decomposable(prime, Color::White).unwrap();
            let b = p2.is_decomposable(prime, Color::White).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}

/// A pool of irreducible quadratics and cubics (negative discriminants or no
/// rational roots and degree <= 3, so irreducibility is elementary).
const IRREDUCIBLES: &[&[i64]] = &[
    &[1, 0, 1],     // t^2 + 1
    &[1, 1, 1],     // t^2 + t + 1
    &[-1, -1, 1],   // t^2 - t - 1
    &[6, -8, 3],    // 3t^2 - 8t + 6
    &[2, 0, 0, 1],  // t^3 + 2
    &[5, 1, 0, 2],  // 2t^3 + t + 5
    &[-3, 9, 0, 1], // t^3 + 9t - 3 (Eisenstein at 3)
];

fn upoly_to_mpoly(f: &UPoly, var: usize) -> MPoly {
    let mut acc = MPoly::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(&MPoly::var(var)).add(&MPoly::constant(c.clone()));
    }
    acc
}

/// Enumerated trees and the passport round-trip on a mixed bag of passports,
/// including non-family shapes.
#[test]
fn enumeration_passport_round_trip() {
    for text in [
        "2,2,1/2,2,1",
        "3,2,1/2,2,1,1",
        "4,1,1/3,1,1,1",
        "2,2,2/2,2,1,1",
    ] {
        let p = Passport::parse(text).unwrap();
        let trees = enumerate_trees(&p).unwrap();
        assert!(!trees.is_empty(), "{} admits at least one tree", text);
        for t in &trees {
            assert_eq!(t.passport_of(), p, "{}", text);
            assert_eq!(t.edges(), p.edges());
        }
        // Codes pairwise distinct.
        let codes: std::collections::BTreeSet<_> =
            trees.iter().map(|t| t.canonical_code()).collect();
        assert_eq!(codes.len(), trees.len());
    }
}

/// Rescaling divides by a minimal-valuation black coordinate, so every black
/// coordinate is p-integral afterwards, the pivot lands at 1, and 0 stays 0.
#[test]
fn rescale_black_side_integrality() {
    use dessin::shabat::normalize_rescale;
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0xbead);
    for _ in 0..200 {
        let p = [2u32, 3, 5][rng.random_range(0..3)];
        let mut white = vec![Rat::zero()];
        for _ in 0..rng.random_range(1..4) {
            white.push(rat(rng.random_range(-30i64..=30), rng.random_range(1i64..=27)));
        }
        let mut black = vec![int(1)];
        for _ in 0..rng.random_range(1..4) {
            let num = rng.random_range(1i64..=30);
            black.push(rat(num, rng.random_range(1i64..=27)));
        }
        let (w2, b2) = normalize_rescale(&white, &black, p).unwrap();
        assert!(w2[0].is_zero());
        assert!(b2.iter().any(|y| y == &int(1)));
        for y in &b2 {
            assert!(val_p_int(y, p) >= 0, "black {} at p {}", y, p);
        }
    }
    // The documented examples make the white side integral too.
    let (w, b) = normalize_rescale(
        &[int(0), rat(8, 3), rat(1, 3)],
        &[int(1), rat(4, 3), rat(1, 9)],
        3,
    )
    .unwrap();
    for c in w.iter().chain(b.iter()) {
        if !c.is_zero() {
            assert!(val_p_int(c, 3) >= 0);
        }
    }
}

/// Mirror closes over the enumerated set and fixes exactly the symmetric
/// trees.
#[test]
fn mirror_closure() {
    for text in ["3,2,1/2,2,1,1", "6,2,1,1/4,1^6"] {
        let p = Passport::parse(text).unwrap();
        let trees = enumerate_trees(&p).unwrap();
        let codes: std::collections::BTreeSet<_> =
            trees.iter().map(|t| t.canonical_code()).collect();
        for t in &trees {
            assert!(codes.contains(&t.mirror().canonical_code()));
            assert_eq!(
                t.mirror().mirror().canonical_code(),
                t.canonical_code()
            );
        }
    }
}
