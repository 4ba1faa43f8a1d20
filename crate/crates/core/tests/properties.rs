use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crsing::algebra::weierstrass_divide;
use crsing::extend::{cr_homogeneous_basis, extend_homogeneous};
use crsing::verify::{random_holomorphic, random_invertible, random_quadric};
use crsing::{GaussRational, Manifold, Monomial, Poly, Quadric, Var};

fn coeff() -> impl Strategy<Value = GaussRational> {
    (-5i64..=5, 1i64..=3, -5i64..=5, 1i64..=3).prop_map(|(a, b, c, d)| GaussRational::from_frac(a, b, c, d))
}

fn poly(n: usize, with_w: bool) -> impl Strategy<Value = Poly> {
    let mono = proptest::collection::vec(0u32..3, 2 * n + 1).prop_map(move |e| {
        let (z, rest) = e.split_at(n);
        let (zb, w) = rest.split_at(n);
        Monomial::from_parts(z, zb, if with_w { w[0] } else { 0 })
    });
    proptest::collection::vec((mono, coeff()), 0..5).prop_map(move |t| Poly::from_terms(n, t))
}

fn quadric(seed: u64, n: usize) -> Quadric {
    random_quadric(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

fn vars(n: usize) -> Vec<Var> {
    (1..=n).flat_map(|i| [Var::Z(i), Var::Zb(i)]).chain([Var::W]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly(2, true), b in poly(2, true), c in poly(2, true)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&(&a + &b) - &b) - &a).is_zero());
    }

    #[test]
    fn conjugation_is_an_involutive_ring_map(a in poly(2, false), b in poly(2, false)) {
        let ca = a.conjugate().unwrap();
        prop_assert_eq!(ca.conjugate().unwrap(), a.clone());
        prop_assert_eq!((&a * &b).conjugate().unwrap(), &ca * &b.conjugate().unwrap());
    }

    #[test]
    fn leibniz_rule(a in poly(2, true), b in poly(2, true)) {
        for v in vars(2) {
            let lhs = (&a * &b).differentiate(v).unwrap();
            let rhs = &(&a.differentiate(v).unwrap() * &b) + &(&a * &b.differentiate(v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn homogeneous_parts_partition(a in poly(3, true), weighted in any::<bool>()) {
        let parts = a.homogeneous_parts(weighted);
        let sum = parts.values().fold(Poly::zero(3), |acc, p| &acc + p);
        prop_assert_eq!(sum, a);
        for (d, p) in &parts {
            prop_assert!(p.is_homogeneous(weighted));
            prop_assert_eq!(if weighted { p.weighted_degree() } else { p.total_degree() }, Some(*d));
        }
    }

    #[test]
    fn weierstrass_reconstructs_dividend(p in poly(2, true), seed in any::<u64>(), shift in coeff()) {
        // Q - w has degree one in w with leading coefficient -1
        let q = quadric(seed, 2).to_poly();
        let divisor = &(&q - &Poly::var(2, Var::W)) + &Poly::constant(2, shift);
        let (quot, rem) = weierstrass_divide(&p, &divisor, Var::W).unwrap();
        prop_assert_eq!(&(&quot * &divisor) + &rem, p);
        prop_assert_eq!(rem.degree_in(Var::W), 0);
    }

    #[test]
    fn restriction_of_holomorphic_is_cr(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Manifold::from_quadric(random_quadric(&mut rng, n));
        let f = random_holomorphic(&mut rng, n, 5).substitute_w(m.rho()).unwrap();
        prop_assert!(m.is_cr(&f).unwrap().holds);
    }

    #[test]
    fn cr_fields_annihilate_rho(seed in any::<u64>(), n in 2usize..=3) {
        let m = Manifold::from_quadric(quadric(seed, n));
        for l in m.cr_fields().unwrap() {
            prop_assert!(l.apply(m.rho()).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_condition_is_invariant(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quadric(&mut rng, n);
        let t = random_invertible(&mut rng, n);
        prop_assert_eq!(q.transform(&t).unwrap().rank_condition(), q.rank_condition());
    }
}

/// When `Q` contains `zb1^2`, the remainder of `f` on division by `Q - w`
/// in `zb1` is a polynomial of `zb1`-degree below two congruent to `f`; if
/// `f = F(z, Q)` that remainder is `F`. This recovers extensions without
/// any linear algebra.
#[test]
fn extension_matches_weierstrass_remainder() {
    let mut checked = 0;
    for seed in 0..40 {
        let q = quadric(seed, 2);
        if q.b().get(0, 0).is_zero() || q.rank_condition() < 2 {
            continue;
        }
        let divisor = &q.to_poly() - &Poly::var(2, Var::W);
        for d in 1..=4 {
            for f in cr_homogeneous_basis(&q, d).basis {
                let (_, rem) = weierstrass_divide(&f, &divisor, Var::Zb(1)).unwrap();
                assert!(rem.is_holomorphic(), "Q = {}, f = {f}", q.to_poly());
                assert_eq!(extend_homogeneous(&q, &f).unwrap().f, rem);
                checked += 1;
            }
        }
    }
    assert!(checked > 50, "only {checked} cases");
}
