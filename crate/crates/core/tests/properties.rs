mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use tatecalc::catalog::{motive_gl, motive_gr, Signature};
use tatecalc::poly::Poly2;
use tatecalc::realization::{gaussian_binomial, grassmannian_betti, realize_motive};
use tatecalc::tate::{Bidegree, HeightMode, TateMotive};

fn bidegree() -> impl Strategy<Value = Bidegree> {
    (0i64..12, 0i64..8).prop_map(|(p, q)| Bidegree::new(p, q))
}

fn motive() -> impl Strategy<Value = TateMotive> {
    prop::collection::vec((bidegree(), 1u32..5), 0..6).prop_map(TateMotive::from_summands)
}

proptest! {
    #[test]
    fn tensor_is_commutative_and_associative(a in motive(), b in motive(), c in motive()) {
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        prop_assert_eq!(a.tensor(&TateMotive::unit()), a.clone());
        prop_assert!(a.tensor(&TateMotive::zero()).is_zero());
    }

    #[test]
    fn tensor_distributes_and_multiplies_poincare(a in motive(), b in motive(), c in motive()) {
        prop_assert_eq!(a.tensor(&b.direct_sum(&c)), a.tensor(&b).direct_sum(&a.tensor(&c)));
        prop_assert_eq!(a.tensor(&b).poincare(), &a.poincare() * &b.poincare());
        prop_assert_eq!(a.direct_sum(&b).poincare(), &a.poincare() + &b.poincare());
    }

    #[test]
    fn twist_is_tensor_with_a_tate_motive(a in motive(), b in bidegree()) {
        prop_assert_eq!(a.twist(b), a.tensor(&TateMotive::tate(b)));
    }

    #[test]
    fn height_filter_partitions(a in motive(), m in -2i64..6) {
        let eq = a.height_filter(m, HeightMode::Eq);
        let above = a.height_filter(m + 1, HeightMode::Ge);
        prop_assert_eq!(eq.direct_sum(&above), a.height_filter(m, HeightMode::Ge));
        let all = (-30..=30).fold(TateMotive::zero(), |acc, h| acc.direct_sum(&a.height_filter(h, HeightMode::Eq)));
        prop_assert_eq!(all, a);
    }

    #[test]
    fn cone_recovers_the_complement(a in motive(), b in motive()) {
        let whole = a.direct_sum(&b);
        prop_assert_eq!(TateMotive::cone_of_inclusion(&a, &whole).unwrap(), b.clone());
        prop_assert_eq!(whole.difference(&b).unwrap(), a.clone());
        if !a.is_zero() {
            prop_assert!(TateMotive::cone_of_inclusion(&whole.direct_sum(&a), &whole).is_err());
        }
    }

    #[test]
    fn poincare_is_a_complete_invariant(a in motive(), b in motive()) {
        prop_assert_eq!(a == b, a.poincare() == b.poincare());
        prop_assert!(a.poincare().has_nonnegative_coefficients());
    }

    #[test]
    fn motive_json_round_trip(a in motive(), big in 0u32..3) {
        let mut a = a;
        if big > 0 {
            // multiplicity beyond u64
            a.insert(Bidegree::new(1, 1), BigUint::from(u64::MAX) * BigUint::from(big + 1));
        }
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<TateMotive>(&json).unwrap(), a);
    }

    #[test]
    fn poly_text_round_trip(a in motive(), b in motive()) {
        let p = &a.poincare() - &b.poincare();
        prop_assert_eq!(p.to_string().parse::<Poly2>().unwrap(), p);
    }

    #[test]
    fn realization_is_multiplicative(a in motive(), b in motive()) {
        prop_assert_eq!(realize_motive(&a.tensor(&b)), realize_motive(&a).convolve(&realize_motive(&b)));
    }

    #[test]
    fn signature_text_round_trip(v in prop::collection::btree_set(0u32..20, 1..5)) {
        let sig = Signature::new(v.into_iter().collect()).unwrap();
        prop_assert_eq!(sig.to_string().parse::<Signature>().unwrap(), sig.clone());
        let json = serde_json::to_string(&sig).unwrap();
        prop_assert_eq!(serde_json::from_str::<Signature>(&json).unwrap(), sig);
    }
}

#[test]
fn catalog_constructors_stay_in_the_first_quadrant() {
    for n in 0..=8 {
        assert!(motive_gl(n).unwrap().is_first_quadrant());
        for m in 0..=n {
            assert!(motive_gr(m, n).unwrap().is_first_quadrant());
        }
    }
    for sig in common::signatures(3, 6) {
        assert!(
            tatecalc::catalog::motive_a(&sig)
                .unwrap()
                .is_first_quadrant(),
            "{sig}"
        );
        assert!(
            tatecalc::catalog::motive_fl(&sig).is_first_quadrant(),
            "{sig}"
        );
    }
}

#[test]
fn catalog_agrees_with_bitmask_oracles() {
    for n in 0..=10 {
        assert_eq!(
            common::motive_map(&motive_gl(n).unwrap()),
            common::gl_by_bitmask(n)
        );
        for m in 0..=n {
            assert_eq!(
                common::motive_map(&motive_gr(m, n).unwrap()),
                common::gr_by_subsets(m, n)
            );
        }
    }
    for sig in common::signatures(3, 6) {
        let a = tatecalc::catalog::motive_a(&sig).unwrap();
        assert_eq!(common::motive_map(&a), common::a_by_oracle(&sig), "{sig}");
    }
}

#[test]
fn gaussian_routes_agree() {
    for n in 0..=12 {
        for m in 0..=n {
            let product: Vec<u64> = gaussian_binomial(n, m)
                .unwrap()
                .iter()
                .map(|c| u64::try_from(c).unwrap())
                .collect();
            assert_eq!(product, common::gaussian_by_subsets(n, m), "[{n} {m}]");
            let betti = grassmannian_betti(m, n).unwrap();
            for (k, c) in product.iter().enumerate() {
                assert_eq!(betti.rank(2 * k as i64), BigUint::from(*c));
            }
        }
    }
}

#[test]
fn grassmannian_counts_are_binomials() {
    for n in 0..=12u32 {
        let mut binom = 1u64;
        for m in 0..=n {
            assert_eq!(motive_gr(m, n).unwrap().rank(), BigUint::from(binom));
            binom = binom * (n - m) as u64 / (m + 1) as u64;
        }
    }
}
