//! Property tests over generated inputs: ring laws, the grading, both
//! symbolic compactness routes, parser round trips, and angle arithmetic.

use num::{BigRational, One, Signed};
use proptest::prelude::*;

use toeplitzq::{parse, CircleMeasure, Element, GaussianRational, Monomial, TurnAngle, Value};

fn coeff() -> impl Strategy<Value = GaussianRational> {
    ((-4i64..=4, 1i64..=4), (-4i64..=4, 1i64..=4)).prop_map(|((rp, rq), (ip, iq))| {
        GaussianRational::new(
            BigRational::new(rp.into(), rq.into()),
            BigRational::new(ip.into(), iq.into()),
        )
    })
}

fn element() -> impl Strategy<Value = Element> {
    proptest::collection::vec(((0u64..8, 0u64..8), coeff()), 0..5).prop_map(|terms| {
        Element::from_terms(
            terms
                .into_iter()
                .map(|((n, m), c)| (Monomial::new(n, m), c)),
        )
    })
}

fn measure_with_denominators(
    denoms: std::ops::RangeInclusive<i64>,
) -> impl Strategy<Value = CircleMeasure> {
    let atom = ((0i64..8, denoms), (-3i64..=3, 1i64..=3));
    let density = (-3i64..=3, -3i64..=3);
    (
        proptest::collection::vec(atom, 0..4),
        proptest::collection::vec(density, 0..3),
    )
        .prop_map(|(atoms, density)| {
            let mut m = CircleMeasure::zero();
            for ((p, q), (wp, wq)) in atoms {
                m.add_atom(
                    TurnAngle::ratio(p, q),
                    Value::Exact(GaussianRational::ratio(wp, wq)),
                );
            }
            for (k, c) in density {
                m.add_density(k, Value::from_int(c));
            }
            m
        })
}

fn measure() -> impl Strategy<Value = CircleMeasure> {
    measure_with_denominators(1..=8)
}

/// Quarter-turn atoms only, so characters and hence convolutions stay in
/// the exact tier.
fn quarter_measure() -> impl Strategy<Value = CircleMeasure> {
    measure_with_denominators(4..=4)
}

proptest! {
    #[test]
    fn product_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn adjoint_is_an_antihomomorphic_involution(a in element(), b in element()) {
        prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn antipode_is_an_antihomomorphic_involution(a in element(), b in element()) {
        prop_assert_eq!((&a * &b).antipode(), &b.antipode() * &a.antipode());
        prop_assert_eq!(a.antipode().antipode(), a);
    }

    #[test]
    fn graded_components_reassemble(a in element()) {
        let (lo, hi) = a.index_range();
        let mut total = Element::zero();
        for k in lo..=hi {
            let g = a.graded_component(k);
            for (m, _) in g.terms() {
                prop_assert_eq!(m.index(), k);
            }
            total = &total + &g;
        }
        prop_assert_eq!(total, a);
    }

    #[test]
    fn compactness_equals_vanishing_symbol(a in element()) {
        prop_assert_eq!(a.is_compact(), a.symbol().is_zero());
    }

    #[test]
    fn symbol_is_multiplicative(a in element(), b in element()) {
        prop_assert_eq!((&a * &b).symbol(), a.symbol().mul(&b.symbol()));
    }

    #[test]
    fn element_display_parses_back(a in element()) {
        let text = a.to_string();
        let back = parse::parse_element(&text).unwrap();
        prop_assert_eq!(back, a, "display was {}", text);
    }

    #[test]
    fn monomial_index_is_additive(an in 0u64..100_000, am in 0u64..100_000,
                                  bn in 0u64..100_000, bm in 0u64..100_000) {
        let a = Monomial::new(an, am);
        let b = Monomial::new(bn, bm);
        prop_assert_eq!(a.mul(b).index(), a.index() + b.index());
    }

    #[test]
    fn monomial_product_is_associative(an in 0u64..50, am in 0u64..50,
                                       bn in 0u64..50, bm in 0u64..50,
                                       cn in 0u64..50, cm in 0u64..50) {
        let a = Monomial::new(an, am);
        let b = Monomial::new(bn, bm);
        let c = Monomial::new(cn, cm);
        prop_assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
    }

    #[test]
    fn turn_angles_stay_in_one_turn(p in -60i64..=60, q in 1i64..=12,
                                    r in -60i64..=60, s in 1i64..=12) {
        let a = TurnAngle::ratio(p, q);
        let b = TurnAngle::ratio(r, s);
        for t in [&a, &b, &a.add(&b)] {
            prop_assert!(!t.fraction().is_negative());
            prop_assert!(t.fraction() < &BigRational::one());
        }
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn measure_convolution_commutes_exactly_on_quarter_turns(
        mu in quarter_measure(), nu in quarter_measure()
    ) {
        // On the exact tier equality is structural; the floating tier only
        // commutes up to rounding and is covered by the fourier property.
        prop_assert_eq!(mu.convolve(&nu), nu.convolve(&mu));
    }

    #[test]
    fn measure_convolution_respects_fourier(mu in measure(), nu in measure()) {
        // Both sides stay exact for exact inputs, so equality is strict.
        for k in -6..=6i64 {
            let lhs = mu.convolve(&nu).fourier(k);
            let rhs = mu.fourier(k).mul(&nu.fourier(k));
            prop_assert!(lhs.approx_eq(&rhs, 1e-12), "at k={}: {} vs {}", k, lhs, rhs);
        }
    }
}
