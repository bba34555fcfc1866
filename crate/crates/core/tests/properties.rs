//! Property tests for the algebraic laws the library relies on.

use graded_tl::graded::{random_graded_element, GradedElement};
use graded_tl::pairing::{DiagramFilter, Pairing};
use graded_tl::scalar::Scalar;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-16i64..=16, -6i64..=6), 0..5).prop_map(|terms| {
        let mut acc = Scalar::zero();
        for (e, c) in terms {
            acc += Scalar::monomial(BigRational::from_integer(c.into()), e);
        }
        acc
    })
}

proptest! {
    #[test]
    fn scalar_ring_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
    }

    #[test]
    fn evaluate_is_a_ring_homomorphism(a in scalar_strategy(), b in scalar_strategy(), s0 in 0.5f64..2.0) {
        let prod = (&a * &b).evaluate(s0).unwrap();
        let parts = a.evaluate(s0).unwrap() * b.evaluate(s0).unwrap();
        let scale = prod.abs().max(parts.abs()).max(1.0);
        prop_assert!((prod - parts).abs() <= 1e-12 * scale);
        let sum = (&a + &b).evaluate(s0).unwrap();
        let sum_parts = a.evaluate(s0).unwrap() + b.evaluate(s0).unwrap();
        prop_assert!((sum - sum_parts).abs() <= 1e-12 * scale);
    }

    #[test]
    fn scalar_display_roundtrips(a in scalar_strategy()) {
        let text = a.to_string();
        let back: Scalar = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn compose_is_associative_with_loops(
        (b, m1, m2, t) in (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2),
        seed in any::<u32>(),
    ) {
        // Interface sizes are doubled so every pairing exists.
        let (b, m1, m2, t) = (2 * b, 2 * m1, 2 * m2, 2 * t);
        let lower = Pairing::enumerate(b, m1, DiagramFilter::All).unwrap();
        let middle = Pairing::enumerate(m1, m2, DiagramFilter::All).unwrap();
        let upper = Pairing::enumerate(m2, t, DiagramFilter::All).unwrap();
        prop_assume!(!lower.is_empty() && !middle.is_empty() && !upper.is_empty());
        let s = seed as usize;
        let p = &lower[s % lower.len()];
        let q = &middle[(s / 7) % middle.len()];
        let r = &upper[(s / 49) % upper.len()];
        let (pq, l1) = p.compose(q).unwrap();
        let (pqr_left, l2) = pq.compose(r).unwrap();
        let (qr, r1) = q.compose(r).unwrap();
        let (pqr_right, r2) = p.compose(&qr).unwrap();
        prop_assert_eq!(pqr_left, pqr_right);
        prop_assert_eq!(l1 + l2, r1 + r2);
    }

    #[test]
    fn adjoint_swaps_epi_and_monic(
        (b, t) in (0usize..=3, 0usize..=3),
        seed in any::<u32>(),
    ) {
        let (b, t) = (2 * b, 2 * t);
        let all = Pairing::enumerate(b, t, DiagramFilter::All).unwrap();
        prop_assume!(!all.is_empty());
        let d = &all[seed as usize % all.len()];
        let c = d.classify();
        let ca = d.adjoint().classify();
        prop_assert_eq!(ca.is_monic, c.is_epi);
        prop_assert_eq!(ca.is_epi, c.is_monic);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn star_is_associative_on_random_elements(seed in any::<u64>(), k in 0usize..=1) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = random_graded_element(&mut rng, k, 2, 2);
        let b = random_graded_element(&mut rng, k, 2, 2);
        let c = random_graded_element(&mut rng, k, 2, 2);
        let lhs = a.star(&b).unwrap().star(&c).unwrap();
        let rhs = a.star(&b.star(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn involution_is_an_anti_homomorphism(seed in any::<u64>(), k in 0usize..=1) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = random_graded_element(&mut rng, k, 2, 2);
        let b = random_graded_element(&mut rng, k, 2, 2);
        prop_assert_eq!(
            a.star(&b).unwrap().involution(),
            b.involution().star(&a.involution()).unwrap()
        );
        prop_assert_eq!(
            a.bullet(&b).unwrap().involution(),
            b.involution().bullet(&a.involution()).unwrap()
        );
    }

    #[test]
    fn inner_product_is_the_trace_form(seed in any::<u64>(), k in 0usize..=1) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = random_graded_element(&mut rng, k, 2, 2);
        let b = random_graded_element(&mut rng, k, 2, 2);
        let ip = a.inner_orth(&b).unwrap();
        let tr = a.star(&b.involution()).unwrap().trace();
        prop_assert_eq!(ip, tr);
    }

    #[test]
    fn trace_is_cyclic(seed in any::<u64>(), k in 0usize..=1) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = random_graded_element(&mut rng, k, 2, 2);
        let b = random_graded_element(&mut rng, k, 2, 2);
        prop_assert_eq!(a.star(&b).unwrap().trace(), b.star(&a).unwrap().trace());
    }

    #[test]
    fn unit_is_neutral(seed in any::<u64>(), k in 0usize..=2) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = random_graded_element(&mut rng, k, 2, 2);
        let one = GradedElement::unit(k);
        prop_assert_eq!(&one.star(&a).unwrap(), &a);
        prop_assert_eq!(&a.star(&one).unwrap(), &a);
        prop_assert_eq!(&one.bullet(&a).unwrap(), &a);
    }
}
