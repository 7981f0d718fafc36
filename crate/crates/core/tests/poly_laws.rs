use nambu_forge::{Poly, PolyDerivation};
use proptest::prelude::*;

fn poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -3i64..=3), 0..5).prop_map(move |terms| {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p += &Poly::monomial(nvars, e, nambu_forge::kernel::int(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly(2), b in poly(2), f in poly(3), g in poly(3)) {
        let images = [f, g];
        let lhs = (&a * &b).substitute(&images).unwrap();
        let rhs = &a.substitute(&images).unwrap() * &b.substitute(&images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials_obey_leibniz(a in poly(3), b in poly(3), var in 0usize..3) {
        let lhs = (&a * &b).partial(var).unwrap();
        let rhs = &(&a.partial(var).unwrap() * &b) + &(&a * &b.partial(var).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_round_trips(a in poly(3)) {
        prop_assert_eq!(Poly::parse(&a.to_string(), 3).unwrap(), a);
    }

    #[test]
    fn derivation_commutator_is_a_derivation(
        u in prop::collection::vec(poly(2), 2),
        v in prop::collection::vec(poly(2), 2),
        f in poly(2),
        g in poly(2),
    ) {
        let (u, v) = (PolyDerivation::new(u), PolyDerivation::new(v));
        let w = u.commutator(&v);
        let apply = |d: &PolyDerivation, p: &Poly| d.apply(p).unwrap();
        let lhs = apply(&w, &(&f * &g));
        let rhs = &(&apply(&w, &f) * &g) + &(&f * &apply(&w, &g));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(apply(&w, &f), &apply(&u, &apply(&v, &f)) - &apply(&v, &apply(&u, &f)));
    }
}
