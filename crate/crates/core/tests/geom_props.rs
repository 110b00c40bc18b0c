use proptest::prelude::*;
use sklyanin_core::geom::{
    halfdim_consistency, isotropic_example_model, quadric_example_model, DivisorClass, DivisorClassLattice,
};
use sklyanin_core::leafdim::catalog::Example;

fn models() -> Vec<DivisorClassLattice> {
    vec![isotropic_example_model(3).unwrap().0, quadric_example_model(3).unwrap().0]
}

fn class(rank: usize, raw: &[i64]) -> DivisorClass {
    DivisorClass::new(raw[..rank].to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn intersection_is_symmetric_and_bilinear(
        a in prop::collection::vec(-20i64..=20, 6),
        b in prop::collection::vec(-20i64..=20, 6),
        c in prop::collection::vec(-20i64..=20, 6),
        m in -5i64..=5,
    ) {
        for lat in models() {
            let r = lat.rank();
            let (a, b, c) = (class(r, &a), class(r, &b), class(r, &c));
            prop_assert_eq!(lat.intersect(&a, &b).unwrap(), lat.intersect(&b, &a).unwrap());
            let lhs = lat.intersect(&a.scale(m).add(&b), &c).unwrap();
            let rhs = m * lat.intersect(&a, &c).unwrap() + lat.intersect(&b, &c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn adjunction_is_integral_on_models(a in prop::collection::vec(-20i64..=20, 6)) {
        for lat in models() {
            let c = class(lat.rank(), &a);
            prop_assert!(lat.arithmetic_genus(&c).is_ok());
        }
    }
}

#[test]
fn example_chains() {
    for n in 2..=5usize {
        let n64 = n as i64;
        let iso = halfdim_consistency(Example::Isotropic, n, 0).unwrap();
        let values: Vec<i64> = iso.chain.iter().map(|s| s.value).collect();
        assert_eq!(&values[2..7], &[2 * (n64 * n64 + n64) + 1, 2 * n64 * n64 + 1, n64 * n64 - n64 + 1, (n64 * n64 - n64 + 2) / 2, (n64 * n64 - n64) / 2]);
        let quad = halfdim_consistency(Example::Quadric, n, 0).unwrap();
        assert_eq!(quad.chain[2].value, 2 * n64 - 1);
        assert_eq!(quad.fiber_dimension, 2 * n64 - 2);
        let cal = halfdim_consistency(Example::Calogero, n, 0).unwrap();
        assert_eq!(cal.fiber_dimension, n64);
        for report in [iso, quad, cal] {
            assert!(report.consistent);
            assert_eq!(2 * report.fiber_dimension, report.leaf_dimension);
        }
        for k in 1..n {
            assert!(halfdim_consistency(Example::Grassmannian, n, k).unwrap().consistent);
        }
    }
}
