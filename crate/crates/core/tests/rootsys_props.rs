use proptest::prelude::*;
use sklyanin_core::rootsys::{dot, reflect, QVec};
use sklyanin_core::{Basis, CartanType, Family, LatticeVector, RootSystem, Q};

fn classical() -> impl Strategy<Value = CartanType> {
    prop_oneof![
        (1usize..=6).prop_map(|r| CartanType::new(Family::A, r).unwrap()),
        (2usize..=5).prop_map(|r| CartanType::new(Family::B, r).unwrap()),
        (2usize..=5).prop_map(|r| CartanType::new(Family::C, r).unwrap()),
        (3usize..=5).prop_map(|r| CartanType::new(Family::D, r).unwrap()),
    ]
}

fn coweight(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, rank)
}

#[test]
fn weyl_vector_two_ways_all_types() {
    for t in CartanType::all_up_to(8) {
        let rs = RootSystem::new(t);
        let mut sum = vec![Q::from_integer(0); rs.ambient_dim()];
        for l in rs.fundamental_weights() {
            for (s, x) in sum.iter_mut().zip(l) {
                *s += *x;
            }
        }
        assert_eq!(sum, rs.half_positive_sum(), "{t}");
        assert_eq!(rs.weyl_vector(), &sum[..]);
        assert_eq!(rs.roots().len(), 2 * rs.positive_roots().len());
    }
}

#[test]
fn root_counts() {
    let count = |f, r| RootSystem::from_type(f, r).unwrap().roots().len();
    assert_eq!(count(Family::A, 1), 2);
    assert_eq!(count(Family::G, 2), 12);
    assert_eq!(count(Family::F, 4), 48);
    assert_eq!(count(Family::E, 6), 72);
    assert_eq!(count(Family::E, 7), 126);
    assert_eq!(count(Family::E, 8), 240);
}

#[test]
fn orbit_sizes() {
    for n in 2..=7 {
        let a = RootSystem::from_type(Family::A, n - 1).unwrap();
        let mut c = vec![0; n - 1];
        c[0] = 1;
        assert_eq!(a.weyl_orbit(&LatticeVector::from_ints(&c, Basis::FundamentalCoweight)).unwrap().len(), n);
    }
    for n in 3..=7 {
        let d = RootSystem::from_type(Family::D, n).unwrap();
        let mut c = vec![0; n];
        c[n - 1] = 1;
        assert_eq!(d.weyl_orbit(&LatticeVector::from_ints(&c, Basis::FundamentalCoweight)).unwrap().len(), 1 << (n - 1));
    }
    let e8 = RootSystem::from_type(Family::E, 8).unwrap();
    let zero = LatticeVector::from_ints(&[0; 8], Basis::FundamentalCoweight);
    assert_eq!(e8.weyl_orbit(&zero).unwrap().len(), 1);
}

#[test]
fn gl_two_delta() {
    for n in 2..=6 {
        let rs = RootSystem::gl(n).unwrap();
        let expect: QVec = (1..=n).map(|i| Q::from_integer(n as i64 + 1 - 2 * i as i64)).collect();
        let two: QVec = rs.weyl_vector().iter().map(|x| *x * Q::from_integer(2)).collect();
        assert_eq!(two, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominant_rep_is_unique_dominant_orbit_member(t in classical(), seed in coweight(6)) {
        let rs = RootSystem::new(t);
        let v = LatticeVector::from_ints(&seed[..rs.rank()], Basis::FundamentalCoweight);
        let orbit = rs.weyl_orbit(&v).unwrap();
        let dom = rs.dominant_representative(&v).unwrap();
        let dom_amb = rs.to_ambient(&dom).unwrap();
        prop_assert!(rs.is_dominant_ambient(&dom_amb));
        let members: Vec<QVec> = orbit.iter().map(|w| rs.to_ambient(w).unwrap()).collect();
        prop_assert!(members.contains(&dom_amb));
        prop_assert_eq!(members.iter().filter(|m| rs.is_dominant_ambient(m)).count(), 1);
    }

    #[test]
    fn orbit_is_idempotent(t in classical(), seed in coweight(6), pick in 0usize..1000) {
        let rs = RootSystem::new(t);
        let v = LatticeVector::from_ints(&seed[..rs.rank()], Basis::FundamentalCoweight);
        let amb = rs.to_ambient(&v).unwrap();
        let orbit = rs.orbit_ambient(&amb);
        let member = &orbit[pick % orbit.len()];
        prop_assert_eq!(rs.orbit_ambient(member), orbit.clone());
        for a in rs.simple_roots() {
            for m in &orbit {
                let r = reflect(m, a);
                prop_assert!(orbit.contains(&r));
            }
        }
    }

    #[test]
    fn pairing_is_bilinear(t in classical(), a in coweight(6), b in coweight(6), w in coweight(6)) {
        let rs = RootSystem::new(t);
        let r = rs.rank();
        let wv = LatticeVector::from_ints(&w[..r], Basis::FundamentalWeight);
        let av = LatticeVector::from_ints(&a[..r], Basis::FundamentalCoweight);
        let bv = LatticeVector::from_ints(&b[..r], Basis::FundamentalCoweight);
        let sum: Vec<i64> = a[..r].iter().zip(&b[..r]).map(|(x, y)| x + y).collect();
        let sv = LatticeVector::from_ints(&sum, Basis::FundamentalCoweight);
        let lhs = rs.pair(&wv, &sv).unwrap();
        let rhs = rs.pair(&wv, &av).unwrap() + rs.pair(&wv, &bv).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflections_preserve_roots(t in classical()) {
        let rs = RootSystem::new(t);
        for a in rs.simple_roots() {
            for b in rs.roots() {
                prop_assert!(rs.is_root(&reflect(b, a)));
            }
        }
        for (i, l) in rs.fundamental_weights().iter().enumerate() {
            for (j, c) in rs.simple_coroots().iter().enumerate() {
                let expect = if i == j { Q::from_integer(1) } else { Q::from_integer(0) };
                prop_assert_eq!(dot(l, c), expect);
            }
        }
    }
}
