use num_complex::Complex64;
use proptest::prelude::*;
use sklyanin_core::leafdim::{
    gamma_root_sum, gl_beta_to_coweight, gl_leaf_dimension, leaf_dimension, pi1_image, singularity_divisors,
};
use sklyanin_core::rootsys::{dot, reflect, QVec};
use sklyanin_core::{
    Basis, CartanType, EllipticPoint, Family, GroupSpec, LatticeVector, RootSystem, SingularityData, Q,
};

fn tau() -> Complex64 {
    Complex64::new(0.13, 0.97)
}

fn classical_types() -> Vec<CartanType> {
    let mut out = Vec::new();
    for r in 1..=6 {
        out.push(CartanType::new(Family::A, r).unwrap());
        if r >= 2 {
            out.push(CartanType::new(Family::B, r).unwrap());
            out.push(CartanType::new(Family::C, r).unwrap());
        }
        if r >= 3 {
            out.push(CartanType::new(Family::D, r).unwrap());
        }
    }
    out
}

fn group(kind: usize, n: usize) -> GroupSpec {
    match kind % 5 {
        0 => GroupSpec::gl(n).unwrap(),
        1 => GroupSpec::sl(n).unwrap(),
        2 => GroupSpec::pgl(n).unwrap(),
        3 => GroupSpec::so_even(n).unwrap(),
        _ => GroupSpec::po_even(n).unwrap(),
    }
}

fn lattice_combination(g: &GroupSpec, coeffs: &[i64]) -> QVec {
    let dim = g.root_system().ambient_dim();
    let mut v = vec![Q::from_integer(0); dim];
    for (b, c) in g.lattice_basis().iter().zip(coeffs.iter().cycle()) {
        for (x, y) in v.iter_mut().zip(b) {
            *x += *y * Q::from_integer(*c);
        }
    }
    v
}

fn point(i: usize) -> EllipticPoint {
    EllipticPoint::new(i as f64 / 9.0 + 0.013, (i * 4 % 9) as f64 / 9.0 + 0.021)
}

fn random_data(g: &GroupSpec, coeffs: &[Vec<i64>], offset: usize) -> SingularityData {
    let entries = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (point(i + offset), LatticeVector::ambient(lattice_combination(g, c))))
        .collect();
    SingularityData::new(g.clone(), tau(), entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_identity_for_dominant_coweights(coeffs in prop::collection::vec(0i64..=4, 6)) {
        for t in classical_types() {
            let rs = RootSystem::new(t);
            let v = LatticeVector::from_ints(&coeffs[..rs.rank()], Basis::FundamentalCoweight);
            let dom = rs.to_ambient(&v).unwrap();
            prop_assert!(rs.is_dominant_ambient(&dom));
            let a: QVec = dom.iter().map(|x| -*x).collect();
            let lhs = gamma_root_sum(&rs, &a);
            let rhs = -Q::from_integer(2) * dot(&a, rs.weyl_vector());
            prop_assert_eq!(lhs, rhs, "{}", t);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_is_orbit_invariant(coeffs in prop::collection::vec(-3i64..=3, 6), word in prop::collection::vec(0usize..6, 0..8)) {
        for t in classical_types() {
            let rs = RootSystem::new(t);
            let v = rs.to_ambient(&LatticeVector::from_ints(&coeffs[..rs.rank()], Basis::FundamentalCoweight)).unwrap();
            let mut w = v.clone();
            for i in &word {
                w = reflect(&w, &rs.simple_roots()[i % rs.rank()]);
            }
            let g1 = sklyanin_core::leafdim::gamma(&rs, &LatticeVector::ambient(v.clone())).unwrap();
            let g2 = sklyanin_core::leafdim::gamma(&rs, &LatticeVector::ambient(w)).unwrap();
            prop_assert_eq!(g1, g2);
        }
    }

    #[test]
    fn divisor_degree_identity(kind in 0usize..5, n in 2usize..=5, coeffs in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..6)) {
        let g = group(kind, n);
        let sd = random_data(&g, &coeffs, 0);
        let s = singularity_divisors(&sd).unwrap();
        let gamma_sum = leaf_dimension(&sd).unwrap().gamma_sum;
        prop_assert_eq!(s.total_degree * Q::from_integer(2), Q::from_integer(gamma_sum as i64));
        prop_assert_eq!(s.divisors.len(), g.root_system().rank());
    }

    #[test]
    fn gl_closed_form_agrees(n in 2usize..=6, betas in prop::collection::vec(prop::collection::vec(0u64..=3, 5), 0..5)) {
        let betas: Vec<Vec<u64>> = betas.into_iter().map(|b| b[..n - 1].to_vec()).collect();
        let entries = betas
            .iter()
            .enumerate()
            .map(|(i, b)| (point(i), LatticeVector::ambient(gl_beta_to_coweight(n, b))))
            .collect();
        let sd = SingularityData::new(GroupSpec::gl(n).unwrap(), tau(), entries).unwrap();
        prop_assert_eq!(leaf_dimension(&sd).unwrap().dimension, gl_leaf_dimension(n, &betas).unwrap());
    }

    #[test]
    fn pi1_image_is_additive(kind in 0usize..5, n in 2usize..=5,
        a in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..4),
        b in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..4)) {
        let g = group(kind, n);
        let da = random_data(&g, &a, 0);
        let db = random_data(&g, &b, 4);
        let both = da.concat(&db).unwrap();
        let (ia, ib, iab) = (pi1_image(&da).unwrap(), pi1_image(&db).unwrap(), pi1_image(&both).unwrap());
        prop_assert_eq!(&ia.orders, &iab.orders);
        for ((x, y), (z, o)) in ia.coords.iter().zip(&ib.coords).zip(iab.coords.iter().zip(&iab.orders)) {
            let s = x + y;
            let expect = if *o == 0 { s } else { s.rem_euclid(*o) };
            prop_assert_eq!(expect, *z);
        }
    }
}

#[test]
fn fundamental_group_orders() {
    for n in 2..=6 {
        assert_eq!(GroupSpec::pgl(n).unwrap().fundamental_group().order(), Some(n as i128));
        assert!(GroupSpec::sl(n).unwrap().fundamental_group().is_trivial());
        assert_eq!(GroupSpec::gl(n).unwrap().fundamental_group().invariant_factors(), vec![0]);
    }
    for n in 3..=6 {
        assert_eq!(GroupSpec::so_even(n).unwrap().fundamental_group().order(), Some(2));
        assert_eq!(GroupSpec::po_even(n).unwrap().fundamental_group().order(), Some(4));
    }
}
