use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sklyanin_core::ellfun::EllipticContext;
use sklyanin_core::rmatrix::{
    antisymmetry_residual, build_sl_rep, cdybe_residual, dyn_derivative, dyn_derivative_fd, felder_r,
    operator_norm, random_sl_element, residue_at_zero, sample_dynamical_point, sample_spectral_triple,
    LaurentElement, LoopElement, ProjectedPlus, Projector, RApplied, C64, CONTOUR_NODES,
};

fn ctx() -> EllipticContext {
    EllipticContext::new(C64::new(0.0, 1.0)).unwrap()
}

#[test]
fn antisymmetry_over_fifty_samples() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3] {
        let rep = build_sl_rep(n).unwrap();
        for _ in 0..50 {
            let lam = sample_dynamical_point(&rep, &c, &mut rng).unwrap();
            let [z, _, _] = sample_spectral_triple(&mut rng);
            assert!(antisymmetry_residual(&rep, &c, &lam, z).unwrap() <= 1e-10);
        }
    }
}

#[test]
fn periodic_in_spectral_parameter_and_residue_is_casimir() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [2, 3, 4] {
        let rep = build_sl_rep(n).unwrap();
        let lam = sample_dynamical_point(&rep, &c, &mut rng).unwrap();
        let z = C64::new(0.17, 0.09);
        let a = felder_r(&rep, &c, &lam, z).unwrap().matrix;
        let b = felder_r(&rep, &c, &lam, z + 1.0).unwrap().matrix;
        assert!(operator_norm(&(a - b)) <= 1e-9);
        let res = residue_at_zero(&rep, &c, &lam, 0.1, 256).unwrap().matrix;
        assert!(operator_norm(&(res - rep.casimir().matrix)) <= 1e-6);
    }
}

#[test]
fn cdybe_selected_convention() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in [2, 3] {
        let rep = build_sl_rep(n).unwrap();
        for _ in 0..20 {
            let lam = sample_dynamical_point(&rep, &c, &mut rng).unwrap();
            let [z1, z2, z3] = sample_spectral_triple(&mut rng);
            let r = cdybe_residual(&rep, &c, &lam, z1, z2, z3).unwrap();
            assert!(r.convention_a <= 1e-6, "sl{n}: {r:?}");
            assert!(r.convention_b > 1e-3, "sl{n}: {r:?}");
        }
    }
}

#[test]
fn derivative_cross_validation() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for n in [2, 3] {
        let rep = build_sl_rep(n).unwrap();
        for _ in 0..5 {
            let lam = sample_dynamical_point(&rep, &c, &mut rng).unwrap();
            let [z, _, _] = sample_spectral_triple(&mut rng);
            for k in 0..rep.rank() {
                let exact = dyn_derivative(&rep, &c, &lam, z, k).unwrap().matrix;
                let fd = dyn_derivative_fd(&rep, &c, &lam, z, k, 1e-5).unwrap().matrix;
                assert!(operator_norm(&(exact - fd)) <= 1e-4);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn plus_projection_is_linear(seed in any::<u64>(), s in -2.0f64..2.0, t in -2.0f64..2.0) {
        let c = ctx();
        let rep = build_sl_rep(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lam = sample_dynamical_point(&rep, &c, &mut rng).unwrap();
        let p = Projector::new(&rep, &c, &lam);
        let f = LaurentElement::random(&rep, -3..=3, &mut rng);
        let g = LaurentElement::random(&rep, -3..=3, &mut rng);
        let (sc, tc) = (C64::new(s, 0.0), C64::new(0.0, t));
        let h = LaurentElement::new(
            f.terms.iter().zip(&g.terms).map(|((k, a), (_, b))| (*k, a * sc + b * tc)).collect(),
        );
        let zp = C64::new(0.05, -0.08);
        let lhs = p.plus(&h, zp).unwrap();
        let rhs = p.plus(&f, zp).unwrap() * sc + p.plus(&g, zp).unwrap() * tc;
        prop_assert!((lhs - rhs).norm() <= 1e-9);
    }

    #[test]
    fn plus_projection_is_idempotent(seed in any::<u64>(), deg in 1i32..=5) {
        let c = ctx();
        let rep = build_sl_rep(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lam = sample_dynamical_point(&rep, &c, &mut rng).unwrap();
        let inner = Projector::new(&rep, &c, &lam).with_contour(0.35, CONTOUR_NODES);
        let outer = Projector::new(&rep, &c, &lam);
        let f = LaurentElement::random(&rep, -deg..=deg, &mut rng);
        let pf = ProjectedPlus { projector: &inner, f: &f };
        let zp = C64::new(0.1, 0.0);
        let once = pf.eval(zp).unwrap();
        let twice = outer.plus(&pf, zp).unwrap();
        prop_assert!((twice - once).norm() <= 1e-7);
    }

    #[test]
    fn r_operator_is_skew(seed in any::<u64>(), deg in 1i32..=4) {
        let c = ctx();
        let rep = build_sl_rep(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lam = sample_dynamical_point(&rep, &c, &mut rng).unwrap();
        let inner = Projector::new(&rep, &c, &lam).with_contour(0.35, CONTOUR_NODES);
        let outer = Projector::new(&rep, &c, &lam);
        let f = LaurentElement::random(&rep, -deg..=deg, &mut rng);
        let g = LaurentElement::random(&rep, -deg..=deg, &mut rng);
        let rf = RApplied { projector: &inner, f: &f };
        let rg = RApplied { projector: &inner, f: &g };
        let skew = outer.pairing(&rf, &g).unwrap() + outer.pairing(&f, &rg).unwrap();
        prop_assert!(skew.norm() <= 1e-8);
    }

    #[test]
    fn random_elements_are_traceless(seed in any::<u64>(), n in 2usize..=5) {
        let rep = build_sl_rep(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_sl_element(&rep, &mut rng);
        prop_assert!(x.trace().norm() <= 1e-12);
    }
}
