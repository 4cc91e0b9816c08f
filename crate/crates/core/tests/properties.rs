mod common;

use biham::exterior::Kind;
use biham::ring::rat;
use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn d_squared_vanishes(f in (3usize..=5).prop_flat_map(form_any_degree)) {
        check_dd(&f)?;
    }

    #[test]
    fn wedge_commutes_and_associates(
        (a, b, c) in (3usize..=5).prop_flat_map(|m| (form_any_degree(m), form_any_degree(m), form_any_degree(m)))
    ) {
        check_wedge(&a, &b, &c)?;
    }

    #[test]
    fn bivector_form_round_trip(
        (l, w) in (3usize..=8).prop_flat_map(|m| (graded(Kind::MultiVector, m, 2, 4), graded(Kind::Form, m, m - 2, 4)))
    ) {
        check_round_trip(&l, &w)?;
    }

    #[test]
    fn curvature_ignores_rescaling(a in prop::array::uniform4(-2i64..=2), b2 in -2i64..=2, b3 in -2i64..=2) {
        check_rescaling(a, b2, b3)?;
    }

    #[test]
    fn unimodular_a_alpha_never_abelian(
        k in 0usize..6,
        coords in prop::collection::vec(-2i64..=2, 7),
    ) {
        let (_, l) = &unimodular_catalog()[k];
        let alpha: Vec<_> = coords[..l.dim()].iter().map(|&c| rat(c)).collect();
        prop_assert_ne!(a_alpha_nonabelian(l, &alpha), Some(false));
    }
}
