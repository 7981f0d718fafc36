use nambu_forge::algebroid::*;
use nambu_forge::builtins::{comorphism_counterexample, tangent_algebroid};
use nambu_forge::generators::{algebroid_zoo, comorphism_candidates, morphism_candidates, subbundle_instances};
use nambu_forge::nambu::check_nambu_fi_default;
use nambu_forge::rinehart::check_rinehart;
use nambu_forge::Config;

#[test]
fn zoo_members_are_algebroids_with_nambu_duals() {
    let cfg = Config::default();
    for n in [2, 3] {
        for a in algebroid_zoo(n) {
            assert!(check_algebroid(&a).is_pass());
            assert!(check_rinehart(a.structure()).is_pass());
            let pi = dual_linear_nambu(&a).unwrap();
            let xi: Vec<usize> = (a.base_dim()..a.base_dim() + n).collect();
            assert!(pi.degree_in(&xi) <= 1);
            assert!(check_nambu_fi_default(&pi, &cfg).unwrap().is_pass());
        }
    }
}

#[test]
fn comorphisms_and_dual_maps_agree() {
    let mut seen = [0usize; 2];
    for n in [2, 3] {
        for (phi, a2, a1) in comorphism_candidates(n, 20, 11) {
            let pair = comorphism_duality_pair(&phi, &a2, &a1).unwrap();
            assert!(pair.agree(), "{phi:?}");
            assert_eq!(
                comorphism_conditions(&phi, &a2, &a1).unwrap().is_pass(),
                comorphism_rinehart_verdict(&phi, &a2, &a1).unwrap().is_pass()
            );
            seen[pair.direct.is_pass() as usize] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn morphisms_and_dual_relations_agree() {
    let mut seen = [0usize; 2];
    for n in [2, 3] {
        for (phi, a1, a2) in morphism_candidates(n, 20, 12) {
            let pair = morphism_duality_pair(&phi, &a1, &a2).unwrap();
            assert!(pair.agree(), "{phi:?}");
            assert_eq!(
                pair.direct.is_pass(),
                morphism_rinehart_verdict(&phi, &a1, &a2).unwrap().is_pass()
            );
            seen[pair.direct.is_pass() as usize] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn subalgebroids_and_annihilators_agree() {
    let mut seen = [0usize; 2];
    for (a, h) in subbundle_instances(20, 13) {
        let pair = annihilator_pair(&a, &h).unwrap();
        assert!(pair.agree(), "{h:?}");
        seen[pair.direct.is_pass() as usize] += 1;
        if let Some(induced) = check_subalgebroid(&a, &h).unwrap().induced {
            assert!(check_algebroid(&induced).is_pass());
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn counterexample_fails_on_both_sides_for_every_arity() {
    for n in [2, 3, 4] {
        let (phi, a2, a1) = comorphism_counterexample(n);
        let pair = comorphism_duality_pair(&phi, &a2, &a1).unwrap();
        assert!(!pair.direct.is_pass() && !pair.dual.is_pass());
    }
}

#[test]
fn duality_requires_rank_equal_to_arity() {
    let t = tangent_algebroid(3);
    let wide = NLieAlgebroid::new(nambu_forge::builtins::tangent_with(3, 4, 3));
    let phi = nambu_forge::builtins::identity_comorphism(&wide);
    assert!(check_duality_comorphism(&phi, &wide, &wide).is_err());
    assert!(dual_linear_nambu(&t).is_ok());
}
