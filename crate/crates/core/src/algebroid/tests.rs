use super::*;
use crate::builtins::{
    base_scaled_morphism, comorphism_counterexample, identity_comorphism, identity_morphism, tangent,
    tangent_algebroid, zero_rinehart,
};
use crate::kernel::PolyDerivation;

fn p(s: &str, m: usize) -> Poly {
    Poly::parse(s, m).unwrap()
}

fn zero_algebroid(m: usize, n: usize) -> NLieAlgebroid {
    NLieAlgebroid::new(zero_rinehart(m, n, n))
}

fn span12() -> Vec<Vec<Rat>> {
    vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]
}

/// Lie algebroid over the line: `ρ(e_1) = ∂`, `ρ(e_2) = x∂`, `[e_1, e_2] = e_1`.
fn line_algebroid() -> NLieAlgebroid {
    let r = NLieRinehart::new(
        1,
        2,
        2,
        [
            (vec![0], PolyDerivation::basis(1, 0)),
            (vec![1], PolyDerivation::new(vec![p("x1", 1)])),
        ],
        [(vec![0, 1], vec![Poly::from_int(1, 1), Poly::zero(1)])],
    )
    .unwrap();
    NLieAlgebroid::new(r)
}

#[test]
fn algebroid_examples() {
    assert!(check_algebroid(&tangent_algebroid(3)).is_pass());
    assert!(check_algebroid(&zero_algebroid(2, 3)).is_pass());
    assert!(check_algebroid(&line_algebroid()).is_pass());
    let broken = tangent(3).with_bracket(MultiIndex::new(vec![0, 1, 2]).unwrap(), vec![Poly::from_int(3, 1), Poly::zero(3), Poly::zero(3)]);
    assert!(check_algebroid(&NLieAlgebroid::new(broken)).witness().is_some());
}

#[test]
fn algebroid_and_rinehart_verdicts_coincide() {
    let t = tangent(3);
    let mut cases = vec![t.clone(), zero_rinehart(2, 3, 3), line_algebroid().structure().clone()];
    for c in [1, 2] {
        cases.push(t.with_bracket(MultiIndex::new(vec![0, 1, 2]).unwrap(), vec![Poly::zero(3), Poly::zero(3), Poly::from_int(3, c)]));
        cases.push(t.with_bracket(MultiIndex::new(vec![0, 1, 2]).unwrap(), vec![Poly::from_int(3, c), Poly::zero(3), Poly::zero(3)]));
    }
    for r in cases {
        let a = NLieAlgebroid::new(r.clone());
        assert_eq!(check_algebroid(&a).is_pass(), crate::rinehart::check_rinehart(&r).is_pass());
    }
}

#[test]
fn subalgebroid_examples() {
    let t = tangent_algebroid(3);
    let full = check_subalgebroid(&t, &Subbundle::full(3, 3)).unwrap();
    assert!(full.verdict.is_pass());
    assert_eq!(full.induced.unwrap(), t);

    let h = Subbundle::new(PolySubmanifold::coordinate(3, vec![2]).unwrap(), span12()).unwrap();
    let out = check_subalgebroid(&t, &h).unwrap();
    assert!(out.verdict.is_pass());
    let induced = out.induced.unwrap();
    assert_eq!((induced.base_dim(), induced.rank()), (2, 2));
    assert_eq!(induced.structure().anchor_basis(&[0, 1]), PolyDerivation::basis(2, 0));
    assert!(check_algebroid(&induced).is_pass());

    let h = Subbundle::new(PolySubmanifold::coordinate(3, vec![0]).unwrap(), span12()).unwrap();
    let out = check_subalgebroid(&t, &h).unwrap();
    assert_eq!(out.verdict.witness().unwrap().condition, "anchor tangent to the base");
    assert!(out.induced.is_none());
}

#[test]
fn subbundle_rejects_dependent_bases() {
    let b = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
    assert!(Subbundle::new(PolySubmanifold::whole(2), b).is_err());
    let g = PolySubmanifold::graph(2, vec![(0, Poly::var(2, 1))]).unwrap();
    assert!(Subbundle::new(g, vec![vec![int(1), int(0)]]).is_err());
}

#[test]
fn bracket_closure_failure() {
    // rank 4, arity 3: [e1, e2, e3] = e4 leaves span(e1, e2, e3)
    let mut v = vec![Poly::zero(4); 4];
    v[3] = Poly::from_int(4, 1);
    let r = crate::builtins::tangent_with(4, 4, 3).with_bracket(MultiIndex::new(vec![0, 1, 2]).unwrap(), v);
    let a = NLieAlgebroid::new(r);
    let basis: Vec<Vec<Rat>> = (0..3).map(|k| (0..4).map(|i| int((i == k) as i64)).collect()).collect();
    let h = Subbundle::new(PolySubmanifold::whole(4), basis).unwrap();
    let out = check_subalgebroid(&a, &h).unwrap();
    assert_eq!(out.verdict.witness().unwrap().condition, "bracket closes in the subbundle");
    let h = Subbundle::new(PolySubmanifold::whole(1), vec![vec![int(0), int(1)]]).unwrap();
    assert!(check_subalgebroid(&line_algebroid(), &h).unwrap().verdict.is_pass());
}

#[test]
fn morphism_examples() {
    let t = tangent_algebroid(3);
    assert!(check_morphism_algebroid(&identity_morphism(&t), &t, &t).unwrap().is_pass());

    let (phi, a1, a2) = base_scaled_morphism(3);
    let v = check_morphism_algebroid(&phi, &a1, &a2).unwrap();
    assert_eq!(v.witness().unwrap().condition, "anchors related by the base map");

    let z = zero_algebroid(2, 3);
    let phi = BundleMapForward {
        base: PolyMap::new(2, 2, vec![p("x1^2", 2), p("x1*x2 - 3", 2)]).unwrap(),
        fiber: vec![vec![p("x2", 2); 3]; 3],
    };
    assert!(check_morphism_algebroid(&phi, &z, &z).unwrap().is_pass());
}

#[test]
fn graph_needs_the_negated_second_factor() {
    // at n = 2, {(σ, σ)} over the diagonal is not closed under the twisted anchor
    let t = tangent_algebroid(2);
    let id = identity_morphism(&t);
    let cfg = Config::default();
    assert!(morphism_graph_verdict(&id, &t, &t, -1, &cfg).unwrap().is_pass());
    assert!(morphism_graph_verdict(&id, &t, &t, 1, &cfg).unwrap().witness().is_some());
}

#[test]
fn comorphism_examples() {
    let t = tangent_algebroid(3);
    assert!(check_comorphism_algebroid(&identity_comorphism(&t), &t, &t).unwrap().is_pass());

    let (phi, a2, a1) = comorphism_counterexample(3);
    let v = check_comorphism_algebroid(&phi, &a2, &a1).unwrap();
    assert_eq!(v.witness().unwrap().condition, "pulled-back anchor is related to the anchor");

    let z = zero_algebroid(2, 2);
    let phi = BundleMapCo {
        base: PolyMap::new(2, 2, vec![p("x2", 2), p("x1 + 1", 2)]).unwrap(),
        pullback: vec![vec![p("x1", 2); 2]; 2],
    };
    assert!(check_comorphism_algebroid(&phi, &z, &z).unwrap().is_pass());
}

#[test]
fn rinehart_bridges() {
    let (phi, a1, a2) = base_scaled_morphism(3);
    assert!(morphism_rinehart_verdict(&phi, &a1, &a2).unwrap().witness().is_some());
    let t = tangent_algebroid(3);
    assert!(morphism_rinehart_verdict(&identity_morphism(&t), &t, &t).unwrap().is_pass());

    let (phi, a2, a1) = comorphism_counterexample(2);
    assert!(comorphism_rinehart_verdict(&phi, &a2, &a1).unwrap().witness().is_some());
    assert!(comorphism_conditions(&phi, &a2, &a1).unwrap().witness().is_some());
}

#[test]
fn dual_tensor_examples() {
    for n in [2usize, 3] {
        let pi = dual_linear_nambu(&tangent_algebroid(n)).unwrap();
        // ∂_{ξ_1}∧…∧∂_{ξ_{n−1}}∧∂_{x_1}
        let mut idx: Vec<usize> = (n..2 * n - 1).collect();
        idx.push(0);
        let expected = NambuTensor::new(n, 2 * n, [(idx, Poly::from_int(2 * n, 1))]).unwrap();
        assert_eq!(pi, expected);
    }
    assert_eq!(dual_linear_nambu(&zero_algebroid(2, 3)).unwrap(), NambuTensor::zero(3, 5));
    assert!(matches!(
        dual_linear_nambu(&NLieAlgebroid::new(tangent_with_rank(4))),
        Err(Error::RankNotArity { rank: 4, arity: 3 })
    ));
}

fn tangent_with_rank(d: usize) -> NLieRinehart {
    crate::builtins::tangent_with(3, d, 3)
}

#[test]
fn dual_of_a_lie_algebroid_is_its_linear_poisson_tensor() {
    // {ξ1, ξ2} = ξ1, {ξ1, x} = 1, {ξ2, x} = x on (x, ξ1, ξ2)
    let pi = dual_linear_nambu(&line_algebroid()).unwrap();
    let f = |s: &str| p(s, 3);
    let br = |a: &str, b: &str| crate::nambu::nambu_bracket(&pi, &[f(a), f(b)]).unwrap();
    assert_eq!(br("x2", "x3"), f("x2"));
    assert_eq!(br("x2", "x1"), f("1"));
    assert_eq!(br("x3", "x1"), f("x1"));
    assert_eq!(br("x1", "x1^2"), f("0"));
    assert!(crate::nambu::check_nambu_fi_default(&pi, &Config::default()).unwrap().is_pass());
}

#[test]
fn dual_tensor_brackets_match_the_structure() {
    // for rank n: brackets of linear functions and one pullback
    let r = tangent(3).with_bracket(MultiIndex::new(vec![0, 1, 2]).unwrap(), vec![p("x2", 3), Poly::zero(3), p("1", 3)]);
    let a = NLieAlgebroid::new(r.clone());
    let pi = dual_linear_nambu(&a).unwrap();
    let xi = |k: usize| Poly::var(6, 3 + k);
    let top = crate::nambu::nambu_bracket(&pi, &[xi(0), xi(1), xi(2)]).unwrap();
    assert_eq!(top, &(&Poly::var(6, 1) * &xi(0)) + &xi(2));
    for key in combinations(3, 2) {
        let k = key.as_slice();
        for j in 0..3 {
            let v = crate::nambu::nambu_bracket(&pi, &[xi(k[0]), xi(k[1]), Poly::var(6, j)]).unwrap();
            assert_eq!(v, r.anchor_basis(k).components()[j].embed(0, 6));
        }
    }
    assert!(pi.degree_in(&[3, 4, 5]) <= 1);
}

#[test]
fn duality_comorphism_examples() {
    let t = tangent_algebroid(3);
    assert!(check_duality_comorphism(&identity_comorphism(&t), &t, &t).unwrap().is_pass());
    let (phi, a2, a1) = comorphism_counterexample(3);
    let pair = comorphism_duality_pair(&phi, &a2, &a1).unwrap();
    assert!(pair.direct.witness().is_some() && pair.dual.witness().is_some());
    let z = zero_algebroid(2, 2);
    assert!(check_duality_comorphism(&identity_comorphism(&z), &z, &z).unwrap().is_pass());
}

#[test]
fn duality_morphism_examples() {
    let t = tangent_algebroid(3);
    assert!(check_duality_morphism(&identity_morphism(&t), &t, &t).unwrap().is_pass());
    let (phi, a1, a2) = base_scaled_morphism(3);
    let pair = morphism_duality_pair(&phi, &a1, &a2).unwrap();
    assert!(pair.direct.witness().is_some() && pair.dual.witness().is_some());
    let z = zero_algebroid(2, 2);
    assert!(check_duality_morphism(&identity_morphism(&z), &z, &z).unwrap().is_pass());
}

#[test]
fn annihilator_examples() {
    let t = tangent_algebroid(3);
    let zero_section = annihilator(&t, &Subbundle::full(3, 3)).unwrap();
    assert_eq!(zero_section.codim(), 3);
    assert!(check_annihilator(&t, &Subbundle::full(3, 3)).unwrap().is_pass());

    let h = Subbundle::new(PolySubmanifold::coordinate(3, vec![2]).unwrap(), span12()).unwrap();
    assert!(check_annihilator(&t, &h).unwrap().is_pass());
    let h = Subbundle::new(PolySubmanifold::coordinate(3, vec![0]).unwrap(), span12()).unwrap();
    let pair = annihilator_pair(&t, &h).unwrap();
    assert!(pair.direct.witness().is_some() && pair.dual.witness().is_some());
}

#[test]
fn annihilator_of_a_skew_subspace() {
    // H = span(e1 + e2) over the line algebroid: H° = {ξ1 + ξ2 = 0}
    let a = line_algebroid();
    let h = Subbundle::new(PolySubmanifold::whole(1), vec![vec![int(1), int(1)]]).unwrap();
    let ann = annihilator(&a, &h).unwrap();
    let defs = ann.defining_functions();
    assert_eq!(defs, vec![p("x2 + x3", 3)]);
    assert!(annihilator_pair(&a, &h).unwrap().agree());
}

#[test]
fn twist_flips_odd_arity_only() {
    let t = tangent_algebroid(3);
    assert_eq!(t.twisted(), t);
    let t2 = tangent_algebroid(2);
    assert_eq!(t2.twisted().structure().anchor_basis(&[0]), PolyDerivation::basis(2, 0).scale(&Poly::from_int(2, -1)));
}
