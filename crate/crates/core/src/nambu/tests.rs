use super::*;
use crate::kernel::int;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str, m: usize) -> Poly {
    Poly::parse(s, m).unwrap()
}

fn rand_poly(m: usize, deg: u32, rng: &mut ChaCha8Rng) -> Poly {
    let mut out = Poly::zero(m);
    for e in crate::kernel::linalg::monomials_up_to(m, deg) {
        if rng.gen_bool(0.5) {
            out += &Poly::monomial(m, e, int(rng.gen_range(-3..=3)));
        }
    }
    out
}

/// Explicit 3×3 Jacobian determinant.
fn jacobian3(f: &[Poly]) -> Poly {
    let d = |i: usize, j: usize| f[i].partial(j).unwrap();
    let t1 = &(&d(0, 0) * &d(1, 1)) * &d(2, 2);
    let t2 = &(&d(0, 1) * &d(1, 2)) * &d(2, 0);
    let t3 = &(&d(0, 2) * &d(1, 0)) * &d(2, 1);
    let t4 = &(&d(0, 2) * &d(1, 1)) * &d(2, 0);
    let t5 = &(&d(0, 0) * &d(1, 2)) * &d(2, 1);
    let t6 = &(&d(0, 1) * &d(1, 0)) * &d(2, 2);
    &(&(&(&(&t1 + &t2) + &t3) - &t4) - &t5) - &t6
}

#[test]
fn bracket_examples() {
    let pi = NambuTensor::top(3);
    assert_eq!(nambu_bracket(&pi, &[p("x1", 3), p("x2", 3), p("x3", 3)]).unwrap(), p("1", 3));
    assert_eq!(nambu_bracket(&pi, &[p("x1^2", 3), p("x2", 3), p("x3", 3)]).unwrap(), p("2*x1", 3));
    let f = p("x1*x2 + x3^2", 3);
    assert!(nambu_bracket(&pi, &[f.clone(), f, p("x2", 3)]).unwrap().is_zero());
    assert!(nambu_bracket(&pi, &[p("x1", 3), p("x2", 3)]).is_err());
    assert!(nambu_bracket(&pi, &[p("x1", 3), p("x2", 3), p("x1", 2)]).is_err());
}

#[test]
fn bracket_is_jacobian_skew_and_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pi = NambuTensor::top(3);
    for _ in 0..20 {
        let f: Vec<Poly> = (0..3).map(|_| rand_poly(3, 3, &mut rng)).collect();
        let b = nambu_bracket(&pi, &f).unwrap();
        assert_eq!(b, jacobian3(&f));
        let swapped = nambu_bracket(&pi, &[f[1].clone(), f[0].clone(), f[2].clone()]).unwrap();
        assert_eq!(swapped, -&b);
        let g = rand_poly(3, 2, &mut rng);
        let lhs = nambu_bracket(&pi, &[f[0].clone(), f[1].clone(), &g * &f[2]]).unwrap();
        let rhs = &(&b * &g) + &(&nambu_bracket(&pi, &[f[0].clone(), f[1].clone(), g]).unwrap() * &f[2]);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn fundamental_identity_examples() {
    let cfg = Config::default();
    assert!(check_nambu_fi_default(&NambuTensor::top(3), &cfg).unwrap().is_pass());
    assert!(check_nambu_fi_default(&NambuTensor::top(4), &cfg).unwrap().is_pass());
    assert!(check_nambu_fi_default(&NambuTensor::top(3).scale(&p("x1", 3)), &cfg).unwrap().is_pass());
    let sum = NambuTensor::new(3, 4, [(vec![0, 1, 2], p("1", 4)), (vec![0, 1, 3], p("1", 4))]).unwrap();
    assert!(check_nambu_fi_default(&sum, &cfg).unwrap().is_pass());
    let split = NambuTensor::new(3, 6, [(vec![0, 1, 2], p("1", 6)), (vec![3, 4, 5], p("1", 6))]).unwrap();
    assert!(!check_nambu_fi_default(&split, &cfg).unwrap().is_pass());
    assert!(check_nambu_fi(&split, &[]).is_err());
}

#[test]
fn coordinate_reduction_matches_full_probes() {
    // the inner arguments may be restricted to coordinates
    let cfg = Config::default();
    let split = NambuTensor::new(3, 6, [(vec![0, 1, 2], p("1", 6)), (vec![3, 4, 5], p("1", 6))]).unwrap();
    let probes = cfg.probe_set(6);
    let nonlinear: Vec<Poly> = probes.iter().filter(|q| q.degree() == Some(2)).cloned().collect();
    assert!(!check_nambu_fi(&split, &nonlinear).unwrap().is_pass());
    let bent = NambuTensor::new(2, 3, [(vec![0, 1], p("x3", 3)), (vec![1, 2], p("x1", 3)), (vec![0, 2], p("x2^2", 3))]).unwrap();
    let a = check_nambu_fi(&bent, &probes_for(3)).unwrap().is_pass();
    let b = check_nambu_fi(&bent, &probes_for(3)[3..]).unwrap().is_pass();
    assert_eq!(a, b);
}

fn probes_for(m: usize) -> Vec<Poly> {
    Config::default().probe_set(m)
}

#[test]
fn hamiltonian_examples() {
    let pi = NambuTensor::top(3);
    assert_eq!(hamiltonian_vf(&pi, &[p("x1", 3), p("x2", 3)]).unwrap(), PolyDerivation::basis(3, 2));
    let f = p("x1*x3", 3);
    assert!(hamiltonian_vf(&pi, &[f.clone(), f]).unwrap().is_zero());
    let scaled = pi.scale(&p("x1", 3));
    assert_eq!(
        hamiltonian_vf(&scaled, &[p("x2", 3), p("x3", 3)]).unwrap(),
        PolyDerivation::basis(3, 0).scale(&p("x1", 3))
    );
}

#[test]
fn nambu_map_examples() {
    let pi = NambuTensor::top(3);
    assert!(check_nambu_map(&PolyMap::identity(3), &pi, &pi).unwrap().is_pass());
    let phi = PolyMap::new(3, 3, vec![p("x1", 3), p("x2", 3), p("2*x3", 3)]).unwrap();
    let w = check_nambu_map(&phi, &pi, &pi).unwrap().witness().cloned().unwrap();
    assert_eq!(w.residual, vec![p("1", 3)]);
    let two = pi.scale(&p("2", 3));
    assert!(check_nambu_map(&phi, &pi, &two).unwrap().is_pass());
    assert!(check_nambu_map(&phi, &pi, &NambuTensor::top(2)).is_err());
}

fn random_map(m: usize, rng: &mut ChaCha8Rng) -> PolyMap {
    let comps = (0..m)
        .map(|j| {
            let mut c = Poly::var(m, j).scale(&int(rng.gen_range(1..=2)));
            if rng.gen_bool(0.4) {
                let k = rng.gen_range(0..m);
                if k != j {
                    c += &Poly::var(m, k).pow(rng.gen_range(1..=2));
                }
            }
            c
        })
        .collect();
    PolyMap::new(m, m, comps).unwrap()
}

#[test]
fn map_checks_agree_with_brackets_and_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut outcomes = [0; 2];
    for n in [2usize, 3] {
        let tensors = [
            NambuTensor::top(n),
            NambuTensor::top(n).scale(&Poly::var(n, 0)),
            NambuTensor::top(n).scale(&Poly::from_int(n, 2)),
        ];
        for _ in 0..12 {
            let phi = random_map(n, &mut rng);
            let pi1 = &tensors[rng.gen_range(0..3)];
            let pi2 = &tensors[rng.gen_range(0..3)];
            let a = check_nambu_map(&phi, pi1, pi2).unwrap().is_pass();
            let b = check_nambu_map_brackets(&phi, pi1, pi2, &probes_for(n)).unwrap().is_pass();
            let c = check_nambu_relation(pi1, pi2, &PolySubmanifold::graph_of(&phi)).unwrap().is_pass();
            assert_eq!(a, b);
            assert_eq!(a, c, "n = {n}, phi = {phi:?}");
            outcomes[a as usize] += 1;
        }
    }
    assert!(outcomes[0] > 0 && outcomes[1] > 0, "{outcomes:?}");
}

#[test]
fn coisotropic_examples() {
    let n = PolySubmanifold::coordinate(4, [0, 1, 2]).unwrap();
    let good = NambuTensor::new(3, 4, [(vec![0, 1, 3], p("1", 4))]).unwrap();
    let bad = NambuTensor::new(3, 4, [(vec![0, 1, 2], p("1", 4))]).unwrap();
    assert!(check_coisotropic(&good, &n).unwrap().is_pass());
    let w = check_coisotropic(&bad, &n).unwrap().witness().cloned().unwrap();
    assert_eq!(w.indices, vec![MultiIndex::new(vec![0, 1]).unwrap()]);
    assert_eq!(w.residual, vec![p("0", 4), p("0", 4), p("1", 4)]);
    let line = PolySubmanifold::coordinate(4, [0]).unwrap();
    assert!(check_coisotropic(&bad, &line).unwrap().is_pass());
}

#[test]
fn codimension_n_minus_one_is_coisotropic() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pi = NambuTensor::top(4).scale(&p("x2 + 1", 4));
    let pi3 = NambuTensor::new(3, 4, [(vec![0, 1, 2], p("x4", 4)), (vec![0, 1, 3], p("1", 4))]).unwrap();
    for _ in 0..10 {
        let outputs: Vec<(usize, Poly)> = [2usize, 3]
            .iter()
            .map(|&v| {
                let g = &Poly::var(4, 0).scale(&int(rng.gen_range(-3..=3)))
                    + &Poly::var(4, 1).scale(&int(rng.gen_range(-3..=3)));
                (v, g)
            })
            .collect();
        let n = PolySubmanifold::graph(4, outputs).unwrap();
        assert!(check_coisotropic(&pi3, &n).unwrap().is_pass());
        let n3: Vec<(usize, Poly)> = [1usize, 2, 3]
            .iter()
            .map(|&v| (v, Poly::var(4, 0).scale(&int(rng.gen_range(-3..=3)))))
            .collect();
        assert!(check_coisotropic(&pi, &PolySubmanifold::graph(4, n3).unwrap()).unwrap().is_pass());
    }
}

#[test]
fn submanifold_examples() {
    let pi = NambuTensor::top(3);
    assert!(check_nambu_submanifold(&pi, &PolySubmanifold::whole(3)).unwrap().is_pass());
    let n = PolySubmanifold::coordinate(3, [0]).unwrap();
    assert!(check_nambu_submanifold(&pi.scale(&p("x1", 3)), &n).unwrap().is_pass());
    let w = check_nambu_submanifold(&pi, &n).unwrap().witness().cloned().unwrap();
    assert_eq!(w.indices, vec![MultiIndex::new(vec![1, 2]).unwrap()]);
    assert_eq!(w.residual, vec![p("1", 3)]);
}

#[test]
fn graph_validation() {
    assert!(PolySubmanifold::graph(3, [(0, p("x1", 3))]).is_err());
    assert!(PolySubmanifold::graph(3, [(0, p("x2", 3)), (1, p("x3", 3))]).is_err());
    let g = PolySubmanifold::graph(3, [(2, p("x1^2 - x2", 3))]).unwrap();
    assert_eq!(g.reduce(&p("x3*x1", 3)), p("x1^3 - x1*x2", 3));
    assert!(g.contains_zero(&p("x3 - x1^2 + x2", 3)));
}

#[test]
fn relation_examples() {
    let pi = NambuTensor::top(3);
    let id = PolySubmanifold::graph_of(&PolyMap::identity(3));
    assert!(check_nambu_relation(&pi, &pi, &id).unwrap().is_pass());
    let phi = PolyMap::new(3, 3, vec![p("x1", 3), p("x2", 3), p("2*x3", 3)]).unwrap();
    assert!(!check_nambu_relation(&pi, &pi, &PolySubmanifold::graph_of(&phi)).unwrap().is_pass());
    let thin = PolySubmanifold::coordinate(6, [0]).unwrap();
    assert!(check_nambu_relation(&pi, &pi, &thin).unwrap().is_pass());
}

#[test]
fn linear_composition() {
    let a = PolyMap::new(2, 2, vec![p("x1 + x2", 2), p("2*x2", 2)]).unwrap();
    let b = PolyMap::new(2, 2, vec![p("x2", 2), p("x1 - x2", 2)]).unwrap();
    let r1 = PolySubmanifold::graph_of(&a);
    let r2 = PolySubmanifold::graph_of(&b);
    let c = compose_linear_relations(&r1, &r2, (2, 2, 2)).unwrap();
    assert_eq!(c, PolySubmanifold::graph_of(&b.compose(&a).unwrap()));

    let id = PolySubmanifold::graph_of(&PolyMap::identity(3));
    let ii = compose_linear_relations(&id, &id, (3, 3, 3)).unwrap();
    assert_eq!(ii, id);
    let pi = NambuTensor::top(3);
    assert!(check_nambu_relation(&pi, &pi, &ii).unwrap().is_pass());

    let curved = PolySubmanifold::graph_of(&PolyMap::new(1, 1, vec![p("x1^2", 1)]).unwrap());
    assert!(matches!(
        compose_linear_relations(&curved, &curved, (1, 1, 1)),
        Err(Error::NonLinear(_))
    ));
}

#[test]
fn composite_of_nambu_maps_is_a_relation() {
    // area-preserving shears of the plane
    let pi = NambuTensor::top(2);
    let s1 = PolyMap::new(2, 2, vec![p("x1 + 3*x2", 2), p("x2", 2)]).unwrap();
    let s2 = PolyMap::new(2, 2, vec![p("x1", 2), p("x2 - 2*x1", 2)]).unwrap();
    for phi in [&s1, &s2] {
        assert!(check_nambu_relation(&pi, &pi, &PolySubmanifold::graph_of(phi)).unwrap().is_pass());
    }
    let c = compose_linear_relations(&PolySubmanifold::graph_of(&s1), &PolySubmanifold::graph_of(&s2), (2, 2, 2)).unwrap();
    assert!(check_nambu_relation(&pi, &pi, &c).unwrap().is_pass());

    // non-graph relations: a coordinate line and a point
    let line = PolySubmanifold::coordinate(4, [0, 2]).unwrap();
    let c = compose_linear_relations(&line, &PolySubmanifold::graph_of(&s1), (2, 2, 2)).unwrap();
    assert_eq!(c.codim(), 2);
}
