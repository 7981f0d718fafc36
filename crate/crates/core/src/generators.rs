//! Seeded families of test instances shared by the test suites, the
//! acceptance harness and the benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebroid::{BundleMapCo, BundleMapForward, NLieAlgebroid, Subbundle};
use crate::builtins::{tangent, v4, zero_rinehart};
use crate::kernel::linalg::det_poly;
use crate::kernel::{int, MultiIndex, Poly, PolyDerivation, Rat};
use crate::nambu::{PolyMap, PolySubmanifold};
use crate::nlie::NLieAlgebra;
use crate::rinehart::{AlgebraMap, NLieRinehart};

/// `E`, `F`, `ψ: A → B` and a square matrix usable as `Ψ` in either direction.
#[derive(Clone, Debug)]
pub struct RinehartPair {
    pub e: NLieRinehart,
    pub f: NLieRinehart,
    pub psi: AlgebraMap,
    pub matrix: Vec<Vec<Poly>>,
}

impl RinehartPair {
    pub fn full_rank(&self) -> bool {
        !det_poly(&self.matrix, self.psi_target_vars()).is_zero()
    }

    fn psi_target_vars(&self) -> usize {
        self.f.nvars()
    }
}

fn small(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}

fn square(d: usize, mut entry: impl FnMut(usize, usize) -> Poly) -> Vec<Vec<Poly>> {
    (0..d).map(|r| (0..d).map(|c| entry(r, c)).collect()).collect()
}

/// Tangent models, zero structures and the constant `V_4` structure, paired
/// with base maps and module maps of assorted shapes.
pub fn rinehart_pairs(seed: u64) -> Vec<RinehartPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in [2usize, 3] {
        let t = tangent(n);
        for case in 0..40 {
            let images: Vec<Poly> = (0..n)
                .map(|j| {
                    let x = Poly::var(n, j);
                    match case % 4 {
                        0 => x,
                        1 => &x * &Poly::from_int(n, small(&mut rng, 1, 2)),
                        2 => &x + &Poly::from_int(n, small(&mut rng, -1, 1)),
                        _ => {
                            if j == 0 {
                                x
                            } else {
                                &x + &Poly::var(n, 0).pow(2)
                            }
                        }
                    }
                })
                .collect();
            let psi = AlgebraMap::new(n, n, images).expect("shape");
            let kind = (case / 4) % 6;
            let matrix = square(n, |r, c| {
                let diag = r == c;
                match kind {
                    0 => Poly::from_int(n, diag as i64),
                    1 => Poly::from_int(n, if diag { small(&mut rng, 1, 2) } else { 0 }),
                    2 => Poly::from_int(n, if diag { 1 } else { small(&mut rng, -1, 1) }),
                    3 => Poly::from_int(n, small(&mut rng, -1, 1)),
                    4 => {
                        if diag {
                            Poly::from_int(n, 1)
                        } else if r == 0 {
                            Poly::var(n, small(&mut rng, 0, n as i64 - 1) as usize)
                        } else {
                            Poly::zero(n)
                        }
                    }
                    _ => Poly::from_int(n, (r == n - 1 - c) as i64),
                }
            });
            out.push(RinehartPair {
                e: t.clone(),
                f: t.clone(),
                psi,
                matrix,
            });
        }
    }
    for case in 0..12 {
        let m = 2;
        let z = zero_rinehart(m, 3, 3);
        let images: Vec<Poly> = (0..m)
            .map(|j| &Poly::var(m, j) * &Poly::from_int(m, small(&mut rng, -2, 2)))
            .collect();
        let matrix = square(3, |_, _| {
            if case % 2 == 0 {
                Poly::from_int(m, small(&mut rng, -1, 1))
            } else {
                Poly::var(m, small(&mut rng, 0, 1) as usize)
            }
        });
        out.push(RinehartPair {
            e: z.clone(),
            f: z,
            psi: AlgebraMap::new(m, m, images).expect("shape"),
            matrix,
        });
    }
    let l = v4();
    let a = NLieRinehart::from_nlie(&l);
    let doubled = NLieAlgebra::new(
        3,
        4,
        l.table()
            .iter()
            .map(|(k, v)| (k.as_slice().to_vec(), v.iter().map(|c| c * int(2)).collect::<Vec<Rat>>())),
    )
    .expect("valid table");
    let scaled = NLieRinehart::from_nlie(&doubled);
    for case in 0..8 {
        let matrix = square(4, |r, c| {
            let v = match case % 4 {
                0 => (r == c) as i64,
                1 => 2 * (r == c) as i64,
                2 => (r == 3 - c) as i64,
                _ => small(&mut rng, -1, 1),
            };
            Poly::from_int(0, v)
        });
        let target = if case < 4 { a.clone() } else { scaled.clone() };
        out.push(RinehartPair {
            e: a.clone(),
            f: target,
            psi: AlgebraMap::identity(0),
            matrix,
        });
    }
    out
}

/// Rank-`n` algebroids of arity `n` that satisfy the algebroid axioms.
pub fn algebroid_zoo(n: usize) -> Vec<NLieAlgebroid> {
    let t = tangent(n);
    let top = MultiIndex::new((0..n).collect()).expect("distinct");
    let last = |f: Poly| {
        let mut v = vec![Poly::zero(n); n];
        v[n - 1] = f;
        v
    };
    let mut out = vec![NLieAlgebroid::new(t.clone()), NLieAlgebroid::new(zero_rinehart(n, n, n))];
    for f in [Poly::from_int(n, 1), Poly::var(n, 0), Poly::var(n, n - 1)] {
        out.push(NLieAlgebroid::new(t.with_bracket(top.clone(), last(f))));
    }
    if n == 2 {
        // ρ(e_1) = ∂_1, ρ(e_2) = g ∂_1, [e_1, e_2] = (∂_1 g) e_1
        for g in ["x1", "x1^2", "x1 + x2"] {
            let g = Poly::parse(g, 2).expect("valid");
            let dg = g.partial(0).expect("in range");
            let r = NLieRinehart::new(
                2,
                2,
                2,
                [
                    (vec![0], PolyDerivation::basis(2, 0)),
                    (vec![1], PolyDerivation::new(vec![g, Poly::zero(2)])),
                ],
                [(vec![0, 1], vec![dg, Poly::zero(2)])],
            )
            .expect("valid table");
            out.push(NLieAlgebroid::new(r));
        }
        let r = NLieRinehart::new(
            2,
            2,
            2,
            [(vec![0], PolyDerivation::basis(2, 0)), (vec![1], PolyDerivation::basis(2, 1))],
            std::iter::empty(),
        )
        .expect("valid table");
        out.push(NLieAlgebroid::new(r));
    }
    out
}

fn base_map(n: usize, kind: usize, rng: &mut ChaCha8Rng) -> PolyMap {
    let comps: Vec<Poly> = (0..n)
        .map(|j| {
            let x = Poly::var(n, j);
            match kind {
                0 => x,
                1 => &x * &Poly::from_int(n, small(rng, 1, 2)),
                2 => &x + &Poly::from_int(n, small(rng, -1, 1)),
                3 => Poly::var(n, n - 1 - j),
                _ => {
                    if j + 1 == n {
                        &x + &Poly::var(n, 0)
                    } else {
                        x
                    }
                }
            }
        })
        .collect();
    PolyMap::new(n, n, comps).expect("shape")
}

fn fiber_matrix(n: usize, kind: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Poly>> {
    square(n, |r, c| {
        let diag = r == c;
        match kind {
            0 => Poly::from_int(n, diag as i64),
            1 => Poly::from_int(n, if diag { small(rng, 1, 2) } else { 0 }),
            2 => Poly::from_int(n, small(rng, -1, 1)),
            3 => Poly::from_int(n, (r == n - 1 - c) as i64),
            4 => {
                if diag {
                    Poly::from_int(n, 1)
                } else {
                    &Poly::var(n, small(rng, 0, n as i64 - 1) as usize) * &Poly::from_int(n, small(rng, 0, 1))
                }
            }
            _ => Poly::zero(n),
        }
    })
}

/// Comorphism candidates `(Φ, A_2, A_1)` between zoo members over `ℚ^n`.
pub fn comorphism_candidates(n: usize, count: usize, seed: u64) -> Vec<(BundleMapCo, NLieAlgebroid, NLieAlgebroid)> {
    let zoo = algebroid_zoo(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let a2 = zoo[rng.gen_range(0..zoo.len())].clone();
            let a1 = if i % 3 == 0 { a2.clone() } else { zoo[rng.gen_range(0..zoo.len())].clone() };
            let base = base_map(n, rng.gen_range(0..5), &mut rng);
            let pullback = fiber_matrix(n, rng.gen_range(0..6), &mut rng);
            (BundleMapCo { base, pullback }, a2, a1)
        })
        .collect()
}

/// Forward bundle maps `(Φ, A_1, A_2)` with fibre entries of degree at most one.
pub fn morphism_candidates(n: usize, count: usize, seed: u64) -> Vec<(BundleMapForward, NLieAlgebroid, NLieAlgebroid)> {
    let zoo = algebroid_zoo(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let a1 = zoo[rng.gen_range(0..zoo.len())].clone();
            let a2 = if i % 3 == 0 { a1.clone() } else { zoo[rng.gen_range(0..zoo.len())].clone() };
            let base = base_map(n, rng.gen_range(0..5), &mut rng);
            let fiber = fiber_matrix(n, rng.gen_range(0..6), &mut rng);
            (BundleMapForward { base, fiber }, a1, a2)
        })
        .collect()
}

/// Zoo algebroids with coordinate bases and constant fibre subspaces.
pub fn subbundle_instances(count: usize, seed: u64) -> Vec<(NLieAlgebroid, Subbundle)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zoos = [algebroid_zoo(2), algebroid_zoo(3)];
    let mut out = Vec::new();
    while out.len() < count {
        let zoo = &zoos[rng.gen_range(0..2)];
        let a = zoo[rng.gen_range(0..zoo.len())].clone();
        let (m, r) = (a.base_dim(), a.rank());
        let vars: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.4)).collect();
        let base = PolySubmanifold::coordinate(m, vars).expect("in range");
        let h = rng.gen_range(1..=r);
        let basis: Vec<Vec<Rat>> = (0..h)
            .map(|_| (0..r).map(|_| int(small(&mut rng, -1, 1))).collect())
            .collect();
        if let Ok(sub) = Subbundle::new(base, basis) {
            out.push((a, sub));
        }
    }
    out
}
