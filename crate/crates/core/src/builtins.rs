//! Named example structures.

use crate::algebroid::{BundleMapCo, BundleMapForward, NLieAlgebroid};
use crate::kernel::{combinations, int, linalg::signed_permutations, Poly, PolyDerivation};
use crate::nambu::{NambuTensor, PolyMap};
use crate::nlie::NLieAlgebra;
use crate::rinehart::NLieRinehart;

/// The simple 3-Lie algebra on `ℚ^4`: `[e_i,e_j,e_k] = Σ_l ε_{ijkl} e_l`.
pub fn v4() -> NLieAlgebra {
    let perms = signed_permutations(4);
    let entries = combinations(4, 3).into_iter().map(|key| {
        let k = key.as_slice();
        let l = (0..4).find(|i| !k.contains(i)).unwrap();
        let seq = [k[0], k[1], k[2], l];
        let sign = perms.iter().find(|(p, _)| p[..] == seq[..]).unwrap().1;
        let mut v = vec![int(0); 4];
        v[l] = int(sign as i64);
        (k.to_vec(), v)
    });
    NLieAlgebra::new(3, 4, entries).expect("valid table")
}

/// Tangent model: `n` variables, rank `n`, zero brackets, and
/// `ρ(e_1,…,e_{n−1}) = ∂/∂x_1`.
pub fn tangent(n: usize) -> NLieRinehart {
    tangent_with(n, n, n)
}

/// Tangent-type structure with `m ≥ 1` variables and rank `d ≥ n−1`.
pub fn tangent_with(m: usize, d: usize, n: usize) -> NLieRinehart {
    assert!(m >= 1 && d + 1 >= n && n >= 2);
    NLieRinehart::new(
        m,
        d,
        n,
        [((0..n - 1).collect(), PolyDerivation::basis(m, 0))],
        std::iter::empty(),
    )
    .expect("valid table")
}

pub fn zero_rinehart(m: usize, d: usize, n: usize) -> NLieRinehart {
    NLieRinehart::zero(m, d, n)
}

/// Constant structure of an n-Lie algebra with no base variables.
pub fn constant(l: &NLieAlgebra) -> NLieRinehart {
    NLieRinehart::from_nlie(l)
}

/// `∂/∂x_1 ∧ … ∧ ∂/∂x_m`.
pub fn canonical_nambu(m: usize) -> NambuTensor {
    NambuTensor::top(m)
}

pub fn tangent_algebroid(n: usize) -> NLieAlgebroid {
    NLieAlgebroid::new(tangent(n))
}

pub fn identity_map(m: usize) -> PolyMap {
    PolyMap::identity(m)
}

fn identity_matrix(d: usize, m: usize) -> Vec<Vec<Poly>> {
    (0..d)
        .map(|r| (0..d).map(|c| Poly::from_int(m, (r == c) as i64)).collect())
        .collect()
}

/// Rank-n bundles over `ℚ^n` with zero brackets: `A_2` the tangent model,
/// `A_1` with zero anchor, joined by the zero pullback over the identity.
/// Returns `(Φ, A_2, A_1)`.
pub fn comorphism_counterexample(n: usize) -> (BundleMapCo, NLieAlgebroid, NLieAlgebroid) {
    let phi = BundleMapCo {
        base: PolyMap::identity(n),
        pullback: vec![vec![Poly::zero(n); n]; n],
    };
    (phi, tangent_algebroid(n), NLieAlgebroid::new(zero_rinehart(n, n, n)))
}

/// Identity fibres over `φ(x) = (2x_1, x_2, …)` between tangent models.
pub fn base_scaled_morphism(n: usize) -> (BundleMapForward, NLieAlgebroid, NLieAlgebroid) {
    let mut comps: Vec<Poly> = (0..n).map(|j| Poly::var(n, j)).collect();
    comps[0] = &comps[0] * &Poly::from_int(n, 2);
    let phi = BundleMapForward {
        base: PolyMap::new(n, n, comps).expect("shape"),
        fiber: identity_matrix(n, n),
    };
    (phi, tangent_algebroid(n), tangent_algebroid(n))
}

pub fn identity_morphism(a: &NLieAlgebroid) -> BundleMapForward {
    BundleMapForward {
        base: PolyMap::identity(a.base_dim()),
        fiber: identity_matrix(a.rank(), a.base_dim()),
    }
}

pub fn identity_comorphism(a: &NLieAlgebroid) -> BundleMapCo {
    BundleMapCo {
        base: PolyMap::identity(a.base_dim()),
        pullback: identity_matrix(a.rank(), a.base_dim()),
    }
}
