//! n-Lie algebroids over affine space with a global frame.

use crate::config::Config;
use crate::error::{ensure_len, Error, Result};
use crate::kernel::linalg::{rank, rref, solve_poly_system, Solve};
use crate::kernel::{combinations, int, unit_vec, zero_vec, MultiIndex, Poly, Rat};
use crate::nambu::{check_coisotropic, check_nambu_map, check_nambu_relation, NambuTensor, PolyMap, PolySubmanifold};
use crate::rinehart::{
    check_morphism, check_rinehart, direct_sum, restrict, AlgebraMap, CoordinateIdeal, ModuleMapForward,
    NLieRinehart, Section,
};
use crate::verdict::{first_failure, PairedVerdict, Verdict, Witness};

/// Sign convention of [`dual_linear_nambu`], printed alongside serialized tensors.
pub const DUAL_SIGN_CONVENTION: &str =
    "linear functions xi_k = <., e_k>; fibre slots first: {xi_K, x_j} = rho(e_K)(x_j), {xi_1..xi_n} = <., [e_1..e_n]>";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLieAlgebroid {
    structure: NLieRinehart,
}

impl NLieAlgebroid {
    pub fn new(structure: NLieRinehart) -> Self {
        NLieAlgebroid { structure }
    }

    pub fn structure(&self) -> &NLieRinehart {
        &self.structure
    }

    pub fn base_dim(&self) -> usize {
        self.structure.nvars()
    }

    pub fn rank(&self) -> usize {
        self.structure.rank()
    }

    pub fn arity(&self) -> usize {
        self.structure.arity()
    }

    /// Bracket and anchor multiplied by `(−1)^{n−1}`.
    pub fn twisted(&self) -> Self {
        let sign = if (self.arity() - 1) % 2 == 0 { int(1) } else { int(-1) };
        NLieAlgebroid::new(self.structure.scaled(&sign))
    }
}

/// Rinehart identities, then the anchor as a bracket morphism evaluated on
/// the coordinate functions.
pub fn check_algebroid(a: &NLieAlgebroid) -> Verdict {
    let r = &a.structure;
    check_rinehart(r).and_then(|| {
        let n = r.arity();
        let m = r.nvars();
        let combos = combinations(r.rank(), n - 1);
        let pairs: Vec<(MultiIndex, MultiIndex)> = combos
            .iter()
            .flat_map(|x| combos.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        let w = first_failure(&pairs, |(x, y)| {
            let rx = r.anchor_basis(x.as_slice());
            let ry = r.anchor_basis(y.as_slice());
            let residual: Vec<Poly> = (0..m)
                .map(|j| {
                    let xj = Poly::var(m, j);
                    let mut v = rx.apply_unchecked(&ry.apply_unchecked(&xj));
                    v -= &ry.apply_unchecked(&rx.apply_unchecked(&xj));
                    for i in 0..n - 1 {
                        let mut idx = x.as_slice().to_vec();
                        idx.push(y.as_slice()[i]);
                        let b = r.bracket_basis(&idx);
                        let mut args: Vec<Section> = y.as_slice().iter().map(|&k| r.basis_section(k)).collect();
                        args[i] = b;
                        v -= &r.anchor(&args).expect("shape").apply_unchecked(&xj);
                    }
                    v
                })
                .collect();
            residual.iter().any(|p| !p.is_zero()).then(|| {
                Witness::new("anchor preserves brackets on coordinates")
                    .with_indices([x.clone(), y.clone()])
                    .with_residual(residual)
            })
        });
        Verdict::from_option(w)
    })
}

/// Constant subspace `H` of the fibres over a coordinate subspace `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subbundle {
    base: PolySubmanifold,
    basis: Vec<Vec<Rat>>,
}

impl Subbundle {
    /// `basis` lists the spanning vectors of `H`, each of length equal to the rank.
    pub fn new(base: PolySubmanifold, basis: Vec<Vec<Rat>>) -> Result<Self> {
        if !matches!(base, PolySubmanifold::Coordinate { .. }) {
            return Err(Error::Unsupported("subbundle over a non-coordinate base".into()));
        }
        if let Some(first) = basis.first() {
            for v in &basis {
                ensure_len("subbundle basis vector", first.len(), v.len())?;
            }
        }
        let r = rank(&basis);
        if r != basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "subbundle basis has rank {r} for {} vectors",
                basis.len()
            )));
        }
        Ok(Subbundle { base, basis })
    }

    pub fn full(m: usize, rank: usize) -> Self {
        Subbundle {
            base: PolySubmanifold::whole(m),
            basis: (0..rank)
                .map(|k| (0..rank).map(|i| int((i == k) as i64)).collect())
                .collect(),
        }
    }

    pub fn base(&self) -> &PolySubmanifold {
        &self.base
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    fn sections(&self, m: usize) -> Vec<Section> {
        self.basis
            .iter()
            .map(|v| v.iter().map(|c| Poly::constant(m, c.clone())).collect())
            .collect()
    }
}

/// (b) anchor tangency of `(n−1)`-tuples, then (a) closure of brackets of
/// `n`-tuples restricted to `N` in the span of the restricted sections.
fn subalgebroid_failure(r: &NLieRinehart, n: &PolySubmanifold, sections: &[Section], cfg: &Config) -> Option<Witness> {
    let arity = r.arity();
    let defining = n.defining_functions();
    let tuples = combinations(sections.len(), arity - 1);
    let pick = |key: &MultiIndex| -> Vec<Section> { key.as_slice().iter().map(|&i| sections[i].clone()).collect() };
    let w = first_failure(&tuples, |key| {
        let v = r.anchor(&pick(key)).expect("shape");
        let residual: Vec<Poly> = defining.iter().map(|h| n.reduce(&v.apply_unchecked(h))).collect();
        residual.iter().any(|p| !p.is_zero()).then(|| {
            Witness::new("anchor tangent to the base")
                .at(key.clone())
                .with_residual(residual)
        })
    });
    if w.is_some() {
        return w;
    }
    let reduced: Vec<Vec<Poly>> = sections
        .iter()
        .map(|s| s.iter().map(|p| n.reduce(p)).collect())
        .collect();
    let tuples = combinations(sections.len(), arity);
    first_failure(&tuples, |key| {
        let b: Vec<Poly> = r.bracket(&pick(key)).expect("shape").iter().map(|p| n.reduce(p)).collect();
        if b.iter().all(Poly::is_zero) {
            return None;
        }
        match solve_poly_system(&reduced, &b, r.nvars(), cfg.degree_bound) {
            Solve::Solution(_) => None,
            Solve::NoSolution => Some(Witness::new("bracket closes in the subbundle").at(key.clone()).with_residual(b)),
            Solve::NotFoundWithinBound(d) => Some(
                Witness::new("bracket closes in the subbundle")
                    .at(key.clone())
                    .with_residual(b)
                    .with_note(format!("no solution of degree at most {d}")),
            ),
        }
    })
}

/// Verdict of the subalgebroid conditions; on success also the induced
/// algebroid over `N` on the basis of `H`.
#[derive(Clone, Debug)]
pub struct SubalgebroidOutcome {
    pub verdict: Verdict,
    pub induced: Option<NLieAlgebroid>,
}

pub fn check_subalgebroid(a: &NLieAlgebroid, h: &Subbundle) -> Result<SubalgebroidOutcome> {
    check_subalgebroid_with(a, h, &Config::default())
}

pub fn check_subalgebroid_with(a: &NLieAlgebroid, h: &Subbundle, cfg: &Config) -> Result<SubalgebroidOutcome> {
    let m = a.base_dim();
    ensure_len("subbundle base dimension", m, h.base.nvars())?;
    if let Some(v) = h.basis.first() {
        ensure_len("subbundle fibre dimension", a.rank(), v.len())?;
    }
    let sections = h.sections(m);
    let verdict = Verdict::from_option(subalgebroid_failure(&a.structure, &h.base, &sections, cfg));
    let induced = if verdict.is_pass() {
        let vars = match &h.base {
            PolySubmanifold::Coordinate { vars, .. } => vars.clone(),
            PolySubmanifold::Graph { .. } => unreachable!("checked in Subbundle::new"),
        };
        Some(NLieAlgebroid::new(restrict(
            &a.structure,
            &CoordinateIdeal::new(vars),
            &sections,
            cfg,
        )?))
    } else {
        None
    };
    Ok(SubalgebroidOutcome { verdict, induced })
}

/// `Φ: E_1 → E_2` over `φ: M → N`; `fiber` is `r_2 × r_1` over the
/// variables of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleMapForward {
    pub base: PolyMap,
    pub fiber: Vec<Vec<Poly>>,
}

/// Comorphism over `φ: M → N`; `pullback` is `r_1 × r_2` over the variables of
/// `M`, column `l` being the pulled-back image of the `l`-th frame section of `E_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleMapCo {
    pub base: PolyMap,
    pub pullback: Vec<Vec<Poly>>,
}

fn check_matrix(what: &'static str, m: &[Vec<Poly>], rows: usize, cols: usize, nvars: usize) -> Result<()> {
    ensure_len(what, rows, m.len())?;
    for row in m {
        ensure_len(what, cols, row.len())?;
        if let Some(p) = row.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::ArityMismatch {
                what: "bundle map entry variables",
                expected: nvars,
                found: p.nvars(),
            });
        }
    }
    Ok(())
}

fn check_pair(a1: &NLieAlgebroid, a2: &NLieAlgebroid, base: &PolyMap) -> Result<()> {
    ensure_len("arity of the two algebroids", a1.arity(), a2.arity())?;
    ensure_len("base map source", a1.base_dim(), base.source())?;
    ensure_len("base map target", a2.base_dim(), base.target())?;
    Ok(())
}

fn columns(m: &[Vec<Poly>], cols: usize) -> Vec<Section> {
    (0..cols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

fn pick(cols: &[Section], key: &MultiIndex) -> Vec<Section> {
    key.as_slice().iter().map(|&i| cols[i].clone()).collect()
}

/// Anchor and bracket conditions of a morphism, evaluated directly.
pub fn morphism_conditions(phi: &BundleMapForward, a1: &NLieAlgebroid, a2: &NLieAlgebroid) -> Result<Verdict> {
    check_pair(a1, a2, &phi.base)?;
    check_matrix("fibre map", &phi.fiber, a2.rank(), a1.rank(), a1.base_dim())?;
    let (r1, r2) = (&a1.structure, &a2.structure);
    let n = r1.arity();
    let m1 = a1.base_dim();
    let images = columns(&phi.fiber, a1.rank());

    let combos = combinations(a1.rank(), n - 1);
    let w = first_failure(&combos, |key| {
        let rho1 = r1.anchor_basis(key.as_slice());
        let rows = pick(&images, key);
        let residual: Vec<Poly> = (0..a2.base_dim())
            .map(|j| {
                let mut lhs = Poly::zero(m1);
                for (l, der) in r2.anchor_table() {
                    let c = crate::rinehart::minor_of(&rows, l, m1);
                    if !c.is_zero() {
                        lhs += &(&c * &phi.base.pullback(&der.components()[j]));
                    }
                }
                &lhs - &rho1.apply_unchecked(&phi.base.components()[j])
            })
            .collect();
        residual.iter().any(|p| !p.is_zero()).then(|| {
            Witness::new("anchors related by the base map")
                .at(key.clone())
                .with_residual(residual)
        })
    });
    if let Some(w) = w {
        return Ok(Verdict::Fail(w));
    }

    let combos = combinations(a1.rank(), n);
    let w = first_failure(&combos, |key| {
        let c = r1.bracket_basis(key.as_slice());
        let mut res = zero_vec(a2.rank(), m1);
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (r, v) in res.iter_mut().zip(&images[k]) {
                *r += &(ck * v);
            }
        }
        let rows = pick(&images, key);
        for (l, val) in r2.bracket_table() {
            let d = crate::rinehart::minor_of(&rows, l, m1);
            if d.is_zero() {
                continue;
            }
            for (r, v) in res.iter_mut().zip(val) {
                *r -= &(&d * &phi.base.pullback(v));
            }
        }
        for i in 0..n {
            let idx: Vec<usize> = key.as_slice().iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &k)| k).collect();
            let der = r1.anchor_basis(&idx);
            if der.is_zero() {
                continue;
            }
            let plus = (n - (i + 1)) % 2 == 0;
            for (r, f) in res.iter_mut().zip(&images[key.as_slice()[i]]) {
                let v = der.apply_unchecked(f);
                if plus {
                    *r -= &v;
                } else {
                    *r += &v;
                }
            }
        }
        res.iter().any(|p| !p.is_zero()).then(|| {
            Witness::new("fibre map preserves brackets")
                .at(key.clone())
                .with_residual(res)
        })
    });
    Ok(Verdict::from_option(w))
}

/// Graph of `Φ` as sections `(Φσ_k, sign·σ_k)` of `E_2 × E_1^{tw}` over
/// `Gr(φ) ⊆ N × M`, tested as a subalgebroid.
pub fn morphism_graph_verdict(
    phi: &BundleMapForward,
    a1: &NLieAlgebroid,
    a2: &NLieAlgebroid,
    second_sign: i64,
    cfg: &Config,
) -> Result<Verdict> {
    check_pair(a1, a2, &phi.base)?;
    check_matrix("fibre map", &phi.fiber, a2.rank(), a1.rank(), a1.base_dim())?;
    let (m1, m2) = (a1.base_dim(), a2.base_dim());
    let total = m2 + m1;
    let product = direct_sum(&a2.structure, &a1.twisted().structure)?;
    let sections: Vec<Section> = (0..a1.rank())
        .map(|k| {
            let mut s: Section = phi.fiber.iter().map(|row| row[k].embed(m2, total)).collect();
            let mut tail = unit_vec(a1.rank(), total, k);
            tail[k] = Poly::from_int(total, second_sign);
            s.extend(tail);
            s
        })
        .collect();
    let graph = PolySubmanifold::graph_of(&phi.base);
    Ok(Verdict::from_option(subalgebroid_failure(&product, &graph, &sections, cfg)))
}

/// Morphism conditions, cross-checked against the graph formulation.
pub fn check_morphism_algebroid(phi: &BundleMapForward, a1: &NLieAlgebroid, a2: &NLieAlgebroid) -> Result<Verdict> {
    let direct = morphism_conditions(phi, a1, a2)?;
    let graph = morphism_graph_verdict(phi, a1, a2, -1, &Config::default())?;
    PairedVerdict { direct, dual: graph }.shared()
}

fn base_algebra_map(base: &PolyMap) -> AlgebraMap {
    AlgebraMap::new(base.target(), base.source(), base.components().to_vec()).expect("shape")
}

/// Comorphism conditions, evaluated directly.
pub fn comorphism_conditions(phi: &BundleMapCo, a2: &NLieAlgebroid, a1: &NLieAlgebroid) -> Result<Verdict> {
    check_pair(a1, a2, &phi.base)?;
    check_matrix("pullback map", &phi.pullback, a1.rank(), a2.rank(), a1.base_dim())?;
    let (r1, r2) = (&a1.structure, &a2.structure);
    let n = r1.arity();
    let pulled = columns(&phi.pullback, a2.rank());

    let combos = combinations(a2.rank(), n - 1);
    let w = first_failure(&combos, |key| {
        let v = r1.anchor(&pick(&pulled, key)).expect("shape");
        let rho2 = r2.anchor_basis(key.as_slice());
        let residual: Vec<Poly> = (0..a2.base_dim())
            .map(|j| &v.apply_unchecked(&phi.base.components()[j]) - &phi.base.pullback(&rho2.components()[j]))
            .collect();
        residual.iter().any(|p| !p.is_zero()).then(|| {
            Witness::new("pulled-back anchor is related to the anchor")
                .at(key.clone())
                .with_residual(residual)
        })
    });
    if let Some(w) = w {
        return Ok(Verdict::Fail(w));
    }

    let combos = combinations(a2.rank(), n);
    let w = first_failure(&combos, |key| {
        let b2 = r2.bracket_basis(key.as_slice());
        let mut res = r1.bracket(&pick(&pulled, key)).expect("shape");
        for (l, c) in b2.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = phi.base.pullback(c);
            for (r, v) in res.iter_mut().zip(&pulled[l]) {
                *r -= &(&c * v);
            }
        }
        res.iter().any(|p| !p.is_zero()).then(|| {
            Witness::new("pullback preserves brackets")
                .at(key.clone())
                .with_residual(res)
        })
    });
    Ok(Verdict::from_option(w))
}

/// Rinehart morphism `(Γ(E_2), C(N)) → (Γ(E_1), C(M))` induced by a comorphism.
pub fn comorphism_rinehart_verdict(phi: &BundleMapCo, a2: &NLieAlgebroid, a1: &NLieAlgebroid) -> Result<Verdict> {
    check_pair(a1, a2, &phi.base)?;
    check_morphism(
        &a2.structure,
        &a1.structure,
        &ModuleMapForward::new(phi.pullback.clone()),
        &base_algebra_map(&phi.base),
    )
}

/// Comorphism conditions, cross-checked against the induced Rinehart morphism.
pub fn check_comorphism_algebroid(phi: &BundleMapCo, a2: &NLieAlgebroid, a1: &NLieAlgebroid) -> Result<Verdict> {
    let direct = comorphism_conditions(phi, a2, a1)?;
    let bridge = comorphism_rinehart_verdict(phi, a2, a1)?;
    PairedVerdict { direct, dual: bridge }.shared()
}

/// Rinehart comorphism from `(Γ(E_1), C(M))` to `(Γ(E_2), C(N))` induced by a morphism.
pub fn morphism_rinehart_verdict(phi: &BundleMapForward, a1: &NLieAlgebroid, a2: &NLieAlgebroid) -> Result<Verdict> {
    check_pair(a1, a2, &phi.base)?;
    crate::rinehart::check_comorphism(
        &a1.structure,
        &a2.structure,
        &crate::rinehart::ModuleMapCo::new(phi.fiber.clone()),
        &base_algebra_map(&phi.base),
    )
}

fn require_rank_n(a: &NLieAlgebroid) -> Result<()> {
    if a.rank() != a.arity() {
        return Err(Error::RankNotArity {
            rank: a.rank(),
            arity: a.arity(),
        });
    }
    Ok(())
}

/// Linear Nambu tensor on the dual bundle, variables `(x_1..x_m, ξ_1..ξ_n)`.
pub fn dual_linear_nambu(a: &NLieAlgebroid) -> Result<NambuTensor> {
    require_rank_n(a)?;
    let (m, n) = (a.base_dim(), a.arity());
    let total = m + n;
    let r = &a.structure;
    let xi = |k: usize| Poly::var(total, m + k);
    let mut entries = Vec::new();
    let top: Vec<usize> = (0..n).collect();
    let mut c = Poly::zero(total);
    for (k, ck) in r.bracket_basis(&top).iter().enumerate() {
        c += &(&ck.embed(0, total) * &xi(k));
    }
    entries.push(((m..total).collect::<Vec<_>>(), c));
    // key (x_j, ξ_K) is (−1)^{n−1} times the pairing with the ξ-slots first
    let odd = (n - 1) % 2 == 1;
    for key in combinations(n, n - 1) {
        let der = r.anchor_basis(key.as_slice());
        for j in 0..m {
            let v = der.components()[j].embed(0, total);
            if v.is_zero() {
                continue;
            }
            let mut idx = vec![j];
            idx.extend(key.as_slice().iter().map(|&k| m + k));
            entries.push((idx, if odd { -v } else { v }));
        }
    }
    NambuTensor::new(n, total, entries)
}

/// `E_1^* → E_2^*`, `(x, ξ) ↦ (φ(x), η)` with `η_l = Σ_k P_{kl}(x) ξ_k`.
pub fn dual_map(phi: &BundleMapCo, a2: &NLieAlgebroid, a1: &NLieAlgebroid) -> Result<PolyMap> {
    check_pair(a1, a2, &phi.base)?;
    check_matrix("pullback map", &phi.pullback, a1.rank(), a2.rank(), a1.base_dim())?;
    let (m1, m2) = (a1.base_dim(), a2.base_dim());
    let total = m1 + a1.rank();
    let mut comps: Vec<Poly> = phi.base.components().iter().map(|c| c.embed(0, total)).collect();
    for l in 0..a2.rank() {
        let mut eta = Poly::zero(total);
        for k in 0..a1.rank() {
            eta += &(&phi.pullback[k][l].embed(0, total) * &Poly::var(total, m1 + k));
        }
        comps.push(eta);
    }
    PolyMap::new(total, m2 + a2.rank(), comps)
}

/// Comorphism conditions next to the Nambu-map test of the dual map.
pub fn comorphism_duality_pair(phi: &BundleMapCo, a2: &NLieAlgebroid, a1: &NLieAlgebroid) -> Result<PairedVerdict> {
    require_rank_n(a1)?;
    require_rank_n(a2)?;
    let direct = check_comorphism_algebroid(phi, a2, a1)?;
    let dual = check_nambu_map(&dual_map(phi, a2, a1)?, &dual_linear_nambu(a1)?, &dual_linear_nambu(a2)?)?;
    Ok(PairedVerdict { direct, dual })
}

pub fn check_duality_comorphism(phi: &BundleMapCo, a2: &NLieAlgebroid, a1: &NLieAlgebroid) -> Result<Verdict> {
    comorphism_duality_pair(phi, a2, a1)?.shared()
}

/// `{(η, ξ) : y = φ(x), ξ_k = Σ_l F_{lk}(x) η_l} ⊆ E_2^* × E_1^*` in
/// variables `(y, η, x, ξ)`.
pub fn dual_relation(phi: &BundleMapForward, a1: &NLieAlgebroid, a2: &NLieAlgebroid) -> Result<PolySubmanifold> {
    check_pair(a1, a2, &phi.base)?;
    check_matrix("fibre map", &phi.fiber, a2.rank(), a1.rank(), a1.base_dim())?;
    let (m1, m2, r1, r2) = (a1.base_dim(), a2.base_dim(), a1.rank(), a2.rank());
    let total = m2 + r2 + m1 + r1;
    let x_off = m2 + r2;
    let mut outputs: Vec<(usize, Poly)> = phi
        .base
        .components()
        .iter()
        .enumerate()
        .map(|(j, c)| (j, c.embed(x_off, total)))
        .collect();
    for k in 0..r1 {
        let mut g = Poly::zero(total);
        for l in 0..r2 {
            g += &(&phi.fiber[l][k].embed(x_off, total) * &Poly::var(total, m2 + l));
        }
        outputs.push((x_off + m1 + k, g));
    }
    PolySubmanifold::graph(total, outputs)
}

/// Morphism conditions next to the coisotropy of the dual relation.
pub fn morphism_duality_pair(phi: &BundleMapForward, a1: &NLieAlgebroid, a2: &NLieAlgebroid) -> Result<PairedVerdict> {
    require_rank_n(a1)?;
    require_rank_n(a2)?;
    let direct = check_morphism_algebroid(phi, a1, a2)?;
    let dual = check_nambu_relation(&dual_linear_nambu(a1)?, &dual_linear_nambu(a2)?, &dual_relation(phi, a1, a2)?)?;
    Ok(PairedVerdict { direct, dual })
}

pub fn check_duality_morphism(phi: &BundleMapForward, a1: &NLieAlgebroid, a2: &NLieAlgebroid) -> Result<Verdict> {
    morphism_duality_pair(phi, a1, a2)?.shared()
}

/// `H° = {x_S = 0, ξ ⊥ H}` inside the dual bundle.
pub fn annihilator(a: &NLieAlgebroid, h: &Subbundle) -> Result<PolySubmanifold> {
    let (m, r) = (a.base_dim(), a.rank());
    let total = m + r;
    let vars = match &h.base {
        PolySubmanifold::Coordinate { vars, .. } => vars.clone(),
        PolySubmanifold::Graph { .. } => return Err(Error::Unsupported("graph base".into())),
    };
    let mut outputs: Vec<(usize, Poly)> = vars.iter().map(|&v| (v, Poly::zero(total))).collect();
    let (rows, pivots) = rref(h.basis.clone());
    let zero = Rat::from_integer(0.into());
    for (row, &p) in rows.iter().zip(&pivots) {
        let mut g = Poly::zero(total);
        for (f, c) in row.iter().enumerate() {
            if f != p && *c != zero {
                g -= &Poly::var(total, m + f).scale(c);
            }
        }
        outputs.push((m + p, g));
    }
    PolySubmanifold::graph(total, outputs)
}

/// Subalgebroid verdict next to the coisotropy of `H°`.
pub fn annihilator_pair(a: &NLieAlgebroid, h: &Subbundle) -> Result<PairedVerdict> {
    require_rank_n(a)?;
    let direct = check_subalgebroid(a, h)?.verdict;
    let dual = check_coisotropic(&dual_linear_nambu(a)?, &annihilator(a, h)?)?;
    Ok(PairedVerdict { direct, dual })
}

pub fn check_annihilator(a: &NLieAlgebroid, h: &Subbundle) -> Result<Verdict> {
    annihilator_pair(a, h)?.shared()
}

#[cfg(test)]
mod tests;
