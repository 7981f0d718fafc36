//! Algebra maps, module maps, the ψ-sum and the (co)morphism checkers.

use super::leibniz::{d_operator, DualForm};
use super::{minor, omit_index, omit_sections, NLieRinehart, Section};
use crate::config::Config;
use crate::error::{ensure_len, Error, Result};
use crate::kernel::linalg::{solve_poly_system, Solve};
use crate::kernel::{combinations, unit_vec, zero_vec, MultiIndex, Poly};
use crate::verdict::{first_failure, Verdict, Witness};

/// Substitution homomorphism `ψ: ℚ[x_1..x_{m_A}] → ℚ[y_1..y_{m_B}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    source_vars: usize,
    target_vars: usize,
    images: Vec<Poly>,
}

impl AlgebraMap {
    pub fn new(source_vars: usize, target_vars: usize, images: Vec<Poly>) -> Result<Self> {
        ensure_len("algebra map images", source_vars, images.len())?;
        if let Some(p) = images.iter().find(|p| p.nvars() != target_vars) {
            return Err(Error::ArityMismatch {
                what: "algebra map image variables",
                expected: target_vars,
                found: p.nvars(),
            });
        }
        Ok(AlgebraMap {
            source_vars,
            target_vars,
            images,
        })
    }

    pub fn identity(m: usize) -> Self {
        AlgebraMap {
            source_vars: m,
            target_vars: m,
            images: (0..m).map(|i| Poly::var(m, i)).collect(),
        }
    }

    pub fn source_vars(&self) -> usize {
        self.source_vars
    }

    pub fn target_vars(&self) -> usize {
        self.target_vars
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        if self.source_vars == 0 {
            return Poly::constant(self.target_vars, p.constant_value().unwrap_or_default());
        }
        p.substitute(&self.images).expect("checked arity")
    }

    pub fn apply_vec(&self, v: &[Poly]) -> Vec<Poly> {
        v.iter().map(|p| self.apply(p)).collect()
    }
}

fn check_matrix(what: &'static str, m: &[Vec<Poly>], rows: usize, cols: usize, nvars: usize) -> Result<()> {
    ensure_len(what, rows, m.len())?;
    for row in m {
        ensure_len(what, cols, row.len())?;
        if let Some(p) = row.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::ArityMismatch {
                what: "module map entry variables",
                expected: nvars,
                found: p.nvars(),
            });
        }
    }
    Ok(())
}

/// `Ψ: E → F`; column `k` is the image of `e_k` in the basis of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMapForward {
    matrix: Vec<Vec<Poly>>,
}

impl ModuleMapForward {
    /// Rows index the basis of `F`, columns the basis of `E`.
    pub fn new(matrix: Vec<Vec<Poly>>) -> Self {
        ModuleMapForward { matrix }
    }

    pub fn identity(d: usize, nvars: usize) -> Self {
        ModuleMapForward {
            matrix: (0..d).map(|k| unit_vec(d, nvars, k)).collect(),
        }
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    pub fn column(&self, k: usize) -> Section {
        self.matrix.iter().map(|row| row[k].clone()).collect()
    }
}

/// `Ψ: F → E ⊗_A B`; column `l` is the image of `f_l` over the basis `e_k ⊗ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMapCo {
    matrix: Vec<Vec<Poly>>,
}

impl ModuleMapCo {
    /// Rows index the basis of `E`, columns the basis of `F`.
    pub fn new(matrix: Vec<Vec<Poly>>) -> Self {
        ModuleMapCo { matrix }
    }

    pub fn identity(d: usize, nvars: usize) -> Self {
        ModuleMapCo {
            matrix: (0..d).map(|k| unit_vec(d, nvars, k)).collect(),
        }
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    pub fn column(&self, l: usize) -> Vec<Poly> {
        self.matrix.iter().map(|row| row[l].clone()).collect()
    }
}

/// `𝔛 + Y` in `(E ⊗_A B) ⊕ F`, everything over the variables of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiSumElement {
    pub tensor: Vec<Poly>,
    pub plain: Section,
}

fn check_shapes(re: &NLieRinehart, rf: &NLieRinehart, psi: &AlgebraMap) -> Result<()> {
    if re.arity() != rf.arity() {
        return Err(Error::ArityMismatch {
            what: "arity of the two structures",
            expected: re.arity(),
            found: rf.arity(),
        });
    }
    ensure_len("algebra map source variables", re.nvars(), psi.source_vars)?;
    ensure_len("algebra map target variables", rf.nvars(), psi.target_vars)?;
    Ok(())
}

fn check_elements(re: &NLieRinehart, rf: &NLieRinehart, elems: &[PsiSumElement]) -> Result<()> {
    for u in elems {
        ensure_len("tensor part rank", re.rank(), u.tensor.len())?;
        ensure_len("plain part rank", rf.rank(), u.plain.len())?;
        if let Some(p) = u.tensor.iter().chain(&u.plain).find(|p| p.nvars() != rf.nvars()) {
            return Err(Error::ArityMismatch {
                what: "psi-sum element variables",
                expected: rf.nvars(),
                found: p.nvars(),
            });
        }
    }
    Ok(())
}

/// Generators `x_j` of `A` followed by the random probes of `cfg`.
fn test_functions(m: usize, cfg: &Config) -> Vec<(String, Poly)> {
    let mut out: Vec<(String, Poly)> = (0..m).map(|j| (format!("x{}", j + 1), Poly::var(m, j))).collect();
    if m > 0 {
        out.extend(cfg.random_polys(m).into_iter().map(|p| (p.to_string(), p)));
    }
    out
}

/// `Σ_K det_K(rows) ψ(ρ_E(e_K)(a))`.
fn pushed_anchor(re: &NLieRinehart, psi: &AlgebraMap, rows: &[Vec<Poly>], a: &Poly, nvars: usize) -> Poly {
    let mut out = Poly::zero(nvars);
    for (key, der) in re.anchor_table() {
        let c = minor(rows, key, nvars);
        if c.is_zero() {
            continue;
        }
        out += &(&c * &psi.apply(&der.apply_unchecked(a)));
    }
    out
}

/// Anchor compatibility of an `(n−1)`-tuple, tested on the generators of `A`
/// and on random probes.
pub fn psi_sum_compatible(
    re: &NLieRinehart,
    rf: &NLieRinehart,
    psi: &AlgebraMap,
    tuple: &[PsiSumElement],
) -> Result<Verdict> {
    check_shapes(re, rf, psi)?;
    ensure_len("psi-sum tuple length", re.arity() - 1, tuple.len())?;
    check_elements(re, rf, tuple)?;
    Ok(Verdict::from_option(compatibility_failure(re, rf, psi, tuple, &Config::default())))
}

fn compatibility_failure(
    re: &NLieRinehart,
    rf: &NLieRinehart,
    psi: &AlgebraMap,
    tuple: &[PsiSumElement],
    cfg: &Config,
) -> Option<Witness> {
    let tensors: Vec<Vec<Poly>> = tuple.iter().map(|u| u.tensor.clone()).collect();
    let plains: Vec<Section> = tuple.iter().map(|u| u.plain.clone()).collect();
    let rho_f = rf.anchor_of(&plains);
    for (name, a) in test_functions(re.nvars(), cfg) {
        let lhs = pushed_anchor(re, psi, &tensors, &a, rf.nvars());
        let rhs = rho_f.apply_unchecked(&psi.apply(&a));
        if lhs != rhs {
            return Some(
                Witness::new("psi-sum anchor compatibility")
                    .with_generator(name)
                    .with_residual(vec![&lhs - &rhs]),
            );
        }
    }
    None
}

/// Bracket of the ψ-sum; every `(n−1)`-subtuple must be anchor compatible.
pub fn psi_sum_bracket(
    re: &NLieRinehart,
    rf: &NLieRinehart,
    psi: &AlgebraMap,
    elems: &[PsiSumElement],
) -> Result<PsiSumElement> {
    check_shapes(re, rf, psi)?;
    let n = re.arity();
    ensure_len("psi-sum bracket arguments", n, elems.len())?;
    check_elements(re, rf, elems)?;
    let cfg = Config::default();
    for i in 0..n {
        let sub: Vec<PsiSumElement> = elems
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, u)| u.clone())
            .collect();
        if let Some(w) = compatibility_failure(re, rf, psi, &sub, &cfg) {
            return Err(Error::Precondition(Box::new(
                w.with_note(format!("arguments without slot {}", i + 1)),
            )));
        }
    }
    Ok(psi_sum_bracket_unchecked(re, rf, psi, elems))
}

pub(crate) fn psi_sum_bracket_unchecked(
    re: &NLieRinehart,
    rf: &NLieRinehart,
    psi: &AlgebraMap,
    elems: &[PsiSumElement],
) -> PsiSumElement {
    let n = re.arity();
    let mb = rf.nvars();
    let tensors: Vec<Vec<Poly>> = elems.iter().map(|u| u.tensor.clone()).collect();
    let plains: Vec<Section> = elems.iter().map(|u| u.plain.clone()).collect();
    let mut tensor = zero_vec(re.rank(), mb);
    for (key, val) in re.bracket_table() {
        let c = minor(&tensors, key, mb);
        if c.is_zero() {
            continue;
        }
        for (t, v) in tensor.iter_mut().zip(val) {
            *t += &(&c * &psi.apply(v));
        }
    }
    for j in 0..n {
        let der = rf.anchor_of(&omit_sections(&plains, j));
        if der.is_zero() {
            continue;
        }
        let plus = (n + j + 1) % 2 == 0;
        for (t, b) in tensor.iter_mut().zip(&tensors[j]) {
            let v = der.apply_unchecked(b);
            if plus {
                *t += &v;
            } else {
                *t -= &v;
            }
        }
    }
    PsiSumElement {
        tensor,
        plain: rf.bracket_of(&plains),
    }
}

/// Anchor and bracket conditions of a morphism `E → F` on basis tuples.
pub fn check_morphism(
    re: &NLieRinehart,
    rf: &NLieRinehart,
    map: &ModuleMapForward,
    psi: &AlgebraMap,
) -> Result<Verdict> {
    check_shapes(re, rf, psi)?;
    check_matrix("forward module map", map.matrix(), rf.rank(), re.rank(), rf.nvars())?;
    let n = re.arity();
    let cfg = Config::default();
    let images: Vec<Section> = (0..re.rank()).map(|k| map.column(k)).collect();
    let pick = |key: &MultiIndex| -> Vec<Section> { key.as_slice().iter().map(|&k| images[k].clone()).collect() };

    let funcs = test_functions(re.nvars(), &cfg);
    let combos = combinations(re.rank(), n - 1);
    let w = first_failure(&combos, |key| {
        let rho_e = re.anchor_basis(key.as_slice());
        let rho_f = rf.anchor_of(&pick(key));
        funcs.iter().find_map(|(name, a)| {
            let lhs = psi.apply(&rho_e.apply_unchecked(a));
            let rhs = rho_f.apply_unchecked(&psi.apply(a));
            (lhs != rhs).then(|| {
                Witness::new("morphism anchor condition")
                    .at(key.clone())
                    .with_generator(name.clone())
                    .with_residual(vec![&lhs - &rhs])
            })
        })
    });
    if let Some(w) = w {
        return Ok(Verdict::Fail(w));
    }

    let combos = combinations(re.rank(), n);
    let w = first_failure(&combos, |key| {
        let c = re.bracket_basis(key.as_slice());
        let mut lhs = zero_vec(rf.rank(), rf.nvars());
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let p = psi.apply(ck);
            for (o, v) in lhs.iter_mut().zip(&images[k]) {
                *o += &(&p * v);
            }
        }
        let rhs = rf.bracket_of(&pick(key));
        (lhs != rhs).then(|| {
            Witness::new("morphism bracket condition")
                .at(key.clone())
                .with_residual(crate::kernel::vec_sub(&lhs, &rhs))
        })
    });
    Ok(Verdict::from_option(w))
}

/// Anchor and bracket conditions of a comorphism from `F` to `E`; `map` sends
/// `F` into `E ⊗_A B`.
pub fn check_comorphism(
    rf: &NLieRinehart,
    re: &NLieRinehart,
    map: &ModuleMapCo,
    psi: &AlgebraMap,
) -> Result<Verdict> {
    check_shapes(re, rf, psi)?;
    check_matrix("comodule map", map.matrix(), re.rank(), rf.rank(), rf.nvars())?;
    let n = re.arity();
    let mb = rf.nvars();
    let cfg = Config::default();
    let cols: Vec<Vec<Poly>> = (0..rf.rank()).map(|l| map.column(l)).collect();
    let pick = |idx: &[usize]| -> Vec<Vec<Poly>> { idx.iter().map(|&l| cols[l].clone()).collect() };

    let funcs = test_functions(re.nvars(), &cfg);
    let combos = combinations(rf.rank(), n - 1);
    let w = first_failure(&combos, |key| {
        let rho_f = rf.anchor_basis(key.as_slice());
        let rows = pick(key.as_slice());
        funcs.iter().find_map(|(name, a)| {
            let lhs = rho_f.apply_unchecked(&psi.apply(a));
            let rhs = pushed_anchor(re, psi, &rows, a, mb);
            (lhs != rhs).then(|| {
                Witness::new("comorphism anchor condition")
                    .at(key.clone())
                    .with_generator(name.clone())
                    .with_residual(vec![&lhs - &rhs])
            })
        })
    });
    if let Some(w) = w {
        return Ok(Verdict::Fail(w));
    }

    let combos = combinations(rf.rank(), n);
    let w = first_failure(&combos, |key| {
        let residual = comorphism_bracket_residual(rf, re, &cols, psi, key);
        residual.iter().any(|p| !p.is_zero()).then(|| {
            Witness::new("comorphism bracket condition")
                .at(key.clone())
                .with_residual(residual)
        })
    });
    Ok(Verdict::from_option(w))
}

/// `Ψ([f_L]) − Σ_K det_K ψ([e_K]) − Σ_i (−1)^{n−i} ρ_F(f_{L∖i})(Ψ(f_{L_i}))`.
fn comorphism_bracket_residual(
    rf: &NLieRinehart,
    re: &NLieRinehart,
    cols: &[Vec<Poly>],
    psi: &AlgebraMap,
    key: &MultiIndex,
) -> Vec<Poly> {
    let n = re.arity();
    let mb = rf.nvars();
    let bf = rf.bracket_basis(key.as_slice());
    let mut res = zero_vec(re.rank(), mb);
    for (l, c) in bf.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (r, v) in res.iter_mut().zip(&cols[l]) {
            *r += &(c * v);
        }
    }
    let rows: Vec<Vec<Poly>> = key.as_slice().iter().map(|&l| cols[l].clone()).collect();
    for (k, val) in re.bracket_table() {
        let c = minor(&rows, k, mb);
        if c.is_zero() {
            continue;
        }
        for (r, v) in res.iter_mut().zip(val) {
            *r -= &(&c * &psi.apply(v));
        }
    }
    for i in 0..n {
        let der = rf.anchor_basis(&omit_index(key, i));
        if der.is_zero() {
            continue;
        }
        let plus = (n - (i + 1)) % 2 == 0;
        for (r, b) in res.iter_mut().zip(&cols[key.as_slice()[i]]) {
            let v = der.apply_unchecked(b);
            if plus {
                *r -= &v;
            } else {
                *r += &v;
            }
        }
    }
    res
}

/// The pair whose graph is tested inside the ψ-sum.
#[derive(Clone, Debug)]
pub enum GraphPair {
    Morphism(ModuleMapForward),
    Comorphism(ModuleMapCo),
}

/// Whether the graph of the pair is a subalgebra of the ψ-sum: anchor
/// compatibility of its generators and closure under the ψ-sum bracket.
pub fn graph_check(re: &NLieRinehart, rf: &NLieRinehart, psi: &AlgebraMap, pair: &GraphPair) -> Result<Verdict> {
    graph_check_with(re, rf, psi, pair, &Config::default())
}

pub fn graph_check_with(
    re: &NLieRinehart,
    rf: &NLieRinehart,
    psi: &AlgebraMap,
    pair: &GraphPair,
    cfg: &Config,
) -> Result<Verdict> {
    check_shapes(re, rf, psi)?;
    let mb = rf.nvars();
    let n = re.arity();
    let gens: Vec<PsiSumElement> = match pair {
        GraphPair::Morphism(map) => {
            check_matrix("forward module map", map.matrix(), rf.rank(), re.rank(), mb)?;
            (0..re.rank())
                .map(|k| PsiSumElement {
                    tensor: unit_vec(re.rank(), mb, k),
                    plain: map.column(k),
                })
                .collect()
        }
        GraphPair::Comorphism(map) => {
            check_matrix("comodule map", map.matrix(), re.rank(), rf.rank(), mb)?;
            (0..rf.rank())
                .map(|l| PsiSumElement {
                    tensor: map.column(l),
                    plain: unit_vec(rf.rank(), mb, l),
                })
                .collect()
        }
    };
    let pick = |key: &MultiIndex| -> Vec<PsiSumElement> { key.as_slice().iter().map(|&i| gens[i].clone()).collect() };

    let combos = combinations(gens.len(), n - 1);
    let w = first_failure(&combos, |key| {
        compatibility_failure(re, rf, psi, &pick(key), cfg).map(|w| {
            let mut w = w.at(key.clone());
            w.condition = "graph anchor compatibility".into();
            w
        })
    });
    if let Some(w) = w {
        return Ok(Verdict::Fail(w));
    }

    let stacked: Vec<Vec<Poly>> = gens
        .iter()
        .map(|g| g.tensor.iter().chain(&g.plain).cloned().collect())
        .collect();
    let combos = combinations(gens.len(), n);
    let w = first_failure(&combos, |key| {
        let u = psi_sum_bracket_unchecked(re, rf, psi, &pick(key));
        let target: Vec<Poly> = u.tensor.iter().chain(&u.plain).cloned().collect();
        match solve_poly_system(&stacked, &target, mb, cfg.degree_bound) {
            Solve::Solution(_) => None,
            other => {
                // the identity block forces the coefficients
                let (forced, rest): (&[Poly], Vec<Poly>) = match pair {
                    GraphPair::Morphism(_) => (&u.tensor, u.plain.clone()),
                    GraphPair::Comorphism(_) => (&u.plain, u.tensor.clone()),
                };
                let mut residual = rest;
                for (c, g) in forced.iter().zip(&gens) {
                    let part = match pair {
                        GraphPair::Morphism(_) => &g.plain,
                        GraphPair::Comorphism(_) => &g.tensor,
                    };
                    for (r, v) in residual.iter_mut().zip(part) {
                        *r -= &(c * v);
                    }
                }
                let mut w = Witness::new("graph closure").at(key.clone()).with_residual(residual);
                if let Solve::NotFoundWithinBound(b) = other {
                    w = w.with_note(format!("no solution of degree at most {b}"));
                }
                Some(w)
            }
        }
    });
    Ok(Verdict::from_option(w))
}

/// `Ψ*` on forms of degree `0` and `n−1`, and on the level-two forms
/// produced by `d`.
fn pull_form(re: &NLieRinehart, rf: &NLieRinehart, cols: &[Vec<Poly>], psi: &AlgebraMap, form: &DualForm) -> DualForm {
    let mb = rf.nvars();
    let basis_f = combinations(rf.rank(), rf.arity() - 1);
    let basis_e = combinations(re.rank(), re.arity() - 1);
    let minors: Vec<Vec<Poly>> = basis_f
        .iter()
        .map(|l| {
            let rows: Vec<Vec<Poly>> = l.as_slice().iter().map(|&j| cols[j].clone()).collect();
            basis_e.iter().map(|k| minor(&rows, k, mb)).collect()
        })
        .collect();
    match form.level() {
        0 => DualForm::scalar(psi.apply(&form.value(&[]))),
        1 => DualForm::from_pairings(
            mb,
            basis_f.iter().enumerate().map(|(li, l)| {
                let mut v = Poly::zero(mb);
                for (ki, k) in basis_e.iter().enumerate() {
                    let c = &minors[li][ki];
                    if !c.is_zero() {
                        v += &(c * &psi.apply(&form.value(std::slice::from_ref(k))));
                    }
                }
                (l.clone(), v)
            }),
        ),
        _ => {
            let mut vals = Vec::new();
            for (l1i, l1) in basis_f.iter().enumerate() {
                for (l2i, l2) in basis_f.iter().enumerate() {
                    let mut v = Poly::zero(mb);
                    for (key, val) in form.values() {
                        let k1 = basis_e.iter().position(|k| *k == key[0]).expect("basis key");
                        let k2 = basis_e.iter().position(|k| *k == key[1]).expect("basis key");
                        let c = &minors[l1i][k1] * &minors[l2i][k2];
                        if !c.is_zero() {
                            v += &(&c * &psi.apply(val));
                        }
                    }
                    vals.push((vec![l1.clone(), l2.clone()], v));
                }
            }
            DualForm::from_tuples(2, mb, vals)
        }
    }
}

/// `d_F ∘ Ψ* = Ψ* ∘ d_E` on functions (generators and random probes) and on
/// the dual basis of `∧^{n−1} E*`.
pub fn check_intertwine(
    re: &NLieRinehart,
    rf: &NLieRinehart,
    map: &ModuleMapCo,
    psi: &AlgebraMap,
) -> Result<Verdict> {
    check_shapes(re, rf, psi)?;
    check_matrix("comodule map", map.matrix(), re.rank(), rf.rank(), rf.nvars())?;
    let cols: Vec<Vec<Poly>> = (0..rf.rank()).map(|l| map.column(l)).collect();
    let cfg = Config::default();
    let ma = re.nvars();

    for (name, a) in test_functions(ma, &cfg) {
        let a_form = DualForm::scalar(a);
        let lhs = d_operator(rf, &pull_form(re, rf, &cols, psi, &a_form))?;
        let rhs = pull_form(re, rf, &cols, psi, &d_operator(re, &a_form)?);
        if lhs != rhs {
            return Ok(Verdict::Fail(form_witness("intertwining on functions", &lhs, &rhs).with_generator(name)));
        }
    }
    for key in combinations(re.rank(), re.arity() - 1) {
        let xi = DualForm::dual_basis(ma, key.clone());
        let lhs = d_operator(rf, &pull_form(re, rf, &cols, psi, &xi))?;
        let rhs = pull_form(re, rf, &cols, psi, &d_operator(re, &xi)?);
        if lhs != rhs {
            return Ok(Verdict::Fail(
                form_witness("intertwining on dual basis forms", &lhs, &rhs).at(key),
            ));
        }
    }
    Ok(Verdict::Pass)
}

fn form_witness(condition: &str, lhs: &DualForm, rhs: &DualForm) -> Witness {
    let first = lhs
        .values()
        .keys()
        .chain(rhs.values().keys())
        .filter(|k| lhs.value(k) != rhs.value(k))
        .min()
        .cloned()
        .unwrap_or_default();
    Witness::new(condition)
        .with_indices(first.iter().cloned())
        .with_residual(vec![&lhs.value(&first) - &rhs.value(&first)])
}
