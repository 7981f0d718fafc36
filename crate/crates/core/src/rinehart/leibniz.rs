//! The Leibniz-Rinehart structure on `∧^{n−1}_A E` and the operator `d` on
//! its dual forms.

use std::collections::BTreeMap;

use super::{basis_tuple, check_rinehart, NLieRinehart, Section};
use crate::error::{Error, Result};
use crate::kernel::{combinations, MultiIndex, Poly, PolyDerivation};
use crate::verdict::{first_failure, Verdict, Witness};

/// Coefficients on the canonical wedge basis `e_K`, `K` of size `n−1`.
pub type WedgeElement = BTreeMap<MultiIndex, Poly>;

fn add_term(out: &mut WedgeElement, key: MultiIndex, c: Poly) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(key.clone()).or_insert_with(|| Poly::zero(c.nvars()));
    *slot += &c;
    if slot.is_zero() {
        out.remove(&key);
    }
}

fn wedge_eq(a: &WedgeElement, b: &WedgeElement) -> bool {
    a == b
}

fn wedge_sub(a: &WedgeElement, b: &WedgeElement) -> WedgeElement {
    let mut out = a.clone();
    for (k, v) in b {
        add_term(&mut out, k.clone(), -v);
    }
    out
}

fn wedge_scale(a: &WedgeElement, p: &Poly) -> WedgeElement {
    let mut out = WedgeElement::new();
    for (k, v) in a {
        add_term(&mut out, k.clone(), v * p);
    }
    out
}

fn wedge_residual(w: &WedgeElement) -> Vec<Poly> {
    w.values().cloned().collect()
}

#[derive(Clone, Debug)]
pub struct LeibnizRinehart {
    base: NLieRinehart,
    basis: Vec<MultiIndex>,
}

impl LeibnizRinehart {
    pub fn structure(&self) -> &NLieRinehart {
        &self.base
    }

    /// Canonical wedge basis in lexicographic order.
    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    /// Decomposes `x` as a sum of wedges of sections, the coefficient sitting
    /// in the first factor.
    fn decomposables(&self, x: &WedgeElement) -> Vec<Vec<Section>> {
        x.iter()
            .map(|(k, c)| {
                let mut secs = basis_tuple(&self.base, k);
                secs[0] = secs[0].iter().map(|p| p * c).collect();
                secs
            })
            .collect()
    }

    /// `ρ̂(x)`, the anchor of the underlying structure.
    pub fn anchor(&self, x: &WedgeElement) -> PolyDerivation {
        let mut out = PolyDerivation::zero(self.nvars());
        for (k, c) in x {
            let d = self.base.anchor_basis(k.as_slice());
            if !d.is_zero() {
                out = out.add(&d.scale(c));
            }
        }
        out
    }

    pub fn bracket(&self, x: &WedgeElement, y: &WedgeElement) -> WedgeElement {
        let mut out = WedgeElement::new();
        let ys = self.decomposables(y);
        for xs in self.decomposables(x) {
            for yy in &ys {
                for (k, v) in induced_bracket(&self.base, &xs, yy) {
                    add_term(&mut out, k, v);
                }
            }
        }
        out
    }

    pub fn basis_element(&self, k: &MultiIndex) -> WedgeElement {
        let mut w = WedgeElement::new();
        w.insert(k.clone(), Poly::one(self.nvars()));
        w
    }
}

/// `Σ_K det_K(sections) e_K`.
pub(crate) fn wedge_of(r: &NLieRinehart, sections: &[Section]) -> WedgeElement {
    let mut out = WedgeElement::new();
    for key in combinations(r.rank(), sections.len()) {
        let c = super::minor(sections, &key, r.nvars());
        add_term(&mut out, key, c);
    }
    out
}

/// `[X, Y] = Σ_i Y_1 ∧ … ∧ [X_1,…,X_{n−1},Y_i] ∧ … ∧ Y_{n−1}`.
fn induced_bracket(r: &NLieRinehart, xs: &[Section], ys: &[Section]) -> WedgeElement {
    let mut out = WedgeElement::new();
    for i in 0..ys.len() {
        let mut args = xs.to_vec();
        args.push(ys[i].clone());
        let mut yy = ys.to_vec();
        yy[i] = r.bracket_of(&args);
        for (k, v) in wedge_of(r, &yy) {
            add_term(&mut out, k, v);
        }
    }
    out
}

/// Leibniz-Rinehart algebra on `∧^{n−1}_A E`; the structure must pass
/// [`check_rinehart`].
pub fn induced_leibniz_rinehart(r: &NLieRinehart) -> Result<LeibnizRinehart> {
    if let Verdict::Fail(w) = check_rinehart(r) {
        return Err(Error::Precondition(Box::new(w)));
    }
    Ok(LeibnizRinehart {
        base: r.clone(),
        basis: combinations(r.rank(), r.arity() - 1),
    })
}

/// Leibniz identity on basis triples, anchor morphism on basis pairs, and
/// the two coefficient rules against every generator.
pub fn check_leibniz_rinehart(l: &LeibnizRinehart) -> Verdict {
    let b = &l.basis;
    let nb = b.len();
    let m = l.nvars();

    let triples: Vec<(usize, usize, usize)> = (0..nb)
        .flat_map(|i| (0..nb).flat_map(move |j| (0..nb).map(move |k| (i, j, k))))
        .collect();
    let w = first_failure(&triples, |&(i, j, k)| {
        let (x, y, z) = (l.basis_element(&b[i]), l.basis_element(&b[j]), l.basis_element(&b[k]));
        let lhs = l.bracket(&x, &l.bracket(&y, &z));
        let mut rhs = l.bracket(&l.bracket(&x, &y), &z);
        for (kk, v) in l.bracket(&y, &l.bracket(&x, &z)) {
            add_term(&mut rhs, kk, v);
        }
        (!wedge_eq(&lhs, &rhs)).then(|| {
            Witness::new("Leibniz identity")
                .with_indices([b[i].clone(), b[j].clone(), b[k].clone()])
                .with_residual(wedge_residual(&wedge_sub(&lhs, &rhs)))
        })
    });
    if let Some(w) = w {
        return Verdict::Fail(w);
    }

    let pairs: Vec<(usize, usize)> = (0..nb).flat_map(|i| (0..nb).map(move |j| (i, j))).collect();
    let w = first_failure(&pairs, |&(i, j)| {
        let (x, y) = (l.basis_element(&b[i]), l.basis_element(&b[j]));
        let res = l.anchor(&l.bracket(&x, &y)).sub(&l.anchor(&x).commutator(&l.anchor(&y)));
        (!res.is_zero()).then(|| {
            Witness::new("anchor is a bracket morphism")
                .with_indices([b[i].clone(), b[j].clone()])
                .with_residual(res.components().to_vec())
        })
    });
    if let Some(w) = w {
        return Verdict::Fail(w);
    }

    let singles: Vec<(usize, usize)> = (0..nb).flat_map(|i| (0..m).map(move |g| (i, g))).collect();
    let w = first_failure(&singles, |&(i, g)| {
        let a = Poly::var(m, g);
        let x = l.basis_element(&b[i]);
        let res = l.anchor(&wedge_scale(&x, &a)).sub(&l.anchor(&x).scale(&a));
        (!res.is_zero()).then(|| {
            Witness::new("anchor is A-linear")
                .at(b[i].clone())
                .with_generator(format!("x{}", g + 1))
                .with_residual(res.components().to_vec())
        })
    });
    if let Some(w) = w {
        return Verdict::Fail(w);
    }

    let gen_pairs: Vec<(usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(i, j)| (0..m).map(move |g| (i, j, g)))
        .collect();
    let w = first_failure(&gen_pairs, |&(i, j, g)| {
        let a = Poly::var(m, g);
        let (x, y) = (l.basis_element(&b[i]), l.basis_element(&b[j]));
        let lhs = l.bracket(&x, &wedge_scale(&y, &a));
        let mut rhs = wedge_scale(&l.bracket(&x, &y), &a);
        let da = l.anchor(&x).apply_unchecked(&a);
        for (k, v) in wedge_scale(&y, &da) {
            add_term(&mut rhs, k, v);
        }
        (!wedge_eq(&lhs, &rhs)).then(|| {
            Witness::new("Leibniz rule in the second argument")
                .with_indices([b[i].clone(), b[j].clone()])
                .with_generator(format!("x{}", g + 1))
                .with_residual(wedge_residual(&wedge_sub(&lhs, &rhs)))
        })
    });
    Verdict::from_option(w)
}

/// Element of `∧^{k(n−1)} E*`: a scalar for `k = 0`, otherwise a map on
/// ordered `k`-tuples of wedge basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualForm {
    level: usize,
    nvars: usize,
    values: BTreeMap<Vec<MultiIndex>, Poly>,
}

impl DualForm {
    pub fn scalar(a: Poly) -> Self {
        let nvars = a.nvars();
        let mut values = BTreeMap::new();
        if !a.is_zero() {
            values.insert(Vec::new(), a);
        }
        DualForm {
            level: 0,
            nvars,
            values,
        }
    }

    /// Degree `n−1` form from its pairings with the wedge basis.
    pub fn from_pairings(nvars: usize, pairings: impl IntoIterator<Item = (MultiIndex, Poly)>) -> Self {
        Self::from_tuples(1, nvars, pairings.into_iter().map(|(k, v)| (vec![k], v)))
    }

    pub fn from_tuples(
        level: usize,
        nvars: usize,
        values: impl IntoIterator<Item = (Vec<MultiIndex>, Poly)>,
    ) -> Self {
        let values = values
            .into_iter()
            .filter(|(k, v)| {
                debug_assert_eq!(k.len(), level);
                !v.is_zero()
            })
            .collect();
        DualForm {
            level,
            nvars,
            values,
        }
    }

    /// Dual basis element `δ_K`.
    pub fn dual_basis(nvars: usize, key: MultiIndex) -> Self {
        Self::from_pairings(nvars, [(key, Poly::one(nvars))])
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn values(&self) -> &BTreeMap<Vec<MultiIndex>, Poly> {
        &self.values
    }

    pub fn value(&self, key: &[MultiIndex]) -> Poly {
        self.values.get(key).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Pairing of a degree `n−1` form with a wedge element.
    pub fn pair(&self, x: &WedgeElement) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (k, c) in x {
            if let Some(v) = self.values.get(std::slice::from_ref(k)) {
                out += &(v * c);
            }
        }
        out
    }
}

/// `d` on forms of degree `k(n−1)`, `k ≤ 2`; the `k = 2` case follows the
/// same coboundary formula and is not used by any checker.
pub fn d_operator(r: &NLieRinehart, omega: &DualForm) -> Result<DualForm> {
    let m = r.nvars();
    if omega.nvars != m {
        return Err(Error::ArityMismatch {
            what: "form variables",
            expected: m,
            found: omega.nvars,
        });
    }
    let basis = combinations(r.rank(), r.arity() - 1);
    let k = omega.level;
    if k > 2 {
        return Err(Error::UnsupportedDegree(k * (r.arity() - 1)));
    }
    if k == 0 {
        let a = omega.value(&[]);
        return Ok(DualForm::from_pairings(
            m,
            basis.iter().map(|key| (key.clone(), r.anchor_basis(key.as_slice()).apply_unchecked(&a))),
        ));
    }
    let l = LeibnizRinehart {
        base: r.clone(),
        basis: basis.clone(),
    };
    let anchors: Vec<PolyDerivation> = basis.iter().map(|b| r.anchor_basis(b.as_slice())).collect();
    let pos = |key: &MultiIndex| basis.iter().position(|b| b == key).expect("basis key");
    let mut brackets = BTreeMap::new();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            brackets.insert((i, j), l.bracket(&l.basis_element(x), &l.basis_element(y)));
        }
    }

    let mut vals = Vec::new();
    let mut tuple = vec![0usize; k + 1];
    loop {
        let mut v = Poly::zero(m);
        for i in 0..=k {
            let rest: Vec<MultiIndex> = (0..=k).filter(|&t| t != i).map(|t| basis[tuple[t]].clone()).collect();
            let term = anchors[tuple[i]].apply_unchecked(&omega.value(&rest));
            if i % 2 == 0 {
                v += &term;
            } else {
                v -= &term;
            }
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let rest: Vec<MultiIndex> = (0..=k)
                    .filter(|&t| t != i && t != j)
                    .map(|t| basis[tuple[t]].clone())
                    .collect();
                for (key, c) in &brackets[&(tuple[i], tuple[j])] {
                    let mut args = vec![basis[pos(key)].clone()];
                    args.extend(rest.iter().cloned());
                    let term = c * &omega.value(&args);
                    if (i + j) % 2 == 0 {
                        v += &term;
                    } else {
                        v -= &term;
                    }
                }
            }
        }
        vals.push((tuple.iter().map(|&t| basis[t].clone()).collect(), v));
        // next ordered tuple
        let mut p = k + 1;
        loop {
            if p == 0 {
                return Ok(DualForm::from_tuples(k + 1, m, vals));
            }
            p -= 1;
            tuple[p] += 1;
            if tuple[p] < basis.len() {
                break;
            }
            tuple[p] = 0;
        }
    }
}
