//! Polynomial Nambu-Poisson tensors on `ℚ^m`.

use std::collections::{BTreeMap, BTreeSet};

use crate::config::Config;
use crate::error::{ensure_len, Error, Result};
use crate::kernel::linalg::{det_poly, nullspace, rank, rref};
use crate::kernel::{canonical_multiindex, combinations, MultiIndex, Poly, PolyDerivation, Rat};
use crate::verdict::{first_failure, Verdict, Witness};

/// `Σ_I π^I ∂_{I_1}∧…∧∂_{I_n}` over increasing index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NambuTensor {
    order: usize,
    nvars: usize,
    components: BTreeMap<MultiIndex, Poly>,
}

impl NambuTensor {
    pub fn zero(order: usize, nvars: usize) -> Self {
        assert!(order >= 1, "order must be positive");
        NambuTensor {
            order,
            nvars,
            components: BTreeMap::new(),
        }
    }

    /// Entries with unsorted 0-based indices; permuted keys store signed values.
    pub fn new<I>(order: usize, nvars: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        if order == 0 {
            return Err(Error::Unsupported("tensor of order 0".into()));
        }
        let mut out = Self::zero(order, nvars);
        for (idx, c) in entries {
            ensure_len("tensor component indices", order, idx.len())?;
            ensure_len("tensor component variables", nvars, c.nvars())?;
            if let Some(&bad) = idx.iter().find(|&&i| i >= nvars) {
                return Err(Error::VariableOutOfRange { index: bad, nvars });
            }
            let (key, sign) = canonical_multiindex(&idx)
                .ok_or_else(|| Error::DimensionMismatch(format!("repeated index in {idx:?}")))?;
            if out.components.contains_key(&key) {
                return Err(Error::DimensionMismatch(format!("duplicate component {key}")));
            }
            let c = if sign < 0 { -c } else { c };
            if !c.is_zero() {
                out.components.insert(key, c);
            }
        }
        Ok(out)
    }

    /// `∂_1∧…∧∂_m` on `ℚ^m`.
    pub fn top(m: usize) -> Self {
        let mut out = Self::zero(m, m);
        out.components.insert(MultiIndex::new((0..m).collect()).unwrap(), Poly::one(m));
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &BTreeMap<MultiIndex, Poly> {
        &self.components
    }

    pub fn component(&self, key: &MultiIndex) -> Poly {
        self.components.get(key).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn scale(&self, p: &Poly) -> Self {
        let mut out = Self::zero(self.order, self.nvars);
        for (k, v) in &self.components {
            let c = v * p;
            if !c.is_zero() {
                out.components.insert(k.clone(), c);
            }
        }
        out
    }

    /// Largest total degree in the given variables over all components.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.components.values().map(|c| c.degree_in(vars)).max().unwrap_or(0)
    }

    /// `π(β_1,…,β_n) = Σ_I π^I det[β_k(∂_{I_l})]` for 1-forms given by their
    /// coefficient vectors.
    pub fn evaluate(&self, forms: &[Vec<Poly>]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (key, c) in &self.components {
            let mat: Vec<Vec<Poly>> = forms
                .iter()
                .map(|f| key.as_slice().iter().map(|&i| f[i].clone()).collect())
                .collect();
            if mat.iter().any(|row| row.iter().all(Poly::is_zero)) {
                continue;
            }
            let d = det_poly(&mat, self.nvars);
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        out
    }

    /// `π^♯(α_1∧…∧α_{n−1})` with `⟨π^♯(α), β⟩ = π(α_1,…,α_{n−1},β)`.
    pub fn sharp(&self, forms: &[Vec<Poly>]) -> PolyDerivation {
        let comps = (0..self.nvars)
            .map(|j| {
                let mut all = forms.to_vec();
                all.push(coordinate_form(self.nvars, j));
                self.evaluate(&all)
            })
            .collect();
        PolyDerivation::new(comps)
    }
}

fn coordinate_form(m: usize, j: usize) -> Vec<Poly> {
    crate::kernel::unit_vec(m, m, j)
}

/// Exterior derivative of a function as a coefficient vector.
pub fn differential(f: &Poly) -> Vec<Poly> {
    (0..f.nvars()).map(|i| f.diff(i)).collect()
}

fn check_functions(pi: &NambuTensor, fs: &[Poly], count: usize) -> Result<()> {
    ensure_len("number of functions", count, fs.len())?;
    if let Some(f) = fs.iter().find(|f| f.nvars() != pi.nvars) {
        return Err(Error::ArityMismatch {
            what: "function variables",
            expected: pi.nvars,
            found: f.nvars(),
        });
    }
    Ok(())
}

/// `{f_1,…,f_n} = Σ_I π^I det[∂_{I_l} f_k]`.
pub fn nambu_bracket(pi: &NambuTensor, fs: &[Poly]) -> Result<Poly> {
    check_functions(pi, fs, pi.order)?;
    Ok(bracket_of(pi, fs))
}

fn bracket_of(pi: &NambuTensor, fs: &[Poly]) -> Poly {
    let forms: Vec<Vec<Poly>> = fs.iter().map(differential).collect();
    pi.evaluate(&forms)
}

/// `g ↦ {f_1,…,f_{n−1}, g}`.
pub fn hamiltonian_vf(pi: &NambuTensor, fs: &[Poly]) -> Result<PolyDerivation> {
    check_functions(pi, fs, pi.order - 1)?;
    let forms: Vec<Vec<Poly>> = fs.iter().map(differential).collect();
    Ok(pi.sharp(&forms))
}

/// Fundamental identity on probe functions. When the probes contain every
/// coordinate the inner arguments range over coordinates only: the defect
/// is `(L_{X_f}π)(dg_1,…,dg_n)`, tensorial in the `g`'s.
pub fn check_nambu_fi(pi: &NambuTensor, probes: &[Poly]) -> Result<Verdict> {
    if probes.is_empty() {
        return Err(Error::DimensionMismatch("empty probe set".into()));
    }
    if let Some(f) = probes.iter().find(|f| f.nvars() != pi.nvars) {
        return Err(Error::ArityMismatch {
            what: "probe variables",
            expected: pi.nvars,
            found: f.nvars(),
        });
    }
    let n = pi.order;
    let m = pi.nvars;
    let coords: Vec<Poly> = (0..m).map(|j| Poly::var(m, j)).collect();
    let covers = coords.iter().all(|c| probes.contains(c));
    let inner: &[Poly] = if covers { &coords } else { probes };
    let outer = combinations(probes.len(), n - 1);
    let inner_combos = combinations(inner.len(), n);
    let pairs: Vec<(MultiIndex, MultiIndex)> = outer
        .iter()
        .flat_map(|f| inner_combos.iter().map(move |g| (f.clone(), g.clone())))
        .collect();
    let w = first_failure(&pairs, |(fk, gk)| {
        let fs: Vec<Poly> = fk.as_slice().iter().map(|&i| probes[i].clone()).collect();
        let gs: Vec<Poly> = gk.as_slice().iter().map(|&i| inner[i].clone()).collect();
        let xf = pi.sharp(&fs.iter().map(differential).collect::<Vec<_>>());
        let mut res = xf.apply_unchecked(&bracket_of(pi, &gs));
        for i in 0..n {
            let mut gg = gs.clone();
            gg[i] = xf.apply_unchecked(&gs[i]);
            res -= &bracket_of(pi, &gg);
        }
        (!res.is_zero()).then(|| {
            let names = |v: &[Poly]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
            Witness::new("Nambu fundamental identity")
                .with_generator(format!("f = ({}); g = ({})", names(&fs), names(&gs)))
                .with_residual(vec![res])
        })
    });
    Ok(Verdict::from_option(w))
}

/// Fundamental identity on the default probes: coordinates and monomials
/// up to `cfg.probe_degree`.
pub fn check_nambu_fi_default(pi: &NambuTensor, cfg: &Config) -> Result<Verdict> {
    check_nambu_fi(pi, &cfg.probe_set(pi.nvars))
}

/// Polynomial map `ℚ^{m_1} → ℚ^{m_2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    source: usize,
    target: usize,
    components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(source: usize, target: usize, components: Vec<Poly>) -> Result<Self> {
        ensure_len("map components", target, components.len())?;
        if let Some(p) = components.iter().find(|p| p.nvars() != source) {
            return Err(Error::ArityMismatch {
                what: "map component variables",
                expected: source,
                found: p.nvars(),
            });
        }
        Ok(PolyMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(m: usize) -> Self {
        PolyMap {
            source: m,
            target: m,
            components: (0..m).map(|j| Poly::var(m, j)).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `f ∘ φ`.
    pub fn pullback(&self, f: &Poly) -> Poly {
        if self.target == 0 {
            return Poly::constant(self.source, f.constant_value().unwrap_or_default());
        }
        f.substitute(&self.components).expect("checked arity")
    }

    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        ensure_len("composed map dimension", self.source, inner.target)?;
        PolyMap::new(
            inner.source,
            self.target,
            self.components.iter().map(|c| inner.pullback(c)).collect(),
        )
    }
}

fn check_map_shapes(phi: &PolyMap, pi1: &NambuTensor, pi2: &NambuTensor) -> Result<()> {
    ensure_len("map source dimension", pi1.nvars, phi.source)?;
    ensure_len("map target dimension", pi2.nvars, phi.target)?;
    ensure_len("tensor orders", pi1.order, pi2.order)?;
    Ok(())
}

/// `φ_*π_1 = π_2`: for each target index `J`,
/// `Σ_I π_1^I det[∂_{I_l} φ_{J_k}] = π_2^J ∘ φ`.
pub fn check_nambu_map(phi: &PolyMap, pi1: &NambuTensor, pi2: &NambuTensor) -> Result<Verdict> {
    check_map_shapes(phi, pi1, pi2)?;
    let grads: Vec<Vec<Poly>> = phi.components.iter().map(differential).collect();
    let combos = combinations(phi.target, pi1.order);
    let w = first_failure(&combos, |key| {
        let forms: Vec<Vec<Poly>> = key.as_slice().iter().map(|&j| grads[j].clone()).collect();
        let lhs = pi1.evaluate(&forms);
        let rhs = phi.pullback(&pi2.component(key));
        (lhs != rhs).then(|| {
            Witness::new("pushforward of the tensor")
                .at(key.clone())
                .with_residual(vec![&lhs - &rhs])
        })
    });
    Ok(Verdict::from_option(w))
}

/// Same condition through brackets: `{φ*f_1,…,φ*f_n}_1 = φ*{f_1,…,f_n}_2`
/// for `f`'s drawn from `probes` on the target.
pub fn check_nambu_map_brackets(
    phi: &PolyMap,
    pi1: &NambuTensor,
    pi2: &NambuTensor,
    probes: &[Poly],
) -> Result<Verdict> {
    check_map_shapes(phi, pi1, pi2)?;
    let combos = combinations(probes.len(), pi1.order);
    let w = first_failure(&combos, |key| {
        let fs: Vec<Poly> = key.as_slice().iter().map(|&i| probes[i].clone()).collect();
        let pulled: Vec<Poly> = fs.iter().map(|f| phi.pullback(f)).collect();
        let lhs = bracket_of(pi1, &pulled);
        let rhs = phi.pullback(&bracket_of(pi2, &fs));
        (lhs != rhs).then(|| {
            Witness::new("bracket of pulled-back functions")
                .with_generator(fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", "))
                .with_residual(vec![&lhs - &rhs])
        })
    });
    Ok(Verdict::from_option(w))
}

/// Coordinate subspace `{x_j = 0 : j ∈ S}` or graph `{v = g(u)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolySubmanifold {
    Coordinate { nvars: usize, vars: BTreeSet<usize> },
    Graph { nvars: usize, outputs: BTreeMap<usize, Poly> },
}

impl PolySubmanifold {
    pub fn coordinate(nvars: usize, vars: impl IntoIterator<Item = usize>) -> Result<Self> {
        let vars: BTreeSet<usize> = vars.into_iter().collect();
        if let Some(&bad) = vars.iter().find(|&&v| v >= nvars) {
            return Err(Error::VariableOutOfRange { index: bad, nvars });
        }
        Ok(PolySubmanifold::Coordinate { nvars, vars })
    }

    pub fn whole(nvars: usize) -> Self {
        PolySubmanifold::Coordinate {
            nvars,
            vars: BTreeSet::new(),
        }
    }

    /// `x_v = g_v(u)` for each output `v`; each `g_v` may only involve
    /// non-output variables.
    pub fn graph(nvars: usize, outputs: impl IntoIterator<Item = (usize, Poly)>) -> Result<Self> {
        let outputs: BTreeMap<usize, Poly> = outputs.into_iter().collect();
        for (&v, g) in &outputs {
            if v >= nvars {
                return Err(Error::VariableOutOfRange { index: v, nvars });
            }
            ensure_len("graph output variables", nvars, g.nvars())?;
            if let Some(bad) = g.support().into_iter().find(|u| outputs.contains_key(u)) {
                return Err(Error::DimensionMismatch(format!(
                    "graph output x{} depends on output x{}",
                    v + 1,
                    bad + 1
                )));
            }
        }
        Ok(PolySubmanifold::Graph { nvars, outputs })
    }

    /// Graph of `φ: M_1 → M_2` inside `M_2 × M_1`, variables of `M_2` first.
    pub fn graph_of(phi: &PolyMap) -> Self {
        let total = phi.target + phi.source;
        let outputs = phi
            .components
            .iter()
            .enumerate()
            .map(|(j, c)| (j, c.embed(phi.target, total)))
            .collect();
        PolySubmanifold::Graph { nvars: total, outputs }
    }

    pub fn nvars(&self) -> usize {
        match self {
            PolySubmanifold::Coordinate { nvars, .. } | PolySubmanifold::Graph { nvars, .. } => *nvars,
        }
    }

    pub fn codim(&self) -> usize {
        match self {
            PolySubmanifold::Coordinate { vars, .. } => vars.len(),
            PolySubmanifold::Graph { outputs, .. } => outputs.len(),
        }
    }

    /// Generators of the vanishing ideal.
    pub fn defining_functions(&self) -> Vec<Poly> {
        match self {
            PolySubmanifold::Coordinate { nvars, vars } => vars.iter().map(|&v| Poly::var(*nvars, v)).collect(),
            PolySubmanifold::Graph { nvars, outputs } => {
                outputs.iter().map(|(&v, g)| &Poly::var(*nvars, v) - g).collect()
            }
        }
    }

    /// Normal form modulo the vanishing ideal.
    pub fn reduce(&self, p: &Poly) -> Poly {
        match self {
            PolySubmanifold::Coordinate { vars, .. } => p.vanish_vars(vars),
            PolySubmanifold::Graph { nvars, outputs } => {
                if outputs.is_empty() || p.support().iter().all(|v| !outputs.contains_key(v)) {
                    return p.clone();
                }
                let images: Vec<Poly> = (0..*nvars)
                    .map(|v| outputs.get(&v).cloned().unwrap_or_else(|| Poly::var(*nvars, v)))
                    .collect();
                p.substitute(&images).expect("checked arity")
            }
        }
    }

    pub fn contains_zero(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }
}

fn check_sub_shape(pi: &NambuTensor, n: &PolySubmanifold) -> Result<()> {
    ensure_len("submanifold ambient dimension", pi.nvars, n.nvars())
}

fn tangency_failure(
    pi: &NambuTensor,
    n: &PolySubmanifold,
    forms: &[Vec<Poly>],
    defining: &[Poly],
    condition: &str,
    key: &MultiIndex,
) -> Option<Witness> {
    let v = pi.sharp(forms);
    if v.is_zero() {
        return None;
    }
    let residual: Vec<Poly> = defining.iter().map(|h| n.reduce(&v.apply_unchecked(h))).collect();
    residual.iter().any(|r| !r.is_zero()).then(|| {
        Witness::new(condition)
            .at(key.clone())
            .with_residual(residual)
            .with_note(format!("sharp image {v}"))
    })
}

/// `π^♯(∧^{n−1}(TN)°) ⊆ TN`, on `(n−1)`-tuples of defining differentials.
pub fn check_coisotropic(pi: &NambuTensor, n: &PolySubmanifold) -> Result<Verdict> {
    check_sub_shape(pi, n)?;
    let defining = n.defining_functions();
    let diffs: Vec<Vec<Poly>> = defining.iter().map(differential).collect();
    let combos = combinations(defining.len(), pi.order - 1);
    let w = first_failure(&combos, |key| {
        let forms: Vec<Vec<Poly>> = key.as_slice().iter().map(|&i| diffs[i].clone()).collect();
        tangency_failure(pi, n, &forms, &defining, "coisotropy", key)
    });
    Ok(Verdict::from_option(w))
}

/// `π^♯(∧^{n−1}T*M|_N) ⊆ TN`, on `(n−1)`-tuples of coordinate differentials.
pub fn check_nambu_submanifold(pi: &NambuTensor, n: &PolySubmanifold) -> Result<Verdict> {
    check_sub_shape(pi, n)?;
    let defining = n.defining_functions();
    let m = pi.nvars;
    let combos = combinations(m, pi.order - 1);
    let w = first_failure(&combos, |key| {
        let forms: Vec<Vec<Poly>> = key.as_slice().iter().map(|&j| coordinate_form(m, j)).collect();
        tangency_failure(pi, n, &forms, &defining, "Nambu submanifold tangency", key)
    });
    Ok(Verdict::from_option(w))
}

/// `π_2 ⊕ (−1)^{n−1} π_1` on `M_2 × M_1`, variables of `M_2` first.
pub fn product_tensor(pi2: &NambuTensor, pi1: &NambuTensor) -> Result<NambuTensor> {
    ensure_len("tensor orders", pi2.order, pi1.order)?;
    let total = pi2.nvars + pi1.nvars;
    let mut out = NambuTensor::zero(pi2.order, total);
    for (k, c) in &pi2.components {
        out.components.insert(k.clone(), c.embed(0, total));
    }
    let odd = (pi1.order - 1) % 2 == 1;
    for (k, c) in &pi1.components {
        let key = MultiIndex::new(k.as_slice().iter().map(|i| i + pi2.nvars).collect()).unwrap();
        let c = c.embed(pi2.nvars, total);
        out.components.insert(key, if odd { -c } else { c });
    }
    Ok(out)
}

/// Coisotropy of `R ⊆ M_2 × M_1` for the twisted product tensor.
pub fn check_nambu_relation(pi1: &NambuTensor, pi2: &NambuTensor, r: &PolySubmanifold) -> Result<Verdict> {
    let prod = product_tensor(pi2, pi1)?;
    check_coisotropic(&prod, r)
}

fn linear_rows(r: &PolySubmanifold) -> Result<Vec<Vec<Rat>>> {
    let nv = r.nvars();
    r.defining_functions()
        .iter()
        .map(|h| {
            let mut row = vec![Rat::from_integer(0.into()); nv];
            for (e, c) in h.terms() {
                if e.degree() != 1 {
                    return Err(Error::NonLinear(format!("defining function {h}")));
                }
                let v = e.as_slice().iter().position(|&x| x == 1).unwrap();
                row[v] = c.clone();
            }
            Ok(row)
        })
        .collect()
}

/// `R_2 ∘ R_1` for linear `R_1 ⊆ M_2 × M_1`, `R_2 ⊆ M_3 × M_2`, returned as a
/// graph inside `M_3 × M_1`.
pub fn compose_linear_relations(
    r1: &PolySubmanifold,
    r2: &PolySubmanifold,
    dims: (usize, usize, usize),
) -> Result<PolySubmanifold> {
    let (m1, m2, m3) = dims;
    ensure_len("first relation ambient dimension", m2 + m1, r1.nvars())?;
    ensure_len("second relation ambient dimension", m3 + m2, r2.nvars())?;
    let zero = || Rat::from_integer(0.into());
    // W ⊆ M_3 × M_2 × M_1 in variables (z, y, x)
    let total = m3 + m2 + m1;
    let mut rows = Vec::new();
    for row in linear_rows(r1)? {
        let mut full = vec![zero(); total];
        full[m3..].clone_from_slice(&row);
        rows.push(full);
    }
    for row in linear_rows(r2)? {
        let mut full = vec![zero(); total];
        full[..m3 + m2].clone_from_slice(&row);
        rows.push(full);
    }
    let w = nullspace(&rows, total);
    let keep: Vec<usize> = (0..m3).chain(m3 + m2..total).collect();
    let projected: Vec<Vec<Rat>> = w
        .iter()
        .map(|v| keep.iter().map(|&i| v[i].clone()).collect())
        .collect();
    let image_dim = rank(&projected);
    let fiber: Vec<Vec<Rat>> = rows
        .iter()
        .cloned()
        .chain(keep.iter().map(|&i| {
            let mut r = vec![zero(); total];
            r[i] = Rat::from_integer(1.into());
            r
        }))
        .collect();
    let kernel_dim = nullspace(&fiber, total).len();
    if image_dim + kernel_dim != w.len() {
        return Err(Error::NotClean(format!(
            "dim W = {}, image {}, fiber {}",
            w.len(),
            image_dim,
            kernel_dim
        )));
    }
    let nk = m3 + m1;
    let ann = nullspace(&projected, nk);
    let (reduced, pivots) = rref(ann);
    let mut outputs = Vec::new();
    for (row, &p) in reduced.iter().zip(&pivots) {
        let mut g = Poly::zero(nk);
        for (j, c) in row.iter().enumerate() {
            if j != p && *c != zero() {
                g -= &Poly::monomial(nk, unit_exps(nk, j), c.clone());
            }
        }
        outputs.push((p, g));
    }
    PolySubmanifold::graph(nk, outputs)
}

fn unit_exps(n: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

#[cfg(test)]
mod tests;
