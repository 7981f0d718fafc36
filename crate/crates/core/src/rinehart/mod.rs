//! n-Lie-Rinehart algebras over `A = ℚ[x_1..x_m]` on a free module of rank `d`.

mod leibniz;
mod maps;

use std::collections::{BTreeMap, BTreeSet};

use crate::config::Config;
use crate::error::{ensure_len, Error, Result};
use crate::kernel::linalg::{det_poly, fraction_free_rank, solve_poly_system, Solve};
use crate::kernel::{
    canonical_multiindex, combinations, multiindex::omit, MultiIndex, Poly, PolyDerivation, Rat,
};
use crate::nlie::NLieAlgebra;
use crate::verdict::{first_failure, Verdict, Witness};

pub use leibniz::{
    check_leibniz_rinehart, d_operator, induced_leibniz_rinehart, DualForm, LeibnizRinehart,
    WedgeElement,
};
pub use maps::{
    graph_check_with,
    check_comorphism, check_intertwine, check_morphism, graph_check, psi_sum_bracket,
    psi_sum_compatible, AlgebraMap, GraphPair, ModuleMapCo, ModuleMapForward, PsiSumElement,
};

/// Coefficient vector of a module element over the free basis.
pub type Section = Vec<Poly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLieRinehart {
    m: usize,
    d: usize,
    n: usize,
    anchor_table: BTreeMap<MultiIndex, PolyDerivation>,
    bracket_table: BTreeMap<MultiIndex, Section>,
}

impl NLieRinehart {
    pub fn zero(m: usize, d: usize, n: usize) -> Self {
        assert!(n >= 2, "arity must be at least 2");
        NLieRinehart {
            m,
            d,
            n,
            anchor_table: BTreeMap::new(),
            bracket_table: BTreeMap::new(),
        }
    }

    /// Builds from 0-based index tuples in any order; permuted keys store
    /// correspondingly signed values.
    pub fn new<IA, IB>(m: usize, d: usize, n: usize, anchors: IA, brackets: IB) -> Result<Self>
    where
        IA: IntoIterator<Item = (Vec<usize>, PolyDerivation)>,
        IB: IntoIterator<Item = (Vec<usize>, Section)>,
    {
        if n < 2 {
            return Err(Error::Unsupported(format!("arity {n} is below 2")));
        }
        let mut out = Self::zero(m, d, n);
        for (idx, der) in anchors {
            ensure_len("anchor entry indices", n - 1, idx.len())?;
            ensure_len("anchor derivation variables", m, der.nvars())?;
            let (key, sign) = out.canonical_key(&idx)?;
            if out.anchor_table.contains_key(&key) {
                return Err(Error::DimensionMismatch(format!("duplicate anchor entry {key}")));
            }
            let der = if sign < 0 { der.neg() } else { der };
            if !der.is_zero() {
                out.anchor_table.insert(key, der);
            }
        }
        for (idx, sec) in brackets {
            ensure_len("bracket entry indices", n, idx.len())?;
            ensure_len("bracket entry value", d, sec.len())?;
            if let Some(p) = sec.iter().find(|p| p.nvars() != m) {
                return Err(Error::ArityMismatch {
                    what: "bracket value variables",
                    expected: m,
                    found: p.nvars(),
                });
            }
            let (key, sign) = out.canonical_key(&idx)?;
            if out.bracket_table.contains_key(&key) {
                return Err(Error::DimensionMismatch(format!("duplicate bracket entry {key}")));
            }
            let sec: Section = if sign < 0 { sec.iter().map(|p| -p).collect() } else { sec };
            if sec.iter().any(|p| !p.is_zero()) {
                out.bracket_table.insert(key, sec);
            }
        }
        Ok(out)
    }

    fn canonical_key(&self, idx: &[usize]) -> Result<(MultiIndex, i8)> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.d) {
            return Err(Error::VariableOutOfRange {
                index: bad,
                nvars: self.d,
            });
        }
        canonical_multiindex(idx)
            .ok_or_else(|| Error::DimensionMismatch(format!("entry with repeated index {idx:?}")))
    }

    /// Constant structure on `ℚ^dim` with no base variables.
    pub fn from_nlie(l: &NLieAlgebra) -> Self {
        let mut out = Self::zero(0, l.dim(), l.arity());
        for (k, v) in l.table() {
            out.bracket_table
                .insert(k.clone(), v.iter().map(|c| Poly::constant(0, c.clone())).collect());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn anchor_table(&self) -> &BTreeMap<MultiIndex, PolyDerivation> {
        &self.anchor_table
    }

    pub fn bracket_table(&self) -> &BTreeMap<MultiIndex, Section> {
        &self.bracket_table
    }

    pub fn with_anchor(&self, key: MultiIndex, der: PolyDerivation) -> Self {
        let mut out = self.clone();
        if der.is_zero() {
            out.anchor_table.remove(&key);
        } else {
            out.anchor_table.insert(key, der);
        }
        out
    }

    pub fn with_bracket(&self, key: MultiIndex, sec: Section) -> Self {
        let mut out = self.clone();
        if sec.iter().all(Poly::is_zero) {
            out.bracket_table.remove(&key);
        } else {
            out.bracket_table.insert(key, sec);
        }
        out
    }

    /// Multiplies every anchor and bracket entry by `s`.
    pub fn scaled(&self, s: &Rat) -> Self {
        let c = Poly::constant(self.m, s.clone());
        NLieRinehart {
            m: self.m,
            d: self.d,
            n: self.n,
            anchor_table: self
                .anchor_table
                .iter()
                .map(|(k, v)| (k.clone(), v.scale(&c)))
                .collect(),
            bracket_table: self
                .bracket_table
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(|p| p.scale(s)).collect()))
                .collect(),
        }
    }

    pub fn basis_section(&self, k: usize) -> Section {
        crate::kernel::unit_vec(self.d, self.m, k)
    }

    pub fn zero_section(&self) -> Section {
        crate::kernel::zero_vec(self.d, self.m)
    }

    fn check_sections(&self, sections: &[Section], count: usize) -> Result<()> {
        ensure_len("number of sections", count, sections.len())?;
        for s in sections {
            ensure_len("section rank", self.d, s.len())?;
            if let Some(p) = s.iter().find(|p| p.nvars() != self.m) {
                return Err(Error::ArityMismatch {
                    what: "section variables",
                    expected: self.m,
                    found: p.nvars(),
                });
            }
        }
        Ok(())
    }

    /// `ρ(s_1,…,s_{n−1})`, the A-multilinear skew extension of the anchor table.
    pub fn anchor(&self, sections: &[Section]) -> Result<PolyDerivation> {
        self.check_sections(sections, self.n - 1)?;
        Ok(self.anchor_of(sections))
    }

    pub(crate) fn anchor_of(&self, sections: &[Section]) -> PolyDerivation {
        let mut out = PolyDerivation::zero(self.m);
        for (key, der) in &self.anchor_table {
            let c = minor(sections, key, self.m);
            if !c.is_zero() {
                out = out.add(&der.scale(&c));
            }
        }
        out
    }

    /// Anchor on basis elements given by unsorted indices.
    pub fn anchor_basis(&self, idx: &[usize]) -> PolyDerivation {
        match canonical_multiindex(idx) {
            Some((k, s)) => match self.anchor_table.get(&k) {
                Some(d) if s < 0 => d.neg(),
                Some(d) => d.clone(),
                None => PolyDerivation::zero(self.m),
            },
            None => PolyDerivation::zero(self.m),
        }
    }

    /// `[s_1,…,s_n]`: the table on the determinant part plus the Leibniz
    /// corrections `Σ_i (−1)^{n−i} Σ_j ρ(s_1,…,ŝ_i,…,s_n)(s_i^j) e_j`.
    pub fn bracket(&self, sections: &[Section]) -> Result<Section> {
        self.check_sections(sections, self.n)?;
        Ok(self.bracket_of(sections))
    }

    pub(crate) fn bracket_of(&self, sections: &[Section]) -> Section {
        let mut out = self.zero_section();
        for (key, val) in &self.bracket_table {
            let c = minor(sections, key, self.m);
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(val) {
                if !v.is_zero() {
                    *o += &(&c * v);
                }
            }
        }
        if self.anchor_table.is_empty() {
            return out;
        }
        for i in 0..self.n {
            if sections[i].iter().all(|p| p.is_constant()) {
                continue;
            }
            let rest: Vec<Section> = omit_sections(sections, i);
            let der = self.anchor_of(&rest);
            if der.is_zero() {
                continue;
            }
            let plus = (self.n - (i + 1)) % 2 == 0;
            for (o, f) in out.iter_mut().zip(&sections[i]) {
                let v = der.apply_unchecked(f);
                if plus {
                    *o += &v;
                } else {
                    *o -= &v;
                }
            }
        }
        out
    }

    /// Bracket of basis elements given by unsorted indices.
    pub fn bracket_basis(&self, idx: &[usize]) -> Section {
        match canonical_multiindex(idx) {
            Some((k, s)) => match self.bracket_table.get(&k) {
                Some(v) if s < 0 => v.iter().map(|p| -p).collect(),
                Some(v) => v.clone(),
                None => self.zero_section(),
            },
            None => self.zero_section(),
        }
    }
}

/// Determinant of the rows of `sections` restricted to the columns in `key`.
pub(crate) fn minor_of(sections: &[Section], key: &MultiIndex, nvars: usize) -> Poly {
    minor(sections, key, nvars)
}

pub(crate) fn minor(sections: &[Section], key: &MultiIndex, nvars: usize) -> Poly {
    let cols = key.as_slice();
    if sections
        .iter()
        .any(|s| cols.iter().all(|&c| s[c].is_zero()))
    {
        return Poly::zero(nvars);
    }
    let mat: Vec<Vec<Poly>> = sections
        .iter()
        .map(|s| cols.iter().map(|&c| s[c].clone()).collect())
        .collect();
    det_poly(&mat, nvars)
}

pub(crate) fn omit_sections(sections: &[Section], i: usize) -> Vec<Section> {
    sections
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, s)| s.clone())
        .collect()
}

/// Sorted tuples with repetition from `0..d`.
pub(crate) fn multisets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(d: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, k, i, cur, out);
            cur.pop();
        }
    }
    rec(d, k, 0, &mut cur, &mut out);
    out
}

/// One probe configuration: basis indices per block, and optionally one slot
/// multiplied by a coordinate function.
#[derive(Clone, Debug)]
struct Probe {
    blocks: Vec<Vec<usize>>,
    scaled: Option<(usize, usize)>,
}

impl Probe {
    fn sections(&self, r: &NLieRinehart) -> Vec<Vec<Section>> {
        let mut slot = 0;
        self.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&k| {
                        let mut s = r.basis_section(k);
                        if let Some((sl, g)) = self.scaled {
                            if sl == slot {
                                s[k] = Poly::var(r.m, g);
                            }
                        }
                        slot += 1;
                        s
                    })
                    .collect()
            })
            .collect()
    }

    fn indices(&self) -> Vec<MultiIndex> {
        self.blocks
            .iter()
            .map(|b| MultiIndex::new(b.clone()).expect("strictly increasing block"))
            .collect()
    }

    fn describe(&self) -> Option<String> {
        self.scaled.map(|(slot, g)| format!("x{} in slot {}", g + 1, slot + 1))
    }

    fn raw(&self) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let v: Vec<String> = b.iter().map(|i| (i + 1).to_string()).collect();
                format!("({})", v.join(","))
            })
            .collect();
        parts.join(" ")
    }
}

/// Basis tuples (strictly increasing blocks), then every tuple of sorted
/// blocks with one slot multiplied by one generator.
fn probes(r: &NLieRinehart, sizes: &[usize]) -> Vec<Probe> {
    let mut out = Vec::new();
    let mut plain: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for &s in sizes {
        let combos: Vec<Vec<usize>> = combinations(r.d, s).into_iter().map(|k| k.as_slice().to_vec()).collect();
        plain = plain
            .into_iter()
            .flat_map(|p| {
                combos.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c.clone());
                    q
                })
            })
            .collect();
    }
    out.extend(plain.into_iter().map(|blocks| Probe { blocks, scaled: None }));
    if r.m == 0 {
        return out;
    }
    let total: usize = sizes.iter().sum();
    let mut rep: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for &s in sizes {
        let ms = multisets(r.d, s);
        rep = rep
            .into_iter()
            .flat_map(|p| {
                ms.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c.clone());
                    q
                })
            })
            .collect();
    }
    for blocks in rep {
        for slot in 0..total {
            for g in 0..r.m {
                out.push(Probe {
                    blocks: blocks.clone(),
                    scaled: Some((slot, g)),
                });
            }
        }
    }
    out
}

fn probe_witness(condition: &str, p: &Probe, residual: Vec<Poly>) -> Witness {
    let mut w = Witness::new(condition).with_residual(residual);
    if p.blocks.iter().all(|b| b.windows(2).all(|x| x[0] < x[1])) {
        w = w.with_indices(p.indices());
    } else {
        w = w.with_note(format!("basis tuple {}", p.raw()));
    }
    if let Some(g) = p.describe() {
        w = w.with_generator(g);
    }
    w
}

/// Second-order probe functions `1, x_i, x_i x_j`; they determine a
/// differential operator of order at most two.
fn operator_probes(m: usize) -> Vec<Poly> {
    crate::kernel::linalg::monomials_up_to(m, 2)
        .into_iter()
        .map(|e| Poly::monomial(m, e, Rat::from_integer(1.into())))
        .collect()
}

/// Checks the representation identities of the anchor and the fundamental
/// identity, on basis tuples and on tuples with one slot multiplied by a
/// coordinate function.
pub fn check_rinehart(r: &NLieRinehart) -> Verdict {
    let n = r.n;
    let m = r.m;

    let w = first_failure(&probes(r, &[n - 1, n - 1]), |p| {
        let s = p.sections(r);
        let (x, y) = (&s[0], &s[1]);
        let rx = r.anchor_of(x);
        let ry = r.anchor_of(y);
        let mut res = rx.commutator(&ry);
        for i in 0..y.len() {
            let mut args = x.clone();
            args.push(y[i].clone());
            let mut yy = y.clone();
            yy[i] = r.bracket_of(&args);
            res = res.sub(&r.anchor_of(&yy));
        }
        (!res.is_zero()).then(|| probe_witness("anchor commutator identity", p, res.components().to_vec()))
    });
    if let Some(w) = w {
        return Verdict::Fail(w);
    }

    let ops = operator_probes(m);
    let w = first_failure(&probes(r, &[n - 2, n]), |p| {
        let s = p.sections(r);
        let (x, y) = (&s[0], &s[1]);
        let mut args = x.clone();
        args.push(r.bracket_of(y));
        let lhs = r.anchor_of(&args);
        let mut terms = Vec::new();
        for i in 0..n {
            let hat = omit_sections(y, i);
            let mut xa = x.clone();
            xa.push(y[i].clone());
            terms.push(((n - (i + 1)) % 2 == 0, r.anchor_of(&hat), r.anchor_of(&xa)));
        }
        let residual: Vec<Poly> = ops
            .iter()
            .map(|f| {
                let mut v = lhs.apply_unchecked(f);
                for (plus, outer, inner) in &terms {
                    let t = outer.apply_unchecked(&inner.apply_unchecked(f));
                    if *plus {
                        v -= &t;
                    } else {
                        v += &t;
                    }
                }
                v
            })
            .collect();
        residual
            .iter()
            .any(|v| !v.is_zero())
            .then(|| probe_witness("anchor composition identity", p, residual))
    });
    if let Some(w) = w {
        return Verdict::Fail(w);
    }

    let w = first_failure(&probes(r, &[n - 1, n]), |p| {
        let s = p.sections(r);
        let (x, y) = (&s[0], &s[1]);
        let mut args = x.clone();
        args.push(r.bracket_of(y));
        let mut res = r.bracket_of(&args);
        for i in 0..n {
            let mut inner = x.clone();
            inner.push(y[i].clone());
            let mut outer = y.clone();
            outer[i] = r.bracket_of(&inner);
            let t = r.bracket_of(&outer);
            for (a, b) in res.iter_mut().zip(&t) {
                *a -= b;
            }
        }
        res.iter()
            .any(|v| !v.is_zero())
            .then(|| probe_witness("fundamental identity", p, res))
    });
    Verdict::from_option(w)
}

/// Ideal generated by a set of coordinate functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateIdeal {
    pub vars: BTreeSet<usize>,
}

impl CoordinateIdeal {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Self {
        CoordinateIdeal {
            vars: vars.into_iter().collect(),
        }
    }

    /// Accepts generators that are exactly coordinate functions `x_j`.
    pub fn from_generators(gens: &[Poly]) -> Result<Self> {
        let mut vars = BTreeSet::new();
        for g in gens {
            let mut terms = g.terms();
            let ok = match (terms.next(), terms.next()) {
                (Some((e, c)), None) => {
                    e.degree() == 1 && *c == Rat::from_integer(1.into())
                }
                _ => false,
            };
            if !ok {
                return Err(Error::NonCoordinateIdeal);
            }
            vars.extend(g.support());
        }
        Ok(CoordinateIdeal { vars })
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.vanish_vars(&self.vars).is_zero()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        p.vanish_vars(&self.vars)
    }
}

/// Whether `ρ(s_1,…,s_{n−1})` maps the ideal into itself, decided on its
/// coordinate generators.
pub fn preserves_ideal(r: &NLieRinehart, tuple: &[Section], ideal: &CoordinateIdeal) -> Result<bool> {
    r.check_sections(tuple, r.n - 1)?;
    if let Some(&bad) = ideal.vars.iter().find(|&&v| v >= r.m) {
        return Err(Error::VariableOutOfRange {
            index: bad,
            nvars: r.m,
        });
    }
    let der = r.anchor_of(tuple);
    Ok(ideal
        .vars
        .iter()
        .all(|&j| ideal.contains(&der.components()[j])))
}

/// Restriction to `A/I` on the span of the reduced generators.
pub fn restrict(r: &NLieRinehart, ideal: &CoordinateIdeal, generators: &[Section], cfg: &Config) -> Result<NLieRinehart> {
    for g in generators {
        r.check_sections(std::slice::from_ref(g), 1)?;
    }
    let k = generators.len();
    let n = r.n;
    for key in combinations(k, n - 1) {
        let tuple: Vec<Section> = key.as_slice().iter().map(|&i| generators[i].clone()).collect();
        if !preserves_ideal(r, &tuple, ideal)? {
            let der = r.anchor_of(&tuple);
            let residual = ideal.vars.iter().map(|&j| ideal.reduce(&der.components()[j])).collect();
            return Err(Error::Precondition(Box::new(
                Witness::new("generator tuple does not preserve the ideal")
                    .at(key)
                    .with_residual(residual),
            )));
        }
    }
    let keep: Vec<usize> = (0..r.m).filter(|v| !ideal.vars.contains(v)).collect();
    let m2 = keep.len();
    let down = |p: &Poly| ideal.reduce(p).drop_vars(&ideal.vars);
    let reduced: Vec<Section> = generators.iter().map(|g| g.iter().map(down).collect()).collect();
    if m2 > 0 || k > 0 {
        let mat: Vec<Vec<Poly>> = (0..r.d)
            .map(|row| reduced.iter().map(|g| g[row].clone()).collect())
            .collect();
        let rank = if k == 0 { 0 } else { fraction_free_rank(mat) };
        if rank != k {
            return Err(Error::Precondition(Box::new(Witness::new(
                "reduced generators are linearly dependent",
            ).with_note(format!("rank {rank} for {k} generators")))));
        }
    }

    // [E^I, …, E^I, I·E] must land in I·E.
    for key in combinations(k, n - 1) {
        let tuple: Vec<Section> = key.as_slice().iter().map(|&i| generators[i].clone()).collect();
        for &j in &ideal.vars {
            for l in 0..k {
                let mut args = tuple.clone();
                args.push(generators[l].iter().map(|p| p * &Poly::var(r.m, j)).collect());
                let b = r.bracket_of(&args);
                if b.iter().any(|p| !ideal.contains(p)) {
                    return Err(Error::Precondition(Box::new(
                        Witness::new("bracket with I·E leaves I·E")
                            .at(key.clone())
                            .with_generator(format!("x{} times generator {}", j + 1, l + 1))
                            .with_residual(b.iter().map(|p| ideal.reduce(p)).collect()),
                    )));
                }
            }
        }
    }

    let mut out = NLieRinehart::zero(m2, k, n);
    for key in combinations(k, n - 1) {
        let tuple: Vec<Section> = key.as_slice().iter().map(|&i| generators[i].clone()).collect();
        let der = r.anchor_of(&tuple);
        let comps: Vec<Poly> = keep.iter().map(|&v| down(&der.components()[v])).collect();
        let d = PolyDerivation::new(comps);
        if !d.is_zero() {
            out.anchor_table.insert(key, d);
        }
    }
    for key in combinations(k, n) {
        let tuple: Vec<Section> = key.as_slice().iter().map(|&i| generators[i].clone()).collect();
        let b: Section = r.bracket_of(&tuple).iter().map(down).collect();
        if b.iter().all(Poly::is_zero) {
            continue;
        }
        let coeffs = match solve_poly_system(&reduced, &b, m2, cfg.degree_bound) {
            Solve::Solution(c) => c,
            Solve::NoSolution | Solve::NotFoundWithinBound(_) => {
                return Err(Error::Precondition(Box::new(
                    Witness::new("bracket of generators leaves their span")
                        .at(key)
                        .with_residual(b),
                )))
            }
        };
        if coeffs.iter().any(|p| !p.is_zero()) {
            out.bracket_table.insert(key, coeffs);
        }
    }
    Ok(out)
}

/// Direct sum `(E⊗B) ⊕ (A⊗F)` over `A⊗B`: variables of `A` first, basis of
/// `E` first. Mixed anchor and bracket entries vanish.
pub fn direct_sum(e: &NLieRinehart, f: &NLieRinehart) -> Result<NLieRinehart> {
    if e.n != f.n {
        return Err(Error::ArityMismatch {
            what: "direct sum arity",
            expected: e.n,
            found: f.n,
        });
    }
    let m = e.m + f.m;
    let d = e.d + f.d;
    let mut out = NLieRinehart::zero(m, d, e.n);
    let embed_der = |der: &PolyDerivation, offset: usize| {
        let mut comps = vec![Poly::zero(m); m];
        for (j, c) in der.components().iter().enumerate() {
            comps[offset + j] = c.embed(offset, m);
        }
        PolyDerivation::new(comps)
    };
    let shift = |k: &MultiIndex, by: usize| MultiIndex::new(k.as_slice().iter().map(|i| i + by).collect()).unwrap();
    for (k, der) in &e.anchor_table {
        out.anchor_table.insert(k.clone(), embed_der(der, 0));
    }
    for (k, der) in &f.anchor_table {
        out.anchor_table.insert(shift(k, e.d), embed_der(der, e.m));
    }
    for (k, sec) in &e.bracket_table {
        let mut v = out.zero_section();
        for (i, p) in sec.iter().enumerate() {
            v[i] = p.embed(0, m);
        }
        out.bracket_table.insert(k.clone(), v);
    }
    for (k, sec) in &f.bracket_table {
        let mut v = out.zero_section();
        for (i, p) in sec.iter().enumerate() {
            v[e.d + i] = p.embed(e.m, m);
        }
        out.bracket_table.insert(shift(k, e.d), v);
    }
    Ok(out)
}

pub(crate) fn basis_tuple(r: &NLieRinehart, key: &MultiIndex) -> Vec<Section> {
    key.as_slice().iter().map(|&i| r.basis_section(i)).collect()
}

pub(crate) fn omit_index(key: &MultiIndex, i: usize) -> Vec<usize> {
    omit(key.as_slice(), i)
}
