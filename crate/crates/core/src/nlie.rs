//! n-Lie algebras given by structure constants.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{ensure_len, Error, Result};
use crate::kernel::linalg::det_rat;
use crate::kernel::{canonical_multiindex, combinations, MultiIndex, Poly, Rat};
use crate::verdict::{first_failure, Verdict, Witness};

pub type RatVec = Vec<Rat>;

/// `(V, [·,…,·])` with `V = ℚ^dim`; the table stores `[e_{i_1},…,e_{i_n}]` for
/// strictly increasing keys only. Missing keys are zero brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLieAlgebra {
    arity: usize,
    dim: usize,
    table: BTreeMap<MultiIndex, RatVec>,
}

impl NLieAlgebra {
    pub fn zero(arity: usize, dim: usize) -> Self {
        assert!(arity >= 2 && dim >= 1);
        NLieAlgebra {
            arity,
            dim,
            table: BTreeMap::new(),
        }
    }

    /// Builds from `(indices, value)` pairs with 0-based indices in any
    /// order; a permuted key stores the correspondingly signed value.
    pub fn new<I>(arity: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, RatVec)>,
    {
        if arity < 2 {
            return Err(Error::Unsupported(format!("arity {arity} is below 2")));
        }
        if dim == 0 {
            return Err(Error::Unsupported("dimension 0".into()));
        }
        let mut out = Self::zero(arity, dim);
        for (idx, value) in entries {
            ensure_len("bracket entry indices", arity, idx.len())?;
            ensure_len("bracket entry value", dim, value.len())?;
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::VariableOutOfRange { index: bad, nvars: dim });
            }
            let (key, sign) = canonical_multiindex(&idx).ok_or_else(|| {
                Error::DimensionMismatch(format!("bracket entry with repeated index {idx:?}"))
            })?;
            if out.table.contains_key(&key) {
                return Err(Error::DimensionMismatch(format!("duplicate bracket entry {key}")));
            }
            let value: RatVec = value.into_iter().map(|v| v * Rat::from_integer(sign.into())).collect();
            if value.iter().any(|v| !v.is_zero()) {
                out.table.insert(key, value);
            }
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &BTreeMap<MultiIndex, RatVec> {
        &self.table
    }

    /// Replaces the value stored at a canonical key.
    pub fn with_entry(&self, key: MultiIndex, value: RatVec) -> Self {
        let mut out = self.clone();
        if value.iter().all(Zero::is_zero) {
            out.table.remove(&key);
        } else {
            out.table.insert(key, value);
        }
        out
    }

    /// Bracket of basis vectors given by (not necessarily sorted) indices.
    pub fn basis_bracket(&self, idx: &[usize]) -> RatVec {
        match canonical_multiindex(idx) {
            Some((key, sign)) => match self.table.get(&key) {
                Some(v) => v.iter().map(|c| c * Rat::from_integer(sign.into())).collect(),
                None => zero(self.dim),
            },
            None => zero(self.dim),
        }
    }

    pub fn bracket(&self, vectors: &[RatVec]) -> Result<RatVec> {
        ensure_len("bracket arguments", self.arity, vectors.len())?;
        for v in vectors {
            ensure_len("vector length", self.dim, v.len())?;
        }
        Ok(self.bracket_unchecked(vectors))
    }

    fn bracket_unchecked(&self, vectors: &[RatVec]) -> RatVec {
        let mut out = zero(self.dim);
        for (key, value) in &self.table {
            let minor: Vec<RatVec> = vectors
                .iter()
                .map(|v| key.as_slice().iter().map(|&j| v[j].clone()).collect())
                .collect();
            let d = det_rat(&minor);
            if d.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(value) {
                *o += &d * c;
            }
        }
        out
    }

    fn unit(&self, i: usize) -> RatVec {
        unit(self.dim, i)
    }

    fn fi_residual(&self, x: &MultiIndex, y: &MultiIndex) -> RatVec {
        let xs: Vec<RatVec> = x.as_slice().iter().map(|&i| self.unit(i)).collect();
        let ys: Vec<RatVec> = y.as_slice().iter().map(|&i| self.unit(i)).collect();
        let inner = self.bracket_unchecked(&ys);
        let mut lhs_args = xs.clone();
        lhs_args.push(inner);
        let mut res = self.bracket_unchecked(&lhs_args);
        for i in 0..self.arity {
            let mut args = xs.clone();
            args.push(ys[i].clone());
            let b = self.bracket_unchecked(&args);
            let mut outer = ys.clone();
            outer[i] = b;
            sub_assign(&mut res, &self.bracket_unchecked(&outer));
        }
        res
    }
}

/// Checks the fundamental identity on every basis tuple: X over strictly
/// increasing (n−1)-tuples, Y over strictly increasing n-tuples. Both sides are
/// skew in each block, so sorted tuples cover everything.
pub fn check_fundamental_identity(l: &NLieAlgebra) -> Verdict {
    let pairs = block_pairs(l.dim, l.arity - 1, l.arity);
    Verdict::from_option(first_failure(&pairs, |(x, y)| {
        let r = l.fi_residual(x, y);
        (!is_zero(&r)).then(|| {
            Witness::new("fundamental identity")
                .at(x.clone())
                .at(y.clone())
                .with_residual(consts(&r))
        })
    }))
}

fn block_pairs(dim: usize, kx: usize, ky: usize) -> Vec<(MultiIndex, MultiIndex)> {
    let xs = combinations(dim, kx);
    let ys = combinations(dim, ky);
    xs.iter()
        .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
        .collect()
}

/// Element of `∧^{n−1}V` in the wedge basis; zero coefficients are not stored.
pub type FundamentalElement = BTreeMap<MultiIndex, Rat>;

/// Binary bracket on the wedge basis of `∧^{n−1}V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizTable {
    pub basis: Vec<MultiIndex>,
    pub table: BTreeMap<(MultiIndex, MultiIndex), FundamentalElement>,
}

impl LeibnizTable {
    pub fn basis_bracket(&self, x: &MultiIndex, y: &MultiIndex) -> FundamentalElement {
        self.table
            .get(&(x.clone(), y.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn bracket(&self, x: &FundamentalElement, y: &FundamentalElement) -> FundamentalElement {
        let mut out = FundamentalElement::new();
        for (kx, cx) in x {
            for (ky, cy) in y {
                let c = cx * cy;
                for (k, v) in self.basis_bracket(kx, ky) {
                    add_coeff(&mut out, k, &c * v);
                }
            }
        }
        out
    }
}

fn add_coeff(el: &mut FundamentalElement, k: MultiIndex, c: Rat) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match el.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Wedge of basis vectors `e_{idx_0} ∧ …` with one slot replaced by a general vector.
fn wedge_with_slot(idx: &[usize], slot: usize, v: &[Rat]) -> FundamentalElement {
    let mut out = FundamentalElement::new();
    for (l, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut seq = idx.to_vec();
        seq[slot] = l;
        if let Some((k, s)) = canonical_multiindex(&seq) {
            add_coeff(&mut out, k, c * Rat::from_integer(s.into()));
        }
    }
    out
}

/// The bracket `[x, y] = Σ_i Y_1 ∧ … ∧ [X, Y_i] ∧ … ∧ Y_{n−1}` on basis
/// fundamental elements.
pub fn induced_leibniz(l: &NLieAlgebra) -> LeibnizTable {
    let basis = combinations(l.dim, l.arity - 1);
    let mut table = BTreeMap::new();
    for x in &basis {
        for y in &basis {
            let mut out = FundamentalElement::new();
            for i in 0..y.arity() {
                let mut args = x.as_slice().to_vec();
                args.push(y.as_slice()[i]);
                let b = l.basis_bracket(&args);
                for (k, c) in wedge_with_slot(y.as_slice(), i, &b) {
                    add_coeff(&mut out, k, c);
                }
            }
            if !out.is_empty() {
                table.insert((x.clone(), y.clone()), out);
            }
        }
    }
    LeibnizTable { basis, table }
}

/// Checks `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` on all basis triples.
pub fn check_leibniz(t: &LeibnizTable) -> Verdict {
    let unit = |k: &MultiIndex| FundamentalElement::from([(k.clone(), Rat::one())]);
    let triples: Vec<(MultiIndex, MultiIndex, MultiIndex)> = t
        .basis
        .iter()
        .flat_map(|x| {
            t.basis.iter().flat_map(move |y| {
                t.basis.iter().map(move |z| (x.clone(), y.clone(), z.clone()))
            })
        })
        .collect();
    Verdict::from_option(first_failure(&triples, |(x, y, z)| {
        let (ex, ey, ez) = (unit(x), unit(y), unit(z));
        let lhs = t.bracket(&ex, &t.bracket(&ey, &ez));
        let mut res = lhs;
        for (k, c) in t.bracket(&t.bracket(&ex, &ey), &ez) {
            add_coeff(&mut res, k, -c);
        }
        for (k, c) in t.bracket(&ey, &t.bracket(&ex, &ez)) {
            add_coeff(&mut res, k, -c);
        }
        (!res.is_empty()).then(|| {
            Witness::new("Leibniz identity")
                .with_indices([x.clone(), y.clone(), z.clone()])
                .with_residual(
                    t.basis
                        .iter()
                        .map(|k| Poly::constant(0, res.get(k).cloned().unwrap_or_else(Rat::zero)))
                        .collect(),
                )
        })
    }))
}

pub type RatMatrix = Vec<Vec<Rat>>;

/// `ρ: ∧^{n−1}V → gl(W)` stored on strictly increasing (n−1)-tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepTable {
    width: usize,
    arity: usize,
    dim: usize,
    table: BTreeMap<MultiIndex, RatMatrix>,
}

impl RepTable {
    pub fn zero(l: &NLieAlgebra, width: usize) -> Self {
        RepTable {
            width,
            arity: l.arity,
            dim: l.dim,
            table: BTreeMap::new(),
        }
    }

    pub fn new<I>(l: &NLieAlgebra, width: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, RatMatrix)>,
    {
        let mut out = Self::zero(l, width);
        for (idx, m) in entries {
            ensure_len("representation entry indices", l.arity - 1, idx.len())?;
            ensure_len("representation matrix rows", width, m.len())?;
            for row in &m {
                ensure_len("representation matrix columns", width, row.len())?;
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= l.dim) {
                return Err(Error::VariableOutOfRange { index: bad, nvars: l.dim });
            }
            let (key, sign) = canonical_multiindex(&idx).ok_or_else(|| {
                Error::DimensionMismatch(format!("representation entry with repeated index {idx:?}"))
            })?;
            let s = Rat::from_integer(sign.into());
            let m: RatMatrix = m.into_iter().map(|r| r.into_iter().map(|v| v * &s).collect()).collect();
            out.table.insert(key, m);
        }
        Ok(out)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn table(&self) -> &BTreeMap<MultiIndex, RatMatrix> {
        &self.table
    }

    pub fn with_entry(&self, key: MultiIndex, m: RatMatrix) -> Self {
        let mut out = self.clone();
        out.table.insert(key, m);
        out
    }

    /// `ρ(v_1,…,v_{n−1})` for general vectors.
    pub fn apply(&self, vectors: &[RatVec]) -> RatMatrix {
        let mut out = zero_matrix(self.width);
        for (key, m) in &self.table {
            let minor: Vec<RatVec> = vectors
                .iter()
                .map(|v| key.as_slice().iter().map(|&j| v[j].clone()).collect())
                .collect();
            let d = det_rat(&minor);
            if d.is_zero() {
                continue;
            }
            for (orow, mrow) in out.iter_mut().zip(m) {
                for (o, c) in orow.iter_mut().zip(mrow) {
                    *o += &d * c;
                }
            }
        }
        out
    }
}

/// The adjoint representation `ρ(x_1,…,x_{n−1})(y) = [x_1,…,x_{n−1},y]`.
pub fn adjoint(l: &NLieAlgebra) -> RepTable {
    let mut table = BTreeMap::new();
    for key in combinations(l.dim, l.arity - 1) {
        let mut m = zero_matrix(l.dim);
        for j in 0..l.dim {
            let mut args = key.as_slice().to_vec();
            args.push(j);
            for (row, c) in l.basis_bracket(&args).into_iter().enumerate() {
                m[row][j] = c;
            }
        }
        if m.iter().flatten().any(|c| !c.is_zero()) {
            table.insert(key, m);
        }
    }
    RepTable {
        width: l.dim,
        arity: l.arity,
        dim: l.dim,
        table,
    }
}

/// Checks both representation identities on basis tuples: the commutator
/// identity over pairs of (n−1)-tuples, then the composition identity over
/// ((n−2)-tuple, n-tuple) pairs.
pub fn check_representation(l: &NLieAlgebra, r: &RepTable) -> Result<Verdict> {
    if r.arity != l.arity || r.dim != l.dim {
        return Err(Error::DimensionMismatch(format!(
            "representation built for arity {} dimension {}, algebra has arity {} dimension {}",
            r.arity, r.dim, l.arity, l.dim
        )));
    }
    let n = l.arity;
    let units: Vec<RatVec> = (0..l.dim).map(|i| unit(l.dim, i)).collect();
    let vecs = |k: &MultiIndex| -> Vec<RatVec> { k.as_slice().iter().map(|&i| units[i].clone()).collect() };

    let first = block_pairs(l.dim, n - 1, n - 1);
    let w = first_failure(&first, |(x, y)| {
        let rx = r.apply(&vecs(x));
        let ry = r.apply(&vecs(y));
        let mut res = mat_sub(&mat_mul(&rx, &ry), &mat_mul(&ry, &rx));
        let ys = vecs(y);
        for i in 0..ys.len() {
            let mut args = vecs(x);
            args.push(ys[i].clone());
            let mut yy = ys.clone();
            yy[i] = l.bracket_unchecked(&args);
            res = mat_sub(&res, &r.apply(&yy));
        }
        (!is_zero_matrix(&res)).then(|| {
            Witness::new("representation commutator identity")
                .at(x.clone())
                .at(y.clone())
                .with_residual(consts(&res.concat()))
        })
    });
    if let Some(w) = w {
        return Ok(Verdict::Fail(w));
    }

    let second = block_pairs(l.dim, n - 2, n);
    let w = first_failure(&second, |(x, y)| {
        let ys = vecs(y);
        let mut args = vecs(x);
        args.push(l.bracket_unchecked(&ys));
        let mut res = r.apply(&args);
        for i in 0..n {
            let hat: Vec<RatVec> = ys.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, v)| v.clone()).collect();
            let mut xa = vecs(x);
            xa.push(ys[i].clone());
            let term = mat_mul(&r.apply(&hat), &r.apply(&xa));
            // (−1)^{n−i} with 1-based i = i + 1
            if (n - (i + 1)) % 2 == 0 {
                res = mat_sub(&res, &term);
            } else {
                res = mat_add(&res, &term);
            }
        }
        (!is_zero_matrix(&res)).then(|| {
            Witness::new("representation composition identity")
                .at(x.clone())
                .at(y.clone())
                .with_residual(consts(&res.concat()))
        })
    });
    Ok(Verdict::from_option(w))
}

/// Random structure with entries in `-2..=2`, each key present with probability `density`.
pub fn random_structure(arity: usize, dim: usize, density: f64, rng: &mut impl Rng) -> NLieAlgebra {
    let mut l = NLieAlgebra::zero(arity, dim);
    for key in combinations(dim, arity) {
        if rng.gen_bool(density) {
            let v: RatVec = (0..dim).map(|_| Rat::from_integer(rng.gen_range(-2i64..=2).into())).collect();
            l = l.with_entry(key, v);
        }
    }
    l
}

/// Draws random structures until `count` of them satisfy the fundamental
/// identity, giving up after `max_attempts` draws.
pub fn random_fi_passing(arity: usize, dim: usize, count: usize, seed: u64, max_attempts: usize) -> Vec<NLieAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let density = rng.gen_range(0.2..=1.0);
        let l = random_structure(arity, dim, density, &mut rng);
        if check_fundamental_identity(&l).is_pass() {
            out.push(l);
        }
    }
    out
}

pub(crate) fn zero(d: usize) -> RatVec {
    vec![Rat::zero(); d]
}

pub(crate) fn unit(d: usize, i: usize) -> RatVec {
    let mut v = zero(d);
    v[i] = Rat::one();
    v
}

fn is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn sub_assign(a: &mut [Rat], b: &[Rat]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
}

pub(crate) fn consts(v: &[Rat]) -> Vec<Poly> {
    v.iter().map(|c| Poly::constant(0, c.clone())).collect()
}

fn zero_matrix(w: usize) -> RatMatrix {
    vec![vec![Rat::zero(); w]; w]
}

fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let w = a.len();
    let mut out = zero_matrix(w);
    for i in 0..w {
        for k in 0..w {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..w {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn mat_add(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

fn mat_sub(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

fn is_zero_matrix(a: &RatMatrix) -> bool {
    a.iter().flatten().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::kernel::int;

    fn levi_civita(p: &[usize]) -> i64 {
        match canonical_multiindex(p) {
            Some((_, s)) => s as i64,
            None => 0,
        }
    }

    #[test]
    fn v4_matches_levi_civita_oracle() {
        let v4 = builtins::v4();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let got = v4.basis_bracket(&[i, j, k]);
                    for l in 0..4 {
                        assert_eq!(got[l], int(levi_civita(&[i, j, k, l])));
                    }
                }
            }
        }
        assert_eq!(v4.basis_bracket(&[0, 1, 2]), unit(4, 3));
        assert_eq!(v4.basis_bracket(&[1, 0, 2]), vec![int(0), int(0), int(0), int(-1)]);
        assert_eq!(v4.basis_bracket(&[0, 0, 1]), zero(4));
    }

    #[test]
    fn bracket_arity_errors() {
        let v4 = builtins::v4();
        assert!(v4.bracket(&[unit(4, 0), unit(4, 1)]).is_err());
        assert!(v4.bracket(&[unit(4, 0), unit(4, 1), unit(3, 2)]).is_err());
    }

    #[test]
    fn fi_examples() {
        assert!(check_fundamental_identity(&NLieAlgebra::zero(3, 4)).is_pass());
        let v4 = builtins::v4();
        assert!(check_fundamental_identity(&v4).is_pass());
        let key = MultiIndex::new(vec![0, 1, 2]).unwrap();
        let broken = v4.with_entry(key, unit(4, 2));
        let v = check_fundamental_identity(&broken);
        let w = v.witness().expect("perturbed V4 must fail");
        assert_eq!(w.indices.len(), 2);
        assert!(w.residual.iter().any(|p| !p.is_zero()));
    }

    #[test]
    fn induced_leibniz_examples() {
        let t = induced_leibniz(&builtins::v4());
        let mi = |v: &[usize]| MultiIndex::new(v.to_vec()).unwrap();
        assert_eq!(
            t.basis_bracket(&mi(&[0, 1]), &mi(&[0, 2])),
            FundamentalElement::from([(mi(&[0, 3]), int(1))])
        );
        assert!(t.basis_bracket(&mi(&[0, 1]), &mi(&[2, 3])).is_empty());
        assert!(check_leibniz(&t).is_pass());
        assert!(induced_leibniz(&NLieAlgebra::zero(3, 4)).table.is_empty());
    }

    #[test]
    fn representation_examples() {
        let v4 = builtins::v4();
        assert!(check_representation(&v4, &RepTable::zero(&v4, 2)).unwrap().is_pass());
        let ad = adjoint(&v4);
        assert!(check_representation(&v4, &ad).unwrap().is_pass());
        let key = MultiIndex::new(vec![0, 1]).unwrap();
        let mut m = ad.table().get(&key).cloned().unwrap();
        m[0][0] += int(1);
        let bad = ad.with_entry(key, m);
        assert!(!check_representation(&v4, &bad).unwrap().is_pass());
    }

    #[test]
    fn random_generator_is_deterministic() {
        let a = random_fi_passing(3, 3, 5, 7, 100);
        let b = random_fi_passing(3, 3, 5, 7, 100);
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
    }
}
