//! Exact linear algebra over ℚ and over ℚ[x].

use num_traits::{One, Zero};

use super::{Poly, Rat};

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, 1, &mut out);
    out.sort();
    out
}

fn permute(p: &mut Vec<usize>, k: usize, sign: i8, out: &mut Vec<(Vec<usize>, i8)>) {
    if k == p.len() {
        out.push((p.clone(), sign));
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, if i == k { sign } else { -sign }, out);
        p.swap(k, i);
    }
}

/// Determinant of a square rational matrix.
pub fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Determinant of a square polynomial matrix by cofactor expansion.
pub fn det_poly(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::one(nvars),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut out = Poly::zero(nvars);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != c)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &det_poly(&minor, nvars);
                if c % 2 == 0 {
                    out += &term;
                } else {
                    out -= &term;
                }
            }
            out
        }
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(mut a: Vec<Vec<Rat>>) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = Rat::one() / &a[r][c];
        for k in c..cols {
            a[r][k] = &a[r][k] * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(a: &[Vec<Rat>]) -> usize {
    rref(a.to_vec()).1.len()
}

/// Basis of the right nullspace `{v : a v = 0}`, where `a` has `cols` columns.
pub fn nullspace(a: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(a.to_vec());
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Solves `a x = b` over ℚ; returns one solution with free variables at zero.
pub fn solve_rat(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    if aug.is_empty() {
        return Some(vec![Rat::zero(); cols]);
    }
    let (r, pivots) = rref(aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[row][cols].clone();
    }
    Some(x)
}

/// Exponent vectors of all monomials of total degree at most `deg`, graded-lex ascending.
pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=deg {
        monomials_of_degree(nvars, d, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| super::Exponents::new(a.clone()).cmp(&super::Exponents::new(b.clone())));
    out
}

fn monomials_of_degree(nvars: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() + 1 == nvars {
        cur.push(d);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in 0..=d {
        cur.push(k);
        monomials_of_degree(nvars, d - k, cur, out);
        cur.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Solution(Vec<Poly>),
    NoSolution,
    /// Consistent over rational functions but no polynomial solution of bounded degree was found.
    NotFoundWithinBound(u32),
}

/// Finds polynomials `c` with `Σ_k c_k · cols[k] = target`.
///
/// Constant pivots are eliminated first; this is exact over ℚ[x] because
/// nonzero constants are units. Whatever remains is tested for consistency over
/// ℚ(x) by fraction-free elimination and then searched for a polynomial
/// solution with undetermined coefficients up to `degree_bound`.
pub fn solve_poly_system(cols: &[Vec<Poly>], target: &[Poly], nvars: usize, degree_bound: u32) -> Solve {
    let rows = target.len();
    let k = cols.len();
    let mut a: Vec<Vec<Poly>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Poly> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();

    let mut pivot_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut is_pivot_col = vec![false; k];
    loop {
        let found = (0..rows)
            .filter(|&i| pivot_of_row[i].is_none())
            .find_map(|i| {
                (0..k)
                    .filter(|&j| !is_pivot_col[j])
                    .find(|&j| !a[i][j].is_zero() && a[i][j].is_constant())
                    .map(|j| (i, j))
            });
        let Some((i, j)) = found else { break };
        let inv = Rat::one() / a[i][j].constant_value().unwrap();
        for e in a[i].iter_mut() {
            *e = e.scale(&inv);
        }
        let pivot_row = a[i].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == i || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &(&f * p);
                }
            }
        }
        pivot_of_row[i] = Some(j);
        is_pivot_col[j] = true;
    }

    let free: Vec<usize> = (0..k).filter(|&j| !is_pivot_col[j]).collect();
    let rest: Vec<usize> = (0..rows).filter(|&i| pivot_of_row[i].is_none()).collect();
    let sub: Vec<Vec<Poly>> = rest
        .iter()
        .map(|&i| {
            let mut r: Vec<Poly> = free.iter().map(|&j| a[i][j].clone()).collect();
            r.push(a[i][k].clone());
            r
        })
        .collect();

    let free_vals: Vec<Poly> = if sub.iter().all(|r| r.iter().all(Poly::is_zero)) {
        vec![Poly::zero(nvars); free.len()]
    } else if sub.iter().all(|r| r[..free.len()].iter().all(Poly::is_zero)) {
        return Solve::NoSolution;
    } else {
        let coeff_rank = fraction_free_rank(
            sub.iter().map(|r| r[..free.len()].to_vec()).collect(),
        );
        let aug_rank = fraction_free_rank(sub.clone());
        if aug_rank > coeff_rank {
            return Solve::NoSolution;
        }
        match undetermined(&sub, free.len(), nvars, degree_bound) {
            Some(v) => v,
            None => return Solve::NotFoundWithinBound(degree_bound),
        }
    };

    let mut out = vec![Poly::zero(nvars); k];
    for (f, &j) in free.iter().enumerate() {
        out[j] = free_vals[f].clone();
    }
    for (i, pj) in pivot_of_row.iter().enumerate() {
        if let Some(j) = *pj {
            let mut v = a[i][k].clone();
            for (f, &fj) in free.iter().enumerate() {
                if !a[i][fj].is_zero() {
                    v -= &(&a[i][fj] * &free_vals[f]);
                }
            }
            out[j] = v;
        }
    }
    Solve::Solution(out)
}

/// Rank over the field of rational functions, by fraction-free elimination.
pub fn fraction_free_rank(mut a: Vec<Vec<Poly>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let Some(nvars) = a.first().and_then(|r| r.first()).map(Poly::nvars) else {
        return 0;
    };
    let mut prev = Poly::one(nvars);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = v.div_exact(&prev).unwrap_or(v);
            }
            a[i][c] = Poly::zero(nvars);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn undetermined(sub: &[Vec<Poly>], nfree: usize, nvars: usize, bound: u32) -> Option<Vec<Poly>> {
    let monos = monomials_up_to(nvars, bound);
    // Equation keys: (row, exponent vector) for every monomial that can appear.
    let mut keys: Vec<(usize, super::Exponents)> = Vec::new();
    let mut columns: Vec<Vec<(usize, Rat)>> = Vec::new();
    let mut key_index = std::collections::BTreeMap::new();
    let mut intern = |row: usize, e: &super::Exponents, keys: &mut Vec<(usize, super::Exponents)>| {
        *key_index.entry((row, e.clone())).or_insert_with(|| {
            keys.push((row, e.clone()));
            keys.len() - 1
        })
    };
    for f in 0..nfree {
        for mono in &monos {
            let m = Poly::monomial(nvars, mono.clone(), Rat::one());
            let mut col = Vec::new();
            for (row, r) in sub.iter().enumerate() {
                let prod = &r[f] * &m;
                for (e, c) in prod.terms() {
                    col.push((intern(row, e, &mut keys), c.clone()));
                }
            }
            columns.push(col);
        }
    }
    let mut rhs = Vec::new();
    for (row, r) in sub.iter().enumerate() {
        for (e, c) in r[nfree].terms() {
            rhs.push((intern(row, e, &mut keys), c.clone()));
        }
    }
    let n_eq = keys.len();
    let n_unk = columns.len();
    let mut mat = vec![vec![Rat::zero(); n_unk]; n_eq];
    for (u, col) in columns.iter().enumerate() {
        for (eq, c) in col {
            mat[*eq][u] += c;
        }
    }
    let mut b = vec![Rat::zero(); n_eq];
    for (eq, c) in rhs {
        b[eq] += c;
    }
    let x = solve_rat(&mat, &b)?;
    let mut out = vec![Poly::zero(nvars); nfree];
    for f in 0..nfree {
        let terms = monos
            .iter()
            .enumerate()
            .map(|(mi, mono)| (mono.clone(), x[f * monos.len() + mi].clone()));
        out[f] = Poly::from_terms(nvars, terms);
    }
    Some(out)
}
