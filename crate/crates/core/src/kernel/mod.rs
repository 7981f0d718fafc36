//! Exact arithmetic: rationals, sparse polynomials, derivations, skew
//! multi-indices and small exact linear algebra.

pub mod derivation;
pub mod limits;
pub mod linalg;
pub mod multiindex;
mod parse;
pub mod poly;

pub use derivation::PolyDerivation;
pub use multiindex::{canonical_multiindex, combinations, MultiIndex};
pub use parse::{parse_poly, parse_rat};
pub use poly::{Exponents, Poly};

/// Exact rational number; always stored in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

/// Vector of sections or polynomials, one entry per basis element.
pub type PolyVec = Vec<Poly>;

pub fn zero_vec(len: usize, nvars: usize) -> PolyVec {
    vec![Poly::zero(nvars); len]
}

pub fn unit_vec(len: usize, nvars: usize, k: usize) -> PolyVec {
    let mut v = zero_vec(len, nvars);
    v[k] = Poly::one(nvars);
    v
}

pub fn vec_add(a: &[Poly], b: &[Poly]) -> PolyVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Poly], b: &[Poly]) -> PolyVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Poly], p: &Poly) -> PolyVec {
    a.iter().map(|x| x * p).collect()
}

pub fn vec_is_zero(a: &[Poly]) -> bool {
    a.iter().all(Poly::is_zero)
}

pub fn vec_substitute(a: &[Poly], images: &[Poly]) -> crate::error::Result<PolyVec> {
    a.iter().map(|x| x.substitute(images)).collect()
}
