//! Named examples available to every spec document.

use nambu_forge::builtins as core;
use nambu_forge::kernel::Poly;
use nambu_forge::nambu::PolyMap;
use nambu_forge::rinehart::AlgebraMap;

use crate::document::{Definition, Kind, Reference};

pub struct Entry {
    pub pattern: &'static str,
    pub kinds: &'static [Kind],
    pub description: &'static str,
}

pub const TABLE: &[Entry] = &[
    Entry {
        pattern: "v4",
        kinds: &[Kind::Nlie],
        description: "simple 3-Lie algebra on Q^4, [e_i,e_j,e_k] = sum_l eps_ijkl e_l",
    },
    Entry {
        pattern: "tangent<n>",
        kinds: &[Kind::Rinehart, Kind::Algebroid],
        description: "tangent model over Q^n, rank n, zero brackets, anchor of (e_1..e_{n-1}) = d/dx1 (2 <= n <= 6)",
    },
    Entry {
        pattern: "zero_anchor<n>",
        kinds: &[Kind::Rinehart, Kind::Algebroid],
        description: "rank n over Q^n with zero anchor and zero brackets (2 <= n <= 6)",
    },
    Entry {
        pattern: "canonical<m>",
        kinds: &[Kind::Nambu],
        description: "top-degree tensor d/dx1 ^ ... ^ d/dxm on Q^m (1 <= m <= 8)",
    },
    Entry {
        pattern: "identity<m>",
        kinds: &[Kind::PolyMap, Kind::AlgebraMap],
        description: "identity of Q^m, or of its polynomial ring (0 <= m <= 8)",
    },
    Entry {
        pattern: "scale_first<m>",
        kinds: &[Kind::PolyMap],
        description: "x -> (2x1, x2, ..., xm) (1 <= m <= 8)",
    },
    Entry {
        pattern: "identity_fwd<n>",
        kinds: &[Kind::BundleMapForward],
        description: "identity bundle map of the rank-n trivial bundle over Q^n",
    },
    Entry {
        pattern: "identity_co<n>",
        kinds: &[Kind::BundleMapCo],
        description: "identity comorphism of the rank-n trivial bundle over Q^n",
    },
    Entry {
        pattern: "base_scaled<n>",
        kinds: &[Kind::BundleMapForward],
        description: "identity fibres over scale_first<n>; not a morphism of tangent<n>",
    },
    Entry {
        pattern: "zero_pullback<n>",
        kinds: &[Kind::BundleMapCo],
        description: "zero pullback over the identity; from tangent<n> to zero_anchor<n> it breaks the anchor condition",
    },
];

fn suffix(name: &str, prefix: &str, lo: usize, hi: usize) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || (rest.len() > 1 && rest.starts_with('0')) {
        return None;
    }
    let v: usize = rest.parse().ok()?;
    (lo..=hi).contains(&v).then_some(v)
}

fn identity_matrix(d: usize, m: usize) -> Vec<Vec<Poly>> {
    (0..d)
        .map(|r| (0..d).map(|c| Poly::from_int(m, (r == c) as i64)).collect())
        .collect()
}

fn scale_first(m: usize) -> PolyMap {
    let mut comps: Vec<Poly> = (0..m).map(|j| Poly::var(m, j)).collect();
    comps[0] = &comps[0] * &Poly::from_int(m, 2);
    PolyMap::new(m, m, comps).expect("shape")
}

fn inline_map(m: PolyMap) -> Reference {
    Reference::Inline(Box::new(Definition::PolyMap(m)))
}

pub fn lookup(name: &str, kind: Kind) -> Option<Definition> {
    let algebroid = kind == Kind::Algebroid;
    match kind {
        Kind::Nlie if name == "v4" => Some(Definition::Nlie(core::v4())),
        Kind::Rinehart | Kind::Algebroid => {
            if let Some(n) = suffix(name, "tangent", 2, 6) {
                return Some(Definition::Rinehart { algebroid, structure: core::tangent(n) });
            }
            suffix(name, "zero_anchor", 2, 6).map(|n| Definition::Rinehart {
                algebroid,
                structure: core::zero_rinehart(n, n, n),
            })
        }
        Kind::Nambu => suffix(name, "canonical", 1, 8).map(|m| Definition::Nambu(core::canonical_nambu(m))),
        Kind::PolyMap => {
            if let Some(m) = suffix(name, "identity", 0, 8) {
                return Some(Definition::PolyMap(PolyMap::identity(m)));
            }
            suffix(name, "scale_first", 1, 8).map(|m| Definition::PolyMap(scale_first(m)))
        }
        Kind::AlgebraMap => suffix(name, "identity", 0, 8).map(|m| Definition::AlgebraMap(AlgebraMap::identity(m))),
        Kind::BundleMapForward => {
            if let Some(n) = suffix(name, "identity_fwd", 1, 6) {
                return Some(Definition::BundleMapForward {
                    base: inline_map(PolyMap::identity(n)),
                    fiber: identity_matrix(n, n),
                });
            }
            suffix(name, "base_scaled", 1, 6).map(|n| Definition::BundleMapForward {
                base: inline_map(scale_first(n)),
                fiber: identity_matrix(n, n),
            })
        }
        Kind::BundleMapCo => {
            if let Some(n) = suffix(name, "identity_co", 1, 6) {
                return Some(Definition::BundleMapCo {
                    base: inline_map(PolyMap::identity(n)),
                    pullback: identity_matrix(n, n),
                });
            }
            suffix(name, "zero_pullback", 1, 6).map(|n| Definition::BundleMapCo {
                base: inline_map(PolyMap::identity(n)),
                pullback: vec![vec![Poly::zero(n); n]; n],
            })
        }
        _ => None,
    }
}

/// Every kind under which `name` resolves.
pub fn lookup_any(name: &str) -> Vec<Definition> {
    let mut out: Vec<Definition> = Vec::new();
    for kind in Kind::ALL {
        if kind == Kind::Algebroid {
            continue;
        }
        if let Some(d) = lookup(name, kind) {
            out.push(d);
        }
    }
    out
}
