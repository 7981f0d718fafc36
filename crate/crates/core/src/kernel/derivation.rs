use std::fmt;

use super::Poly;
use crate::error::{ensure_len, Result};

/// Polynomial vector field `Σ_j components[j] ∂/∂x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyDerivation {
    components: Vec<Poly>,
}

impl PolyDerivation {
    pub fn new(components: Vec<Poly>) -> Self {
        if let Some(first) = components.first() {
            let m = first.nvars();
            assert!(components.iter().all(|c| c.nvars() == m));
            assert_eq!(m, components.len(), "derivation over {m} variables");
        }
        PolyDerivation { components }
    }

    pub fn zero(nvars: usize) -> Self {
        PolyDerivation {
            components: vec![Poly::zero(nvars); nvars],
        }
    }

    /// The coordinate field `∂/∂x_j`.
    pub fn basis(nvars: usize, j: usize) -> Self {
        let mut d = Self::zero(nvars);
        d.components[j] = Poly::one(nvars);
        d
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        ensure_len("derivation variables", self.nvars(), p.nvars())?;
        Ok(self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.nvars());
        for (j, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = p.diff(j);
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyDerivation {
            components: super::vec_add(&self.components, &other.components),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        PolyDerivation {
            components: super::vec_sub(&self.components, &other.components),
        }
    }

    pub fn scale(&self, p: &Poly) -> Self {
        PolyDerivation {
            components: super::vec_scale(&self.components, p),
        }
    }

    pub fn neg(&self) -> Self {
        PolyDerivation {
            components: self.components.iter().map(|c| -c).collect(),
        }
    }

    /// `[D1, D2] = D1∘D2 − D2∘D1`, componentwise `D1(D2^j) − D2(D1^j)`.
    pub fn commutator(&self, other: &Self) -> Self {
        PolyDerivation {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| self.apply_unchecked(b) - other.apply_unchecked(a))
                .collect(),
        }
    }
}

impl fmt::Display for PolyDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({c})*d/dx{}", j + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 2).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(PolyDerivation::basis(2, 0).apply(&p("x1^2")).unwrap(), p("2*x1"));
        let d = PolyDerivation::new(vec![p("x2"), p("0")]);
        assert_eq!(d.apply(&p("x1*x2")).unwrap(), p("x2^2"));
        assert!(d.apply(&p("7")).unwrap().is_zero());
    }

    #[test]
    fn apply_dimension_mismatch() {
        let d = PolyDerivation::basis(2, 0);
        assert!(matches!(
            d.apply(&Poly::one(3)),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn commutator_of_coordinate_fields() {
        let a = PolyDerivation::new(vec![p("x2"), p("0")]);
        let b = PolyDerivation::basis(2, 1);
        // [x2 d1, d2] = -d1
        assert_eq!(a.commutator(&b), PolyDerivation::basis(2, 0).neg());
    }
}
