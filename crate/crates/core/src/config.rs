use std::sync::RwLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{linalg, Poly, Rat};

/// Heuristic bounds shared by the checkers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Highest monomial degree used as a probe function.
    pub probe_degree: u32,
    /// Degree bound for polynomial solutions of membership systems.
    pub degree_bound: u32,
    /// Extra random polynomials tested after generator-based checks.
    pub random_probes: usize,
    pub seed: u64,
}

static OVERRIDE: RwLock<Option<Config>> = RwLock::new(None);

/// Replaces the values returned by `Config::default()` for the rest of the
/// process. Checkers without an explicit configuration argument read it.
pub fn set_process_default(cfg: Config) {
    *OVERRIDE.write().unwrap_or_else(|e| e.into_inner()) = Some(cfg);
}

impl Default for Config {
    fn default() -> Self {
        if let Some(cfg) = OVERRIDE.read().unwrap_or_else(|e| e.into_inner()).as_ref() {
            return cfg.clone();
        }
        Config::builtin()
    }
}

impl Config {
    /// The shipped bounds, ignoring any process-wide override.
    pub fn builtin() -> Self {
        Config {
            probe_degree: 2,
            degree_bound: 4,
            random_probes: 5,
            seed: 0x5eed,
        }
    }
}

impl Config {
    /// Deterministic random polynomials of degree at most 2 with small integer
    /// coefficients.
    pub fn random_polys(&self, nvars: usize) -> Vec<Poly> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (nvars as u64).wrapping_mul(0x9e37_79b9));
        let monos = linalg::monomials_up_to(nvars, 2);
        (0..self.random_probes)
            .map(|_| {
                Poly::from_terms(
                    nvars,
                    monos.iter().map(|m| {
                        let c: i64 = rng.gen_range(-3..=3);
                        (m.clone(), Rat::from_integer(c.into()))
                    }),
                )
            })
            .collect()
    }

    /// Variables followed by every monomial of degree 2..=probe_degree.
    pub fn probe_set(&self, nvars: usize) -> Vec<Poly> {
        linalg::monomials_up_to(nvars, self.probe_degree)
            .into_iter()
            .filter(|m| m.iter().sum::<u32>() >= 1)
            .map(|m| Poly::monomial(nvars, m, Rat::from_integer(1.into())))
            .collect()
    }
}
