//! Fixtures shared by the benchmarks in `benches/`.

use nambu_forge::algebroid::{dual_linear_nambu, BundleMapCo, NLieAlgebroid};
use nambu_forge::generators::comorphism_candidates;
use nambu_forge::nambu::NambuTensor;

/// A fixed batch of comorphism candidates, so runs compare like with like.
pub fn comorphism_batch(n: usize) -> Vec<(BundleMapCo, NLieAlgebroid, NLieAlgebroid)> {
    comorphism_candidates(n, 8, 0xbe4c + n as u64)
}

/// Dual tensors of the targets in [`comorphism_batch`].
pub fn dual_tensors(n: usize) -> Vec<NambuTensor> {
    comorphism_batch(n)
        .iter()
        .map(|(_, a2, _)| dual_linear_nambu(a2).expect("rank equals arity"))
        .collect()
}
