use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{PartSet, PartitionMatrix, Symbol};
use crate::Count;

use super::combinatorics::f;

/// `E^π(S)`: parts `j` with `M_{i,j} ∈ {π, *}` for every `i ∈ S`.
pub fn e_set(m: &PartitionMatrix, pi: bool, s: PartSet) -> PartSet {
    PartSet::from_parts((0..m.size()).filter(|&j| s.iter().all(|i| m.get(i, j).allows(pi))))
}

/// `ℓ(M,S,τ)`: parts of `S` whose diagonal entry is `τ ⊕ 1`.
pub fn ell_of(m: &PartitionMatrix, s: PartSet, tau: bool) -> usize {
    let other = Symbol::of_bool(!tau);
    s.iter().filter(|&i| m.get(i, i) == other).count()
}

/// Membership of `S` in `ℰ(M,τ)`.
pub fn in_excluded(m: &PartitionMatrix, s: PartSet, tau: bool) -> bool {
    let other = Symbol::of_bool(!tau);
    ell_of(m, s, tau) == s.len()
        || s.iter()
            .any(|i| s.iter().any(|j| i != j && m.get(i, j) == other))
}

/// `Z^S_M(Γ^τ_k)` for `k > |D|`.
pub fn surjective_gadget_count(
    m: &PartitionMatrix,
    s: PartSet,
    tau: bool,
    k: usize,
) -> Result<Count> {
    if k <= m.size() {
        return Err(Error::SmallGadget { k, size: m.size() });
    }
    if in_excluded(m, s, tau) {
        return Ok(Count::zero());
    }
    f(ell_of(m, s, tau), s.len(), k)
}
