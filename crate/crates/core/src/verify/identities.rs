//! Checks of the gadget-count formula, the decomposition of `Z_M(J)` over
//! gadget images, and the interpolation round trip.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{build_gadget, build_j, SimpleGraph};
use crate::interpolation::{
    access_profile, build_interpolation_system, e_set, solve_t_integral, surjective_gadget_count,
    InterpolationSystem,
};
use crate::matrix::{PartSet, PartitionMatrix};
use crate::par::Execution;
use crate::Count;

use super::brute::{brute_profile, brute_z, brute_z_in, full_lists, Budget};
use super::frontier::frontier_z;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetMismatch {
    pub set: String,
    pub tau: bool,
    pub k: usize,
    pub formula: String,
    pub brute: String,
}

/// Compares brute-forced `Z^S_M(Γ^τ_k)` with the closed form for every
/// `S ⊆ D`. Requires `k > |D|`.
pub fn check_gadget_formula(
    m: &PartitionMatrix,
    tau: bool,
    k: usize,
) -> Result<Vec<GadgetMismatch>> {
    let gadget = build_gadget(tau, k);
    let counts = brute_profile(
        m,
        &gadget,
        &full_lists(m, &gadget),
        Budget::from_env(),
        Execution::Sequential,
    )?;
    let mut bad = Vec::new();
    for s in PartSet::all_subsets(m.size()) {
        let formula = surjective_gadget_count(m, s, tau, k)?;
        if &formula != counts.get(s) {
            bad.push(GadgetMismatch {
                set: s.to_string(),
                tau,
                k,
                formula: formula.to_string(),
                brute: counts.get(s).to_string(),
            });
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eq1Check {
    #[serde(serialize_with = "super::ser_count")]
    pub lhs: Count,
    #[serde(serialize_with = "super::ser_count")]
    pub rhs: Count,
}

impl Eq1Check {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `Z_M(J^{π,τ}(k,G)) = Σ_S Z^S_M(Γ^τ_k) · Z_{M|E^π(S)}(G)`, both sides by
/// brute force.
pub fn verify_eq1(
    m: &PartitionMatrix,
    pi: bool,
    tau: bool,
    k: usize,
    g: &SimpleGraph,
) -> Result<Eq1Check> {
    let lhs = brute_z(m, &build_j(pi, tau, k, g))?;
    let gadget = build_gadget(tau, k);
    let surj = brute_profile(
        m,
        &gadget,
        &full_lists(m, &gadget),
        Budget::from_env(),
        Execution::Sequential,
    )?;
    let mut rhs = Count::zero();
    for (s, c) in surj.iter() {
        if !c.is_zero() {
            rhs += c * brute_z_in(m, e_set(m, pi, s), g)?;
        }
    }
    Ok(Eq1Check { lhs, rhs })
}

/// `T^{π,τ}_{M,ℓ,s}(G) = Σ_{S ∈ 𝒮(ℓ,s,M,τ)} Z_{M|E^π(S)}(G)`, by brute force.
pub fn profile_sum(
    m: &PartitionMatrix,
    pi: bool,
    tau: bool,
    ell: usize,
    s: usize,
    g: &SimpleGraph,
) -> Result<Count> {
    let p = access_profile(m, pi, tau, ell, s);
    let mut total = Count::zero();
    for &x in &p.sets {
        total += brute_z_in(m, e_set(m, pi, x), g)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripCheck {
    pub k_values: Vec<usize>,
    pub columns: Vec<(usize, usize)>,
    #[serde(serialize_with = "super::ser_counts")]
    pub z: Vec<Count>,
    #[serde(serialize_with = "super::ser_counts")]
    pub solved: Vec<Count>,
    #[serde(serialize_with = "super::ser_counts")]
    pub direct: Vec<Count>,
}

impl RoundtripCheck {
    pub fn ok(&self) -> bool {
        self.solved == self.direct
    }

    pub fn value(&self, ell: usize, s: usize) -> Option<&Count> {
        let i = self.columns.iter().position(|&c| c == (ell, s))?;
        Some(&self.solved[i])
    }
}

/// Solves `F · T = Z` where `Z_i` counts `M`-partitions of `graph(k_i)`.
/// The counts come from the frontier counter.
pub fn interpolate(
    m: &PartitionMatrix,
    graph: impl Fn(usize) -> Result<SimpleGraph>,
) -> Result<(InterpolationSystem, Vec<Count>, Vec<Count>)> {
    let system = build_interpolation_system(m.size())?;
    let z = system
        .k_values
        .iter()
        .map(|&k| frontier_z(m, &graph(k)?))
        .collect::<Result<Vec<_>>>()?;
    let t = solve_t_integral(&system, &z)?;
    Ok((system, z, t))
}

/// Recovers every `T^{π,τ}_{M,ℓ,s}(G)` from counts of `J^{π,τ}(k_i, G)` and
/// compares with the direct profile sums.
pub fn verify_interpolation_roundtrip(
    m: &PartitionMatrix,
    pi: bool,
    tau: bool,
    g: &SimpleGraph,
) -> Result<RoundtripCheck> {
    let (system, z, solved) = interpolate(m, |k| Ok(build_j(pi, tau, k, g)))?;
    let direct = system
        .columns
        .iter()
        .map(|&(ell, s)| profile_sum(m, pi, tau, ell, s, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(RoundtripCheck {
        k_values: system.k_values.clone(),
        columns: system.columns.clone(),
        z,
        solved,
        direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptions::ExceptionId;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn example() -> PartitionMatrix {
        PartitionMatrix::from_rows(&["001*", "0011", "1111", "*11*"]).unwrap()
    }

    #[test]
    fn gadget_formula_on_known_matrices() {
        let mut ms = vec![example()];
        ms.extend(ExceptionId::ALL.iter().map(|id| id.matrix()));
        for m in &ms {
            for tau in [false, true] {
                for k in 5..=7 {
                    assert!(check_gadget_formula(m, tau, k).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn eq1_examples() {
        assert!(
            verify_eq1(&example(), false, false, 5, &SimpleGraph::complete(2))
                .unwrap()
                .ok()
        );
        assert!(verify_eq1(&example(), true, true, 0, &SimpleGraph::path(3))
            .unwrap()
            .ok());
    }

    #[test]
    fn eq1_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let word: Vec<_> = (0..10)
                .map(|_| crate::Symbol::ALL[rng.gen_range(0..3)])
                .collect();
            let m = PartitionMatrix::from_w_word(4, &word).unwrap();
            let n = rng.gen_range(0..=4);
            let mut g = SimpleGraph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let (pi, tau, k) = (rng.gen(), rng.gen(), rng.gen_range(0..=6));
            assert!(
                verify_eq1(&m, pi, tau, k, &g).unwrap().ok(),
                "{m} {g:?} {pi} {tau} {k}"
            );
        }
    }

    #[test]
    fn roundtrip_example_k2() {
        let r = verify_interpolation_roundtrip(&example(), false, false, &SimpleGraph::complete(2))
            .unwrap();
        assert!(r.ok());
        let ab = PartSet::from_parts([0, 1]);
        let ad = PartSet::from_parts([0, 3]);
        let k2 = SimpleGraph::complete(2);
        let expect = brute_z_in(&example(), ab, &k2).unwrap() + brute_z_in(&example(), ad, &k2).unwrap();
        assert_eq!(r.value(0, 2), Some(&expect));
    }

    #[test]
    fn roundtrip_empty_graph() {
        let r =
            verify_interpolation_roundtrip(&example(), true, false, &SimpleGraph::empty(0)).unwrap();
        assert!(r.ok());
    }
}
