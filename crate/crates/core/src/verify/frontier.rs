//! Exact counting by dynamic programming over a vertex ordering.
//!
//! After vertices `0..=v` are placed, two placed vertices with the same
//! neighbourhood among the unplaced ones constrain the future identically,
//! so the state keeps, per such group, only the set of parts its members
//! occupy. Groups partition the placed vertices, so the union of their
//! part-sets is the image. This counter never uses the gadget formulas and
//! reaches graphs far beyond the brute-force budget when the number of
//! distinct neighbourhoods stays small.

use std::collections::HashMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::matrix::{PartSet, PartitionMatrix};
use crate::Count;

use super::brute::{compat_masks, full_lists, ImageCounts};

pub const MAX_FRONTIER_VERTICES: usize = 128;

type Groups = Vec<(u128, u8)>;

/// List-restricted counts by image, as [`super::brute_profile`].
pub fn frontier_profile(
    m: &PartitionMatrix,
    g: &SimpleGraph,
    lists: &[PartSet],
) -> Result<ImageCounts> {
    let n = g.n();
    if n > MAX_FRONTIER_VERTICES {
        return Err(Error::Domain(format!(
            "frontier counter handles at most {MAX_FRONTIER_VERTICES} vertices, got {n}"
        )));
    }
    if lists.len() != n || lists.iter().any(|l| !l.is_subset(m.domain())) {
        return Err(Error::Domain(
            "one list of parts per vertex expected".into(),
        ));
    }
    let masks = compat_masks(m);
    let later_neighbours: Vec<u128> = (0..n)
        .map(|v| {
            (v + 1..n)
                .filter(|&u| g.has_edge(v, u))
                .fold(0u128, |a, u| a | 1 << u)
        })
        .collect();

    let mut states: HashMap<Groups, Count> = HashMap::new();
    states.insert(Vec::new(), Count::one());
    for v in 0..n {
        let bit = 1u128 << v;
        let mut next: HashMap<Groups, Count> = HashMap::new();
        for (groups, count) in &states {
            for p in lists[v].iter() {
                let (edge, non) = masks[p];
                let fits = groups.iter().all(|&(sig, set)| {
                    let ok = if sig & bit != 0 { edge } else { non };
                    set & !ok == 0
                });
                if !fits {
                    continue;
                }
                let mut merged: Groups = Vec::with_capacity(groups.len() + 1);
                let entries = groups
                    .iter()
                    .map(|&(sig, set)| (sig & !bit, set))
                    .chain(std::iter::once((later_neighbours[v], 1u8 << p)));
                for (sig, set) in entries {
                    match merged.iter_mut().find(|(s, _)| *s == sig) {
                        Some(slot) => slot.1 |= set,
                        None => merged.push((sig, set)),
                    }
                }
                merged.sort_unstable();
                *next.entry(merged).or_default() += count;
            }
        }
        states = next;
    }
    let mut out = ImageCounts::new(m.size());
    for (groups, count) in &states {
        let image = groups.iter().fold(0u8, |a, &(_, set)| a | set);
        out.add(PartSet::from_bits(image), count);
    }
    Ok(out)
}

/// `Z_M(G)` by the frontier counter.
pub fn frontier_z(m: &PartitionMatrix, g: &SimpleGraph) -> Result<Count> {
    Ok(frontier_profile(m, g, &full_lists(m, g))?.total())
}

pub fn frontier_z_lists(m: &PartitionMatrix, g: &SimpleGraph, lists: &[PartSet]) -> Result<Count> {
    Ok(frontier_profile(m, g, lists)?.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::Execution;
    use crate::verify::brute::{brute_profile, Budget};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.4) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = PartitionMatrix> {
        proptest::collection::vec(0..3usize, n * (n + 1) / 2).prop_map(move |w| {
            let word: Vec<_> = w.into_iter().map(|i| crate::Symbol::ALL[i]).collect();
            PartitionMatrix::from_w_word(n, &word).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn agrees_with_brute_force(
            m in (1..=4usize).prop_flat_map(arb_matrix),
            n in 0..=7usize,
            seed in any::<u64>(),
            restrict in any::<bool>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n);
            let lists: Vec<PartSet> = (0..n)
                .map(|_| if restrict {
                    PartSet::from_bits(rng.gen::<u8>()).intersection(m.domain())
                } else {
                    m.domain()
                })
                .collect();
            let brute = brute_profile(&m, &g, &lists, Budget::new(30), Execution::Sequential).unwrap();
            prop_assert_eq!(frontier_profile(&m, &g, &lists).unwrap(), brute);
        }
    }

    #[test]
    fn large_gadget_graph() {
        // 4^40 assignments; only the frontier counter can do this.
        let m = PartitionMatrix::constant(4, crate::Symbol::Star);
        let g = SimpleGraph::complete(40);
        assert_eq!(frontier_z(&m, &g).unwrap(), Count::from(4u32).pow(40));
    }
}
