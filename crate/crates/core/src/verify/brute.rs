//! Exhaustive enumeration of assignments `σ: V(G) → D`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Bipartition, SimpleGraph};
use crate::matrix::{PartSet, PartitionMatrix};
use crate::par::{self, Execution};
use crate::Count;

/// Environment variable overriding the default budget exponent.
pub const BUDGET_ENV: &str = "MPART_BUDGET_BITS";
pub const DEFAULT_BUDGET_BITS: u32 = 30;

/// Upper bound `2^bits` on the number of assignments a brute-force count may
/// range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub bits: u32,
}

impl Budget {
    pub fn new(bits: u32) -> Budget {
        Budget { bits }
    }

    /// [`DEFAULT_BUDGET_BITS`] unless [`BUDGET_ENV`] holds a valid integer.
    pub fn from_env() -> Budget {
        let bits = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET_BITS);
        Budget { bits }
    }

    pub fn check(&self, states: &BigUint) -> Result<()> {
        if *states > BigUint::one() << self.bits {
            return Err(Error::Budget {
                states: states.to_string(),
                bits: self.bits,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::from_env()
    }
}

/// Counts indexed by the image of the assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageCounts {
    size: usize,
    counts: Vec<Count>,
}

impl ImageCounts {
    pub(crate) fn new(size: usize) -> ImageCounts {
        ImageCounts {
            size,
            counts: vec![Count::zero(); 1 << size],
        }
    }

    pub(crate) fn add(&mut self, image: PartSet, c: &Count) {
        self.counts[image.bits() as usize] += c;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `Z^S`: assignments whose image is exactly `s`.
    pub fn get(&self, s: PartSet) -> &Count {
        &self.counts[s.bits() as usize]
    }

    pub fn total(&self) -> Count {
        self.counts.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PartSet, &Count)> {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, c)| (PartSet::from_bits(i as u8), c))
    }
}

/// The lists `D, D, …, D`.
pub fn full_lists(m: &PartitionMatrix, g: &SimpleGraph) -> Vec<PartSet> {
    vec![m.domain(); g.n()]
}

/// Parts compatible with a neighbour (`.0`) or a non-neighbour (`.1`)
/// placed in part `p`.
pub(crate) fn compat_masks(m: &PartitionMatrix) -> Vec<(u8, u8)> {
    (0..m.size())
        .map(|p| {
            let mut edge = 0u8;
            let mut non = 0u8;
            for q in 0..m.size() {
                if m.get(p, q).allows(true) {
                    edge |= 1 << q;
                }
                if m.get(p, q).allows(false) {
                    non |= 1 << q;
                }
            }
            (edge, non)
        })
        .collect()
}

fn check_lists(m: &PartitionMatrix, g: &SimpleGraph, lists: &[PartSet]) -> Result<()> {
    if lists.len() != g.n() {
        return Err(Error::Domain(format!(
            "{} lists for {} vertices",
            lists.len(),
            g.n()
        )));
    }
    if let Some(l) = lists.iter().find(|l| !l.is_subset(m.domain())) {
        return Err(Error::Domain(format!("list {l} is not a set of parts")));
    }
    Ok(())
}

/// List-restricted counts by image: every vertex `v` is placed in a part of
/// `lists[v]`. Vertices are assigned in order `0..n`, parts ascending.
pub fn brute_profile(
    m: &PartitionMatrix,
    g: &SimpleGraph,
    lists: &[PartSet],
    budget: Budget,
    exec: Execution,
) -> Result<ImageCounts> {
    check_lists(m, g, lists)?;
    let states: BigUint = lists.iter().map(|l| BigUint::from(l.len())).product();
    budget.check(&states)?;
    let mut out = ImageCounts::new(m.size());
    let n = g.n();
    if n == 0 {
        out.add(PartSet::EMPTY, &Count::one());
        return Ok(out);
    }
    let masks = compat_masks(m);
    let firsts: Vec<usize> = lists[0].iter().collect();
    let partials = par::map(exec, &firsts, |&p| {
        let mut counts = vec![0u64; 1 << m.size()];
        let mut sigma = vec![0usize; n];
        sigma[0] = p;
        extend(g, lists, &masks, &mut sigma, 1, 1 << p, &mut counts);
        counts
    });
    for counts in partials {
        for (image, c) in counts.into_iter().enumerate() {
            if c != 0 {
                out.add(PartSet::from_bits(image as u8), &Count::from(c));
            }
        }
    }
    Ok(out)
}

fn extend(
    g: &SimpleGraph,
    lists: &[PartSet],
    masks: &[(u8, u8)],
    sigma: &mut [usize],
    v: usize,
    used: u8,
    counts: &mut [u64],
) {
    if v == sigma.len() {
        counts[used as usize] += 1;
        return;
    }
    let mut allowed = lists[v].bits();
    for u in 0..v {
        let (edge, non) = masks[sigma[u]];
        allowed &= if g.has_edge(u, v) { edge } else { non };
        if allowed == 0 {
            return;
        }
    }
    let mut rest = allowed;
    while rest != 0 {
        let p = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        sigma[v] = p;
        extend(g, lists, masks, sigma, v + 1, used | (1 << p), counts);
    }
}

/// `Z_M(G)`.
pub fn brute_z(m: &PartitionMatrix, g: &SimpleGraph) -> Result<Count> {
    Ok(brute_profile(
        m,
        g,
        &full_lists(m, g),
        Budget::from_env(),
        Execution::Sequential,
    )?
    .total())
}

/// `Z^S_M(G)`: assignments with image exactly `s`.
pub fn brute_z_surjective(m: &PartitionMatrix, g: &SimpleGraph, s: PartSet) -> Result<Count> {
    let p = brute_profile(
        m,
        g,
        &full_lists(m, g),
        Budget::from_env(),
        Execution::Sequential,
    )?;
    Ok(p.get(s).clone())
}

/// `Z_{M|_A}(G)` computed on `M` with every vertex restricted to `A`; for
/// empty `A` this is 1 on the empty graph and 0 otherwise.
pub fn brute_z_in(m: &PartitionMatrix, allowed: PartSet, g: &SimpleGraph) -> Result<Count> {
    brute_z_lists(m, g, &vec![allowed; g.n()])
}

pub fn brute_z_lists(m: &PartitionMatrix, g: &SimpleGraph, lists: &[PartSet]) -> Result<Count> {
    Ok(brute_profile(m, g, lists, Budget::from_env(), Execution::Sequential)?.total())
}

/// Independent sets of `g`, by subset enumeration.
pub fn count_independent_sets(g: &SimpleGraph) -> Result<Count> {
    count_subsets(g, |set| {
        g.edges()
            .all(|(u, v)| !(set >> u & 1 == 1 && set >> v & 1 == 1))
    })
}

/// Vertex sets `S` with every vertex of `S ∩ U` adjacent to every vertex of
/// `S ∩ V`.
pub fn count_bipartite_cliques(g: &SimpleGraph, bip: &Bipartition) -> Result<Count> {
    bip.check(g)?;
    let u = bip.u();
    let v = bip.v();
    count_subsets(g, |set| {
        u.iter().filter(|&&x| set >> x & 1 == 1).all(|&x| {
            v.iter()
                .filter(|&&y| set >> y & 1 == 1)
                .all(|&y| g.has_edge(x, y))
        })
    })
}

fn count_subsets(g: &SimpleGraph, pred: impl Fn(u64) -> bool) -> Result<Count> {
    let budget = Budget::from_env();
    budget.check(&(BigUint::one() << g.n()))?;
    Ok(Count::from((0..1u64 << g.n()).filter(|&s| pred(s)).count()))
}
