//! Derectangularising sequences: a sufficient test for their absence over
//! families of two-element part-sets, and an exact decider.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{PartSet, PartitionMatrix, MAX_SIZE};
use crate::oracle::has_hard_principal_pair;
use crate::par::{self, Execution};
use crate::relation::{
    block_is_pure, is_purifying, is_star_rectangular, star_relation, BinaryRelation,
};

/// A purifying sequence `D_1, …, D_k` whose composed star relation
/// `H_{D_1,D_2} ∘ … ∘ H_{D_{k-1},D_k}` is not rectangular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerectWitness {
    pub sequence: Vec<PartSet>,
    pub offending_relation: BinaryRelation,
}

impl DerectWitness {
    /// Re-checks the witness against `m` from scratch.
    pub fn validate(&self, m: &PartitionMatrix) -> bool {
        match sequence_relation(m, &self.sequence) {
            Some(r) => r == self.offending_relation && is_derect_sequence(m, &self.sequence),
            None => false,
        }
    }

    pub fn sequence_text(&self) -> String {
        let sets: Vec<String> = self.sequence.iter().map(|s| s.to_string()).collect();
        format!("({})", sets.join(","))
    }
}

/// The composed star relation of a sequence of at least two sets.
pub fn sequence_relation(m: &PartitionMatrix, seq: &[PartSet]) -> Option<BinaryRelation> {
    if seq.len() < 2 {
        return None;
    }
    let mut r = star_relation(m, seq[0], seq[1]);
    for w in seq[1..].windows(2) {
        r = r.compose(&star_relation(m, w[0], w[1])).ok()?;
    }
    Some(r)
}

/// Whether `seq` is a derectangularising sequence for `m`.
pub fn is_derect_sequence(m: &PartitionMatrix, seq: &[PartSet]) -> bool {
    let domain = m.domain();
    if seq.iter().any(|s| s.len() < 2 || !s.is_subset(domain)) {
        return false;
    }
    let mut distinct = seq.to_vec();
    distinct.sort();
    distinct.dedup();
    is_purifying(m, &distinct) && sequence_relation(m, seq).is_some_and(|r| !r.is_rectangular())
}

/// Exact decider: a witness iff `m` has a derectangularising sequence.
pub fn has_derect_sequence(m: &PartitionMatrix) -> Result<Option<DerectWitness>> {
    has_derect_sequence_with(m, Execution::Sequential)
}

pub fn has_derect_sequence_with(
    m: &PartitionMatrix,
    exec: Execution,
) -> Result<Option<DerectWitness>> {
    if m.size() > MAX_SIZE {
        return Err(Error::DomainTooLarge);
    }
    let families = maximal_purifying_families(m);
    Ok(par::find_map_first(exec, &families, |f| {
        search_family(m, f)
    }))
}

/// Maximal cliques of the pairwise-purity graph on self-pure part-sets of
/// size at least two, each sorted, listed in sorted order.
pub fn maximal_purifying_families(m: &PartitionMatrix) -> Vec<Vec<PartSet>> {
    let candidates: Vec<PartSet> = PartSet::all_subsets(m.size())
        .filter(|s| s.len() >= 2 && block_is_pure(m, *s, *s))
        .collect();
    let n = candidates.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && block_is_pure(m, candidates[i], candidates[j]))
                .collect()
        })
        .collect();
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..n).collect(), Vec::new(), &mut cliques);
    let mut families: Vec<Vec<PartSet>> = cliques
        .into_iter()
        .map(|c| {
            let mut f: Vec<PartSet> = c.into_iter().map(|i| candidates[i]).collect();
            f.sort();
            f
        })
        .collect();
    families.sort();
    families
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = *p
        .iter()
        .chain(x.iter())
        .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
        .unwrap();
    let branch: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in branch {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let x2 = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&u| u != v);
        x.push(v);
    }
}

struct State {
    cur: usize,
    rel: BinaryRelation,
    parent: Option<usize>,
    first: usize,
}

/// Breadth-first closure over (last set, composed relation) within one
/// purifying family.
fn search_family(m: &PartitionMatrix, family: &[PartSet]) -> Option<DerectWitness> {
    let f = family.len();
    let h: Vec<Vec<BinaryRelation>> = family
        .iter()
        .map(|&x| family.iter().map(|&y| star_relation(m, x, y)).collect())
        .collect();
    let mut bfs = Bfs::default();
    for a in 0..f {
        for b in 0..f {
            let st = State {
                cur: b,
                rel: h[a][b],
                parent: None,
                first: a,
            };
            if let Some(id) = bfs.push(st) {
                return Some(witness(family, &bfs.states, id));
            }
        }
    }
    while let Some(id) = bfs.queue.pop_front() {
        let (cur, rel) = (bfs.states[id].cur, bfs.states[id].rel);
        for c in 0..f {
            let st = State {
                cur: c,
                rel: rel.compose_unchecked(&h[cur][c]),
                parent: Some(id),
                first: 0,
            };
            if let Some(hit) = bfs.push(st) {
                return Some(witness(family, &bfs.states, hit));
            }
        }
    }
    None
}

#[derive(Default)]
struct Bfs {
    states: Vec<State>,
    seen: HashSet<(usize, u64)>,
    queue: VecDeque<usize>,
}

impl Bfs {
    /// Records a new state; returns its index if its relation is not
    /// rectangular.
    fn push(&mut self, st: State) -> Option<usize> {
        if st.rel.is_empty() || !self.seen.insert((st.cur, st.rel.bits())) {
            return None;
        }
        let bad = !st.rel.rows_rectangular();
        self.states.push(st);
        let id = self.states.len() - 1;
        self.queue.push_back(id);
        bad.then_some(id)
    }
}

fn witness(family: &[PartSet], states: &[State], id: usize) -> DerectWitness {
    let mut seq = Vec::new();
    let mut at = id;
    loop {
        seq.push(family[states[at].cur]);
        match states[at].parent {
            Some(p) => at = p,
            None => {
                seq.push(family[states[at].first]);
                break;
            }
        }
    }
    seq.reverse();
    DerectWitness {
        sequence: seq,
        offending_relation: states[id].rel,
    }
}

/// Sufficient test for tractability over families `W` of two-element
/// part-sets: each `W` must have an impure block, be a disjoint pair with a
/// pure `*`-rectangular cross block, or have a pure union with no
/// derectangularising sequence. `true` certifies that `m` has none.
pub fn doubletons_tractable(m: &PartitionMatrix) -> bool {
    let n = m.size();
    let pairs: Vec<PartSet> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| PartSet::from_parts([i, j])))
        .filter(|&p| block_is_pure(m, p, p))
        .collect();
    // Families with an impure block satisfy the first property, and any
    // superset of such a family does too, so only cliques are visited.
    let mut memo: HashMap<PartSet, bool> = HashMap::new();
    let mut chosen = Vec::new();
    visit_pure_families(m, &pairs, 0, &mut chosen, &mut memo)
}

fn visit_pure_families(
    m: &PartitionMatrix,
    pairs: &[PartSet],
    start: usize,
    chosen: &mut Vec<PartSet>,
    memo: &mut HashMap<PartSet, bool>,
) -> bool {
    if !family_ok(m, chosen, memo) {
        return false;
    }
    for i in start..pairs.len() {
        let p = pairs[i];
        if chosen.iter().all(|&q| block_is_pure(m, p, q)) {
            chosen.push(p);
            let ok = visit_pure_families(m, pairs, i + 1, chosen, memo);
            chosen.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

fn family_ok(m: &PartitionMatrix, w: &[PartSet], memo: &mut HashMap<PartSet, bool>) -> bool {
    if let [s, t] = w {
        if s.intersection(*t).is_empty() && is_star_rectangular(m, *s, *t) {
            return true;
        }
    }
    let union = w.iter().fold(PartSet::EMPTY, |a, &b| a.union(b));
    if union.is_empty() {
        return true;
    }
    *memo.entry(union).or_insert_with(|| {
        let sub = m.principal(union).expect("nonempty");
        sub.is_pure()
            && has_derect_sequence(&sub)
                .expect("size within bounds")
                .is_none()
    })
}

/// For an impure 3×3 matrix: `true` iff it has no derectangularising
/// sequence, read off the principal 2×2 submatrices.
pub fn impure3x3_no_derect(m: &PartitionMatrix) -> Result<bool> {
    if m.size() != 3 {
        return Err(Error::Domain(format!(
            "expected a 3x3 matrix, got size {}",
            m.size()
        )));
    }
    if m.is_pure() {
        return Err(Error::Domain("expected an impure matrix".into()));
    }
    Ok(!has_hard_principal_pair(m))
}
