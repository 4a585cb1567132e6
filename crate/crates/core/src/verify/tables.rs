//! Expected gadget-count tables for specific matrices, checked by brute
//! force.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::exceptions::ExceptionId;
use crate::graph::build_gadget;
use crate::interpolation::f;
use crate::matrix::{PartSet, PartitionMatrix};
use crate::par::Execution;
use crate::Count;

use super::brute::{brute_profile, full_lists, Budget};

/// Expected `Z^S_M(Γ^τ_k)` for listed sets: `Some((ℓ, s))` means
/// `f_{ℓ,s}(k)`, `None` means 0.
#[derive(Clone, Debug)]
pub struct GadgetTable {
    pub name: &'static str,
    pub matrix: PartitionMatrix,
    pub tau: bool,
    pub entries: Vec<(PartSet, Option<(usize, usize)>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub table: &'static str,
    pub set: String,
    pub k: usize,
    pub expected: String,
    pub brute: String,
}

impl GadgetTable {
    fn new(
        name: &'static str,
        matrix: PartitionMatrix,
        tau: bool,
        entries: &[(&str, Option<(usize, usize)>)],
    ) -> GadgetTable {
        let entries = entries
            .iter()
            .map(|&(s, e)| (PartSet::parse(s, matrix.size()).expect("table set"), e))
            .collect();
        GadgetTable {
            name,
            matrix,
            tau,
            entries,
        }
    }

    pub fn check(&self, k: usize) -> Result<Vec<TableMismatch>> {
        let m = &self.matrix;
        let gadget = build_gadget(self.tau, k);
        let counts = brute_profile(
            m,
            &gadget,
            &full_lists(m, &gadget),
            Budget::from_env(),
            Execution::Sequential,
        )?;
        let mut bad = Vec::new();
        for &(s, e) in &self.entries {
            let expected = match e {
                Some((ell, size)) => f(ell, size, k)?,
                None => Count::zero(),
            };
            if counts.get(s) != &expected {
                bad.push(TableMismatch {
                    table: self.name,
                    set: s.to_string(),
                    k,
                    expected: expected.to_string(),
                    brute: counts.get(s).to_string(),
                });
            }
        }
        Ok(bad)
    }
}

/// The worked example `001*/0011/1111/*11*` under `Γ^0_k`.
pub fn example_table() -> GadgetTable {
    let m = PartitionMatrix::from_rows(&["001*", "0011", "1111", "*11*"]).expect("symmetric");
    GadgetTable::new(
        "example",
        m,
        false,
        &[
            ("a", Some((0, 1))),
            ("b", Some((0, 1))),
            ("d", Some((0, 1))),
            ("ab", Some((0, 2))),
            ("ad", Some((0, 2))),
        ],
    )
}

/// Three-element sets under `Γ^1_k` for the three clique-reduction matrices.
pub fn lemma7_table(id: ExceptionId) -> Option<GadgetTable> {
    let abd = match id {
        ExceptionId::Lemma7M1 | ExceptionId::Lemma7M2 => None,
        ExceptionId::Lemma7M3 => Some((2, 3)),
        _ => return None,
    };
    Some(GadgetTable::new(
        id.name(),
        id.matrix(),
        true,
        &[
            ("abc", None),
            ("abd", abd),
            ("acd", Some((1, 3))),
            ("bcd", None),
        ],
    ))
}

/// Two-element sets under `Γ^0_k` for the hand-iii matrix.
pub fn hand3_table() -> GadgetTable {
    GadgetTable::new(
        "hand-iii",
        ExceptionId::HandIii.matrix(),
        false,
        &[
            ("ab", Some((0, 2))),
            ("ac", Some((1, 2))),
            ("ad", Some((1, 2))),
            ("bc", None),
            ("bd", Some((1, 2))),
            ("cd", None),
        ],
    )
}

pub fn all_tables() -> Vec<GadgetTable> {
    let mut t = vec![example_table()];
    t.extend(
        [
            ExceptionId::Lemma7M1,
            ExceptionId::Lemma7M2,
            ExceptionId::Lemma7M3,
        ]
        .into_iter()
        .filter_map(lemma7_table),
    );
    t.push(hand3_table());
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_hold_for_small_k() {
        for t in all_tables() {
            for k in [5, 6, 7] {
                let bad = t.check(k).unwrap();
                assert!(bad.is_empty(), "{bad:?}");
            }
        }
    }

    #[test]
    fn a_wrong_entry_is_caught() {
        let mut t = hand3_table();
        t.entries[3].1 = Some((0, 2));
        assert_eq!(t.check(5).unwrap().len(), 1);
    }
}
