//! Ground-truth counting and checks of every identity the classifier
//! relies on.

pub mod brute;
pub mod frontier;
pub mod hand;
pub mod identities;
pub mod tables;

pub use brute::{
    brute_profile, brute_z, brute_z_in, brute_z_lists, brute_z_surjective, count_bipartite_cliques,
    count_independent_sets, Budget, ImageCounts,
};
pub use frontier::{frontier_profile, frontier_z, frontier_z_lists};
pub use hand::{
    verify_hand3, verify_hand4_system, verify_lemma6, verify_lemma7, verify_lemma7_with,
    Lemma7Construction,
};
pub use identities::{
    check_gadget_formula, profile_sum, verify_eq1, verify_interpolation_roundtrip, Eq1Check,
    GadgetMismatch, RoundtripCheck,
};

use serde::Serializer;

use crate::Count;

pub(crate) fn ser_count<S: Serializer>(c: &Count, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

pub(crate) fn ser_counts<S: Serializer>(cs: &[Count], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(cs.iter().map(|c| c.to_string()))
}

pub(crate) fn ser_big<S: Serializer>(c: &num_bigint::BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}
