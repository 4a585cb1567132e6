//! The six 4×4 matrices that neither the doubleton test nor single-column
//! interpolation resolves. Each is hard by a dedicated reduction; see
//! [`crate::verify::hand`] for the executable checks of those reductions.

use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::matrix::{CanonicalKey, PartitionMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExceptionId {
    /// Counts bipartite cliques of connected bipartite graphs (twice over).
    Lemma6,
    Lemma7M1,
    Lemma7M2,
    Lemma7M3,
    /// Reduction from bipartite independent sets through an independent-set
    /// gadget with two extra hub vertices.
    HandIii,
    /// Needs a second gadget equation to separate two hard terms.
    HandIv,
}

impl ExceptionId {
    pub const ALL: [ExceptionId; 6] = [
        ExceptionId::Lemma6,
        ExceptionId::Lemma7M1,
        ExceptionId::Lemma7M2,
        ExceptionId::Lemma7M3,
        ExceptionId::HandIii,
        ExceptionId::HandIv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExceptionId::Lemma6 => "lemma6",
            ExceptionId::Lemma7M1 => "lemma7-m1",
            ExceptionId::Lemma7M2 => "lemma7-m2",
            ExceptionId::Lemma7M3 => "lemma7-m3",
            ExceptionId::HandIii => "hand-iii",
            ExceptionId::HandIv => "hand-iv",
        }
    }

    /// Row data, parts `a..d` top to bottom.
    pub fn rows(self) -> [&'static str; 4] {
        match self {
            ExceptionId::Lemma6 => ["00**", "001*", "*100", "**00"],
            ExceptionId::Lemma7M1 => ["00**", "000*", "*011", "**11"],
            ExceptionId::Lemma7M2 => ["00**", "000*", "*01*", "***1"],
            ExceptionId::Lemma7M3 => ["0***", "*00*", "*01*", "***1"],
            ExceptionId::HandIii => ["00**", "001*", "*11*", "***1"],
            ExceptionId::HandIv => ["0***", "**0*", "*0*1", "**1*"],
        }
    }

    pub fn matrix(self) -> PartitionMatrix {
        PartitionMatrix::from_rows(&self.rows()).expect("registry rows are symmetric")
    }
}

impl fmt::Display for ExceptionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ExceptionId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Canonical keys of the six matrices, computed from their rows.
pub struct ExceptionRegistry {
    entries: Vec<(CanonicalKey, ExceptionId)>,
}

impl ExceptionRegistry {
    pub fn global() -> &'static ExceptionRegistry {
        static REGISTRY: OnceLock<ExceptionRegistry> = OnceLock::new();
        REGISTRY.get_or_init(|| ExceptionRegistry {
            entries: ExceptionId::ALL
                .iter()
                .map(|&id| (id.matrix().canonical_key(), id))
                .collect(),
        })
    }

    pub fn lookup(&self, key: &CanonicalKey) -> Option<ExceptionId> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|&(_, id)| id)
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.entries.iter().map(|(k, _)| k)
    }

    pub fn entries(&self) -> &[(CanonicalKey, ExceptionId)] {
        &self.entries
    }
}
