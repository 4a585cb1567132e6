//! Binary relations between part-sets, stored as an 8×8 bit grid.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{PartSet, PartitionMatrix, Symbol, MAX_SIZE};

const ROW_MASK: u64 = 0xff;

/// A relation `R ⊆ left × right`. Bit `8·i + j` of `pairs` holds `(i, j)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    left: PartSet,
    right: PartSet,
    pairs: u64,
}

#[inline]
fn bit(i: usize, j: usize) -> u64 {
    1u64 << (i * MAX_SIZE + j)
}

impl BinaryRelation {
    pub fn empty(left: PartSet, right: PartSet) -> BinaryRelation {
        BinaryRelation {
            left,
            right,
            pairs: 0,
        }
    }

    /// Pairs outside `left × right` are dropped.
    pub fn from_pairs<I>(left: PartSet, right: PartSet, pairs: I) -> BinaryRelation
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = BinaryRelation::empty(left, right);
        for (i, j) in pairs {
            if left.contains(i) && right.contains(j) {
                r.pairs |= bit(i, j);
            }
        }
        r
    }

    /// `{(i, i) | i ∈ set}`.
    pub fn equality(set: PartSet) -> BinaryRelation {
        BinaryRelation::from_pairs(set, set, set.iter().map(|i| (i, i)))
    }

    /// `{(i, j) ∈ set² | i ≠ j}`.
    pub fn disequality(set: PartSet) -> BinaryRelation {
        let pairs = set
            .iter()
            .flat_map(|i| set.iter().filter(move |&j| j != i).map(move |j| (i, j)));
        BinaryRelation::from_pairs(set, set, pairs)
    }

    /// The full product `left × right`.
    pub fn product(left: PartSet, right: PartSet) -> BinaryRelation {
        let pairs = left.iter().flat_map(|i| right.iter().map(move |j| (i, j)));
        BinaryRelation::from_pairs(left, right, pairs)
    }

    pub fn left(&self) -> PartSet {
        self.left
    }

    pub fn right(&self) -> PartSet {
        self.right
    }

    pub fn bits(&self) -> u64 {
        self.pairs
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < MAX_SIZE && j < MAX_SIZE && self.pairs & bit(i, j) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.pairs == 0
    }

    pub fn len(&self) -> usize {
        self.pairs.count_ones() as usize
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..MAX_SIZE).flat_map(move |i| {
            (0..MAX_SIZE)
                .filter(move |&j| self.contains(i, j))
                .map(move |j| (i, j))
        })
    }

    #[inline]
    fn row(&self, i: usize) -> u8 {
        ((self.pairs >> (i * MAX_SIZE)) & ROW_MASK) as u8
    }

    pub fn transpose(&self) -> BinaryRelation {
        BinaryRelation::from_pairs(self.right, self.left, self.pairs().map(|(i, j)| (j, i)))
    }

    /// `R ∘ S = {(i, k) | ∃j: (i, j) ∈ R, (j, k) ∈ S}`. The right set of `R`
    /// must equal the left set of `S`.
    pub fn compose(&self, other: &BinaryRelation) -> Result<BinaryRelation> {
        if self.right != other.left {
            return Err(Error::Mismatch {
                left: self.right.to_string(),
                right: other.left.to_string(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &BinaryRelation) -> BinaryRelation {
        let mut pairs = 0u64;
        for i in 0..MAX_SIZE {
            let mut row = self.row(i);
            let mut out = 0u8;
            while row != 0 {
                let j = row.trailing_zeros() as usize;
                row &= row - 1;
                out |= other.row(j);
            }
            pairs |= (out as u64) << (i * MAX_SIZE);
        }
        BinaryRelation {
            left: self.left,
            right: other.right,
            pairs,
        }
    }

    /// Whether `(i,i'), (i,j'), (j,i') ∈ R` always forces `(j,j') ∈ R`,
    /// checked over every quadruple.
    pub fn is_rectangular(&self) -> bool {
        for i in 0..MAX_SIZE {
            for i2 in 0..MAX_SIZE {
                if !self.contains(i, i2) {
                    continue;
                }
                for j2 in 0..MAX_SIZE {
                    if !self.contains(i, j2) {
                        continue;
                    }
                    for j in 0..MAX_SIZE {
                        if self.contains(j, i2) && !self.contains(j, j2) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Same predicate as [`is_rectangular`](Self::is_rectangular), via rows:
    /// two rows that meet must be equal.
    #[inline]
    pub(crate) fn rows_rectangular(&self) -> bool {
        let mut rows = [0u8; MAX_SIZE];
        for (i, r) in rows.iter_mut().enumerate() {
            *r = self.row(i);
        }
        for i in 0..MAX_SIZE {
            for j in i + 1..MAX_SIZE {
                if rows[i] & rows[j] != 0 && rows[i] != rows[j] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BinaryRelation({} -> {}: {})",
            self.left, self.right, self
        )
    }
}

impl fmt::Display for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |i: usize| (b'a' + i as u8) as char;
        let body: Vec<String> = self
            .pairs()
            .map(|(i, j)| format!("({},{})", name(i), name(j)))
            .collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

impl Serialize for BinaryRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `H^M_{X,Y}`: the star positions of `M|_{X×Y}`.
pub fn star_relation(m: &PartitionMatrix, x: PartSet, y: PartSet) -> BinaryRelation {
    let x = x.intersection(m.domain());
    let y = y.intersection(m.domain());
    let pairs = x.iter().flat_map(|i| {
        y.iter()
            .filter(move |&j| m.get(i, j) == Symbol::Star)
            .map(move |j| (i, j))
    });
    BinaryRelation::from_pairs(x, y, pairs)
}

/// Whether the star relation of `M|_{X×Y}` is rectangular.
pub fn is_star_rectangular(m: &PartitionMatrix, x: PartSet, y: PartSet) -> bool {
    star_relation(m, x, y).is_rectangular()
}

/// Whether `M|_{X×Y}` is pure, with empty blocks counted as pure.
pub fn block_is_pure(m: &PartitionMatrix, x: PartSet, y: PartSet) -> bool {
    let mut zero = false;
    let mut one = false;
    for i in x.iter() {
        for j in y.iter() {
            match m.get(i, j) {
                Symbol::Zero => zero = true,
                Symbol::One => one = true,
                Symbol::Star => {}
            }
        }
    }
    !(zero && one)
}

/// Whether every ordered pair `(X, Y)` from the family, including `X = Y`,
/// gives a pure block.
pub fn is_purifying(m: &PartitionMatrix, family: &[PartSet]) -> bool {
    family
        .iter()
        .all(|&x| family.iter().all(|&y| block_is_pure(m, x, y)))
}
