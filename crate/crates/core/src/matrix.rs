//! Symmetric `{0,1,*}` matrices, the part-sets that index them, and the
//! canonical forms used to enumerate one matrix per equivalence class.
//!
//! Parts are the integers `0..size`; for 4×4 matrices they are printed as
//! `a`, `b`, `c`, `d`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest domain the engine accepts.
pub const MAX_SIZE: usize = 8;

/// A matrix entry. The derived order is `Zero < One < Star`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Zero,
    One,
    Star,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Star];

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            '*' => Some(Symbol::Star),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Star => '*',
        }
    }

    /// Swaps `0` and `1`, fixing `*`.
    pub fn flipped(self) -> Symbol {
        match self {
            Symbol::Zero => Symbol::One,
            Symbol::One => Symbol::Zero,
            Symbol::Star => Symbol::Star,
        }
    }

    /// The symbol `0` or `1` for a boolean.
    pub fn of_bool(b: bool) -> Symbol {
        if b {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    /// Whether an entry is in `{value, *}`.
    #[inline]
    pub fn allows(self, value: bool) -> bool {
        self == Symbol::Star || self == Symbol::of_bool(value)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A subset of the parts `0..8`, stored as a bitmask.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct PartSet(u8);

impl PartSet {
    pub const EMPTY: PartSet = PartSet(0);

    pub fn from_bits(bits: u8) -> PartSet {
        PartSet(bits)
    }

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> PartSet {
        assert!(n <= MAX_SIZE);
        PartSet(((1u16 << n) - 1) as u8)
    }

    pub fn singleton(i: usize) -> PartSet {
        PartSet(1 << i)
    }

    pub fn from_parts<I: IntoIterator<Item = usize>>(parts: I) -> PartSet {
        parts.into_iter().fold(PartSet::EMPTY, |s, i| s.with(i))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_SIZE && self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> PartSet {
        PartSet(self.0 | (1 << i))
    }

    pub fn union(self, other: PartSet) -> PartSet {
        PartSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PartSet) -> PartSet {
        PartSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: PartSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_SIZE).filter(move |&i| self.contains(i))
    }

    /// All subsets of `{0, ..., n-1}` in increasing bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = PartSet> {
        (0..(1u16 << n)).map(|b| PartSet(b as u8))
    }

    /// Parses part names: letters `a..h` or digits `0..7`, optionally
    /// separated by commas (`"ab"`, `"a,d"`, `"0,3"`).
    pub fn parse(s: &str, size: usize) -> Result<PartSet> {
        let mut set = PartSet::EMPTY;
        for c in s.chars().filter(|c| !c.is_whitespace() && *c != ',') {
            let i = match c {
                'a'..='h' => c as usize - 'a' as usize,
                '0'..='7' => c as usize - '0' as usize,
                _ => return Err(Error::parse(format!("bad part name {c:?} in {s:?}"))),
            };
            if i >= size {
                return Err(Error::parse(format!(
                    "part {c:?} outside a domain of size {size}"
                )));
            }
            set = set.with(i);
        }
        Ok(set)
    }
}

impl fmt::Display for PartSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        for i in self.iter() {
            write!(f, "{}", (b'a' + i as u8) as char)?;
        }
        Ok(())
    }
}

/// A rectangular block `M|_{S×T}` with rows and columns in increasing index
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    rows: usize,
    cols: usize,
    entries: Vec<Symbol>,
}

impl Block {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Symbol {
        self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.entries
    }

    pub fn is_pure(&self) -> bool {
        is_pure_entries(&self.entries)
    }
}

fn is_pure_entries(entries: &[Symbol]) -> bool {
    !entries.contains(&Symbol::Zero) || !entries.contains(&Symbol::One)
}

/// A symmetric matrix over `{0,1,*}`: the parameter `M` of the counting
/// problem.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionMatrix {
    size: usize,
    entries: Vec<Symbol>,
}

impl PartitionMatrix {
    /// Builds a matrix from row-major entries, checking symmetry.
    pub fn from_entries(size: usize, entries: Vec<Symbol>) -> Result<PartitionMatrix> {
        if size == 0 || size > MAX_SIZE {
            return Err(Error::Domain(format!(
                "matrix size {size} outside 1..={MAX_SIZE}"
            )));
        }
        if entries.len() != size * size {
            return Err(Error::parse(format!(
                "expected {} entries for a {size}x{size} matrix, got {}",
                size * size,
                entries.len()
            )));
        }
        for i in 0..size {
            for j in i + 1..size {
                if entries[i * size + j] != entries[j * size + i] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        Ok(PartitionMatrix { size, entries })
    }

    pub fn from_rows(rows: &[&str]) -> Result<PartitionMatrix> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for (r, row) in rows.iter().enumerate() {
            let syms: Vec<Symbol> = row
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    Symbol::from_char(c)
                        .ok_or_else(|| Error::parse(format!("bad symbol {c:?} in row {r}")))
                })
                .collect::<Result<_>>()?;
            if syms.len() != size {
                return Err(Error::parse(format!(
                    "row {r} has {} entries, expected {size}",
                    syms.len()
                )));
            }
            entries.extend(syms);
        }
        PartitionMatrix::from_entries(size, entries)
    }

    /// The matrix with every entry equal to `s`.
    pub fn constant(size: usize, s: Symbol) -> PartitionMatrix {
        PartitionMatrix::from_entries(size, vec![s; size * size]).expect("constant matrix")
    }

    /// Inverse of [`PartitionMatrix::w_word`].
    pub fn from_w_word(size: usize, word: &[Symbol]) -> Result<PartitionMatrix> {
        let order = w_order(size);
        if word.len() != order.len() {
            return Err(Error::parse(format!(
                "a size-{size} word has {} symbols, got {}",
                order.len(),
                word.len()
            )));
        }
        let mut entries = vec![Symbol::Zero; size * size];
        for (&(i, j), &s) in order.iter().zip(word) {
            entries[i * size + j] = s;
            entries[j * size + i] = s;
        }
        PartitionMatrix::from_entries(size, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> PartSet {
        PartSet::full(self.size)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Symbol {
        self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.entries
    }

    /// `M|_{S×T}`.
    pub fn restrict(&self, rows: PartSet, cols: PartSet) -> Result<Block> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        self.check_parts(rows)?;
        self.check_parts(cols)?;
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.iter() {
            for j in cols.iter() {
                entries.push(self.get(i, j));
            }
        }
        Ok(Block {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        })
    }

    /// The principal submatrix `M|_S`, relabelled to `0..|S|`.
    pub fn principal(&self, parts: PartSet) -> Result<PartitionMatrix> {
        let block = self.restrict(parts, parts)?;
        Ok(PartitionMatrix {
            size: block.rows,
            entries: block.entries,
        })
    }

    fn check_parts(&self, parts: PartSet) -> Result<()> {
        if parts.is_subset(self.domain()) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "part-set {parts} is not inside a domain of size {}",
                self.size
            )))
        }
    }

    /// Swaps all `0`s and `1`s.
    pub fn complement(&self) -> PartitionMatrix {
        PartitionMatrix {
            size: self.size,
            entries: self.entries.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// The matrix `M'` with `M'[ρ(i)][ρ(j)] = M[i][j]`.
    pub fn permute(&self, rho: &[usize]) -> Result<PartitionMatrix> {
        let n = self.size;
        let mut seen = PartSet::EMPTY;
        if rho.len() != n {
            return Err(Error::NotAPermutation);
        }
        for &r in rho {
            if r >= n || seen.contains(r) {
                return Err(Error::NotAPermutation);
            }
            seen = seen.with(r);
        }
        Ok(self.permute_unchecked(rho))
    }

    fn permute_unchecked(&self, rho: &[usize]) -> PartitionMatrix {
        let n = self.size;
        let mut entries = vec![Symbol::Zero; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[rho[i] * n + rho[j]] = self.get(i, j);
            }
        }
        PartitionMatrix { size: n, entries }
    }

    /// The upper triangle read diagonal first, then each super-diagonal by
    /// increasing offset, top to bottom. For 4×4 this is
    /// `aa bb cc dd ab bc cd ac bd ad`.
    pub fn w_word(&self) -> Vec<Symbol> {
        w_order(self.size)
            .into_iter()
            .map(|(i, j)| self.get(i, j))
            .collect()
    }

    fn w_word_permuted(&self, rho: &[usize], flip: bool, order: &[(usize, usize)]) -> Vec<Symbol> {
        // Entry (i, j) of the permuted matrix is M[ρ⁻¹(i)][ρ⁻¹(j)].
        let mut inv = [0usize; MAX_SIZE];
        for (i, &r) in rho.iter().enumerate() {
            inv[r] = i;
        }
        order
            .iter()
            .map(|&(i, j)| {
                let s = self.get(inv[i], inv[j]);
                if flip {
                    s.flipped()
                } else {
                    s
                }
            })
            .collect()
    }

    /// The lexicographically least w-word over all relabellings of the
    /// matrix and of its complement.
    pub fn canonical_key(&self) -> CanonicalKey {
        self.min_key(true)
    }

    /// Like [`canonical_key`](Self::canonical_key) but over relabellings
    /// only, with no complement.
    pub fn permutation_key(&self) -> CanonicalKey {
        self.min_key(false)
    }

    fn min_key(&self, with_complement: bool) -> CanonicalKey {
        let order = w_order(self.size);
        let flips: &[bool] = if with_complement {
            &[false, true]
        } else {
            &[false]
        };
        let mut best: Option<Vec<Symbol>> = None;
        for rho in permutations(self.size) {
            for &flip in flips {
                let w = self.w_word_permuted(&rho, flip, &order);
                if best.as_ref().is_none_or(|b| w < *b) {
                    best = Some(w);
                }
            }
        }
        CanonicalKey {
            size: self.size,
            word: best.expect("at least one permutation"),
        }
    }

    /// Whether the w-word of this matrix is already its canonical key. Exits
    /// on the first smaller variant.
    pub fn is_canonical(&self) -> bool {
        let order = w_order(self.size);
        let own = self.w_word();
        for rho in permutations(self.size) {
            for flip in [false, true] {
                if self.w_word_permuted(&rho, flip, &order) < own {
                    return false;
                }
            }
        }
        true
    }

    /// All `2·size!` relabellings of the matrix and its complement.
    pub fn variants(&self) -> Vec<PartitionMatrix> {
        let comp = self.complement();
        permutations(self.size)
            .flat_map(|rho| [self.permute_unchecked(&rho), comp.permute_unchecked(&rho)])
            .collect()
    }

    /// Number of distinct matrices `≈`-equivalent to this one.
    pub fn orbit_size(&self) -> usize {
        let mut words: Vec<Vec<Symbol>> = self.variants().iter().map(|v| v.w_word()).collect();
        words.sort();
        words.dedup();
        words.len()
    }

    /// True if the matrix has no `0`s or no `1`s.
    pub fn is_pure(&self) -> bool {
        is_pure_entries(&self.entries)
    }

    /// Whether `M ≡ other` (same size, equal up to relabelling).
    pub fn equivalent(&self, other: &PartitionMatrix) -> bool {
        self.size == other.size && self.permutation_key() == other.permutation_key()
    }

    /// Row-slash text form, e.g. `001*/0011/1111/*11*`.
    pub fn to_rows_string(&self) -> String {
        (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| self.get(i, j).as_char())
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("/")
    }

    /// The 10-character w-word form for 4×4 matrices and the row form for
    /// every other size.
    pub fn to_text(&self) -> String {
        if self.size == 4 {
            word_string(&self.w_word())
        } else {
            self.to_rows_string()
        }
    }
}

impl fmt::Debug for PartitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartitionMatrix({})", self.to_rows_string())
    }
}

impl fmt::Display for PartitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.size {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl FromStr for PartitionMatrix {
    type Err = Error;

    /// Accepts either row form (`"0*/**"`) or, for 4×4 matrices, the
    /// 10-character w-word (`"001*01111*"`).
    fn from_str(s: &str) -> Result<PartitionMatrix> {
        let s = s.trim();
        if s.contains('/') {
            let rows: Vec<&str> = s.split('/').collect();
            return PartitionMatrix::from_rows(&rows);
        }
        let syms: Vec<Symbol> = s
            .chars()
            .enumerate()
            .map(|(pos, c)| {
                Symbol::from_char(c)
                    .ok_or_else(|| Error::parse(format!("bad symbol {c:?} at position {pos}")))
            })
            .collect::<Result<_>>()?;
        match syms.len() {
            1 => PartitionMatrix::from_entries(1, syms),
            10 => PartitionMatrix::from_w_word(4, &syms),
            n => Err(Error::parse(format!(
                "a matrix without '/' must be a 10-symbol 4x4 word, got {n} symbols"
            ))),
        }
    }
}

/// The minimised w-word of a matrix; equal keys mean equivalent matrices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey {
    size: usize,
    word: Vec<Symbol>,
}

impl CanonicalKey {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    /// The matrix whose w-word is this key.
    pub fn matrix(&self) -> PartitionMatrix {
        PartitionMatrix::from_w_word(self.size, &self.word).expect("keys come from matrices")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size == 4 {
            write!(f, "{}", word_string(&self.word))
        } else {
            write!(f, "{}", self.matrix().to_rows_string())
        }
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({self})")
    }
}

pub fn word_string(word: &[Symbol]) -> String {
    word.iter().map(|s| s.as_char()).collect()
}

/// Entry positions in w-word order.
pub fn w_order(size: usize) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(size * (size + 1) / 2);
    for offset in 0..size {
        for i in 0..size - offset {
            order.push((i, i + offset));
        }
    }
    order
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut p = current.clone();
        // Standard next-permutation step.
        if let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) {
            let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
            p.swap(i - 1, j);
            p[i..].reverse();
            next = Some(p);
        }
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> PartitionMatrix {
        PartitionMatrix::from_rows(&["001*", "0011", "1111", "*11*"]).unwrap()
    }

    fn block(rows: &[&str]) -> Vec<Symbol> {
        rows.iter()
            .flat_map(|r| r.chars().map(|c| Symbol::from_char(c).unwrap()))
            .collect()
    }

    #[test]
    fn restrict_examples() {
        let m = example();
        let ad = PartSet::from_parts([0, 3]);
        assert_eq!(m.restrict(ad, ad).unwrap().entries(), block(&["0*", "**"]));
        let ab = PartSet::from_parts([0, 1]);
        let bc = PartSet::from_parts([1, 2]);
        let b = m.restrict(ab, bc).unwrap();
        assert_eq!((b.rows(), b.cols()), (2, 2));
        assert_eq!(b.entries(), block(&["01", "01"]));
        assert_eq!(m.principal(m.domain()).unwrap(), m);
        assert!(matches!(
            m.restrict(PartSet::EMPTY, ab),
            Err(Error::EmptyRestriction)
        ));
    }

    #[test]
    fn complement_example() {
        let expect = PartitionMatrix::from_rows(&["110*", "1100", "0000", "*00*"]).unwrap();
        assert_eq!(example().complement(), expect);
        let star = PartitionMatrix::constant(4, Symbol::Star);
        assert_eq!(star.complement(), star);
    }

    #[test]
    fn permute_swaps_parts() {
        let m = example();
        let rho = [1, 0, 2, 3];
        let p = m.permute(&rho).unwrap();
        assert_eq!(p.get(rho[0], rho[3]), m.get(0, 3));
        assert_eq!(p.get(1, 3), Symbol::Star);
        assert_eq!(m.permute(&[0, 1, 2, 3]).unwrap(), m);
        assert!(matches!(
            m.permute(&[0, 0, 2, 3]),
            Err(Error::NotAPermutation)
        ));
        assert!(matches!(m.permute(&[0, 1, 2]), Err(Error::NotAPermutation)));
    }

    #[test]
    fn w_word_examples() {
        assert_eq!(word_string(&example().w_word()), "001*01111*");
        assert_eq!(
            word_string(&PartitionMatrix::constant(4, Symbol::Zero).w_word()),
            "0000000000"
        );
        assert_eq!(
            word_string(&PartitionMatrix::constant(4, Symbol::Star).w_word()),
            "**********"
        );
        assert_eq!(
            w_order(4),
            vec![
                (0, 0),
                (1, 1),
                (2, 2),
                (3, 3),
                (0, 1),
                (1, 2),
                (2, 3),
                (0, 2),
                (1, 3),
                (0, 3)
            ]
        );
    }

    #[test]
    fn parse_formats() {
        let a: PartitionMatrix = "001*01111*".parse().unwrap();
        let b: PartitionMatrix = "001*/0011/1111/*11*".parse().unwrap();
        assert_eq!(a, example());
        assert_eq!(b, example());
        let err = "0*/10".parse::<PartitionMatrix>().unwrap_err();
        assert!(matches!(err, Error::Asymmetric { row: 0, col: 1 }), "{err}");
        assert!("00x".parse::<PartitionMatrix>().is_err());
        assert!("000".parse::<PartitionMatrix>().is_err());
        assert_eq!(example().to_text().parse::<PartitionMatrix>().unwrap(), example());
    }

    #[test]
    fn canonical_key_of_example_is_orbit_minimum() {
        // Independent brute force: build all 48 variants through the public
        // permute/complement operations and take the least w-word.
        let m = example();
        let mut words = Vec::new();
        for rho in permutations(4) {
            words.push(m.permute(&rho).unwrap().w_word());
            words.push(m.complement().permute(&rho).unwrap().w_word());
        }
        assert_eq!(words.len(), 48);
        let min = words.into_iter().min().unwrap();
        let key = m.canonical_key();
        assert_eq!(key.word(), &min[..]);
        assert!(key.matrix().is_canonical());
        assert_eq!(key.matrix().canonical_key(), key);
    }

    #[test]
    fn purity() {
        assert!(!example().is_pure());
        assert!(PartitionMatrix::constant(4, Symbol::Star).is_pure());
        assert!(PartitionMatrix::from_rows(&["0*", "**"]).unwrap().is_pure());
    }

    #[test]
    fn part_set_display_and_parse() {
        let s = PartSet::from_parts([0, 3]);
        assert_eq!(s.to_string(), "ad");
        assert_eq!(PartSet::parse("a,d", 4).unwrap(), s);
        assert_eq!(PartSet::parse("03", 4).unwrap(), s);
        assert!(PartSet::parse("e", 4).is_err());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).count(), 24);
        assert_eq!(permutations(1).count(), 1);
    }
}
