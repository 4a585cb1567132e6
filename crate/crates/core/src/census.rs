//! Enumeration of canonical matrices, the classification pipeline, the
//! dichotomy cross-check and census reports.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;
use std::sync::Mutex;

use serde::Serialize;
use serde_json::{json, Value};

use crate::derect::{has_derect_sequence, is_derect_sequence, DerectWitness};
use crate::error::{Error, Result};
use crate::exceptions::{ExceptionId, ExceptionRegistry};
use crate::interpolation::interpolation_hardness_test_with;
use crate::matrix::{CanonicalKey, PartSet, PartitionMatrix, Symbol};
use crate::oracle::{
    pure_matrix_hard, small_matrix_classification, Classification, HardnessOracle, Method,
    SmallMatrixOracle, Verdict,
};
use crate::par::{self, Execution};

/// Every matrix of the given size whose w-word is its canonical key, in
/// increasing w-word order.
pub fn enumerate_canonical(size: usize, exec: Execution) -> Vec<PartitionMatrix> {
    let len = size * (size + 1) / 2;
    let total = 3u64.pow(len as u32);
    let chunk = 1u64 << 14;
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    par::map(exec, &starts, |&start| {
        (start..(start + chunk).min(total))
            .filter_map(|code| {
                let m = matrix_of_code(size, len, code);
                m.is_canonical().then_some(m)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// The matrix whose w-word, read as base-3 digits with the first position
/// most significant, equals `code`.
fn matrix_of_code(size: usize, len: usize, code: u64) -> PartitionMatrix {
    let mut word = vec![Symbol::Zero; len];
    let mut x = code;
    for slot in word.iter_mut().rev() {
        *slot = Symbol::ALL[(x % 3) as usize];
        x /= 3;
    }
    PartitionMatrix::from_w_word(size, &word).expect("valid word")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Resolve the six hand-proved 4×4 classes from the registry.
    pub exceptions: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { exceptions: true }
    }
}

/// Classifies submatrices of any size by running the pipeline on them,
/// with memoisation.
#[derive(Default)]
pub struct PipelineOracle {
    options: ClassifyOptions,
    memo: Mutex<HashMap<CanonicalKey, Verdict>>,
}

impl PipelineOracle {
    pub fn new(options: ClassifyOptions) -> PipelineOracle {
        PipelineOracle {
            options,
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl HardnessOracle for PipelineOracle {
    fn verdict(&self, m: &PartitionMatrix) -> Verdict {
        if m.size() <= 3 || m.is_pure() {
            return SmallMatrixOracle.verdict(m);
        }
        let key = m.canonical_key();
        if let Some(&v) = self.memo.lock().expect("memo").get(&key) {
            return v;
        }
        let v = classify_with(m, self.options, self).verdict;
        self.memo.lock().expect("memo").insert(key, v);
        v
    }
}

/// The full pipeline with the exception registry enabled.
pub fn classify(m: &PartitionMatrix) -> Classification {
    let options = ClassifyOptions::default();
    classify_with(m, options, &PipelineOracle::new(options))
}

/// Pure matrices, then the doubleton test, then interpolation, then the
/// exception registry.
pub fn classify_with(
    m: &PartitionMatrix,
    options: ClassifyOptions,
    oracle: &dyn HardnessOracle,
) -> Classification {
    if m.size() <= 3 {
        return small_matrix_classification(m).expect("size at most 3");
    }
    if m.is_pure() {
        let hard = pure_matrix_hard(m).expect("pure");
        let v = if hard {
            Verdict::SharpPComplete
        } else {
            Verdict::PolynomialTime
        };
        return Classification::new(v, Method::PureHomomorphism);
    }
    if crate::derect::doubletons_tractable(m) {
        return Classification::new(Verdict::PolynomialTime, Method::Doubletons);
    }
    if let Some(c) = interpolation_hardness_test_with(m, oracle) {
        return c;
    }
    if options.exceptions && m.size() == 4 {
        if let Some(id) = ExceptionRegistry::global().lookup(&m.canonical_key()) {
            return Classification::new(Verdict::SharpPComplete, Method::Exception(id));
        }
    }
    Classification::unresolved()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub size: usize,
    pub exceptions: bool,
    /// Run the exact derectangularising-sequence decider on every entry.
    pub derect: bool,
    pub execution: Execution,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            size: 4,
            exceptions: true,
            derect: true,
            execution: Execution::Parallel,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub key: CanonicalKey,
    pub matrix: PartitionMatrix,
    pub classification: Classification,
    pub derect_witness: Option<DerectWitness>,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub size: usize,
    pub exceptions: bool,
    pub canonical_classes: usize,
    pub matrices_covered: u64,
    pub by_verdict: BTreeMap<String, usize>,
    pub by_method: BTreeMap<String, usize>,
    pub unresolved: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub options: CensusOptions,
    pub entries: Vec<CensusEntry>,
    pub summary: CensusSummary,
}

/// Classifies every canonical matrix of `options.size`. For 4×4 matrices
/// the unresolved classes must be exactly the registry (exceptions off) or
/// none (exceptions on); anything else is a report error.
pub fn run_census(options: CensusOptions) -> Result<CensusReport> {
    let matrices = enumerate_canonical(options.size, options.execution);
    let copts = ClassifyOptions {
        exceptions: options.exceptions,
    };
    let oracle = PipelineOracle::new(copts);
    let mut entries = par::map(options.execution, &matrices, |m| {
        let classification = classify_with(m, copts, &oracle);
        let derect_witness = if options.derect {
            has_derect_sequence(m).expect("size within bounds")
        } else {
            None
        };
        CensusEntry {
            key: m.canonical_key(),
            matrix: m.clone(),
            classification,
            derect_witness,
            orbit_size: m.orbit_size(),
        }
    });
    entries.sort_by(|a, b| a.key.cmp(&b.key));

    let covered: u64 = entries.iter().map(|e| e.orbit_size as u64).sum();
    let expected = 3u64.pow((options.size * (options.size + 1) / 2) as u32);
    if covered != expected {
        return Err(Error::Report(format!(
            "orbits cover {covered} matrices, expected {expected}"
        )));
    }
    let mut by_verdict = BTreeMap::new();
    let mut by_method = BTreeMap::new();
    for e in &entries {
        *by_verdict
            .entry(e.classification.verdict.to_string())
            .or_insert(0) += 1;
        let tag = e.classification.method.as_ref().map_or("None", |m| m.tag());
        *by_method.entry(tag.to_string()).or_insert(0) += 1;
    }
    let unresolved_keys: Vec<&CanonicalKey> = entries
        .iter()
        .filter(|e| e.classification.verdict == Verdict::Unresolved)
        .map(|e| &e.key)
        .collect();
    if options.size == 4 {
        let got: BTreeSet<&CanonicalKey> = unresolved_keys.iter().copied().collect();
        let want: BTreeSet<&CanonicalKey> = if options.exceptions {
            BTreeSet::new()
        } else {
            ExceptionRegistry::global().keys().collect()
        };
        if got != want {
            let show = |s: &BTreeSet<&CanonicalKey>| {
                s.iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Err(Error::Report(format!(
                "unresolved classes [{}] differ from expected [{}]",
                show(&got),
                show(&want)
            )));
        }
    }
    let summary = CensusSummary {
        size: options.size,
        exceptions: options.exceptions,
        canonical_classes: entries.len(),
        matrices_covered: covered,
        by_verdict,
        by_method,
        unresolved: unresolved_keys.iter().map(|k| k.to_string()).collect(),
    };
    Ok(CensusReport {
        options,
        entries,
        summary,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DichotomyMismatch {
    pub key: String,
    pub classification: String,
    pub derect_witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub checked: usize,
    pub mismatches: Vec<DichotomyMismatch>,
    /// Keys whose decider witness failed re-validation.
    pub invalid_witnesses: Vec<String>,
    /// Whether `({a,b},{c,d})` is a derectangularising sequence of each
    /// exceptional matrix.
    pub exception_witnesses: Vec<(ExceptionId, bool)>,
    pub unresolved: Vec<String>,
}

impl CrossCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
            && self.invalid_witnesses.is_empty()
            && self.unresolved.is_empty()
            && self.exception_witnesses.iter().all(|&(_, ok)| ok)
    }
}

/// Hard iff the exact decider finds a derectangularising sequence, entry by
/// entry; plus the `({a,b},{c,d})` witness for each exceptional matrix.
pub fn cross_check_dichotomy(report: &CensusReport) -> CrossCheck {
    let mut mismatches = Vec::new();
    let mut invalid = Vec::new();
    let mut unresolved = Vec::new();
    let witnesses = par::map(report.options.execution, &report.entries, |e| {
        match &e.derect_witness {
            Some(w) => Some(w.clone()),
            None if report.options.derect => None,
            None => has_derect_sequence(&e.matrix).expect("size within bounds"),
        }
    });
    for (e, w) in report.entries.iter().zip(witnesses) {
        if let Some(w) = &w {
            if !w.validate(&e.matrix) {
                invalid.push(e.key.to_string());
            }
        }
        match e.classification.verdict {
            Verdict::Unresolved => unresolved.push(e.key.to_string()),
            v if (v == Verdict::SharpPComplete) != w.is_some() => {
                mismatches.push(DichotomyMismatch {
                    key: e.key.to_string(),
                    classification: e.classification.to_string(),
                    derect_witness: w
                        .map(|w| format!("{} {}", w.sequence_text(), w.offending_relation)),
                })
            }
            _ => {}
        }
    }
    let ab = PartSet::from_parts([0, 1]);
    let cd = PartSet::from_parts([2, 3]);
    let exception_witnesses = if report.options.size == 4 {
        ExceptionId::ALL
            .iter()
            .map(|&id| (id, is_derect_sequence(&id.matrix(), &[ab, cd])))
            .collect()
    } else {
        Vec::new()
    };
    CrossCheck {
        checked: report.entries.len(),
        mismatches,
        invalid_witnesses: invalid,
        exception_witnesses,
        unresolved,
    }
}

/// Machine-readable witness of a classification.
pub fn witness_json(c: &Classification) -> Value {
    match &c.method {
        Some(Method::Interpolation(w)) => json!({
            "pi": w.pi as u8,
            "tau": w.tau as u8,
            "l": w.ell,
            "s": w.s,
            "hard": w.hard.iter().map(|k| k.matrix().to_rows_string()).collect::<Vec<_>>(),
        }),
        Some(Method::Exception(id)) => json!(id.name()),
        _ => Value::Null,
    }
}

fn witness_text(c: &Classification) -> String {
    match &c.method {
        Some(Method::Interpolation(w)) => {
            let hard: Vec<String> = w.hard.iter().map(|k| k.matrix().to_rows_string()).collect();
            format!(
                "pi={};tau={};l={};s={};hard={}",
                w.pi as u8,
                w.tau as u8,
                w.ell,
                w.s,
                hard.join("|")
            )
        }
        Some(Method::Exception(id)) => id.name().to_string(),
        _ => String::new(),
    }
}

impl CensusEntry {
    pub fn to_json(&self) -> Value {
        json!({
            "key": self.key.to_string(),
            "matrix": self.matrix.to_rows_string(),
            "verdict": self.classification.verdict.to_string(),
            "method": self.classification.method.as_ref().map(|m| m.to_string()),
            "witness": witness_json(&self.classification),
            "orbit_size": self.orbit_size,
            "derect_sequence": self.derect_witness.as_ref().map(|w| w.sequence_text()),
        })
    }
}

impl CensusReport {
    pub fn to_json(&self) -> Value {
        json!({
            "summary": self.summary,
            "entries": self.entries.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn write_json(&self, out: &mut dyn Write) -> Result<()> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
        writeln!(out)?;
        Ok(())
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "key",
            "matrix",
            "verdict",
            "method",
            "witness",
            "orbit_size",
            "derect_sequence",
        ])?;
        for e in &self.entries {
            w.write_record([
                e.key.to_string(),
                e.matrix.to_rows_string(),
                e.classification.verdict.to_string(),
                e.classification
                    .method
                    .as_ref()
                    .map(|m| m.to_string())
                    .unwrap_or_default(),
                witness_text(&e.classification),
                e.orbit_size.to_string(),
                e.derect_witness
                    .as_ref()
                    .map(|w| w.sequence_text())
                    .unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_text(&self, out: &mut dyn Write) -> Result<()> {
        for e in &self.entries {
            writeln!(out, "{} {}", e.key, e.classification)?;
        }
        self.write_summary(out)
    }

    pub fn write_summary(&self, out: &mut dyn Write) -> Result<()> {
        let s = &self.summary;
        writeln!(out, "size: {}", s.size)?;
        writeln!(
            out,
            "exceptions: {}",
            if s.exceptions { "enabled" } else { "disabled" }
        )?;
        writeln!(out, "canonical classes: {}", s.canonical_classes)?;
        writeln!(out, "matrices covered: {}", s.matrices_covered)?;
        for (v, n) in &s.by_verdict {
            writeln!(out, "verdict {v}: {n}")?;
        }
        for (m, n) in &s.by_method {
            writeln!(out, "method {m}: {n}")?;
        }
        writeln!(out, "unresolved: {}", s.unresolved.len())?;
        for k in &s.unresolved {
            writeln!(out, "  {k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_basics() {
        let ms = enumerate_canonical(4, Execution::Parallel);
        assert_eq!(ms[0].w_word(), vec![Symbol::Zero; 10]);
        assert!(ms.iter().all(|m| m.w_word() == m.canonical_key().word()));
        assert!(ms.windows(2).all(|w| w[0].w_word() < w[1].w_word()));
        assert_eq!(ms, enumerate_canonical(4, Execution::Sequential));
        let total: usize = ms.iter().map(|m| m.orbit_size()).sum();
        assert_eq!(total, 59_049);
    }

    #[test]
    fn small_censuses() {
        for size in 1..=3 {
            let r = run_census(CensusOptions {
                size,
                ..CensusOptions::default()
            })
            .unwrap();
            assert!(r.summary.unresolved.is_empty());
            assert!(cross_check_dichotomy(&r).ok());
        }
    }

    #[test]
    fn classify_examples() {
        let example: PartitionMatrix = "001*01111*".parse().unwrap();
        assert_eq!(
            classify(&example).to_string(),
            "SharpPComplete via Interpolation(pi=0,tau=0,l=0,s=2)"
        );
        let star = PartitionMatrix::constant(4, Symbol::Star);
        assert_eq!(
            classify(&star),
            Classification::new(Verdict::PolynomialTime, Method::PureHomomorphism)
        );
        let h4 = ExceptionId::HandIv.matrix();
        let off = ClassifyOptions { exceptions: false };
        assert_eq!(
            classify_with(&h4, off, &SmallMatrixOracle),
            Classification::unresolved()
        );
        assert_eq!(
            classify(&h4),
            Classification::new(
                Verdict::SharpPComplete,
                Method::Exception(ExceptionId::HandIv)
            )
        );
    }
}
