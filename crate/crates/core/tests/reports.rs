use std::collections::BTreeMap;

use mpart_core::census::{cross_check_dichotomy, run_census, CensusOptions, CensusReport};
use mpart_core::exceptions::{ExceptionId, ExceptionRegistry};
use mpart_core::oracle::{Method, Verdict};
use mpart_core::par::Execution;
use mpart_core::PartitionMatrix;

fn census(exceptions: bool, execution: Execution) -> CensusReport {
    run_census(CensusOptions {
        exceptions,
        execution,
        ..CensusOptions::default()
    })
    .unwrap()
}

fn json_bytes(r: &CensusReport) -> Vec<u8> {
    let mut buf = Vec::new();
    r.write_json(&mut buf).unwrap();
    buf
}

#[test]
fn reports_are_deterministic() {
    let a = census(true, Execution::Parallel);
    let b = census(true, Execution::Sequential);
    assert_eq!(json_bytes(&a), json_bytes(&b));
    let (mut ca, mut cb) = (Vec::new(), Vec::new());
    a.write_csv(&mut ca).unwrap();
    b.write_csv(&mut cb).unwrap();
    assert_eq!(ca, cb);
}

#[test]
fn exceptions_resolve_exactly_the_registry() {
    let off = census(false, Execution::Parallel);
    let on = census(true, Execution::Parallel);
    assert_eq!(off.summary.unresolved.len(), 6);
    assert!(on.summary.unresolved.is_empty());
    for (a, b) in off.entries.iter().zip(&on.entries) {
        assert_eq!(a.key, b.key);
        if a.classification.verdict == Verdict::Unresolved {
            let id = ExceptionRegistry::global().lookup(&a.key).unwrap();
            assert_eq!(b.classification.method, Some(Method::Exception(id)));
        } else {
            assert_eq!(a.classification, b.classification);
        }
    }
    let found: Vec<ExceptionId> = on
        .entries
        .iter()
        .filter_map(|e| match e.classification.method {
            Some(Method::Exception(id)) => Some(id),
            _ => None,
        })
        .collect();
    assert_eq!(found.len(), 6);
}

#[test]
fn hard_entries_carry_replayable_witnesses() {
    let r = census(true, Execution::Parallel);
    for e in &r.entries {
        if e.classification.verdict == Verdict::SharpPComplete {
            let w = e
                .derect_witness
                .as_ref()
                .expect("hard entry without witness");
            assert!(w.validate(&e.matrix), "{}", e.key);
        }
    }
    assert!(cross_check_dichotomy(&r).ok());
}

#[test]
fn json_entries_reparse() {
    let r = census(true, Execution::Parallel);
    let v: serde_json::Value = serde_json::from_slice(&json_bytes(&r)).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), r.entries.len());
    let mut orbit_total = 0;
    let mut verdicts = BTreeMap::new();
    for (j, e) in entries.iter().zip(&r.entries) {
        let m: PartitionMatrix = j["matrix"].as_str().unwrap().parse().unwrap();
        assert_eq!(m, e.matrix);
        let key: PartitionMatrix = j["key"].as_str().unwrap().parse().unwrap();
        assert_eq!(key.canonical_key(), e.key);
        orbit_total += j["orbit_size"].as_u64().unwrap();
        *verdicts
            .entry(j["verdict"].as_str().unwrap().to_string())
            .or_insert(0usize) += 1;
        if let Some(Method::Interpolation(w)) = &e.classification.method {
            assert_eq!(j["witness"]["s"].as_u64().unwrap() as usize, w.s);
        }
    }
    assert_eq!(orbit_total, 59_049);
    assert_eq!(
        v["summary"]["by_verdict"],
        serde_json::to_value(&verdicts).unwrap()
    );
}

#[test]
fn csv_rows_match_entries() {
    let r = census(true, Execution::Parallel);
    let mut buf = Vec::new();
    r.write_csv(&mut buf).unwrap();
    let mut rdr = csv::Reader::from_reader(&buf[..]);
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "key");
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), r.entries.len());
    for (row, e) in rows.iter().zip(&r.entries) {
        assert_eq!(&row[0], e.key.to_string());
        assert_eq!(&row[2], e.classification.verdict.to_string());
    }
}
