use mpart_core::exceptions::ExceptionId;
use mpart_core::graph::{Bipartition, SimpleGraph};
use mpart_core::verify::tables::{hand3_table, lemma7_table};
use mpart_core::verify::{
    verify_hand3, verify_hand4_system, verify_lemma6, verify_lemma7, verify_lemma7_with,
    Lemma7Construction,
};

fn connected_bipartite() -> Vec<SimpleGraph> {
    vec![
        SimpleGraph::complete(2),
        SimpleGraph::path(3),
        SimpleGraph::path(4),
        SimpleGraph::cycle(4),
        SimpleGraph::complete_bipartite(2, 3),
    ]
}

#[test]
fn lemma6_on_connected_bipartite_graphs() {
    for g in connected_bipartite() {
        assert!(verify_lemma6(&g, None).unwrap().ok(), "{g:?}");
    }
    let g = SimpleGraph::path(4);
    let bip = Bipartition::from_u(4, &[1, 3]).unwrap();
    assert!(verify_lemma6(&g, Some(&bip)).unwrap().ok());
}

#[test]
fn lemma7_tables_and_reductions() {
    for id in [
        ExceptionId::Lemma7M1,
        ExceptionId::Lemma7M2,
        ExceptionId::Lemma7M3,
    ] {
        let table = lemma7_table(id).unwrap();
        for k in [5, 6] {
            assert!(table.check(k).unwrap().is_empty());
        }
        for g in [
            SimpleGraph::empty(1),
            SimpleGraph::complete(2),
            SimpleGraph::path(3),
        ] {
            assert!(verify_lemma7(id, &g, None).unwrap().ok(), "{id} {g:?}");
        }
        for g in connected_bipartite() {
            let c = verify_lemma7_with(id, &g, None, Lemma7Construction::VClique).unwrap();
            assert!(c.ok(), "{id} {g:?}");
        }
    }
}

#[test]
fn stated_lemma7_graph_loses_independent_sets_when_v_is_large() {
    // With V = {1, 3} independent, the coefficient vanishes.
    let g = SimpleGraph::cycle(4);
    let c = verify_lemma7(ExceptionId::Lemma7M1, &g, None).unwrap();
    assert_eq!(c.solved, c.direct);
    assert_eq!(c.target_value(), &0u32.into());
    assert_eq!(c.independent_sets, 7u32.into());
}

#[test]
fn hand3_reduction() {
    for k in [5, 6] {
        assert!(hand3_table().check(k).unwrap().is_empty());
    }
    for g in connected_bipartite() {
        assert!(verify_hand3(&g, None).unwrap().ok(), "{g:?}");
    }
}

#[test]
fn hand4_system() {
    for g in [
        SimpleGraph::complete(1),
        SimpleGraph::complete(2),
        SimpleGraph::path(3),
        SimpleGraph::empty(2),
    ] {
        let c = verify_hand4_system(&g).unwrap();
        assert!(c.ok(), "{g:?}");
        assert_eq!((c.hard_g, c.hard_gx), ((1, 1), (3, 2)));
    }
}
