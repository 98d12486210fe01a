mod common;

use common::*;
use rectlink::exchange::{enumerate_class, gap_obstruction, load_class, same_class, store_class, DEFAULT_MEMBER_LIMIT};
use rectlink::invariants::all_invariants;
use rectlink::moves::{classify, enumerate_exchanges};
use rectlink::script::{emit_diagram, parse_diagram, verify_script, KindMask};
use rectlink::{equivalent, Axis, MoveKind, StabType};

fn class_size(name: &str) -> usize {
    enumerate_class(&fixture(name), DEFAULT_MEMBER_LIMIT).unwrap().members.len()
}

#[test]
fn fixtures_are_knots_of_size_nine() {
    for name in FIXTURES {
        let d = fixture(name);
        assert_eq!((d.size(), d.component_count()), (9, 1), "{name}");
        assert_eq!(parse_diagram(&emit_diagram(&d)).unwrap(), d);
    }
}

#[test]
fn seven_four_one_is_rigid() {
    let d = fixture("7_4_1");
    assert!(enumerate_exchanges(&d).is_empty());
    assert_eq!(class_size("7_4_1"), 1);
    assert!(!equivalent(&d, &fixture("7_4_2")));
}

#[test]
fn exchange_class_sizes() {
    assert_eq!(class_size("10_136_1"), 1);
    assert_eq!(class_size("10_136_3"), 3);
    assert_eq!(class_size("9_48_3"), 3);
    assert_eq!(class_size("9_48_1"), 8);
}

#[test]
fn nine_four_eight_class_matches_the_table() {
    let c = enumerate_class(&fixture("9_48_1"), DEFAULT_MEMBER_LIMIT).unwrap();
    assert_eq!(table_edges().len(), 10);
    assert_eq!(c.edges.len(), 10);
    let img = table_embedding(c.members.len(), &c.edges).expect("class graph is the table graph");
    // 9_48_1 sits in the second cell of the top row.
    assert_eq!(c.index_of(&fixture("9_48_1")), Some(img[1]));
}

#[test]
fn class_enumeration_does_not_depend_on_the_seed() {
    let c = enumerate_class(&fixture("9_48_1"), DEFAULT_MEMBER_LIMIT).unwrap();
    for m in &c.members {
        let other = enumerate_class(m.diagram(), DEFAULT_MEMBER_LIMIT).unwrap();
        assert_eq!(other.members, c.members);
        assert_eq!(other.edges, c.edges);
    }
}

#[test]
fn separation_facts() {
    let lim = DEFAULT_MEMBER_LIMIT;
    assert!(!same_class(&fixture("9_48_3"), &fixture("9_48_4"), lim).unwrap());
    assert!(!same_class(&fixture("10_136_1"), &fixture("10_136_2"), lim).unwrap());
    assert!(!same_class(&fixture("10_136_3"), &fixture("10_136_4"), lim).unwrap());
    assert!(!same_class(&fixture("9_48_1"), &fixture("9_48_6"), lim).unwrap());
    let d = fixture("9_48_3");
    assert!(same_class(&d, &d.shift(4, 7), lim).unwrap());
}

#[test]
fn gap_obstruction_separates_nine_four_eight_six() {
    let c = enumerate_class(&fixture("9_48_1"), DEFAULT_MEMBER_LIMIT).unwrap();
    assert!(c.members.iter().all(|m| gap_obstruction(m.diagram())));
    assert!(!gap_obstruction(&fixture("9_48_6")));
}

#[test]
fn invariants_are_constant_on_classes() {
    for name in FIXTURES {
        let c = enumerate_class(&fixture(name), DEFAULT_MEMBER_LIMIT).unwrap();
        let inv = all_invariants(&fixture(name));
        assert!(c.members.iter().all(|m| all_invariants(m.diagram()) == inv), "{name}");
    }
}

#[test]
fn rotation_numbers() {
    let rot = |name: &str| all_invariants(&fixture(name))[3];
    assert_ne!(rot("9_48_1"), 0);
    assert_eq!(rot("9_48_1"), -rot("9_48_2"));
    let minus = |name: &str| {
        let i = all_invariants(&fixture(name));
        (i[2], i[3])
    };
    for group in [
        &["9_48_1", "9_48_3", "9_48_4", "9_48_5"][..],
        &["10_136_1", "10_136_2", "10_136_3", "10_136_4", "10_136_5"][..],
        &["7_4_1", "7_4_2"][..],
    ] {
        assert!(group.iter().all(|g| minus(g) == minus(group[0])), "{group:?}");
    }
}

#[test]
fn header_comments_record_the_invariants() {
    for name in FIXTURES {
        let text = read(fixture_dir().join(format!("{name}.grid")));
        let i = all_invariants(&fixture(name));
        let line = format!("# tb+={} rot+={} tb-={} rot-={}", i[0], i[1], i[2], i[3]);
        assert!(text.lines().any(|l| l == line), "{name}");
    }
}

#[test]
fn symmetric_fixtures() {
    for name in ["7_4_1", "9_48_5", "10_136_5"] {
        let d = fixture(name);
        assert!(equivalent(&d.reflect_antidiagonal(), &d), "{name}");
        assert!(equivalent(&d.rotate180(), &d.reversed()), "{name}");
        assert_eq!(all_invariants(&d.reflect_antidiagonal()), all_invariants(&d));
    }
}

#[test]
fn antidiagonal_reflection_keeps_invariants() {
    for name in FIXTURES {
        let d = fixture(name);
        assert_eq!(all_invariants(&d.reflect_antidiagonal()), all_invariants(&d), "{name}");
    }
}

#[test]
fn shipped_scripts_certify() {
    let dir = fixture_dir().join("scripts");
    let mut count = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let s = script(&name);
        let mask = s.allowed_kinds.expect("shipped scripts carry a mask");
        assert!(mask == KindMask::EXCHANGE_II || mask == KindMask::EXCHANGE_I, "{name}");
        let cert = verify_script(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(cert.replays(&s));
        if let Some((a, b)) = name.split_once('-') {
            if !b.starts_with("flype") {
                assert!(equivalent(&s.initial, &fixture(a)), "{name}");
                assert!(equivalent(cert.endpoint.diagram(), &fixture(b)), "{name}");
            }
        }
        let kept = if mask == KindMask::EXCHANGE_II { [2, 3] } else { [0, 1] };
        let start = cert.initial_invariants;
        assert!(cert.steps.iter().all(|st| kept.iter().all(|&k| st.invariants[k] == start[k])), "{name}");
        count += 1;
    }
    assert!(count >= 10);
}

#[test]
fn nine_four_eight_transition_kinds() {
    let s = script("9_48_1-9_48_6");
    let cert = verify_script(&s).unwrap();
    let count = |f: &dyn Fn(&MoveKind) -> bool| cert.count_where(f);
    assert_eq!(cert.steps.len(), 6);
    assert_eq!(count(&|k| matches!(k, MoveKind::Stabilization { ty: StabType::II, .. })), 1);
    assert_eq!(count(&|k| matches!(k, MoveKind::Destabilization { ty: StabType::II, .. })), 1);
    assert_eq!(count(&|k| *k == MoveKind::Exchange { axis: Axis::Horizontal }), 2);
    assert_eq!(count(&|k| *k == MoveKind::Exchange { axis: Axis::Vertical }), 2);
    assert!(matches!(classify(&s.initial, &s.moves[0]).unwrap(), MoveKind::Stabilization { ty: StabType::II, .. }));
    assert!(equivalent(&fixture("9_48_2"), &fixture("9_48_1").reversed()));
}

#[test]
fn stored_classes_load_back() {
    for name in ["9_48_1", "9_48_3", "10_136_3"] {
        let c = enumerate_class(&fixture(name), DEFAULT_MEMBER_LIMIT).unwrap();
        let text = store_class(&c);
        let back = load_class(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(text.lines().filter(|l| l.starts_with("edge ")).count(), c.edges.len());
    }
}
