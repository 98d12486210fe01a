mod common;

use common::*;
use rectlink::distinguish::{distinguish, DistinguishError, SymAssumption, Verdict};
use rectlink::exchange::DEFAULT_MEMBER_LIMIT;
use rectlink::script::{Failure, MoveScript};

fn sym() -> SymAssumption {
    SymAssumption { citation: "every symmetry of the knot is realized by type II moves".into() }
}

fn run(pair: (&str, &str, Option<&str>, &str), flag: bool) -> Result<rectlink::distinguish::Report, DistinguishError> {
    let (r, ev, bridge, r2) = pair;
    let bridge = bridge.map(script);
    let s = sym();
    distinguish(&fixture(r), &fixture(r2), &script(ev), bridge.as_ref(), flag.then_some(&s), DEFAULT_MEMBER_LIMIT)
}

#[test]
fn five_pairs_are_distinct() {
    for pair in PAIRS {
        let rep = run(pair, true).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinct, "{pair:?}\n{rep}");
        assert_eq!(rep.same_class, Some(false));
        assert!(rep.reasons.is_empty());
    }
}

#[test]
fn flag_is_required() {
    for pair in PAIRS {
        let rep = run(pair, false).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive);
        assert!(rep.reasons.iter().any(|r| r.contains("symmetry")), "{rep}");
    }
}

#[test]
fn same_class_is_inconclusive() {
    let d = fixture("9_48_3");
    let e = d.shift(3, 5);
    let rep = distinguish(&d, &e, &MoveScript::new(d.clone()), None, Some(&sym()), DEFAULT_MEMBER_LIMIT).unwrap();
    assert_eq!(rep.verdict, Verdict::Inconclusive);
    assert_eq!(rep.same_class, Some(true));
}

#[test]
fn truncated_enumeration_is_inconclusive() {
    let rep = {
        let (r, ev, _, r2) = PAIRS[2];
        distinguish(&fixture(r), &fixture(r2), &script(ev), None, Some(&sym()), 2).unwrap()
    };
    assert_eq!(rep.verdict, Verdict::Inconclusive);
    assert_eq!(rep.class_size, None);
}

#[test]
fn bad_evidence_is_an_error() {
    // a type I script offered as xi- evidence
    let (_, _, bridge, _) = PAIRS[1];
    let b = script(bridge.unwrap());
    let err = distinguish(&b.initial, &fixture("9_48_6"), &b, None, Some(&sym()), DEFAULT_MEMBER_LIMIT).unwrap_err();
    assert!(matches!(err, DistinguishError::Evidence(Failure::MaskViolation { .. })), "{err}");
    // evidence that ends elsewhere, without a bridge
    let err = distinguish(&fixture("9_48_1"), &fixture("9_48_2"), &script("9_48_1-9_48_6"), None, Some(&sym()), DEFAULT_MEMBER_LIMIT)
        .unwrap_err();
    assert_eq!(err, DistinguishError::BridgeEnds);
    let err = distinguish(&fixture("7_4_2"), &fixture("7_4_1"), &script("7_4_1-7_4_2"), None, None, DEFAULT_MEMBER_LIMIT).unwrap_err();
    assert_eq!(err, DistinguishError::EvidenceStart);
}
