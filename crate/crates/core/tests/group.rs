mod common;

use std::collections::BTreeSet;

use common::*;
use rectlink::group::{
    abelianized, apply_map, equal_in_quotients, finite_quotients, nine48, power, unfixed_in_quotients,
    verify_map_respects_relations, wirtinger, Comparison, GeneratorMap, Presentation, Word,
};

fn relabeling() -> Vec<usize> {
    let text = read(fixture_dir().join("9_48_wirtinger.grid"));
    let line = text.lines().find_map(|l| l.strip_prefix("# relabel:")).expect("relabel line");
    line.split_whitespace().map(|t| t.parse().unwrap()).collect()
}

#[test]
fn nine_crossing_cut_gives_the_nine_relations() {
    let d = fixture("9_48_wirtinger");
    let w = wirtinger(&d);
    assert_eq!(w.presentation.generators, 9);
    assert_eq!(w.crossings.len(), 9);
    let sigma = relabeling();
    let ours: BTreeSet<(usize, usize, usize)> = w
        .crossings
        .iter()
        .map(|c| {
            let (a, b, x) = c.conjugation();
            (sigma[a - 1], sigma[b - 1], sigma[x - 1])
        })
        .collect();
    let theirs: BTreeSet<(usize, usize, usize)> = nine48::RELATIONS.into_iter().collect();
    assert_eq!(ours, theirs);
}

#[test]
fn fixture_groups_abelianize_to_z() {
    for name in FIXTURES {
        let p = wirtinger(&fixture(name)).presentation;
        assert_eq!(p.generators, p.relators.len() + 1, "{name}");
        for r in &p.relators {
            assert_eq!(abelianized(r, &p.components), vec![0], "{name}");
        }
    }
}

/// The computed presentation of the nine-crossing fixture, renumbered into the
/// numbering used by `nine48`.
fn relabeled_presentation() -> Presentation {
    let p = wirtinger(&fixture("9_48_wirtinger")).presentation;
    let sigma = relabeling();
    let rename = |w: &Word| Word::new(w.letters().iter().map(|&l| l.signum() * sigma[l.unsigned_abs() as usize - 1] as i32));
    Presentation::new(9, p.relators.iter().map(rename).collect())
}

#[test]
fn automorphisms_respect_the_relations() {
    let p = nine48::presentation();
    let qs = finite_quotients(&p, 6);
    assert!(qs.iter().any(|q| !q.is_abelian() && q.degree <= 6));
    for m in [nine48::t_map(), nine48::s_map(), nine48::s_from_t()] {
        let r = verify_map_respects_relations(&m, &p, &qs);
        assert!(r.passed(), "{:?}", r.failures.first());
    }
    let computed = relabeled_presentation();
    let cq = finite_quotients(&computed, 5);
    assert!(verify_map_respects_relations(&nine48::t_map(), &computed, &cq).passed());
    assert_eq!(cq, finite_quotients(&p, 5));
}

#[test]
fn stated_identities_hold_in_quotients() {
    let qs = finite_quotients(&nine48::presentation(), 6);
    let t = nine48::t_map();
    for (k, arg, rhs) in nine48::power_identities() {
        let lhs = apply_map(&power(&t, k), &arg);
        for r in rhs {
            assert_eq!(equal_in_quotients(&lhs, &r, &qs), Comparison::Indistinguishable, "T^{k}({arg}) = {r}");
        }
    }
    let s = nine48::s_map();
    let s_t = nine48::s_from_t();
    for g in 1..=9 {
        let x = Word::gen(g);
        assert_eq!(equal_in_quotients(&apply_map(&s, &x), &apply_map(&s_t, &x), &qs), Comparison::Indistinguishable);
    }
    let s2 = power(&s, 2);
    assert!(unfixed_in_quotients(&s2, &nine48::GENERATING_SET, &qs).is_empty());
    let conj: Word = "x1 x8".parse().unwrap();
    let t6 = power(&t, 6);
    for g in nine48::GENERATING_SET {
        let x = Word::gen(g);
        assert_eq!(equal_in_quotients(&apply_map(&t6, &x), &conj.conjugate(&x), &qs), Comparison::Indistinguishable);
    }
}

#[test]
fn corrupted_maps_are_caught() {
    let p = nine48::presentation();
    let qs = finite_quotients(&p, 6);
    let mut images: Vec<Word> = (1..=9).map(|g| apply_map(&nine48::t_map(), &Word::gen(g))).collect();
    images[3] = Word::gen(5);
    let bad = GeneratorMap::from_images(images);
    assert!(!verify_map_respects_relations(&bad, &p, &qs).passed());
    let t3 = power(&nine48::t_map(), 3);
    let wrong: Word = "x1 x7 x1^-1".parse().unwrap();
    assert_eq!(equal_in_quotients(&apply_map(&t3, &Word::gen(1)), &wrong, &qs), Comparison::Distinct);
}
