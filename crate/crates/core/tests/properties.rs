mod common;

use common::*;
use proptest::prelude::*;
use rectlink::grid::trace_components;
use rectlink::invariants::all_invariants;
use rectlink::moves::{enumerate_destabilizations, enumerate_exchanges, enumerate_stabilizations, invert};
use rectlink::script::{emit_script, parse_script, verify_script, KindMask, MoveScript};
use rectlink::{apply, canonicalize, classify, equivalent, GridDiagram, MoveKind, MoveSpec, StabType};

fn diagram(max_n: usize) -> impl Strategy<Value = GridDiagram> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_diagram(n, seed))
}

/// Every move the enumerators produce, with its kind.
fn all_moves(d: &GridDiagram) -> Vec<(MoveSpec, MoveKind)> {
    let mut v: Vec<(MoveSpec, MoveKind)> =
        enumerate_exchanges(d).into_iter().map(|m| (m.clone(), classify(d, &m).unwrap())).collect();
    v.extend(enumerate_stabilizations(d));
    v.extend(enumerate_destabilizations(d));
    v
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn canonical_forms_exhaustive_up_to_four() {
    for n in 2..=4 {
        let perms = permutations(n);
        let mut count = 0;
        for b in &perms {
            for w in &perms {
                let Ok(d) = GridDiagram::new(b.clone(), w.clone()) else { continue };
                count += 1;
                let c = canonicalize(&d);
                assert_eq!(canonicalize(c.diagram()), c);
                // brute-force minimum over the whole orbit
                let min = (0..n).flat_map(|a| (0..n).map(move |s| (a, s))).map(|(a, s)| canonicalize_naive(&d.shift(a, s))).min();
                assert_eq!(Some(c.encoding()), min);
                for a in 0..n {
                    for s in 0..n {
                        assert_eq!(canonicalize(&d.shift(a, s)), c);
                    }
                }
            }
        }
        assert!(count > 0);
    }
}

/// The encoding of the diagram as it stands, no shift applied.
fn canonicalize_naive(d: &GridDiagram) -> Vec<u32> {
    let mut v: Vec<u32> = d.black().iter().map(|&x| x as u32).collect();
    v.extend(d.white().iter().map(|&x| x as u32));
    v.extend(d.components());
    v
}

#[test]
fn trefoil_traces_to_one_component() {
    let t = trace_components(&trefoil());
    assert_eq!(t.len(), 1);
    assert_eq!(t[0].vertices.len(), 10);
    let two = GridDiagram::new(vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap();
    assert_eq!(two.component_count(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_an_orbit_invariant(d in diagram(9), a in 0usize..9, b in 0usize..9) {
        let c = canonicalize(&d);
        prop_assert_eq!(canonicalize(c.diagram()), c.clone());
        prop_assert_eq!(canonicalize(&d.shift(a, b)), c);
    }

    #[test]
    fn traversal_visits_every_vertex_once(d in diagram(9), a in 0usize..9, b in 0usize..9) {
        let n = d.size();
        let t = trace_components(&d);
        let mut seen: Vec<(usize, usize)> = t.iter().flat_map(|c| c.vertices.iter().map(|v| (v.col, v.row))).collect();
        seen.sort();
        seen.dedup();
        prop_assert_eq!(seen.len(), 2 * n);
        let shifted = trace_components(&d.shift(a, b));
        let part = |tr: &[rectlink::grid::ComponentTrace], f: &dyn Fn(usize, usize) -> (usize, usize)| {
            let mut p: Vec<Vec<(usize, usize)>> = tr.iter().map(|c| {
                let mut v: Vec<(usize, usize)> = c.vertices.iter().map(|v| f(v.col, v.row)).collect();
                v.sort();
                v
            }).collect();
            p.sort();
            p
        };
        let (a, b) = (a % n, b % n);
        prop_assert_eq!(part(&t, &|c, r| ((c + a) % n, (r + b) % n)), part(&shifted, &|c, r| (c, r)));
    }

    #[test]
    fn reflections_are_involutions(d in diagram(8)) {
        prop_assert!(equivalent(&d.reflect_antidiagonal().reflect_antidiagonal(), &d));
        prop_assert!(equivalent(&d.reflect_vertical().reflect_vertical(), &d));
        prop_assert!(equivalent(&d.rotate180().rotate180(), &d));
        prop_assert!(equivalent(&d.rotate180(), &d.reflect_vertical().reflect_horizontal()));
    }

    #[test]
    fn moves_invert(d in diagram(7), pick in any::<prop::sample::Index>()) {
        let moves = all_moves(&d);
        let (m, kind) = pick.get(&moves).clone();
        let e = apply(&d, &m).unwrap();
        let expected_n = match kind {
            MoveKind::Exchange { .. } => d.size(),
            MoveKind::Stabilization { .. } => d.size() + 1,
            MoveKind::Destabilization { .. } => d.size() - 1,
        };
        prop_assert_eq!(e.size(), expected_n);
        prop_assert_eq!(e.component_count(), d.component_count());
        let back = invert(&m, &d, &e).unwrap();
        let k2 = classify(&e, &back).unwrap();
        prop_assert_eq!(k2.stab_type(), kind.stab_type());
        prop_assert_eq!(k2.is_exchange(), kind.is_exchange());
        prop_assert_eq!(canonicalize(&apply(&e, &back).unwrap()), canonicalize(&d));
        // also against a shifted copy of the result
        let f = e.shift(2, 5);
        let back = invert(&m, &d, &f).unwrap();
        prop_assert_eq!(canonicalize(&apply(&f, &back).unwrap()), canonicalize(&d));
    }

    #[test]
    fn stabilizations_are_undone_by_enumerated_destabilizations(d in diagram(6), pick in any::<prop::sample::Index>()) {
        let stabs = enumerate_stabilizations(&d);
        prop_assert_eq!(stabs.len(), 8 * d.size());
        let (s, _) = pick.get(&stabs);
        let e = apply(&d, s).unwrap();
        let inverse = invert(s, &d, &e).unwrap();
        let destabs = enumerate_destabilizations(&e);
        prop_assert!(destabs.iter().any(|(m, _)| *m == inverse));
    }

    #[test]
    fn classification_is_shift_stable(d in diagram(7), pick in any::<prop::sample::Index>(), a in 0usize..7, b in 0usize..7) {
        let moves = all_moves(&d);
        let (m, kind) = pick.get(&moves);
        let n = d.size();
        let ms = m.shifted(n, a % n, b % n);
        prop_assert_eq!(classify(&d.shift(a, b), &ms).unwrap(), *kind);
        prop_assert!(equivalent(&apply(&d.shift(a, b), &ms).unwrap(), &apply(&d, m).unwrap()));
    }

    #[test]
    fn invariant_conventions(d in diagram(7), a in 0usize..7, b in 0usize..7) {
        let inv = all_invariants(&d);
        prop_assert_eq!(all_invariants(&d.shift(a, b)), inv);
        for m in enumerate_exchanges(&d) {
            prop_assert_eq!(all_invariants(&apply(&d, &m).unwrap()), inv);
        }
        for (m, k) in enumerate_stabilizations(&d) {
            let after = all_invariants(&apply(&d, &m).unwrap());
            let (kept, moved) = match k.stab_type().unwrap() {
                StabType::II => ([2, 3], [0, 1]),
                StabType::I => ([0, 1], [2, 3]),
            };
            prop_assert_eq!([after[kept[0]], after[kept[1]]], [inv[kept[0]], inv[kept[1]]]);
            prop_assert_eq!(after[moved[0]] - inv[moved[0]], -1);
            prop_assert_eq!((after[moved[1]] - inv[moved[1]]).abs(), 1);
        }
    }

    #[test]
    fn script_text_does_not_change_verdicts(d in diagram(6), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..6), mask_pick in 0usize..4) {
        let mut e = d.clone();
        let mut moves = vec![];
        for p in picks {
            let all = all_moves(&e);
            let (m, _) = p.get(&all).clone();
            e = apply(&e, &m).unwrap();
            moves.push(m);
        }
        let mask = [KindMask::ANY, KindMask::EXCHANGE, KindMask::EXCHANGE_I, KindMask::EXCHANGE_II][mask_pick];
        let s = MoveScript { initial: d, moves, declared_final: Some(e.shift(1, 1)), allowed_kinds: Some(mask) };
        let parsed = parse_script(&emit_script(&s)).unwrap();
        prop_assert_eq!(&parsed, &s);
        let v1 = verify_script(&s);
        prop_assert_eq!(&v1, &verify_script(&parsed));
        if let Ok(c) = v1 {
            prop_assert!(c.replays(&parsed));
            prop_assert!(equivalent(c.endpoint.diagram(), &e));
        }
    }
}
