//! Regenerates the diagrams and connecting scripts under `fixtures/`.
//!
//! Each knot type starts from a seed found by random sampling and recognized
//! by its Alexander polynomial. All diagrams of the seed's size that can be
//! reached through one extra level are collected, then fixtures are picked by
//! the combinatorial properties the tests check.
//!
//! `cargo run --release --example find_fixtures -- crates/core/fixtures`

mod common;

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use common::atlas::{script_along, Atlas, EdgeKind};
use rectlink::exchange::gap_obstruction;
use rectlink::group::{finite_quotients, nine48, wirtinger};
use rectlink::invariants::all_invariants;
use rectlink::moves::{apply, enumerate_destabilizations, enumerate_exchanges, enumerate_general_stabilizations, Axis};
use rectlink::script::{emit_diagram, emit_script, verify_script, KindMask, MoveScript};
use rectlink::{canonicalize, classify, equivalent, CanonicalForm, GridDiagram, MoveKind, MoveSpec, StabType};

const SIZE: usize = 9;

fn minus_edge(e: EdgeKind) -> bool {
    e != EdgeKind::Type(StabType::I)
}

fn plus_edge(e: EdgeKind) -> bool {
    e != EdgeKind::Type(StabType::II)
}

struct Knot {
    atlas: Atlas,
    /// Exchange classes of the base size, each sorted, ordered by first member.
    classes: Vec<Vec<usize>>,
    class_of: BTreeMap<usize, usize>,
    minus: Vec<usize>,
    plus: Vec<usize>,
}

impl Knot {
    fn new(seed: &GridDiagram) -> Knot {
        let atlas = Atlas::explore(seed, SIZE, SIZE + 1, usize::MAX);
        assert!(!atlas.leaks_below, "seed is not minimal");
        let ex = atlas.components(|e| e == EdgeKind::Exchange);
        let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, f) in atlas.forms.iter().enumerate() {
            if f.diagram().size() == SIZE {
                by.entry(ex[i]).or_default().push(i);
            }
        }
        let mut classes: Vec<Vec<usize>> = by.into_values().collect();
        for c in classes.iter_mut() {
            c.sort_by(|&a, &b| atlas.forms[a].cmp(&atlas.forms[b]));
        }
        classes.sort_by(|a, b| atlas.forms[a[0]].cmp(&atlas.forms[b[0]]));
        let class_of = classes.iter().enumerate().flat_map(|(k, c)| c.iter().map(move |&i| (i, k))).collect();
        let minus = atlas.components(minus_edge);
        let plus = atlas.components(plus_edge);
        Knot { atlas, classes, class_of, minus, plus }
    }

    fn diagram(&self, i: usize) -> &GridDiagram {
        self.atlas.forms[i].diagram()
    }

    fn node(&self, d: &GridDiagram) -> usize {
        self.atlas.index[&canonicalize(d)]
    }

    fn class(&self, i: usize) -> &[usize] {
        &self.classes[self.class_of[&i]]
    }

    /// Classes sharing the xi- component of `i`.
    fn minus_classes(&self, i: usize) -> Vec<usize> {
        (0..self.classes.len()).filter(|&k| self.minus[self.classes[k][0]] == self.minus[i]).collect()
    }

    fn script(&self, from: usize, to: usize, allow: fn(EdgeKind) -> bool, mask: KindMask) -> MoveScript {
        let path = self.atlas.path(from, to, allow).expect("connected");
        let start = self.diagram(from).clone();
        let moves = script_along(&self.atlas, &start, &path, SIZE, SIZE + 1, allow);
        let s = MoveScript { initial: start, moves, declared_final: Some(self.diagram(to).clone()), allowed_kinds: Some(mask) };
        verify_script(&s).expect("generated script verifies");
        s
    }
}

fn parse(s: &str) -> Vec<usize> {
    s.split(',').map(|x| x.parse().unwrap()).collect()
}

fn seed(black: &str, white: &str) -> GridDiagram {
    GridDiagram::new(parse(black), parse(white)).unwrap()
}

/// Symmetric under the antidiagonal flip, and the half turn reverses it.
fn symmetric(d: &GridDiagram) -> bool {
    equivalent(&d.reflect_antidiagonal(), d) && equivalent(&d.rotate180(), &d.reversed())
}

/// Positions of the exchange class table: three rows, the top right empty.
pub const TABLE: [(usize, usize); 8] = [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)];

fn table_edges() -> HashSet<(usize, usize)> {
    let mut out = HashSet::new();
    for (i, a) in TABLE.iter().enumerate() {
        for (j, b) in TABLE.iter().enumerate().skip(i + 1) {
            if a.0.abs_diff(b.0) + a.1.abs_diff(b.1) == 1 {
                out.insert((i, j));
            }
        }
    }
    out
}

/// A bijection from table positions to class members preserving adjacency.
fn table_embedding(k: &Knot, class: &[usize]) -> Option<Vec<usize>> {
    let table = table_edges();
    let set: HashSet<(usize, usize)> = class
        .iter()
        .flat_map(|&a| k.atlas.edges[a].iter().filter(|(_, e)| *e == EdgeKind::Exchange).map(move |&(b, _)| (a, b)))
        .collect();
    if set.len() != 2 * table.len() {
        return None;
    }
    fn extend(pos: usize, img: &mut Vec<usize>, class: &[usize], table: &HashSet<(usize, usize)>, set: &HashSet<(usize, usize)>) -> bool {
        if pos == 8 {
            return true;
        }
        for &m in class {
            if img.contains(&m) {
                continue;
            }
            let ok = (0..pos).all(|p| table.contains(&(p, pos)) == set.contains(&(img[p], m)));
            if ok {
                img.push(m);
                if extend(pos + 1, img, class, table, set) {
                    return true;
                }
                img.pop();
            }
        }
        false
    }
    let mut img = vec![];
    extend(0, &mut img, class, &table, &set).then_some(img)
}

/// One type II stabilization, two exchanges of each axis and one type II
/// destabilization in any order, ending without the gap obstruction.
/// Stabilizations may span several levels.
fn gap_breaking_script(d: &GridDiagram) -> Option<Vec<MoveSpec>> {
    type Key = (CanonicalForm, [u8; 4]);
    let want = [1, 2, 2, 1];
    let mut layer: BTreeMap<Key, (GridDiagram, Vec<MoveSpec>)> = BTreeMap::new();
    layer.insert((canonicalize(d), [0; 4]), (d.clone(), vec![]));
    for _ in 0..6 {
        let mut next: BTreeMap<Key, (GridDiagram, Vec<MoveSpec>)> = BTreeMap::new();
        for ((_, k), (e, path)) in &layer {
            let mut options: Vec<(MoveSpec, usize)> = vec![];
            for m in enumerate_exchanges(e) {
                match classify(e, &m).unwrap() {
                    MoveKind::Exchange { axis: Axis::Horizontal } => options.push((m, 1)),
                    _ => options.push((m, 2)),
                }
            }
            if k[0] == 0 {
                options.extend(
                    enumerate_general_stabilizations(e).into_iter().filter(|(_, t)| t.stab_type() == Some(StabType::II)).map(|(m, _)| (m, 0)),
                );
            } else if k[3] == 0 {
                options.extend(
                    enumerate_destabilizations(e).into_iter().filter(|(_, t)| t.stab_type() == Some(StabType::II)).map(|(m, _)| (m, 3)),
                );
            }
            for (m, slot) in options {
                let mut k2 = *k;
                k2[slot] += 1;
                if k2[slot] > want[slot] {
                    continue;
                }
                let f = apply(e, &m).unwrap();
                let mut p = path.clone();
                p.push(m);
                next.entry((canonicalize(&f), k2)).or_insert((f, p));
            }
        }
        layer = next;
    }
    layer.into_iter().find(|((_, k), (e, _))| *k == want && !gap_obstruction(e)).map(|(_, (_, p))| p)
}

fn quotient_profile(p: &rectlink::group::Presentation, deg: usize) -> Vec<usize> {
    let q = finite_quotients(p, deg);
    (1..=deg).map(|k| q.iter().filter(|x| x.degree == k).count()).collect()
}

struct Out<'a> {
    dir: &'a Path,
}

impl Out<'_> {
    fn diagram(&self, name: &str, note: &str, d: &GridDiagram) {
        let inv = all_invariants(d);
        let text = format!(
            "# {note}\n# tb+={} rot+={} tb-={} rot-={}\n{}",
            inv[0],
            inv[1],
            inv[2],
            inv[3],
            emit_diagram(d)
        );
        fs::write(self.dir.join(format!("{name}.grid")), text).unwrap();
        println!("{name}: {:?} {:?} {inv:?}", d.black(), d.white());
    }

    fn script(&self, name: &str, s: &MoveScript) {
        let cert = verify_script(s).unwrap();
        fs::write(self.dir.join("scripts").join(format!("{name}.script")), emit_script(s)).unwrap();
        let kinds: Vec<String> = cert.kind_counts().iter().map(|(k, c)| format!("{c}x {k}")).collect();
        println!("{name}: {} moves [{}]", s.moves.len(), kinds.join(", "));
    }
}

fn check_polynomial(name: &str, d: &GridDiagram, want: &[i128]) {
    let got = common::alexander_of(d);
    assert_eq!(got, want, "{name} seed has the wrong Alexander polynomial");
}

fn seven_four(out: &Out) {
    let d = seed("7,5,4,2,3,1,8,6,0", "2,8,1,6,0,7,4,3,5");
    check_polynomial("7_4", &d, &[4, -7, 4]);
    let k = Knot::new(&d);
    let one = k
        .classes
        .iter()
        .filter(|c| c.len() == 1 && symmetric(k.diagram(c[0])) && enumerate_exchanges(k.diagram(c[0])).is_empty())
        .map(|c| c[0])
        .next()
        .expect("rigid symmetric diagram");
    let two = k
        .minus_classes(one)
        .into_iter()
        .filter(|&c| c != k.class_of[&one])
        .min_by_key(|&c| (k.classes[c].len(), c))
        .map(|c| k.classes[c][0])
        .expect("second class");
    assert_ne!(k.plus[one], k.plus[two]);
    out.diagram("7_4_1", "7_4: no exchange move applies; symmetric under the antidiagonal flip", k.diagram(one));
    out.diagram("7_4_2", "7_4: same xi- type as 7_4_1, different exchange class", k.diagram(two));
    out.script("7_4_1-7_4_2", &k.script(one, two, minus_edge, KindMask::EXCHANGE_II));
}

fn nine_four_eight(out: &Out) {
    let d = seed("7,5,8,6,4,2,0,3,1", "3,0,2,1,7,5,6,8,4");
    check_polynomial("9_48", &d, &[1, -7, 11, -7, 1]);
    assert_eq!(
        quotient_profile(&wirtinger(&d).presentation, 5),
        quotient_profile(&nine48::presentation(), 5),
        "seed group differs from the nine-generator presentation"
    );
    let k = Knot::new(&d);
    let mut found = None;
    for c in k.classes.iter().filter(|c| c.len() == 8) {
        if !c.iter().all(|&i| gap_obstruction(k.diagram(i))) {
            continue;
        }
        let Some(img) = table_embedding(&k, c) else { continue };
        // The table has one symmetry, exchanging these two positions.
        let Some((one, moves)) = [img[1], img[4]].into_iter().find_map(|i| Some((i, gap_breaking_script(k.diagram(i))?))) else {
            continue;
        };
        let s1 = MoveScript {
            initial: k.diagram(one).clone(),
            moves,
            declared_final: None,
            allowed_kinds: Some(KindMask::EXCHANGE_II),
        };
        let six = k.node(&s1.endpoint().unwrap());
        let two = k.node(&k.diagram(one).reversed());
        if all_invariants(k.diagram(one))[3] != 0 && k.plus[six] == k.plus[two] && k.plus[six] != k.plus[one] {
            found = Some((one, two, six, s1, img));
            break;
        }
    }
    let (one, two, six, mut s16, img) = found.expect("class with the table adjacency");
    s16.declared_final = Some(k.diagram(six).clone());
    let three_class = k
        .minus_classes(one)
        .into_iter()
        .find(|&c| k.classes[c].len() == 3)
        .expect("class of three");
    let three = k.classes[three_class][0];
    let four = k
        .minus_classes(one)
        .into_iter()
        .filter(|&c| c != three_class)
        .min_by_key(|&c| (k.classes[c].len().abs_diff(3), c))
        .map(|c| k.classes[c][0])
        .unwrap();
    let five = k
        .minus_classes(one)
        .into_iter()
        .map(|c| k.classes[c][0])
        .find(|&i| k.class(i).len() == 1 && symmetric(k.diagram(i)))
        .expect("symmetric diagram");
    assert_ne!(k.plus[three], k.plus[four]);
    out.diagram("9_48_1", "9_48: exchange class of eight, every member has the gap obstruction", k.diagram(one));
    out.diagram("9_48_2", "9_48: 9_48_1 with the orientation reversed", k.diagram(two));
    out.diagram("9_48_3", "9_48: exchange class of three", k.diagram(three));
    out.diagram("9_48_4", "9_48: same xi- type as 9_48_3, different exchange class", k.diagram(four));
    out.diagram("9_48_5", "9_48: symmetric under the antidiagonal flip", k.diagram(five));
    out.diagram("9_48_6", "9_48: same xi- type as 9_48_1, no gap obstruction", k.diagram(six));
    let table: Vec<String> =
        img.iter().zip(TABLE).map(|(&i, (r, c))| format!("({r},{c})={:?}", k.diagram(i).black())).collect();
    println!("table {}", table.join(" "));
    out.script("9_48_1-9_48_6", &s16);
    out.script("9_48_2-9_48_6", &k.script(two, six, plus_edge, KindMask::EXCHANGE_I));
    out.script("9_48_3-9_48_4", &k.script(three, four, minus_edge, KindMask::EXCHANGE_II));
    out.script("9_48_1-9_48_3", &k.script(one, three, minus_edge, KindMask::EXCHANGE_II));
    out.script("9_48_1-9_48_5", &k.script(one, five, minus_edge, KindMask::EXCHANGE_II));
}

fn ten_one_three_six(out: &Out) {
    let d = seed("0,6,8,5,3,1,4,2,7", "5,4,3,2,7,6,0,8,1");
    check_polynomial("10_136", &d, &[1, -4, 5, -4, 1]);
    let k = Knot::new(&d);
    let five = k
        .classes
        .iter()
        .filter(|c| c.len() == 1 && symmetric(k.diagram(c[0])))
        .map(|c| c[0])
        .next()
        .expect("symmetric diagram");
    let cls = k.minus_classes(five);
    let singles: Vec<usize> =
        cls.iter().map(|&c| k.classes[c][0]).filter(|&i| k.class(i).len() == 1 && i != five).collect();
    let triples: Vec<usize> = cls.iter().map(|&c| k.classes[c][0]).filter(|&i| k.class(i).len() == 3).collect();
    let (one, two) = (singles[0], singles[1]);
    let (three, four) = (triples[0], triples[1]);
    assert_ne!(k.plus[one], k.plus[two]);
    assert_ne!(k.plus[three], k.plus[four]);
    out.diagram("10_136_1", "10_136: exchange class of one", k.diagram(one));
    out.diagram("10_136_2", "10_136: same xi- type as 10_136_1, different exchange class", k.diagram(two));
    out.diagram("10_136_3", "10_136: exchange class of three", k.diagram(three));
    out.diagram("10_136_4", "10_136: same xi- type as 10_136_3, different exchange class", k.diagram(four));
    out.diagram("10_136_5", "10_136: symmetric under the antidiagonal flip", k.diagram(five));
    out.script("10_136_1-10_136_2", &k.script(one, two, minus_edge, KindMask::EXCHANGE_II));
    out.script("10_136_3-10_136_4", &k.script(three, four, minus_edge, KindMask::EXCHANGE_II));
    out.script("10_136_1-10_136_3", &k.script(one, three, minus_edge, KindMask::EXCHANGE_II));
    out.script("10_136_1-10_136_5", &k.script(one, five, minus_edge, KindMask::EXCHANGE_II));
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "crates/core/fixtures".into());
    let dir = Path::new(&dir);
    fs::create_dir_all(dir.join("scripts")).unwrap();
    let out = Out { dir };
    seven_four(&out);
    nine_four_eight(&out);
    ten_one_three_six(&out);
}
