//! The graph of all diagrams of one knot type within a size window.

use std::collections::HashMap;

use rectlink::moves::{apply, invert, enumerate_destabilizations, enumerate_exchanges, enumerate_stabilizations};
use rectlink::{canonicalize, CanonicalForm, GridDiagram, MoveKind, MoveSpec, StabType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Exchange,
    Type(StabType),
}

pub struct Atlas {
    pub forms: Vec<CanonicalForm>,
    pub index: HashMap<CanonicalForm, usize>,
    pub edges: Vec<Vec<(usize, EdgeKind)>>,
    /// Some diagram destabilizes below the window.
    pub leaks_below: bool,
}

pub fn moves_of(d: &GridDiagram, lo: usize, hi: usize) -> Vec<(MoveSpec, MoveKind)> {
    let mut out: Vec<(MoveSpec, MoveKind)> = enumerate_exchanges(d)
        .into_iter()
        .map(|m| {
            let k = rectlink::classify(d, &m).expect("exchange");
            (m, k)
        })
        .collect();
    if d.size() < hi {
        out.extend(enumerate_stabilizations(d));
    }
    if d.size() > lo {
        out.extend(enumerate_destabilizations(d));
    }
    out
}

pub fn edge_kind(k: &MoveKind) -> EdgeKind {
    match k.stab_type() {
        Some(t) => EdgeKind::Type(t),
        None => EdgeKind::Exchange,
    }
}

impl Atlas {
    pub fn explore(seed: &GridDiagram, lo: usize, hi: usize, cap: usize) -> Atlas {
        let mut a = Atlas { forms: vec![], index: HashMap::new(), edges: vec![], leaks_below: false };
        let root = canonicalize(seed);
        a.index.insert(root.clone(), 0);
        a.forms.push(root);
        a.edges.push(vec![]);
        let mut i = 0;
        while i < a.forms.len() && a.forms.len() < cap {
            let d = a.forms[i].diagram().clone();
            if d.size() == lo && !enumerate_destabilizations(&d).is_empty() {
                a.leaks_below = true;
                break;
            }
            for (m, k) in moves_of(&d, lo, hi) {
                let c = canonicalize(&apply(&d, &m).expect("enumerated move"));
                let j = match a.index.get(&c) {
                    Some(&j) => j,
                    None => {
                        let j = a.forms.len();
                        a.index.insert(c.clone(), j);
                        a.forms.push(c);
                        a.edges.push(vec![]);
                        j
                    }
                };
                if j != i {
                    let e = edge_kind(&k);
                    if !a.edges[i].contains(&(j, e)) {
                        a.edges[i].push((j, e));
                        a.edges[j].push((i, e));
                    }
                }
            }
            i += 1;
        }
        a
    }

    /// Component labels of the subgraph using only the allowed edge kinds.
    pub fn components(&self, allow: impl Fn(EdgeKind) -> bool) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.forms.len()];
        let mut next = 0;
        for s in 0..self.forms.len() {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(i) = stack.pop() {
                for &(j, e) in &self.edges[i] {
                    if allow(e) && label[j] == usize::MAX {
                        label[j] = next;
                        stack.push(j);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Shortest node path from `s` to `t` over allowed edges.
    pub fn path(&self, s: usize, t: usize, allow: impl Fn(EdgeKind) -> bool) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.forms.len()];
        prev[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            if i == t {
                let mut p = vec![t];
                while *p.last().unwrap() != s {
                    p.push(prev[*p.last().unwrap()]);
                }
                p.reverse();
                return Some(p);
            }
            for &(j, e) in &self.edges[i] {
                if allow(e) && prev[j] == usize::MAX {
                    prev[j] = i;
                    queue.push_back(j);
                }
            }
        }
        None
    }
}

/// Turns a node path into a move script starting at `start`, which must be
/// equivalent to the first node.
pub fn script_along(
    atlas: &Atlas,
    start: &GridDiagram,
    path: &[usize],
    lo: usize,
    hi: usize,
    allow: impl Fn(EdgeKind) -> bool,
) -> Vec<MoveSpec> {
    let mut d = start.clone();
    let mut out = vec![];
    for w in path.windows(2) {
        let target = &atlas.forms[w[1]];
        let direct = moves_of(&d, lo, hi).into_iter().find_map(|(m, k)| {
            if !allow(edge_kind(&k)) {
                return None;
            }
            let e = apply(&d, &m).ok()?;
            (canonicalize(&e) == *target).then_some((m, e))
        });
        // Stabilizations that are not small are found as inverses of the
        // destabilization seen from the other side.
        let (m, next) = direct
            .or_else(|| {
                let t = target.diagram();
                moves_of(t, lo, hi).into_iter().find_map(|(m, k)| {
                    if !allow(edge_kind(&k)) {
                        return None;
                    }
                    let e = apply(t, &m).ok()?;
                    if !rectlink::equivalent(&e, &d) {
                        return None;
                    }
                    let back = invert(&m, t, &d).ok()?;
                    let n = apply(&d, &back).ok()?;
                    (canonicalize(&n) == *target).then_some((back, n))
                })
            })
            .expect("edge realized by a move");
        out.push(m);
        d = next;
    }
    out
}
