//! Exchange classes: all combinatorial classes reachable by exchange moves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{canonicalize, CanonicalForm, GridDiagram};
use crate::moves::{apply, enumerate_exchanges};

pub const DEFAULT_MEMBER_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeClass {
    pub root: CanonicalForm,
    /// Sorted by encoding.
    pub members: Vec<CanonicalForm>,
    /// Index pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// False when enumeration stopped at the member limit.
    pub closed: bool,
}

impl ExchangeClass {
    pub fn contains(&self, d: &GridDiagram) -> bool {
        self.members.binary_search(&canonicalize(d)).is_ok()
    }

    pub fn index_of(&self, d: &GridDiagram) -> Option<usize> {
        self.members.binary_search(&canonicalize(d)).ok()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClassError {
    #[error("exchange class exceeds {limit} members")]
    LimitExceeded { limit: usize, partial: Box<ExchangeClass> },
}

/// Canonical forms one exchange move away, self-loops removed.
pub fn exchange_neighbors(c: &CanonicalForm) -> BTreeSet<CanonicalForm> {
    let d = c.diagram();
    enumerate_exchanges(d)
        .iter()
        .map(|m| canonicalize(&apply(d, m).expect("enumerated exchange applies")))
        .filter(|x| x != c)
        .collect()
}

/// Breadth-first search over canonical forms. Each layer is expanded in
/// parallel and merged in sorted order, so the result does not depend on the
/// number of worker threads.
pub fn enumerate_class(d: &GridDiagram, member_limit: usize) -> Result<ExchangeClass, ClassError> {
    let root = canonicalize(d);
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut edges: BTreeSet<(CanonicalForm, CanonicalForm)> = BTreeSet::new();
    seen.insert(root.clone());
    let mut frontier = vec![root.clone()];
    let mut closed = true;
    while !frontier.is_empty() {
        let expanded: Vec<(CanonicalForm, BTreeSet<CanonicalForm>)> =
            frontier.par_iter().map(|c| (c.clone(), exchange_neighbors(c))).collect();
        let mut next = BTreeSet::new();
        'layer: for (src, nbrs) in expanded {
            for x in nbrs {
                if !seen.contains(&x) {
                    if seen.len() >= member_limit {
                        closed = false;
                        break 'layer;
                    }
                    seen.insert(x.clone());
                    next.insert(x.clone());
                }
                let pair = if src < x { (src.clone(), x) } else { (x, src.clone()) };
                edges.insert(pair);
            }
        }
        if !closed {
            break;
        }
        frontier = next.into_iter().collect();
    }
    let members: Vec<CanonicalForm> = seen.into_iter().collect();
    let index: BTreeMap<&CanonicalForm, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut edge_list: Vec<(usize, usize)> = edges
        .iter()
        .filter_map(|(a, b)| Some((*index.get(a)?, *index.get(b)?)))
        .collect();
    edge_list.sort();
    let class = ExchangeClass { root, members, edges: edge_list, closed };
    if closed {
        Ok(class)
    } else {
        Err(ClassError::LimitExceeded { limit: member_limit, partial: Box::new(class) })
    }
}

pub fn same_class(d1: &GridDiagram, d2: &GridDiagram, member_limit: usize) -> Result<bool, ClassError> {
    if d1.size() != d2.size() || d1.component_count() != d2.component_count() {
        return Ok(false);
    }
    Ok(enumerate_class(d1, member_limit)?.contains(d2))
}

/// True iff some vertical edge has exactly one row strictly between its
/// endpoints, going around either way.
pub fn gap_obstruction(d: &GridDiagram) -> bool {
    let n = d.size();
    (0..n).any(|c| {
        let (a, b) = (d.black()[c], d.white()[c]);
        let fwd = (b + n - a) % n;
        let back = (a + n - b) % n;
        fwd == 2 || back == 2
    })
}

fn encode_line(c: &CanonicalForm) -> String {
    let d = c.diagram();
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let comp: Vec<usize> = d.components().iter().map(|&x| x as usize).collect();
    format!("{} | {} | {}", join(d.black()), join(d.white()), join(&comp))
}

pub fn store_class(c: &ExchangeClass) -> String {
    let mut s = String::new();
    writeln!(s, "class members={} edges={} closed={}", c.members.len(), c.edges.len(), c.closed).unwrap();
    writeln!(s, "root {}", encode_line(&c.root)).unwrap();
    for m in &c.members {
        writeln!(s, "member {}", encode_line(m)).unwrap();
    }
    for (i, j) in &c.edges {
        writeln!(s, "edge {i} {j}").unwrap();
    }
    s
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LoadError {
    #[error("line {line}: {msg}")]
    Corrupt { line: usize, msg: String },
    #[error("class is not closed under exchange moves: {0}")]
    NotClosed(String),
    #[error("adjacency graph is not connected")]
    Disconnected,
}

fn parse_member(s: &str, line: usize) -> Result<CanonicalForm, LoadError> {
    let bad = |msg: String| LoadError::Corrupt { line, msg };
    let parts: Vec<&str> = s.split('|').collect();
    if parts.len() != 3 {
        return Err(bad("expected black | white | comp".into()));
    }
    let nums = |p: &str| -> Result<Vec<usize>, LoadError> {
        p.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| bad(format!("bad number {t:?}")))).collect()
    };
    let (b, w, k) = (nums(parts[0])?, nums(parts[1])?, nums(parts[2])?);
    let d = GridDiagram::with_components(b, w, k.iter().map(|&x| x as u32).collect()).map_err(|e| bad(e.to_string()))?;
    let c = canonicalize(&d);
    if c.diagram() != &d {
        return Err(bad("member is not in canonical form".into()));
    }
    Ok(c)
}

/// Parses a stored class, then checks closure, the edge list and connectivity.
pub fn load_class(text: &str) -> Result<ExchangeClass, LoadError> {
    let mut root = None;
    let mut members = Vec::new();
    let mut edges = Vec::new();
    let mut header = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (tag, rest) = l.split_once(' ').unwrap_or((l, ""));
        match tag {
            "class" => {
                let mut closed = None;
                for kv in rest.split_whitespace() {
                    if let Some(v) = kv.strip_prefix("closed=") {
                        closed = v.parse::<bool>().ok();
                    }
                }
                header = Some(closed.ok_or(LoadError::Corrupt { line, msg: "missing closed=".into() })?);
            }
            "root" => root = Some(parse_member(rest, line)?),
            "member" => members.push(parse_member(rest, line)?),
            "edge" => {
                let v: Vec<usize> = rest.split_whitespace().filter_map(|t| t.parse().ok()).collect();
                if v.len() != 2 || v[0] >= v[1] {
                    return Err(LoadError::Corrupt { line, msg: "edge needs two increasing indices".into() });
                }
                edges.push((v[0], v[1]));
            }
            other => return Err(LoadError::Corrupt { line, msg: format!("unknown record {other:?}") }),
        }
    }
    let closed = header.ok_or(LoadError::Corrupt { line: 1, msg: "missing class header".into() })?;
    let root = root.ok_or(LoadError::Corrupt { line: 1, msg: "missing root".into() })?;
    if members.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LoadError::Corrupt { line: 1, msg: "members not sorted".into() });
    }
    if edges.iter().any(|&(_, j)| j >= members.len()) {
        return Err(LoadError::Corrupt { line: 1, msg: "edge index out of range".into() });
    }
    edges.sort();
    let class = ExchangeClass { root, members, edges, closed };
    if !class.contains(class.root.diagram()) {
        return Err(LoadError::NotClosed("root is not a member".into()));
    }
    if closed {
        let mut expected = Vec::new();
        for (i, m) in class.members.iter().enumerate() {
            for x in exchange_neighbors(m) {
                let j = class.index_of(x.diagram()).ok_or_else(|| LoadError::NotClosed(format!("member {i} leaves the class")))?;
                if i < j {
                    expected.push((i, j));
                }
            }
        }
        expected.sort();
        if expected != class.edges {
            return Err(LoadError::NotClosed("edge list differs from recomputed adjacency".into()));
        }
    }
    let mut reached = vec![false; class.members.len()];
    let mut stack = vec![class.index_of(class.root.diagram()).unwrap()];
    while let Some(i) = stack.pop() {
        if std::mem::replace(&mut reached[i], true) {
            continue;
        }
        for &(a, b) in &class.edges {
            if a == i && !reached[b] {
                stack.push(b);
            } else if b == i && !reached[a] {
                stack.push(a);
            }
        }
    }
    if reached.iter().any(|r| !r) {
        return Err(LoadError::Disconnected);
    }
    Ok(class)
}
