#![allow(dead_code)]

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rectlink::script::{parse_diagram, parse_script, MoveScript};
use rectlink::GridDiagram;

pub const FIXTURES: [&str; 13] = [
    "7_4_1", "7_4_2", "9_48_1", "9_48_2", "9_48_3", "9_48_4", "9_48_5", "9_48_6", "10_136_1", "10_136_2", "10_136_3",
    "10_136_4", "10_136_5",
];

/// `(R, shipped evidence, optional bridge, R')` for the five distinguished pairs.
pub const PAIRS: [(&str, &str, Option<&str>, &str); 5] = [
    ("7_4_1", "7_4_1-7_4_2", None, "7_4_2"),
    ("9_48_1", "9_48_1-9_48_6", Some("9_48_2-9_48_6"), "9_48_2"),
    ("9_48_3", "9_48_3-9_48_4", None, "9_48_4"),
    ("10_136_1", "10_136_1-10_136_2", None, "10_136_2"),
    ("10_136_3", "10_136_3-10_136_4", None, "10_136_4"),
];

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn read(path: PathBuf) -> String {
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn fixture(name: &str) -> GridDiagram {
    parse_diagram(&read(fixture_dir().join(format!("{name}.grid")))).unwrap()
}

pub fn script(name: &str) -> MoveScript {
    parse_script(&read(fixture_dir().join("scripts").join(format!("{name}.script")))).unwrap()
}

pub fn trefoil() -> GridDiagram {
    GridDiagram::new(vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap()
}

pub fn random_diagram(n: usize, seed: u64) -> GridDiagram {
    GridDiagram::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_knot(n: usize, seed: u64) -> GridDiagram {
    GridDiagram::random_knot(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Cells of the 3x3 table with the top-right corner missing.
pub const TABLE: [(i32, i32); 8] = [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)];

/// Orthogonally adjacent cell pairs of the table.
pub fn table_edges() -> Vec<(usize, usize)> {
    let mut out = vec![];
    for (i, a) in TABLE.iter().enumerate() {
        for (j, b) in TABLE.iter().enumerate().skip(i + 1) {
            if (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1 {
                out.push((i, j));
            }
        }
    }
    out
}

fn adj(e: &[(usize, usize)], x: usize, y: usize) -> bool {
    e.iter().any(|&(a, b)| (a, b) == (x, y) || (a, b) == (y, x))
}

/// A bijection from table cells to graph nodes that maps edges exactly onto
/// edges, if one exists.
pub fn table_embedding(nodes: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let t = table_edges();
    if nodes != TABLE.len() || edges.len() != t.len() {
        return None;
    }
    fn go(
        k: usize,
        img: &mut Vec<usize>,
        t: &[(usize, usize)],
        edges: &[(usize, usize)],
    ) -> bool {
        if k == TABLE.len() {
            return true;
        }
        for v in 0..TABLE.len() {
            if img.contains(&v) {
                continue;
            }
            if (0..k).all(|i| adj(t, i, k) == adj(edges, img[i], v)) {
                img.push(v);
                if go(k + 1, img, t, edges) {
                    return true;
                }
                img.pop();
            }
        }
        false
    }
    let mut img = vec![];
    go(0, &mut img, &t, edges).then_some(img)
}
