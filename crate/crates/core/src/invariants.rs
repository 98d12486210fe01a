//! Planar projection and the classical Legendrian invariants.
//!
//! The torus is cut along the zero levels. Vertical edges pass over
//! horizontal ones. Turning the picture by 45 degrees counterclockwise gives a
//! front: corners whose edges leave east and south, or west and north, become
//! cusps; the other corners are smoothed.

use std::fmt::Write as _;

use crate::exchange::{enumerate_class, ClassError};
use crate::grid::{Color, GridDiagram, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub col: usize,
    pub row: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cusp {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerInfo {
    pub vertex: Vertex,
    /// The horizontal edge leaves the vertex eastwards.
    pub east: bool,
    /// The vertical edge leaves the vertex northwards.
    pub north: bool,
    pub cusp: Option<Cusp>,
}

/// An edge as a linear span `lo..hi` at a fixed level, with its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub level: usize,
    pub lo: usize,
    pub hi: usize,
    /// Traversed from `lo` to `hi`.
    pub increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    pub vertical: Vec<Edge>,
    pub horizontal: Vec<Edge>,
    pub crossings: Vec<Crossing>,
    pub corners: Vec<CornerInfo>,
}

impl PlanarDiagram {
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn cusps(&self, kind: Cusp) -> usize {
        self.corners.iter().filter(|c| c.cusp == Some(kind)).count()
    }
}

pub fn planarize(d: &GridDiagram) -> PlanarDiagram {
    let n = d.size();
    let (bcol, wcol) = d.row_tables();
    let vertical: Vec<Edge> = (0..n)
        .map(|c| {
            let (b, w) = (d.black()[c], d.white()[c]);
            Edge { level: c, lo: b.min(w), hi: b.max(w), increasing: w > b }
        })
        .collect();
    let horizontal: Vec<Edge> = (0..n)
        .map(|r| {
            let (b, w) = (bcol[r], wcol[r]);
            Edge { level: r, lo: b.min(w), hi: b.max(w), increasing: b > w }
        })
        .collect();
    let mut crossings = Vec::new();
    for v in &vertical {
        for h in &horizontal {
            if h.lo < v.level && v.level < h.hi && v.lo < h.level && h.level < v.hi {
                let dv: i8 = if v.increasing { 1 } else { -1 };
                let dh: i8 = if h.increasing { 1 } else { -1 };
                crossings.push(Crossing { col: v.level, row: h.level, sign: -dv * dh });
            }
        }
    }
    let corners = d
        .vertices()
        .into_iter()
        .map(|v| {
            let other_row = match v.color {
                Color::Black => d.white()[v.col],
                Color::White => d.black()[v.col],
            };
            let other_col = match v.color {
                Color::Black => wcol[v.row],
                Color::White => bcol[v.row],
            };
            let north = other_row > v.row;
            let east = other_col > v.col;
            let cusp = match (east, north, v.color) {
                (true, false, Color::Black) | (false, true, Color::White) => Some(Cusp::Down),
                (true, false, Color::White) | (false, true, Color::Black) => Some(Cusp::Up),
                _ => None,
            };
            CornerInfo { vertex: v, east, north, cusp }
        })
        .collect();
    PlanarDiagram { vertical, horizontal, crossings, corners }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    Plus,
    Minus,
}

/// Thurston-Bennequin and rotation numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classical {
    pub tb: i64,
    pub rot: i64,
}

fn front_invariants(d: &GridDiagram) -> Classical {
    let p = planarize(d);
    let (up, down) = (p.cusps(Cusp::Up) as i64, p.cusps(Cusp::Down) as i64);
    debug_assert_eq!((up + down) % 2, 0);
    debug_assert_eq!((down - up) % 2, 0);
    Classical { tb: p.writhe() - (up + down) / 2, rot: (down - up) / 2 }
}

/// `(tb, rot)` with respect to the standard structure or its mirror; the
/// mirror values are those of `reflect_vertical(d)`.
pub fn classical_invariants(d: &GridDiagram, s: Structure) -> Classical {
    match s {
        Structure::Plus => front_invariants(d),
        Structure::Minus => front_invariants(&d.reflect_vertical()),
    }
}

/// All four classical invariants `(tb+, rot+, tb-, rot-)`.
pub fn all_invariants(d: &GridDiagram) -> [i64; 4] {
    let p = classical_invariants(d, Structure::Plus);
    let m = classical_invariants(d, Structure::Minus);
    [p.tb, p.rot, m.tb, m.rot]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub name: String,
    pub n: usize,
    pub components: u32,
    pub plus: Classical,
    pub minus: Classical,
    /// Exchange-class size, `None` if the enumeration hit the limit.
    pub class_size: Option<usize>,
}

pub fn invariant_report(ds: &[(String, GridDiagram)], class_limit: usize) -> Vec<ReportRow> {
    ds.iter()
        .map(|(name, d)| ReportRow {
            name: name.clone(),
            n: d.size(),
            components: d.component_count(),
            plus: classical_invariants(d, Structure::Plus),
            minus: classical_invariants(d, Structure::Minus),
            class_size: match enumerate_class(d, class_limit) {
                Ok(c) => Some(c.members.len()),
                Err(ClassError::LimitExceeded { .. }) => None,
            },
        })
        .collect()
}

pub fn format_report(rows: &[ReportRow], csv: bool) -> String {
    let header = ["name", "n", "k", "tb+", "rot+", "tb-", "rot-", "class"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.n.to_string(),
                r.components.to_string(),
                r.plus.tb.to_string(),
                r.plus.rot.to_string(),
                r.minus.tb.to_string(),
                r.minus.rot.to_string(),
                r.class_size.map_or(">limit".to_string(), |s| s.to_string()),
            ]
        })
        .collect();
    let mut out = String::new();
    if csv {
        writeln!(out, "{}", header.join(",")).unwrap();
        for row in &cells {
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        return out;
    }
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: Vec<&str>| {
        row.iter()
            .zip(&width)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header.to_vec())).unwrap();
    for row in &cells {
        writeln!(out, "{}", line(row.iter().map(|s| s.as_str()).collect())).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_front() {
        let u = GridDiagram::unknot();
        let p = planarize(&u);
        assert!(p.crossings.is_empty());
        assert_eq!((p.cusps(Cusp::Up), p.cusps(Cusp::Down)), (1, 1));
        for s in [Structure::Plus, Structure::Minus] {
            assert_eq!(classical_invariants(&u, s), Classical { tb: -1, rot: 0 });
        }
    }

    #[test]
    fn trefoil_writhe() {
        let t = GridDiagram::new(vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap();
        let p = planarize(&t);
        assert_eq!(p.crossings.len(), 3);
        assert_eq!(p.writhe().abs(), 3);
    }

    #[test]
    fn report_formats() {
        let rows = invariant_report(&[("unknot".to_string(), GridDiagram::unknot())], 10);
        assert_eq!(rows[0].class_size, Some(1));
        let csv = format_report(&rows, true);
        assert_eq!(csv.lines().nth(1), Some("unknot,2,1,-1,0,-1,0,1"));
        assert_eq!(format_report(&rows, false).lines().count(), 2);
    }
}
