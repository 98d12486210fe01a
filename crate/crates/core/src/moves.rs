//! Elementary moves: exchange moves, stabilizations and destabilizations.
//!
//! A move is given by the corners it deletes and the corners it adds; the
//! union is the corner set of one rectangle on the torus. Coordinates of added
//! corners may be half-integers `k+1/2`, denoting a fresh level inserted
//! between levels `k` and `k+1` (`-1+1/2` sits before level 0). After a move
//! the occupied levels are renumbered `0..n` by ascending coordinate value.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::grid::{Color, GridDiagram, Vertex};

pub use crate::script::conjugate_by_reflection;

/// A level coordinate stored in half units (`2k` is level `k`, `2k+1` is `k+1/2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(i32);

impl Level {
    pub fn at(k: usize) -> Level {
        Level(2 * k as i32)
    }

    /// The fresh level `k+1/2`; `k` may be `-1`.
    pub fn after(k: i32) -> Level {
        Level(2 * k + 1)
    }

    pub fn from_half_units(h: i32) -> Level {
        Level(h)
    }

    pub fn half_units(self) -> i32 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn index(self) -> Option<usize> {
        (self.is_integer() && self.0 >= 0).then_some((self.0 / 2) as usize)
    }

    /// Mirror image under `x -> n-1-x`.
    pub fn mirrored(self, n: usize) -> Level {
        Level(2 * (n as i32 - 1) - self.0)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}+1/2", (self.0 - 1).div_euclid(2))
        }
    }
}

impl FromStr for Level {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || MoveError::BadCoordinate(s.to_string());
        match s.strip_suffix("+1/2") {
            Some(k) => Ok(Level::after(k.trim().parse::<i32>().map_err(|_| bad())?)),
            None => {
                let k = s.parse::<i32>().map_err(|_| bad())?;
                if k < 0 {
                    return Err(bad());
                }
                Ok(Level(2 * k))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub col: Level,
    pub row: Level,
}

impl Cell {
    pub fn new(col: Level, row: Level) -> Cell {
        Cell { col, row }
    }

    pub fn at(col: usize, row: usize) -> Cell {
        Cell { col: Level::at(col), row: Level::at(row) }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.col, self.row)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("not a rectangle")]
    NotARectangle,
    #[error("not an elementary move")]
    NotElementary,
    #[error("bad coordinate {0:?}")]
    BadCoordinate(String),
    #[error("coordinate {0} is outside the {1}x{1} grid")]
    OutOfGrid(Cell, usize),
    #[error("deleted corner {0} is not a vertex of the diagram")]
    MissingVertex(Cell),
    #[error("rectangle contains vertex {0} besides the deleted corners")]
    ExtraVertex(Cell),
    #[error("result invalid: {0}")]
    BadResult(String),
}

/// An elementary move as delete/add corner sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSpec {
    del: Vec<Cell>,
    add: Vec<Cell>,
}

impl MoveSpec {
    pub fn new(mut del: Vec<Cell>, mut add: Vec<Cell>) -> Result<MoveSpec, MoveError> {
        del.sort();
        add.sort();
        if del.is_empty() || del.len() > 3 || del.len() + add.len() != 4 {
            return Err(MoveError::NotARectangle);
        }
        let mut cols: Vec<Level> = del.iter().chain(add.iter()).map(|c| c.col).collect();
        let mut rows: Vec<Level> = del.iter().chain(add.iter()).map(|c| c.row).collect();
        cols.sort();
        cols.dedup();
        rows.sort();
        rows.dedup();
        if cols.len() != 2 || rows.len() != 2 {
            return Err(MoveError::NotARectangle);
        }
        let mut all: Vec<Cell> = del.iter().chain(add.iter()).copied().collect();
        all.sort();
        all.dedup();
        if all.len() != 4 {
            return Err(MoveError::NotARectangle);
        }
        if del.iter().any(|c| !c.col.is_integer() || !c.row.is_integer()) {
            return Err(MoveError::BadCoordinate("deleted corners must have integer coordinates".into()));
        }
        Ok(MoveSpec { del, add })
    }

    pub fn del(&self) -> &[Cell] {
        &self.del
    }

    pub fn add(&self) -> &[Cell] {
        &self.add
    }

    fn col_levels(&self) -> (Level, Level) {
        let mut c: Vec<Level> = self.del.iter().chain(self.add.iter()).map(|c| c.col).collect();
        c.sort();
        (c[0], c[3])
    }

    fn row_levels(&self) -> (Level, Level) {
        let mut r: Vec<Level> = self.del.iter().chain(self.add.iter()).map(|c| c.row).collect();
        r.sort();
        (r[0], r[3])
    }

    /// The same move on `reflect_vertical` of an `n`-column diagram.
    pub fn mirrored_columns(&self, n: usize) -> MoveSpec {
        let f = |c: &Cell| Cell { col: c.col.mirrored(n), row: c.row };
        MoveSpec::new(self.del.iter().map(f).collect(), self.add.iter().map(f).collect()).expect("mirror of a rectangle")
    }

    /// The same move on `d.shift(a, b)` for an `n`-column diagram `d`.
    pub fn shifted(&self, n: usize, a: usize, b: usize) -> MoveSpec {
        let s = |l: Level, by: usize| {
            let h = (l.0 + 2 * by as i32).rem_euclid(2 * n as i32);
            Level(if h == 2 * n as i32 - 1 { -1 } else { h })
        };
        let f = |c: &Cell| Cell { col: s(c.col, a), row: s(c.row, b) };
        MoveSpec::new(self.del.iter().map(f).collect(), self.add.iter().map(f).collect()).expect("shift of a rectangle")
    }
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Cell]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "del [{}] add [{}]", list(&self.del), list(&self.add))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    /// A vertical edge moves sideways.
    Vertical,
    /// A horizontal edge moves up or down.
    Horizontal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StabType {
    I,
    II,
}

impl fmt::Display for StabType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabType::I => "I",
            StabType::II => "II",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    NE,
    NW,
    SE,
    SW,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::NE, Corner::NW, Corner::SE, Corner::SW];

    pub fn from_directions(east: bool, north: bool) -> Corner {
        match (east, north) {
            (true, true) => Corner::NE,
            (false, true) => Corner::NW,
            (true, false) => Corner::SE,
            (false, false) => Corner::SW,
        }
    }

    pub fn is_east(self) -> bool {
        matches!(self, Corner::NE | Corner::SE)
    }

    pub fn is_north(self) -> bool {
        matches!(self, Corner::NE | Corner::NW)
    }

    /// East and west exchanged.
    pub fn mirrored(self) -> Corner {
        Corner::from_directions(!self.is_east(), self.is_north())
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Type of a (de)stabilization from the pivot color and the direction from
/// the pivot to the opposite corner.
///
/// Derived once by `examples/derive_type_table.rs`: type II moves are those
/// that keep `(tb-, rot-)`; the result does not depend on the color.
pub fn stabilization_type(_pivot: Color, corner: Corner) -> StabType {
    match corner {
        Corner::NW | Corner::SE => StabType::II,
        Corner::NE | Corner::SW => StabType::I,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Exchange { axis: Axis },
    Stabilization { ty: StabType, corner: Corner, pivot: Color },
    Destabilization { ty: StabType, corner: Corner, pivot: Color },
}

impl MoveKind {
    pub fn stab_type(&self) -> Option<StabType> {
        match *self {
            MoveKind::Exchange { .. } => None,
            MoveKind::Stabilization { ty, .. } | MoveKind::Destabilization { ty, .. } => Some(ty),
        }
    }

    pub fn is_exchange(&self) -> bool {
        matches!(self, MoveKind::Exchange { .. })
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::Exchange { axis: Axis::Vertical } => f.write_str("exchange(vertical)"),
            MoveKind::Exchange { axis: Axis::Horizontal } => f.write_str("exchange(horizontal)"),
            MoveKind::Stabilization { ty, corner, pivot } => write!(f, "stabilization(type {ty}, {corner}, {pivot})"),
            MoveKind::Destabilization { ty, corner, pivot } => {
                write!(f, "destabilization(type {ty}, {corner}, {pivot})")
            }
        }
    }
}

/// Cyclic arc of half-unit positions on a circle of `2n` positions, running
/// in increasing direction from `from` to `to`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: i32,
    pub to: i32,
    modulus: i32,
}

impl Arc {
    fn new(from: Level, to: Level, n: usize) -> Arc {
        let m = 2 * n as i32;
        Arc { from: from.0.rem_euclid(m), to: to.0.rem_euclid(m), modulus: m }
    }

    pub fn contains_level(&self, k: usize) -> bool {
        let p = 2 * k as i32;
        (p - self.from).rem_euclid(self.modulus) <= (self.to - self.from).rem_euclid(self.modulus)
    }
}

/// A rectangle on the torus: column arc times row arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rectangle {
    pub cols: Arc,
    pub rows: Arc,
}

/// Result of applying a move, with the level renumbering.
#[derive(Debug, Clone)]
pub struct Applied {
    pub diagram: GridDiagram,
    pub rect: Rectangle,
    /// New index of each surviving or added column coordinate.
    pub col_index: BTreeMap<Level, usize>,
    pub row_index: BTreeMap<Level, usize>,
    /// Colors given to the added corners, in `MoveSpec::add` order.
    pub added_colors: Vec<Color>,
}

fn check_in_grid(c: &Cell, n: usize) -> Result<(), MoveError> {
    let lim = 2 * n as i32;
    for l in [c.col, c.row] {
        let ok = if l.is_integer() { l.0 >= 0 && l.0 < lim } else { l.0 >= -1 && l.0 < lim };
        if !ok {
            return Err(MoveError::OutOfGrid(*c, n));
        }
    }
    Ok(())
}

fn find_rectangle(d: &GridDiagram, m: &MoveSpec) -> Result<Rectangle, MoveError> {
    let n = d.size();
    let (x1, x2) = m.col_levels();
    let (y1, y2) = m.row_levels();
    let m2 = 2 * n as i32;
    if x1.0.rem_euclid(m2) == x2.0.rem_euclid(m2) || y1.0.rem_euclid(m2) == y2.0.rem_euclid(m2) {
        return Err(MoveError::NotARectangle);
    }
    let mut first_extra = None;
    for (ca, cb) in [(x1, x2), (x2, x1)] {
        for (ra, rb) in [(y1, y2), (y2, y1)] {
            let rect = Rectangle { cols: Arc::new(ca, cb, n), rows: Arc::new(ra, rb, n) };
            let extra = d.vertices().into_iter().find(|v| {
                rect.cols.contains_level(v.col)
                    && rect.rows.contains_level(v.row)
                    && !m.del.contains(&Cell::at(v.col, v.row))
            });
            match extra {
                None => return Ok(rect),
                Some(v) => {
                    first_extra.get_or_insert(Cell::at(v.col, v.row));
                }
            }
        }
    }
    Err(MoveError::ExtraVertex(first_extra.expect("some candidate failed")))
}

/// Checks all three applicability clauses and builds the resulting diagram.
pub fn apply_detailed(d: &GridDiagram, m: &MoveSpec) -> Result<Applied, MoveError> {
    let n = d.size();
    for c in m.del.iter().chain(m.add.iter()) {
        check_in_grid(c, n)?;
    }
    for c in &m.del {
        let (col, row) = (c.col.index().unwrap(), c.row.index().unwrap());
        if d.vertex_at(col, row).is_none() {
            return Err(MoveError::MissingVertex(*c));
        }
    }
    let rect = find_rectangle(d, m)?;

    // (position, color, component); None until forced
    let mut cells: Vec<(Cell, Option<Color>, Option<u32>)> = d
        .vertices()
        .into_iter()
        .filter(|v| !m.del.contains(&Cell::at(v.col, v.row)))
        .map(|v| (Cell::at(v.col, v.row), Some(v.color), Some(d.components()[v.col])))
        .collect();
    let first_added = cells.len();
    for c in &m.add {
        if cells.iter().any(|(p, _, _)| p == c) {
            return Err(MoveError::BadResult(format!("added corner {c} is already a vertex")));
        }
        cells.push((*c, None, None));
    }

    let mut by_col: BTreeMap<Level, Vec<usize>> = BTreeMap::new();
    let mut by_row: BTreeMap<Level, Vec<usize>> = BTreeMap::new();
    for (i, (p, _, _)) in cells.iter().enumerate() {
        by_col.entry(p.col).or_default().push(i);
        by_row.entry(p.row).or_default().push(i);
    }
    for (name, levels) in [("column", &by_col), ("row", &by_row)] {
        for (l, ids) in levels {
            if ids.len() != 2 {
                return Err(MoveError::BadResult(format!("{name} {l} would hold {} vertices", ids.len())));
            }
        }
    }
    let partner = |i: usize, cells: &[(Cell, Option<Color>, Option<u32>)], by: &BTreeMap<Level, Vec<usize>>, col: bool| {
        let key = if col { cells[i].0.col } else { cells[i].0.row };
        let ids = &by[&key];
        if ids[0] == i {
            ids[1]
        } else {
            ids[0]
        }
    };
    loop {
        let mut progress = false;
        for i in first_added..cells.len() {
            for col in [true, false] {
                let by = if col { &by_col } else { &by_row };
                let j = partner(i, &cells, by, col);
                if cells[i].1.is_none() {
                    if let Some(c) = cells[j].1 {
                        cells[i].1 = Some(c.opposite());
                        progress = true;
                    }
                }
                if cells[i].2.is_none() {
                    if let Some(k) = cells[j].2 {
                        cells[i].2 = Some(k);
                        progress = true;
                    }
                }
            }
        }
        if !progress {
            break;
        }
    }
    for (name, levels) in [("column", &by_col), ("row", &by_row)] {
        for (l, ids) in levels {
            let (a, b) = (cells[ids[0]].1, cells[ids[1]].1);
            if a.is_none() || a == b {
                return Err(MoveError::BadResult(format!("{name} {l} would not hold two vertices of opposite colors")));
            }
        }
    }

    let col_index: BTreeMap<Level, usize> = by_col.keys().enumerate().map(|(i, l)| (*l, i)).collect();
    let row_index: BTreeMap<Level, usize> = by_row.keys().enumerate().map(|(i, l)| (*l, i)).collect();
    let new_n = col_index.len();
    let verts: Vec<(usize, usize, Color, u32)> = cells
        .iter()
        .map(|(p, c, k)| (col_index[&p.col], row_index[&p.row], c.unwrap(), k.unwrap()))
        .collect();
    let diagram = GridDiagram::from_vertex_list(new_n, &verts).map_err(|e| MoveError::BadResult(e.to_string()))?;
    let added_colors = cells[first_added..].iter().map(|c| c.1.unwrap()).collect();
    Ok(Applied { diagram, rect, col_index, row_index, added_colors })
}

pub fn applicable(d: &GridDiagram, m: &MoveSpec) -> bool {
    apply_detailed(d, m).is_ok()
}

pub fn apply(d: &GridDiagram, m: &MoveSpec) -> Result<GridDiagram, MoveError> {
    apply_detailed(d, m).map(|a| a.diagram)
}

fn direction(rect: &Rectangle, from: &Cell, n: usize) -> Corner {
    let m = 2 * n as i32;
    let east = rect.cols.from == from.col.0.rem_euclid(m);
    let north = rect.rows.from == from.row.0.rem_euclid(m);
    Corner::from_directions(east, north)
}

/// Classifies an applicable move.
pub fn classify(d: &GridDiagram, m: &MoveSpec) -> Result<MoveKind, MoveError> {
    let applied = apply_detailed(d, m)?;
    classify_applied(d, m, &applied)
}

pub(crate) fn classify_applied(d: &GridDiagram, m: &MoveSpec, applied: &Applied) -> Result<MoveKind, MoveError> {
    let n = d.size();
    match m.del.len() {
        2 => {
            let (a, b) = (m.del[0], m.del[1]);
            if a.col == b.col {
                Ok(MoveKind::Exchange { axis: Axis::Vertical })
            } else if a.row == b.row {
                Ok(MoveKind::Exchange { axis: Axis::Horizontal })
            } else {
                Err(MoveError::NotElementary)
            }
        }
        1 => {
            let v = m.del[0];
            let pivot = d.vertex_at(v.col.index().unwrap(), v.row.index().unwrap()).unwrap().color;
            let corner = direction(&applied.rect, &v, n);
            Ok(MoveKind::Stabilization { ty: stabilization_type(pivot, corner), corner, pivot })
        }
        3 => {
            let a = m.add[0];
            let pivot = applied.added_colors[0];
            let corner = direction(&applied.rect, &a, n);
            Ok(MoveKind::Destabilization { ty: stabilization_type(pivot, corner), corner, pivot })
        }
        _ => Err(MoveError::NotARectangle),
    }
}

/// Adjacent-level transpositions allowed by the rectangle rule.
pub fn enumerate_exchanges(d: &GridDiagram) -> Vec<MoveSpec> {
    let n = d.size();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let (bcol, wcol) = d.row_tables();
    let pair_ok = |a: (usize, usize), b: (usize, usize)| {
        if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
            return false;
        }
        let (lo, hi) = if a.0 < a.1 { (a.0, a.1) } else { (a.1, a.0) };
        let inside = |x: usize| lo < x && x < hi;
        inside(b.0) == inside(b.1)
    };
    for c in 0..n {
        let c2 = (c + 1) % n;
        let a = (d.black()[c], d.white()[c]);
        let b = (d.black()[c2], d.white()[c2]);
        if pair_ok(a, b) {
            let to = Level::after(c2 as i32);
            let del = vec![Cell::at(c, a.0), Cell::at(c, a.1)];
            let add = vec![Cell::new(to, Level::at(a.0)), Cell::new(to, Level::at(a.1))];
            out.push(MoveSpec::new(del, add).expect("rectangle"));
        }
    }
    for r in 0..n {
        let r2 = (r + 1) % n;
        let a = (bcol[r], wcol[r]);
        let b = (bcol[r2], wcol[r2]);
        if pair_ok(a, b) {
            let to = Level::after(r2 as i32);
            let del = vec![Cell::at(a.0, r), Cell::at(a.1, r)];
            let add = vec![Cell::new(Level::at(a.0), to), Cell::new(Level::at(a.1), to)];
            out.push(MoveSpec::new(del, add).expect("rectangle"));
        }
    }
    out
}

/// The small stabilization at `v` towards `corner`.
pub fn stabilization_at(v: Vertex, corner: Corner) -> MoveSpec {
    let c2 = if corner.is_east() { Level::after(v.col as i32) } else { Level::after(v.col as i32 - 1) };
    let r2 = if corner.is_north() { Level::after(v.row as i32) } else { Level::after(v.row as i32 - 1) };
    let (c, r) = (Level::at(v.col), Level::at(v.row));
    MoveSpec::new(vec![Cell::new(c, r)], vec![Cell::new(c, r2), Cell::new(c2, r), Cell::new(c2, r2)]).expect("rectangle")
}

/// All `4 * 2n` small stabilizations, vertex-major.
pub fn enumerate_stabilizations(d: &GridDiagram) -> Vec<(MoveSpec, MoveKind)> {
    let mut out = Vec::with_capacity(8 * d.size());
    for v in d.vertices() {
        for corner in Corner::ALL {
            let m = stabilization_at(v, corner);
            let kind = MoveKind::Stabilization { ty: stabilization_type(v.color, corner), corner, pivot: v.color };
            debug_assert_eq!(classify(d, &m).ok(), Some(kind));
            out.push((m, kind));
        }
    }
    out
}

/// Every stabilization, including those whose rectangle spans several
/// levels. Each is a small one followed by exchange moves.
pub fn enumerate_general_stabilizations(d: &GridDiagram) -> Vec<(MoveSpec, MoveKind)> {
    let n = d.size() as i32;
    let mut out = Vec::new();
    for v in d.vertices() {
        let (c, r) = (Level::at(v.col), Level::at(v.row));
        for c2 in -1..n {
            for r2 in -1..n {
                let add = vec![Cell::new(c, Level::after(r2)), Cell::new(Level::after(c2), r), Cell::new(Level::after(c2), Level::after(r2))];
                let Ok(m) = MoveSpec::new(vec![Cell::new(c, r)], add) else { continue };
                if let Ok(kind) = classify(d, &m) {
                    out.push((m, kind));
                }
            }
        }
    }
    out
}

/// All applicable destabilizations; at most one per vertex.
pub fn enumerate_destabilizations(d: &GridDiagram) -> Vec<(MoveSpec, MoveKind)> {
    let n = d.size();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let (bcol, wcol) = d.row_tables();
    for s in d.vertices() {
        let q_row = match s.color {
            Color::Black => d.white()[s.col],
            Color::White => d.black()[s.col],
        };
        let p_col = match s.color {
            Color::Black => wcol[s.row],
            Color::White => bcol[s.row],
        };
        let del = vec![Cell::at(s.col, s.row), Cell::at(s.col, q_row), Cell::at(p_col, s.row)];
        let add = vec![Cell::at(p_col, q_row)];
        let m = match MoveSpec::new(del, add) {
            Ok(m) => m,
            Err(_) => continue,
        };
        if let Ok(applied) = apply_detailed(d, &m) {
            if let Ok(kind) = classify_applied(d, &m, &applied) {
                out.push((m, kind));
            }
        }
    }
    out
}

/// Position of a vanished level relative to the surviving ones, as a fresh
/// half-integer of the new numbering.
fn fresh_position(old: Level, index: &BTreeMap<Level, usize>) -> Level {
    match index.range(..old).next_back() {
        Some((_, &k)) => Level::after(k as i32),
        None => Level::after(-1),
    }
}

/// The move on `d_post` that undoes `m`, where `d_post` is `apply(d_pre, m)`
/// up to a cyclic shift.
pub fn invert(m: &MoveSpec, d_pre: &GridDiagram, d_post: &GridDiagram) -> Result<MoveSpec, MoveError> {
    let applied = apply_detailed(d_pre, m)?;
    let (a, b) = crate::grid::find_shift(&applied.diagram, d_post)
        .ok_or_else(|| MoveError::BadResult("d_post is not the result of the move".into()))?;
    let n = applied.diagram.size() as i32;
    let shifted = |l: Level, by: usize| {
        let h = (l.0 + 2 * by as i32).rem_euclid(2 * n);
        Level(if h == 2 * n - 1 { -1 } else { h })
    };
    let map_col = |l: Level| {
        let k = applied.col_index.get(&l).map(|&k| Level::at(k)).unwrap_or_else(|| fresh_position(l, &applied.col_index));
        shifted(k, a)
    };
    let map_row = |l: Level| {
        let k = applied.row_index.get(&l).map(|&k| Level::at(k)).unwrap_or_else(|| fresh_position(l, &applied.row_index));
        shifted(k, b)
    };
    let del = m.add.iter().map(|c| Cell::new(map_col(c.col), map_row(c.row))).collect();
    let add = m.del.iter().map(|c| Cell::new(map_col(c.col), map_row(c.row))).collect();
    MoveSpec::new(del, add)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{canonicalize, equivalent};

    fn half(k: i32) -> Level {
        Level::after(k)
    }

    #[test]
    fn level_text_round_trip() {
        for s in ["0", "7", "3+1/2", "-1+1/2"] {
            assert_eq!(s.parse::<Level>().unwrap().to_string(), s);
        }
        assert!("x".parse::<Level>().is_err());
        assert!("-1".parse::<Level>().is_err());
    }

    #[test]
    fn malformed_rectangles_rejected() {
        let e = MoveSpec::new(vec![Cell::at(0, 0)], vec![Cell::at(1, 1), Cell::at(2, 2), Cell::at(0, 2)]);
        assert_eq!(e, Err(MoveError::NotARectangle));
        let e = MoveSpec::new(vec![Cell::at(0, 0), Cell::at(1, 1)], vec![Cell::at(0, 1)]);
        assert_eq!(e, Err(MoveError::NotARectangle));
    }

    #[test]
    fn slide_into_fresh_column() {
        let u = GridDiagram::unknot();
        let m = MoveSpec::new(
            vec![Cell::at(0, 0), Cell::at(0, 1)],
            vec![Cell::new(half(0), Level::at(0)), Cell::new(half(0), Level::at(1))],
        )
        .unwrap();
        assert!(applicable(&u, &m));
        let r = apply(&u, &m).unwrap();
        assert!(equivalent(&r, &u));
        assert_eq!(classify(&u, &m).unwrap(), MoveKind::Exchange { axis: Axis::Vertical });
    }

    #[test]
    fn slide_across_the_seam() {
        let u = GridDiagram::unknot();
        let m = MoveSpec::new(
            vec![Cell::at(0, 0), Cell::at(0, 1)],
            vec![Cell::new(half(1), Level::at(0)), Cell::new(half(1), Level::at(1))],
        )
        .unwrap();
        assert!(equivalent(&apply(&u, &m).unwrap(), &u));
        assert!(enumerate_exchanges(&u).is_empty());
        let blocked = MoveSpec::new(
            vec![Cell::at(0, 0), Cell::at(0, 2)],
            vec![Cell::new(half(1), Level::at(0)), Cell::new(half(1), Level::at(2))],
        )
        .unwrap();
        let d = GridDiagram::new(vec![0, 1, 2], vec![2, 0, 1]).unwrap();
        assert!(!applicable(&d, &blocked));
    }

    #[test]
    fn diagonal_pair_is_not_elementary() {
        let d = GridDiagram::new(vec![0, 1, 2], vec![1, 2, 0]).unwrap();
        let m = MoveSpec::new(vec![Cell::at(0, 0), Cell::at(1, 1)], vec![Cell::at(0, 1), Cell::at(1, 0)]).unwrap();
        assert!(classify(&d, &m).is_err());
    }

    #[test]
    fn stabilize_and_destabilize_unknot() {
        let u = GridDiagram::unknot();
        let stabs = enumerate_stabilizations(&u);
        assert_eq!(stabs.len(), 16);
        for (m, kind) in &stabs {
            let s = apply(&u, m).unwrap();
            assert_eq!(s.size(), 3);
            assert_eq!(s.component_count(), 1);
            assert_eq!(classify(&u, m).unwrap(), *kind);
            let inv = invert(m, &u, &s).unwrap();
            let back = apply(&s, &inv).unwrap();
            assert_eq!(canonicalize(&back), canonicalize(&u));
            match (kind, classify(&s, &inv).unwrap()) {
                (
                    MoveKind::Stabilization { ty, corner, pivot },
                    MoveKind::Destabilization { ty: t2, corner: c2, pivot: p2 },
                ) => assert_eq!((*ty, *corner, *pivot), (t2, c2, p2)),
                other => panic!("unexpected {other:?}"),
            }
            assert!(enumerate_destabilizations(&s).iter().any(|(d, _)| d == &inv));
        }
        assert!(enumerate_destabilizations(&u).is_empty());
    }

    #[test]
    fn stabilization_corner_is_read_from_the_pivot() {
        let u = GridDiagram::unknot();
        let v = u.vertex_at(0, 0).unwrap();
        for corner in Corner::ALL {
            let m = stabilization_at(v, corner);
            match classify(&u, &m).unwrap() {
                MoveKind::Stabilization { corner: c, pivot, .. } => {
                    assert_eq!(c, corner);
                    assert_eq!(pivot, Color::Black);
                }
                k => panic!("{k:?}"),
            }
        }
    }

    #[test]
    fn exchange_round_trip() {
        let d = GridDiagram::new(vec![0, 2, 4, 1, 3], vec![3, 0, 2, 4, 1]).unwrap();
        for m in enumerate_exchanges(&d) {
            let r = apply(&d, &m).unwrap();
            assert_eq!(r.size(), d.size());
            let inv = invert(&m, &d, &r).unwrap();
            let rs = r.shift(1, 2);
            let inv2 = invert(&m, &d, &rs).unwrap();
            assert_eq!(canonicalize(&apply(&rs, &inv2).unwrap()), canonicalize(&d));
            assert!(classify(&r, &inv).unwrap().is_exchange());
            assert_eq!(canonicalize(&apply(&r, &inv).unwrap()), canonicalize(&d));
        }
    }
}
