//! Rectangular diagrams on the cyclic `n x n` grid.
//!
//! Columns and rows carry only a cyclic order. A diagram stores, for every
//! column, the row of its black vertex and the row of its white vertex,
//! together with the component number of that column (both vertices of a
//! column lie on the same component).

use std::fmt;

use thiserror::Error;

/// Vertex color. A black vertex starts a vertical edge, a white vertex ends it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Black => f.write_str("black"),
            Color::White => f.write_str("white"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub col: usize,
    pub row: usize,
    pub color: Color,
}

/// One failed invariant found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("grid size must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("{name} has length {len}, expected {n}")]
    Length { name: &'static str, len: usize, n: usize },
    #[error("{name}({col})={row} is out of range")]
    OutOfRange { name: &'static str, col: usize, row: usize },
    #[error("{0} not a bijection")]
    NotBijection(&'static str),
    #[error("black({col})=white({col})")]
    Coincident { col: usize },
    #[error("component numbers are not surjective onto 1..{k}")]
    ComponentsNotSurjective { k: u32 },
    #[error("component number changes along the traversal at column {col}")]
    ComponentNotConstant { col: usize },
}

/// Raw, unvalidated diagram data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramParts {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    /// Component of each column; `None` means "trace and number automatically".
    pub comp: Option<Vec<u32>>,
}

/// Checks every diagram invariant. Returns all violations found, empty if ok.
pub fn validate(parts: &DiagramParts) -> Vec<Violation> {
    let n = parts.black.len();
    let mut out = Vec::new();
    if n < 2 {
        out.push(Violation::TooSmall(n));
    }
    if parts.white.len() != n {
        out.push(Violation::Length { name: "white", len: parts.white.len(), n });
    }
    if let Some(comp) = &parts.comp {
        if comp.len() != n {
            out.push(Violation::Length { name: "comp", len: comp.len(), n });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut perm_ok = true;
    for (name, perm) in [("black", &parts.black), ("white", &parts.white)] {
        let mut seen = vec![false; n];
        let mut bijective = true;
        for (col, &row) in perm.iter().enumerate() {
            if row >= n {
                out.push(Violation::OutOfRange { name, col, row });
                bijective = false;
            } else if seen[row] {
                bijective = false;
            } else {
                seen[row] = true;
            }
        }
        if !bijective {
            out.push(Violation::NotBijection(name));
            perm_ok = false;
        }
    }
    for col in 0..n {
        if parts.black[col] == parts.white[col] {
            out.push(Violation::Coincident { col });
        }
    }
    if !perm_ok || !out.is_empty() {
        return out;
    }
    if let Some(comp) = &parts.comp {
        let traced = trace_columns(&parts.black, &parts.white);
        for cycle in &traced {
            let label = comp[cycle[0]];
            for &col in cycle {
                if comp[col] != label {
                    out.push(Violation::ComponentNotConstant { col });
                }
            }
        }
        let k = comp.iter().copied().max().unwrap_or(0);
        let mut used = vec![false; k as usize + 1];
        for &c in comp {
            used[c as usize] = true;
        }
        if k == 0 || used[0] || used.iter().skip(1).any(|u| !u) {
            out.push(Violation::ComponentsNotSurjective { k });
        }
    }
    out
}

/// Column cycles of the traversal: from column `c` follow the column edge to
/// the white vertex, then the row edge to the black vertex of that row.
fn trace_columns(black: &[usize], white: &[usize]) -> Vec<Vec<usize>> {
    let n = black.len();
    let mut black_in_row = vec![0; n];
    for (c, &r) in black.iter().enumerate() {
        black_in_row[r] = c;
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            cycle.push(c);
            c = black_in_row[white[c]];
        }
        cycles.push(cycle);
    }
    cycles
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidDiagram(pub Vec<Violation>);

/// A valid rectangular diagram with integer levels `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDiagram {
    black: Vec<usize>,
    white: Vec<usize>,
    comp: Vec<u32>,
}

impl fmt::Debug for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridDiagram(black={:?}, white={:?}, comp={:?})", self.black, self.white, self.comp)
    }
}

impl GridDiagram {
    pub fn from_parts(parts: DiagramParts) -> Result<Self, InvalidDiagram> {
        let violations = validate(&parts);
        if !violations.is_empty() {
            return Err(InvalidDiagram(violations));
        }
        let comp = match parts.comp {
            Some(c) => c,
            None => numbering_from_trace(&parts.black, &parts.white),
        };
        Ok(GridDiagram { black: parts.black, white: parts.white, comp })
    }

    /// Builds a diagram and numbers its components automatically.
    pub fn new(black: Vec<usize>, white: Vec<usize>) -> Result<Self, InvalidDiagram> {
        Self::from_parts(DiagramParts { black, white, comp: None })
    }

    pub fn with_components(black: Vec<usize>, white: Vec<usize>, comp: Vec<u32>) -> Result<Self, InvalidDiagram> {
        Self::from_parts(DiagramParts { black, white, comp: Some(comp) })
    }

    /// Builds without validation. Callers guarantee the invariants.
    pub(crate) fn from_raw(black: Vec<usize>, white: Vec<usize>, comp: Vec<u32>) -> Self {
        debug_assert!(validate(&DiagramParts {
            black: black.clone(),
            white: white.clone(),
            comp: Some(comp.clone())
        })
        .is_empty());
        GridDiagram { black, white, comp }
    }

    /// The smallest diagram: the 2x2 unknot.
    pub fn unknot() -> Self {
        GridDiagram { black: vec![0, 1], white: vec![1, 0], comp: vec![1, 1] }
    }

    /// A uniformly random valid diagram of size `n >= 2` (any number of components).
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        assert!(n >= 2);
        let mut black: Vec<usize> = (0..n).collect();
        black.shuffle(rng);
        let mut white: Vec<usize> = (0..n).collect();
        loop {
            white.shuffle(rng);
            if (0..n).all(|c| black[c] != white[c]) {
                break;
            }
        }
        let comp = numbering_from_trace(&black, &white);
        Self::from_raw(black, white, comp)
    }

    /// A random one-component diagram of size `n >= 2`.
    pub fn random_knot<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let d = Self::random(n, rng);
            if d.component_count() == 1 {
                return d;
            }
        }
    }

    pub fn size(&self) -> usize {
        self.black.len()
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    pub fn white(&self) -> &[usize] {
        &self.white
    }

    /// Component number of each column.
    pub fn components(&self) -> &[u32] {
        &self.comp
    }

    pub fn component_count(&self) -> u32 {
        self.comp.iter().copied().max().unwrap_or(0)
    }

    pub fn parts(&self) -> DiagramParts {
        DiagramParts { black: self.black.clone(), white: self.white.clone(), comp: Some(self.comp.clone()) }
    }

    /// Row of the vertex of `color` in column `col`.
    pub fn row_of(&self, col: usize, color: Color) -> usize {
        match color {
            Color::Black => self.black[col],
            Color::White => self.white[col],
        }
    }

    /// Column of the vertex of `color` in row `row`.
    pub fn col_of(&self, row: usize, color: Color) -> usize {
        let perm = match color {
            Color::Black => &self.black,
            Color::White => &self.white,
        };
        perm.iter().position(|&r| r == row).expect("permutation")
    }

    /// Inverse permutations: `(black_col_of_row, white_col_of_row)`.
    pub fn row_tables(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.size();
        let mut b = vec![0; n];
        let mut w = vec![0; n];
        for c in 0..n {
            b[self.black[c]] = c;
            w[self.white[c]] = c;
        }
        (b, w)
    }

    /// All `2n` vertices, black and white of column 0 first, and so on.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = Vec::with_capacity(2 * self.size());
        for c in 0..self.size() {
            v.push(Vertex { col: c, row: self.black[c], color: Color::Black });
            v.push(Vertex { col: c, row: self.white[c], color: Color::White });
        }
        v
    }

    pub fn vertex_at(&self, col: usize, row: usize) -> Option<Vertex> {
        if col >= self.size() {
            return None;
        }
        if self.black[col] == row {
            Some(Vertex { col, row, color: Color::Black })
        } else if self.white[col] == row {
            Some(Vertex { col, row, color: Color::White })
        } else {
            None
        }
    }

    /// Independent cyclic shift: column `c` goes to `c + a`, row `r` to `r + b`.
    pub fn shift(&self, a: usize, b: usize) -> GridDiagram {
        let n = self.size();
        let (a, b) = (a % n, b % n);
        let mut black = vec![0; n];
        let mut white = vec![0; n];
        let mut comp = vec![0; n];
        for c in 0..n {
            let nc = (c + a) % n;
            black[nc] = (self.black[c] + b) % n;
            white[nc] = (self.white[c] + b) % n;
            comp[nc] = self.comp[c];
        }
        GridDiagram { black, white, comp }
    }

    /// Swaps the two colors, which reverses the orientation of every component.
    pub fn reversed(&self) -> GridDiagram {
        GridDiagram { black: self.white.clone(), white: self.black.clone(), comp: self.comp.clone() }
    }

    /// Builds a diagram from an arbitrary vertex list with colors. Component
    /// labels are given per vertex and must be consistent along levels.
    pub(crate) fn from_vertex_list(n: usize, verts: &[(usize, usize, Color, u32)]) -> Result<Self, InvalidDiagram> {
        let mut black = vec![usize::MAX; n];
        let mut white = vec![usize::MAX; n];
        let mut comp = vec![0u32; n];
        for &(c, r, color, k) in verts {
            if c >= n || r >= n {
                return Err(InvalidDiagram(vec![Violation::OutOfRange { name: "vertex", col: c, row: r }]));
            }
            let slot = match color {
                Color::Black => &mut black[c],
                Color::White => &mut white[c],
            };
            if *slot != usize::MAX {
                return Err(InvalidDiagram(vec![Violation::NotBijection(match color {
                    Color::Black => "black",
                    Color::White => "white",
                })]));
            }
            *slot = r;
            comp[c] = k;
        }
        if black.iter().chain(white.iter()).any(|&r| r == usize::MAX) {
            return Err(InvalidDiagram(vec![Violation::NotBijection("black")]));
        }
        GridDiagram::with_components(black, white, comp)
    }

    /// Vertex (c, r) goes to (n-1-r, n-1-c) with colors swapped.
    pub fn reflect_antidiagonal(&self) -> GridDiagram {
        let n = self.size();
        let verts: Vec<_> = self
            .vertices()
            .into_iter()
            .map(|v| (n - 1 - v.row, n - 1 - v.col, v.color.opposite(), self.comp[v.col]))
            .collect();
        GridDiagram::from_vertex_list(n, &verts).expect("reflection of a valid diagram")
    }

    /// Reverses the column order, colors kept.
    pub fn reflect_vertical(&self) -> GridDiagram {
        let n = self.size();
        let mut black = self.black.clone();
        let mut white = self.white.clone();
        let mut comp = self.comp.clone();
        black.reverse();
        white.reverse();
        comp.reverse();
        debug_assert_eq!(n, black.len());
        GridDiagram { black, white, comp }
    }

    /// Reverses the row order, colors kept.
    pub fn reflect_horizontal(&self) -> GridDiagram {
        let n = self.size();
        GridDiagram {
            black: self.black.iter().map(|&r| n - 1 - r).collect(),
            white: self.white.iter().map(|&r| n - 1 - r).collect(),
            comp: self.comp.clone(),
        }
    }

    /// (c, r) goes to (n-1-c, n-1-r), colors kept.
    pub fn rotate180(&self) -> GridDiagram {
        self.reflect_vertical().reflect_horizontal()
    }

    /// Transposition (c, r) -> (r, c) with colors swapped.
    pub fn reflect_diagonal(&self) -> GridDiagram {
        let n = self.size();
        let verts: Vec<_> = self
            .vertices()
            .into_iter()
            .map(|v| (v.row, v.col, v.color.opposite(), self.comp[v.col]))
            .collect();
        GridDiagram::from_vertex_list(n, &verts).expect("reflection of a valid diagram")
    }

    pub fn canonicalize(&self) -> CanonicalForm {
        canonicalize(self)
    }

    pub fn trace_components(&self) -> Vec<ComponentTrace> {
        trace_components(self)
    }
}

fn numbering_from_trace(black: &[usize], white: &[usize]) -> Vec<u32> {
    let n = black.len();
    let mut comp = vec![0; n];
    for (i, cycle) in trace_columns(black, white).iter().enumerate() {
        for &c in cycle {
            comp[c] = i as u32 + 1;
        }
    }
    comp
}

/// One traced component: its vertices in traversal order, starting at the
/// black vertex of its smallest column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTrace {
    /// Number assigned by first occurrence (1-based).
    pub index: u32,
    /// Label carried by the diagram.
    pub label: u32,
    pub vertices: Vec<Vertex>,
}

/// Orbits of the traversal (column edges black to white, row edges white to
/// black), numbered 1..k in order of their smallest column.
pub fn trace_components(d: &GridDiagram) -> Vec<ComponentTrace> {
    trace_columns(&d.black, &d.white)
        .into_iter()
        .enumerate()
        .map(|(i, cycle)| {
            let mut vertices = Vec::with_capacity(2 * cycle.len());
            for c in &cycle {
                vertices.push(Vertex { col: *c, row: d.black[*c], color: Color::Black });
                vertices.push(Vertex { col: *c, row: d.white[*c], color: Color::White });
            }
            ComponentTrace { index: i as u32 + 1, label: d.comp[cycle[0]], vertices }
        })
        .collect()
}

/// A diagram in its lexicographically minimal cyclic shift.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(GridDiagram);

impl CanonicalForm {
    pub fn diagram(&self) -> &GridDiagram {
        &self.0
    }

    pub fn into_diagram(self) -> GridDiagram {
        self.0
    }

    /// Flat encoding `black ++ white ++ comp`, the order used for minimality.
    pub fn encoding(&self) -> Vec<u32> {
        let d = &self.0;
        d.black
            .iter()
            .chain(d.white.iter())
            .map(|&x| x as u32)
            .chain(d.comp.iter().copied())
            .collect()
    }
}

/// Minimal encoding over all `n^2` shifts. Only shifts moving some black
/// vertex to row 0 of column 0 can be minimal, so `n` candidates are compared.
pub fn canonicalize(d: &GridDiagram) -> CanonicalForm {
    let n = d.size();
    let mut best: Option<GridDiagram> = None;
    for src in 0..n {
        let a = (n - src) % n;
        let b = (n - d.black[src]) % n;
        let cand = d.shift(a, b);
        match &best {
            Some(cur) if !less(&cand, cur) => {}
            _ => best = Some(cand),
        }
    }
    CanonicalForm(best.expect("n >= 2"))
}

fn less(x: &GridDiagram, y: &GridDiagram) -> bool {
    (&x.black, &x.white, &x.comp) < (&y.black, &y.white, &y.comp)
}

/// Combinatorial equivalence: equal canonical forms.
pub fn equivalent(d1: &GridDiagram, d2: &GridDiagram) -> bool {
    d1.size() == d2.size() && canonicalize(d1) == canonicalize(d2)
}

/// Finds `(a, b)` with `d.shift(a, b) == target`, if any.
pub fn find_shift(d: &GridDiagram, target: &GridDiagram) -> Option<(usize, usize)> {
    let n = d.size();
    if target.size() != n {
        return None;
    }
    for a in 0..n {
        let b = (target.black[0] + n - d.black[(n - a) % n]) % n;
        if &d.shift(a, b) == target {
            return Some((a, b));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GridDiagram {
        GridDiagram::new(vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap()
    }

    #[test]
    fn smallest_diagram_is_valid() {
        let parts = DiagramParts { black: vec![0, 1], white: vec![1, 0], comp: Some(vec![1, 1]) };
        assert!(validate(&parts).is_empty());
    }

    #[test]
    fn coincident_vertices_rejected() {
        let parts = DiagramParts { black: vec![0, 1], white: vec![0, 1], comp: None };
        let v = validate(&parts);
        assert!(v.contains(&Violation::Coincident { col: 0 }));
        assert_eq!(v[0].to_string(), "black(0)=white(0)");
    }

    #[test]
    fn non_bijective_black_rejected() {
        let parts = DiagramParts { black: vec![0, 0], white: vec![1, 0], comp: None };
        let v = validate(&parts);
        assert!(v.iter().any(|x| x.to_string() == "black not a bijection"));
    }

    #[test]
    fn bad_component_labels_rejected() {
        let parts = DiagramParts { black: vec![0, 1], white: vec![1, 0], comp: Some(vec![1, 2]) };
        assert!(validate(&parts).iter().any(|v| matches!(v, Violation::ComponentNotConstant { .. })));
        let parts = DiagramParts { black: vec![0, 1], white: vec![1, 0], comp: Some(vec![2, 2]) };
        assert!(validate(&parts).iter().any(|v| matches!(v, Violation::ComponentsNotSurjective { .. })));
    }

    #[test]
    fn traces() {
        assert_eq!(trace_components(&GridDiagram::unknot()).len(), 1);
        assert_eq!(trace_components(&GridDiagram::unknot())[0].vertices.len(), 4);
        let two = GridDiagram::new(vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap();
        let t = trace_components(&two);
        assert_eq!(t.len(), 2);
        assert_eq!(two.components(), &[1, 1, 2, 2]);
        assert_eq!(trace_components(&trefoil()).len(), 1);
    }

    #[test]
    fn canonical_form_basics() {
        let u = GridDiagram::unknot();
        assert_eq!(canonicalize(&u).diagram(), &u);
        let t = trefoil();
        let c = canonicalize(&t);
        assert_eq!(canonicalize(c.diagram()), c);
        assert_eq!(canonicalize(&t.shift(3, 1)), c);
        assert!(equivalent(&t, &t.shift(2, 4)));
        let u3 = GridDiagram::new(vec![0, 1, 2], vec![1, 2, 0]).unwrap();
        assert!(!equivalent(&u, &u3));
    }

    #[test]
    fn find_shift_recovers_offsets() {
        let t = trefoil();
        let s = t.shift(3, 2);
        let (a, b) = find_shift(&t, &s).unwrap();
        assert_eq!(t.shift(a, b), s);
    }

    #[test]
    fn reflections_are_involutions() {
        let t = trefoil();
        assert!(equivalent(&t.reflect_antidiagonal().reflect_antidiagonal(), &t));
        assert_eq!(t.reflect_vertical().reflect_vertical(), t);
        assert_eq!(t.rotate180().rotate180(), t);
        assert!(equivalent(&GridDiagram::unknot().reflect_antidiagonal(), &GridDiagram::unknot()));
        assert_eq!(t.rotate180(), t.reflect_horizontal().reflect_vertical());
    }
}
