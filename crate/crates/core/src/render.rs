//! SVG and ASCII pictures of diagrams. Row 0 is drawn at the bottom.

use std::fmt::Write as _;

use crate::grid::{Color, GridDiagram};
use crate::moves::{apply_detailed, Arc, MoveError, MoveSpec};

const CELL: f64 = 40.0;
const MARGIN: f64 = 20.0;
const RADIUS: f64 = 7.0;

fn x_of(half: i32) -> f64 {
    MARGIN + CELL / 2.0 + half as f64 * CELL / 2.0
}

fn y_of(half: i32, n: usize) -> f64 {
    MARGIN + n as f64 * CELL - CELL / 2.0 - half as f64 * CELL / 2.0
}

/// Pieces of a cyclic arc as linear half-unit intervals; a wrapping arc is cut
/// at the border of the picture.
fn pieces(a: &Arc, n: usize) -> Vec<(i32, i32)> {
    let top = 2 * n as i32 - 1;
    if a.from <= a.to {
        vec![(a.from, a.to)]
    } else {
        vec![(a.from, top), (-1, a.to)]
    }
}

/// SVG with one `<line class="edge">` per edge and one `<circle>` per
/// vertex. With `overlay`, the move's rectangle is drawn underneath.
pub fn render_svg(d: &GridDiagram, overlay: Option<&MoveSpec>) -> Result<String, MoveError> {
    let n = d.size();
    let size = 2.0 * MARGIN + n as f64 * CELL;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#).unwrap();
    writeln!(s, r##"<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>"##).unwrap();
    for i in 0..=n {
        let p = MARGIN + i as f64 * CELL;
        let (lo, hi) = (MARGIN, MARGIN + n as f64 * CELL);
        writeln!(s, r##"<path class="grid" d="M{p} {lo}V{hi}M{lo} {p}H{hi}" stroke="#dddddd" stroke-width="1"/>"##).unwrap();
    }
    if let Some(m) = overlay {
        let rect = apply_detailed(d, m)?.rect;
        for (c0, c1) in pieces(&rect.cols, n) {
            for (r0, r1) in pieces(&rect.rows, n) {
                let (x0, x1) = (x_of(c0), x_of(c1));
                let (y0, y1) = (y_of(r1, n), y_of(r0, n));
                writeln!(
                    s,
                    r##"<rect class="move" x="{x0}" y="{y0}" width="{}" height="{}" fill="#f4c430" fill-opacity="0.35" stroke="#c08000"/>"##,
                    x1 - x0,
                    y1 - y0
                )
                .unwrap();
            }
        }
    }
    let (row_black, row_white) = d.row_tables();
    for c in 0..n {
        let x = x_of(2 * c as i32);
        let (a, b) = (y_of(2 * d.black()[c] as i32, n), y_of(2 * d.white()[c] as i32, n));
        writeln!(s, r##"<line class="edge" x1="{x}" y1="{a}" x2="{x}" y2="{b}" stroke="#000000" stroke-width="2"/>"##).unwrap();
    }
    for r in 0..n {
        let y = y_of(2 * r as i32, n);
        let (a, b) = (x_of(2 * row_white[r] as i32), x_of(2 * row_black[r] as i32));
        writeln!(s, r##"<line class="edge" x1="{a}" y1="{y}" x2="{b}" y2="{y}" stroke="#000000" stroke-width="2"/>"##).unwrap();
    }
    for v in d.vertices() {
        let fill = match v.color {
            Color::Black => "#000000",
            Color::White => "#ffffff",
        };
        let (x, y) = (x_of(2 * v.col as i32), y_of(2 * v.row as i32, n));
        writeln!(s, r##"<circle class="{}" cx="{x}" cy="{y}" r="{RADIUS}" fill="{fill}" stroke="#000000" stroke-width="1.5"/>"##, v.color)
            .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Text picture: `X` black, `O` white, vertical edges pass over horizontal ones.
pub fn render_ascii(d: &GridDiagram) -> String {
    let n = d.size();
    let w = 2 * n - 1;
    let mut g = vec![vec![' '; w]; n];
    let (row_black, row_white) = d.row_tables();
    for (r, line) in g.iter_mut().enumerate() {
        let (a, b) = (row_white[r].min(row_black[r]), row_white[r].max(row_black[r]));
        for ch in &mut line[2 * a..=2 * b] {
            *ch = '-';
        }
    }
    for c in 0..n {
        let (a, b) = (d.black()[c].min(d.white()[c]), d.black()[c].max(d.white()[c]));
        for line in &mut g[a..=b] {
            line[2 * c] = '|';
        }
    }
    for v in d.vertices() {
        g[v.row][2 * v.col] = match v.color {
            Color::Black => 'X',
            Color::White => 'O',
        };
    }
    let mut out = String::new();
    for line in g.iter().rev() {
        out.push_str(line.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_pictures() {
        let u = GridDiagram::unknot();
        let svg = render_svg(&u, None).unwrap();
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches(r#"class="edge""#).count(), 4);
        assert_eq!(render_ascii(&u).lines().count(), 2);
    }

    #[test]
    fn overlay_needs_an_applicable_move() {
        let u = GridDiagram::unknot();
        let (m, _) = crate::moves::enumerate_stabilizations(&u)[0].clone();
        assert!(render_svg(&u, Some(&m)).unwrap().contains(r#"class="move""#));
        let bad = crate::script::parse_move(r#"{"del":[[0,0],[0,1]],"add":[[1,0],[1,1]]}"#).unwrap();
        assert!(render_svg(&u, Some(&bad)).is_err());
    }
}
