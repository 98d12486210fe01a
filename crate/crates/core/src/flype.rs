//! Realization of the anti-diagonal symmetry by elementary moves.
//!
//! Positions live on a torus of circumference 4 (one unit is a quarter turn).
//! A diagram is first placed with all vertices in the open square
//! `(3,4) x (0,1)`. The map `F(theta, phi) = (-phi - 1, 1 - theta)` with colors
//! swapped is the reflection in the anti-diagonal followed by a translation.
//! Vertices are processed by nondecreasing `theta - phi`; the move for vertex
//! `v` uses the rectangle with `v` at its bottom-right corner and `F(v)` at its
//! top-left corner.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{find_shift, Color, GridDiagram};
use crate::moves::{apply_detailed, Cell, Level, MoveError, MoveSpec};
use crate::script::{conjugate_by_reflection, Failure, KindMask, MoveScript};

pub type Q = Ratio<i64>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// Reduces a coordinate into `[0, 4)`.
fn wrap(x: Q) -> Q {
    let four = q(4);
    let k = (x / four).floor();
    x - k * four
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedVertex {
    pub theta: Q,
    pub phi: Q,
    pub color: Color,
    pub comp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPlacement {
    pub vertices: Vec<PlacedVertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlypeError {
    #[error("placement does not describe a diagram: {0}")]
    BadPlacement(String),
    #[error("move {index} of the generated sequence is inapplicable: {error}")]
    Inapplicable { index: usize, error: MoveError },
    #[error("generated script failed verification: {0}")]
    Verification(Failure),
}

/// Column `i` goes to `3 + (2i+1)/(2n) + i/(8n^2)` and row `j` to
/// `(2j+1)/(2n)`; the small offset keeps all `theta - phi` distinct.
pub fn normalize(d: &GridDiagram) -> RationalPlacement {
    let n = d.size() as i64;
    let theta = |i: usize| q(3) + Q::new(2 * i as i64 + 1, 2 * n) + Q::new(i as i64, 8 * n * n);
    let phi = |j: usize| Q::new(2 * j as i64 + 1, 2 * n);
    RationalPlacement {
        vertices: d
            .vertices()
            .into_iter()
            .map(|v| PlacedVertex { theta: theta(v.col), phi: phi(v.row), color: v.color, comp: d.components()[v.col] })
            .collect(),
    }
}

fn sorted_levels(vals: impl Iterator<Item = Q>) -> Vec<Q> {
    let mut v: Vec<Q> = vals.map(wrap).collect();
    v.sort();
    v.dedup();
    v
}

/// The diagram whose level order is the order of coordinates in `[0, 4)`.
pub fn discretize(p: &RationalPlacement) -> Result<GridDiagram, FlypeError> {
    let cols = sorted_levels(p.vertices.iter().map(|v| v.theta));
    let rows = sorted_levels(p.vertices.iter().map(|v| v.phi));
    if cols.len() != rows.len() || 2 * cols.len() != p.vertices.len() {
        return Err(FlypeError::BadPlacement("levels must hold exactly two vertices".into()));
    }
    let verts: Vec<(usize, usize, Color, u32)> = p
        .vertices
        .iter()
        .map(|v| {
            let c = cols.binary_search(&wrap(v.theta)).unwrap();
            let r = rows.binary_search(&wrap(v.phi)).unwrap();
            (c, r, v.color, v.comp)
        })
        .collect();
    GridDiagram::from_vertex_list(cols.len(), &verts).map_err(|e| FlypeError::BadPlacement(e.to_string()))
}

pub fn flype_point(theta: Q, phi: Q) -> (Q, Q) {
    (wrap(-phi - q(1)), wrap(q(1) - theta))
}

/// `F` applied to every vertex, colors swapped.
pub fn flype_map(p: &RationalPlacement) -> RationalPlacement {
    RationalPlacement {
        vertices: p
            .vertices
            .iter()
            .map(|v| {
                let (theta, phi) = flype_point(v.theta, v.phi);
                PlacedVertex { theta, phi, color: v.color.opposite(), comp: v.comp }
            })
            .collect(),
    }
}

/// A diagram together with the torus coordinates of its levels.
struct State {
    d: GridDiagram,
    cols: Vec<Q>,
    rows: Vec<Q>,
}

impl State {
    fn level(levels: &[Q], x: Q) -> Level {
        match levels.binary_search(&x) {
            Ok(i) => Level::at(i),
            Err(i) => Level::after(i as i32 - 1),
        }
    }

    fn cell(&self, theta: Q, phi: Q) -> Cell {
        Cell::new(Self::level(&self.cols, theta), Self::level(&self.rows, phi))
    }

    fn has_vertex(&self, theta: Q, phi: Q) -> bool {
        match (self.cols.binary_search(&theta), self.rows.binary_search(&phi)) {
            (Ok(c), Ok(r)) => self.d.vertex_at(c, r).is_some(),
            _ => false,
        }
    }
}

fn new_levels(old: &[Q], index: &std::collections::BTreeMap<Level, usize>, fresh: &[Q]) -> Vec<Q> {
    let mut out = vec![q(0); index.len()];
    for (l, &i) in index {
        out[i] = if l.is_integer() {
            old[l.index().unwrap()]
        } else {
            let below = (l.half_units() - 1).div_euclid(2);
            *fresh
                .iter()
                .find(|x| old.iter().filter(|y| y < x).count() as i32 - 1 == below && !old.contains(x))
                .expect("fresh level has a coordinate")
        };
    }
    out
}

/// The move sequence taking `d` to `discretize(F(normalize(d)))`, using only
/// exchange moves and type II (de)stabilizations.
pub fn generate_flype_sequence(d: &GridDiagram) -> Result<MoveScript, FlypeError> {
    let placement = normalize(d);
    let target = discretize(&flype_map(&placement))?;
    let mut order: Vec<&PlacedVertex> = placement.vertices.iter().collect();
    order.sort_by_key(|v| (v.theta - v.phi, v.theta));
    let mut st = State {
        d: d.clone(),
        cols: sorted_levels(placement.vertices.iter().map(|v| v.theta)),
        rows: sorted_levels(placement.vertices.iter().map(|v| v.phi)),
    };
    let mut moves = Vec::with_capacity(order.len());
    for (index, v) in order.into_iter().enumerate() {
        let (ft, fp) = flype_point(v.theta, v.phi);
        let corners = [(v.theta, v.phi), (ft, v.phi), (v.theta, fp), (ft, fp)];
        let (mut del, mut add) = (Vec::new(), Vec::new());
        for &(t, p) in &corners {
            if st.has_vertex(t, p) {
                del.push(st.cell(t, p));
            } else {
                add.push(st.cell(t, p));
            }
        }
        let m = MoveSpec::new(del, add).map_err(|error| FlypeError::Inapplicable { index, error })?;
        let applied = apply_detailed(&st.d, &m).map_err(|error| FlypeError::Inapplicable { index, error })?;
        let fresh_cols: Vec<Q> = [v.theta, ft].into_iter().filter(|x| st.cols.binary_search(x).is_err()).collect();
        let fresh_rows: Vec<Q> = [v.phi, fp].into_iter().filter(|x| st.rows.binary_search(x).is_err()).collect();
        let cols = new_levels(&st.cols, &applied.col_index, &fresh_cols);
        let rows = new_levels(&st.rows, &applied.row_index, &fresh_rows);
        debug_assert!(cols.windows(2).all(|w| w[0] < w[1]) && rows.windows(2).all(|w| w[0] < w[1]));
        st = State { d: applied.diagram, cols, rows };
        moves.push(m);
    }
    debug_assert_eq!(st.d, target);
    Ok(MoveScript {
        initial: d.clone(),
        moves,
        declared_final: Some(target),
        allowed_kinds: Some(KindMask::EXCHANGE_II),
    })
}

/// Exchange moves carrying `from` to its cyclic shift `shift(a, b)`: the last
/// column (row) is slid past the seam `a` (`b`) times.
pub fn shift_script(from: &GridDiagram, a: usize, b: usize) -> MoveScript {
    let n = from.size();
    let mut d = from.clone();
    let mut moves = Vec::new();
    for _ in 0..a % n {
        let c = n - 1;
        let rows = [d.black()[c], d.white()[c]];
        let m = MoveSpec::new(
            rows.iter().map(|&r| Cell::at(c, r)).collect(),
            rows.iter().map(|&r| Cell::new(Level::after(-1), Level::at(r))).collect(),
        )
        .expect("rectangle");
        d = apply_detailed(&d, &m).expect("slide across the seam").diagram;
        moves.push(m);
    }
    for _ in 0..b % n {
        let r = n - 1;
        let (bcol, wcol) = d.row_tables();
        let cols = [bcol[r], wcol[r]];
        let m = MoveSpec::new(
            cols.iter().map(|&c| Cell::at(c, r)).collect(),
            cols.iter().map(|&c| Cell::new(Level::at(c), Level::after(-1))).collect(),
        )
        .expect("rectangle");
        d = apply_detailed(&d, &m).expect("slide across the seam").diagram;
        moves.push(m);
    }
    debug_assert_eq!(d, from.shift(a % n, b % n));
    MoveScript { initial: from.clone(), moves, declared_final: Some(d), allowed_kinds: Some(KindMask::EXCHANGE) }
}

/// Exchange moves and type II (de)stabilizations from `d` to exactly
/// `d.reflect_antidiagonal()`.
pub fn generate_antidiagonal_symmetry_script(d: &GridDiagram) -> Result<MoveScript, FlypeError> {
    let flype = generate_flype_sequence(d)?;
    let end = flype.declared_final.clone().unwrap();
    let target = d.reflect_antidiagonal();
    let (a, b) = find_shift(&end, &target)
        .ok_or_else(|| FlypeError::BadPlacement("flype endpoint is not a shift of the reflection".into()))?;
    let mut s = flype.then(&shift_script(&end, a, b));
    s.allowed_kinds = Some(KindMask::EXCHANGE_II);
    s.declared_final = Some(target);
    Ok(s)
}

/// Exchange moves and type I (de)stabilizations from `d` to the reflection of
/// `d` in the main diagonal, obtained by mirroring the type II script of
/// `reflect_vertical(d)`.
pub fn generate_type_i_script(d: &GridDiagram) -> Result<MoveScript, FlypeError> {
    let s = generate_antidiagonal_symmetry_script(&d.reflect_vertical())?;
    let mut out = conjugate_by_reflection(&s).map_err(FlypeError::Verification)?;
    out.allowed_kinds = Some(KindMask::EXCHANGE_I);
    Ok(out)
}

/// Image of `(theta, phi, tau)` (radians) after time `t` of the unitary flow
/// `(z, w) -> (z cos t + i w sin t, i z sin t + w cos t)`, where
/// `z = cos(pi tau/2) e^{i phi}` and `w = sin(pi tau/2) e^{-i theta}`.
/// Angles are `None` where the corresponding coordinate vanishes.
pub fn flow(theta: f64, phi: f64, tau: f64, t: f64) -> (Option<f64>, Option<f64>, f64) {
    let (zr, zi) = ((PI * tau / 2.0).cos() * phi.cos(), (PI * tau / 2.0).cos() * phi.sin());
    let (wr, wi) = ((PI * tau / 2.0).sin() * theta.cos(), -(PI * tau / 2.0).sin() * theta.sin());
    let (c, s) = (t.cos(), t.sin());
    let (z2r, z2i) = (zr * c - wi * s, zi * c + wr * s);
    let (w2r, w2i) = (-zi * s + wr * c, zr * s + wi * c);
    let zabs = z2r.hypot(z2i);
    let wabs = w2r.hypot(w2i);
    let eps = 1e-12;
    let phi2 = (zabs > eps).then(|| z2i.atan2(z2r));
    let theta2 = (wabs > eps).then(|| -w2i.atan2(w2r));
    (theta2, phi2, 2.0 / PI * wabs.atan2(zabs))
}

fn conserved(theta: f64, phi: f64, tau: f64, t: f64) -> f64 {
    let (zr, zi) = ((PI * tau / 2.0).cos() * phi.cos(), (PI * tau / 2.0).cos() * phi.sin());
    let (wr, wi) = ((PI * tau / 2.0).sin() * theta.cos(), -(PI * tau / 2.0).sin() * theta.sin());
    let (c, s) = (t.cos(), t.sin());
    let (z2r, z2i) = (zr * c - wi * s, zi * c + wr * s);
    let (w2r, w2i) = (-zi * s + wr * c, zr * s + wi * c);
    (z2r + w2r).powi(2) + (z2i + w2i).powi(2)
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpotCheckReport {
    pub samples: usize,
    pub steps: usize,
    pub max_conservation_dev: f64,
    pub max_endpoint_dev: f64,
    pub max_containment_excess: f64,
    /// Failing samples as `(theta, phi, tau, reason)`.
    pub failures: Vec<(f64, f64, f64, String)>,
}

impl SpotCheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const SPOT_TOLERANCE: f64 = 1e-9;

/// Samples starting points with `theta` in `(3pi/2, 2pi)`, `phi` in
/// `(0, pi/2)`, `tau` in `(0, 1)` and follows each for `t` in `[0, pi/2]`.
/// Sample `i` draws from its own generator seeded with `seed + i`.
pub fn isotopy_spot_check(samples: usize, steps: usize, seed: u64) -> SpotCheckReport {
    let per: Vec<SpotCheckReport> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let theta = 1.5 * PI + rng.random::<f64>() * FRAC_PI_2;
            let phi = rng.random::<f64>() * FRAC_PI_2;
            let tau = rng.random::<f64>().clamp(1e-6, 1.0 - 1e-6);
            check_trajectory(theta, phi, tau, steps)
        })
        .collect();
    let mut out = SpotCheckReport { samples, steps, ..Default::default() };
    for r in per {
        out.max_conservation_dev = out.max_conservation_dev.max(r.max_conservation_dev);
        out.max_endpoint_dev = out.max_endpoint_dev.max(r.max_endpoint_dev);
        out.max_containment_excess = out.max_containment_excess.max(r.max_containment_excess);
        out.failures.extend(r.failures);
    }
    out
}

/// Checks conservation of `|z+w|^2`, containment of `phi'` in the arc from
/// `phi` to `pi/2 - theta`, and the endpoint formula at `t = pi/2`.
pub fn check_trajectory(theta: f64, phi: f64, tau: f64, steps: usize) -> SpotCheckReport {
    let mut r = SpotCheckReport { samples: 1, steps, ..Default::default() };
    let expected = 1.0 + (PI * tau).sin() * (phi + theta).cos();
    let arc = (FRAC_PI_2 - theta - phi).rem_euclid(TAU);
    for k in 0..=steps {
        let t = FRAC_PI_2 * k as f64 / steps as f64;
        r.max_conservation_dev = r.max_conservation_dev.max((conserved(theta, phi, tau, t) - expected).abs());
        if let (_, Some(p2), _) = flow(theta, phi, tau, t) {
            let off = (p2 - phi).rem_euclid(TAU);
            let excess = if off <= arc { 0.0 } else { (off - arc).min(TAU - off) };
            r.max_containment_excess = r.max_containment_excess.max(excess);
        }
    }
    let (t2, p2, tau2) = flow(theta, phi, tau, FRAC_PI_2);
    let dev = [
        t2.map_or(f64::INFINITY, |x| angle_gap(x, -FRAC_PI_2 - phi)),
        p2.map_or(f64::INFINITY, |x| angle_gap(x, FRAC_PI_2 - theta)),
        (tau2 - (1.0 - tau)).abs(),
    ];
    r.max_endpoint_dev = dev.iter().cloned().fold(0.0, f64::max);
    let checks = [
        (r.max_conservation_dev, "conservation"),
        (r.max_containment_excess, "containment"),
        (r.max_endpoint_dev, "endpoint"),
    ];
    for (v, what) in checks {
        if v.is_nan() || v >= SPOT_TOLERANCE {
            r.failures.push((theta, phi, tau, format!("{what} deviation {v:e}")));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::equivalent;
    use crate::script::verify_script;

    #[test]
    fn placement_of_unknot() {
        let p = normalize(&GridDiagram::unknot());
        let cols = sorted_levels(p.vertices.iter().map(|v| v.theta));
        let rows = sorted_levels(p.vertices.iter().map(|v| v.phi));
        assert_eq!((cols.len(), rows.len()), (2, 2));
        assert!(cols.iter().all(|&t| q(3) < t && t < q(4)));
        assert!(rows.iter().all(|&t| q(0) < t && t < q(1)));
        assert_eq!(discretize(&p).unwrap(), GridDiagram::unknot());
    }

    #[test]
    fn differences_are_distinct() {
        for n in 2..12usize {
            let d = GridDiagram::new((0..n).collect(), (0..n).map(|i| (i + 1) % n).collect()).unwrap();
            let p = normalize(&d);
            let n = n as i64;
            let mut diffs = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    diffs.push(q(3) + Q::new(2 * i + 1, 2 * n) + Q::new(i, 8 * n * n) - Q::new(2 * j + 1, 2 * n));
                }
            }
            diffs.sort();
            diffs.dedup();
            assert_eq!(diffs.len() as i64, n * n);
            assert_eq!(discretize(&p).unwrap(), d);
        }
    }

    #[test]
    fn flype_squared_is_a_half_turn() {
        let d = GridDiagram::new(vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap();
        let p = normalize(&d);
        let pp = flype_map(&flype_map(&p));
        for (a, b) in p.vertices.iter().zip(&pp.vertices) {
            assert_eq!((wrap(a.theta + q(2)), wrap(a.phi + q(2)), a.color), (b.theta, b.phi, b.color));
        }
        assert!(equivalent(&discretize(&pp).unwrap(), &d));
    }

    #[test]
    fn unknot_script() {
        let s = generate_flype_sequence(&GridDiagram::unknot()).unwrap();
        assert!(s.moves.len() <= 4);
        verify_script(&s).unwrap();
        let s = generate_antidiagonal_symmetry_script(&GridDiagram::unknot()).unwrap();
        assert!(equivalent(&s.endpoint().unwrap(), &GridDiagram::unknot()));
    }

    #[test]
    fn trefoil_scripts() {
        let d = GridDiagram::new(vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap();
        let s = generate_antidiagonal_symmetry_script(&d).unwrap();
        verify_script(&s).unwrap();
        assert_eq!(s.endpoint().unwrap(), d.reflect_antidiagonal());
        let s1 = generate_type_i_script(&d).unwrap();
        verify_script(&s1).unwrap();
        assert_eq!(s1.endpoint().unwrap(), d.reflect_diagonal());
    }

    #[test]
    fn flow_special_cases() {
        let (theta, phi) = (1.7 * PI, 0.2);
        let (t0, p0, tau0) = flow(theta, phi, 0.3, 0.0);
        assert!(angle_gap(t0.unwrap(), theta) < 1e-12 && angle_gap(p0.unwrap(), phi) < 1e-12);
        assert!((tau0 - 0.3).abs() < 1e-12);
        for k in 1..10 {
            let t = FRAC_PI_2 * k as f64 / 10.0;
            let (t1, p1, _) = flow(theta, phi, 1.0, t);
            assert!(angle_gap(t1.unwrap(), theta) < 1e-12);
            assert!(angle_gap(p1.unwrap(), FRAC_PI_2 - theta) < 1e-12);
        }
        let theta = 2.0 * PI - phi;
        for k in 0..10 {
            let t = FRAC_PI_2 * k as f64 / 10.0;
            assert!((conserved(theta, phi, 0.4, t) - (1.0 + (PI * 0.4).sin())).abs() < 1e-12);
        }
    }

    #[test]
    fn small_spot_check() {
        let r = isotopy_spot_check(200, 32, 7);
        assert!(r.passed(), "{:?}", r.failures.first());
    }
}
