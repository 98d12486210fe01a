//! Alexander polynomials by Fox calculus, used to recognize knot types while
//! searching for fixtures.

use rectlink::group::{wirtinger, Presentation};
use rectlink::GridDiagram;

pub type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut r = vec![0i128; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        r[i] -= x;
    }
    trim(r)
}

/// Exact division; panics if `b` does not divide `a`.
fn div(a: &Poly, b: &Poly) -> Poly {
    let a = trim(a.clone());
    if a.is_empty() {
        return vec![];
    }
    let b = trim(b.clone());
    let mut rem = a;
    let mut q = vec![0i128; rem.len() + 1 - b.len()];
    let lb = *b.last().unwrap();
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let lr = *rem.last().unwrap();
        assert!(lr % lb == 0, "inexact division");
        let c = lr / lb;
        q[shift] = c;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= c * y;
        }
        rem = trim(rem);
    }
    assert!(rem.is_empty(), "inexact division");
    trim(q)
}

fn det(mut m: Vec<Vec<Poly>>) -> Poly {
    let k = m.len();
    if k == 0 {
        return vec![1];
    }
    let mut sign = 1i128;
    let mut prev: Poly = vec![1];
    for p in 0..k {
        if m[p][p].is_empty() {
            match (p + 1..k).find(|&i| !m[i][p].is_empty()) {
                Some(i) => {
                    m.swap(p, i);
                    sign = -sign;
                }
                None => return vec![],
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = sub(&mul(&m[i][j], &m[p][p]), &mul(&m[i][p], &m[p][j]));
                m[i][j] = div(&v, &prev);
            }
            m[i][p] = vec![];
        }
        prev = m[p][p].clone();
    }
    m[k - 1][k - 1].iter().map(|c| c * sign).collect()
}

/// Normalized so the lowest coefficient is at index 0 and positive.
#[allow(dead_code)]
pub fn normalize(p: Poly) -> Poly {
    let mut p = trim(p);
    let lead = p.iter().position(|&c| c != 0).unwrap_or(0);
    p.drain(..lead);
    if p.first().is_some_and(|&c| c < 0) {
        p.iter_mut().for_each(|c| *c = -*c);
    }
    p
}

/// Alexander polynomial of a knot group presentation of deficiency 0 or 1.
#[allow(dead_code)]
pub fn alexander(p: &Presentation) -> Poly {
    let g = p.generators;
    let rows: Vec<Vec<Poly>> = p
        .relators
        .iter()
        .take(g - 1)
        .map(|r| {
            let mut entries: Vec<std::collections::BTreeMap<i64, i128>> = vec![Default::default(); g];
            let mut e = 0i64;
            for &l in r.letters() {
                let j = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    *entries[j].entry(e).or_default() += 1;
                    e += 1;
                } else {
                    e -= 1;
                    *entries[j].entry(e).or_default() -= 1;
                }
            }
            let lo = entries.iter().flat_map(|m| m.keys().copied()).min().unwrap_or(0);
            entries
                .into_iter()
                .take(g - 1)
                .map(|m| {
                    let mut poly = vec![];
                    for (k, v) in m {
                        let i = (k - lo) as usize;
                        if poly.len() <= i {
                            poly.resize(i + 1, 0);
                        }
                        poly[i] += v;
                    }
                    trim(poly)
                })
                .collect()
        })
        .collect();
    normalize(det(rows))
}

#[allow(dead_code)]
pub fn alexander_of(d: &GridDiagram) -> Poly {
    let w = wirtinger(d);
    if w.presentation.generators <= 1 {
        return vec![1];
    }
    alexander(&w.presentation)
}

/// |Alexander polynomial at -1|.
#[allow(dead_code)]
pub fn determinant(p: &Poly) -> i128 {
    p.iter().enumerate().map(|(i, c)| if i % 2 == 0 { *c } else { -c }).sum::<i128>().abs()
}

#[allow(dead_code)]
pub mod atlas;
