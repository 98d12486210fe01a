//! Free words, presentations, Wirtinger presentations of grid diagrams and
//! homomorphisms to small symmetric groups.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::grid::GridDiagram;
use crate::invariants::planarize;

/// A freely reduced word; letter `i` is generator `x_i`, `-i` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Word {
        let mut w = Word(Vec::new());
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Word {
        Word(vec![i as i32])
    }

    fn push(&mut self, l: i32) {
        assert_ne!(l, 0, "generator 0 does not exist");
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    /// `self * x * self^-1`.
    pub fn conjugate(&self, x: &Word) -> Word {
        self.mul(x).mul(&self.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Cyclic reduction: removes inverse pairs wrapping around the ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut v = self.0.as_slice();
        while v.len() >= 2 && v[0] == -v[v.len() - 1] {
            v = &v[1..v.len() - 1];
        }
        Word(v.to_vec())
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> =
            self.0.iter().map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) }).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad word {0:?}")]
pub struct WordParseError(pub String);

impl FromStr for Word {
    type Err = WordParseError;

    /// Accepts signed indices (`1 2 -1 -3`) or `x1 x2 x1^-1`; `e` is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordParseError(s.to_string());
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let l = if let Some(rest) = tok.strip_prefix('x') {
                match rest.split_once('^') {
                    Some((i, "-1")) => -(i.parse::<i32>().map_err(|_| bad())?),
                    Some((i, "1")) => i.parse::<i32>().map_err(|_| bad())?,
                    Some(_) => return Err(bad()),
                    None => rest.parse::<i32>().map_err(|_| bad())?,
                }
            } else {
                tok.parse::<i32>().map_err(|_| bad())?
            };
            if l == 0 {
                return Err(bad());
            }
            out.push(l);
        }
        Ok(Word::new(out))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
    /// Component label of each generator.
    pub components: Vec<u32>,
}

impl Presentation {
    /// A presentation with one component; relators are cyclically reduced.
    pub fn new(generators: usize, relators: Vec<Word>) -> Presentation {
        Presentation::with_components(generators, relators, vec![1; generators])
    }

    pub fn with_components(generators: usize, relators: Vec<Word>, components: Vec<u32>) -> Presentation {
        assert_eq!(components.len(), generators);
        let relators: Vec<Word> =
            relators.into_iter().map(|r| r.cyclically_reduced()).filter(|r| !r.is_empty()).collect();
        assert!(relators.iter().all(|r| r.max_generator() <= generators));
        Presentation { generators, relators, components }
    }

    /// Relators `x_a x_b x_a^-1 x_c^-1` from triples `(a, b, c)`.
    pub fn from_conjugations(generators: usize, rels: &[(usize, usize, usize)]) -> Presentation {
        let r = rels.iter().map(|&(a, b, c)| Word::gen(a).conjugate(&Word::gen(b)).mul(&Word::gen(c).inverse())).collect();
        Presentation::new(generators, r)
    }

    pub fn component_count(&self) -> u32 {
        self.components.iter().copied().max().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.generators);
        for r in &self.relators {
            let l: Vec<String> = r.letters().iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("rel: {}\n", l.join(" ")));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Presentation, WordParseError> {
        let mut gens = None;
        let mut rels = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some(g) = line.strip_prefix("gens:") {
                gens = Some(g.trim().parse::<usize>().map_err(|_| WordParseError(line.into()))?);
            } else if let Some(r) = line.strip_prefix("rel:") {
                rels.push(r.parse::<Word>()?);
            } else {
                return Err(WordParseError(line.into()));
            }
        }
        let g = gens.ok_or_else(|| WordParseError("missing gens:".into()))?;
        if rels.iter().any(|r| r.max_generator() > g) {
            return Err(WordParseError("relator uses an undeclared generator".into()));
        }
        Ok(Presentation::new(g, rels))
    }
}

/// Images of `x_1 .. x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    pub images: Vec<Word>,
}

impl GeneratorMap {
    pub fn identity(n: usize) -> GeneratorMap {
        GeneratorMap { images: (1..=n).map(Word::gen).collect() }
    }

    pub fn from_images(images: Vec<Word>) -> GeneratorMap {
        GeneratorMap { images }
    }

    pub fn generators(&self) -> usize {
        self.images.len()
    }

    pub fn to_text(&self, name: &str) -> String {
        self.images.iter().enumerate().map(|(i, w)| format!("map {name}: {} -> {}\n", i + 1, w)).collect()
    }
}

pub fn apply_map(m: &GeneratorMap, w: &Word) -> Word {
    let mut out = Word::empty();
    for &l in w.letters() {
        let img = &m.images[l.unsigned_abs() as usize - 1];
        out = out.mul(&if l > 0 { img.clone() } else { img.inverse() });
    }
    out
}

/// `compose(m1, m2)(x) = m1(m2(x))`.
pub fn compose(m1: &GeneratorMap, m2: &GeneratorMap) -> GeneratorMap {
    GeneratorMap { images: m2.images.iter().map(|w| apply_map(m1, w)).collect() }
}

pub fn power(m: &GeneratorMap, k: u32) -> GeneratorMap {
    let mut out = GeneratorMap::identity(m.generators());
    for _ in 0..k {
        out = compose(m, &out);
    }
    out
}

/// Exponent sum of `w` over the generators of each component.
pub fn abelianized(w: &Word, components: &[u32]) -> Vec<i64> {
    let k = components.iter().copied().max().unwrap_or(0) as usize;
    let mut v = vec![0; k];
    for &l in w.letters() {
        v[components[l.unsigned_abs() as usize - 1] as usize - 1] += l.signum() as i64;
    }
    v
}

/// Total exponent sum: the linking number with a knot.
pub fn linking_number(w: &Word) -> i64 {
    w.letters().iter().map(|l| l.signum() as i64).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerVerdict {
    Satisfiable,
    Impossible,
}

/// Whether some `z` with `z^k` equal to `w` can exist, judged by linking number.
pub fn inner_power_obstruction(w: &Word, k: i64) -> PowerVerdict {
    assert_ne!(k, 0);
    if linking_number(w) % k == 0 {
        PowerVerdict::Satisfiable
    } else {
        PowerVerdict::Impossible
    }
}

/// Wirtinger presentation together with, for every generator, the traversal
/// position where its arc starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wirtinger {
    pub presentation: Presentation,
    pub crossings: Vec<ArcCrossing>,
}

/// A crossing in terms of arcs (1-based generator indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcCrossing {
    pub col: usize,
    pub row: usize,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i32,
}

impl ArcCrossing {
    /// `(a, b, c)` with `x_a x_b x_a^-1 = x_c`.
    pub fn conjugation(&self) -> (usize, usize, usize) {
        if self.sign > 0 {
            (self.over, self.under_in, self.under_out)
        } else {
            (self.over, self.under_out, self.under_in)
        }
    }
}

/// Arcs are cut where a horizontal edge passes under a vertical one. Each
/// crossing with sign `e` gives `x_a^e x_b x_a^-e = x_c` with `a` over and the
/// under strand passing from `b` to `c`. The relator of the last crossing is
/// dropped when the diagram is a knot with crossings.
pub fn wirtinger(d: &GridDiagram) -> Wirtinger {
    let planar = planarize(d);
    let (bcol, _) = d.row_tables();
    let n = d.size();
    let mut arc_of_col = vec![0usize; n];
    // (crossing col, row, incoming arc, outgoing arc)
    let mut unders: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut comps = Vec::new();
    let mut next_arc = 0usize;
    let mut done = vec![false; n];
    for start in 0..n {
        if done[start] {
            continue;
        }
        let label = d.components()[start];
        let first = next_arc;
        comps.push(label);
        next_arc += 1;
        let first_under = unders.len();
        let mut c = start;
        loop {
            done[c] = true;
            arc_of_col[c] = next_arc - 1;
            let r = d.white()[c];
            let target = bcol[r];
            let mut cut: Vec<usize> = planar.crossings.iter().filter(|x| x.row == r).map(|x| x.col).collect();
            cut.sort();
            if target < c {
                cut.reverse();
            }
            for col in cut {
                unders.push((col, r, next_arc - 1, next_arc));
                comps.push(label);
                next_arc += 1;
            }
            c = target;
            if c == start {
                break;
            }
        }
        // the last arc closes up with the first one
        if unders.len() > first_under {
            let last = next_arc - 1;
            for u in &mut unders[first_under..] {
                if u.3 == last {
                    u.3 = first;
                }
            }
            for a in arc_of_col.iter_mut() {
                if *a == last {
                    *a = first;
                }
            }
            next_arc -= 1;
            comps.pop();
        }
    }
    let mut crossings = Vec::new();
    let mut relators = Vec::new();
    for &(col, row, b, c) in &unders {
        let sign = planar.crossings.iter().find(|x| x.col == col && x.row == row).unwrap().sign as i32;
        let a = arc_of_col[col];
        crossings.push(ArcCrossing { col, row, over: a + 1, under_in: b + 1, under_out: c + 1, sign });
        let xa = Word::gen(a + 1).pow(sign as i64);
        relators.push(xa.conjugate(&Word::gen(b + 1)).mul(&Word::gen(c + 1).inverse()));
    }
    if d.component_count() == 1 && !relators.is_empty() {
        relators.pop();
    }
    let mut labels: Vec<u32> = Vec::new();
    let comp_index: Vec<u32> = comps
        .iter()
        .map(|c| {
            if !labels.contains(c) {
                labels.push(*c);
            }
            *c
        })
        .collect();
    Wirtinger { presentation: Presentation::with_components(next_arc, relators, comp_index), crossings }
}

pub type Perm = Vec<u8>;

/// Product `a` then `b`, acting on the right.
fn pmul(a: &[u8], b: &[u8]) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

fn pinv(a: &[u8]) -> Perm {
    let mut out = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

fn pid(d: usize) -> Perm {
    (0..d as u8).collect()
}

fn cycle_type(p: &[u8]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if !seen[i] {
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j] as usize;
                len += 1;
            }
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn partitions(d: usize, max: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=d.min(max)).rev() {
        for mut rest in partitions(d - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn representative(shape: &[usize]) -> Perm {
    let d: usize = shape.iter().sum();
    let mut p = pid(d);
    let mut start = 0;
    for &len in shape {
        for k in 0..len {
            p[start + k] = (start + (k + 1) % len) as u8;
        }
        start += len;
    }
    p
}

fn all_perms(d: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

fn conjugacy_class(rep: &[u8], perms: &[Perm]) -> Vec<Perm> {
    let set: BTreeSet<Perm> = perms.iter().map(|s| pmul(&pmul(&pinv(s), rep), s)).collect();
    set.into_iter().collect()
}

/// A homomorphism to the symmetric group on `degree` points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Quotient {
    pub degree: usize,
    pub images: Vec<Perm>,
}

impl Quotient {
    pub fn eval(&self, w: &Word) -> Perm {
        w.letters().iter().fold(pid(self.degree), |acc, &l| {
            let g = &self.images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                pmul(&acc, g)
            } else {
                pmul(&acc, &pinv(g))
            }
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.images.iter().all(|a| self.images.iter().all(|b| pmul(a, b) == pmul(b, a)))
    }

    fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            if std::mem::replace(&mut seen[i], true) {
                continue;
            }
            for g in &self.images {
                stack.push(g[i] as usize);
                stack.push(pinv(g)[i] as usize);
            }
        }
        seen.iter().all(|&s| s)
    }
}

struct Search<'a> {
    p: &'a Presentation,
    /// Allowed images per component.
    classes: Vec<Vec<Perm>>,
    shapes: Vec<Vec<usize>>,
    out: Vec<Quotient>,
    degree: usize,
}

impl Search<'_> {
    fn eval_partial(&self, w: &[i32], a: &[Option<Perm>]) -> Option<Perm> {
        let mut acc = pid(self.degree);
        for &l in w {
            let g = a[l.unsigned_abs() as usize - 1].as_ref()?;
            acc = if l > 0 { pmul(&acc, g) } else { pmul(&acc, &pinv(g)) };
        }
        Some(acc)
    }

    /// Solves relators with a single unknown letter; false on contradiction.
    fn propagate(&self, a: &mut [Option<Perm>]) -> bool {
        loop {
            let mut progress = false;
            for r in &self.p.relators {
                let unknown: Vec<usize> =
                    r.letters().iter().enumerate().filter(|(_, l)| a[l.unsigned_abs() as usize - 1].is_none()).map(|(i, _)| i).collect();
                match unknown.len() {
                    0 => {
                        if self.eval_partial(r.letters(), a).unwrap() != pid(self.degree) {
                            return false;
                        }
                    }
                    1 => {
                        let i = unknown[0];
                        let l = r.letters()[i];
                        let u = self.eval_partial(&r.letters()[..i], a).unwrap();
                        let v = self.eval_partial(&r.letters()[i + 1..], a).unwrap();
                        // u g^s v = 1
                        let gs = pmul(&pinv(&u), &pinv(&v));
                        let g = if l > 0 { gs } else { pinv(&gs) };
                        let gi = l.unsigned_abs() as usize - 1;
                        let comp = self.p.components[gi] as usize - 1;
                        if cycle_type(&g) != self.shapes[comp] {
                            return false;
                        }
                        a[gi] = Some(g);
                        progress = true;
                    }
                    _ => {}
                }
            }
            if !progress {
                return true;
            }
        }
    }

    fn choose(&self, a: &[Option<Perm>]) -> Option<usize> {
        let free: Vec<usize> = (0..a.len()).filter(|&i| a[i].is_none()).collect();
        free.iter().copied().max_by_key(|&g| {
            let score = self
                .p
                .relators
                .iter()
                .filter(|r| {
                    let gens: BTreeSet<usize> = r.letters().iter().map(|l| l.unsigned_abs() as usize - 1).collect();
                    gens.contains(&g) && gens.iter().filter(|&&h| h != g && a[h].is_none()).count() == 1
                })
                .count();
            (score, std::cmp::Reverse(g))
        })
    }

    fn run(&mut self, mut a: Vec<Option<Perm>>) {
        if !self.propagate(&mut a) {
            return;
        }
        match self.choose(&a) {
            None => {
                let q = Quotient { degree: self.degree, images: a.into_iter().map(Option::unwrap).collect() };
                if q.is_transitive() {
                    self.out.push(q);
                }
            }
            Some(g) => {
                let comp = self.p.components[g] as usize - 1;
                for img in self.classes[comp].clone() {
                    let mut b = a.clone();
                    b[g] = Some(img);
                    self.run(b);
                }
            }
        }
    }
}

/// All transitive homomorphisms to `S_d`, `d <= max_degree`, in which the
/// generators of each component go to one conjugacy class, up to
/// simultaneous conjugation. Sorted by degree, then images.
pub fn finite_quotients(p: &Presentation, max_degree: usize) -> Vec<Quotient> {
    let k = p.component_count() as usize;
    let mut jobs = Vec::new();
    for d in 1..=max_degree {
        let parts = partitions(d, d);
        let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for _ in 0..k {
            combos = combos
                .into_iter()
                .flat_map(|c| parts.iter().map(move |s| [c.clone(), vec![s.clone()]].concat()))
                .collect();
        }
        for shapes in combos {
            jobs.push((d, shapes));
        }
    }
    let mut out: Vec<Quotient> = jobs
        .par_iter()
        .flat_map(|(d, shapes)| {
            let perms = all_perms(*d);
            let classes: Vec<Vec<Perm>> = shapes.iter().map(|s| conjugacy_class(&representative(s), &perms)).collect();
            let first_gen = p.components.iter().position(|&c| c == 1);
            let mut s = Search { p, classes, shapes: shapes.clone(), out: Vec::new(), degree: *d };
            let mut a: Vec<Option<Perm>> = vec![None; p.generators];
            if let Some(g) = first_gen {
                a[g] = Some(representative(&shapes[0]));
            }
            s.run(a);
            let centralizer: Vec<&Perm> = match first_gen {
                Some(_) => {
                    let x = representative(&shapes[0]);
                    perms.iter().filter(|s| pmul(&pmul(&pinv(s), &x), s) == x).collect()
                }
                None => perms.iter().collect(),
            };
            let canon: BTreeSet<Quotient> = s
                .out
                .into_iter()
                .map(|q| {
                    centralizer
                        .iter()
                        .map(|c| Quotient {
                            degree: q.degree,
                            images: q.images.iter().map(|g| pmul(&pmul(&pinv(c), g), c)).collect(),
                        })
                        .min()
                        .unwrap()
                })
                .collect();
            canon.into_iter().collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Distinct,
    Indistinguishable,
}

pub fn equal_in_quotients(w1: &Word, w2: &Word, quotients: &[Quotient]) -> Comparison {
    if quotients.iter().any(|q| q.eval(w1) != q.eval(w2)) {
        Comparison::Distinct
    } else {
        Comparison::Indistinguishable
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapReport {
    /// `(quotient index, relator index)` pairs whose image is not trivial.
    pub failures: Vec<(usize, usize)>,
    pub quotients: usize,
}

impl MapReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every relator is sent to a word trivial in every quotient.
pub fn verify_map_respects_relations(m: &GeneratorMap, p: &Presentation, quotients: &[Quotient]) -> MapReport {
    let images: Vec<Word> = p.relators.iter().map(|r| apply_map(m, r)).collect();
    let mut failures = Vec::new();
    for (qi, q) in quotients.iter().enumerate() {
        for (ri, w) in images.iter().enumerate() {
            if q.eval(w) != pid(q.degree) {
                failures.push((qi, ri));
            }
        }
    }
    MapReport { failures, quotients: quotients.len() }
}

/// Generators among `gens` (1-based) not fixed by `m` in some quotient.
pub fn unfixed_in_quotients(m: &GeneratorMap, gens: &[usize], quotients: &[Quotient]) -> Vec<usize> {
    gens.iter()
        .copied()
        .filter(|&g| equal_in_quotients(&apply_map(m, &Word::gen(g)), &Word::gen(g), quotients) == Comparison::Distinct)
        .collect()
}

/// The nine-generator presentation of the knot group of `9_48` and the
/// automorphisms used to study its symmetries.
pub mod nine48 {
    use super::*;

    /// `(a, b, c)` stands for `x_a x_b x_a^-1 = x_c`.
    pub const RELATIONS: [(usize, usize, usize); 9] =
        [(1, 2, 3), (4, 2, 1), (2, 4, 8), (6, 8, 7), (7, 1, 6), (1, 7, 9), (5, 9, 3), (3, 6, 5), (6, 4, 5)];

    pub fn presentation() -> Presentation {
        Presentation::from_conjugations(9, &RELATIONS)
    }

    fn w(s: &str) -> Word {
        s.parse().expect("static word")
    }

    pub fn t_map() -> GeneratorMap {
        GeneratorMap::from_images(
            ["x3", "x6^-1 x3 x6", "x9", "x6", "x1 x6 x1^-1", "x1", "x1 x4 x1^-1", "x4", "x1 x8 x1^-1"].map(w).to_vec(),
        )
    }

    pub fn s_map() -> GeneratorMap {
        GeneratorMap::from_images(
            [
                "x8",
                "x4",
                "x1^-1 x3 x4 x3^-1 x1",
                "x2",
                "x1^-1 x9 x3 x9^-1 x1",
                "x7",
                "x6",
                "x1",
                "x1^-1 x9 x6 x9^-1 x1",
            ]
            .map(w)
            .to_vec(),
        )
    }

    /// `x -> x1^-1 T^3(x) x1`, computed rather than tabulated.
    pub fn s_from_t() -> GeneratorMap {
        let t3 = power(&t_map(), 3);
        let x1 = Word::gen(1);
        GeneratorMap::from_images(t3.images.iter().map(|y| x1.inverse().conjugate(y)).collect())
    }

    /// Stated identities: the left side is `T^k` applied to a word, each right
    /// side is claimed equal to it. Returned as `(k, argument, right sides)`.
    pub fn power_identities() -> Vec<(u32, Word, Vec<Word>)> {
        vec![
            (3, w("x1"), vec![w("x1 x8 x1^-1")]),
            (3, w("x2"), vec![w("x3^-1 x1 x8 x1^-1 x3"), w("x1 x2^-1 x8 x2 x1^-1"), w("x1 x4 x1^-1")]),
            (3, w("x4^-1 x1 x4"), vec![w("x1 x4 x1^-1")]),
            (3, w("x3"), vec![w("x3 x4 x3^-1")]),
            (3, w("x4"), vec![w("x3")]),
            (3, w("x5"), vec![w("x9 x3 x9^-1")]),
            (3, w("x6 x4 x6^-1"), vec![w("x9 x3 x9^-1")]),
            (3, w("x6"), vec![w("x9")]),
            (3, w("x7"), vec![w("x9 x1 x9^-1"), w("x1 x7 x1 x7^-1 x1^-1"), w("x1 x6 x1^-1")]),
            (3, w("x8"), vec![w("x1")]),
            (3, w("x9"), vec![w("x9 x6 x9^-1")]),
            (6, w("x1"), vec![w("x1 x8 x1 x8^-1 x1^-1")]),
            (6, w("x2"), vec![w("x1 x8 x1^-1 x3 x1 x8^-1 x1^-1"), w("x1 x8 x2 x8^-1 x1^-1")]),
            (6, w("x7"), vec![w("x1 x8 x1^-1 x9 x1 x8^-1 x1^-1"), w("x1 x8 x7 x8^-1 x1^-1")]),
        ]
    }

    /// Generators of the whole group.
    pub const GENERATING_SET: [usize; 3] = [1, 2, 7];
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GridDiagram {
        GridDiagram::new(vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap()
    }

    #[test]
    fn words_reduce() {
        let w: Word = "x1 x2 x2^-1 x1^-1 x3".parse().unwrap();
        assert_eq!(w, Word::gen(3));
        assert_eq!("1 2 -1 -3".parse::<Word>().unwrap().letters(), &[1, 2, -1, -3]);
        assert_eq!(Word::new([1, 2, -1]).cyclically_reduced(), Word::gen(2));
        assert_eq!(Word::gen(1).pow(-2).to_string(), "x1^-1 x1^-1");
    }

    #[test]
    fn linking_numbers() {
        assert_eq!(linking_number(&"x1 x8".parse().unwrap()), 2);
        assert_eq!(linking_number(&"x1 x2 x1^-1".parse().unwrap()), 1);
        assert_eq!(linking_number(&Word::empty()), 0);
        assert_eq!(inner_power_obstruction(&"x1 x8".parse().unwrap(), 3), PowerVerdict::Impossible);
        assert_eq!(inner_power_obstruction(&"x1 x8".parse().unwrap(), 2), PowerVerdict::Satisfiable);
        for k in 1..5 {
            assert_eq!(inner_power_obstruction(&Word::empty(), k), PowerVerdict::Satisfiable);
        }
    }

    #[test]
    fn map_algebra() {
        let t = nine48::t_map();
        assert_eq!(apply_map(&t, &Word::gen(4)), Word::gen(6));
        let w: Word = "x1 x2 x1^-1 x7".parse().unwrap();
        assert_eq!(apply_map(&GeneratorMap::identity(9), &w), w);
        for (a, b) in [(1, 2), (2, 1), (0, 3)] {
            assert_eq!(power(&t, a + b), compose(&power(&t, a), &power(&t, b)));
        }
    }

    #[test]
    fn unknot_group() {
        let w = wirtinger(&GridDiagram::unknot());
        assert_eq!(w.presentation.generators, 1);
        assert!(w.presentation.relators.is_empty());
        for q in finite_quotients(&w.presentation, 4) {
            assert_eq!(cycle_type(&q.images[0]), vec![q.degree]);
        }
    }

    #[test]
    fn trefoil_group() {
        let w = wirtinger(&trefoil());
        let p = &w.presentation;
        assert_eq!(p.generators, 3);
        assert_eq!(p.generators - p.relators.len(), 1);
        for r in &p.relators {
            assert_eq!(abelianized(r, &p.components), vec![0]);
        }
        let qs = finite_quotients(p, 3);
        let s3: Vec<&Quotient> = qs.iter().filter(|q| q.degree == 3 && !q.is_abelian()).collect();
        assert!(!s3.is_empty());
        let owned: Vec<Quotient> = s3.into_iter().cloned().collect();
        assert_eq!(equal_in_quotients(&Word::gen(1), &Word::gen(2), &owned), Comparison::Distinct);
        assert_eq!(equal_in_quotients(&Word::gen(1), &Word::gen(1), &owned), Comparison::Indistinguishable);
    }

    #[test]
    fn presentation_text_round_trip() {
        let p = nine48::presentation();
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }
}
