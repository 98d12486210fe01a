//! Text formats for diagrams and move scripts, script verification and
//! certificates.
//!
//! Diagram record:
//!
//! ```text
//! n=5 components=1
//! black: 0 1 2 3 4
//! white: 2 3 4 0 1
//! comp: 1 1 1 1 1
//! ```
//!
//! Script file: a `script` line, optional `mask <mask>`, an `initial` line
//! followed by a diagram record, an optional `final` line with a record, then
//! `moves` and one JSON move per line.

use std::fmt;
use std::fmt::Write as _;

use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::grid::{canonicalize, equivalent, CanonicalForm, GridDiagram};
use crate::invariants::all_invariants;
use crate::moves::{apply_detailed, classify_applied, Cell, Level, MoveError, MoveKind, MoveSpec, StabType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, col, msg: msg.into() }
}

pub fn emit_diagram(d: &GridDiagram) -> String {
    let join = |v: Vec<String>| v.join(" ");
    let mut s = String::new();
    writeln!(s, "n={} components={}", d.size(), d.component_count()).unwrap();
    writeln!(s, "black: {}", join(d.black().iter().map(|x| x.to_string()).collect())).unwrap();
    writeln!(s, "white: {}", join(d.white().iter().map(|x| x.to_string()).collect())).unwrap();
    writeln!(s, "comp: {}", join(d.components().iter().map(|x| x.to_string()).collect())).unwrap();
    s
}

/// Content lines with their 1-based numbers; blank and `#` lines dropped.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect()
}

fn parse_numbers(line: usize, raw: &str, key: &str) -> Result<Vec<usize>, ParseError> {
    let start = raw.find(key).ok_or_else(|| perr(line, 1, format!("expected `{key}`")))?;
    let body = &raw[start + key.len()..];
    let mut out = Vec::new();
    let mut offset = start + key.len();
    for tok in body.split(' ') {
        if !tok.is_empty() {
            out.push(tok.parse::<usize>().map_err(|_| perr(line, offset + 1, format!("bad number {tok:?}")))?);
        }
        offset += tok.len() + 1;
    }
    Ok(out)
}

fn parse_record(lines: &[(usize, &str)]) -> Result<GridDiagram, ParseError> {
    if lines.len() < 4 {
        let l = lines.last().map_or(1, |x| x.0);
        return Err(perr(l, 1, "diagram record needs four lines"));
    }
    let (l0, header) = lines[0];
    let mut n = None;
    let mut k = None;
    for tok in header.split_whitespace() {
        let col = header.find(tok).unwrap() + 1;
        match tok.split_once('=') {
            Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| perr(l0, col, "bad n"))?),
            Some(("components", v)) => k = Some(v.parse::<u32>().map_err(|_| perr(l0, col, "bad components"))?),
            _ => return Err(perr(l0, col, format!("unexpected {tok:?}"))),
        }
    }
    let n = n.ok_or_else(|| perr(l0, 1, "missing n="))?;
    let k = k.ok_or_else(|| perr(l0, 1, "missing components="))?;
    let black = parse_numbers(lines[1].0, lines[1].1, "black:")?;
    let white = parse_numbers(lines[2].0, lines[2].1, "white:")?;
    let comp = parse_numbers(lines[3].0, lines[3].1, "comp:")?;
    for (v, (l, _)) in [&black, &white, &comp].iter().zip(&lines[1..4]) {
        if v.len() != n {
            return Err(perr(*l, 1, format!("expected {n} entries, found {}", v.len())));
        }
    }
    let d = GridDiagram::with_components(black, white, comp.into_iter().map(|x| x as u32).collect())
        .map_err(|e| perr(lines[1].0, 1, e.to_string()))?;
    if d.component_count() != k {
        return Err(perr(l0, 1, format!("declared {k} components, found {}", d.component_count())));
    }
    Ok(d)
}

pub fn parse_diagram(text: &str) -> Result<GridDiagram, ParseError> {
    let lines = content_lines(text);
    if lines.len() != 4 {
        return Err(perr(lines.get(4).map_or(1, |x| x.0), 1, "expected exactly one diagram record"));
    }
    parse_record(&lines)
}

/// Reads every record of a multi-diagram file.
pub fn parse_diagrams(text: &str) -> Result<Vec<GridDiagram>, ParseError> {
    let lines = content_lines(text);
    lines.chunks(4).map(parse_record).collect()
}

/// Reads the compact `X/O` notation: two permutations giving, for each
/// column, the row of the X (black) and of the O (white) marking. Accepts
/// `X: 1 2 3 O: 2 3 1`, `X=[1,2,3] O=[2,3,1]` or a bare `1 2 3 / 2 3 1`;
/// entries are 1-based unless some entry is 0.
pub fn ingest_atlas(text: &str) -> Result<GridDiagram, ParseError> {
    let cleaned: String =
        text.chars().map(|c| if c == '[' || c == ']' || c == ',' || c == '=' || c == ':' { ' ' } else { c }).collect();
    let (xs, os) = if let Some((a, b)) = cleaned.split_once('/') {
        (a.to_string(), b.to_string())
    } else {
        let up = cleaned.to_ascii_uppercase();
        let xi = up.find('X').ok_or_else(|| perr(1, 1, "missing X"))?;
        let oi = up.find('O').ok_or_else(|| perr(1, 1, "missing O"))?;
        if xi < oi {
            (cleaned[xi + 1..oi].to_string(), cleaned[oi + 1..].to_string())
        } else {
            (cleaned[xi + 1..].to_string(), cleaned[oi + 1..xi].to_string())
        }
    };
    let nums = |s: &str| -> Result<Vec<usize>, ParseError> {
        s.split_whitespace()
            .filter(|t| !t.eq_ignore_ascii_case("x") && !t.eq_ignore_ascii_case("o"))
            .map(|t| t.parse::<usize>().map_err(|_| perr(1, text.find(t).map_or(1, |p| p + 1), format!("bad entry {t:?}"))))
            .collect()
    };
    let (mut x, mut o) = (nums(&xs)?, nums(&os)?);
    let one_based = !x.iter().chain(o.iter()).any(|&v| v == 0);
    if one_based {
        x.iter_mut().chain(o.iter_mut()).for_each(|v| *v -= 1);
    }
    GridDiagram::new(x, o).map_err(|e| perr(1, 1, e.to_string()))
}

fn level_json(l: Level) -> String {
    if l.is_integer() {
        l.to_string()
    } else {
        format!("\"{l}\"")
    }
}

pub fn emit_move(m: &MoveSpec) -> String {
    let cells = |v: &[Cell]| {
        v.iter().map(|c| format!("[{},{}]", level_json(c.col), level_json(c.row))).collect::<Vec<_>>().join(",")
    };
    format!("{{\"del\":[{}],\"add\":[{}]}}", cells(m.del()), cells(m.add()))
}

fn parse_level(v: &Value) -> Result<Level, String> {
    match v {
        Value::Number(x) => {
            let k = x.as_u64().ok_or_else(|| format!("bad coordinate {x}"))?;
            Ok(Level::at(k as usize))
        }
        Value::String(s) => s.parse::<Level>().map_err(|e| e.to_string()),
        other => Err(format!("bad coordinate {other}")),
    }
}

pub fn parse_move(s: &str) -> Result<MoveSpec, String> {
    let v: Value = serde_json::from_str(s).map_err(|e| e.to_string())?;
    let cells = |key: &str| -> Result<Vec<Cell>, String> {
        let arr = v.get(key).and_then(Value::as_array).ok_or_else(|| format!("missing {key:?}"))?;
        arr.iter()
            .map(|p| match p.as_array().map(|a| a.as_slice()) {
                Some([c, r]) => Ok(Cell::new(parse_level(c)?, parse_level(r)?)),
                _ => Err(format!("{key} entries must be [col, row] pairs")),
            })
            .collect()
    };
    MoveSpec::new(cells("del")?, cells("add")?).map_err(|e| e.to_string())
}

/// Move kinds a script may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KindMask {
    pub exchange: bool,
    pub type_i: bool,
    pub type_ii: bool,
}

impl KindMask {
    pub const ANY: KindMask = KindMask { exchange: true, type_i: true, type_ii: true };
    pub const EXCHANGE_II: KindMask = KindMask { exchange: true, type_i: false, type_ii: true };
    pub const EXCHANGE_I: KindMask = KindMask { exchange: true, type_i: true, type_ii: false };
    pub const EXCHANGE: KindMask = KindMask { exchange: true, type_i: false, type_ii: false };

    pub fn allows(&self, k: &MoveKind) -> bool {
        match k.stab_type() {
            None => self.exchange,
            Some(StabType::I) => self.type_i,
            Some(StabType::II) => self.type_ii,
        }
    }
}

impl std::str::FromStr for KindMask {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut m = KindMask { exchange: false, type_i: false, type_ii: false };
        for part in s.split('+') {
            match part.trim() {
                "any" => m = KindMask::ANY,
                "exchange" => m.exchange = true,
                "I" => m.type_i = true,
                "II" => m.type_ii = true,
                other => return Err(format!("unknown mask component {other:?}")),
            }
        }
        Ok(m)
    }
}

impl fmt::Display for KindMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == KindMask::ANY {
            return f.write_str("any");
        }
        let mut parts = Vec::new();
        if self.exchange {
            parts.push("exchange");
        }
        if self.type_i {
            parts.push("I");
        }
        if self.type_ii {
            parts.push("II");
        }
        f.write_str(&parts.join("+"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveScript {
    pub initial: GridDiagram,
    pub moves: Vec<MoveSpec>,
    pub declared_final: Option<GridDiagram>,
    pub allowed_kinds: Option<KindMask>,
}

impl MoveScript {
    pub fn new(initial: GridDiagram) -> MoveScript {
        MoveScript { initial, moves: Vec::new(), declared_final: None, allowed_kinds: None }
    }

    /// Diagrams before and after every move; fails at the first inapplicable move.
    pub fn replay(&self) -> Result<Vec<GridDiagram>, (usize, MoveError)> {
        let mut out = vec![self.initial.clone()];
        for (i, m) in self.moves.iter().enumerate() {
            let next = apply_detailed(out.last().unwrap(), m).map_err(|e| (i, e))?.diagram;
            out.push(next);
        }
        Ok(out)
    }

    pub fn endpoint(&self) -> Result<GridDiagram, (usize, MoveError)> {
        self.replay().map(|mut v| v.pop().unwrap())
    }

    /// Appends another script whose initial diagram is this script's endpoint
    /// (exactly, not up to shift).
    pub fn then(mut self, other: &MoveScript) -> MoveScript {
        self.moves.extend(other.moves.iter().cloned());
        self.declared_final = other.declared_final.clone();
        self
    }
}

pub fn emit_script(s: &MoveScript) -> String {
    let mut out = String::from("script\n");
    if let Some(m) = s.allowed_kinds {
        writeln!(out, "mask {m}").unwrap();
    }
    out.push_str("initial\n");
    out.push_str(&emit_diagram(&s.initial));
    if let Some(f) = &s.declared_final {
        out.push_str("final\n");
        out.push_str(&emit_diagram(f));
    }
    out.push_str("moves\n");
    for m in &s.moves {
        out.push_str(&emit_move(m));
        out.push('\n');
    }
    out
}

pub fn parse_script(text: &str) -> Result<MoveScript, ParseError> {
    let lines = content_lines(text);
    let mut i = 0;
    let expect = |i: usize, word: &str| -> Result<(), ParseError> {
        match lines.get(i) {
            Some((_, l)) if l.trim() == word => Ok(()),
            Some((n, _)) => Err(perr(*n, 1, format!("expected `{word}`"))),
            None => Err(perr(lines.last().map_or(1, |x| x.0), 1, format!("missing `{word}`"))),
        }
    };
    expect(i, "script")?;
    i += 1;
    let mut mask = None;
    if let Some((n, l)) = lines.get(i) {
        if let Some(m) = l.trim().strip_prefix("mask ") {
            mask = Some(m.parse::<KindMask>().map_err(|e| perr(*n, 6, e))?);
            i += 1;
        }
    }
    expect(i, "initial")?;
    let initial = parse_record(&lines[i + 1..(i + 5).min(lines.len())])?;
    i += 5;
    let mut declared_final = None;
    if lines.get(i).map(|(_, l)| l.trim()) == Some("final") {
        declared_final = Some(parse_record(&lines[i + 1..(i + 5).min(lines.len())])?);
        i += 5;
    }
    expect(i, "moves")?;
    i += 1;
    let mut moves = Vec::new();
    for (n, l) in &lines[i..] {
        let col = l.len() - l.trim_start().len() + 1;
        moves.push(parse_move(l.trim()).map_err(|e| perr(*n, col, e))?);
    }
    Ok(MoveScript { initial, moves, declared_final, allowed_kinds: mask })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub kind: MoveKind,
    pub size_after: usize,
    /// `(tb+, rot+, tb-, rot-)` after the step.
    pub invariants: [i64; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub initial_invariants: [i64; 4],
    pub steps: Vec<StepRecord>,
    pub endpoint: CanonicalForm,
    /// SHA-256 of the endpoint's canonical encoding, hex.
    pub endpoint_hash: String,
}

impl Certificate {
    pub fn kind_counts(&self) -> Vec<(MoveKind, usize)> {
        let mut v: Vec<(MoveKind, usize)> = Vec::new();
        for s in &self.steps {
            match v.iter_mut().find(|(k, _)| *k == s.kind) {
                Some(e) => e.1 += 1,
                None => v.push((s.kind, 1)),
            }
        }
        v.sort();
        v
    }

    pub fn count_where(&self, f: impl Fn(&MoveKind) -> bool) -> usize {
        self.steps.iter().filter(|s| f(&s.kind)).count()
    }

    /// Replays `script` and compares its endpoint hash with this certificate.
    pub fn replays(&self, script: &MoveScript) -> bool {
        script.endpoint().map(|e| endpoint_hash(&canonicalize(&e)) == self.endpoint_hash).unwrap_or(false)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = |x: &[i64; 4]| format!("tb+={} rot+={} tb-={} rot-={}", x[0], x[1], x[2], x[3]);
        writeln!(f, "certificate steps={}", self.steps.len())?;
        writeln!(f, "start {}", inv(&self.initial_invariants))?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {} {} n={} {}", i + 1, s.kind, s.size_after, inv(&s.invariants))?;
        }
        writeln!(f, "endpoint sha256={}", self.endpoint_hash)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Failure {
    #[error("step {step}: {error}")]
    Inapplicable { step: usize, error: MoveError },
    #[error("step {step}: {kind} is outside mask {mask}")]
    MaskViolation { step: usize, kind: MoveKind, mask: KindMask },
    #[error("endpoint is not equivalent to the declared final diagram")]
    EndpointMismatch,
}

pub fn endpoint_hash(c: &CanonicalForm) -> String {
    let mut h = Sha256::new();
    for x in c.encoding() {
        h.update(x.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Replays the script, classifying every step against the mask.
pub fn verify_script(s: &MoveScript) -> Result<Certificate, Failure> {
    let mut d = s.initial.clone();
    let mut steps = Vec::with_capacity(s.moves.len());
    for (i, m) in s.moves.iter().enumerate() {
        let step = i + 1;
        let applied = apply_detailed(&d, m).map_err(|error| Failure::Inapplicable { step, error })?;
        let kind = classify_applied(&d, m, &applied).map_err(|error| Failure::Inapplicable { step, error })?;
        if let Some(mask) = s.allowed_kinds {
            if !mask.allows(&kind) {
                return Err(Failure::MaskViolation { step, kind, mask });
            }
        }
        d = applied.diagram;
        steps.push(StepRecord { kind, size_after: d.size(), invariants: all_invariants(&d) });
    }
    if let Some(f) = &s.declared_final {
        if !equivalent(f, &d) {
            return Err(Failure::EndpointMismatch);
        }
    }
    let endpoint = canonicalize(&d);
    Ok(Certificate {
        initial_invariants: all_invariants(&s.initial),
        steps,
        endpoint_hash: endpoint_hash(&endpoint),
        endpoint,
    })
}

/// Mirrors a script through `reflect_vertical`: every move is reflected
/// column-wise, which exchanges type I and type II (de)stabilizations.
pub fn conjugate_by_reflection(s: &MoveScript) -> Result<MoveScript, Failure> {
    let mut d = s.initial.clone();
    let mut moves = Vec::with_capacity(s.moves.len());
    for (i, m) in s.moves.iter().enumerate() {
        moves.push(m.mirrored_columns(d.size()));
        d = apply_detailed(&d, m).map_err(|error| Failure::Inapplicable { step: i + 1, error })?.diagram;
    }
    let swap = |k: KindMask| KindMask { exchange: k.exchange, type_i: k.type_ii, type_ii: k.type_i };
    Ok(MoveScript {
        initial: s.initial.reflect_vertical(),
        moves,
        declared_final: s.declared_final.as_ref().map(|f| f.reflect_vertical()),
        allowed_kinds: s.allowed_kinds.map(swap),
    })
}
