//! Certifies that two diagrams have different ξ+ Legendrian types.
//!
//! The argument is the exchange-class count: if `R` and `X` have the same ξ-
//! type, `X` is outside the exchange class of `R`, and every symmetry of `R` is
//! realized by type II moves, then their ξ+ types differ. The last condition is
//! not computed here; it enters as a cited assumption. An optional type I
//! bridge from `X` to `R'` transfers the conclusion to `R'`.

use std::fmt;

use thiserror::Error;

use crate::exchange::{enumerate_class, ClassError};
use crate::grid::{equivalent, GridDiagram};
use crate::script::{verify_script, Certificate, Failure, KindMask, MoveScript};

/// The hypothesis that every symmetry of the first diagram is realized by
/// exchange moves and type II (de)stabilizations, with where it comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymAssumption {
    pub citation: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Distinct,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Distinct => "L+ distinct",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistinguishError {
    #[error("evidence script: {0}")]
    Evidence(Failure),
    #[error("evidence script does not start at the first diagram")]
    EvidenceStart,
    #[error("bridge script: {0}")]
    Bridge(Failure),
    #[error("bridge script does not connect the evidence endpoint to the second diagram")]
    BridgeEnds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub verdict: Verdict,
    pub evidence: Certificate,
    pub bridge: Option<Certificate>,
    /// Size of the exchange class of the first diagram, if enumeration finished.
    pub class_size: Option<usize>,
    /// Whether the evidence endpoint lies in that class.
    pub same_class: Option<bool>,
    pub citation: Option<String>,
    /// One line per failed conjunct.
    pub reasons: Vec<String>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "xi- evidence: certified, {} steps, mask exchange+II", self.evidence.steps.len())?;
        if let Some(b) = &self.bridge {
            writeln!(f, "xi+ bridge: certified, {} steps, mask exchange+I", b.steps.len())?;
        }
        match self.class_size {
            Some(k) => writeln!(f, "exchange class of first diagram: {k} members")?,
            None => writeln!(f, "exchange class of first diagram: enumeration truncated")?,
        }
        match self.same_class {
            Some(true) => writeln!(f, "evidence endpoint is in that class")?,
            Some(false) => writeln!(f, "evidence endpoint is not in that class")?,
            None => {}
        }
        match &self.citation {
            Some(c) => writeln!(f, "symmetry assumption: {c}")?,
            None => writeln!(f, "symmetry assumption: not given")?,
        }
        for r in &self.reasons {
            writeln!(f, "reason: {r}")?;
        }
        Ok(())
    }
}

/// `evidence` must lead from `r` by exchanges and type II moves to a diagram
/// `x`. Without a bridge `x` must be equivalent to `r2`; with one, the bridge
/// must join `x` and `r2` (in either direction) by exchanges and type I moves.
pub fn distinguish(
    r: &GridDiagram,
    r2: &GridDiagram,
    evidence: &MoveScript,
    bridge: Option<&MoveScript>,
    sym: Option<&SymAssumption>,
    member_limit: usize,
) -> Result<Report, DistinguishError> {
    if !equivalent(&evidence.initial, r) {
        return Err(DistinguishError::EvidenceStart);
    }
    let mut ev = evidence.clone();
    ev.allowed_kinds = Some(KindMask::EXCHANGE_II);
    let cert = verify_script(&ev).map_err(DistinguishError::Evidence)?;
    let x = cert.endpoint.diagram().clone();

    let bridge_cert = match bridge {
        None => {
            if !equivalent(&x, r2) {
                return Err(DistinguishError::BridgeEnds);
            }
            None
        }
        Some(b) => {
            let mut b = b.clone();
            b.allowed_kinds = Some(KindMask::EXCHANGE_I);
            let c = verify_script(&b).map_err(DistinguishError::Bridge)?;
            let end = c.endpoint.diagram();
            let forward = equivalent(&b.initial, &x) && equivalent(end, r2);
            let backward = equivalent(&b.initial, r2) && equivalent(end, &x);
            if !forward && !backward {
                return Err(DistinguishError::BridgeEnds);
            }
            Some(c)
        }
    };

    let mut reasons = vec![];
    let (class_size, same_class) = match enumerate_class(r, member_limit) {
        Ok(c) => {
            let inside = c.contains(&x);
            if inside {
                reasons.push("the evidence endpoint is in the exchange class of the first diagram".into());
            }
            (Some(c.members.len()), Some(inside))
        }
        Err(ClassError::LimitExceeded { .. }) => {
            reasons.push(format!("exchange class enumeration exceeded {member_limit} members"));
            (None, None)
        }
    };
    let citation = sym.map(|s| s.citation.clone());
    if citation.is_none() {
        reasons.push("no symmetry assumption was given".into());
    }
    let verdict = if reasons.is_empty() { Verdict::Distinct } else { Verdict::Inconclusive };
    Ok(Report { verdict, evidence: cert, bridge: bridge_cert, class_size, same_class, citation, reasons })
}
