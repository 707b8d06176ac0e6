//! Pair files: one `lhs ~ rhs` per line, `#` comments.

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};
use crate::structures::{Elem, FiniteStructure};

use super::expr::parse_poly;

/// A pair as written, with its line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairLine {
    pub line: usize,
    pub lhs: String,
    pub rhs: String,
}

pub fn parse_pairs(text: &str) -> Result<Vec<PairLine>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split('~');
        match (parts.next(), parts.next(), parts.next()) {
            (Some(l), Some(r), None) if !l.trim().is_empty() && !r.trim().is_empty() => out.push(PairLine {
                line: i + 1,
                lhs: l.trim().to_string(),
                rhs: r.trim().to_string(),
            }),
            _ => return Err(Error::Format(format!("line {}: expected `expr ~ expr`", i + 1))),
        }
    }
    Ok(out)
}

/// Resolves both sides as element names.
pub fn pairs_in_structure(m: &FiniteStructure, pairs: &[PairLine]) -> Result<Vec<(Elem, Elem)>> {
    pairs
        .iter()
        .map(|p| {
            let at = |s: &str| m.index_of(s).map_err(|_| Error::Format(format!("line {}: unknown element `{s}`", p.line)));
            Ok((at(&p.lhs)?, at(&p.rhs)?))
        })
        .collect()
}

/// Parses both sides as polynomials of `ring`.
pub fn pairs_in_ring(ring: &PolyRing, pairs: &[PairLine]) -> Result<Vec<(Polynomial, Polynomial)>> {
    pairs
        .iter()
        .map(|p| {
            let at = |s: &str| {
                parse_poly(s, ring).map_err(|e| Error::Format(format!("line {}: {e}", p.line)))
            };
            Ok((at(&p.lhs)?, at(&p.rhs)?))
        })
        .collect()
}
