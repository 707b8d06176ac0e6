//! The line-based `.finalg` structure format.
//!
//! ```text
//! finalg v1
//! kind module
//! base Finf
//! elements 0 1 -1
//! zero 0
//! neg 1 -1
//! ```
//!
//! Further keys: `one a`, `add a b c`, `mul a b c`, `scalar λ a b`,
//! `complete associative`, `default-add zero`. `#` starts a comment.

use crate::error::{Error, Result};
use crate::scalars::{Scalar, Semifield, SemifieldSpec};
use crate::structures::{build_structure, Completion, FiniteStructure, RawStructure, StructureKind};

pub const FINFTY: &str = include_str!("../../data/finfty.finalg");
pub const POLYGON4: &str = include_str!("../../data/polygon4.finalg");

/// Bundled documents by file name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "finfty.finalg" => Some(FINFTY),
        "polygon4.finalg" => Some(POLYGON4),
        _ => None,
    }
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("line {line}: {msg}"))
}

pub fn parse_base(text: &str) -> Result<Semifield> {
    match text {
        "Finf" => Ok(Semifield::finfty()),
        _ => {
            let k = text
                .strip_prefix("Finf^")
                .and_then(|k| k.parse::<u32>().ok())
                .ok_or_else(|| Error::Format(format!("unknown base `{text}`")))?;
            Semifield::cyclotomic(k)
        }
    }
}

fn base_name(base: &Semifield) -> Result<String> {
    match base.spec() {
        SemifieldSpec::FInfinity => Ok("Finf".into()),
        SemifieldSpec::Cyclotomic(k) => Ok(format!("Finf^{k}")),
        _ => Err(Error::Format(format!("base {base} has no .finalg name"))),
    }
}

/// A unit written as the base displays it (`1`, `-z^2`, ...).
pub fn parse_unit(base: &Semifield, text: &str) -> Result<Scalar> {
    base.units()
        .into_iter()
        .find(|u| base.display(u) == text)
        .ok_or_else(|| Error::Format(format!("`{text}` is not a unit of {base}")))
}

/// Reads a document into a raw table description without building it.
pub fn parse_finalg(text: &str) -> Result<RawStructure> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "finalg v1")) => {}
        Some((n, l)) => return Err(err(n, format!("expected header `finalg v1`, found `{l}`"))),
        None => return Err(Error::Format("empty document".into())),
    }
    let mut kind = None;
    let mut base = None;
    let mut elements: Option<Vec<String>> = None;
    let mut zero = None;
    let mut one = None;
    let mut completion = Completion::None;
    let mut neg = Vec::new();
    let mut add = Vec::new();
    let mut mul = Vec::new();
    let mut scalar_rows = Vec::new();
    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        let args = &words[1..];
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(err(n, format!("`{}` takes {k} argument(s)", words[0])))
            }
        };
        let once = |set: bool| if set { Err(err(n, format!("`{}` given twice", words[0]))) } else { Ok(()) };
        match words[0] {
            "kind" => {
                arity(1)?;
                once(kind.is_some())?;
                kind = Some(match args[0] {
                    "module" => StructureKind::Module,
                    "algebra" => StructureKind::Algebra,
                    other => return Err(err(n, format!("unknown kind `{other}`"))),
                });
            }
            "base" => {
                arity(1)?;
                once(base.is_some())?;
                base = Some(parse_base(args[0]).map_err(|e| err(n, e))?);
            }
            "elements" => {
                once(elements.is_some())?;
                if args.is_empty() {
                    return Err(err(n, "no elements"));
                }
                elements = Some(args.iter().map(|s| s.to_string()).collect());
            }
            "zero" => {
                arity(1)?;
                once(zero.is_some())?;
                zero = Some(args[0].to_string());
            }
            "one" => {
                arity(1)?;
                once(one.is_some())?;
                one = Some(args[0].to_string());
            }
            "neg" => {
                arity(2)?;
                neg.push((args[0].to_string(), args[1].to_string()));
            }
            "add" => {
                arity(3)?;
                add.push((args[0].to_string(), args[1].to_string(), args[2].to_string()));
            }
            "mul" => {
                arity(3)?;
                mul.push((args[0].to_string(), args[1].to_string(), args[2].to_string()));
            }
            "scalar" => {
                arity(3)?;
                scalar_rows.push((n, args[0].to_string(), args[1].to_string(), args[2].to_string()));
            }
            "complete" => {
                if args != ["associative"] {
                    return Err(err(n, "expected `complete associative`"));
                }
                completion = Completion::AssociativeDefaultZero;
            }
            "default-add" => {
                if args != ["zero"] {
                    return Err(err(n, "expected `default-add zero`"));
                }
                if completion == Completion::None {
                    completion = Completion::DefaultZero;
                }
            }
            other => return Err(err(n, format!("unknown key `{other}`"))),
        }
    }
    let kind = kind.ok_or_else(|| Error::Format("missing `kind`".into()))?;
    let base = base.ok_or_else(|| Error::Format("missing `base`".into()))?;
    let elements = elements.ok_or_else(|| Error::Format("missing `elements`".into()))?;
    let zero = zero.ok_or_else(|| Error::Format("missing `zero`".into()))?;
    if kind == StructureKind::Module && (one.is_some() || !mul.is_empty()) {
        return Err(Error::Format("modules take no `one` or `mul` rows".into()));
    }
    let scalar = scalar_rows
        .into_iter()
        .map(|(n, l, a, b)| Ok((parse_unit(&base, &l).map_err(|e| err(n, e))?, a, b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RawStructure { kind, base, elements, zero, one, neg, add, mul, scalar, completion })
}

/// Parses and builds, propagating axiom failures with their witness.
pub fn parse_structure(text: &str) -> Result<FiniteStructure> {
    build_structure(&parse_finalg(text)?)
}

/// Canonical document: every table entry that the reader cannot infer.
pub fn write_finalg(m: &FiniteStructure) -> Result<String> {
    if let Some(bad) = m.names().iter().find(|s| s.is_empty() || s.contains(|c: char| c.is_whitespace() || c == '#')) {
        return Err(Error::Format(format!("element name `{bad}` cannot be written")));
    }
    if m.is_algebra() && !m.is_commutative() {
        return Err(Error::Format("multiplication rows are read commutatively".into()));
    }
    let base = m.base();
    let mut out = String::from("finalg v1\n");
    out += &format!("kind {}\n", if m.is_algebra() { "algebra" } else { "module" });
    out += &format!("base {}\n", base_name(base)?);
    out += &format!("elements {}\n", m.names().join(" "));
    out += &format!("zero {}\n", m.name(m.zero()));
    if let Some(o) = m.one() {
        out += &format!("one {}\n", m.name(o));
    }
    for a in m.nonzero() {
        if a <= m.neg(a) {
            out += &format!("neg {} {}\n", m.name(a), m.name(m.neg(a)));
        }
    }
    let units = base.units();
    let minus = base.unit_index(&base.minus_one()).unwrap();
    for (u, unit) in units.iter().enumerate().skip(1).filter(|&(u, _)| u != minus) {
        for a in m.nonzero() {
            out += &format!("scalar {} {} {}\n", base.display(unit), m.name(a), m.name(m.scale_unit(u, a)));
        }
    }
    for a in m.nonzero() {
        for b in m.nonzero().filter(|&b| b > a && b != m.neg(a)) {
            out += &format!("add {} {} {}\n", m.name(a), m.name(b), m.name(m.add(a, b)));
        }
    }
    if m.is_algebra() {
        for a in m.nonzero() {
            for b in m.nonzero().filter(|&b| b >= a) {
                out += &format!("mul {} {} {}\n", m.name(a), m.name(b), m.name(m.mul(a, b)));
            }
        }
    }
    Ok(out)
}
