use std::collections::HashMap;

use super::{Elem, FiniteStructure};
use crate::error::{Error, Result};
use crate::scalars::{Scalar, Semifield};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    Module,
    Algebra,
}

/// How unspecified sums are filled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    /// Every sum must be derivable from the rows and the axioms' trivial cases.
    #[default]
    None,
    /// Unspecified sums are 0.
    DefaultZero,
    /// Consequences of associativity are forced first; each remaining gap is
    /// set to 0 one at a time, re-forcing after each.
    AssociativeDefaultZero,
}

/// Table description as read from a file, with elements referenced by name.
#[derive(Debug, Clone)]
pub struct RawStructure {
    pub kind: StructureKind,
    pub base: Semifield,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: Option<String>,
    pub neg: Vec<(String, String)>,
    pub add: Vec<(String, String, String)>,
    pub mul: Vec<(String, String, String)>,
    pub scalar: Vec<(Scalar, String, String)>,
    pub completion: Completion,
}

impl RawStructure {
    pub fn new(base: Semifield, elements: &[&str], zero: &str) -> Self {
        RawStructure {
            kind: StructureKind::Module,
            base,
            elements: elements.iter().map(|s| s.to_string()).collect(),
            zero: zero.to_string(),
            one: None,
            neg: Vec::new(),
            add: Vec::new(),
            mul: Vec::new(),
            scalar: Vec::new(),
            completion: Completion::None,
        }
    }

    pub fn neg_row(&mut self, a: &str, b: &str) -> &mut Self {
        self.neg.push((a.into(), b.into()));
        self
    }

    pub fn add_row(&mut self, a: &str, b: &str, c: &str) -> &mut Self {
        self.add.push((a.into(), b.into(), c.into()));
        self
    }

    pub fn mul_row(&mut self, a: &str, b: &str, c: &str) -> &mut Self {
        self.mul.push((a.into(), b.into(), c.into()));
        self
    }
}

struct Builder<'a> {
    raw: &'a RawStructure,
    index: HashMap<&'a str, Elem>,
    n: usize,
    units: Vec<Scalar>,
}

impl<'a> Builder<'a> {
    fn idx(&self, row: &str, name: &str) -> Result<Elem> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Format(format!("{row}: unknown element `{name}`")))
    }

    fn name(&self, a: Elem) -> &str {
        &self.raw.elements[a]
    }

    fn negation(&self, zero: Elem) -> Result<Vec<Elem>> {
        let mut neg: Vec<Option<Elem>> = vec![None; self.n];
        neg[zero] = Some(zero);
        for (a, b) in &self.raw.neg {
            let row = format!("neg {a} {b}");
            let (i, j) = (self.idx(&row, a)?, self.idx(&row, b)?);
            for (x, y) in [(i, j), (j, i)] {
                match neg[x] {
                    Some(prev) if prev != y => {
                        return Err(Error::Completion(format!("{row} conflicts with neg {} {}", a, self.name(prev))))
                    }
                    _ => neg[x] = Some(y),
                }
            }
        }
        neg.into_iter()
            .enumerate()
            .map(|(a, v)| v.ok_or_else(|| Error::Format(format!("no negation given for `{}`", self.name(a)))))
            .collect()
    }

    /// Scalar table from explicit rows, 1 and −1, closed under composition.
    fn scalars(&self, zero: Elem, neg: &[Elem]) -> Result<Vec<Elem>> {
        let base = &self.raw.base;
        let k = self.units.len();
        let n = self.n;
        let mut t: Vec<Option<Elem>> = vec![None; k * n];
        let minus = base.unit_index(&base.minus_one()).unwrap();
        for a in 0..n {
            t[a] = Some(a);
            t[minus * n + a] = Some(neg[a]);
        }
        for u in 0..k {
            t[u * n + zero] = Some(zero);
        }
        for (l, a, b) in &self.raw.scalar {
            let row = format!("scalar {} {a} {b}", base.display(l));
            let u = base
                .unit_index(l)
                .ok_or_else(|| Error::Format(format!("{row}: scalar must be a unit of {base}")))?;
            let (i, j) = (self.idx(&row, a)?, self.idx(&row, b)?);
            match t[u * n + i] {
                Some(prev) if prev != j => {
                    return Err(Error::Completion(format!("{row} conflicts with earlier value {}", self.name(prev))))
                }
                _ => t[u * n + i] = Some(j),
            }
        }
        let prod: Vec<Vec<usize>> = self
            .units
            .iter()
            .map(|x| self.units.iter().map(|y| base.unit_index(&base.mul(x, y)).unwrap()).collect())
            .collect();
        loop {
            let mut changed = false;
            for u in 0..k {
                for v in 0..k {
                    let w = prod[u][v];
                    for a in 0..n {
                        if let Some(va) = t[v * n + a] {
                            if let Some(uva) = t[u * n + va] {
                                match t[w * n + a] {
                                    None => {
                                        t[w * n + a] = Some(uva);
                                        changed = true;
                                    }
                                    Some(p) if p != uva => {
                                        return Err(Error::Completion(format!(
                                            "scalar action is not a group action at `{}`",
                                            self.name(a)
                                        )))
                                    }
                                    _ => {}
                                }
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        t.into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::Format(format!(
                        "scalar action of {} on `{}` unspecified",
                        base.display(&self.units[i / n]),
                        self.name(i % n)
                    ))
                })
            })
            .collect()
    }
}

/// Partial addition table with propagation along negation, the scalar
/// action and commutativity.
struct AddTable<'a> {
    n: usize,
    t: Vec<Option<Elem>>,
    scalar: &'a [Elem],
    k: usize,
}

impl AddTable<'_> {
    fn get(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.t[a * self.n + b]
    }

    /// Returns whether anything changed; `Err` carries the conflicting pair
    /// and both values.
    fn set(&mut self, a: Elem, b: Elem, v: Elem) -> std::result::Result<bool, (Elem, Elem, Elem, Elem)> {
        let mut changed = false;
        for u in 0..self.k {
            let (x, y, z) = (self.scalar[u * self.n + a], self.scalar[u * self.n + b], self.scalar[u * self.n + v]);
            for (p, q) in [(x, y), (y, x)] {
                match self.t[p * self.n + q] {
                    None => {
                        self.t[p * self.n + q] = Some(z);
                        changed = true;
                    }
                    Some(w) if w != z => return Err((p, q, w, z)),
                    _ => {}
                }
            }
        }
        Ok(changed)
    }

    /// One pass of associativity forcing over all triples.
    fn force_pass(&mut self) -> std::result::Result<bool, (Elem, Elem, Elem, Elem)> {
        let n = self.n;
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.get(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = self.get(b, c) else { continue };
                    match (self.get(ab, c), self.get(a, bc)) {
                        (Some(l), None) => changed |= self.set(a, bc, l)?,
                        (None, Some(r)) => changed |= self.set(ab, c, r)?,
                        (Some(l), Some(r)) if l != r => return Err((a, b, c, usize::MAX)),
                        _ => {}
                    }
                }
            }
        }
        Ok(changed)
    }
}

/// Builds and validates a structure from a raw table description.
pub fn build_structure(raw: &RawStructure) -> Result<FiniteStructure> {
    let base = &raw.base;
    if !base.is_finite() {
        return Err(Error::InvalidArgument("structures need a finite base semifield".into()));
    }
    let mut index = HashMap::new();
    for (i, e) in raw.elements.iter().enumerate() {
        if index.insert(e.as_str(), i).is_some() {
            return Err(Error::Format(format!("duplicate element `{e}`")));
        }
    }
    let b = Builder { raw, index, n: raw.elements.len(), units: base.units() };
    let n = b.n;
    let zero = b.idx("zero", &raw.zero)?;
    let one = raw.one.as_deref().map(|o| b.idx("one", o)).transpose()?;
    let neg = b.negation(zero)?;
    let scalar = b.scalars(zero, &neg)?;

    let mut add = AddTable { n, t: vec![None; n * n], scalar: &scalar, k: b.units.len() };
    let conflict = |(p, q, w, z): (Elem, Elem, Elem, Elem)| {
        if z == usize::MAX {
            Error::Completion(format!(
                "associativity cannot hold at ({}, {}, {})",
                b.name(p),
                b.name(q),
                b.name(w)
            ))
        } else {
            Error::Completion(format!("{} + {} would be both {} and {}", b.name(p), b.name(q), b.name(w), b.name(z)))
        }
    };
    for a in 0..n {
        add.set(a, a, a).map_err(conflict)?;
        add.set(zero, a, zero).map_err(conflict)?;
        add.set(a, neg[a], zero).map_err(conflict)?;
    }
    let mut seen = HashMap::new();
    for (x, y, z) in &raw.add {
        let row = format!("add {x} {y} {z}");
        let (i, j, k) = (b.idx(&row, x)?, b.idx(&row, y)?, b.idx(&row, z)?);
        let key = (i.min(j), i.max(j));
        if let Some(prev) = seen.insert(key, row.clone()) {
            return Err(Error::Format(format!("duplicate table entry: {row} after {prev}")));
        }
        add.set(i, j, k).map_err(conflict)?;
    }
    match raw.completion {
        Completion::None => {}
        Completion::DefaultZero => {
            for i in 0..n * n {
                if add.t[i].is_none() {
                    add.set(i / n, i % n, zero).map_err(conflict)?;
                }
            }
        }
        Completion::AssociativeDefaultZero => loop {
            while add.force_pass().map_err(conflict)? {}
            match add.t.iter().position(|v| v.is_none()) {
                Some(i) => {
                    add.set(i / n, i % n, zero).map_err(conflict)?;
                }
                None => break,
            }
        },
    }
    let add_table = add
        .t
        .iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Format(format!("{} + {} unspecified", b.name(i / n), b.name(i % n)))))
        .collect::<Result<Vec<_>>>()?;

    let mul = match raw.kind {
        StructureKind::Module => None,
        StructureKind::Algebra => Some(build_mul(&b, zero, one, &scalar)?),
    };
    FiniteStructure::from_tables(
        base.clone(),
        raw.elements.clone(),
        zero,
        one,
        add_table,
        neg,
        scalar,
        mul,
    )
}

/// Multiplication rows are read commutatively and propagated along the
/// scalar action: (λa)(μb) = λμ(ab).
fn build_mul(b: &Builder, zero: Elem, one: Option<Elem>, scalar: &[Elem]) -> Result<Vec<Elem>> {
    let n = b.n;
    let k = b.units.len();
    let base = &b.raw.base;
    let mut t: Vec<Option<Elem>> = vec![None; n * n];
    let put = |t: &mut Vec<Option<Elem>>, x: Elem, y: Elem, v: Elem| -> Result<()> {
        for u in 0..k {
            for w in 0..k {
                let uw = base.unit_index(&base.mul(&b.units[u], &b.units[w])).unwrap();
                let (p, q, r) = (scalar[u * n + x], scalar[w * n + y], scalar[uw * n + v]);
                for (i, j) in [(p, q), (q, p)] {
                    match t[i * n + j] {
                        Some(prev) if prev != r => {
                            return Err(Error::Completion(format!(
                                "{} * {} would be both {} and {}",
                                b.name(i),
                                b.name(j),
                                b.name(prev),
                                b.name(r)
                            )))
                        }
                        _ => t[i * n + j] = Some(r),
                    }
                }
            }
        }
        Ok(())
    };
    for a in 0..n {
        put(&mut t, zero, a, zero)?;
        if let Some(o) = one {
            put(&mut t, o, a, a)?;
        }
    }
    let mut seen = HashMap::new();
    for (x, y, z) in &b.raw.mul {
        let row = format!("mul {x} {y} {z}");
        let (i, j, l) = (b.idx(&row, x)?, b.idx(&row, y)?, b.idx(&row, z)?);
        if let Some(prev) = seen.insert((i.min(j), i.max(j)), row.clone()) {
            return Err(Error::Format(format!("duplicate table entry: {row} after {prev}")));
        }
        put(&mut t, i, j, l)?;
    }
    t.iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Format(format!("{} * {} unspecified", b.name(i / n), b.name(i % n)))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finfty_raw() -> RawStructure {
        let mut r = RawStructure::new(Semifield::finfty(), &["0", "1", "-1"], "0");
        r.neg_row("1", "-1");
        r
    }

    #[test]
    fn finfty_needs_no_add_rows() {
        let s = build_structure(&finfty_raw()).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.add(1, 2), 0);
    }

    #[test]
    fn unknown_element_names_the_row() {
        let mut r = finfty_raw();
        r.add_row("1", "y", "0");
        let err = build_structure(&r).unwrap_err().to_string();
        assert!(err.contains("add 1 y 0"), "{err}");
    }

    #[test]
    fn duplicate_rows_rejected() {
        let mut r = RawStructure::new(Semifield::finfty(), &["0", "a", "-a", "b", "-b"], "0");
        r.neg_row("a", "-a").neg_row("b", "-b").add_row("a", "b", "0").add_row("b", "a", "0");
        r.completion = Completion::DefaultZero;
        assert!(matches!(build_structure(&r), Err(Error::Format(_))));
    }

    #[test]
    fn incomplete_table_without_completion() {
        let mut r = RawStructure::new(Semifield::finfty(), &["0", "a", "-a", "b", "-b"], "0");
        r.neg_row("a", "-a").neg_row("b", "-b");
        assert!(build_structure(&r).is_err());
        r.completion = Completion::DefaultZero;
        let s = build_structure(&r).unwrap();
        assert_eq!(s.len(), 5);
    }

    #[test]
    fn forcing_fills_incidences() {
        let mut r = RawStructure::new(Semifield::finfty(), &["0", "a", "-a", "b", "-b", "e", "-e"], "0");
        r.neg_row("a", "-a").neg_row("b", "-b").neg_row("e", "-e").add_row("a", "b", "e");
        r.completion = Completion::AssociativeDefaultZero;
        let s = build_structure(&r).unwrap();
        let (a, e) = (s.index_of("a").unwrap(), s.index_of("e").unwrap());
        assert_eq!(s.add(a, e), e);
    }
}
