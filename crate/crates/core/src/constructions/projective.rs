//! Projectivization, projective closure and graded components of the ring
//! of functions.

use super::tensor::{sym_power, sym_presentation, SymPower};
use super::{coproduct, product};
use crate::error::Result;
use crate::structures::{dual_module, isomorphic, Elem, FiniteStructure};

/// Nonzero elements of `m` up to the unit action, each orbit sorted.
pub fn projectivize(m: &FiniteStructure) -> Vec<Vec<Elem>> {
    let mut seen = vec![false; m.len()];
    let mut out = Vec::new();
    for a in m.nonzero() {
        if seen[a] {
            continue;
        }
        let mut orbit: Vec<Elem> = (0..m.unit_count()).map(|u| m.scale_unit(u, a)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit.iter().for_each(|&x| seen[x] = true);
        out.push(orbit);
    }
    out
}

/// ℙ(M × F). Points with a nonzero last coordinate form the affine part,
/// which is in bijection with M through m ↦ [m : 1].
#[derive(Debug, Clone)]
pub struct ProjectiveClosure {
    pub ambient: FiniteStructure,
    pub points: Vec<Vec<Elem>>,
    pub affine: Vec<bool>,
    /// `chart[m]` is the point [m : 1].
    pub chart: Vec<usize>,
}

impl ProjectiveClosure {
    pub fn affine_count(&self) -> usize {
        self.affine.iter().filter(|&&a| a).count()
    }

    pub fn point_name(&self, p: usize) -> String {
        format!("[{}]", self.ambient.name(self.points[p][0]))
    }
}

pub fn projective_closure(m: &FiniteStructure) -> Result<ProjectiveClosure> {
    let line = FiniteStructure::base_line(m.base())?;
    let ambient = product(m, &line)?;
    let k = line.len();
    let one = line.index_of("1")?;
    let points = projectivize(&ambient);
    let mut point_of = vec![usize::MAX; ambient.len()];
    for (p, orbit) in points.iter().enumerate() {
        orbit.iter().for_each(|&x| point_of[x] = p);
    }
    let affine = points.iter().map(|o| o[0] % k != line.zero()).collect();
    let chart = m.elements().map(|a| point_of[a * k + one]).collect();
    Ok(ProjectiveClosure { ambient, points, affine, chart })
}

/// Degree-n homogeneous functions on ℙM: Sym^n(M*).
pub fn function_ring_component(m: &FiniteStructure, n: usize) -> Result<SymPower> {
    sym_power(&dual_module(m)?.module, n)
}

/// ⊕_{k≤n} Sym^k(M*), the degree-n functions on the projective closure.
pub fn graded_function_ring(m: &FiniteStructure, n: usize) -> Result<FiniteStructure> {
    let dual = dual_module(m)?.module;
    let mut acc = sym_power(&dual, 0)?.module;
    for k in 1..=n {
        acc = coproduct(&acc, &sym_power(&dual, k)?.module)?;
    }
    Ok(acc)
}

/// Comparison of Sym^n((M×F)*) with ⊕_{k≤n} Sym^k(M*).
#[derive(Debug, Clone, serde::Serialize)]
pub struct FunctionRingReport {
    pub n: usize,
    pub homogeneous_size: usize,
    pub graded_size: usize,
    /// "free rank" when both sides are free, otherwise "isomorphism".
    pub method: &'static str,
    pub verified: bool,
}

pub fn verify_function_ring(m: &FiniteStructure, n: usize) -> Result<FunctionRingReport> {
    let closure_dual = dual_module(&projective_closure(m)?.ambient)?.module;
    let lhs = sym_presentation(&closure_dual, n)?;
    let dual = dual_module(m)?.module;
    let rhs = (0..=n).map(|k| sym_presentation(&dual, k)).collect::<Result<Vec<_>>>()?;
    let homogeneous_size = lhs.class_count();
    let graded_size = rhs.iter().map(|p| p.class_count()).product();
    if lhs.is_free() && rhs.iter().all(|p| p.is_free()) {
        let verified = lhs.rank() == rhs.iter().map(|p| p.rank()).sum::<usize>();
        return Ok(FunctionRingReport { n, homogeneous_size, graded_size, method: "free rank", verified });
    }
    let verified = isomorphic(&sym_power(&closure_dual, n)?.module, &graded_function_ring(m, n)?);
    Ok(FunctionRingReport { n, homogeneous_size, graded_size, method: "isomorphism", verified })
}
