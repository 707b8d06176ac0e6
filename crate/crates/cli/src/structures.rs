use finfty::constructions::{
    coproduct, function_ring_component, product, projective_closure, sym_power, tensor as tensor_product,
    verify_function_ring,
};
use finfty::structures::{
    build_structure, dual_module, join as lub, module_dimension, natural_order, polygon_module, Closed,
    FiniteStructure,
};
use finfty::textio::{parse_finalg, write_finalg};

use crate::{load, read, Failure, Outcome, Report};

fn emit(r: &mut Report, m: &FiniteStructure) -> Result<(), Failure> {
    let doc = write_finalg(m)?;
    r.set("size", m.len()).set("finalg", &doc);
    r.text.push_str(&doc);
    Ok(())
}

pub fn axioms(file: &str) -> Outcome {
    let mut r = Report::new("axioms");
    let raw = parse_finalg(&read(file)?)?;
    match build_structure(&raw) {
        Ok(m) => {
            let kind = if m.is_algebra() { "algebra" } else { "module" };
            r.set("size", m.len()).set("kind", kind).set("witness", None::<()>);
            r.line(format!("ok: {kind} over {} with {} elements", m.base(), m.len()));
        }
        Err(e) => match crate::witness_of(&e) {
            Some(w) => {
                r.refute(w);
            }
            None => return Err(e.into()),
        },
    }
    Ok(r)
}

pub fn order(file: &str) -> Outcome {
    let m = load(file)?;
    let ord = natural_order(&m);
    let mut r = Report::new("order");
    let covers: Vec<(String, String)> = m
        .elements()
        .flat_map(|a| m.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| ord.lt(a, b) && !m.elements().any(|c| ord.lt(a, c) && ord.lt(c, b)))
        .map(|(a, b)| (m.name(a).to_string(), m.name(b).to_string()))
        .collect();
    for (a, b) in &covers {
        r.line(format!("{a} < {b}"));
    }
    let names = |xs: &[usize]| xs.iter().map(|&x| m.name(x).to_string()).collect::<Vec<_>>();
    r.line(format!("minimal: {}", names(&ord.minimal).join(" ")));
    r.line(format!("maximal: {}", names(&ord.maximal).join(" ")));
    r.set("covers", &covers).set("minimal", names(&ord.minimal)).set("maximal", names(&ord.maximal));
    Ok(r)
}

pub fn dim(file: &str) -> Outcome {
    let m = load(file)?;
    let d = module_dimension(&m);
    let mut r = Report::new("dim");
    r.set("dimension", d).line(format!("dimension {d}"));
    Ok(r)
}

pub fn dual(file: &str) -> Outcome {
    let m = load(file)?;
    let d = dual_module(&m)?;
    let mut r = Report::new("dual");
    emit(&mut r, &d.module)?;
    Ok(r)
}

pub fn join(file: &str, a: &str, b: &str) -> Outcome {
    let m = load(file)?;
    let (x, y) = (m.index_of(a)?, m.index_of(b)?);
    let v = match lub(&m, x, y) {
        Closed::Elem(e) => m.name(e).to_string(),
        Closed::Top => "top".to_string(),
    };
    let mut r = Report::new("join");
    r.set("join", &v).line(format!("{a} v {b} = {v}"));
    Ok(r)
}

pub fn polygon(n: usize) -> Outcome {
    let mut r = Report::new("polygon");
    emit(&mut r, &polygon_module(n)?)?;
    Ok(r)
}

pub fn binary(verb: &str, left: &str, right: &str) -> Outcome {
    let (a, b) = (load(left)?, load(right)?);
    let m = if verb == "coproduct" { coproduct(&a, &b)? } else { product(&a, &b)? };
    let mut r = Report::new(verb);
    emit(&mut r, &m)?;
    Ok(r)
}

pub fn tensor(left: &str, right: &str) -> Outcome {
    let (a, b) = (load(left)?, load(right)?);
    let t = tensor_product(&a, &b)?;
    let mut r = Report::new("tensor");
    emit(&mut r, &t.module)?;
    Ok(r)
}

pub fn sym(file: &str, n: usize) -> Outcome {
    let m = load(file)?;
    let s = sym_power(&m, n)?;
    let mut r = Report::new("sym");
    r.set("n", n).set("free", s.presentation.is_free());
    emit(&mut r, &s.module)?;
    Ok(r)
}

pub fn pclosure(file: &str) -> Outcome {
    let m = load(file)?;
    let pc = projective_closure(&m)?;
    let mut r = Report::new("pclosure");
    let mut points = Vec::new();
    for p in 0..pc.points.len() {
        let where_ = if pc.affine[p] { "affine" } else { "infinity" };
        r.line(format!("{} {where_}", pc.point_name(p)));
        points.push(serde_json::json!({ "point": pc.point_name(p), "affine": pc.affine[p] }));
    }
    let chart: Vec<(String, String)> =
        m.elements().map(|a| (m.name(a).to_string(), pc.point_name(pc.chart[a]))).collect();
    for (a, p) in &chart {
        r.line(format!("{a} -> {p}"));
    }
    r.set("points", points).set("affine_count", pc.affine_count()).set("chart", chart);
    Ok(r)
}

pub fn funring(file: &str, n: usize) -> Outcome {
    let m = load(file)?;
    let c = function_ring_component(&m, n)?;
    let report = verify_function_ring(&m, n)?;
    let mut r = Report::new("funring");
    r.set("n", n).set("graded", &report);
    r.line(format!(
        "homogeneous degree {n} on the projective closure: {} elements, graded sum: {} elements ({}, {})",
        report.homogeneous_size,
        report.graded_size,
        report.method,
        if report.verified { "isomorphic" } else { "NOT isomorphic" }
    ));
    r.verified = report.verified;
    emit(&mut r, &c.module)?;
    Ok(r)
}
