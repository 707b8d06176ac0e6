use finfty::primes::{catalog_entry, krull_via_catalog, polyprime_catalog, two_variable_chain, verify_catalog_entry, CatalogReport};

use crate::{Outcome, Report};

pub const CATALOG_BOUND: u32 = 8;
/// Largest window the two-variable closure fits in.
pub const CHAIN_BOUND: u32 = 3;

fn report_line(rep: &CatalogReport) -> String {
    let n = rep.n.map(|n| format!("({n})")).unwrap_or_default();
    let mark = if rep.verified { "ok" } else { "FAILED" };
    format!("family {}{n}: {mark} [{}] model {}", rep.family, rep.status, rep.model)
}

pub fn krull(n_max: u32, bound: Option<u32>, two_variable: bool) -> Outcome {
    let bound = bound.unwrap_or(CATALOG_BOUND);
    let k = krull_via_catalog(n_max, bound)?;
    let mut r = Report::new("krull");
    r.set("bound", k.bound)
        .set("dimension", k.dimension)
        .set("chain", &k.chain)
        .set("certificate", k.certificate)
        .set("entries", &k.entries)
        .set("edges", &k.edges);
    r.line(format!("catalog primes: {}", k.entries.len()));
    r.line(format!("longest chain: {}", k.chain.join(" < ")));
    r.line(format!("krull dimension {}", k.dimension));
    r.line(format!("certificate gen(1+x, x) < gen(x, 1): {}", if k.certificate { "ok" } else { "FAILED" }));
    r.verified = k.verified;
    if two_variable {
        let c = two_variable_chain(bound.min(CHAIN_BOUND))?;
        r.line(format!("two variables, degree window {}:", c.bound));
        for link in &c.chain {
            r.line(format!("  {} = gen{{{}}} model {}", link.name, link.generators.join(", "), link.model));
        }
        for (a, b) in &c.strict {
            r.line(format!("  separated by ({a}, {b})"));
        }
        r.line(format!("  {}", c.status));
        r.verified &= c.verified;
        r.set("two_variable", &c);
    }
    Ok(r)
}

pub fn catalog(family: u8, n: Option<u32>, bound: Option<u32>) -> Outcome {
    let e = catalog_entry(family, n)?;
    let bound = bound.unwrap_or(CATALOG_BOUND);
    let rep = verify_catalog_entry(&e, bound)?;
    let mut r = Report::new("catalog");
    r.line(e.label());
    for g in &rep.generators {
        r.line(format!("  {g}"));
    }
    r.line(report_line(&rep));
    if let Some(w) = &rep.witness {
        r.line(format!("refuted: {w}"));
    }
    r.verified = rep.verified;
    r.set("bound", bound).set("witness", &rep.witness).set("entry", &rep);
    Ok(r)
}

pub fn verify_catalog(n_max: u32, bound: Option<u32>) -> Outcome {
    let bound = bound.unwrap_or(CATALOG_BOUND);
    let mut r = Report::new("verify-catalog");
    let mut reports = Vec::new();
    for e in polyprime_catalog(n_max)? {
        let rep = verify_catalog_entry(&e, bound)?;
        r.line(report_line(&rep));
        r.verified &= rep.verified;
        reports.push(rep);
    }
    let ok = reports.iter().filter(|x| x.verified).count();
    r.line(format!("{ok}/{} verified at bound {bound}", reports.len()));
    r.set("bound", bound).set("entries", &reports);
    Ok(r)
}
