use finfty::congruence::{cong_closure, max_congruence_algebra, max_congruence_module, BoundedCongruence, Congruence};
use finfty::poly::PolyRing;
use finfty::primes::{classify_congruence, describe, fraction_field as fractions, prime_decomposition_check, spec_poset};
use finfty::scalars::Semifield;
use finfty::structures::FiniteStructure;
use finfty::textio::{collect_variables, pairs_in_ring, pairs_in_structure, parse_pairs};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{load, read, Failure, Outcome, Report};

fn generated(m: &FiniteStructure, pairs_file: &str) -> Result<Congruence, Failure> {
    let pairs = pairs_in_structure(m, &parse_pairs(&read(pairs_file)?)?)?;
    Ok(cong_closure(m, &pairs))
}

fn blocks(m: &FiniteStructure, c: &Congruence) -> Vec<Vec<String>> {
    c.blocks().iter().map(|b| b.iter().map(|&x| m.name(x).to_string()).collect()).collect()
}

pub fn congruence(file: Option<&str>, pairs: &str, bound: Option<u32>, seed: u64) -> Outcome {
    let Some(file) = file else {
        return polynomial_congruence(pairs, bound, seed);
    };
    let m = load(file)?;
    let c = generated(&m, pairs)?;
    let mut r = Report::new("congruence");
    r.set("blocks", blocks(&m, &c)).set("block_count", c.block_count());
    r.line(describe(&m, &c));
    Ok(r)
}

const SAMPLE_CLASSES: usize = 5;
const SAMPLE_MEMBERS: usize = 8;

fn polynomial_congruence(pairs: &str, bound: Option<u32>, seed: u64) -> Outcome {
    let lines = parse_pairs(&read(pairs)?)?;
    let base = Semifield::finfty();
    let vars = collect_variables(lines.iter().flat_map(|p| [p.lhs.as_str(), p.rhs.as_str()]), &base);
    let ring = PolyRing::new(base, vars)?;
    let gens = pairs_in_ring(&ring, &lines)?;
    let bound = bound.unwrap_or(3);
    let c = BoundedCongruence::new(&ring, &gens, bound)?;
    let mut r = Report::new("congruence");
    r.set("bound", bound)
        .set("variables", ring.vars())
        .set("carrier", c.carrier_size())
        .set("block_count", c.block_count());
    r.line(format!("variables: {}", ring.vars().join(" ")));
    r.line(format!("degree window {bound}: {} elements in {} classes", c.carrier_size(), c.block_count()));
    let labels = c.labels();
    let mut sizes = vec![0usize; labels.len()];
    labels.iter().for_each(|&l| sizes[l] += 1);
    let mut roots: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == i && sizes[i] > 1).collect();
    roots.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    roots.truncate(SAMPLE_CLASSES);
    roots.sort_unstable();
    let mut samples = Vec::new();
    for root in roots {
        let members: Vec<String> = (0..labels.len())
            .filter(|&i| labels[i] == root)
            .take(SAMPLE_MEMBERS)
            .map(|i| ring.display(&c.decode(i)))
            .collect();
        r.line(format!("class of size {}: {}", sizes[root], members.join(" ~ ")));
        samples.push(serde_json::json!({ "size": sizes[root], "members": members }));
    }
    r.set("seed", seed).set("samples", samples);
    Ok(r)
}

pub fn classify(file: &str, pairs: &str) -> Outcome {
    let m = load(file)?;
    let c = generated(&m, pairs)?;
    let class = classify_congruence(&m, &c)?;
    let mut r = Report::new("classify");
    r.line(describe(&m, &c));
    let f = &class.flags;
    for (name, v) in [
        ("congruence", f.is_congruence),
        ("proper", f.is_proper),
        ("prime", f.is_prime),
        ("radical", f.is_radical),
        ("cancellative", f.is_cancellative),
    ] {
        r.line(format!("{name}: {}", if v { "yes" } else { "no" }));
    }
    for w in &class.witness {
        r.line(format!("  {w}"));
    }
    r.set("flags", &class.flags).set("witness", &class.witness);
    Ok(r)
}

pub fn spec(file: &str, dot: bool) -> Outcome {
    let m = load(file)?;
    let s = spec_poset(&m)?;
    let mut r = Report::new("spec");
    let chain: Vec<&str> = s.chain.iter().map(|&i| s.labels[i].as_str()).collect();
    r.set("primes", &s.labels).set("edges", &s.edges).set("chain", &chain).set("krull_dimension", s.krull_dimension);
    if dot {
        r.text = s.to_dot();
        r.set("dot", s.to_dot());
        return Ok(r);
    }
    for (i, l) in s.labels.iter().enumerate() {
        r.line(format!("P{i}: {l}"));
    }
    for (i, j) in &s.edges {
        r.line(format!("P{i} < P{j}"));
    }
    match s.krull_dimension {
        Some(d) => r.line(format!("krull dimension {d}")),
        None => r.line("no primes"),
    };
    Ok(r)
}

pub fn decompose(file: &str, pairs: &str) -> Outcome {
    let m = load(file)?;
    let c = generated(&m, pairs)?;
    let d = prime_decomposition_check(&m, &c)?;
    let mut r = Report::new("decompose");
    r.line(describe(&m, &c));
    r.line(format!("primes above: {}", d.primes_above));
    r.line(format!("cancellative: {}", if d.cancellative { "yes" } else { "no" }));
    if d.equal {
        r.line("equals the intersection of the primes above it");
    } else {
        let gap: Vec<String> = d.gap.iter().map(|(a, b)| format!("({a}, {b})")).collect();
        r.line(format!("intersection is strictly larger, extra pairs: {}", gap.join(" ")));
    }
    r.verified = d.verified;
    r.set("report", &d);
    Ok(r)
}

pub fn fraction_field(file: &str) -> Outcome {
    let a = load(file)?;
    let (f, embed) = fractions(&a)?;
    let mut r = Report::new("fraction-field");
    let pairs: Vec<(String, String)> = a.elements().map(|x| (a.name(x).to_string(), f.name(embed[x]).to_string())).collect();
    for (x, y) in &pairs {
        r.line(format!("{x} -> {y}"));
    }
    r.set("embedding", &pairs);
    let doc = finfty::textio::write_finalg(&f)?;
    r.set("size", f.len()).set("finalg", &doc);
    r.text.push_str(&doc);
    Ok(r)
}

pub fn maxcong(file: &str, ideal: &str) -> Outcome {
    let m = load(file)?;
    let members = ideal
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| m.index_of(s))
        .collect::<finfty::Result<Vec<_>>>()?;
    let c = if m.is_algebra() { max_congruence_algebra(&m, &members)? } else { max_congruence_module(&m, &members)? };
    let mut r = Report::new("maxcong");
    r.set("blocks", blocks(&m, &c)).set("block_count", c.block_count());
    r.line(describe(&m, &c));
    Ok(r)
}
