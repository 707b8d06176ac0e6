//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use finfty::congruence::{
    all_ideals, cong_closure, cong_closure_naive, check_congruence, field_max_congruence, is_quasiseparable,
    is_separable, kernel, max_congruence_algebra, max_congruence_module, unit_class_by_closure,
    unit_class_by_formula, unit_class_generated, unit_class_lexmax, Congruence,
};
use finfty::constructions::{
    coproduct, function_ring_component, product, projective_closure, sym_power, tensor, tensor_power,
};
use finfty::fixtures;
use finfty::poly::{monomials_up_to, PolyRing, Polynomial};
use finfty::primes::{
    annihilation_replay, cancellative_check, catalog_entry, enumerate_congruences, is_prime,
    is_prime_first_definition, krull_via_catalog, polyprime_catalog, prime_decomposition_check, roots_replay,
    technical_lemma_replay, trichotomy_replay, two_variable_chain, verify_catalog_entry, zero_divisor_replay,
    ENUMERATION_GUARD,
};
use finfty::scalars::{Scalar, Semifield};
use finfty::structures::{
    build_structure, dual_module, enumerate_homs_bruteforce, generators, hom_extend, hom_module, is_homomorphism,
    isomorphic, natural_embedding, natural_order, Elem, ExtendOutcome, FiniteStructure,
};
use finfty::textio::{parse_poly, parse_structure, write_finalg};
use finfty::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn axioms(m: &FiniteStructure, what: &str) -> Result<(), String> {
    m.check_axioms().map_err(|w| format!("{what}: {w}"))
}

fn axiom_suites() -> Outcome {
    let mut count = 0;
    let mut check = |m: &FiniteStructure, what: &str| {
        count += 1;
        axioms(m, what)
    };
    check(&fixtures::finfty_module(), "F∞")?;
    check(&fixtures::finfty_field(), "F∞ algebra")?;
    for k in 1..=6 {
        check(&fixtures::cyclotomic_field(k), &format!("F∞^({k})"))?;
    }
    for n in 2..=4 {
        check(&fixtures::polygon(n), &format!("polygon({n})"))?;
    }
    check(&fixtures::nil2(), "nil2")?;

    let l = Semifield::lexmax_finfty();
    let w = l.elements_within(8);
    for a in &w {
        ensure(l.add(a, a) == *a, || format!("LexMax idempotence at {}", l.display(a)))?;
        ensure(l.add(a, &Scalar::Zero).is_zero(), || "LexMax absorbing zero".into())?;
        ensure(l.add(a, &l.neg(a)).is_zero() || a.is_zero(), || "LexMax a + (-a)".into())?;
        for b in &w {
            ensure(l.add(a, b) == l.add(b, a), || "LexMax commutativity".into())?;
            ensure(l.mul(a, b) == l.mul(b, a), || "LexMax commutative product".into())?;
            for c in &w {
                let show = || format!("({}, {}, {})", l.display(a), l.display(b), l.display(c));
                ensure(l.add(&l.add(a, b), c) == l.add(a, &l.add(b, c)), || format!("LexMax + assoc {}", show()))?;
                ensure(l.mul(&l.mul(a, b), c) == l.mul(a, &l.mul(b, c)), || format!("LexMax · assoc {}", show()))?;
                ensure(l.mul(a, &l.add(b, c)) == l.add(&l.mul(a, b), &l.mul(a, c)), || {
                    format!("LexMax distributivity {}", show())
                })?;
            }
        }
    }

    let f = fixtures::finfty_module();
    let sq = fixtures::finfty_square_module();
    let p2 = fixtures::polygon(2);
    let free2 = fixtures::free_module(2);
    let mut outputs: Vec<(String, FiniteStructure)> = vec![
        ("coproduct".into(), coproduct(&f, &sq).map_err(fail)?),
        ("product".into(), product(&p2, &f).map_err(fail)?),
        ("algebra product".into(), fixtures::finfty_square_algebra()),
        ("free(3)".into(), fixtures::free_module(3)),
        ("tensor".into(), tensor(&free2, &sq).map_err(fail)?.module),
        ("tensor with polygon".into(), tensor(&p2, &f).map_err(fail)?.module),
        ("tensor power".into(), tensor_power(&free2, 2).map_err(fail)?),
        ("Sym^2".into(), sym_power(&free2, 2).map_err(fail)?.module),
        ("Sym^3".into(), sym_power(&sq, 3).map_err(fail)?.module),
        ("dual".into(), dual_module(&p2).map_err(fail)?.module),
        ("hom".into(), hom_module(&sq, &f).map_err(fail)?.0),
        ("projective closure".into(), projective_closure(&sq).map_err(fail)?.ambient),
        ("function ring".into(), function_ring_component(&f, 2).map_err(fail)?.module),
    ];
    let a = fixtures::finfty_square_algebra();
    for c in enumerate_congruences(&a).map_err(fail)? {
        outputs.push(("quotient".into(), c.quotient(&a).map_err(fail)?.0));
    }
    for m in fixtures::fields().into_iter().take(3) {
        outputs.push(("fraction field".into(), finfty::primes::fraction_field(&m).map_err(fail)?.0));
    }
    for (what, m) in &outputs {
        check(m, what)?;
    }

    match build_structure(&fixtures::lexmax_sign_blind()) {
        Err(Error::Axiom(w)) if w.property.starts_with("associativity") => {}
        other => return Err(format!("sign-blind table not rejected by associativity: {other:?}")),
    }
    Ok(format!("{count} structures, LexMax window ±8, sign-blind table rejected"))
}

fn field_structure() -> Outcome {
    let fields: Vec<FiniteStructure> = fixtures::fields().into_iter().chain([fixtures::finfty_field()]).collect();
    for f in &fields {
        for a in f.elements() {
            for b in f.elements() {
                ensure(a == b || f.add(a, b) == f.zero(), || format!("{} + {} ≠ 0", f.name(a), f.name(b)))?;
            }
        }
        let ord = natural_order(f);
        let nz: Vec<Elem> = f.nonzero().collect();
        ensure(ord.minimal == nz && ord.maximal == nz, || format!("order of {:?}", f.names()))?;
    }
    Ok(format!("{} division algebras", fields.len()))
}

fn duality() -> Outcome {
    let mods: Vec<FiniteStructure> = fixtures::modules().into_iter().filter(|m| m.len() <= 20).collect();
    for m in &mods {
        let d = dual_module(m).map_err(fail)?;
        ensure(d.module.len() == m.len(), || format!("|M*| ≠ |M| for {:?}", m.names()))?;
        let (ord, dord) = (natural_order(m), natural_order(&d.module));
        for a in m.nonzero() {
            for b in m.nonzero() {
                ensure(ord.leq(a, b) == dord.leq(d.to_dual[b], d.to_dual[a]), || "not order-reversing".into())?;
            }
        }
        let dd = dual_module(&d.module).map_err(fail)?;
        let emb = natural_embedding(m, &d, &dd);
        let mut image = emb.clone();
        image.sort_unstable();
        image.dedup();
        ensure(is_homomorphism(m, &dd.module, &emb) && image.len() == dd.module.len(), || {
            format!("M → M** not an isomorphism for {:?}", m.names())
        })?;
    }
    let small: Vec<&FiniteStructure> = mods.iter().filter(|m| m.len() <= 9).collect();
    for a in &small {
        for b in &small {
            let (da, db) = (dual_module(a).map_err(fail)?.module, dual_module(b).map_err(fail)?.module);
            let lhs = dual_module(&coproduct(a, b).map_err(fail)?).map_err(fail)?.module;
            ensure(isomorphic(&lhs, &product(&da, &db).map_err(fail)?), || "(A+B)* ≇ A*×B*".into())?;
            let lhs = dual_module(&product(a, b).map_err(fail)?).map_err(fail)?.module;
            ensure(isomorphic(&lhs, &coproduct(&da, &db).map_err(fail)?), || "(A×B)* ≇ A*+B*".into())?;
        }
    }
    Ok(format!("{} modules, {} sum/product pairs", mods.len(), small.len() * small.len()))
}

fn hom_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let pool: Vec<FiniteStructure> = fixtures::modules().into_iter().filter(|m| m.len() <= 13).collect();
    let (mut accepted, mut refused) = (0, 0);
    let mut instances = 0;
    while instances < 120 || refused < 30 || accepted < 30 {
        if instances > 5000 {
            return Err(format!("sampler stalled: {accepted} extend, {refused} refused"));
        }
        let a = &pool[rng.gen_range(0..pool.len())];
        let b = &pool[rng.gen_range(0..pool.len())];
        if a.len() * b.len() > 200 {
            continue;
        }
        let gens = generators(a);
        let homs = enumerate_homs_bruteforce(a, b);
        let map: Vec<(Elem, Elem)> = if rng.gen_bool(0.3) {
            let h = &homs[rng.gen_range(0..homs.len())];
            gens.iter().map(|&g| (g, h.apply(g))).collect()
        } else {
            let mut map: Vec<(Elem, Elem)> = Vec::new();
            for &g in &gens {
                let v = match map.iter().find(|&&(h, _)| h == a.neg(g)) {
                    Some(&(_, w)) => b.neg(w),
                    None => rng.gen_range(0..b.len()),
                };
                map.push((g, v));
            }
            map
        };
        let brute = homs.iter().any(|h| map.iter().all(|&(g, v)| h.apply(g) == v));
        let ours = match hom_extend(a, b, &map).map_err(fail)? {
            ExtendOutcome::Extends(h) => {
                ensure(map.iter().all(|&(g, v)| h.apply(g) == v), || "extension disagrees on generators".into())?;
                accepted += 1;
                true
            }
            ExtendOutcome::Refused { .. } => {
                refused += 1;
                false
            }
        };
        ensure(ours == brute, || format!("instance {instances}: extend says {ours}, enumeration says {brute}"))?;
        instances += 1;
    }
    Ok(format!("{instances} generator maps ({accepted} extend, {refused} refused)"))
}

fn closure_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pool: Vec<FiniteStructure> = fixtures::modules()
        .into_iter()
        .chain(fixtures::algebras())
        .chain(fixtures::fields())
        .filter(|m| m.len() <= 12)
        .collect();
    for i in 0..200 {
        let m = &pool[rng.gen_range(0..pool.len())];
        let k = rng.gen_range(0..4);
        let pairs: Vec<(Elem, Elem)> = (0..k).map(|_| (rng.gen_range(0..m.len()), rng.gen_range(0..m.len()))).collect();
        let c = cong_closure(m, &pairs);
        ensure(c == cong_closure_naive(m, &pairs), || format!("instance {i}: partitions differ"))?;
        check_congruence(m, |a, b| c.related(a, b)).map_err(|w| format!("instance {i}: {w}"))?;
    }
    Ok("200 seeded instances".into())
}

fn maximal_congruences() -> Outcome {
    let mut ideals = 0;
    for m in fixtures::modules().into_iter().chain(fixtures::algebras()).filter(|m| m.len() <= 10) {
        let all = enumerate_congruences(&m).map_err(fail)?;
        for ideal in all_ideals(&m).map_err(fail)? {
            ideals += 1;
            let c = if m.is_algebra() {
                max_congruence_algebra(&m, &ideal)
            } else {
                max_congruence_module(&m, &ideal)
            }
            .map_err(fail)?;
            ensure(c.kernel(&m) == ideal, || format!("kernel of C ≠ {ideal:?}"))?;
            let (q, _) = c.quotient(&m).map_err(fail)?;
            let sep = if m.is_algebra() { is_quasiseparable(&q) } else { is_separable(&q) };
            ensure(sep, || format!("quotient by {ideal:?} not separable"))?;
            for d in all.iter().filter(|d| d.kernel(&m) == ideal) {
                ensure(d.is_subset(&c), || format!("a congruence with kernel {ideal:?} escapes C"))?;
            }
        }
    }
    Ok(format!("{ideals} ideals"))
}

fn semifield_congruences() -> Outcome {
    let fields: Vec<FiniteStructure> = fixtures::fields().into_iter().chain([fixtures::finfty_field()]).collect();
    for f in &fields {
        let c = field_max_congruence(f).map_err(fail)?;
        ensure(!c.is_full(), || "maximal congruence is full".into())?;
        // every congruence is a join of principal ones
        for a in f.elements() {
            for b in f.elements().filter(|&b| !c.related(a, b)) {
                ensure(cong_closure(f, &[(a, b)]).is_full(), || {
                    format!("gen({}, {}) is proper but outside C", f.name(a), f.name(b))
                })?;
            }
            if a != f.zero() {
                ensure(cong_closure(f, &[(a, f.zero())]).is_full(), || "nontrivial kernel on a proper congruence".into())?;
            }
        }
        if f.len() <= ENUMERATION_GUARD {
            for d in enumerate_congruences(f).map_err(fail)?.into_iter().filter(|d| !d.is_full()) {
                ensure(kernel(f, &d).map_err(fail)?.is_trivial && d.is_subset(&c), || "enumeration disagrees".into())?;
            }
        }
        for x in f.nonzero() {
            let g = unit_class_generated(f, x).map_err(fail)?;
            ensure(g == unit_class_by_closure(f, x).map_err(fail)? && g == unit_class_by_formula(f, x).map_err(fail)?, || {
                "unit class methods disagree".into()
            })?;
        }
    }
    let l = Semifield::lexmax_finfty();
    let mut lex = 0;
    for x in l.elements_within(8).into_iter().filter(|s| !s.is_zero()) {
        let (a, b) = unit_class_lexmax(&l, &x, 8).map_err(fail)?;
        ensure(a == b, || format!("LexMax unit class of {}", l.display(&x)))?;
        lex += 1;
    }
    Ok(format!("{} fields, {lex} LexMax generators", fields.len()))
}

fn prime_catalog() -> Outcome {
    let entries = polyprime_catalog(4).map_err(fail)?;
    let mut bounded = 0;
    for e in &entries {
        let rep = verify_catalog_entry(e, 8).map_err(fail)?;
        ensure(rep.verified, || format!("{} at B = 8: {:?}", e.label(), rep.witness))?;
        if rep.status != "verified" {
            bounded += 1;
        }
    }
    let families: std::collections::BTreeSet<u8> = entries.iter().map(|e| e.family).collect();
    ensure(families.len() == 14, || format!("{} families", families.len()))?;
    for n in 1..=4 {
        let e = catalog_entry(13, Some(n)).map_err(fail)?;
        let rep = verify_catalog_entry(&e, 8).map_err(fail)?;
        ensure(rep.closure_matches_model == Some(true), || format!("family 13({n}) closure differs from model"))?;
        let q = FiniteStructure::field(&Semifield::cyclotomic(n).map_err(fail)?).map_err(fail)?;
        ensure(isomorphic(&q, &fixtures::cyclotomic_field(n)), || format!("family 13({n}) model"))?;
    }
    Ok(format!("{} entries at B = 8 ({bounded} bounded-verified)", entries.len()))
}

fn krull() -> Outcome {
    let k = krull_via_catalog(4, 8).map_err(fail)?;
    ensure(k.verified && k.certificate, || "certificate chain gen(1+x,x) ⊂ gen(x,1) failed".into())?;
    ensure(k.chain.len() == 2 && k.dimension == 1, || format!("chain {:?}", k.chain))?;
    let started = Instant::now();
    let c = two_variable_chain(3).map_err(fail)?;
    ensure(c.verified && c.chain.len() == 3, || format!("two-variable chain: {}", c.status))?;
    Ok(format!("dimension 1, two-variable chain of 3 in {:.1?}", started.elapsed()))
}

fn prime_decomposition() -> Outcome {
    let algebras: Vec<FiniteStructure> = fixtures::algebras()
        .into_iter()
        .chain(fixtures::fields())
        .filter(|a| a.len() <= ENUMERATION_GUARD)
        .collect();
    let mut cancellative = 0;
    for a in algebras.iter().filter(|a| a.len() <= 10) {
        for c in enumerate_congruences(a).map_err(fail)? {
            let r = prime_decomposition_check(a, &c).map_err(fail)?;
            ensure(r.verified, || format!("decomposition check failed on {:?}", a.names()))?;
            if r.cancellative {
                cancellative += 1;
                ensure(r.equal, || "cancellative C is not the intersection of primes above it".into())?;
            }
        }
    }
    let n = fixtures::nil2();
    let r = prime_decomposition_check(&n, &Congruence::diagonal(&n)).map_err(fail)?;
    ensure(!r.cancellative && !r.equal, || "nil2 Δ should be a documented failure".into())?;
    for a in &algebras {
        for c in enumerate_congruences(a).map_err(fail)? {
            ensure(is_prime(a, &c) == is_prime_first_definition(a, &c), || "prime definitions disagree".into())?;
            if is_prime(a, &c) {
                trichotomy_replay(a, &c).map_err(fail)?;
                zero_divisor_replay(a, &c).map_err(fail)?;
                roots_replay(a, &c, 4).map_err(fail)?;
            }
            if cancellative_check(a, &c).is_ok() {
                technical_lemma_replay(a, &c, 4).map_err(fail)?;
            }
        }
    }
    for f in fixtures::fields().into_iter().chain([fixtures::finfty_field()]) {
        annihilation_replay(&f).map_err(fail)?;
    }
    Ok(format!("{cancellative} cancellative congruences, lemma replays on {} algebras", algebras.len()))
}

fn cli_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_finfty"))
        .current_dir(cli_dir().join("tests/data"))
        .args(args)
        .output()
        .expect("binary runs");
    let mut text = String::from_utf8_lossy(&out.stdout).into_owned();
    text.push_str(&String::from_utf8_lossy(&out.stderr));
    (out.status.code().unwrap_or(-1), text)
}

fn random_poly(r: &PolyRing, rng: &mut ChaCha8Rng) -> Polynomial {
    let monos = monomials_up_to(r.nvars(), 4);
    let units = r.base().units();
    let mut p = r.zero();
    for _ in 0..rng.gen_range(0..6) {
        let c = units[rng.gen_range(0..units.len())];
        let t = Polynomial::term(c, monos[rng.gen_range(0..monos.len())].clone());
        // cancellation collapses the whole sum to 0; skip such terms
        match r.add(&p, &t) {
            Ok(s) if !s.is_zero() || p.is_zero() => p = if p.is_zero() { t } else { s },
            _ => {}
        }
    }
    p
}

fn cli() -> Outcome {
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(cli_dir().join("schema/report.schema.json")).map_err(fail)?)
            .map_err(fail)?;
    let validator = jsonschema::JSONSchema::compile(&schema).map_err(fail)?;
    let mut verbs = std::collections::BTreeSet::new();
    let mut goldens = 0;
    for entry in std::fs::read_dir(cli_dir().join("tests/golden")).map_err(fail)? {
        let path = entry.map_err(fail)?.path();
        let expected = std::fs::read_to_string(&path).map_err(fail)?;
        let args: Vec<&str> = expected.lines().next().unwrap_or("").split_whitespace().skip(2).collect();
        let (code, out) = run(&args);
        ensure(format!("$ finfty {}\nexit {code}\n{out}", args.join(" ")) == expected, || {
            format!("golden mismatch: {}", path.display())
        })?;
        if code != 2 {
            let mut json_args = args.clone();
            json_args.push("--json");
            let (_, out) = run(&json_args);
            let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| format!("{}: {e}", path.display()))?;
            ensure(validator.is_valid(&v), || format!("schema violation: {}", path.display()))?;
        }
        verbs.insert(args[0].to_string());
        goldens += 1;
    }
    ensure(verbs.len() == 21, || format!("golden files cover {} verbs", verbs.len()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let bases = [Semifield::finfty(), Semifield::cyclotomic(2).map_err(fail)?, Semifield::cyclotomic(5).map_err(fail)?];
    for i in 0..1000 {
        let r = PolyRing::new(bases[i % 3].clone(), vec!["x".into(), "y1".into(), "w".into()]).map_err(fail)?;
        let p = random_poly(&r, &mut rng);
        let text = r.display(&p);
        let q = parse_poly(&text, &r).map_err(|e| format!("`{text}`: {e}"))?;
        ensure(p == q && r.display(&q) == text, || format!("round trip of `{text}`"))?;
    }
    for m in fixtures::modules().into_iter().chain(fixtures::algebras()).chain(fixtures::fields()) {
        let doc = write_finalg(&m).map_err(fail)?;
        ensure(parse_structure(&doc).map_err(fail)? == m, || format!("finalg round trip:\n{doc}"))?;
    }
    Ok(format!("{goldens} golden files over {} verbs, 1000 round trips", verbs.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("axiom suites", axiom_suites),
        ("finite-field structure", field_structure),
        ("duality", duality),
        ("hom theorem", hom_theorem),
        ("closure oracle", closure_oracle),
        ("maximal congruence theorems", maximal_congruences),
        ("semifield congruences", semifield_congruences),
        ("prime catalog", prime_catalog),
        ("krull dimension", krull),
        ("prime decomposition", prime_decomposition),
        ("cli", cli),
    ];
    if std::env::args().any(|a| a == "--list") {
        for (name, _) in criteria {
            println!("{name}: test");
        }
        return;
    }
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
