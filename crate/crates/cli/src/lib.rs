//! Command-line driver for the finfty engine.

use std::path::Path;

use clap::{Parser, Subcommand};
use finfty::structures::FiniteStructure;
use finfty::{Error, Witness};
use serde_json::{json, Map, Value};

mod congruences;
mod primes;
mod structures;

#[derive(Debug, Parser)]
#[command(name = "finfty", version, about = "Exact algebra over the field at infinity")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 20_240_917)]
    pub seed: u64,
    /// Degree bound for computations in polynomial rings.
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Check the module or algebra axioms of a .finalg file.
    Axioms { file: String },
    /// Hasse diagram of the natural order.
    Order { file: String },
    /// Length of the longest chain of nonzero elements.
    Dim { file: String },
    /// The dual module of filters.
    Dual { file: String },
    /// Least upper bound of two elements in the order closure.
    Join { file: String, a: String, b: String },
    /// Face module of a regular 2n-gon.
    Polygon {
        #[arg(long)]
        n: usize,
    },
    /// Coproduct of two modules.
    Coproduct { left: String, right: String },
    /// Cartesian product of two modules or algebras.
    Product { left: String, right: String },
    /// Tensor product of two modules.
    Tensor { left: String, right: String },
    /// Symmetric power.
    Sym {
        file: String,
        #[arg(long)]
        n: usize,
    },
    /// Points of the projective closure.
    Pclosure { file: String },
    /// Degree-n component of the ring of functions.
    Funring {
        file: String,
        #[arg(long)]
        n: usize,
    },
    /// Congruence generated by pairs; without a file the pairs are polynomials.
    Congruence {
        file: Option<String>,
        #[arg(long)]
        pairs: String,
    },
    /// Flags of the congruence generated by pairs.
    Classify {
        file: String,
        #[arg(long)]
        pairs: String,
    },
    /// Prime congruences of an algebra, ordered by inclusion.
    Spec {
        file: String,
        /// Print the Hasse diagram in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Krull dimension of F∞[x] from the prime catalog.
    Krull {
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        /// Also verify the chain of three primes in two variables.
        #[arg(long)]
        two_variable: bool,
    },
    /// One entry of the prime catalog of F∞[x].
    Catalog {
        #[arg(long)]
        family: u8,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Verify every catalog entry.
    VerifyCatalog {
        #[arg(long, default_value_t = 4)]
        n_max: u32,
    },
    /// Compare a congruence with the intersection of the primes above it.
    Decompose {
        file: String,
        #[arg(long)]
        pairs: String,
    },
    /// Field of fractions of a cancellative algebra.
    FractionField { file: String },
    /// Largest congruence with a given kernel.
    Maxcong {
        file: String,
        /// Ideal members, separated by spaces or commas.
        #[arg(long)]
        ideal: String,
    },
}

/// Outcome of a verb: human text, a JSON object, and whether every checked
/// property held.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Map<String, Value>,
    pub verified: bool,
}

impl Report {
    pub(crate) fn new(verb: &str) -> Self {
        let mut json = Map::new();
        json.insert("verb".into(), json!(verb));
        Report { text: String::new(), json, verified: true }
    }

    pub(crate) fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    pub(crate) fn set(&mut self, key: &str, v: impl serde::Serialize) -> &mut Self {
        self.json.insert(key.into(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub(crate) fn refute(&mut self, w: &Witness) -> &mut Self {
        self.verified = false;
        self.set("witness", w);
        self.line(format!("refuted: {w}"))
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut j = self.json.clone();
            j.insert("verified".into(), json!(self.verified));
            format!("{}\n", serde_json::to_string_pretty(&Value::Object(j)).unwrap())
        } else {
            self.text.clone()
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.verified {
            0
        } else {
            1
        }
    }
}

/// Engine errors that carry a counterexample become refutations (exit 1);
/// everything else is an input error (exit 2).
pub fn witness_of(e: &Error) -> Option<&Witness> {
    match e {
        Error::Axiom(w) | Error::NotIdeal(w) | Error::NotCongruence(w) | Error::NotCancellative(w) => Some(w),
        _ => None,
    }
}

#[derive(Debug)]
pub enum Failure {
    Refuted(Report),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match witness_of(&e) {
            Some(w) => {
                let mut r = Report::new("error");
                r.refute(w);
                Failure::Refuted(r)
            }
            None => Failure::Input(e.to_string()),
        }
    }
}

pub(crate) type Outcome = std::result::Result<Report, Failure>;

pub(crate) fn read(path: &str) -> std::result::Result<String, Failure> {
    if !Path::new(path).exists() {
        if let Some(doc) = Path::new(path).file_name().and_then(|f| finfty::textio::bundled(f.to_str()?)) {
            return Ok(doc.to_string());
        }
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

pub(crate) fn load(path: &str) -> std::result::Result<FiniteStructure, Failure> {
    Ok(finfty::textio::parse_structure(&read(path)?)?)
}

pub fn run(cli: &Cli) -> Outcome {
    use Verb::*;
    match &cli.verb {
        Axioms { file } => structures::axioms(file),
        Order { file } => structures::order(file),
        Dim { file } => structures::dim(file),
        Dual { file } => structures::dual(file),
        Join { file, a, b } => structures::join(file, a, b),
        Polygon { n } => structures::polygon(*n),
        Coproduct { left, right } => structures::binary("coproduct", left, right),
        Product { left, right } => structures::binary("product", left, right),
        Tensor { left, right } => structures::tensor(left, right),
        Sym { file, n } => structures::sym(file, *n),
        Pclosure { file } => structures::pclosure(file),
        Funring { file, n } => structures::funring(file, *n),
        Congruence { file, pairs } => congruences::congruence(file.as_deref(), pairs, cli.bound, cli.seed),
        Classify { file, pairs } => congruences::classify(file, pairs),
        Spec { file, dot } => congruences::spec(file, *dot),
        Decompose { file, pairs } => congruences::decompose(file, pairs),
        FractionField { file } => congruences::fraction_field(file),
        Maxcong { file, ideal } => congruences::maxcong(file, ideal),
        Krull { n_max, two_variable } => primes::krull(*n_max, cli.bound, *two_variable),
        Catalog { family, n } => primes::catalog(*family, *n, cli.bound),
        VerifyCatalog { n_max } => primes::verify_catalog(*n_max, cli.bound),
    }
}
