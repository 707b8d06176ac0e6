use thiserror::Error;

/// A failed axiom or property check, carrying the offending elements by name.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Witness {
    pub property: String,
    pub elements: Vec<String>,
}

impl Witness {
    pub fn new(property: impl Into<String>, elements: Vec<String>) -> Self {
        Witness {
            property: property.into(),
            elements,
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at ({})", self.property, self.elements.join(", "))
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid semifield: {0}")]
    InvalidSemifield(String),
    #[error("scalar {0} does not belong to this semifield")]
    MixedSemifields(String),
    #[error("polynomial ring mismatch: {0}")]
    RingMismatch(String),
    #[error("missing image for variable {0}")]
    MissingImage(String),
    #[error("axiom violation: {0}")]
    Axiom(Witness),
    #[error("conflicting completion: {0}")]
    Completion(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("base semifield mismatch")]
    BaseMismatch,
    #[error("not an ideal: {0}")]
    NotIdeal(Witness),
    #[error("not a congruence: {0}")]
    NotCongruence(Witness),
    #[error("not cancellative: {0}")]
    NotCancellative(Witness),
    #[error("not a field: {0}")]
    NotField(String),
    #[error("generator exceeds degree bound {bound}: {pair}")]
    BoundExceeded { bound: u32, pair: String },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("{0}")]
    Format(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
