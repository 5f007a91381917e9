use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different variable sets")]
    AmbientMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in variable set")]
    DuplicateVariable(String),
    #[error("empty variable set")]
    EmptyVariableSet,
    #[error("expected {expected} exponents, got {found}")]
    ExponentLength { expected: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("the constant monomial 1 cannot be an ideal generator")]
    ConstantGenerator,
    #[error("the zero ideal has no projective dimension or regularity")]
    ZeroIdeal,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("{count} generators exceed the oracle cap of {cap}")]
    GeneratorCap { count: usize, cap: usize },
    #[error("generator cap {0} is beyond the memory guard")]
    CapTooLarge(usize),
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("empty Betti table")]
    EmptyTable,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),
    #[error("edges {0} -> {1} and {1} -> {0} make the graph non-oriented")]
    Bidirected(String, String),
    #[error("`{0}` is not a valid vertex name")]
    InvalidVertexName(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{vertex}` has non-positive weight {weight}")]
    NonPositiveWeight { vertex: String, weight: i64 },
    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("weight hypothesis violated: non-source vertices {0:?} have weight 1")]
    HypothesisViolated(Vec<String>),
    #[error("expected a {expected} graph, found {found}")]
    FamilyMismatch { expected: &'static str, found: String },
    #[error("no closed form covers family {0}")]
    NoFormula(String),
    #[error("variable `{0}` appears in more than one part")]
    VariableOverlap(String),

    #[error("need at least 2 generators, got {0}")]
    TooFewGenerators(usize),
    #[error("J and K do not partition the generators of I")]
    PartitionViolated,
    #[error("recursion exceeded the node budget of {0}")]
    NodeBudget(usize),
    #[error("certificate disagrees with the closed form:\n{0}")]
    CertificateMismatch(String),
}
