use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer entry exceeds the {cap}-bit precision cap")]
    PrecisionOverflow { cap: u64 },

    #[error("{what}: count {count} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        count: u128,
        cap: u128,
    },

    #[error("invalid cyclic order {0}: every order must be at least 2")]
    InvalidOrder(u64),

    #[error("element has {got} coefficients but the group has {expected} generators")]
    GroupMismatch { expected: usize, got: usize },

    #[error("homomorphism is not well defined on generator {generator}")]
    IllDefinedHom { generator: usize },

    #[error("congruence row {row} is not well defined on the group")]
    IllDefinedCongruence { row: usize },

    #[error("invalid fraction {0:?}")]
    InvalidFraction(String),

    #[error("gram table must be {expected}x{expected}")]
    GramShape { expected: usize },

    #[error("gram entry ({i},{j}) = {value} is not well defined for orders {di}, {dj}")]
    IllDefinedForm {
        i: usize,
        j: usize,
        value: String,
        di: u64,
        dj: u64,
    },

    #[error("gram entries ({i},{j}) and ({j},{i}) are not negatives of each other")]
    NotSkew { i: usize, j: usize },

    #[error("gram diagonal entry ({i},{i}) = {value} is non-zero; the form is not strictly skew")]
    NotStrict { i: usize, value: String },

    #[error("linking form is singular")]
    Singular,

    #[error("morphism does not preserve the form on generators ({i},{j})")]
    NotFormPreserving { i: usize, j: usize },

    #[error("morphism source is not a standard form W_k")]
    SourceNotStandard,

    #[error("k must be at least 2, got {0}")]
    InvalidK(u64),

    #[error("vertex set is not a simplex")]
    NotASimplex,

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("map is not simplicial: edge ({0},{1}) is not sent to a simplex")]
    NotSimplicial(usize, usize),

    #[error("generator {0} is not an adjacency-preserving permutation")]
    NotAnAutomorphism(usize),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("no path found between the vertices: {0}")]
    PathNotFound(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("bordism degree {0} is not supported (only 0 and 1)")]
    UnsupportedDegree(i64),

    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),

    #[error("manifolds with different k ({0} and {1}) cannot be combined")]
    KMismatch(u64, u64),
}
