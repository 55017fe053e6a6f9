use thiserror::Error;

/// Errors shared across the crate.
///
/// Degenerate closures are *not* errors: closing a poset against its own
/// order yields a preorder, which is a legitimate value (see
/// [`crate::poset::Closure`]). Everything here signals misuse of an API or a
/// failed exactness guarantee.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A composition failed the constraints of the operation: empty, an
    /// interior zero part, or a zero part where the operation forbids one.
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    /// An operation requiring an even number of parts got an odd number.
    #[error("composition has odd length {len}, expected even")]
    OddLength { len: usize },

    /// The object exceeds the size this exact backend is built for.
    #[error("too large: {what} = {got}, limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// `divide_exact` was asked for a quotient that does not exist in
    /// Laurent polynomials over the integers.
    #[error("polynomial division is not exact")]
    NotDivisible,

    /// A relation set that was expected to define a poset contains a cycle
    /// through distinct elements.
    #[error("relations are cyclic, not a partial order: {0}")]
    NotAPoset(String),

    /// Numerator and denominator of a rational input share a factor.
    #[error("{r}/{t} is not in lowest terms")]
    NotCoprime { r: u64, t: u64 },

    /// A word over {a, b} that is not a (trivial or lower) Christoffel word,
    /// or a tree path containing letters other than L/R.
    #[error("invalid Christoffel word: {0}")]
    InvalidWord(String),

    /// The operation is undefined for trivial words (single letters).
    #[error("operation undefined for trivial word `{0}`")]
    TrivialWord(String),

    /// Parameters outside an operation's domain (for example r/t < 1, or the
    /// 1/1 boundary rational where no fence composition exists).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Matrix shapes do not line up: gluing posets whose interface arities
    /// differ, or multiplying incompatible generalized matrices.
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    /// Could not parse user-facing input (composition, fraction, CF list).
    #[error("parse error: {0}")]
    Parse(String),

    /// Two computations of the same quantity disagreed. This always
    /// indicates a bug and is surfaced loudly rather than papered over.
    #[error("internal cross-check failed: {0}")]
    InternalMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
