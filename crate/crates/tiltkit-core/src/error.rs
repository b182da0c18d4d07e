//! Error type shared by the whole engine.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the engine.
///
/// Variants distinguish caller mistakes (dimension/quiver mismatches, bad
/// parameters) from *mathematical* refusals: window inadequacy, projective or
/// injective summands fed to τ/τ⁻, and idempotent-splitting failures over the
/// session field. The latter are honest "cannot certify" answers, never
/// silent approximations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix shapes do not match the attempted operation.
    DimMismatch { ctx: &'static str },
    /// A square matrix was required.
    NotSquare,
    /// Division by zero in the scalar field.
    DivisionByZero,
    /// Two representations live over different quivers.
    QuiverMismatch,
    /// A vertex id is not declared in the quiver.
    UnknownVertex(i64),
    /// An arrow id is not declared in the quiver.
    UnknownArrow(String),
    /// Bad or empty truncation window / parameter range.
    BadWindow(String),
    /// The quiver was required to be finite/acyclic/connected and is not.
    BadQuiver(&'static str),
    /// τ applied to something with a projective summand.
    ProjectiveSummand,
    /// τ⁻ applied to something with an injective summand.
    InjectiveSummand,
    /// The truncation window is too small to certify the requested
    /// computation (support plus margin leaves the window, a directed path
    /// touches the boundary, or an approximation fails to embed).
    WindowInadequate(String),
    /// End(M)/rad is not split over the session field, or idempotent search
    /// failed; decomposition refuses rather than guessing.
    SplitFailure(String),
    /// A precondition of the requested operation failed (documented per op).
    Precondition(String),
    /// Internal consistency guard tripped; indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimMismatch { ctx } => write!(f, "dimension mismatch in {ctx}"),
            Error::NotSquare => write!(f, "matrix must be square"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::QuiverMismatch => write!(f, "representations live over different quivers"),
            Error::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Error::UnknownArrow(a) => write!(f, "unknown arrow {a}"),
            Error::BadWindow(s) => write!(f, "bad window: {s}"),
            Error::BadQuiver(s) => write!(f, "bad quiver: {s}"),
            Error::ProjectiveSummand => write!(f, "input has a projective direct summand"),
            Error::InjectiveSummand => write!(f, "input has an injective direct summand"),
            Error::WindowInadequate(s) => write!(f, "window inadequate: {s}"),
            Error::SplitFailure(s) => write!(f, "cannot split idempotents: {s}"),
            Error::Precondition(s) => write!(f, "precondition failed: {s}"),
            Error::Internal(s) => write!(f, "internal invariant violated: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
