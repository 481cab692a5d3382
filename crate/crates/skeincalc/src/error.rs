//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by diagram construction, parsing and rewriting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("PD syntax error at term {term}: {detail}")]
    PdSyntax { term: usize, detail: String },
    #[error("arc {arc} occurs {count} times (every arc must occur exactly twice)")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error("arc {arc} cannot be both {roles} (strands do not close up)")]
    NonClosable { arc: u32, roles: String },
    #[error("crossing {crossing} references unknown arc {arc}")]
    DanglingArc { crossing: usize, arc: u32 },
    #[error("diagram is invalid: {0:?}")]
    Invalid(Vec<crate::diagram::Violation>),
    #[error("no {move_name} pattern at the requested site: {detail}")]
    MoveSiteMismatch { move_name: String, detail: String },
    #[error("crossing index {0} out of range")]
    CrossingIndex(usize),
    #[error("bad native JSON diagram: {0}")]
    NativeJson(String),
}

/// Errors produced by the numeric evaluation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("crossing count {got} exceeds the state-sum cap {cap}")]
    CrossingCapExceeded { got: usize, cap: usize },
    #[error("skein-tree depth cap {0} exceeded")]
    DepthCapExceeded (usize),
    #[error("evaluation point must be nonzero")]
    ZeroEvaluationPoint,
    #[error("negative power of a non-monomial Laurent polynomial")]
    NegativePowerOfNonMonomial,
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(char, char),
    #[error("coupling constant lambda must be nonzero")]
    ZeroLambda,
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("matrix is not traceless (|tr| = {0:e})")]
    NotTraceless(f64),
    #[error("degenerate skein normalizer: 1 - (n^2/4*Delta) tanh^2 vanished")]
    DegenerateNormalizer,
    #[error("unlink value has a pole at z = 0")]
    UnlinkPole,
    #[error("missing resolution choice for crossing {0}")]
    MissingChoice(usize),
    #[error("torus curve must be primitive, got ({0}, {1})")]
    NonPrimitiveCurve(i64, i64),
    #[error("torus curve (0, 0) is excluded")]
    NullCurve,
    #[error("invalid curve system: {0}")]
    BadCurveSystem(String),
}
